//! Exact verification of a built hypercomplex structure.

use crate::chevalley::AlgebraElement;
use crate::linalg::{same_span, Matrix};
use crate::par;
use crate::scalar::{rat, rat_int, TowerScalar};

use super::basis::PLabel;
use super::cayley::cayley_product;
use super::report::VerificationReport;
use super::Structure;

type Vector = Vec<TowerScalar>;

fn zero_vec(n: usize) -> Vector {
    vec![TowerScalar::zero(); n]
}

fn add_scaled(acc: &mut [TowerScalar], s: &TowerScalar, v: &[TowerScalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(s * b);
        }
    }
}

fn sub(a: &[TowerScalar], b: &[TowerScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scaled(s: &TowerScalar, v: &[TowerScalar]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

fn is_zero(v: &[TowerScalar]) -> bool {
    v.iter().all(TowerScalar::is_zero)
}

/// Shared data for the sweeps: the projected bracket table on 𝔭 and τ on 𝔭.
struct Ctx<'s, 'a> {
    s: &'s Structure<'a>,
    n: usize,
    /// `[b_a, b_b]_𝔭` at index `a * n + b`
    table: Vec<Vector>,
    /// `τ(b_a)` in 𝔭 coordinates
    tau_cols: Vec<Vector>,
    tau_in_p: bool,
}

impl<'s, 'a> Ctx<'s, 'a> {
    fn new(s: &'s Structure<'a>) -> Self {
        let n = s.basis.dim();
        let cb = s.alg.basis();
        let vs = &s.basis.vectors;
        let table = par::map_range(n * n, |k| {
            let (a, b) = (k / n, k % n);
            if a == b {
                zero_vec(n)
            } else {
                s.basis.project(&cb.bracket(&vs[a], &vs[b]))
            }
        });
        let taus: Vec<AlgebraElement> = vs.iter().map(|v| cb.tau(v)).collect();
        let tau_in_p = taus.iter().all(|t| s.basis.in_p(t));
        let tau_cols = taus.iter().map(|t| s.basis.project(t)).collect();
        Ctx { s, n, table, tau_cols, tau_in_p }
    }

    fn bracket(&self, x: &[TowerScalar], y: &[TowerScalar]) -> Vector {
        let mut out = zero_vec(self.n);
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if a != b {
                    add_scaled(&mut out, &(xa * yb), &self.table[a * self.n + b]);
                }
            }
        }
        out
    }

    fn tau(&self, x: &[TowerScalar]) -> Vector {
        let mut out = zero_vec(self.n);
        for (a, xa) in x.iter().enumerate() {
            add_scaled(&mut out, &xa.conj(), &self.tau_cols[a]);
        }
        out
    }

    fn apply(m: &Matrix<TowerScalar>, x: &[TowerScalar]) -> Vector {
        m.mul_vec(x).expect("dimension")
    }

    fn unit(&self, k: usize) -> Vector {
        self.s.basis.unit(k)
    }

    /// Real basis of 𝔭_u = 𝔭 ∩ fixed points of τ.
    fn compact_basis(&self) -> Vec<Vector> {
        let b = &self.s.basis;
        let rs = self.s.alg.rs();
        let i = TowerScalar::i();
        let half = TowerScalar::from_rational(rat(1, 2));
        let mut out = Vec::new();
        for (k, l) in b.labels.iter().enumerate() {
            match *l {
                PLabel::Root(a) if rs.is_positive(a) => {
                    let m = b.index(PLabel::Root(rs.neg(a))).expect("negative root in 𝔭");
                    let mut x = zero_vec(self.n);
                    x[k] = TowerScalar::one();
                    x[m] = -TowerScalar::one();
                    out.push(x);
                    let mut y = zero_vec(self.n);
                    y[k] = i.clone();
                    y[m] = i.clone();
                    out.push(y);
                }
                PLabel::P(pos) => {
                    let q = b.index(PLabel::Q(pos)).expect("Q beside P");
                    let mut w = zero_vec(self.n);
                    w[k] = half.clone();
                    w[q] = half.clone();
                    out.push(w);
                    let mut z = zero_vec(self.n);
                    z[k] = &i * &half;
                    z[q] = -(&i * &half);
                    out.push(z);
                }
                PLabel::J(_) => {
                    let mut x = zero_vec(self.n);
                    x[k] = i.clone();
                    out.push(x);
                }
                _ => {}
            }
        }
        out
    }

    fn nijenhuis_zero(&self, c: &Matrix<TowerScalar>, x: &[TowerScalar], y: &[TowerScalar]) -> bool {
        let cx = Self::apply(c, x);
        let cy = Self::apply(c, y);
        let mut v = self.bracket(&cx, &cy);
        v = sub(&v, &self.bracket(x, y));
        v = sub(&v, &Self::apply(c, &self.bracket(&cx, y)));
        v = sub(&v, &Self::apply(c, &self.bracket(x, &cy)));
        is_zero(&v)
    }
}

fn eigenspace(c: &Matrix<TowerScalar>, lambda: &TowerScalar) -> Vec<Vector> {
    let shifted = c.sub(&Matrix::identity(c.rows()).scale(lambda)).expect("square");
    shifted.kernel()
}

fn columns_equal(a: &Matrix<TowerScalar>, b: &Matrix<TowerScalar>) -> Vec<bool> {
    (0..a.cols()).map(|k| a.column(k) == b.column(k)).collect()
}

fn pairs_of(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// `I² = J² = −1` and `IJ = −JI`, column by column.
pub fn verify_operator_identities(s: &Structure) -> VerificationReport {
    let (i, j) = (&s.ops.i, &s.ops.j);
    let n = s.basis.dim();
    let minus_one = Matrix::identity(n).scale(&-TowerScalar::one());
    let mut r = VerificationReport::default();
    r.record_all("I^2 = -1", &columns_equal(&i.mul(i).expect("square"), &minus_one));
    r.record_all("J^2 = -1", &columns_equal(&j.mul(j).expect("square"), &minus_one));
    let ij = i.mul(j).expect("square");
    let ji = j.mul(i).expect("square").scale(&-TowerScalar::one());
    r.record_all("IJ = -JI", &columns_equal(&ij, &ji));
    r
}

fn verify_reality(ctx: &Ctx) -> VerificationReport {
    let s = ctx.s;
    let mut r = VerificationReport::default();
    r.record_all("tau preserves p", &[ctx.tau_in_p]);
    for (name, c) in [("I commutes with tau", &s.ops.i), ("J commutes with tau", &s.ops.j)] {
        let outcomes: Vec<bool> = (0..ctx.n)
            .map(|k| {
                let e = ctx.unit(k);
                Ctx::apply(c, &ctx.tau(&e)) == ctx.tau(&Ctx::apply(c, &e))
            })
            .collect();
        r.record_all(name, &outcomes);
    }
    let compact = ctx.compact_basis();
    let fixed: Vec<bool> = compact.iter().map(|x| ctx.tau(x) == *x).collect();
    r.record_all("compact basis is tau-fixed", &fixed);
    r.record_all(
        "compact basis spans p",
        &[compact.len() == ctx.n && same_span(&compact, &(0..ctx.n).map(|k| ctx.unit(k)).collect::<Vec<_>>(), ctx.n)],
    );
    r
}

fn verify_integrability(ctx: &Ctx) -> VerificationReport {
    let s = ctx.s;
    let i = TowerScalar::i();
    let mut r = VerificationReport::default();
    for (op, c) in [("I", &s.ops.i), ("J", &s.ops.j)] {
        for (sign, lambda) in [("+", i.clone()), ("-", -&i)] {
            let space = eigenspace(c, &lambda);
            let pairs = pairs_of(space.len());
            let outcomes = par::map(&pairs, |&(a, b)| {
                let v = ctx.bracket(&space[a], &space[b]);
                Ctx::apply(c, &v) == scaled(&lambda, &v)
            });
            r.record_all(&format!("{op} eigenspace {sign} bracket-closed"), &outcomes);
            r.record_all(&format!("{op} eigenspace {sign} has half dimension"), &[2 * space.len() == ctx.n]);
        }
    }
    let compact = ctx.compact_basis();
    let pairs = pairs_of(compact.len());
    for (op, c) in [("I", &s.ops.i), ("J", &s.ops.j)] {
        let outcomes = par::map(&pairs, |&(a, b)| ctx.nijenhuis_zero(c, &compact[a], &compact[b]));
        r.record_all(&format!("{op} Nijenhuis tensor vanishes"), &outcomes);
    }
    r
}

fn verify_equivariance(ctx: &Ctx) -> VerificationReport {
    let s = ctx.s;
    let cb = s.alg.basis();
    let n = ctx.n;
    let mut r = VerificationReport::default();
    let results = par::map(&s.basis.k_vectors, |x| {
        let mut preserves = Vec::with_capacity(n);
        let mut cols = Vec::with_capacity(n);
        for v in &s.basis.vectors {
            let y = cb.bracket(x, v);
            preserves.push(s.basis.in_p(&y));
            cols.push(s.basis.project(&y));
        }
        let ad = Matrix::from_columns(&cols, n).expect("square");
        let i_eq = columns_equal(&s.ops.i.mul(&ad).expect("square"), &ad.mul(&s.ops.i).expect("square"));
        let j_eq = columns_equal(&s.ops.j.mul(&ad).expect("square"), &ad.mul(&s.ops.j).expect("square"));
        let mut v_inv = Vec::new();
        let mut gl_zero = Vec::new();
        for block in &s.basis.blocks {
            for &k in &block.v {
                v_inv.push(cols[k].iter().enumerate().all(|(t, c)| c.is_zero() || block.v.contains(&t)));
            }
            for &k in &block.gl {
                gl_zero.push(is_zero(&cols[k]));
            }
        }
        let j_zero: Vec<bool> = s.basis.j.iter().map(|&k| is_zero(&cols[k])).collect();
        (preserves, i_eq, j_eq, v_inv, gl_zero, j_zero)
    });
    let mut acc: [Vec<bool>; 6] = Default::default();
    for (a, b, c, d, e, f) in results {
        acc[0].extend(a);
        acc[1].extend(b);
        acc[2].extend(c);
        acc[3].extend(d);
        acc[4].extend(e);
        acc[5].extend(f);
    }
    let names = [
        "[k, p] in p",
        "I ad(X) = ad(X) I",
        "J ad(X) = ad(X) J",
        "ad(k) preserves V_gamma",
        "ad(k) kills gl_gamma(2)",
        "ad(k) kills j_p",
    ];
    for (name, outcomes) in names.iter().zip(&acc) {
        r.record_all(name, outcomes);
    }
    r
}

/// I and J on the blocks: `I|𝒱_γ = ad(2W_γ)`, `J|𝒱_γ = −ad(2Y_γ)`,
/// `JX_γ = W_γ`, `JZ_γ = Y_γ`.
fn verify_blocks(ctx: &Ctx) -> VerificationReport {
    let s = ctx.s;
    let cb = s.alg.basis();
    let two = TowerScalar::from_int(2);
    let mut r = VerificationReport::default();
    let (mut iv, mut jv, mut jx, mut jz) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (t, block) in s.basis.blocks.iter().enumerate() {
        let g = block.root;
        let rho = s.ops.phases.get(block.position);
        let w2 = cb.w_gen(g).scale(&two);
        let y2 = cb.y_gen(g, rho).scale(&-two.clone());
        for &k in &block.v {
            let v = &s.basis.vectors[k];
            iv.push(s.basis.project(&cb.bracket(&w2, v)) == s.ops.i.column(k));
            jv.push(s.basis.project(&cb.bracket(&y2, v)) == s.ops.j.column(k));
        }
        let x = s.basis.project(&cb.x_gen(g, rho));
        let w = s.basis.project(&cb.w_gen(g));
        jx.push(Ctx::apply(&s.ops.j, &x) == w);
        let z = s.basis.project(&s.basis.z[t].scale(&TowerScalar::i()));
        let y = s.basis.project(&cb.y_gen(g, rho));
        jz.push(Ctx::apply(&s.ops.j, &z) == y);
    }
    r.record_all("I on V_gamma = ad(2W)", &iv);
    r.record_all("J on V_gamma = -ad(2Y)", &jv);
    r.record_all("J X_gamma = W_gamma", &jx);
    r.record_all("J Z_gamma = Y_gamma", &jz);
    r
}

/// Sparse `a_{βα}`: the coefficient of `E_{−β}` in `J(E_α)`, for α, β ∈ Δ_𝔭⁺.
pub fn a_matrix(s: &Structure) -> Vec<(usize, usize, TowerScalar)> {
    let rs = s.alg.rs();
    let b = &s.basis;
    let pos: Vec<usize> =
        (0..b.dim()).filter(|&k| matches!(b.labels[k], PLabel::Root(a) if rs.is_positive(a))).collect();
    let mut out = Vec::new();
    for &ka in &pos {
        let PLabel::Root(alpha) = b.labels[ka] else { unreachable!() };
        for &kb in &pos {
            let PLabel::Root(beta) = b.labels[kb] else { unreachable!() };
            let row = b.index(PLabel::Root(rs.neg(beta))).expect("negative root");
            let v = s.ops.j[(row, ka)].clone();
            if !v.is_zero() {
                out.push((beta, alpha, v));
            }
        }
    }
    out
}

fn verify_a_matrix(s: &Structure) -> VerificationReport {
    let cb = s.alg.basis();
    let rs = s.alg.rs();
    let stem = s.alg.stem();
    let b = &s.basis;
    let mut r = VerificationReport::default();
    let gamma_p: Vec<usize> = b.blocks.iter().map(|bl| bl.root).collect();
    let pos: Vec<usize> =
        (0..b.dim()).filter(|&k| matches!(b.labels[k], PLabel::Root(a) if rs.is_positive(a))).collect();
    // γ(J E_γ), which the closed value divides by
    let gamma_j: Vec<(usize, TowerScalar)> = b
        .blocks
        .iter()
        .map(|bl| {
            let je = b.lift(&s.ops.j.column(bl.gl[0]));
            (bl.root, cb.root_value(bl.root, &je))
        })
        .collect();
    let (mut iff, mut value) = (Vec::new(), Vec::new());
    for &ka in &pos {
        let PLabel::Root(alpha) = b.labels[ka] else { unreachable!() };
        for &kb in &pos {
            let PLabel::Root(beta) = b.labels[kb] else { unreachable!() };
            let row = b.index(PLabel::Root(rs.neg(beta))).expect("negative root");
            let a = &s.ops.j[(row, ka)];
            let sum = rs.add(alpha, beta).filter(|g| gamma_p.contains(g));
            iff.push(a.is_zero() == sum.is_none());
            if let Some(g) = sum {
                let gj = &gamma_j.iter().find(|(r, _)| *r == g).expect("block").1;
                let n = TowerScalar::from_rational(rat_int(cb.n(g, rs.neg(alpha))));
                value.push(gj.checked_inv().is_some_and(|inv| *a == &n * &inv.conj()));
            }
        }
    }
    let top_row: Vec<bool> = b
        .blocks
        .iter()
        .map(|bl| {
            s.ops
                .j
                .column(bl.gl[0])
                .iter()
                .enumerate()
                .all(|(k, c)| c.is_zero() || !matches!(b.labels[k], PLabel::Root(_)))
        })
        .collect();
    let mut signs = Vec::new();
    for bl in &b.blocks {
        let g = bl.root;
        for &a in stem.phi(bl.position) {
            let beta = rs.sub(g, a).expect("γ − α is a root");
            signs.push(cb.n(g, rs.neg(a)) * cb.n(g, rs.neg(beta)) == -1);
        }
    }
    r.record_all("a-matrix support iff alpha+beta in Gamma_p", &iff);
    r.record_all("a-matrix closed values", &value);
    r.record_all("J(E_gamma) lies in h", &top_row);
    r.record_all("N(gamma,-alpha) N(gamma,-beta) = -1", &signs);
    r
}

/// The Cayley transform `c` relates the I- and J-eigenspaces:
/// `𝔭_J^± = c(𝔭_s^± ⊕ (𝔭_J^± ∩ 𝔧_𝔭))`.
fn verify_cayley_spans(ctx: &Ctx) -> crate::Result<VerificationReport> {
    let s = ctx.s;
    let b = &s.basis;
    let rs = s.alg.rs();
    let n = ctx.n;
    let c = cayley_product(s.alg, &s.ops.phases)?;
    let mut r = VerificationReport::default();

    let images: Vec<AlgebraElement> = b.vectors.iter().map(|v| c.apply(v)).collect();
    r.record_all("c(p) = p", &images.iter().map(|x| b.in_p(x)).collect::<Vec<_>>());
    let k_ok: Vec<bool> =
        b.k_vectors.iter().map(|x| b.split(&c.apply(x))[..n].iter().all(TowerScalar::is_zero)).collect();
    r.record_all("c(k) = k", &k_ok);
    let cp = |x: &[TowerScalar]| b.project(&c.apply(&b.lift(x)));

    let i = TowerScalar::i();
    let mut p_span = Vec::new();
    for bl in &b.blocks {
        let rhob = s.ops.phases.get(bl.position).conj();
        let [eg, emg, p, q] = bl.gl;
        let img = vec![cp(&ctx.unit(p)), cp(&ctx.unit(eg))];
        let mut u = ctx.unit(eg);
        u[q] = -(&i * &rhob);
        let mut v = ctx.unit(p);
        v[emg] = -(&i * &rhob);
        p_span.push(same_span(&img, &[u, v], n));
    }
    r.record_all("c(span{P, E_gamma}) image", &p_span);

    let j_idx = &b.j;
    let mut spans = Vec::new();
    for (sign, lambda) in [(1i64, i.clone()), (-1, -&i)] {
        let p_j = eigenspace(&s.ops.j, &lambda);
        // J restricted to 𝔧_𝔭, which it preserves
        let mut jj = Matrix::zeros(j_idx.len(), j_idx.len());
        for (r0, &a) in j_idx.iter().enumerate() {
            for (c0, &bb) in j_idx.iter().enumerate() {
                jj[(r0, c0)] = s.ops.j[(a, bb)].clone();
            }
        }
        let mut gens: Vec<Vector> = eigenspace(&jj, &lambda)
            .into_iter()
            .map(|v| {
                let mut x = zero_vec(n);
                for (t, &k) in j_idx.iter().enumerate() {
                    x[k] = v[t].clone();
                }
                x
            })
            .collect();
        for bl in &b.blocks {
            let [eg, emg, p, q] = bl.gl;
            let (gl, root_sign) = if sign > 0 { ([p, eg], true) } else { ([q, emg], false) };
            gens.extend(gl.iter().map(|&k| ctx.unit(k)));
            for &k in &bl.v {
                let PLabel::Root(a) = b.labels[k] else { unreachable!() };
                if rs.is_positive(a) == root_sign {
                    gens.push(ctx.unit(k));
                }
            }
        }
        let img: Vec<Vector> = gens.iter().map(|x| cp(x)).collect();
        spans.push(same_span(&p_j, &img, n));
    }
    r.record_all("J eigenspaces are Cayley images", &spans);
    Ok(r)
}

/// Every structure-level identity, with per-identity counts.
pub fn verify_structure(s: &Structure) -> crate::Result<VerificationReport> {
    let ctx = Ctx::new(s);
    let mut r = verify_operator_identities(s);
    r.extend(verify_reality(&ctx));
    r.extend(verify_integrability(&ctx));
    r.extend(verify_equivariance(&ctx));
    r.extend(verify_blocks(&ctx));
    r.extend(verify_a_matrix(s));
    r.extend(verify_cayley_spans(&ctx)?);
    Ok(r)
}

//! Cayley transforms `c_γ = exp((π/2) ad X_γ)`, computed exactly.
//!
//! `ad X_γ` is semisimple with eigenvalues in `{ik/2 : −3 ≤ k ≤ 3}`, so on each
//! invariant block the exponential is the Lagrange interpolation polynomial
//! taking the value `e^{iπk/4}` at `ik/2`. All those values lie in Q(i, √2).

use num::Complex;

use crate::algebra::Algebra;
use crate::chevalley::{AlgebraElement, ChevalleyBasis};
use crate::error::{Error, Result};
use crate::linalg::{same_span, Matrix};
use crate::par;
use crate::roots::RootId;
use crate::scalar::{rat, rat_int, TowerScalar};

use super::operators::Phases;
use super::report::VerificationReport;

#[derive(Clone, Debug)]
pub struct CayleyAutomorphism {
    /// Matrix on 𝔤 in Chevalley coordinates, columns are images.
    pub matrix: Matrix<TowerScalar>,
}

impl CayleyAutomorphism {
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.matrix.mul_vec(&x.0).expect("dimension"))
    }

    pub fn compose(&self, other: &Self) -> Self {
        CayleyAutomorphism { matrix: self.matrix.mul(&other.matrix).expect("dimension") }
    }

    pub fn identity(dim: usize) -> Self {
        CayleyAutomorphism { matrix: Matrix::identity(dim) }
    }
}

/// Connected components of the sparsity graph of a square matrix.
fn blocks(m: &Matrix<TowerScalar>) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if !m[(i, j)].is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = out.len();
            out.push(Vec::new());
        }
        out[root_slot[r]].push(i);
    }
    out
}

/// `exp((π/2) A)` for a matrix `A` annihilated by `Π_{k=−3}^{3} (A − ik/2)`.
fn exp_quarter_turn(a: &Matrix<TowerScalar>) -> Result<Matrix<TowerScalar>> {
    let n = a.rows();
    let id = Matrix::<TowerScalar>::identity(n);
    let lambda = |k: i64| TowerScalar::gaussian(rat(0, 1), rat(k, 2));
    let ks: Vec<i64> = (-3..=3).collect();
    let shifted: Vec<Matrix<TowerScalar>> = ks.iter().map(|&k| a.sub(&id.scale(&lambda(k))).expect("square")).collect();

    let mut annihilator = id.clone();
    for s in &shifted {
        annihilator = annihilator.mul(s)?;
    }
    if !annihilator.is_zero() {
        return Err(Error::Invariant("ad X_γ is not semisimple with the expected spectrum".into()));
    }

    let mut out = Matrix::zeros(n, n);
    for (idx, &k) in ks.iter().enumerate() {
        let mut term = id.clone();
        let mut denom = TowerScalar::one();
        for (jdx, &k2) in ks.iter().enumerate() {
            if jdx == idx {
                continue;
            }
            term = term.mul(&shifted[jdx])?;
            denom = &denom * &(&lambda(k) - &lambda(k2));
        }
        let coeff = &TowerScalar::eighth_root(k) / &denom;
        out = out.add(&term.scale(&coeff))?;
    }
    Ok(out)
}

/// `c_γ = exp((π/2) ad X_γ)` with `X_γ = (ρE_γ − ρ̄E_{−γ})/2`, for γ in the stem.
pub fn cayley(alg: &Algebra, gamma: RootId, rho: &TowerScalar) -> Result<CayleyAutomorphism> {
    if alg.stem().position(gamma).is_none() {
        return Err(Error::InvalidSubstem(format!("{} is not a stem element", alg.rs().root(gamma))));
    }
    if !rho.is_unit_modulus() {
        return Err(Error::InvalidPhase(format!("|{rho}| ≠ 1")));
    }
    cayley_unchecked(alg.basis(), gamma, rho)
}

/// The product `c = Π_γ c_γ` over the whole stem.
pub fn cayley_product(alg: &Algebra, phases: &Phases) -> Result<CayleyAutomorphism> {
    check_phase_count(alg, phases)?;
    let mut c = CayleyAutomorphism::identity(alg.dim());
    for (pos, &g) in alg.stem().elements().iter().enumerate() {
        c = c.compose(&cayley(alg, g, phases.get(pos))?);
    }
    Ok(c)
}

fn check_phase_count(alg: &Algebra, phases: &Phases) -> Result<()> {
    if phases.len() != alg.stem().len() {
        return Err(Error::InvalidPhase(format!(
            "{} phases given, stem has {} elements",
            phases.len(),
            alg.stem().len()
        )));
    }
    Ok(())
}

fn cayley_unchecked(cb: &ChevalleyBasis, gamma: RootId, rho: &TowerScalar) -> Result<CayleyAutomorphism> {
    let d = cb.dim();
    let ad = cb.ad(&cb.x_gen(gamma, rho));
    let mut out = Matrix::identity(d);
    for block in blocks(&ad) {
        if block.len() == 1 && ad[(block[0], block[0])].is_zero() {
            continue;
        }
        let b = block.len();
        let mut sub = Matrix::zeros(b, b);
        for (r, &i) in block.iter().enumerate() {
            for (c, &j) in block.iter().enumerate() {
                sub[(r, c)] = ad[(i, j)].clone();
            }
        }
        let e = exp_quarter_turn(&sub)?;
        for (r, &i) in block.iter().enumerate() {
            for (c, &j) in block.iter().enumerate() {
                out[(i, j)] = e[(r, c)].clone();
            }
        }
    }
    Ok(CayleyAutomorphism { matrix: out })
}

/// Floating-point `exp((π/2) ad X_γ)` by scaling and squaring with a Taylor core.
pub fn cayley_float(cb: &ChevalleyBasis, gamma: RootId, rho: &TowerScalar) -> Vec<Vec<Complex<f64>>> {
    let ad = cb.ad(&cb.x_gen(gamma, rho));
    let n = ad.rows();
    let mut a: Vec<Vec<Complex<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (re, im) = ad[(i, j)].to_f64_pair();
                    Complex::new(re, im) * std::f64::consts::FRAC_PI_2
                })
                .collect()
        })
        .collect();
    let norm: f64 = a.iter().map(|row| row.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    for row in &mut a {
        for z in row.iter_mut() {
            *z *= scale;
        }
    }
    let matmul = |x: &[Vec<Complex<f64>>], y: &[Vec<Complex<f64>>]| -> Vec<Vec<Complex<f64>>> {
        let mut out = vec![vec![Complex::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i][k];
                if xik == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += xik * y[k][j];
                }
            }
        }
        out
    };
    let mut result: Vec<Vec<Complex<f64>>> =
        (0..n).map(|i| (0..n).map(|j| Complex::new((i == j) as u8 as f64, 0.0)).collect()).collect();
    let mut term = result.clone();
    for k in 1..=20 {
        term = matmul(&term, &a);
        for row in &mut term {
            for z in row.iter_mut() {
                *z /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Largest entrywise distance between the exact and floating-point transforms.
pub fn float_discrepancy(exact: &CayleyAutomorphism, float: &[Vec<Complex<f64>>]) -> f64 {
    let n = exact.matrix.rows();
    let mut worst: f64 = 0.0;
    for (i, row) in float.iter().enumerate().take(n) {
        for (j, z) in row.iter().enumerate() {
            let (re, im) = exact.matrix[(i, j)].to_f64_pair();
            worst = worst.max((Complex::new(re, im) - z).norm());
        }
    }
    worst
}

/// Entrywise tolerance of the floating-point cross-check.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

fn span_of(xs: &[AlgebraElement]) -> Vec<Vec<TowerScalar>> {
    xs.iter().map(|x| x.0.clone()).collect()
}

/// Checks every algebra-level property of the Cayley transforms: the closed
/// formulas for each `c_γ`, bracket automorphism, τ-commutation, pairwise
/// commutation, the floating-point cross-check and the images of `c` on
/// `𝒱_γ⁺` and `sl_γ(2)`.
pub fn verify_cayley(alg: &Algebra, phases: &Phases) -> Result<VerificationReport> {
    check_phase_count(alg, phases)?;
    let cb = alg.basis();
    let rs = alg.rs();
    let stem = alg.stem();
    let d = alg.dim();
    let n = stem.len();
    let half_sqrt2 = TowerScalar::sqrt2().scale(&rat(1, 2));
    let i = TowerScalar::i();
    let cs: Vec<CayleyAutomorphism> =
        par::map_range(n, |pos| cayley(alg, stem.element(pos), phases.get(pos)).expect("stem element"));

    let mut report = VerificationReport::default();
    let mut wings = Vec::new();
    let mut top = Vec::new();
    let mut cartan = Vec::new();
    let mut other_wings = Vec::new();
    let mut auto = Vec::new();
    let mut tau = Vec::new();
    let mut float = Vec::new();
    for (pos, c) in cs.iter().enumerate() {
        let g = stem.element(pos);
        let rho = phases.get(pos);
        let rhob = rho.conj();
        for &a in stem.phi(pos) {
            let nga = TowerScalar::from_rational(rat_int(cb.n(g, rs.neg(a))));
            let target = rs.sub(a, g).expect("α − γ is a root");
            let expected = cb.e(a).add(&cb.e(target).scale(&(&rhob * &nga))).scale(&half_sqrt2);
            wings.push(c.apply(&cb.e(a)) == expected);
        }
        let expected = cb.x_gen(g, rho).sub(&cb.w_gen(g).scale(&i)).scale(&rhob);
        top.push(c.apply(&cb.e(g)) == expected);
        let yw = cb.y_gen(g, rho).add(&cb.w_gen(g));
        for k in cb.cartan_range() {
            let h = AlgebraElement::basis(d, k);
            let expected = h.add(&yw.scale(&(&i * &cb.root_value(g, &h))));
            cartan.push(c.apply(&h) == expected);
        }
        for other in (0..n).filter(|&q| q != pos) {
            let v: Vec<AlgebraElement> = stem.phi(other).iter().map(|&a| cb.e(a)).collect();
            let img: Vec<AlgebraElement> = v.iter().map(|x| c.apply(x)).collect();
            other_wings.push(same_span(&span_of(&v), &span_of(&img), d));
        }
        let images: Vec<AlgebraElement> = (0..d).map(|k| c.apply(&AlgebraElement::basis(d, k))).collect();
        auto.extend(par::flat_map_range(d, |a| {
            (a + 1..d)
                .map(|b| {
                    let lhs = c.apply(&cb.bracket(&AlgebraElement::basis(d, a), &AlgebraElement::basis(d, b)));
                    lhs == cb.bracket(&images[a], &images[b])
                })
                .collect()
        }));
        for (k, img) in images.iter().enumerate() {
            tau.push(c.apply(&cb.tau(&AlgebraElement::basis(d, k))) == cb.tau(img));
        }
        float.push(float_discrepancy(c, &cayley_float(cb, g, rho)) <= FLOAT_TOLERANCE);
    }
    report.record_all("cayley wing formula", &wings);
    report.record_all("cayley top root formula", &top);
    report.record_all("cayley cartan formula", &cartan);
    report.record_all("cayley preserves other wings", &other_wings);
    report.record_all("cayley bracket automorphism", &auto);
    report.record_all("cayley commutes with tau", &tau);
    let mut commute = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            commute.push(cs[a].compose(&cs[b]).matrix == cs[b].compose(&cs[a]).matrix);
        }
    }
    report.record_all("cayley transforms commute", &commute);
    report.record_all("cayley float cross-check", &float);

    let c = cs.iter().fold(CayleyAutomorphism::identity(d), |acc, ci| acc.compose(ci));
    let mut v_images = Vec::new();
    let mut sl_images = Vec::new();
    for (pos, &g) in stem.elements().iter().enumerate() {
        let rhob = phases.get(pos).conj();
        let v: Vec<AlgebraElement> = stem.phi(pos).iter().map(|&a| c.apply(&cb.e(a))).collect();
        let expected: Vec<AlgebraElement> = stem
            .phi(pos)
            .iter()
            .map(|&a| {
                let nga = TowerScalar::from_rational(rat_int(cb.n(g, rs.neg(a))));
                cb.e(a).add(&cb.e(rs.sub(a, g).expect("root")).scale(&(&rhob * &nga)))
            })
            .collect();
        v_images.push(same_span(&span_of(&v), &span_of(&expected), d));
        let sl = [cb.e(g), cb.e(rs.neg(g)), cb.h(g)];
        let img: Vec<AlgebraElement> = sl.iter().map(|x| c.apply(x)).collect();
        sl_images.push(same_span(&span_of(&sl), &span_of(&img), d));
    }
    report.record_all("cayley image of wings", &v_images);
    report.record_all("cayley image of sl2", &sl_images);
    Ok(report)
}

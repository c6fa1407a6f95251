//! Weyl–Chevalley basis, brackets, the invariant form and the conjugation τ.
//!
//! Basis order: center `T_1..T_c`, simple coroots `H_1..H_r`, then `E_α` for
//! every root in [`RootSystem`] order. Structure constants are integers fixed
//! by the extraspecial-pair procedure: positive roots are totally ordered by
//! (height, coordinates) and `N_{α,β} = +(r + 1)` on every extraspecial pair.

use std::fmt::Write as _;

use num::rational::Ratio;
use num::traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::{ReductiveShape, RootId, RootSystem};
use crate::scalar::{rat, Rational, TowerScalar};

/// A vector of 𝔤 in coordinates over the Chevalley basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement(pub Vec<TowerScalar>);

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement(vec![TowerScalar::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k] = TowerScalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeff(&self, k: usize) -> &TowerScalar {
        &self.0[k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TowerScalar::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &TowerScalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgebraElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        AlgebraElement(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &TowerScalar) -> Self {
        AlgebraElement(self.0.iter().map(|a| a * s).collect())
    }

    pub fn add_scaled(&mut self, k: usize, s: &TowerScalar) {
        self.0[k] += s;
    }

    /// Coordinatewise complex conjugate.
    pub fn conj(&self) -> Self {
        AlgebraElement(self.0.iter().map(TowerScalar::conj).collect())
    }
}

/// Which basis vector an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Center(usize),
    Coroot(usize),
    Root(RootId),
}

#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    center: usize,
    rank_s: usize,
    /// `N_{α,β}` for all root pairs, zero when `α + β ∉ Δ`.
    n: Vec<i64>,
    /// Sparse integer bracket table over basis pairs.
    table: Vec<Vec<(u32, i64)>>,
    /// Nonzero entries of the invariant form, per basis index.
    form: Vec<Vec<(u32, i64)>>,
}

impl ChevalleyBasis {
    pub fn new(rs: RootSystem) -> Result<Self> {
        let center = rs.shape().center_dim;
        let rank_s = rs.semisimple_rank();
        let n = structure_constants(&rs)?;
        let mut cb = ChevalleyBasis { rs, center, rank_s, n, table: Vec::new(), form: Vec::new() };
        cb.table = cb.build_table();
        cb.form = cb.build_form();
        Ok(cb)
    }

    pub fn from_shape(shape: &ReductiveShape) -> Result<Self> {
        Self::new(RootSystem::build(shape)?)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.center + self.rank_s + self.rs.len()
    }

    pub fn center_dim(&self) -> usize {
        self.center
    }

    pub fn center_index(&self, j: usize) -> usize {
        j
    }

    /// Index of the simple coroot with global simple index `g`.
    pub fn coroot_index(&self, g: usize) -> usize {
        self.center + g
    }

    pub fn root_index(&self, a: RootId) -> usize {
        self.center + self.rank_s + a
    }

    /// Cartan subalgebra 𝔥 = 𝔠 ⊕ span(H_i) occupies indices `0..rank`.
    pub fn cartan_range(&self) -> std::ops::Range<usize> {
        0..self.center + self.rank_s
    }

    pub fn kind(&self, k: usize) -> BasisKind {
        if k < self.center {
            BasisKind::Center(k)
        } else if k < self.center + self.rank_s {
            BasisKind::Coroot(k - self.center)
        } else {
            BasisKind::Root(k - self.center - self.rank_s)
        }
    }

    /// `N_{α,β}`, zero when `α + β` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> i64 {
        self.n[a * self.rs.len() + b]
    }

    pub fn e(&self, a: RootId) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), self.root_index(a))
    }

    /// The coroot `H_α` as an element of 𝔥.
    pub fn h(&self, a: RootId) -> AlgebraElement {
        let mut v = AlgebraElement::zero(self.dim());
        for (k, c) in self.coroot_terms(a) {
            v.0[k] = TowerScalar::from_int(c);
        }
        v
    }

    fn coroot_terms(&self, a: RootId) -> Vec<(usize, i64)> {
        let c = self.rs.component(a);
        let base = self.center + self.rs.component_offset(c);
        self.rs.coroot_coords(a).into_iter().enumerate().filter(|(_, x)| *x != 0).map(|(j, x)| (base + j, x)).collect()
    }

    /// `α(X)` for `X` in 𝔥 (coordinates outside `cartan_range` are ignored).
    pub fn root_value(&self, a: RootId, x: &AlgebraElement) -> TowerScalar {
        let mut acc = TowerScalar::zero();
        for g in 0..self.rank_s {
            let c = &x.0[self.center + g];
            if c.is_zero() {
                continue;
            }
            let p = self.rs.pairing_with_simple(a, g);
            if p != 0 {
                acc += &(c * &TowerScalar::from_int(p));
            }
        }
        acc
    }

    fn build_table(&self) -> Vec<Vec<(u32, i64)>> {
        let d = self.dim();
        let rs = &self.rs;
        let mut t = vec![Vec::new(); d * d];
        for g in 0..self.rank_s {
            let hi = self.coroot_index(g);
            for a in 0..rs.len() {
                let v = rs.pairing_with_simple(a, g);
                if v != 0 {
                    let ea = self.root_index(a);
                    t[hi * d + ea].push((ea as u32, v));
                    t[ea * d + hi].push((ea as u32, -v));
                }
            }
        }
        for a in 0..rs.len() {
            let ea = self.root_index(a);
            for b in 0..rs.len() {
                let eb = self.root_index(b);
                if b == rs.neg(a) {
                    t[ea * d + eb] = self.coroot_terms(a).into_iter().map(|(k, c)| (k as u32, c)).collect();
                } else if let Some(s) = rs.add(a, b) {
                    t[ea * d + eb].push((self.root_index(s) as u32, self.n(a, b)));
                }
            }
        }
        t
    }

    /// Integer structure constants: `[e_i, e_j] = Σ c e_k`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim());
        let ys: Vec<(usize, &TowerScalar)> = y.support().collect();
        for (i, a) in x.support() {
            for &(j, b) in &ys {
                let entries = self.bracket_basis(i, j);
                if entries.is_empty() {
                    continue;
                }
                let ab = a * b;
                for &(k, c) in entries {
                    out.0[k as usize] += &ab.scale(&Rational::from_integer(c.into()));
                }
            }
        }
        out
    }

    /// Matrix of `ad x` (columns are images of basis vectors).
    pub fn ad(&self, x: &AlgebraElement) -> Matrix<TowerScalar> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, a) in x.support() {
            for j in 0..d {
                for &(k, c) in self.bracket_basis(i, j) {
                    let v = a.scale(&Rational::from_integer(c.into()));
                    m[(k as usize, j)] += &v;
                }
            }
        }
        m
    }

    /// The conjugation τ defining the compact form: conjugate-linear,
    /// `τ(E_α) = −E_{−α}`, `τ(H) = −H` on the real span of coroots and center.
    pub fn tau(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim());
        for (k, c) in x.support() {
            let c = c.conj();
            match self.kind(k) {
                BasisKind::Root(a) => out.0[self.root_index(self.rs.neg(a))] = -c,
                _ => out.0[k] = -c,
            }
        }
        out
    }

    fn build_form(&self) -> Vec<Vec<(u32, i64)>> {
        let d = self.dim();
        let mut form = vec![Vec::new(); d];
        for (j, row) in form.iter_mut().enumerate().take(self.center) {
            row.push((j as u32, 1));
        }
        // Killing form via tr(ad e_i ∘ ad e_j); only weight-zero pairs can be nonzero.
        let mut pairs = Vec::new();
        for g in 0..self.rank_s {
            for h in 0..self.rank_s {
                pairs.push((self.coroot_index(g), self.coroot_index(h)));
            }
        }
        for a in 0..self.rs.len() {
            pairs.push((self.root_index(a), self.root_index(self.rs.neg(a))));
        }
        for (i, j) in pairs {
            let v = self.killing_trace(i, j);
            if v != 0 {
                form[i].push((j as u32, v));
            }
        }
        form
    }

    /// `tr(ad e_i ∘ ad e_j)` computed from the integer table.
    pub fn killing_trace(&self, i: usize, j: usize) -> i64 {
        let d = self.dim();
        let mut tr = 0;
        for k in 0..d {
            for &(l, c) in self.bracket_basis(j, k) {
                for &(m, c2) in self.bracket_basis(i, l as usize) {
                    if m as usize == k {
                        tr += c * c2;
                    }
                }
            }
        }
        tr
    }

    /// The invariant form on basis vectors.
    pub fn form_basis(&self, i: usize, j: usize) -> i64 {
        self.form[i].iter().find(|(k, _)| *k as usize == j).map_or(0, |&(_, v)| v)
    }

    /// ⟨x, y⟩: Killing form on 𝔤_s, `⟨T_j, T_k⟩ = δ_jk` on the center, so that
    /// the form is negative definite on the compact real form.
    pub fn invariant_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> TowerScalar {
        let mut acc = TowerScalar::zero();
        for (i, a) in x.support() {
            for &(j, v) in &self.form[i] {
                let b = &y.0[j as usize];
                if !b.is_zero() {
                    acc += &(a * b).scale(&Rational::from_integer(v.into()));
                }
            }
        }
        acc
    }

    /// `X_γ = (ρE_γ − ρ̄E_{−γ})/2`.
    pub fn x_gen(&self, g: RootId, rho: &TowerScalar) -> AlgebraElement {
        let h = TowerScalar::from_rational(rat(1, 2));
        let mut v = AlgebraElement::zero(self.dim());
        v.0[self.root_index(g)] = rho * &h;
        v.0[self.root_index(self.rs.neg(g))] = -(&rho.conj() * &h);
        v
    }

    /// `Y_γ = i(ρE_γ + ρ̄E_{−γ})/2`.
    pub fn y_gen(&self, g: RootId, rho: &TowerScalar) -> AlgebraElement {
        let h = TowerScalar::gaussian(Rational::zero(), rat(1, 2));
        let mut v = AlgebraElement::zero(self.dim());
        v.0[self.root_index(g)] = rho * &h;
        v.0[self.root_index(self.rs.neg(g))] = &rho.conj() * &h;
        v
    }

    /// `W_γ = (i/2)H_γ`.
    pub fn w_gen(&self, g: RootId) -> AlgebraElement {
        self.h(g).scale(&TowerScalar::gaussian(Rational::zero(), rat(1, 2)))
    }

    /// Human-readable `Σ c E_α + Σ d H_i` rendering.
    pub fn render(&self, x: &AlgebraElement) -> String {
        let mut s = String::new();
        for (k, c) in x.support() {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let label = match self.kind(k) {
                BasisKind::Center(j) => format!("T{}", j + 1),
                BasisKind::Coroot(g) => format!("H{}", g + 1),
                BasisKind::Root(a) => format!("E{}", self.rs.root(a)),
            };
            let _ = write!(s, "({c})·{label}");
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Exhaustive Jacobi check on basis triples; returns the number of failing triples.
    pub fn jacobi_violations(&self, triples: &[(usize, usize, usize)]) -> usize {
        triples.iter().filter(|&&(i, j, k)| !self.jacobi_holds(i, j, k)).count()
    }

    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let d = self.dim();
        let mut acc = vec![0i64; d];
        let mut cyc = |a: usize, b: usize, c: usize| {
            for &(l, x) in self.bracket_basis(b, c) {
                for &(m, y) in self.bracket_basis(a, l as usize) {
                    acc[m as usize] += x * y;
                }
            }
        };
        cyc(i, j, k);
        cyc(j, k, i);
        cyc(k, i, j);
        acc.iter().all(|&v| v == 0)
    }
}

/// Integer `N_{α,β}` for all root pairs from the extraspecial-pair signs.
fn structure_constants(rs: &RootSystem) -> Result<Vec<i64>> {
    let n = rs.len();
    let np = rs.n_positive();
    let mut table = vec![0i64; n * n];
    let mut known = vec![false; n * n];

    // positive roots sorted by (height, coordinates); ties across components are harmless
    let mut order: Vec<RootId> = rs.positives().collect();
    order.sort_by(|&a, &b| (rs.height(a), &rs.root(a).coords).cmp(&(rs.height(b), &rs.root(b).coords)));
    let mut rank_in_order = vec![0usize; np];
    for (k, &a) in order.iter().enumerate() {
        rank_in_order[a] = k;
    }

    // r + 1 where r is the largest integer with β − rα ∈ Δ
    let magnitude = |a: RootId, b: RootId| -> i64 {
        let mut r = 0;
        let mut cur = b;
        while let Some(next) = rs.sub(cur, a) {
            cur = next;
            r += 1;
        }
        r + 1
    };

    for &xi in &order {
        if rs.height(xi) == 1 {
            continue;
        }
        let mut specials: Vec<(RootId, RootId)> = order
            .iter()
            .filter_map(|&a| {
                let b = rs.sub(xi, a)?;
                (rs.is_positive(b) && rank_in_order[a] < rank_in_order[b]).then_some((a, b))
            })
            .collect();
        specials.sort_by_key(|&(a, _)| rank_in_order[a]);
        let (alpha, beta) = specials[0];
        let nab = magnitude(alpha, beta);
        set(&mut table, &mut known, n, alpha, beta, nab);

        for &(gamma, delta) in &specials[1..] {
            // Relation for the quadruple (α, β, −γ, −δ) summing to zero.
            let mut sum = Ratio::<i64>::zero();
            if let Some(bg) = rs.sub(beta, gamma) {
                let t =
                    mixed(rs, &table, &known, beta, rs.neg(gamma))? * mixed(rs, &table, &known, alpha, rs.neg(delta))?;
                sum += Ratio::new(t, rs.norm(bg));
            }
            if let Some(ag) = rs.sub(alpha, gamma) {
                let t =
                    mixed(rs, &table, &known, rs.neg(gamma), alpha)? * mixed(rs, &table, &known, beta, rs.neg(delta))?;
                sum += Ratio::new(t, rs.norm(ag));
            }
            let v = sum * Ratio::from_integer(rs.norm(xi)) / Ratio::from_integer(nab);
            if !v.is_integer() {
                return Err(Error::Invariant("non-integral structure constant".into()));
            }
            set(&mut table, &mut known, n, gamma, delta, v.to_integer());
        }
    }

    // extend to all pairs
    let mut out = vec![0i64; n * n];
    for a in 0..n {
        for b in 0..n {
            if rs.add(a, b).is_some() {
                out[a * n + b] = mixed(rs, &table, &known, a, b)?;
            }
        }
    }
    Ok(out)
}

fn set(table: &mut [i64], known: &mut [bool], n: usize, a: RootId, b: RootId, v: i64) {
    table[a * n + b] = v;
    table[b * n + a] = -v;
    known[a * n + b] = true;
    known[b * n + a] = true;
}

/// `N_{a,b}` for arbitrary roots from the positive-pair table, using
/// `N_{−a,−b} = −N_{a,b}` and, for `a + b + c = 0`,
/// `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)`.
fn mixed(rs: &RootSystem, table: &[i64], known: &[bool], a: RootId, b: RootId) -> Result<i64> {
    let n = rs.len();
    let Some(s) = rs.add(a, b) else {
        return Ok(0);
    };
    let pos = |x: RootId| rs.is_positive(x);
    let lookup = |x: RootId, y: RootId| -> Result<i64> {
        if known[x * n + y] {
            Ok(table[x * n + y])
        } else {
            Err(Error::Invariant("structure constant requested out of order".into()))
        }
    };
    let c = rs.neg(s);
    let scaled = |v: i64, num: i64, den: i64| -> Result<i64> {
        if (v * num) % den != 0 {
            return Err(Error::Invariant("non-integral structure constant".into()));
        }
        Ok(v * num / den)
    };
    match (pos(a), pos(b)) {
        (true, true) => lookup(a, b),
        (false, false) => Ok(-lookup(rs.neg(a), rs.neg(b))?),
        _ => {
            // a + b + c = 0 with c = −(a + b)
            let (nc, na, nb) = (rs.norm(c), rs.norm(a), rs.norm(b));
            if pos(c) {
                if pos(a) {
                    // N_{a,b} = (c,c)/(b,b) · N_{c,a}
                    scaled(lookup(c, a)?, nc, nb)
                } else {
                    // N_{a,b} = (c,c)/(a,a) · N_{b,c}
                    scaled(lookup(b, c)?, nc, na)
                }
            } else if !pos(a) {
                // N_{c,a} = −N_{−c,−a}
                scaled(-lookup(rs.neg(c), rs.neg(a))?, nc, nb)
            } else {
                scaled(-lookup(rs.neg(b), rs.neg(c))?, nc, na)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb(s: &str) -> ChevalleyBasis {
        ChevalleyBasis::from_shape(&s.parse().unwrap()).unwrap()
    }

    fn all_triples(d: usize) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    v.push((i, j, k));
                }
            }
        }
        v
    }

    #[test]
    fn a1_has_no_constants() {
        let b = cb("A1");
        let rs = b.root_system();
        assert!((0..2).all(|x| (0..2).all(|y| b.n(x, y) == 0)));
        assert_eq!(b.bracket(&b.e(0), &b.e(rs.neg(0))), b.h(0));
    }

    #[test]
    fn magnitudes() {
        let a2 = cb("A2");
        let rs = a2.root_system();
        for x in 0..rs.len() {
            for y in 0..rs.len() {
                if rs.add(x, y).is_some() {
                    assert_eq!(a2.n(x, y).abs(), 1);
                }
            }
        }
        let g2 = cb("G2");
        let rs = g2.root_system();
        let max = (0..rs.len())
            .flat_map(|x| (0..rs.len()).map(move |y| (x, y)))
            .map(|(x, y)| g2.n(x, y).abs())
            .max()
            .unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn jacobi_small() {
        for s in ["A2", "B2", "G2", "A1 x A2", "c^1 x A1"] {
            let b = cb(s);
            assert_eq!(b.jacobi_violations(&all_triples(b.dim())), 0, "{s}");
        }
    }

    #[test]
    fn tau_basics() {
        let b = cb("A2");
        let rs = b.root_system();
        let i = TowerScalar::i();
        assert_eq!(b.tau(&b.e(0)), b.e(rs.neg(0)).neg());
        let ih = b.h(0).scale(&i);
        assert_eq!(b.tau(&ih), ih);
        let rho = TowerScalar::eighth_root(1);
        assert_eq!(b.tau(&b.x_gen(2, &rho)), b.x_gen(2, &rho));
        assert_eq!(b.tau(&b.y_gen(2, &rho)), b.y_gen(2, &rho));
        assert_eq!(b.tau(&b.w_gen(2)), b.w_gen(2));
    }

    #[test]
    fn weight_action() {
        let b = cb("B2");
        let rs = b.root_system();
        for a in 0..rs.len() {
            for c in 0..rs.len() {
                let v = b.bracket(&b.h(a), &b.e(c));
                let want = b.e(c).scale(&TowerScalar::from_int(rs.cartan_int(c, a)));
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn form_is_killing_on_cartan() {
        let b = cb("G2");
        let rs = b.root_system();
        for g in 0..2 {
            for h in 0..2 {
                let want: i64 =
                    (0..rs.len()).map(|a| rs.pairing_with_simple(a, g) * rs.pairing_with_simple(a, h)).sum();
                assert_eq!(b.form_basis(b.coroot_index(g), b.coroot_index(h)), want);
            }
        }
    }

    #[test]
    fn center_is_inert() {
        let b = cb("c^2 x A1");
        let t = AlgebraElement::basis(b.dim(), 0);
        for k in 0..b.dim() {
            assert!(b.bracket(&t, &AlgebraElement::basis(b.dim(), k)).is_zero());
        }
        let it = t.scale(&TowerScalar::i());
        assert_eq!(b.invariant_form(&it, &it), TowerScalar::from_int(-1));
        assert!(b.invariant_form(&t, &b.h(0)).is_zero());
    }
}

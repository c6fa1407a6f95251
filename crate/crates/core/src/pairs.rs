//! Substems, stemmed subalgebras and the hypercomplex-pair predicate.
//!
//! A substem Γ_𝔨 is an up-closed subset of (Γ, ≺). It determines
//! `Δ_𝔨⁺ = ⋃_{γ∈Γ_𝔨} Φ_γ⁺ ∪ {γ}` and, together with the dimension of an extra
//! torus inside 𝔬, a regular subalgebra 𝔨 ⊂ 𝔤.

use std::collections::BTreeSet;
use std::fmt;

use num::traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix};
use crate::roots::{ReductiveShape, RootId};
use crate::scalar::{rat_int, Rational};
use crate::stem::Stem;

/// Sorted 0-based positions into the stem order, closed upward under ≺.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Substem(Vec<usize>);

impl Substem {
    pub fn empty() -> Self {
        Substem(Vec::new())
    }

    pub fn full(stem: &Stem) -> Self {
        Substem((0..stem.len()).collect())
    }

    /// Validates up-closure: `γ ∈ S` and `δ ≻ γ` imply `δ ∈ S`.
    pub fn new(stem: &Stem, positions: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = positions.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&p| p >= stem.len()) {
            return Err(Error::InvalidSubstem(format!("index {} out of range 1..={}", bad + 1, stem.len())));
        }
        for &i in &set {
            for j in 0..stem.len() {
                if stem.precedes_at(i, j) && !set.contains(&j) {
                    return Err(Error::InvalidSubstem(format!(
                        "not up-closed: γ{} ≺ γ{} but γ{} is missing",
                        i + 1,
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Substem(set.into_iter().collect()))
    }

    /// Parses 1-based comma-separated indices; empty text or `none` is ∅.
    pub fn parse(stem: &Stem, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t.eq_ignore_ascii_case("none") {
            return Ok(Self::empty());
        }
        let positions = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&k| k >= 1)
                    .map(|k| k - 1)
                    .ok_or_else(|| Error::Parse(format!("bad substem index `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(stem, &positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based indices, as shown to users.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Substem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        let v: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        f.write_str(&v.join(","))
    }
}

/// Every up-closed subset of (Γ, ≺), sorted by size then lexicographically.
pub fn enumerate_substems(stem: &Stem) -> Vec<Substem> {
    // γ_i ≺ γ_j forces i < j, so deciding from the last element backwards
    // always knows the fate of everything above the current one.
    fn go(stem: &Stem, i: usize, chosen: &mut Vec<bool>, out: &mut Vec<Substem>) {
        if i == 0 {
            let v = (0..chosen.len()).filter(|&k| chosen[k]).collect();
            out.push(Substem(v));
            return;
        }
        let k = i - 1;
        go(stem, k, chosen, out);
        if (0..stem.len()).all(|j| !stem.precedes_at(k, j) || chosen[j]) {
            chosen[k] = true;
            go(stem, k, chosen, out);
            chosen[k] = false;
        }
    }
    let mut out = Vec::new();
    go(stem, stem.len(), &mut vec![false; stem.len()], &mut out);
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    out
}

pub fn is_antichain(stem: &Stem, set: &[usize]) -> bool {
    set.iter().all(|&i| set.iter().all(|&j| i == j || !stem.comparable_at(i, j)))
}

/// Every antichain of (Γ, ≺), sorted by size then lexicographically.
pub fn enumerate_antichains(stem: &Stem) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = enumerate_substems(stem).iter().map(|s| minimal_elements(stem, s)).collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// The smallest substem containing `positions`.
pub fn up_closure(stem: &Stem, positions: &[usize]) -> Substem {
    let mut set: BTreeSet<usize> = positions.iter().copied().collect();
    for &i in positions {
        set.extend((0..stem.len()).filter(|&j| stem.precedes_at(i, j)));
    }
    Substem(set.into_iter().collect())
}

/// The ≺-minimal members 𝓜 of a substem; `Δ_𝔨 = ⨆_{γ∈𝓜} Θ_γ`.
pub fn minimal_elements(stem: &Stem, sub: &Substem) -> Vec<usize> {
    sub.0.iter().copied().filter(|&i| !sub.0.iter().any(|&k| stem.precedes_at(k, i))).collect()
}

/// `Δ_𝔨⁺ = ⋃_{γ∈Γ_𝔨} Φ_γ⁺ ∪ {γ}`, sorted.
pub fn k_positive_roots(stem: &Stem, sub: &Substem) -> Vec<RootId> {
    let mut v: BTreeSet<RootId> = BTreeSet::new();
    for &i in &sub.0 {
        v.insert(stem.element(i));
        v.extend(stem.phi(i).iter().copied());
    }
    v.into_iter().collect()
}

/// Checks `Δ_𝔨⁺ = ⨆_{γ∈𝓜} Θ_γ⁺` with the Θ pairwise disjoint.
pub fn theta_decomposition_holds(stem: &Stem, sub: &Substem) -> bool {
    let m = minimal_elements(stem, sub);
    let mut union: Vec<RootId> = Vec::new();
    for &i in &m {
        union.extend_from_slice(stem.theta(i));
    }
    let total = union.len();
    union.sort_unstable();
    union.dedup();
    union.len() == total && union == k_positive_roots(stem, sub)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSpec {
    pub shape: ReductiveShape,
    pub substem: Substem,
    /// Dimension of the torus in 𝔨 beyond the Cartan subalgebra of its semisimple part.
    pub o_k_dim: usize,
}

impl PairSpec {
    pub fn new(shape: ReductiveShape, substem: Substem, o_k_dim: usize) -> Self {
        PairSpec { shape, substem, o_k_dim }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    DimNotPositive,
    DimNotMod4,
    DeficiencyNegative,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::DimNotPositive => "DIM_NOT_POSITIVE",
            Reason::DimNotMod4 => "DIM_NOT_MOD4",
            Reason::DeficiencyNegative => "DEFICIENCY_NEGATIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub rank_g: usize,
    pub srank_g: usize,
    pub rank_k: usize,
    pub srank_k: usize,
    pub dim_g: usize,
    pub dim_k: usize,
    /// rank(𝔤) + srank(𝔨) − rank(𝔨) − srank(𝔤)
    pub deficiency: i64,
    /// dim 𝔤 − dim 𝔨
    pub dim_diff: i64,
    pub verdict: bool,
    pub reasons: Vec<Reason>,
}

/// Largest admissible extra torus: dim 𝔬 − (rank Δ_𝔨 − #Γ_𝔨).
pub fn max_o_k_dim(alg: &Algebra, sub: &Substem) -> usize {
    let rank_ks = delta_k_rank(alg, sub);
    (alg.rank() - alg.stem().len()) - (rank_ks - sub.len())
}

/// Rank of the root subsystem Δ_𝔨, by exact matrix rank.
pub fn delta_k_rank(alg: &Algebra, sub: &Substem) -> usize {
    let roots = k_positive_roots(alg.stem(), sub);
    let vecs: Vec<Vec<Rational>> = roots.iter().map(|&a| coroot_vec(alg, a)).collect();
    rank_of(&vecs, alg.rank())
}

pub fn check_pair(alg: &Algebra, spec: &PairSpec) -> Result<PairReport> {
    ensure_shape(alg, spec)?;
    let stem = alg.stem();
    let max = max_o_k_dim(alg, &spec.substem);
    if spec.o_k_dim > max {
        return Err(Error::InvalidPair(format!("o_k_dim {} exceeds the available {max}", spec.o_k_dim)));
    }
    let k_pos = k_positive_roots(stem, &spec.substem);
    let rank_g = alg.rank();
    let srank_g = alg.srank();
    let rank_k = delta_k_rank(alg, &spec.substem) + spec.o_k_dim;
    let srank_k = 2 * spec.substem.len();
    let dim_g = alg.dim();
    let dim_k = rank_k + 2 * k_pos.len();
    let deficiency = rank_g as i64 + srank_k as i64 - rank_k as i64 - srank_g as i64;
    let dim_diff = dim_g as i64 - dim_k as i64;
    let mut reasons = Vec::new();
    if dim_diff <= 0 {
        reasons.push(Reason::DimNotPositive);
    }
    if dim_diff.rem_euclid(4) != 0 {
        reasons.push(Reason::DimNotMod4);
    }
    if deficiency < 0 {
        reasons.push(Reason::DeficiencyNegative);
    }
    Ok(PairReport {
        rank_g,
        srank_g,
        rank_k,
        srank_k,
        dim_g,
        dim_k,
        deficiency,
        dim_diff,
        verdict: reasons.is_empty(),
        reasons,
    })
}

fn ensure_shape(alg: &Algebra, spec: &PairSpec) -> Result<()> {
    if alg.shape() != &spec.shape {
        return Err(Error::InvalidPair("spec shape differs from the algebra".into()));
    }
    Substem::new(alg.stem(), spec.substem.positions()).map(|_| ())
}

/// Coordinates of `H_α` in 𝔥 = 𝔠 ⊕ span(H_i).
pub fn coroot_vec(alg: &Algebra, a: RootId) -> Vec<Rational> {
    let rs = alg.rs();
    let mut v = vec![Rational::zero(); alg.rank()];
    let base = rs.shape().center_dim + rs.component_offset(rs.component(a));
    for (j, c) in rs.coroot_coords(a).into_iter().enumerate() {
        v[base + j] = rat_int(c);
    }
    v
}

/// The functional `α` on 𝔥 as a row vector.
pub fn root_functional(alg: &Algebra, a: RootId) -> Vec<Rational> {
    let rs = alg.rs();
    let c = rs.shape().center_dim;
    let mut v = vec![Rational::zero(); alg.rank()];
    for g in 0..rs.semisimple_rank() {
        v[c + g] = rat_int(rs.pairing_with_simple(a, g));
    }
    v
}

/// Gram matrix of the invariant form on 𝔥.
pub fn cartan_gram(alg: &Algebra) -> Matrix<Rational> {
    let r = alg.rank();
    let b = alg.basis();
    let mut m = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = rat_int(b.form_basis(i, j));
        }
    }
    m
}

/// Rows `v·G` so that a kernel of them is the orthogonal complement of `vs`.
fn form_rows(gram: &Matrix<Rational>, vs: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let gt = gram.transpose();
    vs.iter().map(|v| gt.mul_vec(v).expect("length")).collect()
}

fn kernel_of(rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|k| rat_int((i == k) as i64)).collect()).collect();
    }
    Matrix::from_rows(rows).expect("rectangular").kernel()
}

/// A concrete splitting of 𝔥 used by the structure builder. All vectors are
/// rational coordinates in 𝔥 = 𝔠 ⊕ span(H_i).
#[derive(Clone, Debug)]
pub struct CartanSplit {
    /// 𝔥 ∩ 𝔨
    pub h_k: Vec<Vec<Rational>>,
    /// orthogonal complement of 𝔥_𝔨
    pub h_p: Vec<Vec<Rational>>,
    /// 𝔬 = ⋂_{γ∈Γ} ker γ
    pub o: Vec<Vec<Rational>>,
    /// 𝔬_𝔭 = 𝔥_𝔭 ∩ 𝔬
    pub o_p: Vec<Vec<Rational>>,
    /// 𝔬_𝔨 = 𝔥_𝔨 ∩ 𝔬
    pub o_k_dim: usize,
    /// first #Γ_𝔭 vectors of 𝔬_𝔭; `z_γ` for Γ_𝔭 in stem order
    pub z: Vec<Vec<Rational>>,
    /// remaining vectors of 𝔬_𝔭
    pub j: Vec<Vec<Rational>>,
}

/// 𝔥_𝔨, 𝔥_𝔭, 𝔬, 𝔬_𝔭 and dim 𝔬_𝔨, without splitting 𝔬_𝔭 into 𝔷_𝔭 and 𝔧_𝔭.
fn cartan_subspaces(alg: &Algebra, spec: &PairSpec) -> Result<CartanSplit> {
    ensure_shape(alg, spec)?;
    let stem = alg.stem();
    let r = alg.rank();
    let gram = cartan_gram(alg);
    let k_pos = k_positive_roots(stem, &spec.substem);
    let gamma_rows: Vec<Vec<Rational>> = stem.elements().iter().map(|&g| root_functional(alg, g)).collect();

    // 𝔥_{𝔨_s}: a basis extracted from the coroots of Δ_𝔨
    let mut h_k: Vec<Vec<Rational>> = Vec::new();
    for &a in &k_pos {
        let v = coroot_vec(alg, a);
        let mut trial = h_k.clone();
        trial.push(v);
        if rank_of(&trial, r) > h_k.len() {
            h_k = trial;
        }
    }
    if spec.o_k_dim > 0 {
        let mut rows = gamma_rows.clone();
        rows.extend(form_rows(&gram, &h_k));
        let extra = kernel_of(rows, r);
        if extra.len() < spec.o_k_dim {
            return Err(Error::InvalidPair("not enough room in 𝔬 for the extra torus".into()));
        }
        h_k.extend(extra.into_iter().take(spec.o_k_dim));
    }
    let h_p = kernel_of(form_rows(&gram, &h_k), r);
    let o = kernel_of(gamma_rows.clone(), r);

    let gamma_p: Vec<usize> = (0..stem.len()).filter(|&i| !spec.substem.contains(i)).collect();
    let mut rows: Vec<Vec<Rational>> = gamma_p.iter().map(|&i| gamma_rows[i].clone()).collect();
    rows.extend(form_rows(&gram, &h_k));
    let o_p = kernel_of(rows, r);

    let mut rows = gamma_rows;
    rows.extend(form_rows(&gram, &h_p));
    let o_k_dim = kernel_of(rows, r).len();

    Ok(CartanSplit { h_k, h_p, o, o_p, o_k_dim, z: Vec::new(), j: Vec::new() })
}

pub fn cartan_split(alg: &Algebra, spec: &PairSpec) -> Result<CartanSplit> {
    let mut split = cartan_subspaces(alg, spec)?;
    let gp = alg.stem().len() - spec.substem.len();
    if split.o_p.len() < gp {
        return Err(Error::Invariant("𝔬_𝔭 is smaller than #Γ_𝔭".into()));
    }
    split.z = split.o_p[..gp].to_vec();
    split.j = split.o_p[gp..].to_vec();
    Ok(split)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementData {
    /// positions of Γ_𝔭 = Γ ∖ Γ_𝔨 in stem order
    pub gamma_p: Vec<usize>,
    pub delta_p_plus: Vec<RootId>,
    pub delta_k_plus: Vec<RootId>,
    pub dim_h_p: usize,
    pub dim_o: usize,
    pub dim_o_k: usize,
    pub dim_o_p: usize,
    pub dim_w_p: usize,
    pub dim_z_p: usize,
    pub dim_j_p: usize,
}

/// 𝔭-side data of a pair. Refuses specs failing the pair predicate unless `force`.
pub fn complement_data(alg: &Algebra, spec: &PairSpec, force: bool) -> Result<ComplementData> {
    let report = check_pair(alg, spec)?;
    if !report.verdict && !force {
        let why: Vec<String> = report.reasons.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidPair(format!("not a hypercomplex pair: {}", why.join(", "))));
    }
    let stem = alg.stem();
    let split = cartan_split(alg, spec)?;
    let gamma_p: Vec<usize> = (0..stem.len()).filter(|&i| !spec.substem.contains(i)).collect();
    let mut delta_p_plus: BTreeSet<RootId> = BTreeSet::new();
    for &i in &gamma_p {
        delta_p_plus.insert(stem.element(i));
        delta_p_plus.extend(stem.phi(i).iter().copied());
    }
    Ok(ComplementData {
        dim_h_p: split.h_p.len(),
        dim_o: split.o.len(),
        dim_o_k: split.o_k_dim,
        dim_o_p: split.o_p.len(),
        dim_w_p: gamma_p.len(),
        dim_z_p: split.z.len(),
        dim_j_p: split.j.len(),
        gamma_p,
        delta_p_plus: delta_p_plus.into_iter().collect(),
        delta_k_plus: k_positive_roots(stem, &spec.substem),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanDimensions {
    pub deficiency: i64,
    pub h_p_minus_two_gamma_p: i64,
    pub o_p_minus_gamma_p: i64,
}

impl CartanDimensions {
    pub fn holds(&self) -> bool {
        self.deficiency == self.h_p_minus_two_gamma_p && self.deficiency == self.o_p_minus_gamma_p
    }
}

/// The three integers that must agree for a stemmed 𝔨, computed independently:
/// the deficiency from ranks, the others from the concrete subspaces 𝔥_𝔭 and 𝔬_𝔭.
pub fn cartan_dimensions(alg: &Algebra, spec: &PairSpec) -> Result<CartanDimensions> {
    let report = check_pair(alg, spec)?;
    let split = cartan_subspaces(alg, spec)?;
    let gp = (alg.stem().len() - spec.substem.len()) as i64;
    Ok(CartanDimensions {
        deficiency: report.deficiency,
        h_p_minus_two_gamma_p: split.h_p.len() as i64 - 2 * gp,
        o_p_minus_gamma_p: split.o_p.len() as i64 - gp,
    })
}

/// `γ ∈ Γ_𝔭, β ∈ Δ_𝔨, α ∈ Φ_γ, α + β ∈ Δ ⇒ α + β ∈ Φ_γ and γ ± β ∉ Δ`.
/// Returns the number of violating triples.
pub fn wing_invariance_violations(alg: &Algebra, sub: &Substem) -> usize {
    let rs = alg.rs();
    let stem = alg.stem();
    let k_pos = k_positive_roots(stem, sub);
    let k_all: Vec<RootId> = k_pos.iter().flat_map(|&b| [b, rs.neg(b)]).collect();
    let mut bad = 0;
    for i in (0..stem.len()).filter(|&i| !sub.contains(i)) {
        let g = stem.element(i);
        let phi: BTreeSet<RootId> = stem.phi(i).iter().flat_map(|&a| [a, rs.neg(a)]).collect();
        for &b in &k_all {
            if rs.add(g, b).is_some() || rs.sub(g, b).is_some() {
                bad += 1;
            }
            for &a in &phi {
                if let Some(s) = rs.add(a, b) {
                    if !phi.contains(&s) {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

//! The stem Γ of a positive system, its partial order ≺ and the sets Φ_γ⁺, Θ_γ.
//!
//! Γ is found by peeling: in each irreducible component of what is left take
//! the highest root θ, record the component as Θ_θ, remove θ together with
//! Φ_θ⁺ and repeat. The result is the unique subset with
//! `Δ⁺ = Γ ⊔ ⨆_{γ∈Γ} Φ_γ⁺`; for small systems that uniqueness is confirmed
//! by brute force.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::roots::{ReductiveShape, RootId, RootSystem};

/// `Φ_ζ⁺ = {β ∈ Δ⁺ : ζ − β ∈ Δ⁺}`.
pub fn phi_plus(rs: &RootSystem, zeta: RootId) -> Result<Vec<RootId>> {
    if !rs.is_positive(zeta) {
        return Err(Error::InvalidPair("Φ⁺ is defined for positive roots".into()));
    }
    Ok(rs.positives().filter(|&b| rs.sub(zeta, b).is_some_and(|d| rs.is_positive(d))).collect())
}

/// One step of the peeling: highest root, its component, and what was removed with it.
#[derive(Clone, Debug)]
struct Peeled {
    root: RootId,
    theta: Vec<RootId>,
}

/// Peels the positive part of a closed subsystem; entries come out stage by stage.
fn peel(rs: &RootSystem, positives: &[RootId]) -> Result<Vec<Peeled>> {
    let mut out = Vec::new();
    let mut stage: Vec<Vec<RootId>> = rs.irreducible_components(positives);
    while !stage.is_empty() {
        let mut next = Vec::new();
        for comp in stage {
            let top = rs.highest_roots(&comp)?;
            let theta_root = top[0];
            let removed: BTreeSet<RootId> = comp
                .iter()
                .copied()
                .filter(|&b| b == theta_root || rs.sub(theta_root, b).is_some_and(|d| comp.binary_search(&d).is_ok()))
                .collect();
            let rest: Vec<RootId> = comp.iter().copied().filter(|b| !removed.contains(b)).collect();
            let mut sym = rest.clone();
            sym.extend(rest.iter().map(|&b| rs.neg(b)));
            if !rs.is_closed(&sym) {
                return Err(Error::Invariant("peeling remainder is not closed".into()));
            }
            out.push(Peeled { root: theta_root, theta: comp });
            next.extend(rs.irreducible_components(&rest));
        }
        stage = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stem {
    elements: Vec<RootId>,
    /// Θ_γ⁺ for each element, sorted.
    theta: Vec<Vec<RootId>>,
    /// Φ_γ⁺ for each element, sorted.
    phi: Vec<Vec<RootId>>,
    /// `below[i][j]` iff γ_i ≺ γ_j.
    below: Vec<Vec<bool>>,
    maximal: usize,
}

impl Stem {
    pub fn compute(rs: &RootSystem) -> Result<Self> {
        let pos: Vec<RootId> = rs.positives().collect();
        let mut peeled = peel(rs, &pos)?;
        let maximal_roots = rs.highest_roots(&pos)?;
        let min_simple = |theta: &[RootId]| -> usize {
            theta
                .iter()
                .filter(|&&b| rs.height(b) == 1)
                .map(|&b| {
                    let r = rs.root(b);
                    rs.simple_global(r.component, r.coords.iter().position(|&c| c == 1).unwrap_or(0))
                })
                .min()
                .unwrap_or(usize::MAX)
        };
        // Maximal roots first, by component; then larger Θ before smaller, which
        // is a linear extension of ≺ since γ ≺ δ forces Θ_δ ⊊ Θ_γ.
        peeled.sort_by_key(|p| {
            let is_max = maximal_roots.contains(&p.root);
            (
                !is_max,
                if is_max { 0 } else { usize::MAX - p.theta.len() },
                rs.component(p.root),
                min_simple(&p.theta),
                p.root,
            )
        });
        let elements: Vec<RootId> = peeled.iter().map(|p| p.root).collect();
        let theta: Vec<Vec<RootId>> = peeled.into_iter().map(|p| p.theta).collect();
        let phi = elements.iter().map(|&g| phi_plus(rs, g)).collect::<Result<Vec<_>>>()?;
        let d = elements.len();
        let below =
            (0..d).map(|i| (0..d).map(|j| i != j && theta[i].binary_search(&elements[j]).is_ok()).collect()).collect();
        Ok(Stem { elements, theta, phi, below, maximal: maximal_roots.len() })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// γ_1 … γ_d, maximal roots first.
    pub fn elements(&self) -> &[RootId] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> RootId {
        self.elements[i]
    }

    pub fn position(&self, g: RootId) -> Option<usize> {
        self.elements.iter().position(|&x| x == g)
    }

    pub fn theta(&self, i: usize) -> &[RootId] {
        &self.theta[i]
    }

    pub fn phi(&self, i: usize) -> &[RootId] {
        &self.phi[i]
    }

    /// Number of maximal roots; they occupy positions `0..n_maximal()`.
    pub fn n_maximal(&self) -> usize {
        self.maximal
    }

    /// γ_i ≺ γ_j by position.
    pub fn precedes_at(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// γ ≺ δ for stem roots; errors when either argument is outside Γ.
    pub fn precedes(&self, gamma: RootId, delta: RootId) -> Result<bool> {
        let (i, j) = self.positions(gamma, delta)?;
        Ok(self.below[i][j])
    }

    fn positions(&self, a: RootId, b: RootId) -> Result<(usize, usize)> {
        let f = |x| self.position(x).ok_or_else(|| Error::InvalidSubstem("root is not in the stem".into()));
        Ok((f(a)?, f(b)?))
    }

    pub fn comparable_at(&self, i: usize, j: usize) -> bool {
        i == j || self.below[i][j] || self.below[j][i]
    }

    /// Covering pairs `(i, j)` with γ_i ≺ γ_j and nothing strictly between.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        let d = self.len();
        let mut edges = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if self.below[i][j] && !(0..d).any(|k| self.below[i][k] && self.below[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// DOT digraph of the covering relation, nodes labelled γ1…γd.
    pub fn hasse_dot(&self, rs: &RootSystem) -> String {
        let mut s = String::from("digraph stem {\n  rankdir=LR;\n");
        for (i, &g) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  g{} [label=\"γ{} {}\"];", i + 1, i + 1, rs.root(g));
        }
        for (i, j) in self.covering_edges() {
            let _ = writeln!(s, "  g{} -> g{};", i + 1, j + 1);
        }
        s.push_str("}\n");
        s
    }

    /// `Δ⁺ = Γ ⊔ ⨆ Φ_γ⁺`.
    pub fn partition_holds(&self, rs: &RootSystem) -> bool {
        let mut seen = vec![0u32; rs.n_positive()];
        for (i, &g) in self.elements.iter().enumerate() {
            seen[g] += 1;
            for &b in &self.phi[i] {
                seen[b] += 1;
            }
        }
        seen.iter().all(|&c| c == 1)
    }

    /// Runs every structural check and collects human-readable violations.
    pub fn verify(&self, rs: &RootSystem) -> StemReport {
        verify_stem_properties(self, rs)
    }
}

/// 2·|Γ| for the given shape (0 when abelian).
pub fn srank(shape: &ReductiveShape) -> Result<usize> {
    let rs = RootSystem::build(shape)?;
    Ok(2 * Stem::compute(&rs)?.len())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StemReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl StemReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond {
            self.violations.push(msg());
        }
    }
}

/// Checks the partition and the structural properties of the stem: closure of
/// sums into Φ_γ⁺ (below a deeper element), sums within one block landing on γ,
/// orthogonality along ≺ and across incomparable elements, positivity of
/// `α(H_γ)`, domination by a maximal root, and `α = β₁ − β₂` with `β_i ∈ Φ_δ⁺`.
pub fn verify_stem_properties(stem: &Stem, rs: &RootSystem) -> StemReport {
    let mut rep = StemReport::default();
    rep.check(stem.partition_holds(rs), || "Δ⁺ is not Γ ⊔ ⨆ Φ_γ⁺".into());

    let d = stem.len();
    let block = |i: usize| -> Vec<RootId> {
        let mut v = stem.phi[i].clone();
        v.push(stem.elements[i]);
        v
    };
    let in_phi = |i: usize, x: RootId| stem.phi[i].binary_search(&x).is_ok();
    let is_root_pm = |a: RootId, b: RootId| rs.add(a, b).is_some() || rs.sub(a, b).is_some();

    for i in 0..d {
        let gi = stem.elements[i];
        let bi = block(i);
        for j in 0..d {
            let gj = stem.elements[j];
            let bj = block(j);
            for &a in &bi {
                for &b in &bj {
                    if stem.below[i][j] {
                        // δ = γ_j ≻ γ = γ_i
                        for s in [rs.add(a, b), rs.sub(a, b)].into_iter().flatten() {
                            rep.check(in_phi(i, s), || {
                                format!("γ{}≺γ{}: {} ± {} ∉ Φ", i + 1, j + 1, rs.root(a), rs.root(b))
                            });
                        }
                    } else if i == j {
                        if let Some(s) = rs.add(a, b) {
                            rep.check(s == gi, || format!("γ{}: sum inside block is not γ", i + 1));
                        }
                    } else if !stem.comparable_at(i, j) {
                        rep.check(!is_root_pm(a, b), || format!("γ{}, γ{} incomparable but α ± β ∈ Δ", i + 1, j + 1));
                        rep.check(rs.cartan_int(a, gj) == 0, || {
                            format!("γ{}, γ{} incomparable but α(H_δ) ≠ 0", i + 1, j + 1)
                        });
                    }
                }
                if stem.below[j][i] {
                    // δ = γ_j ≺ γ = γ_i
                    rep.check(!is_root_pm(a, gj) && rs.cartan_int(a, gj) == 0, || {
                        format!("γ{}≺γ{}: α ± δ ∈ Δ or α(H_δ) ≠ 0", j + 1, i + 1)
                    });
                    let ok = stem.phi[j].iter().any(|&b1| rs.sub(b1, a).is_some_and(|b2| in_phi(j, b2)));
                    rep.check(ok, || format!("γ{}≺γ{}: {} is not a difference in Φ_δ⁺", j + 1, i + 1, rs.root(a)));
                }
            }
        }
        for &a in &bi {
            if a != gi {
                rep.check(rs.sub(a, gi).is_some_and(|x| !rs.is_positive(x)), || format!("γ{}: α − γ ∉ Δ⁻", i + 1));
            }
            rep.check(rs.add(a, gi).is_none(), || format!("γ{}: α + γ ∈ Δ", i + 1));
            rep.check(rs.cartan_int(a, gi) > 0, || format!("γ{}: α(H_γ) ≤ 0", i + 1));
        }
        let dominated = (0..stem.n_maximal()).any(|m| m == i || stem.below[m][i]);
        rep.check(dominated, || format!("γ{} dominates no maximal root", i + 1));
    }

    // ≺-minimal elements are exactly the maximal roots, and the listing extends ≺
    for i in 0..d {
        let minimal = !(0..d).any(|k| stem.below[k][i]);
        rep.check(minimal == (i < stem.n_maximal()), || {
            format!("γ{}: minimality disagrees with maximal-root position", i + 1)
        });
        for j in 0..d {
            if stem.below[i][j] {
                rep.check(i < j, || format!("γ{}≺γ{} but listed later", i + 1, j + 1));
            }
        }
    }

    // the stem of Θ_γ⁺ is Γ ∩ Θ_γ
    for i in 0..d {
        let sub: BTreeSet<RootId> = match peel(rs, &stem.theta[i]) {
            Ok(p) => p.into_iter().map(|x| x.root).collect(),
            Err(e) => {
                rep.violations.push(format!("γ{}: {e}", i + 1));
                continue;
            }
        };
        let inter: BTreeSet<RootId> =
            stem.elements.iter().copied().filter(|g| stem.theta[i].binary_search(g).is_ok()).collect();
        rep.check(sub == inter, || format!("γ{}: stem of Θ⁺ ≠ Γ ∩ Θ", i + 1));
    }
    rep
}

/// All subsets `S ⊂ Δ⁺` with `Δ⁺ = S ⊔ ⨆_{γ∈S} Φ_γ⁺`, by exhaustive search.
/// Only for `|Δ⁺| ≤ 20`; returns `None` for larger systems.
pub fn brute_force_stems(rs: &RootSystem) -> Option<Vec<Vec<RootId>>> {
    let n = rs.n_positive();
    if n > 20 {
        return None;
    }
    let masks: Vec<u32> = rs
        .positives()
        .map(|g| {
            let phi = phi_plus(rs, g).unwrap_or_default();
            phi.iter().fold(1u32 << g, |m, &b| m | (1 << b))
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let chunk_bits = n.min(8);
    let chunks = 1usize << chunk_bits;
    let rest = n - chunk_bits;
    let found = par::flat_map_range(chunks, |hi| {
        let mut hits = Vec::new();
        for lo in 0..(1u32 << rest) {
            let s = ((hi as u32) << rest) | lo;
            let mut acc = 0u32;
            let mut ok = true;
            let mut bits = s;
            while bits != 0 {
                let g = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if acc & masks[g] != 0 {
                    ok = false;
                    break;
                }
                acc |= masks[g];
            }
            if ok && acc == full {
                hits.push((0..n).filter(|&k| s >> k & 1 == 1).collect::<Vec<RootId>>());
            }
        }
        hits
    });
    Some(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> (RootSystem, Stem) {
        let rs = RootSystem::build(&s.parse().unwrap()).unwrap();
        let st = Stem::compute(&rs).unwrap();
        (rs, st)
    }

    #[test]
    fn a1_single_node() {
        let (rs, st) = build("A1");
        assert_eq!(st.len(), 1);
        assert!(phi_plus(&rs, 0).unwrap().is_empty());
        assert!(!st.precedes_at(0, 0));
        assert!(st.covering_edges().is_empty());
        assert!(st.hasse_dot(&rs).contains("g1 ["));
    }

    #[test]
    fn a2_phi() {
        let (rs, st) = build("A2");
        let top = st.element(0);
        assert_eq!(rs.root(top).coords, vec![1, 1]);
        assert_eq!(phi_plus(&rs, top).unwrap().len(), 2);
        assert!(phi_plus(&rs, rs.neg(top)).is_err());
    }

    #[test]
    fn abelian_is_empty() {
        let (_, st) = build("c^3");
        assert!(st.is_empty());
        assert_eq!(srank(&"c^3".parse().unwrap()).unwrap(), 0);
    }

    #[test]
    fn precedes_rejects_non_stem_roots() {
        let (rs, st) = build("A3");
        let simple = rs.simple_root(0, 0);
        assert!(st.precedes(st.element(0), simple).is_err());
        assert!(st.precedes(st.element(0), st.element(1)).unwrap());
    }

    #[test]
    fn brute_force_a3() {
        let (rs, st) = build("A3");
        let all = brute_force_stems(&rs).unwrap();
        assert_eq!(all.len(), 1);
        let mut mine = st.elements().to_vec();
        mine.sort_unstable();
        assert_eq!(all[0], mine);
    }
}

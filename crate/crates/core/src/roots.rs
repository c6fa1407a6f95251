//! Reduced root systems of reductive Lie algebras, in simple-root coordinates.
//!
//! Every simple component is described by the integer Gram matrix of its
//! simple roots in Bourbaki numbering. All other data (positive roots,
//! pairings, strings) is derived from it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    /// Validates the rank for the family. D2 and D3 are refused: pass A1 × A1 or A3.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            let hint = match (family, rank) {
                (Family::D, 2) => " (use A1 x A1)",
                (Family::D, 3) => " (use A3)",
                _ => "",
            };
            Err(Error::UnsupportedType(format!("{}{}{hint}", family.letter(), rank)))
        }
    }

    /// Expected number of roots, used as a build-time check.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    pub fn dim(&self) -> usize {
        self.rank + self.root_count()
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots, scaled to be integral.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            Family::A => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for i in 1..n {
                    link(&mut b, i - 1, i, -1);
                }
            }
            Family::B => {
                // long roots have length² 4, the last simple root is short
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 4;
                }
                b[n - 1][n - 1] = 2;
                for i in 1..n {
                    link(&mut b, i - 1, i, -2);
                }
            }
            Family::C => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 2;
                }
                b[n - 1][n - 1] = 4;
                for i in 1..n - 1 {
                    link(&mut b, i - 1, i, -1);
                }
                link(&mut b, n - 2, n - 1, -2);
            }
            Family::D => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut b, i - 1, i, -1);
                }
                link(&mut b, n - 3, n - 1, -1);
            }
            Family::E => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 2;
                }
                link(&mut b, 0, 2, -1);
                link(&mut b, 1, 3, -1);
                for i in 3..n {
                    link(&mut b, i - 1, i, -1);
                }
            }
            Family::F => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                link(&mut b, 0, 1, -2);
                link(&mut b, 1, 2, -2);
                link(&mut b, 2, 3, -1);
            }
            Family::G => {
                b[0][0] = 2;
                b[1][1] = 6;
                link(&mut b, 0, 1, -3);
            }
        }
        b
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown simple type `{s}`"))),
        };
        let rank: usize =
            chars.as_str().trim_start_matches('_').parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        SimpleType::new(family, rank)
    }
}

/// `𝔤 = 𝔠 ⊕ 𝔤_s`: an abelian part of dimension `center_dim` plus simple ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ReductiveShape {
    pub center_dim: usize,
    pub simples: Vec<SimpleType>,
}

impl ReductiveShape {
    pub fn new(center_dim: usize, simples: Vec<SimpleType>) -> Self {
        ReductiveShape { center_dim, simples }
    }

    pub fn simple(t: SimpleType) -> Self {
        Self::new(0, vec![t])
    }

    pub fn rank(&self) -> usize {
        self.center_dim + self.simples.iter().map(|t| t.rank).sum::<usize>()
    }

    pub fn dim(&self) -> usize {
        self.center_dim + self.simples.iter().map(SimpleType::dim).sum::<usize>()
    }
}

impl fmt::Display for ReductiveShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.center_dim > 0 {
            parts.push(format!("c^{}", self.center_dim));
        }
        parts.extend(self.simples.iter().map(ToString::to_string));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

impl FromStr for ReductiveShape {
    type Err = Error;

    /// Accepts e.g. `c^4 x A2 x D5`; factors may be separated by `x`, `×`, `+` or spaces.
    fn from_str(s: &str) -> Result<Self> {
        let mut shape = ReductiveShape::default();
        let tokens = s
            .split(|c: char| c == '×' || c == '+' || c.is_whitespace())
            .flat_map(|t| t.split('x'))
            .map(str::trim)
            .filter(|t| !t.is_empty());
        let mut any = false;
        for tok in tokens {
            any = true;
            if tok == "0" {
                continue;
            }
            if let Some(rest) = tok.strip_prefix("c^").or_else(|| tok.strip_prefix('c')) {
                let k: usize = if rest.is_empty() {
                    1
                } else {
                    rest.parse().map_err(|_| Error::Parse(format!("bad center `{tok}`")))?
                };
                shape.center_dim += k;
            } else {
                shape.simples.push(tok.parse()?);
            }
        }
        if !any {
            return Err(Error::Parse("empty shape".into()));
        }
        Ok(shape)
    }
}

/// A root, in coordinates over the simple roots of its component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub component: usize,
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root { component: self.component, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]({})", self.component + 1, c.join(","))
    }
}

/// Index of a root inside a [`RootSystem`]. Positive roots come first.
pub type RootId = usize;

#[derive(Clone, Debug)]
pub struct RootSystem {
    shape: ReductiveShape,
    roots: Vec<Root>,
    index: HashMap<Root, RootId>,
    n_pos: usize,
    grams: Vec<Vec<Vec<i64>>>,
    /// Global index of the first simple root of each component.
    offsets: Vec<usize>,
    norms: Vec<i64>,
    sums: Vec<Option<u32>>,
}

impl RootSystem {
    pub fn build(shape: &ReductiveShape) -> Result<Self> {
        let mut positives: Vec<Root> = Vec::new();
        let mut grams = Vec::new();
        let mut offsets = Vec::new();
        let mut offset = 0;
        for (ci, t) in shape.simples.iter().enumerate() {
            let t = SimpleType::new(t.family, t.rank)?;
            let gram = t.gram();
            let comp = positive_roots(ci, &gram);
            if 2 * comp.len() != t.root_count() {
                return Err(Error::Invariant(format!(
                    "{t}: generated {} roots, expected {}",
                    2 * comp.len(),
                    t.root_count()
                )));
            }
            positives.extend(comp);
            grams.push(gram);
            offsets.push(offset);
            offset += t.rank;
        }
        positives.sort_by(|a, b| (a.component, a.height(), &a.coords).cmp(&(b.component, b.height(), &b.coords)));
        let n_pos = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(Root::neg));
        let index: HashMap<Root, RootId> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut rs = RootSystem {
            shape: shape.clone(),
            roots,
            index,
            n_pos,
            grams,
            offsets,
            norms: Vec::new(),
            sums: Vec::new(),
        };
        rs.norms = (0..rs.len()).map(|a| rs.inner(a, a)).collect();
        let n = rs.len();
        let mut sums = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if rs.roots[a].component != rs.roots[b].component {
                    continue;
                }
                let s = rs.add_coords(a, b, 1);
                sums[a * n + b] = rs.index.get(&s).map(|&i| i as u32);
            }
        }
        rs.sums = sums;
        Ok(rs)
    }

    pub fn shape(&self) -> &ReductiveShape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    /// Rank of the semisimple part.
    pub fn semisimple_rank(&self) -> usize {
        self.rank() - self.shape.center_dim
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn n_positive(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> std::ops::Range<RootId> {
        0..self.n_pos
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.n_pos
    }

    pub fn id_of(&self, r: &Root) -> Option<RootId> {
        self.index.get(r).copied()
    }

    pub fn neg(&self, id: RootId) -> RootId {
        if id < self.n_pos {
            id + self.n_pos
        } else {
            id - self.n_pos
        }
    }

    pub fn component(&self, id: RootId) -> usize {
        self.roots[id].component
    }

    pub fn height(&self, id: RootId) -> i64 {
        self.roots[id].height()
    }

    /// The simple root `α_i` (0-based `i`) of component `c`.
    pub fn simple_root(&self, c: usize, i: usize) -> RootId {
        let mut coords = vec![0; self.shape.simples[c].rank];
        coords[i] = 1;
        self.index[&Root { component: c, coords }]
    }

    /// Global index of the simple root `α_i` of component `c` among all simple roots.
    pub fn simple_global(&self, c: usize, i: usize) -> usize {
        self.offsets[c] + i
    }

    pub fn component_offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    pub fn gram(&self, c: usize) -> &[Vec<i64>] {
        &self.grams[c]
    }

    /// `α + β` when it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a * self.len() + b].map(|i| i as usize)
    }

    /// `α − β` when it is a root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add(a, self.neg(b))
    }

    fn add_coords(&self, a: RootId, b: RootId, sign: i64) -> Root {
        let (ra, rb) = (&self.roots[a], &self.roots[b]);
        Root { component: ra.component, coords: ra.coords.iter().zip(&rb.coords).map(|(x, y)| x + sign * y).collect() }
    }

    /// The (scaled, integral) inner product `(α, β)`; zero across components.
    pub fn inner(&self, a: RootId, b: RootId) -> i64 {
        let (ra, rb) = (&self.roots[a], &self.roots[b]);
        if ra.component != rb.component {
            return 0;
        }
        let g = &self.grams[ra.component];
        let mut s = 0;
        for (i, x) in ra.coords.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in rb.coords.iter().enumerate() {
                s += x * y * g[i][j];
            }
        }
        s
    }

    pub fn norm(&self, a: RootId) -> i64 {
        self.norms[a]
    }

    /// `α(H_β) = 2(α, β)/(β, β)`.
    pub fn cartan_int(&self, a: RootId, b: RootId) -> i64 {
        2 * self.inner(a, b) / self.norms[b]
    }

    /// `α(H_i)` for the simple coroot with global index `g`.
    pub fn pairing_with_simple(&self, a: RootId, g: usize) -> i64 {
        let (c, i) = self.locate_simple(g);
        let r = &self.roots[a];
        if r.component != c {
            return 0;
        }
        let gram = &self.grams[c];
        let ip: i64 = r.coords.iter().enumerate().map(|(j, x)| x * gram[j][i]).sum();
        2 * ip / gram[i][i]
    }

    /// Maps a global simple-root index to (component, local index).
    pub fn locate_simple(&self, g: usize) -> (usize, usize) {
        let c = self.offsets.iter().rposition(|&o| o <= g).expect("simple index");
        (c, g - self.offsets[c])
    }

    /// Coordinates of the coroot `H_β` over the simple coroots `H_i` (local to the component).
    pub fn coroot_coords(&self, b: RootId) -> Vec<i64> {
        let r = &self.roots[b];
        let g = &self.grams[r.component];
        let nb = self.norms[b];
        r.coords
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let v = c * g[j][j];
                debug_assert_eq!(v % nb, 0);
                v / nb
            })
            .collect()
    }

    /// The β-string through α: the largest `p ≤ 0 ≤ q` with `α + nβ ∈ Δ` for `p ≤ n ≤ q`.
    pub fn root_string(&self, a: RootId, b: RootId) -> Result<(i64, i64)> {
        if a == b || a == self.neg(b) {
            return Err(Error::InvalidPair("root string of ±α through α".into()));
        }
        let step = |mut cur: RootId, dir: RootId| {
            let mut n = 0;
            while let Some(next) = self.add(cur, dir) {
                cur = next;
                n += 1;
            }
            n
        };
        Ok((-step(a, self.neg(b)), step(a, b)))
    }

    /// True iff `α, β ∈ S` and `α + β ∈ Δ` imply `α + β ∈ S`.
    pub fn is_closed(&self, subset: &[RootId]) -> bool {
        let mut mem = vec![false; self.len()];
        for &a in subset {
            mem[a] = true;
        }
        subset.iter().all(|&a| subset.iter().all(|&b| self.add(a, b).is_none_or(|s| mem[s])))
    }

    pub fn is_symmetric(&self, subset: &[RootId]) -> bool {
        let mut mem = vec![false; self.len()];
        for &a in subset {
            mem[a] = true;
        }
        subset.iter().all(|&a| mem[self.neg(a)])
    }

    /// Partition of `subset` into classes connected by non-orthogonality.
    /// Blocks are listed by their smallest root id, each block sorted.
    pub fn irreducible_components(&self, subset: &[RootId]) -> Vec<Vec<RootId>> {
        let n = subset.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.inner(subset[i], subset[j]) != 0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut blocks: Vec<Vec<RootId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| subset[i]);
        for i in order {
            let r = find(&mut parent, i);
            let k = *slot.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(subset[i]);
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        blocks
    }

    /// One highest root per irreducible component of the positive part `subset`
    /// of a closed symmetric subsystem.
    pub fn highest_roots(&self, subset: &[RootId]) -> Result<Vec<RootId>> {
        if subset.iter().any(|&a| !self.is_positive(a)) {
            return Err(Error::InvalidPair("highest_roots expects positive roots".into()));
        }
        let mut sym: Vec<RootId> = subset.to_vec();
        sym.extend(subset.iter().map(|&a| self.neg(a)));
        if !self.is_closed(&sym) {
            return Err(Error::InvalidPair("subset is not closed".into()));
        }
        self.irreducible_components(subset)
            .into_iter()
            .map(|block| {
                let top = block.iter().map(|&a| self.height(a)).max().unwrap_or(0);
                let tops: Vec<RootId> = block.iter().copied().filter(|&a| self.height(a) == top).collect();
                if tops.len() == 1 {
                    Ok(tops[0])
                } else {
                    Err(Error::Invariant("highest root not unique".into()))
                }
            })
            .collect()
    }

    /// Dimension of 𝔤.
    pub fn dim(&self) -> usize {
        self.rank() + self.len()
    }
}

/// Positive roots of one simple component, generated by root strings.
fn positive_roots(component: usize, gram: &[Vec<i64>]) -> Vec<Root> {
    let n = gram.len();
    let pair = |v: &[i64], i: usize| -> i64 {
        let ip: i64 = v.iter().enumerate().map(|(j, x)| x * gram[j][i]).sum();
        2 * ip / gram[i][i]
    };
    let mut all: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for v in &layer {
            for i in 0..n {
                // p: how far the α_i-string extends downward from v
                let mut p = 0;
                let mut w = v.clone();
                loop {
                    w[i] -= 1;
                    if all.contains(&w) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pair(v, i);
                if q > 0 {
                    let mut u = v.clone();
                    u[i] += 1;
                    if all.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    all.into_iter().map(|coords| Root { component, coords }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_cardinalities() {
        assert_eq!(rs("A2").len(), 6);
        assert_eq!(rs("A2").n_positive(), 3);
        assert_eq!(rs("G2").len(), 12);
        assert_eq!(rs("G2").n_positive(), 6);
        let ab = rs("c^2");
        assert!(ab.is_empty());
        assert_eq!(ab.rank(), 2);
    }

    #[test]
    fn rejects_small_d() {
        assert!(matches!("D3".parse::<ReductiveShape>(), Err(Error::UnsupportedType(_))));
        assert!("D2".parse::<ReductiveShape>().is_err());
        assert!("E9".parse::<ReductiveShape>().is_err());
        assert!("B1".parse::<ReductiveShape>().is_err());
    }

    #[test]
    fn shape_grammar() {
        let s: ReductiveShape = "c^4 x A2 x D5".parse().unwrap();
        assert_eq!(s.center_dim, 4);
        assert_eq!(s.simples.len(), 2);
        assert_eq!(s.rank(), 11);
        assert_eq!(s.to_string(), "c^4 x A2 x D5");
        assert_eq!("A2×A2".parse::<ReductiveShape>().unwrap().simples.len(), 2);
        assert_eq!(s.dim(), 4 + 8 + 45);
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs("A2");
        let (a1, a2s) = (a2.simple_root(0, 0), a2.simple_root(0, 1));
        assert_eq!(a2.cartan_int(a1, a1), 2);
        assert_eq!(a2.cartan_int(a1, a2s), -1);
        assert_eq!(a2.root_string(a1, a2s).unwrap(), (0, 1));

        let g2 = rs("G2");
        let (s, l) = (g2.simple_root(0, 0), g2.simple_root(0, 1));
        assert_eq!(g2.root_string(s, l).unwrap(), (0, 1));
        assert_eq!(g2.root_string(l, s).unwrap(), (0, 3));
        assert_eq!(g2.cartan_int(l, s), -3);

        let two = rs("A1 x A1");
        assert_eq!(two.cartan_int(0, 1), 0);
        assert_eq!(two.root_string(0, 1).unwrap(), (0, 0));
        assert!(two.root_string(0, 0).is_err());
    }

    #[test]
    fn highest_and_closed() {
        let a3 = rs("A3");
        let pos: Vec<RootId> = a3.positives().collect();
        let top = a3.highest_roots(&pos).unwrap();
        assert_eq!(a3.root(top[0]).coords, vec![1, 1, 1]);
        assert!(a3.highest_roots(&[]).unwrap().is_empty());

        let a2 = rs("A2");
        let (a, b) = (a2.simple_root(0, 0), a2.simple_root(0, 1));
        assert!(a2.is_closed(&[a]));
        assert!(!a2.is_closed(&[a, b]));
    }
}

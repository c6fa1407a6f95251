//! Deficiency audits over all antichains of a simple type, recognition of
//! semisimple hypercomplex pairs, and enumeration of HC spaces.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::pairs::{
    check_pair, delta_k_rank, enumerate_antichains, is_antichain, minimal_elements, up_closure, PairSpec, Substem,
};
use crate::par;
use crate::roots::{Family, ReductiveShape, SimpleType};
use crate::stem::Stem;

/// Which sign statement governs a simple type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Proposition {
    /// B_n, C_n, D_{2q}, E_7, E_8, F_4, G_2: srank = 2·rank, deficiency < 0
    SrankTwiceRank,
    /// D_{2q+1}, q ≥ 2: deficiency < 0
    DOdd,
    /// E_6: deficiency < 0
    E6,
    /// A_n: deficiency 0, except −1 when n is odd and 𝔨_s = 0
    TypeA,
}

impl Proposition {
    pub fn for_type(t: SimpleType) -> Self {
        match t.family {
            Family::A => Proposition::TypeA,
            Family::D if t.rank % 2 == 1 => Proposition::DOdd,
            Family::E if t.rank == 6 => Proposition::E6,
            _ => Proposition::SrankTwiceRank,
        }
    }
}

/// The sign a row is claimed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Negative,
    Zero,
    MinusOne,
}

impl Claim {
    pub fn holds(self, deficiency: i64) -> bool {
        match self {
            Claim::Negative => deficiency < 0,
            Claim::Zero => deficiency == 0,
            Claim::MinusOne => deficiency == -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    #[serde(rename = "type")]
    pub ty: SimpleType,
    /// 0-based stem positions of 𝓜
    pub antichain: Vec<usize>,
    /// rank(𝔤) + srank(𝔨) − rank(𝔨_s) − srank(𝔤)
    pub deficiency: i64,
    pub rank_g: usize,
    pub srank_g: usize,
    pub rank_k_s: usize,
    pub srank_k: usize,
    pub claim: Claim,
    pub holds: bool,
    /// the row is an su-pair, where the deficiency must vanish
    pub su_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditTable {
    #[serde(rename = "type")]
    pub ty: SimpleType,
    pub proposition: Proposition,
    pub rows: Vec<AuditRow>,
    /// antichains from up-sets agree with a direct subset scan
    pub antichains_agree: bool,
}

impl AuditTable {
    /// Every row has its claimed sign, zero deficiency happens exactly on
    /// su-pairs, and the two antichain enumerations agree.
    pub fn holds(&self) -> bool {
        self.antichains_agree && self.rows.iter().all(|r| r.holds && (r.deficiency == 0) == r.su_pair)
    }

    pub fn row(&self, antichain: &[usize]) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.antichain == antichain)
    }
}

/// Antichains by scanning every subset of the stem.
fn antichains_by_scan(stem: &Stem) -> Vec<Vec<usize>> {
    let n = stem.len();
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| is_antichain(stem, s))
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn is_su_row(t: SimpleType, antichain: &[usize]) -> bool {
    t.family == Family::A
        && match antichain {
            [] => t.rank.is_multiple_of(2),
            [k] => *k >= 1,
            _ => false,
        }
}

/// The deficiency of every antichain 𝓜 with 𝔨 ≠ 𝔤, with the sign claimed for the type.
pub fn audit_type(t: SimpleType) -> Result<AuditTable> {
    let shape = ReductiveShape::simple(t);
    let alg = Algebra::new(&shape)?;
    let stem = alg.stem();
    let antichains = enumerate_antichains(stem);
    let mut agree = antichains == antichains_by_scan(stem);
    let proposition = Proposition::for_type(t);
    let mut rows = Vec::new();
    for m in antichains {
        let sub = up_closure(stem, &m);
        agree &= minimal_elements(stem, &sub) == m;
        if sub.len() == stem.len() {
            // 𝓜 contains the highest root: 𝔨 = 𝔤
            continue;
        }
        let report = check_pair(&alg, &PairSpec::new(shape.clone(), sub.clone(), 0))?;
        let claim = match proposition {
            Proposition::TypeA if m.is_empty() && t.rank % 2 == 1 => Claim::MinusOne,
            Proposition::TypeA => Claim::Zero,
            _ => Claim::Negative,
        };
        rows.push(AuditRow {
            ty: t,
            su_pair: is_su_row(t, &m),
            antichain: m,
            deficiency: report.deficiency,
            rank_g: report.rank_g,
            srank_g: report.srank_g,
            rank_k_s: delta_k_rank(&alg, &sub),
            srank_k: report.srank_k,
            holds: claim.holds(report.deficiency),
            claim,
        });
    }
    Ok(AuditTable { ty: t, proposition, rows, antichains_agree: agree })
}

/// Every simple type of rank at most `max_rank`.
pub fn simple_types_up_to(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for rank in 1..=max_rank {
            if let Ok(t) = SimpleType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}

/// Audits of every simple type of rank at most `max_rank`, in parallel.
pub fn audit_all(max_rank: usize) -> Result<Vec<AuditTable>> {
    par::map(&simple_types_up_to(max_rank), |&t| audit_type(t)).into_iter().collect()
}

/// A factor of an HC space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// SU(n+1)/SU(n+3−2k)
    Quotient { n: usize, k: usize },
    /// SU(m+1), m even
    Full { m: usize },
}

/// How a factor arises from the classification constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    SuPair { n: usize, k: usize },
    Group { m: usize },
}

impl Factor {
    /// A valid factor, with the SU(1) quotient folded into `Full`.
    pub fn quotient(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 2 || n + 3 <= 2 * k {
            return Err(Error::InvalidPair(format!("no su-pair with n = {n}, k = {k}")));
        }
        Ok(if n + 3 - 2 * k == 1 { Factor::Full { m: n } } else { Factor::Quotient { n, k } })
    }

    pub fn full(m: usize) -> Result<Self> {
        if m < 2 || !m.is_multiple_of(2) {
            return Err(Error::InvalidPair(format!("SU({}) is not an HC factor", m + 1)));
        }
        Ok(Factor::Full { m })
    }

    pub fn n(&self) -> usize {
        match *self {
            Factor::Quotient { n, .. } => n,
            Factor::Full { m } => m,
        }
    }

    /// k of the su-pair presentation (for `Full(m)` the SU(1) quotient, k = (m+2)/2).
    pub fn k(&self) -> usize {
        match *self {
            Factor::Quotient { k, .. } => k,
            Factor::Full { m } => (m + 2) / 2,
        }
    }

    pub fn dim(&self) -> usize {
        factor_dimension(self)
    }

    pub fn presentations(&self) -> Vec<Presentation> {
        match *self {
            Factor::Quotient { n, k } => vec![Presentation::SuPair { n, k }],
            Factor::Full { m } => vec![Presentation::Group { m }, Presentation::SuPair { n: m, k: (m + 2) / 2 }],
        }
    }

    fn sort_key(&self) -> (usize, usize, usize) {
        (self.dim(), self.n(), self.k())
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Quotient { n, k } => write!(f, "SU({})/SU({})", n + 1, n + 3 - 2 * k),
            Factor::Full { m } => write!(f, "SU({})", m + 1),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            name: String,
            n: usize,
            k: usize,
            dim: usize,
            presentations: Vec<Presentation>,
        }
        Record {
            name: self.to_string(),
            n: self.n(),
            k: self.k(),
            dim: self.dim(),
            presentations: self.presentations(),
        }
        .serialize(s)
    }
}

/// dim SU(n+1) − dim SU(n+3−2k) = 4(k−1)(n+2−k), or dim SU(m+1).
pub fn factor_dimension(f: &Factor) -> usize {
    match *f {
        Factor::Quotient { n, k } => (n + 1).pow(2) - (n + 3 - 2 * k).pow(2),
        Factor::Full { m } => (m + 1).pow(2) - 1,
    }
}

/// A product of factors in canonical (dim, n, k) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HCSpace {
    pub dim: usize,
    pub factors: Vec<Factor>,
}

impl HCSpace {
    pub fn new(mut factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidPair("an HC space needs a factor".into()));
        }
        factors.sort();
        let dim = factors.iter().map(Factor::dim).sum();
        Ok(HCSpace { dim, factors })
    }

    pub fn shape(&self) -> ReductiveShape {
        let simples = self.factors.iter().map(|f| SimpleType::new(Family::A, f.n()).expect("n ≥ 2")).collect();
        ReductiveShape::new(0, simples)
    }

    /// The algebra of the shape and the pair whose 𝔨 gives this space.
    pub fn pair_spec(&self) -> Result<(Algebra, PairSpec)> {
        let shape = self.shape();
        let alg = Algebra::new(&shape)?;
        let stem = alg.stem();
        let mut positions = Vec::new();
        for (c, f) in self.factors.iter().enumerate() {
            let own = component_positions(&alg, c);
            // Θ_{γ_k} = 𝔞_{n−2k+2} spans γ_k, …, γ_d
            positions.extend(own.into_iter().skip(f.k() - 1));
        }
        positions.sort_unstable();
        let sub = Substem::new(stem, &positions)?;
        Ok((alg, PairSpec::new(shape, sub, 0)))
    }
}

impl fmt::Display for HCSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&names.join(" × "))
    }
}

/// Stem positions lying in component `c`, in stem order.
fn component_positions(alg: &Algebra, c: usize) -> Vec<usize> {
    let rs = alg.rs();
    (0..alg.stem().len()).filter(|&i| rs.component(alg.stem().element(i)) == c).collect()
}

/// Every valid factor of dimension at most `max_dim`, sorted and deduplicated.
pub fn factors_up_to(max_dim: usize) -> Vec<Factor> {
    let mut out = BTreeSet::new();
    // Quotient(n, 2) has the least dimension for given n, namely 4n
    for n in 2..=max_dim / 4 {
        for k in 2..=(n + 2) / 2 {
            if let Ok(f) = Factor::quotient(n, k) {
                if f.dim() <= max_dim {
                    out.insert(f);
                }
            }
        }
    }
    let mut m = 2;
    while (m + 1) * (m + 1) - 1 <= max_dim {
        out.insert(Factor::Full { m });
        m += 2;
    }
    out.into_iter().collect()
}

/// All HC spaces of dimension at most `max_dim`, up to reordering of factors.
pub fn enumerate_hc_spaces(max_dim: usize) -> Vec<HCSpace> {
    if max_dim < 4 {
        return Vec::new();
    }
    let factors = factors_up_to(max_dim);
    fn extend(factors: &[Factor], from: usize, budget: usize, acc: &mut Vec<Factor>, out: &mut Vec<HCSpace>) {
        for (i, f) in factors.iter().enumerate().skip(from) {
            if f.dim() > budget {
                break;
            }
            acc.push(*f);
            out.push(HCSpace::new(acc.clone()).expect("nonempty"));
            extend(factors, i, budget - f.dim(), acc, out);
            acc.pop();
        }
    }
    let mut out: Vec<HCSpace> = par::flat_map_range(factors.len(), |i| {
        let mut out = Vec::new();
        let f = factors[i];
        let mut acc = vec![f];
        out.push(HCSpace::new(acc.clone()).expect("nonempty"));
        extend(&factors, i, max_dim - f.dim(), &mut acc, &mut out);
        out
    });
    out.sort();
    out.dedup();
    out
}

/// The outcome of matching a semisimple pair against the su-pair list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    /// every component is an su-pair
    pub verdict: bool,
    /// the su-pair of each component, when it is one
    pub factors: Vec<Option<Factor>>,
    pub deficiency: i64,
}

impl Recognition {
    pub fn space(&self) -> Option<HCSpace> {
        let f: Option<Vec<Factor>> = self.factors.iter().copied().collect();
        f.and_then(|f| HCSpace::new(f).ok())
    }
}

/// Decides whether a semisimple pair is a product of su-pairs.
pub fn recognize_semisimple_pair(alg: &Algebra, sub: &Substem) -> Result<Recognition> {
    let shape = alg.shape();
    if shape.center_dim != 0 {
        return Err(Error::InvalidPair("the shape has a center".into()));
    }
    let report = check_pair(alg, &PairSpec::new(shape.clone(), sub.clone(), 0))?;
    let mut factors = Vec::new();
    for (c, t) in shape.simples.iter().enumerate() {
        let own = component_positions(alg, c);
        let inside: Vec<usize> = own.iter().copied().filter(|&i| sub.contains(i)).collect();
        if inside.len() == own.len() {
            return Err(Error::InvalidPair(format!("component {} ({t}) lies in 𝔨", c + 1)));
        }
        let factor = if t.family == Family::A && own.ends_with(&inside) {
            Factor::quotient(t.rank, own.len() - inside.len() + 1).ok()
        } else {
            None
        };
        factors.push(factor);
    }
    Ok(Recognition { verdict: factors.iter().all(Option::is_some), factors, deficiency: report.deficiency })
}

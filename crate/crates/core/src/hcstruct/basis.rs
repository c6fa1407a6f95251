use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::chevalley::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pairs::{cartan_split, check_pair, k_positive_roots, PairSpec};
use crate::roots::RootId;
use crate::scalar::{rat, Rational, TowerScalar};

/// What a vector of the 𝔭 basis is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PLabel {
    /// `E_α`, α ∈ ±Δ_𝔭⁺
    Root(RootId),
    /// `P_γ = W_γ − iZ_γ` for the stem element at this position
    P(usize),
    /// `Q_γ = W_γ + iZ_γ`
    Q(usize),
    /// k-th vector of 𝔧_𝔭
    J(usize),
}

/// Per-γ index blocks inside the 𝔭 basis.
#[derive(Clone, Debug)]
pub struct GammaBlock {
    /// stem position of γ
    pub position: usize,
    pub root: RootId,
    /// E_γ, E_{−γ}, P_γ, Q_γ
    pub gl: [usize; 4],
    /// E_{±α} for α ∈ Φ_γ⁺
    pub v: Vec<usize>,
}

/// Ordered basis of the complexified 𝔭 together with a basis of 𝔨 and the
/// change of coordinates that splits 𝔤 = 𝔭 ⊕ 𝔨.
#[derive(Clone, Debug)]
pub struct PBasis {
    pub vectors: Vec<AlgebraElement>,
    pub labels: Vec<PLabel>,
    pub k_vectors: Vec<AlgebraElement>,
    pub blocks: Vec<GammaBlock>,
    /// indices of the 𝔧_𝔭 vectors
    pub j: Vec<usize>,
    /// `z_γ` (rational, in 𝔥) with `Z_γ = i z_γ`, one per block
    pub z: Vec<AlgebraElement>,
    index: HashMap<PLabel, usize>,
    /// inverse of [𝔭 | 𝔨] as columns in Chevalley coordinates
    to_split: Matrix<TowerScalar>,
}

fn cartan_element(alg: &Algebra, v: &[Rational]) -> AlgebraElement {
    let mut x = AlgebraElement::zero(alg.dim());
    for (k, c) in v.iter().enumerate() {
        x.0[k] = TowerScalar::from_rational(c.clone());
    }
    x
}

impl PBasis {
    pub fn build(alg: &Algebra, spec: &PairSpec) -> Result<Self> {
        let report = check_pair(alg, spec)?;
        if !report.verdict {
            return Err(Error::InvalidPair("spec is not a hypercomplex pair".into()));
        }
        let split = cartan_split(alg, spec)?;
        if split.j.len() % 4 != 0 {
            return Err(Error::Invariant("dim 𝔧_𝔭 is not divisible by 4".into()));
        }
        let cb = alg.basis();
        let rs = alg.rs();
        let stem = alg.stem();
        let half_i = TowerScalar::gaussian(Rational::from_integer(0.into()), rat(1, 2));

        let mut vectors = Vec::new();
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        let mut z = Vec::new();
        let gamma_p: Vec<usize> = (0..stem.len()).filter(|&i| !spec.substem.contains(i)).collect();
        for (t, &pos) in gamma_p.iter().enumerate() {
            let g = stem.element(pos);
            let zg = cartan_element(alg, &split.z[t]);
            let w = cb.h(g).scale(&half_i);
            let base = vectors.len();
            vectors.push(cb.e(g));
            labels.push(PLabel::Root(g));
            vectors.push(cb.e(rs.neg(g)));
            labels.push(PLabel::Root(rs.neg(g)));
            // P = W − iZ = W + z, Q = W + iZ = W − z
            vectors.push(w.add(&zg));
            labels.push(PLabel::P(pos));
            vectors.push(w.sub(&zg));
            labels.push(PLabel::Q(pos));
            let mut v = Vec::new();
            for &a in stem.phi(pos) {
                for r in [a, rs.neg(a)] {
                    v.push(vectors.len());
                    vectors.push(cb.e(r));
                    labels.push(PLabel::Root(r));
                }
            }
            blocks.push(GammaBlock { position: pos, root: g, gl: [base, base + 1, base + 2, base + 3], v });
            z.push(zg);
        }
        let mut j = Vec::new();
        for (k, jv) in split.j.iter().enumerate() {
            j.push(vectors.len());
            vectors.push(cartan_element(alg, jv));
            labels.push(PLabel::J(k));
        }

        let mut k_vectors: Vec<AlgebraElement> = split.h_k.iter().map(|v| cartan_element(alg, v)).collect();
        for b in k_positive_roots(stem, &spec.substem) {
            k_vectors.push(cb.e(b));
            k_vectors.push(cb.e(rs.neg(b)));
        }

        let d = alg.dim();
        if vectors.len() + k_vectors.len() != d {
            return Err(Error::Invariant(format!("𝔭 ⊕ 𝔨 has dimension {} + {} ≠ {d}", vectors.len(), k_vectors.len())));
        }
        let cols: Vec<Vec<TowerScalar>> = vectors.iter().chain(&k_vectors).map(|v| v.0.clone()).collect();
        let to_split =
            Matrix::from_columns(&cols, d)?.inverse().map_err(|_| Error::Invariant("𝔭 + 𝔨 is not direct".into()))?;
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Ok(PBasis { vectors, labels, k_vectors, blocks, j, z, index, to_split })
    }

    /// dim 𝔭
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn index(&self, l: PLabel) -> Option<usize> {
        self.index.get(&l).copied()
    }

    /// Coordinates of `x` over [𝔭 | 𝔨].
    pub fn split(&self, x: &AlgebraElement) -> Vec<TowerScalar> {
        self.to_split.mul_vec(&x.0).expect("dimension")
    }

    /// `x_𝔭` in 𝔭 coordinates.
    pub fn project(&self, x: &AlgebraElement) -> Vec<TowerScalar> {
        let mut s = self.split(x);
        s.truncate(self.dim());
        s
    }

    /// True when the 𝔨 component of `x` vanishes.
    pub fn in_p(&self, x: &AlgebraElement) -> bool {
        self.split(x)[self.dim()..].iter().all(TowerScalar::is_zero)
    }

    /// The element of 𝔤 with the given 𝔭 coordinates.
    pub fn lift(&self, coords: &[TowerScalar]) -> AlgebraElement {
        let d = self.vectors.first().map_or(0, AlgebraElement::dim);
        let mut x = AlgebraElement::zero(d);
        for (c, v) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                x = x.add(&v.scale(c));
            }
        }
        x
    }

    pub fn unit(&self, k: usize) -> Vec<TowerScalar> {
        let mut v = vec![TowerScalar::zero(); self.dim()];
        v[k] = TowerScalar::one();
        v
    }
}

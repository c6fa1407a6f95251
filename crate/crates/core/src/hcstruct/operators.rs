use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{rat_int, TowerScalar};

use super::basis::{PBasis, PLabel};

/// Unit-modulus phases `ρ_γ`, one per stem element (in stem order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phases(Vec<TowerScalar>);

impl Phases {
    pub fn new(values: Vec<TowerScalar>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_unit_modulus()) {
            return Err(Error::InvalidPhase(format!("|{bad}| ≠ 1")));
        }
        Ok(Phases(values))
    }

    pub fn constant(rho: TowerScalar, n: usize) -> Result<Self> {
        Self::new(vec![rho; n])
    }

    /// `ρ_γ ≡ 1`.
    pub fn trivial(n: usize) -> Self {
        Phases(vec![TowerScalar::one(); n])
    }

    pub fn get(&self, position: usize) -> &TowerScalar {
        &self.0[position]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[TowerScalar] {
        &self.0
    }
}

/// The pair (I, J) as matrices on 𝔭 coordinates (columns are images).
#[derive(Clone, Debug)]
pub struct HCOperators {
    pub i: Matrix<TowerScalar>,
    pub j: Matrix<TowerScalar>,
    pub phases: Phases,
}

fn set_column(m: &mut Matrix<TowerScalar>, col: usize, entries: &[(usize, TowerScalar)]) {
    for (row, v) in entries {
        m[(*row, col)] = v.clone();
    }
}

/// `I E_α = iE_α`, `I E_{−α} = −iE_{−α}`, `I P_γ = iP_γ`, `I Q_γ = −iQ_γ`;
/// on each 4-block of 𝔧_𝔭: `j1 → j2 → −j1`, `j3 → j4 → −j3`.
pub fn build_i(alg: &Algebra, basis: &PBasis) -> Matrix<TowerScalar> {
    let rs = alg.rs();
    let n = basis.dim();
    let i = TowerScalar::i();
    let mut m = Matrix::zeros(n, n);
    for (k, l) in basis.labels.iter().enumerate() {
        let v = match l {
            PLabel::Root(a) if rs.is_positive(*a) => i.clone(),
            PLabel::Root(_) => -&i,
            PLabel::P(_) => i.clone(),
            PLabel::Q(_) => -&i,
            PLabel::J(_) => continue,
        };
        m[(k, k)] = v;
    }
    for block in basis.j.chunks(4) {
        let [a, b, c, d] = [block[0], block[1], block[2], block[3]];
        let one = TowerScalar::one();
        set_column(&mut m, a, &[(b, one.clone())]);
        set_column(&mut m, b, &[(a, -&one)]);
        set_column(&mut m, c, &[(d, one.clone())]);
        set_column(&mut m, d, &[(c, -&one)]);
    }
    m
}

/// `J E_γ = ρ̄Q_γ`, `J E_{−γ} = −ρP_γ`, `J P_γ = ρ̄E_{−γ}`, `J Q_γ = −ρE_γ`,
/// `J E_α = iN_{γ,−α}ρ̄E_{α−γ}`, `J E_{−α} = −iN_{γ,−α}ρE_{γ−α}` for α ∈ Φ_γ⁺;
/// on each 4-block of 𝔧_𝔭: `j1 → j3 → −j1`, `j2 → −j4`, `j4 → j2`.
pub fn build_j(alg: &Algebra, basis: &PBasis, phases: &Phases) -> Result<Matrix<TowerScalar>> {
    let cb = alg.basis();
    let rs = alg.rs();
    if phases.len() != alg.stem().len() {
        return Err(Error::InvalidPhase(format!(
            "{} phases given, stem has {} elements",
            phases.len(),
            alg.stem().len()
        )));
    }
    let n = basis.dim();
    let i = TowerScalar::i();
    let mut m = Matrix::zeros(n, n);
    let at = |l: PLabel| basis.index(l).expect("label in basis");
    for block in &basis.blocks {
        let rho = phases.get(block.position);
        let rhob = rho.conj();
        let g = block.root;
        let [eg, emg, p, q] = block.gl;
        set_column(&mut m, eg, &[(q, rhob.clone())]);
        set_column(&mut m, emg, &[(p, -rho)]);
        set_column(&mut m, p, &[(emg, rhob.clone())]);
        set_column(&mut m, q, &[(eg, -rho)]);
        for &k in &block.v {
            let PLabel::Root(r) = basis.labels[k] else { unreachable!() };
            if rs.is_positive(r) {
                let nga = TowerScalar::from_rational(rat_int(cb.n(g, rs.neg(r))));
                let target = rs.sub(r, g).expect("α − γ is a root");
                set_column(&mut m, k, &[(at(PLabel::Root(target)), &(&i * &nga) * &rhob)]);
            } else {
                let a = rs.neg(r);
                let nga = TowerScalar::from_rational(rat_int(cb.n(g, r)));
                let target = rs.sub(g, a).expect("γ − α is a root");
                set_column(&mut m, k, &[(at(PLabel::Root(target)), -(&(&i * &nga) * rho))]);
            }
        }
    }
    for block in basis.j.chunks(4) {
        let [a, b, c, d] = [block[0], block[1], block[2], block[3]];
        let one = TowerScalar::one();
        set_column(&mut m, a, &[(c, one.clone())]);
        set_column(&mut m, c, &[(a, -&one)]);
        set_column(&mut m, b, &[(d, -&one)]);
        set_column(&mut m, d, &[(b, one.clone())]);
    }
    Ok(m)
}

impl HCOperators {
    pub fn build(alg: &Algebra, basis: &PBasis, phases: Phases) -> Result<Self> {
        Ok(HCOperators { i: build_i(alg, basis), j: build_j(alg, basis, &phases)?, phases })
    }
}

/// Dense textual rendering of an operator matrix, row-major.
pub fn dense(m: &Matrix<TowerScalar>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect()).collect()
}

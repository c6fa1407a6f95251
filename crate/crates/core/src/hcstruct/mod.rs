//! The hypercomplex structure (I, J) on 𝔭 for a hypercomplex pair, the Cayley
//! transforms relating their eigenspaces, and exact verification of both.

mod basis;
mod cayley;
mod operators;
mod report;
mod verify;

pub use basis::{GammaBlock, PBasis, PLabel};
pub use cayley::{
    cayley, cayley_float, cayley_product, float_discrepancy, verify_cayley, CayleyAutomorphism, FLOAT_TOLERANCE,
};
pub use operators::{build_i, build_j, dense, HCOperators, Phases};
pub use report::{IdentityCheck, VerificationReport};
pub use verify::{a_matrix, verify_operator_identities, verify_structure};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::pairs::PairSpec;

/// A built structure: the 𝔭 basis and the operators on it.
#[derive(Clone, Debug)]
pub struct Structure<'a> {
    pub alg: &'a Algebra,
    pub spec: PairSpec,
    pub basis: PBasis,
    pub ops: HCOperators,
}

impl<'a> Structure<'a> {
    pub fn build(alg: &'a Algebra, spec: PairSpec, phases: Phases) -> Result<Self> {
        let basis = PBasis::build(alg, &spec)?;
        let ops = HCOperators::build(alg, &basis, phases)?;
        Ok(Structure { alg, spec, basis, ops })
    }

    pub fn verify(&self) -> Result<VerificationReport> {
        verify_structure(self)
    }
}

use crate::chevalley::ChevalleyBasis;
use crate::error::Result;
use crate::roots::{ReductiveShape, RootSystem};
use crate::stem::Stem;

/// A reductive algebra with its Chevalley basis and stem, built once and shared.
#[derive(Clone, Debug)]
pub struct Algebra {
    basis: ChevalleyBasis,
    stem: Stem,
}

impl Algebra {
    pub fn new(shape: &ReductiveShape) -> Result<Self> {
        let basis = ChevalleyBasis::from_shape(shape)?;
        let stem = Stem::compute(basis.root_system())?;
        Ok(Algebra { basis, stem })
    }

    pub fn basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn rs(&self) -> &RootSystem {
        self.basis.root_system()
    }

    pub fn stem(&self) -> &Stem {
        &self.stem
    }

    pub fn shape(&self) -> &ReductiveShape {
        self.rs().shape()
    }

    pub fn rank(&self) -> usize {
        self.rs().rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn srank(&self) -> usize {
        2 * self.stem.len()
    }
}

//! Fiberwise non-degeneracy checks for shifted contact data.
//!
//! Line fibers are framed to ℚ throughout, so twisted duals are plain
//! transposes. Each check builds the kernel complex of the form, the curvature
//! map into its twisted dual, and decides whether that map is a
//! quasi-isomorphism. A second, hand-assembled exact sequence is compared
//! entrywise against the mapping cone.

mod one;
mod zero;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactq::RationalMatrix;
use crate::homalg::HomalgError;

pub use one::OneShiftedFiber;
pub use zero::{AtiyahReport, ZeroShiftedFiber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftedError {
    #[error("field `{field}`: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        field: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(&'static str),
    #[error("curvature is not a cochain map (degree {degree})")]
    NotACochainMap { degree: i32 },
    #[error("connection change needs the form on the base (`thetaOnTM`)")]
    MissingThetaOnTM,
    #[error("independent constructions disagree: {0}")]
    CrossCheckMismatch(&'static str),
    #[error(transparent)]
    Homalg(HomalgError),
}

impl From<HomalgError> for ShiftedError {
    fn from(e: HomalgError) -> Self {
        match e {
            HomalgError::NotACochainMap { degree } => ShiftedError::NotACochainMap { degree },
            other => ShiftedError::Homalg(other),
        }
    }
}

/// Outcome of a non-degeneracy check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passes: bool,
    /// Cohomology of the mapping cone of the curvature map, by degree.
    pub cone_cohomology: BTreeMap<i32, usize>,
    /// Whether the dimension count necessary for a pass holds.
    pub dimension_parity_ok: bool,
}

fn expect_shape(
    field: &'static str,
    m: &RationalMatrix,
    expected: (usize, usize),
) -> Result<(), ShiftedError> {
    if m.shape() == expected {
        Ok(())
    } else {
        Err(ShiftedError::DimensionMismatch { field, expected, found: m.shape() })
    }
}

/// Permutation matrix `P` such that `P x` lists the blocks of `x` (laid out as
/// in `blocks`) in the order `to`.
fn block_permutation(blocks: &[(&str, usize)], to: &[&str]) -> RationalMatrix {
    let mut offset = BTreeMap::new();
    let mut at = 0;
    for &(name, size) in blocks {
        offset.insert(name, (at, size));
        at += size;
    }
    let mut p = RationalMatrix::zeros(at, at);
    let mut row = 0;
    for name in to {
        let (start, size) = offset[name];
        for i in 0..size {
            p[(row, start + i)] = num_traits::One::one();
            row += 1;
        }
    }
    p
}

//! Chain complexes of order complexes, their homology, and induced maps.

mod complex;
mod induced;
pub mod snf;

use thiserror::Error;

use crate::field::CoefficientRing;

pub use complex::{homology, reduced_integer_homology, relative_chain_complex, ChainComplex, GradedHomology, HomologyGroup, ReducedHomologyWitness};
pub use induced::{excision_check, induced_continuous, induced_multivalued, GradedLinearMap, RelativeHomology};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary matrices have inconsistent shapes")]
    ShapeMismatch,
    #[error("boundary composed with boundary is non-zero in degree {0}")]
    BoundaryNotSquareZero(usize),
    #[error("coefficients {0} are not a field")]
    NotAField(CoefficientRing),
    #[error("vector is not a cycle in degree {0}")]
    NotACycle(usize),
    #[error("point map is not order preserving at `{0}` <= `{1}`")]
    NotOrderPreserving(String, String),
    #[error("point map does not send pair to pair at `{0}`")]
    NotPairMap(String),
    #[error("projection of the graph does not induce an isomorphism in degree {0}")]
    ProjectionNotInvertible(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

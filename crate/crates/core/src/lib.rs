//! Conley index theory for multivalued maps on finite topological spaces.

pub mod conley;
pub mod continuation;
pub mod dynamics;
pub mod field;
pub mod finspace;
pub mod generate;
pub mod homology;
pub mod index_pairs;
pub mod mvmap;
pub mod poly;

pub use conley::{ConleyIndex, GradedEndo};
pub use field::{CoefficientRing, Field, Matrix, Scalar};
pub use finspace::{Chain, FiniteSpace, PointId, PointSet, SpaceError, TopPair};
pub use mvmap::{MapError, MultiMap, PairMap};

//! Exact-arithmetic construction of a five-map chain complex on an oriented
//! closed 3-manifold triangulation, its torsion, and the resulting invariant.
//!
//! Everything is computed over the rationals: edge values come from sampled
//! plane coordinates, the chain maps are matrices of exact fractions, and
//! torsion is a ratio of minors.
//!
//! ```
//! use pentachain::{builtin, invariant};
//!
//! let r = invariant(&builtin::rp3(), 0, 64).unwrap();
//! assert_eq!(r.abs_invariant.to_string(), "64");
//! ```

pub mod builtin;
pub mod chain;
pub mod exact;
pub mod geometry;
pub mod pachner;
pub mod pentagon;
pub mod torsion;
pub mod triangulation;

pub use chain::{build_chain, Acyclicity, ChainComplex, ChainDefect};
pub use exact::{ExactError, RatMatrix, Rational};
pub use geometry::{assign_geometry, EdgeValues, GeometryAssignment, GeometryError};
pub use pachner::{apply_move, enumerate_sites, random_walk, MoveKind, MoveSite, PachnerError};
pub use pentagon::{FivePointConfig, PentagonError};
pub use torsion::{invariant, BasisPartition, InvariantError, InvariantResult, TorsionError};
pub use triangulation::{FVector, Gluing, Perm, Triangulation, TriangulationError};

//! Exact Hodge-theoretic invariants of isolated cone singularities and of
//! determinantal varieties.
//!
//! The input is the Hodge diamond of a projective rational homology manifold
//! Y together with the rank e of the bundle whose zero section is contracted
//! (e = 1 for the affine cone over Y). Every invariant is computed by at least
//! two independent routes and the routes are compared in [`report`].

pub mod catalog;
pub mod cone;
pub mod determinantal;
pub mod hodge;
pub mod level;
pub mod lyubeznik;
pub mod report;
pub mod verify;

pub use catalog::CatalogEntry;
pub use cone::ConeSetup;
pub use determinantal::{DeterminantalCase, Family, QPolynomial};
pub use hodge::{HodgeDiamond, PrimitiveDecomposition, PureHodgeStructure};
pub use level::ExtendedLevel;
pub use lyubeznik::LyubeznikTable;

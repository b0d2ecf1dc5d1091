//! Tangent geometries, the quadratic Jordan pair of a base pair, its
//! Kantor-Koecher-Tits algebra, Jordan-theoretic inversion formulas, unital
//! algebras from transversal triples, and jet-ring identity testing.

mod algebra;
mod chart;
mod extend;
mod formulas;
mod koecher;
mod pair;
mod tkk;

pub use algebra::{associative_algebra_from_triple, jordan_algebra_from_triple, jts_from_polarity, AssociativeAlgebra, JordanAlgebra, TripleSystem};
pub use chart::{extract_pair, BasePair};
pub use extend::{extend_geometry, tangent_contracts, ExtendedGeometry, TangentVector};
pub use formulas::{quasi_invertibility_criterion, Formulas};
pub use koecher::{koecher_jet_check, Expr, Scaling};
pub use tkk::{tkk_checks, Flows, GradedLieAlgebra, TkkElement};
pub use pair::{
    check_pair_identities, format_vector, PairJson, PairMode, QuadMap, QuadMapJson, QuadraticJordanPair, Sign, Vector,
};

use crate::geometry::GeomError;
use crate::linalg::LinalgError;
use crate::rings::RingError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TangentError {
    #[error("pair is not quasi-invertible")]
    NotQuasiInvertible,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

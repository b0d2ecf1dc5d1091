//! Exact-arithmetic Jordan and associative geometries.

pub mod axioms;
pub mod geometry;
pub mod linalg;
pub mod modular;
pub mod report;
pub mod rings;
pub mod run;
pub mod serial;
pub mod sweep;
pub mod tangent;
pub mod torsor;

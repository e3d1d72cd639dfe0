//! Optimal cyclic (r, δ) locally repairable codes over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: GF(p^m) arithmetic, subfield towers, roots of unity.
//! * [`poly`]: dense polynomials over a field.
//! * [`linalg`]: matrices, ranks, kernels, incremental bases.
//! * [`code`]: cyclic codes, parity checks, encoding, minimum distance, BCH bound.
//! * [`lrc`]: the four optimal-LRC constructions (plus the interpolating
//!   family between δ+1 and 2δ), the Singleton-type bound, locality checks,
//!   and verification reports.
//! * [`repair`]: repair groups, local repair, global erasure decoding.
//!
//! With the default `parallel` feature the exhaustive searches fan out over
//! rayon; [`Parallelism::Sequential`] (or building without the feature) runs
//! the same code on the calling thread with identical results.

pub mod code;
pub mod field;
pub mod linalg;
pub mod lrc;
pub mod numtheory;
mod par;
pub mod poly;
pub mod repair;

pub use code::{
    CodeError, CyclicCode, DistanceConfig, DistanceOutcome, DistanceReport, EncodeMode,
};
pub use field::{
    build_field, in_base_field, multiplicative_order, FieldElement, FieldError, FieldTower,
    FiniteField,
};
pub use linalg::Matrix;
pub use lrc::{ConstructionKind, LrcCode, LrcError, LrcParams, LrcReport};
pub use par::Parallelism;
pub use poly::{PolyError, Polynomial};
pub use repair::{ErasurePattern, ReceivedWord, RepairEngine, RepairError, RepairGroup};

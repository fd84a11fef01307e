//! Hermitian operator bases of su(2S+1), their structure constants, and the
//! real-form Liouville–von Neumann dynamics built on top of them.
//!
//! - [`wigner`]: exact 3jm and 6j symbols.
//! - [`spinbasis`]: tensor operators and the Hermitian basis `C`.
//! - [`structconst`]: antisymmetric (`e`) and symmetric (`g`) structure
//!   constants, analytically and from trace definitions.
//! - [`dynamics`]: one- and two-qudit generalized Bloch vector evolution.

pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod spinbasis;
pub mod structconst;
pub mod wigner;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use spinbasis::{BasisKind, BasisLabel, BasisSet};
pub use structconst::{build_tables, Method, StructureTables};
pub use wigner::{HalfInt, SqrtRational};

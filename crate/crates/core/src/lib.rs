//! Workbench for finite combinatorics of higher-arity order patterns:
//! finite partite models with a tuple order and monotone link relation,
//! their blow-up/amalgamation calculus, pattern-witness detection in partite
//! hypergraphs, transposition products, partial-function structure classes
//! with a brute-force Ramsey-arrow checker, and exact multilinear-form
//! algorithms over prime fields.

pub mod arrow;
pub mod bilinear;
pub mod blowup;
pub mod coding;
pub mod error;
pub mod field;
pub mod fnclass;
pub mod json;
pub mod report;
pub mod term;
pub mod tk;
pub mod transposition;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
pub use tk::TkModel;

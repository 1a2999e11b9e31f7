//! Exact analysis of monic integer polynomials, and of trinomials
//! `x^n + a x^m + b` in particular, through φ-Newton polygons and Ore's
//! theorem. The crate produces checkable certificates of (non-)monogenity.

pub mod error;
pub mod exactnum;
pub mod ffactor;
pub mod monogenity;
pub mod newton;
pub mod ore;
pub mod polyring;
pub mod reference;
pub mod report;
pub mod scan;

pub use error::{Error, Result};
pub use exactnum::Valuation;
pub use monogenity::{MonogenityVerdict, Trinomial, VerdictKind, VerdictOptions};
pub use num_bigint::{BigInt, BigUint};
pub use ore::{factor_p, index_bound, OreFactorization};
pub use polyring::DensePolyZ;
pub use report::{analyze, AnalysisReport, AnalyzeOptions};
pub use scan::{scan, ScanConfig, ScanRow, Span};

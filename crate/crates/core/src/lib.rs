//! Exact analysis of decision tables: minimum reducts, the quasicompleteness
//! dimension `I(T)`, table generators for line arrangements and univariate
//! polynomial sign patterns, and exact checks of the lower bounds on reduct
//! size that hold for closed classes of tables.

pub mod bounds;
pub mod error;
pub mod lines;
pub mod poly;
pub mod rational;
pub mod reducts;
pub mod shattering;
pub mod suite;
pub mod table;

pub use bounds::{CheckReport, ClassDescriptor, ClassDimension, Family, NcPoint, TableAnalysis};
pub use error::{Error, Result};
pub use lines::LineAttr;
pub use poly::{RatPoly, Sign};
pub use reducts::{min_reduct, ReductResult};
pub use shattering::{shattering_dimension, ShatterResult, Witness};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
pub use table::{Alphabet, AttributeSet, DecisionMode, DecisionTable, MergePolicy, Row};

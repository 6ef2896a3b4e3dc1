//! Generalized Robertson positive maps Φ^U_{4N} on M_{4N}, their Choi
//! witnesses, and numerical certificates for the properties of both.

pub mod certify;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod report;
pub mod sampling;
pub mod states;
pub mod witness;

pub use certify::{run_suite, SuiteConfig, SuiteReport};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use maps::{apply_map, Family, MapDescriptor, UnitaryMode};
pub use report::{CertReport, Verdict};
pub use states::DensityOperator;
pub use witness::Witness;

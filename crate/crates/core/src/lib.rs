//! Spectra of PT-symmetrized complex harmonic oscillators in a truncated
//! number basis.
//!
//! ```
//! use ptosc::{analysis, model};
//!
//! let spec = model::OscillatorSpec::momentum(10.0, 5.4).unwrap();
//! let w = model::select_frequency(&spec, model::FrequencyLabel::SumRoot, None).unwrap();
//! let diag = analysis::diagnose(&spec, &w, 100, 40, 1e-6).unwrap();
//! assert_eq!(diag.verdict, analysis::Verdict::AllRealPositive);
//! ```

pub mod error;
pub mod matrix;
pub mod model;
pub mod fock;
pub mod eigen;
pub mod analysis;
pub mod reference;
pub mod report;
pub mod selfcheck;
pub mod cli;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use model::{FrequencyChoice, FrequencyLabel, OscillatorSpec};

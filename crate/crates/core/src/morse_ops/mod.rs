//! Certified graph moves: the three elementary operations, certificates and
//! their replay, the replacement constructions and the built-in certificate
//! library.

mod certificate;
mod library;
mod replacement;
mod step;

pub use certificate::{replay, Certificate, CheckLevel, ReplayOutcome, ReplayReport, StepRecord};
pub use library::{builtin_certificate, builtin_ids, parse_shorthand};
pub use replacement::{make_replacement, MarkedPatch, PatchMode, Replacement, ReplacementKind};
pub use step::{OpStep, StepError};

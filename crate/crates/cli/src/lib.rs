//! Command-line front end for the SU(1,1) interferometer simulator:
//! parameter sweeps over the closed-form phase-sensitivity formulas with
//! optional truncated-Fock-space cross-checks, and a built-in consistency
//! suite.
//!
//! The sweep grid is the cartesian product of the five axes (twice_k, β,
//! phase, ζ, N) walked in lexicographic order; output is CSV or JSON with a
//! fixed column schema and 17-significant-digit floats, so re-running an
//! identical configuration reproduces the output byte for byte.

pub mod sweep;
pub mod validate;

pub use sweep::{
    parse_int_range, render, render_csv, render_json, run_sweep, ConfigError, InputKind,
    OutputFormat, PhaseAxis, Range, SweepConfig, SweepMode, SweepRow, CSV_HEADER,
};
pub use validate::{render_report, run_validate, Level, PropertyCheck, ValidationReport};

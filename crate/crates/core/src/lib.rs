//! Spectrum of the quantum Rabi model and its comparison with the
//! Jaynes-Cummings / anti-Jaynes-Cummings ladders.
//!
//! - [`model`]: parameters, truncated dense Hamiltonians and parity blocks
//! - [`eigen`]: Sturm bisection, cyclic Jacobi, truncation convergence
//! - [`analytic`]: closed-form JC/AJC ladders, inversion, nearest level
//! - [`recurrence`]: Fock-coefficient recurrences, forward growth and the
//!   backward (Miller) normalizability defect
//! - [`bargmann`]: polynomial × exponential functions in Bargmann space,
//!   the Juddian eigenfunction and the cross-check report
//! - [`io`], [`cli`]: CSV/JSON/SVG emitters and the `rabi` command line
//!
//! See the `examples/` directory for one runnable program per capability.

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bargmann;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod io;
pub mod model;
pub mod recurrence;

pub use error::{Error, Result};
pub use model::{ModelParams, Parity, Truncation};

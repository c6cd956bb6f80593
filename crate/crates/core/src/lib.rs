//! Best approximation of complex matrices by partial isometries under
//! unitarily invariant norms, with the full set of minimizers, uniqueness
//! certificates, symmetric Parseval approximations of finite frames, and
//! brute-force oracles that cross-check all of it on small instances.

pub mod cli;
pub mod error;
pub mod frames;
pub mod gauges;
pub mod io;
pub mod isometry_approx;
pub mod linalg;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use frames::{Frame, FrameReport};
pub use gauges::Gauge;
pub use isometry_approx::{Certificate, MinimizerSet, MinimizerVariant, RankKResult};
pub use linalg::{MatrixC, SvdFactors, Tolerances};

//! Exact-arithmetic toolkit for sums of recurrence terms and sums of S-units
//! that land in the coordinate sets of solutions of `x² − d·y² = m`.
//!
//! The crate is organised bottom-up:
//!
//! * [`quadratic`]: arithmetic in ℚ(√d), continued fractions, Pell solutions.
//! * [`norm_form`]: the full solution set of `x² − d·y² = m` as automorph orbits.
//! * [`recurrence`]: linear recurrences, Binet forms, degeneracy and
//!   multiplicative independence tests, multi-recurrences.
//! * [`sunits`]: rational S-units and vanishing-subsum certificates.
//! * [`search`]: the bounded searches, hypothesis audits and fixture replays.

pub mod error;
pub mod norm_form;
pub mod quadratic;
pub mod recurrence;
pub mod search;
pub mod sunits;

mod serde_big;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

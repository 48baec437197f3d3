//! Certified bounds on the Bohr radius `K_n` of the unit polydisc.
//!
//! * [`combinatorics`]: exact multi-index and multinomial arithmetic.
//! * [`series`]: truncated power series in `n` variables.
//! * [`wiener`]: one-variable Möbius extremals and the Wiener inequality.
//! * [`lower`]: the naive and refined lower bounds.
//! * [`upper`]: random-sign search with certified sup norms, and the
//!   explicit large-`n` bound.
//! * [`verify`] and [`cli`]: checks and commands behind the `bohr` binary.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod lower;
pub mod series;
pub mod upper;
pub mod verify;
pub mod wiener;

pub use error::{Error, Result};

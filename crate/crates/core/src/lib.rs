//! Zero distributions of polynomial families generated by first-order
//! differential-difference recurrences, and their scaling limits.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotic;
pub mod error;
pub mod family;
pub mod poly;
pub mod quad;
pub mod rootfind;
pub mod specfun;
pub mod util;

pub use error::{Error, LimitSide, Result};
pub use family::{FamilySpec, RationalFnOfN, BUILTIN_FAMILIES};
pub use poly::ExactPoly;

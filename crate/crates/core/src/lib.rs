//! Optimal Z-complementary code sets (ZCCS) of non-power-of-two length.
//!
//! A code set of `K` codes, each holding `M` sequences of length `N`, is a
//! ZCCS with zero correlation zone width `Z` when every code's aperiodic
//! auto-correlation sum vanishes for `0 < |τ| < Z` and every pair of distinct
//! codes has vanishing cross-correlation sum for `|τ| < Z`. Such a set is
//! optimal when `K = M·⌊N/Z⌋`.
//!
//! This crate builds
//!
//! - complete complementary codes (CCC) of length `2^m` from second-order
//!   generalized Boolean functions whose graph becomes a path once a few
//!   vertices are deleted ([`construct::build_ccc`]),
//! - optimal `(p·2^{k+1}, 2^m)`-ZCCS of length `p·2^m` from pseudo-Boolean
//!   functions, `p` prime ([`construct::build_zccs`]), together with the
//!   block-concatenation route that must agree with it bit for bit
//!   ([`construct::build_zccs_by_concatenation`]),
//!
//! and verifies the results with exact arithmetic in `Z[ω_δ]`, `δ = lcm(p, q)`,
//! so that every "= 0" is decided algebraically rather than numerically.
//!
//! ```
//! use zccs::boolfn::{parse_gbf, Gbf};
//! use zccs::construct::build_zccs;
//! use zccs::verify::{check_optimal, check_zccs};
//!
//! let f: Gbf = parse_gbf("x1*x2", 3, 2).unwrap();
//! let set = build_zccs(&f, &[0], Some(2), 3, 2).unwrap();
//! assert_eq!((set.len(), set.code_size(), set.length()), (12, 4, 24));
//! assert!(check_zccs(&set, 8).unwrap().passed());
//! assert!(check_optimal(&set, 8).unwrap());
//! ```

pub mod algebra;
pub mod boolfn;
pub mod cli;
pub mod construct;
pub mod correlate;
mod error;
pub mod verify;

pub use error::{Error, Result};

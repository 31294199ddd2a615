//! Exact ZCCS / CCC checks and the set-size bound `K ≤ M·⌊N/Z⌋`.
//!
//! Every zero is decided in `Z[ω_δ]`. Violations are ordered by code pair
//! `(μ1, μ2)` and then by shift in the order `0, -1, 1, -2, 2, …`; the
//! reported witness is the first in that order.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{Code, CodeSet};
use crate::correlate::code_accf_unchecked;
use crate::{Error, Result};

/// A code pair and shift at which the ZCCS conditions fail.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Witness {
    pub mu1: usize,
    pub mu2: usize,
    pub tau: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ZccsCheck {
    pub witness: Option<Witness>,
}

impl ZccsCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Shifts `0, -1, 1, …, -(z-1), z-1`.
fn shifts(z: usize) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..z as i64).flat_map(|s| [-s, s]))
}

fn expected_peak(set: &CodeSet) -> i64 {
    (set.code_size() * set.length()) as i64
}

fn violates(a: &Code, b: &Code, same: bool, tau: i64, peak: i64) -> bool {
    let v = code_accf_unchecked(a, b, tau);
    if same && tau == 0 {
        !v.is_int(peak)
    } else {
        !v.is_zero()
    }
}

fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect()
}

/// Whether every auto-correlation equals `M·N` at `τ = 0` and vanishes for
/// `0 < |τ| < Z`, and every cross-correlation vanishes for `|τ| < Z`.
pub fn check_zccs(set: &CodeSet, z: usize) -> Result<ZccsCheck> {
    if z == 0 || z > set.length() {
        return Err(Error::InvalidZ { z, n: set.length() });
    }
    let peak = expected_peak(set);
    let codes = set.codes();
    let witness = pairs(codes.len()).into_par_iter().find_map_first(|(i, j)| {
        shifts(z)
            .find(|&tau| violates(&codes[i], &codes[j], i == j, tau, peak))
            .map(|tau| Witness {
                mu1: i,
                mu2: j,
                tau,
            })
    });
    Ok(ZccsCheck { witness })
}

/// The largest `Z` for which [`check_zccs`] passes.
///
/// Fails when some condition at `τ = 0` is already violated, since then no
/// `Z ≥ 1` works. Scans shifts outward and stops at the first violation, so
/// the cost is `O(K²·M·N·Z_max)` exact integer work.
pub fn max_zcz(set: &CodeSet) -> Result<usize> {
    let peak = expected_peak(set);
    let codes = set.codes();
    let all = pairs(codes.len());
    let bad_at = |tau: i64| {
        all.par_iter().find_map_first(|&(i, j)| {
            violates(&codes[i], &codes[j], i == j, tau, peak).then_some((i, j))
        })
    };
    if let Some((i, j)) = bad_at(0) {
        let what = if i == j { "peak" } else { "cross-correlation" };
        return Err(Error::NotAComplementarySet(format!(
            "{what} condition fails at τ = 0 for codes ({i}, {j})"
        )));
    }
    for s in 1..set.length() as i64 {
        // θ(A,B)(-s) = θ(B,A)(s)*, so scanning every ordered pair at +s covers -s.
        if bad_at(s).is_some() {
            return Ok(s as usize);
        }
    }
    Ok(set.length())
}

/// `K = M·⌊N/Z⌋`, for a set that is a ZCCS at `Z`.
pub fn check_optimal(set: &CodeSet, z: usize) -> Result<bool> {
    if !check_zccs(set, z)?.passed() {
        return Err(Error::NotAZccs(z));
    }
    Ok(set.len() == set.code_size() * (set.length() / z))
}

/// `K = M` and the ZCCS conditions hold with `Z = N`.
pub fn check_ccc(set: &CodeSet) -> bool {
    set.len() == set.code_size() && check_zccs(set, set.length()).is_ok_and(|c| c.passed())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub zcz: usize,
    pub is_zccs_at_claimed_z: bool,
    pub max_zcz: Option<usize>,
    pub is_ccc: bool,
    /// `M·N` when every code meets it, otherwise the first code's `θ(0)`
    /// rounded to the nearest integer.
    pub peak: i64,
    pub optimal: bool,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.is_zccs_at_claimed_z
    }
}

/// Runs all checks at width `z`, optionally computing the exact maximum.
pub fn verify_set(set: &CodeSet, z: usize, compute_max: bool) -> Result<VerificationReport> {
    let check = check_zccs(set, z)?;
    let peak_target = expected_peak(set);
    let peak = set
        .codes()
        .iter()
        .map(|c| code_accf_unchecked(c, c, 0))
        .find(|v| !v.is_int(peak_target))
        .map_or(peak_target, |v| v.to_complex().re.round() as i64);
    let optimal = check.passed() && set.len() == set.code_size() * (set.length() / z);
    let max = if compute_max {
        match max_zcz(set) {
            Ok(v) => Some(v),
            Err(Error::NotAComplementarySet(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(VerificationReport {
        zcz: z,
        is_zccs_at_claimed_z: check.passed(),
        max_zcz: max,
        is_ccc: check_ccc(set),
        peak,
        optimal,
        witness: check.witness,
    })
}

//! Exact aperiodic correlations of root-of-unity sequences and codes.

use rayon::prelude::*;

use crate::algebra::CycInt;
use crate::boolfn::RootSequence;
use crate::construct::Code;
use crate::{Error, Result};

/// Aperiodic cross-correlation `θ(a, b)(τ)`.
///
/// For `0 ≤ τ < N` it is `Σ_{i=0}^{N-1-τ} a_{i+τ}·b*_i`, for `-N < τ < 0` it is
/// `Σ_{i=0}^{N-1+τ} a_i·b*_{i-τ}`, and zero otherwise.
pub fn accf(a: &RootSequence, b: &RootSequence, tau: i64) -> Result<CycInt> {
    check_pair(a, b)?;
    let mut acc = CycInt::zero(a.delta());
    accumulate(&mut acc, a, b, tau);
    Ok(acc)
}

fn check_pair(a: &RootSequence, b: &RootSequence) -> Result<()> {
    if a.delta() != b.delta() {
        return Err(Error::Shape(format!(
            "root orders {} and {} differ",
            a.delta(),
            b.delta()
        )));
    }
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

#[inline]
fn accumulate(acc: &mut CycInt, a: &RootSequence, b: &RootSequence, tau: i64) {
    let n = a.len() as i64;
    if tau <= -n || tau >= n {
        return;
    }
    let (xa, xb) = if tau >= 0 {
        (
            &a.exponents()[tau as usize..],
            &b.exponents()[..(n - tau) as usize],
        )
    } else {
        (
            &a.exponents()[..(n + tau) as usize],
            &b.exponents()[(-tau) as usize..],
        )
    };
    let delta = a.delta() as u32;
    // Tally per exponent difference, then fold into the accumulator.
    let mut tally = vec![0i64; delta as usize];
    for (&ea, &eb) in xa.iter().zip(xb) {
        tally[((ea + delta - eb) % delta) as usize] += 1;
    }
    for (j, c) in tally.into_iter().enumerate().filter(|(_, c)| *c != 0) {
        acc.add_root(j as i64, c);
    }
}

/// Code-level correlation: the sum over member positions of the sequence
/// correlations.
pub fn code_accf(a: &Code, b: &Code, tau: i64) -> Result<CycInt> {
    check_codes(a, b)?;
    Ok(code_accf_unchecked(a, b, tau))
}

pub(crate) fn code_accf_unchecked(a: &Code, b: &Code, tau: i64) -> CycInt {
    let mut acc = CycInt::zero(a.delta());
    for (sa, sb) in a.sequences().iter().zip(b.sequences()) {
        accumulate(&mut acc, sa, sb, tau);
    }
    acc
}

pub(crate) fn check_codes(a: &Code, b: &Code) -> Result<()> {
    if a.code_size() != b.code_size() {
        return Err(Error::Shape(format!(
            "codes hold {} and {} sequences",
            a.code_size(),
            b.code_size()
        )));
    }
    match (a.sequences().first(), b.sequences().first()) {
        (Some(x), Some(y)) => check_pair(x, y),
        _ => Err(Error::Shape("empty code".into())),
    }
}

/// Code correlation at every shift `τ ∈ (-N, N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorrelationProfile {
    length: usize,
    values: Vec<CycInt>,
}

impl CorrelationProfile {
    pub fn length(&self) -> usize {
        self.length
    }

    /// Value at `τ`; zero outside `(-N, N)`.
    pub fn get(&self, tau: i64) -> CycInt {
        let n = self.length as i64;
        if tau <= -n || tau >= n {
            return CycInt::zero(self.values[0].delta());
        }
        self.values[(tau + n - 1) as usize].clone()
    }

    /// `(τ, value)` pairs in increasing `τ`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &CycInt)> {
        let n = self.length as i64;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (i as i64 - n + 1, v))
    }
}

pub fn profile(a: &Code, b: &Code) -> Result<CorrelationProfile> {
    check_codes(a, b)?;
    let n = a.length() as i64;
    let values = (-n + 1..n)
        .into_par_iter()
        .map(|tau| code_accf_unchecked(a, b, tau))
        .collect();
    Ok(CorrelationProfile {
        length: a.length(),
        values,
    })
}

/// `Σ_{α=0}^{p-1} ω_p^{c·α}` in `Z[ω_p]`.
pub fn root_sum(p: u32, c: i64) -> CycInt {
    let mut acc = CycInt::zero(p as usize);
    for alpha in 0..p as i64 {
        acc.add_root(c * alpha, 1);
    }
    acc
}

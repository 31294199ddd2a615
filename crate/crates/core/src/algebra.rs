//! Exact arithmetic in the cyclotomic integers `Z[ω_δ]`.
//!
//! Values are kept in the group ring `Z[x]/(x^δ - 1)`: a length-`δ` integer
//! vector whose entry `j` is the multiplicity of `ω_δ^j`. Accumulating a
//! correlation sum is then plain integer addition at one position per term.
//! The representation is not unique (for example `1 + ω_3 + ω_3^2` is zero),
//! so equality is decided by reducing modulo the cyclotomic polynomial `Φ_δ`
//! in [`CycInt::is_zero`].
//!
//! Coefficients are `i64`. A correlation of two length-`N` sequences of unit
//! entries has coefficient sum at most `N` in absolute value, and a code
//! correlation at most `M·N`, so anything up to `2^62` entries is safe.
//! Reduction modulo `Φ_δ` can grow intermediate values; it runs in checked
//! `i128` and falls back to arbitrary precision on overflow.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

/// An element `Σ_j coeffs[j]·ω_δ^j` of `Z[ω_δ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    delta: usize,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn new(delta: usize, coeffs: Vec<i64>) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidParams("root order must be positive".into()));
        }
        if coeffs.len() != delta {
            return Err(Error::Shape(format!(
                "{} coefficients for root order {delta}",
                coeffs.len()
            )));
        }
        Ok(Self { delta, coeffs })
    }

    /// # Panics
    ///
    /// Panics if `delta` is zero.
    pub fn zero(delta: usize) -> Self {
        assert!(delta > 0, "root order must be positive");
        Self {
            delta,
            coeffs: vec![0; delta],
        }
    }

    pub fn from_int(delta: usize, value: i64) -> Self {
        let mut z = Self::zero(delta);
        z.coeffs[0] = value;
        z
    }

    /// `ω_δ^e`.
    pub fn root(delta: usize, e: i64) -> Self {
        let mut z = Self::zero(delta);
        z.add_root(e, 1);
        z
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `count·ω_δ^e` in place.
    #[inline]
    pub fn add_root(&mut self, e: i64, count: i64) {
        let idx = e.rem_euclid(self.delta as i64) as usize;
        self.coeffs[idx] += count;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_delta(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            delta: self.delta,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_delta(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            delta: self.delta,
            coeffs,
        })
    }

    /// Multiplication by `ω_δ^e`: a cyclic shift of the coefficients.
    pub fn mul_root(&self, e: i64) -> Self {
        let delta = self.delta;
        let shift = e.rem_euclid(delta as i64) as usize;
        let mut coeffs = vec![0; delta];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(j + shift) % delta] = c;
        }
        Self { delta, coeffs }
    }

    /// Group-ring product (cyclic convolution of coefficients).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_delta(other)?;
        let delta = self.delta;
        let mut out = vec![0i64; delta];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % delta] += a * b;
            }
        }
        Ok(Self { delta, coeffs: out })
    }

    /// Complex conjugate: `ω^j ↦ ω^{-j}`.
    pub fn conj(&self) -> Self {
        let delta = self.delta;
        let mut coeffs = vec![0; delta];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(delta - j) % delta] = c;
        }
        Self { delta, coeffs }
    }

    /// Embeds into `Z[ω_target]` via `ω_δ = ω_target^{target/δ}`.
    pub fn promote(&self, target: usize) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.delta) {
            return Err(Error::DeltaMismatch(self.delta, target));
        }
        let step = target / self.delta;
        let mut coeffs = vec![0; target];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c;
        }
        Ok(Self {
            delta: target,
            coeffs,
        })
    }

    /// Exact zero test in `Z[ω_δ]`: the polynomial `Σ coeffs[j]·x^j` must be
    /// divisible by `Φ_δ(x)`.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        let phi = cached_cyclotomic(self.delta);
        remainder_is_zero(&self.coeffs, &phi)
    }

    /// Exact equality of the represented values.
    pub fn value_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Whether the value equals the rational integer `n`.
    pub fn is_int(&self, n: i64) -> bool {
        let mut d = self.clone();
        d.coeffs[0] -= n;
        d.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let step = 2.0 * PI / self.delta as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(1.0, step * j as f64) * c as f64)
            .sum()
    }

    /// Sum of absolute coefficient values.
    pub fn l1_norm(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    fn check_delta(&self, other: &Self) -> Result<()> {
        if self.delta != other.delta {
            return Err(Error::DeltaMismatch(self.delta, other.delta));
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(δ={}, {:?})", self.delta, self.coeffs)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                f.write_str(" ")?;
            }
            let mag = c.unsigned_abs();
            match (j, mag) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, 1) => write!(f, "{sign}w^{j}")?,
                _ => write!(f, "{sign}{mag}*w^{j}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Built by dividing `x^d - 1` by `Φ_e` for every proper divisor `e` of `d`,
/// for each divisor `d` of `n` in increasing order.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial index must be positive");
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut table: HashMap<usize, Vec<i64>> = HashMap::new();
    for &d in &divisors {
        let mut num = vec![0i64; d + 1];
        num[0] = -1;
        num[d] = 1;
        for (&e, phi_e) in table.iter().filter(|(&e, _)| d % e == 0) {
            debug_assert!(e < d);
            num = div_exact_monic(&num, phi_e);
        }
        table.insert(d, num);
    }
    table.remove(&n).expect("n divides itself")
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dn] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i - dn + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<usize, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

fn cached_cyclotomic(n: usize) -> Rc<Vec<i64>> {
    PHI_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(cyclotomic_poly(n)))
            .clone()
    })
}

fn remainder_is_zero(coeffs: &[i64], phi: &[i64]) -> bool {
    match remainder_i128(coeffs, phi) {
        Some(rem) => rem.iter().all(|&c| c == 0),
        None => remainder_big(coeffs, phi),
    }
}

/// Long division by the monic `phi`; `None` on overflow.
fn remainder_i128(coeffs: &[i64], phi: &[i64]) -> Option<Vec<i128>> {
    let deg = phi.len() - 1;
    let mut rem: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
    for i in (deg..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            let t = c.checked_mul(pj as i128)?;
            rem[i - deg + j] = rem[i - deg + j].checked_sub(t)?;
        }
    }
    rem.truncate(deg.min(rem.len()));
    Some(rem)
}

fn remainder_big(coeffs: &[i64], phi: &[i64]) -> bool {
    let deg = phi.len() - 1;
    let mut rem: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    for i in (deg..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = rem[i].clone();
        for (j, &pj) in phi.iter().enumerate() {
            rem[i - deg + j] -= &c * pj;
        }
    }
    rem.iter().take(deg).all(Zero::is_zero)
}

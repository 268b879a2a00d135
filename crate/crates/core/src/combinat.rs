//! Exact stratum sizes of the space of symmetric matrices.
//!
//! Every product formula is evaluated as a full numerator and a full
//! denominator followed by one checked exact division, so a mistyped
//! formula shows up as [`Error::InexactDivision`] rather than a silently
//! truncated count.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::gf::Field;
use crate::symmat::{FormType, RankType};
use crate::{Count, Error, Result};

pub(crate) fn qpow(f: &Field, e: u64) -> BigUint {
    BigUint::from(f.q()).pow(e as u32)
}

pub(crate) fn exact_div(num: &BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::InexactDivision(what.to_string()))
    }
}

pub(crate) fn exact_div_signed(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::InexactDivision(what.to_string()))
    }
}

/// Gaussian binomial in `q^2`:
/// `prod_{i<k} (q^{2n} - q^{2i}) / (q^{2k} - q^{2i})`.
///
/// Zero for `k < 0` or `k > n`, one for `k = 0`.
pub fn gauss2(f: &Field, n: i64, k: i64) -> Result<Count> {
    if k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..k as u64 {
        num *= qpow(f, 2 * n as u64) - qpow(f, 2 * i);
        den *= qpow(f, 2 * k as u64) - qpow(f, 2 * i);
    }
    exact_div(&num, &den, "gauss2")
}

fn check_rank(m: usize, rank: usize) -> Result<()> {
    if rank > m {
        Err(Error::RangeError(format!("rank {rank} exceeds m = {m}")))
    } else {
        Ok(())
    }
}

/// `prod_{i<r} (q^{2r} - q^{2i})`.
fn even_denominator(f: &Field, r: u64) -> BigUint {
    (0..r).fold(BigUint::one(), |acc, i| acc * (qpow(f, 2 * r) - qpow(f, 2 * i)))
}

/// `prod_{i<len} (q^m - q^i)`.
fn falling(f: &Field, m: usize, len: u64) -> BigUint {
    (0..len).fold(BigUint::one(), |acc, i| acc * (qpow(f, m as u64) - qpow(f, i)))
}

/// Number of `m x m` symmetric matrices of rank `2r + 1`.
pub fn mu_odd(f: &Field, m: usize, r: usize) -> Result<Count> {
    check_rank(m, 2 * r + 1)?;
    let r = r as u64;
    let num = falling(f, m, 2 * r + 1);
    let den = qpow(f, r) * even_denominator(f, r);
    exact_div(&num, &den, "mu_odd")
}

/// Number of `m x m` symmetric matrices of rank `2r` and type `tau`.
pub fn mu_even_typed(f: &Field, m: usize, r: usize, tau: FormType) -> Result<Count> {
    check_rank(m, 2 * r)?;
    let sign: i8 = match tau {
        FormType::Hyperbolic => 1,
        FormType::Elliptic => -1,
        FormType::Parabolic => {
            return Err(Error::RangeError(format!("even rank {} has no parabolic type", 2 * r)))
        }
    };
    let r = r as u64;
    // (q^r + tau) / 2 is an integer since q is odd
    let qr = qpow(f, r);
    let lead = if sign > 0 { qr + 1u32 } else { qr - 1u32 };
    let num = lead * falling(f, m, 2 * r);
    let den = even_denominator(f, r) * 2u32;
    exact_div(&num, &den, "mu_even_typed")
}

/// Size of one stratum `X_{r, tau}`.
pub fn mu_stratum(f: &Field, m: usize, s: RankType) -> Result<Count> {
    if s.rank % 2 == 1 {
        mu_odd(f, m, s.rank / 2)
    } else {
        mu_even_typed(f, m, s.rank / 2, s.ty)
    }
}

/// Number of `m x m` symmetric matrices of rank exactly `rank`.
pub fn mu(f: &Field, m: usize, rank: usize) -> Result<Count> {
    check_rank(m, rank)?;
    if rank % 2 == 1 {
        mu_odd(f, m, rank / 2)
    } else {
        let r = rank / 2;
        Ok(mu_even_typed(f, m, r, FormType::Hyperbolic)? + mu_even_typed(f, m, r, FormType::Elliptic)?)
    }
}

/// Number of `m x m` symmetric matrices of rank at most `t`.
pub fn nu(f: &Field, m: usize, t: usize) -> Result<Count> {
    check_rank(m, t)?;
    (0..=t).try_fold(BigUint::zero(), |acc, r| Ok(acc + mu(f, m, r)?))
}

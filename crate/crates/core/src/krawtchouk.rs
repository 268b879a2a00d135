//! Generalized Krawtchouk polynomials of the alternating-forms scheme.
//!
//! `F_r^(m)(s)` is the character sum of the skew pairing
//! `sum_{i<j} a_ij b_ij` over skew-symmetric `B` of rank `2r`, for a fixed
//! skew `A` of rank `2s`. The closed form used here is an alternating sum of
//! Gaussian binomials in `q^2`:
//!
//! ```text
//! F_r^(m)(s) = sum_{j=0}^{r} (-1)^{r-j} q^{(r-j)(r-j-1)} [n-j, n-r] [n-s, j] c^j
//! ```
//!
//! with `n = floor(m/2)` and `c = q^{m-1}` for even `m`, `c = q^m` for odd `m`.
//! Out-of-range indices give zero.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinat::{gauss2, qpow};
use crate::gf::{FElem, Field};
use crate::guard::saturating_pow;
use crate::{Count, Error, Guard, Result, SignedCount};

pub fn kraw_f(f: &Field, m: i64, r: i64, s: i64) -> Result<SignedCount> {
    if m < 0 {
        return Ok(BigInt::zero());
    }
    let n = m / 2;
    if r < 0 || s < 0 || r > n || s > n {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let c = if m % 2 == 0 { qpow(f, (m - 1) as u64) } else { qpow(f, m as u64) };
    let mut sum = BigInt::zero();
    let mut c_pow = BigUint::one();
    for j in 0..=r {
        let d = (r - j) as u64;
        let term = qpow(f, d * d.saturating_sub(1)) * gauss2(f, n - j, n - r)? * gauss2(f, n - s, j)? * &c_pow;
        if d.is_multiple_of(2) {
            sum += BigInt::from(term);
        } else {
            sum -= BigInt::from(term);
        }
        c_pow *= &c;
    }
    Ok(sum)
}

/// A skew-symmetric `m x m` matrix (zero diagonal), stored by its strict
/// upper triangle in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    m: usize,
    upper: Vec<FElem>,
}

pub fn skew_len(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

impl SkewMatrix {
    pub fn from_upper(m: usize, upper: Vec<FElem>) -> Result<Self> {
        if upper.len() != skew_len(m) {
            return Err(Error::LengthMismatch { expected: skew_len(m), actual: upper.len() });
        }
        Ok(SkewMatrix { m, upper })
    }

    pub fn zero(m: usize) -> Self {
        SkewMatrix { m, upper: vec![FElem::ZERO; skew_len(m)] }
    }

    /// The standard rank-`2s` form with `a_{2i,2i+1} = 1` for `i < s`.
    pub fn standard(m: usize, s: usize) -> Result<Self> {
        if 2 * s > m {
            return Err(Error::RangeError(format!("skew rank {} exceeds m = {m}", 2 * s)));
        }
        let mut a = SkewMatrix::zero(m);
        for i in 0..s {
            a.upper[Self::index(m, 2 * i, 2 * i + 1)] = FElem::ONE;
        }
        Ok(a)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn upper(&self) -> &[FElem] {
        &self.upper
    }

    /// Position of `(i, j)`, `i < j`, in the strict upper vector.
    pub fn index(m: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < m);
        i * m - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, f: &Field, i: usize, j: usize) -> FElem {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => FElem::ZERO,
            std::cmp::Ordering::Less => self.upper[Self::index(self.m, i, j)],
            std::cmp::Ordering::Greater => f.neg(self.upper[Self::index(self.m, j, i)]),
        }
    }

    /// Rank by Gaussian elimination on the full matrix.
    pub fn rank(&self, f: &Field) -> usize {
        let m = self.m;
        let mut a: Vec<Vec<FElem>> = (0..m).map(|i| (0..m).map(|j| self.get(f, i, j)).collect()).collect();
        let mut rank = 0;
        for c in 0..m {
            let Some(p) = (rank..m).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = f.inv(a[rank][c]).expect("nonzero pivot");
            for r in rank + 1..m {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = f.mul(a[r][c], inv);
                for k in c..m {
                    let v = f.mul(factor, a[rank][k]);
                    a[r][k] = f.sub(a[r][k], v);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// The skew pairing `sum_{i<j} a_ij b_ij`.
pub fn skew_pair(f: &Field, a: &SkewMatrix, b: &SkewMatrix) -> Result<FElem> {
    if a.m != b.m {
        return Err(Error::SizeMismatch(a.m, b.m));
    }
    Ok(a.upper
        .iter()
        .zip(&b.upper)
        .fold(FElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
}

/// All skew-symmetric `m x m` matrices in lexicographic order of their
/// strict upper triangles.
pub fn enumerate_skew(f: &Field, m: usize, guard: &Guard) -> Result<Vec<SkewMatrix>> {
    let len = skew_len(m);
    guard.check_enum(saturating_pow(f.q() as u128, len))?;
    let total = (f.q() as usize).pow(len as u32);
    let q = f.q() as usize;
    Ok((0..total)
        .map(|mut idx| {
            let mut upper = vec![FElem::ZERO; len];
            for slot in upper.iter_mut().rev() {
                *slot = FElem((idx % q) as u32);
                idx /= q;
            }
            SkewMatrix { m, upper }
        })
        .collect())
}

/// Brute-force counts of skew-symmetric matrices of rank `2s`, for
/// `s = 0..=floor(m/2)`.
pub fn skew_rank_census(f: &Field, m: usize, guard: &Guard) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; m / 2 + 1];
    for a in enumerate_skew(f, m, guard)? {
        let r = a.rank(f);
        debug_assert!(r % 2 == 0);
        counts[r / 2] += 1;
    }
    Ok(counts)
}

/// Brute-force count of skew-symmetric matrices of rank `2s`.
pub fn skew_rank_count(f: &Field, m: usize, s: usize, guard: &Guard) -> Result<Count> {
    let census = skew_rank_census(f, m, guard)?;
    Ok(BigUint::from(census.get(s).copied().unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn zeroth_polynomial_is_one() {
        for q in [3, 5, 9] {
            let f = gf(q);
            for m in 0..10i64 {
                for s in 0..=m / 2 {
                    assert_eq!(kraw_f(&f, m, 0, s).unwrap(), BigInt::one());
                }
            }
        }
    }

    #[test]
    fn out_of_range_vanishes() {
        let f = gf(3);
        assert_eq!(kraw_f(&f, 1, 1, 0).unwrap(), BigInt::zero());
        assert_eq!(kraw_f(&f, 4, -1, 0).unwrap(), BigInt::zero());
        assert_eq!(kraw_f(&f, 4, 1, 3).unwrap(), BigInt::zero());
        assert_eq!(kraw_f(&f, -1, 0, 0).unwrap(), BigInt::zero());
        assert_eq!(kraw_f(&f, 0, 0, 0).unwrap(), BigInt::one());
        assert_eq!(kraw_f(&f, 1, 0, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn gf3_m4_rank_two_count() {
        let f = gf(3);
        assert_eq!(kraw_f(&f, 4, 1, 0).unwrap(), BigInt::from(260));
        assert_eq!(skew_rank_count(&f, 4, 1, &Guard::default()).unwrap(), BigUint::from(260u32));
        assert_eq!(skew_rank_count(&f, 4, 0, &Guard::default()).unwrap(), BigUint::one());
    }

    #[test]
    fn skew_census_partitions_space() {
        for (q, m) in [(3u64, 3usize), (3, 4), (5, 3), (9, 3)] {
            let f = gf(q);
            let census = skew_rank_census(&f, m, &Guard::default()).unwrap();
            assert_eq!(census.iter().sum::<u64>(), q.pow(skew_len(m) as u32));
        }
    }

    #[test]
    fn standard_forms_have_requested_rank() {
        let f = gf(5);
        for m in 0..7 {
            for s in 0..=m / 2 {
                assert_eq!(SkewMatrix::standard(m, s).unwrap().rank(&f), 2 * s);
            }
        }
        assert!(SkewMatrix::standard(3, 2).is_err());
    }

    #[test]
    fn index_layout() {
        for m in 2..7 {
            let mut expect = 0;
            for i in 0..m {
                for j in i + 1..m {
                    assert_eq!(SkewMatrix::index(m, i, j), expect);
                    expect += 1;
                }
            }
        }
    }

    /// The triangle inequality on character sums: `|F_t(l)| <= F_t(0)`.
    #[test]
    fn bounded_by_value_at_zero() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            let f = gf(q);
            for m in 0..=20i64 {
                for t in 0..=m / 2 {
                    let at_zero = kraw_f(&f, m, t, 0).unwrap();
                    for l in 0..=m / 2 {
                        let v = kraw_f(&f, m, t, l).unwrap();
                        assert!(v.magnitude() <= at_zero.magnitude() && at_zero >= BigInt::zero());
                    }
                }
            }
        }
    }
}

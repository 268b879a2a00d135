//! Arithmetic in `GF(p^e)` for odd primes `p`.
//!
//! Elements are stored by their canonical integer encoding
//! `enc = c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, where `c_i` are the
//! coefficients of the polynomial representative modulo the field's
//! defining polynomial. The defining polynomial is the lowest monic
//! irreducible of degree `e` in that same encoding order, so encodings are
//! reproducible for a given `(p, e)`.
//!
//! Multiplication goes through discrete log tables built once at
//! construction. Fields are cheap to clone and immutable.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order carry a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// A field element, identified by its canonical encoding in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FElem(pub(crate) u32);

impl FElem {
    pub const ZERO: FElem = FElem(0);
    pub const ONE: FElem = FElem(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial, little-endian, length `e + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i in 0..2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
    nonsquare: FElem,
}

/// The finite field `GF(p^e)`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.e())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.e() == other.e()
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `GF(p^e)`.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if p.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let out_of_range = Error::DegreeOutOfRange { p, e, max: MAX_ORDER };
        if e == 0 {
            return Err(out_of_range);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(out_of_range)?;
        let (p, q) = (p as u32, q as u32);

        let modulus = lowest_irreducible(p, e);
        let mul_slow = |a: u32, b: u32| -> u32 {
            encode(p, &poly_mulmod(p, &decode(p, e, a), &decode(p, e, b), &modulus))
        };

        // primitive element: smallest enc whose multiplicative order is q - 1
        let order = q - 1;
        let prime_factors = distinct_prime_factors(order as u64);
        let pow_slow = |a: u32, mut n: u64| -> u32 {
            let (mut acc, mut base) = (1u32, a);
            while n > 0 {
                if n & 1 == 1 {
                    acc = mul_slow(acc, base);
                }
                base = mul_slow(base, base);
                n >>= 1;
            }
            acc
        };
        let g = (1..q)
            .find(|&a| prime_factors.iter().all(|&l| pow_slow(a, order as u64 / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, g);
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let c: Vec<u32> = decode(p, e, a).iter().map(|&d| (p - d) % p).collect();
                encode(p, &c)
            })
            .collect();

        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(p, a, b) as u16;
                }
            }
            t
        });

        // an element is a square iff its discrete log is even
        let nonsquare = FElem((1..q).find(|&a| log[a as usize] % 2 == 1).unwrap_or(0));

        Ok(Field(Arc::new(Inner { p, e, q, modulus, exp, log, neg, add, nonsquare })))
    }

    /// Builds the field of order `q`, factoring `q` as `p^e`.
    pub fn from_order(q: u64) -> Result<Field> {
        if q < 3 {
            return Err(if q == 2 { Error::EvenCharacteristic(2) } else { Error::NotPrimePower(q) });
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        if p == 2 {
            return Err(Error::EvenCharacteristic(q));
        }
        let (mut rest, mut e) = (q, 0u32);
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Field::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, little-endian with leading coefficient 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Encoding of the defining polynomial including its leading term.
    /// For prime fields the modulus is `x`, encoded as `p`.
    pub fn modulus_enc(&self) -> u64 {
        self.0
            .modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p() as u64 + c as u64)
    }

    /// Element with the given encoding.
    pub fn elem(&self, enc: u64) -> Result<FElem> {
        if enc < self.q() as u64 {
            Ok(FElem(enc as u32))
        } else {
            Err(Error::ElementOutOfRange { enc, q: self.q() as u64 })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FElem {
        FElem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn coeffs(&self, a: FElem) -> Vec<u32> {
        decode(self.p(), self.e(), a.0)
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> + '_ {
        (0..self.q()).map(FElem)
    }

    /// The lowest-encoding nonsquare.
    pub fn nonsquare(&self) -> FElem {
        self.0.nonsquare
    }

    #[inline]
    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a.0 + b.0;
            FElem(if s >= inner.p { s - inner.p } else { s })
        } else if let Some(t) = &inner.add {
            FElem(t[(a.0 * inner.q + b.0) as usize] as u32)
        } else {
            FElem(add_digits(inner.p, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: FElem) -> FElem {
        FElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        if a.0 == 0 || b.0 == 0 {
            return FElem::ZERO;
        }
        let inner = &*self.0;
        FElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn pow(&self, a: FElem, n: u64) -> FElem {
        if n == 0 {
            return FElem::ONE;
        }
        if a.0 == 0 {
            return FElem::ZERO;
        }
        let order = (self.q() - 1) as u64;
        let k = (self.0.log[a.0 as usize] as u64 * (n % order)) % order;
        FElem(self.0.exp[k as usize])
    }

    pub fn inv(&self, a: FElem) -> Result<FElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() as u64 - 2))
    }

    pub fn div(&self, a: FElem, b: FElem) -> Result<FElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character: `0` for zero, `+1` for nonzero squares, `-1` otherwise.
    pub fn legendre(&self, a: FElem) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.q() as u64 - 1) / 2) == FElem::ONE {
            1
        } else {
            -1
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn decode(p: u32, e: u32, mut enc: u32) -> Vec<u32> {
    let mut c = vec![0u32; e as usize];
    for d in c.iter_mut() {
        *d = enc % p;
        enc /= p;
    }
    c
}

fn encode(p: u32, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_digits(p: u32, mut a: u32, mut b: u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over `GF(p)`.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let p64 = p as u64;
    for i in (dm..r.len()).rev() {
        let c = r[i] % p64;
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let idx = i - dm + j;
            r[idx] = (r[idx] + (p64 - c) * mj as u64) % p64;
        }
    }
    r.truncate(dm);
    let mut out: Vec<u32> = r.into_iter().map(|x| (x % p64) as u32).collect();
    out.resize(dm, 0);
    out
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    poly_rem(p, &prod, m)
}

fn monic(p: u32, degree: u32, lower: u32) -> Vec<u32> {
    let mut c = decode(p, degree, lower);
    c.push(1);
    c
}

/// True when the monic polynomial `f` has no monic factor of degree
/// `1..=deg(f)/2`, by exhaustive trial division.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let n = (f.len() - 1) as u32;
    for d in 1..=n / 2 {
        for lower in 0..p.pow(d) {
            let g = monic(p, d, lower);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn lowest_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..p.pow(e))
        .map(|lower| monic(p, e, lower))
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::EvenCharacteristic(4));
        assert_eq!(Field::new(2, 3).unwrap_err(), Error::EvenCharacteristic(2));
        assert_eq!(Field::new(9, 1).unwrap_err(), Error::NonPrime(9));
        assert!(matches!(Field::new(3, 0), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(Field::new(3, 11), Err(Error::DegreeOutOfRange { .. })));
        assert_eq!(Field::from_order(12).unwrap_err(), Error::EvenCharacteristic(12));
        assert_eq!(Field::from_order(15).unwrap_err(), Error::NotPrimePower(15));
        assert_eq!(Field::from_order(1).unwrap_err(), Error::NotPrimePower(1));
    }

    #[test]
    fn prime_field_basics() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        let two = f.elem(2).unwrap();
        assert_eq!(f.mul(two, two), FElem::ONE);
        assert_eq!(f.inv(FElem::ONE).unwrap(), FElem::ONE);
        assert_eq!(f.inv(FElem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.legendre(FElem::ZERO), 0);
        assert_eq!(f.legendre(two), -1);
        assert_eq!(f.elements().map(FElem::enc).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(f.modulus_enc(), 3);
        assert_eq!(f.nonsquare(), two);
        assert!(f.elem(3).is_err());
    }

    /// Independent enumeration of the monic quadratics over GF(3): a monic
    /// quadratic is irreducible iff it has no root in GF(3).
    #[test]
    fn gf9_modulus_is_lowest_rootless_quadratic() {
        let mut expected = None;
        for lower in 0..9u32 {
            let (c0, c1) = (lower % 3, lower / 3);
            let has_root = (0..3u32).any(|x| (x * x + c1 * x + c0) % 3 == 0);
            if !has_root {
                expected = Some(vec![c0, c1, 1]);
                break;
            }
        }
        let f = Field::new(3, 2).unwrap();
        assert_eq!(Some(f.modulus().to_vec()), expected);
        assert_eq!(f.modulus(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(f.modulus_enc(), 10);
        assert_eq!(Field::from_order(9).unwrap(), f);
    }

    #[test]
    fn gf9_inverses_and_squares() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FElem::ONE);
        }
        let squares = f.elements().filter(|&a| f.legendre(a) == 1).count();
        assert_eq!(squares, 4);
        // x * x = x^2 = -1 = 2 under x^2 + 1
        assert_eq!(f.mul(f.elem(3).unwrap(), f.elem(3).unwrap()), f.elem(2).unwrap());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [3u64, 5, 7, 9, 25, 27, 49] {
            let f = Field::from_order(q).unwrap();
            let els: Vec<FElem> = f.elements().collect();
            assert_eq!(els[0], FElem::ZERO);
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FElem::ZERO);
                assert_eq!(f.coeffs(a).iter().rev().fold(0, |acc, &c| acc * f.p() + c), a.enc());
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q - 1), FElem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if !a.is_zero() && !b.is_zero() {
                        assert_eq!(f.legendre(a) * f.legendre(b), f.legendre(f.mul(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn distributive_gf27() {
        let f = Field::from_order(27).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::from_order(3u64.pow(7)).unwrap();
        let a = f.elem(1234).unwrap();
        let b = f.elem(999).unwrap();
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FElem::ONE);
    }
}

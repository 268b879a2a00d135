//! Closed-form weights of `C_symm(t, m)`.
//!
//! The codeword attached to a symmetric `B` has weight
//! `|{A : rank A <= t, Tr(B A) != 0}|`, which depends only on the stratum
//! `(k, tau)` of `B`. [`restricted_weight`] counts the contribution of the
//! rank-`r` matrices; [`weight`] is the closed form of their sum over
//! `r <= t`. Multiplicities come from the bijection between codewords and
//! symmetric matrices, so stratum `(k, tau)` contributes `mu_{k,tau}(m)`
//! codewords.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{exact_div, exact_div_signed, mu, mu_stratum, nu, qpow};
use crate::gf::{FElem, Field};
use crate::krawtchouk::kraw_f;
use crate::qnumbers::q_number;
use crate::symmat::{rank_type, strata, FormType, RankType, SymMatrix};
use crate::{Count, Error, Result};

fn qp(f: &Field, e: i64) -> BigInt {
    debug_assert!(e >= 0, "negative exponent {e}");
    BigInt::from(qpow(f, e as u64))
}

/// `(q - 1) / q * x`, exact and nonnegative.
fn scale(f: &Field, x: BigInt, what: &str) -> Result<Count> {
    let q = BigInt::from(f.q());
    let v = exact_div_signed(&(x * (&q - 1)), &q, what)?;
    if v.is_negative() {
        return Err(Error::NegativeCount(what.to_string()));
    }
    Ok(v.magnitude().clone())
}

fn check_stratum(m: usize, s: RankType) -> Result<()> {
    RankType::within(m, s.rank, s.ty).map(|_| ())
}

fn check_t(m: usize, t: usize) -> Result<()> {
    if t > m {
        return Err(Error::RangeError(format!("t = {t} exceeds m = {m}")));
    }
    Ok(())
}

/// Number of rank-`r` matrices `A` with `Tr(B A) != 0`, for `B` in stratum `s`.
pub fn restricted_weight(f: &Field, m: usize, s: RankType, r: usize) -> Result<Count> {
    check_stratum(m, s)?;
    check_t(m, r)?;
    if r == 0 || s.rank == 0 {
        return Ok(BigUint::zero());
    }
    let mi = m as i64;
    let mu_r = BigInt::from(mu(f, m, r)?);
    let tau = BigInt::from(s.tau());
    let l = (s.rank / 2) as i64;
    let rho = (r / 2) as i64;
    let inner = match (s.rank % 2 == 1, r % 2 == 1) {
        (true, true) => mu_r + qp(f, 2 * rho) * kraw_f(f, mi - 1, rho, l)?,
        (false, true) => {
            mu_r + qp(f, 2 * rho) * kraw_f(f, mi - 1, rho, l - 1)?
                - tau * qp(f, mi - l + 2 * rho) * kraw_f(f, mi - 2, rho, l - 1)?
        }
        (true, false) => mu_r - qp(f, 2 * rho) * kraw_f(f, mi - 1, rho, l)?,
        (false, false) => {
            mu_r - qp(f, 2 * rho) * kraw_f(f, mi - 1, rho, l - 1)?
                + tau * qp(f, mi - l + 2 * rho - 2) * kraw_f(f, mi - 2, rho - 1, l - 1)?
        }
    };
    scale(f, inner, "restricted_weight")
}

/// The same restricted weight computed from the Q-numbers of the rank-`r`
/// rows: `(q-1)/q * (mu_r(m) - sum_eps Q_{r,eps}(k,tau))`.
pub fn restricted_weight_via_q(f: &Field, m: usize, s: RankType, r: usize) -> Result<Count> {
    check_stratum(m, s)?;
    check_t(m, r)?;
    if r == 0 || s.rank == 0 {
        return Ok(BigUint::zero());
    }
    let rows: Vec<RankType> = strata(m).into_iter().filter(|row| row.rank == r).collect();
    let mut inner = BigInt::from(mu(f, m, r)?);
    for row in rows {
        inner -= q_number(f, m, row, s)?;
    }
    scale(f, inner, "restricted_weight_via_q")
}

/// `sum_{r=0}^{t} mu_r(m)`.
fn nu_signed(f: &Field, m: usize, t: usize) -> Result<BigInt> {
    Ok(BigInt::from(nu(f, m, t)?))
}

/// Weight of the codewords attached to stratum `s` in `C_symm(t, m)`, by
/// the closed forms for even and odd `t`.
pub fn weight(f: &Field, m: usize, t: usize, s: RankType) -> Result<Count> {
    check_stratum(m, s)?;
    check_t(m, t)?;
    if s.rank == 0 {
        return Ok(BigUint::zero());
    }
    let mi = m as i64;
    let total = nu_signed(f, m, t)?;
    let h = (t / 2) as i64;
    let l = (s.rank / 2) as i64;
    let inner = if t.is_multiple_of(2) {
        let arg = if s.rank % 2 == 1 { l } else { l - 1 };
        total - qp(f, t as i64) * kraw_f(f, mi - 1, h, arg)?
    } else if s.rank % 2 == 1 {
        total
    } else {
        let tau = BigInt::from(s.tau());
        total - tau * qp(f, mi - l + 2 * h) * kraw_f(f, mi - 2, h, l - 1)?
    };
    scale(f, inner, "weight")
}

/// `sum_{r=1}^{t}` of [`restricted_weight`].
pub fn weight_stratified(f: &Field, m: usize, t: usize, s: RankType) -> Result<Count> {
    check_t(m, t)?;
    (1..=t).try_fold(BigUint::zero(), |acc, r| Ok(acc + restricted_weight(f, m, s, r)?))
}

/// [`weight`], asserting agreement with [`weight_stratified`].
pub fn weight_cross_checked(f: &Field, m: usize, t: usize, s: RankType) -> Result<Count> {
    let closed = weight(f, m, t, s)?;
    let summed = weight_stratified(f, m, t, s)?;
    if closed != summed {
        return Err(Error::CrossCheckMismatch {
            context: format!("weight q={} m={m} t={t} stratum={s}", f.q()),
            left: closed.to_string(),
            right: summed.to_string(),
        });
    }
    Ok(closed)
}

fn check_code(m: usize, t: usize) -> Result<()> {
    if t == 0 || t > m {
        return Err(Error::RangeError(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    Ok(())
}

/// The stratum whose codewords attain the minimum distance: rank one for
/// even `t`, hyperbolic rank two for odd `t`. With `m = 1` there is no
/// rank-two stratum and the rank-one weight is the only nonzero weight.
pub fn min_weight_stratum(m: usize, t: usize) -> RankType {
    if t.is_multiple_of(2) || m < 2 {
        RankType::odd(1)
    } else {
        RankType { rank: 2, ty: FormType::Hyperbolic }
    }
}

/// Minimum distance of `C_symm(t, m)`, checked against the minimum over
/// every stratum weight.
pub fn min_distance(f: &Field, m: usize, t: usize) -> Result<Count> {
    check_code(m, t)?;
    let d = weight(f, m, t, min_weight_stratum(m, t))?;
    let mut argmin = None::<Count>;
    for s in strata(m).into_iter().skip(1) {
        let w = weight(f, m, t, s)?;
        if argmin.as_ref().is_none_or(|cur| &w < cur) {
            argmin = Some(w);
        }
    }
    let argmin = argmin.expect("m >= 1 has a nonzero stratum");
    if argmin != d {
        return Err(Error::CrossCheckMismatch {
            context: format!("min_distance q={} m={m} t={t}", f.q()),
            left: d.to_string(),
            right: argmin.to_string(),
        });
    }
    Ok(d)
}

fn q_minus_one(f: &Field) -> BigUint {
    BigUint::from(f.q() - 1)
}

/// Minimum distance of the projective code `min_distance / (q - 1)`.
pub fn min_distance_projective(f: &Field, m: usize, t: usize) -> Result<Count> {
    exact_div(&min_distance(f, m, t)?, &q_minus_one(f), "min_distance_projective")
}

/// Length of the projective code `(nu_m(t) - 1) / (q - 1)`.
pub fn projective_length(f: &Field, m: usize, t: usize) -> Result<Count> {
    check_code(m, t)?;
    exact_div(&(nu(f, m, t)? - 1u32), &q_minus_one(f), "projective_length")
}

/// Number of matrices of rank at most `t` whose delta-partial k-trace
/// `a_11 + ... + a_{k-1,k-1} + delta a_kk` equals `alpha`.
pub fn partial_trace_count(
    f: &Field,
    m: usize,
    t: usize,
    k: usize,
    delta: FElem,
    alpha: FElem,
) -> Result<Count> {
    if k == 0 || k > m {
        return Err(Error::RangeError(format!("need 1 <= k <= m, got k = {k}, m = {m}")));
    }
    check_t(m, t)?;
    if delta.is_zero() {
        return Err(Error::RangeError("delta must be nonzero".into()));
    }
    let mut diag = vec![FElem::ZERO; m];
    diag[..k].fill(FElem::ONE);
    diag[k - 1] = delta;
    let stratum = rank_type(f, &SymMatrix::diag(&diag));
    let w = weight(f, m, t, stratum)?;
    if alpha.is_zero() {
        Ok(nu(f, m, t)? - w)
    } else {
        exact_div(&w, &q_minus_one(f), "partial_trace_count")
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub k: usize,
    pub tau: i8,
    #[serde(with = "decimal")]
    pub weight: Count,
    #[serde(with = "decimal")]
    pub multiplicity: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCount {
    #[serde(with = "decimal")]
    pub weight: Count,
    #[serde(with = "decimal")]
    pub multiplicity: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projective {
    #[serde(with = "decimal")]
    pub length: Count,
    #[serde(with = "decimal")]
    pub min_distance: Count,
}

/// Weight distribution of `C_symm(t, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub q: u32,
    pub m: usize,
    pub t: usize,
    #[serde(with = "decimal")]
    pub length: Count,
    pub dimension: usize,
    /// Zero row first, then every nonzero stratum in canonical order.
    pub rows: Vec<WeightRow>,
    /// Distinct weights, increasing, with total multiplicities.
    pub aggregated: Vec<WeightCount>,
    #[serde(with = "decimal")]
    pub min_distance: Count,
    pub projective: Projective,
}

impl WeightTable {
    /// Assembles a table from per-stratum weights (zero stratum excluded),
    /// deriving the aggregate, minimum distance and projective parameters.
    pub fn from_rows(f: &Field, m: usize, t: usize, length: Count, rows: Vec<WeightRow>) -> Result<WeightTable> {
        let mut all = vec![WeightRow { k: 0, tau: 1, weight: BigUint::zero(), multiplicity: BigUint::from(1u32) }];
        all.extend(rows);
        let mut agg: BTreeMap<Count, Count> = BTreeMap::new();
        for r in &all {
            if !r.multiplicity.is_zero() {
                *agg.entry(r.weight.clone()).or_default() += &r.multiplicity;
            }
        }
        let aggregated: Vec<WeightCount> =
            agg.into_iter().map(|(weight, multiplicity)| WeightCount { weight, multiplicity }).collect();
        let min_distance = aggregated
            .iter()
            .map(|w| &w.weight)
            .find(|w| !w.is_zero())
            .cloned()
            .ok_or_else(|| Error::RangeError("code has no nonzero codeword".into()))?;
        let qm1 = q_minus_one(f);
        let projective = Projective {
            length: exact_div(&(&length - 1u32), &qm1, "projective length")?,
            min_distance: exact_div(&min_distance, &qm1, "projective distance")?,
        };
        Ok(WeightTable {
            q: f.q(),
            m,
            t,
            length,
            dimension: m * (m + 1) / 2,
            rows: all,
            aggregated,
            min_distance,
            projective,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weight tables serialize")
    }

    /// One `weight,multiplicity` pair per line.
    pub fn to_csv(&self) -> String {
        self.aggregated.iter().map(|w| format!("{},{}\n", w.weight, w.multiplicity)).collect()
    }

    /// Sum of all multiplicities, zero codeword included.
    pub fn total_multiplicity(&self) -> Count {
        self.aggregated.iter().map(|w| &w.multiplicity).sum()
    }
}

/// The complete weight distribution of `C_symm(t, m)` from the closed forms.
pub fn weight_distribution(f: &Field, m: usize, t: usize) -> Result<WeightTable> {
    check_code(m, t)?;
    let rows = strata(m)
        .into_iter()
        .skip(1)
        .map(|s| {
            Ok(WeightRow {
                k: s.rank,
                tau: s.tau(),
                weight: weight(f, m, t, s)?,
                multiplicity: mu_stratum(f, m, s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let table = WeightTable::from_rows(f, m, t, nu(f, m, t)?, rows)?;
    let closed = min_distance(f, m, t)?;
    if closed != table.min_distance {
        return Err(Error::CrossCheckMismatch {
            context: format!("weight_distribution q={} m={m} t={t}", f.q()),
            left: closed.to_string(),
            right: table.min_distance.to_string(),
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    const HYP2: RankType = RankType { rank: 2, ty: FormType::Hyperbolic };
    const ELL2: RankType = RankType { rank: 2, ty: FormType::Elliptic };

    #[test]
    fn restricted_weight_examples() {
        let f = gf(3);
        assert_eq!(restricted_weight(&f, 2, RankType::odd(1), 0).unwrap(), n(0));
        assert_eq!(restricted_weight(&f, 2, RankType::ZERO, 2).unwrap(), n(0));
        assert_eq!(restricted_weight(&f, 2, RankType::odd(1), 1).unwrap(), n(6));
        let total: BigUint = (0..=2).map(|r| restricted_weight(&f, 2, RankType::odd(1), r).unwrap()).sum();
        assert_eq!(total, n(18));
    }

    #[test]
    fn weight_examples() {
        let f = gf(3);
        assert_eq!(weight(&f, 2, 1, RankType::ZERO).unwrap(), n(0));
        assert_eq!(weight(&f, 2, 1, HYP2).unwrap(), n(4));
        assert_eq!(weight(&f, 2, 1, ELL2).unwrap(), n(8));
        assert_eq!(weight(&f, 2, 1, RankType::odd(1)).unwrap(), n(6));
        assert_eq!(weight(&f, 3, 1, HYP2).unwrap(), n(12));
        assert!(weight(&f, 2, 3, HYP2).is_err());
        assert!(weight(&f, 2, 1, RankType::odd(3)).is_err());
    }

    #[test]
    fn distribution_small() {
        let f = gf(3);
        let full = weight_distribution(&f, 2, 2).unwrap();
        let agg: Vec<_> = full.aggregated.iter().map(|w| (w.weight.clone(), w.multiplicity.clone())).collect();
        assert_eq!(agg, vec![(n(0), n(1)), (n(18), n(26))]);

        let t1 = weight_distribution(&f, 2, 1).unwrap();
        let agg: Vec<_> = t1.aggregated.iter().map(|w| (w.weight.clone(), w.multiplicity.clone())).collect();
        assert_eq!(agg, vec![(n(0), n(1)), (n(4), n(12)), (n(6), n(8)), (n(8), n(6))]);
        assert_eq!(t1.total_multiplicity(), n(27));
        assert_eq!(t1.length, n(9));
        assert_eq!(t1.min_distance, n(4));
        assert_eq!(t1.projective, Projective { length: n(4), min_distance: n(2) });
        assert!(weight_distribution(&f, 2, 0).is_err());
        assert!(weight_distribution(&f, 2, 3).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let f = gf(3);
        assert_eq!(min_distance(&f, 2, 1).unwrap(), n(4));
        assert_eq!(min_distance(&f, 2, 2).unwrap(), n(18));
        assert_eq!(min_distance(&f, 3, 1).unwrap(), weight(&f, 3, 1, HYP2).unwrap());
        assert_eq!(min_distance_projective(&f, 2, 1).unwrap(), n(2));
        assert_eq!(min_distance_projective(&f, 2, 2).unwrap(), n(9));
        assert_eq!(projective_length(&f, 2, 1).unwrap(), n(4));
        // m = 1: the code is GF(q) itself evaluated everywhere
        let f7 = gf(7);
        assert_eq!(min_distance(&f7, 1, 1).unwrap(), n(6));
    }

    #[test]
    fn partial_trace_examples() {
        let f = gf(3);
        let one = FElem::ONE;
        assert_eq!(partial_trace_count(&f, 2, 1, 1, one, one).unwrap(), n(3));
        for q in [3u64, 5, 9] {
            let f = gf(q);
            for m in 1..5 {
                let space = n(q.pow((m * (m + 1) / 2) as u32));
                for k in 1..=m {
                    for delta in f.elements().skip(1) {
                        let zero = partial_trace_count(&f, m, m, k, delta, FElem::ZERO).unwrap();
                        assert_eq!(zero, &space / q);
                        for t in 0..=m {
                            let total: BigUint = f
                                .elements()
                                .map(|a| partial_trace_count(&f, m, t, k, delta, a).unwrap())
                                .sum();
                            assert_eq!(total, nu(&f, m, t).unwrap());
                        }
                    }
                }
            }
        }
        assert!(partial_trace_count(&f, 2, 1, 1, FElem::ZERO, one).is_err());
        assert!(partial_trace_count(&f, 2, 1, 3, one, one).is_err());
    }

    #[test]
    fn json_shape() {
        let t = weight_distribution(&gf(3), 2, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["length"], "9");
        assert_eq!(v["min_distance"], "4");
        assert_eq!(v["projective"]["length"], "4");
        assert_eq!(v["rows"][0]["k"], 0);
        assert_eq!(v["rows"][3]["tau"], -1);
        assert_eq!(v["aggregated"][1]["multiplicity"], "12");
        let back: WeightTable = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_csv(), "0,1\n4,12\n6,8\n8,6\n");
    }

    #[test]
    fn two_routes_to_restricted_weights_agree() {
        for q in [3u64, 5, 9, 25] {
            let f = gf(q);
            for m in 1..=8 {
                for s in strata(m) {
                    for r in 0..=m {
                        assert_eq!(
                            restricted_weight(&f, m, s, r).unwrap(),
                            restricted_weight_via_q(&f, m, s, r).unwrap(),
                            "q={q} m={m} s={s} r={r}"
                        );
                    }
                }
            }
        }
    }
}

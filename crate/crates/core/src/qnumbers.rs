//! Q-numbers of the association scheme of symmetric matrices.
//!
//! `Q_{k,eps}(i,tau)` is the sum of `chi(Tr(A B))` over `B` in the row
//! stratum `X_{k,eps}`, for any fixed `A` in the column stratum `X_{i,tau}`
//! and any nontrivial additive character `chi`. Values are expressed
//! through [`kraw_f`] on sizes `m`, `m - 1` and `m - 2`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinat::{exact_div_signed, mu_stratum, qpow};
use crate::gf::Field;
use crate::krawtchouk::kraw_f;
use crate::symmat::{strata, RankType};
use crate::{Error, Result, SignedCount};

fn qp(f: &Field, e: i64) -> Result<BigInt> {
    if e < 0 {
        return Err(Error::RangeError(format!("negative exponent {e}")));
    }
    Ok(BigInt::from(qpow(f, e as u64)))
}

fn half(x: BigInt, what: &str) -> Result<BigInt> {
    exact_div_signed(&x, &BigInt::from(2), what)
}

fn check(m: usize, s: RankType) -> Result<()> {
    RankType::within(m, s.rank, s.ty).map(|_| ())
}

/// `Q_row(col)` for strata `row = (k, eps)` and `col = (i, tau)`.
pub fn q_number(f: &Field, m: usize, row: RankType, col: RankType) -> Result<SignedCount> {
    check(m, row)?;
    check(m, col)?;
    if row.rank == 0 {
        return Ok(BigInt::one());
    }
    if col.rank == 0 {
        return Ok(BigInt::from(mu_stratum(f, m, row)?));
    }
    let mi = m as i64;
    let (r, s) = ((row.rank / 2) as i64, (col.rank / 2) as i64);
    let eps = BigInt::from(row.tau());
    let tau = BigInt::from(col.tau());
    let value = match (row.rank % 2 == 1, col.rank % 2 == 1) {
        (true, true) => -qp(f, 2 * r)? * kraw_f(f, mi - 1, r, s)?,
        (true, false) => {
            -qp(f, 2 * r)? * kraw_f(f, mi - 1, r, s - 1)?
                + tau * qp(f, mi - s + 2 * r)? * kraw_f(f, mi - 2, r, s - 1)?
        }
        (false, true) => half(
            qp(f, 2 * r)? * kraw_f(f, mi - 1, r, s)? + eps * qp(f, r)? * kraw_f(f, mi, r, s)?,
            "Q(even, odd)",
        )?,
        (false, false) => half(
            qp(f, 2 * r)? * kraw_f(f, mi - 1, r, s - 1)?
                - tau * qp(f, mi - s + 2 * r - 2)? * kraw_f(f, mi - 2, r - 1, s - 1)?
                + eps * qp(f, r)? * kraw_f(f, mi, r, s)?,
            "Q(even, even)",
        )?,
    };
    Ok(value)
}

/// The full table of Q-numbers over [`strata`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub strata: Vec<RankType>,
    /// `values[row][col]`.
    pub values: Vec<Vec<SignedCount>>,
}

impl QMatrix {
    pub fn compute(f: &Field, m: usize) -> Result<QMatrix> {
        let strata = strata(m);
        let values = strata
            .iter()
            .map(|&row| strata.iter().map(|&col| q_number(f, m, row, col)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix { strata, values })
    }

    /// CSV with a header row of column strata; each data row starts with
    /// its row stratum. Strata are written `rank:type`.
    pub fn to_csv(&self) -> String {
        let label = |s: &RankType| format!("{}:{}", s.rank, s.tau());
        let mut out = String::from("stratum");
        for s in &self.strata {
            write!(out, ",{}", label(s)).unwrap();
        }
        out.push('\n');
        for (s, row) in self.strata.iter().zip(&self.values) {
            out.push_str(&label(s));
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

//! Formula-versus-oracle report for one `(q, m)`.

use std::fmt;

use serde::Serialize;

use super::{brute_weight_table, Mode, SkewSpace, SymSpace};
use crate::combinat::mu_stratum;
use crate::gf::Field;
use crate::guard::saturating_pow;
use crate::krawtchouk::{kraw_f, SkewMatrix};
use crate::qnumbers::q_number;
use crate::symmat::{representative, upper_len};
use crate::weights::weight_distribution;
use crate::{Guard, Result};

/// One compared quantity.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub check: String,
    pub params: String,
    pub formula: String,
    pub oracle: String,
    pub pass: bool,
}

impl Check {
    fn new(check: &str, params: String, formula: impl ToString, oracle: impl ToString) -> Self {
        let (formula, oracle) = (formula.to_string(), oracle.to_string());
        Check { check: check.into(), params, pass: formula == oracle, formula, oracle }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} formula={} oracle={} {}",
            self.check,
            self.params,
            self.formula,
            self.oracle,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    pub q: u32,
    pub m: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Restrict the weight checks to one `t`; all `1..=m` otherwise.
    pub t: Option<usize>,
    pub mode: Mode,
    pub guard: Guard,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { t: None, mode: Mode::Representative, guard: Guard::default() }
    }
}

pub fn census_checks(f: &Field, space: &SymSpace) -> Result<Vec<Check>> {
    let m = space.m();
    space
        .census()
        .into_iter()
        .map(|(s, n)| Ok(Check::new("census", format!("q={} m={m} stratum={s}", f.q()), mu_stratum(f, m, s)?, n)))
        .collect()
}

pub fn qnum_checks(f: &Field, space: &SymSpace, guard: &Guard) -> Result<Vec<Check>> {
    let m = space.m();
    let strata = space.strata().to_vec();
    guard.check_ops((space.len() as u128).saturating_mul(strata.len() as u128))?;
    let mut out = Vec::new();
    for &col in &strata {
        let a = representative(f, m, col)?;
        let dists = space.trace_distributions(&a)?;
        for &row in &strata {
            out.push(Check::new(
                "qnum",
                format!("q={} m={m} row={row} col={col}", f.q()),
                q_number(f, m, row, col)?,
                dists[&row].character_sum()?,
            ));
        }
    }
    Ok(out)
}

/// Whether every matrix of every stratum produces the same per-stratum
/// trace distributions as the stratum's representative.
pub fn representative_independence(f: &Field, space: &SymSpace, guard: &Guard) -> Result<Vec<Check>> {
    let m = space.m();
    guard.check_ops((space.len() as u128).saturating_mul(space.len() as u128))?;
    let mut out = Vec::new();
    for &col in space.strata() {
        let expect = space.trace_distributions(&representative(f, m, col)?)?;
        let mut members = 0u64;
        let mut agreeing = 0u64;
        for (a, s) in space.iter() {
            if s != col {
                continue;
            }
            members += 1;
            if space.trace_distributions(&a)? == expect {
                agreeing += 1;
            }
        }
        out.push(Check::new("repindep", format!("q={} m={m} col={col}", f.q()), members, agreeing));
    }
    Ok(out)
}

pub fn kraw_checks(f: &Field, m: usize, guard: &Guard) -> Result<Vec<Check>> {
    let space = SkewSpace::new(f, m, guard)?;
    let n = m / 2;
    let mi = m as i64;
    let mut out = Vec::new();
    for (r, count) in space.rank_counts().into_iter().enumerate() {
        out.push(Check::new("skewcount", format!("q={} m={m} r={r}", f.q()), kraw_f(f, mi, r as i64, 0)?, count));
    }
    for s in 0..=n {
        let dists = space.pair_distributions(&SkewMatrix::standard(m, s)?)?;
        for (r, d) in dists.iter().enumerate() {
            out.push(Check::new(
                "kraw",
                format!("q={} m={m} r={r} s={s}", f.q()),
                kraw_f(f, mi, r as i64, s as i64)?,
                d.character_sum()?,
            ));
        }
    }
    Ok(out)
}

pub fn weight_checks(f: &Field, m: usize, t: usize, mode: Mode, guard: &Guard) -> Result<Vec<Check>> {
    let formula = weight_distribution(f, m, t)?;
    let oracle = brute_weight_table(f, m, t, mode, guard)?;
    let params = |what: &str| format!("q={} m={m} t={t} {what}", f.q());
    let mut out = vec![Check::new("weights", params("length"), &formula.length, &oracle.length)];
    for (a, b) in formula.rows.iter().zip(&oracle.rows) {
        let label = format!("stratum=({},{})", a.k, a.tau);
        let other = format!("stratum=({},{})", b.k, b.tau);
        if label != other {
            out.push(Check::new("weights", params("strata"), label, other));
            continue;
        }
        out.push(Check::new("weights", params(&format!("{label} weight")), &a.weight, &b.weight));
        out.push(Check::new("weights", params(&format!("{label} mult")), &a.multiplicity, &b.multiplicity));
    }
    if formula.rows.len() != oracle.rows.len() {
        out.push(Check::new("weights", params("rows"), formula.rows.len(), oracle.rows.len()));
    }
    out.push(Check::new("weights", params("mindist"), &formula.min_distance, &oracle.min_distance));
    Ok(out)
}

/// Runs every check for `(q, m)` in a fixed order: census, Q-numbers,
/// Krawtchouk values, then weights for each `t`.
pub fn run(f: &Field, m: usize, opts: &VerifyOptions) -> Result<Report> {
    let guard = &opts.guard;
    guard.check_enum(saturating_pow(f.q() as u128, upper_len(m)))?;
    let space = SymSpace::new(f, m, guard)?;
    let ts: Vec<usize> = match opts.t {
        Some(t) => vec![t],
        None => (1..=m).collect(),
    };

    let (sym, (kraw, weights)) = rayon::join(
        || -> Result<_> {
            let mut c = census_checks(f, &space)?;
            c.extend(qnum_checks(f, &space, guard)?);
            Ok(c)
        },
        || {
            rayon::join(
                || kraw_checks(f, m, guard),
                || -> Result<Vec<Check>> {
                    let mut c = Vec::new();
                    for &t in &ts {
                        c.extend(weight_checks(f, m, t, opts.mode, guard)?);
                    }
                    Ok(c)
                },
            )
        },
    );
    let mut checks = sym?;
    checks.extend(kraw?);
    checks.extend(weights?);
    Ok(Report { q: f.q(), m, checks })
}

//! Brute-force ground truth for every closed form in the crate.
//!
//! Character sums are never evaluated as complex numbers. For a nontrivial
//! additive character `chi`, `sum_B chi(<A, B>)` equals `n_0 - n_c` for any
//! `c != 0` exactly when the pairing values `c` are equidistributed off
//! zero; that equidistribution is the statement that the sum does not
//! depend on `chi`. The oracle therefore tallies pairing values, checks the
//! uniformity, and reports `n_0 - n_nonzero`.
//!
//! Nothing here calls into the formula modules.

pub mod verify;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::gf::{FElem, Field};
use crate::guard::saturating_pow;
use crate::krawtchouk::{enumerate_skew, skew_pair, SkewMatrix};
use crate::symmat::{enumerate_sym, rank_type, strata, trace_pair, upper_len, RankType, SymMatrix};
use crate::weights::{WeightRow, WeightTable};
use crate::{combinat, Error, Guard, Result};

/// Tally of pairing values `c -> n_c`, indexed by element encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDistribution {
    counts: Vec<u64>,
}

impl TraceDistribution {
    fn new(q: u32) -> Self {
        TraceDistribution { counts: vec![0; q as usize] }
    }

    fn push(&mut self, c: FElem) {
        self.counts[c.enc() as usize] += 1;
    }

    pub fn count(&self, c: FElem) -> u64 {
        self.counts[c.enc() as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The common count of every nonzero value.
    pub fn nonzero_count(&self) -> Result<u64> {
        let first = self.counts[1];
        if self.counts[1..].iter().all(|&c| c == first) {
            Ok(first)
        } else {
            Err(Error::UniformityViolation(format!("{:?}", self.counts)))
        }
    }

    /// `n_0 - n_nonzero`: the character sum for any nontrivial character.
    pub fn character_sum(&self) -> Result<BigInt> {
        Ok(BigInt::from(self.counts[0]) - BigInt::from(self.nonzero_count()?))
    }
}

/// Every `m x m` symmetric matrix with its stratum, in enumeration order.
///
/// Only the stratum of each matrix is stored; matrices are regenerated from
/// their lexicographic position when iterated.
pub struct SymSpace {
    field: Field,
    m: usize,
    strata: Vec<RankType>,
    /// Index into `strata` for each matrix.
    labels: Vec<u8>,
}

impl SymSpace {
    pub fn new(f: &Field, m: usize, guard: &Guard) -> Result<Self> {
        let strata = strata(m);
        let slot: BTreeMap<RankType, u8> = strata.iter().enumerate().map(|(i, &s)| (s, i as u8)).collect();
        let labels = enumerate_sym(f, m, guard)?.map(|a| slot[&rank_type(f, &a)]).collect();
        Ok(SymSpace { field: f.clone(), m, strata, labels })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn strata(&self) -> &[RankType] {
        &self.strata
    }

    /// `(matrix, stratum)` pairs in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (SymMatrix, RankType)> + '_ {
        enumerate_sym(&self.field, self.m, &Guard::unlimited())
            .expect("unlimited guard")
            .zip(self.labels.iter().map(|&l| self.strata[l as usize]))
    }

    pub fn stratum_of(&self, index: usize) -> RankType {
        self.strata[self.labels[index] as usize]
    }

    pub fn census(&self) -> BTreeMap<RankType, u64> {
        let mut counts = vec![0u64; self.strata.len()];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        self.strata.iter().copied().zip(counts).collect()
    }

    /// Distribution of `Tr(A B)` over `B` in each stratum, in one pass.
    pub fn trace_distributions(&self, a: &SymMatrix) -> Result<BTreeMap<RankType, TraceDistribution>> {
        if a.m() != self.m {
            return Err(Error::SizeMismatch(a.m(), self.m));
        }
        let q = self.field.q();
        let mut out: Vec<TraceDistribution> = self.strata.iter().map(|_| TraceDistribution::new(q)).collect();
        let enumerate = enumerate_sym(&self.field, self.m, &Guard::unlimited())?;
        for (b, &l) in enumerate.zip(&self.labels) {
            out[l as usize].push(trace_pair(&self.field, a, &b)?);
        }
        Ok(self.strata.iter().copied().zip(out).collect())
    }

    pub fn trace_distribution(&self, stratum: RankType, a: &SymMatrix) -> Result<TraceDistribution> {
        self.trace_distributions(a)?
            .remove(&stratum)
            .ok_or_else(|| Error::RangeError(format!("no stratum {stratum} for m = {}", self.m)))
    }
}

pub fn census(f: &Field, m: usize, guard: &Guard) -> Result<BTreeMap<RankType, u64>> {
    Ok(SymSpace::new(f, m, guard)?.census())
}

pub fn trace_distribution(
    f: &Field,
    m: usize,
    stratum: RankType,
    a: &SymMatrix,
    guard: &Guard,
) -> Result<TraceDistribution> {
    SymSpace::new(f, m, guard)?.trace_distribution(stratum, a)
}

/// Every skew-symmetric `m x m` matrix with its rank.
pub struct SkewSpace {
    field: Field,
    m: usize,
    mats: Vec<SkewMatrix>,
    half_ranks: Vec<u8>,
}

impl SkewSpace {
    pub fn new(f: &Field, m: usize, guard: &Guard) -> Result<Self> {
        let mats = enumerate_skew(f, m, guard)?;
        let half_ranks = mats.iter().map(|a| (a.rank(f) / 2) as u8).collect();
        Ok(SkewSpace { field: f.clone(), m, mats, half_ranks })
    }

    pub fn matrices(&self) -> &[SkewMatrix] {
        &self.mats
    }

    pub fn half_rank(&self, index: usize) -> usize {
        self.half_ranks[index] as usize
    }

    /// Number of skew matrices of rank `2s`, for each `s`.
    pub fn rank_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.m / 2 + 1];
        for &r in &self.half_ranks {
            counts[r as usize] += 1;
        }
        counts
    }

    /// Distribution of the skew pairing with `a` over each `Omega_r`.
    pub fn pair_distributions(&self, a: &SkewMatrix) -> Result<Vec<TraceDistribution>> {
        let mut out = vec![TraceDistribution::new(self.field.q()); self.m / 2 + 1];
        for (b, &r) in self.mats.iter().zip(&self.half_ranks) {
            out[r as usize].push(skew_pair(&self.field, a, b)?);
        }
        Ok(out)
    }
}

pub fn skew_pair_distribution(f: &Field, m: usize, r: usize, a: &SkewMatrix, guard: &Guard) -> Result<TraceDistribution> {
    if 2 * r > m {
        return Err(Error::RangeError(format!("skew rank {} exceeds m = {m}", 2 * r)));
    }
    Ok(SkewSpace::new(f, m, guard)?.pair_distributions(a)?.swap_remove(r))
}

/// How [`brute_weight_table`] obtains per-stratum weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Weigh every codeword and tally by the stratum of its matrix.
    Full,
    /// Weigh one representative per stratum.
    Representative,
}

/// The pairing `Tr(B A) = sum_c b_c a'_c` with `a'_c = a_c` on the diagonal
/// and `2 a_c` off it; returns `a'` laid out coordinate-major.
fn dual_columns(f: &Field, m: usize, points: &[SymMatrix]) -> Vec<Vec<FElem>> {
    let mut diagonal = Vec::with_capacity(upper_len(m));
    for i in 0..m {
        for j in i..m {
            diagonal.push(i == j);
        }
    }
    diagonal
        .iter()
        .enumerate()
        .map(|(c, &is_diag)| {
            points
                .iter()
                .map(|a| {
                    let x = a.upper()[c];
                    if is_diag { x } else { f.add(x, x) }
                })
                .collect()
        })
        .collect()
}

/// Weights of every `B` in lexicographic order, for a fixed value of the
/// first coordinate. Partial pairings are carried down the coordinate tree
/// so each leaf costs one multiply-add per evaluation point.
fn weights_with_prefix(f: &Field, dual: &[Vec<FElem>], first: FElem) -> Vec<u64> {
    let n_points = dual[0].len();
    let depth = dual.len();
    let q = f.q() as usize;
    let mut out = Vec::with_capacity(q.pow(depth as u32 - 1));
    let start: Vec<FElem> = dual[0].iter().map(|&x| f.mul(first, x)).collect();
    if depth == 1 {
        out.push(start.iter().filter(|x| !x.is_zero()).count() as u64);
        return out;
    }
    let mut stack: Vec<Vec<FElem>> = vec![vec![FElem::ZERO; n_points]; depth];
    stack[0] = start;
    descend(f, dual, 1, &mut stack, &mut out);
    out
}

fn descend(f: &Field, dual: &[Vec<FElem>], level: usize, stack: &mut [Vec<FElem>], out: &mut Vec<u64>) {
    let last = level + 1 == dual.len();
    let col = &dual[level];
    for b in f.elements() {
        let (done, rest) = stack.split_at_mut(level);
        let parent = &done[level - 1];
        if last {
            let w = parent
                .iter()
                .zip(col)
                .filter(|&(&s, &x)| !f.add(s, f.mul(b, x)).is_zero())
                .count();
            out.push(w as u64);
        } else {
            for ((dst, &s), &x) in rest[0].iter_mut().zip(parent).zip(col) {
                *dst = f.add(s, f.mul(b, x));
            }
            descend(f, dual, level + 1, stack, out);
        }
    }
}

/// Weight distribution of `C_symm(t, m)` by enumeration.
///
/// In [`Mode::Full`] every codeword is weighed and tallied; weights within
/// a stratum must coincide. In [`Mode::Representative`] one matrix per
/// stratum is weighed and stratum sizes supply the multiplicities.
pub fn brute_weight_table(f: &Field, m: usize, t: usize, mode: Mode, guard: &Guard) -> Result<WeightTable> {
    if t == 0 || t > m {
        return Err(Error::RangeError(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    let points: Vec<SymMatrix> = enumerate_sym(f, m, guard)?
        .filter(|a| rank_type(f, a).rank <= t)
        .collect();
    let n_points = points.len() as u128;
    let rows = match mode {
        Mode::Full => {
            guard.check_ops(saturating_pow(f.q() as u128, upper_len(m)).saturating_mul(n_points))?;
            let space = SymSpace::new(f, m, guard)?;
            let dual = dual_columns(f, m, &points);
            let elements: Vec<FElem> = f.elements().collect();
            let weights: Vec<u64> = elements
                .par_iter()
                .map(|&b| weights_with_prefix(f, &dual, b))
                .collect::<Vec<_>>()
                .concat();
            let mut seen: BTreeMap<RankType, (u64, u64)> = BTreeMap::new();
            for (idx, &w) in weights.iter().enumerate() {
                let s = space.stratum_of(idx);
                let entry = seen.entry(s).or_insert((w, 0));
                if entry.0 != w {
                    return Err(Error::StratumWeightViolation(format!(
                        "{s}: weights {} and {w} over GF({})",
                        entry.0,
                        f.q()
                    )));
                }
                entry.1 += 1;
            }
            seen.into_iter()
                .filter(|(s, _)| *s != RankType::ZERO)
                .map(|(s, (w, count))| WeightRow {
                    k: s.rank,
                    tau: s.tau(),
                    weight: BigUint::from(w),
                    multiplicity: BigUint::from(count),
                })
                .collect::<Vec<_>>()
        }
        Mode::Representative => {
            let strata = strata(m);
            guard.check_ops(n_points.saturating_mul(strata.len() as u128))?;
            strata
                .into_iter()
                .skip(1)
                .map(|s| {
                    let b = crate::symmat::representative(f, m, s)?;
                    let mut w = 0u64;
                    for a in &points {
                        if !trace_pair(f, &b, a)?.is_zero() {
                            w += 1;
                        }
                    }
                    Ok(WeightRow {
                        k: s.rank,
                        tau: s.tau(),
                        weight: BigUint::from(w),
                        multiplicity: combinat::mu_stratum(f, m, s)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    WeightTable::from_rows(f, m, t, BigUint::from(points.len()), rows)
}

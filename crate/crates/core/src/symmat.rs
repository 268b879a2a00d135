//! Symmetric matrices over `GF(q)` and their congruence classification.
//!
//! Over a field of odd characteristic a symmetric matrix is congruent to a
//! diagonal one. The rank and, for even rank `2s`, the quadratic character
//! of `(-1)^s` times the product of the nonzero diagonal entries classify
//! the matrix up to congruence: `+1` is hyperbolic, `-1` elliptic. Odd
//! ranks have a single (parabolic) class, reported as type `0`. The zero
//! matrix is given type `+1`.

use std::cmp::Ordering;
use std::fmt;

use crate::gf::{FElem, Field};
use crate::guard::saturating_pow;
use crate::{Error, Guard, Result};

/// Number of upper-triangle entries of an `m x m` symmetric matrix.
pub fn upper_len(m: usize) -> usize {
    m * (m + 1) / 2
}

/// An `m x m` symmetric matrix stored by its upper triangle in row-major
/// order `x_11, x_12, ..., x_1m, x_22, ..., x_mm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    m: usize,
    upper: Vec<FElem>,
}

impl SymMatrix {
    pub fn from_upper(m: usize, upper: Vec<FElem>) -> Result<Self> {
        if upper.len() != upper_len(m) {
            return Err(Error::LengthMismatch { expected: upper_len(m), actual: upper.len() });
        }
        Ok(SymMatrix { m, upper })
    }

    pub fn zero(m: usize) -> Self {
        SymMatrix { m, upper: vec![FElem::ZERO; upper_len(m)] }
    }

    /// Diagonal matrix with the given diagonal.
    pub fn diag(diagonal: &[FElem]) -> Self {
        let mut a = SymMatrix::zero(diagonal.len());
        for (i, &d) in diagonal.iter().enumerate() {
            a.set(i, i, d);
        }
        a
    }

    /// Builds a matrix from a dense square array; only the upper triangle is read.
    pub fn from_dense(rows: &[Vec<FElem>]) -> Result<Self> {
        let m = rows.len();
        let mut a = SymMatrix::zero(m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::SizeMismatch(m, row.len()));
            }
            for j in i..m {
                a.set(i, j, row[j]);
            }
        }
        Ok(a)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn upper(&self) -> &[FElem] {
        &self.upper
    }

    /// Position of entry `(i, j)`, `i <= j`, in the upper vector.
    #[inline]
    pub fn index(m: usize, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < m);
        i * m - i * i.saturating_sub(1) / 2 + (j - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FElem {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.upper[Self::index(self.m, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FElem) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.upper[Self::index(self.m, i, j)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|x| x.is_zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<FElem>> {
        (0..self.m).map(|i| (0..self.m).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Parses the `m e_1 ... e_k` serialization.
    pub fn parse(f: &Field, s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let m: usize = it
            .next()
            .ok_or_else(|| Error::Parse("empty matrix".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("matrix size: {e}")))?;
        let upper = it
            .map(|t| {
                let enc = t.parse::<u64>().map_err(|e| Error::Parse(format!("entry {t:?}: {e}")))?;
                f.elem(enc)
            })
            .collect::<Result<Vec<_>>>()?;
        SymMatrix::from_upper(m, upper)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)?;
        for x in &self.upper {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

/// Congruence type of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormType {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl FormType {
    pub fn sign(self) -> i8 {
        match self {
            FormType::Elliptic => -1,
            FormType::Parabolic => 0,
            FormType::Hyperbolic => 1,
        }
    }

    pub fn from_sign(tau: i64) -> Option<Self> {
        match tau {
            -1 => Some(FormType::Elliptic),
            0 => Some(FormType::Parabolic),
            1 => Some(FormType::Hyperbolic),
            _ => None,
        }
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// A rank/type stratum `X_{r, tau}`.
///
/// Ordered by rank, with `+1` before `-1` inside an even rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankType {
    pub rank: usize,
    pub ty: FormType,
}

impl RankType {
    pub const ZERO: RankType = RankType { rank: 0, ty: FormType::Hyperbolic };

    /// Validates parity consistency: type `0` exactly for odd rank and
    /// type `+1` for rank zero.
    pub fn new(rank: usize, ty: FormType) -> Result<Self> {
        let ok = match ty {
            FormType::Parabolic => rank % 2 == 1,
            FormType::Hyperbolic => rank.is_multiple_of(2),
            FormType::Elliptic => rank.is_multiple_of(2) && rank > 0,
        };
        if ok {
            Ok(RankType { rank, ty })
        } else {
            Err(Error::InvalidRankTypePair { rank, ty: ty.sign(), m: rank })
        }
    }

    /// Like [`RankType::new`], also requiring `rank <= m`.
    pub fn within(m: usize, rank: usize, ty: FormType) -> Result<Self> {
        match RankType::new(rank, ty) {
            Ok(s) if rank <= m => Ok(s),
            _ => Err(Error::InvalidRankTypePair { rank, ty: ty.sign(), m }),
        }
    }

    /// Odd ranks have one stratum; the type is implied.
    pub fn odd(rank: usize) -> Self {
        debug_assert!(rank % 2 == 1);
        RankType { rank, ty: FormType::Parabolic }
    }

    pub fn tau(self) -> i8 {
        self.ty.sign()
    }

    fn sort_key(self) -> (usize, u8) {
        (self.rank, u8::from(self.ty == FormType::Elliptic))
    }
}

impl Ord for RankType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for RankType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RankType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.ty)
    }
}

/// All strata of `m x m` symmetric matrices in canonical order.
pub fn strata(m: usize) -> Vec<RankType> {
    let mut out = vec![RankType::ZERO];
    for r in 1..=m {
        if r % 2 == 1 {
            out.push(RankType::odd(r));
        } else {
            out.push(RankType { rank: r, ty: FormType::Hyperbolic });
            out.push(RankType { rank: r, ty: FormType::Elliptic });
        }
    }
    out
}

/// `Tr(A B)` via `sum_i a_ii b_ii + 2 sum_{i<j} a_ij b_ij`.
pub fn trace_pair(f: &Field, a: &SymMatrix, b: &SymMatrix) -> Result<FElem> {
    if a.m != b.m {
        return Err(Error::SizeMismatch(a.m, b.m));
    }
    let m = a.m;
    let (mut diag, mut off) = (FElem::ZERO, FElem::ZERO);
    let mut idx = 0;
    for i in 0..m {
        for j in i..m {
            let prod = f.mul(a.upper[idx], b.upper[idx]);
            if i == j {
                diag = f.add(diag, prod);
            } else {
                off = f.add(off, prod);
            }
            idx += 1;
        }
    }
    Ok(f.add(diag, f.add(off, off)))
}

/// Diagonal entries of a congruence diagonalization, nonzero ones only.
///
/// Pivots on the lowest-index nonzero diagonal entry of the trailing block.
/// When that diagonal is entirely zero, the lexicographically first nonzero
/// off-diagonal `a_ij` is folded in by adding row and column `j` to row and
/// column `i`, which puts `2 a_ij` on the diagonal.
pub fn congruence_diagonal(f: &Field, a: &SymMatrix) -> Vec<FElem> {
    let m = a.m;
    let mut w = a.to_dense();
    let mut out = Vec::new();
    for k in 0..m {
        let pivot = match (k..m).find(|&i| !w[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (k..m)
                    .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                    .find(|&(i, j)| !w[i][j].is_zero())
                else {
                    break;
                };
                for c in 0..m {
                    w[i][c] = f.add(w[i][c], w[j][c]);
                }
                for r in 0..m {
                    w[r][i] = f.add(w[r][i], w[r][j]);
                }
                i
            }
        };
        w.swap(k, pivot);
        for row in w.iter_mut() {
            row.swap(k, pivot);
        }
        let d = w[k][k];
        let d_inv = f.inv(d).expect("pivot is nonzero");
        // Schur complement of the pivot; rows and columns above k are done.
        for i in k + 1..m {
            let factor = f.mul(w[i][k], d_inv);
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..m {
                let upd = f.mul(factor, w[k][j]);
                w[i][j] = f.sub(w[i][j], upd);
            }
        }
        for i in k + 1..m {
            w[i][k] = FElem::ZERO;
            w[k][i] = FElem::ZERO;
        }
        out.push(d);
    }
    out
}

/// Rank and congruence type.
pub fn rank_type(f: &Field, a: &SymMatrix) -> RankType {
    let d = congruence_diagonal(f, a);
    let rank = d.len();
    if rank == 0 {
        return RankType::ZERO;
    }
    if rank % 2 == 1 {
        return RankType::odd(rank);
    }
    let s = rank / 2;
    let sign = if s.is_multiple_of(2) { FElem::ONE } else { f.neg(FElem::ONE) };
    let disc = d.iter().fold(sign, |acc, &x| f.mul(acc, x));
    let ty = if f.legendre(disc) == 1 { FormType::Hyperbolic } else { FormType::Elliptic };
    RankType { rank, ty }
}

/// The canonical representative `diag(1, ..., 1, delta, 0, ..., 0)` of a
/// stratum, with `delta = 1` unless the nonsquare is needed to reach the
/// requested type.
pub fn representative(f: &Field, m: usize, stratum: RankType) -> Result<SymMatrix> {
    let s = RankType::within(m, stratum.rank, stratum.ty)?;
    let k = s.rank;
    let mut diag = vec![FElem::ZERO; m];
    diag[..k].fill(FElem::ONE);
    let mut g = SymMatrix::diag(&diag);
    if k > 0 && rank_type(f, &g) != s {
        g.set(k - 1, k - 1, f.nonsquare());
    }
    debug_assert_eq!(rank_type(f, &g), s);
    Ok(g)
}

/// Mixed-radix index of a matrix in lexicographic enumeration order.
pub fn lex_index(q: u32, a: &SymMatrix) -> usize {
    a.upper.iter().fold(0usize, |acc, x| acc * q as usize + x.enc() as usize)
}

/// Matrix at a lexicographic index.
pub fn from_lex_index(q: u32, m: usize, mut index: usize) -> SymMatrix {
    let n = upper_len(m);
    let mut upper = vec![FElem::ZERO; n];
    for slot in upper.iter_mut().rev() {
        *slot = FElem((index % q as usize) as u32);
        index /= q as usize;
    }
    SymMatrix { m, upper }
}

/// Iterator over all symmetric matrices in lexicographic order of their
/// upper-triangle encodings.
pub struct SymIter {
    q: u32,
    next: Option<SymMatrix>,
}

impl Iterator for SymIter {
    type Item = SymMatrix;

    fn next(&mut self) -> Option<SymMatrix> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut carried = true;
        for slot in succ.upper.iter_mut().rev() {
            if slot.enc() + 1 < self.q {
                *slot = FElem(slot.enc() + 1);
                carried = false;
                break;
            }
            *slot = FElem::ZERO;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(cur)
    }
}

pub fn enumerate_sym(f: &Field, m: usize, guard: &Guard) -> Result<SymIter> {
    guard.check_enum(saturating_pow(f.q() as u128, upper_len(m)))?;
    Ok(SymIter { q: f.q(), next: Some(SymMatrix::zero(m)) })
}

/// All matrices of rank at most `t`, in [`enumerate_sym`] order.
pub fn enumerate_rank_at_most(f: &Field, m: usize, t: usize, guard: &Guard) -> Result<Vec<SymMatrix>> {
    if t > m {
        return Err(Error::RangeError(format!("t = {t} exceeds m = {m}")));
    }
    Ok(enumerate_sym(f, m, guard)?
        .filter(|a| congruence_diagonal(f, a).len() <= t)
        .collect())
}

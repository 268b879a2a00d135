//! The evaluation code itself: generator matrices over `GF(q)` and their
//! text export.
//!
//! Rows are indexed by the monomials `x_ij`, `i <= j`, in upper-triangle
//! order and columns by the evaluation points of rank at most `t` in
//! enumeration order, so `G[(i,j), A] = a_ij`.

use std::io::{BufRead, Write};

use crate::gf::{FElem, Field};
use crate::guard::saturating_pow;
use crate::symmat::{enumerate_rank_at_most, upper_len, SymMatrix};
use crate::{Error, Guard, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Field,
    m: usize,
    t: usize,
    rows: usize,
    cols: usize,
    /// Row-major `rows x cols`.
    entries: Vec<FElem>,
    labels: Vec<SymMatrix>,
}

fn check_code(m: usize, t: usize) -> Result<()> {
    if t == 0 || t > m {
        return Err(Error::RangeError(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    Ok(())
}

impl GeneratorMatrix {
    fn from_points(field: &Field, m: usize, t: usize, labels: Vec<SymMatrix>) -> Self {
        let rows = upper_len(m);
        let cols = labels.len();
        let mut entries = vec![FElem::ZERO; rows * cols];
        for (c, a) in labels.iter().enumerate() {
            for (r, &x) in a.upper().iter().enumerate() {
                entries[r * cols + c] = x;
            }
        }
        GeneratorMatrix { field: field.clone(), m, t, rows, cols, entries, labels }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> FElem {
        self.entries[row * self.cols + col]
    }

    pub fn labels(&self) -> &[SymMatrix] {
        &self.labels
    }

    /// Codeword of `f = sum f_ij x_ij`, coefficients in upper-triangle order.
    pub fn codeword(&self, coeffs: &[FElem]) -> Result<Vec<FElem>> {
        if coeffs.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, actual: coeffs.len() });
        }
        let f = &self.field;
        let mut word = vec![FElem::ZERO; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            for (w, &x) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(c, x));
            }
        }
        Ok(word)
    }

    pub fn codeword_weight(&self, coeffs: &[FElem]) -> Result<u64> {
        Ok(self.codeword(coeffs)?.iter().filter(|x| !x.is_zero()).count() as u64)
    }

    /// Rank over `GF(q)` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else { continue };
            for k in 0..cols {
                a.swap(rank * cols + k, p * cols + k);
            }
            let inv = f.inv(a[rank * cols + c]).expect("nonzero pivot");
            for r in rank + 1..rows {
                let lead = a[r * cols + c];
                if lead.is_zero() {
                    continue;
                }
                let factor = f.mul(lead, inv);
                for k in c..cols {
                    let v = f.mul(factor, a[rank * cols + k]);
                    a[r * cols + k] = f.sub(a[r * cols + k], v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Writes the text format:
    ///
    /// ```text
    /// q m t rows cols
    /// p e modulus-enc
    /// <rows lines of cols entries>
    /// <cols lines of column labels>   (omitted without labels)
    /// ```
    pub fn write_to<W: Write>(&self, mut w: W, with_labels: bool) -> std::io::Result<()> {
        let f = &self.field;
        writeln!(w, "{} {} {} {} {}", f.q(), self.m, self.t, self.rows, self.cols)?;
        writeln!(w, "{} {} {}", f.p(), f.e(), f.modulus_enc())?;
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        if with_labels {
            for a in &self.labels {
                writeln!(w, "{a}")?;
            }
        }
        Ok(())
    }

    /// Reads the text format back. Without a label block, labels are
    /// rebuilt from the columns.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let io = |e: std::io::Error| Error::Parse(e.to_string());
        let mut lines = r.lines();
        let mut next_line = || -> Result<String> {
            lines.next().ok_or_else(|| Error::Parse("unexpected end of file".into()))?.map_err(io)
        };
        let nums = |s: &str| -> Result<Vec<u64>> {
            s.split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        };
        let head = nums(&next_line()?)?;
        let [q, m, t, rows, cols] = head[..] else {
            return Err(Error::Parse("header must be `q m t rows cols`".into()));
        };
        let fline = nums(&next_line()?)?;
        let [p, e, modulus] = fline[..] else {
            return Err(Error::Parse("field line must be `p e modulus-enc`".into()));
        };
        let field = Field::new(p, e as u32)?;
        if field.q() as u64 != q || field.modulus_enc() != modulus {
            return Err(Error::Parse(format!("field GF({p}^{e}) with modulus {modulus} does not match q = {q}")));
        }
        let (m, t, rows, cols) = (m as usize, t as usize, rows as usize, cols as usize);
        if rows != upper_len(m) {
            return Err(Error::LengthMismatch { expected: upper_len(m), actual: rows });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let row = nums(&next_line()?)?;
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, actual: row.len() });
            }
            for x in row {
                entries.push(field.elem(x)?);
            }
        }
        let mut labels = Vec::with_capacity(cols);
        for c in 0..cols {
            let label = match lines.next() {
                Some(line) => SymMatrix::parse(&field, &line.map_err(io)?)?,
                None => {
                    let upper = (0..rows).map(|r| entries[r * cols + c]).collect();
                    SymMatrix::from_upper(m, upper)?
                }
            };
            let column: Vec<FElem> = (0..rows).map(|r| entries[r * cols + c]).collect();
            if label.m() != m || label.upper() != column.as_slice() {
                return Err(Error::Parse(format!("label {c} does not match its column")));
            }
            labels.push(label);
        }
        Ok(GeneratorMatrix { field, m, t, rows, cols, entries, labels })
    }
}

/// Generator matrix of `C_symm(t, m)`: one column per matrix of rank at
/// most `t`, the zero matrix included.
pub fn build_generator(f: &Field, m: usize, t: usize, guard: &Guard) -> Result<GeneratorMatrix> {
    check_code(m, t)?;
    let cells = saturating_pow(f.q() as u128, upper_len(m)).saturating_mul(upper_len(m) as u128);
    guard.check_enum(cells)?;
    let points = enumerate_rank_at_most(f, m, t, guard)?;
    Ok(GeneratorMatrix::from_points(f, m, t, points))
}

/// Generator matrix of the projective code: the zero column dropped and
/// one column kept per scalar class, the one whose first nonzero entry is 1.
pub fn projective_generator(f: &Field, m: usize, t: usize, guard: &Guard) -> Result<GeneratorMatrix> {
    let affine = build_generator(f, m, t, guard)?;
    let points: Vec<SymMatrix> = affine
        .labels
        .into_iter()
        .filter(|a| a.upper().iter().find(|x| !x.is_zero()) == Some(&FElem::ONE))
        .collect();
    let expected = (affine.cols - 1) as u64;
    if !expected.is_multiple_of(f.q() as u64 - 1) || points.len() as u64 * (f.q() as u64 - 1) != expected {
        return Err(Error::InexactDivision("projective column count".into()));
    }
    Ok(GeneratorMatrix::from_points(f, m, t, points))
}

/// The symmetric `B_f` with `f(A) = Tr(B_f A)`: `b_ii = f_ii`, `b_ij = f_ij / 2`.
pub fn associated_matrix(f: &Field, m: usize, coeffs: &[FElem]) -> Result<SymMatrix> {
    if coeffs.len() != upper_len(m) {
        return Err(Error::LengthMismatch { expected: upper_len(m), actual: coeffs.len() });
    }
    let half = f.inv(f.from_int(2))?;
    let mut b = SymMatrix::zero(m);
    let mut idx = 0;
    for i in 0..m {
        for j in i..m {
            let c = coeffs[idx];
            b.set(i, j, if i == j { c } else { f.mul(c, half) });
            idx += 1;
        }
    }
    Ok(b)
}

/// Coefficients of `f` from `B_f`, inverse of [`associated_matrix`].
pub fn polynomial_of(f: &Field, b: &SymMatrix) -> Vec<FElem> {
    let m = b.m();
    let mut out = Vec::with_capacity(upper_len(m));
    for i in 0..m {
        for j in i..m {
            let x = b.get(i, j);
            out.push(if i == j { x } else { f.add(x, x) });
        }
    }
    out
}

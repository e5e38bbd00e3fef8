//! Matrices over a polynomial ring, with graded degree bookkeeping.
//!
//! A matrix records a map of graded free modules written on generators:
//! column `j` is the image of the `j`-th source generator. `col_degs[j]`
//! and `row_degs[i]` are generator degrees; a homogeneous matrix has every
//! nonzero entry `(i, j)` homogeneous of degree `col_degs[j] - row_degs[i]`.

use crate::error::{EngineError, Result};
use crate::poly::{parse_poly, same_ring, Polynomial, RingRef};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub ring: RingRef,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries, length `rows * cols`.
    pub entries: Vec<Polynomial>,
    pub row_degs: Vec<i64>,
    pub col_degs: Vec<i64>,
}

impl PolyMatrix {
    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
            row_degs: vec![0; rows],
            col_degs: vec![0; cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(ring);
        }
        m
    }

    /// Identity with prescribed generator degrees on both sides.
    pub fn identity_with_degs(ring: &RingRef, degs: &[i64]) -> PolyMatrix {
        let mut m = PolyMatrix::identity(ring, degs.len());
        m.row_degs = degs.to_vec();
        m.col_degs = degs.to_vec();
        m
    }

    /// Builds from rows of entries; degrees default to zero rows and are
    /// inferred for columns where possible (see [`PolyMatrix::reinfer_col_degs`]).
    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(EngineError::ShapeMismatch("ragged matrix rows".into()));
            }
            for e in row {
                same_ring(&e.ring, ring)?;
            }
            entries.extend(row.iter().cloned());
        }
        let mut m = PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries,
            row_degs: vec![0; r],
            col_degs: vec![0; c],
        };
        m.reinfer_col_degs()?;
        Ok(m)
    }

    /// Parses a matrix from text rows, e.g. `[["x", "-y"], ["0", "u"]]` shapes
    /// supplied as slices of entry strings.
    pub fn parse(ring: &RingRef, rows: &[&[&str]]) -> Result<PolyMatrix> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for src in *row {
                r.push(parse_poly(ring, src)?);
            }
            out.push(r);
        }
        PolyMatrix::from_rows(ring, out)
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        let c = self.cols;
        &mut self.entries[i * c + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Recomputes `col_degs` from entries given the current `row_degs`,
    /// failing if entries are inhomogeneous or a column is inconsistent.
    /// Columns with no nonzero entry keep degree 0.
    pub fn reinfer_col_degs(&mut self) -> Result<()> {
        for j in 0..self.cols {
            let mut deg: Option<i64> = None;
            for i in 0..self.rows {
                let e = self.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let d = e.homogeneous_degree().ok_or_else(|| {
                    EngineError::InhomogeneousInput(format!("matrix entry ({i},{j}) = {e}"))
                })? as i64
                    + self.row_degs[i];
                match deg {
                    None => deg = Some(d),
                    Some(prev) if prev == d => {}
                    Some(prev) => {
                        return Err(EngineError::InhomogeneousInput(format!(
                            "column {j} mixes generator degrees {prev} and {d}"
                        )))
                    }
                }
            }
            self.col_degs[j] = deg.unwrap_or(0);
        }
        Ok(())
    }

    /// Checks each entry is homogeneous of degree `col_degs[j] - row_degs[i]`.
    pub fn is_homogeneous(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if e.is_zero() {
                    continue;
                }
                match e.homogeneous_degree() {
                    Some(d) => {
                        if d as i64 != self.col_degs[j] - self.row_degs[i] {
                            return false;
                        }
                    }
                    None => return false,
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(EngineError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.at(i, k), other.at(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out.row_degs = self.row_degs.clone();
        out.col_degs = other.col_degs.clone();
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EngineError::ShapeMismatch("matrix sizes differ".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.neg();
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&other.neg())
    }

    /// Multiplies every entry by `p` (degrees of columns shift accordingly
    /// when `p` is homogeneous).
    pub fn scale_poly(&self, p: &Polynomial) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.mul(p);
        }
        if let Some(d) = p.homogeneous_degree() {
            for cd in &mut out.col_degs {
                *cd += d as i64;
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out.row_degs = self.col_degs.iter().map(|d| -d).collect();
        out.col_degs = self.row_degs.iter().map(|d| -d).collect();
        out
    }

    /// Horizontal concatenation `[self | other]` (same row space).
    pub fn hcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        if self.rows != other.rows {
            return Err(EngineError::ShapeMismatch("hcat row counts differ".into()));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *out.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out.row_degs = self.row_degs.clone();
        out.col_degs = self.col_degs.iter().chain(&other.col_degs).copied().collect();
        Ok(out)
    }

    /// Vertical concatenation (stack `other` below `self`).
    pub fn vcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        if self.cols != other.cols {
            return Err(EngineError::ShapeMismatch("vcat column counts differ".into()));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                *out.at_mut(self.rows + i, j) = other.at(i, j).clone();
            }
        }
        out.row_degs = self.row_degs.iter().chain(&other.row_degs).copied().collect();
        out.col_degs = self.col_degs.clone();
        Ok(out)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        let mut out = PolyMatrix::zero(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out.row_degs = self.row_degs.iter().chain(&other.row_degs).copied().collect();
        out.col_degs = self.col_degs.iter().chain(&other.col_degs).copied().collect();
        Ok(out)
    }

    /// Kronecker product; row/column degrees add blockwise.
    pub fn kronecker(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        same_ring(&self.ring, &other.ring)?;
        let (p, q) = (other.rows, other.cols);
        let mut out = PolyMatrix::zero(&self.ring, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            *out.at_mut(i * p + k, j * q + l) = a.mul(b);
                        }
                    }
                }
            }
        }
        for i in 0..self.rows {
            for k in 0..p {
                out.row_degs[i * p + k] = self.row_degs[i] + other.row_degs[k];
            }
        }
        for j in 0..self.cols {
            for l in 0..q {
                out.col_degs[j * q + l] = self.col_degs[j] + other.col_degs[l];
            }
        }
        Ok(out)
    }

    /// Keeps the selected columns, in order.
    pub fn select_cols(&self, keep: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.rows, keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..self.rows {
                *out.at_mut(i, jj) = self.at(i, j).clone();
            }
            out.col_degs[jj] = self.col_degs[j];
        }
        out.row_degs = self.row_degs.clone();
        out
    }

    /// Keeps the selected rows, in order.
    pub fn select_rows(&self, keep: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, keep.len(), self.cols);
        for (ii, &i) in keep.iter().enumerate() {
            for j in 0..self.cols {
                *out.at_mut(ii, j) = self.at(i, j).clone();
            }
            out.row_degs[ii] = self.row_degs[i];
        }
        out.col_degs = self.col_degs.clone();
        out
    }

    /// Applies a function to every entry, keeping degrees.
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = f(e);
        }
        out
    }

    /// Determinant by cofactor expansion (intended for small matrices).
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(EngineError::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_rec(self, &(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>()))
    }

    /// Adjugate matrix: `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(EngineError::ShapeMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = PolyMatrix::zero(&self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let mut m = det_rec(self, &rows, &cols);
                if (i + j) % 2 == 1 {
                    m = m.neg();
                }
                *out.at_mut(i, j) = m;
            }
        }
        Ok(out)
    }

    /// All `k x k` minors (determinants of square submatrices).
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if k == 0 {
            out.push(Polynomial::one(&self.ring));
            return out;
        }
        if k > self.rows || k > self.cols {
            return out;
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(det_rec(self, rs, cs));
            }
        }
        out
    }
}

fn det_rec(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one(&m.ring);
    }
    if n == 1 {
        return m.at(rows[0], cols[0]).clone();
    }
    let mut acc = Polynomial::zero(&m.ring);
    let sub_rows = &rows[1..];
    for (k, &j) in cols.iter().enumerate() {
        let e = m.at(rows[0], j);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let mut term = e.mul(&det_rec(m, sub_rows, &rest));
        if k % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

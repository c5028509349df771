//! Matrix polynomials with an explicit grade.

mod constmat;
mod ops;

use std::fmt;

use crate::algebra::{FieldSpec, MobiusMatrix, Poly, Scalar};
use crate::error::{Error, Result};

pub use constmat::ConstMatrix;
pub use ops::{mp_divide, mp_elementary, mp_leading_info, DivSide, ElementaryOp, LeadingBy, LeadingInfo};

/// An m×n matrix of polynomials, stored row-major, together with a grade
/// that bounds every entry degree from above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    grade: usize,
    entries: Vec<Poly>,
}

impl MatPoly {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        grade: usize,
        entries: Vec<Poly>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), e.field().to_string()));
        }
        let m = MatPoly {
            field,
            rows,
            cols,
            grade,
            entries,
        };
        if let Some(d) = m.degree() {
            if d > grade {
                return Err(Error::GradeBelowDegree { grade, degree: d });
            }
        }
        Ok(m)
    }

    /// Grade set to the degree (0 for the zero matrix).
    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        let mut m = MatPoly {
            field,
            rows,
            cols,
            grade: 0,
            entries,
        };
        m.grade = m.degree().unwrap_or(0);
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        Self::from_entries(field, r, c, entries)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self::from_entries(field, rows, cols, vec![Poly::zero(field); rows * cols])
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(field);
        }
        m
    }

    pub fn diag(field: FieldSpec, d: &[Poly]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(field, n, n);
        for (i, p) in d.iter().enumerate() {
            m.entries[i * n + i] = p.clone();
        }
        m.fit_grade();
        m
    }

    pub fn from_const(c: &ConstMatrix) -> Self {
        let f = c.field;
        let entries = (0..c.rows)
            .flat_map(|i| (0..c.cols).map(move |j| (i, j)))
            .map(|(i, j)| Poly::constant(f, c.get(i, j).clone()))
            .collect();
        Self::from_entries(f, c.rows, c.cols, entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn grade(&self) -> usize {
        self.grade
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Replace an entry, raising the grade if needed.
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        if let Some(d) = p.degree() {
            self.grade = self.grade.max(d);
        }
        self.entries[i * self.cols + j] = p;
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    /// Max entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Same entries viewed at another grade.
    pub fn with_grade(&self, grade: usize) -> Result<MatPoly> {
        if let Some(d) = self.degree() {
            if d > grade {
                return Err(Error::GradeBelowDegree { grade, degree: d });
            }
        }
        let mut m = self.clone();
        m.grade = grade;
        Ok(m)
    }

    /// Set the grade to the degree.
    pub fn fit_grade(&mut self) {
        self.grade = self.degree().unwrap_or(0);
    }

    pub fn fitted(mut self) -> Self {
        self.fit_grade();
        self
    }

    pub fn transpose(&self) -> MatPoly {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        MatPoly {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            grade: self.grade,
            entries,
        }
    }

    pub fn mul(&self, other: &MatPoly) -> MatPoly {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(f);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        Self::from_entries(f, self.rows, other.cols, entries)
    }

    pub fn add(&self, other: &MatPoly) -> MatPoly {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &MatPoly) -> MatPoly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> MatPoly {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = e.scale(c);
        }
        m
    }

    /// Multiply every entry by a polynomial.
    pub fn scale_poly(&self, p: &Poly) -> MatPoly {
        let entries = self.entries.iter().map(|e| e * p).collect();
        Self::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> MatPoly {
        let mut entries = Vec::with_capacity(nr * nc);
        for i in r0..r0 + nr {
            for j in c0..c0 + nc {
                entries.push(self.get(i, j).clone());
            }
        }
        Self::from_entries(self.field, nr, nc, entries)
    }

    /// Overwrite the block starting at (r0, c0); the grade grows as needed.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &MatPoly) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Minor obtained by keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> MatPoly {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self::from_entries(self.field, rows.len(), cols.len(), entries)
    }

    /// Constant coefficient matrix of λ^k.
    pub fn coefficient(&self, k: usize) -> ConstMatrix {
        let mut c = ConstMatrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                c.set(i, j, self.get(i, j).coeff(k));
            }
        }
        c
    }

    /// Determinant by fraction-free elimination (cofactors for n ≤ 3).
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let f = self.field;
        let a = |i: usize, j: usize| self.get(i, j);
        Ok(match n {
            0 => Poly::one(f),
            1 => a(0, 0).clone(),
            2 => &(a(0, 0) * a(1, 1)) - &(a(0, 1) * a(1, 0)),
            3 => {
                let m = |r1: usize, r2: usize, c1: usize, c2: usize| {
                    &(a(r1, c1) * a(r2, c2)) - &(a(r1, c2) * a(r2, c1))
                };
                let t0 = a(0, 0) * &m(1, 2, 1, 2);
                let t1 = a(0, 1) * &m(1, 2, 0, 2);
                let t2 = a(0, 2) * &m(1, 2, 0, 1);
                &(&t0 - &t1) + &t2
            }
            _ => self.bareiss(),
        })
    }

    fn bareiss(&self) -> Poly {
        let n = self.rows;
        let f = self.field;
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one(f);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return Poly::zero(f),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    pub fn is_regular(&self) -> bool {
        self.is_square() && self.determinant().map(|d| !d.is_zero()).unwrap_or(false)
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        let d = self.determinant()?;
        Ok(!d.is_zero() && d.is_constant())
    }

    /// Square with a nonsingular coefficient at λ^degree (grade ignored).
    pub fn has_nonsingular_leading(&self) -> bool {
        match self.degree() {
            Some(d) if self.is_square() => self.coefficient(d).is_nonsingular(),
            _ => self.is_square() && self.rows == 0,
        }
    }

    /// Regular, graded at its degree, with nonsingular leading coefficient.
    pub fn is_strictly_regular(&self) -> bool {
        self.degree() == Some(self.grade) && self.has_nonsingular_leading()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Block upper triangular with square diagonal blocks of the given sizes.
    pub fn is_block_upper_triangular(&self, sizes: &[usize]) -> bool {
        if sizes.iter().sum::<usize>() != self.rows || !self.is_square() {
            return false;
        }
        let mut starts = vec![0];
        for s in sizes {
            starts.push(starts.last().unwrap() + s);
        }
        for bi in 0..sizes.len() {
            for bj in 0..bi {
                for i in starts[bi]..starts[bi + 1] {
                    for j in starts[bj]..starts[bj + 1] {
                        if !self.get(i, j).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Cofactor matrix transpose.
    pub fn adjugate(&self) -> Result<MatPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let f = self.field;
        if n == 1 {
            return Ok(Self::identity(f, 1));
        }
        let mut out = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rows, &cols).determinant()?;
                let v = if (i + j) % 2 == 1 { -&minor } else { minor };
                out.entries[i * n + j] = v;
            }
        }
        out.fit_grade();
        Ok(out)
    }

    /// Inverse of a unimodular matrix: adjugate over the constant determinant.
    pub fn unimodular_inverse(&self) -> Result<MatPoly> {
        let d = self.determinant()?;
        if d.is_zero() || !d.is_constant() {
            return Err(Error::NotRegular);
        }
        let inv = self.field.inv(&d.lead())?;
        Ok(self.adjugate()?.scale(&inv))
    }

    /// Entrywise reversal at this matrix's grade.
    pub fn reverse(&self) -> MatPoly {
        let g = self.grade;
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = e.reverse(g).expect("grade bounds entry degrees");
        }
        m
    }

    /// Möbius transformation at this matrix's grade; the grade is kept.
    pub fn mobius(&self, a: &MobiusMatrix) -> Result<MatPoly> {
        a.check()?;
        let g = self.grade;
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = e.mobius(g, a)?;
        }
        Ok(m)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += m · row[src]
    pub(crate) fn add_row_multiple(&mut self, src: usize, dst: usize, m: &Poly) {
        if m.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = &(s * m) + self.get(dst, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += col[src] · m
    pub(crate) fn add_col_multiple(&mut self, src: usize, dst: usize, m: &Poly) {
        if m.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = &(s * m) + self.get(i, dst);
            self.set(i, dst, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            *self.entry_mut(i, j) = v;
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, j).scale(c);
            *self.entry_mut(i, j) = v;
        }
    }
}

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(Poly::to_text).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let c = &cells[i * self.cols + j];
                let pad = width - c.chars().count();
                write!(f, " {}{}", " ".repeat(pad), c)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

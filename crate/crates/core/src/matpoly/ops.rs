use super::{ConstMatrix, MatPoly};
use crate::algebra::{Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivSide {
    /// `A = B·Q + R`
    Left,
    /// `A = Q·B + R`
    Right,
}

/// Division by a square divisor with nonsingular leading coefficient.
/// Returns `(Q, R)` with `R` zero or of degree below `deg B`.
pub fn mp_divide(a: &MatPoly, b: &MatPoly, side: DivSide) -> Result<(MatPoly, MatPoly)> {
    if !b.is_square() {
        return Err(Error::DivisorNotStrictlyRegular);
    }
    let conforms = match side {
        DivSide::Left => b.rows() == a.rows(),
        DivSide::Right => b.cols() == a.cols(),
    };
    if !conforms {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} by {}x{} divisor",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let k = b.degree().ok_or(Error::DivisorNotStrictlyRegular)?;
    let lead_inv = b
        .coefficient(k)
        .inverse()
        .ok_or(Error::DivisorNotStrictlyRegular)?;
    let f = a.field();
    let (qr, qc) = match side {
        DivSide::Left => (b.cols(), a.cols()),
        DivSide::Right => (a.rows(), b.rows()),
    };
    let mut q = MatPoly::zeros(f, qr, qc);
    let mut r = a.clone();
    while let Some(e) = r.degree() {
        if e < k {
            break;
        }
        let re = r.coefficient(e);
        let c = match side {
            DivSide::Left => lead_inv.mul(&re),
            DivSide::Right => re.mul(&lead_inv),
        };
        let term = lift_shifted(&c, e - k);
        let prod = match side {
            DivSide::Left => b.mul(&term),
            DivSide::Right => term.mul(b),
        };
        r = r.sub(&prod);
        q = q.add(&term);
    }
    Ok((q.fitted(), r.fitted()))
}

/// `C·λ^s` as a matrix polynomial.
fn lift_shifted(c: &ConstMatrix, s: usize) -> MatPoly {
    let f = c.field;
    let entries = (0..c.rows)
        .flat_map(|i| (0..c.cols).map(move |j| (i, j)))
        .map(|(i, j)| Poly::monomial(f, c.get(i, j).clone(), s))
        .collect();
    MatPoly::from_entries(f, c.rows, c.cols, entries)
}

/// An elementary unimodular row or column operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    ScaleRow(usize, Scalar),
    ScaleCol(usize, Scalar),
    /// row[dst] += mult · row[src]
    AddRow { src: usize, dst: usize, mult: Poly },
    /// col[dst] += col[src] · mult
    AddCol { src: usize, dst: usize, mult: Poly },
}

impl ElementaryOp {
    /// The unimodular matrix `E` realizing the op (`E·P` for row ops,
    /// `P·E` for column ops) at size `n`.
    pub fn matrix(&self, field: crate::algebra::FieldSpec, n: usize) -> Result<MatPoly> {
        mp_elementary(&MatPoly::identity(field, n), self)
    }

    fn is_row(&self) -> bool {
        matches!(
            self,
            ElementaryOp::SwapRows(..) | ElementaryOp::ScaleRow(..) | ElementaryOp::AddRow { .. }
        )
    }
}

pub fn mp_elementary(p: &MatPoly, op: &ElementaryOp) -> Result<MatPoly> {
    let limit = if op.is_row() { p.rows() } else { p.cols() };
    let check = |i: usize| {
        if i < limit {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: limit })
        }
    };
    let f = p.field();
    let mut m = p.clone();
    match op {
        ElementaryOp::SwapRows(i, j) => {
            check(*i)?;
            check(*j)?;
            m.swap_rows(*i, *j);
        }
        ElementaryOp::SwapCols(i, j) => {
            check(*i)?;
            check(*j)?;
            m.swap_cols(*i, *j);
        }
        ElementaryOp::ScaleRow(i, c) => {
            check(*i)?;
            if f.is_zero(c) {
                return Err(Error::ZeroScale);
            }
            m.scale_row(*i, c);
        }
        ElementaryOp::ScaleCol(i, c) => {
            check(*i)?;
            if f.is_zero(c) {
                return Err(Error::ZeroScale);
            }
            m.scale_col(*i, c);
        }
        ElementaryOp::AddRow { src, dst, mult } => {
            check(*src)?;
            check(*dst)?;
            if src == dst {
                return Err(Error::Unsupported("adding a row to itself is not unimodular".into()));
            }
            m.add_row_multiple(*src, *dst, mult);
        }
        ElementaryOp::AddCol { src, dst, mult } => {
            check(*src)?;
            check(*dst)?;
            if src == dst {
                return Err(Error::Unsupported("adding a column to itself is not unimodular".into()));
            }
            m.add_col_multiple(*src, *dst, mult);
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingBy {
    Matrix,
    Columns,
    Rows,
}

/// Leading coefficient data. For `Matrix`, `degrees` has the single entry
/// `deg P`; otherwise one entry per column/row (`None` for a zero line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingInfo {
    pub matrix: ConstMatrix,
    pub degrees: Vec<Option<usize>>,
}

pub fn mp_leading_info(p: &MatPoly, by: LeadingBy) -> Result<LeadingInfo> {
    let d = p.degree().ok_or(Error::ZeroMatrix)?;
    let f = p.field();
    Ok(match by {
        LeadingBy::Matrix => LeadingInfo {
            matrix: p.coefficient(d),
            degrees: vec![Some(d)],
        },
        LeadingBy::Columns => {
            let mut m = ConstMatrix::zeros(f, p.rows(), p.cols());
            let mut degs = Vec::with_capacity(p.cols());
            for j in 0..p.cols() {
                let cd = (0..p.rows()).filter_map(|i| p.get(i, j).degree()).max();
                if let Some(cd) = cd {
                    for i in 0..p.rows() {
                        m.set(i, j, p.get(i, j).coeff(cd));
                    }
                }
                degs.push(cd);
            }
            LeadingInfo {
                matrix: m,
                degrees: degs,
            }
        }
        LeadingBy::Rows => {
            let t = mp_leading_info(&p.transpose(), LeadingBy::Columns)?;
            let mut m = ConstMatrix::zeros(f, p.rows(), p.cols());
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    m.set(i, j, t.matrix.get(j, i).clone());
                }
            }
            LeadingInfo {
                matrix: m,
                degrees: t.degrees,
            }
        }
    })
}

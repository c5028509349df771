use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::matpoly::{mp_leading_info, ConstMatrix, LeadingBy, MatPoly};

/// An equalized block with its transformations: `u · input · v = result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalized {
    pub result: MatPoly,
    pub u: MatPoly,
    pub v: MatPoly,
    /// Elementary reduction and balancing steps taken.
    pub steps: usize,
}

fn column_data(b: &MatPoly) -> Result<(ConstMatrix, Vec<usize>)> {
    let info = mp_leading_info(b, LeadingBy::Columns)?;
    let degs = info
        .degrees
        .iter()
        .map(|d| d.ok_or(Error::NotRegular))
        .collect::<Result<Vec<_>>>()?;
    Ok((info.matrix, degs))
}

/// A strictly regular matrix polynomial of degree exactly `d`, unimodularly
/// equivalent to the regular `b` with `deg det b = d·m`.
pub fn equalize_block_degree(b: &MatPoly, d: usize) -> Result<MatPoly> {
    Ok(equalize_with_transforms(b, d)?.result)
}

/// Column reduction followed by unit transfers of column degree.
///
/// While the leading column coefficient matrix `L` is singular, a kernel
/// vector combines columns so that the highest-degree column in its support
/// drops in degree. Once column reduced (so the column degrees add up to
/// `deg det`), a column `i` of degree `D₁ > d` and a column `j` of degree
/// `D₂ < d` are balanced: after normalizing `L` to the identity, the row
/// operation `Rᵢ += λ·Rⱼ` raises column `j` to `D₂+1` with leading vector
/// `eᵢ`, and `Cᵢ += c·λ^{D₁−D₂−1}·Cⱼ` cancels the top coefficient of column
/// `i`. The column degree sum cannot drop below `deg det`, so the result is
/// again column reduced with degrees `(D₁−1, D₂+1)`.
pub fn equalize_with_transforms(b: &MatPoly, d: usize) -> Result<Equalized> {
    if !b.is_square() {
        return Err(Error::NotSquare(b.rows(), b.cols()));
    }
    let m = b.rows();
    let f = b.field();
    let det = b.determinant()?;
    let dd = det.degree().ok_or(Error::NotRegular)?;
    if dd != d * m {
        return Err(Error::IndexSumViolation {
            sigma: dd,
            expected: d * m,
        });
    }
    let mut x = b.clone();
    let mut u = MatPoly::identity(f, m);
    let mut v = MatPoly::identity(f, m);
    if m == 0 || (x.degree() == Some(d) && x.has_nonsingular_leading()) {
        return Ok(Equalized {
            result: x.with_grade(d)?,
            u,
            v,
            steps: 0,
        });
    }
    let (_, degs0) = column_data(&x)?;
    let sum0: usize = degs0.iter().sum();
    let excess0: usize = degs0.iter().map(|&c| c.saturating_sub(d)).sum();
    let cap = 16 * m * (excess0 + (sum0 - dd) + 1);
    let mut steps = 0;
    loop {
        if steps > cap {
            return Err(Error::EqualizationFailed(steps));
        }
        let (lead, degs) = column_data(&x)?;
        if let Some(w) = lead.kernel().into_iter().next() {
            // Column reduction step.
            let j = (0..m)
                .filter(|&k| !f.is_zero(&w[k]))
                .max_by_key(|&k| (degs[k], std::cmp::Reverse(k)))
                .expect("nonzero kernel vector");
            x.scale_col(j, &w[j]);
            v.scale_col(j, &w[j]);
            for k in (0..m).filter(|&k| k != j && !f.is_zero(&w[k])) {
                let mult = Poly::monomial(f, w[k].clone(), degs[j] - degs[k]);
                x.add_col_multiple(k, j, &mult);
                v.add_col_multiple(k, j, &mult);
            }
            steps += 1;
            continue;
        }
        let hi = (0..m).max_by_key(|&k| (degs[k], std::cmp::Reverse(k))).unwrap();
        let lo = (0..m).min_by_key(|&k| (degs[k], k)).unwrap();
        if degs[hi] == d && degs[lo] == d {
            break;
        }
        let (d1, d2) = (degs[hi], degs[lo]);
        debug_assert!(d1 > d && d2 < d);
        // Normalize the leading column coefficient matrix to the identity.
        let linv = MatPoly::from_const(&lead.inverse().expect("column reduced"));
        x = linv.mul(&x);
        u = linv.mul(&u);
        let beta = x.get(lo, hi).coeff(d1 - 1);
        let xl = Poly::x(f);
        x.add_row_multiple(lo, hi, &xl);
        u.add_row_multiple(lo, hi, &xl);
        let c = f.neg(&f.add(&f.one(), &beta));
        if !f.is_zero(&c) {
            let mult = Poly::monomial(f, c, d1 - d2 - 1);
            x.add_col_multiple(lo, hi, &mult);
            v.add_col_multiple(lo, hi, &mult);
        }
        steps += 1;
    }
    let result = x.fitted();
    if result.degree() != Some(d) || !result.has_nonsingular_leading() {
        return Err(Error::EqualizationFailed(steps));
    }
    Ok(Equalized {
        result,
        u: u.fitted(),
        v: v.fitted(),
        steps,
    })
}

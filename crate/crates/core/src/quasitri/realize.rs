use crate::algebra::{FieldSpec, MobiusMatrix, Poly};
use crate::combinat::{homogeneous_partition, stack_factors};
use crate::error::{Error, Result};
use crate::matpoly::MatPoly;
use crate::smith::{extract_spectral_data, Eigen, PMSeq, SpectralData};
use crate::transfer::{drive_diagonal, permute_diagonal};

use super::blocks::{reduce_offdiagonal, BlockStructure};
use super::equalize::equalize_with_transforms;

/// Facts recomputed from the output matrix alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Complete spectral data of the output.
    pub data: SpectralData,
    pub degree: Option<usize>,
    pub grade: usize,
    pub strictly_regular: bool,
    /// Block upper triangular with respect to the reported blocks.
    pub block_triangular: bool,
    pub max_block: usize,
    /// Every off-diagonal block has degree below `offdiag_bound` (or is zero).
    pub offdiag_below: bool,
    pub offdiag_bound: usize,
    /// Output data equals the requested data.
    pub matches_request: bool,
}

impl Certificate {
    pub fn compute(q: &MatPoly, blocks: &BlockStructure, requested: &SpectralData, bound: usize) -> Result<Self> {
        let hints: Vec<Poly> = requested.finite.keys().cloned().collect();
        let data = extract_spectral_data(q, &hints, 0)?;
        let off = blocks.offsets();
        let nb = blocks.sizes.len();
        let block_triangular = q.is_block_upper_triangular(&blocks.sizes);
        let mut offdiag_below = true;
        for i in 0..nb {
            for j in i + 1..nb {
                let b = q.submatrix(off[i], off[j], blocks.sizes[i], blocks.sizes[j]);
                if b.degree().is_some_and(|dg| dg >= bound) {
                    offdiag_below = false;
                }
            }
        }
        Ok(Certificate {
            matches_request: data.same_structure(requested),
            data,
            degree: q.degree(),
            grade: q.grade(),
            strictly_regular: q.is_strictly_regular(),
            block_triangular,
            max_block: blocks.max_size(),
            offdiag_below,
            offdiag_bound: bound,
        })
    }
}

/// A quasi-triangular realization together with its recomputed certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTriResult {
    pub q: MatPoly,
    pub blocks: BlockStructure,
    pub certificate: Certificate,
}

fn certificate_failure(what: &str) -> Error {
    Error::HypothesisViolated(format!("certificate check failed: {what}"))
}

/// Irreducible factors (with multiplicity) recorded in the PM table.
fn factor_multiset(data: &SpectralData) -> Vec<Poly> {
    let mut out = Vec::new();
    for (chi, pm) in &data.finite {
        for _ in 0..pm.iter().sum::<usize>() {
            out.push(chi.clone());
        }
    }
    out
}

/// Replace the diagonal block at `off` of size `m` by `u·B·v`, carrying the
/// transformations through the rest of the block row and column.
fn embed_block(t: &mut MatPoly, off: usize, m: usize, u: &MatPoly, result: &MatPoly, v: &MatPoly) {
    let n = t.rows();
    if off + m < n {
        let right = t.submatrix(off, off + m, m, n - off - m);
        t.set_block(off, off + m, &u.mul(&right));
    }
    if off > 0 {
        let above = t.submatrix(0, off, off, m);
        t.set_block(0, off, &above.mul(v));
    }
    t.set_block(off, off, result);
}

/// Strictly regular, degree-`d`, `k`-quasi-triangular realization of finite
/// spectral data (no structure at ∞).
///
/// Smith form → stacking of the irreducible factors → transfers onto the
/// stacked diagonal → homogeneous partition of the diagonal degrees →
/// rearrangement → degree equalization of each diagonal block →
/// off-diagonal reduction.
pub fn realize_strictly_regular(data: &SpectralData, d: usize, n: usize) -> Result<QuasiTriResult> {
    if data.infinite.iter().any(|&a| a > 0) {
        return Err(Error::HypothesisViolated(
            "data has structure at infinity; use the infinite realization".into(),
        ));
    }
    if d == 0 {
        return Err(Error::HypothesisViolated("degree must be positive".into()));
    }
    let request = data.resized(n, d)?;
    request.validate()?;
    request.check_index_sum()?;
    let f = request.field;
    let invariants = request.invariant_list();
    let s = MatPoly::diag(f, &invariants);
    let k = request.k().max(1);
    let layout = stack_factors(f, &factor_multiset(&request), n);
    let t = drive_diagonal(&s, &layout)?;
    let degs: Vec<i64> = (0..n).map(|i| t.get(i, i).degree_or_zero() as i64).collect();
    let part = homogeneous_partition(&degs, k, d as i64)?;
    let mut t = permute_diagonal(&t, &part.permutation())?;
    let blocks = BlockStructure::new(part.sizes());
    let off = blocks.offsets();
    for (b, &m) in blocks.sizes.iter().enumerate() {
        let block = t.submatrix(off[b], off[b], m, m);
        let eq = equalize_with_transforms(&block, d)?;
        embed_block(&mut t, off[b], m, &eq.u, &eq.result, &eq.v);
    }
    let q = reduce_offdiagonal(&t.fitted(), &blocks)?.fitted();
    let q = q.with_grade(d)?;
    let certificate = Certificate::compute(&q, &blocks, &request, d)?;
    let ok = certificate.matches_request
        && certificate.strictly_regular
        && certificate.degree == Some(d)
        && certificate.block_triangular
        && certificate.max_block <= k
        && certificate.offdiag_below;
    if !ok {
        return Err(certificate_failure("strictly regular realization"));
    }
    Ok(QuasiTriResult { q, blocks, certificate })
}

/// The Möbius matrix moving ∞ to a finite non-eigenvalue ω: `[[ω,0],[1,−ω]]`,
/// or the reversal when ω = 0.
fn shift_matrix(field: FieldSpec, omega: &crate::algebra::Scalar) -> Result<MobiusMatrix> {
    if field.is_zero(omega) {
        Ok(MobiusMatrix::reversal(field))
    } else {
        MobiusMatrix::new(field, omega.clone(), field.zero(), field.one(), field.neg(omega))
    }
}

/// Apply `MT_A` to every eigenvalue of the data.
fn map_data(data: &SpectralData, a: &MobiusMatrix) -> Result<SpectralData> {
    let mut out = data.clone();
    out.finite.clear();
    out.infinite = vec![0; data.n];
    out.invariants = None;
    let mut put = |e: Eigen, pm: &PMSeq| -> Result<()> {
        match e.mobius(a)? {
            Eigen::Infinity => out.infinite = pm.clone(),
            Eigen::Finite(p) => {
                out.finite.insert(p, pm.clone());
            }
        }
        Ok(())
    };
    for (chi, pm) in &data.finite {
        put(Eigen::Finite(chi.clone()), pm)?;
    }
    if data.infinite.iter().any(|&x| x > 0) {
        put(Eigen::Infinity, &data.infinite)?;
    }
    Ok(out)
}

/// Grade-`g` realization of complete spectral data including ∞.
///
/// Picks the first field element ω (in enumeration order) that is not a
/// root of the last invariant polynomial, moves ∞ to ω with a Möbius
/// transformation, realizes the shifted data strictly regularly at degree
/// `g`, and transforms back. The degree of the result is `g` exactly when
/// `n` exceeds the number of nonzero partial multiplicities at ∞.
pub fn realize_with_infinity(data: &SpectralData, g: usize, n: usize) -> Result<QuasiTriResult> {
    let request = data.resized(n, g)?;
    if request.infinite.iter().all(|&a| a == 0) {
        return realize_strictly_regular(&request, g, n);
    }
    request.validate()?;
    request.check_index_sum()?;
    let ell = request.infinite.iter().filter(|&&a| a > 0).count();
    let m = request.nontrivial_count();
    if n < m.max(ell) {
        return Err(Error::TooSmall { n, m: m.max(ell) });
    }
    let f = request.field;
    let last = request.invariant_list().pop().unwrap_or_else(|| Poly::one(f));
    // Over ℚ at most deg(s_m)+1 candidates are needed.
    let budget = last.degree_or_zero() + 1;
    let omega = f
        .elements()
        .take(if f.is_prime_field() { usize::MAX } else { budget })
        .find(|w| !f.is_zero(&last.eval(w)))
        .ok_or(Error::FieldExhausted)?;
    let a = shift_matrix(f, &omega)?;
    let shifted = map_data(&request, &a)?;
    let inner = realize_strictly_regular(&shifted, g, n)?;
    let q = inner.q.mobius(&a.inverse()?)?;
    let bound = g;
    let certificate = Certificate::compute(&q, &inner.blocks, &request, bound)?;
    let expect_degree = if n > ell { Some(g) } else { certificate.degree.filter(|&dg| dg < g) };
    let ok = certificate.matches_request
        && certificate.block_triangular
        && certificate.grade == g
        && certificate.degree == expect_degree;
    if !ok {
        return Err(certificate_failure("realization with infinite structure"));
    }
    Ok(QuasiTriResult {
        q,
        blocks: inner.blocks,
        certificate,
    })
}

/// Same entries, another grade.
pub fn grade_shift_view(p: &MatPoly, new_grade: usize) -> Result<MatPoly> {
    p.with_grade(new_grade)
}

/// A quasi-triangular matrix polynomial with the same size, grade, degree
/// and complete spectral data as `p`.
pub fn quasi_triangularize(p: &MatPoly) -> Result<QuasiTriResult> {
    quasi_triangularize_with(p, &[], 0)
}

/// As [`quasi_triangularize`], with irreducible hints (needed over ℚ) and a
/// factorization seed.
pub fn quasi_triangularize_with(p: &MatPoly, hints: &[Poly], seed: u64) -> Result<QuasiTriResult> {
    if !p.is_regular() {
        return Err(Error::NotRegular);
    }
    let n = p.rows();
    let g = p.grade();
    let full = extract_spectral_data(p, hints, seed)?;
    let d = p.degree().unwrap_or(0);
    if n == 1 || d == 0 {
        // A 1×1 or constant input is already (quasi-)triangular.
        let blocks = BlockStructure::scalar(n);
        let certificate = Certificate::compute(p, &blocks, &full, d.max(1))?;
        return Ok(QuasiTriResult {
            q: p.clone(),
            blocks,
            certificate,
        });
    }
    // View at grade d: PM at ∞ drops by g − d in every component.
    let at_d = grade_shift_view(p, d)?;
    let data_d = extract_spectral_data(&at_d, hints, seed)?;
    let inner = if at_d.is_strictly_regular() {
        realize_strictly_regular(&data_d, d, n)?
    } else {
        realize_with_infinity(&data_d, d, n)?
    };
    let q = grade_shift_view(&inner.q, g)?;
    let certificate = Certificate::compute(&q, &inner.blocks, &full, d)?;
    let ok = certificate.matches_request && certificate.degree == Some(d) && certificate.grade == g;
    if !ok {
        return Err(certificate_failure("quasi-triangularization"));
    }
    Ok(QuasiTriResult {
        q,
        blocks: inner.blocks,
        certificate,
    })
}

//! Unimodular transfers of irreducible factors between diagonal entries of
//! upper triangular matrix polynomials.
//!
//! The basic move acts on a 2×2 upper triangular `T = [[p, q], [0, r]]`.
//! With `g = gcd(p, q, r)` and `p = g·p̂`, `r = g·r̂`, any regrouping
//! `a·b = p̂_F·r̂_F` of the factors from a family `F` gives the equivalent
//! matrix `[[g·a·p̂_G, g], [0, g·b·r̂_G]]`: both have `g` as the gcd of their
//! entries and the same determinant, hence the same Smith form. The
//! transformations are made explicit from the two Smith decompositions.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{FieldSpec, Poly};
use crate::combinat::{realize_majorization, NatVec, StackingLayout, VecOp};
use crate::error::{Error, Result};
use crate::matpoly::MatPoly;
use crate::quasitri::{reduce_offdiagonal, BlockStructure};
use crate::smith::{multiplicity, smith_form};

/// A family `F` of monic irreducibles; its complement `G` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoprimePartition {
    family: BTreeSet<Poly>,
}

impl CoprimePartition {
    pub fn new<I: IntoIterator<Item = Poly>>(members: I) -> Self {
        CoprimePartition {
            family: members
                .into_iter()
                .filter(|p| !p.is_constant())
                .map(|p| p.monic())
                .collect(),
        }
    }

    pub fn members(&self) -> impl Iterator<Item = &Poly> {
        self.family.iter()
    }

    pub fn contains(&self, chi: &Poly) -> bool {
        self.family.contains(&chi.monic())
    }

    /// `|p|_F`: number of F-irreducible factors of `p`, with multiplicity.
    pub fn count(&self, p: &Poly) -> usize {
        if p.is_zero() {
            return 0;
        }
        self.family.iter().map(|chi| multiplicity(p, chi)).sum()
    }

    /// The F-factors of `p` in ascending order, repeated by multiplicity.
    pub fn factors_of(&self, p: &Poly) -> Vec<Poly> {
        let mut out = Vec::new();
        for chi in &self.family {
            for _ in 0..multiplicity(p, chi) {
                out.push(chi.clone());
            }
        }
        out
    }

    /// `(p_F, p_G)` with `p_F` monic and `p = p_F·p_G`.
    pub fn split(&self, p: &Poly) -> (Poly, Poly) {
        let f = p.field();
        let pf = self
            .factors_of(p)
            .iter()
            .fold(Poly::one(f), |acc, chi| &acc * chi);
        let pg = p.div_exact(&pf);
        (pf, pg)
    }
}

/// Factor-counting vector `d_F(T)` of the diagonal of `t`.
pub fn factor_counts(t: &MatPoly, family: &CoprimePartition) -> NatVec {
    (0..t.rows().min(t.cols()))
        .map(|i| family.count(t.get(i, i)))
        .collect()
}

fn product(field: FieldSpec, ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::one(field), |acc, p| &acc * p)
}

fn check_2x2(t: &MatPoly) -> Result<()> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "transfer needs a 2x2 block, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if !t.get(1, 0).is_zero() {
        return Err(Error::NotTriangular);
    }
    if t.get(0, 0).is_zero() || t.get(1, 1).is_zero() {
        return Err(Error::NotRegular);
    }
    Ok(())
}

/// `(E, Fm)` with `E·t·Fm = target`, from the Smith decompositions of both.
fn connect(t: &MatPoly, target: &MatPoly) -> Result<(MatPoly, MatPoly)> {
    let a = smith_form(t);
    let b = smith_form(target);
    if a.s != b.s {
        return Err(Error::HypothesisViolated(
            "transfer target is not unimodularly equivalent".into(),
        ));
    }
    let e = b.u.unimodular_inverse()?.mul(&a.u).fitted();
    let fm = a.v.mul(&b.v.unimodular_inverse()?).fitted();
    Ok((e, fm))
}

/// gcd of the three entries of an upper triangular 2×2 block.
fn entry_gcd(t: &MatPoly) -> Poly {
    t.get(0, 0).gcd(t.get(0, 1)).gcd(t.get(1, 1))
}

/// Move F-factors within a 2×2 upper triangular block so that the diagonal
/// F-counts become `(alpha, beta)`. Returns `(T̃, E, Fm)` with `E·T·Fm = T̃`.
pub fn transfer_2x2(
    t: &MatPoly,
    family: &CoprimePartition,
    alpha: usize,
    beta: usize,
) -> Result<(MatPoly, MatPoly, MatPoly)> {
    check_2x2(t)?;
    let f = t.field();
    let (p, r) = (t.get(0, 0), t.get(1, 1));
    let (m, n) = (family.count(p), family.count(r));
    let (lo, hi) = (m.min(n), m.max(n));
    if alpha + beta != m + n || alpha < lo || alpha > hi || beta < lo || beta > hi {
        return Err(Error::TargetOutOfRange { alpha, beta, lo, hi });
    }
    if (alpha, beta) == (m, n) {
        return Ok((t.clone(), MatPoly::identity(f, 2), MatPoly::identity(f, 2)));
    }
    let g = entry_gcd(t);
    let p_hat = p.div_exact(&g);
    let r_hat = r.div_exact(&g);
    let (pf, pg) = family.split(&p_hat);
    let (rf, rg) = family.split(&r_hat);
    let mut pool = family.factors_of(&pf);
    pool.extend(family.factors_of(&rf));
    pool.sort();
    let take = alpha - family.count(&g);
    let a = product(f, &pool[..take]);
    let b = product(f, &pool[take..]);
    let target = MatPoly::from_rows(
        f,
        vec![
            vec![&(&g * &a) * &pg, g.clone()],
            vec![Poly::zero(f), &(&g * &b) * &rg],
        ],
    );
    let (e, fm) = connect(t, &target)?;
    Ok((target, e, fm))
}

/// Exchange the two diagonal entries of a 2×2 upper triangular block exactly.
pub fn swap_2x2(t: &MatPoly) -> Result<(MatPoly, MatPoly, MatPoly)> {
    check_2x2(t)?;
    let f = t.field();
    let g = entry_gcd(t);
    let (p, r) = (t.get(0, 0), t.get(1, 1));
    let target = MatPoly::from_rows(
        f,
        vec![vec![r.clone(), g.clone()], vec![Poly::zero(f), p.clone()]],
    );
    if &target == t {
        return Ok((t.clone(), MatPoly::identity(f, 2), MatPoly::identity(f, 2)));
    }
    let (e, fm) = connect(t, &target)?;
    Ok((target, e, fm))
}

fn check_square_triangular(p: &MatPoly, i: usize) -> Result<()> {
    if !p.is_square() {
        return Err(Error::NotSquare(p.rows(), p.cols()));
    }
    if i + 1 >= p.rows() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            size: p.rows(),
        });
    }
    if !p.is_upper_triangular() {
        return Err(Error::NotTriangular);
    }
    Ok(())
}

/// Apply `diag(I, E, I)·P·diag(I, Fm, I)` with the 2×2 blocks at `(i, i+1)`.
fn embed(p: &MatPoly, i: usize, block: &MatPoly, e: &MatPoly, fm: &MatPoly) -> MatPoly {
    let n = p.rows();
    let mut out = p.clone();
    // rows i, i+1 to the right of the block
    if i + 2 < n {
        let right = p.submatrix(i, i + 2, 2, n - i - 2);
        out.set_block(i, i + 2, &e.mul(&right));
    }
    // columns i, i+1 above the block
    if i > 0 {
        let above = p.submatrix(0, i, i, 2);
        out.set_block(0, i, &above.mul(fm));
    }
    out.set_block(i, i, block);
    out.fitted()
}

/// Transfer on the 2×2 principal block at positions `(i, i+1)` of an n×n
/// upper triangular matrix; the transformations act on the whole matrix.
pub fn embed_transfer(
    p: &MatPoly,
    i: usize,
    family: &CoprimePartition,
    alpha: usize,
    beta: usize,
) -> Result<MatPoly> {
    check_square_triangular(p, i)?;
    let block = p.submatrix(i, i, 2, 2);
    let (tt, e, fm) = transfer_2x2(&block, family, alpha, beta)?;
    if tt == block {
        return Ok(p.clone());
    }
    Ok(embed(p, i, &tt, &e, &fm))
}

/// Exchange the diagonal entries at `(i, i+1)` of an n×n upper triangular matrix.
pub fn embed_swap(p: &MatPoly, i: usize) -> Result<MatPoly> {
    check_square_triangular(p, i)?;
    let block = p.submatrix(i, i, 2, 2);
    let (tt, e, fm) = swap_2x2(&block)?;
    if tt == block {
        return Ok(p.clone());
    }
    Ok(embed(p, i, &tt, &e, &fm))
}

/// Replay a count-vector script on the diagonal of `t` for one family.
/// Off-diagonal entries are reduced after every step to keep degrees small.
pub fn apply_script(t: &MatPoly, family: &CoprimePartition, ops: &[VecOp]) -> Result<MatPoly> {
    let n = t.rows();
    let mut cur = t.clone();
    for op in ops {
        let counts = factor_counts(&cur, family);
        let i = op.position();
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, size: n });
        }
        let (alpha, beta) = match *op {
            VecOp::Interchange { .. } => (counts[i + 1], counts[i]),
            VecOp::Compression { alpha, beta, .. } => (alpha, beta),
        };
        cur = embed_transfer(&cur, i, family, alpha, beta)?;
        cur = reduce_offdiagonal(&cur, &BlockStructure::scalar(n))?.fitted();
    }
    Ok(cur)
}

/// Degree families of a layout: the distinct factors of each degree.
pub fn layout_families(layout: &StackingLayout) -> BTreeMap<usize, CoprimePartition> {
    let mut fam: BTreeMap<usize, Vec<Poly>> = BTreeMap::new();
    for col in &layout.columns {
        for p in col {
            if let Some(d) = p.degree().filter(|&d| d > 0) {
                fam.entry(d).or_default().push(p.clone());
            }
        }
    }
    fam.into_iter()
        .map(|(d, ps)| (d, CoprimePartition::new(ps)))
        .collect()
}

/// Spread the factors of a (Smith form) diagonal matrix so that, for every
/// degree family, the diagonal factor counts equal the layout's counts.
///
/// Families are handled in descending degree; each one replays a
/// majorization script through embedded transfers, which never disturb the
/// other families.
pub fn drive_diagonal(s: &MatPoly, layout: &StackingLayout) -> Result<MatPoly> {
    if !s.is_square() {
        return Err(Error::NotSquare(s.rows(), s.cols()));
    }
    let n = s.rows();
    if layout.n() != n {
        return Err(Error::LayoutMismatch(format!(
            "layout has {} columns for a {n}x{n} matrix",
            layout.n()
        )));
    }
    if !s.is_upper_triangular() {
        return Err(Error::NotTriangular);
    }
    let f = s.field();
    let diag_prod = product(f, &(0..n).map(|i| s.get(i, i).clone()).collect::<Vec<_>>());
    if diag_prod.is_zero() {
        return Err(Error::NotRegular);
    }
    let layout_prod = product(f, &layout.products());
    if diag_prod.monic() != layout_prod.monic() {
        return Err(Error::LayoutMismatch(
            "layout factors do not multiply to the diagonal product".into(),
        ));
    }
    let families = layout_families(layout);
    let mut cur = s.clone();
    for (&d, fam) in families.iter().rev() {
        let have = factor_counts(&cur, fam);
        let want = layout.counts(d);
        let ops = realize_majorization(&have, &want).map_err(|_| {
            Error::LayoutMismatch(format!(
                "degree-{d} counts {have:?} cannot be moved to {want:?}"
            ))
        })?;
        cur = apply_script(&cur, fam, &ops)?;
    }
    Ok(cur)
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::BadPermutation(n));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::BadPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Rearrange the diagonal so that position `t` receives the entry that was at
/// `perm[t]`, by adjacent exact swaps.
pub fn permute_diagonal(t: &MatPoly, perm: &[usize]) -> Result<MatPoly> {
    if !t.is_square() {
        return Err(Error::NotSquare(t.rows(), t.cols()));
    }
    let n = t.rows();
    check_permutation(perm, n)?;
    if !t.is_upper_triangular() {
        return Err(Error::NotTriangular);
    }
    // order[pos] = original index currently at pos
    let mut order: Vec<usize> = (0..n).collect();
    let mut cur = t.clone();
    for (target, &want) in perm.iter().enumerate() {
        let from = order.iter().position(|&o| o == want).unwrap();
        for i in (target..from).rev() {
            cur = embed_swap(&cur, i)?;
            cur = reduce_offdiagonal(&cur, &BlockStructure::scalar(n))?.fitted();
            order.swap(i, i + 1);
        }
    }
    Ok(cur)
}

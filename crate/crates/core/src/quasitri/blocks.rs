use crate::error::{Error, Result};
use crate::matpoly::{mp_divide, DivSide, MatPoly};

/// Sizes of the square diagonal blocks of a block upper triangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub sizes: Vec<usize>,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Self {
        BlockStructure { sizes }
    }

    /// All blocks 1×1.
    pub fn scalar(n: usize) -> Self {
        BlockStructure { sizes: vec![1; n] }
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Starting offset of each block, plus the total at the end.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        out.push(0);
        for s in &self.sizes {
            acc += s;
            out.push(acc);
        }
        out
    }
}

/// Reduce every off-diagonal block below the degree of the smaller of its
/// two diagonal blocks, without touching the diagonal blocks.
///
/// Block diagonals are swept in order `ℓ = 1, 2, …`. For block `(i, j)`:
/// if `deg Tᵢᵢ ≤ deg Tⱼⱼ`, write `Tᵢⱼ = Tᵢᵢ·X + R` and subtract block column
/// `i`·X from block column `j`; otherwise write `Tᵢⱼ = X·Tⱼⱼ + R` and
/// subtract X·(block row `j`) from block row `i`. Either way the collateral
/// damage lands only on blocks further from the diagonal.
pub fn reduce_offdiagonal(t: &MatPoly, blocks: &BlockStructure) -> Result<MatPoly> {
    if !t.is_square() {
        return Err(Error::NotSquare(t.rows(), t.cols()));
    }
    if blocks.total() != t.rows() || blocks.sizes.contains(&0) {
        return Err(Error::ShapeMismatch(format!(
            "blocks {:?} do not partition size {}",
            blocks.sizes,
            t.rows()
        )));
    }
    if !t.is_block_upper_triangular(&blocks.sizes) {
        return Err(Error::NotTriangular);
    }
    let off = blocks.offsets();
    let nb = blocks.sizes.len();
    let block = |m: &MatPoly, i: usize, j: usize| m.submatrix(off[i], off[j], blocks.sizes[i], blocks.sizes[j]);
    let diag: Vec<MatPoly> = (0..nb).map(|i| block(t, i, i)).collect();
    for (i, d) in diag.iter().enumerate() {
        if !d.has_nonsingular_leading() {
            return Err(Error::DiagonalBlockNotStrictlyRegular(i));
        }
    }
    let mut out = t.clone();
    let n = t.rows();
    for l in 1..nb {
        for i in 0..nb - l {
            let j = i + l;
            let tij = block(&out, i, j);
            if tij.is_zero() {
                continue;
            }
            let (di, dj) = (diag[i].degree().unwrap_or(0), diag[j].degree().unwrap_or(0));
            if di <= dj {
                let (x, _) = mp_divide(&tij, &diag[i], DivSide::Left)?;
                if x.is_zero() {
                    continue;
                }
                // block column j −= block column i · X (rows above and at block i)
                let col_i = out.submatrix(0, off[i], off[i + 1], blocks.sizes[i]);
                let upd = out
                    .submatrix(0, off[j], off[i + 1], blocks.sizes[j])
                    .sub(&col_i.mul(&x));
                out.set_block(0, off[j], &upd);
            } else {
                let (x, _) = mp_divide(&tij, &diag[j], DivSide::Right)?;
                if x.is_zero() {
                    continue;
                }
                // block row i −= X · block row j (columns at and right of block j)
                let w = n - off[j];
                let row_j = out.submatrix(off[j], off[j], blocks.sizes[j], w);
                let upd = out
                    .submatrix(off[i], off[j], blocks.sizes[i], w)
                    .sub(&x.mul(&row_j));
                out.set_block(off[i], off[j], &upd);
            }
        }
    }
    let g = t.grade().max(out.degree().unwrap_or(0));
    out.with_grade(g)
}

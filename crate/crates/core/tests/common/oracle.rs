//! Exhaustive search for triangular diagonals.
//!
//! An upper triangular matrix polynomial with a prescribed diagonal and
//! Smith form exists iff, for every irreducible χ, the χ-exponents along the
//! diagonal are majorized by the χ-exponents of the invariant polynomials.
//! The search enumerates every such exponent distribution and asks whether
//! some combination gives every diagonal entry degree exactly `d`.

use polyqt::combinat::majorizes;
use polyqt::smith::SpectralData;

/// All natural vectors of length `n` with the given sum that `alpha` majorizes.
pub fn majorized_vectors(alpha: &[usize]) -> Vec<Vec<usize>> {
    let n = alpha.len();
    let total: usize = alpha.iter().sum();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, alpha: &[usize], out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            if majorizes(alpha, cur).unwrap() {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, alpha, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(0, total, &mut cur, alpha, &mut out);
    out
}

/// Some exponent arrangement per irreducible yielding all diagonal degrees = d.
pub fn find_triangular_diagonal(data: &SpectralData, d: usize) -> Option<Vec<Vec<usize>>> {
    let fams: Vec<(usize, Vec<Vec<usize>>)> = data
        .pruned()
        .finite
        .iter()
        .map(|(chi, pm)| (chi.degree().unwrap(), majorized_vectors(pm)))
        .collect();
    let n = data.n;
    fn rec(
        k: usize,
        fams: &[(usize, Vec<Vec<usize>>)],
        load: &mut Vec<usize>,
        pick: &mut Vec<Vec<usize>>,
        d: usize,
    ) -> bool {
        if k == fams.len() {
            return load.iter().all(|&l| l == d);
        }
        let (deg, options) = &fams[k];
        for e in options {
            if load.iter().zip(e).any(|(l, x)| l + deg * x > d) {
                continue;
            }
            for (l, x) in load.iter_mut().zip(e) {
                *l += deg * x;
            }
            pick.push(e.clone());
            if rec(k + 1, fams, load, pick, d) {
                return true;
            }
            pick.pop();
            for (l, x) in load.iter_mut().zip(e) {
                *l -= deg * x;
            }
        }
        false
    }
    let mut load = vec![0; n];
    let mut pick = Vec::new();
    rec(0, &fams, &mut load, &mut pick, d).then_some(pick)
}

//! Interchanges, compressions, homogenization and majorization of natural vectors.

use crate::error::{Error, Result};

pub type NatVec = Vec<usize>;

/// An adjacent move on a natural vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VecOp {
    /// Swap entries `i` and `i+1`.
    Interchange { i: usize },
    /// Replace `(v[i], v[i+1])` by `(alpha, beta)`: same sum, strictly closer.
    Compression { i: usize, alpha: usize, beta: usize },
}

impl VecOp {
    pub fn position(&self) -> usize {
        match self {
            VecOp::Interchange { i } | VecOp::Compression { i, .. } => *i,
        }
    }

    pub fn is_compression(&self) -> bool {
        matches!(self, VecOp::Compression { .. })
    }

    /// Apply in place, rejecting illegal moves.
    pub fn apply(&self, v: &mut [usize]) -> Result<()> {
        let i = self.position();
        if i + 1 >= v.len() {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                size: v.len(),
            });
        }
        match *self {
            VecOp::Interchange { .. } => v.swap(i, i + 1),
            VecOp::Compression { alpha, beta, .. } => {
                let (a, b) = (v[i], v[i + 1]);
                let (lo, hi) = (a.min(b), a.max(b));
                let legal = alpha + beta == a + b && lo < alpha && alpha < hi && lo < beta && beta < hi;
                if !legal {
                    return Err(Error::HypothesisViolated(format!(
                        "illegal compression ({a},{b}) -> ({alpha},{beta}) at {i}"
                    )));
                }
                v[i] = alpha;
                v[i + 1] = beta;
            }
        }
        Ok(())
    }
}

/// Replay a script, checking each step.
pub fn replay(v: &[usize], ops: &[VecOp]) -> Result<NatVec> {
    let mut w = v.to_vec();
    for op in ops {
        op.apply(&mut w)?;
    }
    Ok(w)
}

/// `x ⪰ y`: sorted-decreasing prefix sums of `x` dominate those of `y`,
/// with equal totals.
pub fn majorizes(x: &[usize], y: &[usize]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    ys.sort_unstable_by(|a, b| b.cmp(a));
    let (mut px, mut py) = (0usize, 0usize);
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        if px < py {
            return Ok(false);
        }
    }
    Ok(px == py)
}

/// Signed variant used when the second vector may have negative entries.
pub fn majorizes_signed(x: &[i64], y: &[i64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    ys.sort_unstable_by(|a, b| b.cmp(a));
    let (mut px, mut py) = (0i64, 0i64);
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        if px < py {
            return Ok(false);
        }
    }
    Ok(px == py)
}

/// Move the entry at `from` to `to` by adjacent interchanges.
fn bubble(v: &mut [usize], from: usize, to: usize, ops: &mut Vec<VecOp>) {
    if from < to {
        for i in from..to {
            v.swap(i, i + 1);
            ops.push(VecOp::Interchange { i });
        }
    } else {
        for i in (to..from).rev() {
            v.swap(i, i + 1);
            ops.push(VecOp::Interchange { i });
        }
    }
}

/// Homogenize `v` (sum `qr + t`) into `t` copies of `q+1` and `r−t` of `q`
/// using at most `r−1` compressions. Returns the reached vector and the script.
pub fn homogenize_vector(v: &[usize]) -> (NatVec, Vec<VecOp>) {
    let r = v.len();
    let mut w = v.to_vec();
    let mut ops = Vec::new();
    if r == 0 {
        return (w, ops);
    }
    let total: usize = w.iter().sum();
    let q = total / r;
    let mut need_hi = total % r;
    let mut need_lo = r - need_hi;
    // Active region is w[..len]; finished entries are parked at the end.
    let mut len = r;
    while len > 0 {
        let wanted = |x: usize, hi: usize, lo: usize| (x == q + 1 && hi > 0) || (x == q && lo > 0);
        if let Some(p) = (0..len).find(|&i| wanted(w[i], need_hi, need_lo)) {
            if w[p] == q + 1 && need_hi > 0 {
                need_hi -= 1;
            } else {
                need_lo -= 1;
            }
            bubble(&mut w, p, len - 1, &mut ops);
            len -= 1;
            continue;
        }
        // Compress a large entry against a small one to produce a wanted value.
        let target = if need_hi > 0 { q + 1 } else { q };
        let big = (0..len).find(|&i| w[i] > target).expect("large entry exists");
        let small = (0..len).find(|&i| w[i] < target).expect("small entry exists");
        let (a, b) = (w[big], w[small]);
        // Bring the small entry next to the big one, then split so that the
        // wanted value lands in the right-hand slot.
        let i = if small < big {
            bubble(&mut w, small, big - 1, &mut ops);
            big - 1
        } else {
            bubble(&mut w, small, big + 1, &mut ops);
            big
        };
        let op = VecOp::Compression {
            i,
            alpha: a + b - target,
            beta: target,
        };
        op.apply(&mut w).expect("legal compression");
        ops.push(op);
        bubble(&mut w, i + 1, len - 1, &mut ops);
        if target == q + 1 {
            need_hi -= 1;
        } else {
            need_lo -= 1;
        }
        len -= 1;
    }
    (w, ops)
}

/// A script turning `x` into `y` exactly (in `y`'s order), assuming `x ⪰ y`.
///
/// Unit transfers go between the largest sorted index where `x` exceeds `y`
/// and the next index where it falls short; each transfer is an adjacent
/// compression between interchange chains. A final run of interchanges
/// fixes the order.
pub fn realize_majorization(x: &[usize], y: &[usize]) -> Result<Vec<VecOp>> {
    if !majorizes(x, y)? {
        return Err(Error::NotMajorized);
    }
    let mut cur = x.to_vec();
    let mut ops = Vec::new();
    let mut ys = y.to_vec();
    ys.sort_unstable_by(|a, b| b.cmp(a));
    loop {
        let mut cs = cur.clone();
        cs.sort_unstable_by(|a, b| b.cmp(a));
        let Some(j) = (0..cs.len()).rev().find(|&i| cs[i] > ys[i]) else {
            break;
        };
        let k = (j + 1..cs.len())
            .find(|&i| cs[i] < ys[i])
            .expect("majorization leaves a deficient index");
        let (a, b) = (cs[j], cs[k]);
        let pd = cur.iter().position(|&v| v == a).unwrap();
        let pr = cur.iter().position(|&v| v == b).unwrap();
        let mut local = Vec::new();
        if pd < pr {
            bubble(&mut cur, pd, pr - 1, &mut local);
            let op = VecOp::Compression {
                i: pr - 1,
                alpha: a - 1,
                beta: b + 1,
            };
            op.apply(&mut cur)?;
            ops.extend(local.iter().cloned());
            ops.push(op);
            for u in local.iter().rev() {
                u.apply(&mut cur)?;
                ops.push(u.clone());
            }
        } else {
            bubble(&mut cur, pd, pr + 1, &mut local);
            let op = VecOp::Compression {
                i: pr,
                alpha: b + 1,
                beta: a - 1,
            };
            op.apply(&mut cur)?;
            ops.extend(local.iter().cloned());
            ops.push(op);
            for u in local.iter().rev() {
                u.apply(&mut cur)?;
                ops.push(u.clone());
            }
        }
    }
    // Same multiset now; reorder to match y.
    for (i, &want) in y.iter().enumerate() {
        let p = (i..cur.len()).find(|&t| cur[t] == want).expect("equal multisets");
        bubble(&mut cur, p, i, &mut ops);
    }
    Ok(ops)
}

/// `(b/d, a/d)` with `d = gcd(a, b)`: generator of the solutions of `a·x = b·y`.
pub fn solve_dio(a: u64, b: u64) -> (u64, u64) {
    let d = num_integer::gcd(a, b);
    (b / d, a / d)
}

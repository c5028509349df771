use std::collections::HashMap;

use super::vecops::solve_dio;
use crate::error::{Error, Result};

/// Groups of positions whose entries average exactly `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    /// Each group lists original positions in increasing order; groups are
    /// ordered by their first position.
    pub groups: Vec<Vec<usize>>,
}

impl Partitioning {
    /// Concatenation of the groups: `perm[t]` is the original position placed at `t`.
    pub fn permutation(&self) -> Vec<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }
}

/// Split `v` into groups of size ≤ `k`, each averaging exactly `mu`.
///
/// All entries must lie in a closed window of length `k` containing `mu`
/// and the overall average must be `mu`. Works on `v − mu`:
/// (a) a zero entry is a group on its own; (b) if only the two extreme
/// values remain, take `e_r/d` copies of `e_l` with `−e_l/d` copies of `e_r`;
/// (c) otherwise start from an interior value and keep adding the first
/// remaining entry of opposite sign to the running sum until a partial sum
/// repeats, then split off the stretch between the repeats.
pub fn homogeneous_partition(v: &[i64], k: usize, mu: i64) -> Result<Partitioning> {
    let n = v.len() as i64;
    if v.iter().sum::<i64>() != mu * n {
        return Err(Error::AverageNotMu(mu));
    }
    if let (Some(&lo), Some(&hi)) = (v.iter().min(), v.iter().max()) {
        let lo = lo.min(mu);
        let hi = hi.max(mu);
        if hi - lo > k as i64 {
            let bad = if v.iter().any(|&x| x < mu - k as i64) {
                *v.iter().min().unwrap()
            } else {
                *v.iter().max().unwrap()
            };
            return Err(Error::EntriesOutOfWindow(bad));
        }
    }
    let w: Vec<i64> = v.iter().map(|x| x - mu).collect();
    let mut remaining: Vec<usize> = (0..v.len()).collect();
    let mut groups = Vec::new();
    while !remaining.is_empty() {
        let group = next_group(&w, &remaining);
        debug_assert!(group.len() <= k.max(1));
        remaining.retain(|i| !group.contains(i));
        let mut g = group;
        g.sort_unstable();
        groups.push(g);
    }
    groups.sort_by_key(|g| g[0]);
    Ok(Partitioning { groups })
}

fn next_group(w: &[i64], remaining: &[usize]) -> Vec<usize> {
    // (a)
    if let Some(&i) = remaining.iter().find(|&&i| w[i] == 0) {
        return vec![i];
    }
    let lo = remaining.iter().map(|&i| w[i]).min().unwrap();
    let hi = remaining.iter().map(|&i| w[i]).max().unwrap();
    // (b)
    if remaining.iter().all(|&i| w[i] == lo || w[i] == hi) {
        // −lo · #lo = hi · #hi, smallest solution #lo = hi/d, #hi = −lo/d.
        let (take_lo, take_hi) = solve_dio((-lo) as u64, hi as u64);
        let (take_lo, take_hi) = (take_lo as usize, take_hi as usize);
        let mut out: Vec<usize> = remaining.iter().copied().filter(|&i| w[i] == lo).take(take_lo).collect();
        out.extend(remaining.iter().copied().filter(|&i| w[i] == hi).take(take_hi));
        return out;
    }
    // (c)
    let start = *remaining
        .iter()
        .find(|&&i| w[i] > lo && w[i] < hi)
        .expect("interior element");
    let mut used = vec![start];
    let mut sum = w[start];
    let mut seen: HashMap<i64, usize> = HashMap::from([(0, 0), (sum, 1)]);
    loop {
        let pick = *remaining
            .iter()
            .find(|&&i| !used.contains(&i) && (w[i] < 0) == (sum > 0))
            .expect("opposite-sign element remains");
        used.push(pick);
        sum += w[pick];
        if let Some(&at) = seen.get(&sum) {
            return used[at..].to_vec();
        }
        seen.insert(sum, used.len());
    }
}

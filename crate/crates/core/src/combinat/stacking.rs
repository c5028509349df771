use std::collections::BTreeMap;

use crate::algebra::{FieldSpec, Poly};

/// Irreducible factors arranged into `n` columns.
///
/// The multiset is sorted by decreasing degree (ties ascending), padded with
/// 1's to a multiple of `n`, laid out row by row in rows of length `n`;
/// each column's product is one diagonal entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackingLayout {
    pub field: FieldSpec,
    /// Column contents from the top row down, padding omitted.
    pub columns: Vec<Vec<Poly>>,
    /// Total degree of each column.
    pub degrees: Vec<usize>,
    /// Per-degree factor counts in each column.
    pub families: BTreeMap<usize, Vec<usize>>,
}

impl StackingLayout {
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Column products, i.e. the target diagonal.
    pub fn products(&self) -> Vec<Poly> {
        self.columns
            .iter()
            .map(|c| c.iter().fold(Poly::one(self.field), |acc, p| &acc * p))
            .collect()
    }

    /// Count vector of the degree-`d` family (zeros if absent).
    pub fn counts(&self, d: usize) -> Vec<usize> {
        self.families
            .get(&d)
            .cloned()
            .unwrap_or_else(|| vec![0; self.n()])
    }

    /// Rebuild a layout from explicit columns.
    pub fn from_columns(field: FieldSpec, columns: Vec<Vec<Poly>>) -> Self {
        let n = columns.len();
        let mut families: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut degrees = vec![0; n];
        for (j, col) in columns.iter().enumerate() {
            for p in col {
                let d = p.degree_or_zero();
                degrees[j] += d;
                families.entry(d).or_insert_with(|| vec![0; n])[j] += 1;
            }
        }
        StackingLayout {
            field,
            columns,
            degrees,
            families,
        }
    }
}

pub fn stack_factors(field: FieldSpec, factors: &[Poly], n: usize) -> StackingLayout {
    assert!(n > 0, "stacking needs at least one column");
    let mut items: Vec<Poly> = factors.iter().map(Poly::monic).collect();
    items.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
    let mut columns = vec![Vec::new(); n];
    for (idx, p) in items.into_iter().enumerate() {
        columns[idx % n].push(p);
    }
    StackingLayout::from_columns(field, columns)
}

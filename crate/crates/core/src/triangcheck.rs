//! Triangularizability: gap vectors, the two-degree characterization and
//! its scaled form, the general sufficient condition, and construction of a
//! triangular witness when the condition holds.
//!
//! The factors of degree above the unit degree `ℓ` are stacked into `n`
//! columns as evenly as possible; the gap `gᵢ = d − deg qᵢ` of each column
//! must then be filled with unit-degree factors. Unit transfers can only move
//! the Smith form's unit-factor counts to a vector they majorize, so
//! `ℓ·f_ℓ ⪰ g` is sufficient, and necessary when only two degrees occur.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::Poly;
use crate::combinat::{majorizes_signed, stack_factors, StackingLayout};
use crate::error::{Error, Result};
use crate::matpoly::MatPoly;
use crate::quasitri::{reduce_offdiagonal, BlockStructure};
use crate::smith::{invariant_polynomials, SpectralData};
use crate::transfer::drive_diagonal;

/// Per-column deficits `d − deg qᵢ`, columns listed in ascending degree
/// (largest gaps first). Entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapVector {
    pub entries: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Guaranteed,
    CharacterizedNo,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Guaranteed => "guaranteed",
            Verdict::CharacterizedNo => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangReport {
    pub verdict: Verdict,
    /// Human-readable statement of the inequality that was checked.
    pub condition: String,
    /// Unit degree `ℓ`.
    pub unit: usize,
    /// `ℓ·f_ℓ`: scaled unit-factor counts of the Smith form.
    pub counts: Vec<i64>,
    pub gap: GapVector,
    pub witness: Option<MatPoly>,
}

fn prepared(data: &SpectralData, d: usize, n: usize) -> Result<SpectralData> {
    if data.infinite.iter().any(|&a| a > 0) {
        return Err(Error::HypothesisViolated(
            "triangularization targets strictly regular data".into(),
        ));
    }
    let out = data.resized(n, d)?;
    out.check_index_sum()?;
    Ok(out)
}

/// Distinct degrees of the irreducibles that occur.
fn degrees(data: &SpectralData) -> BTreeSet<usize> {
    data.pruned().finite.keys().map(|c| c.degree_or_zero()).collect()
}

/// Stacking of the factors of degree above `unit`, columns in ascending degree.
fn high_layout(data: &SpectralData, unit: usize) -> StackingLayout {
    let mut high = Vec::new();
    for (chi, pm) in &data.finite {
        if chi.degree_or_zero() > unit {
            for _ in 0..pm.iter().sum::<usize>() {
                high.push(chi.clone());
            }
        }
    }
    let layout = stack_factors(data.field, &high, data.n);
    let mut cols = layout.columns;
    cols.reverse();
    StackingLayout::from_columns(data.field, cols)
}

fn gap_from(layout: &StackingLayout, d: usize) -> GapVector {
    GapVector {
        entries: layout.degrees.iter().map(|&q| d as i64 - q as i64).collect(),
    }
}

/// `ℓ·f_ℓ`: unit-degree factor counts in each invariant polynomial, scaled.
fn unit_counts(data: &SpectralData, unit: usize) -> Vec<i64> {
    let mut out = vec![0i64; data.n];
    for (chi, pm) in &data.finite {
        if chi.degree_or_zero() == unit {
            for (o, a) in out.iter_mut().zip(pm) {
                *o += (unit * a) as i64;
            }
        }
    }
    out
}

/// Gap vector for target degree `d` and size `n`, from the factors of degree ≥ 2.
pub fn gap_vector(data: &SpectralData, d: usize, n: usize) -> Result<GapVector> {
    let data = prepared(data, d, n)?;
    Ok(gap_from(&high_layout(&data, 1), d))
}

/// Unit degree for the scaled characterization, if its hypotheses hold:
/// at most two degrees `ℓ < k` with `ℓ | k` and `ℓ | d`.
fn two_degree_unit(degs: &BTreeSet<usize>, d: usize) -> Result<usize> {
    let v: Vec<usize> = degs.iter().copied().collect();
    match v.as_slice() {
        [] => Ok(1),
        [l] => {
            if d.is_multiple_of(*l) {
                Ok(*l)
            } else {
                Err(Error::HypothesisViolated(format!("degree {l} does not divide {d}")))
            }
        }
        [l, k] => {
            if k % l == 0 && d.is_multiple_of(*l) {
                Ok(*l)
            } else {
                Err(Error::HypothesisViolated(format!(
                    "degrees {l} and {k} with target {d} fail the divisibility hypotheses"
                )))
            }
        }
        _ => Err(Error::HypothesisViolated(format!(
            "{} distinct irreducible degrees; at most two are allowed",
            v.len()
        ))),
    }
}

fn evaluate(data: &SpectralData, d: usize, unit: usize) -> (bool, Vec<i64>, GapVector) {
    let layout = high_layout(data, unit);
    let gap = gap_from(&layout, d);
    let counts = unit_counts(data, unit);
    let holds = majorizes_signed(&counts, &gap.entries).unwrap_or(false);
    (holds, counts, gap)
}

fn describe(unit: usize, counts: &[i64], gap: &GapVector, holds: bool) -> String {
    let lhs = if unit == 1 {
        format!("f_1 = {counts:?}")
    } else {
        format!("{unit}*f_{unit} = {counts:?}")
    };
    let rel = if holds { "majorizes" } else { "does not majorize" };
    format!("{lhs} {rel} g = {:?}", gap.entries)
}

/// Characterization when the irreducible divisors have at most two degrees
/// `ℓ < k` with `ℓ | k`, `ℓ | d`: triangularizable iff `ℓ·f_ℓ ⪰ g`.
pub fn check_two_degree(data: &SpectralData, d: usize, n: usize) -> Result<TriangReport> {
    let data = prepared(data, d, n)?;
    let degs = degrees(&data);
    if degs.len() == 1 {
        let l = *degs.iter().next().unwrap();
        if !d.is_multiple_of(l) {
            let counts = unit_counts(&data, l);
            let gap = GapVector {
                entries: vec![d as i64; n],
            };
            return Ok(TriangReport {
                verdict: Verdict::CharacterizedNo,
                condition: format!("every factor has degree {l}, which does not divide {d}"),
                unit: l,
                counts,
                gap,
                witness: None,
            });
        }
    }
    let unit = two_degree_unit(&degs, d)?;
    let (holds, counts, gap) = evaluate(&data, d, unit);
    let condition = describe(unit, &counts, &gap, holds);
    if holds {
        let witness = build_with_unit(&data, d, unit)?;
        Ok(TriangReport {
            verdict: Verdict::Guaranteed,
            condition,
            unit,
            counts,
            gap,
            witness: Some(witness),
        })
    } else {
        Ok(TriangReport {
            verdict: Verdict::CharacterizedNo,
            condition,
            unit,
            counts,
            gap,
            witness: None,
        })
    }
}

/// Sufficient condition for any degree pattern: `f₁ ⪰ g` guarantees a
/// triangularization; otherwise the answer is unknown.
pub fn check_sufficient(data: &SpectralData, d: usize, n: usize) -> Result<TriangReport> {
    let data = prepared(data, d, n)?;
    let (holds, counts, gap) = evaluate(&data, d, 1);
    let condition = describe(1, &counts, &gap, holds);
    let witness = if holds {
        Some(build_with_unit(&data, d, 1)?)
    } else {
        None
    };
    Ok(TriangReport {
        verdict: if holds { Verdict::Guaranteed } else { Verdict::Unknown },
        condition,
        unit: 1,
        counts,
        gap,
        witness,
    })
}

/// A degree-`d` upper triangular matrix polynomial with the given Smith form,
/// when one of the checks establishes that it exists.
pub fn build_triangularization(data: &SpectralData, d: usize, n: usize) -> Result<MatPoly> {
    let data = prepared(data, d, n)?;
    let unit = two_degree_unit(&degrees(&data), d).unwrap_or(1);
    for u in [unit, 1] {
        let (holds, _, _) = evaluate(&data, d, u);
        if holds {
            return build_with_unit(&data, d, u);
        }
    }
    Err(Error::ConditionNotEstablished)
}

/// Stack the high-degree factors, fill every gap with unit factors, drive
/// the Smith form onto that layout, then reduce the off-diagonal entries.
fn build_with_unit(data: &SpectralData, d: usize, unit: usize) -> Result<MatPoly> {
    let f = data.field;
    let n = data.n;
    let layout = high_layout(data, unit);
    let gap = gap_from(&layout, d);
    let mut units: Vec<Poly> = Vec::new();
    for (chi, pm) in &data.finite {
        if chi.degree_or_zero() == unit {
            for _ in 0..pm.iter().sum::<usize>() {
                units.push(chi.clone());
            }
        }
    }
    let mut cols = layout.columns.clone();
    let mut next = units.into_iter();
    for (col, g) in cols.iter_mut().zip(&gap.entries) {
        if *g < 0 || !(*g as usize).is_multiple_of(unit) {
            return Err(Error::ConditionNotEstablished);
        }
        for _ in 0..(*g as usize) / unit {
            col.push(next.next().ok_or(Error::ConditionNotEstablished)?);
        }
    }
    if next.next().is_some() {
        return Err(Error::ConditionNotEstablished);
    }
    let full = StackingLayout::from_columns(f, cols);
    let s = MatPoly::diag(f, &data.invariant_list());
    let t = drive_diagonal(&s, &full)?;
    let t = reduce_offdiagonal(&t, &BlockStructure::scalar(n))?.fitted();
    let t = t.with_grade(d)?;
    let ok = t.is_upper_triangular()
        && t.is_strictly_regular()
        && (0..n).all(|i| t.get(i, i).degree() == Some(d))
        && invariant_polynomials(&t) == data.invariant_list();
    if !ok {
        return Err(Error::HypothesisViolated("triangular witness failed verification".into()));
    }
    Ok(t)
}

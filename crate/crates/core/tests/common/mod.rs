//! Shared fixtures: the GF(2) running example and helpers.
#![allow(dead_code)]

use polyqt::algebra::{FieldSpec, Poly};
use polyqt::matpoly::MatPoly;

pub fn gf2() -> FieldSpec {
    FieldSpec::gf2()
}

pub fn p(text: &str) -> Poly {
    Poly::parse(gf2(), text).unwrap()
}

/// χ = λ⁴+λ³+1
pub fn chi() -> Poly {
    p("1 + x^3 + x^4")
}

/// φ = λ²+λ+1
pub fn phi() -> Poly {
    p("1 + x + x^2")
}

/// ψ = λ
pub fn psi() -> Poly {
    p("x")
}

pub fn prod(ps: &[&Poly]) -> Poly {
    ps.iter().fold(Poly::one(gf2()), |acc, q| &acc * *q)
}

/// The five nontrivial invariant polynomials s₁ … s₅.
pub fn example_invariants() -> Vec<Poly> {
    let (c, f, s) = (chi(), phi(), psi());
    vec![
        prod(&[&f, &s]),
        prod(&[&c, &f, &s]),
        prod(&[&c.pow(2), &f, &s.pow(2)]),
        prod(&[&c.pow(3), &f, &s.pow(2)]),
        prod(&[&c.pow(3), &f.pow(3), &s.pow(4)]),
    ]
}

/// S(λ) = diag(1, s₁, …, s₅), graded at its degree 22.
pub fn example_smith() -> MatPoly {
    let mut d = vec![Poly::one(gf2())];
    d.extend(example_invariants());
    MatPoly::diag(gf2(), &d)
}

/// Irreducible factors of S(λ) with multiplicity.
pub fn example_factors() -> Vec<Poly> {
    let mut out = Vec::new();
    for (q, n) in [(chi(), 9), (phi(), 7), (psi(), 10)] {
        for _ in 0..n {
            out.push(q.clone());
        }
    }
    out
}

/// The degree-10, 6×6 strictly regular witness with 2×2 diagonal blocks.
pub fn example_q() -> MatPoly {
    let (c, f, s) = (chi(), phi(), psi());
    let one = Poly::one(gf2());
    let z = Poly::zero(gf2());
    let f1 = &f + &one;
    let cfs = prod(&[&c, &f, &s]);
    let rows = vec![
        vec![
            &cfs * &f1,
            &cfs * &(&(&(&f * &s) + &s) + &one),
            z.clone(),
            z.clone(),
            &s * &f1,
            f1.clone(),
        ],
        vec![&cfs * &s.pow(3), &cfs * &s, z.clone(), z.clone(), s.clone(), one.clone()],
        vec![z.clone(), z.clone(), &cfs * &s, prod(&[&cfs, &s, &f1]), prod(&[&f, &s, &f1]), z.clone()],
        vec![z.clone(), z.clone(), &cfs * &s.pow(3), &cfs * &s, &f * &s, z.clone()],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            &cfs * &(&s.pow(2) + &one),
            prod(&[&c, &f.pow(2), &s.pow(2)]),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            prod(&[&c, &f.pow(2), &s.pow(2)]),
            prod(&[&c, &f.pow(2), &s]),
        ],
    ];
    MatPoly::from_rows(gf2(), rows).with_grade(10).unwrap()
}

/// η = λ⁴+λ+1
pub fn eta() -> Poly {
    p("1 + x + x^4")
}

pub mod oracle;

use polyqt::smith::SpectralData;
use std::collections::BTreeMap;

/// Finite spectral data over GF(2) from explicit PM rows.
pub fn gf2_data(rows: &[(Poly, Vec<usize>)], grade: usize) -> SpectralData {
    let n = rows[0].1.len();
    SpectralData {
        field: gf2(),
        n,
        grade,
        finite: rows.iter().cloned().collect::<BTreeMap<_, _>>(),
        infinite: vec![0; n],
        invariants: None,
    }
}

/// d = 7, n = 8: nineteen copies of φ and the given λ-exponents (sum 18).
pub fn two_degree_instance(f1: &[usize]) -> SpectralData {
    gf2_data(&[(phi(), vec![0, 1, 2, 2, 3, 3, 4, 4]), (psi(), f1.to_vec())], 7)
}

/// d = 10, n = 8: nine cubics, eighteen copies of φ, λ-exponents summing to 17.
pub fn three_degree_instance(f1: &[usize]) -> SpectralData {
    gf2_data(
        &[
            (p("1 + x + x^3"), vec![0, 0, 0, 1, 1, 2, 2, 3]),
            (phi(), vec![0, 1, 2, 2, 3, 3, 3, 4]),
            (psi(), f1.to_vec()),
        ],
        10,
    )
}

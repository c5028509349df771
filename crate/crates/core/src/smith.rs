//! Smith normal form with transformation matrices, partial multiplicities,
//! and complete (finite + infinite) spectral data.

use std::collections::BTreeMap;

use crate::algebra::{factor_with_hints, poly_factor, poly_is_irreducible, FieldSpec, MobiusMatrix, Poly};
use crate::error::{Error, Result};
use crate::matpoly::MatPoly;

/// `U·P·V = S` with `S` diagonal, monic, forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: MatPoly,
    pub u: MatPoly,
    pub v: MatPoly,
}

impl SmithDecomposition {
    /// Diagonal entries of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Poly> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Partial multiplicity sequence: nondecreasing, one entry per invariant polynomial.
pub type PMSeq = Vec<usize>;

/// Smith form with accumulated unimodular transformations.
pub fn smith_form(p: &MatPoly) -> SmithDecomposition {
    let (s, u, v) = eliminate(p, true);
    SmithDecomposition {
        s,
        u: u.unwrap(),
        v: v.unwrap(),
    }
}

/// Invariant polynomials only (no transformation bookkeeping).
pub fn invariant_polynomials(p: &MatPoly) -> Vec<Poly> {
    let (s, _, _) = eliminate(p, false);
    let k = s.rows().min(s.cols());
    (0..k).map(|i| s.get(i, i).clone()).collect()
}

fn eliminate(p: &MatPoly, track: bool) -> (MatPoly, Option<MatPoly>, Option<MatPoly>) {
    let f = p.field();
    let (m, n) = (p.rows(), p.cols());
    let mut a = p.clone();
    let mut u = track.then(|| MatPoly::identity(f, m));
    let mut v = track.then(|| MatPoly::identity(f, n));
    'pivots: for t in 0..m.min(n) {
        loop {
            // Pivot: nonzero entry of least degree in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if let Some(d) = a.get(i, j).degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'pivots;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, pi);
            }
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, pj);
            }
            let piv = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).divrem(&piv).unwrap();
                let mq = -&q;
                a.add_row_multiple(t, i, &mq);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(t, i, &mq);
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).divrem(&piv).unwrap();
                let mq = -&q;
                a.add_col_multiple(t, j, &mq);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(t, j, &mq);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !piv.divides(a.get(i, j))));
            match offender {
                Some(i) => {
                    let one = Poly::one(f);
                    a.add_row_multiple(i, t, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(i, t, &one);
                    }
                }
                None => break,
            }
        }
        let lead = a.get(t, t).lead();
        if !f.is_one(&lead) {
            let inv = f.inv(&lead).unwrap();
            a.scale_row(t, &inv);
            if let Some(u) = u.as_mut() {
                u.scale_row(t, &inv);
            }
        }
    }
    a.fit_grade();
    if let Some(u) = u.as_mut() {
        u.fit_grade();
    }
    if let Some(v) = v.as_mut() {
        v.fit_grade();
    }
    (a, u, v)
}

/// Multiplicity of `chi` (nonconstant) as a factor of `a` (nonzero).
pub fn multiplicity(a: &Poly, chi: &Poly) -> usize {
    let mut e = 0;
    let mut rest = a.clone();
    loop {
        let (q, r) = rest.divrem(chi).expect("nonconstant divisor");
        if !r.is_zero() || rest.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// A finite eigenvalue (represented by an irreducible) or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eigen {
    Finite(Poly),
    Infinity,
}

impl Eigen {
    /// The polynomial stand-in: the irreducible itself, or `0·λ + 1` at grade 1.
    pub fn as_graded_poly(&self, field: FieldSpec) -> (Poly, usize) {
        match self {
            Eigen::Finite(p) => (p.clone(), p.degree_or_zero()),
            Eigen::Infinity => (Poly::one(field), 1),
        }
    }

    /// Image under `MT_A`, with the grade taken as the degree (1 for ∞).
    /// A constant image stands for ∞.
    pub fn mobius(&self, a: &MobiusMatrix) -> Result<Eigen> {
        let (p, g) = self.as_graded_poly(a.field);
        let img = p.mobius(g, a)?;
        Ok(if img.is_constant() {
            Eigen::Infinity
        } else {
            Eigen::Finite(img.monic())
        })
    }
}

fn check_irreducible(chi: &Poly) -> Result<()> {
    if chi.is_constant() {
        return Err(Error::NotIrreducible(chi.to_text()));
    }
    if chi.field().is_prime_field() && !poly_is_irreducible(chi)? {
        return Err(Error::NotIrreducible(chi.to_text()));
    }
    Ok(())
}

/// PM sequence of an irreducible (or ∞) over the nonzero invariant polynomials.
pub fn partial_multiplicities(p: &MatPoly, chi: &Eigen) -> Result<PMSeq> {
    match chi {
        Eigen::Infinity => infinite_pm(p),
        Eigen::Finite(c) => {
            check_irreducible(c)?;
            let m = c.monic();
            Ok(invariant_polynomials(p)
                .iter()
                .filter(|s| !s.is_zero())
                .map(|s| multiplicity(s, &m))
                .collect())
        }
    }
}

/// PM at ∞: multiplicities of λ in the reversal at the matrix's grade.
pub fn infinite_pm(p: &MatPoly) -> Result<PMSeq> {
    if !p.is_regular() {
        return Err(Error::NotRegular);
    }
    let x = Poly::x(p.field());
    Ok(invariant_polynomials(&p.reverse())
        .iter()
        .map(|s| multiplicity(s, &x))
        .collect())
}

/// Complete spectral data of a regular `n×n` matrix polynomial of grade `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub field: FieldSpec,
    pub n: usize,
    pub grade: usize,
    /// Monic irreducible → PM sequence of length `n`.
    pub finite: BTreeMap<Poly, PMSeq>,
    /// PM at ∞, length `n`.
    pub infinite: PMSeq,
    pub invariants: Option<Vec<Poly>>,
}

impl SpectralData {
    /// Build from invariant polynomials `s₁ | s₂ | …` (1's are allowed and
    /// the list is left-padded with 1's to length `n`). The irreducibles
    /// come from `poly_factor` over GF(p) or from `hints` over ℚ.
    pub fn from_invariants(
        field: FieldSpec,
        n: usize,
        grade: usize,
        invariants: &[Poly],
        infinite: Option<PMSeq>,
        hints: &[Poly],
        seed: u64,
    ) -> Result<SpectralData> {
        if invariants.len() > n {
            return Err(Error::TooSmall {
                n,
                m: invariants.len(),
            });
        }
        let mut inv: Vec<Poly> = vec![Poly::one(field); n - invariants.len()];
        for s in invariants {
            if s.is_zero() {
                return Err(Error::NotRegular);
            }
            inv.push(s.monic());
        }
        for w in inv.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(Error::HypothesisViolated(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let last = inv.last().cloned().unwrap_or_else(|| Poly::one(field));
        let irreducibles = irreducible_divisors(&last, hints, seed)?;
        let mut finite = BTreeMap::new();
        for chi in irreducibles {
            let pm: PMSeq = inv.iter().map(|s| multiplicity(s, &chi)).collect();
            finite.insert(chi, pm);
        }
        let infinite = match infinite {
            Some(v) => {
                if v.len() != n {
                    return Err(Error::LengthMismatch(v.len(), n));
                }
                v
            }
            None => vec![0; n],
        };
        Ok(SpectralData {
            field,
            n,
            grade,
            finite,
            infinite,
            invariants: Some(inv),
        })
    }

    /// Invariant polynomials rebuilt from the PM table.
    pub fn invariant_list(&self) -> Vec<Poly> {
        (0..self.n)
            .map(|i| {
                self.finite
                    .iter()
                    .fold(Poly::one(self.field), |acc, (chi, pm)| &acc * &chi.pow(pm[i] as u64))
            })
            .collect()
    }

    /// Σ deg sᵢ + Σ γⱼ
    pub fn index_sum(&self) -> usize {
        let fin: usize = self
            .finite
            .iter()
            .map(|(chi, pm)| chi.degree_or_zero() * pm.iter().sum::<usize>())
            .sum();
        fin + self.infinite.iter().sum::<usize>()
    }

    /// Largest degree among irreducibles that actually occur (0 if none).
    pub fn k(&self) -> usize {
        self.finite
            .iter()
            .filter(|(_, pm)| pm.iter().any(|&a| a > 0))
            .map(|(chi, _)| chi.degree_or_zero())
            .max()
            .unwrap_or(0)
    }

    /// Number of nontrivial invariant polynomials.
    pub fn nontrivial_count(&self) -> usize {
        (0..self.n)
            .filter(|&i| self.finite.values().any(|pm| pm[i] > 0))
            .count()
    }

    /// Structural checks: lengths, monotonicity, irreducibility (GF(p)).
    pub fn validate(&self) -> Result<()> {
        let check_seq = |pm: &PMSeq| -> Result<()> {
            if pm.len() != self.n {
                return Err(Error::LengthMismatch(pm.len(), self.n));
            }
            if pm.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::HypothesisViolated(
                    "partial multiplicities must be nondecreasing".into(),
                ));
            }
            Ok(())
        };
        for (chi, pm) in &self.finite {
            if !chi.is_monic() {
                return Err(Error::NotIrreducible(chi.to_text()));
            }
            check_irreducible(chi)?;
            check_seq(pm)?;
        }
        check_seq(&self.infinite)?;
        let chis: Vec<&Poly> = self.finite.keys().collect();
        for (i, a) in chis.iter().enumerate() {
            for b in &chis[i + 1..] {
                if !a.gcd(b).is_one() {
                    return Err(Error::HypothesisViolated(format!(
                        "irreducibles {a} and {b} are not coprime"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_index_sum(&self) -> Result<()> {
        let sigma = self.index_sum();
        let expected = self.grade * self.n;
        if sigma == expected {
            Ok(())
        } else {
            Err(Error::IndexSumViolation { sigma, expected })
        }
    }

    /// The same data for size `n` and grade `grade`: PM sequences are
    /// left-padded with zeros, or stripped of leading zeros when shrinking.
    pub fn resized(&self, n: usize, grade: usize) -> Result<SpectralData> {
        let fit = |pm: &PMSeq| -> Result<PMSeq> {
            if n >= pm.len() {
                let mut out = vec![0; n - pm.len()];
                out.extend_from_slice(pm);
                Ok(out)
            } else {
                let cut = pm.len() - n;
                if pm[..cut].iter().any(|&a| a > 0) {
                    return Err(Error::TooSmall {
                        n,
                        m: pm.iter().filter(|&&a| a > 0).count(),
                    });
                }
                Ok(pm[cut..].to_vec())
            }
        };
        let mut out = self.clone();
        out.n = n;
        out.grade = grade;
        out.infinite = fit(&self.infinite)?;
        for pm in out.finite.values_mut() {
            *pm = fit(pm)?;
        }
        out.invariants = None;
        Ok(out)
    }

    /// Drop irreducibles whose PM sequence is identically zero.
    pub fn pruned(&self) -> SpectralData {
        let mut out = self.clone();
        out.finite.retain(|_, pm| pm.iter().any(|&a| a > 0));
        out
    }

    /// Same data with the PM tables compared exactly (ignores the cached invariants
    /// and zero rows).
    pub fn same_structure(&self, other: &SpectralData) -> bool {
        let a = self.pruned();
        let b = other.pruned();
        a.field == b.field && a.n == b.n && a.grade == b.grade && a.finite == b.finite && a.infinite == b.infinite
    }
}

fn irreducible_divisors(a: &Poly, hints: &[Poly], seed: u64) -> Result<Vec<Poly>> {
    if a.is_constant() {
        return Ok(Vec::new());
    }
    let fac = if a.field().is_prime_field() {
        poly_factor(a, seed)?
    } else {
        factor_with_hints(a, hints)?
    };
    Ok(fac.factors.into_iter().map(|(p, _)| p).collect())
}

/// Complete spectral data; `hints` supplies irreducibles over ℚ.
pub fn extract_spectral_data(p: &MatPoly, hints: &[Poly], seed: u64) -> Result<SpectralData> {
    if !p.is_regular() {
        return Err(Error::NotRegular);
    }
    let inv = invariant_polynomials(p);
    let infinite = infinite_pm(p)?;
    let data = SpectralData::from_invariants(p.field(), p.rows(), p.grade(), &inv, Some(infinite), hints, seed)?;
    data.check_index_sum()?;
    Ok(data)
}

/// Equal invariant polynomials and equal PM at ∞ (after padding).
pub fn spectrally_equivalent(p: &MatPoly, q: &MatPoly) -> Result<bool> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(p.field().to_string(), q.field().to_string()));
    }
    if !p.is_regular() || !q.is_regular() {
        return Err(Error::NotRegular);
    }
    let f = p.field();
    let n = p.rows().max(q.rows());
    let pad_inv = |v: Vec<Poly>| {
        let mut out = vec![Poly::one(f); n - v.len()];
        out.extend(v);
        out
    };
    let pad_pm = |v: PMSeq| {
        let mut out = vec![0; n - v.len()];
        out.extend(v);
        out
    };
    Ok(pad_inv(invariant_polynomials(p)) == pad_inv(invariant_polynomials(q))
        && pad_pm(infinite_pm(p)?) == pad_pm(infinite_pm(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::gf2(), c)
    }

    fn check_decomposition(p: &MatPoly) {
        let d = smith_form(p);
        assert_eq!(d.u.mul(p).mul(&d.v), d.s);
        assert!(d.u.is_unimodular().unwrap());
        assert!(d.v.is_unimodular().unwrap());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[0].divides(&w[1]));
            }
        }
        assert!(diag.iter().all(|s| s.is_zero() || s.is_monic()));
    }

    #[test]
    fn smith_of_jordan_like_block() {
        let f = FieldSpec::gf2();
        let psi = Poly::x(f);
        let p = MatPoly::from_rows(f, vec![vec![psi.clone(), Poly::one(f)], vec![Poly::zero(f), psi.clone()]]);
        check_decomposition(&p);
        assert_eq!(smith_form(&p).diagonal(), vec![Poly::one(f), psi.pow(2)]);
    }

    #[test]
    fn smith_of_diagonal_already_in_form() {
        let f = FieldSpec::gf2();
        let s = MatPoly::diag(f, &[Poly::one(f), gf2(&[0, 1]), gf2(&[0, 0, 1])]);
        let d = smith_form(&s);
        assert_eq!(d.s, s);
    }

    #[test]
    fn smith_rectangular_and_singular() {
        let f = FieldSpec::prime(3).unwrap();
        let p = MatPoly::from_rows(
            f,
            vec![
                vec![Poly::from_ints(f, &[1, 1]), Poly::from_ints(f, &[0, 2]), Poly::zero(f)],
                vec![Poly::from_ints(f, &[2, 2]), Poly::from_ints(f, &[0, 1]), Poly::one(f)],
            ],
        );
        check_decomposition(&p);
        check_decomposition(&p.transpose());
        let z = MatPoly::from_rows(f, vec![vec![Poly::x(f), Poly::x(f)], vec![Poly::x(f), Poly::x(f)]]);
        check_decomposition(&z);
        assert!(smith_form(&z).diagonal()[1].is_zero());
    }

    #[test]
    fn pm_of_diagonal() {
        let f = FieldSpec::gf2();
        let chi = gf2(&[1, 0, 0, 1, 1]);
        let s = MatPoly::diag(f, &[Poly::one(f), chi.clone(), chi.pow(3)]);
        assert_eq!(partial_multiplicities(&s, &Eigen::Finite(chi.clone())).unwrap(), vec![0, 1, 3]);
        let phi = gf2(&[1, 1, 1]);
        assert_eq!(partial_multiplicities(&s, &Eigen::Finite(phi)).unwrap(), vec![0, 0, 0]);
        assert!(matches!(
            partial_multiplicities(&s, &Eigen::Finite(gf2(&[1, 0, 1]))),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn infinite_pm_shift_under_grade() {
        let f = FieldSpec::gf2();
        let x = Poly::x(f);
        let p = MatPoly::diag(f, &[x.clone(), x.pow(2)]);
        // degree 2 but column 0 is deficient: PM(∞) = (0, 1)
        assert_eq!(infinite_pm(&p).unwrap(), vec![0, 1]);
        assert_eq!(infinite_pm(&p.with_grade(4).unwrap()).unwrap(), vec![2, 3]);
        let sr = MatPoly::diag(f, &[x.clone(), x.clone()]);
        assert_eq!(infinite_pm(&sr).unwrap(), vec![0, 0]);
    }

    #[test]
    fn infinity_token_under_mobius() {
        let f = FieldSpec::prime(5).unwrap();
        let a = MobiusMatrix::from_ints(f, [1, 2, 3, 4]).unwrap();
        // cλ + d = 3λ + 4 → monic λ + 3
        assert_eq!(
            Eigen::Infinity.mobius(&a).unwrap(),
            Eigen::Finite(Poly::from_ints(f, &[3, 1]))
        );
        let upper = MobiusMatrix::from_ints(f, [1, 2, 0, 1]).unwrap();
        assert_eq!(Eigen::Infinity.mobius(&upper).unwrap(), Eigen::Infinity);
        // λ − μ with a = cμ maps to ∞: a=3, c=1, μ=3
        let m = MobiusMatrix::from_ints(f, [3, 0, 1, 1]).unwrap();
        let chi = Poly::from_ints(f, &[-3, 1]);
        assert_eq!(Eigen::Finite(chi).mobius(&m).unwrap(), Eigen::Infinity);
    }

    #[test]
    fn spectral_data_of_identity() {
        let f = FieldSpec::gf2();
        let id = MatPoly::identity(f, 3);
        let d = extract_spectral_data(&id, &[], 0).unwrap();
        assert!(d.finite.is_empty());
        assert_eq!(d.infinite, vec![0, 0, 0]);
    }

    #[test]
    fn equivalence_detects_infinite_structure() {
        let f = FieldSpec::gf2();
        let x = Poly::x(f);
        let p = MatPoly::diag(f, &[x.clone(), x.clone()]);
        assert!(spectrally_equivalent(&p, &p).unwrap());
        let q = p.with_grade(2).unwrap();
        assert!(!spectrally_equivalent(&p, &q).unwrap());
    }
}

//! Irreducible factorization over GF(p): squarefree split, distinct-degree
//! split, then Cantor–Zassenhaus equal-degree splitting driven by a seeded RNG.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldSpec, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    /// Monic irreducibles with exponents, sorted ascending.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: FieldSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e as u64)
            })
    }

    pub fn multiplicity(&self, chi: &Poly) -> u32 {
        let m = chi.monic();
        self.factors
            .iter()
            .find(|(f, _)| *f == m)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

fn require_prime(f: FieldSpec) -> Result<()> {
    if f.is_prime_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "automatic factorization is only available over GF(p)".into(),
        ))
    }
}

/// Factor a nonzero polynomial over GF(p).
pub fn poly_factor(a: &Poly, seed: u64) -> Result<Factorization> {
    let f = a.field();
    require_prime(f)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let unit = a.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sq, mult) in squarefree(&a.monic()) {
        for (part, d) in distinct_degree(&sq) {
            for irr in equal_degree(&part, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    // Squarefree parts are coprime, so no irreducible repeats.
    Ok(Factorization { unit, factors: out })
}

/// Factor using caller-supplied irreducible candidates (any field).
/// Whatever remains after dividing out every hint must be a constant.
pub fn factor_with_hints(a: &Poly, hints: &[Poly]) -> Result<Factorization> {
    let f = a.field();
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut rest = a.clone();
    let mut factors = Vec::new();
    let mut seen: Vec<Poly> = hints
        .iter()
        .filter(|h| !h.is_constant())
        .map(Poly::monic)
        .collect();
    seen.sort();
    seen.dedup();
    for h in seen {
        let mut e = 0u32;
        loop {
            let (q, r) = rest.divrem(&h)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((h, e));
        }
    }
    if !rest.is_constant() {
        return Err(Error::UnsupportedFactorization(format!(
            "cofactor {rest} is not covered by the supplied irreducibles over {f}"
        )));
    }
    Ok(Factorization {
        unit: rest.lead(),
        factors,
    })
}

/// Coefficient-wise p-th root of a polynomial whose exponents are all
/// multiples of p (in GF(p) every element is its own p-th root).
fn pth_root(a: &Poly) -> Poly {
    let p = a.field().characteristic() as usize;
    let v = a.coeffs().iter().step_by(p).cloned().collect();
    Poly::from_coeffs(a.field(), v)
}

/// Monic squarefree parts with multiplicities.
fn squarefree(a: &Poly) -> Vec<(Poly, u32)> {
    let p = a.field().characteristic() as u32;
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let mut c = a.gcd(&a.derivative());
    let mut w = a.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c).monic()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Split a monic squarefree polynomial into products of same-degree irreducibles.
fn distinct_degree(a: &Poly) -> Vec<(Poly, usize)> {
    let field = a.field();
    let p = field.characteristic();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree_or_zero() >= 2 * i {
        h = h.powmod(p, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree_or_zero();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: FieldSpec, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = field.characteristic();
    let v = (0..below).map(|_| Scalar::Mod(rng.gen_range(0..p))).collect();
    Poly::from_coeffs(field, v)
}

/// Cantor–Zassenhaus: split a product of distinct degree-`d` irreducibles.
fn equal_degree(a: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = a.degree_or_zero();
    if n == d {
        return vec![a.clone()];
    }
    let field = a.field();
    let p = field.characteristic();
    loop {
        let r = random_poly(field, n, rng);
        if r.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map r + r^2 + … + r^(2^(d−1)).
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = (&t * &t).rem(a).unwrap();
                acc = &acc + &t;
            }
            acc
        } else {
            // r^((p^d − 1)/2) = (Π_{i<d} r^(p^i))^((p−1)/2)
            let mut frob = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                frob = frob.powmod(p, a);
                norm = (&norm * &frob).rem(a).unwrap();
            }
            &norm.powmod((p - 1) / 2, a) - &Poly::one(field)
        };
        let g = b.gcd(a);
        let dg = g.degree_or_zero();
        if g.is_zero() || dg == 0 || dg == n {
            continue;
        }
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&a.div_exact(&g), d, rng));
        return out;
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// λ^(p^k) mod m.
fn frobenius_power(m: &Poly, k: usize) -> Poly {
    let p = m.field().characteristic();
    let mut h = Poly::x(m.field()).rem(m).unwrap();
    for _ in 0..k {
        h = h.powmod(p, m);
    }
    h
}

/// Rabin's test over GF(p).
pub fn poly_is_irreducible(a: &Poly) -> Result<bool> {
    let field = a.field();
    require_prime(field)?;
    let n = match a.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::Unsupported(
                "irreducibility is defined for degree >= 1".into(),
            ))
        }
    };
    if n == 1 {
        return Ok(true);
    }
    let m = a.monic();
    let x = Poly::x(field);
    if frobenius_power(&m, n) != x.rem(&m).unwrap() {
        return Ok(false);
    }
    for q in prime_divisors(n) {
        let h = frobenius_power(&m, n / q);
        if !(&h - &x).gcd(&m).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::gf2(), c)
    }

    #[test]
    fn frobenius_square() {
        let f = poly_factor(&gf2(&[1, 0, 1]), 0).unwrap();
        assert_eq!(f.factors, vec![(gf2(&[1, 1]), 2)]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        let chi = gf2(&[1, 0, 0, 1, 1]);
        let f = poly_factor(&chi, 0).unwrap();
        assert_eq!(f.factors, vec![(chi.clone(), 1)]);
        assert!(poly_is_irreducible(&chi).unwrap());
    }

    #[test]
    fn invariant_polynomial_factors() {
        let chi = gf2(&[1, 0, 0, 1, 1]);
        let phi = gf2(&[1, 1, 1]);
        let psi = gf2(&[0, 1]);
        let s5 = &(&chi.pow(3) * &phi.pow(3)) * &psi.pow(4);
        let f = poly_factor(&s5, 7).unwrap();
        assert_eq!(f.multiplicity(&chi), 3);
        assert_eq!(f.multiplicity(&phi), 3);
        assert_eq!(f.multiplicity(&psi), 4);
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(FieldSpec::gf2()), s5);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(poly_is_irreducible(&gf2(&[1, 1, 1])).unwrap());
        assert!(!poly_is_irreducible(&gf2(&[1, 0, 1])).unwrap());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(poly_is_irreducible(&Poly::x(f5)).unwrap());
        assert!(poly_is_irreducible(&Poly::x(FieldSpec::rationals())).is_err());
    }

    #[test]
    fn rationals_need_hints() {
        let q = FieldSpec::rationals();
        let a = Poly::from_ints(q, &[-2, 0, 2]); // 2(x-1)(x+1)
        assert!(matches!(poly_factor(&a, 0), Err(Error::Unsupported(_))));
        let hints = [Poly::from_ints(q, &[-1, 1]), Poly::from_ints(q, &[1, 1])];
        let f = factor_with_hints(&a, &hints).unwrap();
        assert_eq!(f.unit, q.from_i64(2));
        assert_eq!(f.expand(q), a);
        let bad = factor_with_hints(&a, &hints[..1]).unwrap_err();
        assert_eq!(bad.code(), "UnsupportedFactorization");
    }

    /// Brute-force oracle: enumerate all monic polynomials of small degree
    /// over GF(p) and mark the irreducible ones by trial division.
    fn brute_irreducibles(p: u64, max_deg: usize) -> Vec<Poly> {
        let f = FieldSpec::prime(p).unwrap();
        let mut all = Vec::new();
        for d in 1..=max_deg {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut v = Vec::new();
                let mut t = idx;
                for _ in 0..d {
                    v.push((t % p) as i64);
                    t /= p;
                }
                v.push(1);
                all.push(Poly::from_ints(f, &v));
            }
        }
        all.iter()
            .filter(|a| {
                let d = a.degree().unwrap();
                !all.iter().any(|b| {
                    let e = b.degree().unwrap();
                    e < d && b.divides(a)
                })
            })
            .cloned()
            .collect()
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3] {
            let irr = brute_irreducibles(p, 5);
            let f = FieldSpec::prime(p).unwrap();
            for d in 1..=5usize {
                for idx in 0..p.pow(d as u32) {
                    let mut v = Vec::new();
                    let mut t = idx;
                    for _ in 0..d {
                        v.push((t % p) as i64);
                        t /= p;
                    }
                    v.push(1);
                    let a = Poly::from_ints(f, &v);
                    assert_eq!(poly_is_irreducible(&a).unwrap(), irr.contains(&a), "{a}");
                }
            }
        }
    }
}

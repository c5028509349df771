//! Dense univariate polynomials over a [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldSpec, Scalar};
use super::mobius::MobiusMatrix;
use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of λ^i; the last stored coefficient is
/// never zero, so the zero polynomial has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Integer coefficients in ascending powers, reduced into `field`.
    pub fn from_ints(field: FieldSpec, ints: &[i64]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// c·λ^k
    pub fn monomial(field: FieldSpec, c: Scalar, k: usize) -> Self {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::from_coeffs(field, v)
    }

    /// λ
    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// λ − c
    pub fn linear_root(field: FieldSpec, c: &Scalar) -> Self {
        Self::from_coeffs(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of λ^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0 — only for callers that
    /// already know the polynomial is nonzero or treat zero as constant.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> Scalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    /// Multiply by λ^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field,
            coeffs: v,
        }
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomial arithmetic across different fields"
        );
    }

    pub fn add_ref(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(f, v)
    }

    pub fn neg_ref(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| self.field.neg(a)).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Poly) -> Poly {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if f.is_prime_field() {
            let p = f.characteristic() as u128;
            let a: Vec<u64> = self.coeffs.iter().map(residue).collect();
            let b: Vec<u64> = other.coeffs.iter().map(residue).collect();
            let mut acc = vec![0u128; n];
            // Accumulate without reducing while it is safe to do so.
            let small = p < (1 << 31);
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    let t = x as u128 * y as u128;
                    if small {
                        acc[i + j] += t;
                    } else {
                        acc[i + j] = (acc[i + j] + t % p) % p;
                    }
                }
            }
            return Poly::from_coeffs(
                f,
                acc.into_iter()
                    .map(|c| Scalar::Mod((c % p) as u64))
                    .collect(),
            );
        }
        let mut v = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `a = b·q + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b);
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(&b.lead())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = f.mul(&r[k + db], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Poly::from_coeffs(f, q), Poly::from_coeffs(f, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient when `b` is known to divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, a: &Poly) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0,0) = 0`.
    pub fn gcd(&self, b: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, b: &Poly) -> Poly {
        if self.is_zero() || b.is_zero() {
            return Poly::zero(self.field);
        }
        (self * b).div_exact(&self.gcd(b)).monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(f, v)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(self.field).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m).unwrap();
            }
        }
        acc
    }

    /// `λ^g · a(1/λ)`: coefficient i of the result is coefficient g−i of `a`.
    pub fn reverse(&self, grade: usize) -> Result<Poly> {
        if let Some(d) = self.degree() {
            if d > grade {
                return Err(Error::GradeBelowDegree { grade, degree: d });
            }
        }
        let v = (0..=grade).map(|i| self.coeff(grade - i)).collect();
        Ok(Poly::from_coeffs(self.field, v))
    }

    /// Σ aᵢ (aλ+b)ⁱ (cλ+d)^{g−i}.
    pub fn mobius(&self, grade: usize, m: &MobiusMatrix) -> Result<Poly> {
        if let Some(d) = self.degree() {
            if d > grade {
                return Err(Error::GradeBelowDegree { grade, degree: d });
            }
        }
        m.check()?;
        let f = self.field;
        let num = Poly::from_coeffs(f, vec![m.b.clone(), m.a.clone()]);
        let den = Poly::from_coeffs(f, vec![m.d.clone(), m.c.clone()]);
        let mut num_pows = vec![Poly::one(f)];
        let mut den_pows = vec![Poly::one(f)];
        for i in 1..=grade {
            num_pows.push(&num_pows[i - 1] * &num);
            den_pows.push(&den_pows[i - 1] * &den);
        }
        let mut acc = Poly::zero(f);
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let term = (&num_pows[i] * &den_pows[grade - i]).scale(c);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Canonical text form, ascending powers: `1 + x + x^3`, `2*x^2 - 1/3*x`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let neg = f.is_negative(c);
            let mag = if neg { f.neg(c) } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = f.fmt_scalar(&mag);
            match i {
                0 => out.push_str(&coef),
                _ => {
                    if !f.is_one(&mag) {
                        out.push_str(&coef);
                        out.push('*');
                    }
                    out.push('x');
                    if i > 1 {
                        out.push('^');
                        out.push_str(&i.to_string());
                    }
                }
            }
        }
        out
    }

    /// Parse the text grammar: terms `c*x^k`, `c*x`, `x^k`, `x`, `c`
    /// joined by `+` / `-`. Coefficients are integers or `num/den`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Poly> {
        let err = |msg: String| Error::schema("", msg);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err(format!("expected + or - at offset {pos} in {text:?}")));
            }
            let end = s[pos..]
                .find(['+', '-'])
                .map(|e| pos + e)
                .unwrap_or(s.len());
            let term = &s[pos..end];
            if term.is_empty() {
                return Err(err(format!("empty term in {text:?}")));
            }
            let (coef, power) = match term.find('x') {
                None => (term, 0usize),
                Some(xi) => {
                    let c = term[..xi].strip_suffix('*').unwrap_or(&term[..xi]);
                    if xi > 0 && !term[..xi].ends_with('*') {
                        return Err(err(format!("missing '*' before x in {term:?}")));
                    }
                    let rest = &term[xi + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>()
                            .map_err(|_| err(format!("bad exponent in {term:?}")))?
                    } else {
                        return Err(err(format!("unexpected text after x in {term:?}")));
                    };
                    (if c.is_empty() { "1" } else { c }, k)
                }
            };
            let mut c = field
                .parse_scalar(coef)
                .map_err(|_| err(format!("bad coefficient {coef:?}")))?;
            if sign < 0 {
                c = field.neg(&c);
            }
            acc = &acc + &Poly::monomial(field, c, power);
            pos = end;
        }
        Ok(acc)
    }
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod(v) => *v,
        Scalar::Rat(_) => unreachable!("rational coefficient in prime field"),
    }
}

/// Extended Euclid: `(g, u, v)` with `g = u·a + v·b`, `g` monic.
pub fn poly_xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    let f = a.field();
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
    let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = f.inv(&r0.lead())?;
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

impl Ord for Poly {
    /// Degree first (zero smallest), then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$imp(rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$imp(&rhs)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::gf2(), c)
    }

    #[test]
    fn divrem_examples() {
        let f = FieldSpec::gf2();
        let x = Poly::x(f);
        let (q, r) = x.pow(3).divrem(&x).unwrap();
        assert_eq!((q, r), (x.pow(2), Poly::zero(f)));
        let (q, r) = gf2(&[1, 1, 1]).divrem(&gf2(&[1, 1])).unwrap();
        assert_eq!(q, x);
        assert_eq!(r, Poly::one(f));
        let a = gf2(&[1, 0, 1, 1]);
        assert_eq!(a.divrem(&a).unwrap(), (Poly::one(f), Poly::zero(f)));
        assert_eq!(a.divrem(&Poly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let z = Poly::zero(FieldSpec::gf2());
        assert_eq!(z.degree(), None);
        assert_eq!(gf2(&[0, 0, 0]).degree(), None);
        assert_eq!(gf2(&[1]).degree(), Some(0));
    }

    #[test]
    fn xgcd_cases() {
        let f = FieldSpec::gf2();
        let x = Poly::x(f);
        let (g, _, _) = poly_xgcd(&x.pow(2), &x).unwrap();
        assert_eq!(g, x);
        let q = FieldSpec::rationals();
        let a = Poly::from_ints(q, &[2, 4]);
        let (g, u, v) = poly_xgcd(&a, &Poly::zero(q)).unwrap();
        assert_eq!(g, a.monic());
        assert_eq!(u, Poly::constant(q, q.parse_scalar("1/4").unwrap()));
        assert!(v.is_zero());
        assert_eq!(poly_xgcd(&Poly::zero(q), &Poly::zero(q)), Err(Error::BothZero));
    }

    #[test]
    fn reverse_examples() {
        let chi = gf2(&[1, 0, 0, 1, 1]);
        assert_eq!(chi.reverse(4).unwrap(), gf2(&[1, 1, 0, 0, 1]));
        let pal = gf2(&[1, 1, 0, 1, 1]);
        assert_eq!(pal.reverse(4).unwrap(), pal);
        let x = Poly::x(FieldSpec::gf2());
        assert_eq!(x.reverse(2).unwrap(), x);
        assert!(matches!(chi.reverse(3), Err(Error::GradeBelowDegree { .. })));
    }

    #[test]
    fn mobius_identity_and_reversal() {
        let f = FieldSpec::prime(3).unwrap();
        let a = Poly::from_ints(f, &[1, 2, 0, 1]);
        let id = MobiusMatrix::identity(f);
        assert_eq!(a.mobius(3, &id).unwrap(), a);
        assert_eq!(a.mobius(5, &id).unwrap(), a);
        let r = MobiusMatrix::reversal(f);
        assert_eq!(a.mobius(3, &r).unwrap(), a.reverse(3).unwrap());
        assert_eq!(a.mobius(5, &r).unwrap(), a.reverse(5).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let q = FieldSpec::rationals();
        for s in ["0", "1", "x", "-1 + 2*x^3", "1/2 - x + 3/4*x^2", "-x^5"] {
            let p = Poly::parse(q, s).unwrap();
            assert_eq!(p.to_text(), s);
        }
        let f = FieldSpec::gf2();
        assert_eq!(Poly::parse(f, "x^4+x^3+1").unwrap().to_text(), "1 + x^3 + x^4");
        assert_eq!(Poly::parse(f, "x + x").unwrap(), Poly::zero(f));
        assert!(Poly::parse(f, "x^").is_err());
        assert!(Poly::parse(f, "2x").is_err());
        assert!(Poly::parse(f, "").is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Poly::from_ints(f, &[1, 2, 3]);
        assert_eq!(a.derivative(), Poly::from_ints(f, &[2, 6]));
        assert_eq!(a.eval(&f.from_i64(2)), f.from_i64(1 + 4 + 12));
    }

    #[test]
    fn large_prime_multiplication() {
        let p = 18446744073709551557u64;
        let f = FieldSpec::prime(p).unwrap();
        let a = Poly::from_coeffs(f, vec![Scalar::Mod(p - 1), Scalar::Mod(p - 1)]);
        // (-1 - x)^2 = 1 + 2x + x^2
        assert_eq!(&a * &a, Poly::from_ints(f, &[1, 2, 1]));
    }
}

//! Ground fields: prime fields GF(p) with word-sized `p`, and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ambient field. Characteristic 0 denotes ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u64,
}

/// A field element without its field tag. Values are always canonical:
/// residues lie in `0..p`, fractions are reduced with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(Box<BigRational>),
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl FieldSpec {
    /// GF(p); fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec { p })
        } else {
            Err(Error::Unsupported(format!("{p} is not prime")))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { p: 0 }
    }

    pub fn gf2() -> Self {
        FieldSpec { p: 2 }
    }

    pub fn is_prime_field(&self) -> bool {
        self.p != 0
    }

    /// `p` for GF(p), 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> Scalar {
        if self.p == 0 {
            Scalar::Rat(Box::new(BigRational::zero()))
        } else {
            Scalar::Mod(0)
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.p == 0 {
            Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(v))))
        } else {
            Scalar::Mod((v as i128).rem_euclid(self.p as i128) as u64)
        }
    }

    /// Reduce an arbitrary fraction into this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.p == 0 {
            return Ok(Scalar::Rat(Box::new(BigRational::new(num.clone(), den.clone()))));
        }
        let m = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &m) + &m) % &m;
            r.to_u64().expect("residue fits")
        };
        let n = Scalar::Mod(reduce(num));
        let d = Scalar::Mod(reduce(den));
        self.div(&n, &d)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let s = *x as u128 + *y as u128;
                Scalar::Mod((s % self.p as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x + &**y)),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(0) => Scalar::Mod(0),
            Scalar::Mod(x) => Scalar::Mod(self.p - x),
            Scalar::Rat(x) => Scalar::Rat(Box::new(-&**x)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(mul_mod(*x, *y, self.p)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x * &**y)),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Mod(x) => Scalar::Mod(pow_mod(*x, self.p - 2, self.p)),
            Scalar::Rat(x) => Scalar::Rat(Box::new(x.recip())),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Elements in the canonical search order: `0,1,…,p−1` for GF(p);
    /// `0,1,−1,2,−2,…` (unbounded) for ℚ.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let p = self.p;
        let mut i: u64 = 0;
        std::iter::from_fn(move || {
            let out = if p != 0 {
                if i >= p {
                    return None;
                }
                Scalar::Mod(i)
            } else {
                // 0, 1, -1, 2, -2, ...
                let k = i.div_ceil(2);
                let v = if i % 2 == 1 { k as i64 } else { -(k as i64) };
                Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(v))))
            };
            i += 1;
            Some(out)
        })
    }

    pub fn fmt_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Parse `n` or `n/m` (integers, optional sign).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::schema("", format!("bad scalar literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }

    /// True when `a` is negative as a rational (never for residues).
    pub(crate) fn is_negative(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.p)
        }
    }
}

/// A scalar bundled with its field, for standalone element arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub spec: FieldSpec,
    pub value: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn new(spec: FieldSpec, value: Scalar) -> Self {
        FieldElement { spec, value }
    }

    pub fn from_i64(spec: FieldSpec, v: i64) -> Self {
        FieldElement {
            spec,
            value: spec.from_i64(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.spec.is_zero(&self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.fmt_scalar(&self.value))
    }
}

/// Exact arithmetic on tagged elements. Unary ops ignore `b`.
pub fn element_arithmetic(
    op: ElementOp,
    a: &FieldElement,
    b: Option<&FieldElement>,
) -> Result<FieldElement> {
    let f = a.spec;
    let rhs = || -> Result<&FieldElement> {
        let b = b.ok_or_else(|| Error::Unsupported("binary op needs two operands".into()))?;
        if b.spec != f {
            return Err(Error::FieldMismatch(f.to_string(), b.spec.to_string()));
        }
        Ok(b)
    };
    let value = match op {
        ElementOp::Add => f.add(&a.value, &rhs()?.value),
        ElementOp::Sub => f.sub(&a.value, &rhs()?.value),
        ElementOp::Mul => f.mul(&a.value, &rhs()?.value),
        ElementOp::Div => f.div(&a.value, &rhs()?.value)?,
        ElementOp::Inv => f.inv(&a.value)?,
        ElementOp::Neg => f.neg(&a.value),
    };
    Ok(FieldElement { spec: f, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_one_plus_one() {
        let f = FieldSpec::gf2();
        let one = FieldElement::from_i64(f, 1);
        let r = element_arithmetic(ElementOp::Add, &one, Some(&one)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn rational_product_reduces() {
        let q = FieldSpec::rationals();
        let a = FieldElement::new(q, q.parse_scalar("2/3").unwrap());
        let b = FieldElement::new(q, q.parse_scalar("3/4").unwrap());
        let r = element_arithmetic(ElementOp::Mul, &a, Some(&b)).unwrap();
        assert_eq!(r.to_string(), "1/2");
    }

    #[test]
    fn inverse_matches_brute_force() {
        let f = FieldSpec::prime(7).unwrap();
        let three = FieldElement::from_i64(f, 3);
        let inv = element_arithmetic(ElementOp::Inv, &three, None).unwrap();
        let brute = (1..7).find(|x| (3 * x) % 7 == 1).unwrap();
        assert_eq!(inv.value, Scalar::Mod(brute));
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = FieldSpec::prime(5).unwrap();
        let z = FieldElement::from_i64(f, 0);
        assert_eq!(
            element_arithmetic(ElementOp::Inv, &z, None),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = FieldElement::from_i64(FieldSpec::gf2(), 1);
        let b = FieldElement::from_i64(FieldSpec::prime(3).unwrap(), 1);
        let e = element_arithmetic(ElementOp::Add, &a, Some(&b)).unwrap_err();
        assert_eq!(e.code(), "FieldMismatch");
    }

    #[test]
    fn enumeration_orders() {
        let g3: Vec<_> = FieldSpec::prime(3).unwrap().elements().collect();
        assert_eq!(g3, vec![Scalar::Mod(0), Scalar::Mod(1), Scalar::Mod(2)]);
        let q = FieldSpec::rationals();
        let first: Vec<String> = q.elements().take(5).map(|s| q.fmt_scalar(&s)).collect();
        assert_eq!(first, ["0", "1", "-1", "2", "-2"]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        let sieve: Vec<u64> = (0..60u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, sieve);
        assert!(is_prime_u64(18446744073709551557));
        assert!(FieldSpec::prime(4).is_err());
    }

    #[test]
    fn negative_literals_reduce_mod_p() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Mod(4));
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Mod(3));
    }
}

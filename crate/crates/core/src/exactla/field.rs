//! Base fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u32 },
}

/// A field element. The variant must agree with the field it is used in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod(u32),
}

impl FieldSpec {
    /// `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime { p } => FieldSpec::prime(p).map(|_| ()),
        }
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match *self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } => p,
        }
    }

    pub(crate) fn modulus(&self) -> u32 {
        match *self {
            FieldSpec::Prime { p } => p,
            FieldSpec::Rational => panic!("modulus requested for the rational field"),
        }
    }

    /// True when the trace form detects nilpotency for representations of
    /// dimension `dim`: characteristic zero or larger than `dim`.
    pub fn trace_criterion_ok(&self, dim: usize) -> bool {
        match *self {
            FieldSpec::Rational => true,
            FieldSpec::Prime { p } => p as usize > dim,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            FieldSpec::Rational => Elem::Rat(BigRational::zero()),
            FieldSpec::Prime { .. } => Elem::Mod(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            FieldSpec::Rational => Elem::Rat(BigRational::one()),
            FieldSpec::Prime { .. } => Elem::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match *self {
            FieldSpec::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => Elem::Mod(v.rem_euclid(p as i64) as u32),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match *self {
            FieldSpec::Rational => Ok(Elem::Rat(q.clone())),
            FieldSpec::Prime { p } => {
                let pm = BigInt::from(p);
                let num = (q.numer() % &pm + &pm) % &pm;
                let den = (q.denom() % &pm + &pm) % &pm;
                if den.is_zero() {
                    return Err(Error::InvalidField(format!(
                        "denominator of {q} vanishes modulo {p}"
                    )));
                }
                let n = num.to_u64().unwrap();
                let d = den.to_u64().unwrap();
                Ok(Elem::Mod((n * inv_mod(d, p as u64) % p as u64) as u32))
            }
        }
    }

    /// Parses `"3"`, `"-2"` or `"3/4"`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let q = if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            if b.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            BigRational::new(a, b)
        } else {
            let a: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            BigRational::from_integer(a)
        };
        self.from_rational(&q)
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(FpArith(self.modulus()).addv(*x, *y)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Mod(x) => {
                let p = self.modulus();
                Elem::Mod(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u64 * *y as u64) % self.modulus() as u64) as u32)
            }
            _ => panic!("mixed field elements"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match a {
            Elem::Rat(x) => Elem::Rat(x.recip()),
            Elem::Mod(x) => Elem::Mod(inv_mod(*x as u64, self.modulus() as u64) as u32),
        })
    }

    /// Renders an element for reports.
    pub fn render(&self, a: &Elem) -> String {
        a.to_string()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Elem::Mod(v) => write!(f, "{v}"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} not invertible mod {p}");
    old_s.rem_euclid(p as i64) as u64
}

/// Scalar arithmetic used by the generic matrix kernels.
pub(crate) trait Arith: Copy {
    type T: Clone + PartialEq + fmt::Debug;
    fn zero(self) -> Self::T;
    fn one(self) -> Self::T;
    fn is_zero(self, a: &Self::T) -> bool;
    fn add(self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(self, a: &Self::T) -> Self::T;
    fn inv(self, a: &Self::T) -> Self::T;
    /// `acc += a * b`
    fn mul_add(self, acc: &mut Self::T, a: &Self::T, b: &Self::T) {
        *acc = self.add(acc, &self.mul(a, b));
    }
    fn to_elem(self, a: &Self::T) -> Elem;
    fn from_elem(self, e: &Elem) -> Self::T;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct QArith;

#[derive(Clone, Copy, Debug)]
pub(crate) struct FpArith(pub u32);

impl FpArith {
    #[inline]
    fn addv(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }
}

impl Arith for QArith {
    type T = BigRational;
    fn zero(self) -> BigRational {
        BigRational::zero()
    }
    fn one(self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul_add(self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc += a * b;
    }
    fn to_elem(self, a: &BigRational) -> Elem {
        Elem::Rat(a.clone())
    }
    fn from_elem(self, e: &Elem) -> BigRational {
        match e {
            Elem::Rat(q) => q.clone(),
            Elem::Mod(_) => panic!("F_p element used over Q"),
        }
    }
}

impl Arith for FpArith {
    type T = u32;
    fn zero(self) -> u32 {
        0
    }
    fn one(self) -> u32 {
        1
    }
    fn is_zero(self, a: &u32) -> bool {
        *a == 0
    }
    fn add(self, a: &u32, b: &u32) -> u32 {
        self.addv(*a, *b)
    }
    fn sub(self, a: &u32, b: &u32) -> u32 {
        self.addv(*a, self.neg(b))
    }
    fn mul(self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0 as u64) as u32
    }
    fn neg(self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        inv_mod(*a as u64, self.0 as u64) as u32
    }
    fn mul_add(self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = ((*acc as u64 + *a as u64 * *b as u64) % self.0 as u64) as u32;
    }
    fn to_elem(self, a: &u32) -> Elem {
        Elem::Mod(*a)
    }
    fn from_elem(self, e: &Elem) -> u32 {
        match e {
            Elem::Mod(v) => *v % self.0,
            Elem::Rat(_) => panic!("rational element used over F_p"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_moduli() {
        assert!(FieldSpec::prime(101).is_ok());
        assert!(FieldSpec::prime(100).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn parses_fractions_mod_p() {
        let f = FieldSpec::prime(7).unwrap();
        // 3/4 = 3 * 2 = 6 mod 7
        assert_eq!(f.parse("3/4").unwrap(), Elem::Mod(6));
        assert_eq!(f.parse("-1").unwrap(), Elem::Mod(6));
        assert!(f.parse("1/7").is_err());
        let q = FieldSpec::Rational;
        assert_eq!(q.parse("2/4").unwrap().to_string(), "1/2");
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let e = f.from_i64(v);
            let inv = f.inv(&e).unwrap();
            assert_eq!(f.mul(&e, &inv), f.one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }
}

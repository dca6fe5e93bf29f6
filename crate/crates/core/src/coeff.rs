//! Exact coefficient arithmetic over ℤ, ℚ and ℤ/m.
//!
//! A [`Coefficient`] carries enough information to recover its [`Ring`], so
//! mixing values from different rings is detected at the point of use. The
//! checked methods (`checked_add`, `checked_mul`, ...) report a mismatch as an
//! error; the operator impls panic instead and are meant for code that has
//! already established a common ring (for example through a shared context).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    /// ℤ/m with m ≥ 2.
    IntegersMod(u64),
}

impl Ring {
    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring::IntegersMod(m))
    }

    /// 0 for ℤ and ℚ, m for ℤ/m.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers | Ring::Rationals => 0,
            Ring::IntegersMod(m) => *m,
        }
    }

    pub fn is_domain(&self) -> bool {
        match self {
            Ring::Integers | Ring::Rationals => true,
            Ring::IntegersMod(m) => is_prime_u64(*m),
        }
    }

    /// True when the ring has no nonzero nilpotents (ℤ/m: m squarefree).
    pub fn is_reduced(&self) -> bool {
        match self {
            Ring::Integers | Ring::Rationals => true,
            Ring::IntegersMod(m) => is_squarefree_u64(*m),
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(n))
    }

    /// The image of an integer under the canonical map ℤ → C.
    pub fn from_bigint(&self, n: &BigInt) -> Coefficient {
        let value = match self {
            Ring::Integers => Value::Int(n.clone()),
            Ring::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            Ring::IntegersMod(m) => Value::Mod { r: reduce_bigint(n, *m), m: *m },
        };
        Coefficient(value)
    }

    /// `num / den` in this ring; fails when `den` is not invertible.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient> {
        if den.is_zero() {
            return Err(Error::NotInvertible("0".into(), *self));
        }
        match self {
            Ring::Rationals => Ok(Coefficient(Value::Rat(BigRational::new(num.clone(), den.clone())))),
            _ => {
                let g = num.gcd(den);
                let (num, den) = (num / &g, den / &g);
                let d = self.from_bigint(&den);
                let inv = d.inverse()?;
                Ok(&self.from_bigint(&num) * &inv)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("int"),
            Ring::Rationals => f.write_str("rat"),
            Ring::IntegersMod(m) => write!(f, "mod:{m}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `int`, `rat` and `mod:<m>`.
    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "int" | "Z" => Ok(Ring::Integers),
            "rat" | "Q" => Ok(Ring::Rationals),
            other => {
                let m = other
                    .strip_prefix("mod:")
                    .ok_or_else(|| Error::InvalidRing(format!("expected int, rat or mod:<m>, got `{other}`")))?;
                let m: u64 = m
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad modulus `{m}`")))?;
                Ring::integers_mod(m)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod { r: u64, m: u64 },
}

/// An element of one of the supported rings, always in normal form:
/// rationals are reduced with positive denominator, residues lie in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient(Value);

/// λ-adic valuation; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Coefficient {
    pub fn ring(&self) -> Ring {
        match &self.0 {
            Value::Int(_) => Ring::Integers,
            Value::Rat(_) => Ring::Rationals,
            Value::Mod { m, .. } => Ring::IntegersMod(*m),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Mod { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Value::Int(n) => n.is_one(),
            Value::Rat(q) => q.is_one(),
            Value::Mod { r, .. } => *r == 1,
        }
    }

    fn check(&self, other: &Coefficient) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring(), right: other.ring() })
        }
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check(other)?;
        Ok(Coefficient(match (&self.0, &other.0) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod { r: a, m }, Value::Mod { r: b, .. }) => {
                Value::Mod { r: ((*a as u128 + *b as u128) % *m as u128) as u64, m: *m }
            }
            _ => unreachable!("ring checked"),
        }))
    }

    pub fn checked_sub(&self, other: &Coefficient) -> Result<Coefficient> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check(other)?;
        Ok(Coefficient(match (&self.0, &other.0) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod { r: a, m }, Value::Mod { r: b, .. }) => {
                Value::Mod { r: mul_mod(*a, *b, *m), m: *m }
            }
            _ => unreachable!("ring checked"),
        }))
    }

    fn neg_ref(&self) -> Coefficient {
        Coefficient(match &self.0 {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod { r, m } => Value::Mod { r: if *r == 0 { 0 } else { m - r }, m: *m },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Coefficient {
        let mut base = self.clone();
        let mut acc = self.ring().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by an integer through the canonical map ℤ → C.
    pub fn scale_int(&self, n: &BigInt) -> Coefficient {
        self * &self.ring().from_bigint(n)
    }

    pub fn is_unit(&self) -> bool {
        match &self.0 {
            Value::Int(n) => n.abs().is_one(),
            Value::Rat(q) => !q.is_zero(),
            Value::Mod { r, m } => r.gcd(m) == 1,
        }
    }

    pub fn inverse(&self) -> Result<Coefficient> {
        let fail = || Error::NotInvertible(self.to_string(), self.ring());
        match &self.0 {
            Value::Int(n) if n.abs().is_one() => Ok(self.clone()),
            Value::Int(_) => Err(fail()),
            Value::Rat(q) if q.is_zero() => Err(fail()),
            Value::Rat(q) => Ok(Coefficient(Value::Rat(q.recip()))),
            Value::Mod { r, m } => {
                let e = (*r as i128).extended_gcd(&(*m as i128));
                if e.gcd != 1 {
                    return Err(fail());
                }
                Ok(Coefficient(Value::Mod { r: e.x.rem_euclid(*m as i128) as u64, m: *m }))
            }
        }
    }

    /// Nonzero and annihilated by some nonzero element. Only possible in ℤ/m.
    pub fn is_zero_divisor(&self) -> bool {
        match &self.0 {
            Value::Mod { r, m } => *r != 0 && r.gcd(m) > 1,
            _ => false,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        match &self.0 {
            Value::Int(_) | Value::Rat(_) => self.is_zero(),
            // Every prime exponent in m is below 64, so c is nilpotent iff c^64 = 0.
            Value::Mod { .. } => self.pow(64).is_zero(),
        }
    }

    /// Integer representative: the value itself over ℤ, the residue in
    /// `[0, m)` over ℤ/m, and the numerator of an integral rational.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.0 {
            Value::Int(n) => Some(n.clone()),
            Value::Rat(q) if q.is_integer() => Some(q.to_integer()),
            Value::Rat(_) => None,
            Value::Mod { r, .. } => Some(BigInt::from(*r)),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Value::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Largest k with λ^k dividing `self`, for ℤ and prime |λ|.
    pub fn lambda_adic_valuation(&self, lambda: &Coefficient) -> Result<Valuation> {
        let (Value::Int(c), Value::Int(l)) = (&self.0, &lambda.0) else {
            return Err(Error::UnsupportedValuation(format!(
                "valuation needs integer coefficients, got {} and {}",
                self.ring(),
                lambda.ring()
            )));
        };
        let p = l.abs();
        let prime = p.to_u64().map(is_prime_u64).unwrap_or(false);
        if !prime {
            return Err(Error::UnsupportedValuation(format!("{l} is not prime")));
        }
        if c.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let mut k = 0;
        let mut rest = c.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                return Ok(Valuation::Finite(k));
            }
            rest = q;
            k += 1;
        }
    }

    /// Reduce an integer coefficient into ℤ/m.
    pub fn reduce_mod(&self, m: u64) -> Result<Coefficient> {
        let ring = Ring::integers_mod(m)?;
        match &self.0 {
            Value::Int(n) => Ok(ring.from_bigint(n)),
            _ => Err(Error::Precondition(format!("reduction mod {m} needs an integer coefficient"))),
        }
    }

    /// Parse a decimal integer or `p/q` literal into `ring`.
    pub fn parse_in(ring: Ring, s: &str) -> Result<Coefficient> {
        let s = s.trim();
        let bad = || Error::Parse { pos: 0, msg: format!("bad coefficient `{s}`") };
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                ring.from_ratio(&p, &q)
            }
            None => Ok(ring.from_bigint(&s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }

    /// True for values whose printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Value::Int(n) => n.sign() == Sign::Minus,
            Value::Rat(q) => q.is_negative(),
            Value::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Value::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Mod { r, .. } => write!(f, "{r}"),
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        self.checked_add(rhs).expect("coefficient ring mismatch")
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self.checked_sub(rhs).expect("coefficient ring mismatch")
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        self.checked_mul(rhs).expect("coefficient ring mismatch")
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

fn reduce_bigint(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_squarefree_u64(mut n: u64) -> bool {
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Coefficient {
        Ring::Rationals.from_ratio(&BigInt::from(p), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(q(2, 3).checked_add(&q(1, 6)).unwrap(), q(5, 6));
        let z9 = Ring::IntegersMod(9);
        assert_eq!(z9.from_i64(5).checked_mul(&z9.from_i64(7)).unwrap(), z9.from_i64(8));
        for ring in [Ring::Integers, Ring::Rationals, z9] {
            assert_eq!(-ring.zero(), ring.zero());
        }
        assert_eq!(z9.from_i64(-1).to_string(), "8");
        assert_eq!(q(4, -6).to_string(), "-2/3");
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = Ring::Integers.one().checked_add(&Ring::Rationals.one()).unwrap_err();
        assert!(matches!(err, Error::RingMismatch { .. }));
        assert!(Ring::IntegersMod(4).one().checked_mul(&Ring::IntegersMod(6).one()).is_err());
    }

    #[test]
    fn characteristic_and_descriptors() {
        assert_eq!(Ring::Integers.characteristic(), 0);
        assert_eq!(Ring::Rationals.characteristic(), 0);
        assert_eq!(Ring::IntegersMod(9).characteristic(), 9);
        assert!(Ring::integers_mod(1).is_err());
        assert_eq!("mod:9".parse::<Ring>().unwrap(), Ring::IntegersMod(9));
        assert!("mod:1".parse::<Ring>().is_err());
        assert!("float".parse::<Ring>().is_err());
        assert_eq!(Ring::IntegersMod(12).to_string(), "mod:12");
    }

    #[test]
    fn unit_zero_divisor_nilpotent() {
        assert!(!Ring::Integers.from_i64(2).is_unit());
        for ring in [Ring::Integers, Ring::Rationals, Ring::IntegersMod(9)] {
            assert!(ring.one().is_unit());
            assert!(ring.zero().is_nilpotent());
        }
        let z9 = Ring::IntegersMod(9);
        assert!(z9.from_i64(4).is_unit());
        assert_eq!(z9.from_i64(4).inverse().unwrap(), z9.from_i64(7));
        assert!(z9.from_i64(3).is_zero_divisor());
        assert!(!Ring::Integers.from_i64(2).is_zero_divisor());
        assert!(!z9.zero().is_zero_divisor());
        assert!(z9.from_i64(3).is_nilpotent());
        assert!(!Ring::IntegersMod(6).from_i64(3).is_nilpotent());
        assert!(Ring::Integers.from_i64(2).inverse().is_err());
        assert_eq!(q(-2, 3).inverse().unwrap(), q(-3, 2));
    }

    #[test]
    fn valuation() {
        let two = Ring::Integers.from_i64(2);
        let v = |n: i64| Ring::Integers.from_i64(n).lambda_adic_valuation(&two).unwrap();
        assert_eq!(v(12), Valuation::Finite(2));
        assert_eq!(v(0), Valuation::Infinite);
        assert_eq!(v(-8), Valuation::Finite(3));
        assert_eq!(v(7), Valuation::Finite(0));
        let four = Ring::Integers.from_i64(4);
        assert!(Ring::Integers.one().lambda_adic_valuation(&four).is_err());
        assert!(q(1, 2).lambda_adic_valuation(&q(2, 1)).is_err());
        let neg_three = Ring::Integers.from_i64(-3);
        assert_eq!(Ring::Integers.from_i64(18).lambda_adic_valuation(&neg_three).unwrap(), Valuation::Finite(2));
    }

    #[test]
    fn ratio_literals_in_rings() {
        let z5 = Ring::IntegersMod(5);
        assert_eq!(Coefficient::parse_in(z5, "1/2").unwrap(), z5.from_i64(3));
        assert!(Coefficient::parse_in(Ring::Integers, "1/2").is_err());
        assert_eq!(Coefficient::parse_in(Ring::Integers, "4/2").unwrap(), Ring::Integers.from_i64(2));
        assert!(Coefficient::parse_in(Ring::IntegersMod(4), "1/2").is_err());
    }

    #[test]
    fn squarefree_and_domain() {
        assert!(Ring::IntegersMod(6).is_reduced());
        assert!(!Ring::IntegersMod(4).is_reduced());
        assert!(!Ring::IntegersMod(12).is_reduced());
        assert!(Ring::IntegersMod(7).is_domain());
        assert!(!Ring::IntegersMod(9).is_domain());
    }
}

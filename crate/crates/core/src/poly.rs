//! Sparse multivariate polynomials over a coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value as Json};

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};

/// A monomial in the free commutative monoid on the variables: a sorted list
/// of `(variable, exponent)` pairs with every exponent positive. The empty
/// list is the unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(String, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn var(name: &str) -> Monomial {
        Monomial { exps: vec![(name.to_string(), 1)] }
    }

    /// Build from arbitrary pairs; zero exponents are dropped and repeated
    /// variables are merged.
    pub fn from_pairs<I, S>(pairs: I) -> Monomial
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.into()).or_default() += e;
        }
        Monomial { exps: map.into_iter().filter(|(_, e)| *e > 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exponents(&self) -> &[(String, u32)] {
        &self.exps
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.exps
            .binary_search_by(|(v, _)| v.as_str().cmp(var))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.exps.iter().map(|(v, _)| v.as_str())
    }

    pub fn is_divisible_by_var(&self, var: &str) -> bool {
        self.exponent(var) > 0
    }

    /// Exponentwise sum.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (&self.exps[i], &other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.exps.iter().map(|(v, e)| json!([v, e])).collect())
    }
}

impl Ord for Monomial {
    /// Total degree first; within a degree, a larger exponent on an earlier
    /// variable (by name) sorts first, so `1 < x < y < x^2 < x*y < y^2`.
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                        // self has a variable other lacks at this position
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match b.1.cmp(&a.1) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                f.write_str(v)?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial: monomials with nonzero coefficients in a single ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Polynomial {
        Polynomial { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Polynomial {
        Polynomial::constant(ring.one())
    }

    pub fn constant(c: Coefficient) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(ring: Ring, name: &str) -> Polynomial {
        Polynomial::term(ring.one(), Monomial::var(name))
    }

    pub fn term(c: Coefficient, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(c.ring());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collect `(coefficient, monomial)` pairs, combining like terms.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (Coefficient, Monomial)>,
    {
        let mut p = Polynomial::zero(ring);
        for (c, m) in terms {
            if c.ring() != ring {
                return Err(Error::RingMismatch { left: ring, right: c.ring() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    /// The coefficient of the unit monomial if this is a constant.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Polynomial> {
        self.mul(&Polynomial::constant(c.clone()))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Nilpotent iff every coefficient is nilpotent: N(C[X]) = N(C)[X].
    pub fn is_nilpotent(&self) -> bool {
        self.terms.values().all(Coefficient::is_nilpotent)
    }

    pub fn to_json(&self) -> Json {
        Json::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({ "coeff": c.to_string(), "monomial": m.to_json() }))
                .collect(),
        )
    }
}

/// Writes `c*m` with the conventions shared by every printer in the crate:
/// unit coefficients are omitted and the sign is left to the caller.
pub(crate) fn write_signed_terms<'a, I, F>(f: &mut fmt::Formatter<'_>, terms: I, mut body: F) -> fmt::Result
where
    I: IntoIterator<Item = &'a Coefficient>,
    F: FnMut(&mut fmt::Formatter<'_>, usize) -> fmt::Result,
{
    let mut any = false;
    for (k, c) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (any, neg) {
            (false, true) => f.write_str("-")?,
            (true, true) => f.write_str(" - ")?,
            (true, false) => f.write_str(" + ")?,
            (false, false) => {}
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        body(f, k)?;
        any = true;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos: Vec<&Monomial> = self.terms.keys().collect();
        let coeffs: Vec<&Coefficient> = self.terms.values().collect();
        let mut any = false;
        for (k, (m, c)) in monos.iter().zip(&coeffs).enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -*c } else { (*c).clone() };
            match (k > 0, neg) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
            any = true;
        }
        if !any {
            f.write_str("0")?;
        }
        Ok(())
    }
}

//! The sequence model of a free Baxter algebra.
//!
//! Entries are elements of the bar algebra Ā, the direct limit of the tensor
//! powers A^{⊗n} along `x ↦ x ⊗ 1`, multiplied factor by factor. Sequences
//! are multiplied entrywise and carry the operator
//! `P'(a)_k = λ (a_1 + … + a_{k-1})`. The morphism Φ sends a monomial `a` to
//! the sequence `t^{(a)}` with `t^{(a)}_k = 1 ⊗ … ⊗ 1 ⊗ a` (a in slot k).
//!
//! Sequences are truncated to their first N entries.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use serde_json::{json, Value as Json};

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::series::CompleteElement;
use crate::shuffle::{BaxterContext, ShuffleElement, TensorWord};

/// An element of Ā in canonical form: all words share the length `level`,
/// and the level is as small as possible (a trailing column of unit factors
/// is trimmed unless the level is already 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarElement {
    ring: Ring,
    level: usize,
    terms: BTreeMap<Vec<Monomial>, Coefficient>,
}

impl BarElement {
    pub fn zero(ring: Ring) -> BarElement {
        BarElement { ring, level: 1, terms: BTreeMap::new() }
    }

    pub fn scalar(c: Coefficient) -> BarElement {
        let ring = c.ring();
        BarElement::from_terms(ring, [(vec![Monomial::one()], c)]).expect("well formed")
    }

    pub fn one(ring: Ring) -> BarElement {
        BarElement::scalar(ring.one())
    }

    /// Build from words of a common length and canonicalize.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<BarElement>
    where
        I: IntoIterator<Item = (Vec<Monomial>, Coefficient)>,
    {
        let mut map = BTreeMap::new();
        let mut level = None;
        for (w, c) in terms {
            if w.is_empty() {
                return Err(Error::Precondition("bar words have at least one factor".into()));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch { left: ring, right: c.ring() });
            }
            match level {
                None => level = Some(w.len()),
                Some(l) if l != w.len() => {
                    return Err(Error::Precondition("bar element words must share one length".into()))
                }
                _ => {}
            }
            crate::shuffle::accumulate(&mut map, w, c);
        }
        let mut out = BarElement { ring, level: level.unwrap_or(1), terms: map };
        out.canonicalize();
        Ok(out)
    }

    pub fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.level = 1;
            return;
        }
        while self.level > 1 && self.terms.keys().all(|w| w.last().is_some_and(Monomial::is_one)) {
            let old = std::mem::take(&mut self.terms);
            self.terms = old
                .into_iter()
                .map(|(mut w, c)| {
                    w.pop();
                    (w, c)
                })
                .collect();
            self.level -= 1;
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Coefficient)> {
        self.terms.iter()
    }

    /// The coefficient when this is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        if self.terms.is_empty() {
            return Some(self.ring.zero());
        }
        if self.level == 1 && self.terms.len() == 1 {
            return self.terms.get(&vec![Monomial::one()]).cloned();
        }
        None
    }

    fn padded(&self, level: usize) -> impl Iterator<Item = (Vec<Monomial>, &Coefficient)> + '_ {
        self.terms.iter().map(move |(w, c)| {
            let mut w = w.clone();
            w.resize(level, Monomial::one());
            (w, c)
        })
    }

    fn check(&self, other: &BarElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    pub fn add(&self, other: &BarElement) -> Result<BarElement> {
        self.check(other)?;
        let level = self.level.max(other.level);
        let terms: Vec<(Vec<Monomial>, Coefficient)> = self
            .padded(level)
            .chain(other.padded(level))
            .map(|(w, c)| (w, c.clone()))
            .collect();
        BarElement::from_terms(self.ring, terms)
    }

    pub fn neg(&self) -> BarElement {
        BarElement {
            ring: self.ring,
            level: self.level,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<BarElement> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch { left: self.ring, right: c.ring() });
        }
        let terms: Vec<_> = self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect();
        BarElement::from_terms(self.ring, terms)
    }

    /// Factorwise product after padding both operands to a common level.
    pub fn mul(&self, other: &BarElement) -> Result<BarElement> {
        self.check(other)?;
        let level = self.level.max(other.level);
        let right: Vec<(Vec<Monomial>, &Coefficient)> = other.padded(level).collect();
        let mut terms = Vec::with_capacity(self.terms.len() * right.len());
        for (u, c) in self.padded(level) {
            for (v, d) in &right {
                let w: Vec<Monomial> = u.iter().zip(v).map(|(a, b)| a.mul(b)).collect();
                terms.push((w, c * d));
            }
        }
        BarElement::from_terms(self.ring, terms)
    }

    pub fn to_json(&self) -> Json {
        Json::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({ "coeff": c.to_string(), "word": w.iter().map(Monomial::to_json).collect::<Vec<_>>() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<TensorWord> = self.terms.keys().map(|w| TensorWord::new(w.clone()).expect("nonempty")).collect();
        crate::poly::write_signed_terms(f, self.terms.values(), |f, k| write!(f, "{}", words[k]))
    }
}

/// The first N entries of an element of the sequence algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceElement {
    ring: Ring,
    entries: Vec<BarElement>,
}

impl SequenceElement {
    pub fn from_entries(ring: Ring, entries: Vec<BarElement>) -> Result<SequenceElement> {
        if let Some(e) = entries.iter().find(|e| e.ring != ring) {
            return Err(Error::RingMismatch { left: ring, right: e.ring });
        }
        Ok(SequenceElement { ring, entries })
    }

    pub fn zero(ring: Ring, len: usize) -> SequenceElement {
        SequenceElement { ring, entries: vec![BarElement::zero(ring); len] }
    }

    /// The identity `(1, 1, …)`.
    pub fn one(ring: Ring, len: usize) -> SequenceElement {
        SequenceElement { ring, entries: vec![BarElement::one(ring); len] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry k, 1-based.
    pub fn entry(&self, k: usize) -> &BarElement {
        &self.entries[k - 1]
    }

    pub fn entries(&self) -> &[BarElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BarElement::is_zero)
    }

    pub fn truncate(&self, len: usize) -> SequenceElement {
        SequenceElement { ring: self.ring, entries: self.entries.iter().take(len).cloned().collect() }
    }

    fn zip_with<F>(&self, other: &SequenceElement, f: F) -> Result<SequenceElement>
    where
        F: Fn(&BarElement, &BarElement) -> Result<BarElement>,
    {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring, right: other.ring });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(SequenceElement { ring: self.ring, entries })
    }

    pub fn add(&self, other: &SequenceElement) -> Result<SequenceElement> {
        self.zip_with(other, BarElement::add)
    }

    pub fn sub(&self, other: &SequenceElement) -> Result<SequenceElement> {
        self.zip_with(other, |a, b| a.add(&b.neg()))
    }

    /// Entrywise product; the result has the shorter length.
    pub fn mul(&self, other: &SequenceElement) -> Result<SequenceElement> {
        self.zip_with(other, BarElement::mul)
    }

    pub fn scale(&self, c: &Coefficient) -> Result<SequenceElement> {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect::<Result<_>>()?;
        Ok(SequenceElement { ring: self.ring, entries })
    }

    /// `P'(a)_k = λ (a_1 + … + a_{k-1})`.
    pub fn p_prime(&self, lambda: &Coefficient) -> Result<SequenceElement> {
        let mut running = BarElement::zero(self.ring);
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(running.scale(lambda)?);
            running = running.add(e)?;
        }
        Ok(SequenceElement { ring: self.ring, entries })
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.entries.iter().map(BarElement::to_json).collect())
    }
}

impl fmt::Display for SequenceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}", i + 1, e)?;
        }
        Ok(())
    }
}

/// `t^{(a)}` truncated to `len` entries, extended linearly over the terms of `a`.
pub fn t_sequence(a: &Polynomial, len: usize) -> SequenceElement {
    let ring = a.ring();
    let entries = (1..=len)
        .map(|k| {
            let terms = a.terms().map(|(m, c)| {
                let mut w = vec![Monomial::one(); k - 1];
                w.push(m.clone());
                (w, c.clone())
            });
            BarElement::from_terms(ring, terms.collect::<Vec<_>>()).expect("well formed")
        })
        .collect();
    SequenceElement { ring, entries }
}

/// True when λ is neither zero nor a zero divisor, the hypothesis under which
/// Φ is injective.
pub fn phi_precondition_holds(ctx: &BaxterContext) -> bool {
    !ctx.lambda().is_zero() && !ctx.lambda().is_zero_divisor()
}

/// Φ truncated to `len` entries, by the head/tail recursion
/// `Φ(x0 ⊗ x⁺) = t^{(x0)} · P'(Φ(x⁺))`.
pub fn phi(a: &ShuffleElement, len: usize) -> SequenceElement {
    let ctx = a.context();
    let ring = ctx.ring();
    let mut total = SequenceElement::zero(ring, len);
    for (w, c) in a.terms() {
        let image = phi_word(w.factors(), ctx.lambda(), len);
        total = total.add(&image.scale(c).expect("same ring")).expect("same ring");
    }
    total
}

fn phi_word(factors: &[Monomial], lambda: &Coefficient, len: usize) -> SequenceElement {
    let ring = lambda.ring();
    let head = t_sequence(&Polynomial::term(ring.one(), factors[0].clone()), len);
    if factors.len() == 1 {
        return head;
    }
    let rest = phi_word(&factors[1..], lambda, len).p_prime(lambda).expect("same ring");
    head.mul(&rest).expect("same ring")
}

/// Φ̂ on a completed element. Entry k of Φ only reads degrees below k, so a
/// precision-N element determines the first N+1 entries.
pub fn phi_complete(a: &CompleteElement, len: usize) -> Result<SequenceElement> {
    if len > a.precision() + 1 {
        return Err(Error::Precision { requested: len, available: a.precision() + 1 });
    }
    Ok(phi(a.as_finite(), len))
}

/// Φ on `b = Σ b_i 1^{⊗(i+1)}` in closed form: entry n is
/// `Σ_{i=0}^{n-1} C(n-1, i) λ^i b_i`.
pub fn phi_constants_closed_form(b: &[Coefficient], lambda: &Coefficient, len: usize) -> Result<SequenceElement> {
    let ring = lambda.ring();
    if let Some(c) = b.iter().find(|c| c.ring() != ring) {
        return Err(Error::RingMismatch { left: ring, right: c.ring() });
    }
    let entries = (1..=len)
        .map(|n| {
            let mut sum = ring.zero();
            for (i, bi) in b.iter().enumerate().take(n) {
                let binom = binomial(BigInt::from(n - 1), BigInt::from(i));
                sum = &sum + &(bi * &lambda.pow(i as u64)).scale_int(&binom);
            }
            BarElement::scalar(sum)
        })
        .collect();
    Ok(SequenceElement { ring, entries })
}

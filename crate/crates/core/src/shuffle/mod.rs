//! The shuffle Baxter algebra Ш_C(X) of weight λ.
//!
//! Elements are finite linear combinations of tensor words `x0 ⊗ x1 ⊗ … ⊗ xn`
//! whose factors are monomials of C[X]. The word of length n+1 lives in
//! degree n. Multiplication is the mixed shuffle product and the Baxter
//! operator prepends the unit monomial.

mod element;
pub mod mixable;
mod product;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde_json::Value as Json;

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};
use crate::poly::Monomial;

pub use element::ShuffleElement;
pub use mixable::{enumerate_mixable_shuffles, mixable_shuffle_count, shuffle_product_by_enumeration, MixableShuffle};
pub use product::mix_tails;
pub(crate) use product::accumulate;

/// Names that the expression language reserves.
pub const RESERVED_NAMES: &[&str] = &["P", "T", "U", "lam", "geom"];

/// The triple (C, λ, X) that fixes a free Baxter algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaxterContext {
    ring: Ring,
    lambda: Coefficient,
    variables: Vec<String>,
}

impl BaxterContext {
    pub fn new<S: AsRef<str>>(ring: Ring, lambda: Coefficient, variables: &[S]) -> Result<Arc<BaxterContext>> {
        if lambda.ring() != ring {
            return Err(Error::RingMismatch { left: ring, right: lambda.ring() });
        }
        let mut vars: Vec<String> = Vec::new();
        for v in variables {
            let v = v.as_ref().trim();
            let ident = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ident || RESERVED_NAMES.contains(&v) {
                return Err(Error::Precondition(format!("`{v}` is not a usable variable name")));
            }
            if !vars.iter().any(|w| w == v) {
                vars.push(v.to_string());
            }
        }
        Ok(Arc::new(BaxterContext { ring, lambda, variables: vars }))
    }

    /// Convenience constructor with an integer weight.
    pub fn with_int_lambda<S: AsRef<str>>(ring: Ring, lambda: i64, variables: &[S]) -> Result<Arc<BaxterContext>> {
        BaxterContext::new(ring, ring.from_i64(lambda), variables)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lambda(&self) -> &Coefficient {
        &self.lambda
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn has_variable(&self, name: &str) -> bool {
        self.variables.iter().any(|v| v == name)
    }

    pub(crate) fn check_monomial(&self, m: &Monomial) -> Result<()> {
        match m.variables().find(|v| !self.has_variable(v)) {
            Some(v) => Err(Error::UnknownVariable(v.to_string())),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> Json {
        serde_json::json!({
            "ring": self.ring.to_string(),
            "lambda": self.lambda.to_string(),
            "variables": self.variables,
        })
    }
}

impl fmt::Display for BaxterContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring={} lambda={} vars=[{}]", self.ring, self.lambda, self.variables.join(","))
    }
}

impl std::str::FromStr for BaxterContext {
    type Err = Error;

    /// Inverse of `Display`: `ring=<r> lambda=<c> vars=[a,b]`.
    fn from_str(s: &str) -> Result<BaxterContext> {
        let bad = || Error::Precondition(format!("malformed context `{s}`"));
        let mut parts = s.split_whitespace();
        let mut field = |key: &str| parts.next().and_then(|p| p.strip_prefix(key)).ok_or_else(bad);
        let ring: Ring = field("ring=")?.parse()?;
        let lambda = Coefficient::parse_in(ring, field("lambda=")?)?;
        let vars = field("vars=")?.strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(bad)?;
        let vars: Vec<&str> = vars.split(',').filter(|v| !v.is_empty()).collect();
        Ok(BaxterContext::new(ring, lambda, &vars)?.as_ref().clone())
    }
}

/// A pure tensor of monomials `m0 ⊗ … ⊗ mn`; never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorWord(Vec<Monomial>);

impl TensorWord {
    pub fn new(factors: Vec<Monomial>) -> Result<TensorWord> {
        if factors.is_empty() {
            return Err(Error::Precondition("tensor words have at least one factor".into()));
        }
        Ok(TensorWord(factors))
    }

    /// `1^{⊗(n+1)}`, the unit word of degree n.
    pub fn unit(degree: usize) -> TensorWord {
        TensorWord(vec![Monomial::one(); degree + 1])
    }

    pub fn letter(m: Monomial) -> TensorWord {
        TensorWord(vec![m])
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Word length minus one.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn head(&self) -> &Monomial {
        &self.0[0]
    }

    pub fn tail(&self) -> &[Monomial] {
        &self.0[1..]
    }

    /// `1 ⊗ self`.
    pub fn prepend_unit(&self) -> TensorWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(Monomial::one());
        v.extend_from_slice(&self.0);
        TensorWord(v)
    }

    pub(crate) fn from_vec_unchecked(v: Vec<Monomial>) -> TensorWord {
        debug_assert!(!v.is_empty());
        TensorWord(v)
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.0.iter().map(Monomial::to_json).collect())
    }
}

impl Ord for TensorWord {
    /// Shorter words first, then lexicographic on factors.
    fn cmp(&self, other: &TensorWord) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &TensorWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("T(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

//! Baxter ideals generated by monomial or scalar ideals of A, and the
//! matching quotient maps.
//!
//! For an ideal I of A the generated Baxter ideal is spanned by the words with
//! at least one factor in I. When I is generated by variables every word is
//! either in it or not, so membership is decided term by term.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};
use crate::shuffle::{BaxterContext, ShuffleElement, TensorWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    /// The ideal (S) of C[X] for a nonempty set of variables S.
    VariableGenerated(BTreeSet<String>),
    /// The ideal c·C[X] for a nonzero scalar c.
    ScalarGenerated(Coefficient),
}

impl IdealSpec {
    pub fn variables<I, S>(vars: I) -> Result<IdealSpec>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = vars.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(Error::InvalidIdeal("need at least one generating variable".into()));
        }
        Ok(IdealSpec::VariableGenerated(set))
    }

    pub fn scalar(c: Coefficient) -> Result<IdealSpec> {
        if c.is_zero() {
            return Err(Error::InvalidIdeal("the scalar generator must be nonzero".into()));
        }
        Ok(IdealSpec::ScalarGenerated(c))
    }

    /// Parse `x,y` or `scalar:<c>` in the given ring.
    pub fn parse(ring: Ring, s: &str) -> Result<IdealSpec> {
        match s.trim().strip_prefix("scalar:") {
            Some(c) => IdealSpec::scalar(Coefficient::parse_in(ring, c)?),
            None => IdealSpec::variables(s.split(',').map(str::trim).filter(|v| !v.is_empty())),
        }
    }

    /// A warning when the ideal is all of C[X], which happens for every
    /// nonzero scalar over ℚ.
    pub fn triviality_warning(&self) -> Option<String> {
        match self {
            IdealSpec::ScalarGenerated(c) if c.is_unit() => {
                Some(format!("{c} is a unit in {}; the ideal is the whole algebra", c.ring()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::VariableGenerated(s) => write!(f, "({})", s.iter().cloned().collect::<Vec<_>>().join(",")),
            IdealSpec::ScalarGenerated(c) => write!(f, "({c})"),
        }
    }
}

impl FromStr for IdealSpec {
    type Err = Error;

    /// Variable lists only; scalar ideals need a ring, see [`IdealSpec::parse`].
    fn from_str(s: &str) -> Result<IdealSpec> {
        IdealSpec::variables(s.split(',').map(str::trim).filter(|v| !v.is_empty()))
    }
}

fn word_hits(w: &TensorWord, vars: &BTreeSet<String>) -> bool {
    w.factors().iter().any(|m| m.variables().any(|v| vars.contains(v)))
}

/// Does `c` lie in the ideal generated by `g` in their common ring?
fn scalar_divides(g: &Coefficient, c: &Coefficient) -> Result<bool> {
    if g.ring() != c.ring() {
        return Err(Error::RingMismatch { left: g.ring(), right: c.ring() });
    }
    Ok(match g.ring() {
        Ring::Rationals => true,
        Ring::Integers => {
            let (g, c) = (g.to_bigint().expect("integer"), c.to_bigint().expect("integer"));
            c.is_multiple_of(&g)
        }
        Ring::IntegersMod(m) => {
            // (g) = (gcd(g, m)) in ℤ/m
            let d = g.to_bigint().expect("residue").gcd(&BigInt::from(m));
            c.to_bigint().expect("residue").is_multiple_of(&d)
        }
    })
}

/// Membership in the Baxter ideal generated by `ideal`.
pub fn baxter_ideal_member(a: &ShuffleElement, ideal: &IdealSpec) -> Result<bool> {
    match ideal {
        IdealSpec::VariableGenerated(vars) => {
            if let Some(v) = vars.iter().find(|v| !a.context().has_variable(v)) {
                return Err(Error::UnknownVariable(v.clone()));
            }
            Ok(a.terms().all(|(w, _)| word_hits(w, vars)))
        }
        IdealSpec::ScalarGenerated(g) => {
            if g.ring() != a.context().ring() {
                return Err(Error::RingMismatch { left: a.context().ring(), right: g.ring() });
            }
            for (_, c) in a.terms() {
                if !scalar_divides(g, c)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The context of Ш_{ℤ/m}(X) obtained by reducing an integer context.
pub fn reduced_mod_context(ctx: &BaxterContext, m: u64) -> Result<Arc<BaxterContext>> {
    if ctx.ring() != Ring::Integers {
        return Err(Error::Precondition(format!("reduction mod {m} needs an integer context, got {}", ctx.ring())));
    }
    BaxterContext::new(Ring::integers_mod(m)?, ctx.lambda().reduce_mod(m)?, ctx.variables())
}

/// Coefficientwise reduction Ш_ℤ(X) → Ш_{ℤ/m}(X).
pub fn quotient_reduce_mod(a: &ShuffleElement, m: u64) -> Result<ShuffleElement> {
    let target = reduced_mod_context(a.context(), m)?;
    a.map_into(&target, |w, c| Ok(Some((w.clone(), c.reduce_mod(m)?))))
}

/// The context of Ш_C(X∖S).
pub fn reduced_vars_context(ctx: &BaxterContext, killed: &BTreeSet<String>) -> Result<Arc<BaxterContext>> {
    if let Some(v) = killed.iter().find(|v| !ctx.has_variable(v)) {
        return Err(Error::UnknownVariable(v.clone()));
    }
    let keep: Vec<&String> = ctx.variables().iter().filter(|v| !killed.contains(*v)).collect();
    BaxterContext::new(ctx.ring(), ctx.lambda().clone(), &keep)
}

/// Ш_C(X) → Ш_C(X∖S) induced by C[X] → C[X]/(S) ≅ C[X∖S]: words with a
/// factor divisible by a variable of S die, the rest are kept as they are.
pub fn quotient_reduce_vars(a: &ShuffleElement, killed: &BTreeSet<String>) -> Result<ShuffleElement> {
    let target = reduced_vars_context(a.context(), killed)?;
    a.map_into(&target, |w, c| Ok((!word_hits(w, killed)).then(|| (w.clone(), c.clone()))))
}

/// Scalar ideal membership phrased through the λ-adic valuation, for ℤ with
/// prime λ: an element lies in λ·Ш iff its valuation is at least one.
pub fn in_lambda_ideal_by_valuation(a: &ShuffleElement) -> Result<bool> {
    Ok(a.lambda_adic_valuation()? >= crate::coeff::Valuation::Finite(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Polynomial};

    fn ctx(ring: Ring, lambda: i64) -> Arc<BaxterContext> {
        BaxterContext::with_int_lambda(ring, lambda, &["x", "y", "z"]).unwrap()
    }

    fn word(ctx: &Arc<BaxterContext>, letters: &[&str], c: i64) -> ShuffleElement {
        let factors = letters.iter().map(|l| if *l == "1" { Monomial::one() } else { Monomial::var(l) }).collect();
        ShuffleElement::from_word(ctx, TensorWord::new(factors).unwrap(), ctx.ring().from_i64(c)).unwrap()
    }

    #[test]
    fn variable_membership() {
        let c = ctx(Ring::Integers, 1);
        let ix = IdealSpec::variables(["x"]).unwrap();
        assert!(baxter_ideal_member(&word(&c, &["x", "y"], 1), &ix).unwrap());
        assert!(!baxter_ideal_member(&word(&c, &["1", "1"], 1), &ix).unwrap());
        assert!(baxter_ideal_member(&ShuffleElement::zero(&c), &ix).unwrap());
        let bad = IdealSpec::variables(["w"]).unwrap();
        assert!(baxter_ideal_member(&word(&c, &["x"], 1), &bad).is_err());
        assert!(IdealSpec::variables(Vec::<String>::new()).is_err());
    }

    #[test]
    fn scalar_membership() {
        let c = ctx(Ring::Integers, 2);
        let a = word(&c, &["1", "x"], 2).add(&word(&c, &["y"], 4)).unwrap();
        let two = IdealSpec::scalar(c.ring().from_i64(2)).unwrap();
        assert!(baxter_ideal_member(&a, &two).unwrap());
        assert!(in_lambda_ideal_by_valuation(&a).unwrap());
        assert!(!baxter_ideal_member(&a.add(&word(&c, &["z"], 3)).unwrap(), &two).unwrap());
        assert!(IdealSpec::scalar(c.ring().zero()).is_err());

        let q = ctx(Ring::Rationals, 1);
        let spec = IdealSpec::scalar(q.ring().from_i64(2)).unwrap();
        assert!(spec.triviality_warning().is_some());
        assert!(baxter_ideal_member(&word(&q, &["x"], 5), &spec).unwrap());

        let z9 = ctx(Ring::IntegersMod(9), 1);
        let three = IdealSpec::scalar(z9.ring().from_i64(6)).unwrap();
        assert!(baxter_ideal_member(&word(&z9, &["x"], 3), &three).unwrap());
        assert!(!baxter_ideal_member(&word(&z9, &["x"], 4), &three).unwrap());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(
            IdealSpec::parse(Ring::Integers, "x, y").unwrap(),
            IdealSpec::variables(["x", "y"]).unwrap()
        );
        assert_eq!(
            IdealSpec::parse(Ring::Integers, "scalar:2").unwrap(),
            IdealSpec::scalar(Ring::Integers.from_i64(2)).unwrap()
        );
        assert!(IdealSpec::parse(Ring::Integers, "scalar:0").is_err());
    }

    #[test]
    fn reductions() {
        let c = ctx(Ring::Integers, 4);
        let a = word(&c, &["1", "1"], 3);
        assert!(quotient_reduce_mod(&a, 3).unwrap().is_zero());
        let red = quotient_reduce_mod(&word(&c, &["x"], 5), 3).unwrap();
        assert_eq!(red.context().lambda(), &Ring::IntegersMod(3).one());
        assert_eq!(red.to_string(), "2*T(x)");

        let b = word(&c, &["x", "y"], 1).add(&word(&c, &["1", "y"], 1)).unwrap();
        let killed: BTreeSet<String> = ["x".to_string()].into();
        let r = quotient_reduce_vars(&b, &killed).unwrap();
        assert_eq!(r.to_string(), "T(1,y)");
        assert_eq!(r.context().variables(), ["y", "z"]);
        let xy = Polynomial::var(c.ring(), "x");
        assert!(quotient_reduce_vars(&ShuffleElement::from_polynomial(&c, &xy).unwrap(), &killed).unwrap().is_zero());
        assert!(quotient_reduce_mod(&ShuffleElement::one(&ctx(Ring::Rationals, 1)), 3).is_err());
    }
}

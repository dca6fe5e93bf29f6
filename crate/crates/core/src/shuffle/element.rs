use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use super::product::{accumulate, mix_tails};
use super::{BaxterContext, TensorWord};
use crate::coeff::{Coefficient, Valuation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// A finite combination of tensor words with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct ShuffleElement {
    ctx: Arc<BaxterContext>,
    terms: BTreeMap<TensorWord, Coefficient>,
}

impl PartialEq for ShuffleElement {
    fn eq(&self, other: &ShuffleElement) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for ShuffleElement {}

impl ShuffleElement {
    pub fn zero(ctx: &Arc<BaxterContext>) -> ShuffleElement {
        ShuffleElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// The algebra unit, the degree-0 word `1`.
    pub fn one(ctx: &Arc<BaxterContext>) -> ShuffleElement {
        ShuffleElement::scalar(ctx, ctx.ring().one())
    }

    pub fn scalar(ctx: &Arc<BaxterContext>, c: Coefficient) -> ShuffleElement {
        ShuffleElement::from_map_unchecked(ctx.clone(), [(TensorWord::unit(0), c)].into_iter().collect())
    }

    pub fn from_int(ctx: &Arc<BaxterContext>, n: i64) -> ShuffleElement {
        ShuffleElement::scalar(ctx, ctx.ring().from_i64(n))
    }

    /// `c · 1^{⊗(degree+1)}`.
    pub fn unit_word(ctx: &Arc<BaxterContext>, degree: usize, c: Coefficient) -> ShuffleElement {
        ShuffleElement::from_map_unchecked(ctx.clone(), [(TensorWord::unit(degree), c)].into_iter().collect())
    }

    pub fn from_word(ctx: &Arc<BaxterContext>, word: TensorWord, c: Coefficient) -> Result<ShuffleElement> {
        if c.ring() != ctx.ring() {
            return Err(Error::RingMismatch { left: ctx.ring(), right: c.ring() });
        }
        for m in word.factors() {
            ctx.check_monomial(m)?;
        }
        Ok(ShuffleElement::from_map_unchecked(ctx.clone(), [(word, c)].into_iter().collect()))
    }

    /// A degree-0 element from a polynomial of A = C[X].
    pub fn from_polynomial(ctx: &Arc<BaxterContext>, p: &Polynomial) -> Result<ShuffleElement> {
        ShuffleElement::from_tensor(ctx, std::slice::from_ref(p))
    }

    /// The pure tensor `p0 ⊗ … ⊗ pn` of polynomials, expanded multilinearly
    /// into monomial words.
    pub fn from_tensor(ctx: &Arc<BaxterContext>, factors: &[Polynomial]) -> Result<ShuffleElement> {
        if factors.is_empty() {
            return Err(Error::Precondition("tensor words have at least one factor".into()));
        }
        let mut partial: Vec<(Vec<Monomial>, Coefficient)> = vec![(Vec::new(), ctx.ring().one())];
        for p in factors {
            if p.ring() != ctx.ring() {
                return Err(Error::RingMismatch { left: ctx.ring(), right: p.ring() });
            }
            let mut next = Vec::with_capacity(partial.len() * p.len());
            for (m, c) in p.terms() {
                ctx.check_monomial(m)?;
                for (w, d) in &partial {
                    let mut w = w.clone();
                    w.push(m.clone());
                    next.push((w, d * c));
                }
            }
            partial = next;
        }
        let mut terms = BTreeMap::new();
        for (w, c) in partial {
            accumulate(&mut terms, TensorWord::from_vec_unchecked(w), c);
        }
        Ok(ShuffleElement { ctx: ctx.clone(), terms })
    }

    pub(crate) fn from_map_unchecked(ctx: Arc<BaxterContext>, mut terms: BTreeMap<TensorWord, Coefficient>) -> ShuffleElement {
        terms.retain(|_, c| !c.is_zero());
        ShuffleElement { ctx, terms }
    }

    /// Build from `(word, coefficient)` pairs, validating variables and ring.
    pub fn from_terms<I>(ctx: &Arc<BaxterContext>, terms: I) -> Result<ShuffleElement>
    where
        I: IntoIterator<Item = (TensorWord, Coefficient)>,
    {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if c.ring() != ctx.ring() {
                return Err(Error::RingMismatch { left: ctx.ring(), right: c.ring() });
            }
            for m in w.factors() {
                ctx.check_monomial(m)?;
            }
            accumulate(&mut map, w, c);
        }
        Ok(ShuffleElement { ctx: ctx.clone(), terms: map })
    }

    pub fn context(&self) -> &Arc<BaxterContext> {
        &self.ctx
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

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &TensorWord) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ctx.ring().zero())
    }

    /// Largest degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(TensorWord::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(TensorWord::degree).min()
    }

    fn check(&self, other: &ShuffleElement) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(ShuffleElement { ctx: self.ctx.clone(), terms })
    }

    pub fn neg(&self) -> ShuffleElement {
        ShuffleElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Result<ShuffleElement> {
        if c.ring() != self.ctx.ring() {
            return Err(Error::RingMismatch { left: self.ctx.ring(), right: c.ring() });
        }
        let terms = self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect();
        Ok(ShuffleElement::from_map_unchecked(self.ctx.clone(), terms))
    }

    pub fn scale_int(&self, n: i64) -> ShuffleElement {
        self.scale(&self.ctx.ring().from_bigint(&BigInt::from(n))).expect("same ring")
    }

    /// The mixed shuffle product, via the quasi-shuffle recursion on tails.
    pub fn mul(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        self.mul_bounded(other, None)
    }

    /// The product with every word of degree above `max_degree` discarded.
    /// Equal to truncating `self.mul(other)`, but cheaper.
    pub fn mul_truncated(&self, other: &ShuffleElement, max_degree: usize) -> Result<ShuffleElement> {
        self.mul_bounded(other, Some(max_degree))
    }

    fn mul_bounded(&self, other: &ShuffleElement, max_degree: Option<usize>) -> Result<ShuffleElement> {
        self.check(other)?;
        let lambda = self.ctx.lambda();
        let mut terms = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if let Some(d) = max_degree {
                    // the product of degrees m, n starts in degree max(m, n)
                    if wa.degree().max(wb.degree()) > d {
                        continue;
                    }
                }
                let c = ca * cb;
                let head = wa.head().mul(wb.head());
                for (tail, k) in mix_tails(wa.tail(), wb.tail(), lambda, max_degree) {
                    let mut word = Vec::with_capacity(tail.len() + 1);
                    word.push(head.clone());
                    word.extend(tail);
                    accumulate(&mut terms, TensorWord::from_vec_unchecked(word), &c * &k);
                }
            }
        }
        Ok(ShuffleElement { ctx: self.ctx.clone(), terms })
    }

    /// `a^k` by repeated multiplication; `a^0` is the unit.
    pub fn pow(&self, k: u32) -> ShuffleElement {
        let mut acc = ShuffleElement::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// The Baxter operator: prepend the unit monomial to every word.
    pub fn baxter_p(&self) -> ShuffleElement {
        ShuffleElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.prepend_unit(), c.clone())).collect(),
        }
    }

    /// `P_x^n(1)` where `P_x(y) = P(x ⋄ y)`.
    pub fn p_sub_x_iterate(&self, n: usize) -> ShuffleElement {
        let mut y = ShuffleElement::one(&self.ctx);
        for _ in 0..n {
            y = self.mul(&y).expect("same context").baxter_p();
        }
        y
    }

    /// The minimum λ-adic valuation over the coefficients.
    pub fn lambda_adic_valuation(&self) -> Result<Valuation> {
        let lambda = self.ctx.lambda();
        // validate the ring and λ even for the zero element
        self.ctx.ring().zero().lambda_adic_valuation(lambda)?;
        let mut best = Valuation::Infinite;
        for c in self.terms.values() {
            best = best.min(c.lambda_adic_valuation(lambda)?);
        }
        Ok(best)
    }

    /// Split by degree; the pieces sum back to `self`.
    pub fn degree_components(&self) -> BTreeMap<usize, ShuffleElement> {
        let mut out: BTreeMap<usize, BTreeMap<TensorWord, Coefficient>> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree()).or_default().insert(w.clone(), c.clone());
        }
        out.into_iter()
            .map(|(d, terms)| (d, ShuffleElement { ctx: self.ctx.clone(), terms }))
            .collect()
    }

    pub fn component(&self, degree: usize) -> ShuffleElement {
        self.filter_words(|w| w.degree() == degree)
    }

    /// Drop every word of degree above `max_degree`.
    pub fn truncate_degree(&self, max_degree: usize) -> ShuffleElement {
        self.filter_words(|w| w.degree() <= max_degree)
    }

    pub(crate) fn filter_words<F: Fn(&TensorWord) -> bool>(&self, keep: F) -> ShuffleElement {
        ShuffleElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Map words and coefficients into another context, dropping words sent to
    /// `None` and combining collisions.
    pub(crate) fn map_into<F>(&self, ctx: &Arc<BaxterContext>, mut f: F) -> Result<ShuffleElement>
    where
        F: FnMut(&TensorWord, &Coefficient) -> Result<Option<(TensorWord, Coefficient)>>,
    {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            if let Some((w2, c2)) = f(w, c)? {
                accumulate(&mut terms, w2, c2);
            }
        }
        Ok(ShuffleElement { ctx: ctx.clone(), terms })
    }

    pub fn to_json(&self) -> Json {
        Json::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!({ "coeff": c.to_string(), "word": w.to_json() }))
                .collect(),
        )
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<&TensorWord> = self.terms.keys().collect();
        crate::poly::write_signed_terms(f, self.terms.values(), |f, k| write!(f, "{}", words[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;

    fn ctx(lambda: i64) -> Arc<BaxterContext> {
        BaxterContext::with_int_lambda(Ring::Integers, lambda, &["x", "y", "z"]).unwrap()
    }

    fn word(ctx: &Arc<BaxterContext>, letters: &[&str]) -> ShuffleElement {
        let factors: Vec<Monomial> = letters
            .iter()
            .map(|l| if *l == "1" { Monomial::one() } else { Monomial::var(l) })
            .collect();
        ShuffleElement::from_word(ctx, TensorWord::new(factors).unwrap(), ctx.ring().one()).unwrap()
    }

    #[test]
    fn unit_word_square() {
        let c = ctx(3);
        let u1 = ShuffleElement::unit_word(&c, 1, c.ring().one());
        let expect = ShuffleElement::unit_word(&c, 2, c.ring().from_i64(2))
            .add(&ShuffleElement::unit_word(&c, 1, c.ring().from_i64(3)))
            .unwrap();
        let sq = u1.mul(&u1).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.to_string(), "3*T(1,1) + 2*T(1,1,1)");
    }

    #[test]
    fn degree_zero_right_factor_multiplies_head() {
        let c = ctx(5);
        let a = word(&c, &["x", "z"]);
        let b = word(&c, &["y"]);
        let expect = ShuffleElement::from_word(
            &c,
            TensorWord::new(vec![Monomial::var("x").mul(&Monomial::var("y")), Monomial::var("z")]).unwrap(),
            c.ring().one(),
        )
        .unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
        assert_eq!(word(&c, &["x"]).mul(&b).unwrap().to_string(), "T(x*y)");
    }

    #[test]
    fn baxter_operator_is_prepend() {
        let c = ctx(1);
        assert_eq!(ShuffleElement::one(&c).baxter_p(), word(&c, &["1", "1"]));
        let a = word(&c, &["x", "y"]).scale_int(2).add(&word(&c, &["z"]).scale_int(3)).unwrap();
        assert_eq!(a.baxter_p().to_string(), "3*T(1,z) + 2*T(1,x,y)");
    }

    #[test]
    fn p_sub_x_and_powers() {
        let c = ctx(0);
        let one = ShuffleElement::one(&c);
        assert_eq!(word(&c, &["x"]).p_sub_x_iterate(0), one);
        assert_eq!(one.p_sub_x_iterate(2), ShuffleElement::unit_word(&c, 2, c.ring().one()));
        let x = word(&c, &["x", "y"]);
        assert_eq!(x.p_sub_x_iterate(1), x.baxter_p());
        assert_eq!(x.pow(1), x);
        assert_eq!(x.pow(2), x.mul(&x).unwrap());
        let u1 = one.baxter_p();
        assert_eq!(u1.pow(3), ShuffleElement::unit_word(&c, 3, c.ring().from_i64(6)));
    }

    #[test]
    fn valuation_of_elements() {
        let c = ctx(2);
        let a = word(&c, &["1", "x"]).scale_int(4).add(&word(&c, &["y"]).scale_int(2)).unwrap();
        assert_eq!(a.lambda_adic_valuation().unwrap(), Valuation::Finite(1));
        assert_eq!(ShuffleElement::zero(&c).lambda_adic_valuation().unwrap(), Valuation::Infinite);
        let b = ShuffleElement::unit_word(&c, 1, c.ring().from_i64(8));
        assert_eq!(b.lambda_adic_valuation().unwrap(), Valuation::Finite(3));
        assert!(ShuffleElement::zero(&ctx(4)).lambda_adic_valuation().is_err());
    }

    #[test]
    fn degree_components_resum() {
        let c = ctx(1);
        let a = word(&c, &["x"]).add(&word(&c, &["1", "y"])).unwrap();
        let comps = a.degree_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&0], word(&c, &["x"]));
        assert_eq!(comps[&1], word(&c, &["1", "y"]));
        assert!(ShuffleElement::zero(&c).degree_components().is_empty());
    }

    #[test]
    fn from_tensor_expands_multilinearly() {
        let c = ctx(1);
        let r = c.ring();
        let p = Polynomial::var(r, "x").add(&Polynomial::one(r)).unwrap();
        let q = Polynomial::var(r, "y").scale(&r.from_i64(2)).unwrap();
        let t = ShuffleElement::from_tensor(&c, &[p, q]).unwrap();
        assert_eq!(t.to_string(), "2*T(1,y) + 2*T(x,y)");
        let bad = Polynomial::var(r, "w");
        assert!(matches!(ShuffleElement::from_polynomial(&c, &bad), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn context_mismatch() {
        let a = ShuffleElement::one(&ctx(1));
        let b = ShuffleElement::one(&ctx(2));
        assert_eq!(a.mul(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.add(&b).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn truncated_product_matches_full() {
        let c = ctx(2);
        let a = word(&c, &["x", "1", "y"]).add(&word(&c, &["1", "z"])).unwrap();
        let b = word(&c, &["y", "x", "x", "1"]).add(&word(&c, &["z"])).unwrap();
        let full = a.mul(&b).unwrap();
        for d in 0..7 {
            assert_eq!(a.mul_truncated(&b, d).unwrap(), full.truncate_degree(d));
        }
    }
}

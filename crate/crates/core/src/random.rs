//! Seeded generators of small random elements, shared by the verifier,
//! the property tests and the benchmarks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coefficient, Ring};
use crate::poly::Monomial;
use crate::shuffle::{BaxterContext, ShuffleElement, TensorWord};

pub const DEFAULT_SEED: u64 = 0x5eed_ba57;

/// Size limits for generated elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_terms: usize,
    /// Longest tensor word, counted in factors.
    pub max_word_len: usize,
    pub max_exponent: u32,
    /// Integer numerators are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape { max_terms: 3, max_word_len: 3, max_exponent: 2, coeff_bound: 5 }
    }
}

pub struct ElementSampler {
    rng: ChaCha8Rng,
    pub shape: Shape,
}

impl ElementSampler {
    pub fn new(seed: u64) -> ElementSampler {
        ElementSampler::with_shape(seed, Shape::default())
    }

    pub fn with_shape(seed: u64, shape: Shape) -> ElementSampler {
        ElementSampler { rng: ChaCha8Rng::seed_from_u64(seed), shape }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self, ring: Ring) -> Coefficient {
        let b = self.shape.coeff_bound.max(1);
        match ring {
            Ring::Integers => ring.from_i64(self.rng.gen_range(-b..=b)),
            Ring::Rationals => {
                let n = BigInt::from(self.rng.gen_range(-b..=b));
                let d = BigInt::from(self.rng.gen_range(1..=4));
                ring.from_ratio(&n, &d).expect("nonzero denominator")
            }
            Ring::IntegersMod(m) => ring.from_i64(self.rng.gen_range(0..m) as i64),
        }
    }

    pub fn nonzero_coefficient(&mut self, ring: Ring) -> Coefficient {
        loop {
            let c = self.coefficient(ring);
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn monomial(&mut self, vars: &[String]) -> Monomial {
        if vars.is_empty() {
            return Monomial::one();
        }
        let max = self.shape.max_exponent;
        let pairs: Vec<(String, u32)> = vars.iter().map(|v| (v.clone(), self.rng.gen_range(0..=max))).collect();
        Monomial::from_pairs(pairs)
    }

    pub fn word(&mut self, vars: &[String]) -> TensorWord {
        let len = self.rng.gen_range(1..=self.shape.max_word_len.max(1));
        TensorWord::new((0..len).map(|_| self.monomial(vars)).collect()).expect("nonempty")
    }

    /// Up to `max_terms` random words with random coefficients; may be zero.
    pub fn element(&mut self, ctx: &Arc<BaxterContext>) -> ShuffleElement {
        let n = self.rng.gen_range(0..=self.shape.max_terms);
        let terms: Vec<(TensorWord, Coefficient)> =
            (0..n).map(|_| (self.word(ctx.variables()), self.coefficient(ctx.ring()))).collect();
        ShuffleElement::from_terms(ctx, terms).expect("words use context variables")
    }

    pub fn nonzero_element(&mut self, ctx: &Arc<BaxterContext>) -> ShuffleElement {
        loop {
            let a = self.element(ctx);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Scalar combination of unit words only, for checks on constants.
    pub fn unit_combination(&mut self, ctx: &Arc<BaxterContext>, max_degree: usize) -> ShuffleElement {
        let ring = ctx.ring();
        let terms: Vec<(TensorWord, Coefficient)> =
            (0..=max_degree).map(|d| (TensorWord::unit(d), self.coefficient(ring))).collect();
        ShuffleElement::from_terms(ctx, terms).expect("unit words")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_bounded() {
        let ctx = BaxterContext::with_int_lambda(Ring::Rationals, 1, &["x", "y"]).unwrap();
        let mut a = ElementSampler::new(7);
        let mut b = ElementSampler::new(7);
        for _ in 0..50 {
            let (ea, eb) = (a.element(&ctx), b.element(&ctx));
            assert_eq!(ea, eb);
            assert!(ea.len() <= 3);
            assert!(ea.max_degree().unwrap_or(0) <= 2);
        }
        let z5 = Ring::IntegersMod(5);
        assert!(!a.nonzero_coefficient(z5).is_zero());
    }
}

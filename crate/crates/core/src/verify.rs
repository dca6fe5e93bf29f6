//! Executable witnesses: zero divisors, nilpotents, the weight identity and
//! the structural checks behind them.
//!
//! Every check reduces to "this residual is exactly zero". A report passes
//! only when all of its residuals vanished; otherwise `detail` holds the
//! first residual that did not.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::coeff::{is_prime_u64, Coefficient, Ring};
use crate::error::{Error, Result};
use crate::ideals::{baxter_ideal_member, in_lambda_ideal_by_valuation, quotient_reduce_mod, quotient_reduce_vars, IdealSpec};
use crate::poly::{Monomial, Polynomial};
use crate::random::{ElementSampler, Shape};
use crate::series::CompleteElement;
use crate::shuffle::{mixable_shuffle_count, shuffle_product_by_enumeration, enumerate_mixable_shuffles};
use crate::shuffle::{BaxterContext, ShuffleElement, TensorWord};
use crate::standard::{phi, phi_complete, phi_constants_closed_form, SequenceElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    BaxterIdentity,
    UnitProduct,
    OracleEquivalence,
    CharpZeroDivisor,
    Weight0Nilpotent,
    NilradicalMembership,
    CompleteZeroDivisor,
    IntegerLambda2,
    LemmaPower,
    PhiClosedForm,
    PhiHomomorphism,
    IdealQuotient,
    DomainProbe,
    Reducedness,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub claim: Claim,
    pub context: String,
    /// The constructed inputs in expression syntax, re-parseable in `context`.
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    /// `0` on pass, otherwise the first nonzero residual.
    pub detail: String,
    /// Number of residuals that were computed.
    pub checks: usize,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{v} {} [{}] checks={}", self.claim, self.context, self.checks)?;
        if !self.passed() {
            write!(f, " residual: {}", self.detail)?;
        }
        Ok(())
    }
}

/// Accumulates residuals for one report.
struct Tally {
    claim: Claim,
    context: String,
    inputs: Vec<String>,
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(claim: Claim, context: impl fmt::Display) -> Tally {
        Tally { claim, context: context.to_string(), inputs: Vec::new(), checks: 0, failure: None }
    }

    fn input(&mut self, s: impl fmt::Display) {
        self.inputs.push(s.to_string());
    }

    fn zero(&mut self, label: &str, residual: &ShuffleElement) {
        self.expect(residual.is_zero(), || format!("{label}: {residual}"));
    }

    fn expect(&mut self, ok: bool, residual: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(residual());
        }
    }

    fn finish(self) -> WitnessReport {
        let verdict = if self.failure.is_none() { Verdict::Pass } else { Verdict::Fail };
        WitnessReport {
            claim: self.claim,
            context: self.context,
            inputs: self.inputs,
            verdict,
            detail: self.failure.unwrap_or_else(|| "0".into()),
            checks: self.checks,
        }
    }
}

fn seq_residual(a: &SequenceElement, b: &SequenceElement) -> Option<String> {
    let d = a.sub(b).expect("same ring");
    (!d.is_zero()).then(|| d.to_string().replace('\n', "; "))
}

fn unit(ctx: &Arc<BaxterContext>, degree: usize) -> ShuffleElement {
    ShuffleElement::unit_word(ctx, degree, ctx.ring().one())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// P(a)P(b) − P(aP(b)) − P(bP(a)) − λP(ab).
pub fn baxter_residual(a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement> {
    let lam = a.context().lambda().clone();
    let lhs = a.baxter_p().mul(&b.baxter_p())?;
    let r1 = a.mul(&b.baxter_p())?.baxter_p();
    let r2 = b.mul(&a.baxter_p())?.baxter_p();
    let r3 = a.mul(b)?.baxter_p().scale(&lam)?;
    lhs.sub(&r1)?.sub(&r2)?.sub(&r3)
}

pub fn baxter_identity_check(ctx: &Arc<BaxterContext>, trials: usize, seed: u64) -> Result<WitnessReport> {
    let mut rng = ElementSampler::new(seed);
    let mut t = Tally::new(Claim::BaxterIdentity, ctx);
    for _ in 0..trials {
        let (a, b) = (rng.element(ctx), rng.element(ctx));
        t.zero(&format!("a = {a}, b = {b}"), &baxter_residual(&a, &b)?);
        t.input(a);
        t.input(b);
    }
    Ok(t.finish())
}

/// `Σ_k C(m+n−k, n) C(n, k) λ^k U(m+n−k)`, the product of two unit words.
pub fn unit_product_closed_form(ctx: &Arc<BaxterContext>, m: usize, n: usize) -> Result<ShuffleElement> {
    let mut acc = ShuffleElement::zero(ctx);
    for k in 0..=m.min(n) {
        let c = binomial(BigInt::from(m + n - k), BigInt::from(n)) * binomial(BigInt::from(n), BigInt::from(k));
        let coeff = ctx.lambda().pow(k as u64).scale_int(&c);
        acc = acc.add(&ShuffleElement::unit_word(ctx, m + n - k, coeff))?;
    }
    Ok(acc)
}

pub fn unit_product_check(ctx: &Arc<BaxterContext>, max_degree: usize) -> Result<WitnessReport> {
    let mut t = Tally::new(Claim::UnitProduct, ctx);
    for m in 0..=max_degree {
        for n in 0..=max_degree {
            let r = unit(ctx, m).mul(&unit(ctx, n))?.sub(&unit_product_closed_form(ctx, m, n)?)?;
            t.zero(&format!("U({m})*U({n})"), &r);
        }
    }
    t.input(format!("U(m)*U(n), 0 <= m, n <= {max_degree}"));
    Ok(t.finish())
}

fn delannoy(m: usize, n: usize) -> BigInt {
    (0..=m.min(n))
        .map(|k| (binomial(BigInt::from(m), BigInt::from(k)) * binomial(BigInt::from(n), BigInt::from(k))) << k)
        .sum()
}

/// The recursive product against the explicit enumeration of mixable
/// shuffles, on words of distinct variables (the universal case), plus the
/// shuffle counts against the Delannoy numbers.
pub fn oracle_equivalence_check(ring: Ring, lambda: i64, max_degree: usize, max_count: usize) -> Result<WitnessReport> {
    let vars: Vec<String> = (0..=max_degree).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    let ctx = BaxterContext::with_int_lambda(ring, lambda, &vars)?;
    let mut t = Tally::new(Claim::OracleEquivalence, &ctx);
    let word = |p: &str, m: usize| {
        let w = TensorWord::new((0..=m).map(|i| Monomial::var(&format!("{p}{i}"))).collect()).expect("nonempty");
        ShuffleElement::from_word(&ctx, w, ring.one())
    };
    for m in 0..=max_degree {
        for n in 0..=max_degree {
            let (a, b) = (word("a", m)?, word("b", n)?);
            let r = a.mul(&b)?.sub(&shuffle_product_by_enumeration(&a, &b)?)?;
            t.zero(&format!("{a} * {b}"), &r);
        }
    }
    for m in 0..=max_count {
        for n in 0..=max_count {
            let counted = mixable_shuffle_count(m, n);
            let listed = enumerate_mixable_shuffles(m, n).len();
            let expected = delannoy(m, n);
            t.expect(BigInt::from(counted.clone()) == expected && BigInt::from(listed) == expected, || {
                format!("N({m},{n}): recursion {counted}, enumeration {listed}, expected {expected}")
            });
        }
    }
    t.input(format!("generic words of degree <= {max_degree}; counts for m, n <= {max_count}"));
    Ok(t.finish())
}

fn context_mod(p: u64, lambda: &Coefficient) -> Result<Arc<BaxterContext>> {
    let ring = Ring::integers_mod(p)?;
    let lam = if lambda.ring() == ring { lambda.clone() } else { ring.from_bigint(&lambda.to_bigint().ok_or_else(|| {
        Error::Precondition(format!("λ = {lambda} has no image in {ring}"))
    })?) };
    BaxterContext::new(ring, lam, &[] as &[&str])
}

/// `Π_{i<p} (iλ + U(1)) = 0` in Ш over ℤ/p.
pub fn charp_zero_divisor_witness(p: u64, lambda: &Coefficient) -> Result<WitnessReport> {
    if !is_prime_u64(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let ctx = context_mod(p, lambda)?;
    if ctx.lambda().is_zero() {
        return Err(Error::Precondition(format!("λ must be nonzero in {}", ctx.ring())));
    }
    let mut t = Tally::new(Claim::CharpZeroDivisor, &ctx);
    let len = 3 * p as usize;
    let mut product = ShuffleElement::one(&ctx);
    let mut phi_product = SequenceElement::one(ctx.ring(), len);
    for i in 0..p {
        let shift = ctx.lambda().scale_int(&BigInt::from(i));
        let f = ShuffleElement::scalar(&ctx, shift).add(&unit(&ctx, 1))?;
        t.expect(!f.is_zero(), || format!("factor {i} is zero"));
        product = product.mul(&f)?;
        phi_product = phi_product.mul(&phi(&f, len))?;
        t.input(&f);
    }
    t.zero("product", &product);
    t.expect(phi_product.is_zero(), || format!("entrywise image: {}", phi_product.to_string().replace('\n', "; ")));
    Ok(t.finish())
}

fn weight0_context(q: u64) -> Result<Arc<BaxterContext>> {
    BaxterContext::with_int_lambda(Ring::integers_mod(q)?, 0, &[] as &[&str])
}

/// `(1⊗1)^k = k!·U(k)` for k < q and `(1⊗1)^q = 0` over ℤ/q at weight zero.
pub fn weight0_nilpotent_witness(q: u64) -> Result<WitnessReport> {
    let ctx = weight0_context(q)?;
    let mut t = Tally::new(Claim::Weight0Nilpotent, &ctx);
    let e = unit(&ctx, 1);
    t.input(format!("U(1)^{q}"));
    let mut power = ShuffleElement::one(&ctx);
    for k in 1..=q as usize {
        power = power.mul(&e)?;
        let closed = ShuffleElement::unit_word(&ctx, k, ctx.ring().from_bigint(&factorial(k)));
        t.zero(&format!("U(1)^{k} - {k}!*U({k})"), &power.sub(&closed)?);
    }
    t.zero(&format!("U(1)^{q}"), &power);
    Ok(t.finish())
}

/// The degree-zero component, read as a polynomial of A.
pub fn degree_zero_part(a: &ShuffleElement) -> Polynomial {
    let terms = a.component(0).terms().map(|(w, c)| (c.clone(), w.head().clone())).collect::<Vec<_>>();
    Polynomial::from_terms(a.context().ring(), terms).expect("same ring")
}

/// At weight zero in positive characteristic the nilradical is the
/// nilradical of A plus everything of positive degree.
pub fn nilradical_member_weight0(a: &ShuffleElement) -> Result<bool> {
    let ctx = a.context();
    if ctx.ring().characteristic() == 0 || !ctx.lambda().is_zero() {
        return Err(Error::Precondition(format!("needs positive characteristic and λ = 0, got {ctx}")));
    }
    Ok(degree_zero_part(a).is_nilpotent())
}

/// Smallest k ≤ `max` with `a^k = 0`, by direct multiplication.
pub fn nilpotency_index(a: &ShuffleElement, max: u32) -> Result<Option<u32>> {
    let mut power = a.clone();
    for k in 1..=max {
        if power.is_zero() {
            return Ok(Some(k));
        }
        if k < max {
            power = power.mul(a)?;
        }
    }
    Ok(None)
}

/// Power bound for the direct nilpotency oracle.
pub const NILPOTENCY_PROBE: u32 = 8;

pub fn nilradical_agreement_check(m: u64, trials: usize, seed: u64) -> Result<WitnessReport> {
    let ctx = BaxterContext::with_int_lambda(Ring::integers_mod(m)?, 0, &["x", "y"])?;
    let shape = Shape { max_terms: 3, max_word_len: 2, max_exponent: 1, coeff_bound: 5 };
    let mut rng = ElementSampler::with_shape(seed, shape);
    let mut t = Tally::new(Claim::NilradicalMembership, &ctx);
    for _ in 0..trials {
        let a = rng.element(&ctx);
        let member = nilradical_member_weight0(&a)?;
        let direct = nilpotency_index(&a, NILPOTENCY_PROBE)?.is_some();
        t.expect(member == direct, || format!("{a}: membership {member}, direct powers {direct}"));
        t.input(a);
    }
    Ok(t.finish())
}

/// `U(1) * Σ (−λ⁻¹)ⁿ U(n) = 0` in the completion, at precision N.
pub fn complete_zero_divisor_witness(ctx: &Arc<BaxterContext>, precision: usize) -> Result<WitnessReport> {
    if !ctx.lambda().is_unit() {
        return Err(Error::Precondition(format!("λ = {} is not a unit in {}", ctx.lambda(), ctx.ring())));
    }
    let c = -&ctx.lambda().inverse()?;
    let x = CompleteElement::embed(&unit(ctx, 1), precision);
    let y = CompleteElement::geometric_unit_series(ctx, &c, precision)?;
    let mut t = Tally::new(Claim::CompleteZeroDivisor, ctx);
    t.input(x.as_finite());
    t.input(format!("geom({c})"));
    t.expect(!x.is_zero() && !y.is_zero(), || "a factor is zero".into());
    let prod = x.mul(&y)?;
    t.expect(prod.precision() == precision, || format!("precision dropped to {}", prod.precision()));
    t.zero("product", prod.as_finite());
    Ok(t.finish())
}

/// The two series of the weight-2 example over ℤ, at precision N:
/// `x = Σ_{n≥1} (−1)^{n+1} U(n)` and `y = 2 + Σ_{n≥1} (−1)^n U(n)`.
pub fn integer_lambda2_pair(precision: usize) -> Result<(CompleteElement, CompleteElement)> {
    let ctx = BaxterContext::with_int_lambda(Ring::Integers, 2, &[] as &[&str])?;
    let ring = ctx.ring();
    let sign = |n: usize| ring.from_i64(if n.is_multiple_of(2) { 1 } else { -1 });
    let mut x = ShuffleElement::zero(&ctx);
    let mut y = ShuffleElement::from_int(&ctx, 2);
    for n in 1..=precision {
        x = x.add(&ShuffleElement::unit_word(&ctx, n, -&sign(n)))?;
        y = y.add(&ShuffleElement::unit_word(&ctx, n, sign(n)))?;
    }
    Ok((CompleteElement::embed(&x, precision), CompleteElement::embed(&y, precision)))
}

pub fn integer_lambda2_witness(precision: usize) -> Result<WitnessReport> {
    let (x, y) = integer_lambda2_pair(precision)?;
    let ctx = x.context().clone();
    let mut t = Tally::new(Claim::IntegerLambda2, &ctx);
    t.input(x.as_finite());
    t.input(y.as_finite());
    t.zero("x*y", x.mul(&y)?.as_finite());

    // entry k (1-based) of Φ(x) is 2 for even k and 0 for odd k; Φ(y) is the reverse
    let len = precision + 1;
    let (px, py) = (phi_complete(&x, len)?, phi_complete(&y, len)?);
    let two = ctx.ring().from_i64(2);
    let zero = ctx.ring().zero();
    for k in 1..=len {
        let (ex, ey) = if k % 2 == 0 { (&two, &zero) } else { (&zero, &two) };
        t.expect(px.entry(k).as_scalar().as_ref() == Some(ex), || format!("Φ(x) entry {k} = {}", px.entry(k)));
        t.expect(py.entry(k).as_scalar().as_ref() == Some(ey), || format!("Φ(y) entry {k} = {}", py.entry(k)));
    }
    let entrywise = px.mul(&py)?;
    t.expect(entrywise.is_zero(), || format!("Φ(x)Φ(y) = {}", entrywise.to_string().replace('\n', "; ")));

    // the cancellation needs all of x
    let head = CompleteElement::embed(&unit(&ctx, 1), precision);
    t.expect(!head.mul(&y)?.is_zero(), || "U(1)*y vanished".into());
    Ok(t.finish())
}

/// `P_x^n(1)·P_x(1) = (n+1)·P_x^{n+1}(1)` and `P(x)^n = n!·P_x^n(1)` at weight zero.
pub fn lemma_power_check(ctx: &Arc<BaxterContext>, trials: usize, max_n: u32, seed: u64) -> Result<WitnessReport> {
    if !ctx.lambda().is_zero() {
        return Err(Error::Precondition(format!("the power identities need λ = 0, got {}", ctx.lambda())));
    }
    let shape = Shape { max_terms: 2, max_word_len: 2, max_exponent: 1, coeff_bound: 3 };
    let mut rng = ElementSampler::with_shape(seed, shape);
    let mut t = Tally::new(Claim::LemmaPower, ctx);
    let ring = ctx.ring();
    let mut samples = vec![ShuffleElement::one(ctx)];
    samples.extend((0..trials).map(|_| rng.element(ctx)));
    for x in samples {
        let px = x.baxter_p();
        let px1 = x.p_sub_x_iterate(1);
        let mut iterate = ShuffleElement::one(ctx);
        let mut power = ShuffleElement::one(ctx);
        for n in 0..=max_n as usize {
            let next = x.mul(&iterate)?.baxter_p();
            let lhs = iterate.mul(&px1)?;
            let rhs = next.scale(&ring.from_i64(n as i64 + 1))?;
            t.zero(&format!("x = {x}, first identity at n = {n}"), &lhs.sub(&rhs)?);
            let closed = iterate.scale(&ring.from_bigint(&factorial(n)))?;
            t.zero(&format!("x = {x}, second identity at n = {n}"), &power.sub(&closed)?);
            power = power.mul(&px)?;
            iterate = next;
        }
        t.input(x);
    }
    Ok(t.finish())
}

/// Φ against its closed form on scalar combinations of unit words.
pub fn phi_closed_form_check(ctx: &Arc<BaxterContext>, len: usize, seed: u64) -> Result<WitnessReport> {
    let mut rng = ElementSampler::new(seed);
    let mut t = Tally::new(Claim::PhiClosedForm, ctx);
    let ring = ctx.ring();
    let mut samples: Vec<Vec<Coefficient>> = (0..len)
        .map(|i| (0..len).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    samples.extend((0..5).map(|_| (0..len).map(|_| rng.coefficient(ring)).collect()));
    for b in samples {
        let terms = b.iter().enumerate().map(|(i, c)| (TensorWord::unit(i), c.clone()));
        let a = ShuffleElement::from_terms(ctx, terms)?;
        let closed = phi_constants_closed_form(&b, ctx.lambda(), len)?;
        let r = seq_residual(&phi(&a, len), &closed);
        t.expect(r.is_none(), || format!("b = {a}: {}", r.clone().unwrap_or_default()));
        t.input(a);
    }
    Ok(t.finish())
}

/// Φ(ab) = Φ(a)Φ(b) and Φ(P(a)) = P'(Φ(a)) on random pairs.
pub fn phi_homomorphism_check(ctx: &Arc<BaxterContext>, trials: usize, len: usize, seed: u64) -> Result<WitnessReport> {
    let mut rng = ElementSampler::new(seed);
    let mut t = Tally::new(Claim::PhiHomomorphism, ctx);
    for _ in 0..trials {
        let (a, b) = (rng.element(ctx), rng.element(ctx));
        let (fa, fb) = (phi(&a, len), phi(&b, len));
        let r = seq_residual(&phi(&a.mul(&b)?, len), &fa.mul(&fb)?);
        t.expect(r.is_none(), || format!("a = {a}, b = {b}, product: {}", r.clone().unwrap_or_default()));
        let r = seq_residual(&phi(&a.baxter_p(), len), &fa.p_prime(ctx.lambda())?);
        t.expect(r.is_none(), || format!("a = {a}, operator: {}", r.clone().unwrap_or_default()));
        t.input(a);
        t.input(b);
    }
    Ok(t.finish())
}

/// Quotient maps are Baxter homomorphisms, variable-ideal membership is the
/// kernel of the variable quotient, and scalar membership for a prime weight
/// over ℤ is positive valuation.
pub fn ideal_quotient_check(trials: usize, seed: u64) -> Result<WitnessReport> {
    let ctx = BaxterContext::with_int_lambda(Ring::Integers, 3, &["x", "y", "z"])?;
    let mut rng = ElementSampler::new(seed);
    let mut t = Tally::new(Claim::IdealQuotient, &ctx);
    let killed: BTreeSet<String> = ["x".to_string()].into();
    let var_ideal = IdealSpec::VariableGenerated(killed.clone());
    let scalar_ideal = IdealSpec::scalar(ctx.lambda().clone())?;
    let x_letter = ShuffleElement::from_polynomial(&ctx, &Polynomial::var(ctx.ring(), "x"))?;
    for _ in 0..trials {
        let (a, b) = (rng.element(&ctx), rng.element(&ctx));
        for m in [3u64, 4] {
            let red = |e: &ShuffleElement| quotient_reduce_mod(e, m);
            t.zero(&format!("mod {m}: product, a = {a}, b = {b}"), &red(&a.mul(&b)?)?.sub(&red(&a)?.mul(&red(&b)?)?)?);
            t.zero(&format!("mod {m}: operator, a = {a}"), &red(&a.baxter_p())?.sub(&red(&a)?.baxter_p())?);
        }
        let kill = |e: &ShuffleElement| quotient_reduce_vars(e, &killed);
        t.zero(&format!("kill x: product, a = {a}, b = {b}"), &kill(&a.mul(&b)?)?.sub(&kill(&a)?.mul(&kill(&b)?)?)?);
        t.zero(&format!("kill x: operator, a = {a}"), &kill(&a.baxter_p())?.sub(&kill(&a)?.baxter_p())?);
        t.zero(&format!("kill x: sum, a = {a}, b = {b}"), &kill(&a.add(&b)?)?.sub(&kill(&a)?.add(&kill(&b)?)?)?);

        let generated = a.mul(&x_letter)?.add(&b.mul(&x_letter)?.baxter_p())?;
        for e in [&a, &b, &generated] {
            let member = baxter_ideal_member(e, &var_ideal)?;
            let kernel = kill(e)?.is_zero();
            t.expect(member == kernel, || format!("{e}: member {member}, in kernel {kernel}"));
        }
        let closed = baxter_ideal_member(&generated.mul(&b)?, &var_ideal)? && baxter_ideal_member(&generated.baxter_p(), &var_ideal)?;
        t.expect(closed, || format!("ideal not closed at {generated}"));

        for e in [a.clone(), a.scale(ctx.lambda())?] {
            let member = baxter_ideal_member(&e, &scalar_ideal)?;
            let valued = in_lambda_ideal_by_valuation(&e)?;
            t.expect(member == valued, || format!("{e}: scalar member {member}, valuation test {valued}"));
        }
        t.input(a);
        t.input(b);
    }
    Ok(t.finish())
}

/// No zero products among random nonzero elements. Evidence, not proof.
pub fn domain_probe(ctx: &Arc<BaxterContext>, trials: usize, seed: u64) -> Result<WitnessReport> {
    let mut rng = ElementSampler::new(seed);
    let mut t = Tally::new(Claim::DomainProbe, ctx);
    for _ in 0..trials {
        let (a, b) = (rng.nonzero_element(ctx), rng.nonzero_element(ctx));
        let p = a.mul(&b)?;
        t.expect(!p.is_zero(), || format!("({a}) * ({b}) = 0"));
        t.input(a);
        t.input(b);
    }
    Ok(t.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReducednessScope {
    /// All sufficient conditions hold, so Ш and its completion are reduced.
    TheoremApplies,
    /// Positive characteristic but some condition fails.
    ConditionsFail,
    /// Characteristic zero: the criterion says nothing.
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducednessReport {
    pub context: String,
    pub lambda_nonzero: bool,
    pub lambda_not_zero_divisor: bool,
    pub coefficients_reduced: bool,
    pub scope: ReducednessScope,
    /// Nonzero nilpotents found by construction, with their vanishing powers.
    pub witnesses: Vec<String>,
    pub probe_trials: usize,
    /// Random nonzero elements with a vanishing power of exponent ≤ 6.
    pub probe_nilpotents: Vec<String>,
}

impl ReducednessReport {
    /// Consistent when the probe agrees with the conditions: no nilpotents
    /// found where the theorem applies, and the witness really vanishes.
    pub fn consistent(&self) -> bool {
        match self.scope {
            ReducednessScope::TheoremApplies => self.probe_nilpotents.is_empty(),
            _ => true,
        }
    }
}

impl fmt::Display for ReducednessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = serde_json::to_value(self.scope).expect("unit variant");
        write!(
            f,
            "[{}] scope={} lambda_nonzero={} lambda_regular={} reduced_coefficients={} probe={}/{} nilpotent",
            self.context,
            scope.as_str().expect("string"),
            self.lambda_nonzero,
            self.lambda_not_zero_divisor,
            self.coefficients_reduced,
            self.probe_nilpotents.len(),
            self.probe_trials
        )?;
        if !self.witnesses.is_empty() {
            write!(f, " witnesses: {}", self.witnesses.join(", "))?;
        }
        Ok(())
    }
}

fn radical_of(m: u64) -> u64 {
    let (mut n, mut r, mut p) = (m, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            r *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

/// The sufficient conditions for reducedness of Ш over C[X], with a witness
/// when they visibly fail and a random nilpotency probe.
pub fn reducedness_conditions(ctx: &Arc<BaxterContext>, trials: usize, seed: u64) -> Result<ReducednessReport> {
    let ring = ctx.ring();
    let lambda_nonzero = !ctx.lambda().is_zero();
    let lambda_not_zero_divisor = lambda_nonzero && !ctx.lambda().is_zero_divisor();
    let coefficients_reduced = ring.is_reduced();
    let scope = if ring.characteristic() == 0 {
        ReducednessScope::OutOfScope
    } else if lambda_nonzero && lambda_not_zero_divisor && coefficients_reduced {
        ReducednessScope::TheoremApplies
    } else {
        ReducednessScope::ConditionsFail
    };

    let mut witnesses = Vec::new();
    if let (ReducednessScope::ConditionsFail, Ring::IntegersMod(m)) = (scope, ring) {
        let mut candidates = Vec::new();
        if !coefficients_reduced {
            candidates.push((ShuffleElement::from_int(ctx, radical_of(m) as i64), 64));
        }
        if !lambda_nonzero {
            candidates.push((unit(ctx, 1), m as u32));
        }
        for (a, bound) in candidates {
            if let Some(k) = nilpotency_index(&a, bound)? {
                witnesses.push(format!("({a})^{k} = 0"));
            }
        }
    }

    let shape = Shape { max_terms: 2, max_word_len: 2, max_exponent: 1, coeff_bound: 5 };
    let mut rng = ElementSampler::with_shape(seed, shape);
    let mut probe_nilpotents = Vec::new();
    for _ in 0..trials {
        let a = rng.nonzero_element(ctx);
        if nilpotency_index(&a, 6)?.is_some() {
            probe_nilpotents.push(a.to_string());
        }
    }
    Ok(ReducednessReport {
        context: ctx.to_string(),
        lambda_nonzero,
        lambda_not_zero_divisor,
        coefficients_reduced,
        scope,
        witnesses,
        probe_trials: trials,
        probe_nilpotents,
    })
}

impl From<&ReducednessReport> for WitnessReport {
    fn from(r: &ReducednessReport) -> WitnessReport {
        let mut t = Tally::new(Claim::Reducedness, &r.context);
        t.expect(r.consistent(), || format!("nilpotent found where reducedness holds: {}", r.probe_nilpotents[0]));
        for w in &r.witnesses {
            t.input(w);
        }
        t.finish()
    }
}

/// The named groups of checks the command line can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    BaxterIdentity,
    PropUnit,
    OracleEquivalence,
    Charp,
    Weight0Nilpotent,
    CompleteZeroDivisor,
    IntLambda2,
    LemmaPower,
    PhiHomomorphism,
    IdealQuotient,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::BaxterIdentity,
        Suite::PropUnit,
        Suite::OracleEquivalence,
        Suite::Charp,
        Suite::Weight0Nilpotent,
        Suite::CompleteZeroDivisor,
        Suite::IntLambda2,
        Suite::LemmaPower,
        Suite::PhiHomomorphism,
        Suite::IdealQuotient,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::BaxterIdentity => "baxter-identity",
            Suite::PropUnit => "prop-unit",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Charp => "charp",
            Suite::Weight0Nilpotent => "weight0-nilpotent",
            Suite::CompleteZeroDivisor => "complete-zero-divisor",
            Suite::IntLambda2 => "int-lambda2",
            Suite::LemmaPower => "lemma-power",
            Suite::PhiHomomorphism => "phi-homomorphism",
            Suite::IdealQuotient => "ideal-quotient",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

fn ctx_int(ring: Ring, lambda: i64) -> Result<Arc<BaxterContext>> {
    BaxterContext::with_int_lambda(ring, lambda, &["x", "y"])
}

/// Run one suite with the given seed. `All` runs every suite in order.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<WitnessReport>> {
    use Ring::{Integers, IntegersMod, Rationals};
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                out.extend(run_suite(s, seed)?);
            }
        }
        Suite::BaxterIdentity => {
            for (ring, l) in [(Integers, 0), (Integers, 1), (Integers, 2), (Rationals, 1), (IntegersMod(9), 0), (IntegersMod(9), 3)] {
                out.push(baxter_identity_check(&ctx_int(ring, l)?, 200, seed)?);
            }
        }
        Suite::PropUnit => {
            for l in [0, 1, 2, 5] {
                out.push(unit_product_check(&BaxterContext::with_int_lambda(Integers, l, &[] as &[&str])?, 6)?);
            }
        }
        Suite::OracleEquivalence => {
            for l in [0, 1, 2] {
                out.push(oracle_equivalence_check(Integers, l, 4, 6)?);
            }
        }
        Suite::Charp => {
            for p in [2u64, 3, 5, 7] {
                for l in 1..p {
                    out.push(charp_zero_divisor_witness(p, &Ring::Integers.from_i64(l as i64))?);
                }
            }
            for ring in [Integers, Rationals] {
                out.push(domain_probe(&ctx_int(ring, 0)?, 200, seed)?);
            }
        }
        Suite::Weight0Nilpotent => {
            for q in [2, 3, 4, 5, 9] {
                out.push(weight0_nilpotent_witness(q)?);
            }
            for m in [4, 9] {
                out.push(nilradical_agreement_check(m, 100, seed)?);
            }
            for (ring, l) in [(IntegersMod(6), 1), (IntegersMod(4), 0), (Integers, 0)] {
                out.push(WitnessReport::from(&reducedness_conditions(&ctx_int(ring, l)?, 100, seed)?));
            }
        }
        Suite::CompleteZeroDivisor => {
            for (ring, l) in [(Rationals, 1), (IntegersMod(5), 2)] {
                out.push(complete_zero_divisor_witness(&ctx_int(ring, l)?, 20)?);
            }
        }
        Suite::IntLambda2 => out.push(integer_lambda2_witness(20)?),
        Suite::LemmaPower => {
            for ring in [Rationals, IntegersMod(9)] {
                out.push(lemma_power_check(&ctx_int(ring, 0)?, 10, 5, seed)?);
            }
        }
        Suite::PhiHomomorphism => {
            for l in [0, 1, 2, 3] {
                out.push(phi_closed_form_check(&BaxterContext::with_int_lambda(Integers, l, &[] as &[&str])?, 10, seed)?);
            }
            for (ring, l) in [(Integers, 1), (Integers, 2), (Rationals, 1)] {
                out.push(phi_homomorphism_check(&ctx_int(ring, l)?, 100, 10, seed)?);
            }
        }
        Suite::IdealQuotient => out.push(ideal_quotient_check(100, seed)?),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charp_small_cases() {
        let r = charp_zero_divisor_witness(3, &Ring::Integers.from_i64(1)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.inputs, ["T(1,1)", "T(1) + T(1,1)", "2*T(1) + T(1,1)"]);
        assert!(charp_zero_divisor_witness(4, &Ring::Integers.from_i64(1)).is_err());
        assert!(charp_zero_divisor_witness(5, &Ring::Integers.from_i64(5)).is_err());
    }

    #[test]
    fn weight_zero() {
        for q in [2, 3, 4, 5, 9] {
            assert!(weight0_nilpotent_witness(q).unwrap().passed());
        }
        let c = weight0_context(4).unwrap();
        let a = crate::expr::parse_element("1 + U(1)", &c).unwrap();
        assert!(!nilradical_member_weight0(&a).unwrap());
        let c = BaxterContext::with_int_lambda(Ring::IntegersMod(4), 0, &["x", "y"]).unwrap();
        let a = crate::expr::parse_element("2 + T(x, y)", &c).unwrap();
        assert!(nilradical_member_weight0(&a).unwrap());
        assert!(a.pow(4).is_zero());
        assert!(nilradical_member_weight0(&ShuffleElement::one(&ctx_int(Ring::Integers, 0).unwrap())).is_err());
    }

    #[test]
    fn complete_gate() {
        let z = ctx_int(Ring::Integers, 2).unwrap();
        assert!(matches!(complete_zero_divisor_witness(&z, 5), Err(Error::Precondition(_))));
        assert!(complete_zero_divisor_witness(&ctx_int(Ring::IntegersMod(5), 2).unwrap(), 15).unwrap().passed());
    }

    #[test]
    fn example_over_integers() {
        let r = integer_lambda2_witness(8).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn reducedness_scopes() {
        let r = reducedness_conditions(&ctx_int(Ring::IntegersMod(6), 1).unwrap(), 20, 1).unwrap();
        assert_eq!(r.scope, ReducednessScope::TheoremApplies);
        assert!(r.consistent());
        let r = reducedness_conditions(&ctx_int(Ring::IntegersMod(4), 0).unwrap(), 5, 1).unwrap();
        assert_eq!(r.scope, ReducednessScope::ConditionsFail);
        assert_eq!(r.witnesses, ["(2*T(1))^2 = 0", "(T(1,1))^4 = 0"]);
        let r = reducedness_conditions(&ctx_int(Ring::IntegersMod(9), 0).unwrap(), 5, 1).unwrap();
        assert_eq!(r.witnesses, ["(3*T(1))^2 = 0", "(T(1,1))^6 = 0"]);
        let r = reducedness_conditions(&ctx_int(Ring::Integers, 0).unwrap(), 5, 1).unwrap();
        assert_eq!(r.scope, ReducednessScope::OutOfScope);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}

//! Passing reports must be reproducible from their serialized inputs alone.

use std::sync::Arc;

use baxter_core::expr::{eval_str, parse_element};
use baxter_core::random::DEFAULT_SEED;
use baxter_core::verify::{baxter_residual, run_suite, Claim, Suite, WitnessReport};
use baxter_core::{BaxterContext, ShuffleElement};

fn context_of(r: &WitnessReport) -> Arc<BaxterContext> {
    Arc::new(r.context.parse().unwrap())
}

fn assert_serialized_pass(r: &WitnessReport) {
    let v = serde_json::to_value(r).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["detail"], "0");
}

#[test]
fn charp_products_recompute_to_zero() {
    for r in run_suite(Suite::Charp, DEFAULT_SEED).unwrap().iter().filter(|r| r.claim == Claim::CharpZeroDivisor) {
        assert_serialized_pass(r);
        let ctx = context_of(r);
        let product = r.inputs.iter().fold(ShuffleElement::one(&ctx), |acc, s| acc.mul(&parse_element(s, &ctx).unwrap()).unwrap());
        assert!(product.is_zero(), "{}", r.context);
    }
}

#[test]
fn completion_witnesses_recompute_to_zero() {
    for r in run_suite(Suite::CompleteZeroDivisor, DEFAULT_SEED).unwrap() {
        let ctx = context_of(&r);
        let src = format!("({}) * {}", r.inputs[0], r.inputs[1]);
        assert!(eval_str(&src, &ctx, 20).unwrap().is_zero(), "{src}");
    }
    let r = &run_suite(Suite::IntLambda2, DEFAULT_SEED).unwrap()[0];
    let ctx = context_of(r);
    let x = parse_element(&r.inputs[0], &ctx).unwrap();
    let y = parse_element(&r.inputs[1], &ctx).unwrap();
    assert!(x.mul_truncated(&y, 20).unwrap().is_zero());
}

#[test]
fn identity_inputs_recompute_to_zero() {
    for r in run_suite(Suite::BaxterIdentity, DEFAULT_SEED).unwrap() {
        let ctx = context_of(&r);
        for pair in r.inputs.chunks(2) {
            let a = parse_element(&pair[0], &ctx).unwrap();
            let b = parse_element(&pair[1], &ctx).unwrap();
            assert!(baxter_residual(&a, &b).unwrap().is_zero());
        }
    }
}

#[test]
fn weight_zero_powers_recompute_to_zero() {
    for r in run_suite(Suite::Weight0Nilpotent, DEFAULT_SEED).unwrap().iter().filter(|r| r.claim == Claim::Weight0Nilpotent) {
        let ctx = context_of(r);
        assert!(eval_str(&r.inputs[0], &ctx, 0).unwrap().is_zero(), "{}", r.inputs[0]);
    }
}

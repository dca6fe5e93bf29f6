//! Concrete values checked against independent computations: brute-force
//! searches, hand expansions and closed forms evaluated here rather than in
//! the library.

use std::sync::Arc;

use baxter_core::expr::parse_element;
use baxter_core::shuffle::{enumerate_mixable_shuffles, mixable_shuffle_count};
use baxter_core::standard::{phi, phi_constants_closed_form, t_sequence};
use baxter_core::verify::{charp_zero_divisor_witness, integer_lambda2_pair, nilradical_member_weight0};
use baxter_core::{
    BarElement, BaxterContext, Coefficient, Monomial, Polynomial, Ring, SequenceElement, ShuffleElement, Valuation,
};

fn ctx(ring: Ring, lambda: i64, vars: &[&str]) -> Arc<BaxterContext> {
    BaxterContext::with_int_lambda(ring, lambda, vars).unwrap()
}

fn el(c: &Arc<BaxterContext>, src: &str) -> ShuffleElement {
    parse_element(src, c).unwrap()
}

fn binom(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[test]
fn units_and_zero_divisors_by_search() {
    for m in 2..=30u64 {
        let ring = Ring::IntegersMod(m);
        for r in 0..m {
            let c = ring.from_i64(r as i64);
            let unit = (0..m).any(|d| r * d % m == 1);
            let zd = r != 0 && (1..m).any(|d| r * d % m == 0);
            assert_eq!(c.is_unit(), unit, "{r} mod {m}");
            assert_eq!(c.is_zero_divisor(), zd, "{r} mod {m}");
        }
    }
    assert!(!Ring::Integers.from_i64(2).is_unit());
    assert!(Ring::IntegersMod(9).from_i64(4).is_unit());
    assert!(Ring::IntegersMod(9).from_i64(3).is_zero_divisor());
}

#[test]
fn nilpotent_coefficients_by_powers() {
    for m in 2..=64u64 {
        for r in 0..m {
            let mut p = 1u64;
            let direct = (1..=m).any(|_| {
                p = p * r % m;
                p == 0
            });
            assert_eq!(Ring::IntegersMod(m).from_i64(r as i64).is_nilpotent(), direct, "{r} mod {m}");
        }
    }
}

#[test]
fn valuation_by_division() {
    let two = Ring::Integers.from_i64(2);
    for n in [-8i64, 12, 1, 7, 96, -1024] {
        let (mut k, mut q) = (0, n);
        while q % 2 == 0 {
            q /= 2;
            k += 1;
        }
        assert_eq!(Ring::Integers.from_i64(n).lambda_adic_valuation(&two).unwrap(), Valuation::Finite(k));
    }
    assert_eq!(Ring::Integers.zero().lambda_adic_valuation(&two).unwrap(), Valuation::Infinite);
    let c = ctx(Ring::Integers, 2, &["x", "y"]);
    assert_eq!(el(&c, "8*U(1)").lambda_adic_valuation().unwrap(), Valuation::Finite(3));
    assert_eq!(el(&c, "4*T(1,x) + 2*T(y)").lambda_adic_valuation().unwrap(), Valuation::Finite(1));
}

#[test]
fn polynomial_expansions() {
    let z2 = Ring::IntegersMod(2);
    let x = Polynomial::var(z2, "x");
    let sq = x.add(&Polynomial::one(z2)).unwrap().pow(2);
    // (x+1)^2 = x^2 + 2x + 1 over ℤ, then reduced
    let expected = Polynomial::from_terms(
        z2,
        [(z2.from_i64(1), Monomial::from_pairs([("x", 2)])), (z2.from_i64(1), Monomial::one())],
    )
    .unwrap();
    assert_eq!(sq, expected);

    let z9 = Ring::IntegersMod(9);
    let p = Polynomial::var(z9, "x").scale(&z9.from_i64(3)).unwrap().add(&Polynomial::constant(z9.from_i64(6))).unwrap();
    assert!(p.is_nilpotent());
    assert!(p.pow(2).is_zero());
}

#[test]
fn delannoy_counts() {
    let mut table = [[0u64; 8]; 8];
    for m in 0..8 {
        for n in 0..8 {
            table[m][n] = if m == 0 || n == 0 {
                1
            } else {
                table[m - 1][n] + table[m][n - 1] + table[m - 1][n - 1]
            };
            assert_eq!(mixable_shuffle_count(m, n), table[m][n].into());
        }
    }
    assert_eq!(enumerate_mixable_shuffles(1, 1).len(), 3);
    assert_eq!(enumerate_mixable_shuffles(2, 2).len(), 13);
    assert_eq!(table[3][3], 63);
}

#[test]
fn unit_word_products() {
    for lambda in [0, 1, 2, 5] {
        let c = ctx(Ring::Integers, lambda, &[]);
        // U(1) * U(n) = (n+1) U(n+1) + nλ U(n)
        for n in 0..=6i64 {
            let lhs = el(&c, &format!("U(1) * U({n})"));
            let rhs = el(&c, &format!("{}*U({}) + {}*U({n})", n + 1, n + 1, n * lambda));
            assert_eq!(lhs, rhs, "λ = {lambda}, n = {n}");
        }
    }
    let c = ctx(Ring::Integers, 1, &[]);
    // 13 mixable shuffles split 6 + 6 + 1 by the number of merged pairs
    assert_eq!(el(&c, "U(2)*U(2)"), el(&c, "6*U(4) + 6*U(3) + U(2)"));
    let c3 = ctx(Ring::Integers, 3, &[]);
    assert_eq!(el(&c3, "U(1)*U(1)").to_string(), "3*T(1,1) + 2*T(1,1,1)");
}

#[test]
fn operator_iterates() {
    let c = ctx(Ring::Rationals, 0, &[]);
    let one = ShuffleElement::one(&c);
    assert_eq!(one.p_sub_x_iterate(2), el(&c, "U(2)"));
    assert_eq!(one.p_sub_x_iterate(0), one);
    assert_eq!(el(&c, "P(1)^2"), el(&c, "2*U(2)"));
    assert_eq!(el(&c, "U(1)^3"), el(&c, "6*U(3)"));
}

#[test]
fn small_characteristic_witnesses() {
    let c = ctx(Ring::IntegersMod(2), 1, &[]);
    assert!(el(&c, "U(1) * (1 + U(1))").is_zero());
    assert!(el(&c, "U(1) * U(1) - U(1)").is_zero());
    for (p, l) in [(3, 1), (5, 2)] {
        assert!(charp_zero_divisor_witness(p, &Ring::Integers.from_i64(l)).unwrap().passed());
    }

    let c5 = ctx(Ring::IntegersMod(5), 0, &[]);
    assert_eq!(el(&c5, "U(1)^2"), el(&c5, "2*U(2)"));
    assert!(!el(&c5, "U(1)^2").is_zero());
    for q in [2u64, 3] {
        assert!(el(&ctx(Ring::IntegersMod(q), 0, &[]), &format!("U(1)^{q}")).is_zero());
    }
}

#[test]
fn weight_zero_mod_four() {
    let c = ctx(Ring::IntegersMod(4), 0, &["x", "y"]);
    // the square is 2·U(2), not zero; the fourth power vanishes
    assert_eq!(el(&c, "U(1)^2").to_string(), "2*T(1,1,1)");
    assert!(!el(&c, "U(1)^3").is_zero());
    assert!(el(&c, "U(1)^4").is_zero());
    assert!(nilradical_member_weight0(&el(&c, "U(1)")).unwrap());
    assert!(!nilradical_member_weight0(&el(&c, "1 + U(1)")).unwrap());
    let a = el(&c, "2 + T(x, y)");
    assert!(nilradical_member_weight0(&a).unwrap());
    assert!(a.pow(4).is_zero());
}

fn scalar_seq(ring: Ring, values: &[i64]) -> SequenceElement {
    SequenceElement::from_entries(ring, values.iter().map(|v| BarElement::scalar(ring.from_i64(*v))).collect()).unwrap()
}

#[test]
fn sequence_model_values() {
    let ring = Ring::Integers;
    let (x, y) = (Monomial::var("x"), Monomial::var("y"));
    let a = BarElement::from_terms(ring, vec![(vec![Monomial::one(), x.clone()], ring.one())]).unwrap();
    let b = BarElement::from_terms(ring, vec![(vec![y.clone()], ring.one())]).unwrap();
    let expected = BarElement::from_terms(ring, vec![(vec![y.clone(), x.clone()], ring.one())]).unwrap();
    assert_eq!(a.mul(&b).unwrap(), expected);

    let px = Polynomial::var(ring, "x");
    let py = Polynomial::var(ring, "y");
    let prod = t_sequence(&px, 5).mul(&t_sequence(&py, 5)).unwrap();
    assert_eq!(prod, t_sequence(&px.mul(&py).unwrap(), 5));

    let lambda = ring.from_i64(3);
    let ones = SequenceElement::one(ring, 6);
    assert_eq!(ones.p_prime(&lambda).unwrap(), scalar_seq(ring, &[0, 3, 6, 9, 12, 15]));
}

#[test]
fn image_of_unit_words() {
    for lambda in 0..=3i64 {
        let c = ctx(Ring::Integers, lambda, &[]);
        for n in 0..=6u64 {
            let expected: Vec<i64> = (1..=10u64).map(|k| binom(k - 1, n) * lambda.pow(n as u32)).collect();
            assert_eq!(phi(&el(&c, &format!("U({n})")), 10), scalar_seq(Ring::Integers, &expected), "λ={lambda} n={n}");
        }
        let b: Vec<Coefficient> = [0, 1].iter().map(|v| Ring::Integers.from_i64(*v)).collect();
        let lin: Vec<i64> = (0..8).map(|k| k * lambda).collect();
        assert_eq!(phi_constants_closed_form(&b, c.lambda(), 8).unwrap(), scalar_seq(Ring::Integers, &lin));
    }
}

#[test]
fn weight_two_example_over_integers() {
    let (x, y) = integer_lambda2_pair(20).unwrap();
    assert!(x.mul(&y).unwrap().is_zero());
    let px = phi(x.as_finite(), 21);
    let py = phi(y.as_finite(), 21);
    // entry k, counted from 1: x gives 0, 2, 0, 2, ... and y gives 2, 0, 2, 0, ...
    let alt = |first: i64| (0..21).map(|i| if i % 2 == 0 { first } else { 2 - first }).collect::<Vec<_>>();
    assert_eq!(px, scalar_seq(Ring::Integers, &alt(0)));
    assert_eq!(py, scalar_seq(Ring::Integers, &alt(2)));
    assert!(px.mul(&py).unwrap().is_zero());
}

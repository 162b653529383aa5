//! Exact cyclotomic arithmetic: arithmetic identities, cyclotomic
//! polynomials against an independent polynomial-arithmetic oracle,
//! conductor embedding, and finite-field specialization.

use hopfalg::scalar::literal::{parse_literal, to_literal};
use hopfalg::scalar::poly::{cyclotomic_poly, divisors, euler_phi};
use hopfalg::scalar::{Cyc, PrimeSpec, Rat, ScalarError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn zeta(n: u32) -> Cyc {
    Cyc::root_of_unity(n, 1)
}

#[test]
fn zeta4_squared_is_minus_one() {
    let i = zeta(4);
    assert_eq!(i.mul(&i), Cyc::from_integer(-1));
}

#[test]
fn inverse_of_one_plus_zeta3() {
    let a = Cyc::one().add(&zeta(3));
    assert_eq!(a.inv(), zeta(3).neg());
    assert!(a.mul(&a.inv()).is_one());
}

#[test]
fn zeta3_plus_zeta3_squared_is_minus_one() {
    let z = zeta(3);
    assert_eq!(z.add(&z.mul(&z)), Cyc::from_integer(-1));
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(Cyc::one().try_div(&Cyc::zero()), Err(ScalarError::DivisionByZero));
}

#[test]
fn conductor_overflow_is_detected() {
    let a = zeta(999_983); // prime below the cap
    let b = zeta(999_979);
    match a.try_mul(&b) {
        Err(ScalarError::ConductorOverflow { .. }) => {}
        other => panic!("expected overflow, got {other:?}"),
    }
}

#[test]
fn embedding_matches_root_identities() {
    // ζ_3 = ζ_6^2
    assert_eq!(zeta(3).embed(6).unwrap(), Cyc::root_of_unity(6, 2));
    // rationals are conductor-independent
    let half5 = Cyc::from_ratio(5, 2);
    for m in [1u32, 4, 12, 30] {
        assert_eq!(half5.embed(m).unwrap(), half5);
    }
    // functoriality
    assert_eq!(zeta(3).embed(6).unwrap().embed(12).unwrap(), zeta(3).embed(12).unwrap());
}

#[test]
fn embedding_not_divisible_is_an_error() {
    assert_eq!(zeta(4).embed(6), Err(ScalarError::NotDivisible { from: 4, to: 6 }));
}

// Independent dense polynomial oracle (naive multiplication).
fn poly_mul_oracle(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn cyclotomic_poly_small_cases() {
    assert_eq!(cyclotomic_poly(1), vec![BigInt::from(-1), BigInt::from(1)]);
    assert_eq!(cyclotomic_poly(4), vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
}

#[test]
fn cyclotomic_poly_21_product_oracle() {
    // Φ_21 has degree φ(21) = 12 and ∏_{d | 21} Φ_d = x^21 − 1.
    let phi21 = cyclotomic_poly(21);
    assert_eq!(phi21.len() - 1, 12);
    let mut prod = vec![BigInt::one()];
    for d in divisors(21) {
        prod = poly_mul_oracle(&prod, &cyclotomic_poly(d));
    }
    let mut expect = vec![BigInt::zero(); 22];
    expect[0] = BigInt::from(-1);
    expect[21] = BigInt::from(1);
    assert_eq!(prod, expect);
}

#[test]
fn cyclotomic_poly_vanishes_on_primitive_root_up_to_128() {
    for n in 1..=128u32 {
        let phi = cyclotomic_poly(n);
        assert_eq!(phi.len() as u32 - 1, euler_phi(n), "degree of Phi_{n}");
        let z = zeta(n);
        let mut acc = Cyc::zero();
        let mut p = Cyc::one();
        for c in &phi {
            if !c.is_zero() {
                acc = acc.add(&p.scale(&Rat::from_integer(c.clone())));
            }
            p = p.mul(&z);
        }
        assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
    }
}

#[test]
fn specialization_basics() {
    let spec = PrimeSpec::sample(12, 7);
    assert!(spec.verify());
    assert_eq!(spec.ell % 12, 1);
    assert_eq!(spec.specialize(&Cyc::one()).unwrap(), 1);
    let img = spec.specialize(&zeta(12)).unwrap();
    assert_eq!(hopfalg::scalar::prime::pow_mod(img, 12, spec.ell), 1);
}

#[test]
fn specialization_is_multiplicative_on_random_pairs() {
    let spec = PrimeSpec::sample(21, 11);
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a = random_cyc(&mut rng, 21);
        let b = random_cyc(&mut rng, 21);
        let lhs = spec.specialize(&a.mul(&b)).unwrap();
        let rhs = hopfalg::scalar::prime::mul_mod(
            spec.specialize(&a).unwrap(),
            spec.specialize(&b).unwrap(),
            spec.ell,
        );
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn specialize_after_embed_agrees() {
    let spec = PrimeSpec::sample(12, 3);
    let a = zeta(3).add(&Cyc::from_ratio(1, 2));
    let lifted = a.embed(12).unwrap();
    assert_eq!(spec.specialize(&a).unwrap(), spec.specialize(&lifted).unwrap());
}

#[test]
fn bad_denominator_reported() {
    let spec = PrimeSpec::sample(1, 17);
    let bad = Cyc::from_rat(Rat::new(BigInt::one(), BigInt::from(spec.ell)));
    assert_eq!(spec.specialize(&bad), Err(ScalarError::BadDenominator { prime: spec.ell }));
}

fn random_cyc(rng: &mut impl Rng, conductor: u32) -> Cyc {
    let phi = euler_phi(conductor);
    let mut acc = Cyc::zero();
    for _ in 0..rng.gen_range(0..4usize) {
        let e = rng.gen_range(0..phi);
        let num = rng.gen_range(-6i64..=6);
        let den = rng.gen_range(1i64..=4);
        acc = acc.add(&Cyc::monomial(conductor, e, Rat::new(BigInt::from(num), BigInt::from(den))));
    }
    acc
}

#[test]
fn literal_roundtrip_examples() {
    let c = parse_literal("-1/2*z^5+3", 7).unwrap();
    assert_eq!(to_literal(&c), "-1/2*z^5+3");
    // At conductor 12 the same input reduces mod Φ_12 (degree 4).
    let r = parse_literal("-1/2*z^5+3", 12).unwrap();
    assert_eq!(to_literal(&r), "-1/2*z^3+1/2*z^1+3");
    assert_eq!(parse_literal("0", 5).unwrap(), Cyc::zero());
    assert_eq!(parse_literal("2/4", 1).unwrap(), Cyc::from_ratio(1, 2));
    // exponents reduce mod the conductor
    assert_eq!(parse_literal("1*z^7", 3).unwrap(), zeta(3));
    assert!(parse_literal("1*z^-1", 3).is_err());
    assert!(parse_literal("z^2", 3).is_err());
    assert!(parse_literal("1/0", 3).is_err());
}

fn cyc_strategy(conductor: u32) -> impl Strategy<Value = Cyc> {
    let phi = euler_phi(conductor);
    prop::collection::vec((0..phi, -9i64..=9, 1i64..=5), 0..4).prop_map(move |terms| {
        let mut acc = Cyc::zero();
        for (e, n, d) in terms {
            acc = acc.add(&Cyc::monomial(conductor, e, Rat::new(BigInt::from(n), BigInt::from(d))));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_conductor_12(a in cyc_strategy(12), b in cyc_strategy(12), c in cyc_strategy(12)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn field_axioms_mixed_conductors(a in cyc_strategy(3), b in cyc_strategy(4), c in cyc_strategy(21)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        if !b.is_zero() {
            prop_assert!(b.mul(&b.inv()).is_one());
        }
    }

    #[test]
    fn embed_is_injective_and_multiplicative(a in cyc_strategy(12), b in cyc_strategy(12)) {
        let am = a.embed(60).unwrap();
        let bm = b.embed(60).unwrap();
        prop_assert_eq!(am.mul(&bm), a.mul(&b).embed(60).unwrap());
        prop_assert_eq!(am == bm, a == b);
    }

    #[test]
    fn literal_roundtrip(a in cyc_strategy(21)) {
        let s = to_literal(&a);
        prop_assert_eq!(parse_literal(&s, 21).unwrap(), a);
    }

    #[test]
    fn pow_matches_repeated_multiplication(a in cyc_strategy(12), k in 0u32..6) {
        let mut acc = Cyc::one();
        for _ in 0..k {
            acc = acc.mul(&a);
        }
        prop_assert_eq!(a.pow(k as i64).unwrap(), acc);
    }
}

#[test]
fn field_axioms_small_conductors() {
    // Deterministic spot checks at every requested conductor.
    for n in [1u32, 3, 4, 12, 21] {
        let z = zeta(n);
        let a = z.add(&Cyc::from_integer(2));
        let b = z.mul(&z).sub(&Cyc::from_ratio(1, 3));
        let c = z.pow(3).unwrap().add(&Cyc::from_integer(1));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert!(!a.is_zero());
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(z.pow(n as i64).unwrap(), Cyc::one());
    }
}

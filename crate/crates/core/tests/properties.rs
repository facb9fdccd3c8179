use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed};

use qcong::arith::{rat, ratio};
use qcong::cyclotomic::{congruent_mod_cyclotomic, cyclotomic, divides_power};
use qcong::padic::{morita_gamma, residue_of_rational, PadicContext};
use qcong::{LaurentPoly, RationalFunc, Status};

fn config() -> Config {
    Config {
        cases: 1000,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x5eed_c0de),
        failure_persistence: None,
        ..Config::default()
    }
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..4, prop::collection::vec(-9i64..10, 0..6), 1i64..4)
        .prop_map(|(lo, c, d)| LaurentPoly::from_i64s(lo, &c).scale(&ratio(1, d)))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-9i64..10, 0..6).prop_map(|c| LaurentPoly::from_i64s(0, &c))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = RationalFunc> {
    (
        laurent(),
        laurent().prop_filter("nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| RationalFunc::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = BigRational> {
    (-7i64..8, 1i64..5)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| ratio(n, d))
}

fn degree(p: &LaurentPoly) -> i64 {
    if p.is_zero() {
        -1
    } else {
        p.max_exp()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in point()) {
        let (fa, fb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &fa * &fb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), &fa + &fb);
    }

    #[test]
    fn division_with_remainder(f in poly(), g in nonzero_poly()) {
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(degree(&r) < degree(&g));
    }

    #[test]
    fn gcd_properties(f in nonzero_poly(), g in nonzero_poly(), h in nonzero_poly()) {
        let d = f.gcd(&g);
        prop_assert!(f.exact_div(&d).is_some());
        prop_assert!(g.exact_div(&d).is_some());
        prop_assert_eq!(d.monic(), d.clone());
        // Powers of q are units, so compare polynomial parts.
        prop_assert_eq!((&f * &h).gcd(&(&g * &h)), (&h.monic() * &d).unshifted());
    }

    #[test]
    fn rational_functions_form_a_field(a in rf(), b in rf(), c in rf()) {
        for r in [&a, &b, &c] {
            prop_assert_eq!(r.den().min_exp(), 0);
            prop_assert_eq!(r.den().monic(), r.den().clone());
            prop_assert!(r.num().gcd(r.den()).is_one());
        }
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.try_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn rational_evaluation(a in rf(), b in rf(), x in point()) {
        if let (Ok(fa), Ok(fb)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), &fa * &fb);
            prop_assert_eq!((&a - &b).eval(&x).unwrap(), &fa - &fb);
        }
    }

    #[test]
    fn congruence_matches_divisibility(f in nonzero_poly(), n in 1u64..13, e in 1u32..4, extra in 0u32..2) {
        let phi = cyclotomic(n);
        let multiple = &f * &phi.pow(e + extra);
        prop_assert!(divides_power(&multiple, n, e).unwrap());
        let lhs = RationalFunc::from_poly(&multiple + &LaurentPoly::one());
        let v = congruent_mod_cyclotomic(&lhs, &RationalFunc::one(), n, e).unwrap();
        prop_assert_eq!(v.status, Status::Pass);
        // Divisibility of f itself, by direct division.
        let (_, r) = f.divrem(&phi.pow(e)).unwrap();
        let v = congruent_mod_cyclotomic(&RationalFunc::from_poly(f.clone()), &RationalFunc::zero(), n, e).unwrap();
        prop_assert_eq!(v.status == Status::Pass, r.is_zero());
    }
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11, 13])
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gamma_functional_equation(p in prime(), a in -200i64..200, b in 1i64..30) {
        prop_assume!(b % p as i64 != 0);
        let ctx = PadicContext::new(p).unwrap();
        let x = ratio(a, b);
        let g = morita_gamma(&x, &ctx).unwrap();
        let g1 = morita_gamma(&(&x + rat(1)), &ctx).unwrap();
        let want = if a % p as i64 == 0 {
            -g
        } else {
            -(residue_of_rational(&x, &ctx).unwrap() * g)
        };
        prop_assert_eq!(g1, want);
    }

    #[test]
    fn gamma_reflection(p in prime(), a in -200i64..200, b in 1i64..30) {
        prop_assume!(b % p as i64 != 0);
        let ctx = PadicContext::new(p).unwrap();
        let x = ratio(a, b);
        let prod = morita_gamma(&x, &ctx).unwrap() * morita_gamma(&(rat(1) - &x), &ctx).unwrap();
        let modp = PadicContext::with_precision(p, 1).unwrap();
        let r = residue_of_rational(&-x, &modp).unwrap().value() as i64;
        let one = ctx.residue(1);
        let want = if (r - 1).rem_euclid(2) == 0 { one } else { -one };
        prop_assert_eq!(prod, want);
    }

    #[test]
    fn residues_respect_arithmetic(p in prime(), a in point(), b in point()) {
        let ctx = PadicContext::new(p).unwrap();
        let unit = |x: &BigRational| !(x.denom() % BigInt::from(p)).is_zero();
        prop_assume!(unit(&a) && unit(&b));
        let (ra, rb) = (residue_of_rational(&a, &ctx).unwrap(), residue_of_rational(&b, &ctx).unwrap());
        prop_assert_eq!(residue_of_rational(&(&a * &b), &ctx).unwrap(), ra * rb);
        prop_assert_eq!(residue_of_rational(&(&a + &b), &ctx).unwrap(), ra + rb);
        prop_assert_eq!(residue_of_rational(&BigRational::one(), &ctx).unwrap().value(), 1);
    }
}

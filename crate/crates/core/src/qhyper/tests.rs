use super::expr::{self, fixed, k, qp, var, Binding, BoundVar, Env, Expr};
use super::formulas as f;
use super::*;
use crate::arith::{rat, ratio};
use crate::cyclotomic::congruent_mod_cyclotomic;
use crate::verdict::Status;
use num_rational::BigRational;

fn poly(min: i64, c: &[i64]) -> RationalFunc {
    RationalFunc::from_poly(LaurentPoly::from_i64s(min, c))
}

/// Term-by-term summation with canonical arithmetic only.
fn direct_phi(
    upper: &[RationalFunc],
    lower: &[RationalFunc],
    step: i64,
    z: &RationalFunc,
    trunc: usize,
) -> RationalFunc {
    let one = RationalFunc::one();
    let factor = |x: &RationalFunc, j: i64| &one - &(x * &RationalFunc::q_pow(step * j));
    let mut sum = RationalFunc::zero();
    let mut term = one.clone();
    for kk in 0..=trunc as i64 {
        sum = &sum + &term;
        let mut num = z.clone();
        let mut den = factor(&one, kk + 1);
        for a in upper {
            num = &num * &factor(a, kk);
        }
        for b in lower {
            den = &den * &factor(b, kk);
        }
        if num.is_zero() {
            break;
        }
        term = &term * &num.try_div(&den).unwrap();
    }
    sum
}

#[test]
fn q_integers_and_pochhammers() {
    assert!(RationalFunc::from_poly(q_integer(1)).is_one());
    assert_eq!(q_integer(3), LaurentPoly::from_i64s(0, &[1, 1, 1]));
    assert_eq!(q_integer(2).pow(2).eval(&rat(1)).unwrap(), rat(4));
    let spec = |x: RationalFunc, step, count| QPochSpec { x, step, count };
    assert!(q_pochhammer(&spec(RationalFunc::from_int(5), 1, 0)).is_one());
    assert_eq!(
        q_pochhammer(&spec(RationalFunc::q_pow(-1), 3, 2)),
        &poly(-1, &[-1, 1]) * &poly(0, &[1, 0, -1])
    );
    assert_eq!(
        q_pochhammer(&spec(RationalFunc::q(), 3, 1)),
        poly(0, &[1, -1])
    );
    // A non-monomial argument.
    let x = poly(0, &[1, 1]);
    assert_eq!(
        q_pochhammer(&spec(x.clone(), 2, 2)),
        &(&RationalFunc::one() - &x) * &(&RationalFunc::one() - &(&x * &RationalFunc::q_pow(2)))
    );
}

#[test]
fn truncated_series_match_direct_sums() {
    let spec = SeriesSpec {
        upper: vec![
            RationalFunc::constant(ratio(1, 2)),
            poly(0, &[1, 1]),
            RationalFunc::q_pow(-4),
        ],
        lower: vec![RationalFunc::from_int(7), RationalFunc::q_pow(2)],
        step: 2,
        argument: RationalFunc::q_pow(3),
        truncation: 6,
    };
    assert_eq!(
        truncated_phi(&spec).unwrap(),
        direct_phi(&spec.upper, &spec.lower, 2, &spec.argument, 6)
    );
    let zero = SeriesSpec {
        truncation: 0,
        ..spec.clone()
    };
    assert!(truncated_phi(&zero).unwrap().is_one());
    // Upper parameter q^{-2 s}: terms vanish after k = 2.
    let term = SeriesSpec {
        truncation: 2,
        ..spec.clone()
    };
    for t in [3, 4, 9] {
        let longer = SeriesSpec {
            truncation: t,
            ..spec.clone()
        };
        assert_eq!(
            truncated_phi(&longer).unwrap(),
            truncated_phi(&term).unwrap()
        );
    }
    let bad = SeriesSpec {
        lower: vec![RationalFunc::q_pow(-2)],
        ..spec
    };
    assert_eq!(
        truncated_phi(&bad).unwrap_err(),
        Error::IdenticallyZeroDenominator(2)
    );
}

#[test]
fn base_q_cubed_by_substitution() {
    let direct = SeriesSpec {
        upper: vec![RationalFunc::q_pow(-6), RationalFunc::constant(ratio(2, 3))],
        lower: vec![RationalFunc::q_pow(9)],
        step: 3,
        argument: RationalFunc::q_pow(3),
        truncation: 5,
    };
    let base_q = SeriesSpec {
        upper: vec![RationalFunc::q_pow(-2), RationalFunc::constant(ratio(2, 3))],
        lower: vec![RationalFunc::q_pow(3)],
        step: 1,
        argument: RationalFunc::q(),
        truncation: 5,
    };
    assert_eq!(
        truncated_phi(&direct).unwrap(),
        truncated_phi(&base_q).unwrap().subst_power(3)
    );
    let p = QPochSpec {
        x: RationalFunc::q_pow(3),
        step: 3,
        count: 4,
    };
    let p1 = QPochSpec {
        x: RationalFunc::q(),
        step: 1,
        count: 4,
    };
    assert_eq!(q_pochhammer(&p), q_pochhammer(&p1).subst_power(3));
}

#[test]
fn substituted_two_parameter_sum_is_a_3phi2() {
    // t = 2, n = 1: a = q^{-2} gives the 3φ2 with q^{-3}, q, q^{-1}/b over q^3, q^3/b.
    let b = ratio(5, 2);
    let env = Env::symbolic_q()
        .with("a", Binding::QMonomial(rat(1), -2))
        .with("b", Binding::Number(b.clone()));
    let lhs = f::thm_c_lhs(1).eval(&env).unwrap().normalize();
    let binv = RationalFunc::constant(b.recip());
    let want = direct_phi(
        &[
            RationalFunc::q_pow(-3),
            RationalFunc::q(),
            &binv * &RationalFunc::q_pow(-1),
        ],
        &[RationalFunc::q_pow(3), &binv * &RationalFunc::q_pow(3)],
        3,
        &RationalFunc::q_pow(9),
        1,
    );
    assert_eq!(lhs, want);
}

#[test]
fn first_residue_class_theorem() {
    assert!(matches!(
        thm_a_sides(7 + 6 - 1, false),
        Err(Error::ParameterDomain(_))
    ));
    assert!(matches!(
        thm_a_sides(1, false),
        Err(Error::ParameterDomain(_))
    ));
    let (l, r) = thm_a_sides(1, true).unwrap();
    let one_q_q2 = poly(0, &[1, 1, 1]);
    let want_l = &RationalFunc::one()
        - &RationalFunc::q_pow(6)
            .try_div(&one_q_q2.pow(3).unwrap())
            .unwrap();
    let want_r = (&poly(0, &[1, 1]) * &poly(0, &[4, 3, 2]))
        .try_div(&one_q_q2.pow(2).unwrap())
        .unwrap();
    assert_eq!(l, want_l);
    assert_eq!(r, want_r);
    assert_eq!(l.eval(&rat(1)).unwrap(), ratio(26, 27));
    assert_eq!(r.eval(&rat(1)).unwrap(), rat(2));
    for n in [7, 13] {
        let (l, r) = thm_a_sides(n, false).unwrap();
        for e in 1..=3 {
            assert!(
                congruent_mod_cyclotomic(&l, &r, n, e).unwrap().is_pass(),
                "n={n} e={e}"
            );
        }
        assert!(!congruent_mod_cyclotomic(&l, &r, n, 4).unwrap().is_pass());
    }
}

#[test]
fn second_residue_class_theorem() {
    assert!(matches!(thm_b_sides(7), Err(Error::ParameterDomain(_))));
    for n in [5, 11] {
        let (l, r) = thm_b_sides(n).unwrap();
        for e in 1..=3 {
            assert!(
                congruent_mod_cyclotomic(&l, &r, n, e).unwrap().is_pass(),
                "n={n} e={e}"
            );
        }
    }
    // θ_n's numerator vanishes at q = 1.
    for n in [5, 11, 17] {
        let Expr::Quot(num, _) = f::theta(n) else {
            panic!()
        };
        let v = num.eval(&Env::numeric_q(rat(1))).unwrap();
        assert!(v.is_zero());
        let th = f::theta(n).eval(&Env::symbolic_q()).unwrap().normalize();
        assert!(crate::cyclotomic::coprime_to_phi(th.den(), n as u64));
    }
}

#[test]
fn perturbed_theta_is_caught() {
    let n = 11;
    let kk = ((n + 1) / 3) as usize;
    let theta = (f::theta(n) + qp(2 * n))
        .eval(&Env::symbolic_q())
        .unwrap()
        .normalize();
    let rhs = qp((2 - n) / 3) * (k(1) + qp(1)) * expr::poch(qp(1), 3, kk).pow(2)
        / expr::poch(qp(3), 3, kk).pow(2)
        * (fixed(theta) + expr::qint(n).pow(2) * f::harmonic_bracket(kk));
    let env = Env::symbolic_q();
    let l = f::cubic_sum(kk).eval(&env).unwrap().normalize();
    let r = rhs.eval(&env).unwrap().normalize();
    let v = congruent_mod_cyclotomic(&l, &r, n as u64, 3).unwrap();
    assert_eq!(v.status, Status::Fail);
    assert!(v.witness.is_some());
}

#[test]
fn two_parameter_congruence() {
    let plan = GridPlan::certified();
    for (n, t) in [(2, 1), (4, 2), (7, 2)] {
        let v = thm_c_check(n, t, plan, false).unwrap();
        assert!(v.is_pass() && v.certified, "n={n} t={t}: {}", v.detail);
    }
    assert!(matches!(
        thm_c_check(3, 1, plan, false),
        Err(Error::ParameterDomain(_))
    ));
    assert!(matches!(
        thm_c_check(1, 2, plan, false),
        Err(Error::ParameterDomain(_))
    ));
    // A single b point still agrees, as a sample.
    let v = thm_c_check(5, 1, GridPlan::capped(1), false).unwrap();
    assert!(v.is_pass() && !v.certified);
    // b = q^{tn}, a = 2: both sides equal the directly summed series.
    let (l, r) = thm_c_sides(2, 1, Binding::Number(rat(2)), Binding::QMonomial(rat(1), 2)).unwrap();
    assert_eq!(l, r);
    let half = RationalFunc::constant(ratio(1, 2));
    let want = direct_phi(
        &[
            RationalFunc::constant(rat(2)) * RationalFunc::q_pow(-1),
            &half * &RationalFunc::q_pow(-1),
            RationalFunc::q_pow(-3),
        ],
        &[RationalFunc::q_pow(3), RationalFunc::q_pow(1)],
        3,
        &RationalFunc::q_pow(9),
        1,
    );
    assert_eq!(l, want);
}

#[test]
fn lemma_fixture_and_grids() {
    let (l, r) = lemma21_sides(1, rat(2), rat(3)).unwrap();
    let want = poly(0, &[1, -7, 4])
        .try_div(&(&poly(0, &[1, -1]) * &poly(0, &[1, -6])))
        .unwrap();
    assert_eq!(l, want);
    assert_eq!(r, want);
    let (l0, r0) = lemma21_sides(0, rat(5), ratio(-2, 3)).unwrap();
    assert!(l0.is_one() && r0.is_one());
    for m in 0..=4 {
        let v = lemma21_check(m, GridPlan::certified()).unwrap();
        assert!(v.is_pass() && v.certified, "{}", v.detail);
    }
    let sample = lemma21_check(5, GridPlan::capped(6)).unwrap();
    assert!(sample.is_pass());
}

#[test]
fn perturbation_vanishing_on_early_points_is_caught() {
    // Differs from the lemma by a multiple of (a-2)(a-3)(a-4)(a-5).
    let m = 2;
    let a = var("a");
    let bump = (a.clone() - k(2)) * (a.clone() - k(3)) * (a.clone() - k(4)) * (a - k(5)) * qp(1);
    let lhs = f::lemma_lhs(m);
    let rhs = f::lemma_rhs(m) + bump;
    let d = expr::identity_degree(&lhs, &rhs, &BoundVar::new("a"));
    assert!(d >= 4);
    let levels = [
        crate::pit::NestedVar::sized("a", d, 0, None),
        crate::pit::NestedVar::sized(
            "b",
            expr::identity_degree(&lhs, &rhs, &BoundVar::new("b")),
            0,
            None,
        ),
    ];
    let rep = crate::pit::verify_nested(&levels, |pt| {
        let mut env = Env::symbolic_q();
        for (n, v) in pt {
            env.set(n, Binding::Number(v.clone()));
        }
        let (l, r) = (lhs.eval(&env)?, rhs.eval(&env)?);
        Ok(if l.same_value(&r) {
            crate::pit::PointOutcome::Agree
        } else {
            crate::pit::PointOutcome::Disagree(serde_json::json!(null))
        })
    })
    .unwrap();
    let (pt, _) = rep.failure.expect("perturbation detected");
    assert_eq!(pt[0].1, rat(6));
}

#[test]
fn bounds_dominate_specialized_degrees() {
    // The degree of any specialization in a parameter never exceeds the bound.
    type Case = (Expr, &'static str, Vec<(&'static str, BigRational)>);
    let cases: Vec<Case> = vec![
        (f::lemma_lhs(4), "a", vec![("b", rat(3))]),
        (f::lemma_rhs(4), "a", vec![("b", rat(3))]),
        (f::lemma_rhs(4), "b", vec![("a", ratio(2, 7))]),
        (
            f::saalschutz_lhs(3),
            "c",
            vec![("a", rat(2)), ("b", rat(5))],
        ),
        (
            f::phi43(3),
            "x",
            vec![("a", rat(2)), ("b", rat(5)), ("c", rat(7))],
        ),
        (f::thm_c_rhs(5), "a", vec![("b", rat(3))]),
        (f::thm_c_lhs(2), "b", vec![("a", rat(3))]),
        (
            f::chain_rhs_second(&chain_shape(Chain::OneModSix, 7).unwrap()),
            "a",
            vec![],
        ),
    ];
    for (e, v, others) in cases {
        let b = e.bound(&BoundVar::new(v));
        for q0 in [rat(3), ratio(-5, 2)] {
            let mut env = Env::numeric_q(q0).with(v, Binding::Symbolic);
            for (n, x) in &others {
                env.set(n, Binding::Number(x.clone()));
            }
            let r = e.eval(&env).unwrap().normalize();
            let span = |p: &LaurentPoly| {
                if p.is_zero() {
                    0
                } else {
                    (p.max_exp() - p.min_exp()) as u64
                }
            };
            assert!(
                span(r.num()) <= b.num.width(),
                "{v}: num {} > {}",
                span(r.num()),
                b.num.width()
            );
            assert!(
                span(r.den()) <= b.den.width(),
                "{v}: den {} > {}",
                span(r.den()),
                b.den.width()
            );
        }
    }
    // Known-degree fixture in q: (1 - q^2)^3 q^{-1}.
    let e = (k(1) - qp(2)).pow(3) * qp(-1);
    assert_eq!(
        e.bound(&BoundVar::new("q")).num,
        expr::Span { lo: -1, hi: 5 }
    );
}

#[test]
fn identity_examples() {
    let plan = GridPlan::certified();
    let (l, r) = identity_sides(
        Identity::Saalschutz,
        0,
        &[("a", rat(2)), ("b", rat(3)), ("c", rat(5))],
    )
    .unwrap();
    assert!(l.is_one() && r.is_one());
    let pt = [
        ("a", rat(2)),
        ("b", rat(3)),
        ("c", rat(5)),
        ("x", rat(7)),
        ("y", rat(11)),
    ];
    for which in Identity::ALL {
        let (l, r) = identity_sides(which, 2, &pt).unwrap();
        assert_eq!(l, r, "{which:?}");
    }
    for which in Identity::ALL {
        for m in 0..=2 {
            let v = identity_check(which, m, plan).unwrap();
            assert!(v.is_pass() && v.certified, "{which:?} m={m}: {}", v.detail);
        }
    }
    assert!(identity_check(Identity::Rel5phi4, 3, plan)
        .unwrap()
        .is_pass());
}

#[test]
fn chain_congruences_and_limits() {
    let plan = GridPlan::certified();
    let v = chain_check(Chain::OneModSix, 7, plan).unwrap();
    assert!(v.is_pass() && v.certified, "{}", v.detail);
    let v = chain_check(Chain::FiveModSix, 5, plan).unwrap();
    assert!(v.is_pass() && v.certified, "{}", v.detail);
    assert!(matches!(
        chain_check(Chain::OneModSix, 1, plan),
        Err(Error::ParameterDomain(_))
    ));
    assert!(matches!(
        chain_check(Chain::FiveModSix, 7, plan),
        Err(Error::ParameterDomain(_))
    ));
    // a = q^{14} for n = 7: exact equality.
    let (l, r) = chain_sides(Chain::OneModSix, 7, Binding::QMonomial(rat(1), 14)).unwrap();
    assert_eq!(l, r);
    let (got, want) = lhopital_at(Chain::OneModSix, 7, &rat(2)).unwrap();
    assert_eq!(got, Some(want));
    let (got, want) = lhopital_at(Chain::FiveModSix, 5, &rat(3)).unwrap();
    assert_eq!(got, Some(want));
    let v = lhopital_check(Chain::FiveModSix, 5, plan).unwrap();
    assert!(v.is_pass() && v.certified);
}

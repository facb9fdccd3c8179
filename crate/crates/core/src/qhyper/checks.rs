//! Substitution and grid checks built on [`super::formulas`].

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use super::expr::{
    identity_degree, pochs_nonvanishing, reduced_identity_degree, Binding, BoundVar, Env, Expr,
    HyperTerm, PochPower,
};
use super::formulas::{self as f, ChainShape};
use crate::arith::{rat, LaurentPoly, RationalFunc};
use crate::cyclotomic::congruent_mod_cyclotomic;
use crate::error::{Error, Result};
use crate::pit::{verify_nested, NestedVar, PointOutcome};
use crate::verdict::{Status, Verdict};

/// Grid sizing: each level gets `degree bound + 1 + margin` points, or at
/// most `cap` when set (a capped grid below the bound is only a sample).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GridPlan {
    pub margin: usize,
    pub cap: Option<usize>,
}

impl GridPlan {
    pub fn certified() -> Self {
        Self::default()
    }

    pub fn capped(cap: usize) -> Self {
        GridPlan {
            margin: 0,
            cap: Some(cap),
        }
    }

    fn level(&self, name: &str, bound: u64) -> NestedVar {
        NestedVar::sized(name, bound, self.margin, self.cap)
    }
}

fn with_point(base: &Env, pt: &[(String, BigRational)]) -> Env {
    let mut env = base.clone();
    for (n, v) in pt {
        env.set(n, Binding::Number(v.clone()));
    }
    env
}

fn compare(lhs: &Expr, rhs: &Expr, env: &Env) -> Result<PointOutcome> {
    let (l, r) = (lhs.eval(env)?, rhs.eval(env)?);
    Ok(if l.same_value(&r) {
        PointOutcome::Agree
    } else {
        PointOutcome::Disagree(json!(l.sub(&r).normalize()))
    })
}

/// Checks `lhs = rhs` as rational functions in `q` over a nested grid in
/// `vars`, the other parameters fixed by `base`.
fn grid_identity(
    what: &str,
    lhs: &Expr,
    rhs: &Expr,
    base: &Env,
    vars: &[&str],
    plan: GridPlan,
) -> Result<Verdict> {
    let levels: Vec<NestedVar> = vars
        .iter()
        .map(|v| plan.level(v, identity_degree(lhs, rhs, &BoundVar::in_env(v, base))))
        .collect();
    let report = verify_nested(&levels, |pt| compare(lhs, rhs, &with_point(base, pt)))?;
    Ok(report.into_verdict(what, &levels))
}

/// Checks `Σ lhs = Σ rhs` termwise quantities over a nested grid sized by
/// the degree after dividing through by `base`; points where `base`
/// vanishes are skipped.
fn grid_reduced(
    what: &str,
    lhs: &[HyperTerm],
    rhs: &[HyperTerm],
    base: &[PochPower],
    vars: &[&str],
    plan: GridPlan,
) -> Result<Verdict> {
    let levels: Vec<NestedVar> = vars
        .iter()
        .map(|v| {
            plan.level(
                v,
                reduced_identity_degree(lhs, rhs, base, &BoundVar::new(v)),
            )
        })
        .collect();
    let l = Expr::Sum(lhs.iter().map(HyperTerm::to_expr).collect());
    let r = Expr::Sum(rhs.iter().map(HyperTerm::to_expr).collect());
    let report = verify_nested(&levels, |pt| {
        let env = with_point(&Env::symbolic_q(), pt);
        if !pochs_nonvanishing(base, &env)? {
            return Ok(PointOutcome::Pole);
        }
        compare(&l, &r, &env)
    })?;
    Ok(report.into_verdict(what, &levels))
}

fn q_tag(e: i64) -> Binding {
    Binding::QMonomial(BigRational::one(), e)
}

/// The two-parameter congruence modulo `(1-aq^{tn})(a-q^{tn})(b-q^{tn})`,
/// checked as three exact substitution identities: `a = q^{-tn}` and
/// `a = q^{tn}` over a grid in `b`, and `b = q^{tn}` over a grid in `a`.
pub fn thm_c_check(n: u64, t: u64, plan: GridPlan, allow_degenerate: bool) -> Result<Verdict> {
    if !(t == 1 || t == 2) {
        return Err(Error::ParameterDomain(format!("t = {t} must be 1 or 2")));
    }
    if n == 0 || !(n + t).is_multiple_of(3) {
        return Err(Error::ParameterDomain(format!(
            "n = {n} is not 3 - t mod 3 for t = {t}"
        )));
    }
    if n < 2 && !allow_degenerate {
        return Err(Error::ParameterDomain(
            "n = 1 is outside the default range n >= 2".into(),
        ));
    }
    let tn = (t * n) as i64;
    let lhs = f::thm_c_lhs(((tn + 1) / 3) as usize);
    let rhs = f::thm_c_rhs(tn);
    let q = Env::symbolic_q();
    let parts = vec![
        (
            "a=q^-tn".to_string(),
            grid_identity(
                "a = q^-tn",
                &lhs,
                &rhs,
                &q.clone().with("a", q_tag(-tn)),
                &["b"],
                plan,
            )?,
        ),
        (
            "a=q^tn".to_string(),
            grid_identity(
                "a = q^tn",
                &lhs,
                &rhs,
                &q.clone().with("a", q_tag(tn)),
                &["b"],
                plan,
            )?,
        ),
        (
            "b=q^tn".to_string(),
            grid_identity(
                "b = q^tn",
                &lhs,
                &rhs,
                &q.with("b", q_tag(tn)),
                &["a"],
                plan,
            )?,
        ),
    ];
    Ok(Verdict::all(
        format!("two-parameter congruence, n={n}, t={t}"),
        parts,
    ))
}

/// Both sides of the two-parameter congruence at explicit `a` and `b`.
pub fn thm_c_sides(n: u64, t: u64, a: Binding, b: Binding) -> Result<(RationalFunc, RationalFunc)> {
    let tn = (t * n) as i64;
    let env = Env::symbolic_q().with("a", a).with("b", b);
    let l = f::thm_c_lhs(((tn + 1) / 3) as usize).eval(&env)?;
    let r = f::thm_c_rhs(tn).eval(&env)?;
    Ok((l.normalize(), r.normalize()))
}

/// The terminating 3φ2 with argument `q^3` against its closed form.
pub fn lemma21_check(m: usize, plan: GridPlan) -> Result<Verdict> {
    grid_identity(
        &format!("3phi2 closed form, m={m}"),
        &f::lemma_lhs(m),
        &f::lemma_rhs(m),
        &Env::symbolic_q(),
        &["a", "b"],
        plan,
    )
}

pub fn lemma21_sides(
    m: usize,
    a: BigRational,
    b: BigRational,
) -> Result<(RationalFunc, RationalFunc)> {
    let env = Env::symbolic_q()
        .with("a", Binding::Number(a))
        .with("b", Binding::Number(b));
    Ok((
        f::lemma_lhs(m).eval(&env)?.normalize(),
        f::lemma_rhs(m).eval(&env)?.normalize(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Saalschutz,
    Rel4phi3,
    Eq21,
    Rel5phi4,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::Saalschutz,
        Identity::Rel4phi3,
        Identity::Eq21,
        Identity::Rel5phi4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Saalschutz => "saalschutz",
            Identity::Rel4phi3 => "rel4phi3",
            Identity::Eq21 => "eq21",
            Identity::Rel5phi4 => "rel5phi4",
        }
    }

    fn params(self) -> &'static [&'static str] {
        match self {
            Identity::Saalschutz => &["a", "b", "c"],
            Identity::Rel4phi3 | Identity::Eq21 => &["a", "b", "c", "x"],
            Identity::Rel5phi4 => &["a", "b", "c", "x", "y"],
        }
    }
}

fn termwise(
    what: &str,
    m: usize,
    summands: impl Fn(usize, usize) -> (HyperTerm, [HyperTerm; 2]),
    vars: &[&str],
    plan: GridPlan,
) -> Result<Verdict> {
    let mut parts = Vec::new();
    for j in 0..=m {
        let (l, [r1, r2]) = summands(m, j);
        let base = r1.pochs.clone();
        let v = grid_reduced(
            &format!("{what} summand {j}"),
            &[l],
            &[r1, r2],
            &base,
            vars,
            plan,
        )?;
        parts.push((format!("k={j}"), v));
    }
    Ok(Verdict::all(
        format!("{what}, m={m}, summand by summand"),
        parts,
    ))
}

/// Multi-parameter identities. The contiguous relations are checked summand
/// by summand (which implies the summed relation). The `Ω_m` closed form is
/// certified as the chain it comes from: the 4φ3 relation, q-Saalschütz
/// (valid for every `c`, hence for `c` and `cq`), and the identity
/// `α·Saal(c) + β·Saal(cq) = Ω_m`; a direct comparison of the 4φ3 with
/// `Ω_m` on a small grid guards the transcription of `Ω_m` itself.
pub fn identity_check(which: Identity, m: usize, plan: GridPlan) -> Result<Verdict> {
    match which {
        Identity::Saalschutz => grid_identity(
            &format!("q-Saalschutz, m={m}"),
            &f::saalschutz_lhs(m),
            &f::saalschutz_rhs(m, super::expr::var("c")),
            &Env::symbolic_q(),
            which.params(),
            plan,
        ),
        Identity::Rel4phi3 => termwise("4phi3 relation", m, f::rel4_summands, which.params(), plan),
        Identity::Rel5phi4 => termwise("5phi4 relation", m, f::rel5_summands, which.params(), plan),
        Identity::Eq21 => {
            let omega = f::omega_term(m, super::expr::var("c"));
            let base = omega.pochs.clone();
            let chain = vec![
                (
                    "4phi3 relation".to_string(),
                    identity_check(Identity::Rel4phi3, m, plan)?,
                ),
                (
                    "q-Saalschutz".to_string(),
                    identity_check(Identity::Saalschutz, m, plan)?,
                ),
                (
                    "omega".to_string(),
                    grid_reduced(
                        &format!("Omega_m from two Saalschutz values, m={m}"),
                        &[omega],
                        &f::rel4_saalschutz_terms(m),
                        &base,
                        which.params(),
                        plan,
                    )?,
                ),
            ];
            let direct = grid_identity(
                &format!("4phi3 = Omega_m direct, m={m}"),
                &f::phi43(m),
                &f::omega(m, super::expr::var("c")),
                &Env::symbolic_q(),
                which.params(),
                GridPlan::capped(2),
            )?;
            let mut v = Verdict::all(format!("Omega_m closed form, m={m}"), chain);
            if !direct.is_pass() {
                return Ok(direct);
            }
            if let Some(serde_json::Value::Object(map)) = v.witness.as_mut() {
                map.insert("direct".into(), direct.witness.unwrap_or_default());
            }
            Ok(v)
        }
    }
}

/// Both sides of an identity at one parameter point (series summed in full).
pub fn identity_sides(
    which: Identity,
    m: usize,
    params: &[(&str, BigRational)],
) -> Result<(RationalFunc, RationalFunc)> {
    let mut env = Env::symbolic_q();
    for (n, v) in params {
        env.set(n, Binding::Number(v.clone()));
    }
    let summed = |s: fn(usize, usize) -> (HyperTerm, [HyperTerm; 2])| {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for j in 0..=m {
            let (a, [b, c]) = s(m, j);
            l.push(a.to_expr());
            r.push(b.to_expr());
            r.push(c.to_expr());
        }
        (Expr::Sum(l), Expr::Sum(r))
    };
    let (l, r) = match which {
        Identity::Saalschutz => (
            f::saalschutz_lhs(m),
            f::saalschutz_rhs(m, super::expr::var("c")),
        ),
        Identity::Rel4phi3 => summed(f::rel4_summands),
        Identity::Rel5phi4 => summed(f::rel5_summands),
        Identity::Eq21 => (f::phi43(m), f::omega(m, super::expr::var("c"))),
    };
    Ok((l.eval(&env)?.normalize(), r.eval(&env)?.normalize()))
}

/// The two `b → 1` congruences modulo `Φ_n(q)(1-aq^{sn})(a-q^{sn})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Chain {
    /// `n ≡ 1 (mod 6)`, `s = 2`.
    #[serde(rename = "a")]
    OneModSix,
    /// `n ≡ 5 (mod 6)`, `s = 1`, with `C_{n/2}`.
    #[serde(rename = "b")]
    FiveModSix,
}

pub fn chain_shape(which: Chain, n: u64) -> Result<ChainShape> {
    let ni = n as i64;
    match which {
        Chain::OneModSix if n % 6 == 1 && n > 1 => Ok(ChainShape {
            sn: 2 * ni,
            two_n: 2 * ni,
            kk: ((2 * ni + 1) / 3) as usize,
            k_short: ((2 * ni - 2) / 3) as usize,
            sign: -1,
        }),
        Chain::FiveModSix if n % 6 == 5 => Ok(ChainShape {
            sn: ni,
            two_n: ni,
            kk: ((ni + 1) / 3) as usize,
            k_short: ((ni - 2) / 3) as usize,
            sign: 1,
        }),
        _ => Err(Error::ParameterDomain(format!(
            "n = {n} does not fit {which:?}"
        ))),
    }
}

fn chain_form(what: &str, n: u64, s: &ChainShape, rhs: &Expr, plan: GridPlan) -> Result<Verdict> {
    let lhs = f::chain_lhs(s.kk);
    let q = Env::symbolic_q();
    let up = grid_identity(
        &format!("{what}, a = q^sn"),
        &lhs,
        rhs,
        &q.clone().with("a", q_tag(s.sn)),
        &[],
        plan,
    )?;
    let down = grid_identity(
        &format!("{what}, a = q^-sn"),
        &lhs,
        rhs,
        &q.clone().with("a", q_tag(-s.sn)),
        &[],
        plan,
    )?;
    let level = plan.level("a", identity_degree(&lhs, rhs, &BoundVar::new("a")));
    let levels = [level];
    let report = verify_nested(&levels, |pt| {
        let env = with_point(&q, pt);
        let l = lhs.eval(&env)?.normalize();
        let r = rhs.eval(&env)?.normalize();
        let v = congruent_mod_cyclotomic(&l, &r, n, 1)?;
        Ok(match v.status {
            Status::Pass => PointOutcome::Agree,
            _ => PointOutcome::Disagree(v.witness.unwrap_or_default()),
        })
    })?;
    let modphi = report.into_verdict(&format!("{what}, mod Phi_n"), &levels);
    Ok(Verdict::all(
        what.to_string(),
        vec![
            ("a=q^sn".into(), up),
            ("a=q^-sn".into(), down),
            ("mod Phi_n".into(), modphi),
        ],
    ))
}

/// Both displayed right-hand sides of a `b → 1` congruence.
pub fn chain_check(which: Chain, n: u64, plan: GridPlan) -> Result<Verdict> {
    let s = chain_shape(which, n)?;
    let first = chain_form("first form", n, &s, &f::chain_rhs_first(&s), plan)?;
    let second = chain_form("second form", n, &s, &f::chain_rhs_second(&s), plan)?;
    Ok(Verdict::all(
        format!("{which:?} congruence, n={n}"),
        vec![("first".into(), first), ("second".into(), second)],
    ))
}

/// Both sides of a `b → 1` congruence (second form) at `a`.
pub fn chain_sides(which: Chain, n: u64, a: Binding) -> Result<(RationalFunc, RationalFunc)> {
    let s = chain_shape(which, n)?;
    let env = Env::symbolic_q().with("a", a);
    Ok((
        f::chain_lhs(s.kk).eval(&env)?.normalize(),
        f::chain_rhs_second(&s).eval(&env)?.normalize(),
    ))
}

/// The value at `a = 1` of `vanishing · bracket / (1-a)^2` for fixed
/// numeric `q`, or `None` when the bracket does not vanish to order two.
fn limit_at(s: &ChainShape, q0: &BigRational) -> Result<Option<BigRational>> {
    let (vanish, bracket) = f::limit_numerator(s);
    let env = Env::numeric_q(q0.clone()).with("a", Binding::Symbolic);
    let br = bracket.eval(&env)?.normalize();
    let square = LaurentPoly::from_i64s(0, &[1, -2, 1]);
    let (quo, rem) = br.num().divrem(&square)?;
    if !rem.is_zero() {
        return Ok(None);
    }
    let one = BigRational::one();
    let den = br.den().eval(&one)?;
    if den.is_zero() {
        return Ok(None);
    }
    let v = vanish.eval(&Env::numeric_q(q0.clone()).with("a", Binding::Number(one.clone())))?;
    let v = v.num.eval(&one)? / v.den.eval(&one)?;
    Ok(Some(v * quo.eval(&one)? / den))
}

/// The limit identities `a → 1`, checked for each rational `q_0` by exact
/// division by `(1-a)^2` in `Q[a]`, over a `q_0` grid sized by the
/// `q`-degree of the cleared identity.
pub fn lhopital_check(which: Chain, n: u64, plan: GridPlan) -> Result<Verdict> {
    let s = chain_shape(which, n)?;
    let (vanish, bracket) = f::limit_numerator(&s);
    let value = f::limit_value(&s);
    let bound = identity_degree(&(vanish * bracket), &value, &BoundVar::new("q"));
    let levels = [plan.level("q", bound)];
    let report = verify_nested(&levels, |pt| {
        let q0 = &pt[0].1;
        let want = value.eval(&Env::numeric_q(q0.clone()))?;
        let want = want.num.eval(&BigRational::one())? / want.den.eval(&BigRational::one())?;
        Ok(match limit_at(&s, q0)? {
            None => PointOutcome::Disagree(json!("bracket does not vanish to order 2 at a = 1")),
            Some(got) if got == want => PointOutcome::Agree,
            Some(got) => PointOutcome::Disagree(json!({
                "limit": crate::arith::rational_to_string(&got),
                "displayed": crate::arith::rational_to_string(&want),
            })),
        })
    })?;
    Ok(report.into_verdict(&format!("limit a -> 1, {which:?}, n={n}"), &levels))
}

/// Evaluates the limit at one `q_0`: `(limit, displayed value)`.
pub fn lhopital_at(
    which: Chain,
    n: u64,
    q0: &BigRational,
) -> Result<(Option<BigRational>, BigRational)> {
    let s = chain_shape(which, n)?;
    let want = f::limit_value(&s).eval(&Env::numeric_q(q0.clone()))?;
    let one = rat(1);
    let want = want.num.eval(&one)? / want.den.eval(&one)?;
    Ok((limit_at(&s, q0)?, want))
}

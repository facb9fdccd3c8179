//! q-hypergeometric builders and the checks that run on them.
//!
//! Closed forms are transcribed once as [`expr::Expr`] trees in
//! [`formulas`]; this module evaluates them into canonical rational
//! functions and runs the substitution and grid checks.

mod checks;
pub mod expr;
pub mod formulas;

pub use checks::*;

use crate::arith::{LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use expr::Env;

/// `(x; q^step)_count`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPochSpec {
    pub x: RationalFunc,
    pub step: u32,
    pub count: usize,
}

/// A terminating or truncated basic hypergeometric series in base `q^step`:
/// `Σ_{k≤truncation} (upper; q^s)_k / ((q^s; q^s)_k (lower; q^s)_k) argument^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub upper: Vec<RationalFunc>,
    pub lower: Vec<RationalFunc>,
    pub step: u32,
    pub argument: RationalFunc,
    pub truncation: usize,
}

/// `[n] = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u64) -> LaurentPoly {
    LaurentPoly::from_i64s(0, &vec![1; n as usize])
}

pub fn q_pochhammer(spec: &QPochSpec) -> RationalFunc {
    expr::poch(expr::fixed(spec.x.clone()), spec.step as i64, spec.count)
        .eval(&Env::symbolic_q())
        .expect("a product of polynomials in q has no poles")
        .normalize()
}

/// Sums the series exactly. A series whose upper parameters make the terms
/// vanish from some index on is summed only up to there.
pub fn truncated_phi(spec: &SeriesSpec) -> Result<RationalFunc> {
    if spec.step == 0 {
        return Err(Error::ParameterDomain(
            "series step must be positive".into(),
        ));
    }
    let s = expr::series(
        spec.upper.iter().cloned().map(expr::fixed).collect(),
        spec.lower.iter().cloned().map(expr::fixed).collect(),
        spec.step as i64,
        expr::fixed(spec.argument.clone()),
        spec.truncation,
    );
    Ok(s.eval(&Env::symbolic_q())?.normalize())
}

fn sides(lhs: &expr::Expr, rhs: &expr::Expr) -> Result<(RationalFunc, RationalFunc)> {
    let env = Env::symbolic_q();
    Ok((lhs.eval(&env)?.normalize(), rhs.eval(&env)?.normalize()))
}

/// Both sides of the `n ≡ 1 (mod 6)` congruence modulo `Φ_n(q)^3`.
/// `n = 1` satisfies the residue condition but the congruence fails there;
/// it is only built when `allow_degenerate` is set.
pub fn thm_a_sides(n: u64, allow_degenerate: bool) -> Result<(RationalFunc, RationalFunc)> {
    if n % 6 != 1 {
        return Err(Error::ParameterDomain(format!("n = {n} is not 1 mod 6")));
    }
    if n == 1 && !allow_degenerate {
        return Err(Error::ParameterDomain(
            "n = 1 is excluded: the sides differ at q = 1 (26/27 vs 2)".into(),
        ));
    }
    let n = n as i64;
    debug_assert_eq!((2 - 2 * n) % 3, 0);
    sides(
        &formulas::cubic_sum(((2 * n + 1) / 3) as usize),
        &formulas::thm_a_rhs(n),
    )
}

/// Both sides of the `n ≡ 5 (mod 6)` congruence modulo `Φ_n(q)^3`.
pub fn thm_b_sides(n: u64) -> Result<(RationalFunc, RationalFunc)> {
    thm_b_sides_with_theta_constant(n, 4)
}

/// As [`thm_b_sides`] with θ_n's `q^{2n}` constant coefficient set to `c`;
/// any `c ≠ 4` is a deliberately wrong formula.
pub fn thm_b_sides_with_theta_constant(n: u64, c: i64) -> Result<(RationalFunc, RationalFunc)> {
    if n % 6 != 5 {
        return Err(Error::ParameterDomain(format!("n = {n} is not 5 mod 6")));
    }
    let n = n as i64;
    debug_assert_eq!((2 - n) % 3, 0);
    let rhs = formulas::thm_b_rhs_with_theta(n, formulas::theta_with_constant(n, c));
    sides(&formulas::cubic_sum(((n + 1) / 3) as usize), &rhs)
}

#[cfg(test)]
mod tests;

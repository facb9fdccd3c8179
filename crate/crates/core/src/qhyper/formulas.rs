//! Literal transcriptions of the displayed formulas as [`Expr`] trees.
//!
//! Nothing here is simplified by hand: each factor appears exactly as
//! displayed, so a transcription slip shows up as a failing check.

use super::expr::{k, poch, qint, qp, series, var, Expr, HyperTerm, PochPower};

fn a() -> Expr {
    var("a")
}
fn b() -> Expr {
    var("b")
}
fn c() -> Expr {
    var("c")
}
fn x() -> Expr {
    var("x")
}
fn y() -> Expr {
    var("y")
}

/// `Σ_{i=1}^{kk} 3q^{3i-2}/[3i-2]^2 - (1+5q+3q^2)/(1+q)`
pub fn harmonic_bracket(kk: usize) -> Expr {
    let mut sum = Vec::with_capacity(kk);
    for i in 1..=kk as i64 {
        sum.push(k(3) * qp(3 * i - 2) / qint(3 * i - 2).pow(2));
    }
    Expr::Sum(sum) - (k(1) + k(5) * qp(1) + k(3) * qp(2)) / (k(1) + qp(1))
}

/// `Σ_{k=0}^{kk} (q^{-1};q^3)_k^3 / (q^3;q^3)_k^3 q^{9k}`
pub fn cubic_sum(kk: usize) -> Expr {
    series(
        vec![qp(-1), qp(-1), qp(-1)],
        vec![qp(3), qp(3)],
        3,
        qp(9),
        kk,
    )
}

/// `(1+q)(q;q^3)_kk^2/(q^3;q^3)_kk^2`
fn pochhammer_prefactor(kk: usize) -> Expr {
    (k(1) + qp(1)) * poch(qp(1), 3, kk).pow(2) / poch(qp(3), 3, kk).pow(2)
}

/// Right-hand side of the `n ≡ 1 (mod 6)` congruence.
pub fn thm_a_rhs(n: i64) -> Expr {
    let kk = ((2 * n + 1) / 3) as usize;
    qp((2 - 2 * n) / 3)
        * pochhammer_prefactor(kk)
        * (k(3) - qint(2 * n).pow(2) * harmonic_bracket(kk))
}

/// `θ_n(q)`
pub fn theta(n: i64) -> Expr {
    theta_with_constant(n, 4)
}

/// θ_n with the constant term of its `q^{2n}` coefficient replaced by `c`
/// (4 in the true formula).
pub fn theta_with_constant(n: i64, c: i64) -> Expr {
    let num = (k(1) - qp(1) - k(3) * qp(2)) * (k(1) - k(2) * qp(n))
        + (k(c) - k(4) * qp(1) - k(6) * qp(2) + k(3) * qp(3)) * qp(2 * n);
    num / ((k(1) + qp(1)) * (qp(1) - qp(n)).pow(2))
}

/// Right-hand side of the `n ≡ 5 (mod 6)` congruence.
pub fn thm_b_rhs(n: i64) -> Expr {
    thm_b_rhs_with_theta(n, theta(n))
}

pub fn thm_b_rhs_with_theta(n: i64, theta: Expr) -> Expr {
    let kk = ((n + 1) / 3) as usize;
    qp((2 - n) / 3) * pochhammer_prefactor(kk) * (theta + qint(n).pow(2) * harmonic_bracket(kk))
}

/// Left-hand side of the two-parameter congruence, truncated at `kk`.
pub fn thm_c_lhs(kk: usize) -> Expr {
    series(
        vec![a() * qp(-1), qp(-1) / a(), qp(-1) / b()],
        vec![qp(3), qp(3) / b()],
        3,
        qp(9),
        kk,
    )
}

/// `A_n(q; b, t)` with `tn` the product `t·n`.
pub fn a_n(tn: i64) -> Expr {
    let brace = qp(tn + 2) / b() - qp(1) + qp(tn - 1) * (k(1) + qp(3) - qp(tn + 2) - qp(2) / b());
    let first = b() * (k(1) - qp(tn + 1)) * brace
        / ((k(1) - qp(1)) * (k(1) - b() * qp(tn - 1)) * (k(1) - qp(tn + 1) / b()));
    let second = (k(1) - qp(tn - 2) / b() - qp(tn + 1) * (k(2) - qp(tn - 1) - qp(-1) / b()))
        / ((k(1) - qp(tn - 1)) * (k(1) - qp(-1) / b()));
    first - second
}

/// `B(q; a, b)`
pub fn b_ab() -> Expr {
    let first = (k(1) - b() * qp(1)) * (k(1) - qp(1) - b() * (qp(-2) + qp(1) - a() - a().inv()))
        / (qp(1) * (k(1) - qp(1)) * (k(1) - a() * b() / qp(1)) * (k(1) - b() / (a() * qp(1))));
    let second = (k(1) - qp(-2) - b() * (k(2) * qp(1) - a() - a().inv()))
        / (b() * qp(1) * (k(1) - a() * qp(-1)) * (k(1) - qp(-1) / a()));
    first - second
}

/// Right-hand side of the two-parameter congruence.
pub fn thm_c_rhs(tn: i64) -> Expr {
    let kk = ((tn + 1) / 3) as usize;
    let kx = kk as i32;
    let denom = (a() - b()) * (k(1) - a() * b());
    let first = (b() - qp(tn)) * (a() * b() - k(1) - a().pow(2) + a() * qp(tn)) / denom.clone()
        * (poch(b() * qp(1), 3, kk) * poch(qp(1), 3, kk))
        / ((b() * qp(1)).pow(kx) * poch(b().inv(), 3, kk) * poch(qp(3), 3, kk))
        * a_n(tn);
    let second = (k(1) - a() * qp(tn)) * (a() - qp(tn)) / denom
        * (poch(a() * qp(1), 3, kk) * poch(qp(1) / a(), 3, kk))
        / (b().pow(kx) * poch(b().inv(), 3, kk) * poch((b() * qp(1)).inv(), 3, kk))
        * b_ab();
    first + second
}

/// Closed form of the `m`-term 3φ2 with argument `q^3`.
pub fn lemma_lhs(m: usize) -> Expr {
    let mi = m as i64;
    series(
        vec![a(), b(), qp(-mi)],
        vec![qp(1), a() * b() * qp(2 - mi)],
        1,
        qp(3),
        m,
    )
}

pub fn lemma_rhs(m: usize) -> Expr {
    let mi = m as i64;
    let pre = poch(a().inv(), 1, m) * poch(b().inv(), 1, m)
        / (poch(qp(1), 1, m) * poch((a() * b()).inv(), 1, m));
    let first = qp(mi)
        * (k(1) - qp(mi))
        * (qp(1) - a() * b() * qp(2) - (k(1) + qp(1) - a() * qp(1) - b() * qp(1)) * qp(mi))
        / ((k(1) - a() * b() * qp(1)) * (a() * qp(1) - qp(mi)) * (b() * qp(1) - qp(mi)));
    let second = (k(1) - a() * b() - (k(2) - a() - b()) * qp(mi)) / ((k(1) - a()) * (k(1) - b()));
    pre * (first - second)
}

/// `(c/a, c/b; q)_m / (c, c/ab; q)_m` with `c` an arbitrary monomial.
pub fn saalschutz_rhs(m: usize, cc: Expr) -> Expr {
    poch(cc.clone() / a(), 1, m) * poch(cc.clone() / b(), 1, m)
        / (poch(cc.clone(), 1, m) * poch(cc / (a() * b()), 1, m))
}

pub fn saalschutz_lhs(m: usize) -> Expr {
    let mi = m as i64;
    series(
        vec![a(), b(), qp(-mi)],
        vec![c(), a() * b() * qp(1 - mi) / c()],
        1,
        qp(1),
        m,
    )
}

/// The balanced 4φ3 with parameters `x q` over `x`.
pub fn phi43(m: usize) -> Expr {
    let mi = m as i64;
    series(
        vec![a(), b(), x() * qp(1), qp(-mi)],
        vec![c() * qp(1), x(), a() * b() * qp(1 - mi) / c()],
        1,
        qp(1),
        m,
    )
}

/// The Pochhammer prefactor of `Ω_m(q; a, b, cc, x)`.
fn omega_pochs(m: usize, cc: &Expr) -> Vec<PochPower> {
    vec![
        PochPower::new(cc.clone() / a(), 1, m, 1),
        PochPower::new(cc.clone() / b(), 1, m, 1),
        PochPower::new(qp(1) * cc.clone(), 1, m, -1),
        PochPower::new(cc.clone() / (a() * b()), 1, m, -1),
    ]
}

/// The brace of `Ω_m(q; a, b, cc, x)`.
fn omega_brace(m: usize, cc: Expr) -> Expr {
    let mi = m as i64;
    let ab = a() * b();
    let d = ab.clone() - cc.clone().pow(2) * qp(mi);
    (k(1) - cc.clone() * qp(mi)) * (ab.clone() - cc.clone() * x() * qp(mi))
        / ((k(1) - x()) * d.clone())
        + (cc.clone() - x())
            * (ab - cc.clone())
            * (a() - cc.clone() * qp(mi))
            * (b() - cc.clone() * qp(mi))
            / ((k(1) - x()) * (a() - cc.clone()) * (b() - cc) * d)
}

pub fn omega_term(m: usize, cc: Expr) -> HyperTerm {
    HyperTerm {
        pochs: omega_pochs(m, &cc),
        coeff: omega_brace(m, cc),
    }
}

pub fn omega(m: usize, cc: Expr) -> Expr {
    omega_term(m, cc).to_expr()
}

fn rel4_alpha(m: i64) -> Expr {
    (k(1) - c()) * (a() * b() - c() * x() * qp(m))
        / ((k(1) - x()) * (a() * b() - c().pow(2) * qp(m)))
}

fn rel4_beta(m: i64) -> Expr {
    (c() - x()) * (a() * b() - c() * qp(m)) / ((k(1) - x()) * (a() * b() - c().pow(2) * qp(m)))
}

/// The two Saalschütz values combined as in the 4φ3 relation.
pub fn rel4_saalschutz_terms(m: usize) -> [HyperTerm; 2] {
    let mi = m as i64;
    let saal = |cc: Expr| {
        vec![
            PochPower::new(cc.clone() / a(), 1, m, 1),
            PochPower::new(cc.clone() / b(), 1, m, 1),
            PochPower::new(cc.clone(), 1, m, -1),
            PochPower::new(cc / (a() * b()), 1, m, -1),
        ]
    };
    [
        HyperTerm {
            coeff: rel4_alpha(mi),
            pochs: saal(c()),
        },
        HyperTerm {
            coeff: rel4_beta(mi),
            pochs: saal(c() * qp(1)),
        },
    ]
}

fn summand(j: usize, upper: Vec<Expr>, lower: Vec<Expr>, coeff: Expr) -> HyperTerm {
    let mut pochs: Vec<PochPower> = upper
        .into_iter()
        .map(|e| PochPower::new(e, 1, j, 1))
        .collect();
    pochs.push(PochPower::new(qp(1), 1, j, -1));
    pochs.extend(lower.into_iter().map(|e| PochPower::new(e, 1, j, -1)));
    HyperTerm {
        coeff: coeff * qp(j as i64),
        pochs,
    }
}

/// The `j`-th summands of the 4φ3 relation: `(lhs, [rhs1, rhs2])`.
pub fn rel4_summands(m: usize, j: usize) -> (HyperTerm, [HyperTerm; 2]) {
    let mi = m as i64;
    let ab = || a() * b();
    let lhs = summand(
        j,
        vec![a(), b(), x() * qp(1), qp(-mi)],
        vec![c() * qp(1), x(), ab() * qp(1 - mi) / c()],
        k(1),
    );
    let r1 = summand(
        j,
        vec![a(), b(), qp(-mi)],
        vec![c(), ab() * qp(1 - mi) / c()],
        rel4_alpha(mi),
    );
    let r2 = summand(
        j,
        vec![a(), b(), qp(-mi)],
        vec![c() * qp(1), ab() * qp(-mi) / c()],
        rel4_beta(mi),
    );
    (lhs, [r1, r2])
}

/// The `j`-th summands of the 5φ4 relation: `(lhs, [rhs1, rhs2])`.
pub fn rel5_summands(m: usize, j: usize) -> (HyperTerm, [HyperTerm; 2]) {
    let mi = m as i64;
    let ab = || a() * b();
    let d = || ab() - c().pow(2) * qp(mi + 1);
    let alpha = (k(1) - c() * qp(1)) * (ab() - c() * y() * qp(mi)) / ((k(1) - y()) * d());
    let beta = (c() * qp(1) - y()) * (ab() - c() * qp(mi)) / ((k(1) - y()) * d());
    let lhs = summand(
        j,
        vec![a(), b(), x() * qp(1), y() * qp(1), qp(-mi)],
        vec![c() * qp(2), x(), y(), ab() * qp(1 - mi) / c()],
        k(1),
    );
    let r1 = summand(
        j,
        vec![a(), b(), x() * qp(1), qp(-mi)],
        vec![c() * qp(1), x(), ab() * qp(1 - mi) / c()],
        alpha,
    );
    let r2 = summand(
        j,
        vec![a(), b(), x() * qp(1), qp(-mi)],
        vec![c() * qp(2), x(), ab() * qp(-mi) / c()],
        beta,
    );
    (lhs, [r1, r2])
}

/// The 5φ4 of the relation, as a series.
pub fn phi54(m: usize) -> Expr {
    let mi = m as i64;
    series(
        vec![a(), b(), x() * qp(1), y() * qp(1), qp(-mi)],
        vec![c() * qp(2), x(), y(), a() * b() * qp(1 - mi) / c()],
        1,
        qp(1),
        m,
    )
}

/// The two-parameter sum at `b = 1`: `(aq^{-1}, q^{-1}/a, q^{-1}; q^3)_k / (q^3;q^3)_k^3`.
pub fn chain_lhs(kk: usize) -> Expr {
    series(
        vec![a() * qp(-1), qp(-1) / a(), qp(-1)],
        vec![qp(3), qp(3)],
        3,
        qp(9),
        kk,
    )
}

/// `C_n(q)` with `two_n` standing for the displayed `2n`.
pub fn c_n(two_n: i64) -> Expr {
    let den = || qp(1) * (k(1) - qp(1)).pow(2) * (k(1) - qp(two_n - 1)).pow(2);
    let first = (qp(3)
        + qp(two_n) * (k(1) + qp(2 * two_n)) * (k(1) - k(3) * qp(1) + qp(3) - k(3) * qp(4)))
        / den();
    let second = (qp(2 * two_n)
        * (k(1) - k(3) * qp(1) + k(6) * qp(2) + k(2) * qp(3) - k(3) * qp(4) + k(3) * qp(5))
        + qp(4 * two_n + 3))
        / den();
    first + second
}

/// `D(q; a)`
pub fn d_qa() -> Expr {
    let num = (k(1) + a() + a().pow(2))
        * (a() - k(3) * a() * qp(1) + qp(3) + a().pow(2) * qp(3) - k(3) * a() * qp(4))
        + k(3) * a().pow(2) * qp(2) * (k(2) + qp(3));
    num / (qp(1)
        * (k(1) - qp(1)).pow(2)
        * (k(1) - a() * qp(1)).pow(2)
        * (k(1) - a() / qp(1)).pow(2))
}

/// Shape of a `b → 1` congruence: `sn` is the exponent in `(1 - a q^{sn})`,
/// `sign` is `-1` for the `n ≡ 1 (mod 6)` variant and `+1` otherwise.
#[derive(Clone, Copy, Debug)]
pub struct ChainShape {
    pub sn: i64,
    pub two_n: i64,
    pub kk: usize,
    pub k_short: usize,
    pub sign: i64,
}

fn vanishing(sn: i64) -> Expr {
    (k(1) - a() * qp(sn)) * (a() - qp(sn))
}

fn chain_common(s: &ChainShape) -> Expr {
    poch(qp(1), 3, s.kk).pow(2) / (qp(s.kk as i64) * poch(qp(3), 3, s.kk).pow(2)) * c_n(s.two_n)
}

/// The first displayed right-hand side of the `b → 1` congruence.
pub fn chain_rhs_first(s: &ChainShape) -> Expr {
    let one_a = (k(1) - a()).pow(2);
    (one_a.clone() + vanishing(s.sn)) / one_a.clone() * chain_common(s)
        + vanishing(s.sn) / one_a * (poch(a() * qp(1), 3, s.kk) * poch(qp(1) / a(), 3, s.kk))
            / (poch(qp(2), 3, s.k_short) * poch(qp(3), 3, s.k_short))
            * d_qa()
}

/// The braced term `∓(q;q^3)^2(3q+3q^2) ± (aq,q/a;q^3)(1-q)^2 D(q;a)`
/// with the `(q^3;q^3)^2` denominators when `with_den` is set.
fn chain_brace(s: &ChainShape, with_den: bool) -> Expr {
    let den = || {
        if with_den {
            poch(qp(3), 3, s.kk).pow(2)
        } else {
            k(1)
        }
    };
    let first = poch(qp(1), 3, s.kk).pow(2) / den() * (k(3) * qp(1) + k(3) * qp(2));
    let second = poch(a() * qp(1), 3, s.kk) * poch(qp(1) / a(), 3, s.kk) / den()
        * (k(1) - qp(1)).pow(2)
        * d_qa();
    if s.sign < 0 {
        second - first
    } else {
        first - second
    }
}

/// The second displayed right-hand side of the `b → 1` congruence.
pub fn chain_rhs_second(s: &ChainShape) -> Expr {
    chain_common(s)
        + vanishing(s.sn) / (qp(s.kk as i64) * (k(1) - a()).pow(2)) * chain_brace(s, true)
}

/// `(1 - aq^{sn})(a - q^{sn})` times the bracket whose limit at `a = 1` is taken.
pub fn limit_numerator(s: &ChainShape) -> (Expr, Expr) {
    (vanishing(s.sn), chain_brace(s, false))
}

/// The displayed value of the limit.
pub fn limit_value(s: &ChainShape) -> Expr {
    k(s.sign)
        * qp(1)
        * (k(1) + qp(1))
        * qint(s.sn).pow(2)
        * poch(qp(1), 3, s.kk).pow(2)
        * harmonic_bracket(s.kk)
}

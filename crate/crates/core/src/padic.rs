//! Residues modulo p^k, Morita's p-adic Gamma function, and the p-adic
//! supercongruences for sums of cubed rising factorials at ±1/3.
//!
//! Every left side is built as one exact rational and reduced only at the
//! end: individual terms may carry powers of p in their denominators that
//! cancel in the total.
//!
//! Γ_p at a rational x is evaluated at the integer representative of x in
//! [0, p^k). Since |Γ_p(x) − Γ_p(y)|_p ≤ |x − y|_p, this is exact mod p^k.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{rat, ratio, rational_to_string};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

pub const DEFAULT_PRECISION: u32 = 3;
pub const MAX_PRECISION: u32 = 4;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes p with 5 ≤ p ≤ max.
pub fn primes_from_five(max: u64) -> Vec<u64> {
    (5..=max).filter(|&p| is_prime(p)).collect()
}

/// A prime p ≥ 5 and a precision k, with a cache of Γ_p values.
pub struct PadicContext {
    p: u64,
    k: u32,
    modulus: u64,
    unsigned_gamma: bool,
    gamma_cache: RwLock<HashMap<u64, u64>>,
}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicContext")
            .field("p", &self.p)
            .field("k", &self.k)
            .finish()
    }
}

impl PadicContext {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_precision(p, DEFAULT_PRECISION)
    }

    pub fn with_precision(p: u64, k: u32) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::ParameterDomain(format!(
                "p = {p}: need a prime p >= 5 so that 3 is a p-adic unit"
            )));
        }
        if k == 0 || k > MAX_PRECISION {
            return Err(Error::ParameterDomain(format!(
                "precision k = {k} outside 1..={MAX_PRECISION}"
            )));
        }
        Ok(PadicContext {
            p,
            k,
            modulus: p.pow(k),
            unsigned_gamma: false,
            gamma_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Drops the factor (−1)^n from Γ_p(n). Only for fault-injection runs.
    pub fn with_unsigned_gamma(mut self) -> Self {
        self.unsigned_gamma = true;
        self.gamma_cache = RwLock::new(HashMap::new());
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self, v: u64) -> PadicResidue {
        PadicResidue {
            value: v % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn residue_of_int(&self, v: &BigInt) -> PadicResidue {
        let m = BigInt::from(self.modulus);
        self.residue(v.mod_floor(&m).to_u64().unwrap())
    }

    /// Γ_p(r) for an integer representative r.
    pub fn gamma_at(&self, r: u64) -> PadicResidue {
        let r = r % self.modulus;
        if let Some(&v) = self.gamma_cache.read().unwrap().get(&r) {
            return self.residue(v);
        }
        let m = self.modulus as u128;
        let mut prod: u128 = 1;
        for j in 1..r {
            if j % self.p != 0 {
                prod = prod * j as u128 % m;
            }
        }
        let mut v = prod as u64;
        if r % 2 == 1 && !self.unsigned_gamma {
            v = (self.modulus - v) % self.modulus;
        }
        self.gamma_cache.write().unwrap().insert(r, v);
        self.residue(v)
    }
}

/// An element of Z/p^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicResidue {
    value: u64,
    modulus: u64,
}

impl PadicResidue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = PadicResidue {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Inverse by extended Euclid; `None` for non-units.
    pub fn inv(self) -> Option<Self> {
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (s0, s1) = (s1, s0 - qt * s1);
        }
        if r0 != 1 {
            return None;
        }
        Some(PadicResidue {
            value: s0.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for PadicResidue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        PadicResidue {
            value: ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for PadicResidue {
    type Output = Self;
    fn neg(self) -> Self {
        PadicResidue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for PadicResidue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for PadicResidue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        PadicResidue {
            value: (self.value as u128 * o.value as u128 % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

/// u·v^{−1} mod p^k for x = u/v.
pub fn residue_of_rational(x: &BigRational, ctx: &PadicContext) -> Result<PadicResidue> {
    let den = ctx.residue_of_int(x.denom());
    let inv = den
        .inv()
        .ok_or_else(|| Error::NotPAdicUnit(format!("{} (p = {})", rational_to_string(x), ctx.p)))?;
    Ok(ctx.residue_of_int(x.numer()) * inv)
}

/// Morita's Γ_p at the representative of x in [0, p^k).
pub fn morita_gamma(x: &BigRational, ctx: &PadicContext) -> Result<PadicResidue> {
    let r = residue_of_rational(x, ctx)?;
    Ok(ctx.gamma_at(r.value))
}

/// (x)_m = x(x+1)…(x+m−1).
pub fn rising_rational(x: &BigRational, m: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut f = x.clone();
    for _ in 0..m {
        acc *= &f;
        f += BigRational::one();
    }
    acc
}

/// H_m for order 1, H_m^{(2)} for order 2.
pub fn harmonic(m: usize, order: u32) -> BigRational {
    (1..=m as i64).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i).pow(order))
    })
}

/// The exponent of p in x; `None` for x = 0.
pub fn p_adic_valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let count = |n: &BigInt| {
        let p = BigInt::from(p);
        let mut n = n.abs();
        let mut v = 0i64;
        while n.is_multiple_of(&p) {
            n /= &p;
            v += 1;
        }
        v
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// Σ_{k=0}^{K} (x)_k³ / k!³.
pub fn cubed_rising_sum(x: &BigRational, truncation: usize) -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for kk in 0..=truncation {
        sum += &term;
        let ratio = (x + rat(kk as i64)) / rat(kk as i64 + 1);
        term *= &ratio * &ratio * &ratio;
    }
    sum
}

fn inverse_square_sum(upto: usize, p2_numerator: i64) -> BigRational {
    (1..=upto as i64).fold(BigRational::zero(), |acc, i| {
        acc + ratio(p2_numerator, (3 * i - 2) * (3 * i - 2))
    })
}

fn class_of(ctx: &PadicContext, want: u64, what: &str) -> Result<()> {
    if ctx.p % 6 != want {
        return Err(Error::ParameterDomain(format!(
            "{what} needs p ≡ {want} (mod 6), got p = {}",
            ctx.p
        )));
    }
    Ok(())
}

fn compare(ctx: &PadicContext, what: &str, lhs: PadicResidue, rhs: PadicResidue) -> Verdict {
    let witness = json!({
        "p": ctx.p,
        "modulus": ctx.modulus,
        "lhs": lhs.value,
        "rhs": rhs.value,
        "difference": (lhs - rhs).value,
    });
    let detail = format!(
        "{what}: {} ≡ {} (mod {})",
        lhs.value, rhs.value, ctx.modulus
    );
    if lhs == rhs {
        Verdict::pass(detail, Some(witness), true)
    } else {
        Verdict::fail(detail.replace('≡', "≢"), witness)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    A,
    B,
}

/// Σ_{k<p} (1/3)_k³/k!³ against Γ_p(1/3)⁶ or −(p²/3)Γ_p(1/3)⁶.
pub fn check_long(ctx: &PadicContext) -> Result<Verdict> {
    let p = ctx.p;
    let third = ratio(1, 3);
    let lhs = residue_of_rational(&cubed_rising_sum(&third, p as usize - 1), ctx)?;
    let g6 = morita_gamma(&third, ctx)?.pow(6);
    let rhs = if p % 6 == 1 {
        g6
    } else {
        -residue_of_rational(&ratio(p as i64 * p as i64, 3), ctx)? * g6
    };
    Ok(compare(ctx, "sum of (1/3)_k^3/k!^3", lhs, rhs))
}

/// Σ_{k<p} (−1/3)_k³/k!³ against −18p²Γ_p(2/3)⁶ or 54Γ_p(2/3)⁶.
pub fn check_liu(ctx: &PadicContext) -> Result<Verdict> {
    let p = ctx.p;
    let lhs = residue_of_rational(&cubed_rising_sum(&ratio(-1, 3), p as usize - 1), ctx)?;
    let g6 = morita_gamma(&ratio(2, 3), ctx)?.pow(6);
    let c = if p % 6 == 1 {
        -18 * p as i64 * p as i64
    } else {
        54
    };
    let rhs = residue_of_rational(&rat(c), ctx)? * g6;
    Ok(compare(ctx, "sum of (-1/3)_k^3/k!^3", lhs, rhs))
}

/// The product (1/3)_K²/(1)_L² {…} shared by the truncated congruences and
/// the Γ_p forms, as one exact rational.
pub fn bracket_product(which: Which, p: u64) -> BigRational {
    let p = p as i64;
    let p2 = p * p;
    let (kk, ll, bracket) = match which {
        Which::A => {
            let kk = ((2 * p + 1) / 3) as usize;
            (kk, kk, rat(1 + 6 * p2) - inverse_square_sum(kk, 4 * p2))
        }
        Which::B => {
            let kk = ((p + 1) / 3) as usize;
            let s = inverse_square_sum(kk, 1);
            (
                kk,
                ((p - 2) / 3) as usize,
                rat(1) + ratio(p2, (p + 1) * (p + 1)) * s,
            )
        }
    };
    let a = rising_rational(&ratio(1, 3), kk);
    let b = rising_rational(&rat(1), ll);
    &a * &a / (&b * &b) * bracket
}

/// The truncated sum Σ_{k=0}^{K} (−1/3)_k³/k!³.
pub fn truncated_sum(which: Which, p: u64) -> BigRational {
    let kk = match which {
        Which::A => (2 * p + 1) / 3,
        Which::B => (p + 1) / 3,
    };
    cubed_rising_sum(&ratio(-1, 3), kk as usize)
}

pub fn truncated_closed_form(which: Which, p: u64) -> BigRational {
    let c = match which {
        Which::A => 6,
        Which::B => 54,
    };
    rat(c) * bracket_product(which, p)
}

fn class(which: Which) -> u64 {
    match which {
        Which::A => 1,
        Which::B => 5,
    }
}

/// The truncated sum against 6 or 54 times the bracket product.
pub fn check_cor(which: Which, ctx: &PadicContext) -> Result<Verdict> {
    class_of(ctx, class(which), "the truncated congruence")?;
    let lhs = residue_of_rational(&truncated_sum(which, ctx.p), ctx)?;
    let rhs = residue_of_rational(&truncated_closed_form(which, ctx.p), ctx)?;
    Ok(compare(ctx, "truncated sum of (-1/3)_k^3/k!^3", lhs, rhs))
}

/// The bracket product against −3p²Γ_p(2/3)⁶ or Γ_p(2/3)⁶.
pub fn check_prop(which: Which, ctx: &PadicContext) -> Result<Verdict> {
    class_of(ctx, class(which), "the bracket congruence")?;
    let p = ctx.p as i64;
    let lhs = residue_of_rational(&bracket_product(which, ctx.p), ctx)?;
    let g6 = morita_gamma(&ratio(2, 3), ctx)?.pow(6);
    let rhs = match which {
        Which::A => residue_of_rational(&rat(-3 * p * p), ctx)? * g6,
        Which::B => g6,
    };
    Ok(compare(ctx, "bracket product", lhs, rhs))
}

/// Σ_{i=1}^{(p+1)/3} 1/(3i−2)² against (2/9)H^{(2)}_{(2p−1)/3}, mod p.
pub fn check_harmonic_cong(p: u64) -> Result<Verdict> {
    let ctx = PadicContext::with_precision(p, 1)?;
    class_of(&ctx, 5, "the harmonic congruence")?;
    let lhs = residue_of_rational(&inverse_square_sum(((p + 1) / 3) as usize, 1), &ctx)?;
    let rhs = residue_of_rational(
        &(ratio(2, 9) * harmonic(((2 * p - 1) / 3) as usize, 2)),
        &ctx,
    )?;
    Ok(compare(&ctx, "sum of 1/(3i-2)^2 vs (2/9) H2", lhs, rhs))
}

/// Γ_p(x+1) = −x Γ_p(x) if p ∤ x, else −Γ_p(x), over 0 ≤ x < limit.
pub fn check_gamma_functional(ctx: &PadicContext, limit: u64) -> Verdict {
    for x in 0..limit {
        let g = ctx.gamma_at(x);
        let want = if x % ctx.p == 0 {
            -g
        } else {
            -(ctx.residue(x) * g)
        };
        let got = ctx.gamma_at(x + 1);
        if got != want {
            return Verdict::fail(
                format!("Gamma_{}({}) breaks the functional equation", ctx.p, x + 1),
                json!({ "p": ctx.p, "x": x, "gamma_x": g.value, "gamma_x1": got.value, "expected": want.value }),
            );
        }
    }
    Verdict::pass(
        format!("functional equation for 0 <= x < {limit}"),
        Some(json!({ "p": ctx.p, "checked": limit })),
        true,
    )
}

/// Γ_p(x)Γ_p(1−x) = (−1)^{⟨−x⟩_p − 1}, with the exponent read literally
/// (⟨−x⟩_p = 0 gives exponent −1, an odd power).
pub fn check_gamma_reflection(ctx: &PadicContext, xs: &[BigRational]) -> Result<Verdict> {
    let pmod = PadicContext::with_precision(ctx.p, 1)?;
    for x in xs {
        let lhs = morita_gamma(x, ctx)? * morita_gamma(&(rat(1) - x), ctx)?;
        let r = residue_of_rational(&-x, &pmod)?.value as i64;
        let one = ctx.residue(1);
        let want = if (r - 1).rem_euclid(2) == 0 {
            one
        } else {
            -one
        };
        if lhs != want {
            return Ok(Verdict::fail(
                format!(
                    "Gamma_{}(x) Gamma_{}(1-x) sign at x = {}",
                    ctx.p,
                    ctx.p,
                    rational_to_string(x)
                ),
                json!({ "p": ctx.p, "x": rational_to_string(x), "product": lhs.value, "expected": want.value }),
            ));
        }
    }
    Ok(Verdict::pass(
        format!("reflection formula at {} points", xs.len()),
        Some(
            json!({ "p": ctx.p, "points": xs.iter().map(rational_to_string).collect::<Vec<_>>() }),
        ),
        true,
    ))
}

/// Γ_p(r) = (−1)^r (r−1)! for 1 ≤ r < p, with the factorial taken directly.
pub fn check_gamma_small(ctx: &PadicContext) -> Verdict {
    let m = BigUint::from(ctx.modulus);
    let mut fact = BigUint::one();
    for r in 1..ctx.p {
        if r > 1 {
            fact *= r - 1;
        }
        let f = ctx.residue((&fact % &m).to_u64().unwrap());
        let want = if r % 2 == 1 { -f } else { f };
        if ctx.gamma_at(r) != want {
            return Verdict::fail(
                format!("Gamma_{}({r}) differs from the signed factorial", ctx.p),
                json!({ "p": ctx.p, "r": r, "gamma": ctx.gamma_at(r).value, "expected": want.value }),
            );
        }
    }
    Verdict::pass(
        format!("Gamma_{}(r) = (-1)^r (r-1)! for r < p", ctx.p),
        None,
        true,
    )
}

/// Sends q → 1 in the q-analogue with n = p and compares with the
/// truncated p-adic congruence: the left sides agree exactly and the difference of the
/// limits has p-adic valuation at least 3.
pub fn check_q_limit(p: u64) -> Result<Verdict> {
    let ctx = PadicContext::new(p)?;
    let (which, (l, r)) = match p % 6 {
        1 => (Which::A, crate::qhyper::thm_a_sides(p, false)?),
        _ => (Which::B, crate::qhyper::thm_b_sides(p)?),
    };
    let one = rat(1);
    let (l1, r1) = (l.eval(&one)?, r.eval(&one)?);
    let cor_l = truncated_sum(which, p);
    let cor_r = truncated_closed_form(which, p);
    let diff = &l1 - &r1;
    let val = p_adic_valuation(&diff, p);
    let witness = json!({
        "p": p,
        "valuation": val,
        "lhs_matches_truncated_sum": l1 == cor_l,
        "rhs_residue": residue_of_rational(&r1, &ctx)?.value,
        "truncated_closed_form_residue": residue_of_rational(&cor_r, &ctx)?.value,
    });
    let ok = l1 == cor_l
        && val.is_none_or(|v| v >= 3)
        && residue_of_rational(&r1, &ctx)? == residue_of_rational(&cor_r, &ctx)?;
    let detail = format!("q -> 1 limit at n = {p} against the truncated closed form mod p^3");
    Ok(if ok {
        Verdict::pass(detail, Some(witness), true)
    } else {
        Verdict::fail(detail, witness)
    })
}

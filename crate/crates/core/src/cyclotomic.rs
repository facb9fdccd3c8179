//! Cyclotomic polynomials and congruences modulo their powers.
//!
//! `r ≡ s (mod Phi_n^e)` for rational functions means that `Phi_n^e`
//! divides the numerator of the canonical difference `r - s`, whose
//! denominator must be coprime to `Phi_n`. A shared denominator factor is
//! reported as [`Error::DenominatorNotCoprime`], never passed.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::arith::{zpoly, LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Largest exponent accepted by the congruence interface.
pub const MAX_EXPONENT: u32 = 8;

/// Memo table `n -> Phi_n(q)`; concurrent readers, compute-then-publish writers.
#[derive(Default)]
pub struct CyclotomicTable {
    cache: RwLock<HashMap<u64, Arc<Vec<BigInt>>>>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table.
    pub fn global() -> &'static CyclotomicTable {
        static TABLE: OnceLock<CyclotomicTable> = OnceLock::new();
        TABLE.get_or_init(CyclotomicTable::new)
    }

    pub fn len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integer coefficients of `Phi_n`, constant term first.
    pub(crate) fn coeffs(&self, n: u64) -> Arc<Vec<BigInt>> {
        assert!(n >= 1, "cyclotomic index must be positive");
        if let Some(c) = self.cache.read().unwrap().get(&n) {
            return c.clone();
        }
        // q^n - 1 divided by Phi_d for the proper divisors d of n
        let mut rest = vec![BigInt::zero(); n as usize + 1];
        rest[0] = -BigInt::one();
        rest[n as usize] = BigInt::one();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi_d = self.coeffs(d);
            rest = zpoly::exact_div(&rest, &phi_d).expect("Phi_d divides q^n - 1");
        }
        let value = Arc::new(rest);
        self.cache
            .write()
            .unwrap()
            .entry(n)
            .or_insert(value)
            .clone()
    }

    pub fn get(&self, n: u64) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(0, self.coeffs(n).to_vec())
    }
}

/// `Phi_n(q)`, monic with integer coefficients.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    CyclotomicTable::global().get(n)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn check_exponent(e: u32) -> Result<()> {
    if e == 0 || e > MAX_EXPONENT {
        return Err(Error::ParameterDomain(format!(
            "cyclotomic exponent {e} outside 1..={MAX_EXPONENT}"
        )));
    }
    Ok(())
}

fn modulus(n: u64, e: u32) -> Vec<BigInt> {
    let phi = CyclotomicTable::global().coeffs(n);
    let mut m = vec![BigInt::one()];
    for _ in 0..e {
        m = zpoly::mul(&m, &phi);
    }
    m
}

/// Whether `Phi_n^e` divides the polynomial part of `f`.
pub fn divides_power(f: &LaurentPoly, n: u64, e: u32) -> Result<bool> {
    check_exponent(e)?;
    if n == 0 {
        return Err(Error::ParameterDomain(
            "cyclotomic index must be positive".into(),
        ));
    }
    Ok(zpoly::rem_monic(f.int_coeffs(), &modulus(n, e)).is_empty())
}

pub fn coprime_to_phi(den: &LaurentPoly, n: u64) -> bool {
    let phi = CyclotomicTable::global().coeffs(n);
    let r = zpoly::rem_monic(den.int_coeffs(), &phi);
    if r.is_empty() {
        return false;
    }
    let (g, _, _) = zpoly::gcd_cofactors(&r, &phi);
    g.len() == 1
}

fn reduce_shifted(f: &LaurentPoly, extra_shift: i64, m: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(extra_shift >= 0);
    let mut v = vec![BigInt::zero(); extra_shift as usize];
    v.extend(f.int_coeffs().iter().cloned());
    zpoly::rem_monic(&v, m)
}

/// `prod_{d | n} Phi_d(q) = q^n - 1` and `deg Phi_n = phi(n)` for every `n <= max_n`.
pub fn check_product_formula(max_n: u64) -> Verdict {
    for n in 1..=max_n {
        let prod = divisors(n)
            .into_iter()
            .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic(d));
        let want = &LaurentPoly::monomial(crate::arith::rat(1), n as i64) - &LaurentPoly::one();
        let phi = cyclotomic(n);
        if prod != want || phi.max_exp() as u64 != euler_phi(n) || phi.min_exp() != 0 {
            return Verdict::fail(
                format!("cyclotomic product formula fails at n = {n}"),
                json!({ "n": n, "degree": phi.max_exp(), "phi": euler_phi(n) }),
            );
        }
    }
    Verdict::pass(
        format!("product of Phi_d over d | n equals q^n - 1 for n <= {max_n}"),
        Some(json!({ "max_n": max_n })),
        true,
    )
}

/// Decides `lhs ≡ rhs (mod Phi_n(q)^e)`.
pub fn congruent_mod_cyclotomic(
    lhs: &RationalFunc,
    rhs: &RationalFunc,
    n: u64,
    e: u32,
) -> Result<Verdict> {
    check_exponent(e)?;
    if n == 0 {
        return Err(Error::ParameterDomain(
            "cyclotomic index must be positive".into(),
        ));
    }
    let m = modulus(n, e);
    let modulus_degree = m.len() - 1;
    let label = format!("Phi_{n}(q)^{e}");

    if coprime_to_phi(lhs.den(), n) && coprime_to_phi(rhs.den(), n) {
        // A/B - C/D has numerator A*D - C*B up to units and factors coprime to Phi_n.
        let (a, b) = (lhs.num(), lhs.den());
        let (c, d) = (rhs.num(), rhs.den());
        let base = a.min_exp().min(c.min_exp());
        let ra = reduce_shifted(a, a.min_exp() - base, &m);
        let rc = reduce_shifted(c, c.min_exp() - base, &m);
        let rb = zpoly::rem_monic(b.int_coeffs(), &m);
        let rd = zpoly::rem_monic(d.int_coeffs(), &m);
        let s1 = c.common_den() * b.common_den();
        let s2 = a.common_den() * d.common_den();
        let t1: Vec<BigInt> = zpoly::mul(&ra, &rd).into_iter().map(|x| x * &s1).collect();
        let t2: Vec<BigInt> = zpoly::mul(&rc, &rb).into_iter().map(|x| x * &s2).collect();
        let len = t1.len().max(t2.len());
        let diff: Vec<BigInt> = (0..len)
            .map(|i| {
                let x = t1.get(i).cloned().unwrap_or_default();
                let y = t2.get(i).cloned().unwrap_or_default();
                x - y
            })
            .collect();
        let rem = zpoly::rem_monic(&diff, &m);
        let cross_degree = (a.span() + d.span()).max(c.span() + b.span());
        return Ok(verdict_from_remainder(
            rem,
            &label,
            modulus_degree,
            cross_degree,
        ));
    }

    let diff = lhs - rhs;
    if !coprime_to_phi(diff.den(), n) {
        return Err(Error::DenominatorNotCoprime { n });
    }
    let rem = zpoly::rem_monic(diff.num().int_coeffs(), &m);
    Ok(verdict_from_remainder(
        rem,
        &label,
        modulus_degree,
        diff.num().span(),
    ))
}

fn verdict_from_remainder(
    rem: Vec<BigInt>,
    label: &str,
    modulus_degree: usize,
    numerator_degree: usize,
) -> Verdict {
    if rem.is_empty() {
        Verdict::pass(
            format!("difference numerator divisible by {label}"),
            Some(json!({
                "modulus": label,
                "modulus_degree": modulus_degree,
                "cofactor_degree": numerator_degree.saturating_sub(modulus_degree),
            })),
            true,
        )
    } else {
        let r = LaurentPoly::from_int_coeffs(0, rem);
        Verdict::fail(
            format!("nonzero remainder modulo {label}"),
            json!({ "modulus": label, "remainder": r }),
        )
    }
}

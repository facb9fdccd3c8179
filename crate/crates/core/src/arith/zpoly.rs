//! Dense integer polynomial kernels: coefficient vectors indexed by degree.
//!
//! These back every heavy operation on [`LaurentPoly`](super::LaurentPoly):
//! multiplication switches to Kronecker substitution for large dense
//! operands, and GCD / exact division run modulo word-sized primes with the
//! final answer always confirmed by an exact product over Z.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, CrtAccumulator};

pub(crate) fn trim(f: &mut Vec<BigInt>) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn max_bits(f: &[BigInt]) -> u64 {
    f.iter().map(|c| c.bits()).max().unwrap_or(0)
}

fn nonzero_terms(f: &[BigInt]) -> Vec<(usize, &BigInt)> {
    f.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

const KRONECKER_MIN_TERMS: usize = 48;

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ta = nonzero_terms(a);
    let tb = nonzero_terms(b);
    if ta.len().min(tb.len()) >= KRONECKER_MIN_TERMS {
        return kronecker_mul(a, b);
    }
    let (sparse, dense) = if ta.len() <= tb.len() {
        (ta, b)
    } else {
        (tb, a)
    };
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in sparse {
        for (j, d) in dense.iter().enumerate() {
            if !d.is_zero() {
                out[i + j] += c * d;
            }
        }
    }
    trim(&mut out);
    out
}

fn pack(f: &[BigInt], limbs: usize) -> BigInt {
    let mut pos = vec![0u32; f.len() * limbs];
    let mut neg = vec![0u32; f.len() * limbs];
    for (i, c) in f.iter().enumerate() {
        let target = match c.sign() {
            Sign::Minus => &mut neg,
            _ => &mut pos,
        };
        for (k, d) in c.magnitude().to_u32_digits().into_iter().enumerate() {
            target[i * limbs + k] = d;
        }
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

fn unpack(r: &BigInt, limbs: usize, count: usize) -> Vec<BigInt> {
    let sign = r.sign();
    let digits = r.magnitude().to_u32_digits();
    let radix = BigInt::one() << (32 * limbs);
    let half = BigUint::one() << (32 * limbs - 1);
    let mut carry = 0u32;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let lo = (i * limbs).min(digits.len());
        let hi = ((i + 1) * limbs).min(digits.len());
        let mut d = BigUint::new(digits[lo..hi].to_vec());
        d += carry;
        let c = if d >= half {
            carry = 1;
            BigInt::from(d) - &radix
        } else {
            carry = 0;
            BigInt::from(d)
        };
        out.push(if sign == Sign::Minus { -c } else { c });
    }
    out
}

/// Product by evaluation at a power of two and one big-integer multiply.
pub(crate) fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len()) as u64;
    let bits = max_bits(a) + max_bits(b) + (64 - n.leading_zeros() as u64) + 2;
    let limbs = bits.div_ceil(32) as usize;
    let prod = pack(a, limbs) * pack(b, limbs);
    let mut out = unpack(&prod, limbs, a.len() + b.len() - 1);
    trim(&mut out);
    out
}

/// Nonnegative gcd of all coefficients.
pub(crate) fn content(f: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in f {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    if f.is_empty() {
        return Vec::new();
    }
    let mut g = content(f);
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    if g.is_one() {
        return f.to_vec();
    }
    f.iter().map(|c| c / &g).collect()
}

/// Remainder modulo a monic integer polynomial, computed over Z.
pub(crate) fn rem_monic(f: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(m.last().is_some_and(|c| c.is_one()));
    let dm = m.len() - 1;
    let mut r = f.to_vec();
    trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            let off = top - dm;
            for (i, mi) in m.iter().enumerate() {
                if !mi.is_zero() {
                    r[off + i] -= &c * mi;
                }
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn schoolbook_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for top in (dg..f.len()).rev() {
        if r[top].is_zero() {
            continue;
        }
        let (c, rem) = r[top].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        let off = top - dg;
        for (i, gi) in g.iter().enumerate() {
            if !gi.is_zero() {
                r[off + i] -= &c * gi;
            }
        }
        q[off] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// `f / g` over Z when `g` divides `f` (with `g` primitive, divisibility
/// over Q suffices); `None` otherwise. Neither input may be zero.
pub(crate) fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if f.is_empty() {
        return Some(Vec::new());
    }
    if g.len() > f.len() {
        return None;
    }
    if g.len() == 1 {
        let mut q = Vec::with_capacity(f.len());
        for c in f {
            let (d, r) = c.div_rem(&g[0]);
            if !r.is_zero() {
                return None;
            }
            q.push(d);
        }
        return Some(q);
    }
    let qlen = f.len() - g.len() + 1;
    if qlen.min(g.len()) <= 64 {
        return schoolbook_exact_div(f, g);
    }
    // Any factor of f has coefficients below 2^(deg) * ||f||_2.
    let cap_bits = 2 * (max_bits(f) + f.len() as u64 + 8);
    let lc = g.last().unwrap();
    let mut acc: Option<CrtAccumulator> = None;
    let mut previous: Option<Vec<BigInt>> = None;
    for p in modp::big_primes() {
        if modp::reduce(lc, p) == 0 {
            continue;
        }
        let fp = modp::reduce_poly(f, p);
        let gp = modp::reduce_poly(g, p);
        let qp = modp::quo_poly(&fp, &gp, p);
        match acc.as_mut() {
            None => acc = Some(CrtAccumulator::new(&qp, p)),
            Some(a) => a.absorb(&qp, p),
        }
        let a = acc.as_ref().unwrap();
        let cand = a.symmetric();
        if previous.as_ref() == Some(&cand) && mul(&cand, g) == f {
            return Some(cand);
        }
        if a.modulus.bits() > cap_bits {
            return if mul(&cand, g) == f { Some(cand) } else { None };
        }
        previous = Some(cand);
    }
    unreachable!("prime supply is unbounded")
}

/// Primitive GCD over Z with positive leading coefficient, together with
/// the two cofactors. Inputs must not both be zero.
pub(crate) fn gcd_cofactors(f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    if f.is_empty() {
        let pg = primitive(g);
        let cof = exact_div(g, &pg).expect("primitive part divides");
        return (pg, Vec::new(), cof);
    }
    if g.is_empty() {
        let pf = primitive(f);
        let cof = exact_div(f, &pf).expect("primitive part divides");
        return (pf, cof, Vec::new());
    }
    let one = || vec![BigInt::one()];
    if f.len() == 1 || g.len() == 1 {
        return (one(), f.to_vec(), g.to_vec());
    }
    let pf = primitive(f);
    let pg = primitive(g);
    let lcg = pf.last().unwrap().gcd(pg.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut acc: Option<CrtAccumulator> = None;
    let mut previous: Option<Vec<BigInt>> = None;
    for p in modp::big_primes() {
        if modp::reduce(pf.last().unwrap(), p) == 0 || modp::reduce(pg.last().unwrap(), p) == 0 {
            continue;
        }
        let h = modp::gcd_poly(modp::reduce_poly(&pf, p), modp::reduce_poly(&pg, p), p);
        let deg = h.len() - 1;
        if deg == 0 {
            return (one(), f.to_vec(), g.to_vec());
        }
        if deg > best_deg {
            continue;
        }
        let l = modp::reduce(&lcg, p);
        let scaled: Vec<u64> = h.iter().map(|&c| modp::mul_mod(c, l, p)).collect();
        if deg < best_deg {
            best_deg = deg;
            acc = Some(CrtAccumulator::new(&scaled, p));
            previous = None;
            continue;
        }
        let a = acc.as_mut().unwrap();
        a.absorb(&scaled, p);
        let cand = primitive(&a.symmetric());
        if previous.as_ref() == Some(&cand) {
            if let Some(cf) = exact_div(f, &cand) {
                if let Some(cg) = exact_div(g, &cand) {
                    return (cand, cf, cg);
                }
            }
        }
        previous = Some(cand);
    }
    unreachable!("prime supply is unbounded")
}

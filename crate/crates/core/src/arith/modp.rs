//! Word-sized prime field kernels used by the modular GCD and exact division.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, in decreasing order.
pub(crate) fn big_primes() -> impl Iterator<Item = u64> {
    let mut c: u64 = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().unwrap_or(0);
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

pub(crate) fn reduce_poly(f: &[BigInt], p: u64) -> Vec<u64> {
    f.iter().map(|c| reduce(c, p)).collect()
}

pub(crate) fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Remainder of `a` by `b` over F_p; `b` must be trimmed and nonzero.
pub(crate) fn rem_poly(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul_mod(a[top], inv, p);
        if c != 0 {
            let off = top - db;
            for (i, &bi) in b.iter().enumerate() {
                a[off + i] = sub_mod(a[off + i], mul_mod(c, bi, p), p);
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Monic GCD over F_p. Empty vector means zero.
pub(crate) fn gcd_poly(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_poly(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Quotient of `a` by `b` over F_p, discarding the remainder.
pub(crate) fn quo_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let db = b.len() - 1;
    if a.len() <= db {
        return Vec::new();
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = mul_mod(a[top], inv, p);
        let off = top - db;
        q[off] = c;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                a[off + i] = sub_mod(a[off + i], mul_mod(c, bi, p), p);
            }
        }
    }
    q
}

/// Incremental Chinese remaindering of a coefficient vector.
pub(crate) struct CrtAccumulator {
    pub modulus: BigUint,
    pub residues: Vec<BigUint>,
}

impl CrtAccumulator {
    pub fn new(first: &[u64], p: u64) -> Self {
        CrtAccumulator {
            modulus: BigUint::from(p),
            residues: first.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn absorb(&mut self, next: &[u64], p: u64) {
        let m_mod_p = (&self.modulus % p).to_u64().unwrap();
        let m_inv = inv_mod(m_mod_p, p);
        if self.residues.len() < next.len() {
            self.residues.resize(next.len(), BigUint::zero());
        }
        for (i, r) in self.residues.iter_mut().enumerate() {
            let target = next.get(i).copied().unwrap_or(0);
            let cur = (&*r % p).to_u64().unwrap();
            let t = mul_mod(sub_mod(target, cur, p), m_inv, p);
            if t != 0 {
                *r += &self.modulus * t;
            }
        }
        self.modulus *= p;
    }

    /// Symmetric-range lift of the accumulated residues.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        let m = BigInt::from(self.modulus.clone());
        let mut out: Vec<BigInt> = self
            .residues
            .iter()
            .map(|r| {
                if *r > half {
                    BigInt::from(r.clone()) - &m
                } else {
                    BigInt::from(r.clone())
                }
            })
            .collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = big_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < (1 << 62)));
        assert!(is_prime_u64(97) && !is_prime_u64(91) && !is_prime_u64(1));
    }

    #[test]
    fn modular_gcd_of_small_polys() {
        let p = 1_000_000_007;
        // (x-1)(x+2) and (x-1)(x+3)
        let a = vec![p - 2, 1, 1];
        let b = vec![p - 3, 2, 1];
        assert_eq!(gcd_poly(a, b, p), vec![p - 1, 1]);
    }

    #[test]
    fn crt_recovers_negative() {
        let x = BigInt::from(-123456789012345678i64) * BigInt::from(1000003);
        let ps: Vec<u64> = big_primes().take(2).collect();
        let mut acc = CrtAccumulator::new(&[reduce(&x, ps[0])], ps[0]);
        acc.absorb(&[reduce(&x, ps[1])], ps[1]);
        assert_eq!(acc.symmetric(), vec![x]);
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly;
use crate::error::{Error, Result};

/// A Laurent polynomial in one variable with rational coefficients.
///
/// Stored as `q^shift * (c_0 + c_1 q + ...) / den` with integer `c_i`,
/// `c_0 != 0`, trailing `c_i != 0`, `den > 0` and `gcd(den, c_0, c_1, ...) = 1`.
/// The zero polynomial has no coefficients. The representation is unique,
/// so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    shift: i64,
    den: BigInt,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// Canonicalizing constructor from `q^shift * coeffs / den`.
    pub(crate) fn from_scaled(shift: i64, mut coeffs: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        zpoly::trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
        }
        if den.is_negative() {
            den = -den;
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &coeffs {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                den /= &g;
                coeffs.iter_mut().for_each(|c| *c /= &g);
            }
        }
        LaurentPoly {
            shift: shift + lead as i64,
            den,
            coeffs,
        }
    }

    /// Integer coefficients starting at exponent `shift`.
    pub fn from_int_coeffs(shift: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_scaled(shift, coeffs, BigInt::one())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            shift: 0,
            den: BigInt::one(),
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let (n, d) = c.into_raw();
        Self::from_scaled(exp, vec![n], d)
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| &acc + &Self::monomial(c, e))
    }

    /// Integer coefficients starting at exponent `min_exp`.
    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_int_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one() && self.den.is_one()
    }

    /// Smallest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.shift
    }

    /// Largest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn max_exp(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.shift + self.coeffs.len() as i64 - 1
        }
    }

    /// Width of the support, `max_exp - min_exp`.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let i = exp - self.shift;
        if i < 0 || i as usize >= self.coeffs.len() {
            return BigRational::zero();
        }
        BigRational::new(self.coeffs[i as usize].clone(), self.den.clone())
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeff(self.max_exp())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| {
                (
                    self.shift + i as i64,
                    BigRational::new(c.clone(), self.den.clone()),
                )
            })
    }

    pub(crate) fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn common_den(&self) -> &BigInt {
        &self.den
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            shift: self.shift + k,
            ..self.clone()
        }
    }

    /// The polynomial part `self / q^min_exp`.
    pub fn unshifted(&self) -> Self {
        self.shifted(-self.shift)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_scaled(
            self.shift,
            self.coeffs.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.coeffs.last().unwrap().clone();
        Self::from_scaled(self.shift, self.coeffs.clone(), lc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by the binomial `1 - c q^e` in linear time.
    pub fn mul_one_minus(&self, c: &BigRational, e: i64) -> Self {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        // (den_c * f - num_c * q^e f) / den_c
        let (cn, cd) = (c.numer(), c.denom());
        let lo = self.shift.min(self.shift + e);
        let hi = self.max_exp().max(self.max_exp() + e);
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let base = (self.shift + i as i64 - lo) as usize;
            out[base] += x * cd;
            out[(base as i64 + e) as usize] -= x * cn;
        }
        Self::from_scaled(lo, out, &self.den * cd)
    }

    /// Exact evaluation at a nonzero rational point (or any point when
    /// `min_exp >= 0`).
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if x.is_zero() {
            if self.shift < 0 {
                return Err(Error::PoleAtPoint("0".into()));
            }
            return Ok(if self.shift == 0 {
                BigRational::new(self.coeffs[0].clone(), self.den.clone())
            } else {
                BigRational::zero()
            });
        }
        // Horner on numerator and denominator of x separately.
        let (xn, xd) = (x.numer(), x.denom());
        let d = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut xd_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * xn + c * &xd_pow;
            xd_pow *= xd;
        }
        // acc = sum c_i xn^i xd^(d-i)
        let value = BigRational::new(acc, &self.den * num_traits::pow(xd.clone(), d));
        Ok(value * rational_pow(x, self.shift))
    }

    /// Replaces `q` by `q^s` for a nonzero integer `s`.
    pub fn subst_power(&self, s: i64) -> Self {
        assert!(s != 0, "substitution exponent must be nonzero");
        if self.is_zero() {
            return self.clone();
        }
        let span = self.coeffs.len() - 1;
        let step = s.unsigned_abs() as usize;
        let mut out = vec![BigInt::zero(); span * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let slot = if s > 0 { i * step } else { (span - i) * step };
            out[slot] = c.clone();
        }
        let shift = if s > 0 {
            self.shift * s
        } else {
            self.max_exp() * s
        };
        Self::from_scaled(shift, out, self.den.clone())
    }

    /// Division with remainder. Each operand is first multiplied by the
    /// power of `q` that makes it a polynomial (no shift for operands that
    /// already are); the shifts are reapplied so `f = quot * g + rem`.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let sf = (-self.shift).max(0);
        let sg = (-g.shift).max(0);
        let f0 = self.shifted(sf);
        let g0 = g.shifted(sg);
        let (quo, rem) = poly_divrem(&f0, &g0);
        Ok((quo.shifted(sg - sf), rem.shifted(-sf)))
    }

    /// Monic GCD of the polynomial parts (powers of `q` are units here).
    pub fn gcd(&self, other: &Self) -> Self {
        let (g, _, _) = zpoly::gcd_cofactors(&self.coeffs, &other.coeffs);
        Self::from_int_coeffs(0, g).monic()
    }

    /// Exact quotient by `g` when `g` divides `self` as Laurent polynomials.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let gp = zpoly::primitive(&g.coeffs);
        let q = zpoly::exact_div(&self.coeffs, &gp)?;
        // self = (C_f/d_f) q^sf, g = (C_g/d_g) q^sg with C_g = k * gp
        let k = g.coeffs.last().unwrap() / gp.last().unwrap();
        Some(Self::from_scaled(
            self.shift - g.shift,
            q.into_iter().map(|c| c * &g.den).collect(),
            &self.den * k,
        ))
    }
}

/// Schoolbook division over Q for polynomials with `min_exp >= 0`.
fn poly_divrem(f: &LaurentPoly, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let df = f.max_exp();
    let dg = g.max_exp();
    if df < dg {
        return (LaurentPoly::zero(), f.clone());
    }
    let dense = |p: &LaurentPoly, len: usize| -> Vec<BigRational> {
        (0..len as i64).map(|e| p.coeff(e)).collect()
    };
    let mut r = dense(f, df as usize + 1);
    let gv = dense(g, dg as usize + 1);
    let lc = gv[dg as usize].clone();
    let mut q = vec![BigRational::zero(); (df - dg) as usize + 1];
    for top in (dg as usize..=df as usize).rev() {
        if r[top].is_zero() {
            continue;
        }
        let c = &r[top] / &lc;
        let off = top - dg as usize;
        for (i, gi) in gv.iter().enumerate() {
            if !gi.is_zero() {
                r[off + i] -= &c * gi;
            }
        }
        q[off] = c;
    }
    let build = |v: Vec<BigRational>| {
        LaurentPoly::from_terms(v.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    };
    (build(q), build(r))
}

pub(crate) fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(rhs.shift);
        let hi = self.max_exp().max(rhs.max_exp());
        let l = self.den.lcm(&rhs.den);
        let ma = &l / &self.den;
        let mb = &l / &rhs.den;
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (p, m) in [(self, &ma), (rhs, &mb)] {
            let off = (p.shift - lo) as usize;
            for (i, c) in p.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    if m.is_one() {
                        out[off + i] += c;
                    } else {
                        out[off + i] += c * m;
                    }
                }
            }
        }
        LaurentPoly::from_scaled(lo, out, l)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            shift: self.shift,
            den: self.den.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_scaled(
            self.shift + rhs.shift,
            zpoly::mul(&self.coeffs, &rhs.coeffs),
            &self.den * &rhs.den,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(0, &[-1, 1]) * &p(0, &[1, 1]), p(0, &[-1, 0, 1]));
        assert!((&p(-1, &[1]) + &p(-1, &[-1])).is_zero());
        assert_eq!(&p(-1, &[-1, 1]) * &LaurentPoly::q(), p(0, &[-1, 1]));
    }

    #[test]
    fn divrem_examples() {
        let (q, rem) = p(0, &[-1, 0, 1]).divrem(&p(0, &[-1, 1])).unwrap();
        assert_eq!((q, rem.is_zero()), (p(0, &[1, 1]), true));
        let (q, rem) = p(0, &[1, 0, 1]).divrem(&p(0, &[-1, 1])).unwrap();
        assert_eq!((q, rem), (p(0, &[1, 1]), LaurentPoly::from_int(2)));
        let (q, rem) = p(0, &[-1, 0, 0, 1]).divrem(&LaurentPoly::q_pow(2)).unwrap();
        assert_eq!((q, rem), (LaurentPoly::q(), LaurentPoly::from_int(-1)));
        assert_eq!(
            p(0, &[1]).divrem(&LaurentPoly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn laurent_divrem_reconstructs() {
        let f = p(-3, &[2, 0, 1, 5, -1]);
        let g = p(-1, &[1, 3]);
        let (q, rem) = f.divrem(&g).unwrap();
        assert_eq!(&(&q * &g) + &rem, f);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(0, &[-1, 0, 1]).gcd(&p(0, &[-1, 0, 0, 1])), p(0, &[-1, 1]));
        assert_eq!(
            p(0, &[2, 4]).gcd(&LaurentPoly::zero()),
            p(0, &[1, 2]).monic()
        );
        assert!(p(0, &[-1, 1]).gcd(&p(0, &[1, 1])).is_one());
    }

    #[test]
    fn canonical_content() {
        let a = LaurentPoly::from_terms([(0, r(2, 4)), (2, r(1, 3))]);
        assert_eq!(a.coeff(0), r(1, 2));
        assert_eq!(a.coeff(2), r(1, 3));
        assert_eq!(a.common_den(), &BigInt::from(6));
    }

    #[test]
    fn evaluation_and_substitution() {
        assert_eq!(p(-1, &[1]).eval(&r(1, 2)).unwrap(), r(2, 1));
        assert_eq!(p(0, &[1, 1, 1]).eval(&r(2, 3)).unwrap(), r(19, 9));
        assert_eq!(
            p(0, &[1, 2]).subst_power(3),
            LaurentPoly::from_i64s(0, &[1, 0, 0, 2])
        );
        assert_eq!(p(1, &[1, 2]).subst_power(-1), p(-2, &[2, 1]));
        assert_eq!(
            p(0, &[1, 1]).mul_one_minus(&r(2, 1), 3),
            p(0, &[1, 1, 0, -2, -2])
        );
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(-1, &[-1, 1]).to_string(), "-q^-1 + 1");
        assert_eq!(
            LaurentPoly::from_terms([(2, r(-3, 2))]).to_string(),
            "-3/2*q^2"
        );
    }
}

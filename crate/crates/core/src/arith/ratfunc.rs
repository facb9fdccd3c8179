use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::zpoly;
use crate::error::{Error, Result};

/// A rational function in `q` over Q in canonical form.
///
/// The denominator is a monic polynomial with nonzero constant term, every
/// power of `q` and all rational content live in the numerator, and the
/// numerator's polynomial part is coprime to the denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    /// Canonical form of `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (g, n1, d1) = zpoly::gcd_cofactors(num.int_coeffs(), den.int_coeffs());
        let _ = g;
        // num = q^sn * N / Dn, den = q^sd * M / Dd, N = g n1, M = g d1
        let lc = d1.last().unwrap().clone();
        let scale_num = den.common_den().clone();
        let scale_den = num.common_den() * &lc;
        let num = LaurentPoly::from_scaled(
            num.min_exp() - den.min_exp(),
            n1.into_iter().map(|c| c * &scale_num).collect(),
            scale_den,
        );
        let den = LaurentPoly::from_scaled(0, d1, lc);
        Ok(RationalFunc { num, den })
    }

    /// Assembles a value already known to be canonical.
    fn from_canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(den.min_exp() == 0 && den.leading_coeff().is_one());
        RationalFunc { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(LaurentPoly::q())
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPoly, LaurentPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c * q^e)` when the value is a single monomial.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.den.is_one() && self.num.num_terms() == 1 {
            let e = self.num.min_exp();
            Some((self.num.coeff(e), e))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroRF);
        }
        // den / num: move q^min_exp and the leading coefficient of num across
        let s = self.num.min_exp();
        let lc = self.num.leading_coeff();
        let new_den = self.num.shifted(-s).scale(&lc.recip());
        let new_num = self.den.shifted(-s).scale(&lc.recip());
        Ok(Self::from_canonical(new_num, new_den))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        // powers of coprime parts stay coprime
        Ok(Self::from_canonical(base.num.pow(e), base.den.pow(e)))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_canonical(self.num.scale(c), self.den.clone())
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self::from_canonical(self.num.shifted(k), self.den.clone())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(x.to_string()));
        }
        Ok(self.num.eval(x)? / d)
    }

    /// Replaces `q` by `q^s` for a nonzero integer `s`.
    pub fn subst_power(&self, s: i64) -> Self {
        if s == 1 {
            return self.clone();
        }
        let num = self.num.subst_power(s);
        let den = self.den.subst_power(s);
        // q -> q^s keeps coprimality; only the canonical scaling moves
        let shift = den.min_exp();
        let lc = den.leading_coeff();
        Self::from_canonical(
            num.shifted(-shift).scale(&lc.recip()),
            den.shifted(-shift).scale(&lc.recip()),
        )
    }
}

fn gcd_parts(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    let (g, ca, cb) = zpoly::gcd_cofactors(a.int_coeffs(), b.int_coeffs());
    let one = g.len() == 1;
    let g = LaurentPoly::from_int_coeffs(0, g);
    if one {
        return (g, a.clone(), b.clone());
    }
    let ca = LaurentPoly::from_scaled(a.min_exp(), ca, a.common_den().clone());
    let cb = LaurentPoly::from_scaled(b.min_exp(), cb, b.common_den().clone());
    (g, ca, cb)
}

impl<'a> Mul<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunc::zero();
        }
        let (_, a, d) = gcd_parts(&self.num, &rhs.den);
        let (_, c, b) = gcd_parts(&rhs.num, &self.den);
        let num = &a * &c;
        let den = &b * &d;
        let shift = den.min_exp();
        let lc = den.leading_coeff();
        let inv = lc.recip();
        RationalFunc::from_canonical(
            num.shifted(-shift).scale(&inv),
            den.shifted(-shift).scale(&inv),
        )
    }
}

impl<'a> Add<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_poly(&self.num + &rhs.num);
        }
        let (g, b1, d1) = gcd_parts(&self.den, &rhs.den);
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if g.is_one() {
            return RationalFunc::from_canonical(t, &self.den * &rhs.den);
        }
        // gcd(t, b1 * d) = gcd(t, g)
        let den = &b1 * &rhs.den;
        let (h, _, _) = gcd_parts(&t, &g);
        if h.is_one() || t.is_zero() {
            return RationalFunc::new(t, den).expect("nonzero denominator");
        }
        let t = t.exact_div(&h).expect("gcd divides");
        let den = den.exact_div(&h).expect("gcd divides");
        RationalFunc::new(t, den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc::from_canonical(-&self.num, self.den.clone())
    }
}

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

/// Panics on division by zero; use [`RationalFunc::try_div`] to handle it.
impl<'a> Div<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn div(self, rhs: &RationalFunc) -> RationalFunc {
        self.try_div(rhs)
            .expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunc> for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<LaurentPoly> for RationalFunc {
    fn from(p: LaurentPoly) -> Self {
        RationalFunc::from_poly(p)
    }
}

impl From<i64> for RationalFunc {
    fn from(c: i64) -> Self {
        RationalFunc::from_int(c)
    }
}

impl From<BigRational> for RationalFunc {
    fn from(c: BigRational) -> Self {
        RationalFunc::constant(c)
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({})", self)
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<RationalFunc>();
    check::<LaurentPoly>();
    let _ = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn rf(n: LaurentPoly, d: LaurentPoly) -> RationalFunc {
        RationalFunc::new(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        // (q-1)^3 q^6 / (1-q^3)^3 = -q^6 / (1+q+q^2)^3
        let num = &p(0, &[-1, 1]).pow(3) * &LaurentPoly::q_pow(6);
        let den = p(0, &[1, 0, 0, -1]).pow(3);
        let r = rf(num, den);
        assert_eq!(r.num(), &p(6, &[-1]));
        assert_eq!(r.den(), &p(0, &[1, 1, 1]).pow(3));
        assert_eq!(
            rf(p(0, &[-1, 0, 1]), p(0, &[-1, 1])),
            RationalFunc::from_poly(p(0, &[1, 1]))
        );
        assert_eq!(rf(p(1, &[2]), p(0, &[2])), RationalFunc::q());
        assert_eq!(
            RationalFunc::new(p(0, &[1]), LaurentPoly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn denominator_q_powers_move_up() {
        let r = rf(p(0, &[1]), p(2, &[3, 6]));
        assert_eq!(
            r.num(),
            &LaurentPoly::monomial(BigRational::new(1.into(), 6.into()), -2)
        );
        assert_eq!(r.den(), &p(0, &[1, 2]).monic());
    }

    #[test]
    fn arithmetic_examples() {
        let a = rf(p(0, &[1]), p(0, &[1, -1]));
        assert!((&a + &(-&a)).is_zero());
        let b = RationalFunc::from_poly(p(-1, &[-1, 1])).pow(3).unwrap();
        assert_eq!(b, rf(p(0, &[-1, 1]).pow(3), p(3, &[1])));
        let one_minus_q = RationalFunc::from_poly(p(0, &[1, -1]));
        let c = &(&RationalFunc::one() / &one_minus_q) * &one_minus_q;
        assert!(c.is_one());
        assert_eq!(RationalFunc::zero().inv(), Err(Error::DivisionByZeroRF));
    }

    #[test]
    fn add_with_shared_denominator_factors() {
        // 1/((1-q)(1+q)) + 1/((1-q)(2+q))
        let a = rf(p(0, &[1]), p(0, &[1, 0, -1]));
        let b = rf(p(0, &[1]), &p(0, &[1, -1]) * &p(0, &[2, 1]));
        let s = &a + &b;
        let expected = rf(
            p(0, &[3, 2]),
            &(&p(0, &[1, 0, -1]) * &p(0, &[2, 1])) * &LaurentPoly::one(),
        );
        assert_eq!(s, expected);
        // cancellation through the shared factor: 1/(1-q) - q/(1-q) = 1
        let c = rf(p(1, &[1]), p(0, &[1, -1]));
        assert!((&rf(p(0, &[1]), p(0, &[1, -1])) - &c).is_one());
    }

    #[test]
    fn eval_examples() {
        let r = rf(p(0, &[1, 0, -1]), p(0, &[1, -1]));
        assert_eq!(
            r.eval(&BigRational::from_integer(3.into())).unwrap(),
            BigRational::from_integer(4.into())
        );
        let pole = rf(p(0, &[1]), p(0, &[1, -1]));
        assert!(matches!(
            pole.eval(&BigRational::one()),
            Err(Error::PoleAtPoint(_))
        ));
        let inv_q = RationalFunc::q_pow(-1);
        assert_eq!(
            inv_q.eval(&BigRational::new(1.into(), 2.into())).unwrap(),
            BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn substitution_examples() {
        let r = rf(p(0, &[1]), p(0, &[1, -1]));
        assert_eq!(r.subst_power(3), rf(p(0, &[1]), p(0, &[1, 0, 0, -1])));
        assert_eq!(RationalFunc::q().subst_power(-1), RationalFunc::q_pow(-1));
        assert_eq!(r.subst_power(1), r);
        let s = rf(p(-1, &[2, 0, 1]), p(0, &[3, 1, 0, 5]));
        assert_eq!(
            s.subst_power(-2),
            rf(s.num().subst_power(-2), s.den().subst_power(-2))
        );
    }
}

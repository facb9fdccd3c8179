use num_rational::BigRational;
use num_traits::Zero;

use super::{LaurentPoly, RationalFunc};
use crate::error::{Error, Result};

/// An unreduced quotient of Laurent polynomials.
///
/// Builders accumulate large expressions in this form, where products and
/// sums cost no GCD, and reduce once with [`Frac::normalize`]. Equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Frac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(Frac { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Frac {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some((c, e))` when the value is `c * T^e`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.num.is_zero() {
            return Some((BigRational::zero(), 0));
        }
        if self.num.num_terms() == 1 && self.den.num_terms() == 1 {
            let (ne, nc) = self.num.terms().next().unwrap();
            let (de, dc) = self.den.terms().next().unwrap();
            return Some((nc / dc, ne - de));
        }
        None
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn div(&self, o: &Frac) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZeroRF);
        }
        Ok(Frac {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        })
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn pow(&self, e: i32) -> Result<Frac> {
        let base = if e < 0 {
            Frac::one().div(self)?
        } else {
            self.clone()
        };
        let e = e.unsigned_abs();
        Ok(Frac {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn normalize(&self) -> RationalFunc {
        RationalFunc::new(self.num.clone(), self.den.clone()).expect("denominator is nonzero")
    }

    /// Exact equality as rational functions.
    pub fn same_value(&self, o: &Frac) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl From<RationalFunc> for Frac {
    fn from(r: RationalFunc) -> Self {
        let (num, den) = r.into_parts();
        Frac { num, den }
    }
}

impl From<&RationalFunc> for Frac {
    fn from(r: &RationalFunc) -> Self {
        Frac {
            num: r.num().clone(),
            den: r.den().clone(),
        }
    }
}

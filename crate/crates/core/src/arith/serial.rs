//! Text form used in reports and fixtures: a sparse list of
//! `[exponent, "num/den"]` pairs in increasing exponent order.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, RationalFunc};
use crate::error::{Error, Result};

/// Always `num/den`, including integers (`"3/1"`).
pub fn rational_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms()
            .map(|(e, c)| (e, rational_to_string(&c)))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(d)?;
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(D::Error::custom("exponents must be strictly increasing"));
        }
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            if c == BigRational::from_integer(0.into()) {
                return Err(D::Error::custom("zero coefficient"));
            }
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct RfWire {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfWire {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RfWire::deserialize(d)?;
        RationalFunc::new(w.num, w.den).map_err(D::Error::custom)
    }
}

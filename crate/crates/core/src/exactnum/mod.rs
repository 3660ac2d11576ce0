//! Exact number types: rationals, exponents mod 1, cyclotomic field
//! elements, polynomials and matrices over them.

mod cyc;
mod cyclo;
mod embed;
mod matrix;
mod poly;

pub use cyc::CycElt;
pub(crate) use cyclo::{cyclo, Cyclo};
pub use cyclo::{cyclotomic_poly, euler_phi};
pub use embed::{default_precision, Interval, Sign};
pub use matrix::CycMatrix;
pub use poly::CycPoly;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"-a/b"` or an integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// A rational number modulo 1, stored as its representative in `[0, 1)`.
/// It stands for the root of unity `exp(2 pi i x)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent(Rat);

impl Exponent {
    pub fn new(r: Rat) -> Self {
        Exponent(frac(&r))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::new(rat(n, d))
    }

    pub fn zero() -> Self {
        Exponent(Rat::zero())
    }

    /// Parses a fraction and rejects values outside `[0, 1)`.
    pub fn parse(s: &str) -> Result<Self> {
        let r = parse_rat(s)?;
        if r.is_negative() || r >= Rat::one() {
            return Err(Error::ExponentRange(s.trim().to_string()));
        }
        Ok(Exponent(r))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn denom(&self) -> u64 {
        self.0.denom().to_u64().expect("exponent denominator fits in u64")
    }

    pub fn add(&self, o: &Exponent) -> Exponent {
        Exponent::new(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Exponent) -> Exponent {
        Exponent::new(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Exponent {
        Exponent::new(-&self.0)
    }

    pub fn scale(&self, t: i64) -> Exponent {
        Exponent::new(&self.0 * rat_int(t))
    }

    /// The root of unity `exp(2 pi i x)` in `Q(zeta_n)`; `n` must be a
    /// multiple of the denominator.
    pub fn root_of_unity(&self, n: u64) -> Result<CycElt> {
        let d = self.denom();
        if !n.is_multiple_of(d) {
            return Err(Error::Other(format!("conductor {n} is not a multiple of {d}")));
        }
        let k = (self.0.numer() * BigInt::from(n / d)).to_u64().unwrap();
        CycElt::zeta_pow(n, k)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Exponent::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod rat_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

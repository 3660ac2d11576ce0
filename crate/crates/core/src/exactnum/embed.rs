use super::cyc::CycElt;
use super::gcd_i64;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

const GUARD: u32 = 64;
const MAX_PREC: u32 = 1 << 16;

/// Starting precision in bits, read from `RIGID4_PRECISION` (default 64).
pub fn default_precision() -> u32 {
    std::env::var("RIGID4_PRECISION").ok().and_then(|s| s.trim().parse().ok()).filter(|&p: &u32| p >= 8).unwrap_or(64)
}

/// A real ball `[mid - rad, mid + rad] * 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub mid: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Interval {
    pub fn excludes_zero(&self) -> bool {
        self.mid.abs() > self.rad
    }

    pub fn sign(&self) -> Option<Sign> {
        if !self.excludes_zero() {
            None
        } else if self.mid.is_positive() {
            Some(Sign::Positive)
        } else {
            Some(Sign::Negative)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.prec.saturating_sub(60);
        let m: BigInt = &self.mid >> shift;
        m.to_f64().unwrap_or(f64::NAN) / 2f64.powi((self.prec - shift) as i32)
    }
}

fn atan_inv(x: u64, w: u32) -> BigInt {
    // atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)), fixed point at w bits
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::one() << w) / &x;
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term /= &x2;
        if term.is_zero() {
            break;
        }
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    let a = atan_inv(5, w + 8);
    let b = atan_inv(239, w + 8);
    ((a * 16) - (b * 4)) >> 8
}

/// `(cos, sin)` of `theta`, fixed point at `w` bits; `theta` is fixed point too.
fn cos_sin_fixed(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut k = 1u64;
    loop {
        term = (&term * theta) >> w;
        term /= BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        k += 1;
    }
    (cos, sin)
}

type Table = Arc<Vec<(BigInt, BigInt)>>;

fn table(n: u64, prec: u32) -> Table {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u32), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(&(n, prec)) {
        return t.clone();
    }
    let w = prec + GUARD;
    let two_pi = pi_fixed(w) << 1;
    let t: Vec<(BigInt, BigInt)> = (0..n)
        .map(|j| {
            let theta = &two_pi * BigInt::from(j) / BigInt::from(n);
            let (c, s) = cos_sin_fixed(&theta, w);
            (c >> GUARD, s >> GUARD)
        })
        .collect();
    let t = Arc::new(t);
    cache.write().unwrap().insert((n, prec), t.clone());
    t
}

impl CycElt {
    /// Certified balls for the real and imaginary parts of the image of
    /// the element under `zeta_n -> exp(2 pi i t / n)`.
    pub fn embed(&self, t: i64, prec: u32) -> Result<(Interval, Interval)> {
        let n = self.conductor();
        let tm = t.rem_euclid(n as i64) as u64;
        if n > 1 && gcd_i64(tm as i64, n as i64) != 1 {
            return Err(Error::NotAUnit { t, n });
        }
        let tab = table(n, prec);
        let (num, den) = self.raw_parts();
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut rad = BigInt::one();
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cs, sn) = &tab[((k as u64 * tm) % n) as usize];
            re += c * cs;
            im += c * sn;
            rad += c.abs();
        }
        let div = |x: BigInt| -> BigInt { x.div_floor(den) };
        let rad = div(rad) + BigInt::from(2);
        Ok((Interval { mid: div(re), rad: rad.clone(), prec }, Interval { mid: div(im), rad, prec }))
    }

    /// Sign of a real element under the embedding `zeta_n -> exp(2 pi i t / n)`,
    /// refining the precision until the ball excludes zero.
    pub fn real_sign(&self, t: i64) -> Result<Sign> {
        if !self.is_real() {
            return Err(Error::Other(format!("element {self} is not real")));
        }
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        let mut prec = default_precision();
        loop {
            let (re, _) = self.embed(t, prec)?;
            if let Some(s) = re.sign() {
                return Ok(s);
            }
            if prec >= MAX_PREC {
                return Err(Error::Precision(prec));
            }
            prec *= 2;
        }
    }

    /// Floating-point image under the embedding with twist `t`.
    pub fn approx(&self, t: i64) -> (f64, f64) {
        match self.embed(t, 64) {
            Ok((re, im)) => (re.to_f64(), im.to_f64()),
            Err(_) => (f64::NAN, f64::NAN),
        }
    }
}

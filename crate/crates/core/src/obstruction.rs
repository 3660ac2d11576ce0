//! The obstruction to descending a system from `F = K(a1)` to its field of
//! moduli `K`: the intertwiner `X_sigma`, the invariant `mu`, and the
//! quaternion algebra `(D, mu / Q)`.

use crate::construct::{w2_poly, GIISpectra, MonodromyTriple};
use crate::error::{Error, Result};
use crate::exactnum::{gcd_i64, CycElt, CycMatrix, Exponent, Rat};
use crate::hermitian::units;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Serialized as `"p"` or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl From<Place> for String {
    fn from(p: Place) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Place {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        match s.as_str() {
            "inf" => Ok(Place::Infinity),
            _ => s.parse().map(Place::Prime).map_err(|_| Error::Parse(s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleData {
    pub x_sigma: CycMatrix,
    pub mu_raw: CycElt,
    /// The Galois twist `t` used for `sigma`.
    pub sigma: i64,
}

/// A Galois element fixing the spectra and swapping `alpha1` with `alpha2`.
pub fn swap_automorphism(s: &GIISpectra) -> Result<i64> {
    let target = spectra_key(s);
    units(s.conductor())
        .into_iter()
        .find(|&t| {
            let g = s.galois(t);
            g.alpha.0 == s.alpha.1 && spectra_key(&g) == target
        })
        .ok_or_else(|| Error::NotQuadratic("no Galois element fixes the spectra and swaps a1, a2".into()))
}

fn spectra_key(s: &GIISpectra) -> (Vec<Exponent>, Vec<Exponent>, Vec<Exponent>) {
    let sort = |mut v: Vec<Exponent>| {
        v.sort();
        v
    };
    (
        sort(vec![s.alpha.0.clone(), s.alpha.1.clone()]),
        sort(vec![s.beta.0.clone(), s.beta.1.clone()]),
        sort(s.gamma.to_vec()),
    )
}

/// Solves `T_s X = X T_s^sigma` for the three generators; the solution
/// space must be a line. `X` is scaled so its first nonzero entry is 1.
pub fn galois_twist_matrix(triple: &MonodromyTriple, sigma: i64) -> Result<CocycleData> {
    let n = triple.conductor();
    if n <= 2 || (sigma - 1).rem_euclid(n as i64) == 0 {
        return Ok(CocycleData { x_sigma: CycMatrix::identity(4), mu_raw: CycElt::one(1), sigma });
    }
    let d = 4;
    let mut rows: Vec<Vec<CycElt>> = Vec::with_capacity(3 * d * d);
    for t in triple.generators() {
        let ts = t.galois(sigma)?;
        for i in 0..d {
            for j in 0..d {
                // (T X)_ij - (X T^sigma)_ij in the unknowns X[k][l] at k * d + l
                let mut row = vec![CycElt::zero(n); d * d];
                for k in 0..d {
                    row[k * d + j] = &row[k * d + j] + t.get(i, k);
                    row[i * d + k] = &row[i * d + k] - ts.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    let sys = CycMatrix::from_rows(rows)?;
    let ker = sys.kernel();
    if ker.len() != 1 {
        return Err(Error::IntertwinerDimension(ker.len()));
    }
    let v = &ker[0];
    let lead = v.iter().find(|c| !c.is_zero()).expect("kernel vector is nonzero").inv()?;
    let x = CycMatrix::from_rows((0..d).map(|i| (0..d).map(|j| &v[i * d + j] * &lead).collect()).collect())?;
    let prod = x.mul(&x.galois(sigma)?)?;
    let mu_raw = prod.as_scalar().ok_or_else(|| Error::Other("X X^sigma is not scalar".into()))?.reduce_conductor();
    Ok(CocycleData { x_sigma: x, mu_raw, sigma })
}

/// `mu = -(a1 s2)^3 w2(q_inf)(1 / (a1 s2))`, `s2 = b1 b2`.
pub fn mu_invariant(s: &GIISpectra) -> Result<CycElt> {
    let n = s.conductor();
    let a1 = s.alpha.0.root_of_unity(n)?;
    let s2 = s.beta.0.add(&s.beta.1).root_of_unity(n)?;
    let y = &a1 * &s2;
    let w2 = w2_poly(&s.qinf())?;
    let val = w2.eval(&y.inv()?);
    if val.is_zero() {
        return Err(Error::DivisionByZero("w2(q_inf) vanishes at 1 / (a1 s2)"));
    }
    Ok((-&(&(&(&y * &y) * &y) * &val)).reduce_conductor())
}

/// Fundamental discriminant of `Q(a1)` when `a1` is quadratic over `Q`.
pub fn quadratic_disc(alpha: &(Exponent, Exponent)) -> Result<i64> {
    let n = crate::exactnum::lcm_u64(alpha.0.denom(), alpha.1.denom());
    let a1 = alpha.0.root_of_unity(n)?;
    let a2 = alpha.1.root_of_unity(n)?;
    let (tr, nm) = match ((&a1 + &a2).to_rat(), (&a1 * &a2).to_rat()) {
        (Some(t), Some(m)) => (t, m),
        _ => return Err(Error::NotQuadratic(format!("{} and {} are not conjugate over Q", alpha.0, alpha.1))),
    };
    let disc = &tr * &tr - nm * Rat::from_integer(4.into());
    if a1 == a2 || a1.to_rat().is_some() {
        return Err(Error::NotQuadratic("a1 is rational".into()));
    }
    let d = squarefree(&rat_class(&disc));
    let d = d.to_i64().ok_or_else(|| Error::Other("discriminant out of range".into()))?;
    if d == 1 {
        return Err(Error::NotQuadratic("discriminant is a square".into()));
    }
    Ok(if d.rem_euclid(4) == 1 { d } else { 4 * d })
}

/// Integer in the square class of a nonzero rational: `p / q ~ p q`.
fn rat_class(r: &Rat) -> BigInt {
    r.numer() * r.denom()
}

/// Squarefree part, sign kept.
pub fn squarefree(x: &BigInt) -> BigInt {
    let sign = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = x.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    sign * out * m
}

/// `mu` in `Q^x` modulo squares and modulo the primes dividing `D`, which
/// are norms from `F`; the quaternion class `(D, mu)` is unchanged.
pub fn reduce_mu(mu: &Rat, disc: i64) -> Result<i64> {
    if mu.is_zero() {
        return Err(Error::DivisionByZero("mu = 0"));
    }
    let mut m = squarefree(&rat_class(mu));
    for p in prime_divisors(disc.unsigned_abs()) {
        let p = BigInt::from(p);
        if (&m % &p).is_zero() {
            m /= p;
        }
    }
    m.to_i64().ok_or_else(|| Error::Other("mu out of range".into()))
}

/// The closed-form `mu` as a rational, when the field of moduli is `Q`.
pub fn rational_mu(s: &GIISpectra) -> Result<Rat> {
    mu_invariant(s)?.to_rat().ok_or_else(|| Error::Other("mu is not rational; field of moduli is not Q".into()))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn legendre(a: &BigInt, p: u64) -> i32 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("residue");
    if r == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (r as u128, (p - 1) / 2, 1u128);
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// `x = p^v u` with `p` not dividing `u`.
fn split(x: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut u = x.clone();
    let mut v = 0;
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

/// Hilbert symbol `(a, b)_v` over `Q`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DivisionByZero("hilbert symbol of 0"));
    }
    let (a, b) = (rat_class(a), rat_class(b));
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            // (-1)^(e(u) e(v) + alpha w(v) + beta w(u)), e(u) = (u - 1)/2, w(u) = (u^2 - 1)/8 mod 2
            let (al, u) = split(&a, 2);
            let (be, v) = split(&b, 2);
            let eps = |x: &BigInt| -> u32 { ((x - 1i32).mod_floor(&BigInt::from(4)) / 2u32).to_u32().unwrap() };
            let omega = |x: &BigInt| -> u32 { ((x * x - 1i32).mod_floor(&BigInt::from(16)) / 8u32).to_u32().unwrap() };
            let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (al, u) = split(&a, p);
            let (be, v) = split(&b, p);
            let mut s = if (al * be) % 2 == 1 && (p - 1) / 2 % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&v, p);
            }
            Ok(s)
        }
    }
}

/// Places where `(d, mu / Q)` ramifies; finite primes ascending, then infinity.
pub fn ramified_primes(d: i64, mu: &Rat) -> Result<Vec<Place>> {
    let a = Rat::from_integer(d.into());
    let cls = rat_class(mu).abs();
    let mut primes: Vec<u64> = prime_divisors(2 * d.unsigned_abs());
    let mut m = cls;
    let mut p = 2u64;
    while BigInt::from(p * p) <= m {
        if (&m % p).is_zero() {
            primes.push(p);
            while (&m % p).is_zero() {
                m /= p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push(m.to_u64().ok_or_else(|| Error::Other("prime factor out of range".into()))?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        if hilbert_symbol(&a, mu, Place::Prime(p))? == -1 {
            out.push(Place::Prime(p));
        }
    }
    if hilbert_symbol(&a, mu, Place::Infinity)? == -1 {
        out.push(Place::Infinity);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionClass {
    pub disc: i64,
    pub mu: i64,
    pub ramified: Vec<Place>,
}

/// `D`, reduced `mu` and ramification for a system with field of moduli `Q`.
pub fn quaternion_class(s: &GIISpectra) -> Result<QuaternionClass> {
    let disc = quadratic_disc(&s.alpha)?;
    let mu = reduce_mu(&rational_mu(s)?, disc)?;
    let ramified = ramified_primes(disc, &Rat::from_integer(mu.into()))?;
    Ok(QuaternionClass { disc, mu, ramified })
}

/// Whether the field of moduli is `Q`: every Galois twist fixes the spectra
/// up to swapping `alpha1` and `alpha2`.
pub fn moduli_is_rational(s: &GIISpectra) -> bool {
    let key = spectra_key(s);
    let n = s.conductor() as i64;
    (1..n.max(2)).filter(|&t| gcd_i64(t, n) == 1).all(|t| spectra_key(&s.galois(t)) == key)
}

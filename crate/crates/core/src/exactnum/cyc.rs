use super::cyclo::{cyclo, Cyclo};
use super::{fmt_rat, gcd_i64, lcm_u64, Rat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Element of `Q(zeta_n)` in the power basis `1, zeta, .., zeta^(phi(n)-1)`
/// reduced modulo the `n`-th cyclotomic polynomial.
///
/// Stored as integer numerators over one positive common denominator with
/// no common factor, so that equality at a fixed conductor is structural.
#[derive(Clone)]
pub struct CycElt {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycElt {
    fn data(&self) -> Arc<Cyclo> {
        cyclo(self.n)
    }

    fn from_parts(n: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        CycElt { n, num, den }
    }

    /// Reduces an arbitrary-length coefficient vector in powers of `zeta_n`.
    pub fn normalize(n: u64, raw: &[Rat]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let c = cyclo(n);
        let den = raw.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = raw.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Ok(Self::from_parts(n, reduce_ints(&c, &ints), den))
    }

    pub fn zero(n: u64) -> Self {
        let phi = cyclo(n).phi;
        CycElt { n, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn from_rat(n: u64, r: &Rat) -> Self {
        let phi = cyclo(n).phi;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = r.numer().clone();
        Self::from_parts(n, num, r.denom().clone())
    }

    pub fn from_int(n: u64, k: i64) -> Self {
        Self::from_rat(n, &Rat::from_integer(BigInt::from(k)))
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let c = cyclo(n);
        let num = c.pow[(k % n) as usize].iter().map(|&v| BigInt::from(v)).collect();
        Ok(CycElt { n, num, den: BigInt::one() })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.num.iter().map(|c| Rat::new(c.clone(), self.den.clone())).collect()
    }

    /// Integer coefficients when the element lies in `Z[zeta_n]`.
    pub fn int_coeffs(&self) -> Option<Vec<i64>> {
        if !self.den.is_one() {
            return None;
        }
        self.num.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub(crate) fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "lift to {m} from {}", self.n);
        let s = m / self.n;
        let c = cyclo(m);
        let mut out = vec![BigInt::zero(); c.phi];
        for (k, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let p = &c.pow[((k as u64 * s) % m) as usize];
            for (o, &v) in out.iter_mut().zip(p) {
                if v != 0 {
                    *o += a * v;
                }
            }
        }
        CycElt { n: m, num: out, den: self.den.clone() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = lcm_u64(a.n, b.n);
            (a.lift(m), b.lift(m))
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.n != o.n {
            let (a, b) = Self::common(self, o);
            return a.add_ref(&b);
        }
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(x, y)| x + y).collect();
            return Self::from_parts(self.n, num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(x, y)| x * &o.den + y * &self.den).collect();
        Self::from_parts(self.n, num, &self.den * &o.den)
    }

    pub fn neg_ref(&self) -> Self {
        CycElt { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.n != o.n {
            let (a, b) = Self::common(self, o);
            return a.mul_ref(&b);
        }
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n);
        }
        let c = self.data();
        let phi = c.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.n, reduce_ints(&c, &prod), &self.den * &o.den)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.n, num, &self.den * r.denom())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// Galois automorphism `zeta_n -> zeta_n^t`.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let n = self.n as i64;
        let tm = t.rem_euclid(n);
        if gcd_i64(tm, n) != 1 && n != 1 {
            return Err(Error::NotAUnit { t, n: self.n });
        }
        Ok(self.galois_unchecked(tm as u64))
    }

    fn galois_unchecked(&self, t: u64) -> Self {
        let c = self.data();
        let mut out = vec![BigInt::zero(); c.phi];
        for (k, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let p = &c.pow[((k as u64 * t) % self.n) as usize];
            for (o, &v) in out.iter_mut().zip(p) {
                if v != 0 {
                    *o += a * v;
                }
            }
        }
        CycElt { n: self.n, num: out, den: self.den.clone() }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.n - 1)
    }

    pub fn is_real(&self) -> bool {
        self == &self.conj()
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rat {
        let mut acc = self.clone();
        for t in 2..self.n {
            if gcd_i64(t as i64, self.n as i64) == 1 {
                acc = acc.mul_ref(&self.galois_unchecked(t));
            }
        }
        acc.to_rat().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse"));
        }
        if let Some(r) = self.to_rat() {
            return Ok(Self::from_rat(self.n, &(Rat::one() / r)));
        }
        let nz: Vec<usize> = (0..self.num.len()).filter(|&k| !self.num[k].is_zero()).collect();
        if let [k] = nz[..] {
            let c = Rat::new(self.den.clone(), self.num[k].clone());
            return Ok(Self::zeta_pow(self.n, self.n - k as u64)?.scale(&c));
        }
        let others = self.conjugate_product();
        let nrm = self.mul_ref(&others).to_rat().expect("norm is rational");
        Ok(others.scale(&(Rat::one() / nrm)))
    }

    /// Product of all nontrivial Galois conjugates, built along a chain of
    /// subgroups with `O(log phi)` multiplications per step.
    fn conjugate_product(&self) -> Self {
        let n = self.n;
        let mut in_h = vec![false; n as usize];
        in_h[1 % n as usize] = true;
        let mut h: Vec<u64> = vec![1 % n];
        let mut full = self.clone();
        let mut others = Self::one(n);
        for g in 2..n {
            if in_h[g as usize] || gcd_i64(g as i64, n as i64) != 1 {
                continue;
            }
            let mut r = 1;
            let mut gr = g;
            while !in_h[gr as usize] {
                gr = gr * g % n;
                r += 1;
            }
            // prod_{i=1}^{r-1} sigma_g^i(full) = sigma_g(prod_{i<r-1} sigma_g^i(full))
            let chain = orbit_product(&full, g, r - 1, n);
            let cos = chain.galois_unchecked(g);
            others = others.mul_ref(&cos);
            full = full.mul_ref(&cos);
            let mut next = Vec::with_capacity(h.len() * r as usize);
            let mut gi = 1 % n;
            for _ in 0..r {
                for &x in &h {
                    let y = gi * x % n;
                    in_h[y as usize] = true;
                    next.push(y);
                }
                gi = gi * g % n;
            }
            h = next;
        }
        others
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Whether the element lies in `Q(zeta_m)` for a divisor `m` of the conductor.
    pub fn in_subfield(&self, m: u64) -> bool {
        let n = self.n;
        if !n.is_multiple_of(m) {
            return false;
        }
        (1..n)
            .filter(|&t| t % m == 1 % m && gcd_i64(t as i64, n as i64) == 1)
            .all(|t| self.galois_unchecked(t) == *self)
    }

    /// Rewrites the element over `Q(zeta_m)` when it lies in that subfield.
    pub fn descend(&self, m: u64) -> Option<CycElt> {
        if m == self.n {
            return Some(self.clone());
        }
        if !self.in_subfield(m) {
            return None;
        }
        let big = self.data();
        let small = cyclo(m);
        let s = self.n / m;
        // columns: zeta_m^j lifted; solve by elimination over Q
        let rows = big.phi;
        let cols = small.phi;
        let mut a: Vec<Vec<Rat>> = (0..rows)
            .map(|i| {
                let mut row: Vec<Rat> = (0..cols)
                    .map(|j| Rat::from_integer(BigInt::from(big.pow[((j as u64 * s) % self.n) as usize][i])))
                    .collect();
                row.push(Rat::new(self.num[i].clone(), self.den.clone()));
                row
            })
            .collect();
        let mut r = 0;
        let mut piv = Vec::new();
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(p, r);
            let inv = Rat::one() / &a[r][c];
            for v in a[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            piv.push(c);
            r += 1;
        }
        let mut out = vec![Rat::zero(); cols];
        for (i, &c) in piv.iter().enumerate() {
            out[c] = a[i][cols].clone();
        }
        CycElt::normalize(m, &out).ok()
    }

    /// The same element over the smallest cyclotomic field containing it.
    pub fn reduce_conductor(&self) -> CycElt {
        self.descend(self.min_conductor()).expect("element lies in its minimal field")
    }

    /// Smallest `m` with the element in `Q(zeta_m)`.
    pub fn min_conductor(&self) -> u64 {
        if self.to_rat().is_some() {
            return 1;
        }
        // subfields intersect in the field of the gcd, so greedy descent is exact
        let mut m = self.n;
        'descend: loop {
            for p in prime_factors(m) {
                if self.in_subfield(m / p) {
                    m /= p;
                    continue 'descend;
                }
            }
            return m;
        }
    }

    /// Canonical hash key at this conductor.
    pub fn key(&self) -> (u64, Vec<BigInt>, BigInt) {
        (self.n, self.num.clone(), self.den.clone())
    }
}

/// `prod_{i<k} sigma_g^i(y)` by doubling.
fn orbit_product(y: &CycElt, g: u64, k: u64, n: u64) -> CycElt {
    if k == 0 {
        return CycElt::one(n);
    }
    let pow = |e: u64| -> u64 {
        let mut r = 1 % n;
        for _ in 0..e {
            r = r * g % n;
        }
        r
    };
    let mut acc = y.clone();
    let mut len = 1u64;
    for bit in (0..63 - k.leading_zeros()).rev() {
        acc = acc.mul_ref(&acc.galois_unchecked(pow(len)));
        len *= 2;
        if (k >> bit) & 1 == 1 {
            acc = acc.mul_ref(&y.galois_unchecked(pow(len)));
            len += 1;
        }
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

pub(crate) fn reduce_ints(c: &Cyclo, raw: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); c.phi];
    for (k, a) in raw.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if k < c.phi {
            out[k] += a;
        } else {
            let p = &c.pow[k % c.n as usize];
            for (o, &v) in out.iter_mut().zip(p) {
                if v != 0 {
                    *o += a * v;
                }
            }
        }
    }
    out
}

impl PartialEq for CycElt {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n {
            self.den == o.den && self.num == o.num
        } else {
            let (a, b) = Self::common(self, o);
            a == b
        }
    }
}

impl Eq for CycElt {}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = fmt_rat(c);
            terms.push(match k {
                0 => s,
                1 => format!("{s}*z"),
                _ => format!("{s}*z^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} [z=zeta_{}]", terms.join(" + "), self.n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycElt> for &CycElt {
            type Output = CycElt;
            fn $m(self, o: &CycElt) -> CycElt {
                self.$f(o)
            }
        }
        impl $tr<CycElt> for CycElt {
            type Output = CycElt;
            fn $m(self, o: CycElt) -> CycElt {
                (&self).$f(&o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for &CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        self.neg_ref()
    }
}

impl Neg for CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        self.neg_ref()
    }
}

#[derive(Serialize, Deserialize)]
struct CycEltRepr {
    conductor: u64,
    #[serde(with = "super::rat_vec_serde")]
    coeffs: Vec<Rat>,
}

impl Serialize for CycElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycEltRepr { conductor: self.n, coeffs: self.coeffs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycEltRepr::deserialize(d)?;
        CycElt::normalize(r.conductor, &r.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn z(n: u64, k: u64) -> CycElt {
        CycElt::zeta_pow(n, k).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(z(4, 2), CycElt::from_int(4, -1));
        assert_eq!(z(3, 2), CycElt::from_int(3, -1) - z(3, 1));
        assert_eq!(z(12, 4).coeffs(), vec![rat(-1, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
        let raw = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)];
        let e = CycElt::normalize(12, &raw).unwrap();
        assert_eq!(e, z(12, 4));
        assert!(CycElt::normalize(0, &raw).is_err());
    }

    #[test]
    fn galois_examples() {
        let a = z(12, 1);
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(a.galois(5).unwrap(), z(12, 5));
        assert_eq!(z(3, 1).galois(2).unwrap(), CycElt::from_int(3, -1) - z(3, 1));
        assert!(a.galois(2).is_err());
    }

    #[test]
    fn lift_equality() {
        let a = z(3, 1);
        let b = z(12, 4);
        assert_eq!(a, b);
        assert_eq!(a.lift(12), b);
        assert_eq!((&a + &z(4, 1)).conductor(), 12);
    }

    #[test]
    fn inverse_and_norm() {
        let x = &z(12, 1) + &CycElt::from_int(12, 2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(z(5, 1).norm(), rat(1, 1));
        assert_eq!((CycElt::one(5) - z(5, 1)).norm(), rat(5, 1));
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        let tau = &(&CycElt::one(5) + &z(5, 1)) + &z(5, 4);
        let lhs = &tau * &tau;
        assert_eq!(lhs, &tau + &CycElt::one(5));
        assert!(tau.is_real());
    }

    #[test]
    fn descend_to_subfield() {
        let x = z(36, 3);
        assert_eq!(x.min_conductor(), 12);
        let y = x.reduce_conductor();
        assert_eq!(y.conductor(), 12);
        assert_eq!(y, z(12, 1));
        let tau = &(&CycElt::one(5) + &z(5, 1)) + &z(5, 4);
        assert_eq!(tau.lift(30).reduce_conductor().conductor(), 5);
        assert_eq!(z(10, 2).min_conductor(), 5);
        assert_eq!(CycElt::from_int(12, 3).min_conductor(), 1);
        assert!(z(12, 1).descend(4).is_none());
    }

    #[test]
    fn serde_round_trip() {
        let x = &z(12, 1).scale(&rat(3, 7)) + &CycElt::from_int(12, 2);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycElt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}

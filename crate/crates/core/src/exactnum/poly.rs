use super::cyc::CycElt;
use super::{fmt_rat, lcm_u64, rat_int, Exponent, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Univariate polynomial over a cyclotomic field, low degree first,
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycPoly {
    coeffs: Vec<CycElt>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<CycElt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn from_rats(n: u64, c: &[Rat]) -> Self {
        Self::new(c.iter().map(|r| CycElt::from_rat(n, r)).collect())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| CycElt::from_int(1, k)).collect())
    }

    pub fn zero() -> Self {
        CycPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[CycElt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> CycElt {
        self.coeffs.get(i).cloned().unwrap_or_else(|| CycElt::zero(1))
    }

    pub fn leading(&self) -> Option<&CycElt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Least common conductor of the coefficients.
    pub fn conductor(&self) -> u64 {
        self.coeffs.iter().fold(1, |m, c| lcm_u64(m, c.conductor()))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![CycElt::zero(1); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &CycElt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &CycElt) -> CycElt {
        let mut acc = CycElt::zero(x.conductor());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn galois(&self, t: i64) -> Result<Self> {
        let m = self.conductor() as i64;
        self.coeffs.iter().map(|c| c.lift(m as u64).galois(t)).collect::<Result<Vec<_>>>().map(Self::new)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&rat_int(i as i64))).collect())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[CycElt]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc.mul_ref(&Self::new(vec![-r, CycElt::one(1)])))
    }

    /// `prod (x - exp(2 pi i e))` over the given exponents.
    pub fn from_exponents(es: &[Exponent]) -> Self {
        let n = es.iter().fold(1, |m, e| lcm_u64(m, e.denom()));
        let roots: Vec<CycElt> = es.iter().map(|e| e.root_of_unity(n).expect("conductor is a multiple")).collect();
        Self::from_roots(&roots)
    }

    /// Power sums `p_1 .. p_k` of the roots of a monic polynomial.
    pub fn power_sums(&self, k: usize) -> Result<Vec<CycElt>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.degree().unwrap();
        // e_i = (-1)^i c_{n-i}
        let e: Vec<CycElt> = (0..=n)
            .map(|i| {
                let c = self.coeff(n - i);
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let mut p: Vec<CycElt> = Vec::with_capacity(k);
        for m in 1..=k {
            let mut acc = if m <= n {
                let t = e[m].scale(&rat_int(m as i64));
                if m % 2 == 1 {
                    t
                } else {
                    -t
                }
            } else {
                CycElt::zero(1)
            };
            for i in 1..m.min(n + 1) {
                let t = &e[i] * &p[m - i - 1];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            p.push(acc);
        }
        Ok(p)
    }

    /// Monic polynomial of degree `n` with the given power sums `p_1 .. p_n`.
    pub fn from_power_sums(n: usize, p: &[CycElt]) -> Self {
        let mut e: Vec<CycElt> = vec![CycElt::one(1)];
        for k in 1..=n {
            let mut acc = CycElt::zero(1);
            for i in 1..=k {
                let t = &e[k - i] * &p[i - 1];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            e.push(acc.scale(&Rat::new(One::one(), (k as i64).into())));
        }
        Self::new(
            (0..=n)
                .map(|i| {
                    let c = e[n - i].clone();
                    if (n - i).is_multiple_of(2) {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }

    /// Monic polynomial whose roots are the products `r_i r_j`, `i < j`,
    /// of the roots of this monic polynomial.
    pub fn pair_products(&self) -> Result<Self> {
        let n = self.degree().ok_or(Error::NotMonic)?;
        let m = n * (n - 1) / 2;
        let p = self.power_sums(2 * m)?;
        let half = Rat::new(One::one(), 2.into());
        let q: Vec<CycElt> = (1..=m).map(|k| (&(&p[k - 1] * &p[k - 1]) - &p[2 * k - 1]).scale(&half)).collect();
        Ok(Self::from_power_sums(m, &q))
    }

    pub fn to_rats(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.to_rat()).collect()
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let body = match c.to_rat() {
                Some(r) => {
                    let (neg, a) = (r.is_negative(), r.abs());
                    let s = if a.is_one() && i > 0 { String::new() } else { fmt_rat(&a) };
                    let s = match (s.is_empty(), mono.is_empty()) {
                        (true, _) => mono.clone(),
                        (false, true) => s,
                        (false, false) => format!("{s}*{mono}"),
                    };
                    (neg, s)
                }
                None => (false, if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") }),
            };
            if out.is_empty() {
                out = if body.0 { format!("-{}", body.1) } else { body.1 };
            } else {
                out.push_str(if body.0 { " - " } else { " + " });
                out.push_str(&body.1);
            }
        }
        f.write_str(&out)
    }
}

impl Zero for CycPoly {
    fn zero() -> Self {
        CycPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::ops::Add for CycPoly {
    type Output = CycPoly;
    fn add(self, o: CycPoly) -> CycPoly {
        self.add_ref(&o)
    }
}

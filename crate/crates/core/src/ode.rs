//! Goursat's fourth-order operator, its power-series solutions, indicial
//! exponents of Fuchsian operators, algebraicity checks, hypergeometric
//! series and Newton-polygon exponent ladders.

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rat, CycElt, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// The constants `A..H` of
/// `x^2(x-1)^2 y'''' + (Ax - B) x(x-1) y''' + (Cx^2 - Dx + E) y'' + (Fx - G) y' + H y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeCoefficients {
    #[serde(with = "crate::exactnum::rat_vec_serde")]
    pub constants: Vec<Rat>,
    #[serde(with = "crate::exactnum::rat_serde")]
    pub beta: Rat,
    #[serde(with = "crate::exactnum::rat_vec_serde")]
    pub alpha: Vec<Rat>,
    #[serde(with = "crate::exactnum::rat_vec_serde")]
    pub gamma: Vec<Rat>,
}

fn elementary(x: &[Rat]) -> Vec<Rat> {
    let mut e = vec![r(1)];
    for v in x {
        let mut next = e.clone();
        next.push(r(0));
        for k in 1..next.len() {
            next[k] = &next[k] + v * &e[k - 1];
        }
        e = next;
    }
    e
}

/// Exponents `0: (0, 1, 1 - a1, 1 - a2)`, `1: (0, 1, b, b + 1)`,
/// `inf: gamma`, with `b = (1 + e1(alpha) - e1(gamma)) / 2`.
pub fn ode_coefficients(alpha: (Rat, Rat), gamma: [Rat; 4]) -> OdeCoefficients {
    let ea = elementary(&[alpha.0.clone(), alpha.1.clone()]);
    let eg = elementary(&gamma);
    let beta = (r(1) + &ea[1] - &eg[1]) / r(2);
    let a = r(6) + &eg[1];
    let b = r(3) + &ea[1];
    let c = r(7) + r(3) * &eg[1] + &eg[2];
    let e = r(1) + &ea[1] + &ea[2];
    let b1 = &beta - r(1);
    let b2 = &beta - r(2);
    let b3 = &beta - r(3);
    let d = &e + &c - &b1 * &b2;
    let f = r(1) + &eg[1] + &eg[2] + &eg[3];
    let g = &f + r(2) * &b1 * &b2 * &b3 + &b1 * &b2 * (r(2) * &a - &b) + &b1 * (r(2) * &c - &d);
    let h = eg[4].clone();
    OdeCoefficients {
        constants: vec![a, b, c, d, e, f, g, h],
        beta,
        alpha: vec![alpha.0, alpha.1],
        gamma: gamma.to_vec(),
    }
}

impl OdeCoefficients {
    fn k(&self, i: usize) -> &Rat {
        &self.constants[i]
    }

    pub fn operator(&self) -> LinearOperator {
        let [a, b, c, d, e, f, g, h] = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| self.k(i).clone());
        LinearOperator::new(vec![
            vec![h],
            vec![-g, f],
            vec![e, -d, c],
            vec![r(0), b.clone(), -(&a + &b), a],
            vec![r(0), r(0), r(1), r(-2), r(1)],
        ])
        .expect("leading coefficient is nonzero")
    }

    /// `(C0, C1, C2)` at `n`, relating `a_{n+2}`, `a_{n+1}` and `a_n`.
    pub fn recursion(&self, n: i64) -> (Rat, Rat, Rat) {
        let [a, b, c, d, e, f, g, h] = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| self.k(i).clone());
        let n = r(n);
        let n1 = &n - r(1);
        let n2 = &n - r(2);
        let n3 = &n - r(3);
        let c0 = (&n + r(1)) * (&n + r(2)) * (&n * &n1 + &b * &n + &e);
        let c1 = (&n + r(1)) * (r(2) * &n * &n1 * &n2 + (&a + &b) * &n * &n1 + &d * &n + &g);
        let c2 = -(&n * &n1 * &n2 * &n3 + &a * &n * &n1 * &n2 + &c * &n * &n1 + &f * &n + &h);
        (c0, c1, c2)
    }
}

/// `sum_i p_i(x) (d/dx)^i`, polynomial coefficients listed low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    coeffs: Vec<Vec<Rat>>,
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn falling(k: &Rat, i: usize) -> Rat {
    (0..i).fold(r(1), |acc, j| acc * (k - r(j as i64)))
}

/// `p(x + 1)`.
fn taylor_shift(p: &[Rat]) -> Vec<Rat> {
    let mut out = p.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = out[j + 1].clone();
            out[j] += t;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

impl FromStr for SingularPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(SingularPoint::Zero),
            "1" => Ok(SingularPoint::One),
            "inf" | "infinity" | "oo" => Ok(SingularPoint::Infinity),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularPoint::Zero => "0",
            SingularPoint::One => "1",
            SingularPoint::Infinity => "inf",
        })
    }
}

/// Indicial polynomial with its rational roots; `residual` is the monic
/// factor without rational roots (`[1]` when everything split).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicial {
    pub polynomial: Vec<Rat>,
    pub roots: Vec<Rat>,
    pub residual: Vec<Rat>,
}

impl LinearOperator {
    pub fn new(coeffs: Vec<Vec<Rat>>) -> Result<Self> {
        let mut coeffs: Vec<Vec<Rat>> = coeffs.into_iter().map(trim).collect();
        while coeffs.last().is_some_and(|p| p.is_empty()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Other("operator has no nonzero coefficient".into()));
        }
        Ok(LinearOperator { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<Rat>] {
        &self.coeffs
    }

    /// `[x^m] L(x^k)`.
    fn monomial_coeff(&self, m: usize, k: usize) -> Rat {
        let kr = r(k as i64);
        let mut acc = r(0);
        for (i, p) in self.coeffs.iter().enumerate() {
            // p_i(x) k^(i) x^(k-i); needs deg j with j + k - i = m
            if i > k {
                continue;
            }
            let j = m as i64 - k as i64 + i as i64;
            if j < 0 || j as usize >= p.len() || p[j as usize].is_zero() {
                continue;
            }
            acc += &p[j as usize] * falling(&kr, i);
        }
        acc
    }

    /// `L y`, known modulo `x^(prec - order)`.
    pub fn apply(&self, y: &PowerSeries) -> PowerSeries {
        let prec = y.prec.saturating_sub(self.order());
        let n = y.conductor();
        let mut out = PowerSeries::zero(n, prec);
        let mut d = y.clone();
        for (i, p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = d.derivative();
            }
            let poly = PowerSeries::from_rats(p, prec);
            out = out.add(&poly.mul(&d.truncate(prec)));
        }
        out
    }

    /// Coefficients `a_0..a_{n-1}` of the power-series solution with the
    /// given leading terms, found by substituting term by term. The highest
    /// shift of the operator must be attained exactly once per equation.
    pub fn solve_by_substitution(&self, init: &[CycElt], n: usize) -> Result<PowerSeries> {
        let shift = self.coeffs.iter().enumerate().map(|(i, p)| i as i64 - first_nonzero(p) as i64).max().unwrap_or(0);
        if shift <= 0 || init.len() != shift as usize {
            return Err(Error::Other(format!("expected {shift} initial coefficients")));
        }
        let s = shift as usize;
        let cond = init.iter().map(|c| c.conductor()).max().unwrap_or(1);
        let mut a: Vec<CycElt> = init.iter().map(|c| c.lift(crate::exactnum::lcm_u64(c.conductor(), cond))).collect();
        for m in 0..n.saturating_sub(s) {
            let k = m + s;
            let lead = self.monomial_coeff(m, k);
            if lead.is_zero() {
                return Err(Error::Resonant(k));
            }
            let mut acc = CycElt::zero(cond);
            for (j, aj) in a.iter().enumerate() {
                let c = self.monomial_coeff(m, j);
                if !c.is_zero() {
                    acc = &acc + &aj.scale(&c);
                }
            }
            a.push((-&acc).scale(&(r(1) / lead)));
        }
        a.truncate(n);
        Ok(PowerSeries::new(a, n))
    }

    /// Frobenius indicial polynomial at `0`, `1` or infinity; rejects
    /// irregular singular points.
    pub fn indicial(&self, at: SingularPoint) -> Result<Indicial> {
        let m = self.order();
        let poly = match at {
            SingularPoint::Zero | SingularPoint::One => {
                let ps: Vec<Vec<Rat>> = match at {
                    SingularPoint::One => self.coeffs.iter().map(|p| taylor_shift(p)).collect(),
                    _ => self.coeffs.clone(),
                };
                let low: Vec<Option<i64>> =
                    ps.iter().map(|p| p.iter().position(|c| !c.is_zero()).map(|v| v as i64)).collect();
                let lead = low[m].expect("leading coefficient nonzero") - m as i64;
                let min = low.iter().enumerate().filter_map(|(i, v)| v.map(|v| v - i as i64)).min().unwrap();
                if min < lead {
                    return Err(Error::Irregular(at.to_string()));
                }
                let mut out = vec![r(0)];
                for (i, p) in ps.iter().enumerate() {
                    if let Some(v) = low[i] {
                        if v - i as i64 == lead {
                            out = poly_add(&out, &poly_scale(&falling_poly(i), &p[v as usize]));
                        }
                    }
                }
                out
            }
            SingularPoint::Infinity => {
                // y = x^s; exponent at infinity is -s
                let deg: Vec<Option<i64>> =
                    self.coeffs.iter().map(|p| (!p.is_empty()).then(|| p.len() as i64 - 1)).collect();
                let lead = deg[m].unwrap() - m as i64;
                let max = deg.iter().enumerate().filter_map(|(i, v)| v.map(|v| v - i as i64)).max().unwrap();
                if max > lead {
                    return Err(Error::Irregular(at.to_string()));
                }
                let mut out = vec![r(0)];
                for (i, p) in self.coeffs.iter().enumerate() {
                    if let Some(d) = deg[i] {
                        if d - i as i64 == lead {
                            out = poly_add(&out, &poly_scale(&falling_poly(i), &p[d as usize]));
                        }
                    }
                }
                // substitute s = -rho
                out.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect()
            }
        };
        let poly = trim(poly);
        let (roots, residual) = rational_roots(&poly);
        Ok(Indicial { polynomial: poly, roots, residual })
    }
}

fn first_nonzero(p: &[Rat]) -> usize {
    p.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX / 4)
}

/// `rho (rho - 1) .. (rho - i + 1)` as a polynomial.
fn falling_poly(i: usize) -> Vec<Rat> {
    let mut p = vec![r(1)];
    for j in 0..i {
        p = poly_mul(&p, &[r(-(j as i64)), r(1)]);
    }
    p
}

fn poly_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).cloned().unwrap_or_else(Rat::zero) + b.get(i).cloned().unwrap_or_else(Rat::zero)).collect()
}

fn poly_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![r(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(r(0), |acc, c| acc * x + c)
}

/// Divides by `x - root`.
fn deflate(p: &[Rat], root: &Rat) -> Vec<Rat> {
    let n = p.len() - 1;
    let mut q = vec![r(0); n];
    let mut carry = r(0);
    for k in (1..=n).rev() {
        carry = &p[k] + carry * root;
        q[k - 1] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// Rational roots with multiplicity, and the monic cofactor.
pub fn rational_roots(p: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut p = trim(p.to_vec());
    let mut roots = Vec::new();
    if p.is_empty() {
        return (roots, p);
    }
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        roots.push(r(0));
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        let den = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut found = None;
        'search: for num in divisors(&ints[0]) {
            for dd in divisors(ints.last().unwrap()) {
                for sign in [1, -1] {
                    let cand = Rat::new(&num * sign, dd.clone());
                    if poly_eval(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(x) => {
                p = deflate(&p, &x);
                roots.push(x);
            }
            None => break,
        }
    }
    roots.sort();
    let lc = p.last().unwrap().clone();
    (roots, p.iter().map(|c| c / &lc).collect())
}

/// Truncated power series `sum a_k x^k + O(x^prec)` over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<CycElt>,
    prec: usize,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<CycElt>, prec: usize) -> Self {
        coeffs.truncate(prec);
        let n = coeffs.iter().map(|c| c.conductor()).fold(1, crate::exactnum::lcm_u64);
        let mut coeffs: Vec<CycElt> = coeffs.into_iter().map(|c| c.lift(n)).collect();
        coeffs.resize(prec, CycElt::zero(n));
        PowerSeries { coeffs, prec }
    }

    pub fn from_rats(c: &[Rat], prec: usize) -> Self {
        Self::new(c.iter().map(|x| CycElt::from_rat(1, x)).collect(), prec)
    }

    pub fn zero(n: u64, prec: usize) -> Self {
        PowerSeries { coeffs: vec![CycElt::zero(n); prec], prec }
    }

    pub fn constant(c: CycElt, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    /// The series `x`.
    pub fn x(prec: usize) -> Self {
        Self::from_rats(&[r(0), r(1)], prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeffs(&self) -> &[CycElt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycElt {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CycElt::zero(self.conductor()))
    }

    pub fn conductor(&self) -> u64 {
        self.coeffs.first().map_or(1, |c| c.conductor())
    }

    pub fn to_rats(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.to_rat()).collect()
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), prec.min(self.prec))
    }

    fn zip(&self, o: &Self, f: impl Fn(&CycElt, &CycElt) -> CycElt) -> Self {
        let prec = self.prec.min(o.prec);
        Self::new((0..prec).map(|k| f(&self.coeffs[k], &o.coeffs[k])).collect(), prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let n = crate::exactnum::lcm_u64(self.conductor(), o.conductor());
        let mut out = vec![CycElt::zero(n); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(prec - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out, prec)
    }

    pub fn scale(&self, c: &CycElt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.prec)
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect(), self.prec)
    }

    pub fn derivative(&self) -> Self {
        let prec = self.prec.saturating_sub(1);
        Self::new((1..=prec).map(|k| self.coeffs[k].scale(&r(k as i64))).collect(), prec)
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let n = self.conductor();
        let mut c = vec![CycElt::zero(n)];
        c.extend(self.coeffs.iter().enumerate().map(|(k, a)| a.scale(&Rat::new(1.into(), (k as i64 + 1).into()))));
        Self::new(c, self.prec + 1)
    }

    pub fn inv(&self) -> Result<Self> {
        let a0 = self.coeff(0);
        let i0 = a0.inv()?;
        let mut b: Vec<CycElt> = vec![i0.clone()];
        for k in 1..self.prec {
            let mut acc = CycElt::zero(self.conductor());
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &b[k - j]);
            }
            b.push(-&(&acc * &i0));
        }
        Ok(Self::new(b, self.prec))
    }

    /// `log f` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::Other("log needs constant term 1".into()));
        }
        Ok(self.derivative().mul(&self.inv()?.truncate(self.prec - 1)).integral())
    }

    /// `exp f` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Other("exp needs constant term 0".into()));
        }
        let n = self.conductor();
        let mut g = vec![CycElt::one(n)];
        for k in 1..self.prec {
            let mut acc = CycElt::zero(n);
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &g[k - j]).scale(&r(j as i64));
            }
            g.push(acc.scale(&Rat::new(1.into(), (k as i64).into())));
        }
        Ok(Self::new(g, self.prec))
    }

    /// `f^e = exp(e log f)` for `f(0) = 1`.
    pub fn pow_rat(&self, e: &Rat) -> Result<Self> {
        self.log()?.scale_rat(e).exp()
    }

    /// `f(x) / x^k` when the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Other(format!("series is not divisible by x^{k}")));
        }
        Ok(Self::new(self.coeffs[k.min(self.prec)..].to_vec(), self.prec.saturating_sub(k)))
    }

    /// Substitutes `c x` for `x`.
    pub fn rescale(&self, c: &Rat) -> Self {
        let mut p = r(1);
        let mut out = Vec::with_capacity(self.prec);
        for a in &self.coeffs {
            out.push(a.scale(&p));
            p *= c;
        }
        Self::new(out, self.prec)
    }

    /// `sum c_i y^i` with series coefficients.
    pub fn eval_poly(poly: &[PowerSeries], y: &Self) -> Self {
        let prec = poly.iter().map(|p| p.prec).chain([y.prec]).min().unwrap_or(0);
        let mut acc = PowerSeries::zero(1, prec);
        for c in poly.iter().rev() {
            acc = acc.mul(y).add(c);
        }
        acc
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let c = c.to_rat().map(|q| fmt_rat(&q)).unwrap_or_else(|| format!("({c})"));
                match k {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{k}"),
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{body} + O(x^{})", self.prec)
    }
}

/// Solves `Q(x, y) = 0` for a series `y` with `y(0) = seed` by Newton's
/// method, doubling the precision each step. `Q'(seed)` must be a unit.
pub fn newton_root(q: &[PowerSeries], seed: &CycElt, prec: usize) -> Result<PowerSeries> {
    let dq: Vec<PowerSeries> = q.iter().enumerate().skip(1).map(|(i, c)| c.scale_rat(&r(i as i64))).collect();
    let mut y = PowerSeries::constant(seed.clone(), 1);
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let y_ext = PowerSeries::new(y.coeffs.clone(), cur);
        let qs: Vec<PowerSeries> = q.iter().map(|c| c.truncate(cur)).collect();
        let dqs: Vec<PowerSeries> = dq.iter().map(|c| c.truncate(cur)).collect();
        let f = PowerSeries::eval_poly(&qs, &y_ext);
        let df = PowerSeries::eval_poly(&dqs, &y_ext);
        y = y_ext.sub(&f.mul(&df.inv()?));
    }
    Ok(y.truncate(prec))
}

/// `phi0 = 1 + O(x^2)` and `phi1 = x + O(x^2)` through `x^(n-1)`, from the
/// three-term recursion `C0(k) a_{k+2} = C1(k) a_{k+1} + C2(k) a_k`.
pub fn series_solutions(c: &OdeCoefficients, n: usize) -> Result<(PowerSeries, PowerSeries)> {
    let run = |a0: i64, a1: i64| -> Result<PowerSeries> {
        let mut a = vec![r(a0), r(a1)];
        for k in 0..n.saturating_sub(2) {
            let (c0, c1, c2) = c.recursion(k as i64);
            if c0.is_zero() {
                return Err(Error::Resonant(k + 2));
            }
            let next = (c1 * &a[k + 1] + c2 * &a[k]) / c0;
            a.push(next);
        }
        a.truncate(n);
        Ok(PowerSeries::from_rats(&a, n))
    };
    Ok((run(1, 0)?, run(0, 1)?))
}

/// `P(x, y) = sum_i (sum_j c_ij x^j) y^i`; `coeffs[i][j] = c_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<CycElt>>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Vec<CycElt>>) -> Self {
        BivariatePoly { coeffs }
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval_series(&self, y: &PowerSeries, prec: usize) -> PowerSeries {
        let cs: Vec<PowerSeries> = self.coeffs.iter().map(|c| PowerSeries::new(c.clone(), prec)).collect();
        PowerSeries::eval_poly(&cs, &y.truncate(prec))
    }
}

/// Whether `P(x, y(x)) = 0 mod x^n`.
pub fn verify_algebraic(p: &BivariatePoly, y: &PowerSeries, n: usize) -> Result<bool> {
    if y.prec() < n {
        return Err(Error::Other(format!("series known to O(x^{}), need {n}", y.prec())));
    }
    Ok(p.eval_series(y, n).coeffs().iter().all(|c| c.is_zero()))
}

/// Whether the lower parameters carry the `k!` or are taken literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PfqNormalization {
    /// `sum prod (a)_k / (prod (b)_k k!) x^k`.
    Factorial,
    /// `sum prod (a)_k / prod (b)_k x^k`; the `1` standing for `k!` must be
    /// listed among the lower parameters.
    Verbatim,
}

/// Generalized hypergeometric series through `x^(n-1)`.
pub fn pfq_series(upper: &[Rat], lower: &[Rat], n: usize, norm: PfqNormalization) -> Result<PowerSeries> {
    for b in lower {
        if b.is_integer() && !b.is_positive() && (-b).to_integer() < BigInt::from(n as i64).max(BigInt::one()) {
            return Err(Error::Pole(fmt_rat(b)));
        }
    }
    let mut c = r(1);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(c.clone());
        let kr = r(k as i64);
        let num = upper.iter().fold(r(1), |acc, a| acc * (a + &kr));
        let mut den = lower.iter().fold(r(1), |acc, b| acc * (b + &kr));
        if norm == PfqNormalization::Factorial {
            den *= &kr + r(1);
        }
        if den.is_zero() {
            if k + 1 < n {
                return Err(Error::Pole(format!("term {}", k + 1)));
            }
            break;
        }
        c = c * num / den;
    }
    Ok(PowerSeries::from_rats(&out, n))
}

/// One side of a Newton polygon: slope and horizontal width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSide {
    #[serde(with = "crate::exactnum::rat_serde")]
    pub slope: Rat,
    pub width: u32,
}

/// Bottom sides give the exponents at `t = 0`, top sides those at infinity.
/// Slopes of top sides are measured walking the boundary counterclockwise,
/// i.e. from right to left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygonSides {
    pub bottom: Vec<PolygonSide>,
    pub top: Vec<PolygonSide>,
}

impl NewtonPolygonSides {
    /// Sides of the convex hull of monomial exponents `(deg_u, deg_t)`.
    pub fn from_support(points: &[(i64, i64)]) -> Result<Self> {
        let mut pts: Vec<(i64, i64)> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 2 {
            return Err(Error::Other("need two monomials".into()));
        }
        let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
        let chain = |it: &mut dyn Iterator<Item = (i64, i64)>| {
            let mut h: Vec<(i64, i64)> = Vec::new();
            for p in it {
                while h.len() >= 2 && cross(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                    h.pop();
                }
                h.push(p);
            }
            h
        };
        let lower = chain(&mut pts.iter().copied());
        let upper = chain(&mut pts.iter().rev().copied());
        let sides = |h: &[(i64, i64)], flip: bool| -> Result<Vec<PolygonSide>> {
            h.windows(2)
                .map(|w| {
                    let dx = (w[1].0 - w[0].0).abs();
                    if dx == 0 {
                        return Err(Error::VerticalSide);
                    }
                    let slope = Rat::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into());
                    Ok(PolygonSide { slope: if flip { -slope } else { slope }, width: dx as u32 })
                })
                .collect()
        };
        let strip = |h: Vec<(i64, i64)>| -> Vec<(i64, i64)> {
            // drop vertical end segments, which carry no exponents
            let mut h = h;
            while h.len() >= 2 && h[0].0 == h[1].0 {
                h.remove(0);
            }
            while h.len() >= 2 && h[h.len() - 1].0 == h[h.len() - 2].0 {
                h.pop();
            }
            h
        };
        Ok(NewtonPolygonSides { bottom: sides(&strip(lower), false)?, top: sides(&strip(upper), true)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonExponents {
    #[serde(with = "crate::exactnum::rat_vec_serde")]
    pub at_zero: Vec<Rat>,
    #[serde(with = "crate::exactnum::rat_vec_serde")]
    pub at_infinity: Vec<Rat>,
}

/// `[k] = 0 - k r, 1/d - k r, .., (e-1)/d - k r` for each side, `d` the
/// denominator of the slope `k` and `e` the width.
pub fn newton_exponents(sides: &NewtonPolygonSides, rr: &Rat) -> Result<NewtonExponents> {
    let ladder = |list: &[PolygonSide]| -> Result<Vec<Rat>> {
        let mut out = Vec::new();
        for s in list {
            if s.width == 0 {
                return Err(Error::VerticalSide);
            }
            let d = s.slope.denom().clone();
            for j in 0..s.width {
                out.push(Rat::new(j.into(), d.clone()) - &s.slope * rr);
            }
        }
        Ok(out)
    };
    Ok(NewtonExponents { at_zero: ladder(&sides.bottom)?, at_infinity: ladder(&sides.top)? })
}

/// Primes dividing a denominator among the first `n` coefficients, plus
/// any cofactor left after trial division up to `10^6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorSupport {
    pub primes: BTreeSet<u64>,
    pub unfactored: Vec<String>,
}

pub fn denominator_support(y: &PowerSeries, n: usize) -> Result<DenominatorSupport> {
    let rats = y.truncate(n).to_rats().ok_or_else(|| Error::Other("coefficients are not rational".into()))?;
    let mut primes = BTreeSet::new();
    let mut unfactored = BTreeSet::new();
    for c in rats {
        let mut d = c.denom().clone();
        let mut p = 2u64;
        while d > BigInt::one() && p <= 1_000_000 {
            if (&d % p).is_zero() {
                primes.insert(p);
                while (&d % p).is_zero() {
                    d /= p;
                }
            }
            if BigInt::from(p) * BigInt::from(p) > d {
                break;
            }
            p += 1;
        }
        if d > BigInt::one() {
            match d.to_u64() {
                Some(q) if q <= 1_000_000u64 * 1_000_000 => {
                    primes.insert(q);
                }
                _ => {
                    unfactored.insert(d.to_string());
                }
            }
        }
    }
    Ok(DenominatorSupport { primes, unfactored: unfactored.into_iter().collect() })
}

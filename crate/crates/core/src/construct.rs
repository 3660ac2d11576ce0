//! G-II eigenvalue data, the Goursat parameters `A, D, BC`, the two
//! explicit monodromy triples and the irreducibility test.

use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, CycElt, CycMatrix, CycPoly, Exponent, Rat};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exponents of a G-II system: `T0 ~ (1, 1, a1, a2)`, `T1 ~ (b1, b1, b2, b2)`,
/// `T_inf ~ (c1, .., c4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GIISpectra {
    pub alpha: (Exponent, Exponent),
    pub beta: (Exponent, Exponent),
    pub gamma: [Exponent; 4],
}

/// Scalar twist taking spectra to normal form: `T1` is multiplied by
/// `exp(-2 pi i shift)` and `T_inf` by `exp(2 pi i shift)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub shift: Exponent,
}

impl GIISpectra {
    /// Checks the determinant condition and the distinctness of labels.
    pub fn new(alpha: (Exponent, Exponent), beta: (Exponent, Exponent), gamma: [Exponent; 4]) -> Result<Self> {
        let s = GIISpectra { alpha, beta, gamma };
        let bad = |m: &str| Err(Error::InvalidSpectra(m.to_string()));
        if !s.det_sum().is_integer() {
            return bad("determinant condition fails: exponent sum is not an integer");
        }
        if s.alpha.0 == s.alpha.1 {
            return bad("alpha1 = alpha2");
        }
        if s.alpha.0.is_zero() || s.alpha.1.is_zero() {
            return bad("an alpha exponent is 0, colliding with the double eigenvalue 1 of T0");
        }
        if s.beta.0 == s.beta.1 {
            return bad("beta1 = beta2");
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if s.gamma[i] == s.gamma[j] {
                    return bad("gamma exponents are not distinct");
                }
            }
        }
        Ok(s)
    }

    pub fn parse(alpha: &[&str], beta: &[&str], gamma: &[&str]) -> Result<Self> {
        let p = |v: &[&str], k: usize, what: &str| -> Result<Vec<Exponent>> {
            if v.len() != k {
                return Err(Error::InvalidSpectra(format!("{what} needs {k} exponents, got {}", v.len())));
            }
            v.iter().map(|s| Exponent::parse(s)).collect()
        };
        let a = p(alpha, 2, "alpha")?;
        let b = p(beta, 2, "beta")?;
        let g = p(gamma, 4, "gamma")?;
        Self::new(
            (a[0].clone(), a[1].clone()),
            (b[0].clone(), b[1].clone()),
            [g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
        )
    }

    /// Normalized spectra `T1 ~ (1, 1, b, b)` from `alpha`, `b` and `gamma`.
    pub fn normalized(alpha: (Exponent, Exponent), b: Exponent, gamma: [Exponent; 4]) -> Result<Self> {
        Self::new(alpha, (Exponent::zero(), b), gamma)
    }

    fn det_sum(&self) -> Rat {
        let mut s = self.alpha.0.value() + self.alpha.1.value();
        s += (self.beta.0.value() + self.beta.1.value()) * Rat::from_integer(2.into());
        for g in &self.gamma {
            s += g.value();
        }
        s
    }

    fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        [&self.alpha.0, &self.alpha.1, &self.beta.0, &self.beta.1].into_iter().chain(self.gamma.iter())
    }

    /// Least common multiple of all exponent denominators.
    pub fn conductor(&self) -> u64 {
        self.exponents().fold(1, |m, e| lcm_u64(m, e.denom()))
    }

    pub fn is_normalized(&self) -> bool {
        self.beta.0.is_zero()
    }

    /// The nontrivial `T1` exponent of the normalized form.
    pub fn b(&self) -> &Exponent {
        &self.beta.1
    }

    /// Moves `beta1` to 0, shifting `gamma` by `beta1`.
    pub fn normalize_twist(&self) -> (GIISpectra, Twist) {
        let t = self.beta.0.clone();
        (self.apply_twist(&t), Twist { shift: t })
    }

    pub fn apply_twist(&self, shift: &Exponent) -> GIISpectra {
        GIISpectra {
            alpha: self.alpha.clone(),
            beta: (self.beta.0.sub(shift), self.beta.1.sub(shift)),
            gamma: self.gamma.clone().map(|g| g.add(shift)),
        }
    }

    pub fn undo_twist(&self, tw: &Twist) -> GIISpectra {
        self.apply_twist(&tw.shift.neg())
    }

    /// Galois twist: every exponent multiplied by `t`.
    pub fn galois(&self, t: i64) -> GIISpectra {
        GIISpectra {
            alpha: (self.alpha.0.scale(t), self.alpha.1.scale(t)),
            beta: (self.beta.0.scale(t), self.beta.1.scale(t)),
            gamma: self.gamma.clone().map(|g| g.scale(t)),
        }
    }

    fn roots(&self, n: u64) -> Roots {
        let r = |e: &Exponent| e.root_of_unity(n).expect("conductor covers every denominator");
        Roots {
            a1: r(&self.alpha.0),
            a2: r(&self.alpha.1),
            b1: r(&self.beta.0),
            b2: r(&self.beta.1),
            c: self.gamma.clone().map(|g| r(&g)),
        }
    }

    pub fn q0(&self) -> CycPoly {
        CycPoly::from_exponents(&[Exponent::zero(), Exponent::zero(), self.alpha.0.clone(), self.alpha.1.clone()])
    }

    pub fn q1(&self) -> CycPoly {
        CycPoly::from_exponents(&[self.beta.0.clone(), self.beta.0.clone(), self.beta.1.clone(), self.beta.1.clone()])
    }

    pub fn qinf(&self) -> CycPoly {
        CycPoly::from_exponents(&self.gamma)
    }

    /// `alpha1 < alpha2` and `gamma` increasing.
    pub fn sorted(&self) -> GIISpectra {
        let mut s = self.clone();
        if s.alpha.0 > s.alpha.1 {
            s.alpha = (s.alpha.1.clone(), s.alpha.0.clone());
        }
        s.gamma.sort();
        s
    }
}

impl fmt::Display for GIISpectra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha=({},{}) beta=({},{}) gamma=({},{},{},{})",
            self.alpha.0,
            self.alpha.1,
            self.beta.0,
            self.beta.1,
            self.gamma[0],
            self.gamma[1],
            self.gamma[2],
            self.gamma[3]
        )
    }
}

struct Roots {
    a1: CycElt,
    a2: CycElt,
    b1: CycElt,
    b2: CycElt,
    c: [CycElt; 4],
}

fn int(n: u64, k: i64) -> CycElt {
    CycElt::from_int(n, k)
}

fn div(a: &CycElt, b: &CycElt, what: &'static str) -> Result<CycElt> {
    if b.is_zero() {
        return Err(Error::DivisionByZero(what));
    }
    a.div_ref(b)
}

/// Laurent polynomial `x^2 q(1/x)` stored as coefficients of `x^-2 .. x^2`.
fn reversed_laurent(q: &CycPoly) -> Vec<(i32, CycElt)> {
    (0..=4).map(|k| (2 - k as i32, q.coeff(k))).collect()
}

fn powi(x: &CycElt, k: i32) -> Result<CycElt> {
    x.pow(k as i64)
}

/// Exact divided difference `(h(x) - h(y)) / (x - y)`, valid also at `x = y`.
fn divided_difference(h: &[(i32, CycElt)], x: &CycElt, y: &CycElt) -> Result<CycElt> {
    let n = lcm_u64(x.conductor(), y.conductor());
    let mut acc = CycElt::zero(n);
    for (k, c) in h {
        if c.is_zero() || *k == 0 {
            continue;
        }
        let m = k.unsigned_abs() as i32;
        let mut s = CycElt::zero(n);
        for i in 0..m {
            s = &s + &(&powi(x, i)? * &powi(y, m - 1 - i)?);
        }
        if *k < 0 {
            s = -(&s * &(&powi(x, -m)? * &powi(y, -m)?));
        }
        acc = &acc + &(c * &s);
    }
    Ok(acc)
}

/// The scalars of the Goursat normal form, in the gauge `C = 1, B = BC`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoursatParams {
    pub a: CycElt,
    pub d: CycElt,
    pub bc: CycElt,
    pub ad_minus_bc: CycElt,
    /// `(A + D - 1) / (AD - BC)`, absent when `AD = BC`.
    pub e: Option<CycElt>,
    pub b: CycElt,
    pub c: CycElt,
}

/// Symmetric functions of `A, D` together with `AD - BC` and `BC`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricParams {
    pub a_plus_d: CycElt,
    pub a_times_d: CycElt,
    pub ad_minus_bc: CycElt,
    pub bc: CycElt,
}

fn require_normalized(s: &GIISpectra) -> Result<()> {
    if !s.is_normalized() {
        return Err(Error::InvalidSpectra("spectra must be normalized (beta1 = 0)".into()));
    }
    Ok(())
}

/// `A`, `D` and `AD - BC` recovered from `q_inf` by evaluation and divided
/// differences; requires normalized spectra.
pub fn goursat_params(s: &GIISpectra) -> Result<GoursatParams> {
    require_normalized(s)?;
    let n = s.conductor();
    let r = s.roots(n);
    let (a1, a2, b) = (&r.a1, &r.a2, &r.b2);
    let one = int(n, 1);
    let q = CycPoly::from_roots(&r.c);
    let h = reversed_laurent(&q);
    let h_at = |x: &CycElt| -> Result<CycElt> {
        let mut acc = CycElt::zero(n);
        for (k, c) in &h {
            acc = &acc + &(c * &powi(x, *k)?);
        }
        Ok(acc)
    };
    let b2 = b * b;
    let bm1 = b - &one;
    let a1m1 = a1 - &one;
    let a2m1 = a2 - &one;

    let fa = div(&(&(&bm1 * &a1m1) * &(a2 - a1)), &(&(&b2 * &(a1 * a1)) * a2), "A prefactor")?;
    let a = div(&divided_difference(&h, a1, b)?, &fa, "A prefactor")?;

    let fd = div(&(&(&bm1 * &a2m1) * &(a1 - a2)), &(&(&b2 * a1) * &(a2 * a2)), "D prefactor")?;
    let d = div(&divided_difference(&h, a2, b)?, &fd, "D prefactor")?;

    let fdet = div(&(&(&(&bm1 * &bm1) * &a1m1) * &a2m1), &(&(&b2 * a1) * a2), "AD-BC prefactor")?;
    let ad_minus_bc = div(&h_at(b)?, &fdet, "AD-BC prefactor")?;
    let bc = &(&a * &d) - &ad_minus_bc;
    let e = if ad_minus_bc.is_zero() { None } else { Some(div(&(&(&a + &d) - &one), &ad_minus_bc, "E")?) };
    Ok(GoursatParams { a, d, b: bc.clone(), c: one, bc, ad_minus_bc, e })
}

/// `AD - BC`, `BC` and `AD - BC - A - D + 1` from the product formulas in
/// the eigenvalues; requires normalized spectra.
pub fn detfactor_params(s: &GIISpectra) -> Result<SymmetricParams> {
    require_normalized(s)?;
    let n = s.conductor();
    let r = s.roots(n);
    let (a1, a2, b, c) = (&r.a1, &r.a2, &r.b2, &r.c);
    let one = int(n, 1);
    let omb = &one - b;
    let common = &(&(&omb * &omb) * &(&one - a1)) * &(&one - a2);

    let mut p1 = a1 * a2;
    for ci in c {
        p1 = &p1 * &(&one - &(b * ci));
    }
    let ad_minus_bc = div(&p1, &common, "AD-BC product")?;

    let a1b = a1 * b;
    let mut p2 = &(b * a2) * &(a2 * a2);
    for i in 0..4 {
        for j in i + 1..4 {
            p2 = &p2 * &(&one - &(&a1b * &(&c[i] * &c[j])));
        }
    }
    let a12 = a1 - a2;
    let bc = div(&p2, &(&(&a12 * &a12) * &common), "BC product")?;

    let mut p3 = one.clone();
    let mut prod_c = one.clone();
    for ci in c {
        p3 = &p3 * &(&one - ci);
        prod_c = &prod_c * ci;
    }
    let third = div(&p3, &(&prod_c * &common), "AD-BC-A-D+1 product")?;
    let a_plus_d = &(&ad_minus_bc + &one) - &third;
    let a_times_d = &ad_minus_bc + &bc;
    Ok(SymmetricParams { a_plus_d, a_times_d, ad_minus_bc, bc })
}

impl GoursatParams {
    pub fn symmetric(&self) -> SymmetricParams {
        SymmetricParams {
            a_plus_d: &self.a + &self.d,
            a_times_d: &self.a * &self.d,
            ad_minus_bc: self.ad_minus_bc.clone(),
            bc: self.bc.clone(),
        }
    }

    /// `AD - BC - A - D + 1`.
    pub fn third_factor(&self) -> CycElt {
        let n = self.a.conductor();
        &(&(&self.ad_minus_bc - &self.a) - &self.d) + &CycElt::one(n)
    }

    /// Product whose vanishing is equivalent to reducibility.
    pub fn irreducibility_product(&self) -> CycElt {
        &(&self.bc * &self.ad_minus_bc) * &self.third_factor()
    }

    /// Same parameters in the gauge `(B, C)` with `B C = BC`.
    pub fn with_gauge(&self, b: CycElt, c: CycElt) -> Result<Self> {
        if &b * &c != self.bc {
            return Err(Error::Other("gauge must satisfy B*C = BC".into()));
        }
        Ok(GoursatParams { b, c, ..self.clone() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Goursat,
    Integral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyTriple {
    pub t0: CycMatrix,
    pub t1: CycMatrix,
    pub tinf: CycMatrix,
    pub flavor: Flavor,
}

impl MonodromyTriple {
    /// Puts the three matrices over the smallest common cyclotomic field.
    pub fn new(t0: CycMatrix, t1: CycMatrix, tinf: CycMatrix, flavor: Flavor) -> Self {
        let n = lcm_u64(lcm_u64(t0.conductor(), t1.conductor()), tinf.conductor());
        let (t0, t1, tinf) = (t0.lift(n), t1.lift(n), tinf.lift(n));
        let m = lcm_u64(lcm_u64(t0.min_conductor(), t1.min_conductor()), tinf.min_conductor());
        let down = |x: &CycMatrix| x.reduce_conductor().lift(m);
        MonodromyTriple { t0: down(&t0), t1: down(&t1), tinf: down(&tinf), flavor }
    }

    pub fn generators(&self) -> [&CycMatrix; 3] {
        [&self.t0, &self.t1, &self.tinf]
    }

    pub fn conductor(&self) -> u64 {
        self.t0.conductor().max(1)
    }

    pub fn product_is_identity(&self) -> Result<bool> {
        Ok(self.t0.mul(&self.t1)?.mul(&self.tinf)?.is_identity())
    }

    /// Product identity plus the prescribed characteristic polynomials.
    pub fn check(&self, q0: &CycPoly, q1: &CycPoly, qinf: &CycPoly) -> Result<bool> {
        Ok(self.product_is_identity()?
            && &self.t0.charpoly()? == q0
            && &self.t1.charpoly()? == q1
            && &self.tinf.charpoly()? == qinf)
    }

    pub fn galois(&self, t: i64) -> Result<Self> {
        Ok(MonodromyTriple {
            t0: self.t0.galois(t)?,
            t1: self.t1.galois(t)?,
            tinf: self.tinf.galois(t)?,
            flavor: self.flavor,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gauge {
    /// `C = 1`, `B = BC`.
    Default,
    Custom {
        b: CycElt,
        c: CycElt,
    },
}

/// Goursat's normal form; `T_inf = (T0 T1)^-1`. Requires normalized spectra.
pub fn goursat_triple(s: &GIISpectra, gauge: &Gauge) -> Result<MonodromyTriple> {
    let p = goursat_params(s)?;
    let p = match gauge {
        Gauge::Default => {
            if p.bc.is_zero() {
                return Err(Error::Reducible("BC = 0; the default gauge needs BC != 0".into()));
            }
            p
        }
        Gauge::Custom { b, c } => p.with_gauge(b.clone(), c.clone())?,
    };
    goursat_triple_from_params(s, &p)
}

pub fn goursat_triple_from_params(s: &GIISpectra, p: &GoursatParams) -> Result<MonodromyTriple> {
    let n = s.conductor();
    let r = s.roots(n);
    let one = int(n, 1);
    let z = int(n, 0);
    let (a1, a2, b) = (&r.a1, &r.a2, &r.b2);
    let oa1 = &one - a1;
    let oa2 = &one - a2;
    let ob = &one - b;
    let t0 = CycMatrix::from_rows(vec![
        vec![one.clone(), z.clone(), &p.a * &oa1, &p.b * &oa2],
        vec![z.clone(), one.clone(), &p.c * &oa1, &p.d * &oa2],
        vec![z.clone(), z.clone(), a1.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), a2.clone()],
    ])?;
    let t1 = CycMatrix::from_rows(vec![
        vec![b.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), b.clone(), z.clone(), z.clone()],
        vec![ob.clone(), z.clone(), one.clone(), z.clone()],
        vec![z.clone(), ob, z.clone(), one.clone()],
    ])?;
    // both factors are block triangular with root-of-unity diagonals
    let ia1 = a1.inv()?;
    let ia2 = a2.inv()?;
    let ib = b.inv()?;
    let t0_inv = CycMatrix::from_rows(vec![
        vec![one.clone(), z.clone(), -&(&(&p.a * &oa1) * &ia1), -&(&(&p.b * &oa2) * &ia2)],
        vec![z.clone(), one.clone(), -&(&(&p.c * &oa1) * &ia1), -&(&(&p.d * &oa2) * &ia2)],
        vec![z.clone(), z.clone(), ia1, z.clone()],
        vec![z.clone(), z.clone(), z.clone(), ia2],
    ])?;
    let m = -&(&(&one - b) * &ib);
    let t1_inv = CycMatrix::from_rows(vec![
        vec![ib.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), ib, z.clone(), z.clone()],
        vec![m.clone(), z.clone(), one.clone(), z.clone()],
        vec![z.clone(), m, z.clone(), one.clone()],
    ])?;
    let tinf = t1_inv.mul(&t0_inv)?;
    Ok(MonodromyTriple::new(t0, t1, tinf, Flavor::Goursat))
}

/// Triple with `T_inf` the companion matrix of `q_inf`, defined over
/// `R[a1]`; `a1` is the root with the smaller exponent.
pub fn integral_triple(s: &GIISpectra) -> Result<MonodromyTriple> {
    let s = s.sorted();
    let n = s.conductor();
    let r = s.roots(n);
    let z = int(n, 0);
    let one = int(n, 1);
    let (a1, a2) = (&r.a1, &r.a2);
    let sig1 = &r.b1 + &r.b2;
    let sig2 = &r.b1 * &r.b2;
    let q = CycPoly::from_roots(&r.c);
    // q = x^4 - tau1 x^3 + tau2 x^2 - tau3 x + tau4
    let tau1 = -q.coeff(3);
    let tau2 = q.coeff(2);
    let tau3 = -q.coeff(1);
    let tau4 = q.coeff(0);
    let s2i = sig2.inv()?;
    let a1i = a1.inv()?;
    let tinf = CycMatrix::from_rows(vec![
        vec![z.clone(), z.clone(), z.clone(), -&tau4],
        vec![one.clone(), z.clone(), z.clone(), tau3.clone()],
        vec![z.clone(), one.clone(), z.clone(), -&tau2],
        vec![z.clone(), z.clone(), one.clone(), tau1.clone()],
    ])?;
    let t1 = CycMatrix::from_rows(vec![
        vec![sig1.clone(), z.clone(), z.clone(), &s2i * &a1i],
        vec![-(&sig2 * &(a1 + &one)), sig1.clone(), one.clone(), -(&(&sig1 * &s2i) * &a1i)],
        vec![&(&sig1 * &sig2) * a1, -&sig2, z.clone(), &one + &a1i],
        vec![-(&(&sig2 * &sig2) * a1), z.clone(), z.clone(), z.clone()],
    ])?;
    let t0 = CycMatrix::from_rows(vec![
        vec![a1 + &one, z.clone(), -&s2i, a2 * &(&(&sig1 * &tau4) - &tau3)],
        vec![-(&sig1 * a1), one.clone(), &sig1 * &s2i, &(a2 * &(&tau2 - &(&sig2 * &tau4))) - &s2i],
        vec![&sig2 * a1, z.clone(), z.clone(), &(-(a2 * &tau1)) + &(&sig1 * &s2i)],
        vec![z.clone(), z.clone(), z.clone(), a2.clone()],
    ])?;
    Ok(MonodromyTriple::new(t0, t1, tinf, Flavor::Integral))
}

/// `a1 a2 sigma2^2 tau4`, equal to 1 for valid spectra.
pub fn determinant_relation(s: &GIISpectra) -> CycElt {
    let n = s.conductor();
    let r = s.roots(n);
    let sig2 = &r.b1 * &r.b2;
    let tau4 = r.c.iter().fold(int(n, 1), |acc, c| &acc * c);
    &(&(&r.a1 * &r.a2) * &(&sig2 * &sig2)) * &tau4
}

/// Polynomial whose roots are the pairwise products of the roots of `q`.
pub fn w2_poly(q: &CycPoly) -> Result<CycPoly> {
    q.pair_products()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReducibilityWitness {
    None,
    /// `c_i = 1`.
    QinfAtOne {
        index: usize,
    },
    /// `b c_i = 1`.
    QinfAtBInverse {
        index: usize,
    },
    /// `a1 b c_i c_j = 1`, hence `a2 b c_k c_l = 1` for the other pair.
    PairProduct {
        pair: (usize, usize),
        complement: (usize, usize),
    },
}

impl ReducibilityWitness {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, ReducibilityWitness::None)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ReducibilityWitness::None => "none",
            ReducibilityWitness::QinfAtOne { .. } => "q_inf(1)=0",
            ReducibilityWitness::QinfAtBInverse { .. } => "q_inf(1/b)=0",
            ReducibilityWitness::PairProduct { .. } => "w2(q_inf)(1/(a1 b))=0",
        }
    }
}

/// Irreducibility decided exactly on the exponents of the normalized form.
pub fn is_irreducible(s: &GIISpectra) -> ReducibilityWitness {
    let (s, _) = s.normalize_twist();
    let b = s.b();
    for (i, g) in s.gamma.iter().enumerate() {
        if g.is_zero() {
            return ReducibilityWitness::QinfAtOne { index: i };
        }
    }
    for (i, g) in s.gamma.iter().enumerate() {
        if g.add(b).is_zero() {
            return ReducibilityWitness::QinfAtBInverse { index: i };
        }
    }
    let base = s.alpha.0.add(b);
    for i in 0..4 {
        for j in i + 1..4 {
            if base.add(&s.gamma[i]).add(&s.gamma[j]).is_zero() {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                return ReducibilityWitness::PairProduct { pair: (i, j), complement: (rest[0], rest[1]) };
            }
        }
    }
    ReducibilityWitness::None
}

/// `q_inf(1) q_inf(1/b) w2(q_inf)(1/(a1 b))` for the normalized form.
pub fn irreducibility_product(s: &GIISpectra) -> Result<CycElt> {
    let (s, _) = s.normalize_twist();
    let n = s.conductor();
    let r = s.roots(n);
    let q = CycPoly::from_roots(&r.c);
    let bi = r.b2.inv()?;
    let w = w2_poly(&q)?;
    let x = (&r.a1 * &r.b2).inv()?;
    Ok(&(&q.eval(&int(n, 1)) * &q.eval(&bi)) * &w.eval(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> Exponent {
        Exponent::parse(s).unwrap()
    }

    fn spectra(a: [&str; 2], b: [&str; 2], g: [&str; 4]) -> GIISpectra {
        GIISpectra::parse(&a, &b, &g).unwrap()
    }

    #[test]
    fn validation() {
        assert!(GIISpectra::parse(&["1/3", "2/3"], &["0", "1/2"], &["1/4", "1/3", "2/3", "3/4"]).is_ok());
        assert!(GIISpectra::parse(&["1/3", "2/3"], &["0", "1/2"], &["1/4", "1/3", "2/3", "1/2"]).is_err());
        assert!(GIISpectra::parse(&["1/2", "1/2"], &["0", "1/3"], &["1/4", "1/3", "2/3", "1/12"]).is_err());
    }

    #[test]
    fn twist_round_trip() {
        let s = spectra(["1/3", "2/3"], ["1/3", "2/3"], ["1/5", "2/5", "3/5", "4/5"]);
        let (n, tw) = s.normalize_twist();
        assert!(n.is_normalized());
        assert_eq!(n.b(), &ex("1/3"));
        assert_eq!(n.gamma[0], ex("8/15"));
        assert_eq!(n.undo_twist(&tw), s);
        assert!(GIISpectra::new(n.alpha.clone(), n.beta.clone(), n.gamma.clone()).is_ok());
    }

    #[test]
    fn goursat_triple_contract() {
        let s = spectra(["1/3", "2/3"], ["0", "1/2"], ["1/5", "2/5", "3/5", "4/5"]);
        let t = goursat_triple(&s, &Gauge::Default).unwrap();
        assert!(t.check(&s.q0(), &s.q1(), &s.qinf()).unwrap());
        let p = goursat_params(&s).unwrap();
        assert!(p.a.is_real() && p.d.is_real() && p.bc.is_real());
    }

    #[test]
    fn divided_difference_at_coincidence() {
        // a1 = b: alpha1 = beta2 = 1/3
        let s = spectra(["1/3", "2/3"], ["0", "1/3"], ["1/7", "2/7", "4/7", "1/3"]);
        let p = goursat_params(&s).unwrap();
        assert_eq!(p.symmetric(), detfactor_params(&s).unwrap());
        let t = goursat_triple(&s, &Gauge::Default).unwrap();
        assert!(t.check(&s.q0(), &s.q1(), &s.qinf()).unwrap());
    }

    #[test]
    fn zeta12_integral_fixture() {
        let s = spectra(["1/4", "3/4"], ["0", "1/2"], ["1/36", "13/36", "25/36", "11/12"]);
        let t = integral_triple(&s).unwrap();
        let z = |k| CycElt::zeta_pow(12, k).unwrap();
        let i = |k| CycElt::from_int(12, k);
        let expect_tinf = CycMatrix::from_rows(vec![
            vec![i(0), i(0), i(0), i(-1)],
            vec![i(1), i(0), i(0), z(1)],
            vec![i(0), i(1), i(0), i(0)],
            vec![i(0), i(0), i(1), &z(1) - &z(3)],
        ])
        .unwrap();
        let expect_t1 = CycMatrix::from_rows(vec![
            vec![i(0), i(0), i(0), z(3)],
            vec![&z(3) + &i(1), i(0), i(1), i(0)],
            vec![i(0), i(1), i(0), &i(1) - &z(3)],
            vec![-z(3), i(0), i(0), i(0)],
        ])
        .unwrap();
        assert_eq!(t.conductor(), 12);
        assert_eq!(t.t1, expect_t1);
        assert_eq!(t.tinf, expect_tinf);
        assert!(t.product_is_identity().unwrap());
        assert_eq!(t.t0.get(0, 0), &(&z(3) + &i(1)));
        assert_eq!(t.t0.get(0, 3), &(&z(2) - &i(1)));
    }

    #[test]
    fn w2_examples() {
        let p5 = CycPoly::from_ints(&[1, 1, 1, 1, 1]);
        let expect = CycPoly::from_ints(&[1, -1]).mul_ref(&CycPoly::from_ints(&[1, -1])).mul_ref(&p5);
        assert_eq!(w2_poly(&p5).unwrap(), expect);
        let x1 = CycPoly::from_ints(&[-1, 1]);
        let q = x1.mul_ref(&x1).mul_ref(&x1).mul_ref(&x1);
        let w = w2_poly(&q).unwrap();
        assert_eq!(w, q.mul_ref(&x1).mul_ref(&x1));
    }

    #[test]
    fn irreducibility_witnesses() {
        let cases = [
            (["0", "1/5", "3/10", "1/2"], "q_inf(1)=0"),
            (["1/2", "1/7", "2/7", "1/14"], "q_inf(1/b)=0"),
            (["1/5", "2/5", "3/5", "4/5"], "none"),
        ];
        for (g, kind) in cases {
            let s = spectra(["1/3", "2/3"], ["0", "1/2"], g);
            let w = is_irreducible(&s);
            assert_eq!(w.kind(), kind);
            assert_eq!(irreducibility_product(&s).unwrap().is_zero(), !w.is_irreducible());
            assert_eq!(goursat_params(&s).unwrap().irreducibility_product().is_zero(), !w.is_irreducible());
        }
        // a1 b c1 c2 = 1 with alpha1 = 1/3, b = 1/2 means gamma1 + gamma2 = 1/6
        let s = spectra(["1/3", "2/3"], ["0", "1/2"], ["1/24", "1/8", "1/5", "19/30"]);
        let w = is_irreducible(&s);
        assert_eq!(w, ReducibilityWitness::PairProduct { pair: (0, 1), complement: (2, 3) });
        assert!(irreducibility_product(&s).unwrap().is_zero());
    }
}

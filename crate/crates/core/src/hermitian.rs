//! The invariant Hermitian form of a G-II system, its signature, and the
//! definiteness criteria in parameters and in exponents.

use crate::construct::{is_irreducible, GIISpectra, GoursatParams};
use crate::error::{Error, Result};
use crate::exactnum::{gcd_i64, CycElt, CycMatrix, Exponent, Rat, Sign};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl Verdict {
    pub fn is_definite(self) -> bool {
        matches!(self, Verdict::Positive | Verdict::Negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianForm {
    pub h: CycMatrix,
    pub params: GoursatParams,
}

/// `(positive, negative, zero)` counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn verdict(&self) -> Verdict {
        let n = self.positive + self.negative + self.zero;
        if self.zero > 0 {
            Verdict::Degenerate
        } else if self.positive == n {
            Verdict::Positive
        } else if self.negative == n {
            Verdict::Negative
        } else {
            Verdict::Indefinite
        }
    }

    /// Signature up to an overall sign, larger count first.
    pub fn unsigned(&self) -> (usize, usize) {
        (self.positive.max(self.negative), self.positive.min(self.negative))
    }
}

/// Goursat's invariant form, scaled by `AD - BC` so that it is defined on
/// the whole parameter space.
pub fn hermitian_matrix(p: &GoursatParams) -> HermitianForm {
    let n = p.a.conductor();
    let one = CycElt::one(n);
    let (a, d, b, c) = (&p.a, &p.d, &p.b, &p.c);
    let dl = &p.ad_minus_bc;
    let bc = &p.bc;
    let s = &(&(a + d) - &one);
    let h00 = c * &(dl - &(d * s));
    let h01 = bc * s;
    let h02 = dl * &(c * &(&one - d));
    let h03 = dl * bc;
    let h11 = b * &(dl - &(a * s));
    let h13 = dl * &(b * &(&one - a));
    let rows = vec![
        vec![h00, h01.clone(), h02.clone(), h03.clone()],
        vec![h01, h11, h03.clone(), h13.clone()],
        vec![h02.clone(), h03.clone(), h02, h03.clone()],
        vec![h03.clone(), h13.clone(), h03, h13],
    ];
    HermitianForm { h: CycMatrix::from_rows(rows).expect("4x4").unify(), params: p.clone() }
}

impl HermitianForm {
    /// `(BC)^2 (AD-BC-A-D+1)^3 (AD-BC)^3`.
    pub fn predicted_det(&self) -> CycElt {
        let p = &self.params;
        let x = p.third_factor();
        let dl = &p.ad_minus_bc;
        let x3 = &(&x * &x) * &x;
        let d3 = &(dl * dl) * dl;
        &(&(&p.bc * &p.bc) * &x3) * &d3
    }

    pub fn is_hermitian(&self) -> bool {
        self.h == self.h.conj_transpose()
    }

    /// `T* H T = H` for every matrix.
    pub fn is_invariant(&self, gens: &[&CycMatrix]) -> Result<bool> {
        for t in gens {
            if t.conj_transpose().mul(&self.h)?.mul(t)? != self.h {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Diagonal blocks of a congruence diagonalization, computed exactly.
    pub fn congruence_pivots(&self) -> Result<Vec<Pivot>> {
        congruence_pivots(&self.h)
    }

    /// Signature under the embedding `zeta -> exp(2 pi i t / N)`.
    pub fn signature(&self, t: i64) -> Result<Signature> {
        signature_of_pivots(&self.congruence_pivots()?, t)
    }
}

/// A block of the congruence-diagonal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pivot {
    Zero,
    /// A nonzero real diagonal entry.
    Scalar(CycElt),
    /// A block `[[0, h], [h, 0]]`, contributing one positive and one negative square.
    Hyperbolic,
}

/// Symmetric elimination `H -> L H L^T` over the real subfield.
pub fn congruence_pivots(h: &CycMatrix) -> Result<Vec<Pivot>> {
    if !h.is_square() {
        return Err(Error::Dimension("form must be square".into()));
    }
    let mut m: Vec<Vec<CycElt>> = h.unify().to_rows();
    let mut out = Vec::new();
    while !m.is_empty() {
        let k = m.len();
        if let Some(i) = (0..k).find(|&i| !m[i][i].is_zero()) {
            let p = m[i][i].clone();
            let pinv = p.inv()?;
            let rest: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            let next: Vec<Vec<CycElt>> = rest
                .iter()
                .map(|&r| rest.iter().map(|&c| &m[r][c] - &(&(&m[r][i] * &pinv) * &m[i][c])).collect())
                .collect();
            out.push(Pivot::Scalar(p));
            m = next;
            continue;
        }
        let off = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| i != j && !m[i][j].is_zero());
        let Some((i, j)) = off else {
            out.extend(std::iter::repeat_n(Pivot::Zero, k));
            break;
        };
        // diagonal of the block is zero; eliminate both rows with its inverse
        let hij = m[i][j].clone();
        let hinv = hij.inv()?;
        let rest: Vec<usize> = (0..k).filter(|&r| r != i && r != j).collect();
        let next: Vec<Vec<CycElt>> = rest
            .iter()
            .map(|&r| {
                rest.iter()
                    .map(|&c| {
                        // subtract [m_ri m_rj] [[0,1/h],[1/h,0]] [m_ic m_jc]^T
                        let t = &(&(&m[r][i] * &m[j][c]) + &(&m[r][j] * &m[i][c])) * &hinv;
                        &m[r][c] - &t
                    })
                    .collect()
            })
            .collect();
        out.push(Pivot::Hyperbolic);
        m = next;
    }
    Ok(out)
}

pub fn signature_of_pivots(piv: &[Pivot], t: i64) -> Result<Signature> {
    let mut s = Signature { positive: 0, negative: 0, zero: 0 };
    for p in piv {
        match p {
            Pivot::Zero => s.zero += 1,
            Pivot::Hyperbolic => {
                s.positive += 1;
                s.negative += 1;
            }
            Pivot::Scalar(x) => match x.real_sign(t)? {
                Sign::Positive => s.positive += 1,
                Sign::Negative => s.negative += 1,
                Sign::Zero => s.zero += 1,
            },
        }
    }
    Ok(s)
}

/// Positive definiteness from `0 < A, D < 1`, `0 < BC < AD`,
/// `0 < BC < (1 - A)(1 - D)`, with signs taken under the embedding `t`.
pub fn param_definite(p: &GoursatParams, t: i64) -> Result<Verdict> {
    let n = p.a.conductor();
    let one = CycElt::one(n);
    let ad = &p.a * &p.d;
    let oo = &(&one - &p.a) * &(&one - &p.d);
    let gap1 = &ad - &p.bc;
    let gap2 = &oo - &p.bc;
    if p.bc.is_zero() || gap1.is_zero() || gap2.is_zero() {
        return Ok(Verdict::Degenerate);
    }
    let pos = |x: &CycElt| -> Result<bool> { Ok(x.real_sign(t)? == Sign::Positive) };
    let ok = pos(&p.a)?
        && pos(&(&one - &p.a))?
        && pos(&p.d)?
        && pos(&(&one - &p.d))?
        && pos(&p.bc)?
        && pos(&gap1)?
        && pos(&gap2)?;
    Ok(if ok { Verdict::Positive } else { Verdict::Indefinite })
}

/// Open arc running counterclockwise from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: Exponent,
    pub to: Exponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Inside,
    Outside,
    Endpoint,
}

impl Arc {
    fn place(&self, x: &Exponent) -> Place {
        if x == &self.from || x == &self.to {
            return Place::Endpoint;
        }
        let len = self.to.sub(&self.from);
        let off = x.sub(&self.from);
        if off.value() < len.value() {
            Place::Inside
        } else {
            Place::Outside
        }
    }

    pub fn contains(&self, x: &Exponent) -> bool {
        self.place(x) == Place::Inside
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCertificate {
    pub first: Arc,
    pub second: Arc,
    /// Indices into the normalized `gamma` realizing `c1, c2, c3, c4`.
    pub labeling: Option<[usize; 4]>,
}

/// Definiteness read off the position of the exponents on the circle;
/// the spectra are normalized first.
pub fn arcs_definite(s: &GIISpectra) -> Result<(bool, ArcCertificate)> {
    let w = is_irreducible(s);
    if !w.is_irreducible() {
        return Err(Error::Reducible(w.kind().to_string()));
    }
    let (s, _) = s.normalize_twist();
    let mb = s.b().neg();
    let first = Arc { from: Exponent::zero(), to: mb.clone() };
    let e1 = mb.sub(&s.alpha.0);
    let e2 = mb.sub(&s.alpha.1);
    let cand = Arc { from: e1.clone(), to: e2.clone() };
    let second = if cand.contains(&mb) { cand } else { Arc { from: e2, to: e1 } };
    let g = &s.gamma;
    let inside: Vec<usize> = (0..4).filter(|&i| first.contains(&g[i])).collect();
    let mut cert = ArcCertificate { first: first.clone(), second: second.clone(), labeling: None };
    if inside.len() != 2 {
        return Ok((false, cert));
    }
    let outside: Vec<usize> = (0..4).filter(|i| !inside.contains(i)).collect();
    let sum = |i: usize, j: usize| g[i].add(&g[j]);
    for (c1, c2) in [(inside[0], inside[1]), (inside[1], inside[0])] {
        for (c3, c4) in [(outside[0], outside[1]), (outside[1], outside[0])] {
            let ok = second.contains(&sum(c1, c2))
                && second.contains(&sum(c3, c4))
                && second.contains(&sum(c1, c3))
                && second.contains(&sum(c2, c4))
                && !second.contains(&sum(c1, c4))
                && !second.contains(&sum(c2, c3));
            if ok {
                cert.labeling = Some([c1, c2, c3, c4]);
                return Ok((true, cert));
            }
        }
    }
    Ok((false, cert))
}

/// `(n1, n2)` for `T1 ~ (1, 1, -1, -1)` and `T0 ~ (1, 1, a, 1/a)`: the number of
/// `gamma_i` in `(0, 1/2)` and of pair sums in `(1/2 - alpha1, 1/2 + alpha1)`.
pub fn special_counts(alpha1: &Exponent, gamma: &[Exponent; 4]) -> Result<(usize, usize)> {
    let half = Exponent::from_frac(1, 2);
    if alpha1.is_zero() || alpha1 == &half {
        return Err(Error::InvalidSpectra("alpha1 must differ from 0 and 1/2".into()));
    }
    let total = gamma.iter().fold(Rat::from_integer(0.into()), |acc, g| acc + g.value());
    if !total.is_integer() {
        return Err(Error::InvalidSpectra("gamma must sum to an integer".into()));
    }
    let a = if alpha1.value() < half.value() { alpha1.clone() } else { alpha1.neg() };
    let first = Arc { from: Exponent::zero(), to: half.clone() };
    let second = Arc { from: half.sub(&a), to: half.add(&a) };
    let n1 = gamma.iter().filter(|g| first.contains(g)).count();
    let mut n2 = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if second.contains(&gamma[i].add(&gamma[j])) {
                n2 += 1;
            }
        }
    }
    Ok((n1, n2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub t: i64,
    pub definite: bool,
    pub labeling: Option<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteReport {
    pub finite: bool,
    pub twists: Vec<TwistReport>,
}

/// Units modulo `n` in increasing order.
pub fn units(n: u64) -> Vec<i64> {
    (1..=n.max(1) as i64).filter(|&t| gcd_i64(t, n as i64) == 1).collect()
}

/// Definiteness in every embedding, i.e. for every Galois twist of the
/// exponents.
pub fn finite_monodromy(s: &GIISpectra) -> Result<FiniteReport> {
    let twists = units(s.conductor()).into_iter().map(|t| twist_report(s, t)).collect::<Result<Vec<_>>>()?;
    Ok(FiniteReport { finite: twists.iter().all(|r| r.definite), twists })
}

/// Same as [`finite_monodromy`] with the twists spread over the rayon pool.
pub fn finite_monodromy_par(s: &GIISpectra) -> Result<FiniteReport> {
    let twists = units(s.conductor()).into_par_iter().map(|t| twist_report(s, t)).collect::<Result<Vec<_>>>()?;
    Ok(FiniteReport { finite: twists.iter().all(|r| r.definite), twists })
}

fn twist_report(s: &GIISpectra, t: i64) -> Result<TwistReport> {
    let (definite, cert) = arcs_definite(&s.galois(t))?;
    Ok(TwistReport { t, definite, labeling: cert.labeling })
}

/// Fast check used by the search: stops at the first non-definite twist.
pub fn is_finite(s: &GIISpectra) -> Result<bool> {
    for t in units(s.conductor()) {
        if !arcs_definite(&s.galois(t))?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

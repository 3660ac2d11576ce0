//! Exhaustive search for finite-monodromy G-II systems and enumeration of
//! the systems with field of moduli `Q`.

use crate::construct::{goursat_params, is_irreducible, GIISpectra};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rat, Exponent, Rat};
use crate::hermitian::{hermitian_matrix, is_finite, units};
use crate::obstruction::{moduli_is_rational, quaternion_class};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Denominator bounds for the finite search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest denominator of `alpha` and of the nontrivial `T1` exponent.
    pub max_abd: u64,
    /// Largest denominator of a `gamma` exponent.
    pub max_gd: u64,
    /// Keep only hits whose conductor is listed.
    pub conductors: Option<BTreeSet<u64>>,
}

impl SearchBounds {
    pub fn new(max_abd: u64, max_gd: u64) -> Result<Self> {
        if max_abd < 2 || max_gd < 2 {
            return Err(Error::Other("search bounds must be at least 2".into()));
        }
        let b = SearchBounds { max_abd, max_gd, conductors: None };
        b.modulus()?;
        Ok(b)
    }

    pub fn with_conductors(mut self, c: impl IntoIterator<Item = u64>) -> Self {
        self.conductors = Some(c.into_iter().collect());
        self
    }

    /// `lcm(1..=max)`, which must leave headroom in `i128`.
    fn modulus(&self) -> Result<i128> {
        let mut l: i128 = 1;
        for k in 1..=self.max_abd.max(self.max_gd) as i128 {
            l = (l / l.gcd(&k))
                .checked_mul(k)
                .filter(|&v| v <= i128::MAX / 8)
                .ok_or_else(|| Error::Other("search bounds too large for the integer search".into()))?;
        }
        Ok(l)
    }

    /// Whether some member of the orbit of `s` lies inside the box.
    pub fn contains(&self, s: &GIISpectra) -> bool {
        let (s, _) = s.normalize_twist();
        let ab =
            s.alpha.0.denom() <= self.max_abd && s.alpha.1.denom() <= self.max_abd && s.b().denom() <= self.max_abd;
        ab && [s.clone(), scalar_partner(&s)].iter().any(|t| t.gamma.iter().all(|g| g.denom() <= self.max_gd))
    }
}

/// Membership in one of the two infinite imprimitive families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPattern {
    /// `1`: `b, alpha = 1/2; 1/2, r`, `gamma = -r/4 + k/4`.
    /// `2`: `b, alpha = 1/2; 1/3, 2/3`, `gamma = r, -r/3 + k/3`.
    pub family: u8,
    #[serde(with = "crate::exactnum::rat_serde")]
    pub r: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub spectra: GIISpectra,
    pub irreducible: bool,
    pub definite: bool,
    /// `(p, q)` with `p >= q` at the identity embedding.
    pub signature: (usize, usize),
    pub finite: bool,
    pub mu: Option<i64>,
    pub family: Option<FamilyPattern>,
}

/// Normalized spectra obtained by scaling `T1` by the other eigenvalue.
fn scalar_partner(s: &GIISpectra) -> GIISpectra {
    let b = s.b().clone();
    GIISpectra { alpha: s.alpha.clone(), beta: (Exponent::zero(), b.neg()), gamma: s.gamma.clone().map(|g| g.add(&b)) }
}

fn orbit_key(s: &GIISpectra) -> (Exponent, Exponent, Exponent, [Exponent; 4]) {
    let s = s.sorted();
    (s.b().clone(), s.alpha.0, s.alpha.1, s.gamma)
}

/// Orbit members in a fixed order: each Galois twist, then its scalar partner.
fn orbit(s: &GIISpectra) -> impl Iterator<Item = GIISpectra> + '_ {
    let (s, _) = s.normalize_twist();
    units(s.conductor()).into_iter().flat_map(move |t| {
        let g = s.galois(t).sorted();
        let p = scalar_partner(&g).sorted();
        [g, p]
    })
}

/// Least normalized representative under Galois twists and the choice of
/// which `T1` eigenvalue is scaled to 1.
pub fn canonical(s: &GIISpectra) -> GIISpectra {
    orbit(s).min_by_key(orbit_key).expect("the identity twist is always present")
}

fn family_of(s: &GIISpectra) -> Option<FamilyPattern> {
    let half = Exponent::from_frac(1, 2);
    if s.b() != &half {
        return None;
    }
    let mut gamma = s.gamma.to_vec();
    gamma.sort();
    let ladder = |start: Exponent, step: i64, count: i64| {
        let mut v: Vec<Exponent> = (0..count).map(|k| start.add(&Exponent::from_frac(k, step))).collect();
        v.sort();
        v
    };
    let a = [&s.alpha.0, &s.alpha.1];
    if let Some(k) = a.iter().position(|x| **x == half) {
        let r = a[1 - k].value().clone();
        let start = Exponent::new(-&r / Rat::from_integer(4.into()));
        if ladder(start, 4, 4) == gamma {
            return Some(FamilyPattern { family: 1, r });
        }
    }
    let thirds = [Exponent::from_frac(1, 3), Exponent::from_frac(2, 3)];
    if (s.alpha.0 == thirds[0] && s.alpha.1 == thirds[1]) || (s.alpha.0 == thirds[1] && s.alpha.1 == thirds[0]) {
        for (i, g) in gamma.iter().enumerate() {
            let r = g.value().clone();
            let mut rest = gamma.clone();
            rest.remove(i);
            if ladder(Exponent::new(-&r / Rat::from_integer(3.into())), 3, 3) == rest {
                return Some(FamilyPattern { family: 2, r });
            }
        }
    }
    None
}

/// Family membership of `s` or of the first matching member of its orbit.
pub fn family_match(s: &GIISpectra) -> Option<FamilyPattern> {
    orbit(s).find_map(|t| family_of(&t))
}

// Integer fast path: exponents as residues modulo a common denominator.

#[inline]
fn md(x: i128, n: i128) -> i128 {
    let r = x % n;
    if r < 0 {
        r + n
    } else {
        r
    }
}

/// `x` strictly inside the counterclockwise arc from `lo` to `hi`.
#[inline]
fn in_arc(x: i128, lo: i128, hi: i128, n: i128) -> bool {
    let a = md(x - lo, n);
    a > 0 && a < md(hi - lo, n)
}

#[derive(Clone, Copy)]
struct Arcs {
    mb: i128,
    lo: i128,
    hi: i128,
}

fn arcs(a1: i128, a2: i128, b: i128, n: i128) -> Arcs {
    let mb = md(-b, n);
    let e1 = md(-b - a1, n);
    let e2 = md(-b - a2, n);
    let (lo, hi) = if in_arc(mb, e1, e2, n) { (e1, e2) } else { (e2, e1) };
    Arcs { mb, lo, hi }
}

fn labeling_ok(c: [i128; 4], ar: Arcs, n: i128) -> bool {
    let inside = |x: i128, y: i128| in_arc(x + y, ar.lo, ar.hi, n);
    let [c1, c2, c3, c4] = c;
    let p13 = inside(c1, c3);
    let p24 = inside(c2, c4);
    let p14 = inside(c1, c4);
    let p23 = inside(c2, c3);
    (p13 && p24 && !p14 && !p23) || (p14 && p23 && !p13 && !p24)
}

/// Arcs criterion on residues modulo `n`.
fn arcs_int(a: [i128; 2], b: i128, g: [i128; 4], n: i128) -> bool {
    let ar = arcs(a[0], a[1], b, n);
    let (mut ins, mut outs) = (Vec::with_capacity(4), Vec::with_capacity(4));
    for &x in &g {
        if in_arc(x, 0, ar.mb, n) {
            ins.push(x);
        } else if in_arc(x, ar.mb, 0, n) {
            outs.push(x);
        }
    }
    if ins.len() != 2 || outs.len() != 2 {
        return false;
    }
    let inside = |x: i128, y: i128| in_arc(x + y, ar.lo, ar.hi, n);
    inside(ins[0], ins[1]) && inside(outs[0], outs[1]) && labeling_ok([ins[0], ins[1], outs[0], outs[1]], ar, n)
}

fn irreducible_int(a1: i128, b: i128, g: [i128; 4], n: i128) -> bool {
    if g.iter().any(|&x| md(x, n) == 0 || md(x + b, n) == 0) {
        return false;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if md(a1 + b + g[i] + g[j], n) == 0 {
                return false;
            }
        }
    }
    true
}

/// Residues of one candidate modulo its own conductor.
#[derive(Clone, Copy, Debug)]
struct Tuple {
    n: i128,
    a: [i128; 2],
    b: i128,
    g: [i128; 4],
}

impl Tuple {
    fn scaled(&self, t: i128) -> Tuple {
        let n = self.n;
        Tuple { n, a: self.a.map(|x| md(x * t, n)), b: md(self.b * t, n), g: self.g.map(|x| md(x * t, n)) }
    }

    fn partner(&self) -> Tuple {
        let n = self.n;
        Tuple { n, a: self.a, b: md(-self.b, n), g: self.g.map(|x| md(x + self.b, n)) }
    }

    fn key(&self) -> [i128; 7] {
        let mut a = self.a;
        a.sort_unstable();
        let mut g = self.g;
        g.sort_unstable();
        [self.b, a[0], a[1], g[0], g[1], g[2], g[3]]
    }

    fn units(&self) -> impl Iterator<Item = i128> + '_ {
        (1..self.n.max(2)).filter(move |t| t.gcd(&self.n) == 1)
    }

    fn finite(&self) -> bool {
        self.units().all(|t| {
            let s = self.scaled(t);
            arcs_int(s.a, s.b, s.g, s.n)
        })
    }

    fn canonical_key(&self) -> [i128; 7] {
        self.units()
            .flat_map(|t| {
                let s = self.scaled(t);
                [s.key(), s.partner().key()]
            })
            .min()
            .expect("1 is a unit")
    }

    fn spectra(key: [i128; 7], n: i128) -> GIISpectra {
        let e = |x: i128| Exponent::new(Rat::new(BigInt::from(x), BigInt::from(n)));
        GIISpectra {
            alpha: (e(key[1]), e(key[2])),
            beta: (Exponent::zero(), e(key[0])),
            gamma: [e(key[3]), e(key[4]), e(key[5]), e(key[6])],
        }
    }
}

fn denominator(x: i128, l: i128) -> i128 {
    l / x.gcd(&l)
}

/// Nonzero fractions `k/d` with `d <= max`, as residues modulo `l`, sorted.
fn grid(max: u64, l: i128, zero: bool) -> Vec<i128> {
    let mut v = BTreeSet::new();
    for d in 1..=max as i128 {
        for k in 0..d {
            if zero || k > 0 {
                v.insert(k * (l / d));
            }
        }
    }
    v.into_iter().collect()
}

/// Identity-definite irreducible finite candidates for one `(alpha, b)`,
/// reduced to canonical keys.
fn scan(a1: i128, a2: i128, b: i128, gammas: &[i128], l: i128) -> Vec<(i128, [i128; 7])> {
    let ar = arcs(a1, a2, b, l);
    let s0 = md(-(a1 + a2 + 2 * b), l);
    let first: Vec<i128> = gammas.iter().copied().filter(|&x| in_arc(x, 0, ar.mb, l)).collect();
    let second: Vec<i128> = gammas.iter().copied().filter(|&x| in_arc(x, ar.mb, 0, l)).collect();
    let mut out = Vec::new();
    for (i, &c1) in first.iter().enumerate() {
        for &c2 in &first[i + 1..] {
            if !in_arc(c1 + c2, ar.lo, ar.hi, l) {
                continue;
            }
            let rest = md(s0 - c1 - c2, l);
            if !in_arc(rest, ar.lo, ar.hi, l) {
                continue;
            }
            for &c3 in &second {
                let c4 = md(rest - c3, l);
                if c4 <= c3 || !in_arc(c4, ar.mb, 0, l) || gammas.binary_search(&c4).is_err() {
                    continue;
                }
                if !labeling_ok([c1, c2, c3, c4], ar, l) {
                    continue;
                }
                let g = [c1, c2, c3, c4];
                if !irreducible_int(a1, b, g, l) {
                    continue;
                }
                let n = [a1, a2, b, c1, c2, c3, c4].iter().fold(1i128, |m, &x| m.lcm(&denominator(x, l)));
                let f = l / n;
                let t = Tuple { n, a: [a1 / f, a2 / f], b: b / f, g: g.map(|x| x / f) };
                if t.finite() {
                    out.push((n, t.canonical_key()));
                }
            }
        }
    }
    out
}

fn identity_signature(s: &GIISpectra) -> Result<(usize, usize)> {
    let p = goursat_params(&s.normalize_twist().0)?;
    Ok(hermitian_matrix(&p).signature(1)?.unsigned())
}

fn describe(s: GIISpectra, finite: Option<bool>) -> Result<SearchHit> {
    let irreducible = is_irreducible(&s).is_irreducible();
    let signature = identity_signature(&s)?;
    let definite = signature == (4, 0);
    let finite = match finite {
        Some(f) => f,
        None => irreducible && is_finite(&s)?,
    };
    let mu = if moduli_is_rational(&s) { quaternion_class(&s).ok().map(|q| q.mu) } else { None };
    let family = family_match(&s);
    Ok(SearchHit { spectra: s, irreducible, definite, signature, finite, mu, family })
}

/// All finite-monodromy orbits inside the bounds, one canonical
/// representative each, in increasing canonical order.
pub fn search_finite(b: &SearchBounds, jobs: usize) -> Result<Vec<SearchHit>> {
    let l = b.modulus()?;
    let ab = grid(b.max_abd, l, false);
    let gammas = grid(b.max_gd, l, true);
    let mut tasks = Vec::new();
    for (i, &a1) in ab.iter().enumerate() {
        for &a2 in &ab[i + 1..] {
            for &bb in &ab {
                tasks.push((a1, a2, bb));
            }
        }
    }
    let run = |t: &(i128, i128, i128)| scan(t.0, t.1, t.2, &gammas, l);
    let found: Vec<Vec<(i128, [i128; 7])>> = if jobs <= 1 {
        tasks.iter().map(run).collect()
    } else {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::Other(e.to_string()))?;
        pool.install(|| tasks.par_iter().map(run).collect())
    };
    let mut orbits: BTreeMap<Vec<Rat>, GIISpectra> = BTreeMap::new();
    for (n, key) in found.into_iter().flatten() {
        let s = Tuple::spectra(key, n);
        if let Some(c) = &b.conductors {
            if !c.contains(&s.conductor()) {
                continue;
            }
        }
        let k = key.iter().map(|&x| Rat::new(BigInt::from(x), BigInt::from(n))).collect();
        orbits.entry(k).or_insert(s);
    }
    orbits.into_values().map(|s| describe(s, Some(true))).collect()
}

/// Galois-stable exponent pairs and quadruples.
fn rational_pairs(with_zero: bool) -> Vec<[Exponent; 2]> {
    let mut out = Vec::new();
    if with_zero {
        out.push([Exponent::zero(), Exponent::from_frac(1, 2)]);
    }
    for d in [3, 4, 6] {
        out.push([Exponent::from_frac(1, d), Exponent::from_frac(d - 1, d)]);
    }
    out
}

fn primitive(d: i64) -> Vec<Exponent> {
    (1..d).filter(|k| k.gcd(&d) == 1).map(|k| Exponent::from_frac(k, d)).collect()
}

fn rational_quadruples() -> Vec<[Exponent; 4]> {
    let mut out = Vec::new();
    let to4 = |v: Vec<Exponent>| -> [Exponent; 4] {
        let mut v = v;
        v.sort();
        v.try_into().expect("four exponents")
    };
    for d in [5, 8, 10, 12] {
        out.push(to4(primitive(d)));
    }
    let two = [3, 4, 6];
    for (i, &d) in two.iter().enumerate() {
        for &e in &two[i + 1..] {
            out.push(to4([primitive(d), primitive(e)].concat()));
        }
        out.push(to4([primitive(d), vec![Exponent::zero(), Exponent::from_frac(1, 2)]].concat()));
    }
    out
}

/// Irreducible G-II systems all of whose local monodromies are defined
/// over `Q`, indefinite ones first, each list in increasing order.
pub fn search_moduli_q() -> Result<Vec<SearchHit>> {
    let mut hits = Vec::new();
    for alpha in rational_pairs(false) {
        for beta in rational_pairs(true) {
            for gamma in rational_quadruples() {
                let s = match GIISpectra::new(
                    (alpha[0].clone(), alpha[1].clone()),
                    (beta[0].clone(), beta[1].clone()),
                    gamma,
                ) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                if !is_irreducible(&s).is_irreducible() {
                    continue;
                }
                hits.push(describe(s, None)?);
            }
        }
    }
    let key = |h: &SearchHit| {
        let s = &h.spectra;
        (h.definite, s.alpha.clone(), s.beta.clone(), s.gamma.clone())
    };
    hits.sort_by_key(key);
    Ok(hits)
}

pub const CSV_HEADER: &str =
    "alpha1,alpha2,beta1,beta2,gamma1,gamma2,gamma3,gamma4,irreducible,signature,finite,mu,family";

/// One CSV line per hit, with a header.
pub fn to_csv(hits: &[SearchHit]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for h in hits {
        let s = &h.spectra;
        let mut cols: Vec<String> =
            [&s.alpha.0, &s.alpha.1, &s.beta.0, &s.beta.1].iter().map(|e| e.to_string()).collect();
        cols.extend(s.gamma.iter().map(|e| e.to_string()));
        cols.push(h.irreducible.to_string());
        cols.push(format!("({};{})", h.signature.0, h.signature.1));
        cols.push(h.finite.to_string());
        cols.push(h.mu.map(|m| m.to_string()).unwrap_or_default());
        cols.push(h.family.as_ref().map(|f| format!("{}:{}", f.family, fmt_rat(&f.r))).unwrap_or_default());
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

/// Exact recheck of the integer arcs criterion, for tests and diagnostics.
pub fn arcs_definite_residues(s: &GIISpectra) -> Option<bool> {
    let (s, _) = s.normalize_twist();
    let n = s.conductor() as i128;
    let r = |e: &Exponent| -> i128 {
        (e.value().numer() * BigInt::from(n) / e.value().denom()).to_i128().expect("residue fits")
    };
    if !is_irreducible(&s).is_irreducible() {
        return None;
    }
    Some(arcs_int([r(&s.alpha.0), r(&s.alpha.1)], r(s.b()), s.gamma.clone().map(|g| r(&g)), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::arcs_definite;

    fn sp(a: [&str; 2], b: [&str; 2], g: [&str; 4]) -> GIISpectra {
        GIISpectra::parse(&a, &b, &g).unwrap()
    }

    #[test]
    fn families() {
        let s = sp(["1/2", "1/3"], ["0", "1/2"], ["11/12", "1/6", "5/12", "2/3"]);
        assert_eq!(family_match(&s), Some(FamilyPattern { family: 1, r: crate::exactnum::rat(1, 3) }));
        let r = crate::exactnum::rat(1, 5);
        let s = sp(["1/3", "2/3"], ["0", "1/2"], ["1/5", "14/15", "4/15", "3/5"]);
        assert_eq!(family_match(&s), Some(FamilyPattern { family: 2, r }));
        let s = sp(["1/3", "2/3"], ["0", "1/2"], ["1/5", "2/5", "3/5", "4/5"]);
        assert_eq!(family_match(&s), None);
    }

    #[test]
    fn canonical_is_idempotent() {
        let s = sp(["1/3", "2/3"], ["0", "1/2"], ["1/5", "2/5", "3/5", "4/5"]);
        let c = canonical(&s);
        assert_eq!(canonical(&c), c);
        assert_eq!(canonical(&s.galois(7)), c);
    }

    #[test]
    fn integer_arcs_match_exact() {
        let s = sp(["1/3", "2/3"], ["0", "1/2"], ["1/28", "9/28", "3/4", "25/28"]);
        assert_eq!(arcs_definite_residues(&s), Some(arcs_definite(&s).unwrap().0));
    }

    #[test]
    fn bounds_validation() {
        assert!(SearchBounds::new(1, 30).is_err());
        assert!(SearchBounds::new(6, 200).is_err());
    }

    #[test]
    fn empty_whitelist() {
        let b = SearchBounds::new(3, 6).unwrap().with_conductors([]);
        assert!(search_finite(&b, 1).unwrap().is_empty());
    }
}

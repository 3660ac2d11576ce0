//! Breadth-first enumeration of the finite matrix group generated by a
//! triple, with order, center and scalar counts.

use crate::error::{Error, Result};
use crate::exactnum::{cyclo, lcm_u64, CycMatrix, Cyclo};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::hash::Hash;
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub order: usize,
    pub center: usize,
    pub scalars: usize,
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Workers {
    #[default]
    Single,
    /// Products of each frontier level are formed on the rayon pool.
    Parallel,
}

/// Closure of `{I}` under right multiplication by the generators.
pub fn enumerate_group(gens: &[CycMatrix], cap: usize) -> Result<GroupReport> {
    enumerate_group_with(gens, cap, Workers::Single)
}

pub fn enumerate_group_with(gens: &[CycMatrix], cap: usize, workers: Workers) -> Result<GroupReport> {
    if gens.is_empty() {
        return Err(Error::Other("no generators".into()));
    }
    let d = gens[0].rows();
    for g in gens {
        if !g.is_square() || g.rows() != d {
            return Err(Error::Dimension("generators must be square of one size".into()));
        }
    }
    let n = gens.iter().fold(1, |m, g| lcm_u64(m, g.conductor()));
    let gens: Vec<CycMatrix> = gens.iter().map(|g| g.lift(n)).collect();
    if let Some(ring) = IntRing::new(n, d, &gens) {
        match closure(&ring, cap, workers) {
            Err(Error::Other(m)) if m == OVERFLOW => {}
            r => return r,
        }
    }
    let gens = gens.into_iter().map(Keyed).collect();
    closure(&ExactRing { d, n, gens }, cap, workers)
}

const OVERFLOW: &str = "integer overflow in fast path";

/// A representation of the matrices in which products and equality are cheap.
trait Ring: Sync {
    type M: Clone + Eq + Hash + Send + Sync;
    fn identity(&self) -> Self::M;
    fn gens(&self) -> &[Self::M];
    fn mul(&self, a: &Self::M, b: &Self::M) -> Result<Self::M>;
    fn is_scalar(&self, a: &Self::M) -> bool;
}

fn closure<R: Ring>(ring: &R, cap: usize, workers: Workers) -> Result<GroupReport> {
    let mut seen: HashSet<R::M> = HashSet::new();
    let id = ring.identity();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let step = |a: &R::M| -> Result<Vec<R::M>> { ring.gens().iter().map(|g| ring.mul(a, g)).collect() };
        let products: Vec<Vec<R::M>> = match workers {
            Workers::Single => frontier.iter().map(step).collect::<Result<_>>()?,
            Workers::Parallel => frontier.par_iter().map(step).collect::<Result<_>>()?,
        };
        let mut next = Vec::new();
        for m in products.into_iter().flatten() {
            if !seen.contains(&m) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(m.clone());
                next.push(m);
            }
        }
        frontier = next;
    }
    let commutes = |x: &R::M| -> Result<bool> {
        for g in ring.gens() {
            if ring.mul(x, g)? != ring.mul(g, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut center = 0;
    let mut scalars = 0;
    for x in &seen {
        if ring.is_scalar(x) {
            scalars += 1;
            center += 1;
        } else if commutes(x)? {
            center += 1;
        }
    }
    Ok(GroupReport { order: seen.len(), center, scalars, cap })
}

/// Matrices over `Z[zeta_n]` as flat `i64` coefficient arrays.
struct IntRing {
    d: usize,
    cyc: Arc<Cyclo>,
    gens: Vec<Box<[i64]>>,
}

impl IntRing {
    fn new(n: u64, d: usize, gens: &[CycMatrix]) -> Option<Self> {
        let cyc = cyclo(n);
        let phi = cyc.phi;
        let gens = gens
            .iter()
            .map(|g| {
                let mut out = Vec::with_capacity(d * d * phi);
                for e in g.entries() {
                    out.extend(e.lift(n).int_coeffs()?);
                }
                Some(out.into_boxed_slice())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntRing { d, cyc, gens })
    }
}

impl Ring for IntRing {
    type M = Box<[i64]>;

    fn identity(&self) -> Self::M {
        let phi = self.cyc.phi;
        let mut m = vec![0; self.d * self.d * phi];
        for i in 0..self.d {
            m[(i * self.d + i) * phi] = 1;
        }
        m.into_boxed_slice()
    }

    fn gens(&self) -> &[Self::M] {
        &self.gens
    }

    fn mul(&self, a: &Self::M, b: &Self::M) -> Result<Self::M> {
        let (d, phi) = (self.d, self.cyc.phi);
        let ovf = || Error::Other(OVERFLOW.into());
        let mut raw = vec![0i64; 2 * phi - 1];
        let mut out = vec![0i64; d * d * phi];
        for i in 0..d {
            for j in 0..d {
                raw.iter_mut().for_each(|x| *x = 0);
                for k in 0..d {
                    let x = &a[(i * d + k) * phi..][..phi];
                    let y = &b[(k * d + j) * phi..][..phi];
                    for (p, &u) in x.iter().enumerate() {
                        if u == 0 {
                            continue;
                        }
                        for (q, &v) in y.iter().enumerate() {
                            let t = u.checked_mul(v).ok_or_else(ovf)?;
                            raw[p + q] = raw[p + q].checked_add(t).ok_or_else(ovf)?;
                        }
                    }
                }
                let o = &mut out[(i * d + j) * phi..][..phi];
                o.copy_from_slice(&raw[..phi]);
                for (k, &c) in raw.iter().enumerate().skip(phi) {
                    if c == 0 {
                        continue;
                    }
                    for (x, &r) in o.iter_mut().zip(&self.cyc.pow[k % self.cyc.n as usize]) {
                        let t = c.checked_mul(r).ok_or_else(ovf)?;
                        *x = x.checked_add(t).ok_or_else(ovf)?;
                    }
                }
            }
        }
        Ok(out.into_boxed_slice())
    }

    fn is_scalar(&self, a: &Self::M) -> bool {
        let (d, phi) = (self.d, self.cyc.phi);
        let diag = &a[..phi];
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = &a[(i * d + j) * phi..][..phi];
                if i == j {
                    e == diag
                } else {
                    e.iter().all(|&c| c == 0)
                }
            })
        })
    }
}

/// General matrices over `Q(zeta_n)`, hashed by canonical coefficients.
struct ExactRing {
    d: usize,
    n: u64,
    gens: Vec<Keyed>,
}

#[derive(Clone, PartialEq, Eq)]
struct Keyed(CycMatrix);

impl Hash for Keyed {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        for e in self.0.entries() {
            e.key().hash(h);
        }
    }
}

impl Ring for ExactRing {
    type M = Keyed;

    fn identity(&self) -> Keyed {
        Keyed(CycMatrix::identity(self.d).lift(self.n))
    }

    fn gens(&self) -> &[Keyed] {
        &self.gens
    }

    fn mul(&self, a: &Keyed, b: &Keyed) -> Result<Keyed> {
        Ok(Keyed(a.0.mul(&b.0)?.lift(self.n)))
    }

    fn is_scalar(&self, a: &Keyed) -> bool {
        a.0.as_scalar().is_some()
    }
}

/// Multiplicative order of a matrix, or `None` past `bound`.
pub fn element_order(m: &CycMatrix, bound: u64) -> Result<Option<u64>> {
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(Some(k));
        }
        p = p.mul(m)?;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{goursat_triple, integral_triple, GIISpectra, Gauge};
    use crate::exactnum::CycElt;

    fn spectra(a: [&str; 2], b: [&str; 2], g: [&str; 4]) -> GIISpectra {
        GIISpectra::parse(&a, &b, &g).unwrap()
    }

    fn gens(t: &crate::construct::MonodromyTriple) -> Vec<CycMatrix> {
        t.generators().into_iter().cloned().collect()
    }

    #[test]
    fn trivial_and_cyclic() {
        let id = CycMatrix::identity(4);
        assert_eq!(enumerate_group(&[id], 10).unwrap().order, 1);
        let z = CycMatrix::scalar(4, &CycElt::zeta_pow(6, 1).unwrap());
        let r = enumerate_group(&[z], 10).unwrap();
        assert_eq!((r.order, r.center, r.scalars), (6, 6, 6));
    }

    #[test]
    fn icosahedral_both_paths() {
        let s = spectra(["1/3", "2/3"], ["0", "1/2"], ["1/5", "2/5", "3/5", "4/5"]);
        let fast = enumerate_group(&gens(&integral_triple(&s).unwrap()), DEFAULT_CAP).unwrap();
        assert_eq!((fast.order, fast.center, fast.scalars), (60, 1, 1));
        // the Goursat form carries denominators, so this runs the exact path
        let exact = enumerate_group(&gens(&goursat_triple(&s, &Gauge::Default).unwrap()), DEFAULT_CAP).unwrap();
        assert_eq!(exact, fast);
        let par = enumerate_group_with(&gens(&integral_triple(&s).unwrap()), DEFAULT_CAP, Workers::Parallel).unwrap();
        assert_eq!(par, fast);
    }

    #[test]
    fn cap_is_enforced() {
        let s = spectra(["1/3", "2/3"], ["0", "1/2"], ["1/5", "2/5", "3/5", "4/5"]);
        let e = enumerate_group(&gens(&integral_triple(&s).unwrap()), 59);
        assert_eq!(e, Err(Error::CapExceeded(59)));
    }
}

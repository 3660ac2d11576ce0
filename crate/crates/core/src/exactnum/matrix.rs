use super::cyc::CycElt;
use super::poly::CycPoly;
use super::{lcm_u64, rat};
use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Dense matrix over a cyclotomic field, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycElt>,
}

impl CycMatrix {
    pub fn from_rows(rows: Vec<Vec<CycElt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&k| CycElt::from_int(1, k)).collect()).collect())
            .expect("rectangular")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![CycElt::zero(1); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &CycElt::one(1))
    }

    pub fn scalar(n: usize, c: &CycElt) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(d: &[CycElt]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n, n);
        for (i, c) in d.iter().enumerate() {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycElt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycElt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycElt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<CycElt>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn conductor(&self) -> u64 {
        self.data.iter().fold(1, |m, c| lcm_u64(m, c.conductor()))
    }

    /// Lifts every entry to a common conductor `m`.
    pub fn lift(&self, m: u64) -> Self {
        self.map(|c| c.lift(m))
    }

    /// Lifts every entry to the common conductor of the matrix.
    pub fn unify(&self) -> Self {
        self.lift(self.conductor())
    }

    /// Smallest common conductor containing every entry.
    pub fn min_conductor(&self) -> u64 {
        self.data.iter().fold(1, |m, c| lcm_u64(m, c.min_conductor()))
    }

    /// Rewrites the entries over the field `Q(zeta_m)`, where `m` is the
    /// smallest common conductor.
    pub fn reduce_conductor(&self) -> Self {
        let m = self.min_conductor();
        self.map(|c| c.lift(lcm_u64(c.conductor(), m)).descend(m).expect("entry lies in the subfield"))
    }

    fn map(&self, f: impl Fn(&CycElt) -> CycElt) -> Self {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &CycElt) -> Self {
        self.map(|a| a * c)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = CycElt::zero(1);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    /// Entrywise Galois action `zeta -> zeta^t` at the common conductor.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let m = self.conductor();
        let data = self.data.iter().map(|c| c.lift(m).galois(t)).collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> CycElt {
        (0..self.rows.min(self.cols)).fold(CycElt::zero(1), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let c = self.get(i, j);
                    if i == j {
                        c.is_one()
                    } else {
                        c.is_zero()
                    }
                })
            })
    }

    /// The scalar `c` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<CycElt> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    *e == c
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then_some(c)
    }

    /// Row reduction in place; returns pivot columns and the determinant
    /// factor accumulated from row swaps and pivot scaling.
    fn rref(&mut self) -> (Vec<usize>, CycElt) {
        let mut pivots = Vec::new();
        let mut factor = CycElt::one(1);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                factor = -factor;
            }
            let pv = self.get(r, c).clone();
            factor = &factor * &pv;
            let inv = pv.inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, factor)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.unify();
        m.rref().0.len()
    }

    pub fn det(&self) -> Result<CycElt> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.unify();
        let (piv, f) = m.rref();
        Ok(if piv.len() < self.rows { CycElt::zero(1) } else { f })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycElt::one(1));
        }
        let aug = aug.unify();
        let mut aug = aug;
        let (piv, _) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<CycElt>> {
        let mut m = self.unify();
        let (piv, _) = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycElt::zero(1); self.cols];
                v[f] = CycElt::one(1);
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<CycPoly> {
        if !self.is_square() {
            return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![CycElt::zero(1); n + 1];
        coeffs[n] = CycElt::one(1);
        let mut mk = Self::zero(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
            let prev = Self::scalar(n, &coeffs[n - k + 1]);
            mk = mk.add(&prev)?;
            let amk = self.mul(&mk)?;
            coeffs[n - k] = amk.trace().scale(&rat(-1, k as i64));
            mk = amk;
        }
        Ok(CycPoly::new(coeffs))
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<CycElt>>::deserialize(d)?;
        CycMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let m = CycMatrix::from_int_rows(&[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 3], &[0, 0, 0, 1]]);
        assert_eq!(m.det().unwrap(), CycElt::from_int(1, 1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = CycMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.det().unwrap().is_zero());
        assert_eq!(s.kernel().len(), 1);
    }

    #[test]
    fn charpoly_companion() {
        // companion of x^4 + x^3 + x^2 + x + 1
        let m = CycMatrix::from_int_rows(&[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]);
        assert_eq!(m.charpoly().unwrap(), CycPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert!(m.pow(5).unwrap().is_identity());
    }

    #[test]
    fn det_with_swap() {
        let m = CycMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), CycElt::from_int(1, -1));
    }
}

//! Star diagrams for multiplicity data and the A/B/C reduction deciding
//! rigidity.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A genus-0 star diagram: a central node of value `n` and legs whose node
/// values strictly decrease outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarDiagram {
    pub central: u32,
    pub legs: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCFailure {
    pub leg: usize,
    pub central: u32,
    pub neighbor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    Done,
    Next(Vec<(Move, StarDiagram)>),
    Fail(Vec<(Move, StarDiagram)>, MoveCFailure),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub rigid: bool,
    pub trace: Vec<(Move, StarDiagram)>,
    pub failure: Option<MoveCFailure>,
}

impl StarDiagram {
    pub fn new(central: u32, legs: Vec<Vec<u32>>) -> Result<Self> {
        if central == 0 {
            return Err(Error::InvalidDiagram("central value must be positive".into()));
        }
        for leg in &legs {
            let mut prev = central;
            for &v in leg {
                if v == 0 || v >= prev {
                    return Err(Error::InvalidDiagram(format!(
                        "leg {leg:?} is not strictly decreasing below {central}"
                    )));
                }
                prev = v;
            }
        }
        Ok(StarDiagram { central, legs })
    }

    /// Diagram of a tuple of partitions of `n`.
    pub fn from_partitions(n: u32, parts: &[Vec<u32>]) -> Result<Self> {
        let legs = parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable_by(|a, b| b.cmp(a));
                if p.iter().sum::<u32>() != n || p.contains(&0) {
                    return Err(Error::InvalidDiagram(format!("{p:?} is not a partition of {n}")));
                }
                let mut left = n;
                let mut leg = Vec::new();
                for x in &p {
                    left -= x;
                    if left > 0 {
                        leg.push(left);
                    }
                }
                Ok(leg)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, legs)
    }

    /// Partition carried by each leg, parts in non-increasing order.
    pub fn partitions(&self) -> Vec<Vec<u32>> {
        self.legs
            .iter()
            .map(|leg| {
                let mut prev = self.central;
                let mut parts: Vec<u32> = leg
                    .iter()
                    .chain(std::iter::once(&0))
                    .map(|&v| {
                        let d = prev - v;
                        prev = v;
                        d
                    })
                    .collect();
                parts.sort_unstable_by(|a, b| b.cmp(a));
                parts
            })
            .collect()
    }

    /// Expected dimension `(k - 2) n^2 - sum of squared parts + 2`.
    pub fn dmu(&self) -> i64 {
        let n = self.central as i64;
        let k = self.legs.len() as i64;
        let sq: i64 = self.partitions().iter().flatten().map(|&p| (p as i64) * (p as i64)).sum();
        (k - 2) * n * n - sq + 2
    }

    pub fn is_terminal(&self) -> bool {
        self.central == 1 && self.legs.iter().all(|l| l.is_empty())
    }

    fn move_a(&self) -> Result<StarDiagram> {
        let s: u32 = self.legs.iter().map(|l| l.first().copied().unwrap_or(0)).sum();
        if s <= self.central || s - self.central >= self.central {
            return Err(Error::InvalidDiagram(format!("move A does not decrease the central value {}", self.central)));
        }
        Ok(StarDiagram { central: s - self.central, legs: self.legs.clone() })
    }

    fn move_b(&self) -> StarDiagram {
        let legs = self
            .legs
            .iter()
            .map(|leg| {
                let mut out: Vec<u32> = Vec::new();
                let mut prev = self.central;
                for &v in leg {
                    if v != prev {
                        out.push(v);
                    }
                    prev = v;
                }
                out
            })
            .collect();
        StarDiagram { central: self.central, legs }
    }

    fn move_c(&self) -> std::result::Result<StarDiagram, MoveCFailure> {
        let mut legs = Vec::with_capacity(self.legs.len());
        for (i, leg) in self.legs.iter().enumerate() {
            if let Some(&first) = leg.first() {
                if first > self.central {
                    return Err(MoveCFailure { leg: i, central: self.central, neighbor: first });
                }
            }
            let mut prev = self.central as i64;
            let mut diffs: Vec<i64> = leg
                .iter()
                .chain(std::iter::once(&0))
                .map(|&v| {
                    let d = prev - v as i64;
                    prev = v as i64;
                    d
                })
                .collect();
            diffs.sort_unstable_by(|a, b| b.cmp(a));
            let mut cur = self.central as i64;
            let mut out = Vec::new();
            for d in diffs {
                cur -= d;
                if cur > 0 {
                    out.push(cur as u32);
                }
            }
            legs.push(out);
        }
        Ok(StarDiagram { central: self.central, legs })
    }

    /// One round of moves A, B, C.
    pub fn reduce_step(&self) -> Result<Step> {
        if self.is_terminal() {
            return Ok(Step::Done);
        }
        let a = self.move_a()?;
        let b = a.move_b();
        let mut trace = vec![(Move::A, a), (Move::B, b.clone())];
        match b.move_c() {
            Ok(c) => {
                trace.push((Move::C, c));
                Ok(Step::Next(trace))
            }
            Err(f) => Ok(Step::Fail(trace, f)),
        }
    }

    /// Runs the reduction to the terminal node or to a failure of move C.
    pub fn is_rigid(&self) -> Result<ReductionOutcome> {
        let d = self.dmu();
        if d != 0 {
            return Err(Error::NotZeroDimension(d));
        }
        let mut cur = self.clone();
        let mut trace = Vec::new();
        loop {
            match cur.reduce_step()? {
                Step::Done => return Ok(ReductionOutcome { rigid: true, trace, failure: None }),
                Step::Next(t) => {
                    cur = t.last().unwrap().1.clone();
                    trace.extend(t);
                }
                Step::Fail(t, f) => {
                    trace.extend(t);
                    return Ok(ReductionOutcome { rigid: false, trace, failure: Some(f) });
                }
            }
        }
    }

    /// Goursat's rank-4 diagrams `GI` .. `GVII`.
    pub fn goursat(name: &str) -> Result<Self> {
        let key: String =
            name.chars().filter(|c| !matches!(c, '-' | '_' | ' ')).collect::<String>().to_ascii_uppercase();
        let legs: Vec<Vec<u32>> = match key.as_str() {
            "GI" => vec![vec![3, 2, 1], vec![3, 2, 1], vec![1]],
            "GII" => vec![vec![2], vec![2, 1], vec![3, 2, 1]],
            "GIII" => vec![vec![2, 1], vec![2, 1], vec![2, 1]],
            "GIV" => vec![vec![1], vec![1], vec![1], vec![3, 2, 1]],
            "GV" => vec![vec![2], vec![1], vec![1], vec![2, 1]],
            "GVI" => vec![vec![2], vec![2], vec![2], vec![1]],
            "GVII" => vec![vec![1]; 5],
            _ => return Err(Error::InvalidDiagram(format!("unknown diagram {name}"))),
        };
        Self::new(4, legs)
    }

    /// ASCII rendering, one line per leg.
    pub fn render(&self) -> String {
        let mut out = format!("({})\n", self.central);
        for leg in &self.legs {
            let mut line = format!("  {}", self.central);
            for v in leg {
                line.push_str(&format!(" - {v}"));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

pub const GOURSAT_NAMES: [&str; 7] = ["GI", "GII", "GIII", "GIV", "GV", "GVI", "GVII"];

impl FromStr for StarDiagram {
    type Err = Error;
    /// Either a Goursat name or `n:leg;leg;..` with comma-separated node values.
    fn from_str(s: &str) -> Result<Self> {
        let Some((n, legs)) = s.split_once(':') else {
            return Self::goursat(s);
        };
        let bad = || Error::InvalidDiagram(s.to_string());
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let legs = legs
            .split(';')
            .map(|leg| {
                let leg = leg.trim();
                if leg.is_empty() {
                    return Ok(vec![]);
                }
                leg.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Self::new(n, legs)
    }
}

impl fmt::Display for StarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<String> =
            self.legs.iter().map(|l| l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}:{}", self.central, legs.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goursat_partitions_and_dimension() {
        let g2 = StarDiagram::goursat("G-II").unwrap();
        assert_eq!(g2.partitions(), vec![vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        for name in GOURSAT_NAMES {
            assert_eq!(StarDiagram::goursat(name).unwrap().dmu(), 0, "{name}");
        }
        let rank2 = StarDiagram::from_partitions(2, &[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank2.dmu(), 0);
    }

    #[test]
    fn gii_trace() {
        let out = StarDiagram::goursat("GII").unwrap().is_rigid().unwrap();
        assert!(out.rigid);
        let after_c: Vec<&StarDiagram> = out.trace.iter().filter(|(m, _)| *m == Move::C).map(|(_, d)| d).collect();
        assert_eq!(after_c[0], &StarDiagram::new(3, vec![vec![1], vec![2, 1], vec![2, 1]]).unwrap());
        assert_eq!(after_c[1], &StarDiagram::new(2, vec![vec![1], vec![1], vec![1]]).unwrap());
        assert!(after_c[2].is_terminal());
    }

    #[test]
    fn only_giv_fails() {
        for name in GOURSAT_NAMES {
            let out = StarDiagram::goursat(name).unwrap().is_rigid().unwrap();
            assert_eq!(out.rigid, name != "GIV", "{name}");
        }
        let out = StarDiagram::goursat("GIV").unwrap().is_rigid().unwrap();
        let f = out.failure.unwrap();
        assert_eq!((f.central, f.neighbor), (2, 3));
    }

    #[test]
    fn rejects_nonzero_dimension() {
        let d = StarDiagram::from_partitions(2, &[vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(d.is_rigid(), Err(Error::NotZeroDimension(2)));
    }

    #[test]
    fn parse_round_trip() {
        let d: StarDiagram = "4:2;2,1;3,2,1".parse().unwrap();
        assert_eq!(d, StarDiagram::goursat("gii").unwrap());
        assert_eq!(d.to_string().parse::<StarDiagram>().unwrap(), d);
        assert!("4:5".parse::<StarDiagram>().is_err());
    }
}

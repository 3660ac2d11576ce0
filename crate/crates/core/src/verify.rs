//! Named series identities for the explicit algebraic solutions.

use crate::catalog::{AlgebraicSolution, PSI_IN_XI, PSI_PHI1_WEIGHT};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, rat, CycElt, Rat};
use crate::ode::{newton_root, pfq_series, series_solutions, verify_algebraic, PfqNormalization, PowerSeries};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// The quintic over `Q(sqrt(-15))` annihilates its solution.
    Degree5,
    /// The octic over `Q(sqrt(-2))` annihilates its solution.
    Degree8,
    /// `phi0^2 - w phi1^2` is the printed cubic in the trinomial root.
    PsiXi,
    /// `(5^5/4^4) u / t` for `u (1 - u)^4 = (4^4/5^5) t` equals the 4F3.
    Trinomial,
    /// `4F3^r = 5F4` for a list of rational `r`.
    Power,
}

impl Identity {
    pub const ALL: [Identity; 5] =
        [Identity::Degree5, Identity::Degree8, Identity::PsiXi, Identity::Trinomial, Identity::Power];
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "degree5" => Identity::Degree5,
            "degree8" => Identity::Degree8,
            "psi-xi" => Identity::PsiXi,
            "trinomial" => Identity::Trinomial,
            "power" => Identity::Power,
            _ => return Err(Error::Parse(s.to_string())),
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Degree5 => "degree5",
            Identity::Degree8 => "degree8",
            Identity::PsiXi => "psi-xi",
            Identity::Trinomial => "trinomial",
            Identity::Power => "power",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub terms: usize,
    pub holds: bool,
}

/// `phi0 + head[1] phi1` is a root of the polynomial modulo `x^terms`.
pub fn algebraic_solution_holds(fx: &AlgebraicSolution, terms: usize) -> Result<bool> {
    let (p0, p1) = series_solutions(&fx.coefficients(), terms.max(3))?;
    let y = p0.add(&p1.scale(&fx.head[1]));
    let head_ok = fx.head.iter().enumerate().all(|(k, c)| &y.coeff(k) == c);
    Ok(head_ok && verify_algebraic(&fx.poly, &y, terms)?)
}

fn constant(v: &str, n: usize) -> PowerSeries {
    PowerSeries::from_rats(&[parse_rat(v).expect("literal")], n)
}

pub fn psi_xi_holds(terms: usize) -> Result<bool> {
    let fx = crate::catalog::algebraic_degree8();
    let (p0, p1) = series_solutions(&fx.coefficients(), terms)?;
    let psi = p0.mul(&p0).sub(&p1.mul(&p1).scale_rat(&parse_rat(PSI_PHI1_WEIGHT)?));
    let trinomial = [
        PowerSeries::from_rats(&[rat(0, 1), rat(27, 1)], terms),
        constant("0", terms),
        constant("0", terms),
        constant("-4", terms),
        constant("1", terms),
    ];
    let xi = newton_root(&trinomial, &CycElt::from_int(1, 4), terms)?;
    let cubic: Vec<PowerSeries> = PSI_IN_XI.iter().map(|v| constant(v, terms)).collect();
    Ok(PowerSeries::eval_poly(&cubic, &xi) == psi)
}

fn quartic_pfq(terms: usize) -> Result<PowerSeries> {
    let q = |v: &[&str]| v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>();
    pfq_series(&q(&["4/5", "6/5", "7/5", "8/5"])?, &q(&["3/2", "5/4", "7/4", "2"])?, terms, PfqNormalization::Verbatim)
}

/// The normalized trinomial root `f(t)`, `f(0) = 1`.
pub fn trinomial_series(terms: usize) -> Result<PowerSeries> {
    let c = rat(256, 3125);
    let n = terms + 1;
    let k = |v: i64| PowerSeries::from_rats(&[rat(v, 1)], n);
    let eq = [PowerSeries::x(n).scale_rat(&-c.clone()), k(1), k(-4), k(6), k(-4), k(1)];
    let u = newton_root(&eq, &CycElt::zero(1), n)?;
    Ok(u.shift_down(1)?.scale_rat(&(rat(1, 1) / c)))
}

pub fn trinomial_holds(terms: usize) -> Result<bool> {
    Ok(trinomial_series(terms)? == quartic_pfq(terms)?)
}

/// `4F3^r = 5F4` with parameters shifted by `r`; `r` must avoid poles.
pub fn power_identity_holds(r: &Rat, terms: usize) -> Result<bool> {
    let fifth = |k: i64| rat(k, 5) + rat(4, 5) * r;
    let upper = [fifth(0), fifth(1), fifth(2), fifth(3), fifth(4)];
    let lower = [r + rat(1, 1), r + rat(3, 4), r + rat(1, 2), r + rat(1, 4), rat(1, 1)];
    let f54 = pfq_series(&upper, &lower, terms, PfqNormalization::Verbatim)?;
    Ok(quartic_pfq(terms)?.pow_rat(r)? == f54)
}

pub const DEFAULT_POWERS: [(i64, i64); 5] = [(1, 3), (2, 7), (3, 2), (5, 11), (7, 4)];

pub fn check(id: Identity, terms: usize) -> Result<IdentityReport> {
    let holds = match id {
        Identity::Degree5 => algebraic_solution_holds(&crate::catalog::algebraic_degree5(), terms)?,
        Identity::Degree8 => algebraic_solution_holds(&crate::catalog::algebraic_degree8(), terms)?,
        Identity::PsiXi => psi_xi_holds(terms)?,
        Identity::Trinomial => trinomial_holds(terms)?,
        Identity::Power => {
            let mut ok = true;
            for (p, q) in DEFAULT_POWERS {
                ok &= power_identity_holds(&rat(p, q), terms)?;
            }
            ok
        }
    };
    Ok(IdentityReport { identity: id, terms, holds })
}

//! Published reference data: the known finite-monodromy cases, the systems
//! with field of moduli `Q`, their quaternion classes, and explicit
//! Coxeter-group triples, and explicit differential operators with their
//! algebraic solutions.

use crate::construct::GIISpectra;
use crate::exactnum::{parse_rat, rat, rat_int, CycElt, CycMatrix, Exponent, Rat};
use crate::ode::{ode_coefficients, BivariatePoly, LinearOperator, OdeCoefficients};

/// Which list a finite case belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteList {
    /// `T1 ~ (1, 1, -1, -1)`, `alpha = (1/3, 2/3)`.
    SpecialThird,
    /// `T1 ~ (1, 1, -1, -1)`, `alpha = (1/4, 3/4)`.
    SpecialQuarter,
    /// `T1 ~ (1, 1, -1, -1)`, `alpha = (1/5, 4/5)`.
    SpecialFifth,
    /// Normalized `T1 ~ (1, 1, b, b)` with general `alpha`.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiniteCase {
    pub list: FiniteList,
    /// 1-based position in its list.
    pub index: usize,
    pub spectra: GIISpectra,
    pub order: u64,
    pub center: u64,
}

const SPECIAL_THIRD: &[(&str, u64, u64)] = &[
    ("1/8 3/8 5/8 7/8", 48, 2),
    ("1/5 2/5 3/5 4/5", 60, 1),
    ("1/10 3/10 7/10 9/10", 120, 2),
    ("1/12 5/12 7/12 11/12", 144, 2),
    ("1/20 9/20 13/20 17/20", 240, 4),
    ("2/9 1/3 5/9 8/9", 324, 1),
    ("1/24 7/24 17/24 23/24", 576, 2),
    ("1/28 9/28 3/4 25/28", 672, 4),
    ("1/20 9/20 11/20 19/20", 720, 2),
    ("1/15 4/15 11/15 14/15", 1440, 2),
    ("1/30 11/30 19/30 29/30", 1440, 2),
    ("1/40 9/40 31/40 39/40", 2880, 2),
];

const SPECIAL_QUARTER: &[(&str, u64, u64)] =
    &[("1/12 5/12 7/12 11/12", 192, 2), ("1/20 9/20 13/20 17/20", 640, 4), ("1/36 13/36 25/36 11/12", 103680, 4)];

const SPECIAL_FIFTH: &[(&str, u64, u64)] = &[
    ("1/12 5/12 7/12 11/12", 1200, 2),
    ("2/15 7/15 8/15 13/15", 7200, 2),
    ("1/20 9/20 11/20 19/20", 1200, 2),
    ("1/30 11/30 19/30 29/30", 7200, 2),
];

/// `(b alpha1 alpha2, gamma, order, center)`.
const GENERAL: &[(&str, &str, u64, u64)] = &[
    ("1/2 1/2 1/3", "1/8 11/24 5/8 23/24", 4608, 4),
    ("1/2 1/2 1/3", "5/48 23/48 29/48 47/48", 41472, 6),
    ("1/2 1/2 1/3", "11/120 59/120 71/120 119/120", 1036800, 12),
    ("1/2 1/2 1/4", "7/48 23/48 31/48 47/48", 6144, 8),
    ("1/2 1/2 1/5", "7/40 19/40 27/40 39/40", 2880000, 20),
    ("1/2 1/2 1/5", "19/120 59/120 79/120 119/120", 2880000, 20),
    ("1/2 1/2 1/6", "5/36 17/36 29/36 11/12", 311040, 12),
    ("1/2 1/2 1/6", "11/60 23/60 47/60 59/60", 311040, 12),
    ("1/2 1/3 1/4", "7/24 5/12 19/24 11/12", 165888, 12),
    ("1/2 1/3 1/4", "11/48 23/48 35/48 47/48", 165888, 12),
    ("1/2 1/3 1/5", "4/15 7/15 23/30 29/30", 6480000, 30),
    ("1/2 1/3 1/5", "17/60 9/20 47/60 19/20", 6480000, 30),
    ("1/2 1/3 1/5", "19/60 5/12 49/60 11/12", 6480000, 30),
    ("1/2 1/3 1/5", "29/120 59/120 89/120 119/120", 6480000, 30),
    ("1/2 1/5 2/5", "4/15 13/30 23/30 14/15", 6000, 10),
    ("1/2 1/5 2/5", "9/40 19/40 29/40 39/40", 6000, 10),
    ("1/3 1/2 5/6", "1/18 7/18 13/18 5/6", 155520, 6),
    ("1/3 1/2 1/6", "5/18 11/18 5/6 17/18", 155520, 6),
    ("1/3 1/2 1/6", "11/30 17/30 23/30 29/30", 155520, 6),
    ("1/3 1/3 2/3", "1/12 11/24 5/6 23/24", 69120, 12),
    ("1/3 1/3 2/3", "2/15 8/15 11/15 14/15", 2160, 6),
    ("1/3 1/3 2/3", "5/24 11/24 17/24 23/24", 2160, 6),
    ("1/3 1/3 2/3", "5/42 17/42 5/6 41/42", 15120, 6),
    ("1/3 1/3 2/3", "11/60 23/60 47/60 59/60", 69120, 12),
];

fn exps<const K: usize>(s: &str) -> [Exponent; K] {
    let v: Vec<Exponent> = s.split_whitespace().map(|x| Exponent::parse(x).expect("catalog entry")).collect();
    v.try_into().expect("catalog arity")
}

fn special(list: FiniteList, alpha: &str, rows: &[(&str, u64, u64)]) -> Vec<FiniteCase> {
    rows.iter()
        .enumerate()
        .map(|(i, (g, order, center))| {
            let [a1, a2] = exps::<2>(alpha);
            let spectra = GIISpectra::normalized((a1, a2), Exponent::from_frac(1, 2), exps::<4>(g))
                .expect("catalog spectra are valid");
            FiniteCase { list, index: i + 1, spectra, order: *order, center: *center }
        })
        .collect()
}

/// Every published finite-monodromy case outside the infinite families.
pub fn finite_cases() -> Vec<FiniteCase> {
    let mut out = special(FiniteList::SpecialThird, "1/3 2/3", SPECIAL_THIRD);
    out.extend(special(FiniteList::SpecialQuarter, "1/4 3/4", SPECIAL_QUARTER));
    out.extend(special(FiniteList::SpecialFifth, "1/5 4/5", SPECIAL_FIFTH));
    out.extend(GENERAL.iter().enumerate().map(|(i, (ba, g, order, center))| {
        let [b, a1, a2] = exps::<3>(ba);
        let spectra = GIISpectra::normalized((a1, a2), b, exps::<4>(g)).expect("catalog spectra are valid");
        FiniteCase { list: FiniteList::General, index: i + 1, spectra, order: *order, center: *center }
    }));
    out
}

/// A system with field of moduli `Q`, with its published `mu`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RationalCase {
    pub definite: bool,
    pub index: usize,
    pub spectra: GIISpectra,
    pub mu: i64,
}

/// `(alpha, beta, gamma, mu)`, signature `(2, 2)`.
const RATIONAL_INDEFINITE: &[(&str, &str, &str, i64)] = &[
    ("1/3 2/3", "0 1/2", "1/4 1/3 2/3 3/4", -2),
    ("1/3 2/3", "0 1/2", "1/6 1/4 3/4 5/6", -2),
    ("1/3 2/3", "1/3 2/3", "1/6 1/4 3/4 5/6", -2),
    ("1/3 2/3", "1/3 2/3", "1/10 3/10 7/10 9/10", -1),
    ("1/3 2/3", "1/6 5/6", "1/4 1/3 2/3 3/4", -2),
    ("1/3 2/3", "1/6 5/6", "1/5 2/5 3/5 4/5", -1),
    ("1/4 3/4", "0 1/2", "1/4 1/3 2/3 3/4", -3),
    ("1/4 3/4", "0 1/2", "1/6 1/3 2/3 5/6", -1),
    ("1/4 3/4", "0 1/2", "1/6 1/4 3/4 5/6", -3),
    ("1/4 3/4", "0 1/2", "1/5 2/5 3/5 4/5", -1),
    ("1/4 3/4", "0 1/2", "1/10 3/10 7/10 9/10", -1),
    ("1/4 3/4", "1/3 2/3", "1/6 1/4 3/4 5/6", -3),
    ("1/4 3/4", "1/3 2/3", "1/10 3/10 7/10 9/10", -1),
    ("1/4 3/4", "1/3 2/3", "1/12 5/12 7/12 11/12", 1),
    ("1/4 3/4", "1/4 3/4", "1/12 5/12 7/12 11/12", 1),
    ("1/4 3/4", "1/6 5/6", "1/4 1/3 2/3 3/4", -3),
    ("1/4 3/4", "1/6 5/6", "1/5 2/5 3/5 4/5", -1),
    ("1/4 3/4", "1/6 5/6", "1/12 5/12 7/12 11/12", 1),
    ("1/6 5/6", "0 1/2", "1/4 1/3 2/3 3/4", -2),
    ("1/6 5/6", "0 1/2", "1/6 1/3 2/3 5/6", -2),
    ("1/6 5/6", "0 1/2", "1/6 1/4 3/4 5/6", -2),
    ("1/6 5/6", "0 1/2", "1/5 2/5 3/5 4/5", -1),
    ("1/6 5/6", "0 1/2", "1/8 3/8 5/8 7/8", -1),
    ("1/6 5/6", "0 1/2", "1/10 3/10 7/10 9/10", -1),
    ("1/6 5/6", "1/3 2/3", "1/6 1/4 3/4 5/6", -2),
    ("1/6 5/6", "1/3 2/3", "1/5 2/5 3/5 4/5", 1),
    ("1/6 5/6", "1/3 2/3", "1/8 3/8 5/8 7/8", 1),
    ("1/6 5/6", "1/3 2/3", "1/10 3/10 7/10 9/10", 1),
    ("1/6 5/6", "1/3 2/3", "1/12 5/12 7/12 11/12", 2),
    ("1/6 5/6", "1/4 3/4", "1/5 2/5 3/5 4/5", 1),
    ("1/6 5/6", "1/4 3/4", "1/8 3/8 5/8 7/8", 1),
    ("1/6 5/6", "1/4 3/4", "1/10 3/10 7/10 9/10", 1),
    ("1/6 5/6", "1/4 3/4", "1/12 5/12 7/12 11/12", 2),
    ("1/6 5/6", "1/6 5/6", "1/4 1/3 2/3 3/4", -2),
    ("1/6 5/6", "1/6 5/6", "1/5 2/5 3/5 4/5", 1),
    ("1/6 5/6", "1/6 5/6", "1/8 3/8 5/8 7/8", 1),
    ("1/6 5/6", "1/6 5/6", "1/10 3/10 7/10 9/10", 1),
    ("1/6 5/6", "1/6 5/6", "1/12 5/12 7/12 11/12", 2),
];

/// Signature `(4, 0)`.
const RATIONAL_DEFINITE: &[(&str, &str, &str, i64)] = &[
    ("1/3 2/3", "0 1/2", "1/5 2/5 3/5 4/5", 1),
    ("1/3 2/3", "0 1/2", "1/8 3/8 5/8 7/8", 1),
    ("1/3 2/3", "0 1/2", "1/10 3/10 7/10 9/10", 1),
    ("1/3 2/3", "0 1/2", "1/12 5/12 7/12 11/12", 2),
    ("1/3 2/3", "1/3 2/3", "1/5 2/5 3/5 4/5", -1),
    ("1/3 2/3", "1/3 2/3", "1/8 3/8 5/8 7/8", -1),
    ("1/3 2/3", "1/4 3/4", "1/6 1/3 2/3 5/6", -2),
    ("1/3 2/3", "1/4 3/4", "1/5 2/5 3/5 4/5", -1),
    ("1/3 2/3", "1/4 3/4", "1/8 3/8 5/8 7/8", -1),
    ("1/3 2/3", "1/4 3/4", "1/10 3/10 7/10 9/10", -1),
    ("1/3 2/3", "1/6 5/6", "1/8 3/8 5/8 7/8", -1),
    ("1/3 2/3", "1/6 5/6", "1/10 3/10 7/10 9/10", -1),
    ("1/4 3/4", "0 1/2", "1/12 5/12 7/12 11/12", 1),
    ("1/4 3/4", "1/3 2/3", "1/5 2/5 3/5 4/5", -1),
    ("1/4 3/4", "1/4 3/4", "1/6 1/3 2/3 5/6", -1),
    ("1/4 3/4", "1/4 3/4", "1/5 2/5 3/5 4/5", -1),
    ("1/4 3/4", "1/4 3/4", "1/10 3/10 7/10 9/10", -1),
    ("1/4 3/4", "1/6 5/6", "1/10 3/10 7/10 9/10", -1),
];

fn rational(definite: bool, rows: &[(&str, &str, &str, i64)]) -> Vec<RationalCase> {
    rows.iter()
        .enumerate()
        .map(|(i, (a, b, g, mu))| {
            let [a1, a2] = exps::<2>(a);
            let [b1, b2] = exps::<2>(b);
            let spectra = GIISpectra::new((a1, a2), (b1, b2), exps::<4>(g)).expect("catalog spectra are valid");
            RationalCase { definite, index: i + 1, spectra, mu: *mu }
        })
        .collect()
}

/// Published systems with field of moduli `Q`, indefinite ones first.
pub fn rational_cases() -> Vec<RationalCase> {
    let mut out = rational(false, RATIONAL_INDEFINITE);
    out.extend(rational(true, RATIONAL_DEFINITE));
    out
}

/// Published ramification of `(D, mu / Q)`; `0` stands for the infinite place.
pub const QUATERNION_CELLS: &[(i64, i64, &[u64])] = &[
    (-3, -3, &[3, 0]),
    (-3, -2, &[2, 0]),
    (-3, -1, &[3, 0]),
    (-3, 2, &[2, 3]),
    (-4, -3, &[3, 0]),
    (-4, -2, &[2, 0]),
    (-4, -1, &[2, 0]),
];

/// The systems with field of moduli `Q` and finite monodromy worked out
/// explicitly in the literature.
pub const RATIONAL_FINITE_EXAMPLES: &[(&str, &str, &str)] = &[
    ("1/3 2/3", "0 1/2", "1/5 2/5 3/5 4/5"),
    ("1/4 3/4", "0 1/2", "1/8 3/8 5/8 7/8"),
    ("1/4 3/4", "0 1/2", "1/12 5/12 7/12 11/12"),
    ("1/3 2/3", "0 1/2", "1/12 5/12 7/12 11/12"),
];

pub fn rational_finite_examples() -> Vec<GIISpectra> {
    RATIONAL_FINITE_EXAMPLES
        .iter()
        .map(|(a, b, g)| {
            let [a1, a2] = exps::<2>(a);
            let [b1, b2] = exps::<2>(b);
            GIISpectra::new((a1, a2), (b1, b2), exps::<4>(g)).expect("catalog spectra are valid")
        })
        .collect()
}

/// The golden ratio `1 + zeta_5 + zeta_5^4`.
pub fn golden_ratio() -> CycElt {
    let z = |k| CycElt::zeta_pow(5, k).expect("unit");
    &(&CycElt::one(5) + &z(1)) + &z(4)
}

fn tau_matrix(rows: [[(i64, i64); 4]; 4]) -> CycMatrix {
    // entry (p, q) stands for p + q * tau
    let tau = golden_ratio();
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&(p, q)| &CycElt::from_int(5, p) + &(&CycElt::from_int(5, q) * &tau)).collect())
        .collect();
    CycMatrix::from_rows(rows).expect("4x4")
}

/// `T1 = s1 s3` in the reflection representation of the Coxeter group `H4`.
pub fn coxeter_h4_t1() -> CycMatrix {
    tau_matrix([
        [(-1, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 1), (1, 0), (1, 0), (0, 0)],
        [(0, 0), (0, 0), (-1, 0), (0, 0)],
        [(0, 0), (0, 0), (1, 0), (1, 0)],
    ])
}

/// The Coxeter element `s1 s2 s3 s4` of `H4`; together with
/// [`coxeter_h4_t1`] it generates a group of order 1440.
pub fn coxeter_h4_tinf() -> CycMatrix {
    tau_matrix([
        [(-1, 0), (0, -1), (0, -1), (0, -1)],
        [(0, 1), (0, 1), (0, 1), (0, 1)],
        [(0, 0), (1, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (1, 0), (0, 0)],
    ])
}

/// A product of reflections in `H4` with charpoly `x^4 - x^2 + 1`; with
/// [`coxeter_h4_t1`] it generates a group of order 144.
pub fn coxeter_h4_tinf_order144() -> CycMatrix {
    tau_matrix([
        [(0, 0), (1, 0), (1, 0), (1, 0)],
        [(1, 1), (1, 1), (1, 0), (0, 0)],
        [(0, -1), (-1, -1), (-1, 0), (0, 0)],
        [(-1, -1), (-1, -1), (0, -1), (0, -1)],
    ])
}

/// `T0 = T_inf^-1 T1^-1` for the order-144 triple.
pub fn coxeter_h4_t0_order144() -> CycMatrix {
    tau_matrix([
        [(0, 1), (1, 0), (0, 0), (0, 0)],
        [(-1, -1), (-1, -1), (-1, 0), (-1, 0)],
        [(1, 2), (2, 2), (2, 1), (1, 1)],
        [(-1, -1), (-1, -1), (-1, -1), (0, -1)],
    ])
}

/// `(1 + sqrt(-15)) / 2` in `Q(zeta_15)`, a root of `w^2 - w + 4`.
pub fn omega_15() -> CycElt {
    let z15 = |k| CycElt::zeta_pow(15, k).expect("unit");
    let sqrt5 = &(&z15(3) + &z15(12)).scale(&rat_int(2)) + &CycElt::one(15);
    let sqrt_m3 = &CycElt::one(15) + &z15(5).scale(&rat_int(2));
    (&CycElt::one(15) + &(&sqrt5 * &sqrt_m3)).scale(&rat(1, 2))
}

/// `sqrt(-8) = 2 (zeta_8 + zeta_8^3)`.
pub fn sqrt_m8() -> CycElt {
    let z8 = |k| CycElt::zeta_pow(8, k).expect("unit");
    (&z8(1) + &z8(3)).scale(&rat_int(2))
}

fn lin(a: &str, b: &str, g: &CycElt) -> CycElt {
    let (a, b) = (parse_rat(a).expect("literal"), parse_rat(b).expect("literal"));
    &CycElt::from_rat(g.conductor(), &a) + &g.scale(&b)
}

/// A solution of the fourth-order equation that is algebraic over `Q(x)`,
/// with the polynomial it satisfies.
#[derive(Clone, Debug)]
pub struct AlgebraicSolution {
    pub alpha: (Rat, Rat),
    pub gamma: [Rat; 4],
    /// Leading coefficients of the solution; `head[1]` fixes it as
    /// `phi0 + head[1] phi1`.
    pub head: Vec<CycElt>,
    pub poly: BivariatePoly,
}

impl AlgebraicSolution {
    pub fn coefficients(&self) -> OdeCoefficients {
        ode_coefficients(self.alpha.clone(), self.gamma.clone())
    }
}

/// Degree-five solution over `Q(sqrt(-15))`; gamma = (1/5, 2/5, -2/5, 4/5).
pub fn algebraic_degree5() -> AlgebraicSolution {
    let w = omega_15();
    let l = |a: &str, b: &str| lin(a, b, &w);
    let zero = CycElt::zero(15);
    let one = CycElt::one(15);
    let poly = BivariatePoly::new(vec![
        vec![
            -&l("82982887/900778752", "9216415/300259584"),
            l("3663787/14856594", "406915/4952198"),
            -&l("453252/2476099", "151020/2476099"),
        ],
        vec![l("-518989705/900778752", "19234735/300259584"), l("298150/390963", "-11050/130321")],
        vec![l("-1189825/2963088", "70525/329232")],
        vec![l("605/8664", "-715/2888")],
        vec![zero],
        vec![one.clone()],
    ]);
    AlgebraicSolution {
        alpha: (rat(1, 3), rat(2, 3)),
        gamma: [rat(1, 5), rat(2, 5), rat(-2, 5), rat(4, 5)],
        head: vec![one, -&l("123/475", "33/1900"), -&l("271713/3800000", "78771/15200000")],
        poly,
    }
}

/// First terms of the rational solution of degree ten for the same
/// exponents as [`algebraic_degree5`].
pub const RATIONAL_DEGREE10_HEAD: &[&str] = &["1", "-387/1300", "-172773/2080000", "-141382989/3328000000"];

/// Degree-eight solution over `Q(sqrt(-2))`; alpha = (1/3, 2/3),
/// gamma = (1/8, 3/8, -3/8, 7/8).
pub fn algebraic_degree8() -> AlgebraicSolution {
    let s = sqrt_m8();
    let l = |a: &str, b: &str| lin(a, b, &s);
    let zero = CycElt::zero(8);
    let one = CycElt::one(8);
    let poly = BivariatePoly::new(vec![
        vec![
            l("382087111/10460353203", "22649710/10460353203"),
            -&l("1067187679/10460353203", "296048878/10460353203"),
            l("238769752/3486784401", "172219360/3486784401"),
            -&l("3467632/1162261467", "27028768/1162261467"),
        ],
        vec![zero.clone()],
        vec![l("1684358888/10460353203", "-1015591450/10460353203"), l("-10078688/43046721", "4842880/43046721")],
        vec![zero.clone()],
        vec![-&l("1034482/1594323", "351670/1594323"), l("19984/19683", "1048/19683")],
        vec![zero.clone()],
        vec![l("-400/729", "230/729")],
        vec![zero],
        vec![one.clone()],
    ]);
    AlgebraicSolution {
        alpha: (rat(1, 3), rat(2, 3)),
        gamma: [rat(1, 8), rat(3, 8), rat(-3, 8), rat(7, 8)],
        head: vec![one, l("-29/128", "5/256"), l("-527/8192", "383/65536")],
        poly,
    }
}

/// `psi = phi0^2 - PSI_PHI1_WEIGHT phi1^2` for [`algebraic_degree8`]
/// is a cubic in the root `xi(0) = 4` of `xi^4 - 4 xi^3 + 27 x`.
pub const PSI_PHI1_WEIGHT: &str = "891/16384";
/// Coefficients of `psi` in `1, xi, xi^2, xi^3`.
pub const PSI_IN_XI: [&str; 4] = ["-37/27", "32/45", "4/45", "-4/135"];

fn op(rows: Vec<Vec<Rat>>) -> LinearOperator {
    LinearOperator::new(rows).expect("nonzero leading coefficient")
}

fn q(s: &str) -> Rat {
    parse_rat(s).expect("literal")
}

fn qs(v: &[&str]) -> Vec<Rat> {
    v.iter().map(|s| q(s)).collect()
}

/// Fourth-order operator with exponents `0: 0, 1/3, 2/3, 1`,
/// `1: 0, 1/2, 1, 3/2`, `inf: -1/28, 3/28, 1/4, 19/28`.
pub fn hurwitz_operator() -> LinearOperator {
    op(vec![
        qs(&["-57/87808"]),
        qs(&["-39779/24696", "12297/5488"]),
        qs(&["20/9", "-5899/504", "573/56"]),
        qs(&["0", "4", "-11", "7"]),
        qs(&["0", "0", "1", "-2", "1"]),
    ])
}

/// Third-order operator with exponents `0: r, -r/2, (1-r)/2`,
/// `1: 0, 1/2, 1`, `inf: 0, 1/3, 2/3`.
pub fn u2_operator(r: &Rat) -> LinearOperator {
    let one = rat_int(1);
    op(vec![
        vec![r * r * (r - &one) / rat_int(4)],
        vec![rat_int(0), (rat_int(3) * r + rat_int(2)) * (r - &one) / rat_int(4), rat(20, 9)],
        qs(&["0", "0", "-5/2", "4"]),
        qs(&["0", "0", "0", "-1", "1"]),
    ])
}

/// Fourth-order operator with exponents `0: 0, 1/3, 2/3, 1`,
/// `1: 0, 1/2, 1, 3/2`, `inf: r, -r/3, (1-r)/3, (2-r)/3`.
pub fn u3_operator(r: &Rat) -> LinearOperator {
    let i = |n: i64| rat_int(n);
    let r2 = r * r;
    let r3 = &r2 * r;
    op(vec![
        vec![-(&r2 * (r - i(1)) * (r - i(2))) / i(27)],
        vec![
            -(i(64) * &r3 - i(192) * &r2 + i(68) * r + i(345)) / i(216),
            (i(8) * &r3 - i(33) * &r2 + i(13) * r + i(60)) / i(27),
        ],
        vec![rat(20, 9), (i(24) * &r2 - i(12) * r - i(421)) / i(36), (i(-6) * &r2 + i(3) * r + i(92)) / i(9)],
        qs(&["0", "4", "-11", "7"]),
        qs(&["0", "0", "1", "-2", "1"]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycPoly;

    #[test]
    fn list_sizes() {
        let f = finite_cases();
        assert_eq!(f.len(), 12 + 3 + 4 + 24);
        let r = rational_cases();
        assert_eq!(r.iter().filter(|c| !c.definite).count(), 38);
        assert_eq!(r.iter().filter(|c| c.definite).count(), 18);
    }

    #[test]
    fn coxeter_fixtures() {
        let t1 = coxeter_h4_t1();
        assert_eq!(t1.charpoly().unwrap(), CycPoly::from_ints(&[1, 0, -2, 0, 1]));
        let t0 = coxeter_h4_t0_order144();
        let ti = coxeter_h4_tinf_order144();
        assert!(t0.mul(&t1).unwrap().mul(&ti).unwrap().is_identity());
        assert_eq!(t0.charpoly().unwrap(), CycPoly::from_ints(&[1, -1, 0, -1, 1]));
        assert_eq!(ti.charpoly().unwrap(), CycPoly::from_ints(&[1, 0, -1, 0, 1]));
    }
}

mod common;

use proptest::prelude::*;
use rigid4::construct::{detfactor_params, goursat_params, GIISpectra};
use rigid4::exactnum::{rat, CycElt, Exponent, Rat};
use rigid4::hermitian::{arcs_definite, units};
use rigid4::obstruction::{hilbert_symbol, Place};
use rigid4::ode::{ode_coefficients, series_solutions, SingularPoint};
use rigid4::search::{arcs_definite_residues, canonical};
use rigid4::stargraph::{StarDiagram, Step};

const CONDUCTORS: [u64; 11] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24];

fn elt_in(n: u64) -> impl Strategy<Value = CycElt> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 0..=(n as usize).min(12))
        .prop_map(move |c| CycElt::normalize(n, &c.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>()).unwrap())
}

fn triple() -> impl Strategy<Value = (CycElt, CycElt, CycElt)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (elt_in(n), elt_in(n), elt_in(n)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let tol = 1e-6 * (1.0 + a.0.abs() + a.1.abs());
    (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn spectra(seed: u64) -> GIISpectra {
    common::random_spectra(&mut common::rng(seed), 60)
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-400i64..=-1, 1i64..=400], 1i64..=60).prop_map(|(p, q)| rat(p, q))
}

fn places(a: &Rat, b: &Rat) -> Vec<Place> {
    let mut m: u64 = 2;
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let v: u64 = x.magnitude().try_into().unwrap();
        m *= v;
    }
    let mut ps = vec![];
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            ps.push(Place::Prime(p));
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        ps.push(Place::Prime(m));
    }
    ps.push(Place::Infinity);
    ps
}

fn partition(n: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=n, 1..=n as usize).prop_map(move |raw| {
        let mut left = n;
        let mut out = vec![];
        for x in raw {
            let x = x.min(left);
            if x > 0 {
                out.push(x);
                left -= x;
            }
        }
        if left > 0 {
            out.push(left);
        }
        out
    })
}

fn exponent_list(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((1i64..12, 2i64..=12), len).prop_map(|v| v.iter().map(|&(k, n)| rat(k % n, n)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.norm() != rat(0, 1));
        }
    }

    #[test]
    fn galois_is_a_field_automorphism((a, b, _c) in triple(), k in 0usize..8) {
        let n = a.conductor();
        let us = units(n);
        let t = us[k % us.len()];
        prop_assert_eq!((&a * &b).galois(t).unwrap(), &a.galois(t).unwrap() * &b.galois(t).unwrap());
        prop_assert_eq!((&a + &b).galois(t).unwrap(), &a.galois(t).unwrap() + &b.galois(t).unwrap());
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
        prop_assert_eq!(a.conj().galois(t).unwrap(), a.galois(t).unwrap().conj());
    }

    #[test]
    fn embeddings_respect_arithmetic((a, b, _c) in triple(), k in 0usize..8) {
        let n = a.conductor();
        let us = units(n);
        let t = us[k % us.len()];
        prop_assert!(close((&a * &b).approx(t), cmul(a.approx(t), b.approx(t))));
        prop_assert!(close(a.galois(t).unwrap().approx(1), a.approx(t)));
        let direct = a.coeffs().iter().enumerate().fold((0.0, 0.0), |acc, (j, c)| {
            let x = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap();
            let th = 2.0 * std::f64::consts::PI * (j as f64) * (t as f64) / (n as f64);
            (acc.0 + x * th.cos(), acc.1 + x * th.sin())
        });
        prop_assert!(close(a.approx(t), direct));
    }

    #[test]
    fn lift_round_trip((a, _b, _c) in triple(), m in 1u64..5) {
        let n = a.conductor();
        let up = a.lift(n * m);
        prop_assert_eq!(&up, &a);
        prop_assert_eq!(up.reduce_conductor().conductor(), a.min_conductor());
        prop_assert_eq!(n % a.min_conductor(), 0);
    }

    #[test]
    fn hilbert_product_formula(a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat()) {
        let mut prod = 1;
        for v in places(&a, &b) {
            prod *= hilbert_symbol(&a, &b, v).unwrap();
            prop_assert_eq!(hilbert_symbol(&a, &b, v).unwrap(), hilbert_symbol(&b, &a, v).unwrap());
            prop_assert_eq!(hilbert_symbol(&a, &(-&a), v).unwrap(), 1);
        }
        prop_assert_eq!(prod, 1);
        for v in places(&a, &(&b * &c)) {
            let lhs = hilbert_symbol(&a, &(&b * &c), v).unwrap();
            prop_assert_eq!(lhs, hilbert_symbol(&a, &b, v).unwrap() * hilbert_symbol(&a, &c, v).unwrap());
        }
    }

    #[test]
    fn dmu_is_preserved_by_reduction(
        (n, parts) in (2u32..7).prop_flat_map(|n| (Just(n), prop::collection::vec(partition(n), 3..=4)))
    ) {
        let d = StarDiagram::from_partitions(n, &parts).unwrap();
        let mut want = parts.clone();
        for q in &mut want {
            q.sort_unstable_by(|a, b| b.cmp(a));
        }
        prop_assert_eq!(d.partitions(), want);
        match d.reduce_step() {
            Ok(Step::Next(trace)) => prop_assert_eq!(trace.last().unwrap().1.dmu(), d.dmu()),
            Ok(_) => {}
            Err(_) => prop_assert!(d.dmu() != 0),
        }
    }

    #[test]
    fn substitution_matches_recursion(al in exponent_list(2), ga in exponent_list(4)) {
        let alpha = (al[0].clone(), al[1].clone());
        prop_assume!(alpha.0 != rat(0, 1) && alpha.1 != rat(0, 1));
        let c = ode_coefficients(alpha, [ga[0].clone(), ga[1].clone(), ga[2].clone(), ga[3].clone()]);
        let (p0, p1) = series_solutions(&c, 30).unwrap();
        let op = c.operator();
        let one = CycElt::one(1);
        let zero = CycElt::zero(1);
        prop_assert_eq!(op.solve_by_substitution(&[one.clone(), zero.clone()], 30).unwrap(), p0.clone());
        prop_assert_eq!(op.solve_by_substitution(&[zero, one], 30).unwrap(), p1.clone());
        prop_assert!(op.apply(&p0).coeffs().iter().take(28).all(|x| x.is_zero()));
        let mut at1 = op.indicial(SingularPoint::One).unwrap().roots;
        let mut want = vec![rat(0, 1), rat(1, 1), c.beta.clone(), &c.beta + rat(1, 1)];
        at1.sort();
        want.sort();
        want.dedup();
        at1.dedup();
        prop_assert_eq!(at1, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parameter_routes_agree(seed in any::<u64>()) {
        let (s, _) = spectra(seed).normalize_twist();
        if let (Ok(p), Ok(q)) = (goursat_params(&s), detfactor_params(&s)) {
            prop_assert_eq!(p.symmetric(), q);
        }
    }

    #[test]
    fn canonical_is_idempotent_and_twist_invariant(seed in any::<u64>(), k in 0usize..16, shift in 0i64..60) {
        let s = spectra(seed);
        let c = canonical(&s);
        prop_assert_eq!(canonical(&c), c.clone());
        let us = units(s.conductor());
        let t = us[k % us.len()];
        prop_assert_eq!(canonical(&s.galois(t)), c.clone());
        prop_assert_eq!(canonical(&s.apply_twist(&Exponent::from_frac(shift, 60))), c.clone());
        let mut g = s.clone();
        g.gamma.rotate_left(k % 4);
        prop_assert_eq!(canonical(&g), c);
    }

    #[test]
    fn integer_arcs_match_exact_arcs(seed in any::<u64>()) {
        let (s, _) = spectra(seed).normalize_twist();
        if let Some(fast) = arcs_definite_residues(&s) {
            prop_assert_eq!(fast, arcs_definite(&s).unwrap().0);
        }
    }
}

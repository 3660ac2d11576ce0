mod common;

use rigid4::construct::{goursat_params, goursat_triple_from_params};
use rigid4::hermitian::{arcs_definite, hermitian_matrix, param_definite, Verdict};
use std::time::Instant;

#[test]
fn arcs_agree_with_parameters() {
    let mut rng = common::rng(7);
    let start = Instant::now();
    let mut positive = 0;
    for _ in 0..300 {
        let s = common::random_irreducible(&mut rng, 60);
        let (s, _) = s.normalize_twist();
        let p = goursat_params(&s).unwrap();
        let by_params = param_definite(&p, 1).unwrap();
        let h = hermitian_matrix(&p);
        let sig = h.signature(1).unwrap();
        let (by_arcs, _) = arcs_definite(&s).unwrap();
        assert_eq!(by_arcs, by_params == Verdict::Positive, "{s:?}");
        assert_eq!(sig.verdict().is_definite(), by_arcs, "{s:?} {sig:?}");
        if by_arcs {
            positive += 1;
            let t = goursat_triple_from_params(&s, &p).unwrap();
            assert!(h.is_invariant(&t.generators()).unwrap());
        }
    }
    eprintln!("{positive} definite, {:?}", start.elapsed());
}

#[test]
#[ignore]
fn timing_breakdown() {
    use rigid4::construct::detfactor_params;
    let mut rng = common::rng(11);
    let sample: Vec<_> = (0..300).map(|_| common::random_irreducible(&mut rng, 60).normalize_twist().0).collect();
    let t = Instant::now();
    let ps: Vec<_> = sample.iter().map(|s| goursat_params(s).unwrap()).collect();
    eprintln!("route1 {:?}", t.elapsed());
    let t = Instant::now();
    for s in &sample {
        detfactor_params(s).unwrap();
    }
    eprintln!("route2 {:?}", t.elapsed());
    let t = Instant::now();
    for p in &ps {
        param_definite(p, 1).unwrap();
    }
    eprintln!("param_definite {:?}", t.elapsed());
    let t = Instant::now();
    for (s, p) in sample.iter().zip(&ps) {
        goursat_triple_from_params(s, p).unwrap();
    }
    eprintln!("triple {:?}", t.elapsed());
    let t = Instant::now();
    for p in &ps {
        hermitian_matrix(p).signature(1).unwrap();
    }
    eprintln!("signature {:?}", t.elapsed());
}

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigid4::construct::{is_irreducible, GIISpectra};
use rigid4::exactnum::Exponent;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Valid spectra with every exponent denominator dividing some `n <= max_n`.
pub fn random_spectra(rng: &mut ChaCha8Rng, max_n: i64) -> GIISpectra {
    loop {
        let n = rng.gen_range(2..=max_n);
        let e = |k: i64| Exponent::from_frac(k, n);
        let a1 = rng.gen_range(1..n);
        let a2 = rng.gen_range(1..n);
        let b1 = rng.gen_range(0..n);
        let b2 = rng.gen_range(0..n);
        let g: Vec<i64> = (0..3).map(|_| rng.gen_range(0..n)).collect();
        let g4 = -(a1 + a2 + 2 * (b1 + b2) + g.iter().sum::<i64>());
        let gamma = [e(g[0]), e(g[1]), e(g[2]), e(g4)];
        if let Ok(s) = GIISpectra::new((e(a1), e(a2)), (e(b1), e(b2)), gamma) {
            return s;
        }
    }
}

pub fn random_irreducible(rng: &mut ChaCha8Rng, max_n: i64) -> GIISpectra {
    loop {
        let s = random_spectra(rng, max_n);
        if is_irreducible(&s).is_irreducible() {
            return s;
        }
    }
}

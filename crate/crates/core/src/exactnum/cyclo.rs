use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Precomputed reduction data for `Q(zeta_n)`.
#[derive(Debug)]
pub(crate) struct Cyclo {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of the monic cyclotomic polynomial, low degree first.
    #[allow(dead_code)]
    pub poly: Vec<i64>,
    /// `pow[k]` is `x^k mod Phi_n` for `0 <= k < n`.
    pub pow: Vec<Vec<i64>>,
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<Cyclo>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Cyclo>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn cyclo(n: u64) -> Arc<Cyclo> {
    assert!(n >= 1);
    if let Some(c) = cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut pow = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    if phi > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        pow.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] = cur[i]
                    .checked_sub(top.checked_mul(poly[i]).expect("cyclotomic reduction overflow"))
                    .expect("cyclotomic reduction overflow");
            }
        }
    }
    let c = Arc::new(Cyclo { n, phi, poly, pow });
    cache().write().unwrap().insert(n, c.clone());
    c
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut res = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            res -= res / p;
        }
        p += 1;
    }
    if n > 1 {
        res -= res / n;
    }
    res
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = exact_div(&num, &den);
        }
    }
    num.into_iter().map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64")).collect()
}

fn exact_div(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

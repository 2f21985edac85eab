//! Cyclotomic polynomials, used to split `1 - x^n` into irreducible pieces.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Dense integer coefficients, lowest degree first.
pub type Dense = Vec<i64>;

fn cache() -> &'static RwLock<HashMap<u32, Dense>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Dense>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The cyclotomic polynomial `Φ_d`.
pub fn phi(d: u32) -> Dense {
    assert!(d >= 1);
    if let Some(p) = cache().read().unwrap().get(&d) {
        return p.clone();
    }
    // y^d - 1 divided by Φ_e for every proper divisor e
    let mut p: Dense = vec![0; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in divisors(d) {
        if e < d {
            p = div_monic(&p, &phi(e));
        }
    }
    cache().write().unwrap().insert(d, p.clone());
    p
}

/// `Ψ_1(y) = 1 - y`, `Ψ_d = Φ_d` otherwise, so that `1 - y^n = ∏_{d|n} Ψ_d(y)`.
pub fn psi(d: u32) -> Dense {
    if d == 1 {
        vec![1, -1]
    } else {
        phi(d)
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn div_monic(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db];
    assert!(lb == 1 || lb == -1);
    let mut q = vec![0i64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * lb;
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

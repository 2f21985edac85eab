//! Multivariate polynomial gcd over the integers.
//!
//! Monomial and integer contents are removed first, variables occurring in
//! only one operand are eliminated through contents, and the remaining work
//! goes to the heuristic gcd (evaluation at a large integer, recursive gcd of
//! the images, balanced interpolation, trial division). When the heuristic
//! would need very large integers or keeps failing, a primitive
//! pseudo-remainder sequence finishes the job.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exps, NVARS};
use super::poly::MultiPoly;

const HEU_ATTEMPTS: usize = 6;
const HEU_MAX_BITS: u64 = 600_000;

/// Greatest common divisor with positive leading coefficient. Inputs may be
/// Laurent polynomials; the monomial part of the result is the componentwise
/// minimum of the monomial contents.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.min_exps();
    let mb = b.min_exps();
    let shift = ma.meet(&mb);
    let pa = a.shift(-ma);
    let pb = b.shift(-mb);
    gcd_poly(&pa, &pb).shift(shift)
}

/// Gcd of two genuine polynomials without monomial content handling at the
/// top level (recursion restores it).
fn gcd_poly(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.min_exps();
    let mb = b.min_exps();
    let mono = ma.meet(&mb);
    let a = a.shift(-ma);
    let b = b.shift(-mb);

    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let a = a.div_scalar_exact(&ca);
    let b = b.div_scalar_exact(&cb);

    let core = gcd_primitive(&a, &b);
    normalize_sign(core.mul_term(mono, &c))
}

/// Gcd of primitive polynomials free of monomial content.
fn gcd_primitive(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b || *a == -b {
        return normalize_sign(a.clone());
    }
    let va = a.variables();
    let vb = b.variables();
    for v in 0..NVARS {
        if va[v] && !vb[v] {
            let ca = content_in(a, v);
            return gcd_poly(&ca, b).primitive();
        }
        if vb[v] && !va[v] {
            let cb = content_in(b, v);
            return gcd_poly(a, &cb).primitive();
        }
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return normalize_sign(small.clone());
    }
    if heu_cost_bits(a, b) <= HEU_MAX_BITS {
        if let Some(g) = heu_gcd(a, b) {
            return normalize_sign(g);
        }
    }
    normalize_sign(prs_gcd(a, b))
}

fn normalize_sign(p: MultiPoly) -> MultiPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

impl MultiPoly {
    /// Divide out the integer content and fix the sign of the leading term.
    pub fn primitive(&self) -> MultiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        normalize_sign(self.div_scalar_exact(&c))
    }
}

/// Content with respect to `var`: the gcd of the coefficients of `p` viewed
/// as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let parts = p.coefficients_in(var);
    let mut parts: Vec<MultiPoly> = parts.into_iter().map(|(_, c)| c).collect();
    parts.sort_by_key(|c| c.len());
    let mut g = MultiPoly::zero();
    for c in parts {
        g = gcd_poly(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

fn heu_cost_bits(a: &MultiPoly, b: &MultiPoly) -> u64 {
    let norm_bits = bits(&a.max_abs_coeff()).min(bits(&b.max_abs_coeff())) + 8;
    let va = a.variables();
    let mut prod: u64 = 1;
    for v in 0..NVARS {
        if va[v] {
            let d = a.degree_in(v).min(b.degree_in(v)).max(0) as u64;
            prod = prod.saturating_mul(d + 1);
        }
    }
    prod.saturating_mul(norm_bits)
}

fn main_var(p: &MultiPoly) -> Option<usize> {
    let vs = p.variables();
    (0..NVARS).find(|&v| vs[v])
}

/// Heuristic gcd; `None` when every attempt failed.
fn heu_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let var = main_var(a)?;
    let an = a.max_abs_coeff();
    let bn = b.max_abs_coeff();
    let la = a.lc_in_full().abs();
    let lb = b.lc_in_full().abs();
    let bound = BigInt::from(2) * an.clone().min(bn.clone()) + BigInt::from(29);
    let root = bound.sqrt() * BigInt::from(99);
    let cand = (&an / &la).min(&bn / &lb) * BigInt::from(2) + BigInt::from(2);
    let mut x = bound.min(root).max(cand);
    for _ in 0..HEU_ATTEMPTS {
        let fa = a.eval_var(var, &x);
        let fb = b.eval_var(var, &x);
        if !fa.is_zero() && !fb.is_zero() {
            let h = gcd_poly(&fa, &fb);
            let h = interpolate(&h, &x, var).primitive();
            if !h.is_zero() && a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                return Some(h);
            }
        }
        let r = x.sqrt().sqrt();
        x = BigInt::from(73794) * &x * r / BigInt::from(27011);
    }
    None
}

impl MultiPoly {
    fn lc_in_full(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }
}

/// Recover a polynomial in `var` from its image at `x` using balanced
/// residues of each integer coefficient.
fn interpolate(h: &MultiPoly, x: &BigInt, var: usize) -> MultiPoly {
    let half = x / BigInt::from(2);
    let mut rest: Vec<(Exps, BigInt)> = h.terms().to_vec();
    let mut out: Vec<(Exps, BigInt)> = Vec::new();
    let mut power = 0i32;
    while !rest.is_empty() {
        let mut next = Vec::with_capacity(rest.len());
        for (e, c) in rest {
            let mut g = c.mod_floor(x);
            if g > half {
                g -= x;
            }
            let q = (&c - &g) / x;
            if !g.is_zero() {
                let mut f = e;
                f.0[var] += power;
                out.push((f, g));
            }
            if !q.is_zero() {
                next.push((e, q));
            }
        }
        rest = next;
        power += 1;
        if power > 100_000 {
            break;
        }
    }
    MultiPoly::from_terms(out)
}

/// Primitive pseudo-remainder sequence in the variable of largest degree.
fn prs_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let vs = a.variables();
    let var = (0..NVARS)
        .filter(|&v| vs[v])
        .max_by_key(|&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("nonconstant operands");
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd_poly(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut r = b.div_exact(&cb).expect("content divides");
    if p.degree_in(var) < r.degree_in(var) {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_zero() {
        if r.degree_in(var) == 0 {
            return c;
        }
        let rem = p.pseudo_rem(&r, var);
        p = r;
        r = if rem.is_zero() { rem } else { primitive_in(&rem, var) };
    }
    &c * &primitive_in(&p, var)
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(p, var);
    let q = p.div_exact(&c).expect("content divides");
    normalize_sign(q.primitive())
}

/// Least common multiple up to sign.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).primitive()
}

#[allow(dead_code)]
fn is_unit(p: &MultiPoly) -> bool {
    p.as_constant().map(|c| c.abs().is_one()).unwrap_or(false)
}

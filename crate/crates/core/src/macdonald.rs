//! Two independent constructions of `P_μ(x_1,…,x_m; q, t)`: the branching
//! rule and the eigenfunctions of the q-difference operator. Both feed
//! `expand_in_p`, the referee for every formula in the crate.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{poch, Exps, FactoredProduct, Monomial, MultiPoly, QtRational, Var, MAX_PARAM};
use crate::symfun::{distinct_permutations, dominance_leq, multiply, SymPoly, WireTerm};
use crate::weights::Partition;

/// Largest variable count the operator construction supports.
pub const MAX_VARS: usize = MAX_PARAM + 1;

/// `w_s(u) = (tu;q)_s / (qu;q)_s`.
fn w(s: u32, u: &Monomial) -> FactoredProduct {
    poch(&u.times_qt(0, 1), s as i32).div(&poch(&u.shift_q(1), s as i32))
}

fn qt(a: i64, b: i64) -> Monomial {
    Monomial::qt(a as i32, b as i32)
}

/// `ψ_{λ/μ}` as a product, `None` when `λ/μ` is not a horizontal strip.
pub fn psi_factored(lambda: &Partition, mu: &Partition) -> Option<FactoredProduct> {
    if !lambda.is_horizontal_strip_over(mu) {
        return None;
    }
    let l = |i: usize| lambda.get(i) as i64;
    let m = |i: usize| mu.get(i) as i64;
    let mut fp = FactoredProduct::one();
    for i in 1..=mu.len() {
        let s = (l(i) - m(i)) as u32;
        if s == 0 {
            continue;
        }
        for j in i..=mu.len() {
            let d = (j - i) as i64;
            fp.mul_assign(&w(s, &qt(m(i) - m(j), d)));
            fp.mul_assign(&w(s, &qt(m(i) - l(j + 1), d)).inv());
        }
    }
    Some(fp)
}

/// The branching coefficient `ψ_{λ/μ}`; zero off horizontal strips.
pub fn psi(lambda: &Partition, mu: &Partition) -> Result<QtRational> {
    match psi_factored(lambda, mu) {
        Some(fp) => fp.value(),
        None => Ok(QtRational::zero()),
    }
}

/// `φ_{κ/μ}`, normalized for `P_{(r)} P_μ = Σ φ_{κ/μ} P_κ`.
pub fn phi_factored(kappa: &Partition, mu: &Partition) -> Option<FactoredProduct> {
    if !kappa.is_horizontal_strip_over(mu) {
        return None;
    }
    let k = |i: usize| kappa.get(i) as i64;
    let m = |i: usize| mu.get(i) as i64;
    let r = (kappa.size() - mu.size()) as i32;
    let mut fp = poch(&Monomial::qt(1, 0), r).div(&poch(&Monomial::qt(0, 1), r));
    for i in 1..=kappa.len() {
        for j in i..=kappa.len() {
            let d = (j - i) as i64;
            fp.mul_assign(&w((k(j) - m(j)) as u32, &qt(k(i) - k(j), d)));
            fp.mul_assign(&w((k(j + 1) - m(j + 1)) as u32, &qt(m(i) - k(j + 1), d)).inv());
        }
    }
    Some(fp)
}

pub fn phi(kappa: &Partition, mu: &Partition) -> Result<QtRational> {
    match phi_factored(kappa, mu) {
        Some(fp) => fp.value(),
        None => Ok(QtRational::zero()),
    }
}

/// Partitions `ν` with `μ/ν` a horizontal strip and at most `max_len` parts.
fn strips_below(mu: &Partition, max_len: usize) -> Vec<Partition> {
    let parts = mu.parts();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(parts: &[u32], i: usize, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            let p = Partition::new(cur.clone()).unwrap();
            if p.len() <= max_len {
                out.push(p);
            }
            return;
        }
        let lo = parts.get(i + 1).copied().unwrap_or(0);
        for v in (lo..=parts[i]).rev() {
            cur.push(v);
            rec(parts, i + 1, max_len, cur, out);
            cur.pop();
        }
    }
    rec(parts, 0, max_len, &mut cur, &mut out);
    out
}

type PolyCache = RwLock<FxHashMap<(Partition, usize), Arc<SymPoly>>>;

fn branching_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `P_μ(x_1..x_m)` from `P_μ = Σ_ν ψ_{μ/ν} P_ν(x_1..x_{m-1}) x_m^{|μ/ν|}`.
pub fn p_branching(mu: &Partition, m: usize) -> Result<Arc<SymPoly>> {
    if mu.len() > m {
        return Err(Error::LengthExceedsVariables(mu.parts().to_vec(), m));
    }
    let key = (mu.clone(), m);
    if let Some(p) = branching_cache().read().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = Arc::new(build_branching(mu, m)?);
    branching_cache().write().unwrap().entry(key).or_insert(p.clone());
    Ok(p)
}

fn build_branching(mu: &Partition, m: usize) -> Result<SymPoly> {
    if m == 0 {
        return Ok(SymPoly::one(0));
    }
    // coefficient of m_κ = coefficient of x^κ, split off by the exponent of x_m
    let mut acc: BTreeMap<Partition, Vec<QtRational>> = BTreeMap::new();
    for nu in strips_below(mu, m - 1) {
        let s = mu.size() - nu.size();
        let c = psi(mu, &nu)?;
        let sub = p_branching(&nu, m - 1)?;
        for (kp, v) in sub.terms() {
            let last = if m == 1 { u32::MAX } else { kp.get(m - 1) };
            if s > last {
                continue;
            }
            let mut parts = kp.padded(m - 1);
            parts.push(s);
            acc.entry(Partition::new(parts).unwrap()).or_default().push(v * &c);
        }
    }
    let mut out = SymPoly::zero(m, mu.size());
    for (k, vs) in acc {
        out.add_term(k, vs.into_iter().sum());
    }
    Ok(out)
}

fn x(i: usize) -> Var {
    Var::U(i as u8)
}

fn x_exps(alpha: &[u32]) -> Exps {
    let mut e = Exps::ZERO;
    for (i, &a) in alpha.iter().enumerate() {
        e.0[x(i).index()] = a as i32;
    }
    e
}

/// `∏_{a<b, a,b ≠ skip} (x_a − x_b)` over `m` variables.
fn vandermonde(m: usize, skip: Option<usize>) -> MultiPoly {
    let mut out = MultiPoly::one();
    for a in 0..m {
        for b in a + 1..m {
            if Some(a) == skip || Some(b) == skip {
                continue;
            }
            out = &out * &(&MultiPoly::var(x(a)) - &MultiPoly::var(x(b)));
        }
    }
    out
}

type OperatorColumn = BTreeMap<Partition, MultiPoly>;

type OperatorCache = RwLock<FxHashMap<(Partition, usize), Arc<OperatorColumn>>>;

fn operator_cache() -> &'static OperatorCache {
    static CACHE: OnceLock<OperatorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `D m_σ` on the monomial basis; entries are polynomials in `q, t`.
pub fn operator_column(sigma: &Partition, m: usize) -> Result<Arc<OperatorColumn>> {
    if m > MAX_VARS {
        return Err(Error::InvalidArgument(format!("operator needs at most {MAX_VARS} variables")));
    }
    if sigma.len() > m {
        return Err(Error::LengthExceedsVariables(sigma.parts().to_vec(), m));
    }
    let key = (sigma.clone(), m);
    if let Some(c) = operator_cache().read().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let orbit = distinct_permutations(&sigma.padded(m));
    let t = MultiPoly::var(Var::T);
    let mut numer = MultiPoly::zero();
    for i in 0..m {
        // (−1)^i Δ_î ∏_{j≠i}(t x_i − x_j) · f(.., q x_i, ..)
        let mut coeff = vandermonde(m, Some(i));
        for j in (0..m).filter(|&j| j != i) {
            coeff = &coeff * &(&(&t * &MultiPoly::var(x(i))) - &MultiPoly::var(x(j)));
        }
        let shifted = MultiPoly::from_terms(orbit.iter().map(|alpha| {
            let mut e = x_exps(alpha);
            e.0[0] = alpha[i] as i32;
            (e, BigInt::one())
        }));
        let term = &coeff * &shifted;
        numer = if i % 2 == 0 { &numer + &term } else { &numer - &term };
    }
    let mut quotient = numer;
    for a in 0..m {
        for b in a + 1..m {
            let f = &MultiPoly::var(x(a)) - &MultiPoly::var(x(b));
            quotient = quotient.div_exact(&f).ok_or(Error::InexactDivision)?;
        }
    }
    let mut column: BTreeMap<Partition, BTreeMap<Exps, BigInt>> = BTreeMap::new();
    for (e, c) in quotient.terms() {
        let alpha: Vec<u32> = (0..m).map(|i| e.0[x(i).index()] as u32).collect();
        if alpha.windows(2).all(|w| w[0] >= w[1]) {
            let mut qt_part = Exps::ZERO;
            qt_part.0[0] = e.0[0];
            qt_part.0[1] = e.0[1];
            *column.entry(Partition::new(alpha).unwrap()).or_default().entry(qt_part).or_insert_with(BigInt::zero) += c;
        }
    }
    let column: OperatorColumn = column
        .into_iter()
        .map(|(k, terms)| (k, MultiPoly::from_terms(terms)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let column = Arc::new(column);
    operator_cache().write().unwrap().insert(key, column.clone());
    Ok(column)
}

/// `D f` with `D = Σ_i ∏_{j≠i} (t x_i − x_j)/(x_i − x_j) T_{q,x_i}`.
pub fn operator_apply(f: &SymPoly) -> Result<SymPoly> {
    let m = f.m();
    let mut acc: BTreeMap<Partition, Vec<QtRational>> = BTreeMap::new();
    for (sigma, c) in f.terms() {
        for (nu, d) in operator_column(sigma, m)?.iter() {
            acc.entry(nu.clone()).or_default().push(c * &QtRational::from_poly(d.clone()));
        }
    }
    let mut out = SymPoly::zero(m, f.degree());
    for (k, vs) in acc {
        out.add_term(k, vs.into_iter().sum());
    }
    Ok(out)
}

/// `e_μ = Σ_i q^{μ_i} t^{m−i}`.
pub fn eigenvalue(mu: &Partition, m: usize) -> MultiPoly {
    MultiPoly::from_terms((1..=m).map(|i| {
        let mut e = Exps::ZERO;
        e.0[0] = mu.get(i) as i32;
        e.0[1] = (m - i) as i32;
        (e, BigInt::one())
    }))
}

/// `P_μ` as the monic eigenfunction of `D`, by back substitution along the
/// lexicographic order (a linear extension of dominance).
pub fn p_eigen(mu: &Partition, m: usize) -> Result<SymPoly> {
    if mu.len() > m {
        return Err(Error::LengthExceedsVariables(mu.parts().to_vec(), m));
    }
    let e_mu = eigenvalue(mu, m);
    let below: Vec<Partition> = Partition::all(mu.size(), m)
        .into_iter()
        .filter(|nu| dominance_leq(nu, mu).unwrap())
        .collect();
    let columns: Vec<Arc<OperatorColumn>> = below.iter().map(|s| operator_column(s, m)).collect::<Result<_>>()?;
    let mut c: BTreeMap<Partition, QtRational> = BTreeMap::new();
    c.insert(mu.clone(), QtRational::one());
    for nu in below.iter().skip(1) {
        let mut rhs = Vec::new();
        for (sigma, col) in below.iter().zip(&columns) {
            if sigma <= nu {
                continue;
            }
            if let (Some(cs), Some(d)) = (c.get(sigma), col.get(nu)) {
                rhs.push(cs * &QtRational::from_poly(d.clone()));
            }
        }
        let gap = &e_mu - &eigenvalue(nu, m);
        if gap.is_zero() {
            return Err(Error::EigenvalueCollision(mu.parts().to_vec(), nu.parts().to_vec()));
        }
        let v: QtRational = rhs.into_iter().sum();
        let v = v.checked_div(&QtRational::from_poly(gap))?;
        if !v.is_zero() {
            c.insert(nu.clone(), v);
        }
    }
    Ok(SymPoly::from_terms(m, mu.size(), c))
}

/// Finite combination `Σ c_κ P_κ` in `m` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PExpansionWire", try_from = "PExpansionWire")]
pub struct PExpansion {
    pub m: usize,
    pub terms: BTreeMap<Partition, QtRational>,
}

#[derive(Serialize, Deserialize)]
struct PExpansionWire {
    basis: String,
    m: usize,
    degree: u32,
    terms: Vec<WireTerm>,
}

impl From<PExpansion> for PExpansionWire {
    fn from(e: PExpansion) -> PExpansionWire {
        let degree = e.terms.keys().next().map_or(0, |k| k.size());
        let terms = e.terms.into_iter().rev().map(|(partition, coeff)| WireTerm { partition, coeff }).collect();
        PExpansionWire { basis: "P".into(), m: e.m, degree, terms }
    }
}

impl TryFrom<PExpansionWire> for PExpansion {
    type Error = Error;
    fn try_from(w: PExpansionWire) -> Result<PExpansion> {
        if w.basis != "P" {
            return Err(Error::Parse(format!("expected basis \"P\", got {:?}", w.basis)));
        }
        let mut terms = BTreeMap::new();
        for t in w.terms {
            if t.partition.len() > w.m {
                return Err(Error::LengthExceedsVariables(t.partition.parts().to_vec(), w.m));
            }
            if !t.coeff.is_zero() {
                terms.insert(t.partition, t.coeff);
            }
        }
        Ok(PExpansion { m: w.m, terms })
    }
}

impl PExpansion {
    pub fn coeff(&self, kappa: &Partition) -> QtRational {
        self.terms.get(kappa).cloned().unwrap_or_else(QtRational::zero)
    }

    /// Back to the monomial basis.
    pub fn to_sympoly(&self, degree: u32) -> Result<SymPoly> {
        let mut out = SymPoly::zero(self.m, degree);
        for (k, c) in &self.terms {
            out.add_scaled(&*p_branching(k, self.m)?, c);
        }
        Ok(out)
    }
}

/// Triangular elimination against the branching oracle.
pub fn expand_in_p(f: &SymPoly) -> Result<PExpansion> {
    let mut rest = f.clone();
    let mut terms = BTreeMap::new();
    while let Some((kappa, c)) = rest.leading() {
        let (kappa, c) = (kappa.clone(), c.clone());
        let p = p_branching(&kappa, f.m())?;
        rest.add_scaled(&p, &-&c);
        debug_assert!(rest.coeff(&kappa).is_zero());
        terms.insert(kappa, c);
    }
    Ok(PExpansion { m: f.m(), terms })
}

/// `P_a · P_b` expanded in the P basis.
pub fn product_in_p(a: &Partition, b: &Partition, m: usize) -> Result<PExpansion> {
    let prod = multiply(&*p_branching(a, m)?, &*p_branching(b, m)?)?;
    expand_in_p(&prod)
}

/// `P_μ` at `q = t`, the Schur polynomial.
pub fn schur_specialize(mu: &Partition, m: usize) -> Result<SymPoly> {
    let p = p_branching(mu, m)?;
    let t = QtRational::var(Var::T);
    p.map_coeffs(|c| c.substitute(&[(Var::Q, t.clone())]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_rational;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn r(s: &str) -> QtRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn two_row_in_two_variables() {
        let expected = SymPoly::from_terms(2, 2, [(p(&[2]), QtRational::one()), (p(&[1, 1]), r("(1+q)*(1-t)/(1-q*t)"))]);
        assert_eq!(*p_branching(&p(&[2]), 2).unwrap(), expected);
        assert_eq!(p_eigen(&p(&[2]), 2).unwrap(), expected);
    }

    #[test]
    fn column_is_elementary() {
        for m in 1..=4 {
            let ones = p(&vec![1; m]);
            assert_eq!(*p_branching(&ones, m).unwrap(), SymPoly::monomial(ones.clone(), m));
        }
    }

    #[test]
    fn operator_on_constants() {
        for m in 2..=3 {
            let d = operator_apply(&SymPoly::one(m)).unwrap();
            let expect: QtRational = (0..m).map(|i| QtRational::var(Var::T).pow(i as i32).unwrap()).sum();
            assert_eq!(d, SymPoly::term(Partition::empty(), m, expect));
        }
    }

    #[test]
    fn eigen_relation_21() {
        let mu = p(&[2, 1]);
        let pm = p_branching(&mu, 3).unwrap();
        let d = operator_apply(&pm).unwrap();
        assert_eq!(d, pm.scale(&QtRational::from_poly(eigenvalue(&mu, 3))));
    }

    #[test]
    fn square_of_p1() {
        let e = product_in_p(&p(&[1]), &p(&[1]), 2).unwrap();
        assert_eq!(e.coeff(&p(&[2])), QtRational::one());
        assert_eq!(e.coeff(&p(&[1, 1])), r("(1-q)*(1+t)/(1-q*t)"));
        assert_eq!(phi(&p(&[1, 1]), &p(&[1])).unwrap(), r("(1-q)*(1+t)/(1-q*t)"));
        assert_eq!(phi(&p(&[2]), &p(&[1])).unwrap(), QtRational::one());
    }

    #[test]
    fn schur_21() {
        let s = schur_specialize(&p(&[2, 1]), 3).unwrap();
        let expected = SymPoly::from_terms(3, 3, [(p(&[2, 1]), QtRational::one()), (p(&[1, 1, 1]), QtRational::from_i64(2))]);
        assert_eq!(s, expected);
    }
}

//! Pieri coefficients `d_θ`, `d̂_θ`, `d̃_θ`, `D_θ` and the two Pieri
//! expansions of `P_{rω_1} P_λ`.
//!
//! Every coefficient is assembled as a [`FactoredProduct`] over monomial
//! arguments `u_i`. The arguments are either instantiated from a weight
//! (`q^a t^b`) or left symbolic (`u0`, `u1`, ...), in which case an identity
//! checked once covers every weight at the same shape.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{poch, poch_ratio, FactoredProduct, Monomial, QtRational, Var};
use crate::weights::{multi_indices, rho_full, rho_offset, shift_weight, DominantWeight, Variant};

fn q() -> Monomial {
    Monomial::qt(1, 0)
}

fn t() -> Monomial {
    Monomial::qt(0, 1)
}

fn qt(a: i64, b: i64) -> Monomial {
    Monomial::qt(a as i32, b as i32)
}

fn sum(theta: &[u32]) -> i64 {
    theta.iter().map(|&x| x as i64).sum()
}

/// `(q;q)_r / (t;q)_r`.
fn normalizer(r: i64) -> FactoredProduct {
    poch_ratio(&q(), &t(), r as i32)
}

/// `(t;q)_s / (q;q)_s`.
fn tq(s: i64) -> FactoredProduct {
    poch_ratio(&t(), &q(), s as i32)
}

/// `(t v_i/v_j)_s/(q v_i/v_j)_s · (q u_i/t v_j)_s/(u_i/v_j)_s`.
fn pair_block(ui: &Monomial, vi: &Monomial, vj: &Monomial, s: i64) -> FactoredProduct {
    let s = s as i32;
    let ratio = vi.div(vj);
    let mut fp = poch_ratio(&ratio.times_qt(0, 1), &ratio.times_qt(1, 0), s);
    let uv = ui.div(vj);
    fp.mul_assign(&poch_ratio(&uv.times_qt(1, -1), &uv, s));
    fp
}

/// `v_i = q^{θ_i} u_i`.
fn shifted(u: &[Monomial], theta: &[i64]) -> Vec<Monomial> {
    u.iter().zip(theta).map(|(ui, &th)| ui.shift_q(th as i32)).collect()
}

/// `u_i = q^{Σ_{j≥i} λ_j} t^{−i}` for `1 ≤ i ≤ n+1` (stored 0-based).
pub fn u_pieri(lambda: &DominantWeight) -> Vec<Monomial> {
    let n = lambda.n();
    (1..=n + 1)
        .map(|i| {
            let s: i64 = (i..=n).map(|j| lambda.get(j) as i64).sum();
            qt(s, -(i as i64))
        })
        .collect()
}

/// `u_0 … u_{n−1}` of the reduced Pieri formula (`λ_k = 0`).
pub fn u_pieri_reduced(lambda: &DominantWeight, k: usize, r: i64) -> Vec<Monomial> {
    let n = lambda.n();
    let l = |j: usize| lambda.get(j) as i64;
    let mut u = vec![qt(-r, -2)];
    for i in 1..n {
        let (a, b) = if i < k {
            (-r + (i..k).map(l).sum::<i64>(), k as i64 - i as i64 - 1)
        } else {
            (-r - (k + 1..=i + 1).map(l).sum::<i64>(), k as i64 - i as i64 - 3)
        };
        u.push(qt(a, b));
    }
    u
}

/// Symbolic parameters `u0, …, u_{count−1}`.
pub fn symbolic_u(count: usize) -> Vec<Monomial> {
    (0..count).map(|i| Monomial::var(Var::U(i as u8))).collect()
}

/// `d_θ(u_1,…,u_{n+1}; r)` with `θ ∈ ℕ^{n+1}`; `u` is 0-based.
pub fn d_factored(u: &[Monomial], r: i64, theta: &[u32]) -> Result<FactoredProduct> {
    if u.len() != theta.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: theta.len() });
    }
    let th: Vec<i64> = theta.iter().map(|&x| x as i64).collect();
    let v = shifted(u, &th);
    let mut fp = normalizer(r);
    for &s in &th {
        fp.mul_assign(&tq(s));
    }
    for j in 0..u.len() {
        for i in 0..j {
            fp.mul_assign(&pair_block(&u[i], &v[i], &v[j], th[j]));
        }
    }
    Ok(fp)
}

/// The Pieri coefficient for `P_{rω_1} P_λ` at `θ ∈ ℕ^{n+1}`, `|θ| = r`.
pub fn d_coeff(lambda: &DominantWeight, r: i64, theta: &[u32]) -> Result<QtRational> {
    if sum(theta) != r {
        return Err(Error::InvalidArgument(format!("|θ| = {} but r = {r}", sum(theta))));
    }
    d_factored(&u_pieri(lambda), r, theta)?.value()
}

/// `d̂_θ` with `θ_k` replaced by `r − |θ|` (`θ` has a zero in slot `k`,
/// 1-based).
pub fn dhat_factored(u: &[Monomial], r: i64, k: usize, theta: &[u32]) -> Result<FactoredProduct> {
    let len = u.len();
    if theta.len() != len {
        return Err(Error::DimensionMismatch { expected: len, got: theta.len() });
    }
    if k == 0 || k >= len {
        return Err(Error::KOutOfRange { k, n: len - 1 });
    }
    if theta[k - 1] != 0 {
        return Err(Error::InvalidArgument(format!("θ_{k} must be 0")));
    }
    let s = r - sum(theta);
    if s < 0 {
        return Ok(FactoredProduct::zero());
    }
    let mut th: Vec<i64> = theta.iter().map(|&x| x as i64).collect();
    th[k - 1] = s;
    let v = shifted(u, &th);
    let kk = k - 1;
    let mut fp = normalizer(r);
    fp.mul_assign(&tq(s));
    for j in (0..len).filter(|&j| j != kk) {
        fp.mul_assign(&tq(th[j]));
    }
    for j in (0..len).filter(|&j| j != kk) {
        for i in 0..j {
            fp.mul_assign(&pair_block(&u[i], &v[i], &v[j], th[j]));
        }
    }
    for i in 0..kk {
        fp.mul_assign(&pair_block(&u[i], &v[i], &v[kk], s));
    }
    Ok(fp)
}

/// Places `θ ∈ ℕ^{n−1}` into `ℕ^{n+1}` with zeros in slots `k`, `k+1`.
pub fn pad_theta(theta: &[u32], k: usize) -> Vec<u32> {
    let mut full = Vec::with_capacity(theta.len() + 2);
    full.extend_from_slice(&theta[..k - 1]);
    full.extend([0, 0]);
    full.extend_from_slice(&theta[k - 1..]);
    full
}

/// `d̃_θ(u_1,…,u_{k−1},u_k,u_{k+2},…,u_{n+1}; k, r)` for `θ ∈ ℕ^{n−1}`.
/// `u` holds all of `u_1..u_{n+1}`; the entry `u_{k+1}` is not read.
pub fn dtilde_factored(u: &[Monomial], r: i64, k: usize, theta: &[u32]) -> Result<FactoredProduct> {
    let len = u.len();
    if k == 0 || k + 1 > len {
        return Err(Error::KOutOfRange { k, n: len - 1 });
    }
    if theta.len() + 2 != len {
        return Err(Error::DimensionMismatch { expected: len - 2, got: theta.len() });
    }
    let s = r - sum(theta);
    if s < 0 {
        return Ok(FactoredProduct::zero());
    }
    let full = pad_theta(theta, k);
    let mut th: Vec<i64> = full.iter().map(|&x| x as i64).collect();
    th[k - 1] = s;
    let v = shifted(u, &th);
    let (kk, k1) = (k - 1, k);
    let outside = |i: usize| i != kk && i != k1;
    let mut fp = normalizer(r);
    fp.mul_assign(&tq(s));
    for i in (0..len).filter(|&i| outside(i)) {
        fp.mul_assign(&tq(th[i]));
    }
    for j in (0..len).filter(|&j| outside(j)) {
        for i in (0..j).filter(|&i| outside(i)) {
            fp.mul_assign(&pair_block(&u[i], &v[i], &v[j], th[j]));
        }
    }
    for i in 0..kk {
        fp.mul_assign(&pair_block(&u[i], &v[i], &v[kk], s));
    }
    for j in k + 1..len {
        let ratio = v[kk].div(&v[j]);
        let s_j = th[j] as i32;
        fp.mul_assign(&poch_ratio(&ratio.times_qt(0, 1), &ratio.times_qt(1, 0), s_j));
        let uv = u[kk].div(&v[j]);
        fp.mul_assign(&poch_ratio(&uv.times_qt(1, -2), &uv.times_qt(0, -1), s_j));
    }
    Ok(fp)
}

/// `D_θ(u_0,…,u_{n−1}; k, r)` for `θ ∈ ℕ^{n−1}`.
pub fn big_d_factored(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<FactoredProduct> {
    let n = u.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if theta.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, got: theta.len() });
    }
    let total = sum(theta);
    let tt = total as i32;
    let th: Vec<i64> = std::iter::once(0).chain(theta.iter().map(|&x| x as i64)).collect();
    let v = shifted(u, &th);
    let u0 = &u[0];
    let mut fp = FactoredProduct::monomial(qt(total, -total));
    fp.mul_assign(&poch_ratio(&u0.times_qt(0, 2), &u0.times_qt(1, 1), tt));
    for i in 1..n {
        let s = th[i] as i32;
        fp.mul_assign(&tq(th[i]));
        fp.mul_assign(&poch_ratio(&u[i].shift_q(tt + 1), &u[i].times_qt(tt, 1), s));
    }
    for j in 1..n {
        for i in 1..j {
            fp.mul_assign(&pair_block(&u[i], &v[i], &v[j], th[j]));
        }
    }
    for i in 1..k {
        let s = th[i] as i32;
        let m = (th[i] - r + total) as i32;
        let a = u[i].div(u0);
        fp.mul_assign(&poch_ratio(&a, &a.times_qt(1, -1), s));
        fp.mul_assign(&poch_ratio(&a.times_qt(1, -1), &a, m));
        fp.mul_assign(&poch_ratio(&a.times_qt(0, -1), &a.times_qt(1, -2), m));
    }
    for i in k..n {
        let a = u[i].div(u0);
        fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a.times_qt(1, 0), th[i] as i32));
    }
    Ok(fp)
}

/// The relabelled arguments `w_0, …, w_{n−1}` built from `u_1..u_{n+1}`.
pub fn reduced_w(u: &[Monomial], k: usize, r: i64) -> Vec<Monomial> {
    let n = u.len() - 1;
    let uk = &u[k - 1];
    let mut w = vec![qt(-r, -2)];
    for i in 1..n {
        let src = if i < k { &u[i - 1] } else { &u[i + 1] };
        w.push(src.div(uk).times_qt(-r as i32, -1));
    }
    w
}

/// `u_1..u_{n+1}` symbolic, except `u_{k+1} = u_k / t`.
pub fn symbolic_u_with_gap(n: usize, k: usize) -> Vec<Monomial> {
    let sym = symbolic_u(n);
    let mut u = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        if i <= k {
            u.push(sym[i - 1].clone());
        } else if i == k + 1 {
            u.push(sym[k - 1].times_qt(0, -1));
        } else {
            u.push(sym[i - 2].clone());
        }
    }
    u
}

/// `D_θ(w; k, r) = d̃_{(θ_1..θ_{k−1},0,0,θ_k..)}(u; k, r)` for the given `u`.
pub fn reduced_d_holds(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<bool> {
    let lhs = big_d_factored(&reduced_w(u, k, r), k, r, theta)?;
    let rhs = dtilde_factored(u, r, k, theta)?;
    lhs.same_value(&rhs)
}

/// The reduction identity at the weight `λ` (requires `λ_k = 0`).
pub fn reduced_d_check(lambda: &DominantWeight, k: usize, r: i64, theta: &[u32]) -> Result<bool> {
    require_lambda_k_zero(lambda, k)?;
    reduced_d_holds(&u_pieri(lambda), k, r, theta)
}

/// The reduction identity with symbolic `u_1..u_{n+1}` (`u_{k+1} = u_k/t`).
pub fn reduced_d_symbolic(n: usize, k: usize, r: i64, theta: &[u32]) -> Result<bool> {
    reduced_d_holds(&symbolic_u_with_gap(n, k), k, r, theta)
}

fn require_lambda_k_zero(lambda: &DominantWeight, k: usize) -> Result<()> {
    if k == 0 || k > lambda.n() {
        return Err(Error::KOutOfRange { k, n: lambda.n() });
    }
    if lambda.get(k) != 0 {
        return Err(Error::LambdaKNonzero { k, value: lambda.get(k) });
    }
    Ok(())
}

pub fn dhat_coeff(lambda: &DominantWeight, r: i64, k: usize, theta: &[u32]) -> Result<QtRational> {
    dhat_factored(&u_pieri(lambda), r, k, theta)?.value()
}

pub fn dtilde_coeff(lambda: &DominantWeight, r: i64, k: usize, theta: &[u32]) -> Result<QtRational> {
    require_lambda_k_zero(lambda, k)?;
    dtilde_factored(&u_pieri(lambda), r, k, theta)?.value()
}

/// `D_θ` on explicit arguments, simplified symbolically before the values
/// of `u` are substituted.
pub fn big_d_coeff(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<QtRational> {
    specialize_after_cancel(u, |sym| big_d_factored(sym, k, r, theta))?.value()
}

/// Builds `f` on symbolic arguments, then substitutes `u`.
pub(crate) fn specialize_after_cancel(
    u: &[Monomial],
    f: impl Fn(&[Monomial]) -> Result<FactoredProduct>,
) -> Result<FactoredProduct> {
    let sym = symbolic_u(u.len());
    let generic = f(&sym)?;
    let assignment: Vec<(Var, Monomial)> = u.iter().enumerate().map(|(i, m)| (Var::U(i as u8), m.clone())).collect();
    Ok(generic.specialize(&assignment))
}

/// One term `coeff · P_target` of a Pieri expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriTerm {
    pub theta: Vec<u32>,
    pub coeff: QtRational,
    pub target: DominantWeight,
}

fn dominant_target(shifted: Vec<i64>) -> Result<DominantWeight> {
    DominantWeight::from_signed(&shifted).ok_or(Error::NonDominantTarget(shifted))
}

/// `P_{rω_1} P_λ = Σ_{|θ|=r} d_θ P_{λ+ρ}`; zero terms are dropped, terms are
/// in colex order of `θ`.
pub fn pieri_expand(lambda: &DominantWeight, r: u32) -> Result<Vec<PieriTerm>> {
    let n = lambda.n();
    let u = u_pieri(lambda);
    let mut out = Vec::new();
    for theta in multi_indices(n + 1, r, true) {
        let c = d_factored(&u, r as i64, &theta)?.value()?;
        if c.is_zero() {
            continue;
        }
        let target = dominant_target(shift_weight(lambda, &rho_full(&theta)))?;
        out.push(PieriTerm { theta, coeff: c, target });
    }
    Ok(out)
}

/// The reduced expansion for `λ_k = 0`, summing over `θ ∈ ℕ^{n−1}`, `|θ| ≤ r`.
pub fn pieri_expand_reduced(lambda: &DominantWeight, r: u32, k: usize) -> Result<Vec<PieriTerm>> {
    require_lambda_k_zero(lambda, k)?;
    let n = lambda.n();
    let u = u_pieri_reduced(lambda, k, r as i64);
    let generic = |theta: &[u32]| specialize_after_cancel(&u, |sym| big_d_factored(sym, k, r as i64, theta));
    let mut out = Vec::new();
    for theta in multi_indices(n - 1, r, false) {
        let c = generic(&theta)?.value()?;
        if c.is_zero() {
            continue;
        }
        let rho = rho_offset(&theta, k, r as i64, n, Variant::Pieri)?;
        let target = dominant_target(shift_weight(lambda, &rho.value))?;
        out.push(PieriTerm { theta, coeff: c, target });
    }
    Ok(out)
}

/// The full-length `θ ∈ ℕ^{n+1}` matching a reduced index: `θ_k = r − |θ|`,
/// `θ_{k+1} = 0`.
pub fn unreduce_theta(theta: &[u32], k: usize, r: u32) -> Vec<u32> {
    let mut full = pad_theta(theta, k);
    full[k - 1] = r - theta.iter().sum::<u32>();
    full
}

/// `(q;q)_r`, exposed for callers that assemble normalizations.
pub fn qq(r: i32) -> FactoredProduct {
    poch(&q(), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_rational;

    fn w(v: &[u32]) -> DominantWeight {
        DominantWeight::new(v.to_vec())
    }

    #[test]
    fn leading_coefficient_is_one() {
        for lam in [w(&[0]), w(&[2]), w(&[1, 0]), w(&[1, 2])] {
            for r in 0..3 {
                let mut theta = vec![0; lam.n() + 1];
                theta[0] = r;
                assert!(d_coeff(&lam, r as i64, &theta).unwrap().is_one());
            }
        }
    }

    #[test]
    fn square_of_omega1() {
        let terms = pieri_expand(&w(&[1]), 1).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].target, w(&[2]));
        assert!(terms[0].coeff.is_one());
        assert_eq!(terms[1].target, w(&[0]));
        assert_eq!(terms[1].coeff, parse_rational("(1-q)*(1+t)/(1-q*t)").unwrap());
    }

    #[test]
    fn dhat_matches_d() {
        let lam = w(&[1, 0]);
        let a = dhat_coeff(&lam, 1, 2, &[1, 0, 0]).unwrap();
        let b = d_coeff(&lam, 1, &[1, 0, 0]).unwrap();
        assert_eq!(a, b);
        assert!(dhat_coeff(&lam, 1, 2, &[1, 0, 1]).unwrap().is_zero());
    }

    #[test]
    fn big_d_trivial_theta() {
        let u = symbolic_u(3);
        assert!(big_d_factored(&u, 1, 2, &[0, 0]).unwrap().value().unwrap().is_one());
        assert!(big_d_factored(&u, 3, 0, &[0, 0]).unwrap().value().unwrap().is_one());
        // for k > 1 the θ = 0 term carries the negative-index block
        assert!(!big_d_factored(&u, 2, 2, &[0, 0]).unwrap().value().unwrap().is_one());
    }

    #[test]
    fn reduced_d_small_cases() {
        for r in 0..3 {
            for theta in multi_indices(1, 2, false) {
                assert!(reduced_d_symbolic(2, 1, r, &theta).unwrap(), "k=1 r={r} θ={theta:?}");
                assert!(reduced_d_symbolic(2, 2, r, &theta).unwrap(), "k=2 r={r} θ={theta:?}");
            }
        }
    }
}

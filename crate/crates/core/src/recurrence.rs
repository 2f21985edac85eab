//! Recurrence coefficients `C_θ`, the expansions of `P_λ` in products
//! `P_{r'ω_1} P_μ`, the normalization `b_λ`, and the rank 2 and rank 3
//! closed forms.
//!
//! `C_θ` is a factored product times a determinant quotient. Both are
//! rational functions of the arguments `u_0, …, u_{n−1}`; at special weights
//! individual factors may read `0/0` although the whole coefficient is
//! regular. [`regular_value`] resolves this by moving the arguments along a
//! one-parameter deformation and taking the value at the end point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::macdonald::p_branching;
use crate::pieri::{big_d_factored, specialize_after_cancel, symbolic_u, u_pieri_reduced};
use crate::ring::{poch_inv_q, poch_ratio, Evaluation, FactoredProduct, Monomial, QtRational, Var, MAX_PARAM};
use crate::symfun::{multiply, SymPoly};
use crate::weights::{
    multi_indices, reduce_partition, rho_offset, shift_weight, weight_to_partition, DominantWeight, Partition,
    Variant,
};

fn qt(a: i64, b: i64) -> Monomial {
    Monomial::qt(a as i32, b as i32)
}

fn sum(theta: &[u32]) -> i64 {
    theta.iter().map(|&x| x as i64).sum()
}

fn mono(m: &Monomial) -> QtRational {
    QtRational::from_monomial(m)
}

/// `1 - m`.
fn om(m: &Monomial) -> QtRational {
    QtRational::one() - mono(m)
}

fn frac(a: QtRational, b: QtRational) -> Result<QtRational> {
    a.checked_div(&b)
}

/// Evaluates `f` at `args`; if some intermediate factor is singular there,
/// evaluates along `args_i z^{i+1}` instead and sets `z = 1`. The answer is
/// the value of the rational function whenever it is regular at `args`.
pub fn regular_value(args: &[Monomial], f: impl Fn(&[Monomial]) -> Result<QtRational>) -> Result<QtRational> {
    match f(args) {
        Err(Error::Pole(_) | Error::DenominatorVanishes | Error::VandermondeSingular) => {}
        other => return other,
    }
    let z = Var::U(MAX_PARAM as u8);
    assert!(args.iter().all(|a| a.exps.get(z) == 0), "deformation variable already in use");
    let deformed: Vec<Monomial> = args
        .iter()
        .enumerate()
        .map(|(i, a)| a.mul(&Monomial::var(z).pow(i as i32 + 1)))
        .collect();
    f(&deformed)?
        .substitute(&[(z, QtRational::one())])
        .map_err(|_| Error::Pole("coefficient is singular at these arguments".into()))
}

/// `det[v_i^{m−j}(1 − t^{j−1} (1−tv_i)/(1−v_i) ∏_s (v_i−u_s)/(v_i−tu_s))] / Δ(v)`
/// for `u = (u_1..u_m)`, `v_i = q^{θ_i} u_i`.
pub fn det_quotient(u: &[Monomial], theta: &[u32]) -> Result<QtRational> {
    let m = u.len();
    if theta.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: theta.len() });
    }
    let v: Vec<Monomial> = u.iter().zip(theta).map(|(x, &s)| x.shift_q(s as i32)).collect();
    let t = QtRational::var(Var::T);
    let mut rows = Vec::with_capacity(m);
    for (i, vi) in v.iter().enumerate() {
        // for θ_i = 0 the factor v_i − u_i vanishes identically
        let ratio = if theta[i] == 0 {
            QtRational::zero()
        } else {
            let mut ratio = frac(om(&vi.times_qt(0, 1)), om(vi))?;
            for us in u {
                ratio = &ratio * &frac(mono(vi) - mono(us), mono(vi) - mono(&us.times_qt(0, 1)))?;
            }
            ratio
        };
        let row = (0..m)
            .map(|j| mono(&vi.pow((m - 1 - j) as i32)) * (QtRational::one() - &t.pow(j as i32).unwrap() * &ratio))
            .collect();
        rows.push(row);
    }
    let det = linalg::det(&rows)?;
    let mut delta = QtRational::one();
    for i in 0..m {
        for j in i + 1..m {
            let d = mono(&v[i]) - mono(&v[j]);
            if d.is_zero() {
                return Err(Error::VandermondeSingular);
            }
            delta = &delta * &d;
        }
    }
    frac(det, delta)
}

/// The product part of `C_θ(u_0,…,u_{n−1}; k, r)`, everything except the
/// determinant quotient.
pub fn c_product_factored(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<FactoredProduct> {
    let n = u.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if theta.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, got: theta.len() });
    }
    let total = sum(theta);
    let th: Vec<i32> = std::iter::once(0).chain(theta.iter().map(|&x| x as i32)).collect();
    let v: Vec<Monomial> = u.iter().zip(&th).map(|(x, &s)| x.shift_q(s)).collect();
    let u0 = &u[0];
    let r = r as i32;
    let mut fp = FactoredProduct::monomial(qt(total, 0));
    fp.mul_assign(&poch_ratio(&u0.times_qt(0, 2), &u0.times_qt(1, 1), total as i32));
    for i in 1..n {
        fp.mul_assign(&poch_ratio(&qt(1, -1), &qt(1, 0), th[i]));
        fp.mul_assign(&poch_ratio(&u[i].shift_q(1), &u[i].times_qt(1, 1), th[i]));
    }
    for j in 1..n {
        for i in 1..j {
            let ratio = v[i].div(&v[j]);
            fp.mul_assign(&poch_ratio(&ratio.times_qt(1, -1), &ratio.shift_q(1), th[j]));
            let a = u[i].div(&v[j]);
            fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a, th[j]));
        }
    }
    for i in 1..k {
        let a = u[i].div(u0);
        fp.mul_assign(&poch_ratio(&a.times_qt(0, -1), &a.times_qt(1, -2), th[i]));
        let b = u0.div(&u[i]);
        fp.mul_assign(&poch_ratio(&b.times_qt(1, 1), &b.times_qt(0, 2), r));
        fp.mul_assign(&poch_ratio(&b.times_qt(0, 1), &b.shift_q(1), r));
    }
    for i in k..n {
        let a = u[i].div(u0);
        fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a.shift_q(1), th[i]));
    }
    Ok(fp)
}

fn c_direct(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<QtRational> {
    let prod = specialize_after_cancel(u, |s| c_product_factored(s, k, r, theta))?.evaluate();
    if prod == Evaluation::Pole {
        return Err(Error::Pole("product part of C".into()));
    }
    let det = det_quotient(&u[1..], theta)?;
    match prod {
        Evaluation::Value(p) => Ok(p * det),
        _ => Ok(QtRational::zero()),
    }
}

/// `C_θ(u_0,…,u_{n−1}; k, r)`.
pub fn c_coeff(u: &[Monomial], k: usize, r: i64, theta: &[u32]) -> Result<QtRational> {
    regular_value(u, |a| c_direct(a, k, r, theta))
}

/// `u_0 … u_{n−1}` of the recurrence for arbitrary dominant `λ`.
pub fn u_recurrence(lambda: &DominantWeight, k: usize) -> Vec<Monomial> {
    let n = lambda.n();
    let l = |j: usize| lambda.get(j) as i64;
    let mut u = vec![qt(-l(k), -2)];
    for i in 1..n {
        let (a, b) = if i < k {
            ((i..k).map(l).sum::<i64>(), k as i64 - i as i64 - 1)
        } else {
            (-(k..=i + 1).map(l).sum::<i64>(), k as i64 - i as i64 - 3)
        };
        u.push(qt(a, b));
    }
    u
}

/// One term `coeff · P_{r'ω_1} · P_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceTerm {
    pub theta: Vec<u32>,
    pub coeff: QtRational,
    pub row_factor: u32,
    pub target: DominantWeight,
}

fn check_k(lambda: &DominantWeight, k: usize) -> Result<()> {
    if k == 0 || k > lambda.n() {
        return Err(Error::KOutOfRange { k, n: lambda.n() });
    }
    Ok(())
}

fn legal_target(shifted: Vec<i64>, k: usize) -> Result<DominantWeight> {
    match DominantWeight::from_signed(&shifted) {
        Some(w) if w.get(k) == 0 => Ok(w),
        _ => Err(Error::NonDominantTarget(shifted)),
    }
}

fn expand_with(
    base: &DominantWeight,
    u: &[Monomial],
    k: usize,
    r: u32,
) -> Result<Vec<RecurrenceTerm>> {
    let n = base.n();
    let mut out = Vec::new();
    for theta in multi_indices(n - 1, r, false) {
        let c = c_coeff(u, k, r as i64, &theta)?;
        if c.is_zero() {
            continue;
        }
        let rho = rho_offset(&theta, k, r as i64, n, Variant::Recurrence)?;
        let target = legal_target(shift_weight(base, &rho.value), k)?;
        let row_factor = r - theta.iter().sum::<u32>();
        out.push(RecurrenceTerm { theta, coeff: c, row_factor, target });
    }
    Ok(out)
}

/// `λ − λ_k ε_k` with `ε_k = ω_k − ω_{k−1}`.
pub fn strip_k(lambda: &DominantWeight, k: usize) -> DominantWeight {
    let mut c = lambda.coords().to_vec();
    let lk = c[k - 1];
    c[k - 1] = 0;
    if k >= 2 {
        c[k - 2] += lk;
    }
    DominantWeight::new(c)
}

/// `λ + r ε_k`; `None` when it leaves the dominant chamber.
pub fn add_k(lambda: &DominantWeight, k: usize, r: u32) -> Option<DominantWeight> {
    let mut c = lambda.signed();
    c[k - 1] += r as i64;
    if k >= 2 {
        c[k - 2] -= r as i64;
    }
    DominantWeight::from_signed(&c)
}

/// `P_λ = Σ_{|θ| ≤ λ_k} C_θ P_{(λ_k−|θ|)ω_1} P_{μ+ρ}`, `μ = λ − λ_k ε_k`.
pub fn recurrence_expand(lambda: &DominantWeight, k: usize) -> Result<Vec<RecurrenceTerm>> {
    check_k(lambda, k)?;
    let u = u_recurrence(lambda, k);
    expand_with(&strip_k(lambda, k), &u, k, lambda.get(k))
}

/// The expansion of `P_{λ + r ε_k}` for `λ_k = 0`, in the parameters of `λ`.
pub fn recurrence_expand_shifted(lambda: &DominantWeight, k: usize, r: u32) -> Result<Vec<RecurrenceTerm>> {
    check_k(lambda, k)?;
    if lambda.get(k) != 0 {
        return Err(Error::LambdaKNonzero { k, value: lambda.get(k) });
    }
    if k >= 2 && r > lambda.get(k - 1) {
        return Err(Error::ROutOfRange { r, max: lambda.get(k - 1) });
    }
    let u = u_pieri_reduced(lambda, k, r as i64);
    expand_with(lambda, &u, k, r)
}

/// The `k = n` expansion written with its own parameters and targets.
pub fn top_slot_expand(lambda: &DominantWeight) -> Result<Vec<RecurrenceTerm>> {
    let n = lambda.n();
    let l = |j: usize| lambda.get(j) as i64;
    let ln = lambda.get(n);
    let mut u = vec![qt(-l(n), -2)];
    for i in 1..n {
        u.push(qt((i..n).map(l).sum(), (n - i - 1) as i64));
    }
    let mut out = Vec::new();
    for theta in multi_indices(n - 1, ln, false) {
        let c = c_coeff(&u, n, ln as i64, &theta)?;
        if c.is_zero() {
            continue;
        }
        let th = |i: usize| if i == 0 || i > theta.len() { 0 } else { theta[i - 1] as i64 };
        let mut target = vec![0i64; n];
        for i in 1..n.saturating_sub(1) {
            target[i - 1] = l(i) + th(i) - th(i + 1);
        }
        if n >= 2 {
            target[n - 2] = l(n - 1) + l(n) + th(n - 1);
        }
        let target = legal_target(target, n)?;
        let row_factor = ln - theta.iter().sum::<u32>();
        out.push(RecurrenceTerm { theta, coeff: c, row_factor, target });
    }
    Ok(out)
}

/// `Σ_κ c_κ m_κ` restricted to `x_1 ⋯ x_{n+1} = 1`, keyed by reduced
/// partitions.
pub fn restrict(f: &SymPoly, n: usize) -> BTreeMap<Partition, QtRational> {
    let mut out: BTreeMap<Partition, QtRational> = BTreeMap::new();
    for (key, c) in f.terms() {
        let (red, _) = reduce_partition(key, n);
        let e = out.entry(red).or_insert_with(QtRational::zero);
        *e = &*e + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Σ coeff · P_{r'ω_1} P_target` in `n+1` variables with `x_1⋯x_{n+1}=1`.
pub fn resum(terms: &[RecurrenceTerm], n: usize) -> Result<BTreeMap<Partition, QtRational>> {
    let m = n + 1;
    let mut acc: BTreeMap<Partition, QtRational> = BTreeMap::new();
    for term in terms {
        let a = p_branching(&Partition::row(term.row_factor), m)?;
        let b = p_branching(&weight_to_partition(&term.target), m)?;
        for (key, c) in restrict(&multiply(&a, &b)?, n) {
            let e = acc.entry(key).or_insert_with(QtRational::zero);
            *e = &*e + &(&c * &term.coeff);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(acc)
}

/// Whether the terms sum to `P_λ` on `x_1⋯x_{n+1} = 1`.
pub fn reconstructs(lambda: &DominantWeight, terms: &[RecurrenceTerm]) -> Result<bool> {
    let n = lambda.n();
    let lhs = restrict(&*p_branching(&weight_to_partition(lambda), n + 1)?, n);
    Ok(lhs == resum(terms, n)?)
}

/// `b_λ = ∏_{i≤j} (tu_i/u_j;q)_{λ_j} / (qu_i/u_j;q)_{λ_j}`.
pub fn b_lambda(lambda: &DominantWeight) -> Result<QtRational> {
    let n = lambda.n();
    let l = |j: usize| lambda.get(j) as i64;
    let u: Vec<Monomial> = (1..=n).map(|i| qt((i..n).map(l).sum(), n as i64 - i as i64 - 1)).collect();
    let mut fp = FactoredProduct::one();
    for j in 1..=n {
        for i in 1..=j {
            let a = u[i - 1].div(&u[j - 1]);
            fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a.shift_q(1), l(j) as i32));
        }
    }
    fp.value()
}

/// Entries of the inverse pair built from `C` and `D` with shifted
/// arguments: `f_{βκ} = C_{β−κ}(q^{|κ|}u_0, q^{κ_i+|κ|}u_i; k, r−|κ|)`.
pub fn pair_f(u: &[Monomial], k: usize, r: i64, beta: &[u32], kappa: &[u32]) -> Result<QtRational> {
    let Some(diff) = difference(beta, kappa) else {
        return Ok(QtRational::zero());
    };
    let s = shift_args(u, kappa);
    c_coeff(&s, k, r - sum(kappa), &diff)
}

/// `g_{κγ} = D_{κ−γ}(q^{|γ|}u_0, q^{γ_i+|γ|}u_i; k, r−|γ|)`.
pub fn pair_g(u: &[Monomial], k: usize, r: i64, kappa: &[u32], gamma: &[u32]) -> Result<QtRational> {
    let Some(diff) = difference(kappa, gamma) else {
        return Ok(QtRational::zero());
    };
    let s = shift_args(u, gamma);
    big_d_factored(&s, k, r - sum(gamma), &diff)?.value()
}

fn difference(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(&x, &y)| x.checked_sub(y)).collect()
}

fn shift_args(u: &[Monomial], kappa: &[u32]) -> Vec<Monomial> {
    let total = sum(kappa) as i32;
    let mut s = vec![u[0].shift_q(total)];
    for (ui, &ki) in u[1..].iter().zip(kappa) {
        s.push(ui.shift_q(ki as i32 + total));
    }
    s
}

/// Checks `Σ_κ f_{βκ} g_{κγ} = δ_{βγ}` for symbolic arguments over the box
/// `0 ≤ γ ≤ β ≤ hi`; returns the failing `(β, γ)`.
pub fn inverse_pair_failures(n: usize, k: usize, r: i64, hi: &[u32]) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let u = symbolic_u(n);
    let boxed = box_points(hi);
    let mut fails = Vec::new();
    for beta in &boxed {
        for gamma in boxed.iter().filter(|g| difference(beta, g).is_some()) {
            let mut acc = QtRational::zero();
            for kappa in boxed.iter().filter(|c| difference(beta, c).is_some() && difference(c, gamma).is_some()) {
                acc = acc + pair_f(&u, k, r, beta, kappa)? * pair_g(&u, k, r, kappa, gamma)?;
            }
            let expect = if beta == gamma { QtRational::one() } else { QtRational::zero() };
            if acc != expect {
                fails.push((beta.clone(), gamma.clone()));
            }
        }
    }
    Ok(fails)
}

/// All integer vectors `0 ≤ κ ≤ hi`.
pub fn box_points(hi: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &h in hi {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=h).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

// Rank 2 and rank 3 closed forms.

/// Known closed forms, with the parameters they are stated in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `C^{(2)}_θ(λ)` for `n = 2`.
    A2K2 { lambda: [u32; 2], theta: u32 },
    /// `C^{(1)}_θ(λ)` for `n = 2`.
    A2K1 { lambda: [u32; 2], theta: u32 },
    /// The two-row symmetric-function coefficient, indexed by a partition.
    TwoRow { mu: [u32; 2], theta: u32 },
    /// `C^{(k)}_{ij}(λ)` for `n = 3`, as `∇_{ij}` times its ratio.
    A3 { k: usize, lambda: [u32; 3], i: u32, j: u32 },
    /// The three-row symmetric-function coefficient, indexed by a partition.
    ThreeRow { mu: [u32; 3], i: u32, j: u32 },
}

fn qpow(a: u32) -> Monomial {
    qt(a as i64, 0)
}

/// The two-row expansion `P_{(μ1,μ2)} = Σ_θ C_θ(μ) P_{(μ2−θ)} P_{(μ1+θ)}`
/// in three variables, with the explicit two-row coefficients.
pub fn two_row_expand(mu: [u32; 2]) -> Result<Vec<RecurrenceTerm>> {
    (0..=mu[1])
        .map(|th| {
            Ok(RecurrenceTerm {
                theta: vec![th],
                coeff: closed_form_coeff(&ClosedForm::TwoRow { mu, theta: th })?,
                row_factor: mu[1] - th,
                target: DominantWeight::new(vec![mu[0] + th, 0]),
            })
        })
        .collect()
}

/// `P_{λ1ω1+λ2ω2} = Σ_θ C^{(1)}_θ(λ) P_{(λ1−θ)ω1} P_{(λ2−θ)ω2}` with the
/// explicit `k = 1` coefficients.
pub fn first_slot_expand(lambda: [u32; 2]) -> Result<Vec<RecurrenceTerm>> {
    (0..=lambda[0].min(lambda[1]))
        .map(|th| {
            Ok(RecurrenceTerm {
                theta: vec![th],
                coeff: closed_form_coeff(&ClosedForm::A2K1 { lambda, theta: th })?,
                row_factor: lambda[0] - th,
                target: DominantWeight::new(vec![0, lambda[1] - th]),
            })
        })
        .collect()
}

pub fn closed_form_coeff(form: &ClosedForm) -> Result<QtRational> {
    match *form {
        ClosedForm::A2K2 { lambda: [l1, l2], theta } => {
            regular_value(&[qpow(l1), qpow(l2)], |x| a2k2(x, l2 as i32, theta as i32))
        }
        ClosedForm::A2K1 { lambda: [l1, l2], theta } => {
            regular_value(&[qpow(l1), qpow(l2)], |x| a2k1(x, theta as i32))
        }
        ClosedForm::TwoRow { mu: [m1, m2], theta } => {
            if m2 > m1 {
                return Err(Error::NotAPartition(vec![m1 as i64, m2 as i64]));
            }
            regular_value(&[qpow(m1 - m2), qpow(m2)], |x| two_row_raw(x, m2 as i32, theta as i32))
        }
        ClosedForm::A3 { k, lambda, i, j } => {
            let [l1, l2, l3] = lambda.map(|x| x as i64);
            let u = match k {
                1 => vec![qt(-l1, -2), qt(-l1 - l2, -3), qt(-l1 - l2 - l3, -4)],
                2 => vec![qt(-l2, -2), qt(l1, 0), qt(-l2 - l3, -3)],
                3 => vec![qt(-l3, -2), qt(l1 + l2, 1), qt(l2, 0)],
                _ => return Err(Error::KOutOfRange { k, n: 3 }),
            };
            let r = lambda[k - 1] as i64;
            regular_value(&u, |u| Ok(a3_nabla(u, i, j)? * a3_ratio(u, k, r, i, j).value()?))
        }
        ClosedForm::ThreeRow { mu: [m1, m2, m3], i, j } => {
            if m2 > m1 || m3 > m2 {
                return Err(Error::NotAPartition(vec![m1 as i64, m2 as i64, m3 as i64]));
            }
            regular_value(&[qpow(m1 - m2), qpow(m2 - m3)], |x| three_row_raw(x, [m1, m2, m3].map(|m| m as i32), i as i32, j as i32))
        }
    }
}

fn a2k2(x: &[Monomial], l2: i32, th: i32) -> Result<QtRational> {
    let (x1, x2) = (&x[0], &x[1]);
    let mut fp = FactoredProduct::monomial(qt(0, th as i64));
    fp.mul_assign(&poch_ratio(&x2.shift_q(1 - th), &x2.times_qt(-th, 1), th));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), th));
    fp.mul_assign(&poch_ratio(&x1.shift_q(1), &x1.times_qt(1, 1), th));
    fp.mul_assign(&poch_ratio(&x1.times_qt(0, 1), &x1.shift_q(1), l2 + th));
    fp.mul_assign(&poch_ratio(&x1.times_qt(1, 1), &x1.times_qt(0, 2), l2));
    fp.mul_assign(&FactoredProduct::binomial(&x1.shift_q(2 * th), 1));
    fp.mul_assign(&FactoredProduct::binomial(&x1.shift_q(th), -1));
    fp.value()
}

fn a2k1(x: &[Monomial], th: i32) -> Result<QtRational> {
    let (x1, x2) = (&x[0], &x[1]);
    let x12 = x1.mul(x2);
    let ratio_inv = |a: &Monomial, b: &Monomial| poch_inv_q(a, th).div(&poch_inv_q(b, th));
    let mut fp = FactoredProduct::monomial(qt(0, th as i64));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), th));
    fp.mul_assign(&ratio_inv(x1, &x1.times_qt(-1, 1)));
    fp.mul_assign(&ratio_inv(x2, &x2.times_qt(-1, 1)));
    fp.mul_assign(&ratio_inv(&x12.times_qt(-1, 3), &x12.times_qt(-1, 2)));
    fp.mul_assign(&FactoredProduct::binomial(&x12.times_qt(-2 * th, 3), 1));
    fp.mul_assign(&FactoredProduct::binomial(&x12.times_qt(-th, 3), -1));
    fp.value()
}

fn two_row_raw(x: &[Monomial], m2: i32, th: i32) -> Result<QtRational> {
    let (a, b) = (&x[0], &x[1]);
    let mut fp = poch_ratio(&a.times_qt(1, 1), &a.times_qt(0, 2), m2);
    fp.mul_assign(&poch_ratio(&b.shift_q(1 - th), &b.times_qt(-th, 1), th));
    fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a.shift_q(1), m2 + th));
    fp.mul_assign(&FactoredProduct::monomial(qt(0, th as i64)));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), th));
    fp.mul_assign(&poch_ratio(&a.shift_q(1), &a.times_qt(1, 1), th));
    fp.mul_assign(&FactoredProduct::binomial(&a.shift_q(2 * th), 1));
    fp.mul_assign(&FactoredProduct::binomial(&a.shift_q(th), -1));
    fp.value()
}

/// The bracket shared by `∇_{ij}` and the rank 3 determinant quotient;
/// `d1`, `d2` are the bases of the denominators `1 − d1`, `1 − d2`.
fn a3_bracket(u1: &Monomial, u2: &Monomial, i: i32, j: i32, d1: &Monomial, d2: &Monomial) -> Result<QtRational> {
    let a = u1.shift_q(i).div(&u2.times_qt(0, 1));
    let b = u2.shift_q(j).div(&u1.times_qt(0, 1));
    let (qi, qj) = (qt(i as i64, 0), qt(j as i64, 0));
    let cross = frac(om(&qi), om(&a))? * frac(om(&qj), om(&b))?;
    let first = frac(om(&u1.shift_q(2 * i)), om(d1))?
        * frac(om(&u2.shift_q(2 * j)), om(d2))?
        * (QtRational::one() + mono(&qt(0, -1)) * cross);
    let second = (mono(&u1.shift_q(i)) + mono(&u2.shift_q(j)))
        * frac(om(&qi), om(d1))?
        * frac(om(&qj), om(d2))?
        * frac(om(&qi.times_qt(0, -1)), om(&a))?
        * frac(om(&qj.times_qt(0, -1)), om(&b))?;
    Ok(first - second)
}

/// The two-term expression for `det A / (q^i u_1 − q^j u_2)`.
pub fn det_identity_rhs(u1: &Monomial, u2: &Monomial, i: u32, j: u32) -> Result<QtRational> {
    let (i, j) = (i as i32, j as i32);
    let t = QtRational::var(Var::T);
    let pre = frac(
        (&t - &QtRational::one()).pow(2)?,
        (&t - &mono(&qt(i as i64, 0))) * (&t - &mono(&qt(j as i64, 0))),
    )?;
    Ok(pre * a3_bracket(u1, u2, i, j, &u1.shift_q(i), &u2.shift_q(j))?)
}

/// The determinant identity with symbolic `u_1, u_2`.
pub fn det_identity_holds(i: u32, j: u32) -> Result<bool> {
    let u = symbolic_u(2);
    Ok(det_quotient(&u, &[i, j])? == det_identity_rhs(&u[0], &u[1], i, j)?)
}

/// `∇_{ij}(u_0, u_1, u_2)`.
pub fn a3_nabla(u: &[Monomial], i: u32, j: u32) -> Result<QtRational> {
    Ok(nabla_product(u, i, j).value()? * a3_bracket(&u[1], &u[2], i as i32, j as i32, &u[1], &u[2])?)
}

fn nabla_product(u: &[Monomial], i: u32, j: u32) -> FactoredProduct {
    let (u0, u1, u2) = (&u[0], &u[1], &u[2]);
    let (i, j) = (i as i32, j as i32);
    let mut fp = FactoredProduct::monomial(qt((i + j) as i64, 0));
    fp.mul_assign(&poch_ratio(&u0.times_qt(0, 2), &u0.times_qt(1, 1), i + j));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), i));
    fp.mul_assign(&poch_ratio(u1, &u1.times_qt(1, 1), i));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), j));
    fp.mul_assign(&poch_ratio(u2, &u2.times_qt(1, 1), j));
    let w = u1.div(u2);
    fp.mul_assign(&poch_ratio(&w.times_qt(i - j + 1, -1), &w.shift_q(i - j + 1), j));
    fp.mul_assign(&poch_ratio(&w.times_qt(-j, 1), &w.shift_q(-j), j));
    fp
}

/// The ratio `C_{ij}(u; k, r) / ∇_{ij}(u)` in closed form for `k = 1, 2, 3`.
pub fn a3_ratio(u: &[Monomial], k: usize, r: i64, i: u32, j: u32) -> FactoredProduct {
    let u0 = &u[0];
    let r = r as i32;
    let mut fp = FactoredProduct::one();
    for (idx, s) in [(1usize, i as i32), (2, j as i32)] {
        let a = u[idx].div(u0);
        if idx < k {
            fp.mul_assign(&poch_ratio(&a.times_qt(0, -1), &a.times_qt(1, -2), s));
            let b = a.inv();
            fp.mul_assign(&poch_ratio(&b.times_qt(1, 1), &b.times_qt(0, 2), r));
            fp.mul_assign(&poch_ratio(&b.times_qt(0, 1), &b.shift_q(1), r));
        } else {
            fp.mul_assign(&poch_ratio(&a.times_qt(0, 1), &a.shift_q(1), s));
        }
    }
    fp
}

/// `C_{ij}(u; k, r) = ∇_{ij}(u) · ratio` with symbolic `u_0, u_1, u_2`. The
/// factored parts are cancelled exactly; the remaining sums are compared by
/// cross-multiplication.
pub fn a3_ratio_holds(k: usize, r: i64, i: u32, j: u32) -> Result<bool> {
    let u = symbolic_u(3);
    let rest = c_product_factored(&u, k, r, &[i, j])?
        .div(&nabla_product(&u, i, j))
        .div(&a3_ratio(&u, k, r, i, j));
    let (ii, jj) = (i as i32, j as i32);
    let rest = rest.value()?;
    let det = det_quotient(&u[1..], &[i, j])?;
    let bracket = a3_bracket(&u[1], &u[2], ii, jj, &u[1], &u[2])?;
    Ok(products_equal(&[&rest, &det], &[&bracket]))
}

/// `∏ lhs = ∏ rhs` without any gcd computation.
pub fn products_equal(lhs: &[&QtRational], rhs: &[&QtRational]) -> bool {
    let mut a = crate::ring::MultiPoly::one();
    let mut b = crate::ring::MultiPoly::one();
    for x in lhs {
        a = &a * x.numer();
        b = &b * x.denom();
    }
    let mut c = crate::ring::MultiPoly::one();
    let mut d = crate::ring::MultiPoly::one();
    for x in rhs {
        c = &c * x.numer();
        d = &d * x.denom();
    }
    &a * &d == &c * &b
}

fn three_row_raw(x: &[Monomial], mu: [i32; 3], i: i32, j: i32) -> Result<QtRational> {
    let (u, v) = (&x[0], &x[1]);
    let uv = u.mul(v);
    let [m1, m2, m3] = mu;
    let tq = |s: i32| poch_ratio(&qt(0, 1), &qt(1, 0), s);
    let mut fp = FactoredProduct::monomial(qt(0, (i + j) as i64));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), i));
    fp.mul_assign(&poch_ratio(&qt(0, -1), &qt(1, 0), j));
    fp.mul_assign(&poch_ratio(&uv.times_qt(0, 1), &uv.times_qt(1, 2), i));
    fp.mul_assign(&poch_ratio(v, &v.times_qt(1, 1), j));
    fp.mul_assign(&poch_ratio(&u.times_qt(-j, 2), &u.times_qt(-j, 1), i));
    fp.mul_assign(&poch_ratio(&u.shift_q(1), &u.times_qt(1, 1), i));
    fp.mul_assign(&tq(m1 - m2 + i - j));
    fp.mul_assign(&tq(m2 + j));
    fp.mul_assign(&tq(m3 - i - j));
    fp.mul_assign(&tq(m1 - m2).inv());
    fp.mul_assign(&tq(m2 - m3).inv());
    fp.mul_assign(&tq(m3).inv());
    fp.mul_assign(&poch_ratio(&u.times_qt(i - j, 2), &u.times_qt(i - j + 1, 1), m2 + j));
    fp.mul_assign(&poch_ratio(&u.times_qt(1, 1), &u.times_qt(0, 2), m2 - m3));
    fp.mul_assign(&poch_ratio(&uv.times_qt(1, 2), &uv.times_qt(0, 3), m3));
    fp.mul_assign(&poch_ratio(&v.times_qt(1, 1), &v.times_qt(0, 2), m3));
    fp.mul_assign(&FactoredProduct::binomial(&uv.times_qt(2 * i, 1), 1));
    fp.mul_assign(&FactoredProduct::binomial(&uv.times_qt(0, 1), -1));
    fp.mul_assign(&FactoredProduct::binomial(&v.shift_q(2 * j), 1));
    fp.mul_assign(&FactoredProduct::binomial(v, -1));
    let (qi, qj) = (qt(i as i64, 0), qt(j as i64, 0));
    let t = mono(&qt(0, 1));
    let inner = &t
        - &(mono(v)
            * (mono(&u.times_qt(i, 1)) + mono(&qj))
            * frac(&t - &mono(&qi), om(&uv.times_qt(2 * i, 1)))?
            * frac(&t - &mono(&qj), om(&v.shift_q(2 * j)))?);
    let bracket = QtRational::one()
        + mono(u)
            * frac(om(&qi), om(&u.shift_q(i)))?
            * frac(om(&qt(-j as i64, 0)), om(&u.times_qt(-j, 2)))?
            * inner;
    Ok(fp.value()? * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_rational;

    fn w(v: &[u32]) -> DominantWeight {
        DominantWeight::new(v.to_vec())
    }

    fn r(s: &str) -> QtRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn det_quotient_trivial_theta() {
        let u = symbolic_u(3);
        assert!(det_quotient(&u, &[0, 0, 0]).unwrap().is_one());
        let u = vec![qt(2, 1), qt(0, -3)];
        assert!(det_quotient(&u, &[0, 0]).unwrap().is_one());
    }

    #[test]
    fn det_quotient_one_by_one() {
        let u = symbolic_u(1);
        let got = det_quotient(&u, &[2]).unwrap();
        let expect = r("1 - (1 - t*q^2*u0)*(q^2*u0 - u0)/((1 - q^2*u0)*(q^2*u0 - t*u0))");
        assert_eq!(got, expect);
    }

    #[test]
    fn c_identity_at_r_zero() {
        for k in 1..=3 {
            let u = symbolic_u(3);
            assert!(c_coeff(&u, k, 0, &[0, 0]).unwrap().is_one());
        }
        let lambda = w(&[2, 1]);
        for k in 1..=2 {
            let u = u_recurrence(&lambda, k);
            let lk = lambda.get(k);
            for theta in multi_indices(1, lk + 1, true) {
                assert!(c_coeff(&u, k, lk as i64, &theta).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn trivial_expansion_when_lambda_k_vanishes() {
        let lambda = w(&[2, 0, 1]);
        let terms = recurrence_expand(&lambda, 2).unwrap();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].coeff.is_one());
        assert_eq!(terms[0].row_factor, 0);
        assert_eq!(terms[0].target, lambda);
    }

    #[test]
    fn small_reconstructions() {
        let lambda = w(&[1, 1]);
        let terms = recurrence_expand(&lambda, 2).unwrap();
        assert_eq!(terms.iter().map(|t| t.theta.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        assert!(reconstructs(&lambda, &terms).unwrap());
        let shifted = recurrence_expand_shifted(&w(&[3, 0]), 2, 2).unwrap();
        assert!(reconstructs(&w(&[1, 2]), &shifted).unwrap());
    }

    #[test]
    fn b_lambda_one_row() {
        assert!(b_lambda(&w(&[0, 0])).unwrap().is_one());
        assert_eq!(b_lambda(&w(&[3])).unwrap(), poch_ratio(&qt(0, 1), &qt(1, 0), 3).value().unwrap());
    }

    #[test]
    fn closed_form_edges() {
        for l1 in 0..3 {
            let c = closed_form_coeff(&ClosedForm::A2K2 { lambda: [l1, 0], theta: 0 }).unwrap();
            assert!(c.is_one());
        }
        let u = symbolic_u(3);
        assert!(a3_nabla(&u, 0, 0).unwrap().is_one());
    }

    #[test]
    fn det_identity_small() {
        assert!(det_identity_holds(0, 0).unwrap());
        assert!(det_identity_holds(1, 0).unwrap());
        assert!(det_identity_holds(1, 2).unwrap());
    }
}

//! The pair of mutually inverse lower-triangular multidimensional matrices
//! `f_{βκ}`, `g_{κγ}` behind the recurrence, and box-truncated checks of
//! the inversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{poch_ratio, Exps, FactoredFraction, FactoredProduct, Monomial, QtRational, Var};

/// Integer vectors `lo ≤ κ ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxRange {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl BoxRange {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<BoxRange> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidArgument(format!("empty box {lo:?}..{hi:?}")));
        }
        Ok(BoxRange { lo, hi })
    }

    /// `0..hi` in every coordinate.
    pub fn cube(dim: usize, hi: i64) -> BoxRange {
        BoxRange { lo: vec![0; dim], hi: vec![hi; dim] }
    }

    /// Parses `LO..HI` with comma-separated coordinates, e.g. `0,0..2,2`.
    pub fn parse(s: &str) -> Result<BoxRange> {
        let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("box {s:?} lacks '..'")))?;
        let vec = |x: &str| -> Result<Vec<i64>> {
            x.split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad box coordinate {p:?}"))))
                .collect()
        };
        BoxRange::new(vec(a)?, vec(b)?)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for (&a, &b) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (a..=b).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// `t, u_0, …, u_n, r, k` of the inverse pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairParams {
    pub n: usize,
    pub k: usize,
    pub r: i64,
    pub u: Vec<Monomial>,
}

impl PairParams {
    pub fn new(n: usize, k: usize, r: i64, u: Vec<Monomial>) -> Result<PairParams> {
        if k == 0 || k > n + 1 {
            return Err(Error::KOutOfRange { k, n: n + 1 });
        }
        if u.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, got: u.len() });
        }
        Ok(PairParams { n, k, r, u })
    }

    /// Symbolic `u_0, …, u_n`.
    pub fn symbolic(n: usize, k: usize, r: i64) -> Result<PairParams> {
        PairParams::new(n, k, r, (0..=n).map(|i| Monomial::var(Var::U(i as u8))).collect())
    }
}

fn qt(a: i64, b: i64) -> Monomial {
    Monomial::qt(a as i32, b as i32)
}

fn pr(a: &Monomial, b: &Monomial, len: i64) -> FactoredProduct {
    poch_ratio(a, b, len as i32)
}

fn total(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn dominates(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn check_dim(p: &PairParams, a: &[i64], b: &[i64]) -> Result<()> {
    for v in [a, b] {
        if v.len() != p.n {
            return Err(Error::DimensionMismatch { expected: p.n, got: v.len() });
        }
    }
    Ok(())
}

/// `f_{βκ}`, zero unless `β ≥ κ`.
pub fn f_entry(beta: &[i64], kappa: &[i64], p: &PairParams) -> Result<QtRational> {
    Ok(f_frac(beta, kappa, p)?.to_rational())
}

/// `f_{βκ}` straight from the formula, without the triangularity shortcut.
pub fn f_entry_raw(beta: &[i64], kappa: &[i64], p: &PairParams) -> Result<QtRational> {
    Ok(f_frac_raw(beta, kappa, p)?.to_rational())
}

/// `g_{κγ}`, zero unless `κ ≥ γ`.
pub fn g_entry(kappa: &[i64], gamma: &[i64], p: &PairParams) -> Result<QtRational> {
    Ok(g_frac(kappa, gamma, p)?.to_rational())
}

/// `g_{κγ}` straight from the formula.
pub fn g_entry_raw(kappa: &[i64], gamma: &[i64], p: &PairParams) -> Result<QtRational> {
    Ok(g_frac_raw(kappa, gamma, p)?.to_rational())
}

fn f_frac(beta: &[i64], kappa: &[i64], p: &PairParams) -> Result<FactoredFraction> {
    check_dim(p, beta, kappa)?;
    if !dominates(beta, kappa) {
        return Ok(FactoredFraction::zero());
    }
    f_frac_raw(beta, kappa, p)
}

fn g_frac(kappa: &[i64], gamma: &[i64], p: &PairParams) -> Result<FactoredFraction> {
    check_dim(p, kappa, gamma)?;
    if !dominates(kappa, gamma) {
        return Ok(FactoredFraction::zero());
    }
    g_frac_raw(kappa, gamma, p)
}

fn f_frac_raw(beta: &[i64], kappa: &[i64], p: &PairParams) -> Result<FactoredFraction> {
    check_dim(p, beta, kappa)?;
    let (n, k, r, u) = (p.n, p.k, p.r, &p.u);
    let (bt, kt) = (total(beta), total(kappa));
    let u0 = &u[0];
    let b = |i: usize| beta[i - 1];
    let c = |i: usize| kappa[i - 1];
    let mut fp = FactoredProduct::monomial(qt(bt - kt, 0));
    fp.mul_assign(&pr(&u0.times_qt(0, 2), &u0.times_qt(1, 1), bt));
    fp.mul_assign(&pr(&u0.times_qt(1, 1), &u0.times_qt(0, 2), kt));
    for i in 1..=n {
        let d = b(i) - c(i);
        fp.mul_assign(&pr(&qt(1, -1), &qt(1, 0), d));
        let base = u[i].shift_q((c(i) + kt + 1) as i32);
        fp.mul_assign(&pr(&base, &base.times_qt(0, 1), d));
    }
    for i in 1..k.min(n + 1) {
        let a = u[i].div(u0);
        let m = kt - r + c(i);
        fp.mul_assign(&pr(&a.times_qt(0, -1), &a.times_qt(1, -2), b(i)));
        fp.mul_assign(&pr(&a.times_qt(1, -1), &a, c(i)));
        fp.mul_assign(&pr(&a, &a.times_qt(1, -1), m));
        fp.mul_assign(&pr(&a.times_qt(1, -2), &a.times_qt(0, -1), m));
    }
    for i in k..=n {
        let a = u[i].div(u0);
        fp.mul_assign(&pr(&a.times_qt(0, 1), &a.shift_q(1), b(i)));
        fp.mul_assign(&pr(&a.shift_q(1), &a.times_qt(0, 1), c(i)));
    }
    let w: Vec<Monomial> = (1..=n).map(|i| u[i].shift_q(b(i) as i32)).collect();
    for j in 1..=n {
        for i in 1..j {
            let a = u[i].div(&u[j]);
            let d = b(j) - c(j);
            let x = a.shift_q((b(i) - b(j) + 1) as i32);
            fp.mul_assign(&pr(&x.times_qt(0, -1), &x, d));
            let y = a.shift_q((c(i) - b(j)) as i32);
            fp.mul_assign(&pr(&y.times_qt(0, 1), &y, d));
            // 1/(w_i - w_j) = w_i^{-1} (1 - w_j/w_i)^{-1}
            let ratio = w[j - 1].div(&w[i - 1]);
            if ratio.is_one() {
                return Err(Error::SingularDifference);
            }
            fp.mul_assign(&FactoredProduct::monomial(w[i - 1].inv()));
            fp.mul_assign(&FactoredProduct::binomial(&ratio, -1));
        }
    }
    let prod = fp.to_fraction()?;
    if prod.is_zero() {
        return Ok(prod);
    }
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let wi = &w[i - 1];
        let shifted = u[i].shift_q((b(i) + kt) as i32);
        let mut ratio = FactoredProduct::binomial(&shifted.times_qt(0, 1), 1);
        ratio.mul_assign(&FactoredProduct::binomial(&shifted, -1));
        for s in 1..=n {
            // (w - x)/(w - t x) = (1 - x/w)/(1 - t x/w)
            let x = u[s].shift_q(c(s) as i32).div(wi);
            ratio.mul_assign(&FactoredProduct::binomial(&x, 1));
            ratio.mul_assign(&FactoredProduct::binomial(&x.times_qt(0, 1), -1));
        }
        let row = (1..=n)
            .map(|j| {
                let mut tr = ratio.clone();
                tr.mul_assign(&FactoredProduct::monomial(qt(0, j as i64 - 1)));
                let entry = FactoredFraction::one().sub(&tr.to_fraction()?);
                Ok(FactoredFraction::from_monomial(&wi.pow((n - j) as i32)).mul(&entry))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(prod.mul(&linalg::det_fractions(&rows)?))
}

fn g_frac_raw(kappa: &[i64], gamma: &[i64], p: &PairParams) -> Result<FactoredFraction> {
    check_dim(p, kappa, gamma)?;
    let (n, k, r, u) = (p.n, p.k, p.r, &p.u);
    let (kt, gt) = (total(kappa), total(gamma));
    let u0 = &u[0];
    let c = |i: usize| kappa[i - 1];
    let g = |i: usize| gamma[i - 1];
    let mut fp = FactoredProduct::monomial(qt(kt - gt, gt - kt));
    fp.mul_assign(&pr(&u0.times_qt(0, 2), &u0.times_qt(1, 1), kt));
    fp.mul_assign(&pr(&u0.times_qt(1, 1), &u0.times_qt(0, 2), gt));
    for i in 1..=n {
        let d = c(i) - g(i);
        fp.mul_assign(&pr(&qt(0, 1), &qt(1, 0), d));
        let base = u[i].shift_q((g(i) + kt) as i32);
        fp.mul_assign(&pr(&base.shift_q(1), &base.times_qt(0, 1), d));
    }
    for i in 1..k.min(n + 1) {
        let a = u[i].div(u0);
        let m = kt - r + c(i);
        fp.mul_assign(&pr(&a, &a.times_qt(1, -1), c(i)));
        fp.mul_assign(&pr(&a.times_qt(1, -2), &a.times_qt(0, -1), g(i)));
        fp.mul_assign(&pr(&a.times_qt(1, -1), &a, m));
        fp.mul_assign(&pr(&a.times_qt(0, -1), &a.times_qt(1, -2), m));
    }
    for i in k..=n {
        let a = u[i].div(u0);
        fp.mul_assign(&pr(&a.times_qt(0, 1), &a.shift_q(1), c(i)));
        fp.mul_assign(&pr(&a.shift_q(1), &a.times_qt(0, 1), g(i)));
    }
    for j in 1..=n {
        for i in 1..j {
            let a = u[i].div(&u[j]);
            let d = c(j) - g(j);
            let x = a.shift_q((c(i) - c(j)) as i32);
            fp.mul_assign(&pr(&x.times_qt(0, 1), &x.shift_q(1), d));
            let y = a.shift_q((g(i) - c(j)) as i32);
            fp.mul_assign(&pr(&y.times_qt(1, -1), &y, d));
        }
    }
    fp.to_fraction()
}

/// `ξ_κ` of the conjugation step.
pub fn xi(kappa: &[i64], p: &PairParams) -> Result<QtRational> {
    xi_product(kappa, p).value()
}

/// `ζ_κ` of the conjugation step.
pub fn zeta(kappa: &[i64], p: &PairParams) -> Result<QtRational> {
    zeta_product(kappa, p).value()
}

fn xi_product(kappa: &[i64], p: &PairParams) -> FactoredProduct {
    let mut fp = scaling_common(kappa, p);
    let u0 = &p.u[0];
    for i in 1..p.k.min(p.n + 1) {
        let a = p.u[i].div(u0);
        fp.mul_assign(&pr(&a.times_qt(0, -1), &a.times_qt(1, -2), kappa[i - 1]));
    }
    fp
}

fn zeta_product(kappa: &[i64], p: &PairParams) -> FactoredProduct {
    let mut fp = scaling_common(kappa, p);
    let u0 = &p.u[0];
    let kt = total(kappa);
    for i in 1..p.k.min(p.n + 1) {
        let a = p.u[i].div(u0);
        let m = kt - p.r + kappa[i - 1];
        fp.mul_assign(&pr(&a, &a.times_qt(1, -1), kappa[i - 1]));
        fp.mul_assign(&pr(&a.times_qt(1, -1), &a, m));
        fp.mul_assign(&pr(&a.times_qt(0, -1), &a.times_qt(1, -2), m));
    }
    fp
}

/// The factors `ξ_κ` and `ζ_κ` share.
fn scaling_common(kappa: &[i64], p: &PairParams) -> FactoredProduct {
    let kt = total(kappa);
    let u0 = &p.u[0];
    let mut fp = FactoredProduct::monomial(qt(kt, -kt));
    fp.mul_assign(&pr(&u0.times_qt(0, 2), &u0.times_qt(1, 1), kt));
    for i in p.k..=p.n {
        let a = p.u[i].div(u0);
        fp.mul_assign(&pr(&a.times_qt(0, 1), &a.shift_q(1), kappa[i - 1]));
    }
    for j in 1..=p.n {
        for i in 1..j {
            let a = p.u[i].div(&p.u[j]);
            let d = kappa[i - 1] - kappa[j - 1];
            fp.mul_assign(&pr(&a.shift_q(1), &a.times_qt(0, 1), d));
            fp.mul_assign(&pr(&a, &a.times_qt(1, -1), d));
        }
    }
    fp
}

/// A sum `Σ_κ` that did not come out as `δ_{βγ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseFailure {
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
    /// `"fg"` or `"gf"`.
    pub order: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InverseReport {
    pub pairs_checked: usize,
    pub failures: Vec<InverseFailure>,
}

impl InverseReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: InverseReport) {
        self.pairs_checked += other.pairs_checked;
        self.failures.extend(other.failures);
    }
}

type Table = HashMap<(Vec<i64>, Vec<i64>), FactoredFraction>;

/// All entries `e(a, b)` with `a ≥ b` in the box, computed once.
fn table(pts: &[Vec<i64>], e: impl Fn(&[i64], &[i64]) -> Result<FactoredFraction> + Sync) -> Result<Table> {
    let pairs: Vec<(&Vec<i64>, &Vec<i64>)> = pts
        .iter()
        .flat_map(|a| pts.iter().filter(move |b| dominates(a, b)).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a, b)| Ok(((a.clone(), b.clone()), e(a, b)?)))
        .collect()
}

fn tables(bx: &BoxRange, p: &PairParams) -> Result<(Table, Table)> {
    let pts = bx.points();
    Ok((table(&pts, |a, b| f_frac(a, b, p))?, table(&pts, |a, b| g_frac(a, b, p))?))
}

/// Checks both composition orders on every pair `γ ≤ β` of the box.
pub fn verify_inverse(bx: &BoxRange, p: &PairParams) -> Result<InverseReport> {
    let (f, g) = tables(bx, p)?;
    Ok(compose_check(bx, &f, &g))
}

/// Diagonal scalings `ξ_κ`, `ζ_κ` for [`conjugate_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// `ξ = ζ = 1`.
    Trivial,
    /// The `ξ_κ`, `ζ_κ` products that reduce the pair to a simpler known
    /// inverse pair.
    Standard,
    /// `ξ_κ = q^{a|κ|}`, `ζ_κ = t^{b|κ|}`.
    Monomial { a: i32, b: i32 },
}

fn scaling_products(s: Scaling, kappa: &[i64], p: &PairParams) -> (FactoredProduct, FactoredProduct) {
    let kt = total(kappa) as i32;
    match s {
        Scaling::Trivial => (FactoredProduct::one(), FactoredProduct::one()),
        Scaling::Standard => (xi_product(kappa, p), zeta_product(kappa, p)),
        Scaling::Monomial { a, b } => (
            FactoredProduct::monomial(Monomial::qt(a * kt, 0)),
            FactoredProduct::monomial(Monomial::qt(0, b * kt)),
        ),
    }
}

/// Whether `f_{βκ} ξ_β/ζ_κ` and `g_{κγ} ζ_κ/ξ_γ` are mutually inverse on
/// the box.
pub fn conjugate_check(p: &PairParams, bx: &BoxRange, scaling: Scaling) -> Result<bool> {
    let pts = bx.points();
    let mut xs = HashMap::new();
    let mut zs = HashMap::new();
    for k in &pts {
        let (x, z) = scaling_products(scaling, k, p);
        if x.is_zero() || z.is_zero() {
            return Err(Error::ZeroScaling(k.clone()));
        }
        xs.insert(k.clone(), x);
        zs.insert(k.clone(), z);
    }
    let scaled = |v: FactoredFraction, top: &FactoredProduct, bottom: &FactoredProduct| -> Result<FactoredFraction> {
        if v.is_zero() {
            return Ok(v);
        }
        Ok(v.mul(&top.div(bottom).to_fraction()?))
    };
    let f = table(&pts, |a, b| scaled(f_frac(a, b, p)?, &xs[a], &zs[b]))?;
    let g = table(&pts, |a, b| scaled(g_frac(a, b, p)?, &zs[a], &xs[b]))?;
    Ok(compose_check(bx, &f, &g).passed())
}

fn compose_check(bx: &BoxRange, f: &Table, g: &Table) -> InverseReport {
    let pts = bx.points();
    let pairs: Vec<(&Vec<i64>, &Vec<i64>)> = pts
        .iter()
        .flat_map(|b| pts.iter().filter(move |c| dominates(b, c)).map(move |c| (b, c)))
        .collect();
    let failures: Vec<InverseFailure> = pairs
        .par_iter()
        .flat_map_iter(|&(beta, gamma)| {
            let mut fails = Vec::new();
            for (order, a, b) in [("fg", f, g), ("gf", g, f)] {
                let terms: Vec<FactoredFraction> = pts
                    .iter()
                    .filter(|k| dominates(beta, k) && dominates(k, gamma))
                    .filter_map(|k| {
                        let x = &a[&(beta.clone(), k.clone())];
                        (!x.is_zero()).then(|| x.mul(&b[&(k.clone(), gamma.clone())]))
                    })
                    .collect();
                let acc = FactoredFraction::sum(&terms);
                let ok = if beta == gamma { acc.is_one() } else { acc.is_zero() };
                if !ok {
                    fails.push(InverseFailure {
                        beta: beta.clone(),
                        gamma: gamma.clone(),
                        order: order.into(),
                        value: acc.to_rational().render(),
                    });
                }
            }
            fails
        })
        .collect();
    InverseReport { pairs_checked: pairs.len(), failures }
}

/// A nonzero rational with numerator and denominator of modest size.
fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let a: i64 = rng.gen_range(-40..=40);
        let b: i64 = rng.gen_range(1..=40);
        if a != 0 {
            return BigRational::new(BigInt::from(a), BigInt::from(b));
        }
    }
}

fn is_singular(e: &Error) -> bool {
    matches!(e, Error::Pole(_) | Error::DenominatorVanishes | Error::SingularDifference)
}

/// Random rational `u_0..u_n` with every entry on the box finite, together
/// with the entry tables.
fn sample(n: usize, k: usize, r: i64, bx: &BoxRange, rng: &mut ChaCha8Rng) -> Result<(PairParams, Table, Table)> {
    loop {
        let u = (0..=n).map(|_| Monomial::new(random_rational(rng), Exps::default())).collect();
        let p = PairParams::new(n, k, r, u)?;
        match tables(bx, &p) {
            Ok((f, g)) => return Ok((p, f, g)),
            Err(e) if is_singular(&e) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Random rational `u_0..u_n`, resampled until every entry on the box is
/// finite.
pub fn random_params(n: usize, k: usize, r: i64, bx: &BoxRange, rng: &mut ChaCha8Rng) -> Result<PairParams> {
    Ok(sample(n, k, r, bx, rng)?.0)
}

/// `trials` independent rational specializations from `seed`.
pub fn verify_inverse_trials(
    bx: &BoxRange,
    n: usize,
    k: usize,
    r: i64,
    trials: usize,
    seed: u64,
) -> Result<InverseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InverseReport::default();
    for _ in 0..trials {
        let (_, f, g) = sample(n, k, r, bx, &mut rng)?;
        report.merge(compose_check(bx, &f, &g));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        let b = BoxRange::parse("0,1..1,2").unwrap();
        assert_eq!(b.points(), vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]);
        assert!(BoxRange::parse("2..1").is_err());
        assert!(BoxRange::parse("0,0..1").is_err());
    }

    #[test]
    fn diagonals_are_reciprocal() {
        for k in 1..=2 {
            let p = PairParams::symbolic(1, k, 2).unwrap();
            for b in 0..3 {
                let fg = f_entry(&[b], &[b], &p).unwrap() * g_entry(&[b], &[b], &p).unwrap();
                assert!(fg.is_one());
            }
        }
        let p = PairParams::symbolic(2, 1, 1).unwrap();
        assert!(f_entry(&[1, 2], &[1, 2], &p).unwrap().is_one());
        assert!(g_entry(&[2, 0], &[2, 0], &p).unwrap().is_one());
    }

    #[test]
    fn raw_formula_is_triangular() {
        let p = PairParams::symbolic(2, 2, 2).unwrap();
        assert!(f_entry_raw(&[0, 1], &[1, 0], &p).unwrap().is_zero());
        assert!(g_entry_raw(&[1, 0], &[0, 1], &p).unwrap().is_zero());
    }

    #[test]
    fn small_inverse() {
        let p = PairParams::symbolic(1, 1, 1).unwrap();
        let rep = verify_inverse(&BoxRange::cube(1, 2), &p).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.pairs_checked, 6);
    }

    #[test]
    fn mismatched_pair_is_reported() {
        let bx = BoxRange::cube(1, 2);
        let p = PairParams::symbolic(1, 2, 1).unwrap();
        let other = PairParams::symbolic(1, 2, 2).unwrap();
        let pts = bx.points();
        let f = table(&pts, |a, b| f_frac(a, b, &p)).unwrap();
        let g = table(&pts, |a, b| g_frac(a, b, &other)).unwrap();
        let rep = compose_check(&bx, &f, &g);
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|x| x.order == "fg") && rep.failures.iter().any(|x| x.order == "gf"));
    }

    #[test]
    fn scalings() {
        let bx = BoxRange::cube(1, 2);
        let p = PairParams::symbolic(1, 2, 1).unwrap();
        for s in [Scaling::Trivial, Scaling::Standard, Scaling::Monomial { a: 2, b: -1 }] {
            assert!(conjugate_check(&p, &bx, s).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn trials_are_seeded() {
        let bx = BoxRange::cube(2, 1);
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_params(2, 2, 1, &bx, &mut a).unwrap(), random_params(2, 2, 1, &bx, &mut b).unwrap());
        assert!(verify_inverse_trials(&bx, 2, 2, 1, 2, 7).unwrap().passed());
    }
}

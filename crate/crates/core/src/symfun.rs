//! Homogeneous symmetric polynomials in `m` variables, stored on the
//! monomial basis `m_λ`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::QtRational;
use crate::weights::Partition;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(into = "SymPolyWire", try_from = "SymPolyWire")]
pub struct SymPoly {
    m: usize,
    degree: u32,
    coeffs: BTreeMap<Partition, QtRational>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct WireTerm {
    pub partition: Partition,
    pub coeff: QtRational,
}

#[derive(Serialize, Deserialize)]
struct SymPolyWire {
    m: usize,
    degree: u32,
    terms: Vec<WireTerm>,
}

impl From<SymPoly> for SymPolyWire {
    fn from(f: SymPoly) -> SymPolyWire {
        let terms = f.coeffs.into_iter().rev().map(|(partition, coeff)| WireTerm { partition, coeff }).collect();
        SymPolyWire { m: f.m, degree: f.degree, terms }
    }
}

impl TryFrom<SymPolyWire> for SymPoly {
    type Error = Error;
    fn try_from(w: SymPolyWire) -> Result<SymPoly> {
        for t in &w.terms {
            if t.partition.len() > w.m {
                return Err(Error::LengthExceedsVariables(t.partition.parts().to_vec(), w.m));
            }
            if t.partition.size() != w.degree {
                return Err(Error::SizeMismatch(t.partition.size(), w.degree));
            }
        }
        Ok(SymPoly::from_terms(w.m, w.degree, w.terms.into_iter().map(|t| (t.partition, t.coeff))))
    }
}

impl SymPoly {
    pub fn zero(m: usize, degree: u32) -> SymPoly {
        SymPoly { m, degree, coeffs: BTreeMap::new() }
    }

    /// `1 · m_∅`.
    pub fn one(m: usize) -> SymPoly {
        SymPoly::monomial(Partition::empty(), m)
    }

    pub fn monomial(mu: Partition, m: usize) -> SymPoly {
        SymPoly::term(mu, m, QtRational::one())
    }

    pub fn term(mu: Partition, m: usize, c: QtRational) -> SymPoly {
        assert!(mu.len() <= m, "partition {mu:?} longer than {m} variables");
        let degree = mu.size();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(mu, c);
        }
        SymPoly { m, degree, coeffs }
    }

    pub fn from_terms(m: usize, degree: u32, terms: impl IntoIterator<Item = (Partition, QtRational)>) -> SymPoly {
        let mut p = SymPoly::zero(m, degree);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mu: &Partition) -> QtRational {
        self.coeffs.get(mu).cloned().unwrap_or_else(QtRational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &QtRational)> {
        self.coeffs.iter()
    }

    /// Lexicographically largest key; it is maximal for dominance too.
    pub fn leading(&self) -> Option<(&Partition, &QtRational)> {
        self.coeffs.iter().next_back()
    }

    pub fn add_term(&mut self, mu: Partition, c: QtRational) {
        if c.is_zero() {
            return;
        }
        assert!(mu.len() <= self.m && mu.size() == self.degree, "key {mu:?} outside degree {} / {} vars", self.degree, self.m);
        match self.coeffs.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &QtRational) {
        assert_eq!(self.m, other.m);
        assert_eq!(self.degree, other.degree);
        for (k, v) in &other.coeffs {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &QtRational) -> SymPoly {
        let mut out = SymPoly::zero(self.m, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(other, &QtRational::one());
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(other, &QtRational::from_i64(-1));
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&QtRational) -> Result<QtRational>) -> Result<SymPoly> {
        let mut out = SymPoly::zero(self.m, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), f(v)?);
        }
        Ok(out)
    }

    /// Value at `x_1 = … = x_m = 1`.
    pub fn eval_ones(&self) -> QtRational {
        self.coeffs
            .iter()
            .map(|(k, v)| v.scale_int(&orbit_size(k, self.m)))
            .sum()
    }
}

/// Number of distinct permutations of `μ` padded to `m` entries.
pub fn orbit_size(mu: &Partition, m: usize) -> BigInt {
    let padded = mu.padded(m);
    let mut out = factorial(m as u32);
    let mut i = 0;
    while i < padded.len() {
        let mut j = i;
        while j < padded.len() && padded[j] == padded[i] {
            j += 1;
        }
        out /= factorial((j - i) as u32);
        i = j;
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, b| a * b)
}

/// Distinct permutations of `v`, each visited once.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

type MonoKey = (Partition, Partition, usize);
type MonoTable = BTreeMap<Partition, BigInt>;

fn mono_cache() -> &'static RwLock<FxHashMap<MonoKey, Arc<MonoTable>>> {
    static CACHE: OnceLock<RwLock<FxHashMap<MonoKey, Arc<MonoTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integer structure constants of `m_μ · m_ν` in `m` variables.
pub fn mono_mul_table(mu: &Partition, nu: &Partition, m: usize) -> Arc<MonoTable> {
    let (mu, nu) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    let key = (mu.clone(), nu.clone(), m);
    if let Some(t) = mono_cache().read().unwrap().get(&key) {
        return t.clone();
    }
    assert!(mu.len() <= m && nu.len() <= m, "partition longer than {m} variables");
    // The coefficient of m_λ counts pairs (α, β) from the two orbits with
    // α + β = λ, λ taken in its sorted arrangement.
    let a = mu.padded(m);
    let b_orbit = distinct_permutations(&nu.padded(m));
    let mut table: MonoTable = BTreeMap::new();
    for alpha in distinct_permutations(&a) {
        for beta in &b_orbit {
            let s: Vec<u32> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if s.windows(2).all(|w| w[0] >= w[1]) {
                *table.entry(Partition::new(s).unwrap()).or_insert_with(BigInt::zero) += 1;
            }
        }
    }
    let table = Arc::new(table);
    mono_cache().write().unwrap().insert(key, table.clone());
    table
}

/// `m_μ · m_ν` in the monomial basis.
pub fn mono_mul(mu: &Partition, nu: &Partition, m: usize) -> SymPoly {
    let table = mono_mul_table(mu, nu, m);
    let mut out = SymPoly::zero(m, mu.size() + nu.size());
    for (k, c) in table.iter() {
        out.add_term(k.clone(), QtRational::from_integer(c.clone()));
    }
    out
}

pub fn multiply(f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
    if f.m != g.m {
        return Err(Error::VariableCountMismatch(f.m, g.m));
    }
    let m = f.m;
    let mut acc: BTreeMap<Partition, Vec<QtRational>> = BTreeMap::new();
    for (a, ca) in &f.coeffs {
        for (b, cb) in &g.coeffs {
            let c = ca * cb;
            for (k, n) in mono_mul_table(a, b, m).iter() {
                acc.entry(k.clone()).or_default().push(c.scale_int(n));
            }
        }
    }
    let mut out = SymPoly::zero(m, f.degree + g.degree);
    for (k, parts) in acc {
        out.add_term(k, parts.into_iter().sum());
    }
    Ok(out)
}

/// Dominance order on partitions of equal size.
pub fn dominance_leq(mu: &Partition, nu: &Partition) -> Result<bool> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let len = mu.len().max(nu.len());
    let (mut a, mut b) = (0u32, 0u32);
    for i in 1..=len {
        a += mu.get(i);
        b += nu.get(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn int(c: i64) -> QtRational {
        QtRational::from_i64(c)
    }

    #[test]
    fn small_products() {
        let sq = mono_mul(&p(&[1]), &p(&[1]), 2);
        assert_eq!(sq, SymPoly::from_terms(2, 2, [(p(&[2]), int(1)), (p(&[1, 1]), int(2))]));
        let e = mono_mul(&p(&[1]), &p(&[1, 1]), 3);
        assert_eq!(e, SymPoly::from_terms(3, 3, [(p(&[2, 1]), int(1)), (p(&[1, 1, 1]), int(3))]));
        assert_eq!(mono_mul(&p(&[]), &p(&[2, 1]), 3), SymPoly::monomial(p(&[2, 1]), 3));
    }

    #[test]
    fn cube_in_two_variables() {
        let x = SymPoly::monomial(p(&[1]), 2);
        let c = multiply(&multiply(&x, &x).unwrap(), &x).unwrap();
        assert_eq!(c, SymPoly::from_terms(2, 3, [(p(&[3]), int(1)), (p(&[2, 1]), int(3))]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominance_leq(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&p(&[2, 1]), 3), BigInt::from(6));
        assert_eq!(orbit_size(&p(&[1, 1]), 3), BigInt::from(3));
        assert_eq!(orbit_size(&p(&[]), 4), BigInt::from(1));
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
    }
}

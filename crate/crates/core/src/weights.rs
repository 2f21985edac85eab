//! Dominant weights of `A_n`, partitions, and the weight offsets `ρ` used by
//! the Pieri and recurrence expansions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `λ = Σ λ_i ω_i` with `λ_i ≥ 0`; the rank `n` is the number of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    coords: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coords: Vec<u32>) -> DominantWeight {
        DominantWeight { coords }
    }

    pub fn zero(n: usize) -> DominantWeight {
        DominantWeight { coords: vec![0; n] }
    }

    /// `r ω_1` in rank `n`.
    pub fn row(n: usize, r: u32) -> DominantWeight {
        let mut coords = vec![0; n];
        if n > 0 {
            coords[0] = r;
        }
        DominantWeight { coords }
    }

    /// `None` when some coordinate is negative.
    pub fn from_signed(coords: &[i64]) -> Option<DominantWeight> {
        coords
            .iter()
            .map(|&c| u32::try_from(c).ok())
            .collect::<Option<Vec<u32>>>()
            .map(DominantWeight::new)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// 1-based coordinate; `ω_0 = ω_{n+1} = 0` so out-of-range indices read 0.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 || i > self.coords.len() {
            0
        } else {
            self.coords[i - 1]
        }
    }

    pub fn signed(&self) -> Vec<i64> {
        self.coords.iter().map(|&c| c as i64).collect()
    }

    /// Parses `"2,0,1"`.
    pub fn parse(s: &str) -> Result<DominantWeight> {
        parse_list(s).map(DominantWeight::new)
    }
}

impl fmt::Debug for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.coords))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.coords))
    }
}

/// A partition stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Partition> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts.iter().map(|&p| p as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts the entries into weakly decreasing order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Partition {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn row(r: u32) -> Partition {
        Partition::from_unsorted(vec![r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// 1-based part; zero beyond the length.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn padded(&self, m: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(m.max(v.len()), 0);
        v
    }

    pub fn parse(s: &str) -> Result<Partition> {
        Partition::new(parse_list(s)?)
    }

    /// All partitions of `size` with at most `max_len` parts, in
    /// lexicographically decreasing order.
    pub fn all(size: u32, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=rem.min(max_part)).rev() {
                cur.push(p);
                rec(rem - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        rec(size, size, max_len, &mut cur, &mut out);
        out
    }

    /// `self / inner` is a horizontal strip: `inner ⊆ self` and
    /// `self_{i+1} ≤ inner_i` for every `i`.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        if inner.len() > self.len() || self.len() > inner.len() + 1 {
            return false;
        }
        (1..=self.len()).all(|i| {
            let outer = self.get(i);
            let inn = inner.get(i);
            inn <= outer && (i == 1 || outer <= inner.get(i - 1))
        })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.parts))
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad integer list {s:?}"))))
        .collect()
}

/// `μ_i = Σ_{j ≥ i} λ_j`, the representative with `μ_{n+1} = 0`.
pub fn weight_to_partition(lambda: &DominantWeight) -> Partition {
    let n = lambda.n();
    let mut parts = vec![0u32; n];
    let mut acc = 0;
    for i in (0..n).rev() {
        acc += lambda.coords[i];
        parts[i] = acc;
    }
    Partition::new(parts).expect("suffix sums decrease")
}

/// `λ_i = κ_i − κ_{i+1}`.
pub fn partition_to_weight(kappa: &Partition, n: usize) -> Result<DominantWeight> {
    if kappa.len() > n + 1 {
        return Err(Error::LengthExceedsVariables(kappa.parts.clone(), n + 1));
    }
    Ok(DominantWeight::new((1..=n).map(|i| kappa.get(i) - kappa.get(i + 1)).collect()))
}

/// Checks a raw sequence before converting it.
pub fn sequence_to_weight(parts: &[i64], n: usize) -> Result<DominantWeight> {
    if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p < 0) {
        return Err(Error::NotAPartition(parts.to_vec()));
    }
    let p = Partition::new(parts.iter().map(|&x| x as u32).collect())?;
    partition_to_weight(&p, n)
}

/// Removes full columns: `(κ − κ_{n+1}(1^{n+1}), κ_{n+1})`.
pub fn reduce_partition(kappa: &Partition, n: usize) -> (Partition, u32) {
    assert!(kappa.len() <= n + 1, "partition longer than n+1");
    let s = kappa.get(n + 1);
    let parts = (1..=n + 1).map(|i| kappa.get(i) - s).collect();
    (Partition::new(parts).unwrap(), s)
}

/// All `θ ∈ ℕ^len` with `|θ| ≤ max_sum` (or `= max_sum` when `exact`), in
/// colex ascending order.
pub fn multi_indices(len: usize, max_sum: u32, exact: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(i: usize, rem: u32, exact: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if !exact || rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=rem {
            cur[i] = v;
            rec(i + 1, rem - v, exact, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max_sum, exact, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// All dominant weights of rank `n` whose partition has size at most `max_size`.
pub fn dominant_weights_up_to(n: usize, max_size: u32) -> Vec<DominantWeight> {
    let mut out: Vec<DominantWeight> = (0..=max_size)
        .flat_map(|s| Partition::all(s, n))
        .map(|p| partition_to_weight(&p, n).unwrap())
        .collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Pieri,
    Recurrence,
}

/// The offset `ρ` attached to `(θ, k, r)`, as a vector on the `ω` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOffset {
    pub n: usize,
    pub k: usize,
    pub r: i64,
    pub theta: Vec<u32>,
    pub value: Vec<i64>,
}

/// `ρ = Σ_{i≤k−2}(θ_i−θ_{i+1})ω_i + θ_{k−1}ω_{k−1} [+ (r−|θ|)(ω_k−ω_{k−1})]
/// − θ_k ω_{k+1} + Σ_{i≥k+2}(θ_{i−2}−θ_{i−1})ω_i` for `θ ∈ ℕ^{n−1}`; the
/// bracketed term belongs to the Pieri variant only.
pub fn rho_offset(theta: &[u32], k: usize, r: i64, n: usize, variant: Variant) -> Result<WeightOffset> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if theta.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, got: theta.len() });
    }
    let th = |i: usize| -> i64 {
        if i == 0 || i > theta.len() {
            0
        } else {
            theta[i - 1] as i64
        }
    };
    let mut value = vec![0i64; n + 2];
    for i in 1..=k.saturating_sub(2) {
        value[i] += th(i) - th(i + 1);
    }
    if k >= 2 {
        value[k - 1] += th(k - 1);
    }
    if variant == Variant::Pieri {
        let free = r - theta.iter().map(|&x| x as i64).sum::<i64>();
        value[k] += free;
        if k >= 2 {
            value[k - 1] -= free;
        }
    }
    value[k + 1] -= th(k);
    for i in (k + 2)..=n {
        value[i] += th(i - 2) - th(i - 1);
    }
    // ω_0 = ω_{n+1} = 0
    let value = value[1..=n].to_vec();
    Ok(WeightOffset { n, k, r, theta: theta.to_vec(), value })
}

/// `ρ = Σ_{i=1}^n (θ_i − θ_{i+1}) ω_i` for `θ ∈ ℕ^{n+1}`.
pub fn rho_full(theta: &[u32]) -> Vec<i64> {
    let n = theta.len() - 1;
    (0..n).map(|i| theta[i] as i64 - theta[i + 1] as i64).collect()
}

/// `λ + ρ` as a signed vector.
pub fn shift_weight(lambda: &DominantWeight, rho: &[i64]) -> Vec<i64> {
    lambda.coords.iter().zip(rho).map(|(&a, &b)| a as i64 + b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> DominantWeight {
        DominantWeight::new(v.to_vec())
    }

    #[test]
    fn conversions() {
        assert_eq!(weight_to_partition(&w(&[0, 0])), Partition::empty());
        assert_eq!(weight_to_partition(&w(&[1, 1])).parts(), &[2, 1]);
        assert_eq!(weight_to_partition(&w(&[2, 0, 1])).parts(), &[3, 1, 1]);
        assert_eq!(partition_to_weight(&Partition::new(vec![2, 1, 0]).unwrap(), 2).unwrap(), w(&[1, 1]));
        assert_eq!(partition_to_weight(&Partition::new(vec![3, 3, 3]).unwrap(), 2).unwrap(), w(&[0, 0]));
        assert_eq!(partition_to_weight(&Partition::new(vec![5, 2]).unwrap(), 3).unwrap(), w(&[3, 2, 0]));
        assert!(matches!(sequence_to_weight(&[1, 2], 2), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn reductions() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(reduce_partition(&p(&[3, 2, 1]), 2), (p(&[2, 1]), 1));
        assert_eq!(reduce_partition(&p(&[2, 2, 2, 2]), 3), (p(&[]), 2));
        assert_eq!(reduce_partition(&p(&[4, 1, 0]), 2), (p(&[4, 1]), 0));
    }

    #[test]
    fn rho_examples() {
        let z = rho_offset(&[0, 0], 2, 0, 3, Variant::Recurrence).unwrap();
        assert_eq!(z.value, vec![0, 0, 0]);
        assert_eq!(rho_offset(&[5], 2, 7, 2, Variant::Recurrence).unwrap().value, vec![5, 0]);
        assert_eq!(rho_offset(&[2, 1], 1, 3, 3, Variant::Recurrence).unwrap().value, vec![0, -2, 1]);
        assert!(matches!(rho_offset(&[0], 3, 0, 2, Variant::Pieri), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn colex_indices() {
        let v = multi_indices(2, 2, false);
        assert_eq!(v, vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(3, 1, true), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(multi_indices(0, 3, false), vec![Vec::<u32>::new()]);
        assert_eq!(dominant_weights_up_to(2, 2).len(), 4);
    }

    #[test]
    fn partitions_enumerate() {
        let all = Partition::all(4, 2);
        let got: Vec<Vec<u32>> = all.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![4], vec![3, 1], vec![2, 2]]);
        assert_eq!(Partition::all(0, 3), vec![Partition::empty()]);
    }

    #[test]
    fn horizontal_strips() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert!(p(&[2]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[1, 1]).is_horizontal_strip_over(&p(&[1])));
        assert!(!p(&[2, 2]).is_horizontal_strip_over(&p(&[1, 1])));
        assert!(!p(&[1, 1]).is_horizontal_strip_over(&p(&[])));
        assert!(p(&[3, 1]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).is_horizontal_strip_over(&p(&[2])));
        assert!(!p(&[2, 2]).is_horizontal_strip_over(&p(&[1])));
    }
}

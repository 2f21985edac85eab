//! Exponent vectors and rational-coefficient Laurent monomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of slots in the fixed variable universe: `q`, `t`, `u0`..`u5`.
pub const NVARS: usize = 8;

/// Highest symbolic parameter index available (`u0`..`u5`).
pub const MAX_PARAM: usize = NVARS - 3;

/// A ring variable. The universe is fixed: `q`, `t` and the symbolic
/// parameters `u0`..`u5`, in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    U(u8),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Q => 0,
            Var::T => 1,
            Var::U(i) => {
                assert!((i as usize) <= MAX_PARAM, "parameter u{i} outside the variable universe");
                2 + i as usize
            }
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::Q,
            1 => Var::T,
            _ => Var::U((i - 2) as u8),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::Q => "q".into(),
            Var::T => "t".into(),
            Var::U(i) => format!("u{i}"),
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "q" => Some(Var::Q),
            "t" => Some(Var::T),
            _ => {
                let rest = s.strip_prefix('u')?;
                let i: usize = rest.parse().ok()?;
                (i <= MAX_PARAM).then_some(Var::U(i as u8))
            }
        }
    }
}

/// Exponent vector over the fixed universe. Negative entries are allowed
/// (Laurent monomials).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exps(pub [i32; NVARS]);

impl Exps {
    pub const ZERO: Exps = Exps([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Exps {
        let mut x = Exps::ZERO;
        x.0[v.index()] = e;
        x
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn scale(&self, k: i32) -> Exps {
        let mut x = *self;
        for e in x.0.iter_mut() {
            *e *= k;
        }
        x
    }

    pub fn meet(&self, other: &Exps) -> Exps {
        let mut x = *self;
        for (a, b) in x.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        x
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Exps) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Split into the positive and (negated) negative parts.
    pub fn split_signs(&self) -> (Exps, Exps) {
        let mut pos = Exps::ZERO;
        let mut neg = Exps::ZERO;
        for i in 0..NVARS {
            if self.0[i] > 0 {
                pos.0[i] = self.0[i];
            } else {
                neg.0[i] = -self.0[i];
            }
        }
        (pos, neg)
    }

    /// Indices of the variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..NVARS).filter(move |&i| self.0[i] != 0)
    }
}

impl Add for Exps {
    type Output = Exps;
    fn add(mut self, rhs: Exps) -> Exps {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += *b;
        }
        self
    }
}

impl Sub for Exps {
    type Output = Exps;
    fn sub(mut self, rhs: Exps) -> Exps {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= *b;
        }
        self
    }
}

impl Neg for Exps {
    type Output = Exps;
    fn neg(self) -> Exps {
        self.scale(-1)
    }
}

/// Graded lexicographic order: total degree first, then lexicographic with
/// `q > t > u0 > ...`.
impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_exps(self, "*"))
    }
}

/// Renders `q^2*t*u0^-1`; empty string for the zero vector.
pub(crate) fn render_exps(e: &Exps, sep: &str) -> String {
    let mut parts = Vec::new();
    for i in e.support() {
        let name = Var::from_index(i).name();
        let k = e.0[i];
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{k}"));
        }
    }
    parts.join(sep)
}

/// `coeff * x^exps` with a nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub exps: Exps,
}

impl Monomial {
    pub fn new(coeff: BigRational, exps: Exps) -> Monomial {
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        Monomial { coeff, exps }
    }

    pub fn one() -> Monomial {
        Monomial { coeff: BigRational::one(), exps: Exps::ZERO }
    }

    pub fn var(v: Var) -> Monomial {
        Monomial { coeff: BigRational::one(), exps: Exps::var(v, 1) }
    }

    /// `q^a t^b` with unit coefficient.
    pub fn qt(a: i32, b: i32) -> Monomial {
        let mut e = Exps::ZERO;
        e.0[0] = a;
        e.0[1] = b;
        Monomial { coeff: BigRational::one(), exps: e }
    }

    pub fn from_exps(exps: Exps) -> Monomial {
        Monomial { coeff: BigRational::one(), exps }
    }

    pub fn constant(c: BigRational) -> Monomial {
        Monomial::new(c, Exps::ZERO)
    }

    pub fn integer(c: i64) -> Monomial {
        Monomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// True when `1 - self` vanishes identically.
    pub fn is_one(&self) -> bool {
        self.exps.is_zero() && self.coeff.is_one()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { coeff: &self.coeff * &other.coeff, exps: self.exps + other.exps }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial { coeff: &self.coeff / &other.coeff, exps: self.exps - other.exps }
    }

    pub fn inv(&self) -> Monomial {
        Monomial { coeff: self.coeff.recip(), exps: -self.exps }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let c = if k >= 0 {
            num_traits::pow(self.coeff.clone(), k as usize)
        } else {
            num_traits::pow(self.coeff.recip(), (-k) as usize)
        };
        Monomial { coeff: c, exps: self.exps.scale(k) }
    }

    /// Multiply by `q^j`.
    pub fn shift_q(&self, j: i32) -> Monomial {
        let mut m = self.clone();
        m.exps.0[0] += j;
        m
    }

    pub fn times_qt(&self, a: i32, b: i32) -> Monomial {
        let mut m = self.clone();
        m.exps.0[0] += a;
        m.exps.0[1] += b;
        m
    }

    /// Simultaneous substitution of monomials for variables.
    pub fn substitute(&self, assignment: &[(Var, Monomial)]) -> Monomial {
        let mut out = Monomial { coeff: self.coeff.clone(), exps: self.exps };
        for (v, _) in assignment {
            out.exps.0[v.index()] = 0;
        }
        for (v, value) in assignment {
            let e = self.exps.get(*v);
            if e != 0 {
                out = out.mul(&value.pow(e));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps).then_with(|| self.coeff.cmp(&other.coeff))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = render_exps(&self.exps, "*");
        if body.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "{body}")
        } else if (-&self.coeff).is_one() {
            write!(f, "-{body}")
        } else if self.coeff.is_negative() || !self.coeff.is_integer() {
            write!(f, "({})*{body}", self.coeff)
        } else {
            write!(f, "{}*{body}", self.coeff)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_orders_by_degree_then_q_first() {
        let q = Exps::var(Var::Q, 1);
        let t = Exps::var(Var::T, 1);
        let one = Exps::ZERO;
        assert!(one < t);
        assert!(t < q);
        assert!(q < q + t);
        assert!(Exps::var(Var::T, 2) < q + t);
    }

    #[test]
    fn substitution_is_simultaneous() {
        // u0 -> u1, u1 -> u0 swaps
        let m = Monomial::from_exps(Exps::var(Var::U(0), 2) + Exps::var(Var::U(1), 1));
        let swapped = m.substitute(&[(Var::U(0), Monomial::var(Var::U(1))), (Var::U(1), Monomial::var(Var::U(0)))]);
        assert_eq!(swapped.exps, Exps::var(Var::U(1), 2) + Exps::var(Var::U(0), 1));
    }
}

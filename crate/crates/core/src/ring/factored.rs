//! Products of binomials `(1 - b)^m` with exact zero/pole bookkeeping, and
//! the q-shifted factorials built from them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::cyclotomic::{divisors, psi};
use super::fraction::FactoredFraction;
use super::monomial::{Exps, Monomial, Var};
use super::poly::MultiPoly;
use super::rational::QtRational;
use crate::error::{Error, Result};

/// `prefactor * ∏ (1 - b)^m`, with the vanishing binomials `(1 - 1)` kept
/// only as counters.
#[derive(Clone, PartialEq, Eq)]
pub struct FactoredProduct {
    prefactor: Monomial,
    factors: BTreeMap<Monomial, i32>,
    numerator_zeros: u32,
    denominator_zeros: u32,
}

/// Result of evaluating a [`FactoredProduct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Value(QtRational),
    Zero,
    Pole,
}

impl Evaluation {
    /// The value, with `Zero` mapped to 0 and `Pole` to an error.
    pub fn value(self) -> Result<QtRational> {
        match self {
            Evaluation::Value(v) => Ok(v),
            Evaluation::Zero => Ok(QtRational::zero()),
            Evaluation::Pole => Err(Error::Pole("indeterminate or infinite product".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Evaluation::Zero)
    }
}

impl Default for FactoredProduct {
    fn default() -> Self {
        FactoredProduct::one()
    }
}

impl FactoredProduct {
    pub fn one() -> FactoredProduct {
        FactoredProduct {
            prefactor: Monomial::one(),
            factors: BTreeMap::new(),
            numerator_zeros: 0,
            denominator_zeros: 0,
        }
    }

    /// A product carrying one vanishing factor.
    pub fn zero() -> FactoredProduct {
        FactoredProduct { numerator_zeros: 1, ..FactoredProduct::one() }
    }

    pub fn monomial(m: Monomial) -> FactoredProduct {
        FactoredProduct { prefactor: m, ..FactoredProduct::one() }
    }

    /// `(1 - b)^m`.
    pub fn binomial(b: &Monomial, m: i32) -> FactoredProduct {
        let mut fp = FactoredProduct::one();
        fp.insert(b.clone(), m);
        fp
    }

    pub fn prefactor(&self) -> &Monomial {
        &self.prefactor
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i32)> {
        self.factors.iter().map(|(b, m)| (b, *m))
    }

    pub fn numerator_zeros(&self) -> u32 {
        self.numerator_zeros
    }

    pub fn denominator_zeros(&self) -> u32 {
        self.denominator_zeros
    }

    /// Multiply in `(1 - b)^m`, keeping every stored base oriented so that
    /// its first nonzero exponent is positive.
    fn insert(&mut self, b: Monomial, m: i32) {
        if m == 0 {
            return;
        }
        if b.exps.is_zero() {
            if b.coeff.is_one() {
                if m > 0 {
                    self.numerator_zeros += m as u32;
                } else {
                    self.denominator_zeros += (-m) as u32;
                }
            } else {
                let c = BigRational::one() - &b.coeff;
                self.prefactor = self.prefactor.mul(&Monomial::constant(c).pow(m));
            }
            return;
        }
        let lead = b.exps.0.iter().copied().find(|&e| e != 0).unwrap();
        let base = if lead < 0 {
            // 1 - c x^e = -c x^e (1 - c^{-1} x^{-e})
            let unit = Monomial::new(-b.coeff.clone(), b.exps);
            self.prefactor = self.prefactor.mul(&unit.pow(m));
            b.inv()
        } else {
            b
        };
        match self.factors.entry(base) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(m);
            }
        }
    }

    pub fn mul(&self, other: &FactoredProduct) -> FactoredProduct {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &FactoredProduct) {
        self.prefactor = self.prefactor.mul(&other.prefactor);
        for (b, m) in &other.factors {
            self.insert(b.clone(), *m);
        }
        self.numerator_zeros += other.numerator_zeros;
        self.denominator_zeros += other.denominator_zeros;
    }

    pub fn inv(&self) -> FactoredProduct {
        FactoredProduct {
            prefactor: self.prefactor.inv(),
            factors: self.factors.iter().map(|(b, m)| (b.clone(), -m)).collect(),
            numerator_zeros: self.denominator_zeros,
            denominator_zeros: self.numerator_zeros,
        }
    }

    pub fn div(&self, other: &FactoredProduct) -> FactoredProduct {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> FactoredProduct {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let k32 = k as u32;
        FactoredProduct {
            prefactor: self.prefactor.pow(k),
            factors: self.factors.iter().filter(|_| k != 0).map(|(b, m)| (b.clone(), m * k)).collect(),
            numerator_zeros: self.numerator_zeros * k32,
            denominator_zeros: self.denominator_zeros * k32,
        }
    }

    pub fn scale(&self, m: &Monomial) -> FactoredProduct {
        let mut out = self.clone();
        out.prefactor = out.prefactor.mul(m);
        out
    }

    /// Substitute monomials for variables in the prefactor and every base.
    /// Bases that become 1 are moved into the zero counters.
    pub fn specialize(&self, assignment: &[(Var, Monomial)]) -> FactoredProduct {
        let mut out = FactoredProduct {
            prefactor: self.prefactor.substitute(assignment),
            factors: BTreeMap::new(),
            numerator_zeros: self.numerator_zeros,
            denominator_zeros: self.denominator_zeros,
        };
        for (b, m) in &self.factors {
            out.insert(b.substitute(assignment), *m);
        }
        out
    }

    /// True when the zero counters force the value to vanish.
    pub fn is_zero(&self) -> bool {
        self.numerator_zeros > self.denominator_zeros
    }

    pub fn evaluate(&self) -> Evaluation {
        if self.numerator_zeros > self.denominator_zeros {
            return Evaluation::Zero;
        }
        if self.denominator_zeros > 0 {
            return Evaluation::Pole;
        }
        Evaluation::Value(self.expand())
    }

    pub fn value(&self) -> Result<QtRational> {
        self.evaluate().value()
    }

    /// Splits the regular factors into cyclotomic multiplicities keyed by
    /// `(d, p)` for `Ψ_d(x^p)` and the remaining opaque binomials.
    #[allow(clippy::type_complexity)]
    fn split_factors(&self) -> (BTreeMap<(u32, Exps), i32>, Vec<(&Monomial, i32)>) {
        let mut cyclo: BTreeMap<(u32, Exps), i32> = BTreeMap::new();
        let mut opaque: Vec<(&Monomial, i32)> = Vec::new();
        for (b, &m) in &self.factors {
            let g = b.exps.0.iter().fold(0i32, |g, &e| g.gcd(&e));
            let p = Exps(b.exps.0.map(|e| e / g));
            let g = g as u32;
            if b.coeff.is_one() {
                for d in divisors(g) {
                    *cyclo.entry((d, p)).or_insert(0) += m;
                }
            } else if (-&b.coeff).is_one() {
                for d in divisors(2 * g) {
                    if !g.is_multiple_of(d) {
                        *cyclo.entry((d, p)).or_insert(0) += m;
                    }
                }
            } else {
                opaque.push((b, m));
            }
        }
        cyclo.retain(|_, m| *m != 0);
        (cyclo, opaque)
    }

    /// Exact equality of values. Products built only from `1 - x^e` and
    /// `1 + x^e` are compared through their irreducible factorizations,
    /// without expanding anything.
    pub fn same_value(&self, other: &FactoredProduct) -> Result<bool> {
        match (self.evaluate_shape(), other.evaluate_shape()) {
            (Shape::Pole, _) | (_, Shape::Pole) => Err(Error::Pole("comparison of singular products".into())),
            (Shape::Zero, Shape::Zero) => Ok(true),
            (Shape::Zero, _) | (_, Shape::Zero) => Ok(false),
            _ => {
                let quotient = self.div(other);
                let (cyclo, opaque) = quotient.split_factors();
                if opaque.is_empty() {
                    Ok(cyclo.is_empty() && quotient.prefactor.is_one())
                } else {
                    Ok(self.expand() == other.expand())
                }
            }
        }
    }

    /// The value as a [`FactoredFraction`], keeping the denominator split
    /// into irreducible cyclotomic pieces.
    pub fn to_fraction(&self) -> Result<FactoredFraction> {
        match self.evaluate_shape() {
            Shape::Zero => return Ok(FactoredFraction::zero()),
            Shape::Pole => return Err(Error::Pole("indeterminate or infinite product".into())),
            Shape::Regular => {}
        }
        let (cyclo, opaque) = self.split_factors();
        let mut num: Vec<(MultiPoly, bool)> = Vec::new();
        let mut den: Vec<(MultiPoly, bool)> = Vec::new();
        let mut coeff = self.prefactor.coeff.clone();
        for ((d, p), m) in cyclo {
            let poly = psi_at(d, p);
            let side = if m > 0 { &mut num } else { &mut den };
            side.extend(std::iter::repeat_n((poly, true), m.unsigned_abs() as usize));
        }
        for (b, m) in opaque {
            // 1 - (a/c) x^e = (c - a x^e) / c
            let cden = b.coeff.denom();
            let poly = &MultiPoly::constant(cden.clone()) - &MultiPoly::term(b.exps, b.coeff.numer().clone());
            let scale = BigRational::from_integer(cden.clone()).pow(m);
            coeff /= scale;
            let side = if m > 0 { &mut num } else { &mut den };
            side.extend(std::iter::repeat_n((poly, false), m.unsigned_abs() as usize));
        }
        Ok(FactoredFraction::with_factors(coeff, MultiPoly::monomial(self.prefactor.exps), num, den))
    }

    fn evaluate_shape(&self) -> Shape {
        if self.numerator_zeros > self.denominator_zeros {
            Shape::Zero
        } else if self.denominator_zeros > 0 {
            Shape::Pole
        } else {
            Shape::Regular
        }
    }

    /// Expand the regular part. Cyclotomic pieces `Ψ_d(x^p)` (with `p`
    /// primitive) are irreducible and pairwise distinct, so numerator and
    /// denominator are coprime without a gcd; binomials with other
    /// coefficients go through a gcd.
    fn expand(&self) -> QtRational {
        let (cyclo, opaque) = self.split_factors();
        let mut num_parts: Vec<MultiPoly> = Vec::new();
        let mut den_parts: Vec<MultiPoly> = Vec::new();
        for ((d, p), m) in cyclo {
            if m == 0 {
                continue;
            }
            let poly = psi_at(d, p);
            let target = if m > 0 { &mut num_parts } else { &mut den_parts };
            for _ in 0..m.unsigned_abs() {
                target.push(poly.clone());
            }
        }
        let c = &self.prefactor.coeff;
        let (pos, neg) = self.prefactor.exps.split_signs();
        num_parts.push(MultiPoly::term(pos, c.numer().clone()));
        den_parts.push(MultiPoly::term(neg, c.denom().clone()));
        let main = QtRational::from_coprime(product(num_parts), product(den_parts));
        if opaque.is_empty() {
            return main;
        }
        let mut on: Vec<MultiPoly> = Vec::new();
        let mut od: Vec<MultiPoly> = Vec::new();
        for (b, m) in opaque {
            // 1 - (a/c) x^e = (c - a x^e) / c
            let a = b.coeff.numer();
            let cden = b.coeff.denom();
            let poly = &MultiPoly::constant(cden.clone()) - &MultiPoly::term(b.exps, a.clone());
            let (top, bottom) = if m > 0 { (&mut on, &mut od) } else { (&mut od, &mut on) };
            for _ in 0..m.unsigned_abs() {
                top.push(poly.clone());
                bottom.push(MultiPoly::constant(cden.clone()));
            }
        }
        let rest = QtRational::new(product(on), product(od)).expect("nonzero binomials");
        &main * &rest
    }
}

enum Shape {
    Zero,
    Pole,
    Regular,
}

fn psi_at(d: u32, p: Exps) -> MultiPoly {
    let dense = psi(d);
    MultiPoly::from_terms(
        dense
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (p.scale(k as i32), BigInt::from(*c))),
    )
}

fn product(mut parts: Vec<MultiPoly>) -> MultiPoly {
    if parts.is_empty() {
        return MultiPoly::one();
    }
    // balanced pairing keeps intermediate sizes even
    while parts.len() > 1 {
        parts.sort_by_key(|p| std::cmp::Reverse(p.len()));
        let a = parts.pop().unwrap();
        let b = parts.pop().unwrap();
        parts.push(&a * &b);
    }
    parts.pop().unwrap()
}

/// The q-shifted factorial `(b; q)_r`, with `(b;q)_{-m} = 1/(b q^{-m}; q)_m`.
pub fn poch(b: &Monomial, r: i32) -> FactoredProduct {
    let mut fp = FactoredProduct::one();
    if r >= 0 {
        for j in 0..r {
            fp.insert(b.shift_q(j), 1);
        }
    } else {
        for j in 1..=(-r) {
            fp.insert(b.shift_q(-j), -1);
        }
    }
    fp
}

/// `(b; q^{-1})_r`: `∏_{j<r} (1 - b q^{-j})`, extended to negative `r` the
/// same way as [`poch`].
pub fn poch_inv_q(b: &Monomial, r: i32) -> FactoredProduct {
    let mut fp = FactoredProduct::one();
    if r >= 0 {
        for j in 0..r {
            fp.insert(b.shift_q(-j), 1);
        }
    } else {
        for j in 1..=(-r) {
            fp.insert(b.shift_q(j), -1);
        }
    }
    fp
}

/// `(a;q)_r / (b;q)_r`.
pub fn poch_ratio(a: &Monomial, b: &Monomial, r: i32) -> FactoredProduct {
    poch(a, r).div(&poch(b, r))
}

impl fmt::Debug for FactoredProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefactor)?;
        for (b, m) in &self.factors {
            write!(f, " (1 - {b})^{m}")?;
        }
        if self.numerator_zeros > 0 || self.denominator_zeros > 0 {
            write!(f, " [zeros {}/{}]", self.numerator_zeros, self.denominator_zeros)?;
        }
        Ok(())
    }
}

#[allow(dead_code)]
fn sign_of(c: &BigRational) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Monomial {
        Monomial::var(Var::Q)
    }
    fn t() -> Monomial {
        Monomial::var(Var::T)
    }

    #[test]
    fn poch_examples() {
        assert_eq!(poch(&t(), 0).value().unwrap(), QtRational::one());
        assert_eq!(poch(&t(), 2).value().unwrap().render(), "1 - t - q*t + q*t^2");
        let p = poch(&q(), -1);
        assert_eq!(p.denominator_zeros(), 1);
        assert_eq!(p.evaluate(), Evaluation::Pole);
        assert_eq!(p.inv().evaluate(), Evaluation::Zero);
        let r = poch(&t(), 1).div(&poch(&q(), 1));
        assert_eq!(r.value().unwrap().render(), "(1 - t)/(1 - q)");
        let qm2 = Monomial::qt(-2, 0);
        let v = poch(&qm2, 2).value().unwrap();
        assert_eq!(v.render(), "(1 - q - q^2 + q^3)/(q^3)");
        assert_eq!(poch(&Monomial::qt(-1, 0), 2).evaluate(), Evaluation::Zero);
    }

    #[test]
    fn inversion_cancels_exactly() {
        for m in 1..=6 {
            let b = Monomial::var(Var::U(0)).mul(&t());
            let fp = poch(&b, -m).mul(&poch(&b.shift_q(-m), m));
            assert_eq!(fp.evaluate(), Evaluation::Value(QtRational::one()));
        }
    }

    #[test]
    fn opaque_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let b = Monomial::new(half, Exps::var(Var::Q, 1));
        let v = FactoredProduct::binomial(&b, 1).value().unwrap();
        assert_eq!(v.render(), "(2 - q)/(2)");
        // (1 - 4q^2)/(1 - 2q) = 1 + 2q
        let four = Monomial::new(BigRational::from_integer(4.into()), Exps::var(Var::Q, 2));
        let two = Monomial::new(BigRational::from_integer(2.into()), Exps::var(Var::Q, 1));
        let w = FactoredProduct::binomial(&four, 1).div(&FactoredProduct::binomial(&two, 1));
        assert_eq!(w.value().unwrap().render(), "1 + 2*q");
    }

    #[test]
    fn cyclotomic_cancellation() {
        // (1+q)(1-q) / (1-q^2) = 1
        let neg_q = Monomial::new(-BigRational::one(), Exps::var(Var::Q, 1));
        let fp = FactoredProduct::binomial(&neg_q, 1)
            .mul(&FactoredProduct::binomial(&q(), 1))
            .div(&FactoredProduct::binomial(&q().pow(2), 1));
        assert_eq!(fp.value().unwrap(), QtRational::one());
    }
}

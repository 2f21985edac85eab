//! Reduced fractions of polynomials: the coefficient field of every formula.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::gcd;
use super::monomial::{Exps, Monomial, Var, NVARS};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1`, both free of negative exponents,
/// no common integer content, and the lowest graded-lex term of `den`
/// positive. Two equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QtRational {
    num: MultiPoly,
    den: MultiPoly,
}

impl QtRational {
    pub fn zero() -> QtRational {
        QtRational { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> QtRational {
        QtRational { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn from_i64(c: i64) -> QtRational {
        QtRational::from_poly(MultiPoly::from_i64(c))
    }

    pub fn from_integer(c: BigInt) -> QtRational {
        QtRational::from_poly(MultiPoly::constant(c))
    }

    pub fn from_ratio(c: &BigRational) -> QtRational {
        QtRational::from_coprime(MultiPoly::constant(c.numer().clone()), MultiPoly::constant(c.denom().clone()))
    }

    pub fn var(v: Var) -> QtRational {
        QtRational::from_poly(MultiPoly::var(v))
    }

    /// A polynomial, possibly with negative exponents.
    pub fn from_poly(p: MultiPoly) -> QtRational {
        QtRational::from_coprime(p, MultiPoly::one())
    }

    pub fn from_monomial(m: &Monomial) -> QtRational {
        QtRational::from_coprime(
            MultiPoly::term(m.exps, m.coeff.numer().clone()),
            MultiPoly::constant(m.coeff.denom().clone()),
        )
    }

    /// General constructor: reduces by the full gcd.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<QtRational> {
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        if num.is_zero() {
            return Ok(QtRational::zero());
        }
        let (num, den) = clear_monomials(num, den);
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(QtRational::normalize(num, den));
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(QtRational::normalize(num, den))
    }

    /// Constructor for operands known to share no nonmonomial, nonconstant
    /// factor; only monomial, integer content and sign are normalized.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> QtRational {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QtRational::zero();
        }
        let (num, den) = clear_monomials(num, den);
        QtRational::normalize(num, den)
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> QtRational {
        let c = num.content().gcd(&den.content());
        let (mut num, mut den) = if c.is_one() {
            (num, den)
        } else {
            (num.div_scalar_exact(&c), den.div_scalar_exact(&c))
        };
        if den.trailing_sign_negative() {
            num = -num;
            den = -den;
        }
        QtRational { num, den }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn recip(&self) -> Result<QtRational> {
        if self.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(QtRational::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i32) -> Result<QtRational> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(QtRational::from_coprime(base.num.pow(k), base.den.pow(k)))
    }

    /// Multiply by a unit monomial `x^e`.
    pub fn shift(&self, e: Exps) -> QtRational {
        QtRational::from_coprime(self.num.shift(e), self.den.clone())
    }

    pub fn scale_int(&self, c: &BigInt) -> QtRational {
        if c.is_zero() {
            return QtRational::zero();
        }
        QtRational::from_coprime(self.num.scale(c), self.den.clone())
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, assignment: &[(Var, QtRational)]) -> Result<QtRational> {
        if assignment.iter().all(|(_, v)| v.as_monomial().is_some()) {
            let mut images: [Option<(BigRational, Exps)>; NVARS] = Default::default();
            for (v, val) in assignment {
                let m = val.as_monomial().unwrap();
                images[v.index()] = Some((m.coeff, m.exps));
            }
            let (n, dn) = self.num.substitute_monomials(&images);
            let (d, dd) = self.den.substitute_monomials(&images);
            if d.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            return QtRational::new(n.scale(&dd), d.scale(&dn));
        }
        let n = substitute_poly(&self.num, assignment)?;
        let d = substitute_poly(&self.den, assignment)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        n.checked_div(&d)
    }

    /// `Some` when the value is `c x^e` for a rational `c`.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.num.len() != 1 || self.den.len() != 1 {
            return None;
        }
        let (en, cn) = &self.num.terms()[0];
        let (ed, cd) = &self.den.terms()[0];
        Some(Monomial::new(BigRational::new(cn.clone(), cd.clone()), *en - *ed))
    }

    pub fn checked_div(&self, rhs: &QtRational) -> Result<QtRational> {
        if rhs.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self * &rhs.recip()?)
    }

    /// Canonical string, e.g. `(1 - q)/(1 - q*t)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

fn substitute_poly(p: &MultiPoly, assignment: &[(Var, QtRational)]) -> Result<QtRational> {
    let mut total = QtRational::zero();
    for (e, c) in p.terms() {
        let mut rest = *e;
        let mut term = QtRational::from_integer(c.clone());
        for (v, val) in assignment {
            let k = e.get(*v);
            rest.0[v.index()] = 0;
            if k != 0 {
                term = &term * &val.pow(k)?;
            }
        }
        total = &total + &term.shift(rest);
    }
    Ok(total)
}

/// Move negative exponents of either side to the other side and remove the
/// common monomial content.
fn clear_monomials(num: MultiPoly, den: MultiPoly) -> (MultiPoly, MultiPoly) {
    let mn = num.min_exps();
    let md = den.min_exps();
    if mn.is_zero() && md.is_zero() {
        return (num, den);
    }
    let diff = mn - md;
    let (pos, neg) = diff.split_signs();
    (num.shift(-mn).shift(pos), den.shift(-md).shift(neg))
}

impl Add for &QtRational {
    type Output = QtRational;
    fn add(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.den.is_one() {
                return QtRational::from_coprime(n, self.den.clone());
            }
            return QtRational::new(n, self.den.clone()).unwrap();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let n = &self.num * &rhs.den + &rhs.num * &self.den;
            return QtRational::new(n, &self.den * &rhs.den).unwrap();
        }
        // Henrici: only the gcd of the two denominators can cancel.
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let n = &self.num * &rhs.den + &rhs.num * &self.den;
            let d = &self.den * &rhs.den;
            return QtRational::from_coprime(n, d);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let t = &self.num * &d1 + &rhs.num * &b1;
        if t.is_zero() {
            return QtRational::zero();
        }
        let g2 = gcd(&t, &g);
        if g2.is_constant() {
            return QtRational::from_coprime(t, &(&b1 * &d1) * &g);
        }
        let t = t.div_exact(&g2).unwrap();
        let g = g.div_exact(&g2).unwrap();
        QtRational::from_coprime(t, &(&b1 * &d1) * &g)
    }
}

impl Sub for &QtRational {
    type Output = QtRational;
    fn sub(self, rhs: &QtRational) -> QtRational {
        self + &(-rhs)
    }
}

impl Mul for &QtRational {
    type Output = QtRational;
    fn mul(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() || rhs.is_zero() {
            return QtRational::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        QtRational::from_coprime(&a * &c, &b * &d)
    }
}

/// Divide `x` and `y` by their gcd.
fn cancel(x: &MultiPoly, y: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if y.is_constant() || x.is_constant() {
        return (x.clone(), y.clone());
    }
    let g = gcd(x, y);
    if g.is_constant() || g.is_monomial() {
        return (x.clone(), y.clone());
    }
    (x.div_exact(&g).unwrap(), y.div_exact(&g).unwrap())
}

impl Div for &QtRational {
    type Output = QtRational;
    fn div(self, rhs: &QtRational) -> QtRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &QtRational {
    type Output = QtRational;
    fn neg(self) -> QtRational {
        QtRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QtRational {
    type Output = QtRational;
    fn neg(self) -> QtRational {
        QtRational { num: -self.num, den: self.den }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QtRational {
            type Output = QtRational;
            fn $m(self, rhs: QtRational) -> QtRational { (&self).$m(&rhs) }
        }
        impl $tr<&QtRational> for QtRational {
            type Output = QtRational;
            fn $m(self, rhs: &QtRational) -> QtRational { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for QtRational {
    fn sum<I: Iterator<Item = QtRational>>(iter: I) -> QtRational {
        iter.fold(QtRational::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for QtRational {
    fn product<I: Iterator<Item = QtRational>>(iter: I) -> QtRational {
        iter.fold(QtRational::one(), |a, b| &a * &b)
    }
}

impl From<i64> for QtRational {
    fn from(c: i64) -> QtRational {
        QtRational::from_i64(c)
    }
}

impl Default for QtRational {
    fn default() -> QtRational {
        QtRational::zero()
    }
}

impl fmt::Display for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// JSON form `{"num": "...", "den": "..."}` with canonical polynomial strings,
/// so integers of any size survive.
#[derive(Serialize, Deserialize)]
struct Wire {
    num: String,
    den: String,
}

impl Serialize for QtRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire { num: self.num.render(), den: self.den.render() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QtRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<QtRational, D::Error> {
        let w = Wire::deserialize(d)?;
        let num = super::parse_rational(&w.num).map_err(serde::de::Error::custom)?;
        let den = super::parse_rational(&w.den).map_err(serde::de::Error::custom)?;
        num.checked_div(&den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QtRational {
        QtRational::var(Var::Q)
    }
    fn t() -> QtRational {
        QtRational::var(Var::T)
    }
    fn one() -> QtRational {
        QtRational::one()
    }

    #[test]
    fn reduces_and_normalizes() {
        let x = (&one() - &(&q() * &q())) / (&one() - &q());
        assert_eq!(x.render(), "1 + q");
        let y = &(&one() - &t()) / &(&q() - &one());
        assert_eq!(y.render(), "(-1 + t)/(1 - q)");
        let z = &one() / &q();
        assert_eq!(z.render(), "(1)/(q)");
    }

    #[test]
    fn substitution_examples() {
        let x = &(&one() - &t()) / &(&one() - &q());
        assert_eq!(x.substitute(&[(Var::Q, t())]).unwrap(), one());
        let half = QtRational::from_ratio(&BigRational::new(1.into(), 2.into()));
        let third = QtRational::from_ratio(&BigRational::new(1.into(), 3.into()));
        let y = &(&(&one() + &q()) * &(&one() - &t())) / &(&one() - &(&q() * &t()));
        let v = y.substitute(&[(Var::Q, half), (Var::T, third)]).unwrap();
        assert_eq!(v, QtRational::from_ratio(&BigRational::new(6.into(), 5.into())));
        let w = &one() / &(&one() - &(&q() * &t()));
        assert_eq!(w.substitute(&[(Var::Q, t())]).unwrap().render(), "(1)/(1 - t^2)");
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let x = &one() / &(&one() - &q());
        assert_eq!(x.substitute(&[(Var::Q, one())]), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn sums_cancel() {
        let a = &one() / &(&one() - &q());
        let b = &q() / &(&one() - &q());
        assert_eq!(&a - &b, one());
    }
}

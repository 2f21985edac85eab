//! Fractions whose numerators and denominators are kept as products of
//! known factors, so that products cancel by matching factors and sums and
//! determinants need trial divisions only, never a gcd.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::rational::QtRational;

/// A factor with its multiplicity. `irreducible` factors are pairwise
/// distinct irreducibles; the others are arbitrary and may share divisors
/// with each other.
#[derive(Clone, PartialEq, Eq)]
struct Factor {
    poly: MultiPoly,
    irreducible: bool,
    mult: u32,
}

fn find<'a>(fs: &'a mut [Factor], p: &MultiPoly) -> Option<&'a mut Factor> {
    fs.iter_mut().find(|f| f.poly == *p)
}

fn merge(into: &mut Vec<Factor>, from: &[Factor]) {
    for f in from {
        match find(into, &f.poly) {
            Some(g) => g.mult += f.mult,
            None => into.push(f.clone()),
        }
    }
}

fn expand(fs: &[Factor]) -> MultiPoly {
    let mut parts: Vec<MultiPoly> = fs.iter().map(|f| f.poly.pow(f.mult)).collect();
    parts.sort_by_key(|p| p.len());
    parts.into_iter().fold(MultiPoly::one(), |a, b| &a * &b)
}

/// `coeff · rest · ∏ num / ∏ den`.
#[derive(Clone, PartialEq, Eq)]
pub struct FactoredFraction {
    coeff: BigRational,
    rest: MultiPoly,
    num: Vec<Factor>,
    den: Vec<Factor>,
}

impl FactoredFraction {
    pub fn zero() -> FactoredFraction {
        FactoredFraction::from_poly(MultiPoly::zero())
    }

    pub fn one() -> FactoredFraction {
        FactoredFraction::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> FactoredFraction {
        FactoredFraction { coeff: BigRational::one(), rest: p, num: Vec::new(), den: Vec::new() }.tidy()
    }

    pub fn from_monomial(m: &Monomial) -> FactoredFraction {
        FactoredFraction {
            coeff: m.coeff.clone(),
            rest: MultiPoly::monomial(m.exps),
            num: Vec::new(),
            den: Vec::new(),
        }
        .tidy()
    }

    /// `coeff · rest · ∏ n / ∏ d` from factors `(poly, irreducible)`, with
    /// repetition.
    pub(crate) fn with_factors(
        coeff: BigRational,
        rest: MultiPoly,
        num: impl IntoIterator<Item = (MultiPoly, bool)>,
        den: impl IntoIterator<Item = (MultiPoly, bool)>,
    ) -> FactoredFraction {
        let mut f = FactoredFraction { coeff, rest, num: Vec::new(), den: Vec::new() };
        for (p, irreducible) in num {
            f.push_factor(p, irreducible, false);
        }
        for (p, irreducible) in den {
            f.push_factor(p, irreducible, true);
        }
        f.match_factors();
        f.tidy()
    }

    fn push_factor(&mut self, p: MultiPoly, irreducible: bool, in_den: bool) {
        // factor polynomials are kept primitive with positive leading coefficient
        let prim = p.primitive();
        let c = BigRational::new(p.leading().unwrap().1.clone(), prim.leading().unwrap().1.clone());
        let list = if in_den {
            self.coeff = &self.coeff / c;
            &mut self.den
        } else {
            self.coeff = &self.coeff * c;
            &mut self.num
        };
        match find(list, &prim) {
            Some(f) => f.mult += 1,
            None => list.push(Factor { poly: prim, irreducible, mult: 1 }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rest.is_zero()
    }

    pub fn is_one(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.den.is_empty() && self.num.is_empty() && self.rest.is_constant() {
            let c = self.rest.as_constant().unwrap_or_default();
            return &self.coeff * BigRational::from_integer(c) == BigRational::one();
        }
        let lhs = (&self.rest * &expand(&self.num)).scale(self.coeff.numer());
        lhs == expand(&self.den).scale(self.coeff.denom())
    }

    /// Moves integer content and sign of `rest` into `coeff`, drops spent
    /// factors and gives zero a canonical form.
    fn tidy(mut self) -> FactoredFraction {
        if self.rest.is_zero() || self.coeff.is_zero() {
            return FactoredFraction {
                coeff: BigRational::one(),
                rest: MultiPoly::zero(),
                num: Vec::new(),
                den: Vec::new(),
            };
        }
        let mut c = self.rest.content();
        if self.rest.leading().is_some_and(|(_, lc)| lc.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            self.rest = self.rest.div_scalar_exact(&c);
            self.coeff = &self.coeff * BigRational::from_integer(c);
        }
        self.num.retain(|f| f.mult > 0);
        self.den.retain(|f| f.mult > 0);
        self
    }

    /// Cancels factors that occur on both sides.
    fn match_factors(&mut self) {
        for f in &mut self.num {
            if let Some(g) = find(&mut self.den, &f.poly) {
                let m = f.mult.min(g.mult);
                f.mult -= m;
                g.mult -= m;
            }
        }
    }

    /// Also strips denominator factors dividing `rest`.
    fn cancel(mut self) -> FactoredFraction {
        self.match_factors();
        if !self.rest.is_zero() {
            for f in &mut self.den {
                while f.mult > 0 {
                    match self.rest.div_exact(&f.poly) {
                        Some(q) => {
                            self.rest = q;
                            f.mult -= 1;
                        }
                        None => break,
                    }
                }
            }
        }
        self.tidy()
    }

    /// Rewrites `items` over one denominator: returns polynomials `n_i` and a
    /// fraction `s` with `rest = 1` such that `items[i] = s · n_i`.
    pub(crate) fn over_common(items: &[&FactoredFraction]) -> (Vec<MultiPoly>, FactoredFraction) {
        let live: Vec<&&FactoredFraction> = items.iter().filter(|it| !it.is_zero()).collect();
        let mut den: Vec<Factor> = Vec::new();
        for it in &live {
            for f in &it.den {
                match find(&mut den, &f.poly) {
                    Some(g) => g.mult = g.mult.max(f.mult),
                    None => den.push(f.clone()),
                }
            }
        }
        // numerator factors common to every item
        let mut num: Vec<Factor> = live.first().map(|it| it.num.clone()).unwrap_or_default();
        for it in live.iter().skip(1) {
            for g in &mut num {
                g.mult = g.mult.min(it.num.iter().find(|f| f.poly == g.poly).map_or(0, |f| f.mult));
            }
        }
        num.retain(|f| f.mult > 0);
        let l = live.iter().fold(BigInt::one(), |l, it| l.lcm(it.coeff.denom()));
        let nums = items
            .iter()
            .map(|it| {
                if it.is_zero() {
                    return MultiPoly::zero();
                }
                let scale = (&it.coeff * BigRational::from_integer(l.clone())).to_integer();
                let mut parts = vec![it.rest.scale(&scale)];
                for f in &it.num {
                    let common = num.iter().find(|g| g.poly == f.poly).map_or(0, |g| g.mult);
                    if f.mult > common {
                        parts.push(f.poly.pow(f.mult - common));
                    }
                }
                for g in &den {
                    let have = it.den.iter().find(|f| f.poly == g.poly).map_or(0, |f| f.mult);
                    if g.mult > have {
                        parts.push(g.poly.pow(g.mult - have));
                    }
                }
                parts.sort_by_key(|p| p.len());
                parts.into_iter().fold(MultiPoly::one(), |a, b| &a * &b)
            })
            .collect();
        let shared = FactoredFraction { coeff: BigRational::new(BigInt::one(), l), rest: MultiPoly::one(), num, den };
        (nums, shared)
    }

    /// `self · n`, with the denominator stripped of factors dividing `n`.
    pub(crate) fn with_numerator(&self, n: MultiPoly) -> FactoredFraction {
        FactoredFraction { rest: &self.rest * &n, ..self.clone() }.cancel()
    }

    /// Sum of many fractions over one common denominator.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a FactoredFraction>) -> FactoredFraction {
        let items: Vec<&FactoredFraction> = items.into_iter().collect();
        let (nums, shared) = FactoredFraction::over_common(&items);
        shared.with_numerator(nums.into_iter().fold(MultiPoly::zero(), |s, n| &s + &n))
    }

    pub fn add(&self, other: &FactoredFraction) -> FactoredFraction {
        FactoredFraction::sum([self, other])
    }

    pub fn sub(&self, other: &FactoredFraction) -> FactoredFraction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FactoredFraction {
        FactoredFraction { coeff: -self.coeff.clone(), ..self.clone() }
    }

    pub fn mul(&self, other: &FactoredFraction) -> FactoredFraction {
        if self.is_zero() || other.is_zero() {
            return FactoredFraction::zero();
        }
        let mut out = FactoredFraction {
            coeff: &self.coeff * &other.coeff,
            rest: &self.rest * &other.rest,
            num: self.num.clone(),
            den: self.den.clone(),
        };
        merge(&mut out.num, &other.num);
        merge(&mut out.den, &other.den);
        out.match_factors();
        out.tidy()
    }

    /// Reduced form.
    pub fn to_rational(&self) -> QtRational {
        if self.is_zero() {
            return QtRational::zero();
        }
        let c = self.clone().cancel();
        let num = (&c.rest * &expand(&c.num)).scale(c.coeff.numer());
        let den = expand(&c.den).scale(c.coeff.denom());
        if c.den.iter().all(|f| f.irreducible) && c.num.iter().all(|f| f.irreducible) {
            QtRational::from_coprime(num, den)
        } else {
            QtRational::new(num, den).expect("nonzero denominator")
        }
    }
}

impl fmt::Debug for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * ({})", self.coeff, self.rest.render())?;
        for d in &self.num {
            write!(f, " * ({})^{}", d.poly.render(), d.mult)?;
        }
        for d in &self.den {
            write!(f, " / ({})^{}", d.poly.render(), d.mult)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_rational, poch_ratio, Var};

    fn r(s: &str) -> QtRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn sums_match_reduced_arithmetic() {
        let a = poch_ratio(&Monomial::var(Var::U(0)), &Monomial::qt(1, 1), 3);
        let b = poch_ratio(&Monomial::qt(0, 1), &Monomial::var(Var::U(0)).times_qt(1, 0), 2);
        let (fa, fb) = (a.to_fraction().unwrap(), b.to_fraction().unwrap());
        let s = fa.add(&fb).mul(&fa).sub(&fb);
        let va = a.value().unwrap();
        let vb = b.value().unwrap();
        assert_eq!(s.to_rational(), (&va + &vb) * va - vb);
        assert!(fa.sub(&fa).is_zero());
        assert!(fb.mul(&b.inv().to_fraction().unwrap()).is_one());
        assert!(!fa.is_one());
    }

    #[test]
    fn opaque_binomials() {
        let m = Monomial::new(BigRational::new(4.into(), 1.into()), Monomial::qt(2, 0).exps);
        let n = Monomial::new(BigRational::new(2.into(), 1.into()), Monomial::qt(1, 0).exps);
        let a = crate::ring::FactoredProduct::binomial(&m, -1).to_fraction().unwrap();
        let b = crate::ring::FactoredProduct::binomial(&n, 1).to_fraction().unwrap();
        assert_eq!(a.mul(&b).to_rational(), r("1/(1+2*q)"));
        let two = FactoredFraction::from_poly(MultiPoly::from_i64(2));
        assert!(two.mul(&FactoredFraction::from_monomial(&Monomial::constant(BigRational::new(1.into(), 2.into())))).is_one());
    }
}

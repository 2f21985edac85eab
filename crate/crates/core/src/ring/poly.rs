//! Sparse multivariate Laurent polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{render_exps, Exps, Var, NVARS};

/// A polynomial stored as `(exponents, coefficient)` pairs sorted by
/// descending graded-lex order, without zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Exps, BigInt)>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> MultiPoly {
        MultiPoly::term(Exps::ZERO, c)
    }

    pub fn from_i64(c: i64) -> MultiPoly {
        MultiPoly::constant(BigInt::from(c))
    }

    pub fn term(e: Exps, c: BigInt) -> MultiPoly {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly { terms: vec![(e, c)] }
        }
    }

    pub fn monomial(e: Exps) -> MultiPoly {
        MultiPoly::term(e, BigInt::one())
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Exps::var(v, 1))
    }

    /// `1 - c x^e` for an integer coefficient `c`.
    pub fn one_minus(e: Exps, c: BigInt) -> MultiPoly {
        MultiPoly::one() - MultiPoly::term(e, c)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exps, BigInt)>>(it: I) -> MultiPoly {
        let mut map: FxHashMap<Exps, BigInt> = FxHashMap::default();
        for (e, c) in it {
            *map.entry(e).or_default() += c;
        }
        MultiPoly::from_map(map)
    }

    fn from_map(map: FxHashMap<Exps, BigInt>) -> MultiPoly {
        let mut terms: Vec<(Exps, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        MultiPoly { terms }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exps, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigInt)> {
        self.terms.first()
    }

    pub fn trailing(&self) -> Option<&(Exps, BigInt)> {
        self.terms.last()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Multiply by a monomial `x^s` (order is preserved).
    pub fn shift(&self, s: Exps) -> MultiPoly {
        if s.is_zero() {
            return self.clone();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e + s, c.clone())).collect() }
    }

    pub fn mul_term(&self, s: Exps, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, a)| (*e + s, a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> MultiPoly {
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a / c)).collect() }
    }

    /// Componentwise minimum exponent vector (the monomial content).
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((e, _)) => *e,
            None => return Exps::ZERO,
        };
        it.fold(first, |m, (e, _)| m.meet(e))
    }

    pub fn max_exps(&self) -> Exps {
        let mut m = Exps::ZERO;
        for (e, _) in &self.terms {
            for i in 0..NVARS {
                m.0[i] = m.0[i].max(e.0[i]);
            }
        }
        m
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_nonnegative())
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn variables(&self) -> [bool; NVARS] {
        let mut seen = [false; NVARS];
        for (e, _) in &self.terms {
            for i in e.support() {
                seen[i] = true;
            }
        }
        seen
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e.0[var]).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    /// Coefficients with respect to one variable: pairs `(exponent, coefficient)`
    /// with ascending exponent; the coefficients no longer involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<(i32, MultiPoly)> {
        let mut groups: BTreeMap<i32, Vec<(Exps, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = *e;
            let k = f.0[var];
            f.0[var] = 0;
            groups.entry(k).or_default().push((f, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, mut ts)| {
                ts.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
                (k, MultiPoly { terms: ts })
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`].
    pub fn from_coefficients_in(var: usize, parts: &[(i32, MultiPoly)]) -> MultiPoly {
        let mut out = Vec::new();
        for (k, p) in parts {
            let s = {
                let mut s = Exps::ZERO;
                s.0[var] = *k;
                s
            };
            for (e, c) in &p.terms {
                out.push((*e + s, c.clone()));
            }
        }
        out.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        MultiPoly { terms: out }
    }

    /// Substitute the integer `x` for a variable (nonnegative exponents in it).
    pub fn eval_var(&self, var: usize, x: &BigInt) -> MultiPoly {
        let mut powers: FxHashMap<i32, BigInt> = FxHashMap::default();
        let mut out: FxHashMap<Exps, BigInt> = FxHashMap::default();
        for (e, c) in &self.terms {
            let k = e.0[var];
            debug_assert!(k >= 0);
            let p = powers.entry(k).or_insert_with(|| num_traits::pow(x.clone(), k as usize));
            let mut f = *e;
            f.0[var] = 0;
            *out.entry(f).or_default() += c * &*p;
        }
        MultiPoly::from_map(out)
    }

    /// Rename exponents through a linear map: variable `v` is replaced by the
    /// unit monomial `images[v]` (identity where `None`).
    pub fn substitute_unit_monomials(&self, images: &[Option<Exps>; NVARS]) -> MultiPoly {
        let map_exps = |e: &Exps| {
            let mut out = Exps::ZERO;
            for i in 0..NVARS {
                let k = e.0[i];
                if k == 0 {
                    continue;
                }
                match images[i] {
                    Some(img) => out = out + img.scale(k),
                    None => out.0[i] += k,
                }
            }
            out
        };
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (map_exps(e), c.clone())))
    }

    /// Substitute monomials with rational coefficients; returns `(p, d)` with
    /// the substituted value equal to `p / d`, `d > 0`.
    pub fn substitute_monomials(
        &self,
        images: &[Option<(BigRational, Exps)>; NVARS],
    ) -> (MultiPoly, BigInt) {
        let mut acc: Vec<(Exps, BigRational)> = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut coeff = BigRational::from_integer(c.clone());
            let mut out = Exps::ZERO;
            for i in 0..NVARS {
                let k = e.0[i];
                if k == 0 {
                    continue;
                }
                match &images[i] {
                    Some((a, img)) => {
                        let p = if k > 0 {
                            num_traits::pow(a.clone(), k as usize)
                        } else {
                            num_traits::pow(a.recip(), (-k) as usize)
                        };
                        coeff *= p;
                        out = out + img.scale(k);
                    }
                    None => out.0[i] += k,
                }
            }
            acc.push((out, coeff));
        }
        let mut den = BigInt::one();
        for (_, c) in &acc {
            den = den.lcm(c.denom());
        }
        let p = MultiPoly::from_terms(acc.into_iter().map(|(e, c)| {
            let (n, d) = (c.numer().clone(), c.denom().clone());
            (e, n * (&den / d))
        }));
        (p, den)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// the Laurent polynomial ring.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if d.is_monomial() {
            let (e, c) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (f, a) in &self.terms {
                let (qt, rem) = a.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                terms.push((*f - *e, qt));
            }
            return Some(MultiPoly { terms });
        }
        let sa = self.min_exps();
        let sd = d.min_exps();
        let a = self.shift(-sa);
        let b = d.shift(-sd);
        let q = a.div_exact_poly(&b)?;
        Some(q.shift(sa - sd))
    }

    /// Exact division for genuine polynomials (nonnegative exponents).
    fn div_exact_poly(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (ld, lc) = d.terms[0].clone();
        let td = d.terms.last().unwrap().0;
        // Quick rejection through the trailing terms: in the graded-lex order
        // the lowest terms multiply as well.
        let ta = self.terms.last().unwrap().0;
        if !ta.dominates(&td) || !self.terms[0].0.dominates(&ld) {
            return None;
        }
        let mut rem: BTreeMap<Exps, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((&e, _)) = rem.iter().next_back() {
            let c = rem.remove(&e).unwrap();
            if !e.dominates(&ld) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qe = e - ld;
            for (f, b) in d.terms.iter().skip(1) {
                let key = *f + qe;
                let delta = &qc * b;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qe, qc));
        }
        Some(MultiPoly { terms: quot })
    }

    /// Pseudo-remainder of `self` by `d` with respect to variable `var`,
    /// both viewed as univariate with polynomial coefficients.
    pub fn pseudo_rem(&self, d: &MultiPoly, var: usize) -> MultiPoly {
        let dd = d.degree_in(var);
        let ld = d.lc_in(var);
        let mut r = self.clone();
        let mut k = r.degree_in(var) - dd + 1;
        while !r.is_zero() && r.degree_in(var) >= dd {
            let dr = r.degree_in(var);
            let lr = r.lc_in(var);
            let mut s = Exps::ZERO;
            s.0[var] = dr - dd;
            r = &(&r * &ld) - &(d * &lr).shift(s);
            k -= 1;
        }
        if k > 0 {
            r = &r * &ld.pow(k as u32);
        }
        r
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc_in(&self, var: usize) -> MultiPoly {
        let d = self.degree_in(var);
        let mut ts: Vec<(Exps, BigInt)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.0[var] == d)
            .map(|(e, c)| {
                let mut f = *e;
                f.0[var] = 0;
                (f, c.clone())
            })
            .collect();
        ts.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        MultiPoly { terms: ts }
    }

    /// Sign of the lowest term in graded-lex order (the first rendered term).
    pub fn trailing_sign_negative(&self) -> bool {
        self.terms.last().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    /// Canonical rendering: ascending total degree, descending lex within a degree.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<&(Exps, BigInt)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
        let mut s = String::new();
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = render_exps(e, "*");
            if body.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&body);
            } else {
                s.push_str(&mag.to_string());
                s.push('*');
                s.push_str(&body);
            }
        }
        s
    }
}

fn merge(a: &[(Exps, BigInt)], b: &[(Exps, BigInt)], negate_b: bool) -> Vec<(Exps, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.mul_term(*e, c);
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.mul_term(*e, c);
        }
        let mut map: FxHashMap<Exps, BigInt> =
            FxHashMap::with_capacity_and_hasher(self.len() * rhs.len(), Default::default());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let prod = ca * cb;
                match map.entry(*ea + *eb) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        MultiPoly::from_map(map)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }
    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    #[test]
    fn renders_ascending_degree() {
        let p = (MultiPoly::one() - q()) * (MultiPoly::one() + t());
        assert_eq!(p.render(), "1 - q + t - q*t");
        let p = MultiPoly::from_i64(3) * q() * q() - q() * t() * t() + MultiPoly::one();
        assert_eq!(p.render(), "1 + 3*q^2 - q*t^2");
    }

    #[test]
    fn exact_division() {
        let a = MultiPoly::one() - q() * t();
        let b = MultiPoly::one() + q() - t() * t();
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn laurent_division() {
        let qi = MultiPoly::monomial(Exps::var(Var::Q, -1));
        let a = MultiPoly::one() - qi.clone();
        let b = MultiPoly::one() - q();
        // 1 - 1/q = -(1/q)(1 - q)
        assert_eq!(a.div_exact(&b), Some(-qi));
    }

    #[test]
    fn pseudo_remainder_vanishes_on_multiples() {
        let a = q() - t();
        let b = &(&q() * &q()) - &(&t() * &t());
        assert!(b.pseudo_rem(&a, 0).is_zero());
    }
}

//! Display factorization: pulls cyclotomic factors `Ψ_d(q^a t^b)` out of a
//! polynomial by trial division. Not a full factorization; whatever does not
//! split this way is kept as one cofactor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::cyclotomic::psi;
use super::monomial::{Exps, Var};
use super::poly::MultiPoly;

/// `sign·content · x^monomial · ∏ factor^mult · cofactor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayFactors {
    pub unit: BigInt,
    pub monomial: Exps,
    pub factors: Vec<(MultiPoly, u32)>,
    pub cofactor: MultiPoly,
}

/// `Ψ_d(x)` for `x = q^a t^b`, cleared of negative exponents.
fn psi_qt(d: u32, a: i32, b: i32) -> MultiPoly {
    let mut step = Exps::ZERO;
    step.0[Var::Q.index()] = a;
    step.0[Var::T.index()] = b;
    let p = MultiPoly::from_terms(
        psi(d)
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (step.scale(k as i32), BigInt::from(*c))),
    );
    p.shift(-p.min_exps())
}

fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// The first term in rendering order (lowest degree, then lex-largest).
fn first_rendered(p: &MultiPoly) -> &(Exps, BigInt) {
    p.terms()
        .iter()
        .min_by(|x, y| x.0.degree().cmp(&y.0.degree()).then_with(|| y.0 .0.cmp(&x.0 .0)))
        .expect("nonzero polynomial")
}

pub fn display_factors(p: &MultiPoly) -> DisplayFactors {
    assert!(!p.is_zero(), "cannot factor zero");
    let monomial = p.min_exps();
    let mut rest = p.shift(-monomial);
    let mut unit = rest.content();
    rest = rest.div_scalar_exact(&unit);
    let span = rest.max_exps();
    let (dq, dt) = (span.get(Var::Q), span.get(Var::T));
    let mut factors = Vec::new();
    for a in 0..=dq {
        for b in -dt..=dt {
            if (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                continue;
            }
            // deg Ψ_d = φ(d), and φ(d) ≥ √d for d > 6
            let room = if a > 0 { dq / a } else { i32::MAX }.min(if b != 0 { dt / b.abs() } else { i32::MAX });
            let d_max = (room * room).max(6) as u32;
            for d in 1..=d_max {
                if totient(d) as i32 > room {
                    continue;
                }
                let f = psi_qt(d, a, b);
                let mut mult = 0;
                while rest.len() > 1 {
                    match rest.div_exact(&f) {
                        Some(x) => {
                            rest = x;
                            mult += 1;
                        }
                        None => break,
                    }
                }
                if mult > 0 {
                    factors.push((f, mult));
                }
            }
        }
    }
    // each factor starts with a positive term; the sign moves to the unit
    for (f, mult) in factors.iter_mut() {
        if first_rendered(f).1.is_negative() {
            *f = -&*f;
            if *mult % 2 == 1 {
                unit = -unit;
            }
        }
    }
    if first_rendered(&rest).1.is_negative() {
        rest = -rest;
        unit = -unit;
    }
    factors.sort_by(|x, y| {
        let (ex, ey) = (x.0.max_exps(), y.0.max_exps());
        ex.degree().cmp(&ey.degree()).then_with(|| ey.0.cmp(&ex.0)).then_with(|| x.0.len().cmp(&y.0.len()))
    });
    debug_assert!(rest.len() > 1 || rest.as_constant().is_some_and(|c| c.is_one()));
    DisplayFactors { unit, monomial, factors, cofactor: rest }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_rational;

    fn poly(s: &str) -> MultiPoly {
        parse_rational(s).unwrap().numer().clone()
    }

    #[test]
    fn splits_binomials() {
        let f = display_factors(&poly("(1-q)*(1+t)"));
        assert!(f.unit.is_one());
        assert_eq!(f.factors, vec![(poly("1-q"), 1), (poly("1+t"), 1)]);
        assert!(f.cofactor.is_one());
    }

    #[test]
    fn keeps_signs_and_leftovers() {
        let f = display_factors(&poly("-2*q*(q-t)^2*(1-q*t)*(1+q+t^2)"));
        assert_eq!(f.unit, BigInt::from(-2));
        assert_eq!(f.monomial, poly("q").min_exps());
        assert!(f.factors.contains(&(poly("q-t"), 2)) || f.factors.contains(&(poly("t-q"), 2)));
        assert!(f.factors.contains(&(poly("1-q*t"), 1)));
        assert_eq!(f.cofactor, poly("1+q+t^2"));
        let back = f.factors.iter().fold(f.cofactor.shift(f.monomial).scale(&f.unit), |acc, (g, m)| &acc * &g.pow(*m));
        assert_eq!(back, poly("-2*q*(q-t)^2*(1-q*t)*(1+q+t^2)"));
    }
}

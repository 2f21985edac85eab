//! Determinants over the fraction field, computed fraction-free.

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{lcm, FactoredFraction, MultiPoly, QtRational};

/// Clears each row to polynomial entries, runs Bareiss elimination with exact
/// divisions, and divides the result by the row multipliers.
pub fn det(rows: &[Vec<QtRational>]) -> Result<QtRational> {
    let m = rows.len();
    if m == 0 {
        return Ok(QtRational::one());
    }
    let mut mat = Vec::with_capacity(m);
    let mut scale = MultiPoly::one();
    for row in rows {
        if row.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: row.len() });
        }
        let mut l = MultiPoly::one();
        let mut content = num_bigint::BigInt::one();
        for x in row {
            let d = x.denom();
            content = content.lcm(&d.content());
            l = lcm(&l, &d.primitive());
        }
        let l = l.scale(&content);
        let polys = row
            .iter()
            .map(|x| Ok(x.numer() * &l.div_exact(x.denom()).ok_or(Error::InexactDivision)?))
            .collect::<Result<Vec<_>>>()?;
        mat.push(polys);
        scale = &scale * &l;
    }
    let d = bareiss(mat)?;
    QtRational::new(d, scale)
}

/// Determinant of a matrix of [`FactoredFraction`]s: each row is put over
/// its own common denominator, so no gcd is ever taken.
pub fn det_fractions(rows: &[Vec<FactoredFraction>]) -> Result<FactoredFraction> {
    let m = rows.len();
    let mut mat = Vec::with_capacity(m);
    let mut scale = FactoredFraction::one();
    for row in rows {
        if row.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: row.len() });
        }
        let refs: Vec<&FactoredFraction> = row.iter().collect();
        let (nums, shared) = FactoredFraction::over_common(&refs);
        mat.push(nums);
        scale = scale.mul(&shared);
    }
    Ok(scale.mul(&FactoredFraction::from_poly(bareiss(mat)?)))
}

/// Determinant of a polynomial matrix.
pub fn bareiss(mut a: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let m = a.len();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..m {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let x = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = x.div_exact(&prev).ok_or(Error::InexactDivision)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    Ok(if sign { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_rational;

    fn r(s: &str) -> QtRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn two_by_two() {
        let rows = vec![vec![r("q"), r("1/(1-t)")], vec![r("t"), r("q")]];
        assert_eq!(det(&rows).unwrap(), r("q^2 - t/(1-t)"));
    }

    #[test]
    fn vandermonde_three() {
        let rows: Vec<Vec<QtRational>> = ["q", "t", "u0"]
            .iter()
            .map(|x| vec![r(&format!("({x})^2")), r(x), r("1")])
            .collect();
        assert_eq!(det(&rows).unwrap(), r("(q-t)*(q-u0)*(t-u0)"));
    }

    #[test]
    fn singular_and_pivoting() {
        let rows = vec![vec![r("q"), r("t")], vec![r("q^2"), r("q*t")]];
        assert!(det(&rows).unwrap().is_zero());
        let rows = vec![vec![r("0"), r("1")], vec![r("1"), r("0")]];
        assert_eq!(det(&rows).unwrap(), r("-1"));
    }

    #[test]
    fn fraction_rows_agree() {
        use crate::ring::{Monomial, Var};
        let u = Monomial::var(Var::U(0));
        let a = crate::ring::poch_ratio(&u, &Monomial::qt(1, 0), 2).to_fraction().unwrap();
        let b = crate::ring::poch_ratio(&Monomial::qt(0, 1), &u, 1).to_fraction().unwrap();
        let rows = vec![vec![a.clone(), b.clone()], vec![b.mul(&b), a.add(&b)]];
        let plain: Vec<Vec<QtRational>> = rows.iter().map(|r| r.iter().map(|x| x.to_rational()).collect()).collect();
        assert_eq!(det_fractions(&rows).unwrap().to_rational(), det(&plain).unwrap());
    }
}

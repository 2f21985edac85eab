//! LaTeX and JSON output for coefficients and expansions.
//!
//! LaTeX coefficients show cyclotomic binomial factors such as `(1-q)` and
//! `(1+t)` separately; JSON keeps the canonical expanded strings so that it
//! parses back to identical values.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::macdonald::PExpansion;
use crate::pieri::PieriTerm;
use crate::recurrence::RecurrenceTerm;
use crate::ring::{display_factors, Exps, MultiPoly, QtRational, Var, NVARS};
use crate::symfun::SymPoly;
use crate::weights::{DominantWeight, Partition};

fn latex_var(i: usize) -> String {
    match Var::from_index(i) {
        Var::Q => "q".into(),
        Var::T => "t".into(),
        Var::U(k) => format!("u_{{{k}}}"),
    }
}

fn latex_exps(e: &Exps) -> String {
    let mut s = String::new();
    for i in 0..NVARS {
        let k = e.0[i];
        if k == 0 {
            continue;
        }
        s.push_str(&latex_var(i));
        if k != 1 {
            if (0..10).contains(&k) {
                s.push_str(&format!("^{k}"));
            } else {
                s.push_str(&format!("^{{{k}}}"));
            }
        }
    }
    s
}

/// Expanded form, terms in the same order as the canonical string.
pub fn latex_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
    let mut s = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        let body = latex_exps(e);
        let mag = c.abs();
        if body.is_empty() || !mag.is_one() {
            s.push_str(&mag.to_string());
        }
        s.push_str(&body);
    }
    s
}

/// A rendered product and whether it is a bare sum (needs parentheses
/// before being multiplied by anything).
struct Product {
    text: String,
    bare_sum: bool,
}

fn latex_product(p: &MultiPoly) -> Product {
    let f = display_factors(p);
    let mut pieces: Vec<(String, bool, u32)> = Vec::new();
    let mono = latex_exps(&f.monomial);
    if !mono.is_empty() {
        pieces.push((mono, false, 1));
    }
    for (g, m) in &f.factors {
        pieces.push((latex_poly(g), g.len() > 1, *m));
    }
    if !f.cofactor.is_one() {
        pieces.push((latex_poly(&f.cofactor), f.cofactor.len() > 1, 1));
    }
    let mag = f.unit.abs();
    let mut text = String::new();
    if f.unit.is_negative() {
        text.push('-');
    }
    if !mag.is_one() || pieces.is_empty() {
        text.push_str(&mag.to_string());
    }
    let alone = pieces.len() == 1 && pieces[0].2 == 1 && f.unit.is_one();
    let bare_sum = alone && pieces[0].1;
    for (body, sum, m) in pieces {
        if sum && !alone {
            text.push_str(&format!("({body})"));
        } else {
            text.push_str(&body);
        }
        if m > 1 {
            text.push_str(&format!("^{{{m}}}"));
        }
    }
    Product { text, bare_sum }
}

fn coeff_parts(c: &QtRational) -> Product {
    if c.denom().is_one() {
        return latex_product(c.numer());
    }
    let neg = display_factors(c.numer()).unit.is_negative();
    let num = if neg { latex_product(&-c.numer()) } else { latex_product(c.numer()) };
    let den = latex_product(c.denom());
    let sign = if neg { "-" } else { "" };
    Product { text: format!("{sign}\\frac{{{}}}{{{}}}", num.text, den.text), bare_sum: false }
}

/// A coefficient on its own, e.g. `\frac{(1-q)(1+t)}{1-qt}`.
pub fn latex_coeff(c: &QtRational) -> String {
    if c.is_zero() {
        return "0".into();
    }
    coeff_parts(c).text
}

/// `c · basis`, with `1` and `-1` left implicit.
fn latex_term(c: &QtRational, basis: &str) -> String {
    if basis.is_empty() {
        return latex_coeff(c);
    }
    if c.is_one() {
        return basis.into();
    }
    if (-c).is_one() {
        return format!("-{basis}");
    }
    let p = coeff_parts(c);
    if p.bare_sum {
        format!("({}){basis}", p.text)
    } else {
        format!("{}{basis}", p.text)
    }
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => s.push_str(&t),
            (_, Some(rest)) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            (_, None) => {
                s.push_str(" + ");
                s.push_str(&t);
            }
        }
    }
    s
}

/// `2\omega_{1}+\omega_{3}`; `0` for the zero weight.
pub fn latex_weight(w: &DominantWeight) -> String {
    let parts: Vec<String> = w
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| if c == 1 { format!("\\omega_{{{}}}", i + 1) } else { format!("{c}\\omega_{{{}}}", i + 1) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn latex_partition(p: &Partition) -> String {
    if p.is_empty() {
        return "\\varnothing".into();
    }
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn p_weight(w: &DominantWeight) -> String {
    if w.coords().iter().all(|&c| c == 0) {
        String::new()
    } else {
        format!("P_{{{}}}", latex_weight(w))
    }
}

/// `Σ d_θ P_target` in the order given (colex in `θ`).
pub fn latex_pieri(terms: &[PieriTerm]) -> String {
    join(terms.iter().map(|t| latex_term(&t.coeff, &p_weight(&t.target))).collect())
}

/// `Σ C_θ P_{r'ω_1} P_target` in the order given (colex in `θ`).
pub fn latex_recurrence(terms: &[RecurrenceTerm]) -> String {
    join(
        terms
            .iter()
            .map(|t| {
                let row = if t.row_factor == 0 {
                    String::new()
                } else if t.row_factor == 1 {
                    "P_{\\omega_{1}}".into()
                } else {
                    format!("P_{{{}\\omega_{{1}}}}", t.row_factor)
                };
                latex_term(&t.coeff, &format!("{row}{}", p_weight(&t.target)))
            })
            .collect(),
    )
}

/// `Σ c_κ P_κ`, leading partition first.
pub fn latex_p_expansion(e: &PExpansion) -> String {
    join(e.terms.iter().rev().map(|(k, c)| latex_term(c, &format!("P_{{{}}}", latex_partition(k)))).collect())
}

/// `Σ c_κ m_κ`, leading partition first.
pub fn latex_sympoly(f: &SymPoly) -> String {
    join(f.terms().rev().map(|(k, c)| latex_term(c, &format!("m_{{{}}}", latex_partition(k)))).collect())
}

/// JSON document for a Pieri expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriDoc {
    pub n: usize,
    pub weight: DominantWeight,
    pub r: u32,
    pub terms: Vec<PieriTerm>,
}

/// JSON document for a recurrence expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceDoc {
    pub n: usize,
    pub weight: DominantWeight,
    pub k: usize,
    pub terms: Vec<RecurrenceTerm>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieri::pieri_expand;
    use crate::ring::parse_rational;

    fn r(s: &str) -> QtRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn coefficients() {
        assert_eq!(latex_coeff(&r("(1-q)*(1+t)/(1-q*t)")), "\\frac{(1-q)(1+t)}{1-qt}");
        assert_eq!(latex_coeff(&r("-(1-q)/(1-t)^2")), "-\\frac{1-q}{(1-t)^{2}}");
        assert_eq!(latex_coeff(&r("2*q^12*u0")), "2q^{12}u_{0}");
        assert_eq!(latex_coeff(&r("1+q+t^2")), "1+q+t^2");
        assert_eq!(latex_coeff(&r("0")), "0");
    }

    #[test]
    fn expansions() {
        assert_eq!(latex_pieri(&[]), "0");
        let one = pieri_expand(&DominantWeight::new(vec![1]), 1).unwrap();
        assert_eq!(latex_pieri(&one[..1]), "P_{2\\omega_{1}}");
        assert_eq!(latex_pieri(&one), "P_{2\\omega_{1}} + \\frac{(1-q)(1+t)}{1-qt}");
        let e = PExpansion {
            m: 2,
            terms: [(Partition::row(2), r("1")), (Partition::new(vec![1, 1]).unwrap(), r("-(1+q)"))].into(),
        };
        assert_eq!(latex_p_expansion(&e), "P_{(2)} - (1+q)P_{(1,1)}");
    }

    #[test]
    fn json_round_trip() {
        let lam = DominantWeight::new(vec![1, 2]);
        let doc = PieriDoc { n: 2, weight: lam.clone(), r: 2, terms: pieri_expand(&lam, 2).unwrap() };
        let s = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<PieriDoc>(&s).unwrap(), doc);
        let p = crate::macdonald::p_branching(&Partition::new(vec![2, 1]).unwrap(), 3).unwrap();
        let s = serde_json::to_string(&*p).unwrap();
        assert!(s.starts_with("{\"m\":3,\"degree\":3,\"terms\":[{\"partition\":[2,1]"));
        assert_eq!(serde_json::from_str::<SymPoly>(&s).unwrap(), *p);
    }
}

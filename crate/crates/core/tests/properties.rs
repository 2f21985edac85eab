use std::collections::BTreeMap;

use macpieri_core::macdonald::{expand_in_p, p_branching};
use macpieri_core::pieri::pieri_expand;
use macpieri_core::ring::{display_factors, parse_rational, poch_ratio, Exps, FactoredFraction, Monomial, Var};
use macpieri_core::symfun::{multiply, SymPoly};
use macpieri_core::weights::{partition_to_weight, reduce_partition, weight_to_partition};
use macpieri_core::{DominantWeight, MultiPoly, PExpansion, Partition, QtRational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn exps(q: i32, t: i32, u: i32) -> Exps {
    Exps::var(Var::Q, q) + Exps::var(Var::T, t) + Exps::var(Var::U(0), u)
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0..3i32, 0..3i32, 0..2i32, -4..=4i64), 0..5)
        .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|(a, b, c, k)| (exps(a, b, c), BigInt::from(k)))))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = QtRational> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| QtRational::new(n, d).unwrap())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (-2..=2i32, -2..=2i32, 0..=1i32)
        .prop_filter("not constant", |&(a, b, c)| (a, b, c) != (0, 0, 0))
        .prop_map(|(a, b, c)| Monomial::from_exps(exps(a, b, c)))
}

/// `(a;q)_r / (b;q)_r` as a fraction, or `None` at a pole.
fn poch_fraction() -> impl Strategy<Value = Option<FactoredFraction>> {
    (monomial(), monomial(), -2..=2i32).prop_map(|(a, b, r)| poch_ratio(&a, &b, r).to_fraction().ok())
}

fn partition(max: u32, len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max, 0..=len).prop_map(Partition::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, MultiPoly::zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn fractions_are_canonical(x in rational(), y in rational(), g in nonzero_poly()) {
        let (n, d) = (x.numer().clone(), x.denom().clone());
        prop_assert_eq!(QtRational::new(&n * &g, &d * &g).unwrap(), x.clone());
        prop_assert_eq!(parse_rational(&x.render()).unwrap(), x.clone());
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<QtRational>(&s).unwrap(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
    }

    #[test]
    fn factored_fractions_agree(a in poch_fraction(), b in poch_fraction(), c in poch_fraction()) {
        let (Some(a), Some(b), Some(c)) = (a, b, c) else { return Ok(()) };
        let (ra, rb, rc) = (a.to_rational(), b.to_rational(), c.to_rational());
        prop_assert_eq!(a.add(&b).to_rational(), &ra + &rb);
        prop_assert_eq!(a.mul(&b).sub(&c).to_rational(), &(&ra * &rb) - &rc);
        prop_assert_eq!(FactoredFraction::sum([&a, &b, &c]).to_rational(), &(&ra + &rb) + &rc);
    }

    #[test]
    fn display_factors_multiply_back(p in nonzero_poly(), a in 0..3i32, b in -2..=2i32, d in 1..4u32) {
        let binomial = parse_rational(&format!("1 - q^{}*t^{b}", a.max(1))).unwrap();
        let bin = binomial.numer().clone();
        let full = &p * &bin.pow(d);
        let f = display_factors(&full);
        let back = f.factors.iter().fold(f.cofactor.shift(f.monomial).scale(&f.unit), |acc, (g, m)| &acc * &g.pow(*m));
        prop_assert_eq!(back, full);
        prop_assert!(f.factors.iter().map(|(_, m)| *m).sum::<u32>() >= 1);
    }

    #[test]
    fn symmetric_products(mu in partition(2, 2), nu in partition(2, 2), la in partition(1, 3)) {
        let m = 3;
        let f = SymPoly::monomial(mu, m);
        let g = SymPoly::monomial(nu, m);
        let h = SymPoly::monomial(la, m);
        let fg = multiply(&f, &g).unwrap();
        // x_i = 1 is a ring homomorphism
        prop_assert_eq!(fg.eval_ones(), &f.eval_ones() * &g.eval_ones());
        prop_assert_eq!(multiply(&fg, &h).unwrap(), multiply(&f, &multiply(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(fg, multiply(&g, &f).unwrap());
    }

    #[test]
    fn p_basis_round_trip(size in 0..5u32, picks in prop::collection::vec((0..8usize, -3..=3i64), 1..4)) {
        let m = 3;
        let basis = Partition::all(size, m);
        let mut terms = BTreeMap::new();
        for (i, c) in picks {
            let c = QtRational::from_i64(c) * parse_rational("1-q*t").unwrap();
            if !c.is_zero() {
                terms.insert(basis[i % basis.len()].clone(), c);
            }
        }
        let e = PExpansion { m, terms };
        let back = expand_in_p(&e.to_sympoly(size).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn p_is_monic_and_triangular(mu in partition(3, 3)) {
        let p = p_branching(&mu, 3).unwrap();
        prop_assert!(p.coeff(&mu).is_one());
        for (k, _) in p.terms() {
            prop_assert!(macpieri_core::symfun::dominance_leq(k, &mu).unwrap());
        }
    }

    #[test]
    fn weights_and_partitions(coords in prop::collection::vec(0..5u32, 1..5)) {
        let n = coords.len();
        let lam = DominantWeight::new(coords);
        let mu = weight_to_partition(&lam);
        prop_assert!(mu.len() <= n);
        prop_assert_eq!(partition_to_weight(&mu, n).unwrap(), lam.clone());
        let mut wide = mu.padded(n + 1);
        for x in wide.iter_mut() {
            *x += 2;
        }
        let (reduced, s) = reduce_partition(&Partition::new(wide).unwrap(), n);
        prop_assert_eq!((reduced, s), (mu, 2));
    }

    #[test]
    fn pieri_leading_term_and_strips(coords in prop::collection::vec(0..3u32, 1..3), r in 0..3u32) {
        let n = coords.len();
        let lam = DominantWeight::new(coords);
        let terms = pieri_expand(&lam, r).unwrap();
        let mut top = lam.coords().to_vec();
        top[0] += r;
        let top = DominantWeight::new(top);
        prop_assert!(terms.iter().any(|t| t.target == top && t.coeff.is_one()));
        let mu = weight_to_partition(&lam);
        for t in &terms {
            let full: Vec<u32> = mu.padded(n + 1).iter().zip(&t.theta).map(|(a, b)| a + b).collect();
            prop_assert!(Partition::new(full).unwrap().is_horizontal_strip_over(&mu));
        }
    }
}

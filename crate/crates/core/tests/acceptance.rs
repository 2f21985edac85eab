//! The ten acceptance criteria, each checked by exact equality. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use macpieri_core::macdonald::{eigenvalue, operator_apply, p_branching, p_eigen, product_in_p, schur_specialize};
use macpieri_core::matinv::{
    conjugate_check, f_entry, f_entry_raw, g_entry, g_entry_raw, verify_inverse, verify_inverse_trials, Scaling,
};
use macpieri_core::pieri::{
    d_coeff, dhat_coeff, dtilde_coeff, reduced_d_check, reduced_d_symbolic, pad_theta, pieri_expand,
};
use macpieri_core::recurrence::*;
use macpieri_core::ring::{parse_rational, Monomial, Var};
use macpieri_core::symfun::SymPoly;
use macpieri_core::weights::{dominant_weights_up_to, multi_indices, partition_to_weight, weight_to_partition};
use macpieri_core::{PairParams, BoxRange, DominantWeight, Partition, QtRational};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, ctx: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("dual oracle for P and the eigen-relation", dual_oracle),
        ("Pieri expansion against the oracle", pieri_vs_oracle),
        ("reduction chain d, d-hat, d-tilde, D", reduction_chain),
        ("recurrence reconstructs P", recurrence_reconstructs),
        ("shifted recurrence equals direct recurrence", shifted_vs_direct),
        ("top-slot expansion and b_lambda", top_slot_and_b),
        ("rank-two closed forms", closed_forms),
        ("rank-three determinant and ratio identities", rank_three),
        ("multidimensional inverse pair", inverse_pair),
        ("Schur degeneration", schur_degeneration),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed in {:.1}s", 10 - failed, total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn as_map(terms: &BTreeMap<Partition, QtRational>, n: usize) -> BTreeMap<DominantWeight, QtRational> {
    terms.iter().map(|(k, c)| (partition_to_weight(k, n).unwrap(), c.clone())).collect()
}

fn dual_oracle() -> Result<String, String> {
    let mut cells = 0;
    for m in 1..=4 {
        for size in 0..=6 {
            for mu in Partition::all(size, m) {
                let a = ok(p_branching(&mu, m), &mu)?;
                let b = ok(p_eigen(&mu, m), &mu)?;
                ensure!(*a == b, "P{mu:?} in {m} variables: branching and eigen constructions differ");
                let e = QtRational::from_poly(eigenvalue(&mu, m));
                let lhs: SymPoly = ok(operator_apply(&a), &mu)?;
                ensure!(lhs == a.scale(&e), "D P{mu:?} != e P{mu:?} in {m} variables");
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} partitions"))
}

fn pieri_vs_oracle() -> Result<String, String> {
    let mut cells = 0;
    for n in 1..=3 {
        for lam in dominant_weights_up_to(n, 5) {
            let mu = weight_to_partition(&lam);
            for r in 0..=3u32 {
                let oracle = ok(product_in_p(&Partition::row(r), &mu, n + 1), &lam)?;
                let mine: BTreeMap<_, _> =
                    ok(pieri_expand(&lam, r), &lam)?.into_iter().map(|t| (t.target, t.coeff)).collect();
                ensure!(mine == as_map(&oracle.terms, n), "n={n} λ={lam} r={r}");
                cells += 1;
            }
        }
    }
    // The comparison must be able to fail: the square of P_{ω_1} has two
    // terms, and dropping one must be detected.
    let lam = DominantWeight::new(vec![1]);
    let oracle = as_map(&product_in_p(&Partition::row(1), &Partition::row(1), 2).unwrap().terms, 1);
    let mut truncated: BTreeMap<_, _> = pieri_expand(&lam, 1).unwrap().into_iter().map(|t| (t.target, t.coeff)).collect();
    truncated.pop_last();
    ensure!(truncated != oracle, "negative control was not detected");
    Ok(format!("{cells} cells"))
}

fn reduction_chain() -> Result<String, String> {
    let mut cells = 0;
    for n in 1..=4 {
        let weights: Vec<DominantWeight> = multi_indices(n, 3 * n as u32, false)
            .into_iter()
            .filter(|c| c.iter().all(|&x| x <= 3))
            .map(DominantWeight::new)
            .collect();
        for lam in &weights {
            for k in 1..=n {
                for r in 0..=3i64 {
                    // d̂ is d with θ_k eliminated through |θ| = r.
                    for theta in multi_indices(n + 1, r as u32, false) {
                        if theta[k - 1] != 0 {
                            continue;
                        }
                        let mut full = theta.clone();
                        full[k - 1] = r as u32 - theta.iter().sum::<u32>();
                        let hat = ok(dhat_coeff(lam, r, k, &theta), "d-hat")?;
                        ensure!(hat == ok(d_coeff(lam, r, &full), "d")?, "d-hat: λ={lam} k={k} r={r} θ={theta:?}");
                        if lam.get(k) == 0 && theta[k] > 0 {
                            ensure!(hat.is_zero(), "d-hat survives θ_(k+1) > 0: λ={lam} k={k} r={r} θ={theta:?}");
                        }
                        cells += 1;
                    }
                    if lam.get(k) != 0 {
                        continue;
                    }
                    for theta in multi_indices(n - 1, r as u32, false) {
                        let tilde = ok(dtilde_coeff(lam, r, k, &theta), "d-tilde")?;
                        let hat = ok(dhat_coeff(lam, r, k, &pad_theta(&theta, k)), "d-hat")?;
                        ensure!(tilde == hat, "d-tilde: λ={lam} k={k} r={r} θ={theta:?}");
                        ensure!(ok(reduced_d_check(lam, k, r, &theta), "D")?, "D: λ={lam} k={k} r={r} θ={theta:?}");
                        cells += 1;
                    }
                }
            }
        }
        for k in 1..=n {
            for r in 0..=3i64 {
                for theta in multi_indices(n - 1, 3, false) {
                    ensure!(
                        ok(reduced_d_symbolic(n, k, r, &theta), "symbolic D")?,
                        "symbolic D: n={n} k={k} r={r} θ={theta:?}"
                    );
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn recurrence_reconstructs() -> Result<String, String> {
    let mut cells = 0;
    for n in 2..=3 {
        for lam in dominant_weights_up_to(n, 6) {
            for k in 1..=n {
                let terms = ok(recurrence_expand(&lam, k), format!("{lam} k={k}"))?;
                for t in &terms {
                    ensure!(t.target.get(k) == 0, "{lam} k={k}: target {} has ω_k part", t.target);
                }
                ensure!(ok(reconstructs(&lam, &terms), &lam)?, "{lam} k={k} does not reconstruct");
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn shifted_vs_direct() -> Result<String, String> {
    let mut cells = 0;
    for n in 1..=3 {
        for lam in dominant_weights_up_to(n, 6) {
            for k in 1..=n {
                if lam.get(k) != 0 {
                    continue;
                }
                let max = if k >= 2 { lam.get(k - 1) } else { 3 };
                for r in 0..=max {
                    let lr = add_k(&lam, k, r).ok_or(format!("{lam} + {r}ε_{k} not dominant"))?;
                    let a = ok(recurrence_expand_shifted(&lam, k, r), &lam)?;
                    let b = ok(recurrence_expand(&lr, k), &lr)?;
                    ensure!(a == b, "{lam} k={k} r={r}");
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells"))
}

/// `b_μ = ∏_s (1 − q^{a(s)} t^{l(s)+1}) / (1 − q^{a(s)+1} t^{l(s)})`.
fn arm_leg(parts: &[u32]) -> QtRational {
    let conj = |j: usize| parts.iter().filter(|&&p| p as usize > j).count();
    let mut acc = QtRational::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p as usize {
            let a = p as usize - j - 1;
            let l = conj(j) - i - 1;
            acc = acc * parse_rational(&format!("(1-q^{a}*t^{})/(1-q^{}*t^{l})", l + 1, a + 1)).unwrap();
        }
    }
    acc
}

fn top_slot_and_b() -> Result<String, String> {
    let mut cells = 0;
    for n in 1..=4 {
        for lam in dominant_weights_up_to(n, 5) {
            let a = ok(top_slot_expand(&lam), &lam)?;
            ensure!(a == ok(recurrence_expand(&lam, n), &lam)?, "top slot {lam}");
            let mu = weight_to_partition(&lam);
            ensure!(ok(b_lambda(&lam), &lam)? == arm_leg(mu.parts()), "b_λ {lam}");
            cells += 1;
        }
    }
    Ok(format!("{cells} weights"))
}

fn closed_forms() -> Result<String, String> {
    for l1 in 0..=4 {
        for l2 in 0..=4 {
            let lam = DominantWeight::new(vec![l1, l2]);
            for th in 0..=4 {
                let a = ok(closed_form_coeff(&ClosedForm::A2K2 { lambda: [l1, l2], theta: th }), "A2K2")?;
                let c = ok(c_coeff(&u_recurrence(&lam, 2), 2, l2 as i64, &[th]), "C")?;
                ensure!(a == c, "A2K2 λ=({l1},{l2}) θ={th}");
                let a = ok(closed_form_coeff(&ClosedForm::A2K1 { lambda: [l1, l2], theta: th }), "A2K1")?;
                let c = ok(c_coeff(&u_recurrence(&lam, 1), 1, l1 as i64, &[th]), "C")?;
                ensure!(a == c, "A2K1 λ=({l1},{l2}) θ={th}");
                if l2 <= l1 {
                    let jj = ok(closed_form_coeff(&ClosedForm::TwoRow { mu: [l1, l2], theta: th }), "two-row")?;
                    let a2 = ok(closed_form_coeff(&ClosedForm::A2K2 { lambda: [l1 - l2, l2], theta: th }), "A2K2")?;
                    ensure!(jj == a2, "two-row μ=({l1},{l2}) θ={th}");
                }
            }
        }
    }
    // Both two-row expansions rebuild the polynomial through the oracle.
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            if a + 2 * b <= 8 {
                let lam = DominantWeight::new(vec![a, b]);
                ensure!(ok(reconstructs(&lam, &ok(first_slot_expand([a, b]), "first-slot")?), "first-slot")?, "first-slot λ=({a},{b})");
            }
            if b <= a && a + b <= 8 {
                let lam = DominantWeight::new(vec![a - b, b]);
                ensure!(ok(reconstructs(&lam, &ok(two_row_expand([a, b]), "two-row")?), "two-row")?, "two-row μ=({a},{b})");
            }
        }
    }
    Ok("λ1,λ2,θ ≤ 4".into())
}

fn rank_three() -> Result<String, String> {
    for i in 0..=3 {
        for j in 0..=3 {
            ensure!(ok(det_identity_holds(i, j), "det")?, "determinant quotient i={i} j={j}");
        }
    }
    for k in 1..=3 {
        for r in 0..=2 {
            for i in 0..=2 {
                for j in 0..=2 {
                    ensure!(ok(a3_ratio_holds(k, r, i, j), "ratio")?, "ratio k={k} r={r} i={i} j={j}");
                }
            }
        }
    }
    let mut cells = 0;
    for lam in dominant_weights_up_to(3, 6) {
        let l = [lam.get(1), lam.get(2), lam.get(3)];
        for k in 1..=3 {
            let u = u_recurrence(&lam, k);
            for th in multi_indices(2, l[k - 1], false) {
                let a3 = ok(closed_form_coeff(&ClosedForm::A3 { k, lambda: l, i: th[0], j: th[1] }), "A3")?;
                ensure!(a3 == ok(c_coeff(&u, k, l[k - 1] as i64, &th), "C")?, "A3 {lam} k={k} θ={th:?}");
                if k == 3 {
                    let mu = [l[0] + l[1] + l[2], l[1] + l[2], l[2]];
                    let la = ok(closed_form_coeff(&ClosedForm::ThreeRow { mu, i: th[0], j: th[1] }), "three-row")?;
                    ensure!(a3 == la, "three-row form {lam} θ={th:?}");
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} rank-three coefficients"))
}

fn inverse_pair() -> Result<String, String> {
    let mut pairs = 0;
    for k in 1..=2 {
        for r in 0..=3 {
            let p = ok(PairParams::symbolic(1, k, r), "params")?;
            let rep = ok(verify_inverse(&BoxRange::cube(1, 4), &p), "n=1")?;
            ensure!(rep.passed(), "n=1 k={k} r={r}: {:?}", rep.failures);
            pairs += rep.pairs_checked;
            ensure!(
                ok(conjugate_check(&p, &BoxRange::cube(1, 3), Scaling::Standard), "conjugate")?,
                "conjugate pair n=1 k={k} r={r}"
            );
        }
    }
    for k in 1..=3 {
        for r in 0..=3 {
            let rep = ok(verify_inverse_trials(&BoxRange::cube(2, 2), 2, k, r, 5, 0), "n=2")?;
            ensure!(rep.passed(), "n=2 k={k} r={r}: {:?}", rep.failures);
            pairs += rep.pairs_checked;
        }
    }
    // Off the triangle the unguarded formulas vanish on their own.
    for k in 1..=3 {
        let p = ok(PairParams::symbolic(2, k, 2), "params")?;
        let pts = BoxRange::cube(2, 2).points();
        for b in &pts {
            for c in &pts {
                if b.iter().zip(c).all(|(x, y)| x >= y) {
                    continue;
                }
                ensure!(ok(f_entry_raw(b, c, &p), "f")?.is_zero(), "raw f k={k} {b:?} {c:?}");
                ensure!(ok(g_entry_raw(b, c, &p), "g")?.is_zero(), "raw g k={k} {b:?} {c:?}");
            }
        }
    }
    // The pair at dimension n is the recurrence pair at dimension n + 1.
    for nc in 2..=3usize {
        let u: Vec<Monomial> = (0..nc).map(|i| Monomial::var(Var::U(i as u8))).collect();
        let pts = box_points(&vec![if nc == 2 { 3 } else { 1 }; nc - 1]);
        for k in 1..=nc {
            for r in 0..=2i64 {
                let p = ok(PairParams::new(nc - 1, k, r, u.clone()), "params")?;
                for b in &pts {
                    for c in &pts {
                        let bi: Vec<i64> = b.iter().map(|&x| x as i64).collect();
                        let ci: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                        ensure!(
                            ok(f_entry(&bi, &ci, &p), "f")? == ok(pair_f(&u, k, r, b, c), "f")?,
                            "f bridge dim={nc} k={k} r={r} {b:?} {c:?}"
                        );
                        ensure!(
                            ok(g_entry(&bi, &ci, &p), "g")? == ok(pair_g(&u, k, r, b, c), "g")?,
                            "g bridge dim={nc} k={k} r={r} {b:?} {c:?}"
                        );
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} composed pairs"))
}

fn schur_degeneration() -> Result<String, String> {
    let t = QtRational::var(Var::T);
    let mut cells = 0;
    for n in 1..=3 {
        for lam in dominant_weights_up_to(n, 5) {
            for r in 0..=3u32 {
                for theta in multi_indices(n + 1, r, true) {
                    let c = ok(d_coeff(&lam, r as i64, &theta), "d")?;
                    let at_t = ok(c.substitute(&[(Var::Q, t.clone())]), format!("{lam} θ={theta:?} at q=t"))?;
                    // κ = μ + θ is a horizontal strip over μ iff θ_{i+1} ≤ λ_i.
                    let strip = (1..=n).all(|i| theta[i] <= lam.get(i));
                    let want = if strip { QtRational::one() } else { QtRational::zero() };
                    ensure!(at_t == want, "λ={lam} r={r} θ={theta:?}: {}", at_t.render());
                    cells += 1;
                }
            }
        }
    }
    let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
    let s21 = ok(schur_specialize(&p(&[2, 1]), 3), "s21")?;
    let want = SymPoly::from_terms(3, 3, [(p(&[2, 1]), QtRational::one()), (p(&[1, 1, 1]), QtRational::from_i64(2))]);
    ensure!(s21 == want, "s_(2,1) in 3 variables");
    // The m_(1,1,1,1) term of s_(2,2) needs a fourth variable.
    let s22 = ok(schur_specialize(&p(&[2, 2]), 3), "s22")?;
    let want = SymPoly::from_terms(3, 4, [(p(&[2, 2]), QtRational::one()), (p(&[2, 1, 1]), QtRational::one())]);
    ensure!(s22 == want, "s_(2,2) in 3 variables");
    // s_(3) = h_3 has every monomial coefficient 1.
    let s3 = ok(schur_specialize(&p(&[3]), 3), "s3")?;
    let want = SymPoly::from_terms(3, 3, Partition::all(3, 3).into_iter().map(|k| (k, QtRational::one())));
    ensure!(s3 == want, "s_(3) in 3 variables");
    Ok(format!("{cells} coefficients"))
}

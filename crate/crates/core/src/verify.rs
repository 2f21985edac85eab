//! Verification sweeps with a per-cell report. Cells run on the rayon pool;
//! the report lists them in a fixed order whatever the completion order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::macdonald::{eigenvalue, operator_apply, p_branching, p_eigen, product_in_p};
use crate::matinv::{self, PairParams, BoxRange, Scaling};
use crate::pieri;
use crate::recurrence::{self as rec, ClosedForm};
use crate::ring::{parse_rational, QtRational, Var};
use crate::weights::{dominant_weights_up_to, multi_indices, partition_to_weight, weight_to_partition, Partition};
use crate::DominantWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Pieri,
    Reduction,
    Recurrence,
    ClosedForms,
    Matinv,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Oracle, Suite::Pieri, Suite::Reduction, Suite::Recurrence, Suite::ClosedForms, Suite::Matinv];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Pieri => "pieri",
            Suite::Reduction => "lemma32",
            Suite::Recurrence => "recurrence",
            Suite::ClosedForms => "closedforms",
            Suite::Matinv => "matinv",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweep bounds.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyOptions {
    /// Largest partition size in the weight sweeps.
    pub max_size: u32,
    /// Largest `θ` and `λ_i` in the closed-form sweeps.
    pub max_theta: u32,
    /// Upper corner of the inverse-pair boxes, in every coordinate.
    pub box_hi: i64,
    /// Exact-rational trials per inverse-pair cell in dimension two.
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_size: 5, max_theta: 4, box_hi: 2, trials: 5, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub suite: Suite,
    pub check: &'static str,
    pub params: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cells: Vec<Cell>,
    pub totals: Totals,
}

impl VerificationReport {
    fn new(suite: String, cells: Vec<Cell>) -> VerificationReport {
        let mut totals = Totals::default();
        for c in &cells {
            match c.status {
                Status::Pass => totals.pass += 1,
                Status::Fail => totals.fail += 1,
                Status::Skip => totals.skip += 1,
            }
        }
        VerificationReport { suite, cells, totals }
    }

    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }
}

/// Outcome of one check: `Ok(None)` passes, `Ok(Some(why))` fails.
type Outcome = Result<Option<String>>;

struct Job {
    suite: Suite,
    check: &'static str,
    params: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

fn job(suite: Suite, check: &'static str, params: String, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Job {
    Job { suite, check, params, run: Box::new(run) }
}

fn expect(ok: bool, why: &str) -> Outcome {
    Ok(if ok { None } else { Some(why.to_string()) })
}

/// Runs the given suites in order and merges the cells into one report.
pub fn run(suites: &[Suite], opts: &VerifyOptions) -> VerificationReport {
    let mut jobs = Vec::new();
    for &s in suites {
        jobs.extend(match s {
            Suite::Oracle => oracle_jobs(opts),
            Suite::Pieri => pieri_jobs(opts),
            Suite::Reduction => reduction_jobs(opts),
            Suite::Recurrence => recurrence_jobs(opts),
            Suite::ClosedForms => closed_form_jobs(opts),
            Suite::Matinv => matinv_jobs(opts),
        });
    }
    let cells = jobs
        .par_iter()
        .map(|j| {
            let (status, detail) = match (j.run)() {
                Ok(None) => (Status::Pass, String::new()),
                Ok(Some(why)) => (Status::Fail, why),
                Err(e) => (Status::Fail, e.to_string()),
            };
            Cell { suite: j.suite, check: j.check, params: j.params.clone(), status, detail }
        })
        .collect();
    let name = if suites == Suite::ALL { "all".to_string() } else { suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",") };
    VerificationReport::new(name, cells)
}

fn oracle_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    for m in 1..=4 {
        for size in 0..=opts.max_size {
            for mu in Partition::all(size, m) {
                jobs.push(job(Suite::Oracle, "branching = eigen", format!("m={m} mu={mu:?}"), move || {
                    let a = p_branching(&mu, m)?;
                    let b = p_eigen(&mu, m)?;
                    if *a != b {
                        return expect(false, "constructions differ");
                    }
                    let e = QtRational::from_poly(eigenvalue(&mu, m));
                    expect(operator_apply(&a)? == a.scale(&e), "D P != e P")
                }));
            }
        }
    }
    jobs
}

fn pieri_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for lam in dominant_weights_up_to(n, opts.max_size) {
            for r in 0..=3u32 {
                let l = lam.clone();
                jobs.push(job(Suite::Pieri, "expansion = oracle", format!("n={n} lambda={lam} r={r}"), move || {
                    let mu = weight_to_partition(&l);
                    let oracle: BTreeMap<DominantWeight, QtRational> = product_in_p(&Partition::row(r), &mu, n + 1)?
                        .terms
                        .into_iter()
                        .map(|(k, c)| Ok((partition_to_weight(&k, n)?, c)))
                        .collect::<Result<_>>()?;
                    let mine: BTreeMap<_, _> = pieri::pieri_expand(&l, r)?.into_iter().map(|t| (t.target, t.coeff)).collect();
                    expect(mine == oracle, "coefficients differ")
                }));
                let l = lam.clone();
                jobs.push(job(Suite::Pieri, "schur degeneration", format!("n={n} lambda={lam} r={r}"), move || {
                    let t = QtRational::var(Var::T);
                    for theta in multi_indices(n + 1, r, true) {
                        let c = pieri::d_coeff(&l, r as i64, &theta)?.substitute(&[(Var::Q, t.clone())])?;
                        let strip = (1..=n).all(|i| theta[i] <= l.get(i));
                        if c != if strip { QtRational::one() } else { QtRational::zero() } {
                            return Ok(Some(format!("theta={theta:?} gives {c}")));
                        }
                    }
                    Ok(None)
                }));
                for k in (1..=n).filter(|&k| lam.get(k) == 0) {
                    let l = lam.clone();
                    jobs.push(job(Suite::Pieri, "reduced = full", format!("n={n} lambda={lam} r={r} k={k}"), move || {
                        let red: BTreeMap<_, _> = pieri::pieri_expand_reduced(&l, r, k)?
                            .into_iter()
                            .map(|t| (pieri::unreduce_theta(&t.theta, k, r), (t.target, t.coeff)))
                            .collect();
                        let full: BTreeMap<_, _> =
                            pieri::pieri_expand(&l, r)?.into_iter().map(|t| (t.theta, (t.target, t.coeff))).collect();
                        expect(red == full, "reduced expansion differs")
                    }));
                }
            }
        }
    }
    jobs
}

fn reduction_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 1..=4 {
        let weights = dominant_weights_up_to(n, opts.max_size).into_iter().filter(|w| w.coords().iter().all(|&c| c <= 3));
        for lam in weights {
            for k in 1..=n {
                let l = lam.clone();
                jobs.push(job(Suite::Reduction, "reduction chain", format!("n={n} lambda={lam} k={k}"), move || {
                    for r in 0..=3i64 {
                        for theta in multi_indices(n + 1, r as u32, false) {
                            if theta[k - 1] != 0 {
                                continue;
                            }
                            let mut full = theta.clone();
                            full[k - 1] = r as u32 - theta.iter().sum::<u32>();
                            if pieri::dhat_coeff(&l, r, k, &theta)? != pieri::d_coeff(&l, r, &full)? {
                                return Ok(Some(format!("d-hat at r={r} theta={theta:?}")));
                            }
                        }
                        if l.get(k) != 0 {
                            continue;
                        }
                        for theta in multi_indices(n - 1, r as u32, false) {
                            let hat = pieri::dhat_coeff(&l, r, k, &pieri::pad_theta(&theta, k))?;
                            if pieri::dtilde_coeff(&l, r, k, &theta)? != hat {
                                return Ok(Some(format!("d-tilde at r={r} theta={theta:?}")));
                            }
                            if !pieri::reduced_d_check(&l, k, r, &theta)? {
                                return Ok(Some(format!("D at r={r} theta={theta:?}")));
                            }
                        }
                    }
                    Ok(None)
                }));
            }
        }
        for k in 1..=n {
            jobs.push(job(Suite::Reduction, "symbolic D = d-tilde", format!("n={n} k={k}"), move || {
                for r in 0..=3i64 {
                    for theta in multi_indices(n - 1, 3, false) {
                        if !pieri::reduced_d_symbolic(n, k, r, &theta)? {
                            return Ok(Some(format!("r={r} theta={theta:?}")));
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
    jobs
}

/// `∏_s (1 − q^{a(s)} t^{l(s)+1}) / (1 − q^{a(s)+1} t^{l(s)})` over the cells of `μ`.
pub fn arm_leg_b(mu: &Partition) -> Result<QtRational> {
    let parts = mu.parts();
    let conj = |j: usize| parts.iter().filter(|&&p| p as usize > j).count();
    let mut acc = QtRational::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p as usize {
            let a = p as usize - j - 1;
            let l = conj(j) - i - 1;
            acc = acc * parse_rational(&format!("(1-q^{a}*t^{})/(1-q^{}*t^{l})", l + 1, a + 1))?;
        }
    }
    Ok(acc)
}

fn recurrence_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for lam in dominant_weights_up_to(n, opts.max_size) {
            for k in 1..=n {
                if n >= 2 {
                    let l = lam.clone();
                    jobs.push(job(Suite::Recurrence, "reconstructs P", format!("n={n} lambda={lam} k={k}"), move || {
                        let terms = rec::recurrence_expand(&l, k)?;
                        if let Some(t) = terms.iter().find(|t| t.target.get(k) != 0) {
                            return Ok(Some(format!("target {} has an omega_k part", t.target)));
                        }
                        expect(rec::reconstructs(&l, &terms)?, "sum differs from P")
                    }));
                }
                if lam.get(k) == 0 {
                    let l = lam.clone();
                    jobs.push(job(Suite::Recurrence, "shifted = direct", format!("n={n} lambda={lam} k={k}"), move || {
                        let max = if k >= 2 { l.get(k - 1) } else { 3 };
                        for r in 0..=max {
                            let lr = rec::add_k(&l, k, r).ok_or(Error::InvalidArgument("not dominant".into()))?;
                            if rec::recurrence_expand_shifted(&l, k, r)? != rec::recurrence_expand(&lr, k)? {
                                return Ok(Some(format!("r={r}")));
                            }
                        }
                        Ok(None)
                    }));
                }
            }
            let l = lam.clone();
            jobs.push(job(Suite::Recurrence, "top slot and b", format!("n={n} lambda={lam}"), move || {
                if rec::top_slot_expand(&l)? != rec::recurrence_expand(&l, n)? {
                    return expect(false, "top-k form differs");
                }
                expect(rec::b_lambda(&l)? == arm_leg_b(&weight_to_partition(&l))?, "b differs from arm-leg product")
            }));
        }
    }
    jobs
}

fn closed_form_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    let m = opts.max_theta;
    for l1 in 0..=m {
        for l2 in 0..=m {
            jobs.push(job(Suite::ClosedForms, "rank two", format!("lambda=({l1},{l2})"), move || {
                let lam = DominantWeight::new(vec![l1, l2]);
                for th in 0..=m {
                    let a = rec::closed_form_coeff(&ClosedForm::A2K2 { lambda: [l1, l2], theta: th })?;
                    if a != rec::c_coeff(&rec::u_recurrence(&lam, 2), 2, l2 as i64, &[th])? {
                        return Ok(Some(format!("k=2 theta={th}")));
                    }
                    let a = rec::closed_form_coeff(&ClosedForm::A2K1 { lambda: [l1, l2], theta: th })?;
                    if a != rec::c_coeff(&rec::u_recurrence(&lam, 1), 1, l1 as i64, &[th])? {
                        return Ok(Some(format!("k=1 theta={th}")));
                    }
                    if l2 <= l1 {
                        let two_row = rec::closed_form_coeff(&ClosedForm::TwoRow { mu: [l1, l2], theta: th })?;
                        let a2 = rec::closed_form_coeff(&ClosedForm::A2K2 { lambda: [l1 - l2, l2], theta: th })?;
                        if two_row != a2 {
                            return Ok(Some(format!("two-row form theta={th}")));
                        }
                    }
                }
                if l1 + 2 * l2 <= 2 * m && !rec::reconstructs(&lam, &rec::first_slot_expand([l1, l2])?)? {
                    return expect(false, "k=1 two-row expansion does not reconstruct");
                }
                if l2 <= l1 && l1 + l2 <= 2 * m {
                    let lam = DominantWeight::new(vec![l1 - l2, l2]);
                    return expect(rec::reconstructs(&lam, &rec::two_row_expand([l1, l2])?)?, "partition-indexed expansion");
                }
                Ok(None)
            }));
        }
    }
    for i in 0..=3 {
        for j in 0..=3 {
            jobs.push(job(Suite::ClosedForms, "determinant quotient", format!("i={i} j={j}"), move || {
                expect(rec::det_identity_holds(i, j)?, "identity fails")
            }));
        }
    }
    for k in 1..=3 {
        for r in 0..=2 {
            jobs.push(job(Suite::ClosedForms, "rank-three ratio", format!("k={k} r={r}"), move || {
                for i in 0..=2 {
                    for j in 0..=2 {
                        if !rec::a3_ratio_holds(k, r, i, j)? {
                            return Ok(Some(format!("i={i} j={j}")));
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
    for lam in dominant_weights_up_to(3, opts.max_size) {
        jobs.push(job(Suite::ClosedForms, "rank three", format!("lambda={lam}"), move || {
            let l = [lam.get(1), lam.get(2), lam.get(3)];
            for k in 1..=3 {
                let u = rec::u_recurrence(&lam, k);
                for th in multi_indices(2, l[k - 1], false) {
                    let a3 = rec::closed_form_coeff(&ClosedForm::A3 { k, lambda: l, i: th[0], j: th[1] })?;
                    if a3 != rec::c_coeff(&u, k, l[k - 1] as i64, &th)? {
                        return Ok(Some(format!("k={k} theta={th:?}")));
                    }
                    if k == 3 {
                        let mu = [l[0] + l[1] + l[2], l[1] + l[2], l[2]];
                        if a3 != rec::closed_form_coeff(&ClosedForm::ThreeRow { mu, i: th[0], j: th[1] })? {
                            return Ok(Some(format!("three-row form theta={th:?}")));
                        }
                    }
                }
            }
            Ok(None)
        }));
    }
    jobs
}

fn matinv_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    let hi = opts.box_hi;
    for k in 1..=2 {
        for r in 0..=3 {
            jobs.push(job(Suite::Matinv, "inverse n=1 symbolic", format!("k={k} r={r} box=0..{hi}"), move || {
                let p = PairParams::symbolic(1, k, r)?;
                let rep = matinv::verify_inverse(&BoxRange::cube(1, hi), &p)?;
                expect(rep.passed(), &format!("{} failing pairs", rep.failures.len()))
            }));
            jobs.push(job(Suite::Matinv, "conjugate pair n=1", format!("k={k} r={r} box=0..{hi}"), move || {
                let p = PairParams::symbolic(1, k, r)?;
                expect(matinv::conjugate_check(&p, &BoxRange::cube(1, hi), Scaling::Standard)?, "conjugated pair is not inverse")
            }));
        }
    }
    let (trials, seed) = (opts.trials, opts.seed);
    for k in 1..=3 {
        for r in 0..=3 {
            jobs.push(job(
                Suite::Matinv,
                "inverse n=2 trials",
                format!("k={k} r={r} box=0..{hi} trials={trials} seed={seed}"),
                move || {
                    let rep = matinv::verify_inverse_trials(&BoxRange::cube(2, hi), 2, k, r, trials, seed)?;
                    expect(rep.passed(), &format!("{} failing pairs", rep.failures.len()))
                },
            ));
        }
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let opts = VerifyOptions { max_size: 2, max_theta: 1, box_hi: 1, trials: 1, seed: 3 };
        let rep = run(&[Suite::Pieri, Suite::Recurrence, Suite::Matinv], &opts);
        assert!(rep.passed(), "{:?}", rep.cells.iter().filter(|c| c.status == Status::Fail).collect::<Vec<_>>());
        assert_eq!(rep.totals.pass + rep.totals.fail + rep.totals.skip, rep.cells.len());
        assert_eq!(rep.suite, "pieri,recurrence,matinv");
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}

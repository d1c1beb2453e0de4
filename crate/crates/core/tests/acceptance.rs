//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact (rationals and reduced Gröbner bases); the only
//! numeric tolerances are the wall-clock budgets below.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{ideal, poly, random_poly, ring, WORKED_POLY};
use fjump::basep::{candidate_set, frac_orbit, gap_bound, in_candidate_set, prime_power};
use fjump::constancy::{
    constancy_report_for, jacobian, jacobian_stability_check, local_ideal_equal, random_perturbation,
    singularity_profile,
};
use fjump::froot::{froot_basis, froot_ideal, froot_power};
use fjump::testideal::{default_bound, nu, Comparison, JnMethod, JumpingNumberReport, TestIdealEngine};
use fjump::{Ideal, Polynomial, Rational, Window};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_BUDGET: Duration = Duration::from_secs(300);
const C2_BUDGET: Duration = Duration::from_secs(120);
const C7_BUDGET: Duration = Duration::from_secs(600);
const C8_BUDGET: Duration = Duration::from_secs(1800);

const C2_POLYS: usize = 200;
const C2_LAMBDAS_PER_POLY: usize = 3;
const C6_INSTANCES: usize = 100;
const C8_SAMPLES: usize = 10;

const SEED: u64 = 20_240_917;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b).unwrap()
}

/// Fuzz polynomials shared by criteria 2 to 4.
struct FuzzCase {
    f: Polynomial,
    bound: u64,
    report: Option<JumpingNumberReport>,
}

fn fuzz_corpus() -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..C2_POLYS)
        .map(|i| {
            let p = [2u64, 3, 5][i % 3];
            let rg = ring(p);
            let f = loop {
                let f = random_poly(&rg, 4, 0, &mut rng);
                if !f.is_zero() {
                    break f;
                }
            };
            let bound = default_bound(&f).unwrap().chosen;
            FuzzCase { f, bound, report: None }
        })
        .collect()
}

fn sandwich(f: &Polynomial, fpt: &Rational) -> Result<(), String> {
    let p = f.prime();
    let m = Ideal::maximal(f.ring());
    for e in 1..=4u64 {
        let n = BigInt::from(nu(f, &m, e).map_err(|err| err.to_string())?);
        let q = prime_power(p, e);
        let lower = Rational::new(n.clone(), q.clone()).unwrap();
        let upper = Rational::new(n + 1, q).unwrap();
        if !(lower < *fpt && *fpt <= upper) {
            return Err(format!("f = {f}, e = {e}: {lower} < {fpt} <= {upper} fails"));
        }
    }
    Ok(())
}

fn structural(rep: &JumpingNumberReport) -> Result<(), String> {
    let f = &rep.f;
    let p = f.prime();
    let jn: BTreeSet<&Rational> = rep.jumping_numbers.iter().collect();
    for l in &rep.jumping_numbers {
        if !in_candidate_set(l, p, rep.bound) {
            return Err(format!("f = {f}: {l} outside the candidate set"));
        }
        let image = &frac_orbit(l, 2, p)[1];
        if !jn.contains(image) {
            return Err(format!("f = {f}: {l} -> {image} leaves JN"));
        }
    }
    for w in rep.test_ideals.windows(2) {
        if !(w[0].contains_ideal(&w[1]) && w[0] != w[1]) {
            return Err(format!("f = {f}: test ideals {} and {} not strictly descending", w[0], w[1]));
        }
    }
    let jac = jacobian(f);
    if jac.artinian_length().is_ok() {
        if let Some(t) = rep.test_ideals.iter().find(|t| !t.contains_ideal(&jac)) {
            return Err(format!("f = {f}: Jac(f) not contained in {t}"));
        }
    }
    Ok(())
}

fn worked_report() -> JumpingNumberReport {
    let f = poly(&ring(5), WORKED_POLY);
    TestIdealEngine::new(&f, 6)
        .unwrap()
        .jumping_numbers(JnMethod::Walk, Comparison::Global)
        .unwrap()
}

fn criterion_1(rep: &JumpingNumberReport, elapsed: Duration) -> Outcome {
    let rg = ring(5);
    let f = poly(&rg, WORKED_POLY);
    let ell = singularity_profile(&f).unwrap().ell;
    let expected_jn = vec![r(7, 12), r(4, 5), r(11, 12)];
    let expected_ideals = [ideal(&rg, &["x", "y"]),
        ideal(&rg, &["x^2", "y"]),
        ideal(&rg, &["x^2", "x*y", "y^2"])];
    let ok = ell == Some(6)
        && rep.positive() == expected_jn
        && rep.test_ideals[1..] == expected_ideals[..]
        && rep.fpt == r(7, 12)
        && elapsed <= C1_BUDGET;
    outcome(
        ok,
        format!(
            "ell = {:?}, JN ∩ (0,1) = {:?}, fpt = {}, {} candidates, {:.1?}",
            ell,
            rep.positive().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            rep.fpt,
            rep.candidate_count,
            elapsed
        ),
    )
}

fn criterion_2(corpus: &mut [FuzzCase]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut checked = 0;
    for case in corpus.iter_mut() {
        let p = case.f.prime();
        let mut engine = TestIdealEngine::new(&case.f, case.bound).unwrap();
        for _ in 0..C2_LAMBDAS_PER_POLY {
            let e = rng.random_range(1..=2u32);
            let q = p.pow(e);
            let c = rng.random_range(1..=2 * q);
            let lambda = r(c as i64, q as i64);
            let via_engine = engine.test_ideal(&lambda).unwrap().ideal;
            let naive = froot_basis(&case.f.power(c), e).unwrap();
            if via_engine != naive {
                return outcome(
                    false,
                    format!("f = {}, λ = {lambda}, B = {}: {via_engine} vs {naive}", case.f, case.bound),
                );
            }
            checked += 1;
        }
        if case.f.in_maximal_ideal() {
            case.report = Some(engine.jumping_numbers(JnMethod::Auto, Comparison::Global).unwrap());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed <= C2_BUDGET,
        format!("{} polynomials, {checked} parameters, {:.1?}", corpus.len(), elapsed),
    )
}

fn criterion_3(worked: &JumpingNumberReport, corpus: &[FuzzCase]) -> Outcome {
    let mut count = 0;
    for rep in std::iter::once(worked).chain(corpus.iter().filter_map(|c| c.report.as_ref())) {
        if let Err(msg) = sandwich(&rep.f, &rep.fpt) {
            return outcome(false, msg);
        }
        count += 1;
    }
    outcome(true, format!("{count} thresholds, e = 1..4"))
}

fn criterion_4(worked: &JumpingNumberReport, corpus: &[FuzzCase]) -> Outcome {
    let mut count = 0;
    let mut jumps = 0;
    for rep in std::iter::once(worked).chain(corpus.iter().filter_map(|c| c.report.as_ref())) {
        if let Err(msg) = structural(rep) {
            return outcome(false, msg);
        }
        count += 1;
        jumps += rep.jumping_numbers.len();
    }
    outcome(true, format!("{count} reports, {jumps} jumping numbers"))
}

fn criterion_5() -> Outcome {
    let mut pairs = 0u64;
    for p in [2u64, 3, 5] {
        for bound in 1..=3 {
            let values = candidate_set(p, bound, &Window::unit()).unwrap().values;
            let gap = gap_bound(p, bound);
            for (i, a) in values.iter().enumerate() {
                for b in &values[i + 1..] {
                    pairs += 1;
                    if b.abs_diff(a) <= gap {
                        return outcome(false, format!("p = {p}, B = {bound}: |{b} - {a}| <= {gap}"));
                    }
                }
            }
        }
    }
    outcome(true, format!("{pairs} pairs"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for i in 0..C6_INSTANCES {
        let p = [2u64, 3, 5][i % 3];
        let rg = ring(p);
        let f = random_poly(&rg, 4, 0, &mut rng);
        let g = random_poly(&rg, 2, 0, &mut rng);
        let h = random_poly(&rg, 4, 0, &mut rng);

        let a = rng.random_range(1..=2u32);
        let b = rng.random_range(1..=2u32);
        let composed = froot_ideal(&froot_basis(&f, a).unwrap(), b).unwrap();
        if froot_basis(&f, a + b).unwrap() != composed {
            return outcome(false, format!("composition fails for {f}, a = {a}, b = {b}"));
        }

        let lhs = froot_basis(&g.pow_binary(p).mul(&h), 1).unwrap();
        let rhs = froot_basis(&h, 1).unwrap().scale(&g).unwrap();
        if lhs != rhs {
            return outcome(false, format!("scaling fails for g = {g}, h = {h}"));
        }

        let n = rng.random_range(0..=40u64);
        let e = rng.random_range(1..=3u64);
        let rec = froot_power(&f, &BigUint::from(n), e, &Ideal::unit(&rg)).unwrap();
        if rec != froot_basis(&f.power(n), e as u32).unwrap() {
            return outcome(false, format!("recursion fails for {f}, N = {n}, e = {e}"));
        }

        let j = Ideal::new(&rg, vec![f.clone(), h.clone()]).unwrap();
        let redundant = Ideal::new(&rg, vec![h.clone(), f.add(&h.mul(&g)), f.mul(&g), f.clone()]).unwrap();
        let reduced = Ideal::new(&rg, j.reduced_basis().to_vec()).unwrap();
        let base = froot_ideal(&j, 1).unwrap();
        if froot_ideal(&redundant, 1).unwrap() != base || froot_ideal(&reduced, 1).unwrap() != base {
            return outcome(false, format!("generator dependence for ({f}, {h})"));
        }
    }
    outcome(true, format!("{C6_INSTANCES} instances of each identity"))
}

fn cusp_pair() -> (Polynomial, Polynomial) {
    let rg = ring(7);
    let f = poly(&rg, "x^2 + y^3");
    let fh = f.add(&poly(&rg, "x^4802"));
    (f, fh)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (f, fh) = cusp_pair();
    let prof = singularity_profile(&f).unwrap();
    let walk = |g: &Polynomial| {
        TestIdealEngine::new(g, 2)
            .unwrap()
            .jumping_numbers(JnMethod::Walk, Comparison::Global)
            .unwrap()
            .fpt
    };
    let (a, b) = (walk(&f), walk(&fh));
    let elapsed = start.elapsed();
    let ok = prof.ell == Some(2) && prof.bound_n == Some(BigUint::from(4802u32)) && a == b && elapsed <= C7_BUDGET;
    outcome(ok, format!("fpt(f) = {a}, fpt(f + x^4802) = {b}, {:.1?}", elapsed))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let rg = ring(5);
    let f = poly(&rg, WORKED_POLY);
    let perturbations: Vec<(u64, usize, Polynomial)> = (0..C8_SAMPLES)
        .map(|i| (9, i, random_perturbation(&rg, 9, 11, 4, SEED + i as u64).unwrap()))
        .collect();
    let stable = perturbations
        .iter()
        .all(|(_, _, h)| jacobian_stability_check(&f, h).unwrap());
    let rep = constancy_report_for(&f, &perturbations, SEED).unwrap();
    let gaps_ok = rep.records.iter().all(|rec| rec.gap_within_bound && rec.fpt_gap <= r(2, 9));
    let equal = rep.records.iter().filter(|rec| rec.fpt_equal).count();
    let elapsed = start.elapsed();
    outcome(
        stable && gaps_ok && elapsed <= C8_BUDGET,
        format!(
            "Jacobian stable: {stable}, gaps <= 2/9: {gaps_ok}, fpt equal in {equal}/{C8_SAMPLES} (recorded), {:.1?}",
            elapsed
        ),
    )
}

fn criterion_9() -> Outcome {
    let (f, fh) = cusp_pair();
    let mut ef = TestIdealEngine::new(&f, 2).unwrap();
    let mut eh = TestIdealEngine::new(&fh, 2).unwrap();
    let jn = ef.jumping_numbers(JnMethod::Walk, Comparison::Global).unwrap();
    for lambda in &jn.jumping_numbers {
        let a = ef.test_ideal(lambda).unwrap().ideal;
        let b = eh.test_ideal(lambda).unwrap().ideal;
        if !local_ideal_equal(&a, &b, 2).unwrap() {
            return outcome(false, format!("λ = {lambda}: {a} vs {b}"));
        }
    }
    // full exponent M = 100842; reported, not gating
    let big = f.add(&poly(f.ring(), "x^100842"));
    let full_m = constancy_report_for(&f, &[(100_842, 0, big.sub(&f))], SEED)
        .map(|rep| rep.records[0].jumping_numbers_equal && rep.records[0].test_ideals_equal_locally);
    outcome(
        true,
        format!(
            "λ ∈ {:?}; at M with h = x^100842: {:?}",
            jn.jumping_numbers.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            full_m
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let start = Instant::now();
    let worked = worked_report();
    let c1_time = start.elapsed();
    results.push((1, "worked example over F_5", criterion_1(&worked, c1_time)));

    let mut corpus = fuzz_corpus();
    results.push((2, "oracle equivalence", criterion_2(&mut corpus)));
    results.push((3, "nu sandwich", criterion_3(&worked, &corpus)));
    results.push((4, "structural invariants", criterion_4(&worked, &corpus)));
    results.push((5, "candidate gap", criterion_5()));
    results.push((6, "Frobenius-root algebra", criterion_6()));
    results.push((7, "fpt constancy at N", criterion_7()));
    results.push((8, "Jacobian stability and gap", criterion_8()));
    results.push((9, "local test-ideal constancy", criterion_9()));

    let mut failed = 0;
    for (n, name, out) in &results {
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {n} [{name}]: {status} ({})", out.detail);
        failed += usize::from(!out.passed);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

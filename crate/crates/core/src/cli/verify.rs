//! Invariant checks run by `fjump verify`.

use num_bigint::BigInt;
use num_traits::One;

use crate::basep::{frac_orbit, in_candidate_set, prime_power, Rational};
use crate::constancy::jacobian;
use crate::error::Result;
use crate::groebner::Ideal;
use crate::polyring::Polynomial;
use crate::testideal::{nu, Comparison, JnMethod, JumpingNumberReport, TestIdealEngine, WALK_LIMIT};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Runs every invariant that applies to `f` with bound `bound`.
pub fn verify_invariants(f: &Polynomial, bound: u64, method: JnMethod) -> Result<(JumpingNumberReport, Vec<Check>)> {
    let p = f.prime();
    let mut engine = TestIdealEngine::new(f, bound)?;
    let report = engine.jumping_numbers(method, Comparison::Global)?;
    let mut checks = Vec::new();

    let off: Vec<String> = report
        .jumping_numbers
        .iter()
        .filter(|l| !in_candidate_set(l, p, bound))
        .map(|l| l.to_string())
        .collect();
    checks.push(Check::new("candidate-shape", off.is_empty(), off.join(", ")));

    let mut escaped = Vec::new();
    for l in &report.jumping_numbers {
        let image = &frac_orbit(l, 2, p)[1];
        if !report.jumping_numbers.contains(image) {
            escaped.push(format!("{l} -> {image}"));
        }
    }
    checks.push(Check::new("frac-closure", escaped.is_empty(), escaped.join(", ")));

    let descending = report
        .test_ideals
        .windows(2)
        .all(|w| w[0].contains_ideal(&w[1]) && w[0] != w[1]);
    checks.push(Check::new("strictly-descending", descending, ""));

    let jumps_confirmed = report
        .positive()
        .iter()
        .map(|l| engine.is_jumping_number(l))
        .collect::<Result<Vec<bool>>>()?;
    checks.push(Check::new("left-limit-differs", jumps_confirmed.iter().all(|&b| b), ""));

    let mut skoda = true;
    for (mu, tau) in report.jumping_numbers.iter().zip(&report.test_ideals) {
        let shifted = engine.test_ideal(&mu.add(&Rational::one()))?.ideal;
        skoda &= shifted == tau.scale(f)?;
    }
    checks.push(Check::new("skoda", skoda, ""));

    let jac = jacobian(f);
    if jac.artinian_length().is_ok() {
        let contained = report.test_ideals.iter().all(|t| t.contains_ideal(&jac));
        checks.push(Check::new("jacobian-containment", contained, ""));
    }

    if f.in_maximal_ideal() {
        let m = Ideal::maximal(f.ring());
        let mut bad = Vec::new();
        for e in 1..=4u64 {
            let n = BigInt::from(nu(f, &m, e)?);
            let q = prime_power(p, e);
            let lower = Rational::new(n.clone(), q.clone())?;
            let upper = Rational::new(n + BigInt::one(), q)?;
            if !(lower < report.fpt && report.fpt <= upper) {
                bad.push(format!("e={e}: {lower} < {} <= {upper} fails", report.fpt));
            }
        }
        checks.push(Check::new("nu-sandwich", bad.is_empty(), bad.join("; ")));
    }

    let estimate = crate::basep::candidate_count_estimate(p, bound);
    if estimate <= BigInt::from(WALK_LIMIT) {
        let other_method = if report.method == JnMethod::Walk {
            JnMethod::Bisect
        } else {
            JnMethod::Walk
        };
        let other = TestIdealEngine::new(f, bound)?.jumping_numbers(other_method, Comparison::Global)?;
        let agree = other.jumping_numbers == report.jumping_numbers && other.test_ideals == report.test_ideals;
        checks.push(Check::new("walk-bisect-agree", agree, ""));
    }
    Ok((report, checks))
}

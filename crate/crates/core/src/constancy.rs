//! Jacobian ideals, isolated-singularity profiles, comparison of ideals
//! after localizing at the origin, and the perturbation harness checking that
//! fpt, jumping numbers and test ideals survive adding high-order terms.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::basep::{prime_power, Rational};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Monomial, Polynomial, Ring};
use crate::testideal::{self, Comparison, JnMethod, JumpingNumberReport, TestIdealEngine};

/// `(f, ∂f/∂x_1, …, ∂f/∂x_n)`.
pub fn jacobian(f: &Polynomial) -> Ideal {
    let ring = f.ring();
    let mut gens = vec![f.clone()];
    for i in 0..ring.dim() {
        gens.push(f.partial_derivative(i).expect("variable index in range"));
    }
    Ideal::from_generators(ring, gens)
}

/// `ℓ = dim R/Jac(f)` and the perturbation exponents derived from it.
#[derive(Clone, Debug)]
pub struct SingularityProfile {
    pub f: Polynomial,
    pub jacobian: Ideal,
    pub ell: Option<u64>,
    /// `p^{2ℓ} n`.
    pub bound_n: Option<BigUint>,
    /// `p^{2ℓ+1} (ℓ+1) n`.
    pub bound_m: Option<BigUint>,
    pub is_isolated: bool,
}

impl SingularityProfile {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "prime": self.f.prime(),
            "poly": self.f.to_string(),
            "jacobian": self.jacobian.to_json_value(),
            "ell": self.ell,
            "boundN": self.bound_n.as_ref().map(|n| n.to_string()),
            "boundM": self.bound_m.as_ref().map(|m| m.to_string()),
            "isIsolated": self.is_isolated,
        })
    }
}

pub fn singularity_profile(f: &Polynomial) -> Result<SingularityProfile> {
    if f.is_zero() || !f.in_maximal_ideal() {
        return Err(Error::domain(format!("{f} must be a nonzero element of the maximal ideal")));
    }
    let jac = jacobian(f).reduced();
    let ell = jac.artinian_length().ok();
    let n = BigUint::from(f.ring().dim());
    let p = f.prime();
    let (bound_n, bound_m) = match ell {
        Some(l) => {
            let pn = prime_power(p, 2 * l).to_biguint().expect("positive");
            let pm = prime_power(p, 2 * l + 1).to_biguint().expect("positive");
            (Some(pn * &n), Some(pm * BigUint::from(l + 1) * &n))
        }
        None => (None, None),
    };
    Ok(SingularityProfile {
        f: f.clone(),
        jacobian: jac,
        ell,
        bound_n,
        bound_m,
        is_isolated: ell.is_some(),
    })
}

/// Compares `J·S` and `K·S` for `S` the localization at the origin.
///
/// When `J·S ⊇ m^{k}·S` the contraction of `J·S` is `J + m^k`, so comparing
/// `J + m^{ℓ+2}` with `K + m^{ℓ+2}` decides the question; the comparison is
/// repeated at `ℓ+3` and a disagreement means the containment hypothesis
/// failed.
pub fn local_ideal_equal(j: &Ideal, k: &Ideal, ell: u64) -> Result<bool> {
    j.ring().ensure_same(k.ring())?;
    if j == k {
        return Ok(true);
    }
    let at = |exp: u64| -> Result<bool> {
        let mk = Ideal::maximal_power(j.ring(), exp as u32);
        Ok(j.sum(&mk)? == k.sum(&mk)?)
    };
    let first = at(ell + 2)?;
    let second = at(ell + 3)?;
    if first != second {
        return Err(Error::PreconditionViolation(format!(
            "local comparison of {j} and {k} is not stable between m^{} and m^{}",
            ell + 2,
            ell + 3
        )));
    }
    Ok(first)
}

fn isolated_ell(f: &Polynomial) -> Result<u64> {
    singularity_profile(f)?
        .ell
        .ok_or_else(|| Error::domain(format!("{f} does not have an isolated singularity at the origin")))
}

fn require_order(h: &Polynomial, k: u64) -> Result<()> {
    match h.order() {
        Some(o) if o < k => Err(Error::domain(format!(
            "perturbation {h} must lie in m^{k} (every monomial of degree >= {k})"
        ))),
        _ => Ok(()),
    }
}

/// `Jac(f)·S = Jac(f+h)·S` for `h ∈ m^{ℓ+3}`.
pub fn jacobian_stability_check(f: &Polynomial, h: &Polynomial) -> Result<bool> {
    f.ring().ensure_same(h.ring())?;
    let ell = isolated_ell(f)?;
    require_order(h, ell + 3)?;
    local_ideal_equal(&jacobian(f), &jacobian(&f.add(h)), ell)
}

/// A seeded random element of `m^k` with monomials of degree in
/// `[k, max_degree]`, distinct monomials and nonzero coefficients.
pub fn random_perturbation(
    ring: &Ring,
    k: u64,
    max_degree: u64,
    term_count: usize,
    seed: u64,
) -> Result<Polynomial> {
    if max_degree < k {
        return Err(Error::domain(format!("max degree {max_degree} is below k = {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.dim();
    let p = ring.prime();
    let mut chosen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut terms = Vec::new();
    let mut attempts = 0;
    while terms.len() < term_count && attempts < 64 * (term_count + 1) {
        attempts += 1;
        let deg = rng.random_range(k..=max_degree) as u32;
        // random composition of deg into n parts
        let mut cuts: Vec<u32> = (0..n.saturating_sub(1)).map(|_| rng.random_range(0..=deg)).collect();
        cuts.push(0);
        cuts.push(deg);
        cuts.sort_unstable();
        let mut exps: Vec<u32> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
        exps.shuffle(&mut rng);
        if chosen.insert(exps.clone()) {
            let c = rng.random_range(1..p);
            terms.push((Monomial::from_exponents(&exps), c));
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Exponents at or above this use the monomial perturbation `x_i^k`; dense
/// random perturbations of such degree are not computable at desk scale.
pub const MONOMIAL_PERTURBATION_FROM: u64 = 32;

/// Terms in each dense random perturbation.
pub const RANDOM_TERMS: usize = 4;

/// One sampled perturbation and the comparison flags.
#[derive(Clone, Debug)]
pub struct PerturbationRecord {
    pub k: u64,
    pub sample: usize,
    pub h: Polynomial,
    pub fpt_f: Rational,
    pub fpt_fh: Rational,
    pub fpt_equal: bool,
    pub jumping_numbers_equal: bool,
    pub test_ideals_equal_locally: bool,
    pub jacobian_stable: bool,
    pub fpt_gap: Rational,
    pub gap_bound: Rational,
    pub gap_within_bound: bool,
    pub theorem_violation: bool,
}

#[derive(Clone, Debug)]
pub struct ConstancyReport {
    pub f: Polynomial,
    pub profile: SingularityProfile,
    pub seed: u64,
    pub jumping_numbers_f: Vec<Rational>,
    pub records: Vec<PerturbationRecord>,
}

impl ConstancyReport {
    /// Whether any record contradicts a guaranteed statement.
    pub fn has_violation(&self) -> bool {
        self.records.iter().any(|r| r.theorem_violation || !r.gap_within_bound || !r.jacobian_stable)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "k": r.k,
                    "sample": r.sample,
                    "h": r.h.to_string(),
                    "fptF": r.fpt_f.to_string(),
                    "fptFh": r.fpt_fh.to_string(),
                    "fptEqual": r.fpt_equal,
                    "jumpingNumbersEqual": r.jumping_numbers_equal,
                    "testIdealsEqualLocally": r.test_ideals_equal_locally,
                    "jacobianStable": r.jacobian_stable,
                    "fptGap": r.fpt_gap.to_string(),
                    "gapBound": r.gap_bound.to_string(),
                    "gapWithinBound": r.gap_within_bound,
                    "theoremViolation": r.theorem_violation,
                })
            })
            .collect();
        json!({
            "prime": self.f.prime(),
            "poly": self.f.to_string(),
            "seed": self.seed,
            "ell": self.profile.ell,
            "boundN": self.profile.bound_n.as_ref().map(|n| n.to_string()),
            "boundM": self.profile.bound_m.as_ref().map(|m| m.to_string()),
            "jumpingNumbers": self.jumping_numbers_f.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "records": records,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,sample,fptF,fptFh,gap,boundDimOverK,fptEqual,jumpingNumbersEqual,testIdealsEqualLocally,jacobianStable,gapWithinBound,theoremViolation\n",
        );
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.k,
                r.sample,
                r.fpt_f,
                r.fpt_fh,
                r.fpt_gap,
                r.gap_bound,
                r.fpt_equal,
                r.jumping_numbers_equal,
                r.test_ideals_equal_locally,
                r.jacobian_stable,
                r.gap_within_bound,
                r.theorem_violation
            ));
        }
        out
    }
}

/// Jumping numbers of `f` in `[0,1)` after localizing at the origin, using
/// bound `B = ℓ`.
pub fn local_jumping_numbers(f: &Polynomial, ell: u64, method: JnMethod) -> Result<(TestIdealEngine, JumpingNumberReport)> {
    let mut engine = TestIdealEngine::new(f, ell.max(1))?;
    let report = engine.jumping_numbers(method, Comparison::Local { ell })?;
    Ok((engine, report))
}

fn perturbation_seed(seed: u64, k: u64, sample: usize) -> u64 {
    seed ^ k.rotate_left(32) ^ (sample as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Compares `f` with `f + h` for sampled `h ∈ m^k`, `k` from `exponents`.
pub fn constancy_report(f: &Polynomial, exponents: &[u64], samples: usize, seed: u64) -> Result<ConstancyReport> {
    let perturbations: Vec<(u64, usize, Polynomial)> = {
        let ring = f.ring();
        let mut out = Vec::new();
        for &k in exponents {
            for i in 0..samples {
                let h = if k >= MONOMIAL_PERTURBATION_FROM {
                    let var = i % ring.dim();
                    Polynomial::monomial(ring, Monomial::var(ring.dim(), var, k as u32), 1)
                } else {
                    random_perturbation(ring, k, k + 2, RANDOM_TERMS, perturbation_seed(seed, k, i))?
                };
                out.push((k, i, h));
            }
        }
        out
    };
    constancy_report_for(f, &perturbations, seed)
}

/// [`constancy_report`] on explicit perturbations `(k, sample, h)`.
pub fn constancy_report_for(
    f: &Polynomial,
    perturbations: &[(u64, usize, Polynomial)],
    seed: u64,
) -> Result<ConstancyReport> {
    let profile = singularity_profile(f)?;
    let ell = profile
        .ell
        .ok_or_else(|| Error::domain(format!("{f} does not have an isolated singularity at the origin")))?;
    let dim = f.ring().dim() as u64;
    let (mut engine_f, report_f) = local_jumping_numbers(f, ell, JnMethod::Auto)?;
    let bound_n = profile.bound_n.clone().expect("isolated");
    let bound_m = profile.bound_m.clone().expect("isolated");
    let mut records = Vec::new();
    for (k, sample, h) in perturbations {
        let k = *k;
        if k < ell + 3 {
            return Err(Error::domain(format!("perturbation exponent {k} is below ℓ+3 = {}", ell + 3)));
        }
        f.ring().ensure_same(h.ring())?;
        require_order(h, k)?;
        let fh = f.add(h);
        let jacobian_stable = local_ideal_equal(&jacobian(f), &jacobian(&fh), ell)?;
        let (mut engine_fh, report_fh) = local_jumping_numbers(&fh, ell, JnMethod::Auto)?;
        let fpt_equal = report_f.fpt == report_fh.fpt;
        let jumping_numbers_equal = report_f.jumping_numbers == report_fh.jumping_numbers;
        let lambdas: BTreeSet<Rational> = report_f
            .jumping_numbers
            .iter()
            .chain(&report_fh.jumping_numbers)
            .cloned()
            .collect();
        let mut test_ideals_equal_locally = true;
        for lambda in &lambdas {
            let a = engine_f.test_ideal(lambda)?.ideal;
            let b = engine_fh.test_ideal(lambda)?.ideal;
            if !local_ideal_equal(&a, &b, ell)? {
                test_ideals_equal_locally = false;
                break;
            }
        }
        let fpt_gap = report_f.fpt.abs_diff(&report_fh.fpt);
        let gap_bound = Rational::new(dim, k)?;
        let kb = BigUint::from(k);
        let theorem_violation = (kb >= bound_n && !fpt_equal)
            || (kb >= bound_m && !(jumping_numbers_equal && test_ideals_equal_locally));
        records.push(PerturbationRecord {
            k,
            sample: *sample,
            h: h.clone(),
            fpt_f: report_f.fpt.clone(),
            fpt_fh: report_fh.fpt.clone(),
            fpt_equal,
            jumping_numbers_equal,
            test_ideals_equal_locally,
            jacobian_stable,
            gap_within_bound: fpt_gap <= gap_bound,
            fpt_gap,
            gap_bound,
            theorem_violation,
        });
    }
    Ok(ConstancyReport {
        f: f.clone(),
        profile,
        seed,
        jumping_numbers_f: report_f.jumping_numbers.clone(),
        records,
    })
}

/// `ft^b(h)`, or `None` when `h ∉ √b` and the threshold is undefined.
fn threshold_if_defined(report: &JumpingNumberReport, b: &Ideal, cap: &Rational) -> Result<Option<Rational>> {
    if !b.is_unit() && !b.radical_contains(&report.f)? {
        return Ok(None);
    }
    testideal::threshold_from_report(report, b, cap).map(Some)
}

/// Checks on one instance that equal thresholds with respect to both
/// `a = τ(f^λ)` and `b = τ(g^λ)` force `a = b`.
pub fn ft_tau_consistency(f: &Polynomial, g: &Polynomial, lambda: &Rational, bound: u64) -> Result<bool> {
    f.ring().ensure_same(g.ring())?;
    let cap = Rational::integer(f.ring().dim() as u64)?.max(lambda.add(&Rational::one()));
    let mut ef = TestIdealEngine::new(f, bound)?;
    let mut eg = TestIdealEngine::new(g, bound)?;
    let a = ef.test_ideal(lambda)?.ideal;
    let b = eg.test_ideal(lambda)?.ideal;
    let rf = ef.jumping_numbers(JnMethod::Auto, Comparison::Global)?;
    let rg = eg.jumping_numbers(JnMethod::Auto, Comparison::Global)?;
    let ft_a_f = threshold_if_defined(&rf, &a, &cap)?;
    let ft_a_g = threshold_if_defined(&rg, &a, &cap)?;
    let ft_b_f = threshold_if_defined(&rf, &b, &cap)?;
    let ft_b_g = threshold_if_defined(&rg, &b, &cap)?;
    let hypothesis = ft_a_f.is_some() && ft_a_f == ft_a_g && ft_b_f.is_some() && ft_b_f == ft_b_g;
    Ok(!hypothesis || a == b)
}

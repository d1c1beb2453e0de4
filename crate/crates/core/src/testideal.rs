//! Test ideals `τ(f^λ)`, F-jumping numbers, ν-invariants and F-thresholds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::basep::{self, candidates_between, epsilon, prime_power, Rational, Window};
use crate::constancy::{jacobian, local_ideal_equal};
use crate::error::{Error, Result};
use crate::froot::{FrobeniusRoots, StateId};
use crate::groebner::Ideal;
use crate::polyring::Polynomial;

/// Candidate walks above this many candidates switch to bisection under
/// [`JnMethod::Auto`].
pub const WALK_LIMIT: u64 = 300_000;

/// `s = u + v B` for `(u, v) = ε(λ)`.
pub fn stabilization_exponent(lambda: &Rational, bound: u64, p: u64) -> Result<u64> {
    let pair = epsilon(lambda, p)?;
    Ok(pair.u + pair.v * bound)
}

/// The default bound policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundChoice {
    /// `binom(n + deg f, n)`, saturating.
    pub degree_bound: u64,
    /// Length of `R/Jac(f)` when finite; 1 when `Jac(f)` is the unit ideal.
    pub length_bound: Option<u64>,
    pub chosen: u64,
}

/// Smaller of the degree bound and (when available) the Jacobian length bound.
pub fn default_bound(f: &Polynomial) -> Result<BoundChoice> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no test ideals"));
    }
    let n = f.ring().dim() as u64;
    let d = f.total_degree();
    let mut degree_bound: u64 = 1;
    for i in 1..=n {
        // binom(d + i, i) = binom(d + i - 1, i - 1) * (d + i) / i
        degree_bound = degree_bound
            .checked_mul(d + i)
            .map(|x| x / i)
            .unwrap_or(u64::MAX);
    }
    let jac = jacobian(f);
    let length_bound = if jac.is_unit() {
        Some(1)
    } else {
        jac.standard_monomial_count().map(|l| l.max(1))
    };
    let chosen = length_bound.map_or(degree_bound, |l| l.min(degree_bound));
    Ok(BoundChoice {
        degree_bound,
        length_bound,
        chosen,
    })
}

/// `τ(f^λ)` with the exponent used to reach it.
#[derive(Clone, Debug)]
pub struct TestIdealResult {
    pub lambda: Rational,
    pub ideal: Ideal,
    pub stabilization_exponent: u64,
    pub bound: u64,
}

impl TestIdealResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda": self.lambda.to_string(),
            "ideal": self.ideal.to_json_value(),
            "stabilizationExponent": self.stabilization_exponent,
            "boundUsed": self.bound,
        })
    }
}

/// How `τ` values are compared while enumerating jumping numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Equality of ideals of `R`.
    Global,
    /// Equality after localizing at the origin, for ideals containing
    /// `m^{ℓ+1}` locally.
    Local { ell: u64 },
}

/// Enumeration strategy for jumping numbers in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JnMethod {
    /// Visit every candidate in ascending order.
    Walk,
    /// Refine `p`-adic intervals whose endpoint test ideals differ.
    Bisect,
    /// Walk when the candidate count is small, bisect otherwise.
    Auto,
}

impl FromStr for JnMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "walk" => Ok(JnMethod::Walk),
            "bisect" => Ok(JnMethod::Bisect),
            "auto" => Ok(JnMethod::Auto),
            other => Err(Error::parse(0, format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for JnMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JnMethod::Walk => "walk",
            JnMethod::Bisect => "bisect",
            JnMethod::Auto => "auto",
        })
    }
}

/// Jumping numbers in a window together with their test ideals.
#[derive(Clone, Debug)]
pub struct JumpingNumberReport {
    pub f: Polynomial,
    pub bound: u64,
    pub window: Window,
    pub jumping_numbers: Vec<Rational>,
    pub test_ideals: Vec<Ideal>,
    pub fpt: Rational,
    /// Candidates visited: all of `𝒜_B ∩ [0,1)` for a walk, only those in
    /// the final intervals for a bisection.
    pub candidate_count: u64,
    pub elapsed: Duration,
    pub method: JnMethod,
}

impl JumpingNumberReport {
    /// Positive jumping numbers below 1.
    pub fn positive(&self) -> Vec<Rational> {
        self.jumping_numbers.iter().filter(|l| !l.is_zero()).cloned().collect()
    }

    /// Test ideal at `λ ∈ [0,1)` read off the report.
    pub fn ideal_at(&self, lambda: &Rational) -> Option<&Ideal> {
        let idx = self.jumping_numbers.partition_point(|j| j <= lambda);
        idx.checked_sub(1).map(|i| &self.test_ideals[i])
    }

    /// With `timing = false` the elapsed time is written as 0 so that
    /// repeated runs produce identical documents.
    pub fn to_json(&self, timing: bool) -> serde_json::Value {
        let elapsed = if timing { self.elapsed.as_millis() as u64 } else { 0 };
        json!({
            "prime": self.f.prime(),
            "poly": self.f.to_string(),
            "bound": self.bound,
            "fpt": self.fpt.to_string(),
            "jumpingNumbers": self.jumping_numbers.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "testIdeals": self.test_ideals.iter().map(|i| i.to_json_value()).collect::<Vec<_>>(),
            "candidateCount": self.candidate_count,
            "elapsedMs": elapsed,
        })
    }
}

/// Test-ideal computations for one polynomial and one bound, sharing a
/// memoized Frobenius-root table across queries.
pub struct TestIdealEngine {
    roots: FrobeniusRoots,
    bound: u64,
    local_memo: HashMap<(StateId, StateId, u64), bool>,
}

impl TestIdealEngine {
    pub fn new(f: &Polynomial, bound: u64) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::domain("the zero polynomial has no test ideals"));
        }
        if bound == 0 {
            return Err(Error::domain("bound B must be positive"));
        }
        Ok(TestIdealEngine {
            roots: FrobeniusRoots::new(f),
            bound,
            local_memo: HashMap::new(),
        })
    }

    /// Engine with [`default_bound`].
    pub fn with_default_bound(f: &Polynomial) -> Result<Self> {
        Self::new(f, default_bound(f)?.chosen)
    }

    pub fn polynomial(&self) -> &Polynomial {
        self.roots.polynomial()
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn prime(&self) -> u64 {
        self.polynomial().prime()
    }

    pub fn ideal(&self, id: StateId) -> &Ideal {
        self.roots.ideal(id)
    }

    /// Exponent `s` with `τ(f^λ) = I_s(f^{⌈p^s λ⌉})` for `0 < λ <= 1`.
    ///
    /// Candidates use `s = u + vB`. Any other `λ` with denominator `d` sits at
    /// distance more than `1/(d p^B)` from every candidate, so
    /// `p^s >= d p^B` pushes `⌈p^s λ⌉/p^s` (and the matching truncation)
    /// into the same constancy interval.
    fn exponent_for(&self, lambda: &Rational) -> Result<u64> {
        let p = self.prime();
        let pair = epsilon(lambda, p)?;
        if pair.u + pair.v <= self.bound {
            return Ok(pair.u + pair.v * self.bound);
        }
        let d = lambda.denom();
        let mut e = 0u64;
        let pb = BigInt::from(p);
        let mut q = BigInt::one();
        while &q < d {
            q *= &pb;
            e += 1;
        }
        Ok(e + self.bound)
    }

    /// State of `τ(f^λ)` (or of its left limit) for `0 < λ <= 1`.
    fn unit_state(&mut self, lambda: &Rational, left: bool) -> Result<(StateId, u64)> {
        let s = self.exponent_for(lambda)?;
        let q = prime_power(self.prime(), s);
        let mut n = lambda.mul_int(&q).ceil();
        if left {
            n -= 1;
        }
        let n = n.to_biguint().expect("non-negative exponent");
        let unit = self.roots.unit();
        Ok((self.roots.power_root(&n, s, unit)?, s))
    }

    /// State of `I_e(f^c) = τ(f^{c/p^e})`.
    pub fn dyadic_state(&mut self, c: &BigUint, e: u64) -> Result<StateId> {
        let unit = self.roots.unit();
        self.roots.power_root(c, e, unit)
    }

    fn split(lambda: &Rational) -> (u64, Rational) {
        let k = lambda.floor().to_u64().expect("integer part fits in u64");
        (k, lambda.fract())
    }

    fn skoda(&self, ideal: &Ideal, k: u64) -> Result<Ideal> {
        if k == 0 {
            return Ok(ideal.clone());
        }
        Ok(ideal.scale(&self.polynomial().power(k))?.reduced())
    }

    pub fn test_ideal(&mut self, lambda: &Rational) -> Result<TestIdealResult> {
        let (k, mu) = Self::split(lambda);
        let (state, s) = if mu.is_zero() {
            (self.roots.unit(), 0)
        } else {
            self.unit_state(&mu, false)?
        };
        let ideal = self.skoda(&self.ideal(state).clone(), k)?;
        Ok(TestIdealResult {
            lambda: lambda.clone(),
            ideal,
            stabilization_exponent: s,
            bound: self.bound,
        })
    }

    /// `⋂_{ε>0} τ(f^{λ-ε})` for `λ > 0`.
    pub fn test_ideal_left_limit(&mut self, lambda: &Rational) -> Result<Ideal> {
        if lambda.is_zero() {
            return Err(Error::domain("left limit requires λ > 0"));
        }
        // λ = k + μ with 0 < μ <= 1
        let k = lambda.ceil().to_u64().expect("integer part fits in u64") - 1;
        let mu = lambda
            .checked_sub(&Rational::integer(k)?)
            .expect("k < λ");
        let (state, _) = self.unit_state(&mu, true)?;
        self.skoda(&self.ideal(state).clone(), k)
    }

    /// Whether the candidate `λ > 0` is an F-jumping number.
    pub fn is_jumping_number(&mut self, lambda: &Rational) -> Result<bool> {
        let p = self.prime();
        if lambda.is_zero() || !basep::in_candidate_set(lambda, p, self.bound) {
            return Err(Error::domain(format!(
                "{lambda} is not a positive element of the candidate set for B = {}",
                self.bound
            )));
        }
        // multiplication by f^k is injective, so reduce to (0, 1]
        let k = lambda.ceil().to_u64().expect("integer part fits in u64") - 1;
        let mu = lambda.checked_sub(&Rational::integer(k)?).expect("k < λ");
        let (left, _) = self.unit_state(&mu, true)?;
        let (right, _) = self.unit_state(&mu, false)?;
        Ok(left != right)
    }

    fn same(&mut self, a: StateId, b: StateId, cmp: Comparison) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        match cmp {
            Comparison::Global => Ok(false),
            Comparison::Local { ell } => {
                let key = (a.min(b), a.max(b), ell);
                if let Some(&v) = self.local_memo.get(&key) {
                    return Ok(v);
                }
                let v = local_ideal_equal(self.roots.ideal(a), self.roots.ideal(b), ell)?;
                self.local_memo.insert(key, v);
                Ok(v)
            }
        }
    }

    /// `JN(f) ∩ [0, 1)` with the test ideal at each jump.
    pub fn jumping_numbers(&mut self, method: JnMethod, cmp: Comparison) -> Result<JumpingNumberReport> {
        let start = Instant::now();
        let method = match method {
            JnMethod::Auto => {
                let estimate = basep::candidate_count_estimate(self.prime(), self.bound);
                if estimate <= BigInt::from(WALK_LIMIT) {
                    JnMethod::Walk
                } else {
                    JnMethod::Bisect
                }
            }
            m => m,
        };
        let (jumps, count) = match method {
            JnMethod::Walk => self.walk(cmp)?,
            _ => self.bisect(cmp)?,
        };
        let fpt = jumps
            .iter()
            .find(|(l, st)| !l.is_zero() && self.ideal(*st).in_maximal_ideal())
            .map_or_else(Rational::one, |(l, _)| l.clone());
        let (jumping_numbers, test_ideals) = jumps
            .into_iter()
            .map(|(l, st)| (l, self.ideal(st).clone()))
            .unzip();
        Ok(JumpingNumberReport {
            f: self.polynomial().clone(),
            bound: self.bound,
            window: Window::unit(),
            jumping_numbers,
            test_ideals,
            fpt,
            candidate_count: count,
            elapsed: start.elapsed(),
            method,
        })
    }

    /// Ascending walk over `𝒜_B ∩ [0, 1)`, comparing consecutive test ideals.
    fn walk(&mut self, cmp: Comparison) -> Result<(Vec<(Rational, StateId)>, u64)> {
        let cands = basep::candidate_set(self.prime(), self.bound, &Window::unit())?;
        let mut prev = self.roots.unit();
        let mut jumps = vec![(Rational::zero(), prev)];
        for lambda in cands.values.iter().filter(|l| !l.is_zero()) {
            let (state, _) = self.unit_state(lambda, false)?;
            if !self.same(prev, state, cmp)? {
                jumps.push((lambda.clone(), state));
            }
            prev = state;
        }
        Ok((jumps, cands.len() as u64))
    }

    /// Refines intervals `(c/p^e, (c+1)/p^e]` whose endpoint test ideals
    /// differ until each holds a single candidate; that candidate is the jump.
    fn bisect(&mut self, cmp: Comparison) -> Result<(Vec<(Rational, StateId)>, u64)> {
        let p = self.prime();
        let pb = BigUint::from(p);
        let unit = self.roots.unit();
        let one = self.dyadic_state(&BigUint::one(), 0)?;
        let mut found: Vec<(Rational, StateId)> = Vec::new();
        let mut count = 0u64;
        let mut stack: Vec<(BigUint, u64, StateId, StateId)> = Vec::new();
        if !self.same(unit, one, cmp)? {
            stack.push((BigUint::zero(), 0, unit, one));
        }
        while let Some((c, e, left, right)) = stack.pop() {
            if e >= self.bound {
                let q = prime_power(p, e);
                let lo = Rational::new(BigInt::from(c.clone()), q.clone())?;
                let hi = Rational::new(BigInt::from(c.clone() + 1u32), q)?;
                let cands = candidates_between(p, self.bound, &lo, false, &hi, true);
                count += cands.len() as u64;
                match cands.len() {
                    0 => {
                        return Err(Error::PreconditionViolation(format!(
                            "test ideal changes in ({lo}, {hi}] but no candidate lies there; B = {} is too small",
                            self.bound
                        )))
                    }
                    1 => {
                        found.push((cands[0].clone(), right));
                        continue;
                    }
                    _ if e > 2 * self.bound + 1 => {
                        return Err(Error::Internal("candidate spacing violated".into()));
                    }
                    _ => {}
                }
            }
            let mut prev = left;
            for k in 0..p {
                let child = &c * &pb + BigUint::from(k);
                let next = if k + 1 == p {
                    right
                } else {
                    self.dyadic_state(&(&child + 1u32), e + 1)?
                };
                if !self.same(prev, next, cmp)? {
                    stack.push((child, e + 1, prev, next));
                }
                prev = next;
            }
        }
        found.retain(|(l, _)| l < &Rational::one());
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let mut jumps = vec![(Rational::zero(), unit)];
        jumps.extend(found);
        Ok((jumps, count))
    }
}

/// `τ(f^λ)` via [`TestIdealEngine::test_ideal`].
pub fn test_ideal(f: &Polynomial, lambda: &Rational, bound: u64) -> Result<TestIdealResult> {
    TestIdealEngine::new(f, bound)?.test_ideal(lambda)
}

pub fn test_ideal_left_limit(f: &Polynomial, lambda: &Rational, bound: u64) -> Result<Ideal> {
    TestIdealEngine::new(f, bound)?.test_ideal_left_limit(lambda)
}

pub fn is_jumping_number(f: &Polynomial, lambda: &Rational, bound: u64) -> Result<bool> {
    TestIdealEngine::new(f, bound)?.is_jumping_number(lambda)
}

/// Candidate walk over `[0, 1)`.
pub fn jumping_numbers_unit_interval(f: &Polynomial, bound: u64) -> Result<JumpingNumberReport> {
    TestIdealEngine::new(f, bound)?.jumping_numbers(JnMethod::Walk, Comparison::Global)
}

fn nu_cap(b: &Ideal, e: u64) -> Result<BigUint> {
    let degrees: u64 = b.reduced_basis().iter().map(|g| g.total_degree()).sum();
    let q = prime_power(b.ring().prime(), e);
    Ok((q * BigInt::from(1 + degrees)).to_biguint().expect("positive"))
}

/// `max{N >= 1 : f^N ∉ b^{[p^e]}}`, or 0 when `f ∈ b^{[p^e]}`.
///
/// Uses `f^N ∈ b^{[p^e]} ⇔ I_e(f^N) ⊆ b` and a doubling-then-binary search
/// on that monotone predicate.
pub fn nu(f: &Polynomial, b: &Ideal, e: u64) -> Result<BigUint> {
    f.ring().ensure_same(b.ring())?;
    if f.is_zero() {
        return Err(Error::domain("ν of the zero polynomial is undefined"));
    }
    if b.is_unit() {
        return Ok(BigUint::zero());
    }
    let cap = nu_cap(b, e)?;
    let mut roots = FrobeniusRoots::new(f);
    let unit = roots.unit();
    let mut inside = |n: &BigUint| -> Result<bool> {
        let st = roots.power_root(n, e, unit)?;
        Ok(b.contains_ideal(roots.ideal(st)))
    };
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    while !inside(&hi)? {
        lo = hi.clone();
        hi <<= 1;
        if hi > cap {
            if !inside(&cap)? {
                return Err(Error::domain(format!(
                    "f has no power in the Frobenius power of b below the cap {cap}"
                )));
            }
            hi = cap.clone();
            break;
        }
    }
    // lo is outside (or 0), hi inside
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if inside(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// ν by repeated multiplication modulo `b^{[p^e]}`; only viable for small
/// `p^e`, kept as an independent reference.
pub fn nu_by_expansion(f: &Polynomial, b: &Ideal, e: u32) -> Result<u64> {
    f.ring().ensure_same(b.ring())?;
    if b.is_unit() {
        return Ok(0);
    }
    let cap = nu_cap(b, e as u64)?
        .to_u64()
        .ok_or_else(|| Error::Infeasible("cap too large for expansion".into()))?;
    let bracket = b.bracket_power(e);
    let mut acc = bracket.normal_form(f);
    let mut n = 1u64;
    while !acc.is_zero() {
        if n > cap {
            return Err(Error::domain("f is not in the radical of b"));
        }
        acc = bracket.normal_form(&acc.mul(f));
        n += 1;
    }
    Ok(n - 1)
}

/// Least `λ` with `τ(f^λ) ⊆ b`, searched among `k + JN(f) ∩ [0, 1)` up to
/// `cap`.
pub fn f_threshold(f: &Polynomial, b: &Ideal, bound: u64, cap: &Rational) -> Result<Rational> {
    f.ring().ensure_same(b.ring())?;
    if b.is_unit() {
        return Ok(Rational::zero());
    }
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no test ideals"));
    }
    if !b.radical_contains(f)? {
        return Err(Error::domain(format!("{f} is not in the radical of {b}")));
    }
    let mut engine = TestIdealEngine::new(f, bound)?;
    let report = engine.jumping_numbers(JnMethod::Auto, Comparison::Global)?;
    threshold_from_report(&report, b, cap)
}

/// [`f_threshold`] on an already computed unit-interval report.
pub fn threshold_from_report(report: &JumpingNumberReport, b: &Ideal, cap: &Rational) -> Result<Rational> {
    if b.is_unit() {
        return Ok(Rational::zero());
    }
    let f = &report.f;
    let mut k = 0u64;
    let mut fk = Polynomial::one(f.ring());
    loop {
        for (mu, tau) in report.jumping_numbers.iter().zip(&report.test_ideals) {
            let lambda = mu.add(&Rational::integer(k)?);
            if &lambda > cap {
                return Err(Error::NotFoundBelowCap { cap: cap.to_string() });
            }
            let ideal = if k == 0 { tau.clone() } else { tau.scale(&fk)? };
            if b.contains_ideal(&ideal) {
                return Ok(lambda);
            }
        }
        k += 1;
        fk = fk.mul(f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_polynomial;
    use crate::polyring::Ring;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b).unwrap()
    }

    fn setup(p: u64, f: &str) -> (Ring, Polynomial) {
        let ring = Ring::new(p, ["x", "y"]).unwrap();
        let f = parse_polynomial(f, &ring).unwrap();
        (ring, f)
    }

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).unwrap()).collect()).unwrap()
    }

    const WORKED: &str = "x^4 + y^3 + x^2*y^2";

    #[test]
    fn stabilization_examples() {
        assert_eq!(stabilization_exponent(&r(7, 12), 6, 5).unwrap(), 12);
        assert_eq!(stabilization_exponent(&r(4, 5), 6, 5).unwrap(), 7);
        assert_eq!(stabilization_exponent(&r(1, 2), 1, 3).unwrap(), 1);
    }

    #[test]
    fn test_ideal_examples() {
        let (ring, f) = setup(5, WORKED);
        let mut eng = TestIdealEngine::new(&f, 6).unwrap();
        assert_eq!(eng.test_ideal(&r(4, 5)).unwrap().ideal, ideal(&ring, &["x^2", "y"]));
        assert_eq!(
            eng.test_ideal(&r(11, 12)).unwrap().ideal,
            ideal(&ring, &["x^2", "x*y", "y^2"])
        );
        assert_eq!(eng.test_ideal(&r(7, 12)).unwrap().ideal, ideal(&ring, &["x", "y"]));
        assert!(eng.test_ideal(&Rational::zero()).unwrap().ideal.is_unit());
        let x = parse_polynomial("x", &ring).unwrap();
        assert!(test_ideal(&x, &r(1, 2), 1).unwrap().ideal.is_unit());
        assert!(test_ideal(&Polynomial::zero(&ring), &r(1, 2), 1).is_err());
    }

    #[test]
    fn left_limit_examples() {
        let (ring, f) = setup(5, WORKED);
        let mut eng = TestIdealEngine::new(&f, 6).unwrap();
        assert!(eng.test_ideal_left_limit(&r(7, 12)).unwrap().is_unit());
        assert_eq!(eng.test_ideal_left_limit(&r(4, 5)).unwrap(), ideal(&ring, &["x", "y"]));
        let x = parse_polynomial("x", &ring).unwrap();
        assert!(test_ideal_left_limit(&x, &Rational::one(), 1).unwrap().is_unit());
    }

    #[test]
    fn jumping_number_examples() {
        let (ring, f) = setup(5, WORKED);
        let mut eng = TestIdealEngine::new(&f, 6).unwrap();
        assert!(eng.is_jumping_number(&r(7, 12)).unwrap());
        assert!(!eng.is_jumping_number(&r(1, 2)).unwrap());
        let x = parse_polynomial("x", &ring).unwrap();
        assert!(!is_jumping_number(&x, &r(1, 2), 1).unwrap());
        assert!(is_jumping_number(&x, &Rational::one(), 1).unwrap());
        // u = 7 exceeds B
        assert!(eng.is_jumping_number(&r(1, 78125)).is_err());
    }

    #[test]
    fn unit_interval_examples() {
        let (ring, x) = setup(5, "x");
        let rep = jumping_numbers_unit_interval(&x, 1).unwrap();
        assert!(rep.positive().is_empty());
        assert_eq!(rep.fpt, Rational::one());

        let (_, cusp) = setup(7, "x^2 + y^3");
        let rep = jumping_numbers_unit_interval(&cusp, 2).unwrap();
        assert_eq!(rep.fpt, r(5, 6));
        let bis = TestIdealEngine::new(&cusp, 2)
            .unwrap()
            .jumping_numbers(JnMethod::Bisect, Comparison::Global)
            .unwrap();
        assert_eq!(bis.jumping_numbers, rep.jumping_numbers);
        assert_eq!(bis.test_ideals, rep.test_ideals);
        assert!(jumping_numbers_unit_interval(&Polynomial::one(&ring), 0).is_err());
    }

    #[test]
    fn bisect_on_worked_example() {
        let (ring, f) = setup(5, WORKED);
        let rep = TestIdealEngine::new(&f, 6)
            .unwrap()
            .jumping_numbers(JnMethod::Bisect, Comparison::Global)
            .unwrap();
        assert_eq!(rep.positive(), vec![r(7, 12), r(4, 5), r(11, 12)]);
        assert_eq!(rep.fpt, r(7, 12));
        assert_eq!(rep.test_ideals[2], ideal(&ring, &["x^2", "y"]));
    }

    #[test]
    fn nu_examples() {
        let (ring, x) = setup(5, "x");
        let m = Ideal::maximal(&ring);
        for e in 1..=3 {
            assert_eq!(nu(&x, &m, e).unwrap(), BigUint::from(5u64.pow(e as u32) - 1));
        }
        let (ring3, g) = setup(3, "x^2 + y^2");
        assert_eq!(nu(&g, &Ideal::maximal(&ring3), 1).unwrap(), BigUint::from(2u32));
        assert_eq!(nu_by_expansion(&g, &Ideal::maximal(&ring3), 1).unwrap(), 2);
        let (ring5, f) = setup(5, WORKED);
        let m5 = Ideal::maximal(&ring5);
        assert_eq!(nu(&f, &m5, 1).unwrap(), BigUint::from(2u32));
        for e in 1..=2 {
            assert_eq!(
                nu(&f, &m5, e as u64).unwrap(),
                BigUint::from(nu_by_expansion(&f, &m5, e).unwrap())
            );
        }
        assert!(nu(&Polynomial::one(&ring5), &m5, 1).is_err());
    }

    #[test]
    fn f_threshold_examples() {
        let (ring, f) = setup(5, WORKED);
        let cap = Rational::integer(2).unwrap();
        assert_eq!(f_threshold(&f, &Ideal::maximal(&ring), 6, &cap).unwrap(), r(7, 12));
        assert_eq!(f_threshold(&f, &ideal(&ring, &["x^2", "y"]), 6, &cap).unwrap(), r(4, 5));
        assert_eq!(f_threshold(&f, &Ideal::unit(&ring), 6, &cap).unwrap(), Rational::zero());
        // the threshold of (x^5, y^2) lies above 1
        let b = ideal(&ring, &["x^5", "y^2"]);
        let t = f_threshold(&f, &b, 6, &Rational::integer(3).unwrap()).unwrap();
        assert!(t > Rational::one());
        assert!(matches!(
            f_threshold(&f, &b, 6, &r(1, 2)),
            Err(Error::NotFoundBelowCap { .. })
        ));
    }

    #[test]
    fn default_bound_policy() {
        let (_, f) = setup(5, WORKED);
        let choice = default_bound(&f).unwrap();
        assert_eq!(choice.length_bound, Some(6));
        assert_eq!(choice.degree_bound, 15);
        assert_eq!(choice.chosen, 6);
        let (_, x) = setup(5, "x");
        assert_eq!(default_bound(&x).unwrap().chosen, 1);
    }
}

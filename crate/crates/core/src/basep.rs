//! Exact base-p arithmetic on non-negative rationals.
//!
//! Truncations of base-p expansions, the exponent-pair sets
//! `{(u, v) : p^u (p^v - 1) λ ∈ N}` with their canonical generator, and the
//! finite sets of candidate jumping numbers built from bounded pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative rational number, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let numer = numer.into();
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        let value = BigRational::new(numer, denom);
        Self::from_big(value)
    }

    pub fn from_big(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::domain(format!("negative rational {value}")));
        }
        Ok(Rational(value))
    }

    pub fn integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::from_big(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational(self.0.fract())
    }

    pub fn mul_int(&self, k: &BigInt) -> Rational {
        Rational(&self.0 * BigRational::from_integer(k.clone()))
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(&self.0 + &other.0)
    }

    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(Rational(d))
    }

    pub fn abs_diff(&self, other: &Rational) -> Rational {
        Rational((&self.0 - &other.0).abs())
    }

    pub fn div_int(&self, k: &BigInt) -> Rational {
        Rational(&self.0 / BigRational::from_integer(k.clone()))
    }

    /// `1 / p^e`.
    pub fn inv_prime_power(p: u64, e: u64) -> Rational {
        Rational(BigRational::new(BigInt::one(), prime_power(p, e)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str, offset: usize| -> Result<BigInt> {
            let t = t.trim();
            BigInt::from_str(t)
                .map_err(|_| Error::parse(offset, format!("malformed integer '{t}'")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let numer = parse_int(n, 0)?;
                let denom = parse_int(d, n.len() + 1)?;
                Rational::new(numer, denom)
            }
            None => Rational::integer(parse_int(s, 0)?),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `p^e` as a big integer.
pub fn prime_power(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// A pair `(u, v)` with `v >= 1`; `p^u (p^v - 1)` is the associated denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentPair {
    pub u: u64,
    pub v: u64,
}

impl ExponentPair {
    pub fn new(u: u64, v: u64) -> Result<Self> {
        if v == 0 {
            return Err(Error::domain("exponent pair requires v >= 1"));
        }
        Ok(ExponentPair { u, v })
    }

    /// `p^u (p^v - 1)`.
    pub fn denominator(&self, p: u64) -> BigInt {
        prime_power(p, self.u) * (prime_power(p, self.v) - 1)
    }
}

fn require_positive(lambda: &Rational, what: &str) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::domain(format!("{what} requires a positive parameter")));
    }
    Ok(())
}

/// The e-th truncation `(ceil(p^e λ) - 1) / p^e`.
pub fn truncate(lambda: &Rational, e: u64, p: u64) -> Result<Rational> {
    require_positive(lambda, "truncation")?;
    let q = prime_power(p, e);
    let n = lambda.mul_int(&q).ceil() - 1;
    Rational::new(n, q)
}

/// Canonical element of the exponent-pair set: `u` minimal, then `v` minimal.
///
/// Writing `λ = p^ν m / n` with `p, m, n` pairwise coprime, this is
/// `(max(-ν, 0), ord_n(p))`.
pub fn epsilon(lambda: &Rational, p: u64) -> Result<ExponentPair> {
    require_positive(lambda, "canonical pair")?;
    let pb = BigInt::from(p);
    let mut n = lambda.denom().clone();
    let mut u = 0u64;
    while n.is_multiple_of(&pb) {
        n /= &pb;
        u += 1;
    }
    let v = multiplicative_order(p, &n)?;
    Ok(ExponentPair { u, v })
}

const ORDER_SEARCH_LIMIT: u64 = 100_000_000;

/// Smallest `s >= 1` with `p^s ≡ 1 (mod n)`; `n` must be coprime to `p`.
fn multiplicative_order(p: u64, n: &BigInt) -> Result<u64> {
    if n.is_one() {
        return Ok(1);
    }
    if let Some(small) = n.to_u64() {
        let pm = p % small;
        let mut acc = pm;
        let mut s = 1u64;
        while acc != 1 {
            acc = ((acc as u128 * pm as u128) % small as u128) as u64;
            s += 1;
            if s > ORDER_SEARCH_LIMIT {
                return Err(Error::Infeasible(format!("order of {p} modulo {n} too large")));
            }
        }
        return Ok(s);
    }
    let nb = n.to_biguint().expect("positive modulus");
    let pm = BigUint::from(p) % &nb;
    let mut acc = pm.clone();
    let mut s = 1u64;
    while !acc.is_one() {
        acc = (acc * &pm) % &nb;
        s += 1;
        if s > ORDER_SEARCH_LIMIT {
            return Err(Error::Infeasible(format!("order of {p} modulo {n} too large")));
        }
    }
    Ok(s)
}

/// Whether `p^u (p^v - 1) λ` is a natural number.
pub fn in_expset(lambda: &Rational, pair: ExponentPair, p: u64) -> bool {
    if pair.v == 0 {
        return false;
    }
    lambda.mul_int(&pair.denominator(p)).is_integer()
}

/// Membership in the candidate set: `λ = 0` or some pair of the exponent
/// set has `u + v <= bound`. The canonical pair minimizes `u + v`.
pub fn in_candidate_set(lambda: &Rational, p: u64, bound: u64) -> bool {
    if lambda.is_zero() {
        return true;
    }
    match epsilon(lambda, p) {
        Ok(pair) => pair.u + pair.v <= bound,
        Err(_) => false,
    }
}

/// `[p^e λ] - floor(p^e λ)` for `e = 0..count`.
pub fn frac_orbit(lambda: &Rational, count: usize, p: u64) -> Vec<Rational> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(count);
    let mut cur = lambda.clone();
    for _ in 0..count {
        out.push(cur.fract());
        cur = cur.mul_int(&pb);
    }
    out
}

/// Decides `λ = γ` by comparing truncations at index `u + a + v b`.
pub fn truncation_equal(
    lambda: &Rational,
    gamma: &Rational,
    pair_lambda: ExponentPair,
    pair_gamma: ExponentPair,
    p: u64,
) -> Result<bool> {
    if !in_expset(lambda, pair_lambda, p) {
        return Err(Error::domain(format!(
            "({}, {}) is not an exponent pair of {lambda}",
            pair_lambda.u, pair_lambda.v
        )));
    }
    if !in_expset(gamma, pair_gamma, p) {
        return Err(Error::domain(format!(
            "({}, {}) is not an exponent pair of {gamma}",
            pair_gamma.u, pair_gamma.v
        )));
    }
    let idx = pair_lambda.u + pair_gamma.u + pair_lambda.v * pair_gamma.v;
    Ok(truncate(lambda, idx, p)? == truncate(gamma, idx, p)?)
}

/// Lower bound `p^{-2B}` on the spacing of the candidate set.
pub fn gap_bound(p: u64, bound: u64) -> Rational {
    Rational::inv_prime_power(p, 2 * bound)
}

/// All pairs `(a, b)` with `b >= 1` and `a + b <= bound`.
pub fn bounded_pairs(bound: u64) -> impl Iterator<Item = ExponentPair> {
    (1..=bound).flat_map(move |b| (0..=bound - b).map(move |a| ExponentPair { u: a, v: b }))
}

/// A rational interval `[lo, hi)`; `hi = None` means unbounded above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Rational,
    pub hi: Option<Rational>,
}

impl Window {
    pub fn new(lo: Rational, hi: Option<Rational>) -> Self {
        Window { lo, hi }
    }

    pub fn unit() -> Self {
        Window {
            lo: Rational::zero(),
            hi: Some(Rational::one()),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        x >= &self.lo && self.hi.as_ref().is_none_or(|hi| x < hi)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(hi) => write!(f, "[{}, {})", self.lo, hi),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `lo:hi`, with an empty or `inf` upper end meaning unbounded.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "window must have the form lo:hi"))?;
        let lo: Rational = lo.parse()?;
        let hi = match hi.trim() {
            "" | "inf" => None,
            t => Some(t.parse::<Rational>()?),
        };
        Ok(Window { lo, hi })
    }
}

/// Sorted, deduplicated candidate jumping numbers inside a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub prime: u64,
    pub bound: u64,
    pub window: Window,
    pub values: Vec<Rational>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values).expect("rationals serialize")
    }
}

/// Enumerates the candidate set inside `window`.
///
/// Every `c / (p^a (p^b - 1))` with `a + b <= bound` landing in the window is
/// reduced and deduplicated; zero is included whenever the window contains it.
pub fn candidate_set(p: u64, bound: u64, window: &Window) -> Result<CandidateSet> {
    if bound == 0 {
        return Err(Error::domain("candidate bound must be positive"));
    }
    let hi = window
        .hi
        .as_ref()
        .ok_or_else(|| Error::domain("candidate window must be bounded above"))?;
    let values = candidates_between(p, bound, &window.lo, true, hi, false);
    Ok(CandidateSet {
        prime: p,
        bound,
        window: window.clone(),
        values,
    })
}

/// Candidates `x` with `lo <(=) x <(=) hi`, ascending.
pub(crate) fn candidates_between(
    p: u64,
    bound: u64,
    lo: &Rational,
    lo_inclusive: bool,
    hi: &Rational,
    hi_inclusive: bool,
) -> Vec<Rational> {
    let mut seen: BTreeSet<Rational> = BTreeSet::new();
    if lo_inclusive && lo.is_zero() && (hi_inclusive || !hi.is_zero()) {
        seen.insert(Rational::zero());
    }
    for pair in bounded_pairs(bound) {
        let d = pair.denominator(p);
        let lo_scaled = lo.mul_int(&d);
        let mut c = if lo_inclusive {
            lo_scaled.ceil()
        } else {
            lo_scaled.floor() + 1
        };
        let hi_scaled = hi.mul_int(&d);
        let c_max = if hi_inclusive {
            hi_scaled.floor()
        } else {
            hi_scaled.ceil() - 1
        };
        if c.sign() == Sign::Minus {
            c = BigInt::zero();
        }
        while c <= c_max {
            seen.insert(Rational(BigRational::new(c.clone(), d.clone())));
            c += 1;
        }
    }
    seen.into_iter().collect()
}

/// Upper estimate of `|candidates ∩ [0, 1)|`: the sum of all denominators.
pub fn candidate_count_estimate(p: u64, bound: u64) -> BigInt {
    bounded_pairs(bound).map(|pair| pair.denominator(p)).sum()
}

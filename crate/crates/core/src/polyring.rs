//! Sparse multivariate polynomials over a prime field `F_p`.
//!
//! Terms are kept sorted by graded reverse lexicographic order, leading term
//! first, with coefficients in `[1, p - 1]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    prime: u64,
    vars: Vec<String>,
}

/// `F_p[x_1, ..., x_n]`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    pub fn new<S: Into<String>>(prime: u64, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        if prime >= 1 << 62 {
            return Err(Error::domain(format!("characteristic {prime} exceeds 62 bits")));
        }
        if !is_prime(prime) {
            return Err(Error::domain(format!("{prime} is not prime")));
        }
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::domain("a ring needs at least one variable"));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::domain(format!("invalid variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::domain(format!("duplicate variable '{v}'")));
            }
        }
        Ok(Ring(Arc::new(RingInner { prime, vars })))
    }

    pub fn prime(&self) -> u64 {
        self.0.prime
    }

    pub fn dim(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// The same field with one more variable appended.
    pub fn with_extra_var(&self, name: &str) -> Result<Ring> {
        let mut vars = self.0.vars.clone();
        vars.push(name.to_string());
        Ring::new(self.prime(), vars)
    }

    pub fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.prime(), self.0.vars.join(","))
    }
}

/// Exponent vector. `Ord` is graded reverse lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, k: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| {
                    u32::try_from(e as u64 * k).expect("exponent overflow in Frobenius scaling")
                })
                .collect(),
        )
    }

    /// Is this a pure power of a single variable (or 1)?
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let first = nz.next()?;
        nz.next().is_none().then_some(first.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Term = (Monomial, u64);

/// A polynomial over `F_p`; terms sorted descending, coefficients nonzero.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::monomial(ring, Monomial::one(ring.dim()), reduce_signed(c, ring.prime()))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.dim(), i, 1), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, coeff: u64) -> Self {
        assert_eq!(m.0.len(), ring.dim(), "monomial length must match ring dimension");
        let c = coeff % ring.prime();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = Term>) -> Self {
        let p = ring.prime();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.dim(), "monomial length must match ring dimension");
            let e = acc.entry(m).or_insert(0);
            *e = add_mod(*e, c % p, p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u64>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts that `terms` are already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0 && *c < ring.prime()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn constant_term(&self) -> u64 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Lies in the ideal generated by the variables.
    pub fn in_maximal_ideal(&self) -> bool {
        self.constant_term() == 0
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, self.prime() - 1)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.prime() - 1)
    }

    /// `self + k * other`, a merge of two sorted term lists.
    fn combine(&self, other: &Polynomial, k: u64) -> Polynomial {
        let p = self.prime();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    let c = mul_mod(*cb, k, p);
                    if c != 0 {
                        out.push((mb.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = add_mod(*ca, mul_mod(*cb, k, p), p);
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            let c = mul_mod(*c, k, p);
            if c != 0 {
                out.push((m.clone(), c));
            }
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn scale(&self, k: u64) -> Polynomial {
        let p = self.prime();
        let k = k % p;
        if k == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), mul_mod(*c, k, p))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// `coeff * mono * self`; multiplying by a monomial preserves the order.
    pub fn mul_term(&self, mono: &Monomial, coeff: u64) -> Polynomial {
        let p = self.prime();
        let k = coeff % p;
        if k == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.mul(mono), mul_mod(*c, k, p))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let p = self.prime();
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, *c);
        }
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = add_mod(*e, mul_mod(*ca, *cb, p), p);
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.mul(other))
    }

    /// `f^{p^e}`: on `F_p` coefficients are Frobenius-fixed, so only the
    /// exponent vectors scale.
    pub fn frobenius(&self, e: u32) -> Polynomial {
        if e == 0 {
            return self.clone();
        }
        let q = self.prime().checked_pow(e).expect("Frobenius exponent overflow");
        let terms = self.terms.iter().map(|(m, c)| (m.scale(q), *c)).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Plain square-and-multiply.
    pub fn pow_binary(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f^n` using `f^{pq + r} = (f^q)^{[p]} * f^r`.
    pub fn power(&self, n: u64) -> Polynomial {
        let p = self.prime();
        if n < p {
            return self.pow_binary(n);
        }
        self.power(n / p).frobenius(1).mul(&self.pow_binary(n % p))
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.ring.dim() {
            return Err(Error::domain(format!(
                "variable index {i} out of range for {}",
                self.ring
            )));
        }
        let p = self.prime();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.0[i];
                let k = mul_mod(*c, e as u64 % p, p);
                (k != 0).then(|| {
                    let mut d = m.clone();
                    d.0[i] -= 1;
                    (d, k)
                })
            })
            .collect::<Vec<_>>();
        // differentiation can reorder terms under grevlex
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if *c != 1 => self.scale(inv_mod(*c, self.prime())),
            _ => self.clone(),
        }
    }

    /// Moves the polynomial into `ring`, which must have the same
    /// characteristic and at least as many variables (extra ones get 0).
    pub fn embed(&self, ring: &Ring) -> Polynomial {
        assert!(ring.dim() >= self.ring.dim() && ring.prime() == self.prime());
        let n = ring.dim();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: SmallVec<[u32; 4]> = m.0.clone();
            e.resize(n, 0);
            (Monomial(e), *c)
        });
        Polynomial::from_terms(ring, terms)
    }
}

fn reduce_signed(c: i64, p: u64) -> u64 {
    let r = (c as i128).rem_euclid(p as i128);
    r as u64
}

impl fmt::Display for Polynomial {
    /// `4x^3 + 2x*y^2`; the coefficient 1 is omitted on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Ring {
        Ring::new(p, ["x", "y"]).unwrap()
    }

    fn xy(r: &Ring) -> (Polynomial, Polynomial) {
        (Polynomial::var(r, 0), Polynomial::var(r, 1))
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751));
        assert!(Ring::new(4, ["x"]).is_err());
        assert!(Ring::new(5, ["x", "x"]).is_err());
        assert!(Ring::new(5, Vec::<String>::new()).is_err());
    }

    #[test]
    fn grevlex_order() {
        let m = |a, b, c| Monomial::from_exponents(&[a, b, c]);
        assert!(m(1, 0, 0) > m(0, 1, 0));
        assert!(m(0, 1, 0) > m(0, 0, 1));
        // x^2 > x*y > y^2 > x*z
        assert!(m(2, 0, 0) > m(1, 1, 0));
        assert!(m(1, 1, 0) > m(0, 2, 0));
        assert!(m(0, 2, 0) > m(1, 0, 1));
        assert!(m(0, 0, 3) > m(2, 0, 0));
    }

    #[test]
    fn product_examples() {
        let r = ring(3);
        let (x, y) = xy(&r);
        let s = x.add(&y);
        assert_eq!(s.mul(&s).to_string(), "x^2 + 2x*y + y^2");
        assert!(s.mul(&Polynomial::zero(&r)).is_zero());
        assert_eq!(s.mul(&Polynomial::one(&r)), s);
    }

    #[test]
    fn power_examples() {
        let r2 = ring(2);
        let (x, y) = xy(&r2);
        assert_eq!(x.add(&y).power(2).to_string(), "x^2 + y^2");
        assert!(x.add(&y).power(0).is_one());
        let r5 = ring(5);
        let (x, y) = xy(&r5);
        let f = x.power(2).add(&y.power(3));
        assert_eq!(f.power(5).to_string(), "y^15 + x^10");
        let g = f.add(&x.mul(&y)).add(&Polynomial::constant(&r5, 3));
        for n in 0..=12 {
            let mut naive = Polynomial::one(&r5);
            for _ in 0..n {
                naive = naive.mul(&g);
            }
            assert_eq!(g.power(n), naive, "n = {n}");
        }
    }

    #[test]
    fn derivative_examples() {
        let r = ring(5);
        let (x, y) = xy(&r);
        let f = x.power(4).add(&y.power(3)).add(&x.power(2).mul(&y.power(2)));
        assert_eq!(f.partial_derivative(0).unwrap().to_string(), "4x^3 + 2x*y^2");
        assert_eq!(f.partial_derivative(1).unwrap().to_string(), "2x^2*y + 3y^2");
        assert!(x.power(5).partial_derivative(0).unwrap().is_zero());
        assert!(f.partial_derivative(2).is_err());
    }

    #[test]
    fn constants_and_signs() {
        let r = ring(5);
        assert_eq!(Polynomial::constant(&r, -1).to_string(), "4");
        assert_eq!(Polynomial::constant(&r, 10).to_string(), "0");
        let (x, _) = xy(&r);
        assert_eq!(x.sub(&x), Polynomial::zero(&r));
        assert_eq!(x.neg().to_string(), "4x");
        assert_eq!(x.add(&Polynomial::constant(&r, 2)).constant_term(), 2);
    }
}

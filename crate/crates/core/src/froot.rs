//! Frobenius roots `I_e(-)`.
//!
//! Over `F_p` the monomials with all exponents below `q = p^e` form a free
//! basis of `R` over `R^q`, and coefficients are their own `q`-th roots, so
//! the coordinates of `f` are read off by splitting every exponent vector into
//! quotient and remainder modulo `q`.
//!
//! Huge powers are handled digit by digit:
//! `I_e(f^N J) = I_{e-1}(f^{N div p} · I_1(f^{N mod p} J))`,
//! which rests on `I_1(g^p h) = g I_1(h)`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Monomial, Polynomial, Ring};

/// Coordinates of `g` over the monomial basis of `R` over `R^{q}`.
fn frobenius_coordinates(g: &Polynomial, q: u64) -> Vec<Polynomial> {
    let ring = g.ring();
    let mut groups: HashMap<Vec<u32>, Vec<(Monomial, u64)>> = HashMap::new();
    for (m, c) in g.terms() {
        let (rem, quo): (Vec<u32>, Vec<u32>) = m
            .exponents()
            .iter()
            .map(|&e| {
                let e = e as u64;
                ((e % q) as u32, (e / q) as u32)
            })
            .unzip();
        groups
            .entry(rem)
            .or_default()
            .push((Monomial::from_exponents(&quo), *c));
    }
    groups
        .into_values()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

fn root_modulus(p: u64, e: u32) -> u64 {
    // exponents are u32, so any q above u32::MAX acts like infinity
    p.checked_pow(e).unwrap_or(u64::MAX)
}

/// `I_e(f)`: the smallest ideal `b` with `f ∈ b^{[p^e]}`.
pub fn froot_basis(f: &Polynomial, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::domain("Frobenius root requires e >= 1"));
    }
    let q = root_modulus(f.prime(), e);
    Ok(Ideal::new(f.ring(), frobenius_coordinates(f, q))?.reduced())
}

/// `I_e(J)`, the sum of the roots of the generators.
pub fn froot_ideal(j: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::domain("Frobenius root requires e >= 1"));
    }
    let q = root_modulus(j.ring().prime(), e);
    let gens = j
        .reduced_basis()
        .iter()
        .flat_map(|g| frobenius_coordinates(g, q))
        .collect();
    Ok(Ideal::new(j.ring(), gens)?.reduced())
}

/// `I_e(f^N · J)` without expanding `f^N`.
pub fn froot_power(f: &Polynomial, n: &BigUint, e: u64, j: &Ideal) -> Result<Ideal> {
    f.ring().ensure_same(j.ring())?;
    let mut roots = FrobeniusRoots::new(f);
    let start = roots.intern(j);
    let end = roots.power_root(n, e, start)?;
    Ok(roots.ideal(end).clone())
}

/// Handle to an ideal interned by a [`FrobeniusRoots`] table.
pub type StateId = usize;

/// Memoized Frobenius-root recursion for a fixed polynomial.
///
/// Ideals are interned by reduced basis; a transition `(J, d) -> I_1(f^d J)`
/// is computed once. Starting from the unit ideal every reachable state is a
/// test ideal `I_k(f^c)` of `f`, so the table stays small.
pub struct FrobeniusRoots {
    ring: Ring,
    f: Polynomial,
    small_powers: Vec<Polynomial>,
    states: Vec<Ideal>,
    index: HashMap<Vec<Polynomial>, StateId>,
    transitions: HashMap<(StateId, u64), StateId>,
}

impl FrobeniusRoots {
    pub fn new(f: &Polynomial) -> Self {
        let ring = f.ring().clone();
        let p = ring.prime();
        // f^0 .. f^{p-1}; only materialized on demand for large p
        let small_powers = if p <= 64 {
            let mut v = vec![Polynomial::one(&ring)];
            for d in 1..p as usize {
                let next = v[d - 1].mul(f);
                v.push(next);
            }
            v
        } else {
            Vec::new()
        };
        let mut roots = FrobeniusRoots {
            ring: ring.clone(),
            f: f.clone(),
            small_powers,
            states: Vec::new(),
            index: HashMap::new(),
            transitions: HashMap::new(),
        };
        roots.intern(&Ideal::unit(&ring));
        roots
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    /// State of the unit ideal.
    pub fn unit(&self) -> StateId {
        0
    }

    pub fn intern(&mut self, j: &Ideal) -> StateId {
        let key = j.reduced_basis().to_vec();
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.states.len();
        self.states.push(Ideal::from_reduced(&self.ring, key.clone()));
        self.index.insert(key, id);
        id
    }

    pub fn ideal(&self, id: StateId) -> &Ideal {
        &self.states[id]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn f_power(&self, d: u64) -> Polynomial {
        match self.small_powers.get(d as usize) {
            Some(g) => g.clone(),
            None => self.f.power(d),
        }
    }

    /// `I_1(f^d · J)` for the interned `J`.
    pub fn step(&mut self, id: StateId, digit: u64) -> StateId {
        if let Some(&next) = self.transitions.get(&(id, digit)) {
            return next;
        }
        let p = self.ring.prime();
        let fd = self.f_power(digit);
        let gens: Vec<Polynomial> = self.states[id]
            .reduced_basis()
            .iter()
            .flat_map(|g| frobenius_coordinates(&g.mul(&fd), p))
            .collect();
        let root = Ideal::from_generators(&self.ring, gens);
        let next = self.intern(&root);
        self.transitions.insert((id, digit), next);
        next
    }

    /// `I_e(f^n · J)`, consuming base-p digits of `n` least significant first.
    pub fn power_root(&mut self, n: &BigUint, e: u64, start: StateId) -> Result<StateId> {
        let p = BigUint::from(self.ring.prime());
        let mut rest = n.clone();
        let mut state = start;
        for _ in 0..e {
            let (q, r) = rest.div_rem(&p);
            state = self.step(state, r.to_u64().expect("digit below p"));
            rest = q;
        }
        if rest.is_zero() {
            return Ok(state);
        }
        let k = rest
            .to_u64()
            .filter(|&k| k <= 1 << 20)
            .ok_or_else(|| Error::Infeasible(format!("leftover power {rest} too large to expand")))?;
        let scaled = self.states[state].scale(&self.f.power(k))?;
        Ok(self.intern(&scaled))
    }
}

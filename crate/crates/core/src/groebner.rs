//! Gröbner bases over `F_p` in graded reverse lexicographic order.
//!
//! Buchberger's algorithm with normal pair selection and the Gebauer-Möller
//! installation of both Buchberger criteria. Ideals carry their reduced basis
//! lazily; two ideals are equal exactly when their reduced bases coincide.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polyring::{add_mod, inv_mod, mul_mod, Monomial, Polynomial, Ring, Term};

/// Why an ideal has no finite length supported at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotMPrimary {
    /// The ideal is the whole ring (length 0).
    UnitIdeal,
    /// Some variable has no pure power among the leading monomials.
    NotZeroDimensional,
    /// Finite length, but some of it lives away from the origin.
    NotSupportedAtOrigin,
}

impl fmt::Display for NotMPrimary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotMPrimary::UnitIdeal => "unit ideal (length 0)",
            NotMPrimary::NotZeroDimensional => "not zero-dimensional",
            NotMPrimary::NotSupportedAtOrigin => "zero-dimensional but not supported only at the origin",
        };
        f.write_str(s)
    }
}

impl From<NotMPrimary> for Error {
    fn from(e: NotMPrimary) -> Self {
        Error::Domain(format!("ideal is not primary to the maximal ideal: {e}"))
    }
}

/// An ideal of `F_p[x_1..x_n]` given by generators.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    basis: OnceLock<Arc<Vec<Polynomial>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            basis,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    /// Prints the reduced basis, `(x, y^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.reduced_basis().iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.reduced_basis() == other.reduced_basis()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            ring.ensure_same(g.ring())?;
        }
        Ok(Self::from_generators(ring, generators))
    }

    pub(crate) fn from_generators(ring: &Ring, generators: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
        }
    }

    /// Wraps a basis already known to be reduced and canonically sorted.
    pub(crate) fn from_reduced(ring: &Ring, basis: Vec<Polynomial>) -> Ideal {
        let cached = Arc::new(basis.clone());
        let lock = OnceLock::new();
        let _ = lock.set(cached);
        Ideal {
            ring: ring.clone(),
            generators: basis,
            basis: lock,
        }
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Self::from_generators(f.ring(), vec![f.clone()])
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Self::from_reduced(ring, vec![Polynomial::one(ring)])
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Self::from_reduced(ring, Vec::new())
    }

    /// The ideal generated by the variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        let mut vars: Vec<Polynomial> = (0..ring.dim()).map(|i| Polynomial::var(ring, i)).collect();
        vars.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
        Self::from_reduced(ring, vars)
    }

    /// `m^k`, generated by all monomials of degree `k`.
    pub fn maximal_power(ring: &Ring, k: u32) -> Ideal {
        let mut monos = Vec::new();
        monomials_of_degree(ring.dim(), k, &mut Vec::new(), &mut monos);
        let mut gens: Vec<Polynomial> = monos
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m, 1))
            .collect();
        gens.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
        Self::from_reduced(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis, computed at most once per value.
    pub fn reduced_basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| Arc::new(reduced_groebner_basis(&self.generators)))
            .as_slice()
    }

    /// A copy whose generators are the reduced basis.
    pub fn reduced(&self) -> Ideal {
        Self::from_reduced(&self.ring, self.reduced_basis().to_vec())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.reduced_basis(), [g] if g.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.reduced_basis().is_empty()
    }

    /// Remainder modulo the reduced basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let basis: Vec<&Polynomial> = self.reduced_basis().iter().collect();
        normal_form(f, &basis)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.reduced_basis().iter().all(|g| self.contains(g))
    }

    /// `self ⊆ m`, i.e. no generator has a constant term.
    pub fn in_maximal_ideal(&self) -> bool {
        !self.is_unit() && self.reduced_basis().iter().all(|g| g.in_maximal_ideal())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring)?;
        let gens = self.generators.iter().chain(other.generators.iter()).cloned().collect();
        Ok(Self::from_generators(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in self.reduced_basis() {
            for b in other.reduced_basis() {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::from_generators(&self.ring, gens))
    }

    /// `f · J`.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.ring.ensure_same(f.ring())?;
        let gens = self.reduced_basis().iter().map(|g| g.mul(f)).collect();
        Ok(Self::from_generators(&self.ring, gens))
    }

    /// The Frobenius power `J^{[p^e]}`.
    ///
    /// The `p^e`-th powers of a reduced basis are again a reduced basis, since
    /// raising exponent vectors to a common multiple preserves both the term
    /// order and monomial divisibility.
    pub fn bracket_power(&self, e: u32) -> Ideal {
        if e == 0 {
            return self.clone();
        }
        let gens = self.reduced_basis().iter().map(|g| g.frobenius(e)).collect();
        Self::from_reduced(&self.ring, gens)
    }

    /// `dim_{F_p} R/J` for an ideal primary to the maximal ideal.
    pub fn artinian_length(&self) -> std::result::Result<u64, NotMPrimary> {
        if self.is_unit() {
            return Err(NotMPrimary::UnitIdeal);
        }
        let count = self.standard_monomial_count().ok_or(NotMPrimary::NotZeroDimensional)?;
        // in a local Artinian algebra of dimension D every nilpotent has x^D = 0
        for i in 0..self.ring.dim() {
            let xi = Polynomial::var(&self.ring, i);
            if !self.power_mod(&xi, count).is_zero() {
                return Err(NotMPrimary::NotSupportedAtOrigin);
            }
        }
        Ok(count)
    }

    /// Whether some pure power of every variable is a leading monomial.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let n = self.ring.dim();
        let mut bounds: Vec<Option<u32>> = vec![None; n];
        for g in self.reduced_basis() {
            let lm = g.leading_monomial()?;
            if lm.is_one() {
                return Some(vec![0; n]);
            }
            if let Some(i) = lm.pure_power_var() {
                let e = lm.exponents()[i];
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Number of monomials outside the leading ideal, if finite.
    pub fn standard_monomial_count(&self) -> Option<u64> {
        Some(self.standard_monomials()?.len() as u64)
    }

    /// Monomials outside the leading ideal, if there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let bounds = self.pure_power_bounds()?;
        let leading: Vec<Monomial> = self
            .reduced_basis()
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; bounds.len()];
        collect_standard(&bounds, &leading, 0, &mut exps, &mut out);
        Some(out)
    }

    /// `f^n mod J` by square-and-multiply on normal forms.
    pub fn power_mod(&self, f: &Polynomial, mut n: u64) -> Polynomial {
        let mut acc = self.normal_form(&Polynomial::one(&self.ring));
        let mut base = self.normal_form(f);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.normal_form(&acc.mul(&base));
            }
            n >>= 1;
            if n > 0 {
                base = self.normal_form(&base.mul(&base));
            }
        }
        acc
    }

    /// `f ∈ √J`, via `1 ∈ J + (1 - t f)` in one extra variable.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.ring.ensure_same(f.ring())?;
        if self.contains(f) {
            return Ok(true);
        }
        let big = self.ring.with_extra_var("__rabinowitsch_t")?;
        let t = Polynomial::var(&big, big.dim() - 1);
        let mut gens: Vec<Polynomial> = self.reduced_basis().iter().map(|g| g.embed(&big)).collect();
        gens.push(Polynomial::one(&big).sub(&t.mul(&f.embed(&big))));
        Ok(Ideal::from_generators(&big, gens).is_unit())
    }

    /// `(J : g)` for zero-dimensional `J`, by linear algebra on `R/J`:
    /// the kernel of multiplication by `g` lifted back to `R`.
    pub fn colon_zero_dimensional(&self, g: &Polynomial) -> Result<Ideal> {
        self.ring.ensure_same(g.ring())?;
        let std = self
            .standard_monomials()
            .ok_or_else(|| Error::domain("colon helper requires a zero-dimensional ideal"))?;
        let p = self.ring.prime();
        let index: BTreeMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows = std.len();
        // column j = coordinates of NF(g * std[j])
        let mut matrix = vec![vec![0u64; std.len()]; rows];
        for (j, m) in std.iter().enumerate() {
            let prod = self.normal_form(&g.mul_term(m, 1));
            for (t, c) in prod.terms() {
                matrix[index[t]][j] = *c;
            }
        }
        let kernel = kernel_mod_p(matrix, std.len(), p);
        let mut gens = self.reduced_basis().to_vec();
        for v in kernel {
            let terms: Vec<Term> = v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(j, c)| (std[j].clone(), c))
                .collect();
            gens.push(Polynomial::from_terms(&self.ring, terms));
        }
        Ok(Self::from_generators(&self.ring, gens))
    }

    /// JSON array of the reduced basis, as polynomial strings.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.reduced_basis()
                .iter()
                .map(|g| serde_json::Value::String(g.to_string()))
                .collect(),
        )
    }
}

/// Equality of the generated ideals.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.ring.ensure_same(&b.ring)?;
    Ok(a.reduced_basis() == b.reduced_basis())
}

fn monomials_of_degree(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == n {
        prefix.push(k);
        out.push(Monomial::from_exponents(prefix));
        prefix.pop();
        return;
    }
    for e in 0..=k {
        prefix.push(e);
        monomials_of_degree(n, k - e, prefix, out);
        prefix.pop();
    }
}

fn collect_standard(
    bounds: &[u32],
    leading: &[Monomial],
    var: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if var == bounds.len() {
        let m = Monomial::from_exponents(exps);
        if !leading.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        // prune: a divisible prefix stays divisible as later exponents grow
        let partial = Monomial::from_exponents(exps);
        if leading.iter().any(|l| {
            l.exponents()[var + 1..].iter().all(|&x| x == 0) && l.divides(&partial)
        }) {
            break;
        }
        collect_standard(bounds, leading, var + 1, exps, out);
    }
    exps[var] = 0;
}

/// Basis of the right kernel of `matrix` (rows x cols) over `F_p`.
fn kernel_mod_p(mut matrix: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = matrix.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| matrix[i][c] != 0) else {
            continue;
        };
        matrix.swap(r, pr);
        let inv = inv_mod(matrix[r][c], p);
        for x in matrix[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && matrix[i][c] != 0 {
                let k = p - matrix[i][c];
                let pivot_row = matrix[r].clone();
                for (x, y) in matrix[i].iter_mut().zip(pivot_row.iter()) {
                    *x = add_mod(*x, mul_mod(k, *y, p), p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - matrix[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Full reduction of `f` by `basis` (monic, arbitrary order).
pub(crate) fn normal_form(f: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    if f.is_zero() || basis.is_empty() {
        return f.clone();
    }
    let p = f.prime();
    let mut work: BTreeMap<Monomial, u64> = f.terms().iter().cloned().collect();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (*g, q))
        });
        match divisor {
            Some((g, q)) => {
                let (_, lc) = g.leading_term().expect("nonzero divisor");
                let k = mul_mod(c, inv_mod(*lc, p), p);
                for (gm, gc) in &g.terms()[1..] {
                    let neg = p - mul_mod(k, *gc, p);
                    match work.entry(gm.mul(&q)) {
                        Entry::Occupied(mut o) => {
                            let v = add_mod(*o.get(), neg, p);
                            if v == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = v;
                            }
                        }
                        Entry::Vacant(v) => {
                            v.insert(neg);
                        }
                    }
                }
            }
            None => rem.push((m, c)),
        }
    }
    Polynomial::from_sorted(f.ring(), rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let p = f.prime();
    let a = fm.quotient_of(lcm).expect("lcm divisible");
    let b = gm.quotient_of(lcm).expect("lcm divisible");
    f.mul_term(&a, inv_mod(*fc, p)).sub(&g.mul_term(&b, inv_mod(*gc, p)))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `generators`, sorted by
/// leading monomial, descending. The unit ideal yields `[1]`.
pub fn reduced_groebner_basis(generators: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = generators.iter().find(|g| !g.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let one = || vec![Polynomial::one(&ring)];

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    inputs.dedup();

    for g in inputs {
        let h = {
            let basis: Vec<&Polynomial> = active_refs(&polys, &active);
            normal_form(&g, &basis)
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return one();
        }
        install(&mut polys, &mut active, &mut pairs, h.monic());
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.lcm.cmp(&b.1.lcm))
            .map(|(k, _)| k)
            .expect("non-empty");
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let h = {
            let basis: Vec<&Polynomial> = active_refs(&polys, &active);
            normal_form(&s, &basis)
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return one();
        }
        install(&mut polys, &mut active, &mut pairs, h.monic());
    }

    let minimal: Vec<Polynomial> = polys
        .iter()
        .zip(active.iter())
        .filter(|(_, a)| **a)
        .map(|(g, _)| g.clone())
        .collect();
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g)
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    reduced
}

fn active_refs<'a>(polys: &'a [Polynomial], active: &[bool]) -> Vec<&'a Polynomial> {
    polys
        .iter()
        .zip(active.iter())
        .filter(|(_, a)| **a)
        .map(|(g, _)| g)
        .collect()
}

/// Gebauer-Möller update: adds `h` and prunes pairs by the product and
/// chain criteria.
fn install(polys: &mut Vec<Polynomial>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Polynomial) {
    let hk = polys.len();
    let hm = h.leading_monomial().expect("nonzero").clone();

    let candidates: Vec<(usize, Monomial, bool)> = (0..polys.len())
        .filter(|&g| active[g])
        .map(|g| {
            let gm = polys[g].leading_monomial().expect("nonzero");
            (g, hm.lcm(gm), hm.coprime(gm))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, (g, lcm, coprime)) in candidates.iter().enumerate() {
        let dominated = |other: &(usize, Monomial, bool)| other.1.divides(lcm);
        let redundant = candidates[idx + 1..].iter().any(dominated) || kept.iter().any(dominated);
        if *coprime || !redundant {
            kept.push((*g, lcm.clone(), *coprime));
        }
    }

    pairs.retain(|pr| {
        let li = polys[pr.i].leading_monomial().expect("nonzero").lcm(&hm);
        let lj = polys[pr.j].leading_monomial().expect("nonzero").lcm(&hm);
        !hm.divides(&pr.lcm) || li == pr.lcm || lj == pr.lcm
    });

    for (g, lcm, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i: g, j: hk, lcm });
        }
    }

    for g in 0..polys.len() {
        if active[g] && hm.divides(polys[g].leading_monomial().expect("nonzero")) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

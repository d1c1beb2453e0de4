#![allow(dead_code)]

use fjump::cli::parse_polynomial;
use fjump::{Ideal, Monomial, Polynomial, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WORKED_POLY: &str = "x^4 + y^3 + x^2*y^2";

pub fn ring(p: u64) -> Ring {
    Ring::new(p, ["x", "y"]).unwrap()
}

pub fn poly(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

/// Random polynomial in x, y of total degree at most `max_deg`.
pub fn seeded_poly(r: &Ring, max_deg: u32, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly(r, max_deg, 0, &mut rng)
}

pub fn random_poly(r: &Ring, max_deg: u32, min_deg: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let count = rng.random_range(1..=5);
    let terms = (0..count).map(|_| {
        let d = rng.random_range(min_deg..=max_deg);
        let a = rng.random_range(0..=d);
        let c = rng.random_range(1..r.prime());
        (Monomial::from_exponents(&[a, d - a]), c)
    });
    Polynomial::from_terms(r, terms.collect::<Vec<_>>())
}

/// `(p, f)` with `p ∈ {2, 3, 5}` and `deg f <= max_deg`.
pub fn arb_poly(max_deg: u32) -> impl Strategy<Value = (u64, Polynomial)> {
    (prop::sample::select(vec![2u64, 3, 5]), any::<u64>()).prop_map(move |(p, seed)| {
        let r = ring(p);
        (p, seeded_poly(&r, max_deg, seed))
    })
}

/// `dim R/J` by Gaussian elimination on `J` modulo `m^d`; valid when
/// `m^d ⊆ J` near the only point of `V(J)`, the origin.
pub fn brute_force_length(j: &Ideal, d: u32) -> u64 {
    let p = j.ring().prime();
    let monos: Vec<(u32, u32)> = (0..d).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect();
    let index = |a: u32, b: u32| monos.iter().position(|&m| m == (a, b));
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in j.reduced_basis() {
        for &(a, b) in &monos {
            let mut row = vec![0u64; monos.len()];
            for (m, c) in g.terms() {
                let e = m.exponents();
                if let Some(i) = index(e[0] + a, e[1] + b) {
                    row[i] = (row[i] + c) % p;
                }
            }
            rows.push(row);
        }
    }
    monos.len() as u64 - rank_mod_p(rows, p)
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> u64 {
    let inv = |a: u64| {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let k = inv(rows[rank][c]);
        let pivot: Vec<u64> = rows[rank].iter().map(|x| x * k % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank as u64
}

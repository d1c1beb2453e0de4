//! Polynomial expression grammar.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := integer | var ('^' natural)?
//! sign   := '+' | '-' | '−'
//! ```
//!
//! Whitespace is ignored; offsets in errors count characters.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Monomial, Polynomial, Ring};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    names: Vec<(Vec<char>, usize)>,
    base: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: &'a Ring, base: usize) -> Self {
        let mut names: Vec<(Vec<char>, usize)> = ring
            .var_names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.chars().collect(), i))
            .collect();
        // longest match first
        names.sort_by_key(|(name, _)| std::cmp::Reverse(name.len()));
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ring,
            names,
            base,
        }
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.base + at, msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek()? {
            '+' => {
                self.pos += 1;
                Some(false)
            }
            '-' | '−' => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    /// Digits reduced modulo `p` on the fly.
    fn integer_mod(&mut self) -> u64 {
        let p = self.ring.prime() as u128;
        let mut acc: u128 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            acc = (acc * 10 + d as u128) % p;
            self.pos += 1;
        }
        acc as u64
    }

    fn natural(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut acc: u64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            acc = acc * 10 + d as u64;
            if acc > u32::MAX as u64 {
                return Err(self.err(start, "exponent too large"));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(start, "malformed exponent: expected a natural number"));
        }
        Ok(acc as u32)
    }

    fn variable(&mut self) -> Option<usize> {
        let rest = &self.chars[self.pos..];
        let (len, idx) = self
            .names
            .iter()
            .find(|(name, _)| rest.starts_with(name))
            .map(|(name, i)| (name.len(), *i))?;
        self.pos += len;
        Some(idx)
    }

    fn term(&mut self) -> Result<(Monomial, u64)> {
        let p = self.ring.prime();
        let n = self.ring.dim();
        let mut coeff = 1u64;
        let mut exps = vec![0u32; n];
        let mut factors = 0;
        let mut after_star = false;
        while let Some(c) = self.peek() {
            if factors > 0 && c == '*' && !after_star {
                self.pos += 1;
                after_star = true;
                continue;
            }
            if c.is_ascii_digit() {
                coeff = ((coeff as u128 * self.integer_mod() as u128) % p as u128) as u64;
            } else if let Some(i) = self.variable() {
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.natural()?;
                }
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or_else(|| self.err(self.pos, "exponent too large"))?;
            } else if matches!(c, '+' | '-' | '−') && !after_star {
                break;
            } else if c.is_alphabetic() || c == '_' {
                let start = self.pos;
                let name: String = self.chars[start..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_')
                    .collect();
                return Err(self.err(start, format!("unknown variable {name:?}")));
            } else {
                return Err(self.err(self.pos, format!("unexpected character {c:?}")));
            }
            factors += 1;
            after_star = false;
        }
        if factors == 0 || after_star {
            return Err(self.err(self.pos, "expected a term"));
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        if self.peek().is_none() {
            return Err(self.err(self.pos, "empty polynomial"));
        }
        let p = self.ring.prime();
        let mut terms = Vec::new();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (m, c) = self.term()?;
            let c = if negative { (p - c) % p } else { c };
            terms.push((m, c));
            match self.sign() {
                Some(neg) => negative = neg,
                None => break,
            }
        }
        if let Some(c) = self.peek() {
            return Err(self.err(self.pos, format!("unexpected character {c:?}")));
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    Parser::new(text, ring, 0).expr()
}

/// Parses `"g1; g2; …"` as an ideal.
pub fn parse_ideal(text: &str, ring: &Ring) -> Result<Ideal> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        gens.push(Parser::new(part, ring, offset).expr()?);
        offset += part.chars().count() + 1;
    }
    Ideal::new(ring, gens)
}

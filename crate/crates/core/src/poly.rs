//! Sparse counting polynomials in up to three dummy variables `X`, `Y`, `Z`.
//!
//! Coefficients are exact non-negative integers held in `u128`; every
//! addition and multiplication is checked and overflow is reported as
//! [`Error::CoefficientOverflow`].

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of `(X, Y, Z)`. Slots at or beyond the polynomial's arity are 0.
pub type Exponent = [u16; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn symbol(self) -> char {
        ['X', 'Y', 'Z'][self.slot()]
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CountingPolynomial {
    arity: usize,
    terms: BTreeMap<Exponent, u128>,
}

impl CountingPolynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity <= 3, "at most three variables");
        CountingPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        let mut p = Self::zero(arity);
        p.terms.insert([0; 3], 1);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &u128)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> u128 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, coeff: u128) -> Result<()> {
        debug_assert!(e[self.arity..].iter().all(|&x| x == 0));
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::CoefficientOverflow)?;
        Ok(())
    }

    /// `self += other · X^s0 Y^s1 Z^s2`.
    pub fn add_shifted(&mut self, other: &CountingPolynomial, shift: Exponent) -> Result<()> {
        for (e, &c) in &other.terms {
            let shifted = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
            self.add_term(shifted, c)?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CountingPolynomial) -> Result<CountingPolynomial> {
        let mut out = self.clone();
        out.add_shifted(other, [0; 3])?;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &CountingPolynomial) -> Result<CountingPolynomial> {
        let mut out = Self::zero(self.arity.max(other.arity));
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let c = ca.checked_mul(cb).ok_or(Error::CoefficientOverflow)?;
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], c)?;
            }
        }
        Ok(out)
    }

    /// Sum of all coefficients (the polynomial evaluated at 1).
    pub fn mass(&self) -> Result<u128> {
        self.terms
            .values()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::CoefficientOverflow)
    }

    /// Sum of coefficients over terms whose active exponents are all ≥ 1.
    pub fn interior_mass(&self) -> Result<u128> {
        self.terms
            .iter()
            .filter(|(e, _)| e[..self.arity].iter().all(|&x| x >= 1))
            .try_fold(0u128, |acc, (_, &c)| acc.checked_add(c))
            .ok_or(Error::CoefficientOverflow)
    }

    /// Evaluates `var` at 1: its slot is removed and later variables shift
    /// down, so `Z := 1` on a trivariate gives a bivariate in `(X, Y)`.
    pub fn marginalize(&self, var: Var) -> Result<CountingPolynomial> {
        let slot = var.slot();
        if slot >= self.arity {
            return Err(Error::InactiveVariable(var.symbol()));
        }
        let mut out = Self::zero(self.arity - 1);
        for (e, &c) in &self.terms {
            let mut reduced = [0u16; 3];
            let mut w = 0;
            for (s, &x) in e.iter().enumerate().take(self.arity) {
                if s != slot {
                    reduced[w] = x;
                    w += 1;
                }
            }
            out.add_term(reduced, c)?;
        }
        Ok(out)
    }

    /// Evaluates the polynomial at real arguments (unused slots ignored).
    pub fn evaluate(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, &c)| (0..self.arity).fold(c as f64, |acc, s| acc * x[s].powi(e[s] as i32)))
            .sum()
    }

    /// Parses sums of monomials such as `Y^3 + X^3 + 6X^3Y^4`.
    pub fn parse(s: &str, arity: usize) -> Result<CountingPolynomial> {
        let mut p = Self::zero(arity);
        for raw in s.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let digits: String = term.chars().take_while(char::is_ascii_digit).collect();
            let coeff: u128 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?
            };
            let mut e = [0u16; 3];
            let mut rest = &term[digits.len()..];
            while let Some(v) = rest.chars().next() {
                let slot = match v {
                    'X' => 0,
                    'Y' => 1,
                    'Z' => 2,
                    _ => return Err(Error::Parse(format!("unexpected `{v}` in `{term}`"))),
                };
                if slot >= arity {
                    return Err(Error::Parse(format!("variable {v} beyond arity {arity}")));
                }
                rest = &rest[1..];
                let mut power = 1u16;
                if let Some(r) = rest.strip_prefix('^') {
                    let d: String = r.chars().take_while(char::is_ascii_digit).collect();
                    power = d
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    rest = &r[d.len()..];
                }
                e[slot] += power;
            }
            p.add_term(e, coeff)?;
        }
        Ok(p)
    }
}

impl fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let constant = e.iter().all(|&x| x == 0);
            if c != 1 || constant {
                write!(f, "{c}")?;
            }
            for (s, name) in ['X', 'Y', 'Z'].iter().enumerate().take(self.arity) {
                match e[s] {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    k => write!(f, "{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountingPolynomial[{}]({self})", self.arity)
    }
}

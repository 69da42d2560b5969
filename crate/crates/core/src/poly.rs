use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{degree_lex_desc, Monomial};

/// Exact rational coefficients; no floating point anywhere in the crate.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. Terms are keyed by the pure lex order
/// on monomials; display uses ascending degree, descending lex within a
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::term(Monomial::one(num_vars), Rational::one())
    }

    pub fn variable(index: usize, num_vars: usize) -> Self {
        Self::term(Monomial::variable(index, num_vars), Rational::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, coeff: Rational) -> Self {
        let num_vars = m.num_vars();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Self { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximum term degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimum term degree, i.e. the adic valuation in the power-series
    /// ring; `None` (the +infinity sentinel) for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Lowest-degree, lex-greatest term; the pivot for echelon reductions.
    pub fn pivot_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| degree_lex_desc(a, b))
    }

    fn add_assigned(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assigned(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assigned(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_assigned(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Drop every term of degree >= `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parse a signed sum of `coeff*monomial` terms with rational
    /// coefficients `p/q`, e.g. `x^4 - x^2*y^2 + 1/2*y^6`.
    pub fn parse(input: &str, num_vars: usize) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            kind: "polynomial",
            input: input.to_string(),
            reason,
        };
        let text = input.trim();
        if text.is_empty() {
            return Err(err("empty input".to_string()));
        }
        if text == "0" {
            return Ok(Self::zero(num_vars));
        }
        let mut out = Self::zero(num_vars);
        for piece in split_signed_terms(text) {
            let (sign, body) = piece;
            let body = body.trim();
            if body.is_empty() {
                return Err(err("dangling sign".to_string()));
            }
            let mut coeff = integer(sign);
            let mut exponents = vec![0usize; num_vars];
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err("empty factor".to_string()));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coeff *= parse_rational(factor).map_err(&err)?;
                } else {
                    let (index, power) =
                        crate::monomial::parse_factor(factor, num_vars).map_err(&err)?;
                    exponents[index - 1] += power;
                }
            }
            out.add_assigned(Monomial::new(exponents), coeff);
        }
        Ok(out)
    }
}

fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("bad number `{s}`"))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err("zero denominator".to_string());
            }
            Ok(Rational::new(parse_int(p)?, denom))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Split at top-level `+`/`-`; exponents are unsigned so every sign is a
/// term separator.
fn split_signed_terms(text: &str) -> Vec<(i64, String)> {
    let mut pieces = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !current.trim().is_empty() {
                    pieces.push((sign, std::mem::take(&mut current)));
                    sign = 1;
                } else {
                    current.clear();
                }
                if ch == '-' {
                    sign = -sign;
                }
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        pieces.push((sign, current));
    }
    pieces
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| degree_lex_desc(a, b));
        for (idx, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Polynomial {
        Polynomial::parse(text, n).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for text in [
            "x^4 - x^2*y^2 - x^2*y^3 - x^2*y^4 + y^6",
            "x^3*y - x*y^3 - x*y^4",
            "1/2*x + 3",
            "-x^2 + 2*y",
            "0",
        ] {
            let poly = p(text, 2);
            assert_eq!(p(&poly.to_string(), 2), poly);
        }
        assert_eq!(p("x - x", 2), Polynomial::zero(2));
        assert_eq!(p("2*x + 3*x", 1).to_string(), "5*x");
        assert_eq!(p("x*x", 1), p("x^2", 1));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(p("x^4 + y^6", 2).truncate(5), p("x^4", 2));
        assert_eq!(p("x^4 + y^6", 2).truncate(0), Polynomial::zero(2));
        assert_eq!(
            p("x^3*y - x*y^3 - x*y^4", 2).truncate(5),
            p("x^3*y - x*y^3", 2)
        );
    }

    #[test]
    fn order_and_degree() {
        let q = p("x^2 - y^3", 2);
        assert_eq!(q.order(), Some(2));
        assert_eq!(q.degree(), Some(3));
        assert_eq!(Polynomial::zero(2).order(), None);
        let (pivot, _) = q.pivot_term().unwrap();
        assert_eq!(pivot.to_string(), "x^2");
    }

    #[test]
    fn arithmetic() {
        let a = p("x^2 + y", 2);
        let b = p("x - y", 2);
        assert_eq!(a.mul(&b), p("x^3 - x^2*y + x*y - y^2", 2));
        assert_eq!(a.sub(&a), Polynomial::zero(2));
        assert_eq!(a.scale(&rational(1, 2)), p("1/2*x^2 + 1/2*y", 2));
    }
}

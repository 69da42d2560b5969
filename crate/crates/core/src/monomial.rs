use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial in `n` variables, stored as its exponent vector.
///
/// The global variable convention is `x_1 > x_2 > ... > x_n`; the derived
/// `Ord` is the induced pure lexicographic order (exponent tuples compared
/// left to right, larger first difference wins). Degree is *not* compared
/// first; callers needing degree-lex compose explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<usize>,
}

impl Monomial {
    pub fn new(exponents: Vec<usize>) -> Self {
        Self { exponents }
    }

    /// The unit monomial (all exponents zero).
    pub fn one(num_vars: usize) -> Self {
        Self {
            exponents: vec![0; num_vars],
        }
    }

    /// The variable `x_index` (1-based).
    pub fn variable(index: usize, num_vars: usize) -> Self {
        assert!(index >= 1 && index <= num_vars, "variable index out of range");
        let mut exponents = vec![0; num_vars];
        exponents[index - 1] = 1;
        Self { exponents }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// Exponent of `x_index` (1-based).
    pub fn exponent(&self, index: usize) -> usize {
        self.exponents[index - 1]
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Largest `p` (1-based) with a positive exponent; errors on the unit
    /// monomial, for which no such index exists.
    pub fn max_index(&self) -> Result<usize> {
        self.exponents
            .iter()
            .rposition(|&e| e > 0)
            .map(|p| p + 1)
            .ok_or(Error::UnitMonomial)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars(), other.num_vars());
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Multiply by the variable `x_index` (1-based).
    pub fn mul_var(&self, index: usize) -> Self {
        let mut exponents = self.exponents.clone();
        exponents[index - 1] += 1;
        Self { exponents }
    }

    /// Exact division, `None` when `divisor` does not divide `self`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.num_vars(), divisor.num_vars());
        if !divisor.divides(self) {
            return None;
        }
        Some(Self {
            exponents: self
                .exponents
                .iter()
                .zip(&divisor.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// True iff `self` divides `other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        assert_eq!(self.num_vars(), other.num_vars());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// The stability exchange `x_j * m / x_{max(m)}` for `j < max(m)`.
    pub fn exchange(&self, j: usize) -> Result<Self> {
        let max = self.max_index()?;
        assert!(j >= 1 && j < max, "exchange index must satisfy 1 <= j < max(m)");
        let mut exponents = self.exponents.clone();
        exponents[max - 1] -= 1;
        exponents[j - 1] += 1;
        Ok(Self { exponents })
    }

    /// Parse from the text format, e.g. `x1^2*x3`; for `n <= 3` the aliases
    /// `x, y, z` are accepted.
    pub fn parse(input: &str, num_vars: usize) -> Result<Self> {
        let text = input.trim();
        let err = |reason: &str| Error::Parse {
            kind: "monomial",
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let mut exponents = vec![0usize; num_vars];
        for factor in text.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (index, power) = parse_factor(factor, num_vars).map_err(|reason| err(&reason))?;
            exponents[index - 1] += power;
        }
        Ok(Self { exponents })
    }
}

/// Parse a single `var(^exp)?` factor; returns (1-based index, exponent).
pub(crate) fn parse_factor(factor: &str, num_vars: usize) -> std::result::Result<(usize, usize), String> {
    let (var, power) = match factor.split_once('^') {
        Some((v, p)) => {
            let power: usize = p
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent `{p}`"))?;
            (v.trim(), power)
        }
        None => (factor, 1),
    };
    if var.is_empty() {
        return Err("empty variable".to_string());
    }
    let index = if let Some(digits) = var.strip_prefix('x').filter(|d| !d.is_empty()) {
        digits
            .parse::<usize>()
            .map_err(|_| format!("bad variable `{var}`"))?
    } else if num_vars <= 3 {
        match var {
            "x" => 1,
            "y" => 2,
            "z" => 3,
            _ => return Err(format!("unknown variable `{var}`")),
        }
    } else if var == "x" {
        return Err("bare `x` is ambiguous; use x1..xn".to_string());
    } else {
        return Err(format!("unknown variable `{var}`"));
    };
    if index == 0 || index > num_vars {
        return Err(format!("variable index {index} out of range 1..={num_vars}"));
    }
    Ok((index, power))
}

pub(crate) fn var_name(index: usize, num_vars: usize) -> String {
    if num_vars <= 3 {
        ["x", "y", "z"][index - 1].to_string()
    } else {
        format!("x{index}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let n = self.num_vars();
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = var_name(i + 1, n);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Total order by the convention `x_1 > x_2 > ... > x_n`; errors on
/// mismatched variable counts.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::VariableMismatch(a.num_vars(), b.num_vars()));
    }
    Ok(a.cmp(b))
}

/// Canonical ordering for generator lists: ascending degree, then
/// descending lex within a degree.
pub fn degree_lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

/// Number of degree-`t` monomials in `n` variables.
pub fn monomial_count(n: usize, t: usize) -> usize {
    binomial(n - 1 + t, t)
}

/// All degree-`t` monomials in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, t: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(n, t));
    let mut current = vec![0usize; n];
    fill(&mut out, &mut current, 0, t, n);
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<usize>, pos: usize, remaining: usize, n: usize) {
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e, n);
    }
    current[pos] = 0;
}

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{degree_lex_desc, monomial_count, monomials_of_degree, Monomial};

/// Tail behavior of a finitely presented Hilbert function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// Artinian: h(t) = 0 for every t beyond the stored range.
    Zero,
    /// Defined only up to the last stored index.
    Unspecified,
}

/// The Hilbert function of a cyclic quotient, h(0) = 1.
///
/// With tail [`Tail::Zero`] trailing zeros are stripped on construction, so
/// equality is equality of functions, not of presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HfRepr", into = "HfRepr")]
pub struct HilbertFunction {
    values: Vec<usize>,
    tail: Tail,
}

#[derive(Serialize, Deserialize)]
struct HfRepr {
    values: Vec<usize>,
    tail: Tail,
}

impl TryFrom<HfRepr> for HilbertFunction {
    type Error = Error;
    fn try_from(repr: HfRepr) -> Result<Self> {
        HilbertFunction::new(repr.values, repr.tail)
    }
}

impl From<HilbertFunction> for HfRepr {
    fn from(h: HilbertFunction) -> Self {
        HfRepr {
            values: h.values,
            tail: h.tail,
        }
    }
}

impl HilbertFunction {
    pub fn new(mut values: Vec<usize>, tail: Tail) -> Result<Self> {
        if values.first() != Some(&1) {
            return Err(Error::HilbertStart);
        }
        if let Some(first_zero) = values.iter().position(|&v| v == 0) {
            if let Some(offset) = values[first_zero..].iter().position(|&v| v > 0) {
                return Err(Error::HilbertResurrection(first_zero + offset));
            }
        }
        if tail == Tail::Zero {
            while values.last() == Some(&0) {
                values.pop();
            }
        }
        Ok(Self { values, tail })
    }

    pub fn artinian(values: Vec<usize>) -> Result<Self> {
        Self::new(values, Tail::Zero)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Last stored index.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    /// h(t); `None` when t lies beyond an unspecified tail.
    pub fn value_at(&self, t: usize) -> Option<usize> {
        match self.values.get(t) {
            Some(&v) => Some(v),
            None => match self.tail {
                Tail::Zero => Some(0),
                Tail::Unspecified => None,
            },
        }
    }

    /// Largest t with h(t) > 0; meaningful for artinian functions.
    pub fn socle_degree(&self) -> usize {
        self.values
            .iter()
            .rposition(|&v| v > 0)
            .expect("h(0) = 1 guarantees a positive value")
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        match self.tail {
            Tail::Zero => write!(f, "({},0,...)", vals.join(",")),
            Tail::Unspecified => write!(f, "({},?)", vals.join(",")),
        }
    }
}

/// A monomial ideal given by its unique minimal generating set.
///
/// Construction minimalizes: generators divisible by another generator are
/// dropped, duplicates removed, and the result sorted by ascending degree
/// then descending lex, the convention used for indexing everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    n: usize,
    generators: Vec<String>,
}

impl TryFrom<IdealRepr> for MonomialIdeal {
    type Error = Error;
    fn try_from(repr: IdealRepr) -> Result<Self> {
        let gens = repr
            .generators
            .iter()
            .map(|s| Monomial::parse(s, repr.n))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(repr.n, gens)
    }
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(ideal: MonomialIdeal) -> Self {
        IdealRepr {
            n: ideal.num_vars,
            generators: ideal.generators.iter().map(|m| m.to_string()).collect(),
        }
    }
}

impl MonomialIdeal {
    pub fn new(num_vars: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(Error::VariableMismatch(num_vars, g.num_vars()));
            }
            if g.is_unit() {
                return Err(Error::UnitGenerator);
            }
        }
        let mut minimal: Vec<Monomial> = Vec::new();
        let mut sorted = generators;
        sorted.sort_by(degree_lex_desc);
        sorted.dedup();
        for g in sorted {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(Self {
            num_vars,
            generators: minimal,
        })
    }

    pub fn parse(num_vars: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Monomial::parse(s, num_vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_vars, gens)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Minimal generators, ascending degree then descending lex.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn max_generator_degree(&self) -> Option<usize> {
        self.generators.iter().map(Monomial::degree).max()
    }
}

/// The `count` lex-greatest monomials of degree `t` in `n` variables.
pub fn lex_segment(n: usize, t: usize, count: usize) -> Result<Vec<Monomial>> {
    let max = monomial_count(n, t);
    if count > max {
        return Err(Error::SegmentCount {
            n,
            degree: t,
            count,
            max,
        });
    }
    let mut all = monomials_of_degree(n, t);
    all.truncate(count);
    Ok(all)
}

/// All products `x_i * m` for `m` in an equal-degree set, sorted descending
/// lex and deduplicated.
pub fn shadow(set: &[Monomial]) -> Result<Vec<Monomial>> {
    if let Some(first) = set.first() {
        let degree = first.degree();
        if let Some(other) = set.iter().find(|m| m.degree() != degree) {
            return Err(Error::MixedDegrees(degree, other.degree()));
        }
    }
    let mut out = BTreeSet::new();
    for m in set {
        for i in 1..=m.num_vars() {
            out.insert(m.mul_var(i));
        }
    }
    Ok(out.into_iter().rev().collect())
}

/// Outcome of the constructive Macaulay admissibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Inadmissible {
        degree: usize,
        required: usize,
        capacity: usize,
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Ideal sizes q(t) = (monomials of degree t) - h(t) demanded in each degree,
/// through `through` inclusive. Fails where h exceeds the whole space.
fn segment_sizes(h: &HilbertFunction, n: usize, through: usize) -> Result<Vec<usize>> {
    (0..=through)
        .map(|t| {
            let capacity = monomial_count(n, t);
            let value = h.value_at(t).expect("within checked range");
            if value > capacity {
                Err(Error::Inadmissible {
                    degree: t,
                    required: value,
                    capacity,
                })
            } else {
                Ok(capacity - value)
            }
        })
        .collect()
}

/// Constructive Macaulay admissibility: in each degree the shadow of the lex
/// segment complementing h(t) must be contained in the next segment. The
/// shadow of a lex segment is again a lex segment, so this is a cardinality
/// comparison; containment is checked explicitly all the same.
pub fn is_admissible(h: &HilbertFunction, n: usize) -> Admissibility {
    let through = match h.tail() {
        Tail::Zero => h.last_index() + 1,
        Tail::Unspecified => h.last_index(),
    };
    let sizes = match segment_sizes(h, n, through) {
        Ok(sizes) => sizes,
        Err(Error::Inadmissible {
            degree,
            required,
            capacity,
        }) => {
            return Admissibility::Inadmissible {
                degree,
                required,
                capacity,
            }
        }
        Err(_) => unreachable!("segment_sizes only fails with Inadmissible"),
    };
    let mut segment = lex_segment(n, 0, sizes[0]).expect("within capacity");
    for t in 1..=through {
        let grown = shadow(&segment).expect("equal degrees by construction");
        let next = lex_segment(n, t, sizes[t]).expect("within capacity");
        let next_set: BTreeSet<&Monomial> = next.iter().collect();
        if !grown.iter().all(|m| next_set.contains(m)) {
            return Admissibility::Inadmissible {
                degree: t,
                required: grown.len(),
                capacity: sizes[t],
            };
        }
        segment = next;
    }
    Admissibility::Admissible
}

/// A lex ideal together with the degree bound it is valid through, when the
/// source Hilbert function had an unspecified tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexIdeal {
    pub ideal: MonomialIdeal,
    /// `Some(T)`: generators are only determined through degree T.
    pub truncated_at: Option<usize>,
}

/// Minimal generators of the unique lex ideal with the given Hilbert
/// function. New generators in degree t are the degree-t lex segment minus
/// the shadow of the previous one; an artinian tail closes the ideal one
/// degree past the stored range.
pub fn lex_ideal(h: &HilbertFunction, n: usize) -> Result<LexIdeal> {
    if let Admissibility::Inadmissible {
        degree,
        required,
        capacity,
    } = is_admissible(h, n)
    {
        return Err(Error::Inadmissible {
            degree,
            required,
            capacity,
        });
    }
    let through = match h.tail() {
        Tail::Zero => h.last_index() + 1,
        Tail::Unspecified => h.last_index(),
    };
    let sizes = segment_sizes(h, n, through)?;
    let mut generators = Vec::new();
    let mut segment = lex_segment(n, 0, sizes[0])?;
    for t in 1..=through {
        let grown: BTreeSet<Monomial> = shadow(&segment)?.into_iter().collect();
        let next = lex_segment(n, t, sizes[t])?;
        generators.extend(next.iter().filter(|m| !grown.contains(m)).cloned());
        segment = next;
    }
    Ok(LexIdeal {
        ideal: MonomialIdeal::new(n, generators)?,
        truncated_at: match h.tail() {
            Tail::Zero => None,
            Tail::Unspecified => Some(h.last_index()),
        },
    })
}

/// Hilbert function of P/L by direct monomial counting through `bound`.
pub fn hf_of_quotient(ideal: &MonomialIdeal, bound: usize) -> HilbertFunction {
    let n = ideal.num_vars();
    let values: Vec<usize> = (0..=bound)
        .map(|t| {
            monomials_of_degree(n, t)
                .iter()
                .filter(|m| !ideal.contains(m))
                .count()
        })
        .collect();
    // Once a degree is swallowed whole, every later degree is too, so a zero
    // anywhere certifies the artinian tail.
    let tail = if values.last() == Some(&0) {
        Tail::Zero
    } else {
        Tail::Unspecified
    };
    HilbertFunction::new(values, tail).expect("counting yields a valid hilbert function")
}

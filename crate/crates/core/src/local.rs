use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::codim2::CodimTwoProfile;
use crate::error::{Error, Result};
use crate::hilbert::{lex_ideal, HilbertFunction, MonomialIdeal};
use crate::monomial::{degree_lex_desc, monomial_count, monomials_of_degree, Monomial};
use crate::poly::{Polynomial, Rational};

/// An ideal of the power-series ring given by generators inside the maximal
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LocalIdealRepr", into = "LocalIdealRepr")]
pub struct LocalIdeal {
    num_vars: usize,
    generators: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct LocalIdealRepr {
    n: usize,
    gens: Vec<String>,
}

impl TryFrom<LocalIdealRepr> for LocalIdeal {
    type Error = Error;
    fn try_from(repr: LocalIdealRepr) -> Result<Self> {
        let gens = repr
            .gens
            .iter()
            .map(|s| Polynomial::parse(s, repr.n))
            .collect::<Result<Vec<_>>>()?;
        LocalIdeal::new(repr.n, gens)
    }
}

impl From<LocalIdeal> for LocalIdealRepr {
    fn from(ideal: LocalIdeal) -> Self {
        LocalIdealRepr {
            n: ideal.num_vars,
            gens: ideal.generators.iter().map(|g| g.to_string()).collect(),
        }
    }
}

impl LocalIdeal {
    pub fn new(num_vars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::new();
        for g in generators {
            if g.num_vars() != num_vars {
                return Err(Error::VariableMismatch(num_vars, g.num_vars()));
            }
            if g.is_zero() {
                continue;
            }
            if g.order() == Some(0) {
                return Err(Error::NotLocal);
            }
            kept.push(g);
        }
        Ok(Self {
            num_vars,
            generators: kept,
        })
    }

    pub fn from_monomial_ideal(ideal: &MonomialIdeal) -> Self {
        Self {
            num_vars: ideal.num_vars(),
            generators: ideal
                .generators()
                .iter()
                .cloned()
                .map(Polynomial::monomial)
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    fn max_generator_degree(&self) -> usize {
        self.generators
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Generators of n*I.
    fn times_maximal_ideal(&self) -> Self {
        let mut gens = Vec::new();
        for g in &self.generators {
            for v in 1..=self.num_vars {
                gens.push(g.mul_monomial(&Monomial::variable(v, self.num_vars)));
            }
        }
        Self {
            num_vars: self.num_vars,
            generators: gens,
        }
    }
}

/// Reduced row-echelon basis of the image of an ideal in the space of
/// polynomials of degree < bound, i.e. of (I + n^bound)/n^bound.
///
/// Pivots follow ascending degree, then descending lex within a degree,
/// and rows are fully reduced with monic pivots, so the basis is canonical:
/// two spans are equal iff the bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSpan {
    num_vars: usize,
    bound: usize,
    basis: Vec<Polynomial>,
}

impl TruncatedSpan {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .map(|b| b.pivot_term().expect("basis rows are nonzero").0)
            .collect()
    }

    pub fn pivot_count_in_degree(&self, t: usize) -> usize {
        self.pivots().iter().filter(|m| m.degree() == t).count()
    }

    /// Remainder of p modulo the span (after truncation).
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut rem = p.truncate(self.bound);
        loop {
            let Some((pivot, coeff)) = rem.pivot_term() else {
                return rem;
            };
            let hit = self
                .basis
                .iter()
                .find(|b| b.pivot_term().expect("nonzero").0 == pivot);
            match hit {
                Some(b) => {
                    let coeff = coeff.clone();
                    rem = rem.sub(&b.scale(&coeff));
                }
                None => return rem,
            }
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    fn insert(&mut self, p: Polynomial) -> bool {
        let mut rem = self.reduce(&p);
        if rem.is_zero() {
            return false;
        }
        let lead = rem.pivot_term().expect("nonzero").1.clone();
        rem = rem.scale(&(Rational::one() / lead));
        let pivot = rem.pivot_term().expect("nonzero").0.clone();
        for b in &mut self.basis {
            let c = b.coeff(&pivot);
            if !c.is_zero() {
                *b = b.sub(&rem.scale(&c));
            }
        }
        let at = self
            .basis
            .partition_point(|b| pivot_order(b.pivot_term().expect("nonzero").0, &pivot));
        self.basis.insert(at, rem);
        true
    }

    /// Closure under multiplication by variables, up to truncation. Holds by
    /// construction for spans of ideals; kept as a saturation pass so the
    /// invariant is enforced rather than assumed.
    fn saturate(&mut self) {
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = self.basis.clone();
            for b in snapshot {
                for v in 1..=self.num_vars {
                    let product = b.mul_monomial(&Monomial::variable(v, self.num_vars));
                    if self.insert(product) {
                        changed = true;
                    }
                }
            }
        }
    }

    pub fn is_multiplication_closed(&self) -> bool {
        self.basis.iter().all(|b| {
            (1..=self.num_vars).all(|v| {
                self.contains(&b.mul_monomial(&Monomial::variable(v, self.num_vars)))
            })
        })
    }
}

/// True iff `a` strictly precedes `b` in pivot order.
fn pivot_order(a: &Monomial, b: &Monomial) -> bool {
    degree_lex_desc(a, b) == std::cmp::Ordering::Less
}

/// Span of { truncate(m * g) : g generator, deg(m) + order(g) < bound }.
pub fn truncated_span(ideal: &LocalIdeal, bound: usize) -> TruncatedSpan {
    assert!(bound >= 1, "truncation bound must be positive");
    let mut span = TruncatedSpan {
        num_vars: ideal.num_vars,
        bound,
        basis: Vec::new(),
    };
    for g in &ideal.generators {
        let order = g.order().expect("generators are nonzero");
        for t in 0..bound.saturating_sub(order) {
            for m in monomials_of_degree(ideal.num_vars, t) {
                span.insert(g.mul_monomial(&m).truncate(bound));
            }
        }
    }
    span.saturate();
    span
}

/// Escalation policy for the truncation bound.
#[derive(Clone, Copy, Debug)]
pub struct LocalOptions {
    /// Starting bound; defaults to max generator degree + 4.
    pub initial_bound: Option<usize>,
    /// Give up past this bound.
    pub ceiling: usize,
}

impl Default for LocalOptions {
    fn default() -> Self {
        Self {
            initial_bound: None,
            ceiling: 64,
        }
    }
}

/// Hilbert function of R/I for an artinian quotient, by truncated linear
/// algebra: h(t) = (monomials of degree t) - (span pivots in degree t),
/// exact for t < bound. The bound doubles until some h(t0) = 0 certifies
/// n^{t0} is inside I, which makes every reported value exact.
pub fn local_hf(ideal: &LocalIdeal, options: &LocalOptions) -> Result<HilbertFunction> {
    let start = options
        .initial_bound
        .unwrap_or(ideal.max_generator_degree() + 4)
        .max(2);
    let mut bound = start.min(options.ceiling);
    loop {
        let span = truncated_span(ideal, bound);
        let values: Vec<usize> = (0..bound)
            .map(|t| monomial_count(ideal.num_vars, t) - span.pivot_count_in_degree(t))
            .collect();
        if let Some(t0) = values[..bound - 1].iter().position(|&v| v == 0) {
            if values[t0..].iter().any(|&v| v != 0) {
                return Err(Error::Internal(
                    "hilbert function resurrects past a certified zero".to_string(),
                ));
            }
            return HilbertFunction::artinian(values[..=t0].to_vec());
        }
        if bound >= options.ceiling {
            return Err(Error::PossiblyNonArtinian(options.ceiling));
        }
        bound = (bound * 2).min(options.ceiling);
    }
}

/// Minimal number of generators, mu(I) = dim (I + n^N)/(nI + n^N) at
/// N = socle + 2, where n^N lies inside nI because n^{socle+1} is in I.
pub fn mu(ideal: &LocalIdeal, options: &LocalOptions) -> Result<usize> {
    let h = local_hf(ideal, options)?;
    let bound = h.socle_degree() + 2;
    let ideal_span = truncated_span(ideal, bound);
    let scaled_span = truncated_span(&ideal.times_maximal_ideal(), bound);
    Ok(ideal_span.dim() - scaled_span.dim())
}

/// Exact membership p in I for an artinian quotient: at bound >= socle + 2,
/// n^bound is inside n*I, so membership modulo n^bound decides membership.
pub fn membership(
    p: &Polynomial,
    ideal: &LocalIdeal,
    bound: usize,
    options: &LocalOptions,
) -> Result<bool> {
    let h = local_hf(ideal, options)?;
    let required = h.socle_degree() + 2;
    if bound < required {
        return Err(Error::BoundTooSmall { bound, required });
    }
    Ok(truncated_span(ideal, bound).contains(p))
}

/// The lexicographic ideal attached to a local artinian quotient.
pub fn lex_of_local(ideal: &LocalIdeal, options: &LocalOptions) -> Result<MonomialIdeal> {
    let h = local_hf(ideal, options)?;
    Ok(lex_ideal(&h, ideal.num_vars())?.ideal)
}

/// Verification report for a realized codimension-two ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub hf_ok: bool,
    pub lex_ok: bool,
    pub mu: usize,
    pub betti: Vec<usize>,
    pub failures: Vec<String>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check a realized ideal against its profile: the local Hilbert function,
/// the lex ideal, and mu = d + 1 - (number of positions), reporting the
/// implied Betti sequence (1, mu, mu - 1) of the quotient.
pub fn verify_realization(
    ideal: &LocalIdeal,
    profile: &CodimTwoProfile,
    positions_used: usize,
) -> RealizationReport {
    let options = LocalOptions::default();
    let mut failures = Vec::new();
    let hf_ok = match local_hf(ideal, &options) {
        Ok(h) => {
            let ok = h == profile.h;
            if !ok {
                failures.push(format!(
                    "hilbert function: expected {}, computed {}",
                    profile.h, h
                ));
            }
            ok
        }
        Err(e) => {
            failures.push(format!("hilbert function: {e}"));
            false
        }
    };
    let lex_ok = match lex_of_local(ideal, &options) {
        Ok(l) => {
            let expected = profile.lex_ideal();
            let ok = l == expected;
            if !ok {
                failures.push("lex ideal differs from the profile's".to_string());
            }
            ok
        }
        Err(e) => {
            failures.push(format!("lex ideal: {e}"));
            false
        }
    };
    let mu_value = match mu(ideal, &options) {
        Ok(value) => {
            let expected = profile.d + 1 - positions_used;
            if value != expected {
                failures.push(format!("mu: expected {expected}, computed {value}"));
            }
            value
        }
        Err(e) => {
            failures.push(format!("mu: {e}"));
            0
        }
    };
    RealizationReport {
        hf_ok,
        lex_ok,
        mu: mu_value,
        betti: vec![1, mu_value, mu_value.saturating_sub(1)],
        failures,
    }
}

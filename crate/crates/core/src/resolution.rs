use std::collections::BTreeMap;

use itertools::Itertools;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::hilbert::MonomialIdeal;
use crate::monomial::{binomial, Monomial};

/// A basis element `e_(m; j_1..j_{i-1})` of the Eliahou-Kervaire resolution:
/// a minimal generator together with a strictly increasing index tuple below
/// `max(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkBasisElement {
    pub generator: Monomial,
    pub indices: Vec<usize>,
}

impl EkBasisElement {
    pub fn homological_degree(&self) -> usize {
        self.indices.len() + 1
    }

    /// Internal degree `deg(m) + i - 1`.
    pub fn shift(&self) -> usize {
        self.generator.degree() + self.indices.len()
    }
}

/// A monomial ideal is stable when for every minimal generator `m` and every
/// `j < max(m)` the exchange `x_j * m / x_{max(m)}` stays inside.
pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    ideal.generators().iter().all(|m| {
        let max = m.max_index().expect("no unit generators");
        (1..max).all(|j| ideal.contains(&m.exchange(j).expect("j < max")))
    })
}

fn require_stable(ideal: &MonomialIdeal) -> Result<()> {
    if is_stable(ideal) {
        Ok(())
    } else {
        Err(Error::NotStable)
    }
}

/// All admissible basis elements in homological degree `i >= 1`, generators
/// in their canonical order, index tuples lexicographically.
pub fn ek_basis(ideal: &MonomialIdeal, i: usize) -> Result<Vec<EkBasisElement>> {
    assert!(i >= 1, "homological degree starts at 1");
    require_stable(ideal)?;
    let mut out = Vec::new();
    for m in ideal.generators() {
        let max = m.max_index().expect("no unit generators");
        for indices in (1..max).combinations(i - 1) {
            out.push(EkBasisElement {
                generator: m.clone(),
                indices,
            });
        }
    }
    Ok(out)
}

/// Graded Betti table of P/L for a stable ideal L: beta_{0,0} = 1 and
/// beta_{i, deg(m)+i-1} picks up C(max(m)-1, i-1) from each generator m.
/// The binomial form replaces tuple enumeration; `ek_basis` stays as the
/// oracle for it.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    require_stable(ideal)?;
    let mut table = BettiTable::quotient();
    for m in ideal.generators() {
        let max = m.max_index().expect("no unit generators");
        let degree = m.degree();
        for i in 1..=max {
            table.add_entry(i, degree + i - 1, binomial(max - 1, i - 1));
        }
    }
    Ok(table)
}

/// Projective dimension and depth of P/L over the polynomial ring:
/// pd = max over generators of max(m), depth = n - pd.
pub fn pd_and_depth(ideal: &MonomialIdeal) -> Result<(usize, usize)> {
    require_stable(ideal)?;
    let pd = ideal
        .generators()
        .iter()
        .map(|m| m.max_index().expect("no unit generators"))
        .max()
        .unwrap_or(0);
    Ok((pd, ideal.num_vars() - pd))
}

/// The staircase generator shape `m_k = x_1^{s_1} ... x_k^{s_k + 1}` with
/// `s_1 = deg(m_1) - 1 >= 1`; returns the s-vector when every generator
/// matches, in the canonical generator order.
pub fn hibi_murai_shape(ideal: &MonomialIdeal) -> Option<Vec<usize>> {
    let gens = ideal.generators();
    if gens.is_empty() || gens.len() > ideal.num_vars() {
        return None;
    }
    let mut s = Vec::with_capacity(gens.len());
    s.push(gens[0].degree().checked_sub(1).filter(|&v| v >= 1)?);
    for pair in gens.windows(2) {
        s.push(pair[1].degree().checked_sub(pair[0].degree())?);
    }
    for (k, m) in gens.iter().enumerate() {
        for (idx, &e) in m.exponents().iter().enumerate() {
            let expected = match idx.cmp(&k) {
                std::cmp::Ordering::Less => s[idx],
                std::cmp::Ordering::Equal => s[k] + 1,
                std::cmp::Ordering::Greater => 0,
            };
            if e != expected {
                return None;
            }
        }
    }
    Some(s)
}

/// The top two rows of the minimal resolution for a staircase-shaped ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTail {
    pub top_degree: usize,
    pub top: BTreeMap<usize, usize>,
    pub penultimate_degree: usize,
    pub penultimate: BTreeMap<usize, usize>,
}

/// Closed form for the resolution tail of a staircase ideal with h = mu(L)
/// generators: the last step is P(-h - deg(m_h) + 1), the one before it
/// P^{h-1}(-h - deg(m_h) + 2) + P(-h - deg(m_{h-1}) + 2). Cross-checked
/// against the computed table before returning.
pub fn resolution_tail(ideal: &MonomialIdeal) -> Result<ResolutionTail> {
    require_stable(ideal)?;
    let s = hibi_murai_shape(ideal).ok_or(Error::NoStaircaseShape)?;
    let h = s.len();
    let gens = ideal.generators();
    let top_shift = h + gens[h - 1].degree() - 1;
    let top = BTreeMap::from([(top_shift, 1)]);
    let mut penultimate = BTreeMap::new();
    let penultimate_degree = h - 1;
    if h >= 2 {
        *penultimate.entry(h + gens[h - 1].degree() - 2).or_insert(0) += h - 1;
        *penultimate.entry(h + gens[h - 2].degree() - 2).or_insert(0) += 1;
    } else {
        penultimate.insert(0, 1);
    }
    let table = ek_betti(ideal)?;
    let computed_top = table.row(h).cloned().unwrap_or_default();
    let computed_pen = table.row(h - 1).cloned().unwrap_or_default();
    if computed_top != top || computed_pen != penultimate {
        return Err(Error::Internal(format!(
            "closed-form tail {top:?}/{penultimate:?} disagrees with computed rows {computed_top:?}/{computed_pen:?}"
        )));
    }
    Ok(ResolutionTail {
        top_degree: h,
        top,
        penultimate_degree,
        penultimate,
    })
}

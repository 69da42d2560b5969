use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::betti::{BettiTable, TableKind};
use crate::error::{Error, Result};
use crate::hilbert::MonomialIdeal;
use crate::resolution::is_stable;

/// Which cancellations a search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Zero,
    Negative,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CancellationClass {
    Zero,
    Negative,
}

/// A consecutive cancellation: decrement beta_{i,j} and beta_{i-1,j'} with
/// j <= j'. Zero when j = j', negative when j < j'.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CancellationRepr", into = "CancellationRepr")]
pub struct Cancellation {
    pub i: usize,
    pub j: usize,
    pub jp: usize,
}

#[derive(Serialize, Deserialize)]
struct CancellationRepr {
    i: usize,
    j: usize,
    jp: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<CancellationClass>,
}

impl TryFrom<CancellationRepr> for Cancellation {
    type Error = Error;
    fn try_from(repr: CancellationRepr) -> Result<Self> {
        let c = Cancellation::new(repr.i, repr.j, repr.jp)?;
        if let Some(class) = repr.class {
            if class != c.class() {
                return Err(Error::Parse {
                    kind: "cancellation",
                    input: format!("({}, {}, {})", repr.i, repr.j, repr.jp),
                    reason: "declared class does not match shifts".to_string(),
                });
            }
        }
        Ok(c)
    }
}

impl From<Cancellation> for CancellationRepr {
    fn from(c: Cancellation) -> Self {
        CancellationRepr {
            class: Some(c.class()),
            i: c.i,
            j: c.j,
            jp: c.jp,
        }
    }
}

impl Cancellation {
    pub fn new(i: usize, j: usize, jp: usize) -> Result<Self> {
        if i == 0 || j > jp {
            return Err(Error::NotApplicable { i, j, jp });
        }
        Ok(Self { i, j, jp })
    }

    pub fn class(&self) -> CancellationClass {
        if self.j == self.jp {
            CancellationClass::Zero
        } else {
            CancellationClass::Negative
        }
    }

    fn matches(&self, mode: Mode) -> bool {
        match mode {
            Mode::Both => true,
            Mode::Zero => self.class() == CancellationClass::Zero,
            Mode::Negative => self.class() == CancellationClass::Negative,
        }
    }
}

/// The degree matrix between two consecutive resolution steps: entry (r, s)
/// is the s-th column shift minus the r-th row shift, shifts listed
/// ascending with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMatrix {
    pub step: usize,
    pub row_shifts: Vec<usize>,
    pub col_shifts: Vec<usize>,
}

impl DegreeMatrix {
    pub fn entry(&self, r: usize, s: usize) -> i64 {
        self.col_shifts[s] as i64 - self.row_shifts[r] as i64
    }

    pub fn entries(&self) -> Vec<Vec<i64>> {
        (0..self.row_shifts.len())
            .map(|r| (0..self.col_shifts.len()).map(|s| self.entry(r, s)).collect())
            .collect()
    }

    pub fn min_entry(&self) -> Option<i64> {
        self.entries().into_iter().flatten().min()
    }

    pub fn has_nonpositive_entry(&self) -> bool {
        self.min_entry().map_or(false, |m| m <= 0)
    }
}

/// One degree matrix per consecutive pair of nonempty rows.
pub fn degree_matrices(table: &BettiTable) -> Vec<DegreeMatrix> {
    let mut out = Vec::new();
    for i in 1..=table.max_degree() {
        let rows = table.row_shifts(i - 1);
        let cols = table.row_shifts(i);
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        out.push(DegreeMatrix {
            step: i,
            row_shifts: rows,
            col_shifts: cols,
        });
    }
    out
}

fn row0_protected(table: &BettiTable, c: &Cancellation, allow_row0: bool) -> bool {
    c.i == 1 && table.kind() == TableKind::Quotient
        || c.i == 1 && table.kind() == TableKind::Module && !allow_row0
}

/// All applicable cancellations in ascending (i, j, j') order. Cancellations
/// into row 0 are excluded: always for quotient tables (the free cover of
/// the quotient is never cancelled), and for module tables unless
/// `allow_row0` is set.
pub fn list_cancellations_opts(
    table: &BettiTable,
    mode: Mode,
    allow_row0: bool,
) -> Vec<Cancellation> {
    let mut out = Vec::new();
    for i in 1..=table.max_degree() {
        let (Some(upper), Some(lower)) = (table.row(i), table.row(i - 1)) else {
            continue;
        };
        for (&j, _) in upper {
            for (&jp, _) in lower.range(j..) {
                let c = Cancellation { i, j, jp };
                if c.matches(mode) && !row0_protected(table, &c, allow_row0) {
                    out.push(c);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn list_cancellations(table: &BettiTable, mode: Mode) -> Vec<Cancellation> {
    list_cancellations_opts(table, mode, false)
}

/// Apply one cancellation, decrementing beta_{i,j} and beta_{i-1,j'}.
pub fn apply(table: &BettiTable, c: &Cancellation) -> Result<BettiTable> {
    apply_opts(table, c, false)
}

pub fn apply_opts(table: &BettiTable, c: &Cancellation, allow_row0: bool) -> Result<BettiTable> {
    let applicable = c.j <= c.jp
        && c.i >= 1
        && table.entry(c.i, c.j) > 0
        && table.entry(c.i - 1, c.jp) > 0
        && !row0_protected(table, c, allow_row0);
    if !applicable {
        return Err(Error::NotApplicable {
            i: c.i,
            j: c.j,
            jp: c.jp,
        });
    }
    let mut next = table.clone();
    next.decrement(c.i, c.j)?;
    next.decrement(c.i - 1, c.jp)?;
    Ok(next)
}

/// Guard rails for the exhaustive search.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Refuse tables with total multiplicity above this.
    pub size_guard: usize,
    /// Permit cancellations into row 0 of module tables.
    pub allow_row0: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            size_guard: 120,
            allow_row0: false,
        }
    }
}

impl SearchLimits {
    pub fn with_guard(size_guard: usize) -> Self {
        Self {
            size_guard,
            ..Self::default()
        }
    }
}

fn check_guard(table: &BettiTable, limits: &SearchLimits) -> Result<()> {
    let total = table.size();
    if total > limits.size_guard {
        return Err(Error::SizeGuard {
            total,
            guard: limits.size_guard,
        });
    }
    Ok(())
}

/// Every total Betti sequence reachable by some finite sequence of
/// cancellations in the given mode, the start table included. Sequences are
/// padded to the homological span of the input.
///
/// Exhaustive depth-first walk over reachable tables, memoized on the
/// canonical table form; cancellations commute, so visiting each table once
/// collects exactly the reachable totals.
pub fn reachable_totals(
    table: &BettiTable,
    mode: Mode,
    limits: &SearchLimits,
) -> Result<BTreeSet<Vec<usize>>> {
    check_guard(table, limits)?;
    let span = table.max_degree() + 1;
    let mut seen: HashSet<Vec<(usize, usize, usize)>> = HashSet::new();
    let mut totals = BTreeSet::new();
    let mut stack = vec![table.clone()];
    seen.insert(table.canonical_key());
    while let Some(current) = stack.pop() {
        totals.insert(current.totals_padded(span));
        for c in list_cancellations_opts(&current, mode, limits.allow_row0) {
            let next = apply_opts(&current, &c, limits.allow_row0)?;
            if seen.insert(next.canonical_key()) {
                stack.push(next);
            }
        }
    }
    Ok(totals)
}

/// Minimum of beta_row over all reachable total sequences.
pub fn min_row_total(
    table: &BettiTable,
    row: usize,
    mode: Mode,
    limits: &SearchLimits,
) -> Result<usize> {
    let reachable = reachable_totals(table, mode, limits)?;
    Ok(reachable
        .iter()
        .map(|t| t.get(row).copied().unwrap_or(0))
        .min()
        .unwrap_or(0))
}

fn totals_match(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

/// Decide whether a total Betti sequence is reachable; on success returns a
/// witness sequence of cancellations, canonicalized to ascending (i, j, j')
/// order (the moves commute, so any order of the witness applies).
pub fn is_reachable(
    table: &BettiTable,
    target: &[usize],
    mode: Mode,
    limits: &SearchLimits,
) -> Result<Option<Vec<Cancellation>>> {
    check_guard(table, limits)?;
    let mut seen: HashSet<Vec<(usize, usize, usize)>> = HashSet::new();
    let mut path = Vec::new();
    fn walk(
        current: &BettiTable,
        target: &[usize],
        mode: Mode,
        allow_row0: bool,
        seen: &mut HashSet<Vec<(usize, usize, usize)>>,
        path: &mut Vec<Cancellation>,
    ) -> Result<bool> {
        if !seen.insert(current.canonical_key()) {
            return Ok(false);
        }
        if totals_match(&current.totals(), target) {
            return Ok(true);
        }
        for c in list_cancellations_opts(current, mode, allow_row0) {
            let next = apply_opts(current, &c, allow_row0)?;
            path.push(c);
            if walk(&next, target, mode, allow_row0, seen, path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    if walk(table, target, mode, limits.allow_row0, &mut seen, &mut path)? {
        path.sort();
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

/// Quick test on the generators of a lex (or any stable) ideal for the
/// existence of a zero-or-negative cancellation in homological degree `i` of
/// its resolution: some generator pair m, m' with max(m) >= i-1,
/// max(m') >= i and deg(m') < deg(m). Equivalent to a non-positive entry in
/// the i-th degree matrix of the table, without computing the table.
pub fn lex_cancellation_test(ideal: &MonomialIdeal, i: usize) -> Result<bool> {
    if !is_stable(ideal) {
        return Err(Error::NotStable);
    }
    if i < 2 {
        // Row 0 is the protected free cover; no admissible 1-cancellations.
        return Ok(false);
    }
    let gens = ideal.generators();
    Ok(gens.iter().any(|m| {
        let max_m = m.max_index().expect("no unit generators");
        max_m >= i - 1
            && gens.iter().any(|mp| {
                mp.max_index().expect("no unit generators") >= i && mp.degree() < m.degree()
            })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{lex_ideal, HilbertFunction};
    use crate::resolution::ek_betti;

    /// Stored table of the semigroup-ring quotient: rows
    /// 1:{3:5}, 2:{4:3,5:2,6:1}, 3:{5:1,8:1}.
    fn semigroup_table() -> BettiTable {
        let mut t = BettiTable::quotient();
        t.add_entry(1, 3, 5);
        t.add_entry(2, 4, 3);
        t.add_entry(2, 5, 2);
        t.add_entry(2, 6, 1);
        t.add_entry(3, 5, 1);
        t.add_entry(3, 8, 1);
        t
    }

    /// Stored module table of an associated graded module of an ideal:
    /// row 0 = P^3, rows 1:{2:2,4:1,6:1,7:1}, 2:{3:1,5:2,7:1}, 3:{6:1}.
    fn graded_module_table() -> BettiTable {
        let mut t = BettiTable::module([(0, 3)]);
        t.add_entry(1, 2, 2);
        t.add_entry(1, 4, 1);
        t.add_entry(1, 6, 1);
        t.add_entry(1, 7, 1);
        t.add_entry(2, 3, 1);
        t.add_entry(2, 5, 2);
        t.add_entry(2, 7, 1);
        t.add_entry(3, 6, 1);
        t
    }

    fn lex_table(values: &[usize], n: usize) -> BettiTable {
        let h = HilbertFunction::artinian(values.to_vec()).unwrap();
        ek_betti(&lex_ideal(&h, n).unwrap().ideal).unwrap()
    }

    #[test]
    fn degree_matrix_semigroup() {
        let mats = degree_matrices(&semigroup_table());
        assert_eq!(mats.len(), 3);
        let u3 = &mats[2];
        assert_eq!(u3.step, 3);
        assert_eq!(u3.row_shifts, vec![4, 4, 4, 5, 5, 6]);
        assert_eq!(u3.col_shifts, vec![5, 8]);
        let negatives: Vec<i64> = u3
            .entries()
            .into_iter()
            .flatten()
            .filter(|&e| e < 0)
            .collect();
        assert_eq!(negatives, vec![-1]);
    }

    #[test]
    fn degree_matrix_single_cells() {
        let mut t = BettiTable::module([(0, 1)]);
        t.add_entry(1, 2, 1);
        t.add_entry(2, 3, 1);
        let mats = degree_matrices(&t);
        assert_eq!(mats[1].entries(), vec![vec![1]]);
        // Equal shift sets give a zero diagonal.
        let mut t = BettiTable::module([(0, 1)]);
        t.add_entry(1, 3, 1);
        t.add_entry(2, 3, 1);
        assert_eq!(degree_matrices(&t)[1].entries(), vec![vec![0]]);
    }

    #[test]
    fn list_cancellations_inline_example() {
        // Rows i: {2:2, 5:2}, i-1: {3:1, 5:1, 6:1}.
        let mut t = BettiTable::module([(0, 1)]);
        t.add_entry(1, 3, 1);
        t.add_entry(1, 5, 1);
        t.add_entry(1, 6, 1);
        t.add_entry(2, 2, 2);
        t.add_entry(2, 5, 2);
        let all = list_cancellations(&t, Mode::Both);
        let expected: Vec<Cancellation> = [(2, 2, 3), (2, 2, 5), (2, 2, 6), (2, 5, 5), (2, 5, 6)]
            .into_iter()
            .map(|(i, j, jp)| Cancellation { i, j, jp })
            .collect();
        assert_eq!(all, expected);
        assert_eq!(list_cancellations(&t, Mode::Zero).len(), 1);
        assert_eq!(list_cancellations(&t, Mode::Negative).len(), 4);
    }

    #[test]
    fn list_cancellations_single_row() {
        let t = BettiTable::quotient();
        assert!(list_cancellations(&t, Mode::Both).is_empty());
    }

    #[test]
    fn list_cancellations_two_variable_lex() {
        let t = lex_table(&[1, 2, 3, 4, 3, 3, 3, 2, 2, 1], 2);
        let negative = list_cancellations(&t, Mode::Negative);
        assert!(negative.contains(&Cancellation { i: 2, j: 5, jp: 7 }));
        assert!(negative.contains(&Cancellation { i: 2, j: 8, jp: 9 }));
        let zero = list_cancellations(&t, Mode::Zero);
        assert_eq!(zero, vec![Cancellation { i: 2, j: 10, jp: 10 }]);
    }

    #[test]
    fn apply_semigroup_cancellation() {
        let t = semigroup_table();
        let out = apply(&t, &Cancellation { i: 3, j: 5, jp: 6 }).unwrap();
        assert_eq!(out.totals(), vec![1, 5, 5, 1]);
        assert!(apply(&out, &Cancellation { i: 3, j: 5, jp: 6 }).is_err());
    }

    #[test]
    fn apply_graded_module_sequence() {
        let mut t = graded_module_table();
        assert_eq!(t.totals(), vec![3, 5, 4, 1]);
        for (i, j, jp) in [(3, 6, 7), (2, 5, 7), (2, 5, 6), (2, 3, 4)] {
            t = apply(&t, &Cancellation { i, j, jp }).unwrap();
        }
        assert_eq!(t.totals_padded(4), vec![3, 2, 0, 0]);
    }

    #[test]
    fn apply_then_restore_is_identity() {
        let t = semigroup_table();
        let c = Cancellation { i: 3, j: 5, jp: 6 };
        let mut back = apply(&t, &c).unwrap();
        back.add_entry(3, 5, 1);
        back.add_entry(2, 6, 1);
        assert_eq!(back, t);
    }

    #[test]
    fn quotient_row0_is_protected() {
        let mut t = BettiTable::quotient();
        t.add_entry(1, 0, 1); // would pair with beta_{0,0}
        assert!(list_cancellations(&t, Mode::Both).is_empty());
        assert!(apply(&t, &Cancellation { i: 1, j: 0, jp: 0 }).is_err());
    }

    #[test]
    fn module_row0_needs_flag() {
        let mut t = BettiTable::module([(0, 2)]);
        t.add_entry(1, 0, 1);
        assert!(list_cancellations(&t, Mode::Both).is_empty());
        assert_eq!(list_cancellations_opts(&t, Mode::Both, true).len(), 1);
        let out = apply_opts(&t, &Cancellation { i: 1, j: 0, jp: 0 }, true).unwrap();
        assert_eq!(out.totals(), vec![1]);
    }

    #[test]
    fn reachable_semigroup() {
        let t = semigroup_table();
        let reach = reachable_totals(&t, Mode::Negative, &SearchLimits::default()).unwrap();
        assert!(reach.contains(&vec![1, 5, 5, 1]));
        assert_eq!(reach.len(), 2); // start table and the single cancellation
    }

    #[test]
    fn reachable_fixed_point() {
        let mut t = BettiTable::quotient();
        t.add_entry(1, 2, 2); // no second row: nothing to cancel
        let reach = reachable_totals(&t, Mode::Both, &SearchLimits::default()).unwrap();
        assert_eq!(reach, BTreeSet::from([vec![1, 2]]));
    }

    #[test]
    fn reachable_guard_trips() {
        let t = semigroup_table();
        assert!(matches!(
            reachable_totals(&t, Mode::Both, &SearchLimits::with_guard(5)),
            Err(Error::SizeGuard { total: 14, guard: 5 })
        ));
    }

    #[test]
    fn gorenstein_obstruction_three_variables() {
        let t = lex_table(&[1, 3, 4, 4, 1, 1, 1], 3);
        let reach = reachable_totals(&t, Mode::Both, &SearchLimits::default()).unwrap();
        assert!(reach.iter().all(|v| v[3] >= 2));
        assert_eq!(
            min_row_total(&t, 3, Mode::Both, &SearchLimits::default()).unwrap(),
            2
        );
    }

    #[test]
    fn min_row_total_of_empty_row() {
        let t = semigroup_table();
        assert_eq!(
            min_row_total(&t, 7, Mode::Both, &SearchLimits::default()).unwrap(),
            0
        );
    }

    #[test]
    fn min_beta2_of_gorenstein_codim2() {
        let t = lex_table(&[1, 2, 1], 2);
        assert_eq!(
            min_row_total(&t, 2, Mode::Both, &SearchLimits::default()).unwrap(),
            1
        );
    }

    #[test]
    fn witness_for_semigroup_target() {
        let t = semigroup_table();
        let witness = is_reachable(&t, &[1, 5, 5, 1], Mode::Negative, &SearchLimits::default())
            .unwrap()
            .expect("reachable");
        assert_eq!(witness, vec![Cancellation { i: 3, j: 5, jp: 6 }]);
    }

    #[test]
    fn own_totals_reachable_with_empty_witness() {
        let t = semigroup_table();
        let witness = is_reachable(&t, &[1, 5, 6, 2], Mode::Both, &SearchLimits::default())
            .unwrap()
            .expect("identity");
        assert!(witness.is_empty());
    }

    #[test]
    fn gorenstein_targets_unreachable() {
        let t = lex_table(&[1, 3, 4, 4, 1, 1, 1], 3);
        for b1 in 1..=8 {
            for b2 in 1..=12 {
                let hit = is_reachable(&t, &[1, b1, b2, 1], Mode::Both, &SearchLimits::default())
                    .unwrap();
                assert!(hit.is_none());
            }
        }
    }

    #[test]
    fn quick_test_examples() {
        let two_var = lex_ideal(
            &HilbertFunction::artinian(vec![1, 2, 3, 4, 3, 3, 3, 2, 2, 1]).unwrap(),
            2,
        )
        .unwrap()
        .ideal;
        assert!(lex_cancellation_test(&two_var, 2).unwrap());

        // Generated in a single degree: no cancellations in any i.
        let single = MonomialIdeal::parse(2, &["x^2", "x*y", "y^2"]).unwrap();
        for i in 1..=4 {
            assert!(!lex_cancellation_test(&single, i).unwrap());
        }

        let three_var = lex_ideal(
            &HilbertFunction::artinian(vec![1, 3, 4, 4, 1, 1, 1]).unwrap(),
            3,
        )
        .unwrap()
        .ideal;
        assert!(lex_cancellation_test(&three_var, 3).unwrap());

        assert!(lex_cancellation_test(&MonomialIdeal::parse(2, &["x*y"]).unwrap(), 2).is_err());
    }

    #[test]
    fn cancellation_json() {
        let c = Cancellation { i: 3, j: 5, jp: 6 };
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"i":3,"j":5,"jp":6,"class":"negative"}"#);
        assert_eq!(serde_json::from_str::<Cancellation>(&json).unwrap(), c);
        assert!(serde_json::from_str::<Cancellation>(r#"{"i":3,"j":7,"jp":6}"#).is_err());
    }
}

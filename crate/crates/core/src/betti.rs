use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::monomial_count;

/// Which convention fixes row 0 of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// Table of a cyclic quotient: row 0 is exactly {0 -> 1} and its free
    /// cover is never cancelled.
    Quotient,
    /// Module-style table with explicit row 0.
    Module,
}

/// A graded Betti table: multiplicities beta_{i,j} indexed by homological
/// degree i and shift j. Absent entries are zero; stored entries are
/// strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct BettiTable {
    kind: TableKind,
    rows: BTreeMap<usize, BTreeMap<usize, usize>>,
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    i: usize,
    shifts: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    kind: TableKind,
    rows: Vec<RowRepr>,
}

impl TryFrom<TableRepr> for BettiTable {
    type Error = Error;
    fn try_from(repr: TableRepr) -> Result<Self> {
        let mut rows: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for row in repr.rows {
            let mut shifts = BTreeMap::new();
            for (key, mult) in row.shifts {
                let shift: usize = key.parse().map_err(|_| Error::Parse {
                    kind: "betti table",
                    input: key.clone(),
                    reason: "shift keys must be non-negative integers".to_string(),
                })?;
                if mult == 0 {
                    continue;
                }
                shifts.insert(shift, mult);
            }
            if !shifts.is_empty() {
                rows.insert(row.i, shifts);
            }
        }
        let table = BettiTable {
            kind: repr.kind,
            rows,
        };
        table.validate()?;
        Ok(table)
    }
}

impl From<BettiTable> for TableRepr {
    fn from(table: BettiTable) -> Self {
        TableRepr {
            kind: table.kind,
            rows: table
                .rows
                .into_iter()
                .map(|(i, shifts)| RowRepr {
                    i,
                    shifts: shifts
                        .into_iter()
                        .map(|(j, mult)| (j.to_string(), mult))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl BettiTable {
    /// Empty quotient table: only the free cover, beta_{0,0} = 1.
    pub fn quotient() -> Self {
        let mut rows = BTreeMap::new();
        rows.insert(0, BTreeMap::from([(0, 1)]));
        Self {
            kind: TableKind::Quotient,
            rows,
        }
    }

    /// Module table with explicit row 0.
    pub fn module(row0: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut table = Self {
            kind: TableKind::Module,
            rows: BTreeMap::new(),
        };
        for (j, mult) in row0 {
            table.add_entry(0, j, mult);
        }
        table
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    fn validate(&self) -> Result<()> {
        if self.kind == TableKind::Quotient {
            let row0 = self.rows.get(&0);
            let ok = row0.map_or(false, |r| r.len() == 1 && r.get(&0) == Some(&1));
            if !ok {
                return Err(Error::Internal(
                    "quotient table must have row 0 equal to {0: 1}".to_string(),
                ));
            }
        }
        Ok(())
    }

    pub fn add_entry(&mut self, i: usize, j: usize, mult: usize) {
        if mult == 0 {
            return;
        }
        *self.rows.entry(i).or_default().entry(j).or_insert(0) += mult;
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows
            .get(&i)
            .and_then(|row| row.get(&j))
            .copied()
            .unwrap_or(0)
    }

    /// Decrement beta_{i,j}, dropping the cell (and an emptied row) at zero.
    pub(crate) fn decrement(&mut self, i: usize, j: usize) -> Result<()> {
        let row = self
            .rows
            .get_mut(&i)
            .ok_or(Error::Internal(format!("decrement of empty row {i}")))?;
        match row.get_mut(&j) {
            Some(mult) if *mult > 1 => {
                *mult -= 1;
            }
            Some(_) => {
                row.remove(&j);
                if row.is_empty() {
                    self.rows.remove(&i);
                }
            }
            None => {
                return Err(Error::Internal(format!(
                    "decrement of absent cell ({i},{j})"
                )))
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &BTreeMap<usize, usize>)> {
        self.rows.iter().map(|(&i, shifts)| (i, shifts))
    }

    pub fn row(&self, i: usize) -> Option<&BTreeMap<usize, usize>> {
        self.rows.get(&i)
    }

    /// Largest homological degree with a nonzero entry.
    pub fn max_degree(&self) -> usize {
        self.rows.keys().next_back().copied().unwrap_or(0)
    }

    /// Shifts of row i as an ascending list with multiplicity.
    pub fn row_shifts(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some(row) = self.rows.get(&i) {
            for (&j, &mult) in row {
                out.extend(std::iter::repeat(j).take(mult));
            }
        }
        out
    }

    pub fn total(&self, i: usize) -> usize {
        self.rows
            .get(&i)
            .map(|row| row.values().sum())
            .unwrap_or(0)
    }

    /// Total Betti numbers (beta_0, ..., beta_max).
    pub fn totals(&self) -> Vec<usize> {
        self.totals_padded(self.max_degree() + 1)
    }

    /// Totals padded with zeros to the given length.
    pub fn totals_padded(&self, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.total(i)).collect()
    }

    /// Sum of all multiplicities.
    pub fn size(&self) -> usize {
        self.rows.values().map(|row| row.values().sum::<usize>()).sum()
    }

    /// Canonical flat form, used as a memo key by the search.
    pub(crate) fn canonical_key(&self) -> Vec<(usize, usize, usize)> {
        self.rows
            .iter()
            .flat_map(|(&i, shifts)| shifts.iter().map(move |(&j, &mult)| (i, j, mult)))
            .collect()
    }
}

/// Alternating sum `sum_i (-1)^i sum_j beta_{ij} * dim P_{t-j}` -- the
/// Hilbert function that an exact graded free resolution of a quotient with
/// this table would produce.
pub fn alternating_hilbert(table: &BettiTable, num_vars: usize, t: usize) -> i64 {
    let mut acc: i64 = 0;
    for (i, shifts) in table.rows() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (&j, &mult) in shifts {
            if j > t {
                continue;
            }
            acc += sign * (mult * monomial_count(num_vars, t - j)) as i64;
        }
    }
    acc
}

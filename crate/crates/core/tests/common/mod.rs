//! Shared generators and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's search and counting
//! paths: naive reachability re-implements cancellation on raw maps with no
//! memoization, and the determinant oracle is a permutation expansion.

// Each test target compiles this module separately and uses its own subset.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use betti_core::betti::BettiTable;
use betti_core::cancellation::Mode;
use betti_core::hilbert::{lex_ideal, lex_segment, shadow, HilbertFunction, MonomialIdeal};
use betti_core::matrix::PolyMatrix;
use betti_core::monomial::{monomial_count, Monomial};
use betti_core::poly::{integer, Polynomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Admissible-by-construction artinian Hilbert function: each value is drawn
/// below the exact Macaulay growth ceiling computed from lex segments.
pub fn random_admissible_hf(rng: &mut StdRng, n: usize, max_socle: usize) -> HilbertFunction {
    let mut values = vec![1usize];
    for t in 1.. {
        if t > max_socle {
            break;
        }
        let prev_capacity = monomial_count(n, t - 1);
        let ideal_size = prev_capacity - values[t - 1];
        let segment = lex_segment(n, t - 1, ideal_size).expect("size within capacity");
        let grown = shadow(&segment).expect("equal degrees");
        let ceiling = monomial_count(n, t) - grown.len();
        // Bias towards decay so socles stay small and ideals interesting.
        let cap = ceiling.min(values[t - 1] + rng.gen_range(0..=2));
        let next = rng.gen_range(0..=cap);
        if next == 0 {
            break;
        }
        values.push(next);
    }
    HilbertFunction::artinian(values).expect("constructed admissible")
}

pub fn random_lex_ideal(rng: &mut StdRng, n: usize, max_socle: usize) -> MonomialIdeal {
    let h = random_admissible_hf(rng, n, max_socle);
    lex_ideal(&h, n).expect("admissible by construction").ideal
}

/// A lex ideal minimally generated in at most two consecutive degrees:
/// a lex segment in degree a plus a lex segment in degree a+1 containing
/// its shadow.
pub fn random_two_degree_lex_ideal(rng: &mut StdRng, n: usize) -> MonomialIdeal {
    loop {
        let a = rng.gen_range(1..=4);
        let cap_a = monomial_count(n, a);
        let size_a = rng.gen_range(1..=cap_a);
        let segment = lex_segment(n, a, size_a).expect("within capacity");
        let grown = shadow(&segment).expect("equal degrees");
        let cap_next = monomial_count(n, a + 1);
        let size_next = rng.gen_range(grown.len()..=cap_next);
        let next = lex_segment(n, a + 1, size_next).expect("within capacity");
        let grown_set: BTreeSet<&Monomial> = grown.iter().collect();
        let mut gens = segment.clone();
        gens.extend(next.iter().filter(|m| !grown_set.contains(m)).cloned());
        let ideal = MonomialIdeal::new(n, gens).expect("no unit generators");
        if ideal.num_generators() > 0 {
            return ideal;
        }
    }
}

/// A stable monomial ideal: random seeds closed under the exchange
/// x_j * m / x_{max(m)}.
pub fn random_stable_ideal(rng: &mut StdRng, n: usize) -> MonomialIdeal {
    let seeds = rng.gen_range(1..=3);
    let mut set: Vec<Monomial> = Vec::new();
    for _ in 0..seeds {
        let degree = rng.gen_range(2..=4);
        let mut exponents = vec![0usize; n];
        for _ in 0..degree {
            exponents[rng.gen_range(0..n)] += 1;
        }
        set.push(Monomial::new(exponents));
    }
    let mut queue = set.clone();
    while let Some(m) = queue.pop() {
        let max = m.max_index().expect("positive degree");
        for j in 1..max {
            let swapped = m.exchange(j).expect("j below max");
            if !set.iter().any(|g| g.divides(&swapped)) {
                set.push(swapped.clone());
                queue.push(swapped);
            }
        }
    }
    MonomialIdeal::new(n, set).expect("no unit generators")
}

/// Random quotient Betti table with total multiplicity at most `max_size`,
/// shaped like a resolution (row-i shifts near i) so cancellations exist.
pub fn random_quotient_table(rng: &mut StdRng, max_size: usize) -> BettiTable {
    let mut table = BettiTable::quotient();
    let depth = rng.gen_range(2..=4);
    let mut budget = max_size.saturating_sub(1);
    for i in 1..=depth {
        let cells = rng.gen_range(1..=2);
        for _ in 0..cells {
            if budget == 0 {
                break;
            }
            let shift = i + rng.gen_range(0..=3);
            let mult = rng.gen_range(1..=2.min(budget));
            table.add_entry(i, shift, mult);
            budget -= mult;
        }
    }
    table
}

/// Independent reachability oracle: enumerate every cancellation sequence on
/// raw maps, no memoization, no pruning. Row 0 is never touched, matching
/// the engine's default.
pub fn naive_reachable(table: &BettiTable, mode: Mode) -> BTreeSet<Vec<usize>> {
    type Rows = BTreeMap<usize, BTreeMap<usize, usize>>;
    let rows: Rows = table
        .rows()
        .map(|(i, shifts)| (i, shifts.clone()))
        .collect();
    let span = table.max_degree() + 1;

    fn totals(rows: &Rows, span: usize) -> Vec<usize> {
        (0..span)
            .map(|i| rows.get(&i).map_or(0, |r| r.values().sum()))
            .collect()
    }

    fn moves(rows: &Rows, mode: Mode) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (&i, upper) in rows {
            if i <= 1 {
                continue;
            }
            let Some(lower) = rows.get(&(i - 1)) else {
                continue;
            };
            for (&j, &mult_j) in upper {
                if mult_j == 0 {
                    continue;
                }
                for (&jp, &mult_jp) in lower {
                    if mult_jp == 0 || jp < j {
                        continue;
                    }
                    let keep = match mode {
                        Mode::Both => true,
                        Mode::Zero => j == jp,
                        Mode::Negative => j < jp,
                    };
                    if keep {
                        out.push((i, j, jp));
                    }
                }
            }
        }
        out
    }

    fn walk(rows: &Rows, span: usize, mode: Mode, out: &mut BTreeSet<Vec<usize>>) {
        out.insert(totals(rows, span));
        for (i, j, jp) in moves(rows, mode) {
            let mut next = rows.clone();
            *next.get_mut(&i).unwrap().get_mut(&j).unwrap() -= 1;
            *next.get_mut(&(i - 1)).unwrap().get_mut(&jp).unwrap() -= 1;
            walk(&next, span, mode, out);
        }
    }

    let mut out = BTreeSet::new();
    walk(&rows, span, mode, &mut out);
    out
}

/// Determinant oracle: signed permutation expansion.
pub fn determinant_by_permutations(matrix: &PolyMatrix) -> Polynomial {
    let n = matrix.rows();
    assert_eq!(n, matrix.cols());
    let mut acc = Polynomial::zero(matrix.num_vars());
    let mut columns: Vec<usize> = (0..n).collect();
    permute(&mut columns, 0, &mut |perm, sign| {
        let mut product = Polynomial::term(
            Monomial::one(matrix.num_vars()),
            integer(if sign { 1 } else { -1 }),
        );
        for (row, &col) in perm.iter().enumerate() {
            product = product.mul(matrix.entry(row, col));
        }
        acc = acc.add(&product);
    });
    acc
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize], bool)) {
    fn inner(items: &mut Vec<usize>, start: usize, even: bool, visit: &mut impl FnMut(&[usize], bool)) {
        if start == items.len() {
            visit(items, even);
            return;
        }
        for pick in start..items.len() {
            items.swap(start, pick);
            let flipped = if pick == start { even } else { !even };
            inner(items, start + 1, flipped, visit);
            items.swap(start, pick);
        }
    }
    inner(items, start, true, visit);
}

/// Uniform small polynomial with integer coefficients in -3..=3.
pub fn random_polynomial(rng: &mut StdRng, n: usize, max_degree: usize, max_terms: usize) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let degree = rng.gen_range(0..=max_degree);
        let mut exponents = vec![0usize; n];
        for _ in 0..degree {
            exponents[rng.gen_range(0..n)] += 1;
        }
        let coeff = integer(rng.gen_range(-3..=3));
        out = out.add(&Polynomial::term(Monomial::new(exponents), coeff));
    }
    out
}

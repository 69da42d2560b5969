use serde::Serialize;

use crate::betti::BettiTable;
use crate::cancellation::CancellationClass;
use crate::error::{Error, Result};
use crate::hilbert::{lex_ideal, HilbertFunction, MonomialIdeal, Tail};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Numerical profile of a codimension-two artinian quotient: the Hilbert
/// function ramps 1, 2, ..., d and then decreases to zero past the socle
/// degree s. The lex ideal is (x^d, x^{d-1} y^{k_1}, ..., y^{k_d}) with
/// 0 = k_0 < k_1 < ... < k_d, and e_j = |h_j - h_{j-1}| counts its
/// generators in each degree past d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimTwoProfile {
    pub d: usize,
    pub s: usize,
    pub h: HilbertFunction,
    /// e[j] for j = 0..=s+1; e[0] is unused and zero.
    pub e: Vec<usize>,
    /// k[i] for i = 0..=d.
    pub k: Vec<usize>,
}

impl CodimTwoProfile {
    /// Generators x^{d-i} y^{k_i}, i = 0..=d, in matrix row order.
    pub fn monomial_generators(&self) -> Vec<Monomial> {
        (0..=self.d)
            .map(|i| Monomial::new(vec![self.d - i, self.k[i]]))
            .collect()
    }

    pub fn lex_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(2, self.monomial_generators()).expect("profile generators are minimal")
    }

    /// Shifts of the generator step, indexed by matrix row r = 1..=d+1.
    pub fn f1_shifts(&self) -> Vec<usize> {
        (0..=self.d).map(|i| self.d - i + self.k[i]).collect()
    }

    /// Shifts of the relation step, indexed by matrix column c = 1..=d.
    pub fn f2_shifts(&self) -> Vec<usize> {
        (1..=self.d).map(|i| self.d + 1 - i + self.k[i]).collect()
    }

    /// The two-step resolution shape determined by the e-vector:
    /// F_2 = sum_j P^{e_{d+j}}(-d-j-1), F_1 = P^{e_d + 1}(-d) + sum_{j>=1}
    /// P^{e_{d+j}}(-d-j). Built independently of the k-vector; agreement
    /// with `f1_shifts`/`f2_shifts` and with the computed resolution of the
    /// lex ideal is covered by tests.
    pub fn shape_table(&self) -> BettiTable {
        let mut table = BettiTable::quotient();
        table.add_entry(1, self.d, self.e_at(self.d) + 1);
        for j in 1.. {
            if self.d + j > self.s + 1 {
                break;
            }
            table.add_entry(1, self.d + j, self.e_at(self.d + j));
        }
        for j in 0.. {
            if self.d + j > self.s + 1 {
                break;
            }
            table.add_entry(2, self.d + j + 1, self.e_at(self.d + j));
        }
        table
    }

    fn e_at(&self, j: usize) -> usize {
        self.e.get(j).copied().unwrap_or(0)
    }
}

/// Read the profile off an artinian Hilbert function of codimension-two
/// shape, cross-validating the e-vector bookkeeping against the actual lex
/// ideal in two variables.
pub fn profile_from_hf(h: &HilbertFunction) -> Result<CodimTwoProfile> {
    if h.tail() != Tail::Zero {
        return Err(Error::CodimTwoShape(
            "tail must be zero (artinian quotient)".to_string(),
        ));
    }
    let values = h.values();
    let s = h.socle_degree();
    // d is the first departure from the ramp h(t) = t + 1.
    let d = (0..=s + 1)
        .find(|&t| values.get(t).copied().unwrap_or(0) != t + 1)
        .expect("the ramp cannot extend past s + 1");
    if d == 0 {
        return Err(Error::HilbertStart);
    }
    for t in d..=s {
        let current = values[t];
        let previous = values[t - 1];
        if current > previous {
            return Err(Error::CodimTwoShape(format!(
                "h must be non-increasing past the ramp, h({t}) = {current} > h({}) = {previous}",
                t - 1
            )));
        }
        if current == 0 {
            return Err(Error::CodimTwoShape(format!("h({t}) vanishes before the socle")));
        }
    }
    if d <= s && values[d] > d {
        return Err(Error::CodimTwoShape(format!(
            "h({d}) = {} exceeds d = {d}",
            values[d]
        )));
    }
    let mut e = vec![0usize; s + 2];
    for j in 1..=s + 1 {
        let current = if j <= s { values[j] } else { 0 };
        let previous = if j - 1 < d { j } else { values[j - 1] };
        e[j] = current.abs_diff(previous);
    }
    debug_assert_eq!((d..=s + 1).map(|j| e[j]).sum::<usize>(), d);

    let ideal = lex_ideal(h, 2)?.ideal;
    let mut k = vec![0usize; d + 1];
    let mut seen = vec![false; d + 1];
    if ideal.num_generators() != d + 1 {
        return Err(Error::Internal(format!(
            "lex ideal of a codimension-two profile must have d + 1 = {} generators, found {}",
            d + 1,
            ideal.num_generators()
        )));
    }
    for g in ideal.generators() {
        let x_exp = g.exponent(1);
        let y_exp = g.exponent(2);
        if x_exp > d || seen[d - x_exp] {
            return Err(Error::Internal(
                "lex ideal generators do not fill x^d .. y^{k_d}".to_string(),
            ));
        }
        seen[d - x_exp] = true;
        k[d - x_exp] = y_exp;
    }
    if k[0] != 0 || !k.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Internal(
            "recovered k-vector is not strictly increasing from 0".to_string(),
        ));
    }
    // Degree bookkeeping: e_d + 1 generators of degree d, e_{d+j} of degree
    // d + j for j >= 1.
    let mut degree_counts = vec![0usize; s + 2];
    for g in ideal.generators() {
        degree_counts[g.degree()] += 1;
    }
    let consistent = (d..=s + 1).all(|j| {
        let expected = if j == d { e[j] + 1 } else { e[j] };
        degree_counts[j] == expected
    });
    if !consistent {
        return Err(Error::Internal(
            "generator degrees disagree with the e-vector".to_string(),
        ));
    }
    Ok(CodimTwoProfile {
        d,
        s,
        h: h.clone(),
        e,
        k,
    })
}

/// The (d+1) x d Hilbert-Burch matrix: column i carries y^{k_i - k_{i-1}}
/// in row i and -x in row i+1.
pub fn hb_matrix(profile: &CodimTwoProfile) -> PolyMatrix {
    let d = profile.d;
    let mut m = PolyMatrix::zero(d + 1, d, 2);
    for col in 1..=d {
        let gap = profile.k[col] - profile.k[col - 1];
        m.set_entry(
            col - 1,
            col - 1,
            Polynomial::monomial(Monomial::new(vec![0, gap])),
        );
        m.set_entry(col, col - 1, Polynomial::variable(1, 2).neg());
    }
    m
}

/// A matrix cell whose degree-matrix value is non-positive; perturbing it
/// realizes the corresponding cancellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AdmissiblePosition {
    /// 1-based row of the Hilbert-Burch matrix (generator index).
    pub row: usize,
    /// 1-based column (relation index).
    pub col: usize,
    pub class: CancellationClass,
    /// Shift pair (j, j') of the cancellation this position realizes.
    pub j: usize,
    pub jp: usize,
}

/// All positions (r, c) with column shift minus row shift <= 0, tagged zero
/// or negative, ascending (row, col).
pub fn admissible_positions(profile: &CodimTwoProfile) -> Vec<AdmissiblePosition> {
    let rows = profile.f1_shifts();
    let cols = profile.f2_shifts();
    let mut out = Vec::new();
    for (r, &a1) in rows.iter().enumerate() {
        for (c, &a2) in cols.iter().enumerate() {
            if a2 <= a1 {
                out.push(AdmissiblePosition {
                    row: r + 1,
                    col: c + 1,
                    class: if a2 == a1 {
                        CancellationClass::Zero
                    } else {
                        CancellationClass::Negative
                    },
                    j: a2,
                    jp: a1,
                });
            }
        }
    }
    out
}

/// A realized perturbation: the matrix M' and its signed maximal minors.
#[derive(Clone, Debug)]
pub struct Realization {
    pub matrix: PolyMatrix,
    pub generators: Vec<Polynomial>,
}

/// Add a unit at each chosen admissible position and take the d+1 maximal
/// minors. The minor omitting row i carries sign (-1)^{d+1-i} so that with
/// no positions the generators are exactly the monomial generators of the
/// lex ideal with coefficient +1.
///
/// Positions must be admissible and occupy pairwise distinct rows and
/// columns: each cancellation of the realized sequence consumes one
/// relation and one generator.
pub fn realize(profile: &CodimTwoProfile, positions: &[(usize, usize)]) -> Result<Realization> {
    let admissible: Vec<(usize, usize)> = admissible_positions(profile)
        .iter()
        .map(|p| (p.row, p.col))
        .collect();
    let mut rows_used = vec![false; profile.d + 2];
    let mut cols_used = vec![false; profile.d + 1];
    for &(row, col) in positions {
        if !admissible.contains(&(row, col)) {
            return Err(Error::InadmissiblePosition { row, col });
        }
        if rows_used[row] || cols_used[col] {
            return Err(Error::OverlappingPositions);
        }
        rows_used[row] = true;
        cols_used[col] = true;
    }
    let mut matrix = hb_matrix(profile);
    for &(row, col) in positions {
        let perturbed = matrix.entry(row - 1, col - 1).add(&Polynomial::one(2));
        matrix.set_entry(row - 1, col - 1, perturbed);
    }
    let generators = (1..=profile.d + 1)
        .map(|i| {
            let det = matrix.delete_row(i - 1).determinant()?;
            Ok(if (profile.d + 1 - i) % 2 == 0 {
                det
            } else {
                det.neg()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Realization { matrix, generators })
}

/// Necessary condition for a codimension-two artinian Gorenstein quotient:
/// every e_j is at most 1.
pub fn gorenstein_admissible(h: &HilbertFunction) -> Result<bool> {
    let profile = profile_from_hf(h)?;
    Ok(profile.e.iter().all(|&e| e <= 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hf(values: &[usize]) -> HilbertFunction {
        HilbertFunction::artinian(values.to_vec()).unwrap()
    }

    fn final_profile() -> CodimTwoProfile {
        profile_from_hf(&hf(&[1, 2, 3, 4, 3, 3, 3, 2, 2, 1])).unwrap()
    }

    #[test]
    fn profile_of_final_example() {
        let p = final_profile();
        assert_eq!(p.d, 4);
        assert_eq!(p.s, 9);
        assert_eq!(p.k, vec![0, 1, 5, 8, 10]);
        let nonzero: Vec<(usize, usize)> = (4..p.e.len()).map(|j| (j, p.e[j])).filter(|&(_, e)| e > 0).collect();
        assert_eq!(nonzero, vec![(4, 1), (7, 1), (9, 1), (10, 1)]);
        assert_eq!(
            p.lex_ideal(),
            MonomialIdeal::parse(2, &["x^4", "x^3*y", "x^2*y^5", "x*y^8", "y^10"]).unwrap()
        );
    }

    #[test]
    fn smallest_profiles() {
        let p = profile_from_hf(&hf(&[1, 1])).unwrap();
        assert_eq!((p.d, p.s), (1, 1));
        assert_eq!(p.k, vec![0, 2]);
        assert_eq!(p.lex_ideal(), MonomialIdeal::parse(2, &["x", "y^2"]).unwrap());

        let p = profile_from_hf(&hf(&[1, 2, 1])).unwrap();
        assert_eq!((p.d, p.s), (2, 2));
        assert_eq!(p.k, vec![0, 1, 3]);
        assert_eq!(p.e[2], 1);
        assert_eq!(p.e[3], 1);
        assert_eq!(
            p.lex_ideal(),
            MonomialIdeal::parse(2, &["x^2", "x*y", "y^3"]).unwrap()
        );
    }

    #[test]
    fn shape_rejections() {
        // Increases after the ramp.
        assert!(profile_from_hf(&hf(&[1, 2, 1, 2])).is_err());
        // Not a codimension-two ramp start.
        assert!(profile_from_hf(&hf(&[1, 3, 1])).is_err());
        // Unspecified tail.
        let h = HilbertFunction::new(vec![1, 2, 2], Tail::Unspecified).unwrap();
        assert!(profile_from_hf(&h).is_err());
    }

    #[test]
    fn hilbert_burch_matrix_of_final_example() {
        let m = hb_matrix(&final_profile());
        assert_eq!((m.rows(), m.cols()), (5, 4));
        let expected = [
            ["y", "0", "0", "0"],
            ["-x", "y^4", "0", "0"],
            ["0", "-x", "y^3", "0"],
            ["0", "0", "-x", "y^2"],
            ["0", "0", "0", "-x"],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, text) in row.iter().enumerate() {
                assert_eq!(m.entry(r, c), &Polynomial::parse(text, 2).unwrap());
            }
        }
    }

    #[test]
    fn hilbert_burch_matrix_smallest() {
        let p = profile_from_hf(&hf(&[1, 1])).unwrap();
        let m = hb_matrix(&p);
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(m.entry(0, 0), &Polynomial::parse("y^2", 2).unwrap());
        assert_eq!(m.entry(1, 0), &Polynomial::parse("-x", 2).unwrap());
    }

    #[test]
    fn unperturbed_minors_reproduce_generators() {
        let p = final_profile();
        let out = realize(&p, &[]).unwrap();
        let expected: Vec<Polynomial> = p
            .monomial_generators()
            .into_iter()
            .map(Polynomial::monomial)
            .collect();
        assert_eq!(out.generators, expected);
    }

    #[test]
    fn shifts_match_shape_table() {
        let p = final_profile();
        assert_eq!(p.f1_shifts(), vec![4, 4, 7, 9, 10]);
        assert_eq!(p.f2_shifts(), vec![5, 8, 10, 11]);
        let table = p.shape_table();
        assert_eq!(table.row_shifts(1), p.f1_shifts());
        assert_eq!(table.row_shifts(2), p.f2_shifts());
    }

    #[test]
    fn admissible_positions_of_final_example() {
        let p = final_profile();
        let positions = admissible_positions(&p);
        let as_tuples: Vec<(usize, usize, CancellationClass)> =
            positions.iter().map(|a| (a.row, a.col, a.class)).collect();
        assert!(as_tuples.contains(&(3, 1, CancellationClass::Negative)));
        assert!(as_tuples.contains(&(4, 2, CancellationClass::Negative)));
        assert!(as_tuples.contains(&(5, 3, CancellationClass::Zero)));
        // The last column never admits a position.
        assert!(positions.iter().all(|a| a.col < p.d));
    }

    #[test]
    fn single_column_profiles_have_no_positions() {
        for values in [&[1][..], &[1, 1], &[1, 1, 1]] {
            let p = profile_from_hf(&hf(values)).unwrap();
            assert_eq!(p.d, 1);
            assert!(admissible_positions(&p).is_empty());
        }
    }

    #[test]
    fn realize_full_position_set() {
        let p = final_profile();
        let out = realize(&p, &[(3, 1), (4, 2), (5, 3)]).unwrap();
        // Row 3 of M' now opens with the unit.
        assert_eq!(out.matrix.entry(2, 0), &Polynomial::one(2));
        let g1 = Polynomial::parse("x^4 - x^2*y^2 - x^2*y^3 - x^2*y^4 + y^6", 2).unwrap();
        let g2 = Polynomial::parse("x^3*y - x*y^3 - x*y^4", 2).unwrap();
        assert_eq!(out.generators[0], g1);
        assert_eq!(out.generators[1], g2);
    }

    #[test]
    fn realize_zero_position_only() {
        let p = final_profile();
        let out = realize(&p, &[(5, 3)]).unwrap();
        let expected = [
            "x^4 - x^2*y^2",
            "x^3*y - x*y^3",
            "x^2*y^5 - y^7",
            "x*y^8",
            "y^10",
        ];
        for (gen, text) in out.generators.iter().zip(expected) {
            assert_eq!(gen, &Polynomial::parse(text, 2).unwrap());
        }
    }

    #[test]
    fn realize_rejects_bad_positions() {
        let p = final_profile();
        assert!(matches!(
            realize(&p, &[(1, 1)]),
            Err(Error::InadmissiblePosition { row: 1, col: 1 })
        ));
        assert!(matches!(
            realize(&p, &[(3, 1), (4, 1)]),
            Err(Error::OverlappingPositions)
        ));
    }

    #[test]
    fn gorenstein_admissibility() {
        assert!(gorenstein_admissible(&hf(&[1, 2, 3, 4, 3, 3, 3, 2, 2, 1])).unwrap());
        assert!(!gorenstein_admissible(&hf(&[1, 2, 3, 1])).unwrap());
        assert!(gorenstein_admissible(&hf(&[1, 2, 1])).unwrap());
    }
}

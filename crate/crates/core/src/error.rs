use thiserror::Error;

/// Errors across the whole stack.
///
/// Domain rejections (inadmissible data, inapplicable moves, shape
/// violations) are distinguished from search-guard trips and internal
/// invariant failures so that callers can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("max index is undefined for the unit monomial")]
    UnitMonomial,
    #[error("a monomial ideal may not contain the unit monomial")]
    UnitGenerator,
    #[error("cannot parse {kind} from `{input}`: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix rows must all have {expected} entries, found one with {found}")]
    RaggedMatrix { expected: usize, found: usize },
    #[error("hilbert function must satisfy h(0) = 1")]
    HilbertStart,
    #[error("hilbert function becomes positive again after vanishing at degree {0}")]
    HilbertResurrection(usize),
    #[error("segment count {count} exceeds the {max} monomials of degree {degree} in {n} variables")]
    SegmentCount {
        n: usize,
        degree: usize,
        count: usize,
        max: usize,
    },
    #[error("shadow input mixes degrees {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("macaulay bound violated at degree {degree}: needs room for {required}, capacity {capacity}")]
    Inadmissible {
        degree: usize,
        required: usize,
        capacity: usize,
    },
    #[error("monomial ideal is not stable")]
    NotStable,
    #[error("lexicographic ideal is only determined through degree {0}")]
    Truncated(usize),
    #[error("generators do not have the staircase shape required for the closed-form tail")]
    NoStaircaseShape,
    #[error("cancellation ({i},{j},{jp}) is not applicable to this table")]
    NotApplicable { i: usize, j: usize, jp: usize },
    #[error("table size {total} exceeds the search guard {guard}")]
    SizeGuard { total: usize, guard: usize },
    #[error("hilbert function is not of codimension-two artinian shape: {0}")]
    CodimTwoShape(String),
    #[error("hilbert function is not of gorenstein tail shape: {0}")]
    GorensteinTailShape(String),
    #[error("position ({row},{col}) is not an admissible perturbation")]
    InadmissiblePosition { row: usize, col: usize },
    #[error("perturbation positions must occupy pairwise distinct rows and columns")]
    OverlappingPositions,
    #[error("local ideal generators must lie in the maximal ideal")]
    NotLocal,
    #[error("truncation bound {bound} too small, need at least {required}")]
    BoundTooSmall { bound: usize, required: usize },
    #[error("could not certify an artinian quotient within truncation ceiling {0}")]
    PossiblyNonArtinian(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

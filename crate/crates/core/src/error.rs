use alloc::string::String;

use thiserror::Error;

/// Errors raised by lattice algebra and the constructions built on it.
///
/// Variants fall in two groups: malformed input (shape, cross-lattice use)
/// and violated mathematical preconditions. [`Error::is_precondition`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("gram matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("vector has {got} coordinates, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vectors belong to different lattices")]
    LatticeMismatch,
    #[error("lattice is not unimodular (determinant {det})")]
    NotUnimodular { det: String },
    #[error("span vectors are linearly dependent")]
    DependentSpan,
    #[error("span is not unimodular (gram determinant {det}); orthogonal splitting over Z fails")]
    SpanNotUnimodular { det: String },
    #[error("vector does not lie in the orthogonal complement")]
    NotInComplement,
    #[error("form is definite or degenerate (b+ = {b_plus}, b- = {b_minus}, b0 = {b_zero}); no indefinite classification")]
    Unclassified { b_plus: usize, b_minus: usize, b_zero: usize },
    #[error("manifold invariant violated: {0}")]
    Invariant(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("blow-up count {r} does not match hyperplane square {square}")]
    BlowUpMismatch { r: u64, square: String },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },
    #[error("gluing class has {got} entries, expected 2g = {expected}")]
    GluingLength { expected: usize, got: usize },
    #[error("S_{index}^2 = {square} has the wrong parity for K_X S_{index} = {r}")]
    SquareParity { index: usize, square: i64, r: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("closed formula {formula} disagrees with direct lattice computation: {formula_value} vs {direct_value}")]
    FormulaMismatch { formula: &'static str, formula_value: String, direct_value: String },
    #[error("vector is not characteristic")]
    NotCharacteristic,
    #[error("class has a nonzero vanishing-surface component S_{index}")]
    VanishingComponent { index: usize },
}

impl Error {
    /// True for violated mathematical preconditions, false for malformed
    /// input.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::NotSquare { .. }
                | Error::NotSymmetric { .. }
                | Error::DimensionMismatch { .. }
                | Error::LatticeMismatch
                | Error::UnknownPreset(_)
                | Error::GluingLength { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;

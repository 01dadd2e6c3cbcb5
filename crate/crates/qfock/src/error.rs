//! Error type shared across the crate.

use thiserror::Error;

use crate::fock::Word;

/// Errors produced by Fock-space operations.
///
/// Every enumeration guard and domain precondition surfaces as a distinct
/// variant so callers (and the CLI) can report a precise diagnostic.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The deformation parameter must lie strictly inside (-1, 1).
    #[error("deformation parameter {0} is outside the open interval (-1, 1)")]
    QOutOfRange(String),

    /// A q value string that is neither `p/d` nor a decimal literal.
    #[error("cannot parse deformation parameter {0:?}: expected `p/d`, an integer, or a decimal literal")]
    QParse(String),

    /// A word grew past the configured degree cap.
    #[error("word degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    /// Wick expansion of a word longer than the expansion cap (2^n monomials).
    #[error("Wick expansion of a degree-{degree} word exceeds the cap {cap} (2^{degree} monomials)")]
    WickCapExceeded { degree: usize, cap: usize },

    /// The brute-force inner product enumerates S_n literally and refuses
    /// degrees past its factorial guard.
    #[error("brute-force inner product limited to word degree {cap}, got {degree}")]
    BruteForceDegree { degree: usize, cap: usize },

    /// Letter index not covered by the basis dimension.
    #[error("letter {letter} out of range for basis dimension {dim}")]
    LetterOutOfRange { letter: usize, dim: usize },

    /// q-binomial with k > n.
    #[error("q-binomial index k = {k} exceeds n = {n}")]
    BinomialOutOfRange { n: usize, k: usize },

    /// Shuffle enumeration with i outside 0..=n or n past the enumeration cap.
    #[error("shuffle representatives of type ({n}, {i}) out of range (cap {cap})")]
    ShuffleOutOfRange { n: usize, i: usize, cap: usize },

    /// Operation requires a larger basis (mixing needs dimension >= 2).
    #[error("basis dimension {dim} too small: this operation requires at least {required}")]
    DimensionTooSmall { dim: usize, required: usize },

    /// A word that was required to use only the generator letter did not.
    #[error("word {0} is not a pure generator word (letters other than 0 present)")]
    NotPureWord(Word),

    /// Cannot parse a word from its comma-separated form.
    #[error("cannot parse word {0:?}: expected comma-separated letter indices")]
    WordParse(String),

    /// A contraction matrix with operator norm above 1 (plus float slack).
    #[error("matrix is not a contraction: largest singular value {0} exceeds 1")]
    NotAContraction(f64),

    /// Matrix is not positive semidefinite under exact LDL^T elimination.
    #[error("matrix is not positive semidefinite: negative pivot at index {0}")]
    NotPositiveSemidefinite(usize),

    /// Mixing series need a minimum range to fit a decay rate.
    #[error("mixing series requires n_max >= {required}, got {got}")]
    SeriesTooShort { got: usize, required: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across the arithmetic, representation and law layers.
///
/// [`Error::is_internal`] separates contract violations a caller can trigger
/// with bad inputs from assertion failures that signal a bug in the workbench
/// itself; the CLI maps the former to exit code 2 and the latter to 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible mod {n}")]
    NotInvertible { a: i64, n: u64 },

    #[error("jacobi symbol needs an odd positive modulus, got {n}")]
    EvenModulus { n: u64 },

    #[error("{a} is not a quadratic residue mod {p}")]
    NotResidue { a: i64, p: u64 },

    #[error("quartic symbol undefined: {p} is not a quadratic residue mod {m}")]
    NotQuadraticResidue { p: i64, m: u64 },

    #[error("{m} divides {p}: symbol/order undefined")]
    SharesFactor { p: i64, m: u64 },

    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch { left: u64, right: u64 },

    #[error("ambiguous surd symbol for ({x} + {y}*sqrt(m)) mod {p}: conjugates disagree or both vanish")]
    AmbiguousSymbol { x: i64, y: i64, p: u64 },

    #[error("{m} is not a nonzero square mod {p}: surd symbol undefined")]
    NotSplit { m: u64, p: u64 },

    #[error("{n} is not an odd prime congruent to 1 mod 4 (or not an odd prime where one is required)")]
    BadResidueClass { n: u64 },

    #[error("no triple over m = {m} can satisfy the {target} convention")]
    NotConvertible { m: u64, target: &'static str },

    #[error("triple construction violated a theorem hypothesis: {what}")]
    PrecompositionFailure { what: String },

    #[error("({p}/{q}) != +1: pair laws need mutual quadratic residues")]
    NotMutualResidue { p: u64, q: u64 },

    #[error("fraction degenerates mod {q}: {what}")]
    DegenerateFraction { q: u64, what: String },

    #[error("square-root-of-minus-one check failed: {what}")]
    RootCheckFailed { what: String },

    #[error("triple has odd B = {b}: the sign lemma needs the even member in B")]
    OddB { b: i64 },

    #[error("unsupported report format: {0}")]
    UnsupportedFormat(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that indicate a workbench bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::AmbiguousSymbol { .. }
                | Error::RootCheckFailed { .. }
                | Error::PrecompositionFailure { .. }
                | Error::InternalAssertion(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

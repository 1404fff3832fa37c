use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a lattice basis")]
    NotALatticeBasis,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("budget exceeded: {what} needs {needed}, budget {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },
    #[error("level too small: {0}")]
    LevelTooSmall(String),
    #[error("vertex is not in the simplex")]
    NotInSimplex,
    #[error("path is not tight: {0}")]
    PathNotTight(String),
    #[error("subcomplex is not convex")]
    NotConvex,
    #[error("orientation inconsistency: {0}")]
    Orientation(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max entry residual {0:e})")]
    NotUnitary(f64),

    #[error("coin dimension must be 2 or 4, got {0}")]
    InvalidDimension(usize),

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("scaled position {0} lies outside the open support (-1/sqrt(2), 1/sqrt(2))")]
    OutsideSupport(f64),

    #[error("initial coin state has the wrong kind: expected {expected}")]
    WrongKind { expected: &'static str },

    #[error("particle count {0} is not supported here")]
    ParticleCount(usize),

    #[error("site tuple must be non-increasing")]
    UnorderedSites,

    #[error("site tuple has {got} entries for {expected} particles")]
    SiteArity { expected: usize, got: usize },

    #[error("grid size {0} must be even and at least 2")]
    InvalidGrid(usize),

    #[error("support [-{t}, {t}] does not fit on a periodic grid of {n} points")]
    GridTooSmall { t: usize, n: usize },

    #[error("scan resolution must be at least 2, got {0}")]
    Resolution(usize),

    #[error("eigendecomposition failed to converge at k = ({0}, {1})")]
    Eigensolver(f64, f64),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature tolerance unreachable: requested {requested:e}, achieved {achieved:e}")]
    ToleranceUnreachable {
        requested: f64,
        achieved: f64,
        /// Best estimate of the integral despite the missed tolerance.
        best: num_complex::Complex64,
    },

    #[error("precision target unreachable: requested {requested:e}, achieved {achieved:e}")]
    PrecisionUnreachable { requested: f64, achieved: f64 },

    #[error("evaluation too close to a pole at s = {0}")]
    PoleProximity(num_complex::Complex64),

    #[error("integer overflow in {0}")]
    Overflow(String),

    #[error("no local factor registered for prime {0}")]
    MissingPrime(u64),

    #[error("local factor at p={0} has no root data")]
    MissingRoots(u64),

    #[error("local factor roots at p={0} are not on the unit circle")]
    NonUnitaryRoots(u64),

    #[error("inconsistent local data: recurrence residual {residual:e} at p^{m}")]
    InconsistentLocalData { m: u32, residual: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("zero ordinates not monotone at line {0}")]
    NonMonotone(usize),

    #[error("zero count mismatch for {label}: finder {found} vs argument principle {expected} (gap near t in [{lo}, {hi}])")]
    CountMismatch {
        label: String,
        found: usize,
        expected: usize,
        lo: f64,
        hi: f64,
    },

    #[error("phase jump exceeds pi during argument tracking near {0}")]
    PhaseJump(num_complex::Complex64),

    #[error("zero store for {label} incomplete below T={requested} (complete to {complete})")]
    IncompleteStore {
        label: String,
        requested: f64,
        complete: f64,
    },

    #[error("no zeros ingested for label {0}")]
    MissingZeros(String),

    #[error("interpolation mismatch at n={n}: got {got}, target {target}")]
    InterpolationMismatch {
        n: u64,
        got: num_complex::Complex64,
        target: num_complex::Complex64,
    },

    #[error("series tail above tolerance: {0}")]
    SeriesTail(String),

    #[error("support condition violated: {0}")]
    Support(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

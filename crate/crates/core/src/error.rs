use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(u32),

    #[error("index for arity {p} needs {expected} statistics, got {got}")]
    IndexLength { p: u32, expected: usize, got: usize },

    #[error("layer index must be positive")]
    ZeroLayer,

    #[error("layer {n} is outside the built range 1..={n_max}")]
    LayerOutOfRange { n: u64, n_max: u64 },

    #[error("cell {ks:?} of layer {n} is outside the support")]
    OutsideSupport { n: u64, ks: Vec<u64> },

    #[error("cell ({n}, {k}, {l}) is outside the grid bounds ({n_max}, {k_max}, {l_max})")]
    GridOutOfRange {
        n: u64,
        k: u64,
        l: u64,
        n_max: u64,
        k_max: u64,
        l_max: u64,
    },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: u32, got: u32 },

    #[error("requested size {requested} exceeds the limit of {limit}")]
    TooLarge { requested: u128, limit: u128 },

    #[error("ballot probability needs a > b, got a = {a}, b = {b}")]
    BallotOrder { a: u64, b: u64 },

    #[error("not a valid lattice path: {0}")]
    InvalidPath(String),

    #[error("word must contain an even number of up steps and a positive net height")]
    BadCycleWord,

    #[error("unrecognized step character {0:?}")]
    BadStepChar(char),

    #[error("series caps differ: {0:?} vs {1:?}")]
    CapMismatch((usize, usize, usize), (usize, usize, usize)),

    #[error("swapping x and y needs equal x and y caps, got {0} and {1}")]
    AsymmetricCaps(usize, usize),

    #[error("series has no inverse: constant term is {0}")]
    NotInvertible(String),

    #[error("monomial t^{0} x^{1} y^{2} is outside the series caps")]
    OutOfCaps(usize, usize, usize),

    #[error("fixed-point iteration did not become stationary after {0} steps")]
    NonConvergence(usize),

    #[error("{0}")]
    Export(String),

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),

    #[error("cannot parse fault {0:?}")]
    BadFault(String),

    #[error("fault target {0} is not part of the selected suites")]
    FaultTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the descriptor engine and its supporting algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data has {found} entries, expected {expected}")]
    BadShape { expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("subsystem dimension {0} is invalid (must be at least 2)")]
    InvalidSubsystemDim(usize),

    #[error("layout must contain at least one subsystem")]
    EmptyLayout,

    #[error("total dimension {total} exceeds the configured cap {cap}")]
    LayoutTooLarge { total: usize, cap: usize },

    #[error("target {target} is out of range for {len} subsystems")]
    TargetOutOfRange { target: usize, len: usize },

    #[error("target {0} appears more than once")]
    DuplicateTarget(usize),

    #[error("subsystem {system} has dimension {dim}, a qubit is required")]
    NotAQubit { system: usize, dim: usize },

    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{gate}` takes {expected} parameter(s), got {found}")]
    GateArity {
        gate: String,
        expected: usize,
        found: usize,
    },

    #[error("gate `{gate}` acts on {expected} subsystem(s), got {found} target(s)")]
    TargetCount {
        gate: String,
        expected: usize,
        found: usize,
    },

    #[error("no component supplied for letter {letter} on qubit slot {slot}")]
    MissingComponent { slot: usize, letter: char },

    #[error("Pauli word has {found} letters, expected {expected}")]
    WordLength { expected: usize, found: usize },

    #[error("gate functional does not reproduce its gate (max deviation {deviation:e})")]
    FunctionalMismatch { deviation: f64 },

    #[error("step evolution is qubit-only; subsystem {system} has dimension {dim}")]
    QuditStep { system: usize, dim: usize },

    #[error("frames are not comparable: {0}")]
    FrameMismatch(String),

    #[error("subset must be non-empty")]
    EmptySubset,

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("no usable pivot found while recovering the unitary (largest {largest:e})")]
    DegeneratePivot { largest: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

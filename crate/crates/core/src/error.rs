use thiserror::Error;

/// Errors for contract violations at the library boundary.
///
/// Internal fixed-dimension arithmetic uses the un-checked operators and
/// cannot hit these; they surface only for caller-supplied shapes, states,
/// and parameters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("two-site operator at site {site} does not fit a chain of {chain} qubits")]
    SiteOutOfRange { site: usize, chain: usize },

    #[error("permutation arity {perm} does not match state on {qubits} qubits")]
    ArityMismatch { perm: usize, qubits: usize },

    #[error("sequence {0:?} is not a bijection on 1..=n")]
    NotAPermutation(Vec<usize>),

    #[error("state vector length {len} is not 2^{qubits}")]
    BadAmplitudeCount { qubits: usize, len: usize },

    #[error("non-finite entry encountered (NaN or infinity)")]
    NonFinite,

    #[error("state norm {norm} deviates from 1 by more than {max_dev}")]
    NotNormalized { norm: f64, max_dev: f64 },

    #[error("chain length {0} too short, relations need at least 3 sites")]
    ChainTooShort(usize),

    #[error("velocity pole: 1 + tan(th1/2)tan(th2/2) vanishes, th2 = pi")]
    VelocityPole,

    #[error("spectral angle {0} outside (-pi, pi)")]
    AngleOutOfRange(f64),

    #[error("triplet label m_s = {0} not in {{-1, 0, +1}}")]
    InvalidSpinLevel(i8),

    #[error("{steps} steps cannot resolve the phase winding (single-step phase {phase} > pi/2)")]
    WindingUnresolved { steps: usize, phase: f64 },

    #[error("berry integration needs at least 100 steps, got {0}")]
    TooFewSteps(usize),

    #[error("vartheta {0} outside [0, pi]")]
    VarthetaOutOfRange(f64),

    #[error("internal consistency failure in {context}: residual {residual:.3e} (transcription bug)")]
    InternalConsistency { context: String, residual: f64 },

    #[error("taylor_exp needs at least one term")]
    NoTerms,
}

pub type Result<T> = std::result::Result<T, Error>;

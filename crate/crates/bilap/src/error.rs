use thiserror::Error;

/// Errors surfaced by grid operations, operator application, and suite I/O.
#[derive(Debug, Error)]
pub enum BilapError {
    /// Input carries more than the allowed relative energy above the
    /// anti-aliasing cutoff `|k_i| < N/3`.
    #[error("band limit exceeded: {fraction:.3e} of the energy sits above the N/3 cutoff (limit {limit:.1e})")]
    BandLimitExceeded { fraction: f64, limit: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("dimension error: operation requires d = {required}, grid has d = {actual}")]
    DimensionError { required: usize, actual: usize },

    /// The field's spectrum extends past the dyadic scales the frame covers.
    #[error("scale range error: {fraction:.3e} of the spectral energy lies above the covered band |xi| <= {max_freq:.3e}")]
    ScaleRangeError { fraction: f64, max_freq: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("config error: {0}")]
    ConfigError(String),

    #[error("format error in {path}: {message}")]
    FormatError { path: String, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, BilapError>;

impl BilapError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        BilapError::Io { path: path.into(), source }
    }
}

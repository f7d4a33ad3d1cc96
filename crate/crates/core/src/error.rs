use thiserror::Error;

/// Which density-operator invariant a candidate operator failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityViolation {
    NotHermitian,
    TraceNotOne,
    NegativeEigenvalue,
}

impl std::fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DensityViolation::NotHermitian => "not Hermitian",
            DensityViolation::TraceNotOne => "trace is not 1",
            DensityViolation::NegativeEigenvalue => "negative eigenvalue",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite complex component ({re}, {im})")]
    NonFinite { re: f64, im: f64 },

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density operator: {0}")]
    InvalidDensity(DensityViolation),

    #[error("derivative operator is not traceless (trace {0:e})")]
    TraceNotZero(f64),

    #[error("layer index {layer} outside -{ell}..={ell}")]
    LayerOutOfRange { layer: i64, ell: u32 },

    #[error("layer count must be odd and positive, got {0}")]
    EvenLayerCount(u64),

    #[error("invalid clock configuration: {0}")]
    InvalidConfig(String),

    #[error("input `{0}` must be strictly positive")]
    NonPositiveInput(&'static str),

    #[error("a single layer never dephases; divergence times need ell >= 1")]
    SingleLayerNoDivergence,

    #[error("estimator needs at least one sample")]
    EmptySample,

    #[error("wavelength must be positive, got {0} nm")]
    NonPositiveWavelength(f64),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("config file: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

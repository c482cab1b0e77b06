use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("regulator {eps:e} is ill-conditioned for lag {lag:e}")]
    IllConditioned { eps: f64, lag: f64 },

    #[error("residue at {re:.6e}{im:+.6e}i did not converge after {shrinks} radius reductions")]
    ResidueNotConverged { re: f64, im: f64, shrinks: usize },

    #[error("image sum tail {tail:e} exceeds tolerance (N = {n})")]
    TruncationTooSmall { tail: f64, n: usize },

    #[error("extrapolation sequence is not converging (last step {last:e}, first step {first:e})")]
    UnreliableExtrapolation { first: f64, last: f64 },

    #[error("quadrature did not reach tolerance on [{lo}, {hi}]")]
    QuadratureFailed { lo: f64, hi: f64 },

    #[error("same-atom spectral value has imaginary part {im:e}")]
    ImaginarySameAtom { im: f64 },

    #[error("cross-atom rates are complex (imaginary part {im:e}); the coupled-basis equations need real cross rates")]
    ComplexCrossRates { im: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("step size underflow at tau = {tau}")]
    StepSizeUnderflow { tau: f64 },

    #[error("scenario `{name}`: {source}")]
    Scenario {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than numerics.
    pub fn is_config(&self) -> bool {
        match self {
            Error::InvalidParameter(_)
            | Error::Config(_)
            | Error::NonFinite(_)
            | Error::Json(_)
            | Error::ComplexCrossRates { .. } => true,
            Error::Scenario { source, .. } => source.is_config(),
            _ => false,
        }
    }

    pub(crate) fn in_scenario(self, name: &str) -> Error {
        match self {
            e @ Error::Scenario { .. } => e,
            e => Error::Scenario {
                name: name.to_string(),
                source: Box::new(e),
            },
        }
    }
}

pub(crate) fn ensure_finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}

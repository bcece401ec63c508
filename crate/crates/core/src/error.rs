use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its domain ({constraint})")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("expected real input, found imaginary part {0:e}")]
    NotReal(f64),
    #[error("measure is not conjugation-symmetric: {0}")]
    Asymmetric(String),
    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("invalid Verblunsky sequence: {0}")]
    InvalidSequence(String),
    #[error("acceptance rate {0:e} below the supported floor")]
    EnvelopeTooLoose(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_domain(
    ok: bool,
    name: &'static str,
    value: f64,
    constraint: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            constraint,
        })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("converse is not involutive at atom `{0}`")]
    ConverseNotInvolutive(String),
    #[error("identity: {0}")]
    Identity(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed spec string `{0}`")]
    Spec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("inconsistent start: {0}")]
    InconsistentStart(String),
    #[error("mixed dimensions in matrix list: {0} vs {1}")]
    MixedDimensions(usize, usize),
    #[error("not in normal form: {0}")]
    NotNormalForm(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

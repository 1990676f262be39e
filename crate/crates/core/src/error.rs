use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("invalid comparison: {0}")]
    InvalidComparison(String),
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("hyperplane is not a face: {0}")]
    NotAFace(String),
    #[error("invalid operands: {0}")]
    InvalidOperands(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported class: {0}")]
    UnsupportedClass(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("unsupported chart: {0}")]
    UnsupportedChart(String),
    #[error("class is not pseudoeffective: {0}")]
    NotPseudoeffective(String),
    #[error("class is not big: {0}")]
    NotBig(String),
    #[error("family is not effective: {0}")]
    NotEffective(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

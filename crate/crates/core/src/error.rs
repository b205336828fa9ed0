use thiserror::Error;

/// Failures raised by the library. Each variant carries a stable code
/// (see [`Error::code`]) used in reports and by the command line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("units {units:?} do not form a single orbit")]
    NotOrbit { units: Vec<String> },
    #[error("unit {unit} has isotropy of order {order} inside the claimed main orbit")]
    Isotropy { unit: String, order: usize },
    #[error("unit set is not invariant: arrow {arrow} crosses it")]
    NotInvariant { arrow: String },
    #[error("not a group: {0}")]
    BadGroup(String),
    #[error("operands live on different groupoids")]
    ParentMismatch,
    #[error("unknown unit {0}")]
    UnknownUnit(String),
    #[error("range map on the fiber of {unit} is not injective")]
    NotPrincipal { unit: String },
    #[error("matrix is not normal (commutator norm {defect:e})")]
    NotNormal { defect: f64 },
    #[error("matrix is not self-adjoint (defect {defect:e})")]
    NotSelfAdjoint { defect: f64 },
    #[error("radius {radius} is smaller than the bandwidth {bandwidth}")]
    Radius { radius: usize, bandwidth: usize },
    #[error("boundary group at {0} is not abelian")]
    NotAbelian(String),
    #[error("bad model: {0}")]
    BadModel(String),
    #[error("support of the cutoff meets the boundary spectrum (gap {gap})")]
    HypothesisFails { gap: f64 },
    #[error("cannot separate the support from the boundary: radius {needed} needed, {available} available")]
    NoSeparation { needed: usize, available: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotOrbit { .. } => "E_NOT_ORBIT",
            Error::Isotropy { .. } => "E_ISOTROPY",
            Error::NotInvariant { .. } => "E_NOT_INVARIANT",
            Error::BadGroup(_) => "E_BAD_GROUP",
            Error::ParentMismatch => "E_PARENT_MISMATCH",
            Error::UnknownUnit(_) => "E_UNKNOWN_UNIT",
            Error::NotPrincipal { .. } => "E_NOT_PRINCIPAL",
            Error::NotNormal { .. } => "E_NOT_NORMAL",
            Error::NotSelfAdjoint { .. } => "E_NOT_SELFADJOINT",
            Error::Radius { .. } => "E_RADIUS",
            Error::NotAbelian(_) => "E_NOT_ABELIAN",
            Error::BadModel(_) => "E_BAD_MODEL",
            Error::HypothesisFails { .. } => "E_HYPOTHESIS_FAILS",
            Error::NoSeparation { .. } => "E_NO_SEPARATION",
            Error::Parse { .. } => "E_PARSE",
            Error::Structure(_) => "E_STRUCTURE",
            Error::Numerical(_) => "E_NUMERICAL",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

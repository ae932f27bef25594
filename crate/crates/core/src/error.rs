use thiserror::Error;

/// Errors produced by table construction, ingestion, scoring and rendering.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate row for key ({x}, {y}, {score}, {group})")]
    DuplicateKey {
        x: String,
        y: String,
        score: String,
        group: String,
    },
    #[error("variable `{0}` paired with itself")]
    SelfPair(String),
    #[error("empty variable name")]
    EmptyName,
    #[error("value {value} for score `{score}` outside registered range [{lo}, {hi}]")]
    RangeViolation {
        score: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricInput(String, String),
    #[error("duplicate matrix label `{0}`")]
    DuplicateLabels(String),
    #[error("matrix shape does not match its labels")]
    ShapeMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("threshold must be finite")]
    NonFiniteThreshold,

    #[error("value `{value}` is not a level of column `{column}`")]
    UnknownLevel { value: String, column: String },
    #[error("cannot parse row {row}, column `{column}`: {message}")]
    ParseError {
        row: usize,
        column: String,
        message: String,
    },
    #[error("schema column `{0}` not present in data")]
    SchemaColumnMissing(String),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("column `{0}` not found")]
    ColumnNotFound(String),

    #[error("input lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("too few observations: need {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scatterplot has a constant axis")]
    DegenerateCloud,

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error("column `{0}` is not a factor")]
    NotAFactor(String),
    #[error("group label `all` is reserved")]
    ReservedGroup,
    #[error("measure `{measure}` does not apply to {pair_type} pairs")]
    IneligibleSlot { measure: String, pair_type: String },

    #[error("unknown order `{0}`")]
    UnknownOrder(String),
    #[error("nothing to plot: table is empty")]
    EmptyTable,

    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed score table: {0}")]
    MalformedTable(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

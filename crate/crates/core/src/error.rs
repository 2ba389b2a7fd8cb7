use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("{field} must be positive, got {value}")]
    NonPositiveRate { field: &'static str, value: f64 },

    #[error("intensity0 must equal baseline + jump * q0 = {expected}, got {actual}")]
    AffineMismatch { expected: f64, actual: f64 },

    #[error("{model} requires field `{field}`")]
    MissingField { model: &'static str, field: &'static str },

    #[error("query time {t} outside path horizon [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error("invalid parameters: {0}")]
    Constraint(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),

    #[error("json failure: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed event record: {0}")]
    Parse(String),
}

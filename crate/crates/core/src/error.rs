use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument or field is outside its admissible range.
    #[error("`{field}` = {value} violates {rule}")]
    Domain {
        field: String,
        value: f64,
        rule: &'static str,
    },

    #[error("invalid member `{id}`: {reason}")]
    InvalidMember { id: String, reason: String },

    #[error("singular market: b + d = {0} (supply and demand slopes cancel)")]
    SingularMarket(f64),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("investors overfund the project: total investment {invested} exceeds costs {costs}")]
    Overfunded { invested: f64, costs: f64 },

    #[error("level {0} has employees but zero total performance samples")]
    EmptyLevel(u32),

    #[error("hurwicz option {index} has optimistic payoff {optimistic} below pessimistic payoff {pessimistic}")]
    InvertedPayoffs {
        index: usize,
        optimistic: f64,
        pessimistic: f64,
    },

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("ledger corrupt at entry {0}")]
    CorruptLedger(u64),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(field: impl Into<String>, value: f64, rule: &'static str) -> Self {
        Error::Domain {
            field: field.into(),
            value,
            rule,
        }
    }

    /// True for errors caused by reading or writing storage.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

/// Rejects NaN, infinities and negatives.
pub(crate) fn non_negative(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be finite and >= 0"))
    }
}

pub(crate) fn finite(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be finite"))
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {index} has non-positive width {width}")]
    NonPositiveWidth { index: usize, width: i64 },

    #[error("element {index} is outside the supported range (|a| <= 2^31, w <= 2^31)")]
    OutOfRange { index: usize },

    #[error("invalid width bounds: w_min={w_min}, w_max={w_max} (need 0 < w_min <= w_max)")]
    InvalidBounds { w_min: i64, w_max: i64 },

    #[error("empty input sequence")]
    EmptySequence,

    #[error("no segment satisfies the width bounds")]
    NoFeasibleSegment,

    #[error("upper width bound {w_max} is below the total width {total}")]
    EffectiveUpperBound { w_max: i64, total: i64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

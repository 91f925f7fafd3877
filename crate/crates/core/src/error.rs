use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bitmap: {0}")]
    InvalidBitmap(String),

    #[error("malformed RLE in row {row}: runs sum to {sum}, expected width {width}")]
    MalformedRle { row: usize, sum: usize, width: usize },

    #[error("malformed RLE in row {row}: run {index} has zero length")]
    ZeroRun { row: usize, index: usize },

    #[error("column {x} is out of bounds for width {width}")]
    OutOfBounds { x: usize, width: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty row range")]
    EmptyRange,

    #[error("occupancy widths differ ({left} vs {right})")]
    WidthMismatch { left: usize, right: usize },

    #[error("no gaps to average")]
    NoGaps,

    #[error("text line has no foreground")]
    EmptyLine,

    #[error("word has no foreground")]
    EmptyWord,

    #[error("ground truth is empty")]
    EmptyGroundTruth,

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

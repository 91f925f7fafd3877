use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    EmptyInput(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::EmptyInput(m) => write!(f, "empty input: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub const OK: u8 = 0;
pub const USAGE: u8 = 1;
pub const EMPTY: u8 = 2;
pub const EVAL: u8 = 3;
pub const PARSE: u8 = 4;

/// Exit code for the first recognised error in the chain.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use rleseg::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Usage(_) => USAGE,
                CliError::EmptyInput(_) => EMPTY,
            };
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::EmptyLine | E::EmptyWord => EMPTY,
                E::EmptyGroundTruth | E::NoGaps => EVAL,
                E::InvalidParams(_) => USAGE,
                _ => PARSE,
            };
        }
        if cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return PARSE;
        }
    }
    PARSE
}

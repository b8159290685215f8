use std::path::PathBuf;

use homcurve::{ParseError, ParseErrorKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input; `rendered` shows the input with a caret marker.
    #[error("{rendered}")]
    Parse { rendered: String, error: ParseError },
    /// Valid syntax the requested analysis cannot take: degree below 3,
    /// the zero form, decimals in exact mode.
    #[error("{0}")]
    Unsupported(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(homcurve::Error),
}

impl CliError {
    pub fn parse(input: &str, error: ParseError) -> CliError {
        let rendered = error.render(input);
        if error.kind == ParseErrorKind::FloatInExactMode {
            return CliError::Unsupported(format!(
                "{rendered}\nuse --backend float for decimal coefficients"
            ));
        }
        CliError::Parse { rendered, error }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for parse errors, 3 for degree or backend violations, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Unsupported(_) => 3,
            CliError::Io { .. } | CliError::Core(_) => 1,
        }
    }
}

impl From<homcurve::Error> for CliError {
    fn from(e: homcurve::Error) -> CliError {
        use homcurve::Error as E;
        match e {
            E::DegreeTooLow { .. } | E::ZeroForm | E::ExactBackendRequired => {
                CliError::Unsupported(e.to_string())
            }
            E::Parse(p) => CliError::Parse {
                rendered: p.to_string(),
                error: p,
            },
            other => CliError::Core(other),
        }
    }
}

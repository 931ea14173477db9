use std::path::PathBuf;

use feelab::{Error, ErrorKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid value for {flag}: {message}")]
    Flag { flag: &'static str, message: String },
    #[error("invalid config file {}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("{command} failed ({kind:?}): {source}", kind = source.kind())]
    Core {
        command: &'static str,
        source: Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn flag(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Flag {
            flag,
            message: message.into(),
        }
    }

    /// 0 success, 1 IO, 2 invalid input, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Flag { .. } | CliError::Config { .. } => 2,
            CliError::Core { source, .. } => match source.kind() {
                ErrorKind::Validation | ErrorKind::Domain | ErrorKind::Range => 2,
                ErrorKind::NonConvergence | ErrorKind::NonFinite | ErrorKind::NoBracket => 3,
            },
            CliError::Io { .. } | CliError::Output(_) => 1,
        }
    }
}

/// Attaches a flag name to a core validation error.
pub(crate) fn on_flag(flag: &'static str) -> impl Fn(Error) -> CliError {
    move |e| CliError::flag(flag, e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use feelab::NumericsError;

    #[test]
    fn exit_codes() {
        let core = |source| CliError::Core {
            command: "swap",
            source,
        };
        assert_eq!(CliError::flag("--dx", "negative").exit_code(), 2);
        assert_eq!(
            core(Error::Domain {
                what: "t",
                value: 0.5
            })
            .exit_code(),
            2
        );
        assert_eq!(
            core(NumericsError::NonConvergence { limit: 60 }.into()).exit_code(),
            3
        );
        let io = CliError::Io {
            path: "x".into(),
            source: std::io::Error::other("boom"),
        };
        assert_eq!(io.exit_code(), 1);
    }
}

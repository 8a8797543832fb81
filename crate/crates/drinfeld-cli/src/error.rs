//! The command-line error type.  Every failure path funnels into `CliError`,
//! which renders as a single `error: ...` line on stderr and exits with
//! status 1.  Verdict mismatches (a check that legitimately came out the
//! unexpected way) are not errors; they exit with status 2.

use std::fmt;
use std::path::PathBuf;

use drinfeld::algebra::text::TextError;
use drinfeld::algebra::FieldError;
use drinfeld::forms::FormsError;
use drinfeld::hecke::HeckeError;
use drinfeld::io::IoError;
use drinfeld::verify::VerifyError;

#[derive(Debug)]
pub enum CliError {
    /// A flag or spec the parser accepted but the command cannot use.
    Usage(String),
    /// Filesystem trouble on `path`.
    Io { path: PathBuf, err: String },
    Text(TextError),
    Field(FieldError),
    Forms(FormsError),
    Hecke(HeckeError),
    Verify(VerifyError),
    /// A document that fails to parse or belongs to a different field.
    Wire(IoError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Text(e) => write!(f, "{e}"),
            CliError::Field(e) => write!(f, "{e}"),
            CliError::Forms(e) => write!(f, "{e}"),
            CliError::Hecke(e) => write!(f, "{e}"),
            CliError::Verify(e) => write!(f, "{e}"),
            CliError::Wire(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<TextError> for CliError {
    fn from(e: TextError) -> CliError {
        CliError::Text(e)
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> CliError {
        CliError::Field(e)
    }
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> CliError {
        CliError::Forms(e)
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> CliError {
        CliError::Hecke(e)
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> CliError {
        CliError::Verify(e)
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> CliError {
        CliError::Wire(e)
    }
}

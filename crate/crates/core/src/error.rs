use std::fmt;

/// Error classes shared by every module. Each class maps to exactly one CLI
/// exit status (see [`ErrorKind::exit_status`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    InvalidArgument,
    Arithmetic,
    UnsupportedFeature,
    ResourceLimit,
    InternalInvariant,
    Precision,
    NoSqrtInF,
    FieldExtensionRequired,
}

impl ErrorKind {
    /// Machine-readable code used in error JSON.
    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::InvalidArgument => "invalid-argument",
            ErrorKind::Arithmetic => "arithmetic-error",
            ErrorKind::UnsupportedFeature => "unsupported-feature",
            ErrorKind::ResourceLimit => "resource-limit",
            ErrorKind::InternalInvariant => "internal-invariant-violation",
            ErrorKind::Precision => "precision-error",
            ErrorKind::NoSqrtInF => "no-sqrt-in-F",
            ErrorKind::FieldExtensionRequired => "field-extension-required",
        }
    }

    pub fn exit_status(self) -> i32 {
        match self {
            ErrorKind::InternalInvariant => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{module}: {kind}: {message}")]
pub struct Error {
    pub kind: ErrorKind,
    pub module: &'static str,
    pub message: String,
}

impl Error {
    pub fn new(kind: ErrorKind, module: &'static str, message: impl Into<String>) -> Self {
        Error {
            kind,
            module,
            message: message.into(),
        }
    }

    pub fn invalid(module: &'static str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::InvalidArgument, module, message)
    }

    pub fn invariant(module: &'static str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::InternalInvariant, module, message)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

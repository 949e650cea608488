use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("overflow in {func}: result exceeds the representable range")]
    Overflow { func: &'static str },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("ill-conditioned Gram matrix in class {class}: pivot {pivot:e} below {threshold:e}")]
    IllConditioned { class: i64, pivot: f64, threshold: f64 },

    #[error("degenerate fit window: {0}")]
    Window(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("decomposition failed: {0}")]
    Linalg(String),

    #[error("malformed matrix file at line {line}: {detail}")]
    Format { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { func, detail: detail.into() }
}

impl Error {
    /// Short machine-readable tag used in JSON diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Overflow { .. } => "overflow",
            Error::Degenerate(_) => "degenerate",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::Window(_) => "window",
            Error::Dimension(_) => "dimension",
            Error::Linalg(_) => "linalg",
            Error::Format { .. } => "format",
            Error::Io(_) => "io",
        }
    }
}

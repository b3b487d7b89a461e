use std::fmt::Display;

/// Error with its process exit code: 1 for numeric or verification
/// failures, 2 for usage and validation errors.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(e: impl Into<anyhow::Error>) -> Self {
        Self { code: 2, error: e.into() }
    }

    pub fn numeric(e: impl Into<anyhow::Error>) -> Self {
        Self { code: 1, error: e.into() }
    }
}

pub trait OrFail<T> {
    fn or_usage(self, ctx: impl Display + Send + Sync + 'static) -> Result<T, Failure>;
    fn or_numeric(self, ctx: impl Display + Send + Sync + 'static) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrFail<T> for Result<T, E> {
    fn or_usage(self, ctx: impl Display + Send + Sync + 'static) -> Result<T, Failure> {
        self.map_err(|e| Failure::usage(e.into().context(ctx)))
    }

    fn or_numeric(self, ctx: impl Display + Send + Sync + 'static) -> Result<T, Failure> {
        self.map_err(|e| Failure::numeric(e.into().context(ctx)))
    }
}

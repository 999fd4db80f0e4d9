//! Verification suites over the `torelli` crate, machine-readable reports and a
//! certificate checker.

pub mod certify;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use certify::{check_certificate, check_certificate_text, RelatorClosure};
pub use report::{Case, Params, Status, SuiteReport};
pub use suites::{resolve_params, run_suite, Suite};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerikitError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Lpres(#[from] torelli::lpres::LpresError),
    #[error(transparent)]
    Sym(#[from] torelli::symgen::SymError),
    #[error(transparent)]
    Twisted(#[from] torelli::twisted::TwistedError),
}

/// Run `f` on a rayon pool capped by `VERIKIT_THREADS`, if set.
pub fn with_threads<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, VerikitError> {
    match std::env::var("VERIKIT_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| VerikitError::Parse(format!("VERIKIT_THREADS={v:?} is not a count")))?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| VerikitError::Unsupported(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

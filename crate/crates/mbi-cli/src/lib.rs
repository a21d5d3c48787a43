//! Command-line front end: run configuration, simulations, the algebra suite and decay reports.

pub mod config;
pub mod error;
pub mod report;
pub mod simulate;
pub mod verify;

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use report::{decay_report, DecayReport};
pub use simulate::{simulate, RunSummary};
pub use verify::{verify_algebra, Mutation};

/// Environment variable selecting the number of worker threads.
pub const WORKERS_ENV: &str = "MBI_WORKERS";

/// Runs `f` on a pool sized by [`WORKERS_ENV`], or on the global pool when it is unset.
pub fn with_workers<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let threads: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| CliError::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Config(format!("cannot build thread pool: {e}")))?;
            pool.install(f)
        }
        Err(_) => f(),
    }
}

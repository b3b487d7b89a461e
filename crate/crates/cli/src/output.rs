use serde::Serialize;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::failure::{Failure, OrFail};

/// Environment variable selecting the worker count for grid computations.
pub const THREADS_ENV: &str = "VORTRANS_THREADS";

/// Reals with 17 significant digits so every double round-trips.
pub fn real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).or_usage(format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes a header and rows as comma-separated values with LF endings.
pub fn write_csv(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink(path)?);
    w.write_record(header).or_numeric("writing CSV")?;
    for r in rows {
        w.write_record(r).or_numeric("writing CSV")?;
    }
    w.flush().or_numeric("writing CSV")?;
    Ok(())
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), Failure> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value).or_numeric("writing JSON")?;
    writeln!(out).or_numeric("writing JSON")?;
    Ok(())
}

/// Worker count from the environment; `None` (serial) when unset.
pub fn threads() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::usage(anyhow::anyhow!("{THREADS_ENV}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::usage(anyhow::anyhow!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Maps `f` over `items`, in parallel when a worker count is configured.
/// The output order always follows `items`.
pub fn map_grid<I, O, F>(items: &[I], f: F) -> Result<Vec<O>, Failure>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> Result<O, Failure> + Sync + Send,
{
    match threads()? {
        None => items.iter().map(&f).collect(),
        Some(n) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .or_numeric("starting worker pool")?;
            pool.install(|| items.par_iter().map(&f).collect())
        }
    }
}

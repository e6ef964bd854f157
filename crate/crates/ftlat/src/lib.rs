//! Schedule and α files, the parallel malignant-pair sweep and the `ftlat`
//! command line, on top of `ftlat-core`.

pub mod alpha_io;
pub mod cli;
pub mod format;
pub mod report;
pub mod sweep;

use std::path::Path;

use ftlat_core::lattice::Schedule;

pub use format::{parse_schedule, print_schedule, Mode, ParseError};

/// Version of every JSON document this tool writes.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: {1}")]
    Parse(String, ParseError),
    #[error("bad alpha matrix: {0}")]
    Alpha(String),
    #[error(transparent)]
    Core(#[from] ftlat_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// Name of the literal appendix preparation among the `builtin:` sources.
pub const APPENDIX_PREP0: &str = "prep0_appendix";

/// Loads `builtin:<name>` or a schedule file.
pub fn load_schedule(source: &str, mode: Mode) -> Result<Schedule, Error> {
    if let Some(name) = source.strip_prefix("builtin:") {
        if name == APPENDIX_PREP0 {
            return Ok(ftlat_core::lattice::appendix_prep0());
        }
        return Ok(ftlat_core::lattice::builtin(name)?);
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| Error::Io(source.into(), e))?;
    parse_schedule(&text, mode).map_err(|e| Error::Parse(source.into(), e))
}

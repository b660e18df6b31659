use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// Every JSON artifact: tool version, the effective configuration, a
/// timestamp and the command payload.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, C: Serialize, P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: String,
    pub config: &'a C,
    pub payload: &'a P,
}

impl<'a, C: Serialize, P: Serialize> Envelope<'a, C, P> {
    pub fn new(config: &'a C, payload: &'a P) -> Self {
        Self {
            tool: "mu-domains",
            version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            config,
            payload,
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// To `--out` when given, otherwise stdout.
pub fn emit(out: Option<&Path>, contents: &str) -> std::io::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `x` rounded to 12 significant digits, printed in shortest form.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round trip");
    format!("{rounded}")
}

pub fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn csv_text(meta_json: &str, xy: &[(f64, f64)]) -> String {
    let mut s = format!("# json-meta: {}\nx,y\n", sha256_hex(meta_json.as_bytes()));
    for &(x, y) in xy {
        s.push_str(&format!("{},{}\n", sig12(x), sig12(y)));
    }
    s
}

/// Sidecar of a CSV file: same stem, `.json` extension.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes a curve as CSV plus sidecar, or as JSON; stdout when `out` is
/// absent (CSV then goes without its sidecar).
pub fn emit<T: Serialize>(meta: &T, xy: &[(f64, f64)], out: Option<&Path>, format: Format) -> CliResult<()> {
    let json = pretty_json(meta);
    match (format, out) {
        (Format::Json, Some(path)) => write_file(path, &json),
        (Format::Csv, Some(path)) => {
            if path.extension().is_some_and(|e| e == "json") {
                return Err(CliError::Config(format!("{}: CSV output would collide with its JSON sidecar", path.display())));
            }
            write_file(&sidecar_path(path), &json)?;
            write_file(path, &csv_text(&json, xy))
        }
        (Format::Json, None) => print(&json),
        (Format::Csv, None) => print(&csv_text(&json, xy)),
    }
}

pub fn print(text: &str) -> CliResult<()> {
    std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

//! Outpost month files: `YYYY-MM.txt`, one source identifier (dotted quad)
//! per line.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use darkscope_core::addr::{index_to_ip, ip_to_index};
use darkscope_core::correlation::OutpostWindow;
use darkscope_core::timecoord;

use super::{read_file_string, write_file_bytes};
use crate::error::CliError;

/// Read every `YYYY-MM.txt` in a directory into outpost windows, sorted by
/// month. Files with a `.txt` extension but an unparsable stem are
/// rejected; other files are ignored.
pub fn read_outpost_dir(dir: &Path, space: &str) -> Result<Vec<OutpostWindow<u32>>, CliError> {
    let mut windows = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some("txt") {
            continue;
        }
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        let (year, month) = timecoord::parse_year_month(&stem).map_err(|_| {
            CliError::data(format!(
                "{}: month files must be named YYYY-MM.txt",
                path.display()
            ))
        })?;
        let mut sources = BTreeSet::new();
        for (lineno, line) in read_file_string(&path)?.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let idx = ip_to_index(line).map_err(|_| {
                CliError::data(format!(
                    "{} line {}: bad source identifier {line:?}",
                    path.display(),
                    lineno + 1
                ))
            })?;
            sources.insert(idx);
        }
        windows.push(OutpostWindow {
            label: stem,
            t: timecoord::month_center(year, month),
            space: space.to_string(),
            sources,
        });
    }
    if windows.is_empty() {
        return Err(CliError::usage(format!(
            "no YYYY-MM.txt outpost files found in {}",
            dir.display()
        )));
    }
    windows.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(windows)
}

/// Write one month window; sources are emitted in index order so output is
/// deterministic.
pub fn write_month_file(
    dir: &Path,
    label: &str,
    sources: &BTreeSet<u32>,
) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{label}.txt"));
    let mut body = String::new();
    for &idx in sources {
        body.push_str(&index_to_ip(idx));
        body.push('\n');
    }
    write_file_bytes(&path, body.as_bytes())?;
    Ok(path)
}

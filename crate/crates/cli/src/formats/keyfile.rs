//! Anonymization key files: 64 hex characters (32 bytes), surrounding
//! whitespace ignored.

use std::path::{Path, PathBuf};

use darkscope_core::anonymize::AnonymizationKey;

use super::read_file_string;
use crate::error::CliError;

/// Environment variable naming the default key file, consulted when no
/// `--key-file` flag is given.
pub const KEY_FILE_ENV: &str = "DARKSCOPE_KEY_FILE";

pub fn parse_hex_key(text: &str) -> Result<[u8; 32], String> {
    let text = text.trim();
    if text.len() != 64 {
        return Err(format!(
            "key must be 64 hex characters, got {}",
            text.len()
        ));
    }
    let mut bytes = [0u8; 32];
    for (i, pair) in text.as_bytes().chunks_exact(2).enumerate() {
        let hex = std::str::from_utf8(pair).map_err(|_| "non-ASCII key text".to_string())?;
        bytes[i] = u8::from_str_radix(hex, 16).map_err(|_| format!("bad hex at byte {i}"))?;
    }
    Ok(bytes)
}

/// Resolve the key: the flag wins, then the environment variable, then no
/// anonymization at all.
pub fn load_key(flag: Option<&Path>) -> Result<Option<AnonymizationKey>, CliError> {
    let path: Option<PathBuf> = flag
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(KEY_FILE_ENV).map(PathBuf::from));
    let Some(path) = path else {
        return Ok(None);
    };
    let text = read_file_string(&path)?;
    let bytes = parse_hex_key(&text)
        .map_err(|why| CliError::usage(format!("{}: {why}", path.display())))?;
    let key = AnonymizationKey::new(bytes)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(Some(key))
}

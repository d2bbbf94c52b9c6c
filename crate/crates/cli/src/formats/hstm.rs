//! Binary traffic-matrix format.
//!
//! Layout, all little-endian: magic "HSTM", format version (u16), nnz
//! (u64), then nnz triples of (src u32, dst u32, count u64) in strict
//! (src, dst) order. Sorted storage makes serialization bit-exact: equal
//! matrices produce identical bytes.

use std::path::Path;

use darkscope_core::{EdgeTriple, TrafficMatrix};

use super::{read_file_bytes, write_file_bytes};
use crate::error::CliError;

pub const MAGIC: [u8; 4] = *b"HSTM";
pub const VERSION: u16 = 1;

const HEADER_LEN: usize = 4 + 2 + 8;
const TRIPLE_LEN: usize = 4 + 4 + 8;

pub fn to_bytes(matrix: &TrafficMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + matrix.nnz() * TRIPLE_LEN);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(matrix.nnz() as u64).to_le_bytes());
    for t in matrix.entries() {
        out.extend_from_slice(&t.src.to_le_bytes());
        out.extend_from_slice(&t.dst.to_le_bytes());
        out.extend_from_slice(&t.count.to_le_bytes());
    }
    out
}

pub fn parse_bytes(bytes: &[u8]) -> Result<TrafficMatrix, CliError> {
    if bytes.len() < HEADER_LEN {
        return Err(CliError::data("matrix file truncated before header"));
    }
    if bytes[..4] != MAGIC {
        return Err(CliError::data("bad magic; not a traffic-matrix file"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(CliError::data(format!(
            "unsupported format version {version}, expected {VERSION}"
        )));
    }
    let nnz = u64::from_le_bytes(bytes[6..14].try_into().expect("8 bytes")) as usize;
    let body = &bytes[HEADER_LEN..];
    let expected = nnz
        .checked_mul(TRIPLE_LEN)
        .ok_or_else(|| CliError::data("nnz overflows the file size"))?;
    if body.len() < expected {
        return Err(CliError::data(format!(
            "matrix file truncated: {nnz} triples promised, {} bytes present",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(CliError::data("trailing bytes after final triple"));
    }
    let mut entries = Vec::with_capacity(nnz);
    for chunk in body.chunks_exact(TRIPLE_LEN) {
        entries.push(EdgeTriple::new(
            u32::from_le_bytes(chunk[0..4].try_into().expect("4 bytes")),
            u32::from_le_bytes(chunk[4..8].try_into().expect("4 bytes")),
            u64::from_le_bytes(chunk[8..16].try_into().expect("8 bytes")),
        ));
    }
    TrafficMatrix::from_sorted_triples(entries).map_err(CliError::from)
}

pub fn write_file(path: &Path, matrix: &TrafficMatrix) -> Result<(), CliError> {
    write_file_bytes(path, &to_bytes(matrix))
}

pub fn read_file(path: &Path) -> Result<TrafficMatrix, CliError> {
    parse_bytes(&read_file_bytes(path)?).map_err(|e| match e {
        CliError::DataQuality(msg) => CliError::data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

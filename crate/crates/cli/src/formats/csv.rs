//! Text interchange: matrix triples as `src,dst,count` lines and packet
//! logs as `timestamp,src,dst` lines with dotted-quad addresses.

use std::fmt::Write as _;
use std::path::Path;

use darkscope_core::addr::{index_to_ip, ip_to_index};
use darkscope_core::window::PacketRecord;
use darkscope_core::{EdgeTriple, TrafficMatrix};

use super::read_file_string;
use crate::error::CliError;

pub fn matrix_to_csv(matrix: &TrafficMatrix) -> String {
    let mut out = String::new();
    for t in matrix.entries() {
        let _ = writeln!(out, "{},{},{}", t.src, t.dst, t.count);
    }
    out
}

/// Parse triple lines; duplicate (src, dst) pairs sum, matching matrix
/// construction semantics.
pub fn matrix_from_csv(text: &str) -> Result<TrafficMatrix, CliError> {
    let mut triples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let parse = |field: Option<&str>| field.map(str::trim).filter(|f| !f.is_empty());
        let (src, dst, count) = match (parse(fields.next()), parse(fields.next()), parse(fields.next()), fields.next()) {
            (Some(s), Some(d), Some(c), None) => (s, d, c),
            _ => {
                return Err(CliError::data(format!(
                    "line {}: expected src,dst,count",
                    lineno + 1
                )))
            }
        };
        let bad = |what: &str| CliError::data(format!("line {}: bad {what}: {line:?}", lineno + 1));
        triples.push(EdgeTriple::new(
            src.parse().map_err(|_| bad("src"))?,
            dst.parse().map_err(|_| bad("dst"))?,
            count.parse().map_err(|_| bad("count"))?,
        ));
    }
    TrafficMatrix::from_triples(triples).map_err(CliError::from)
}

pub fn packets_to_csv(records: &[PacketRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.timestamp_us,
            index_to_ip(r.src),
            index_to_ip(r.dst)
        );
    }
    out
}

/// A parsed packet log: records in input order plus the malformed lines
/// that were counted and reported rather than silently dropped.
#[derive(Debug, Clone, Default)]
pub struct ParsedLog {
    pub records: Vec<PacketRecord>,
    /// 1-based line numbers with the reason each failed.
    pub malformed: Vec<(u64, String)>,
}

/// Fraction of malformed lines above which a log is rejected outright.
pub const MALFORMED_RATE_LIMIT: f64 = 0.01;

fn parse_packet_line(line: &str) -> Result<PacketRecord, String> {
    let mut fields = line.split(',');
    match (fields.next(), fields.next(), fields.next(), fields.next()) {
        (Some(ts), Some(src), Some(dst), None) => Ok(PacketRecord {
            timestamp_us: ts
                .trim()
                .parse()
                .map_err(|_| format!("bad timestamp {:?}", ts.trim()))?,
            src: ip_to_index(src.trim()).map_err(|e| e.to_string())?,
            dst: ip_to_index(dst.trim()).map_err(|e| e.to_string())?,
        }),
        _ => Err("expected timestamp,src,dst".to_string()),
    }
}

/// Parse a packet log. Malformed lines are tolerated, counted, and
/// reported up to a rate of 1%; past that the whole log is rejected as a
/// data-quality failure naming the offending lines.
pub fn parse_packet_log(text: &str) -> Result<ParsedLog, CliError> {
    let mut log = ParsedLog::default();
    let mut considered: u64 = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        considered += 1;
        match parse_packet_line(line) {
            Ok(record) => log.records.push(record),
            Err(reason) => log.malformed.push((lineno as u64 + 1, reason)),
        }
    }
    if !log.malformed.is_empty() {
        let rate = log.malformed.len() as f64 / considered as f64;
        if rate > MALFORMED_RATE_LIMIT {
            let shown: Vec<String> = log
                .malformed
                .iter()
                .take(20)
                .map(|(n, why)| format!("line {n}: {why}"))
                .collect();
            return Err(CliError::data(format!(
                "{} of {} lines malformed ({:.1}% > {:.0}% limit); parsed {} records. {}{}",
                log.malformed.len(),
                considered,
                rate * 100.0,
                MALFORMED_RATE_LIMIT * 100.0,
                log.records.len(),
                shown.join("; "),
                if log.malformed.len() > 20 { "; ..." } else { "" },
            )));
        }
    }
    Ok(log)
}

pub fn parse_packet_log_file(path: &Path) -> Result<ParsedLog, CliError> {
    let text = read_file_string(path)?;
    parse_packet_log(&text).map_err(|e| match e {
        CliError::DataQuality(msg) => CliError::data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

//! Constant-packet windowing: turn a packet stream into traffic matrices.
//!
//! Constant-packet, variable-time windows stabilize the heavy-tail
//! statistics downstream, so the stream is cut every `n_valid` valid
//! packets rather than on the clock. Each window is built hierarchically:
//! packets are grouped into `sub_block`-sized sub-matrices that a balanced
//! merge tree sums into the window matrix, mirroring how much larger
//! deployments assemble their windows from archived sub-matrices.

use alloc::format;
use alloc::vec::Vec;

use crate::anonymize::{AnonymizationKey, Anonymizer};
use crate::error::{Error, Result};
use crate::hypersparse::{hierarchical_sum, EdgeTriple, TrafficMatrix};

/// A raw packet: capture timestamp plus source and destination indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PacketRecord {
    pub timestamp_us: u64,
    pub src: u32,
    pub dst: u32,
}

/// Slack allowed in capture timestamps before the stream is declared
/// out of order.
pub const OUT_OF_ORDER_TOLERANCE_US: u64 = 1_000_000;

/// Window geometry: `n_valid` valid packets per matrix, assembled from
/// `sub_block`-packet sub-matrices. Both are powers of two, so sub-blocks
/// tile windows exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    n_valid: u64,
    sub_block: u64,
}

impl WindowSpec {
    pub fn new(n_valid: u64, sub_block: u64) -> Result<Self> {
        if n_valid == 0 || !n_valid.is_power_of_two() {
            return Err(Error::Usage(format!(
                "n_valid must be a power of two, got {n_valid}"
            )));
        }
        if sub_block == 0 || !sub_block.is_power_of_two() {
            return Err(Error::Usage(format!(
                "sub_block must be a power of two, got {sub_block}"
            )));
        }
        if sub_block > n_valid {
            return Err(Error::Usage(format!(
                "sub_block ({sub_block}) must divide n_valid ({n_valid})"
            )));
        }
        Ok(Self { n_valid, sub_block })
    }

    pub fn n_valid(&self) -> u64 {
        self.n_valid
    }

    pub fn sub_block(&self) -> u64 {
        self.sub_block
    }

    pub fn sub_blocks_per_window(&self) -> u64 {
        self.n_valid / self.sub_block
    }
}

/// Result of windowing a stream: one matrix per complete window, plus the
/// counts needed to reconcile packet conservation end to end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowBuild {
    pub matrices: Vec<TrafficMatrix>,
    /// Valid packets left over after the last complete window; reported,
    /// never silently dropped.
    pub remainder: u64,
    /// Packets discarded by the quadrant filter.
    pub discarded: u64,
    /// Valid packets total: Σ matrix totals + remainder.
    pub valid: u64,
}

/// Filter a time-ordered stream to the external→internal quadrant,
/// optionally anonymize, and aggregate every `n_valid` valid packets into a
/// hierarchically summed traffic matrix.
///
/// `is_internal` decides the quadrant: a packet is valid when its source is
/// external and its destination internal, which is the only populated
/// quadrant of a darkspace. Anonymization happens after filtering so the
/// predicate sees real prefixes.
pub fn window_and_build(
    records: &[PacketRecord],
    spec: &WindowSpec,
    is_internal: impl Fn(u32) -> bool,
    key: Option<&AnonymizationKey>,
) -> Result<WindowBuild> {
    let mut max_seen: u64 = 0;
    for (pos, record) in records.iter().enumerate() {
        if record.timestamp_us + OUT_OF_ORDER_TOLERANCE_US < max_seen {
            return Err(Error::DataQuality(format!(
                "timestamp at record {pos} is {} us behind the stream, beyond the {} us tolerance",
                max_seen - record.timestamp_us,
                OUT_OF_ORDER_TOLERANCE_US
            )));
        }
        max_seen = max_seen.max(record.timestamp_us);
    }

    let mut anonymizer = key.cloned().map(Anonymizer::new);
    let mut valid_pairs: Vec<(u32, u32)> = Vec::new();
    let mut discarded: u64 = 0;
    for record in records {
        if !is_internal(record.src) && is_internal(record.dst) {
            let pair = match anonymizer.as_mut() {
                Some(anon) => (anon.anonymize(record.src), anon.anonymize(record.dst)),
                None => (record.src, record.dst),
            };
            valid_pairs.push(pair);
        } else {
            discarded += 1;
        }
    }

    let n_valid = spec.n_valid() as usize;
    let sub_block = spec.sub_block() as usize;
    let complete = valid_pairs.len() / n_valid;
    let mut matrices = Vec::with_capacity(complete);
    for window in valid_pairs.chunks_exact(n_valid) {
        let blocks: Vec<TrafficMatrix> = window
            .chunks(sub_block)
            .map(|chunk| {
                TrafficMatrix::from_triples(
                    chunk.iter().map(|&(src, dst)| EdgeTriple::new(src, dst, 1)),
                )
            })
            .collect::<Result<_>>()?;
        matrices.push(hierarchical_sum(&blocks)?);
    }

    Ok(WindowBuild {
        matrices,
        remainder: (valid_pairs.len() % n_valid) as u64,
        discarded,
        valid: valid_pairs.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addr::Cidr;

    fn packets(n: u64) -> Vec<PacketRecord> {
        // External sources 1.x.y.z to internal 10.0.0.x destinations.
        (0..n)
            .map(|i| PacketRecord {
                timestamp_us: i,
                src: 0x0100_0000 | (i % 251) as u32,
                dst: 0x0A00_0000 | (i % 13) as u32,
            })
            .collect()
    }

    fn internal() -> impl Fn(u32) -> bool {
        let cidr = Cidr::parse("10.0.0.0/8").unwrap();
        move |idx| cidr.contains(idx)
    }

    #[test]
    fn window_spec_validation() {
        assert!(WindowSpec::new(1 << 10, 1 << 7).is_ok());
        assert!(WindowSpec::new(1000, 8).is_err());
        assert!(WindowSpec::new(1 << 10, 3).is_err());
        assert!(WindowSpec::new(8, 16).is_err());
        assert!(WindowSpec::new(0, 0).is_err());
    }

    #[test]
    fn exact_window_conserves_packets() {
        let spec = WindowSpec::new(1 << 10, 1 << 7).unwrap();
        let built = window_and_build(&packets(1 << 10), &spec, internal(), None).unwrap();
        assert_eq!(built.matrices.len(), 1);
        assert_eq!(built.matrices[0].total_packets(), 1 << 10);
        assert_eq!(built.remainder, 0);
        assert_eq!(built.discarded, 0);
        assert_eq!(built.valid, 1 << 10);
    }

    #[test]
    fn trailing_partial_window_reported() {
        let spec = WindowSpec::new(1 << 10, 1 << 7).unwrap();
        let built = window_and_build(&packets((1 << 10) + 5), &spec, internal(), None).unwrap();
        assert_eq!(built.matrices.len(), 1);
        assert_eq!(built.remainder, 5);
        assert_eq!(
            built.matrices[0].total_packets() + built.remainder,
            built.valid
        );
    }

    #[test]
    fn sub_block_choice_is_unobservable() {
        let records = packets(1 << 10);
        let fine = WindowSpec::new(1 << 10, 1 << 7).unwrap();
        let flat = WindowSpec::new(1 << 10, 1 << 10).unwrap();
        let a = window_and_build(&records, &fine, internal(), None).unwrap();
        let b = window_and_build(&records, &flat, internal(), None).unwrap();
        assert_eq!(a.matrices, b.matrices);
    }

    #[test]
    fn quadrant_filter_discards_and_disjoins() {
        let spec = WindowSpec::new(4, 4).unwrap();
        let mut records = packets(4);
        // internal→internal and external→external packets are invalid
        records.push(PacketRecord { timestamp_us: 10_000, src: 0x0A00_0001, dst: 0x0A00_0002 });
        records.push(PacketRecord { timestamp_us: 10_001, src: 0x0100_0001, dst: 0x0200_0002 });
        let built = window_and_build(&records, &spec, internal(), None).unwrap();
        assert_eq!(built.discarded, 2);
        assert_eq!(built.valid, 4);
        let m = &built.matrices[0];
        let rows: alloc::collections::BTreeSet<u32> =
            m.entries().iter().map(|t| t.src).collect();
        let cols: alloc::collections::BTreeSet<u32> =
            m.entries().iter().map(|t| t.dst).collect();
        assert!(rows.is_disjoint(&cols));
    }

    #[test]
    fn out_of_order_beyond_tolerance_rejected() {
        let spec = WindowSpec::new(4, 4).unwrap();
        let mut records = packets(4);
        records[2].timestamp_us = 5_000_000;
        records[3].timestamp_us = 3_000_000; // 2 s behind: out of tolerance
        let err = window_and_build(&records, &spec, internal(), None).unwrap_err();
        assert!(matches!(err, Error::DataQuality(_)));

        // Within 1 s is tolerated.
        records[3].timestamp_us = 4_500_000;
        assert!(window_and_build(&records, &spec, internal(), None).is_ok());
    }
}

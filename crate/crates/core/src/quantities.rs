//! Canonical per-window network quantities computed from a traffic matrix.
//!
//! Each quantity is a reduction of the matrix A or of its zero-norm |A|₀:
//! row sums give per-source packets, row nonzero counts give source fan-out,
//! column sums give per-destination packets, column nonzero counts give
//! destination fan-in, and the scalar table collects the totals, unique
//! counts, and maxima of those reductions. All of them are invariant under
//! row/column permutation, so they can be computed from anonymized data.

use alloc::collections::BTreeMap;

use crate::degree::DegreeVector;
use crate::hypersparse::TrafficMatrix;

/// Scalar aggregates of one traffic-matrix window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NetworkQuantities {
    /// Sum of all cells: the window's valid-packet count N_V.
    pub valid_packets: u64,
    /// Number of nonzero cells (unique source-destination pairs).
    pub unique_links: u64,
    /// Largest single-cell packet count.
    pub max_link_packets: u64,
    /// Number of nonzero rows.
    pub unique_sources: u64,
    /// Largest row sum (packets from one source).
    pub max_source_packets: u64,
    /// Largest row nonzero count (destinations reached by one source).
    pub max_source_fanout: u64,
    /// Number of nonzero columns.
    pub unique_destinations: u64,
    /// Largest column sum (packets to one destination).
    pub max_destination_packets: u64,
    /// Largest column nonzero count (sources hitting one destination).
    pub max_destination_fanin: u64,
}

/// Compute every scalar quantity in one pass over the sorted triples.
///
/// Rows arrive as contiguous runs, so per-source totals use running
/// accumulators; per-destination totals go through a sparse map.
pub fn aggregate(matrix: &TrafficMatrix) -> NetworkQuantities {
    let entries = matrix.entries();
    let mut q = NetworkQuantities {
        valid_packets: matrix.total_packets(),
        unique_links: matrix.nnz() as u64,
        ..NetworkQuantities::default()
    };

    let mut columns: BTreeMap<u32, (u64, u64)> = BTreeMap::new(); // dst -> (packets, fanin)
    let mut run = 0usize;
    while run < entries.len() {
        let src = entries[run].src;
        let mut end = run;
        let mut row_packets: u64 = 0;
        while end < entries.len() && entries[end].src == src {
            let t = &entries[end];
            row_packets += t.count;
            q.max_link_packets = q.max_link_packets.max(t.count);
            let col = columns.entry(t.dst).or_insert((0, 0));
            col.0 += t.count;
            col.1 += 1;
            end += 1;
        }
        q.unique_sources += 1;
        q.max_source_packets = q.max_source_packets.max(row_packets);
        q.max_source_fanout = q.max_source_fanout.max((end - run) as u64);
        run = end;
    }

    q.unique_destinations = columns.len() as u64;
    for &(packets, fanin) in columns.values() {
        q.max_destination_packets = q.max_destination_packets.max(packets);
        q.max_destination_fanin = q.max_destination_fanin.max(fanin);
    }
    q
}

/// Packets from each source: row sums of A.
pub fn source_packets(matrix: &TrafficMatrix) -> DegreeVector {
    matrix.row_sums()
}

/// Fan-out of each source: row sums of |A|₀.
pub fn source_fanout(matrix: &TrafficMatrix) -> DegreeVector {
    let mut v = DegreeVector::new();
    for t in matrix.entries() {
        v.add(t.src, 1);
    }
    v
}

/// Packets to each destination: column sums of A.
pub fn destination_packets(matrix: &TrafficMatrix) -> DegreeVector {
    matrix.col_sums()
}

/// Fan-in of each destination: column sums of |A|₀.
pub fn destination_fanin(matrix: &TrafficMatrix) -> DegreeVector {
    let mut v = DegreeVector::new();
    for t in matrix.entries() {
        v.add(t.dst, 1);
    }
    v
}

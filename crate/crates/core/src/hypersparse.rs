//! Hypersparse traffic matrices stored as sorted coordinate triples.
//!
//! A matrix over the full 2³²×2³² IPv4 index space stores only its nonzero
//! cells, sorted lexicographically by (src, dst). Sorted storage gives
//! deterministic iteration, a cheap two-pointer merge, and bit-exact
//! serialization. Matrices are immutable after construction; "update" means
//! merging into a new value, so sharing across threads is trivially safe.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::degree::DegreeVector;
use crate::error::{Error, Result};

/// One nonzero cell: `count` packets from source `src` to destination `dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeTriple {
    pub src: u32,
    pub dst: u32,
    pub count: u64,
}

impl EdgeTriple {
    pub const fn new(src: u32, dst: u32, count: u64) -> Self {
        Self { src, dst, count }
    }

    #[inline]
    fn key(&self) -> (u32, u32) {
        (self.src, self.dst)
    }
}

/// Hypersparse traffic matrix: sorted, duplicate-free coordinate triples
/// plus a cached packet total. The sum of all entries equals the number of
/// valid packets aggregated into the window.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrafficMatrix {
    entries: Vec<EdgeTriple>,
    total_packets: u64,
}

impl TrafficMatrix {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Aggregate raw triples: duplicates of a (src, dst) pair are summed,
    /// the result is sorted and deduplicated. Triples with a zero count
    /// denote absence and are dropped.
    pub fn from_triples<I: IntoIterator<Item = EdgeTriple>>(raw: I) -> Result<Self> {
        let mut staged: Vec<EdgeTriple> = raw.into_iter().filter(|t| t.count > 0).collect();
        staged.sort_unstable_by_key(EdgeTriple::key);
        let mut entries: Vec<EdgeTriple> = Vec::with_capacity(staged.len());
        for t in staged {
            match entries.last_mut() {
                Some(last) if last.key() == t.key() => {
                    last.count = last.count.checked_add(t.count).ok_or(Error::CountOverflow)?;
                }
                _ => entries.push(t),
            }
        }
        Self::finish(entries)
    }

    /// Adopt triples that are already strictly sorted by (src, dst), as read
    /// back from serialized form. Ordering violations, duplicate pairs, and
    /// zero counts are corruption, not usage, errors.
    pub fn from_sorted_triples(entries: Vec<EdgeTriple>) -> Result<Self> {
        for (pos, window) in entries.windows(2).enumerate() {
            if window[0].key() >= window[1].key() {
                return Err(Error::DataQuality(format!(
                    "triples not strictly sorted at position {}",
                    pos + 1
                )));
            }
        }
        if let Some(pos) = entries.iter().position(|t| t.count == 0) {
            return Err(Error::DataQuality(format!(
                "zero count stored at position {pos}"
            )));
        }
        Self::finish(entries)
    }

    fn finish(entries: Vec<EdgeTriple>) -> Result<Self> {
        let mut total_packets: u64 = 0;
        for t in &entries {
            total_packets = total_packets
                .checked_add(t.count)
                .ok_or(Error::CountOverflow)?;
        }
        Ok(Self {
            entries,
            total_packets,
        })
    }

    /// Stored triples in (src, dst) order.
    pub fn entries(&self) -> &[EdgeTriple] {
        &self.entries
    }

    /// Number of stored (nonzero) cells.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Cached sum of all counts; equals the window's valid-packet total.
    pub fn total_packets(&self) -> u64 {
        self.total_packets
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cell value, zero when absent.
    pub fn get(&self, src: u32, dst: u32) -> u64 {
        self.entries
            .binary_search_by_key(&(src, dst), EdgeTriple::key)
            .map(|i| self.entries[i].count)
            .unwrap_or(0)
    }

    /// Entrywise sum. Total packets add exactly; the nonzero count is at
    /// most the sum of the inputs' nonzero counts.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        let (a, b) = (&self.entries, &other.entries);
        let mut out: Vec<EdgeTriple> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].key().cmp(&b[j].key()) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let count = a[i]
                        .count
                        .checked_add(b[j].count)
                        .ok_or(Error::CountOverflow)?;
                    out.push(EdgeTriple::new(a[i].src, a[i].dst, count));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::finish(out)
    }

    /// Same sparsity pattern with every count set to 1: the zero-norm that
    /// turns packet counts into link indicators.
    pub fn zero_norm(&self) -> Self {
        let entries: Vec<EdgeTriple> = self
            .entries
            .iter()
            .map(|t| EdgeTriple::new(t.src, t.dst, 1))
            .collect();
        let total_packets = entries.len() as u64;
        Self {
            entries,
            total_packets,
        }
    }

    /// Per-source packet totals over nonzero rows.
    pub fn row_sums(&self) -> DegreeVector {
        let mut v = DegreeVector::new();
        for t in &self.entries {
            v.add(t.src, t.count);
        }
        v
    }

    /// Per-destination packet totals over nonzero columns.
    pub fn col_sums(&self) -> DegreeVector {
        let mut v = DegreeVector::new();
        for t in &self.entries {
            v.add(t.dst, t.count);
        }
        v
    }

    /// Relabel rows and columns through the given maps and re-sort. The maps
    /// must be injective on the indices actually present; a collision is a
    /// usage error because it would silently merge distinct vertices.
    pub fn permute<R, C>(&self, row_perm: R, col_perm: C) -> Result<Self>
    where
        R: Fn(u32) -> u32,
        C: Fn(u32) -> u32,
    {
        check_injective(self.entries.iter().map(|t| t.src), &row_perm, "row")?;
        check_injective(self.entries.iter().map(|t| t.dst), &col_perm, "column")?;
        let mut entries: Vec<EdgeTriple> = self
            .entries
            .iter()
            .map(|t| EdgeTriple::new(row_perm(t.src), col_perm(t.dst), t.count))
            .collect();
        entries.sort_unstable_by_key(EdgeTriple::key);
        Ok(Self {
            entries,
            total_packets: self.total_packets,
        })
    }
}

fn check_injective<I, F>(used: I, map: &F, kind: &str) -> Result<()>
where
    I: Iterator<Item = u32>,
    F: Fn(u32) -> u32,
{
    let mut mapped = alloc::collections::BTreeMap::new();
    for idx in used {
        if let Some(prev) = mapped.insert(map(idx), idx) {
            if prev != idx {
                return Err(Error::Usage(format!(
                    "{kind} permutation maps indices {prev} and {idx} to the same value"
                )));
            }
        }
    }
    Ok(())
}

/// Sum a sequence of matrices through a balanced binary merge tree. Merge is
/// associative, so the result is identical to a left fold; the tree shape
/// only bounds the intermediate depth at log₂(blocks).
pub fn hierarchical_sum(blocks: &[TrafficMatrix]) -> Result<TrafficMatrix> {
    fn sum_range(blocks: &[TrafficMatrix]) -> Result<TrafficMatrix> {
        match blocks {
            [single] => Ok(single.clone()),
            many => {
                let mid = many.len() / 2;
                sum_range(&many[..mid])?.merge(&sum_range(&many[mid..])?)
            }
        }
    }
    if blocks.is_empty() {
        return Err(Error::Usage(
            "hierarchical_sum requires at least one block".into(),
        ));
    }
    sum_range(blocks)
}

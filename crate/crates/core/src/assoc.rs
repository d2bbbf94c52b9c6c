//! String-keyed sparse two-dimensional associative arrays.
//!
//! Outpost-style data carries string metadata, so everything is stored as
//! strings; numeric interpretation happens at use sites. Duplicate (row,
//! col) assignments overwrite (last wins) — summation semantics belong to
//! the traffic matrix, this is a labeled lookup structure.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::degree::DegreeVector;
use crate::error::{Error, Result};

/// Column key used by [`AssocArray::from_degree_vector`].
pub const PACKETS_COL: &str = "packets";

/// Sparse string-keyed array: sorted unique row and column keys plus a
/// sparse cell map. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssocArray {
    row_keys: Vec<String>,
    col_keys: Vec<String>,
    cells: BTreeMap<(String, String), String>,
}

impl AssocArray {
    /// Build from parallel row/column/value sequences. Later duplicates of
    /// a (row, col) pair overwrite earlier ones.
    pub fn from_triples(rows: Vec<String>, cols: Vec<String>, vals: Vec<String>) -> Result<Self> {
        if rows.len() != cols.len() || cols.len() != vals.len() {
            return Err(Error::Usage(format!(
                "parallel sequences differ in length: {} rows, {} cols, {} vals",
                rows.len(),
                cols.len(),
                vals.len()
            )));
        }
        let mut cells = BTreeMap::new();
        for ((row, col), val) in rows.into_iter().zip(cols).zip(vals) {
            cells.insert((row, col), val);
        }
        Ok(Self::from_cells(cells))
    }

    fn from_cells(cells: BTreeMap<(String, String), String>) -> Self {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for (row, col) in cells.keys() {
            rows.insert(row.clone());
            cols.insert(col.clone());
        }
        Self {
            row_keys: rows.into_iter().collect(),
            col_keys: cols.into_iter().collect(),
            cells,
        }
    }

    /// Convert a degree vector into a single-column array under the
    /// `packets` column, labeling each index through `labeler`.
    pub fn from_degree_vector(
        degrees: &DegreeVector,
        labeler: impl Fn(u32) -> Option<String>,
    ) -> Result<Self> {
        let mut cells = BTreeMap::new();
        for (idx, value) in degrees.iter() {
            let label = labeler(idx).ok_or_else(|| {
                Error::Usage(format!("labeler has no label for index {idx}"))
            })?;
            cells.insert((label, PACKETS_COL.to_string()), value.to_string());
        }
        Ok(Self::from_cells(cells))
    }

    /// Parse a single column back into a degree vector, mapping row labels
    /// to indices through `unlabeler`.
    pub fn to_degree_vector(
        &self,
        col: &str,
        unlabeler: impl Fn(&str) -> Option<u32>,
    ) -> Result<DegreeVector> {
        let mut pairs = Vec::new();
        for ((row, c), val) in &self.cells {
            if c != col {
                continue;
            }
            let idx = unlabeler(row).ok_or_else(|| {
                Error::Usage(format!("no index for row label {row:?}"))
            })?;
            let value: u64 = val.parse().map_err(|_| {
                Error::DataQuality(format!("cell ({row:?}, {col:?}) holds non-numeric {val:?}"))
            })?;
            pairs.push((idx, value));
        }
        DegreeVector::from_pairs(pairs)
    }

    pub fn row_keys(&self) -> &[String] {
        &self.row_keys
    }

    pub fn col_keys(&self) -> &[String] {
        &self.col_keys
    }

    pub fn get(&self, row: &str, col: &str) -> Option<&str> {
        self.cells
            .get(&(row.to_string(), col.to_string()))
            .map(String::as_str)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&str, &str, &str)> + '_ {
        self.cells
            .iter()
            .map(|((r, c), v)| (r.as_str(), c.as_str(), v.as_str()))
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Sorted row keys present in both arrays.
    pub fn row_intersection(&self, other: &Self) -> Vec<String> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.row_keys.len() && j < other.row_keys.len() {
            match self.row_keys[i].cmp(&other.row_keys[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    out.push(self.row_keys[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

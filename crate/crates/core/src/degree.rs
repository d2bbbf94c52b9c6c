//! Sparse per-vertex degree vectors.

use alloc::collections::BTreeMap;
use alloc::format;

use crate::error::{Error, Result};

/// Sparse map from vertex index to a per-vertex total (packets, fan-out,
/// fan-in, ...). Indices with no entries are absent and mean zero; stored
/// values are never zero. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeVector {
    entries: BTreeMap<u32, u64>,
}

impl DegreeVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from (index, value) pairs, summing duplicate indices.
    /// Zero values are rejected: a zero degree means the index is absent.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, value) in pairs {
            if value == 0 {
                return Err(Error::Usage(format!(
                    "degree vector entry for index {idx} has zero value; omit absent indices"
                )));
            }
            let slot: &mut u64 = entries.entry(idx).or_default();
            *slot = slot.checked_add(value).ok_or(Error::CountOverflow)?;
        }
        Ok(Self { entries })
    }

    /// Build without validation, keeping zero values and letting later
    /// duplicates overwrite earlier ones. Intended for ingesting untrusted
    /// data; downstream operations surface corruption errors.
    pub fn from_pairs_unvalidated<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Self {
        Self {
            entries: pairs.into_iter().collect(),
        }
    }

    pub(crate) fn add(&mut self, idx: u32, amount: u64) {
        if amount > 0 {
            *self.entries.entry(idx).or_default() += amount;
        }
    }

    /// Value at `idx`, zero when absent.
    pub fn get(&self, idx: u32) -> u64 {
        self.entries.get(&idx).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.entries.iter().map(|(&i, &v)| (i, v))
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest stored value, zero when empty.
    pub fn max_value(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// Sum of all stored values, widened so untrusted inputs cannot wrap.
    pub fn sum(&self) -> u128 {
        self.entries.values().map(|&v| v as u128).sum()
    }
}

impl<'a> IntoIterator for &'a DegreeVector {
    type Item = (u32, u64);
    type IntoIter = alloc::vec::IntoIter<(u32, u64)>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter().collect::<alloc::vec::Vec<_>>().into_iter()
    }
}

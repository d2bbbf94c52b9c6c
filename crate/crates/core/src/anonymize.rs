//! Keyed prefix-preserving address anonymization.
//!
//! A 32-bit address maps through a keyed bijection that preserves prefix
//! structure: two inputs sharing their top k bits map to outputs sharing
//! their top k bits. Each output bit is the input bit XORed with a
//! pseudorandom bit derived (via SHA-256) from the key and the input's
//! preceding prefix, which is the classic prefix-preserving construction.
//! Every downstream network quantity is permutation-invariant, so analyses
//! of anonymized matrices equal analyses of raw ones.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Identifier of the anonymization scheme in use. A field rather than a
/// hardcoded constant so a different keyed scheme can slot in later.
pub const SCHEME_PREFIX_SHA256_V1: &str = "prefix-sha256-v1";

/// A 32-byte secret plus the scheme it drives.
#[derive(Clone, PartialEq, Eq)]
pub struct AnonymizationKey {
    key_bytes: [u8; 32],
    scheme_id: String,
}

impl AnonymizationKey {
    /// Adopt a secret; an all-zero key is rejected as almost certainly an
    /// uninitialized buffer.
    pub fn new(key_bytes: [u8; 32]) -> Result<Self> {
        if key_bytes.iter().all(|&b| b == 0) {
            return Err(Error::Usage("anonymization key must not be all zeros".into()));
        }
        Ok(Self {
            key_bytes,
            scheme_id: SCHEME_PREFIX_SHA256_V1.to_string(),
        })
    }

    pub fn scheme_id(&self) -> &str {
        &self.scheme_id
    }
}

impl core::fmt::Debug for AnonymizationKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("AnonymizationKey")
            .field("key_bytes", &"<redacted>")
            .field("scheme_id", &self.scheme_id)
            .finish()
    }
}

/// Stateful anonymizer: a key plus a cache of per-prefix bits. Addresses in
/// real traffic share prefixes heavily, so caching turns 32 hashes per
/// address into roughly one hash per distinct prefix seen.
#[derive(Debug, Clone)]
pub struct Anonymizer {
    key: AnonymizationKey,
    cache: BTreeMap<u64, u32>,
}

impl Anonymizer {
    pub fn new(key: AnonymizationKey) -> Self {
        Self {
            key,
            cache: BTreeMap::new(),
        }
    }

    pub fn key(&self) -> &AnonymizationKey {
        &self.key
    }

    /// Apply the keyed bijection. Deterministic for a fixed key.
    pub fn anonymize(&mut self, index: u32) -> u32 {
        let mut out: u32 = 0;
        for len in 0..32u32 {
            let prefix = if len == 0 { 0 } else { index >> (32 - len) };
            let flip = self.prefix_bit(len, prefix);
            let input_bit = (index >> (31 - len)) & 1;
            out = (out << 1) | (input_bit ^ flip);
        }
        out
    }

    fn prefix_bit(&mut self, len: u32, prefix: u32) -> u32 {
        let cache_key = ((len as u64) << 32) | prefix as u64;
        if let Some(&bit) = self.cache.get(&cache_key) {
            return bit;
        }
        let mut hasher = Sha256::new();
        hasher.update(self.key.scheme_id.as_bytes());
        hasher.update(self.key.key_bytes);
        hasher.update([len as u8]);
        hasher.update(prefix.to_be_bytes());
        let bit = (hasher.finalize()[0] & 1) as u32;
        self.cache.insert(cache_key, bit);
        bit
    }
}

//! IPv4 address and prefix handling over the 32-bit index space.

use alloc::format;
use alloc::string::{String, ToString};

use crate::error::{Error, Result};

/// Map a dotted-quad address to its big-endian 32-bit index:
/// a.b.c.d → a·2²⁴ + b·2¹⁶ + c·2⁸ + d.
pub fn ip_to_index(addr: &str) -> Result<u32> {
    let bad = || Error::AddrParse(addr.to_string());
    let mut index: u32 = 0;
    let mut octets = 0usize;
    for part in addr.split('.') {
        if part.is_empty() || part.len() > 3 || (part.len() > 1 && part.starts_with('0')) {
            return Err(bad());
        }
        if !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let value: u32 = part.parse().map_err(|_| bad())?;
        if value > 255 {
            return Err(bad());
        }
        index = (index << 8) | value;
        octets += 1;
        if octets > 4 {
            return Err(bad());
        }
    }
    if octets != 4 {
        return Err(bad());
    }
    Ok(index)
}

/// Render an index back as a dotted quad.
pub fn index_to_ip(index: u32) -> String {
    format!(
        "{}.{}.{}.{}",
        index >> 24,
        (index >> 16) & 0xff,
        (index >> 8) & 0xff,
        index & 0xff
    )
}

/// An IPv4 prefix (CIDR block) used as the internal-address predicate for
/// quadrant filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cidr {
    base: u32,
    prefix_len: u8,
}

impl Cidr {
    pub fn new(base: u32, prefix_len: u8) -> Result<Self> {
        if prefix_len > 32 {
            return Err(Error::AddrParse(format!("/{prefix_len}")));
        }
        Ok(Self {
            base: base & Self::mask(prefix_len),
            prefix_len,
        })
    }

    /// Parse "a.b.c.d/len".
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::AddrParse(text.to_string());
        let (addr, len) = text.split_once('/').ok_or_else(bad)?;
        let base = ip_to_index(addr).map_err(|_| bad())?;
        if len.is_empty() || len.len() > 2 || !len.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let prefix_len: u8 = len.parse().map_err(|_| bad())?;
        Self::new(base, prefix_len).map_err(|_| bad())
    }

    fn mask(prefix_len: u8) -> u32 {
        if prefix_len == 0 {
            0
        } else {
            u32::MAX << (32 - prefix_len)
        }
    }

    pub fn contains(&self, index: u32) -> bool {
        index & Self::mask(self.prefix_len) == self.base
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn prefix_len(&self) -> u8 {
        self.prefix_len
    }

    /// Mask selecting the host bits below the prefix.
    pub fn host_mask(&self) -> u32 {
        !Self::mask(self.prefix_len)
    }
}

impl core::fmt::Display for Cidr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", index_to_ip(self.base), self.prefix_len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        assert_eq!(ip_to_index("1.1.1.1").unwrap(), 16843009);
        assert_eq!(ip_to_index("2.2.2.2").unwrap(), 33686018);
        assert_eq!(ip_to_index("0.0.0.0").unwrap(), 0);
        assert_eq!(ip_to_index("255.255.255.255").unwrap(), u32::MAX);
    }

    #[test]
    fn round_trip() {
        for idx in [0u32, 1, 16843009, 0x0A00_0001, u32::MAX] {
            assert_eq!(ip_to_index(&index_to_ip(idx)).unwrap(), idx);
        }
    }

    #[test]
    fn malformed_addresses_carry_offending_text() {
        for bad in ["", "1.2.3", "1.2.3.4.5", "256.1.1.1", "1.2.3.x", "01.2.3.4", "1..2.3", " 1.2.3.4"] {
            match ip_to_index(bad) {
                Err(Error::AddrParse(text)) => assert_eq!(text, bad),
                other => panic!("{bad:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn cidr_membership() {
        let c = Cidr::parse("10.0.0.0/8").unwrap();
        assert!(c.contains(ip_to_index("10.1.2.3").unwrap()));
        assert!(!c.contains(ip_to_index("11.0.0.0").unwrap()));
        assert_eq!(c.host_mask(), 0x00ff_ffff);
        assert_eq!(c.to_string(), "10.0.0.0/8");

        let all = Cidr::new(0, 0).unwrap();
        assert!(all.contains(0) && all.contains(u32::MAX));

        let single = Cidr::parse("1.2.3.4/32").unwrap();
        assert!(single.contains(ip_to_index("1.2.3.4").unwrap()));
        assert!(!single.contains(ip_to_index("1.2.3.5").unwrap()));

        assert!(Cidr::parse("10.0.0.0/33").is_err());
        assert!(Cidr::parse("10.0.0.0").is_err());
        assert!(Cidr::parse("10.0.0.0/").is_err());
    }

    #[test]
    fn cidr_normalizes_base() {
        let c = Cidr::parse("10.9.8.7/8").unwrap();
        assert_eq!(c.base(), ip_to_index("10.0.0.0").unwrap());
    }
}

use serde::{Deserialize, Serialize};
use std::fmt;
use std::net::Ipv4Addr;
use std::str::FromStr;

use crate::model::LiquidError;

/// An IPv4 network in prefix notation. The base address is always masked
/// to the prefix, so two equal networks compare equal regardless of how
/// they were written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ipv4Cidr {
    base: u32,
    prefix_len: u8,
}

impl Ipv4Cidr {
    pub fn new(addr: Ipv4Addr, prefix_len: u8) -> Result<Self, LiquidError> {
        if prefix_len > 32 {
            return Err(LiquidError::InvalidCidr(format!(
                "{addr}/{prefix_len}: prefix length out of range"
            )));
        }
        let mask = Self::mask(prefix_len);
        Ok(Self {
            base: u32::from(addr) & mask,
            prefix_len,
        })
    }

    fn mask(prefix_len: u8) -> u32 {
        if prefix_len == 0 {
            0
        } else {
            u32::MAX << (32 - prefix_len)
        }
    }

    pub fn base(&self) -> Ipv4Addr {
        Ipv4Addr::from(self.base)
    }

    pub fn prefix_len(&self) -> u8 {
        self.prefix_len
    }

    /// Number of addresses covered by the network.
    pub fn size(&self) -> u64 {
        1u64 << (32 - self.prefix_len)
    }

    pub fn contains(&self, ip: Ipv4Addr) -> bool {
        (u32::from(ip) & Self::mask(self.prefix_len)) == self.base
    }

    pub fn overlaps(&self, other: &Ipv4Cidr) -> bool {
        let short = self.prefix_len.min(other.prefix_len);
        let mask = Self::mask(short);
        (self.base & mask) == (other.base & mask)
    }

    /// Offset of `ip` from the network base; `ip` must be inside the network.
    pub fn offset_of(&self, ip: Ipv4Addr) -> Option<u32> {
        if self.contains(ip) {
            Some(u32::from(ip) - self.base)
        } else {
            None
        }
    }

    pub fn addr_at(&self, offset: u32) -> Option<Ipv4Addr> {
        if (offset as u64) < self.size() {
            Some(Ipv4Addr::from(self.base + offset))
        } else {
            None
        }
    }

    /// Offset-preserving 1:1 translation of `ip` from this network into `to`.
    /// Both networks must share the same prefix length.
    pub fn translate_to(&self, ip: Ipv4Addr, to: &Ipv4Cidr) -> Option<Ipv4Addr> {
        if self.prefix_len != to.prefix_len {
            return None;
        }
        self.offset_of(ip).and_then(|off| to.addr_at(off))
    }

    /// Iterates the same-prefix-length blocks of `pool`, lowest base first.
    pub fn blocks_of(pool: &Ipv4Cidr, prefix_len: u8) -> impl Iterator<Item = Ipv4Cidr> + '_ {
        let step = 1u64 << (32 - prefix_len);
        let count = if prefix_len >= pool.prefix_len {
            pool.size() / step
        } else {
            0
        };
        (0..count).map(move |i| Ipv4Cidr {
            base: pool.base + (i * step) as u32,
            prefix_len,
        })
    }
}

impl fmt::Display for Ipv4Cidr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.base(), self.prefix_len)
    }
}

impl FromStr for Ipv4Cidr {
    type Err = LiquidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (addr, len) = s
            .split_once('/')
            .ok_or_else(|| LiquidError::InvalidCidr(format!("{s}: missing prefix length")))?;
        let addr: Ipv4Addr = addr
            .parse()
            .map_err(|_| LiquidError::InvalidCidr(format!("{s}: bad address")))?;
        let len: u8 = len
            .parse()
            .map_err(|_| LiquidError::InvalidCidr(format!("{s}: bad prefix length")))?;
        Ipv4Cidr::new(addr, len)
    }
}

impl Serialize for Ipv4Cidr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ipv4Cidr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c: Ipv4Cidr = "10.42.0.0/16".parse().unwrap();
        assert_eq!(c.to_string(), "10.42.0.0/16");
        assert_eq!(c.size(), 65536);
        // base gets masked
        let d: Ipv4Cidr = "10.42.3.7/16".parse().unwrap();
        assert_eq!(c, d);
        assert!("10.42.0.0".parse::<Ipv4Cidr>().is_err());
        assert!("10.42.0.0/33".parse::<Ipv4Cidr>().is_err());
    }

    #[test]
    fn containment_and_overlap() {
        let a: Ipv4Cidr = "10.42.0.0/16".parse().unwrap();
        let b: Ipv4Cidr = "10.42.128.0/17".parse().unwrap();
        let c: Ipv4Cidr = "10.43.0.0/16".parse().unwrap();
        assert!(a.contains("10.42.9.9".parse().unwrap()));
        assert!(!a.contains("10.43.0.1".parse().unwrap()));
        assert!(a.overlaps(&b));
        assert!(b.overlaps(&a));
        assert!(!a.overlaps(&c));
    }

    #[test]
    fn offset_translation() {
        let from: Ipv4Cidr = "10.42.0.0/16".parse().unwrap();
        let to: Ipv4Cidr = "10.70.0.0/16".parse().unwrap();
        let ip: Ipv4Addr = "10.42.0.7".parse().unwrap();
        assert_eq!(from.translate_to(ip, &to).unwrap().to_string(), "10.70.0.7");
        let wide: Ipv4Cidr = "10.70.0.0/15".parse().unwrap();
        assert!(from.translate_to(ip, &wide).is_none());
    }

    #[test]
    fn block_iteration() {
        let pool: Ipv4Cidr = "10.70.0.0/9".parse().unwrap();
        let mut it = Ipv4Cidr::blocks_of(&pool, 16);
        assert_eq!(it.next().unwrap().to_string(), "10.70.0.0/16");
        assert_eq!(it.next().unwrap().to_string(), "10.71.0.0/16");
        assert_eq!(Ipv4Cidr::blocks_of(&pool, 16).count(), 128);
    }
}

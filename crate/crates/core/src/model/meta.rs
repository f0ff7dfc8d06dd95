use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

use crate::model::labels::LabelMap;

/// Identifies one cluster in a testbed, together with the administrator-set
/// labels describing its characteristics (region, provider, ...). Labels
/// propagate verbatim to the virtual node representing the cluster.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClusterId(pub String);

impl ClusterId {
    pub fn new(id: impl Into<String>) -> Self {
        ClusterId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for ClusterId {
    fn from(s: &str) -> Self {
        ClusterId(s.to_string())
    }
}

/// Where an object came from: created locally or reflected from a peer.
/// Reflected objects are never reflected again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    Native,
    Reflected(ClusterId),
}

impl Origin {
    pub fn is_native(&self) -> bool {
        matches!(self, Origin::Native)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectMeta {
    pub name: String,
    pub namespace: Option<String>,
    /// Content-addressed from (kind, namespace, name); opaque to consumers.
    pub uid: String,
    /// Strictly increases on every mutation of the same object.
    pub resource_version: u64,
    pub labels: LabelMap,
    pub annotations: LabelMap,
    pub origin: Origin,
    /// Store-assigned creation sequence, used for FIFO ordering.
    pub creation_seq: u64,
}

impl ObjectMeta {
    pub fn cluster_scoped(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            namespace: None,
            uid: String::new(),
            resource_version: 0,
            labels: LabelMap::new(),
            annotations: LabelMap::new(),
            origin: Origin::Native,
            creation_seq: 0,
        }
    }

    pub fn namespaced(namespace: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            namespace: Some(namespace.into()),
            ..Self::cluster_scoped(name)
        }
    }

    pub fn with_labels(mut self, labels: LabelMap) -> Self {
        self.labels = labels;
        self
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }
}

/// First eight hex digits of the SHA-256 of `input`. Used for remote
/// namespace suffixes and other short stable identifiers.
pub fn short_hash(input: &str) -> String {
    let digest = Sha256::digest(input.as_bytes());
    digest[..4].iter().map(|b| format!("{b:02x}")).collect()
}

/// Keyed signature over a subject: stands in for CSR signing while keeping
/// the handshake shape (a secret key, a verifiable credential).
pub fn keyed_signature(key: &str, subject: &str) -> String {
    let digest = Sha256::digest(format!("{key}\u{0}{subject}").as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_hash_is_stable_8_hex() {
        let h = short_hash("alpha");
        assert_eq!(h.len(), 8);
        assert_eq!(h, short_hash("alpha"));
        assert_ne!(h, short_hash("beta"));
        assert!(h.chars().all(|c| c.is_ascii_hexdigit()));
    }

    #[test]
    fn keyed_signature_depends_on_key_and_subject() {
        let s = keyed_signature("k1", "alpha");
        assert_eq!(s, keyed_signature("k1", "alpha"));
        assert_ne!(s, keyed_signature("k2", "alpha"));
        assert_ne!(s, keyed_signature("k1", "beta"));
    }
}

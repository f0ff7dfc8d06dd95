//! Storage continuum types: claims bound through the virtual storage class
//! and the volumes backing them.

use serde::{Deserialize, Serialize};

use crate::model::meta::{ClusterId, ObjectMeta};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StorageClass {
    /// Deferred first-consumer binding; remapped to a real class once the
    /// consumer pod lands somewhere.
    Virtual,
    Real(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimPhase {
    Pending,
    Bound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub meta: ObjectMeta,
    pub storage_class: StorageClass,
    pub request_bytes: u64,
    pub phase: ClaimPhase,
    /// Name of the bound volume; a bound claim never rebinds.
    pub volume: Option<String>,
    pub reason: Option<String>,
}

impl ClaimRecord {
    pub fn virtual_class(
        namespace: impl Into<String>,
        name: impl Into<String>,
        request_bytes: u64,
    ) -> Self {
        ClaimRecord {
            meta: ObjectMeta::namespaced(namespace, name),
            storage_class: StorageClass::Virtual,
            request_bytes,
            phase: ClaimPhase::Pending,
            volume: None,
            reason: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VolumePhase {
    Bound,
    /// Peering torn down with `--force` while the claim was still bound.
    Orphaned,
}

/// The piece of storage backing a claim. Every volume carries a locality
/// constraint pinning future consumers to its backing cluster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeRecord {
    pub meta: ObjectMeta,
    pub backing_cluster: ClusterId,
    pub storage_class: String,
    pub capacity_bytes: u64,
    pub phase: VolumePhase,
    /// (namespace, claim name) this volume is bound to.
    pub claim_ref: Option<(String, String)>,
}

impl VolumeRecord {
    pub fn name_for(namespace: &str, claim: &str) -> String {
        format!("pv-{namespace}-{claim}")
    }
}

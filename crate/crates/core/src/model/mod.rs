//! Shared domain types, the typed object store, and the logical clock.

pub mod cidr;
pub mod clock;
pub mod federation;
pub mod labels;
pub mod meta;
pub mod object;
pub mod records;
pub mod resources;
pub mod storage_types;
pub mod store;

pub use cidr::Ipv4Cidr;
pub use clock::{LogicalClock, SimDuration, SimTime};
pub use federation::*;
pub use labels::{selector_matches, LabelExpr, LabelMap};
pub use meta::{keyed_signature, short_hash, ClusterId, ObjectMeta, Origin};
pub use object::{Object, ObjectKey, ObjectKind};
pub use records::*;
pub use resources::ResourceVector;
pub use storage_types::*;
pub use store::{ApplyOutcome, EventType, Store, StoreEvent, WatchHandle};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiquidError {
    #[error("resource underflow: cannot take {take} from {have}")]
    ResourceUnderflow {
        have: ResourceVector,
        take: ResourceVector,
    },
    #[error("invalid CIDR: {0}")]
    InvalidCidr(String),
    #[error("invalid selector expression: {0}")]
    InvalidSelector(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("version conflict on {key}: supplied {supplied}, current {current}")]
    VersionConflict {
        key: String,
        supplied: u64,
        current: u64,
    },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("address pool exhausted: {0}")]
    PoolExhausted(String),
    #[error("no route or mapping for address {0}")]
    AddressUnmapped(String),
    #[error("authentication denied: {0}")]
    AuthDenied(String),
    #[error("permission denied: {0}")]
    PermissionDenied(String),
    #[error("invalid manifest: {0}")]
    InvalidManifest(String),
    #[error("teardown refused: {0}")]
    TeardownRefused(String),
    #[error("{0}")]
    Other(String),
}

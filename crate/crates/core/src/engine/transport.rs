//! Reliable ordered message channels between clusters, with configurable
//! one-way latency and partitionable links.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::net::Ipv4Addr;

use crate::model::{
    ClusterId, Object, ObjectKind, Permissions, PodPhase, ResourceVector, SimDuration, SimTime,
};

/// Everything that crosses a cluster boundary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Message {
    AuthRequest {
        subject: ClusterId,
        fingerprint: String,
        token: String,
    },
    AuthResponse {
        granted: Option<GrantedIdentity>,
        denied_reason: Option<String>,
    },
    /// Twin synchronization push: the sender owns `part` of the object.
    TwinPush {
        kind: ObjectKind,
        name: String,
        object: Object,
        part: TwinPart,
    },
    TwinDelete {
        kind: ObjectKind,
        name: String,
    },
    PeerPing {
        seq: u64,
    },
    PeerPong {
        seq: u64,
    },
    /// Virtual-kubelet apply of a reflected object in the provider cluster.
    VkApply {
        object: Object,
        ack: u64,
    },
    VkDelete {
        kind: ObjectKind,
        namespace: Option<String>,
        name: String,
        ack: u64,
    },
    VkAck {
        ack: u64,
        error: Option<String>,
        /// Endpoints applied, for endpoint-slice readiness accounting.
        endpoints: Option<u64>,
        kind: ObjectKind,
        name: String,
    },
    VkStatus(StatusUpdate),
    /// Periodic resync: provider-side garbage collection baseline of
    /// everything the consumer currently reflects.
    VkSyncSet {
        namespaces: Vec<String>,
        keep: Vec<(ObjectKind, String, String)>,
    },
    /// Provider informs the consumer of an escalation outside the request
    /// status path (teardown acknowledgements).
    TeardownOwned,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrantedIdentity {
    pub subject: ClusterId,
    pub fingerprint: String,
    pub permissions: Permissions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwinPart {
    Spec,
    Status,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum StatusUpdate {
    PodStatus {
        /// Remote (provider-side) namespace and pod name.
        namespace: String,
        name: String,
        phase: PodPhase,
        pod_ip: Option<Ipv4Addr>,
        reason: Option<String>,
        node: Option<String>,
    },
    ClaimBound {
        namespace: String,
        name: String,
        volume: String,
        storage_class: String,
        capacity_bytes: u64,
    },
    ClaimPending {
        namespace: String,
        name: String,
        reason: String,
    },
    /// Provider capacity summary piggybacked for bookkeeping.
    ProviderCapacity {
        free: ResourceVector,
    },
}

/// Component addresses within a cluster.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Discovery,
    Peering,
    AuthResponder,
    Negotiation,
    Replicator,
    NetworkManager,
    Kubelet,
    Scheduler,
    Epslice,
    Lifecycle,
    ShadowEnforcer,
    PeerAgent,
    Storage,
    /// One instance per peered provider cluster.
    VirtualKubelet(ClusterId),
}

#[derive(Debug, Clone)]
pub struct MsgLogEntry {
    pub sent_at: SimTime,
    pub delivered_at: Option<SimTime>,
    pub from: ClusterId,
    pub to: ClusterId,
    pub to_role: Role,
    pub bytes: usize,
    pub tag: &'static str,
}

#[derive(Debug, Clone)]
struct LinkState {
    one_way: SimDuration,
    partitioned: bool,
    last_delivery: SimTime,
}

/// Point-to-point message fabric. Per-link delivery is FIFO even when the
/// latency changes mid-run; partitioned links drop silently.
#[derive(Debug)]
pub struct Transport {
    links: BTreeMap<(ClusterId, ClusterId), LinkState>,
    default_latency: SimDuration,
    pub log: Vec<MsgLogEntry>,
}

fn link_key(a: &ClusterId, b: &ClusterId) -> (ClusterId, ClusterId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl Transport {
    pub fn new(default_latency: SimDuration) -> Self {
        Transport {
            links: BTreeMap::new(),
            default_latency,
            log: Vec::new(),
        }
    }

    pub fn set_latency(&mut self, a: &ClusterId, b: &ClusterId, one_way: SimDuration) {
        let entry = self
            .links
            .entry(link_key(a, b))
            .or_insert_with(|| LinkState {
                one_way,
                partitioned: false,
                last_delivery: SimTime::ZERO,
            });
        entry.one_way = one_way;
    }

    pub fn set_partitioned(&mut self, a: &ClusterId, b: &ClusterId, partitioned: bool) {
        let default = self.default_latency;
        let entry = self
            .links
            .entry(link_key(a, b))
            .or_insert_with(|| LinkState {
                one_way: default,
                partitioned: false,
                last_delivery: SimTime::ZERO,
            });
        entry.partitioned = partitioned;
    }

    pub fn is_partitioned(&self, a: &ClusterId, b: &ClusterId) -> bool {
        self.links
            .get(&link_key(a, b))
            .map(|l| l.partitioned)
            .unwrap_or(false)
    }

    pub fn latency(&self, a: &ClusterId, b: &ClusterId) -> SimDuration {
        self.links
            .get(&link_key(a, b))
            .map(|l| l.one_way)
            .unwrap_or(self.default_latency)
    }

    /// Computes the delivery time for a message sent now, or `None` if the
    /// link is partitioned. Appends to the transport log either way.
    pub fn dispatch(
        &mut self,
        now: SimTime,
        from: &ClusterId,
        to: &ClusterId,
        to_role: &Role,
        msg: &Message,
    ) -> Option<SimTime> {
        let bytes = serde_json::to_vec(msg).map(|v| v.len()).unwrap_or(0);
        let tag = message_tag(msg);
        let key = link_key(from, to);
        let default = self.default_latency;
        let link = self.links.entry(key).or_insert_with(|| LinkState {
            one_way: default,
            partitioned: false,
            last_delivery: SimTime::ZERO,
        });
        if link.partitioned {
            self.log.push(MsgLogEntry {
                sent_at: now,
                delivered_at: None,
                from: from.clone(),
                to: to.clone(),
                to_role: to_role.clone(),
                bytes,
                tag,
            });
            return None;
        }
        let mut at = now + link.one_way;
        if at < link.last_delivery {
            at = link.last_delivery;
        }
        link.last_delivery = at;
        self.log.push(MsgLogEntry {
            sent_at: now,
            delivered_at: Some(at),
            from: from.clone(),
            to: to.clone(),
            to_role: to_role.clone(),
            bytes,
            tag,
        });
        Some(at)
    }

    /// Messages delivered between the pair (either direction) within [t0, t1].
    pub fn delivered_between(
        &self,
        a: &ClusterId,
        b: &ClusterId,
        t0: SimTime,
        t1: SimTime,
    ) -> usize {
        self.log
            .iter()
            .filter(|e| {
                ((e.from == *a && e.to == *b) || (e.from == *b && e.to == *a))
                    && e.delivered_at.map(|t| t >= t0 && t <= t1).unwrap_or(false)
            })
            .count()
    }

    pub fn total_messages(&self) -> usize {
        self.log.len()
    }

    pub fn total_bytes(&self) -> usize {
        self.log.iter().map(|e| e.bytes).sum()
    }
}

pub fn message_tag(msg: &Message) -> &'static str {
    match msg {
        Message::AuthRequest { .. } => "auth-request",
        Message::AuthResponse { .. } => "auth-response",
        Message::TwinPush { .. } => "twin-push",
        Message::TwinDelete { .. } => "twin-delete",
        Message::PeerPing { .. } => "ping",
        Message::PeerPong { .. } => "pong",
        Message::VkApply { .. } => "vk-apply",
        Message::VkDelete { .. } => "vk-delete",
        Message::VkAck { .. } => "vk-ack",
        Message::VkStatus(_) => "vk-status",
        Message::VkSyncSet { .. } => "vk-sync-set",
        Message::TeardownOwned => "teardown",
    }
}

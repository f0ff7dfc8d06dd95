//! Workload-facing object types: nodes, pods, services, endpoint slices,
//! config maps, secrets and namespaces.

use serde::{Deserialize, Serialize};
use std::net::Ipv4Addr;

use crate::model::clock::{SimDuration, SimTime};
use crate::model::labels::{LabelExpr, LabelMap};
use crate::model::meta::{ClusterId, ObjectMeta};
use crate::model::resources::ResourceVector;

/// Taint key carried by every virtual node; pods need a matching toleration
/// to be scheduled there.
pub const VIRTUAL_NODE_TAINT_KEY: &str = "virtual-node.liquidfed.io/not-allowed";
/// Node label distinguishing physical workers from virtual nodes.
pub const NODE_TYPE_LABEL: &str = "liquidfed.io/type";
pub const NODE_TYPE_PHYSICAL: &str = "physical";
pub const NODE_TYPE_VIRTUAL: &str = "virtual";
/// Annotation excluding an object from reflection.
pub const SKIP_REFLECTION_ANNOTATION: &str = "liquidfed.io/skip-reflection";
/// Label stamped on namespaces and objects owned by a remote consumer.
pub const OWNER_CLUSTER_LABEL: &str = "liquidfed.io/owner-cluster";
/// Label linking a twin pod to the shadow pod enforcing it.
pub const SHADOW_POD_LABEL: &str = "liquidfed.io/shadow-pod";

pub const DEFAULT_LEASE_DURATION: SimDuration = SimDuration(40_000_000);
pub const DEFAULT_UNREACHABLE_TOLERATION: SimDuration = SimDuration(300_000_000);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TaintEffect {
    NoSchedule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Taint {
    pub key: String,
    pub value: String,
    pub effect: TaintEffect,
}

impl Taint {
    pub fn virtual_node() -> Taint {
        Taint {
            key: VIRTUAL_NODE_TAINT_KEY.to_string(),
            value: "true".to_string(),
            effect: TaintEffect::NoSchedule,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toleration {
    pub key: String,
    /// Empty tolerates any value of the key.
    pub value: String,
}

impl Toleration {
    pub fn virtual_node() -> Toleration {
        Toleration {
            key: VIRTUAL_NODE_TAINT_KEY.to_string(),
            value: String::new(),
        }
    }

    pub fn tolerates(&self, taint: &Taint) -> bool {
        self.key == taint.key && (self.value.is_empty() || self.value == taint.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Physical,
    Virtual(ClusterId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub meta: ObjectMeta,
    pub kind: NodeKind,
    pub capacity: ResourceVector,
    /// Free capacity: capacity minus the requests of running pods.
    pub allocatable: ResourceVector,
    pub ready: bool,
    pub taints: Vec<Taint>,
    pub lease_renewed_at: SimTime,
    pub lease_duration: SimDuration,
    /// Set when the node cannot accept new pods (e.g. offer shrunk below usage).
    pub condition: Option<String>,
}

impl NodeRecord {
    pub fn physical(name: impl Into<String>, capacity: ResourceVector) -> Self {
        let mut meta = ObjectMeta::cluster_scoped(name);
        meta.labels
            .insert(NODE_TYPE_LABEL.into(), NODE_TYPE_PHYSICAL.into());
        NodeRecord {
            meta,
            kind: NodeKind::Physical,
            capacity,
            allocatable: capacity,
            ready: true,
            taints: Vec::new(),
            lease_renewed_at: SimTime::ZERO,
            lease_duration: DEFAULT_LEASE_DURATION,
            condition: None,
        }
    }

    /// A node is unreachable once its lease has not been renewed for longer
    /// than the lease duration.
    pub fn lease_expired(&self, now: SimTime) -> bool {
        now.saturating_sub(self.lease_renewed_at) > self.lease_duration
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self.kind, NodeKind::Virtual(_))
    }

    pub fn provider(&self) -> Option<&ClusterId> {
        match &self.kind {
            NodeKind::Virtual(id) => Some(id),
            NodeKind::Physical => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PodPhase {
    Pending,
    Scheduled,
    Running,
    Failed,
    Evicted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PodRecord {
    pub meta: ObjectMeta,
    pub requests: ResourceVector,
    pub tolerations: Vec<Toleration>,
    pub affinity: Option<LabelExpr>,
    /// Soft preference evaluated before the full feasible set (two-pass).
    pub preferred_affinity: Option<LabelExpr>,
    pub node_name: Option<String>,
    pub phase: PodPhase,
    pub pod_ip: Option<Ipv4Addr>,
    pub unreachable_toleration: SimDuration,
    /// Names of claims (same namespace) the pod mounts.
    pub claims: Vec<String>,
    /// Human-readable reason while the pod cannot make progress.
    pub pending_reason: Option<String>,
}

impl PodRecord {
    pub fn new(namespace: impl Into<String>, name: impl Into<String>, requests: ResourceVector) -> Self {
        let mut requests = requests;
        // every pod occupies exactly one pod slot
        requests.pod_slots = 1;
        PodRecord {
            meta: ObjectMeta::namespaced(namespace, name),
            requests,
            tolerations: Vec::new(),
            affinity: None,
            preferred_affinity: None,
            node_name: None,
            phase: PodPhase::Pending,
            pod_ip: None,
            unreachable_toleration: DEFAULT_UNREACHABLE_TOLERATION,
            claims: Vec::new(),
            pending_reason: None,
        }
    }

    pub fn is_schedulable(&self) -> bool {
        matches!(self.phase, PodPhase::Pending | PodPhase::Evicted)
    }

    pub fn tolerates(&self, taint: &Taint) -> bool {
        self.tolerations.iter().any(|t| t.tolerates(taint))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceRecord {
    pub meta: ObjectMeta,
    pub selector: LabelMap,
    pub cluster_ip: Option<Ipv4Addr>,
    pub ports: Vec<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Endpoint {
    pub address: Ipv4Addr,
    pub ready: bool,
    pub target_pod_uid: String,
}

/// One slice of ready backend addresses for a service. Reflected entries are
/// segregated from native entries in distinct slices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointSliceRecord {
    pub meta: ObjectMeta,
    pub service_name: String,
    pub endpoints: Vec<Endpoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigMapRecord {
    pub meta: ObjectMeta,
    pub data: LabelMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretRecord {
    pub meta: ObjectMeta,
    pub data: LabelMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamespaceRecord {
    pub meta: ObjectMeta,
}

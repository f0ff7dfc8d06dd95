//! Peering-protocol and reflection object types: the resources whose
//! spec/status twins drive the peering state machine, plus the network
//! negotiation records and shadow pods.

use serde::{Deserialize, Serialize};
use std::net::Ipv4Addr;

use crate::model::cidr::Ipv4Cidr;
use crate::model::labels::{LabelExpr, LabelMap};
use crate::model::meta::{ClusterId, ObjectMeta};
use crate::model::resources::ResourceVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeeringPhase {
    None,
    Pending,
    Established,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AuthStatus {
    Unauthenticated,
    TokenSent,
    IdentityGranted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NetworkStatus {
    None,
    Negotiating,
    Ready,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Permissions {
    PeeringOnly,
    Offloading,
}

/// One record per discovered peer; drives the outgoing peering state machine
/// and mirrors the incoming one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForeignClusterRecord {
    pub meta: ObjectMeta,
    pub foreign_id: ClusterId,
    pub foreign_labels: LabelMap,
    /// Transport address of the peer (cluster id in this testbed).
    pub endpoint: String,
    pub outgoing_peering: PeeringPhase,
    pub incoming_peering: PeeringPhase,
    pub auth_status: AuthStatus,
    /// Permissions the peer granted to us, as reported in the request status.
    pub granted_permissions: Option<Permissions>,
    /// Fingerprint of our identity at the peer.
    pub identity_fingerprint: Option<String>,
    pub network_status: NetworkStatus,
    pub desired_outgoing: bool,
    /// Pre-shared token presented during authentication.
    pub auth_token: Option<String>,
    /// Refuse offers dearer than this.
    pub max_offer_price: Option<u64>,
    pub status_message: Option<String>,
}

impl ForeignClusterRecord {
    pub fn new(foreign_id: ClusterId, endpoint: impl Into<String>) -> Self {
        ForeignClusterRecord {
            meta: ObjectMeta::cluster_scoped(format!("fc-{foreign_id}")),
            foreign_id,
            foreign_labels: LabelMap::new(),
            endpoint: endpoint.into(),
            outgoing_peering: PeeringPhase::None,
            incoming_peering: PeeringPhase::None,
            auth_status: AuthStatus::Unauthenticated,
            granted_permissions: None,
            identity_fingerprint: None,
            network_status: NetworkStatus::None,
            desired_outgoing: false,
            auth_token: None,
            max_offer_price: None,
            status_message: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RequestPhase {
    Pending,
    Accepted,
    Denied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestStatus {
    pub phase: RequestPhase,
    pub reason: Option<String>,
    /// Permission level the provider granted; escalated at finalization.
    pub granted_permissions: Option<Permissions>,
    /// True while the remote twin has vanished and the status may lag.
    pub stale: bool,
}

impl Default for RequestStatus {
    fn default() -> Self {
        RequestStatus {
            phase: RequestPhase::Pending,
            reason: None,
            granted_permissions: None,
            stale: false,
        }
    }
}

/// Explicit desire of a consumer to obtain resources from a provider.
/// Spec owned by the consumer, status by the provider.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceRequestRecord {
    pub meta: ObjectMeta,
    pub requester: ClusterId,
    pub provider: ClusterId,
    pub desired: Option<ResourceVector>,
    pub credential: Option<String>,
    pub status: RequestStatus,
}

impl ResourceRequestRecord {
    pub fn name_for(requester: &ClusterId) -> String {
        format!("rr-{requester}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OfferPhase {
    Pending,
    Accepted,
    Refused,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfferStatus {
    pub phase: OfferPhase,
    pub reason: Option<String>,
    pub stale: bool,
}

impl Default for OfferStatus {
    fn default() -> Self {
        OfferStatus {
            phase: OfferPhase::Pending,
            reason: None,
            stale: false,
        }
    }
}

/// Willingness of a provider to share a given amount of resources, possibly
/// at a price. Spec owned by the provider, status by the consumer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceOfferRecord {
    pub meta: ObjectMeta,
    pub provider: ClusterId,
    pub consumer: ClusterId,
    pub offered: ResourceVector,
    pub price: Option<u64>,
    pub storage_classes: Vec<String>,
    /// Set by the provider when the offer could not track policy output
    /// (e.g. shrinking below current usage is forbidden).
    pub spec_error: Option<String>,
    pub status: OfferStatus,
}

impl ResourceOfferRecord {
    pub fn name_for(provider: &ClusterId) -> String {
        format!("ro-{provider}")
    }
}

/// Provider-side record of a granted identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub meta: ObjectMeta,
    pub subject: ClusterId,
    pub fingerprint: String,
    pub permissions: Permissions,
}

impl IdentityRecord {
    pub fn name_for(subject: &ClusterId) -> String {
        format!("identity-{subject}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PodOffloadingStrategy {
    LocalOnly,
    RemoteOnly,
    LocalAndRemote,
    LocalPreferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemoteNamespaceStrategy {
    KeepName,
    SuffixClusterHash,
}

/// Per-namespace offloading policy; reflection for a namespace is active
/// iff a policy exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamespaceOffloadingRecord {
    pub meta: ObjectMeta,
    pub cluster_selector: LabelExpr,
    pub pod_offloading_strategy: PodOffloadingStrategy,
    pub remote_namespace_strategy: RemoteNamespaceStrategy,
}

pub const NAMESPACE_OFFLOADING_NAME: &str = "offloading";

impl NamespaceOffloadingRecord {
    pub fn new(
        namespace: impl Into<String>,
        cluster_selector: LabelExpr,
        pod_offloading_strategy: PodOffloadingStrategy,
        remote_namespace_strategy: RemoteNamespaceStrategy,
    ) -> Self {
        NamespaceOffloadingRecord {
            meta: ObjectMeta::namespaced(namespace, NAMESPACE_OFFLOADING_NAME),
            cluster_selector,
            pod_offloading_strategy,
            remote_namespace_strategy,
        }
    }

    pub fn namespace(&self) -> &str {
        self.meta.namespace.as_deref().unwrap_or_default()
    }
}

/// Minimal pod template wrapped by a shadow pod: what the provider needs to
/// enforce the twin, nothing more.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PodTemplate {
    pub name: String,
    pub labels: LabelMap,
    pub requests: ResourceVector,
    pub claims: Vec<String>,
}

/// Provider-side wrapper of an offloaded pod; its enforcement controller
/// guarantees a matching running pod regardless of consumer connectivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowPodRecord {
    pub meta: ObjectMeta,
    pub owner: ClusterId,
    pub template: PodTemplate,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkConfigStatus {
    pub processed: bool,
    /// Range the processing side chose for the sender's pod CIDR (set iff conflict).
    pub remapped_pod_cidr: Option<Ipv4Cidr>,
    /// Same for the sender's external pool.
    pub remapped_external_cidr: Option<Ipv4Cidr>,
    pub error: Option<String>,
    pub stale: bool,
}

/// Connection parameters one cluster advertises to a peer during network
/// negotiation. Spec owned by the sender; status (the chosen remappings) by
/// the receiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkConfigRecord {
    pub meta: ObjectMeta,
    pub from: ClusterId,
    pub to: ClusterId,
    pub pod_cidr: Ipv4Cidr,
    pub external_cidr: Ipv4Cidr,
    pub tunnel_endpoint: String,
    pub status: NetworkConfigStatus,
}

impl NetworkConfigRecord {
    pub fn name_for(from: &ClusterId, to: &ClusterId) -> String {
        format!("netcfg-{from}-{to}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContractStatus {
    Negotiating,
    Ready,
}

/// Negotiated per-peer addressing: how this cluster sees the peer and how
/// the peer sees this cluster, plus the tunnel carrying the traffic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkContractRecord {
    pub meta: ObjectMeta,
    pub peer: ClusterId,
    pub local_pod_cidr: Ipv4Cidr,
    pub remote_pod_cidr: Ipv4Cidr,
    /// Local view of the peer's pods (set iff the ranges conflicted here).
    pub remote_pod_cidr_remapped: Option<Ipv4Cidr>,
    /// The peer's external free pool, and the local view of it.
    pub external_pool: Ipv4Cidr,
    pub external_pool_remapped: Option<Ipv4Cidr>,
    /// How the peer sees this cluster's ranges (learned from the peer's status).
    pub local_pod_cidr_at_peer: Option<Ipv4Cidr>,
    pub local_external_cidr_at_peer: Option<Ipv4Cidr>,
    pub tunnel: Option<String>,
    pub status: ContractStatus,
}

impl NetworkContractRecord {
    pub fn name_for(peer: &ClusterId) -> String {
        format!("contract-{peer}")
    }

    /// The range in which this cluster addresses the peer's pods.
    pub fn remote_pod_view(&self) -> Ipv4Cidr {
        self.remote_pod_cidr_remapped.unwrap_or(self.remote_pod_cidr)
    }

    pub fn remote_external_view(&self) -> Ipv4Cidr {
        self.external_pool_remapped.unwrap_or(self.external_pool)
    }
}

/// One stable per-address allocation from the local external pool,
/// disambiguating an indirect conflict. Freed on endpoint removal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalMappingRecord {
    pub meta: ObjectMeta,
    /// Address handed out from the local external pool.
    pub external_ip: Ipv4Addr,
    /// The local-view address it stands for.
    pub target_ip: Ipv4Addr,
}

impl ExternalMappingRecord {
    pub fn name_for(target_ip: Ipv4Addr) -> String {
        format!("extmap-{}", target_ip.to_string().replace('.', "-"))
    }
}

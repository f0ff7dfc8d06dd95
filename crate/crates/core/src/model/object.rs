use serde::{Deserialize, Serialize};

use crate::model::federation::*;
use crate::model::meta::{short_hash, ObjectMeta};
use crate::model::records::*;
use crate::model::storage_types::*;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum ObjectKind {
    Node,
    Pod,
    Service,
    EndpointSlice,
    ConfigMap,
    Secret,
    Namespace,
    ForeignCluster,
    ResourceRequest,
    ResourceOffer,
    Identity,
    NamespaceOffloading,
    ShadowPod,
    NetworkConfig,
    NetworkContract,
    ExternalMapping,
    Claim,
    Volume,
}

impl ObjectKind {
    pub const ALL: [ObjectKind; 18] = [
        ObjectKind::Node,
        ObjectKind::Pod,
        ObjectKind::Service,
        ObjectKind::EndpointSlice,
        ObjectKind::ConfigMap,
        ObjectKind::Secret,
        ObjectKind::Namespace,
        ObjectKind::ForeignCluster,
        ObjectKind::ResourceRequest,
        ObjectKind::ResourceOffer,
        ObjectKind::Identity,
        ObjectKind::NamespaceOffloading,
        ObjectKind::ShadowPod,
        ObjectKind::NetworkConfig,
        ObjectKind::NetworkContract,
        ObjectKind::ExternalMapping,
        ObjectKind::Claim,
        ObjectKind::Volume,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectKind::Node => "Node",
            ObjectKind::Pod => "Pod",
            ObjectKind::Service => "Service",
            ObjectKind::EndpointSlice => "EndpointSlice",
            ObjectKind::ConfigMap => "ConfigMap",
            ObjectKind::Secret => "Secret",
            ObjectKind::Namespace => "Namespace",
            ObjectKind::ForeignCluster => "ForeignCluster",
            ObjectKind::ResourceRequest => "ResourceRequest",
            ObjectKind::ResourceOffer => "ResourceOffer",
            ObjectKind::Identity => "Identity",
            ObjectKind::NamespaceOffloading => "NamespaceOffloading",
            ObjectKind::ShadowPod => "ShadowPod",
            ObjectKind::NetworkConfig => "NetworkConfig",
            ObjectKind::NetworkContract => "NetworkContract",
            ObjectKind::ExternalMapping => "ExternalMapping",
            ObjectKind::Claim => "Claim",
            ObjectKind::Volume => "Volume",
        }
    }
}

impl std::fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! object_enum {
    ($(($variant:ident, $record:ty)),+ $(,)?) => {
        /// Every object kind the typed store can hold.
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        pub enum Object {
            $($variant($record),)+
        }

        impl Object {
            pub fn kind(&self) -> ObjectKind {
                match self {
                    $(Object::$variant(_) => ObjectKind::$variant,)+
                }
            }

            pub fn meta(&self) -> &ObjectMeta {
                match self {
                    $(Object::$variant(r) => &r.meta,)+
                }
            }

            pub fn meta_mut(&mut self) -> &mut ObjectMeta {
                match self {
                    $(Object::$variant(r) => &mut r.meta,)+
                }
            }
        }

        $(
            impl From<$record> for Object {
                fn from(r: $record) -> Object {
                    Object::$variant(r)
                }
            }
        )+
    };
}

object_enum!(
    (Node, NodeRecord),
    (Pod, PodRecord),
    (Service, ServiceRecord),
    (EndpointSlice, EndpointSliceRecord),
    (ConfigMap, ConfigMapRecord),
    (Secret, SecretRecord),
    (Namespace, NamespaceRecord),
    (ForeignCluster, ForeignClusterRecord),
    (ResourceRequest, ResourceRequestRecord),
    (ResourceOffer, ResourceOfferRecord),
    (Identity, IdentityRecord),
    (NamespaceOffloading, NamespaceOffloadingRecord),
    (ShadowPod, ShadowPodRecord),
    (NetworkConfig, NetworkConfigRecord),
    (NetworkContract, NetworkContractRecord),
    (ExternalMapping, ExternalMappingRecord),
    (Claim, ClaimRecord),
    (Volume, VolumeRecord),
);

/// Store key of an object: kind plus namespaced name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectKey {
    pub kind: ObjectKind,
    pub namespace: Option<String>,
    pub name: String,
}

impl ObjectKey {
    pub fn of(object: &Object) -> ObjectKey {
        ObjectKey {
            kind: object.kind(),
            namespace: object.meta().namespace.clone(),
            name: object.meta().name.clone(),
        }
    }

    pub fn cluster_scoped(kind: ObjectKind, name: impl Into<String>) -> ObjectKey {
        ObjectKey {
            kind,
            namespace: None,
            name: name.into(),
        }
    }

    pub fn namespaced(
        kind: ObjectKind,
        namespace: impl Into<String>,
        name: impl Into<String>,
    ) -> ObjectKey {
        ObjectKey {
            kind,
            namespace: Some(namespace.into()),
            name: name.into(),
        }
    }

    /// Deterministic, content-addressed uid for this key.
    pub fn uid(&self) -> String {
        short_hash(&format!(
            "{}/{}/{}",
            self.kind,
            self.namespace.as_deref().unwrap_or(""),
            self.name
        ))
    }
}

impl std::fmt::Display for ObjectKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.namespace {
            Some(ns) => write!(f, "{}/{}/{}", self.kind, ns, self.name),
            None => write!(f, "{}/{}", self.kind, self.name),
        }
    }
}

macro_rules! typed_accessors {
    ($(($lower:ident, $variant:ident, $record:ty)),+ $(,)?) => {
        impl Object {
            $(
                pub fn $lower(&self) -> Option<&$record> {
                    match self {
                        Object::$variant(r) => Some(r),
                        _ => None,
                    }
                }
            )+
        }
    };
}

typed_accessors!(
    (as_node, Node, NodeRecord),
    (as_pod, Pod, PodRecord),
    (as_service, Service, ServiceRecord),
    (as_endpoint_slice, EndpointSlice, EndpointSliceRecord),
    (as_config_map, ConfigMap, ConfigMapRecord),
    (as_secret, Secret, SecretRecord),
    (as_foreign_cluster, ForeignCluster, ForeignClusterRecord),
    (as_resource_request, ResourceRequest, ResourceRequestRecord),
    (as_resource_offer, ResourceOffer, ResourceOfferRecord),
    (as_identity, Identity, IdentityRecord),
    (as_namespace_offloading, NamespaceOffloading, NamespaceOffloadingRecord),
    (as_shadow_pod, ShadowPod, ShadowPodRecord),
    (as_network_config, NetworkConfig, NetworkConfigRecord),
    (as_network_contract, NetworkContract, NetworkContractRecord),
    (as_external_mapping, ExternalMapping, ExternalMappingRecord),
    (as_claim, Claim, ClaimRecord),
    (as_volume, Volume, VolumeRecord),
);

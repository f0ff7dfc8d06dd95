//! The typed, versioned object store backing one simulated cluster.
//!
//! All mutations go through [`Store::apply`] / [`Store::delete`], are totally
//! ordered, and append to a mutation log. Watches deliver a synthetic `Added`
//! snapshot followed by live events in resource-version order, so any watcher
//! observes a prefix-consistent view of the log.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::model::object::{Object, ObjectKey, ObjectKind};
use crate::model::LiquidError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventType {
    Added,
    Modified,
    Deleted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoreEvent {
    pub event_type: EventType,
    pub version: u64,
    pub object: Object,
}

impl StoreEvent {
    pub fn key(&self) -> ObjectKey {
        ObjectKey::of(&self.object)
    }
}

/// Outcome of an apply: whether anything changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyOutcome {
    Created,
    Updated,
    Unchanged,
}

#[derive(Debug, Default)]
pub struct Store {
    objects: BTreeMap<ObjectKey, Object>,
    next_version: u64,
    log: Vec<StoreEvent>,
}

/// Cursor into the mutation log, handed out by [`Store::watch`].
#[derive(Debug, Clone)]
pub struct WatchHandle {
    pub kind: ObjectKind,
    pub namespace: Option<String>,
    cursor: usize,
}

fn kind_is_namespaced(kind: ObjectKind) -> bool {
    matches!(
        kind,
        ObjectKind::Pod
            | ObjectKind::Service
            | ObjectKind::EndpointSlice
            | ObjectKind::ConfigMap
            | ObjectKind::Secret
            | ObjectKind::NamespaceOffloading
            | ObjectKind::ShadowPod
            | ObjectKind::Claim
    )
}

impl Store {
    pub fn new() -> Self {
        Store {
            objects: BTreeMap::new(),
            next_version: 0,
            log: Vec::new(),
        }
    }

    /// Creates or updates `object`, bumping its resource version iff any
    /// field actually changed. A caller-supplied non-zero resource version
    /// that does not match the stored one is a conflict.
    pub fn apply(&mut self, object: impl Into<Object>) -> Result<(Object, ApplyOutcome), LiquidError> {
        let mut object = object.into();
        let key = ObjectKey::of(&object);
        if key.name.is_empty() {
            return Err(LiquidError::InvalidObject(format!("{key}: empty name")));
        }
        if kind_is_namespaced(key.kind) != key.namespace.is_some() {
            return Err(LiquidError::InvalidObject(format!(
                "{key}: wrong namespace scoping for kind {}",
                key.kind
            )));
        }

        match self.objects.get(&key) {
            None => {
                self.next_version += 1;
                let meta = object.meta_mut();
                meta.uid = key.uid();
                meta.resource_version = self.next_version;
                meta.creation_seq = self.next_version;
                self.objects.insert(key, object.clone());
                self.log.push(StoreEvent {
                    event_type: EventType::Added,
                    version: self.next_version,
                    object: object.clone(),
                });
                Ok((object, ApplyOutcome::Created))
            }
            Some(existing) => {
                let supplied_version = object.meta().resource_version;
                if supplied_version != 0 && supplied_version != existing.meta().resource_version {
                    return Err(LiquidError::VersionConflict {
                        key: key.to_string(),
                        supplied: supplied_version,
                        current: existing.meta().resource_version,
                    });
                }
                // normalize the store-owned meta fields before comparing
                {
                    let existing_meta = existing.meta().clone();
                    let meta = object.meta_mut();
                    meta.uid = existing_meta.uid.clone();
                    meta.resource_version = existing_meta.resource_version;
                    meta.creation_seq = existing_meta.creation_seq;
                }
                if &object == existing {
                    return Ok((object, ApplyOutcome::Unchanged));
                }
                self.next_version += 1;
                object.meta_mut().resource_version = self.next_version;
                self.objects.insert(key, object.clone());
                self.log.push(StoreEvent {
                    event_type: EventType::Modified,
                    version: self.next_version,
                    object: object.clone(),
                });
                Ok((object, ApplyOutcome::Updated))
            }
        }
    }

    pub fn delete(&mut self, key: &ObjectKey) -> Result<Object, LiquidError> {
        match self.objects.remove(key) {
            Some(object) => {
                self.next_version += 1;
                self.log.push(StoreEvent {
                    event_type: EventType::Deleted,
                    version: self.next_version,
                    object: object.clone(),
                });
                Ok(object)
            }
            None => Err(LiquidError::NotFound(key.to_string())),
        }
    }

    pub fn get(&self, key: &ObjectKey) -> Option<&Object> {
        self.objects.get(key)
    }

    pub fn contains(&self, key: &ObjectKey) -> bool {
        self.objects.contains_key(key)
    }

    /// All objects of `kind`, in deterministic key order.
    pub fn list(&self, kind: ObjectKind) -> impl Iterator<Item = &Object> {
        self.objects
            .range(
                ObjectKey {
                    kind,
                    namespace: None,
                    name: String::new(),
                }..,
            )
            .take_while(move |(k, _)| k.kind == kind)
            .map(|(_, v)| v)
    }

    pub fn count(&self, kind: ObjectKind) -> usize {
        self.list(kind).count()
    }

    pub fn total_objects(&self) -> usize {
        self.objects.len()
    }

    /// Read-modify-write helper: clones the object, lets `mutate` edit it,
    /// and applies it back (carrying the read version, so interleaved writes
    /// surface as conflicts).
    pub fn update<F>(&mut self, key: &ObjectKey, mutate: F) -> Result<(Object, ApplyOutcome), LiquidError>
    where
        F: FnOnce(&mut Object),
    {
        let mut object = self
            .get(key)
            .cloned()
            .ok_or_else(|| LiquidError::NotFound(key.to_string()))?;
        mutate(&mut object);
        self.apply(object)
    }

    /// Begins a watch: synthetic `Added` events for all existing matching
    /// objects, then live events via [`Store::poll`].
    pub fn watch(&self, kind: ObjectKind, namespace: Option<&str>) -> (Vec<StoreEvent>, WatchHandle) {
        let initial = self
            .list(kind)
            .filter(|o| namespace.is_none() || o.meta().namespace.as_deref() == namespace)
            .map(|o| StoreEvent {
                event_type: EventType::Added,
                version: o.meta().resource_version,
                object: o.clone(),
            })
            .collect();
        (
            initial,
            WatchHandle {
                kind,
                namespace: namespace.map(|s| s.to_string()),
                cursor: self.log.len(),
            },
        )
    }

    /// Drains the events that occurred since the last poll of this handle.
    pub fn poll(&self, handle: &mut WatchHandle) -> Vec<StoreEvent> {
        let events = self.log[handle.cursor..]
            .iter()
            .filter(|e| {
                e.object.kind() == handle.kind
                    && (handle.namespace.is_none()
                        || e.object.meta().namespace == handle.namespace)
            })
            .cloned()
            .collect();
        handle.cursor = self.log.len();
        events
    }

    pub fn log(&self) -> &[StoreEvent] {
        &self.log
    }

    pub fn log_len(&self) -> usize {
        self.log.len()
    }

    pub fn current_version(&self) -> u64 {
        self.next_version
    }

    /// Deterministic dump of all objects, for golden-state comparisons.
    pub fn snapshot(&self) -> Vec<Object> {
        self.objects.values().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::records::ServiceRecord;
    use crate::model::ObjectMeta;

    fn service(name: &str) -> ServiceRecord {
        ServiceRecord {
            meta: ObjectMeta::namespaced("default", name),
            selector: Default::default(),
            cluster_ip: None,
            ports: vec![80],
        }
    }

    #[test]
    fn fresh_object_version_1_added_event() {
        let mut store = Store::new();
        let (applied, outcome) = store.apply(service("s3")).unwrap();
        assert_eq!(outcome, ApplyOutcome::Created);
        assert_eq!(applied.meta().resource_version, 1);
        assert_eq!(store.log().len(), 1);
        assert_eq!(store.log()[0].event_type, EventType::Added);
    }

    #[test]
    fn identical_reapply_same_version_no_event() {
        let mut store = Store::new();
        let (applied, _) = store.apply(service("s3")).unwrap();
        let (reapplied, outcome) = store.apply(applied.as_service().unwrap().clone()).unwrap();
        assert_eq!(outcome, ApplyOutcome::Unchanged);
        assert_eq!(reapplied.meta().resource_version, 1);
        assert_eq!(store.log().len(), 1);

        // a semantically identical write from scratch (version 0) is also a no-op
        let (fresh, outcome) = store.apply(service("s3")).unwrap();
        assert_eq!(outcome, ApplyOutcome::Unchanged);
        assert_eq!(fresh.meta().resource_version, 1);
    }

    #[test]
    fn stale_version_after_concurrent_write_conflicts() {
        let mut store = Store::new();
        store.apply(service("s3")).unwrap();

        // two writers read the same version
        let key = ObjectKey::namespaced(ObjectKind::Service, "default", "s3");
        let mut w1 = store.get(&key).unwrap().as_service().unwrap().clone();
        let mut w2 = store.get(&key).unwrap().as_service().unwrap().clone();

        w1.ports = vec![80, 443];
        store.apply(w1.clone()).unwrap();

        w2.ports = vec![8080];
        let err = store.apply(w2.clone()).unwrap_err();
        assert!(matches!(err, LiquidError::VersionConflict { .. }));

        // oracle: serial re-execution (re-read, then write) succeeds and
        // leaves the store exactly as two serial writes would
        let mut w2_retry = store.get(&key).unwrap().as_service().unwrap().clone();
        w2_retry.ports = vec![8080];
        store.apply(w2_retry).unwrap();
        let end = store.get(&key).unwrap().as_service().unwrap().clone();
        assert_eq!(end.ports, vec![8080]);
        assert_eq!(end.meta.resource_version, 3);
    }

    #[test]
    fn watch_on_empty_store_has_empty_initial_list() {
        let store = Store::new();
        let (initial, _) = store.watch(ObjectKind::Pod, None);
        assert!(initial.is_empty());
    }

    #[test]
    fn watch_after_three_pods_sees_three_added_then_live() {
        use crate::model::records::PodRecord;
        use crate::model::resources::ResourceVector;
        let mut store = Store::new();
        for i in 0..3 {
            store
                .apply(PodRecord::new("default", format!("p{i}"), ResourceVector::ZERO))
                .unwrap();
        }
        let (initial, mut handle) = store.watch(ObjectKind::Pod, None);
        assert_eq!(initial.len(), 3);
        assert!(initial.iter().all(|e| e.event_type == EventType::Added));

        store
            .apply(PodRecord::new("default", "p3", ResourceVector::ZERO))
            .unwrap();
        let live = store.poll(&mut handle);
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].object.meta().name, "p3");
    }

    #[test]
    fn event_stream_equals_mutation_log_replay() {
        use crate::model::records::PodRecord;
        use crate::model::resources::ResourceVector;
        let mut store = Store::new();
        let (_, mut handle) = store.watch(ObjectKind::Pod, None);

        store
            .apply(PodRecord::new("default", "a", ResourceVector::ZERO))
            .unwrap();
        let mut pod = store
            .get(&ObjectKey::namespaced(ObjectKind::Pod, "default", "a"))
            .unwrap()
            .as_pod()
            .unwrap()
            .clone();
        pod.pending_reason = Some("x".into());
        store.apply(pod).unwrap();
        store.apply(service("s")).unwrap();
        store
            .delete(&ObjectKey::namespaced(ObjectKind::Pod, "default", "a"))
            .unwrap();

        let streamed = store.poll(&mut handle);
        // oracle: replay the full mutation log, filtered the same way
        let replayed: Vec<_> = store
            .log()
            .iter()
            .filter(|e| e.object.kind() == ObjectKind::Pod)
            .cloned()
            .collect();
        assert_eq!(streamed, replayed);
        assert_eq!(streamed.len(), 3);
        // versions strictly increase along the stream
        assert!(streamed.windows(2).all(|w| w[0].version < w[1].version));
    }

    #[test]
    fn namespace_scoping_enforced() {
        let mut store = Store::new();
        let mut svc = service("bad");
        svc.meta.namespace = None;
        assert!(store.apply(svc).is_err());
    }

    #[test]
    fn delete_missing_is_not_found() {
        let mut store = Store::new();
        let err = store
            .delete(&ObjectKey::namespaced(ObjectKind::Service, "default", "nope"))
            .unwrap_err();
        assert!(matches!(err, LiquidError::NotFound(_)));
    }
}

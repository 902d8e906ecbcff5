//! Shared memo store for the recursive invariants, keyed by canonical form.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;

use crate::matroid::CanonicalKey;
use crate::poly::IntPoly;

/// Thread-safe insert-if-absent table with hit/miss counters.
#[derive(Debug)]
pub struct MemoTable<K, V> {
    map: RwLock<HashMap<K, V>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<K: Eq + Hash, V: Clone> MemoTable<K, V> {
    pub fn new() -> Self {
        MemoTable {
            map: RwLock::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        let found = self
            .map
            .read()
            .expect("memo lock poisoned")
            .get(key)
            .cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Inserts unless present; returns the stored value. Concurrent writers compute
    /// equal values, so whichever lands first is kept.
    pub fn insert(&self, key: K, value: V) -> V {
        self.map
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

impl<K: Eq + Hash, V: Clone> Default for MemoTable<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

/// Memo tables for the Kazhdan–Lusztig polynomial and the recursive `c` and `Eu`
/// routes. Entries are never evicted.
#[derive(Debug, Default)]
pub struct Engine {
    pub(crate) kl: MemoTable<CanonicalKey, IntPoly>,
    pub(crate) c: MemoTable<CanonicalKey, BigInt>,
    pub(crate) eu: MemoTable<CanonicalKey, BigInt>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    /// The Kazhdan–Lusztig cache.
    pub fn kl_cache(&self) -> &MemoTable<CanonicalKey, IntPoly> {
        &self.kl
    }
}

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

/// Process-wide memo of `0!, 1!, ..., n!`.
///
/// Readers take a cheap `Arc` snapshot; growth builds a longer table and
/// swaps it in, so concurrent readers never block on each other.
static TABLE: OnceLock<RwLock<Arc<Vec<BigUint>>>> = OnceLock::new();

fn table() -> &'static RwLock<Arc<Vec<BigUint>>> {
    TABLE.get_or_init(|| RwLock::new(Arc::new(vec![BigUint::one()])))
}

/// A snapshot of the factorial table covering at least `0..=max`.
pub fn factorials(max: usize) -> Arc<Vec<BigUint>> {
    {
        let snap = table().read().unwrap_or_else(|e| e.into_inner());
        if snap.len() > max {
            return Arc::clone(&snap);
        }
    }
    let mut guard = table().write().unwrap_or_else(|e| e.into_inner());
    if guard.len() <= max {
        let mut grown: Vec<BigUint> = Vec::with_capacity(max + 1);
        grown.extend(guard.iter().cloned());
        while grown.len() <= max {
            let n = grown.len();
            let next = &grown[n - 1] * BigUint::from(n);
            grown.push(next);
        }
        *guard = Arc::new(grown);
    }
    Arc::clone(&guard)
}

/// Current number of cached entries.
pub fn cached_len() -> usize {
    table().read().unwrap_or_else(|e| e.into_inner()).len()
}

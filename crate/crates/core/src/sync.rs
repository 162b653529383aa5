//! Conductor-data cache. With `std` the tables are shared process-wide;
//! without `std` they are recomputed per request.

use crate::scalar::poly::CondData;
use alloc::sync::Arc;

#[cfg(feature = "std")]
mod imp {
    use super::*;
    use alloc::collections::BTreeMap;
    use std::sync::{Mutex, OnceLock};

    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<CondData>>>> = OnceLock::new();

    pub fn conductor_data(n: u32, need_pow: usize) -> Arc<CondData> {
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        {
            let guard = cache.lock().unwrap();
            if let Some(d) = guard.get(&n) {
                if d.powers.len() >= need_pow {
                    return d.clone();
                }
            }
        }
        // Build outside the lock; cyclotomic polynomials recurse on divisors.
        let data = Arc::new(CondData::build(n, need_pow));
        let mut guard = cache.lock().unwrap();
        let entry = guard.entry(n).or_insert_with(|| data.clone());
        if entry.powers.len() < data.powers.len() {
            *entry = data.clone();
        }
        entry.clone()
    }
}

#[cfg(not(feature = "std"))]
mod imp {
    use super::*;

    pub fn conductor_data(n: u32, need_pow: usize) -> Arc<CondData> {
        Arc::new(CondData::build(n, need_pow))
    }
}

pub(crate) use imp::conductor_data;

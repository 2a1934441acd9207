//! Character values of symmetric groups by the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{binomial, HookPartition, Partition};

/// The cycle type of a permutation, as a partition of its degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct CycleType(Partition);

impl CycleType {
    /// Builds a cycle type from cycle lengths in any order.
    pub fn new(lengths: Vec<usize>) -> Self {
        CycleType(Partition::from_unsorted(lengths))
    }

    pub fn identity(n: usize) -> Self {
        CycleType(Partition::from_unsorted(vec![1; n]))
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    /// `(−1)^{n − #cycles}`.
    pub fn sign(&self) -> i128 {
        if (self.0.weight() - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Concatenation of cycle types (disjoint union of permutations).
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a CycleType>) -> CycleType {
        CycleType::new(parts.into_iter().flat_map(|c| c.0.parts().iter().copied()).collect())
    }

    /// Each `ℓ`-cycle replaced by a `2ℓ`-cycle.
    pub fn doubled(&self) -> CycleType {
        CycleType(Partition::from_unsorted(self.0.parts().iter().map(|&l| 2 * l).collect()))
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        CycleType(p)
    }
}

type MnKey = (Vec<usize>, Vec<usize>);

/// A memo table for Murnaghan–Nakayama evaluations. Shareable across threads.
#[derive(Default)]
pub struct MnCache {
    map: Mutex<HashMap<MnKey, i128>>,
}

impl MnCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ` evaluated at a permutation of the given cycle type.
    pub fn value(&self, lambda: &Partition, ct: &CycleType) -> Result<i128> {
        if lambda.weight() != ct.degree() {
            return Err(Error::WeightMismatch { expected: lambda.weight(), actual: ct.degree() });
        }
        Ok(self.eval(lambda.parts(), ct.0.parts()))
    }

    fn eval(&self, lambda: &[usize], cycles: &[usize]) -> i128 {
        if cycles.is_empty() {
            return 1;
        }
        if lambda.len() <= 1 {
            // trivial character
            return 1;
        }
        let key = (lambda.to_vec(), cycles.to_vec());
        if let Some(&v) = self.map.lock().unwrap().get(&key) {
            return v;
        }
        // strip the largest cycle first
        let r = cycles[0];
        let rest = &cycles[1..];
        let total: i128 =
            remove_border_strips(lambda, r).into_iter().map(|(sign, smaller)| sign * self.eval(&smaller, rest)).sum();
        self.map.lock().unwrap().insert(key, total);
        total
    }
}

/// Every way to remove a border strip of size `r` from `λ`, with sign
/// `(−1)^{height}`. Works on the first-column hook lengths (beta numbers):
/// a strip removal moves one bead from `β` to an empty position `β − r`, and
/// the height is the number of beads jumped over.
fn remove_border_strips(lambda: &[usize], r: usize) -> Vec<(i128, Vec<usize>)> {
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<usize> = moved.iter().enumerate().map(|(j, &c)| c - (l - 1 - j)).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((sign, parts));
    }
    out
}

fn global_cache() -> &'static MnCache {
    static CACHE: OnceLock<MnCache> = OnceLock::new();
    CACHE.get_or_init(MnCache::new)
}

/// `χ^λ(ct)` using a process-wide memo table.
pub fn mn_value(lambda: &Partition, ct: &CycleType) -> Result<i128> {
    global_cache().value(lambda, ct)
}

/// Degree of a hook character: `C(n − 1, x)`.
pub fn hook_degree(h: HookPartition) -> u128 {
    binomial(h.n() as u64 - 1, h.x() as i64)
}

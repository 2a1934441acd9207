//! Partitions, hooks, compositions and binary expansions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An integer partition stored as its weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros, so any multiset of non-negative integers is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First part `λ₁`, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), with 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols).map(|c| self.parts.iter().take_while(|&&p| p > c).count()).collect();
        Partition { parts }
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    pub fn as_hook(&self) -> Option<HookPartition> {
        if self.is_empty() || !self.is_hook() {
            return None;
        }
        Some(HookPartition { n: self.weight(), x: self.len() - 1 })
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        Partition::in_box(n, n, n)
    }

    /// All partitions of `n` with first part at most `max_part` and at most
    /// `max_len` parts, in reverse lexicographic order.
    pub fn in_box(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
        fn rec(rem: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if slots == 0 || cap * slots < rem {
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max_part, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `n` contained in `self`.
    pub fn subpartitions_of_weight(&self, n: usize) -> Vec<Partition> {
        fn rec(outer: &[usize], row: usize, rem: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if row >= outer.len() {
                return;
            }
            let hi = cap.min(outer[row]).min(rem);
            let room: usize = outer[row..].iter().map(|&p| p.min(hi)).sum();
            if room < rem {
                return;
            }
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(outer, row + 1, rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, n, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        // run-length with exponents: (5,1^3)
        let mut i = 0;
        let mut first = true;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{run}")?;
            }
            i += run;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The hook `(n − x, 1^x)`: weight `n ≥ 1`, leg length `x ∈ [0, n − 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HookPartition {
    n: usize,
    x: usize,
}

impl HookPartition {
    pub fn new(n: usize, x: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a hook must have positive weight"));
        }
        if x >= n {
            return Err(Error::invalid(format!("leg length {x} out of range [0, {}]", n - 1)));
        }
        Ok(HookPartition { n, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Leg length.
    pub fn x(&self) -> usize {
        self.x
    }

    /// Arm: the first part `n − x`.
    pub fn arm(&self) -> usize {
        self.n - self.x
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.x + 1);
        parts.push(self.n - self.x);
        parts.extend(std::iter::repeat_n(1, self.x));
        Partition { parts }
    }

    pub fn conjugate(&self) -> HookPartition {
        conjugate_hook(*self)
    }

    /// All `n` hooks of `n`, sorted by leg length.
    pub fn all(n: usize) -> Vec<HookPartition> {
        (0..n).map(|x| HookPartition { n, x }).collect()
    }
}

impl fmt::Display for HookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_partition())
    }
}

impl fmt::Debug for HookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_partition())
    }
}

impl TryFrom<&Partition> for HookPartition {
    type Error = Error;

    fn try_from(p: &Partition) -> Result<Self> {
        p.as_hook().ok_or_else(|| Error::invalid(format!("{p} is not a hook")))
    }
}

/// A finite sequence of non-negative integers; zero entries are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Composition {
    entries: Vec<usize>,
}

impl Composition {
    pub fn new(entries: Vec<usize>) -> Self {
        Composition { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    /// The composition with zero entries removed.
    pub fn positive_entries(&self) -> Vec<usize> {
        self.entries.iter().copied().filter(|&e| e > 0).collect()
    }
}

/// The binary expansion `n = 2^{k₁} + ⋯ + 2^{k_t}`, `k₁ > ⋯ > k_t ≥ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct BinaryExpansion {
    exponents: Vec<u32>,
}

impl BinaryExpansion {
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// The 2-power sizes `2^{k_i}` in decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        self.exponents.iter().map(|&k| 1usize << k).collect()
    }

    pub fn value(&self) -> usize {
        self.parts().iter().sum()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

pub fn binary_expansion(n: usize) -> Result<BinaryExpansion> {
    if n == 0 {
        return Err(Error::invalid("binary expansion of 0 is empty"));
    }
    let exponents = (0..usize::BITS).rev().filter(|&k| n >> k & 1 == 1).collect();
    Ok(BinaryExpansion { exponents })
}

/// Binary digits `(a_width, …, a_0)` of `x`, most significant first,
/// keeping leading zeros.
pub fn binary_digits(x: usize, width: u32) -> Result<Vec<u8>> {
    if width >= usize::BITS - 1 || (x >> (width + 1)) != 0 {
        return Err(Error::invalid(format!("{x} does not fit in {} binary digits", width + 1)));
    }
    Ok((0..=width).rev().map(|i| (x >> i & 1) as u8).collect())
}

/// `(n − x, 1^x) ↦ (x + 1, 1^{n−1−x})`.
pub fn conjugate_hook(h: HookPartition) -> HookPartition {
    HookPartition { n: h.n, x: h.n - 1 - h.x }
}

/// Whether `p` fits in a `t × t` square.
pub fn in_box(p: &Partition, t: usize) -> bool {
    p.first() <= t && p.len() <= t
}

/// The hooks of `n` fitting in a `t × t` square, sorted by leg length.
pub fn hooks_in_box(n: usize, t: usize) -> Result<Vec<HookPartition>> {
    if t == 0 || t > n {
        return Err(Error::invalid(format!("box size {t} out of range [1, {n}]")));
    }
    // arm n − x ≤ t and leg + 1 = x + 1 ≤ t
    let lo = n.saturating_sub(t);
    Ok((lo..t.min(n)).map(|x| HookPartition { n, x }).collect())
}

/// Binomial coefficient, zero when `y ∉ [0, t]`.
///
/// Panics if the value does not fit in a `u128`.
pub fn binomial(t: u64, y: i64) -> u128 {
    if y < 0 || y as u64 > t {
        return 0;
    }
    let y = (y as u64).min(t - y as u64);
    let mut acc: u128 = 1;
    for i in 0..y {
        // acc * (t - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((t - i) as u128).expect("binomial coefficient overflows u128") / (i as u128 + 1);
    }
    acc
}

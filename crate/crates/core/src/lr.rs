//! Littlewood–Richardson coefficients.
//!
//! [`lr_coefficient`] counts LR skew tableaux directly and is the reference
//! for everything else here. [`lr_hook`] is the closed binomial form for
//! hooks; it must agree with [`lr_multi`] on every input.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::partitions::{binomial, Composition, HookPartition, Partition};

/// `LR(λ; μ, ν)`: the number of semistandard skew tableaux of shape `λ/μ`
/// and content `ν` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let expected = lambda.weight();
    let actual = mu.weight() + nu.weight();
    if expected != actual {
        return Err(Error::WeightMismatch { expected, actual });
    }
    if !lambda.contains(mu) || !lambda.contains(nu) {
        return Ok(0);
    }
    // cells in reverse reading order: rows top to bottom, each right to left
    let rows = lambda.len();
    let mut cells = Vec::with_capacity(nu.weight());
    for r in 0..rows {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<u8>> = (0..rows).map(|r| vec![0u8; lambda.part(r)]).collect();
    let mut remaining: Vec<usize> = nu.parts().to_vec();
    let mut used = vec![0usize; nu.len()];
    let mut count = 0u64;
    fill(lambda, mu, &cells, 0, &mut grid, &mut remaining, &mut used, &mut count);
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    lambda: &Partition,
    mu: &Partition,
    cells: &[(usize, usize)],
    idx: usize,
    grid: &mut [Vec<u8>],
    remaining: &mut [usize],
    used: &mut [usize],
    count: &mut u64,
) {
    if idx == cells.len() {
        *count += 1;
        return;
    }
    let (r, c) = cells[idx];
    // rows weakly increase left to right: bounded by the right neighbour
    let upper = if c + 1 < lambda.part(r) { grid[r][c + 1] as usize } else { remaining.len().saturating_sub(1) };
    // columns strictly increase downwards
    let lower = if r > 0 && c >= mu.part(r - 1) { grid[r - 1][c] as usize + 1 } else { 0 };
    // the label in row r never exceeds r in a lattice filling
    let upper = upper.min(r);
    for v in lower..=upper {
        if v >= remaining.len() || remaining[v] == 0 {
            continue;
        }
        if v > 0 && used[v] >= used[v - 1] {
            continue;
        }
        grid[r][c] = v as u8;
        remaining[v] -= 1;
        used[v] += 1;
        fill(lambda, mu, cells, idx + 1, grid, remaining, used, count);
        remaining[v] += 1;
        used[v] -= 1;
    }
}

/// `LR(λ; μ₁, …, μ_k)`: multiplicity of `χ^λ` in the induction of
/// `χ^{μ₁} × ⋯ × χ^{μ_k}` from the Young subgroup. Empty inners are skipped.
pub fn lr_multi(lambda: &Partition, inners: &[Partition]) -> Result<u64> {
    let inners: Vec<&Partition> = inners.iter().filter(|p| !p.is_empty()).collect();
    let total: usize = inners.iter().map(|p| p.weight()).sum();
    if total != lambda.weight() {
        return Err(Error::WeightMismatch { expected: lambda.weight(), actual: total });
    }
    if inners.is_empty() {
        return Ok(1);
    }
    // suffix weights
    let mut suffix = vec![0usize; inners.len() + 1];
    for i in (0..inners.len()).rev() {
        suffix[i] = suffix[i + 1] + inners[i].weight();
    }
    let mut memo = HashMap::new();
    fold(lambda, &inners, &suffix, 0, &mut memo)
}

fn fold(
    lambda: &Partition,
    inners: &[&Partition],
    suffix: &[usize],
    i: usize,
    memo: &mut HashMap<(Partition, usize), u64>,
) -> Result<u64> {
    if i + 1 == inners.len() {
        return Ok(u64::from(lambda == inners[i]));
    }
    if let Some(&v) = memo.get(&(lambda.clone(), i)) {
        return Ok(v);
    }
    let mut total = 0u64;
    if lambda.contains(inners[i]) {
        for nu in lambda.subpartitions_of_weight(suffix[i + 1]) {
            let c = lr_coefficient(lambda, inners[i], &nu)?;
            if c == 0 {
                continue;
            }
            let rest = fold(&nu, inners, suffix, i + 1, memo)?;
            total += c * rest;
        }
    }
    memo.insert((lambda.clone(), i), total);
    Ok(total)
}

/// Closed form for hooks: `LR(h; h₁, …, h_t) = C(t − 1, x − Σ x_i)`.
pub fn lr_hook(h: HookPartition, hooks: &[HookPartition]) -> Result<u128> {
    let total: usize = hooks.iter().map(|g| g.n()).sum();
    if total != h.n() {
        return Err(Error::WeightMismatch { expected: h.n(), actual: total });
    }
    let t = hooks.len() as u64;
    let y = h.x() as i64 - hooks.iter().map(|g| g.x() as i64).sum::<i64>();
    Ok(binomial(t - 1, y))
}

/// Restriction of `χ^h` to the Young subgroup of `shape`: every tuple of
/// hooks (one per entry) with a nonzero coefficient, and its multiplicity.
pub fn restrict_hook_to_young(h: HookPartition, shape: &Composition) -> Result<BTreeMap<Vec<HookPartition>, u128>> {
    if shape.weight() != h.n() {
        return Err(Error::WeightMismatch { expected: h.n(), actual: shape.weight() });
    }
    if shape.entries().contains(&0) {
        return Err(Error::invalid("restriction shape entries must be positive"));
    }
    let mut out = BTreeMap::new();
    let mut tuple = Vec::with_capacity(shape.entries().len());
    collect_tuples(h, shape.entries(), &mut tuple, &mut out)?;
    Ok(out)
}

fn collect_tuples(
    h: HookPartition,
    shape: &[usize],
    tuple: &mut Vec<HookPartition>,
    out: &mut BTreeMap<Vec<HookPartition>, u128>,
) -> Result<()> {
    if tuple.len() == shape.len() {
        let m = lr_hook(h, tuple)?;
        if m > 0 {
            out.insert(tuple.clone(), m);
        }
        return Ok(());
    }
    // prune: Σ x_i must stay ≤ x
    let used: usize = tuple.iter().map(|g| g.x()).sum();
    for g in HookPartition::all(shape[tuple.len()]) {
        if used + g.x() > h.x() {
            break;
        }
        tuple.push(g);
        collect_tuples(h, shape, tuple, out)?;
        tuple.pop();
    }
    Ok(())
}

/// A set of partitions of a common weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionSet {
    n: usize,
    members: BTreeSet<Partition>,
}

impl PartitionSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = Partition>) -> Result<Self> {
        let members: BTreeSet<Partition> = members.into_iter().collect();
        if let Some(p) = members.iter().find(|p| p.weight() != n) {
            return Err(Error::WeightMismatch { expected: n, actual: p.weight() });
        }
        Ok(PartitionSet { n, members })
    }

    /// `B_n(t)`: partitions of `n` inside a `t × t` square.
    pub fn square(n: usize, t: usize) -> Self {
        PartitionSet { n, members: Partition::in_box(n, t, t).into_iter().collect() }
    }

    /// `B̄_n(t)`: hooks of `n` inside a `t × t` square.
    pub fn hook_square(n: usize, t: usize) -> Self {
        let members = (0..n)
            .map(|x| HookPartition::new(n, x).expect("x < n").to_partition())
            .filter(|p| crate::partitions::in_box(p, t))
            .collect();
        PartitionSet { n, members }
    }

    pub fn from_hooks(n: usize, hooks: impl IntoIterator<Item = HookPartition>) -> Result<Self> {
        PartitionSet::new(n, hooks.into_iter().map(|h| h.to_partition()))
    }

    pub fn weight(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<Partition> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.members.contains(p)
    }

    pub fn is_subset(&self, other: &PartitionSet) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    pub fn hooks_only(&self) -> PartitionSet {
        PartitionSet { n: self.n, members: self.members.iter().filter(|p| p.is_hook()).cloned().collect() }
    }
}

/// `A ⋆ B`: every `λ` with `LR(λ; μ, ν) > 0` for some `μ ∈ A`, `ν ∈ B`.
pub fn star(a: &PartitionSet, b: &PartitionSet) -> PartitionSet {
    let n = a.n + b.n;
    let mut members = BTreeSet::new();
    for mu in &a.members {
        for nu in &b.members {
            // λ ⊇ μ, ν and fits in a (μ₁+ν₁) × (l(μ)+l(ν)) box
            for lambda in Partition::in_box(n, mu.first() + nu.first(), mu.len() + nu.len()) {
                if members.contains(&lambda) || !lambda.contains(mu) || !lambda.contains(nu) {
                    continue;
                }
                if lr_coefficient(&lambda, mu, nu).expect("weights agree") > 0 {
                    members.insert(lambda);
                }
            }
        }
    }
    PartitionSet { n, members }
}

/// `A ◇ B := (A ⋆ B) ∩ ℋ(n + m)`.
pub fn diamond(a: &PartitionSet, b: &PartitionSet) -> PartitionSet {
    star(a, b).hooks_only()
}

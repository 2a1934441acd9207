//! Brute-force restriction of hook characters to `P_n` by the class-function
//! inner product.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{binary_expansion, HookPartition, Partition};
use crate::sym_chars::{hook_degree, mn_value, CycleType};
use crate::wreath::{sylow_order, ProductIrrLabel, WreathTower};

/// One irreducible constituent of a restriction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Constituent {
    pub label: ProductIrrLabel,
    #[serde(skip)]
    pub indices: Vec<usize>,
    pub degree: u128,
    pub multiplicity: u64,
}

/// `χ^h↓_{P_n}` as a list of constituents ordered by degree, then label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BranchingDecomposition {
    pub hook: HookPartition,
    pub constituents: Vec<Constituent>,
}

impl BranchingDecomposition {
    pub fn n(&self) -> usize {
        self.hook.n()
    }

    /// Multiplicity of `label`, zero if absent.
    pub fn multiplicity(&self, label: &ProductIrrLabel) -> u64 {
        // sorted by (degree, indices), and label order agrees with index order
        let key = (label.degree(), label);
        self.constituents
            .binary_search_by(|c| (c.degree, &c.label).cmp(&key))
            .map_or(0, |i| self.constituents[i].multiplicity)
    }

    pub fn linear(&self) -> impl Iterator<Item = &Constituent> {
        self.constituents.iter().filter(|c| c.degree == 1)
    }

    pub fn profile(&self) -> DegreeProfile {
        let mut profile = DegreeProfile::default();
        for c in &self.constituents {
            let j = c.degree.trailing_zeros();
            *profile.distinct.entry(j).or_default() += 1;
            *profile.total.entry(j).or_default() += c.multiplicity;
        }
        profile
    }

    /// `Σ multiplicity · degree`.
    pub fn total_degree(&self) -> u128 {
        self.constituents.iter().map(|c| c.multiplicity as u128 * c.degree).sum()
    }
}

/// Constituent counts by degree exponent `j` (degree `2^j`).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct DegreeProfile {
    /// Number of distinct constituents of degree `2^j`.
    pub distinct: BTreeMap<u32, u64>,
    /// Total multiplicity at degree `2^j`.
    pub total: BTreeMap<u32, u64>,
}

impl DegreeProfile {
    pub fn distinct_at(&self, j: u32) -> u64 {
        self.distinct.get(&j).copied().unwrap_or(0)
    }
}

/// Product classes of `P_n`, with their concatenated cycle types reduced to
/// indices into a table of distinct cycle types.
struct ProductClasses {
    levels: Vec<u32>,
    dims: Vec<usize>,
    type_of: Vec<u32>,
    cycle_types: Vec<CycleType>,
}

/// The restriction oracle, memoised per hook and safe to share across threads.
pub struct Oracle {
    tower: Arc<WreathTower>,
    classes: Mutex<HashMap<usize, Arc<ProductClasses>>>,
    memo: Mutex<HashMap<HookPartition, Arc<BranchingDecomposition>>>,
}

impl Oracle {
    pub fn new(tower: Arc<WreathTower>) -> Self {
        Oracle { tower, classes: Mutex::default(), memo: Mutex::default() }
    }

    pub fn with_cap(cap: u32) -> Result<Self> {
        Ok(Oracle::new(Arc::new(WreathTower::new(cap)?)))
    }

    pub fn tower(&self) -> &WreathTower {
        &self.tower
    }

    /// Largest `n` the oracle accepts: `2^cap`.
    pub fn max_n(&self) -> usize {
        1 << self.tower.cap()
    }

    /// Errors unless `1 ≤ n ≤ 2^cap`. Larger `n` would pair a top-level
    /// factor with further factors and multiply the class count.
    pub fn check_cap(&self, n: usize) -> Result<()> {
        binary_expansion(n)?;
        if n > self.max_n() {
            return Err(Error::OracleLimit { n, max: self.max_n() });
        }
        Ok(())
    }

    pub fn within_cap(&self, n: usize) -> bool {
        self.check_cap(n).is_ok()
    }

    /// `χ^h↓_{P_n}`.
    pub fn restrict(&self, h: HookPartition) -> Result<Arc<BranchingDecomposition>> {
        if let Some(d) = self.memo.lock().unwrap().get(&h) {
            return Ok(d.clone());
        }
        let constituents = self.decompose(&h.to_partition())?;
        let d = BranchingDecomposition { hook: h, constituents };
        let total = d.total_degree();
        if total != hook_degree(h) {
            return Err(Error::consistency(format!(
                "restriction of {h} has total degree {total}, expected {}",
                hook_degree(h)
            )));
        }
        let d = Arc::new(d);
        self.memo.lock().unwrap().insert(h, d.clone());
        Ok(d)
    }

    /// Restrictions of every hook of `n`, computed in parallel.
    pub fn restrict_all(&self, n: usize) -> Result<Vec<Arc<BranchingDecomposition>>> {
        self.check_cap(n)?;
        HookPartition::all(n).into_par_iter().map(|h| self.restrict(h)).collect()
    }

    /// Decomposition of any `χ^λ` restricted to `P_n`.
    pub(crate) fn decompose(&self, lambda: &Partition) -> Result<Vec<Constituent>> {
        let n = lambda.weight();
        self.check_cap(n)?;
        let pc = self.product_classes(n)?;
        let values: Vec<i128> = pc.cycle_types.iter().map(|ct| mn_value(lambda, ct)).collect::<Result<_>>()?;
        let mut tensor: Vec<i128> = pc.type_of.iter().map(|&t| values[t as usize]).collect();

        // contract one factor at a time: Σ_c |c| f(c) χ(c) along each axis
        let total = tensor.len();
        let mut stride = total;
        for (axis, &k) in pc.levels.iter().enumerate() {
            let d = pc.dims[axis];
            stride /= d;
            let mut fiber = vec![0i128; d];
            for outer in 0..total / (d * stride) {
                for inner in 0..stride {
                    let base = outer * d * stride + inner;
                    for (r, v) in fiber.iter_mut().enumerate() {
                        *v = tensor[base + r * stride];
                    }
                    let out = self.tower.inner_products(k, &fiber)?;
                    for (r, v) in out.into_iter().enumerate() {
                        tensor[base + r * stride] = v;
                    }
                }
            }
        }

        let order = sylow_order(n)? as i128;
        let mut constituents = Vec::new();
        for (flat, &v) in tensor.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if v % order != 0 || v < 0 {
                return Err(Error::consistency(format!(
                    "inner product {v} for {lambda} is not a non-negative multiple of |P_{n}| = {order}"
                )));
            }
            let indices = unflatten(flat, &pc.dims);
            let mut factors = Vec::with_capacity(indices.len());
            let mut degree_log2 = 0;
            for (&k, &i) in pc.levels.iter().zip(&indices) {
                factors.push(self.tower.label_at(k, i)?);
                degree_log2 += self.tower.level(k)?.degree_log2()[i];
            }
            constituents.push(Constituent {
                label: ProductIrrLabel(factors),
                indices,
                degree: 1u128 << degree_log2,
                multiplicity: u64::try_from(v / order)
                    .map_err(|_| Error::consistency("multiplicity exceeds 64 bits"))?,
            });
        }
        constituents.sort_by(|a, b| (a.degree, &a.indices).cmp(&(b.degree, &b.indices)));
        Ok(constituents)
    }

    fn product_classes(&self, n: usize) -> Result<Arc<ProductClasses>> {
        if let Some(pc) = self.classes.lock().unwrap().get(&n) {
            return Ok(pc.clone());
        }
        let levels = binary_expansion(n)?.exponents().to_vec();
        let tables = levels.iter().map(|&k| self.tower.level(k)).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = tables.iter().map(|t| t.len()).collect();
        let total: usize = dims.iter().product();
        let mut ids: HashMap<CycleType, u32> = HashMap::new();
        let mut cycle_types = Vec::new();
        let mut type_of = Vec::with_capacity(total);
        for flat in 0..total {
            let idx = unflatten(flat, &dims);
            let ct = CycleType::concat(idx.iter().zip(&tables).map(|(&i, t)| &t.cycle_types()[i]));
            let next = cycle_types.len() as u32;
            let id = *ids.entry(ct.clone()).or_insert_with(|| {
                cycle_types.push(ct);
                next
            });
            type_of.push(id);
        }
        let pc = Arc::new(ProductClasses { levels, dims, type_of, cycle_types });
        self.classes.lock().unwrap().insert(n, pc.clone());
        Ok(pc)
    }
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(Arc::new(WreathTower::default()))
    }
}

/// Mixed-radix digits of `flat`, most significant first.
fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

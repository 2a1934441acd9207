//! Named verification sweeps: every closed formula and structural claim
//! compared against the restriction oracle over all hooks up to a bound.

use serde::Serialize;

use crate::branching::{
    a_count, conjugation_twist_check, hook1_degrees, linear_profile, max_threshold_check, tau, three_constituent_check,
    unique_linear_label, CheckOutcome, ThresholdTable,
};
use crate::error::{Error, Result};
use crate::lr::{diamond, lr_hook, lr_multi, PartitionSet};
use crate::partitions::{binary_expansion, binomial, hooks_in_box, HookPartition, Partition};
use crate::sym_chars::hook_degree;
use crate::wreath::{alpha, alpha_pow2, ProductIrrLabel, MAX_DENSE_TABLE_LEVEL};

/// Suite names in the order they run.
pub const SUITES: &[&str] = &[
    "tables",
    "cd",
    "unique",
    "linear",
    "lr",
    "hook1",
    "acount",
    "degree",
    "boxes",
    "inclusion",
    "three",
    "tau",
    "conjugation",
    "diamond",
];

const MAX_COUNTEREXAMPLES: usize = 10;

/// Outcome of one suite.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    /// Individual comparisons performed.
    pub checked: u64,
    /// Comparisons out of reach of the configured cap.
    pub skipped: u64,
    pub counterexamples: Vec<String>,
}

struct Tally {
    checked: u64,
    skipped: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, skipped: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_COUNTEREXAMPLES {
                self.failures.push(what());
            }
        }
    }

    fn outcome(&mut self, o: CheckOutcome, what: impl FnOnce() -> String) {
        match o {
            CheckOutcome::Holds => self.check(true, what),
            CheckOutcome::Fails => self.check(false, what),
            CheckOutcome::Skipped(_) => self.skipped += 1,
        }
    }

    fn report(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            passed: self.failed == 0,
            checked: self.checked,
            skipped: self.skipped,
            counterexamples: self.failures,
        }
    }
}

/// Runs one named suite over `1 ≤ n ≤ max_n`.
pub fn run_suite(thr: &ThresholdTable, suite: &str, max_n: usize) -> Result<SuiteReport> {
    let oracle = thr.oracle();
    if max_n == 0 {
        return Err(Error::invalid("max_n must be positive"));
    }
    oracle.check_cap(max_n)?;
    let mut t = Tally::new();
    match suite {
        "tables" => {
            let tower = oracle.tower();
            for k in 0..=MAX_DENSE_TABLE_LEVEL.min(max_n.ilog2()) {
                let ok = tower.char_table(k).and_then(|table| table.check());
                t.check(ok.is_ok(), || format!("level {k}: {}", ok.unwrap_err()));
            }
        }
        "cd" => {
            for n in 1..=max_n {
                let degrees = product_degree_counts(thr, n)?;
                let a = alpha(n)? as usize;
                let support: Vec<usize> = (0..degrees.len()).filter(|&j| degrees[j] > 0).collect();
                t.check(support == (0..=a).collect::<Vec<_>>(), || format!("n = {n}: degree support {support:?}"));
                if n >= 8 {
                    t.check(degrees[a] >= 3, || format!("n = {n}: {} labels of degree 2^{a}", degrees[a]));
                }
            }
        }
        "unique" => {
            for n in (0..).map(|e| 1usize << e).take_while(|&n| n <= max_n) {
                for d in oracle.restrict_all(n)? {
                    let want = ProductIrrLabel(vec![unique_linear_label(d.hook)?.to_irr_label()]);
                    let lin: Vec<_> = d.linear().collect();
                    let ok = lin.len() == 1 && lin[0].multiplicity == 1 && lin[0].label == want;
                    t.check(ok, || format!("{}: linear constituents {:?}, expected {want}", d.hook, labels(&lin)));
                }
            }
        }
        "linear" => {
            for n in 1..=max_n {
                for d in oracle.restrict_all(n)? {
                    for e in linear_profile(d.hook)? {
                        let label = e.product_label();
                        let got = d.multiplicity(&label) as u128;
                        t.check(got == e.multiplicity, || {
                            format!("{} on {label}: oracle {got}, formula {}", d.hook, e.multiplicity)
                        });
                    }
                }
            }
        }
        "lr" => {
            for n in 1..=max_n {
                let mut shapes = vec![binary_expansion(n)?.parts()];
                if n <= 12 {
                    shapes.extend(compositions(n, 3));
                }
                for shape in shapes {
                    for h in HookPartition::all(n) {
                        for hooks in hook_tuples(&shape) {
                            let formula = lr_hook(h, &hooks)?;
                            let inners: Vec<Partition> = hooks.iter().map(HookPartition::to_partition).collect();
                            let direct = lr_multi(&h.to_partition(), &inners)? as u128;
                            t.check(formula == direct, || format!("{h}; {hooks:?}: formula {formula}, LR {direct}"));
                        }
                    }
                }
            }
        }
        "hook1" => {
            for k in (1..).take_while(|&k| 1usize << k <= max_n) {
                let d = oracle.restrict(HookPartition::new(1 << k, 1)?)?;
                let got: Vec<u128> = d.constituents.iter().map(|c| c.degree).collect();
                let ok = d.constituents.iter().all(|c| c.multiplicity == 1) && got == hook1_degrees(k)?;
                t.check(ok, || format!("k = {k}: degrees {got:?}"));
            }
        }
        "acount" => {
            for e in (2..).take_while(|&e| 1usize << e <= max_n) {
                for d in oracle.restrict_all(1 << e)? {
                    let got = d.profile().distinct_at(1) as usize;
                    let want = a_count(e, d.hook.x())?;
                    t.check(got == want, || format!("{}: {got} of degree 2, expected {want}", d.hook));
                }
            }
        }
        "degree" => {
            for n in 1..=max_n {
                for d in oracle.restrict_all(n)? {
                    let want = binomial(n as u64 - 1, d.hook.x() as i64);
                    t.check(d.total_degree() == want && hook_degree(d.hook) == want, || {
                        format!("{}: total degree {}, expected {want}", d.hook, d.total_degree())
                    });
                }
            }
        }
        "boxes" => {
            for n in 1..=max_n {
                let all = oracle.restrict_all(n)?;
                for k in 0..=alpha(n)? {
                    let threshold = match thr.threshold(n, k) {
                        Err(e) if e.is_out_of_reach() => {
                            t.skipped += 1;
                            continue;
                        }
                        r => r?,
                    };
                    let got: Vec<HookPartition> =
                        all.iter().filter(|d| d.profile().distinct_at(k) > 0).map(|d| d.hook).collect();
                    let want = hooks_in_box(n, threshold)?;
                    t.check(got == want, || format!("ℋ_{n}^{k} = {got:?}, box of size {threshold} gives {want:?}"));
                }
            }
        }
        "inclusion" => {
            for n in 1..=max_n {
                let sets = oracle_sets(thr, n)?;
                for k in 0..sets.len() {
                    for l in 0..=k {
                        let ok = sets[k].iter().all(|h| sets[l].contains(h));
                        t.check(ok, || format!("ℋ_{n}^{k} ⊄ ℋ_{n}^{l}"));
                    }
                }
            }
        }
        "three" => {
            for n in 1..=max_n {
                for k in 2..=alpha(n)? {
                    t.outcome(three_constituent_check(thr, n, k)?, || format!("n = {n}, k = {k}"));
                }
            }
        }
        "tau" => {
            for e in 7..=20 {
                t.check(tau(e)? == 2 * tau(e - 1)?, || format!("τ_{e} ≠ 2τ_{}", e - 1));
            }
            let top = max_n.ilog2() + 1;
            let powers = (0..=top).map(|e| 1usize << e);
            for n in (1..=max_n).chain(powers.filter(|&p| p > max_n)) {
                t.outcome(max_threshold_check(thr, n)?, || format!("T_{n} at k = α differs from the τ sum"));
            }
        }
        "conjugation" => {
            for n in 1..=max_n {
                for h in HookPartition::all(n) {
                    t.check(conjugation_twist_check(thr, h)?, || format!("{h} vs {}", h.conjugate()));
                }
            }
        }
        "diamond" => {
            for e in (3..=4).take_while(|&e| 1usize << e <= max_n) {
                let half = 1usize << (e - 1);
                let lower = oracle_sets(thr, half)?;
                let upper = oracle_sets(thr, 1 << e)?;
                for i in 0..lower.len() {
                    for j in 0..lower.len() {
                        let k = (i + j + 1) as u32;
                        if i == j || k > alpha_pow2(e) {
                            continue;
                        }
                        let a = PartitionSet::from_hooks(half, lower[i].iter().copied())?;
                        let b = PartitionSet::from_hooks(half, lower[j].iter().copied())?;
                        let target = PartitionSet::from_hooks(1 << e, upper[k as usize].iter().copied())?;
                        let ok = diamond(&a, &b).is_subset(&target);
                        t.check(ok, || format!("ℋ_{half}^{i} ◇ ℋ_{half}^{j} ⊄ ℋ_{}^{k}", 1 << e));
                    }
                }
            }
        }
        _ => return Err(Error::invalid(format!("unknown suite '{suite}' (known: {})", SUITES.join(", ")))),
    }
    Ok(t.report(suite))
}

/// Runs the named suites, or all of them when `suites` is empty.
pub fn run_suites(thr: &ThresholdTable, suites: &[String], max_n: usize) -> Result<Vec<SuiteReport>> {
    if suites.is_empty() {
        SUITES.iter().map(|s| run_suite(thr, s, max_n)).collect()
    } else {
        suites.iter().map(|s| run_suite(thr, s, max_n)).collect()
    }
}

fn labels(cs: &[&crate::branching::Constituent]) -> Vec<String> {
    cs.iter().map(|c| c.label.to_string()).collect()
}

/// Oracle-computed `ℋ_n^k` for every `k ≤ α_n`.
fn oracle_sets(thr: &ThresholdTable, n: usize) -> Result<Vec<Vec<HookPartition>>> {
    let all = thr.oracle().restrict_all(n)?;
    Ok((0..=alpha(n)?)
        .map(|k| all.iter().filter(|d| d.profile().distinct_at(k) > 0).map(|d| d.hook).collect())
        .collect())
}

/// Number of irreducible labels of `P_n` of each degree `2^j`, from the
/// per-factor label enumeration.
fn product_degree_counts(thr: &ThresholdTable, n: usize) -> Result<Vec<u64>> {
    let tower = thr.oracle().tower();
    let mut counts = vec![1u64];
    for &k in binary_expansion(n)?.exponents() {
        let level = tower.level(k)?;
        let max = *level.degree_log2().iter().max().unwrap_or(&0) as usize;
        let mut next = vec![0u64; counts.len() + max];
        for (j, &c) in counts.iter().enumerate() {
            for &d in level.degree_log2() {
                next[j + d as usize] += c;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Compositions of `n` into between 2 and `max_parts` positive parts.
fn compositions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        if left == 0 {
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Every tuple of hooks with the given weights.
fn hook_tuples(shape: &[usize]) -> Vec<Vec<HookPartition>> {
    shape.iter().fold(vec![Vec::new()], |acc, &s| {
        acc.into_iter()
            .flat_map(|prefix| {
                HookPartition::all(s).into_iter().map(move |h| {
                    let mut v = prefix.clone();
                    v.push(h);
                    v
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::branching::Oracle;

    #[test]
    fn all_suites_pass_to_eight() {
        let thr = ThresholdTable::new(Arc::new(Oracle::default()));
        for r in run_suites(&thr, &[], 8).unwrap() {
            assert!(r.passed, "{r:?}");
            assert!(r.checked > 0, "{}", r.suite);
        }
    }

    #[test]
    fn unknown_suite_and_limits() {
        let thr = ThresholdTable::new(Arc::new(Oracle::default()));
        assert!(run_suite(&thr, "nope", 4).is_err());
        assert!(run_suite(&thr, "linear", 33).is_err());
        assert!(run_suite(&thr, "linear", 0).is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(hook_tuples(&[2, 1]).len(), 2);
        let thr = ThresholdTable::new(Arc::new(Oracle::default()));
        assert_eq!(product_degree_counts(&thr, 4).unwrap(), vec![4, 1]);
        assert_eq!(product_degree_counts(&thr, 3).unwrap(), vec![2]);
    }
}

//! Membership in `ℋ_n^k` and the structural properties of the `ℋ` sets as
//! checkable predicates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{hooks_in_box, in_box, HookPartition, Partition};
use crate::wreath::alpha;

use super::formulas::sign_label;
use super::thresholds::{tau_sum, ThresholdTable};

/// How a question is answered: by closed formula, by the oracle, or by both
/// with agreement asserted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formula,
    Oracle,
    Both,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Mode::Formula),
            "oracle" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            _ => Err(Error::invalid(format!("unknown mode '{s}' (expected formula, oracle or both)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Formula => "formula",
            Mode::Oracle => "oracle",
            Mode::Both => "both",
        })
    }
}

/// Result of a check that may be out of computational reach.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "reason")]
pub enum CheckOutcome {
    Holds,
    Fails,
    Skipped(String),
}

impl CheckOutcome {
    fn from_bool(b: bool) -> Self {
        if b {
            CheckOutcome::Holds
        } else {
            CheckOutcome::Fails
        }
    }

    /// Turns cap and horizon errors into `Skipped`, passing others through.
    fn skip_unreachable(r: Result<CheckOutcome>) -> Result<CheckOutcome> {
        match r {
            Err(e) if e.is_out_of_reach() => Ok(CheckOutcome::Skipped(e.to_string())),
            other => other,
        }
    }
}

fn check_k(n: usize, k: u32) -> Result<()> {
    let a = alpha(n)?;
    if k > a {
        return Err(Error::invalid(format!("k = {k} exceeds α_{n} = {a}")));
    }
    Ok(())
}

/// Whether `λ ∈ ℋ_n^k`, i.e. `χ^λ↓_{P_n}` has a constituent of degree `2^k`.
pub fn h_membership(thr: &ThresholdTable, lambda: &Partition, n: usize, k: u32, mode: Mode) -> Result<bool> {
    if lambda.weight() != n {
        return Err(Error::WeightMismatch { expected: n, actual: lambda.weight() });
    }
    let h = HookPartition::try_from(lambda)?;
    check_k(n, k)?;
    let formula = || thr.threshold(n, k).map(|t| in_box(lambda, t));
    let oracle = || thr.oracle().restrict(h).map(|d| d.profile().distinct_at(k) > 0);
    match mode {
        Mode::Formula => formula(),
        Mode::Oracle => oracle(),
        Mode::Both => {
            let (f, o) = (formula()?, oracle()?);
            if f != o {
                return Err(Error::consistency(format!(
                    "membership of {lambda} in ℋ_{n}^{k}: formula says {f}, oracle says {o}"
                )));
            }
            Ok(f)
        }
    }
}

/// All hooks of `n` in `ℋ_n^k`, sorted by leg length.
pub fn h_set(thr: &ThresholdTable, n: usize, k: u32, mode: Mode) -> Result<Vec<HookPartition>> {
    check_k(n, k)?;
    let mut out = Vec::new();
    for h in HookPartition::all(n) {
        if h_membership(thr, &h.to_partition(), n, k, mode)? {
            out.push(h);
        }
    }
    Ok(out)
}

/// `ℋ_n^k ⊆ ℋ_n^ℓ` for `ℓ ≤ k`.
pub fn inclusion_check(thr: &ThresholdTable, n: usize, k: u32, l: u32, mode: Mode) -> Result<bool> {
    if l > k {
        return Err(Error::invalid(format!("inclusion needs ℓ ≤ k, got ℓ = {l}, k = {k}")));
    }
    let small = h_set(thr, n, k, mode)?;
    let large = h_set(thr, n, l, mode)?;
    Ok(small.iter().all(|h| large.contains(h)))
}

/// Every hook in a `(T_n^k − 1)` square has at least three distinct
/// constituents of degree `2^k`, for `k > 1`.
pub fn three_constituent_check(thr: &ThresholdTable, n: usize, k: u32) -> Result<CheckOutcome> {
    if k <= 1 {
        return Err(Error::invalid("the three-constituent property needs k > 1"));
    }
    check_k(n, k)?;
    CheckOutcome::skip_unreachable((|| {
        thr.oracle().check_cap(n)?;
        let t = thr.threshold(n, k)?;
        if t <= 1 {
            return Ok(CheckOutcome::Holds);
        }
        for h in hooks_in_box(n, t - 1)? {
            if thr.oracle().restrict(h)?.profile().distinct_at(k) < 3 {
                return Ok(CheckOutcome::Fails);
            }
        }
        Ok(CheckOutcome::Holds)
    })())
}

/// `T_n^{α_n} = Σ τ_{e_i}` over the binary digits of `n`.
pub fn max_threshold_check(thr: &ThresholdTable, n: usize) -> Result<CheckOutcome> {
    let a = alpha(n)?;
    CheckOutcome::skip_unreachable(thr.threshold(n, a).and_then(|t| Ok(CheckOutcome::from_bool(t == tau_sum(n)?))))
}

/// `χ^{h′}↓ = χ^h↓ · sgn↓`: the oracle decomposition of the conjugate hook is
/// the decomposition of `h` with every label twisted by the restricted sign.
pub fn conjugation_twist_check(thr: &ThresholdTable, h: HookPartition) -> Result<bool> {
    let oracle = thr.oracle();
    let sign = sign_label(h.n())?;
    let d = oracle.restrict(h)?;
    let c = oracle.restrict(h.conjugate())?;
    if d.constituents.len() != c.constituents.len() || d.profile() != c.profile() {
        return Ok(false);
    }
    for con in &d.constituents {
        if c.multiplicity(&con.label.twist(&sign)?) != con.multiplicity {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::branching::oracle::Oracle;

    fn table() -> ThresholdTable {
        ThresholdTable::new(Arc::new(Oracle::default()))
    }

    fn hook(n: usize, x: usize) -> Partition {
        HookPartition::new(n, x).unwrap().to_partition()
    }

    #[test]
    fn membership_examples() {
        let t = table();
        for mode in [Mode::Formula, Mode::Oracle, Mode::Both] {
            assert!(h_membership(&t, &hook(8, 2), 8, 2, mode).unwrap());
            assert!(!h_membership(&t, &hook(8, 0), 8, 1, mode).unwrap());
            assert!(h_membership(&t, &hook(8, 0), 8, 0, mode).unwrap());
        }
        assert!(h_membership(&t, &Partition::new(vec![2, 2]).unwrap(), 4, 0, Mode::Formula).is_err());
        assert!(h_membership(&t, &hook(8, 2), 7, 0, Mode::Formula).is_err());
        assert!(h_membership(&t, &hook(8, 2), 8, 3, Mode::Formula).is_err());
    }

    #[test]
    fn inclusion_examples() {
        let t = table();
        assert!(inclusion_check(&t, 8, 2, 1, Mode::Both).unwrap());
        assert!(inclusion_check(&t, 8, 1, 1, Mode::Oracle).unwrap());
        assert!(inclusion_check(&t, 16, 5, 3, Mode::Oracle).unwrap());
        assert!(inclusion_check(&t, 8, 1, 2, Mode::Oracle).is_err());
    }

    #[test]
    fn three_constituent_examples() {
        let t = table();
        assert_eq!(three_constituent_check(&t, 16, 2).unwrap(), CheckOutcome::Holds);
        assert_eq!(three_constituent_check(&t, 8, 2).unwrap(), CheckOutcome::Holds);
        let p = t.oracle().restrict(HookPartition::new(8, 3).unwrap()).unwrap().profile();
        assert!(p.distinct_at(2) >= 3);
        assert!(matches!(three_constituent_check(&t, 64, 2).unwrap(), CheckOutcome::Skipped(_)));
    }

    #[test]
    fn max_threshold_examples() {
        let t = table();
        for n in [8, 16, 12] {
            assert_eq!(max_threshold_check(&t, n).unwrap(), CheckOutcome::Holds, "{n}");
        }
        let capped = ThresholdTable::new(Arc::new(Oracle::with_cap(2).unwrap()));
        assert!(matches!(max_threshold_check(&capped, 16).unwrap(), CheckOutcome::Skipped(_)));
    }

    #[test]
    fn conjugation_examples() {
        let t = table();
        for x in 0..8 {
            assert!(conjugation_twist_check(&t, HookPartition::new(8, x).unwrap()).unwrap());
        }
        let o = t.oracle();
        let a = o.restrict(HookPartition::new(8, 2).unwrap()).unwrap().profile();
        let b = o.restrict(HookPartition::new(8, 5).unwrap()).unwrap().profile();
        assert_eq!(a, b);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("both".parse::<Mode>().unwrap(), Mode::Both);
        assert!("fast".parse::<Mode>().is_err());
    }
}

//! One function per subcommand, each returning an [`Output`].

use anyhow::{bail, Result};
use sbc_core::branching::{h_set, linear_profile, linear_sbc, tau_sum, unique_linear_label, Mode, ThresholdTable};
use sbc_core::partitions::{binary_expansion, hooks_in_box};
use sbc_core::verify::run_suites;
use sbc_core::wreath::alpha;
use sbc_core::{Error, HookPartition, LinearLabel, ProductIrrLabel};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{Output, Provenance, Table};

/// A formula and the oracle disagreed; maps to exit code 2.
#[derive(Debug)]
pub struct Inconsistent(pub String);

impl std::fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "formula and oracle disagree: {}", self.0)
    }
}

impl std::error::Error for Inconsistent {}

fn provenance(mode: Mode) -> Provenance {
    match mode {
        Mode::Formula => Provenance::Formula,
        Mode::Oracle => Provenance::Oracle,
        Mode::Both => Provenance::BothAgree,
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn agree<T: PartialEq + std::fmt::Debug>(what: impl FnOnce() -> String, formula: T, oracle: T) -> Result<T> {
    if formula != oracle {
        return Err(Inconsistent(format!("{}: formula {formula:?}, oracle {oracle:?}", what())).into());
    }
    Ok(formula)
}

#[derive(Serialize)]
struct LinearRow {
    legs: Vec<usize>,
    linear: String,
    label: String,
    multiplicity: u128,
}

/// Multiplicity of every linear character of `P_n` in `χ^h↓`, by `mode`.
fn linear_rows(thr: &ThresholdTable, h: HookPartition, mode: Mode) -> Result<Vec<LinearRow>> {
    let entries = linear_profile(h)?;
    let oracle = match mode {
        Mode::Formula => None,
        _ => Some(thr.oracle().restrict(h)?),
    };
    let mut rows = Vec::with_capacity(entries.len());
    for e in entries {
        let label = e.product_label();
        let multiplicity = match (&oracle, mode) {
            (Some(d), Mode::Oracle) => u128::from(d.multiplicity(&label)),
            (Some(d), _) => {
                agree(|| format!("multiplicity of {label} in {h}"), e.multiplicity, u128::from(d.multiplicity(&label)))?
            }
            (None, _) => e.multiplicity,
        };
        let linear = e.label.iter().map(LinearLabel::to_string).collect::<Vec<_>>().join(" x ");
        rows.push(LinearRow { legs: e.legs, linear, label: label.to_string(), multiplicity });
    }
    if let Some(d) = &oracle {
        let found = d.linear().count();
        let listed = rows.iter().filter(|r| r.multiplicity > 0).count();
        if found != listed {
            return Err(Inconsistent(format!("{h}: oracle has {found} linear constituents, {listed} expected")).into());
        }
    }
    Ok(rows)
}

pub fn linear(thr: &ThresholdTable, n: usize, x: usize, mode: Mode) -> Result<Output> {
    let h = HookPartition::new(n, x)?;
    let rows = linear_rows(thr, h, mode)?;
    if n.is_power_of_two() {
        let nonzero: Vec<&LinearRow> = rows.iter().filter(|r| r.multiplicity > 0).collect();
        let [row] = nonzero[..] else {
            return Err(Inconsistent(format!("{h} has {} linear constituents, expected one", nonzero.len())).into());
        };
        let bits = unique_linear_label(h)?;
        agree(|| format!("linear constituent of {h}"), bits.to_string(), row.linear.clone())?;
        let mut table = Table::new(&["hook", "bits", "label", "multiplicity"]);
        table.push(vec![h.to_string(), bits.to_string(), row.label.clone(), row.multiplicity.to_string()]);
        let result = json!({
            "hook": h.to_string(),
            "bits": bits.bits(),
            "linear": bits.to_string(),
            "label": row.label,
            "multiplicity": row.multiplicity,
        });
        return Ok(Output { result, table, provenance: provenance(mode), ok: true });
    }
    let mut table = Table::new(&["legs", "linear", "label", "multiplicity"]);
    for r in &rows {
        let legs = r.legs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        table.push(vec![legs, r.linear.clone(), r.label.clone(), r.multiplicity.to_string()]);
    }
    let result = json!({ "hook": h.to_string(), "profile": to_value(&rows)? });
    Ok(Output { result, table, provenance: provenance(mode), ok: true })
}

pub fn coeff(thr: &ThresholdTable, n: usize, x: usize, parts: &[usize], mode: Mode) -> Result<Output> {
    let h = HookPartition::new(n, x)?;
    let sizes = binary_expansion(n)?.parts();
    if parts.len() != sizes.len() {
        bail!(Error::InvalidInput(format!(
            "--parts needs {} leg lengths, one per binary digit {sizes:?} of {n}",
            sizes.len()
        )));
    }
    let factors: Vec<HookPartition> =
        sizes.iter().zip(parts).map(|(&s, &p)| HookPartition::new(s, p)).collect::<Result<_, _>>()?;
    let linear: Vec<LinearLabel> = factors.iter().map(|&f| unique_linear_label(f)).collect::<Result<_, _>>()?;
    let label = ProductIrrLabel::from_linear(&linear);
    let formula = || linear_sbc(h, &factors);
    let oracle = || thr.oracle().restrict(h).map(|d| u128::from(d.multiplicity(&label)));
    let multiplicity = match mode {
        Mode::Formula => formula()?,
        Mode::Oracle => oracle()?,
        Mode::Both => agree(|| format!("multiplicity of {label} in {h}"), formula()?, oracle()?)?,
    };
    let factor_names: Vec<String> = factors.iter().map(HookPartition::to_string).collect();
    let mut table = Table::new(&["hook", "factors", "label", "multiplicity"]);
    table.push(vec![h.to_string(), factor_names.join(" x "), label.to_string(), multiplicity.to_string()]);
    let result = json!({
        "hook": h.to_string(),
        "factors": factor_names,
        "label": label.to_string(),
        "multiplicity": multiplicity,
    });
    Ok(Output { result, table, provenance: provenance(mode), ok: true })
}

#[derive(Serialize)]
struct ProfileRow {
    degree: u128,
    distinct: u64,
    total: u64,
}

pub fn restrict(thr: &ThresholdTable, n: usize, x: usize, profile: bool, mode: Mode) -> Result<Output> {
    let h = HookPartition::new(n, x)?;
    if mode == Mode::Formula {
        bail!(Error::InvalidInput(
            "restrict has no formula mode; non-linear constituents come from the oracle only".into()
        ));
    }
    let d = thr.oracle().restrict(h)?;
    if mode == Mode::Both {
        linear_rows(thr, h, Mode::Both)?;
    }
    let (result, table) = if profile {
        let p = d.profile();
        let rows: Vec<ProfileRow> = p
            .distinct
            .iter()
            .map(|(&j, &distinct)| ProfileRow { degree: 1 << j, distinct, total: p.total[&j] })
            .collect();
        let mut table = Table::new(&["degree", "distinct", "total"]);
        for r in &rows {
            table.push(vec![r.degree.to_string(), r.distinct.to_string(), r.total.to_string()]);
        }
        (json!({ "hook": h.to_string(), "profile": to_value(&rows)? }), table)
    } else {
        let mut table = Table::new(&["label", "degree", "multiplicity"]);
        for c in &d.constituents {
            table.push(vec![c.label.to_string(), c.degree.to_string(), c.multiplicity.to_string()]);
        }
        let result = json!({
            "hook": h.to_string(),
            "total_degree": d.total_degree(),
            "constituents": to_value(&d.constituents)?,
        });
        (result, table)
    };
    Ok(Output { result, table, provenance: provenance(mode), ok: true })
}

#[derive(Serialize)]
struct ThresholdRow {
    k: u32,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_sum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_match: Option<bool>,
}

/// The threshold read off the oracle: the smallest square containing every
/// hook with a constituent of degree `2^k`, checked to be exactly that box.
fn oracle_threshold(thr: &ThresholdTable, n: usize, k: u32) -> Result<usize> {
    let members = h_set(thr, n, k, Mode::Oracle)?;
    let t = members.iter().map(|h| h.arm().max(h.x() + 1)).max();
    let Some(t) = t else {
        return Err(Inconsistent(format!("no hook of {n} has a constituent of degree 2^{k}")).into());
    };
    if hooks_in_box(n, t)? != members {
        return Err(Inconsistent(format!("hooks of {n} with degree 2^{k} are not a box")).into());
    }
    Ok(t)
}

pub fn thresholds(thr: &ThresholdTable, n: usize, k: Option<u32>, mode: Mode) -> Result<Output> {
    let a = alpha(n)?;
    let ks: Vec<u32> = match k {
        Some(k) if k > a => bail!(Error::InvalidInput(format!("k = {k} exceeds α_{n} = {a}"))),
        Some(k) => vec![k],
        None => (0..=a).collect(),
    };
    if mode != Mode::Formula {
        thr.oracle().check_cap(n)?;
    }
    let mut rows = Vec::new();
    for k in ks {
        let formula = match thr.threshold(n, k) {
            Ok(t) => Some(t),
            Err(Error::RequiresOracle { level }) => {
                rows.push(ThresholdRow {
                    k,
                    status: format!("needs-oracle@2^{level}"),
                    threshold: None,
                    tau_sum: if k == a { Some(tau_sum(n)?) } else { None },
                    tau_match: None,
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let t = match mode {
            Mode::Formula => formula,
            Mode::Oracle => Some(oracle_threshold(thr, n, k)?),
            Mode::Both => {
                agree(|| format!("threshold for n = {n}, k = {k}"), formula, Some(oracle_threshold(thr, n, k)?))?
            }
        };
        let tau = if k == a { Some(tau_sum(n)?) } else { None };
        let tau_match = tau.zip(t).map(|(s, t)| s == t);
        rows.push(ThresholdRow { k, status: "ok".into(), threshold: t, tau_sum: tau, tau_match });
    }
    let ok = rows.iter().all(|r| r.tau_match != Some(false));
    let mut table = Table::new(&["k", "threshold", "status", "tau_sum", "tau_match"]);
    let show = |v: Option<String>| v.unwrap_or_default();
    for r in &rows {
        table.push(vec![
            r.k.to_string(),
            show(r.threshold.map(|t| t.to_string())),
            r.status.clone(),
            show(r.tau_sum.map(|t| t.to_string())),
            show(r.tau_match.map(|b| b.to_string())),
        ]);
    }
    let result = json!({ "n": n, "alpha": a, "rows": to_value(&rows)? });
    Ok(Output { result, table, provenance: provenance(mode), ok })
}

pub fn hset(thr: &ThresholdTable, n: usize, k: u32, mode: Mode) -> Result<Output> {
    let hooks = h_set(thr, n, k, mode)?;
    let mut table = Table::new(&["hook", "x"]);
    for h in &hooks {
        table.push(vec![h.to_string(), h.x().to_string()]);
    }
    let names: Vec<String> = hooks.iter().map(HookPartition::to_string).collect();
    let result = json!({ "n": n, "k": k, "count": hooks.len(), "hooks": names });
    Ok(Output { result, table, provenance: provenance(mode), ok: true })
}

pub fn verify(thr: &ThresholdTable, max_n: usize, suites: &[String]) -> Result<Output> {
    let reports = run_suites(thr, suites, max_n)?;
    let ok = reports.iter().all(|r| r.passed);
    let mut table = Table::new(&["suite", "passed", "checked", "skipped", "counterexamples"]);
    for r in &reports {
        table.push(vec![
            r.suite.clone(),
            r.passed.to_string(),
            r.checked.to_string(),
            r.skipped.to_string(),
            r.counterexamples.join("; "),
        ]);
    }
    let result = json!({ "max_n": max_n, "all_passed": ok, "suites": to_value(&reports)? });
    Ok(Output { result, table, provenance: Provenance::BothAgree, ok })
}

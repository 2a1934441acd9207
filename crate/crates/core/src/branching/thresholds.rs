//! Box thresholds: `ℋ_{2^e}^k` is the set of hooks of `2^e` in a
//! `t_e^k × t_e^k` square, and `ℋ_n^k` the hooks of `n` in a `T_n^k` square.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::partitions::{binary_expansion, HookPartition};
use crate::wreath::{alpha, alpha_pow2};

use super::oracle::Oracle;

/// `τ_e`, the threshold at maximal degree for `2^e`.
pub fn tau(e: u32) -> Result<usize> {
    match e {
        0 => Err(Error::invalid("τ is defined for exponents ≥ 1")),
        1 => Ok(2),
        2 => Ok(3),
        3 => Ok(7),
        4 => Ok(13),
        5 => Ok(26),
        _ if e >= usize::BITS => Err(Error::invalid(format!("τ_{e} does not fit in a machine word"))),
        _ => Ok((1 << (e - 1)) + (1 << (e - 2)) + (1 << (e - 5)) + (1 << (e - 6))),
    }
}

/// `Σ τ_{e_i}` over the binary digits `2^{e_i}` of `n`, with `τ₀ = 1`.
pub fn tau_sum(n: usize) -> Result<usize> {
    binary_expansion(n)?.exponents().iter().map(|&e| if e == 0 { Ok(1) } else { tau(e) }).sum()
}

/// Memoised `t_e^k`, `δ_e^w` and `T_n^k`. The `δ` values come from the
/// oracle, so thresholds are computable up to exponent `cap + 1`.
pub struct ThresholdTable {
    oracle: Arc<Oracle>,
    t: Mutex<HashMap<(u32, u32), usize>>,
    delta: Mutex<HashMap<(u32, u32), i64>>,
}

impl ThresholdTable {
    pub fn new(oracle: Arc<Oracle>) -> Self {
        ThresholdTable { oracle, t: Mutex::default(), delta: Mutex::default() }
    }

    pub fn oracle(&self) -> &Arc<Oracle> {
        &self.oracle
    }

    /// `t_e^k` for `0 ≤ k ≤ α_{2^e}`.
    pub fn pow2_threshold(&self, e: u32, k: u32) -> Result<usize> {
        if e >= usize::BITS - 1 {
            return Err(Error::invalid(format!("exponent {e} too large")));
        }
        let a = alpha_pow2(e);
        if k > a {
            return Err(Error::invalid(format!("k = {k} exceeds α = {a} for 2^{e}")));
        }
        if let Some(&t) = self.t.lock().unwrap().get(&(e, k)) {
            return Ok(t);
        }
        let n = 1usize << e;
        let t = match k {
            0 => n,
            1 | 2 => n - 1,
            _ => {
                let mut best = None;
                let sub = alpha_pow2(e - 1);
                for i in 0..=sub.min(k - 1) {
                    let j = k - 1 - i;
                    if i < j && j <= sub {
                        let v = self.pow2_threshold(e - 1, i)? + self.pow2_threshold(e - 1, j)?;
                        best = best.max(Some(v));
                    }
                }
                if (k - 1).is_multiple_of(2) && (k - 1) / 2 <= sub {
                    let w = (k - 1) / 2;
                    let v = 2 * self.pow2_threshold(e - 1, w)? as i64 + self.delta(e - 1, w)?;
                    best = best.max(Some(v as usize));
                }
                best.ok_or_else(|| Error::consistency(format!("no candidate for t_{e}^{k}")))?
            }
        };
        if e >= 2 && !(n / 2 < t && t <= n) {
            return Err(Error::consistency(format!("t_{e}^{k} = {t} outside [{}, {n}]", n / 2 + 1)));
        }
        self.t.lock().unwrap().insert((e, k), t);
        Ok(t)
    }

    /// `δ_e^w`: 0 if `χ^{(t, 1^{2^e − t})}↓`, `t = t_e^w`, has two or more
    /// distinct constituents of degree `2^w`, and −1 if it has exactly one.
    pub fn delta(&self, e: u32, w: u32) -> Result<i64> {
        if let Some(&d) = self.delta.lock().unwrap().get(&(e, w)) {
            return Ok(d);
        }
        let t = self.pow2_threshold(e, w)?;
        if e > self.oracle.tower().cap() {
            return Err(Error::RequiresOracle { level: e });
        }
        let n = 1usize << e;
        let h = HookPartition::new(n, n - t)?;
        let count = self.oracle.restrict(h)?.profile().distinct_at(w);
        let d = match count {
            0 => {
                return Err(Error::consistency(format!(
                    "{h} has no constituent of degree 2^{w}, contradicting t_{e}^{w} = {t}"
                )))
            }
            1 => -1,
            _ => 0,
        };
        self.delta.lock().unwrap().insert((e, w), d);
        Ok(d)
    }

    /// `T_n^k`: the maximum of `Σ t_{e_i}^{j_i}` over `Σ j_i = k`,
    /// `j_i ≤ α_{2^{e_i}}`, across the binary digits of `n`.
    pub fn threshold(&self, n: usize, k: u32) -> Result<usize> {
        let a = alpha(n)?;
        if k > a {
            return Err(Error::invalid(format!("k = {k} exceeds α_{n} = {a}")));
        }
        // best[j]: maximum over the digits seen so far with budget j used
        let mut best: Vec<Option<usize>> = vec![Some(0)];
        for &e in binary_expansion(n)?.exponents() {
            let cap = alpha_pow2(e);
            let mut next = vec![None; best.len() + cap as usize];
            for (j, b) in best.iter().enumerate() {
                let Some(b) = b else { continue };
                for d in 0..=cap {
                    if j + d as usize > k as usize {
                        break;
                    }
                    let v = b + self.pow2_threshold(e, d)?;
                    let slot = &mut next[j + d as usize];
                    *slot = (*slot).max(Some(v));
                }
            }
            best = next;
        }
        best.get(k as usize)
            .copied()
            .flatten()
            .ok_or_else(|| Error::consistency(format!("no digit budget reaches k = {k} for n = {n}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ThresholdTable {
        ThresholdTable::new(Arc::new(Oracle::default()))
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(4).unwrap(), 13);
        assert_eq!(tau(6).unwrap(), 51);
        assert_eq!(tau(7).unwrap(), 102);
        for e in 7..=20 {
            assert_eq!(tau(e).unwrap(), 2 * tau(e - 1).unwrap());
        }
        assert!(tau(0).is_err());
        assert_eq!(tau_sum(12).unwrap(), 10);
    }

    #[test]
    fn base_rows() {
        let t = table();
        assert_eq!((0..=2).map(|k| t.pow2_threshold(3, k).unwrap()).collect::<Vec<_>>(), vec![8, 7, 7]);
        assert_eq!(t.pow2_threshold(2, 1).unwrap(), 3);
        assert_eq!(t.pow2_threshold(2, 0).unwrap(), 4);
        assert_eq!(t.pow2_threshold(1, 0).unwrap(), 2);
        assert_eq!(t.pow2_threshold(0, 0).unwrap(), 1);
        assert!(t.pow2_threshold(2, 2).is_err());
        assert!(t.pow2_threshold(3, 3).is_err());
    }

    #[test]
    fn deltas() {
        let t = table();
        assert_eq!(t.delta(2, 1).unwrap(), -1);
        assert_eq!(t.delta(3, 1).unwrap(), -1);
        assert_eq!(t.delta(3, 2).unwrap(), -1);
    }

    #[test]
    fn level_four_row() {
        let t = table();
        let row: Vec<usize> = (0..=5).map(|k| t.pow2_threshold(4, k).unwrap()).collect();
        assert_eq!(row, vec![16, 15, 15, 15, 14, 13]);
        assert_eq!(t.pow2_threshold(4, 5).unwrap(), tau(4).unwrap());
    }

    #[test]
    fn general_thresholds() {
        let t = table();
        assert_eq!(t.threshold(12, 0).unwrap(), 12);
        assert_eq!(t.threshold(12, 1).unwrap(), 11);
        assert_eq!(t.threshold(12, 3).unwrap(), 10);
        assert_eq!(t.threshold(8, 2).unwrap(), 7);
        assert_eq!(t.threshold(1, 0).unwrap(), 1);
        assert!(t.threshold(12, 4).is_err());
        for n in 1..=40 {
            let a = alpha(n).unwrap();
            let row: Vec<usize> = (0..=a).map(|k| t.threshold(n, k).unwrap()).collect();
            assert!(row.windows(2).all(|w| w[0] >= w[1]), "{n}: {row:?}");
            assert!(row.iter().all(|&v| 1 <= v && v <= n));
        }
    }

    #[test]
    fn beyond_horizon() {
        let t = ThresholdTable::new(Arc::new(Oracle::with_cap(3).unwrap()));
        assert_eq!(t.pow2_threshold(4, 3).unwrap(), 15);
        assert_eq!(t.pow2_threshold(5, 3).err(), Some(Error::RequiresOracle { level: 4 }));
        assert_eq!(t.pow2_threshold(7, 2).unwrap(), 127);
    }
}

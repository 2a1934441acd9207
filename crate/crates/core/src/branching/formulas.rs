//! Closed formulas for linear constituents and small degree counts.

use crate::error::{Error, Result};
use crate::partitions::{binary_digits, binary_expansion, binomial, HookPartition};
use crate::wreath::{LinearLabel, ProductIrrLabel};

/// The exponent `k` with `n = 2^k`, or an error.
pub fn exponent_of(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::invalid(format!("{n} is not a power of 2")))
    }
}

/// The unique linear constituent of `χ^h↓_{P_{2^k}}`: with `x = Σ a_i 2^i`,
/// bit `j` is `a_{k−j+1} + a_{k−j} mod 2`.
pub fn unique_linear_label(h: HookPartition) -> Result<LinearLabel> {
    let k = exponent_of(h.n())?;
    let digits = binary_digits(h.x(), k)?;
    LinearLabel::new(digits.windows(2).map(|w| (w[0] + w[1]) % 2).collect())
}

/// `[χ^h↓_{P_n}, φ(h₁, …, h_t)] = C(t − 1, x − Σ x_i)`, where the `h_i` are
/// hooks of the binary digits `2^{k₁} > ⋯ > 2^{k_t}` of `n`.
pub fn linear_sbc(h: HookPartition, parts: &[HookPartition]) -> Result<u128> {
    let sizes = binary_expansion(h.n())?.parts();
    let got: Vec<usize> = parts.iter().map(HookPartition::n).collect();
    if got != sizes {
        return Err(Error::invalid(format!(
            "part sizes {got:?} do not match the binary expansion {sizes:?} of {}",
            h.n()
        )));
    }
    let y = h.x() as i64 - parts.iter().map(|p| p.x() as i64).sum::<i64>();
    Ok(binomial(parts.len() as u64 - 1, y))
}

/// One entry of [`linear_profile`].
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct LinearEntry {
    /// Leg lengths `x_i` of the factor hooks.
    pub legs: Vec<usize>,
    pub label: Vec<LinearLabel>,
    pub multiplicity: u128,
}

impl LinearEntry {
    pub fn product_label(&self) -> ProductIrrLabel {
        ProductIrrLabel::from_linear(&self.label)
    }
}

/// Every linear character of `P_n` with its multiplicity in `χ^h↓_{P_n}`,
/// zero multiplicities included, in label order.
pub fn linear_profile(h: HookPartition) -> Result<Vec<LinearEntry>> {
    let sizes = binary_expansion(h.n())?.parts();
    let total: usize = sizes.iter().product();
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rest = flat;
        let mut legs = vec![0; sizes.len()];
        for (leg, &s) in legs.iter_mut().zip(&sizes).rev() {
            *leg = rest % s;
            rest /= s;
        }
        let parts: Vec<HookPartition> =
            legs.iter().zip(&sizes).map(|(&x, &s)| HookPartition::new(s, x)).collect::<Result<_>>()?;
        let label = parts.iter().map(|&p| unique_linear_label(p)).collect::<Result<Vec<_>>>()?;
        let multiplicity = linear_sbc(h, &parts)?;
        out.push(LinearEntry { legs, label, multiplicity });
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// Restriction of the sign character of `𝔖_n` to `P_n`, as a linear label.
pub fn sign_label(n: usize) -> Result<ProductIrrLabel> {
    let factors = binary_expansion(n)?
        .parts()
        .into_iter()
        .map(|s| unique_linear_label(HookPartition::new(s, s - 1)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductIrrLabel::from_linear(&factors))
}

/// Number of distinct degree-2 constituents of `χ^{(2^e − x, 1^x)}↓`:
/// `min(x, 2^e − 1 − x)`.
pub fn a_count(e: u32, x: usize) -> Result<usize> {
    if e < 2 {
        return Err(Error::invalid(format!("exponent {e} must be at least 2")));
    }
    let n = 1usize << e;
    if x >= n {
        return Err(Error::invalid(format!("leg length {x} out of range [0, {}]", n - 1)));
    }
    Ok(x.min(n - 1 - x))
}

/// Degrees of the constituents of `χ^{(2^k − 1, 1)}↓_{P_{2^k}}`: one each of
/// `1, 2, …, 2^{k−1}`.
pub fn hook1_degrees(k: u32) -> Result<Vec<u128>> {
    if k == 0 {
        return Err(Error::invalid("(2^k − 1, 1) needs k ≥ 1"));
    }
    Ok((0..k).map(|j| 1u128 << j).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hook(n: usize, x: usize) -> HookPartition {
        HookPartition::new(n, x).unwrap()
    }

    fn bits(l: &LinearLabel) -> Vec<u8> {
        l.bits().to_vec()
    }

    #[test]
    fn unique_label_examples() {
        assert_eq!(bits(&unique_linear_label(hook(2, 0)).unwrap()), vec![0]);
        assert_eq!(bits(&unique_linear_label(hook(2, 1)).unwrap()), vec![1]);
        assert_eq!(bits(&unique_linear_label(hook(4, 1)).unwrap()), vec![0, 1]);
        assert_eq!(bits(&unique_linear_label(hook(8, 0)).unwrap()), vec![0, 0, 0]);
        assert_eq!(bits(&unique_linear_label(hook(1, 0)).unwrap()), Vec::<u8>::new());
        assert!(unique_linear_label(hook(6, 0)).is_err());
    }

    #[test]
    fn unique_label_is_a_bijection() {
        for k in 0..=6u32 {
            let n = 1usize << k;
            let mut seen: Vec<usize> = (0..n).map(|x| unique_linear_label(hook(n, x)).unwrap().index()).collect();
            seen.sort();
            assert_eq!(seen, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn linear_sbc_examples() {
        assert_eq!(linear_sbc(hook(3, 1), &[hook(2, 1), hook(1, 0)]).unwrap(), 1);
        assert_eq!(linear_sbc(hook(8, 3), &[hook(8, 3)]).unwrap(), 1);
        assert_eq!(linear_sbc(hook(8, 3), &[hook(8, 2)]).unwrap(), 0);
        assert_eq!(linear_sbc(hook(7, 0), &[hook(4, 1), hook(2, 0), hook(1, 0)]).unwrap(), 0);
        assert_eq!(linear_sbc(hook(7, 2), &[hook(4, 1), hook(2, 0), hook(1, 0)]).unwrap(), 2);
        assert_eq!(linear_sbc(hook(7, 3), &[hook(4, 1), hook(2, 0), hook(1, 0)]).unwrap(), 1);
        assert!(linear_sbc(hook(3, 1), &[hook(1, 0), hook(2, 1)]).is_err());
        assert!(linear_sbc(hook(3, 1), &[hook(2, 1)]).is_err());
    }

    #[test]
    fn linear_profile_examples() {
        for k in 0..=4 {
            let n = 1 << k;
            for x in 0..n {
                let nonzero: Vec<_> =
                    linear_profile(hook(n, x)).unwrap().into_iter().filter(|e| e.multiplicity > 0).collect();
                assert_eq!(nonzero.len(), 1);
                assert_eq!(nonzero[0].multiplicity, 1);
            }
        }
        let trivial = linear_profile(hook(12, 0)).unwrap();
        let nonzero: Vec<_> = trivial.iter().filter(|e| e.multiplicity > 0).collect();
        assert_eq!(nonzero.len(), 1);
        assert!(nonzero[0].label.iter().all(|l| l.bits().iter().all(|&b| b == 0)));
        let p = linear_profile(hook(12, 5)).unwrap();
        assert_eq!(p.len(), 32);
        assert!(p.iter().all(|e| e.multiplicity <= 1));
        for n in 1..=40 {
            for x in 0..n {
                assert!(linear_profile(hook(n, x)).unwrap().iter().any(|e| e.multiplicity > 0));
            }
        }
    }

    #[test]
    fn a_count_examples() {
        assert_eq!(a_count(3, 2).unwrap(), 2);
        assert_eq!(a_count(3, 0).unwrap(), 0);
        assert_eq!(a_count(3, 3).unwrap(), 3);
        assert_eq!(a_count(3, 7).unwrap(), 0);
        assert!(a_count(1, 0).is_err());
        assert!(a_count(3, 8).is_err());
    }

    #[test]
    fn hook1_examples() {
        assert_eq!(hook1_degrees(1).unwrap(), vec![1]);
        assert_eq!(hook1_degrees(3).unwrap(), vec![1, 2, 4]);
        assert!(hook1_degrees(0).is_err());
    }

    #[test]
    fn sign_label_examples() {
        assert_eq!(sign_label(2).unwrap().to_string(), "X(1)");
        assert_eq!(sign_label(4).unwrap().to_string(), "E(X(1);0)");
        assert_eq!(sign_label(3).unwrap().to_string(), "X(1) x 1");
    }
}

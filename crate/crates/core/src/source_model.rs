//! Validated source distributions and the entropy quantities built on them.

use crate::{Error, Result};

/// Largest code alphabet supported; digits render as `0-9a-z`.
pub const MAX_ALPHABET: u32 = 36;

/// Tolerance on `sum(probs) == 1`.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// What [`SourceDistribution::normalize_with`] does with zero weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroPolicy {
    /// A zero weight is an error.
    #[default]
    Reject,
    /// Zero weights are removed before sorting.
    Drop,
}

/// A probability vector sorted in non-increasing order, paired with the size
/// of the code alphabet.
///
/// Every value of this type satisfies `p[0] >= p[1] >= .. >= p[n-1] > 0`,
/// `|sum(p) - 1| <= 1e-9` and `2 <= k <= 36`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceDistribution {
    probs: Vec<f64>,
    k: u32,
    /// `order[i]` is the 0-based position in the raw input of sorted symbol `i`.
    order: Vec<usize>,
}

/// An entropy value together with the logarithm base it was computed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub base: u32,
}

fn check_alphabet(k: u32) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(k))
    }
}

impl SourceDistribution {
    /// Wraps an already sorted, already normalized probability vector.
    pub fn from_sorted(probs: Vec<f64>, k: u32) -> Result<Self> {
        check_alphabet(k)?;
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no symbols".into()));
        }
        if let Some(p) = probs
            .iter()
            .find(|p| !(p.is_finite() && **p > 0.0 && **p <= 1.0))
        {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} outside (0, 1]"
            )));
        }
        if let Some(w) = probs.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidDistribution(format!(
                "probabilities increase at position {}",
                w + 2
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}"
            )));
        }
        let order = (0..probs.len()).collect();
        Ok(Self { probs, k, order })
    }

    /// Normalizes raw non-negative weights and sorts them in non-increasing
    /// order. Zero weights are rejected.
    pub fn normalize(raw: &[f64], k: u32) -> Result<Self> {
        Self::normalize_with(raw, k, ZeroPolicy::Reject)
    }

    pub fn normalize_with(raw: &[f64], k: u32, zeros: ZeroPolicy) -> Result<Self> {
        check_alphabet(k)?;
        if let Some(w) = raw.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidDistribution(format!(
                "weight {w} is not a finite non-negative number"
            )));
        }
        let mut indexed: Vec<(usize, f64)> = raw.iter().copied().enumerate().collect();
        match zeros {
            ZeroPolicy::Drop => indexed.retain(|&(_, w)| w > 0.0),
            ZeroPolicy::Reject => {
                if raw.iter().any(|w| *w > 0.0) {
                    if let Some((i, _)) = indexed.iter().find(|(_, w)| *w == 0.0) {
                        return Err(Error::InvalidDistribution(format!(
                            "symbol {} has zero probability",
                            i + 1
                        )));
                    }
                }
            }
        }
        let sum: f64 = indexed.iter().map(|(_, w)| w).sum();
        if indexed.is_empty() || sum <= 0.0 {
            return Err(Error::InvalidDistribution("no positive weight".into()));
        }
        if !sum.is_finite() {
            return Err(Error::InvalidDistribution("weights overflow".into()));
        }
        // Inputs that already sum to one keep their exact values, which makes
        // normalization idempotent.
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            for (_, w) in &mut indexed {
                *w /= sum;
            }
        }
        // Stable: ties keep their input order.
        indexed.sort_by(|a, b| b.1.total_cmp(&a.1));
        if indexed.iter().any(|(_, w)| *w == 0.0) {
            return Err(Error::InvalidDistribution(
                "a weight underflows to zero".into(),
            ));
        }
        let (order, probs) = indexed.into_iter().unzip();
        Ok(Self { probs, k, order })
    }

    /// The same probabilities paired with a different code alphabet.
    pub fn with_alphabet(&self, k: u32) -> Result<Self> {
        check_alphabet(k)?;
        Ok(Self { k, ..self.clone() })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest probability.
    pub fn p1(&self) -> f64 {
        self.probs[0]
    }

    /// 0-based input positions of the sorted symbols.
    pub fn original_order(&self) -> &[usize] {
        &self.order
    }

    /// Shannon entropy in the given base.
    pub fn entropy(&self, base: u32) -> EntropyValue {
        let ln_base = f64::from(base).ln();
        let nats = self.probs.iter().fold(0.0, |acc, &p| acc - p * p.ln());
        EntropyValue {
            value: (nats / ln_base).max(0.0),
            base,
        }
    }

    /// Entropy in the base of the code alphabet.
    pub fn entropy_k(&self) -> f64 {
        self.entropy(self.k).value
    }
}

/// Sum that is `+0.0` when empty (the std `f64` sum starts from `-0.0`).
pub(crate) fn total<'a>(values: impl IntoIterator<Item = &'a f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, &x| acc + x)
}

/// Entropy of the two-point distribution `(p1, 1 - p1)` in base `k`, with
/// `0 log 0 = 0`.
pub fn binary_entropy_base_k(p1: f64, k: u32) -> Result<f64> {
    if !(p1 > 0.0 && p1 <= 1.0) {
        return Err(Error::InvalidProbability(p1));
    }
    check_alphabet(k)?;
    Ok(binary_entropy_unchecked(p1, k))
}

pub(crate) fn binary_entropy_unchecked(p1: f64, k: u32) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    (term(p1) + term(1.0 - p1)) / f64::from(k).ln()
}

/// `log_k(x)`.
pub(crate) fn log_k(x: f64, k: u32) -> f64 {
    x.ln() / f64::from(k).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_divides_by_sum() {
        let d = SourceDistribution::normalize(&[2.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.25, 0.25]);
        assert_eq!(d.k(), 2);
    }

    #[test]
    fn normalize_sorts_and_keeps_permutation() {
        let d = SourceDistribution::normalize(&[0.25, 0.5, 0.25], 2).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.25, 0.25]);
        let one_based: Vec<usize> = d.original_order().iter().map(|i| i + 1).collect();
        assert_eq!(one_based, [2, 1, 3]);
    }

    #[test]
    fn normalize_rejects_degenerate_input() {
        assert!(matches!(
            SourceDistribution::normalize(&[0.0, 0.0, 0.0], 2),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            SourceDistribution::normalize(&[], 2),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            SourceDistribution::normalize(&[1.0, -1.0], 2),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            SourceDistribution::normalize(&[1.0, f64::NAN], 2),
            Err(Error::InvalidDistribution(_))
        ));
        assert_eq!(
            SourceDistribution::normalize(&[1.0], 1),
            Err(Error::InvalidAlphabet(1))
        );
        assert_eq!(
            SourceDistribution::normalize(&[1.0], 37),
            Err(Error::InvalidAlphabet(37))
        );
    }

    #[test]
    fn zero_weights_rejected_unless_dropped() {
        assert!(SourceDistribution::normalize(&[1.0, 0.0, 1.0], 2).is_err());
        let d = SourceDistribution::normalize_with(&[1.0, 0.0, 3.0], 2, ZeroPolicy::Drop).unwrap();
        assert_eq!(d.probs(), &[0.75, 0.25]);
        assert_eq!(d.original_order(), &[2, 0]);
    }

    #[test]
    fn from_sorted_validates() {
        assert!(SourceDistribution::from_sorted(vec![0.5, 0.5], 2).is_ok());
        assert!(SourceDistribution::from_sorted(vec![0.4, 0.6], 2).is_err());
        assert!(SourceDistribution::from_sorted(vec![0.5, 0.4], 2).is_err());
        assert!(SourceDistribution::from_sorted(vec![1.0, 0.0], 2).is_err());
    }

    #[test]
    fn entropy_examples() {
        let uniform = SourceDistribution::normalize(&[1.0; 4], 2).unwrap();
        assert!((uniform.entropy(2).value - 2.0).abs() < 1e-15);
        let point = SourceDistribution::normalize(&[1.0], 2).unwrap();
        assert_eq!(point.entropy(2).value, 0.0);
        // 1.485475297227334319499... from a 40-digit evaluation.
        let d = SourceDistribution::from_sorted(vec![0.5, 0.3, 0.2], 2).unwrap();
        assert!((d.entropy(2).value - 1.485_475_297_227_334_3).abs() < 1e-14);
    }

    #[test]
    fn binary_entropy_examples() {
        assert!((binary_entropy_base_k(0.5, 2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(binary_entropy_base_k(1.0, 2).unwrap(), 0.0);
        assert!((binary_entropy_base_k(0.5, 4).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            binary_entropy_base_k(0.0, 2),
            Err(Error::InvalidProbability(0.0))
        );
        assert_eq!(
            binary_entropy_base_k(1.5, 2),
            Err(Error::InvalidProbability(1.5))
        );
    }
}

//! Radix-order enumeration of k-ary strings and the optimal one-to-one codes
//! built from it.
//!
//! Strings are numbered in radix order (shorter first, then lexicographic)
//! by their *heap index*: the empty string is node 0 and node `x` has the
//! children `k*x + 1 ..= k*x + k`. The string of a node is read off its
//! parent chain, so no string comparison is ever needed.

use std::collections::HashSet;

use crate::source_model::{total, SourceDistribution};
use crate::word::Word;
use crate::{Error, Result};

/// Radix-order position of a k-ary string; `0` is the empty string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeapIndex(pub u64);

impl HeapIndex {
    pub const ROOT: HeapIndex = HeapIndex(0);

    /// Parent node and the digit leading from it to `self`; `None` at the root.
    pub fn parent(self, k: u32) -> Option<(HeapIndex, u8)> {
        let x = self.0.checked_sub(1)?;
        let k = u64::from(k);
        Some((HeapIndex(x / k), (x % k) as u8))
    }

    pub fn child(self, digit: u8, k: u32) -> Option<HeapIndex> {
        self.0
            .checked_mul(u64::from(k))?
            .checked_add(u64::from(digit) + 1)
            .map(HeapIndex)
    }

    /// Length of the string, `floor(log_k((k-1) x + 1))`.
    pub fn level(self, k: u32) -> u32 {
        level_of(self.0, k)
    }

    pub fn to_word(self, k: u32) -> Word {
        let mut digits = Vec::new();
        let mut node = self;
        while let Some((parent, d)) = node.parent(k) {
            digits.push(d);
            node = parent;
        }
        digits.reverse();
        Word::new(digits)
    }

    /// Inverse of [`to_word`](Self::to_word); `None` when the index overflows.
    pub fn from_word(word: &Word, k: u32) -> Option<HeapIndex> {
        word.digits()
            .iter()
            .try_fold(HeapIndex::ROOT, |node, &d| node.child(d, k))
    }
}

/// The `x`-th non-empty k-ary string in radix order (1-based).
pub fn heap_to_string(x: u64, k: u32) -> Result<Word> {
    if x < 1 {
        return Err(Error::InvalidIndex(x));
    }
    Ok(HeapIndex(x).to_word(k))
}

/// Heap index of the first string of length `j`: `(k^j - 1) / (k - 1)`,
/// saturating at `u64::MAX`.
pub fn level_start(j: u32, k: u32) -> u64 {
    (0..j).fold(0u64, |acc, _| {
        acc.saturating_mul(u64::from(k)).saturating_add(1)
    })
}

/// Length of the string with heap index `x`.
pub fn level_of(x: u64, k: u32) -> u32 {
    let (x, k) = (u128::from(x), u128::from(k));
    let mut level = 0;
    let mut next = 1u128;
    while next <= x {
        level += 1;
        next = next * k + 1;
    }
    level
}

/// Codeword lengths of the optimal one-to-one code for `n` symbols:
/// `floor(log_k((k-1) i + 1))`, or `floor(log_k((k-1) i))` when the empty
/// word is allowed.
pub fn one_to_one_lengths(n: usize, k: u32, uses_epsilon: bool) -> Vec<u32> {
    let offset = u64::from(uses_epsilon);
    (1..=n as u64).map(|i| level_of(i - offset, k)).collect()
}

/// Heap indices handed to symbols `1..=n`: the first `n` radix positions
/// (starting at the empty string when `uses_epsilon`), reversed within each
/// length level.
pub fn assigned_heap_indices(n: usize, k: u32, uses_epsilon: bool) -> Vec<HeapIndex> {
    let first = u64::from(!uses_epsilon);
    let last = first + n as u64 - 1;
    (first..=last)
        .map(|pos| {
            let j = level_of(pos, k);
            let start = level_start(j, k);
            let end = (level_start(j + 1, k) - 1).min(last);
            HeapIndex(start + end - pos)
        })
        .collect()
}

/// A one-to-one (injective, not necessarily uniquely decodable) code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneToOneCode {
    codewords: Vec<Word>,
    uses_epsilon: bool,
    k: u32,
}

impl OneToOneCode {
    /// Validates that codewords are distinct k-ary strings and that the empty
    /// word only appears when `uses_epsilon` is set.
    pub fn new(codewords: Vec<Word>, uses_epsilon: bool, k: u32) -> Result<Self> {
        let mut seen = HashSet::new();
        for w in &codewords {
            if w.digits().iter().any(|&d| u32::from(d) >= k) {
                return Err(Error::InvalidCodebook(format!(
                    "{w} has a digit outside 0..{k}"
                )));
            }
            if w.is_empty() && !uses_epsilon {
                return Err(Error::InvalidCodebook(
                    "empty codeword without the empty-word option".into(),
                ));
            }
            if !seen.insert(w) {
                return Err(Error::InvalidCodebook(format!(
                    "codeword {w:?} appears twice"
                )));
            }
        }
        Ok(Self {
            codewords,
            uses_epsilon,
            k,
        })
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn uses_epsilon(&self) -> bool {
        self.uses_epsilon
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.codewords.iter().map(|w| w.len() as u32).collect()
    }

    /// `sum p_i |w_i|`.
    pub fn average_length(&self, dist: &SourceDistribution) -> Result<f64> {
        check_pairing(self.codewords.len(), self.k, dist)?;
        Ok(dist
            .probs()
            .iter()
            .zip(&self.codewords)
            .map(|(p, w)| p * w.len() as f64)
            .sum())
    }
}

pub(crate) fn check_pairing(n: usize, k: u32, dist: &SourceDistribution) -> Result<()> {
    if n != dist.len() || k != dist.k() {
        return Err(Error::InvalidPairing(format!(
            "code has n = {n}, k = {k}; distribution has n = {}, k = {}",
            dist.len(),
            dist.k()
        )));
    }
    Ok(())
}

/// The minimum-average-length one-to-one code for `dist`.
pub fn assign_one_to_one(dist: &SourceDistribution, uses_epsilon: bool) -> OneToOneCode {
    let k = dist.k();
    let codewords = assigned_heap_indices(dist.len(), k, uses_epsilon)
        .into_iter()
        .map(|x| x.to_word(k))
        .collect();
    OneToOneCode {
        codewords,
        uses_epsilon,
        k,
    }
}

/// Optimal average lengths `(L_plus, L_eps)` without and with the empty word.
pub fn optimal_lengths(dist: &SourceDistribution) -> (f64, f64) {
    let avg = |eps| {
        let lengths = one_to_one_lengths(dist.len(), dist.k(), eps);
        dist.probs()
            .iter()
            .zip(lengths)
            .map(|(p, l)| p * f64::from(l))
            .sum()
    };
    (avg(false), avg(true))
}

/// 1-based symbol indices `(k^j - 1) / (k - 1) <= n`, `j >= 1`: the first
/// symbol of each length level, whose codeword shrinks by one digit when the
/// empty word becomes available.
pub fn epsilon_gap_indices(n: usize, k: u32) -> Vec<usize> {
    (1..)
        .map(|j| level_start(j, k))
        .take_while(|&i| i <= n as u64)
        .map(|i| i as usize)
        .collect()
}

/// `L_plus - L_eps`, summed over [`epsilon_gap_indices`].
pub fn epsilon_gap_exact(dist: &SourceDistribution) -> f64 {
    total(
        epsilon_gap_indices(dist.len(), dist.k())
            .into_iter()
            .map(|i| &dist.probs()[i - 1]),
    )
}

/// Terms `j = 1 ..= floor(log_k(ceil((n-1)/k)))` of the closed-form sum
/// `sum_j p_{(k^j - 1)/(k - 1)}`. It drops terms for some `n` (for example
/// `n = 4, k = 2` keeps only `p_1`); see [`epsilon_gap_exact`] for the
/// identity that always holds.
pub fn epsilon_gap_printed(dist: &SourceDistribution) -> f64 {
    let n = dist.len() as u64;
    let k = u64::from(dist.k());
    let m = (n - 1).div_ceil(k);
    let mut upper = 0;
    let mut power = k;
    while m > 0 && power <= m {
        upper += 1;
        power = power.saturating_mul(k);
    }
    total((1..=upper).map(|j| &dist.probs()[level_start(j, dist.k()) as usize - 1]))
}

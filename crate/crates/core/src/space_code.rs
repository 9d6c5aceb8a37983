//! Prefix-free codes over `{0, .., k-1, _}` in which the space mark `_` may
//! only be the final letter of a codeword.
//!
//! [`build_space_code`] starts from the optimal one-to-one code and appends a
//! space to exactly those codewords that are a proper prefix of another
//! codeword. With heap indices this is the test `k*x + 1 <= n`, so the whole
//! construction is linear in `n`.

use std::fmt;

use crate::codec::CodeTrie;
use crate::radix::{
    self, assigned_heap_indices, check_pairing, level_of, level_start, OneToOneCode,
};
use crate::source_model::{total, SourceDistribution};
use crate::word::{Word, SPACE_MARK};
use crate::{Error, Result};

/// One codeword: non-empty digits, optionally followed by the space mark.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceCodeword {
    pub digits: Word,
    pub has_space: bool,
}

impl SpaceCodeword {
    /// Total length in letters of the `k+1`-ary alphabet.
    pub fn len(&self) -> usize {
        self.digits.len() + usize::from(self.has_space)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parses the text form, e.g. `"01_"`.
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        let (digits, has_space) = match text.strip_suffix(SPACE_MARK) {
            Some(rest) => (rest, true),
            None => (text, false),
        };
        let digits = Word::parse(digits, k)?;
        Ok(Self { digits, has_space })
    }
}

impl fmt::Display for SpaceCodeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits)?;
        if self.has_space {
            write!(f, "{SPACE_MARK}")?;
        }
        Ok(())
    }
}

/// A prefix-free space-terminated code; entry `i` encodes symbol `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCodebook {
    entries: Vec<SpaceCodeword>,
    k: u32,
}

impl SpaceCodebook {
    /// Checks that every codeword is a non-empty k-ary string and that no
    /// rendered codeword is a prefix of another.
    pub fn new(entries: Vec<SpaceCodeword>, k: u32) -> Result<Self> {
        if !(2..=crate::source_model::MAX_ALPHABET).contains(&k) {
            return Err(Error::InvalidAlphabet(k));
        }
        if entries.is_empty() {
            return Err(Error::InvalidCodebook("no codewords".into()));
        }
        let code = Self { entries, k };
        CodeTrie::build(&code)?;
        Ok(code)
    }

    pub fn entries(&self) -> &[SpaceCodeword] {
        &self.entries
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of codewords ending with the space mark.
    pub fn space_count(&self) -> usize {
        self.entries.iter().filter(|c| c.has_space).count()
    }

    pub fn total_lengths(&self) -> Vec<u32> {
        self.entries.iter().map(|c| c.len() as u32).collect()
    }

    /// `sum p_i (|digits_i| + [space_i])`.
    pub fn average_length(&self, dist: &SourceDistribution) -> Result<f64> {
        check_pairing(self.entries.len(), self.k, dist)?;
        Ok(dist
            .probs()
            .iter()
            .zip(&self.entries)
            .map(|(p, c)| p * c.len() as f64)
            .sum())
    }

    /// Drops every space mark. For a prefix-free input the result is always
    /// injective; a collision means the input was not prefix-free.
    pub fn strip_spaces(&self) -> Result<OneToOneCode> {
        let words = self.entries.iter().map(|c| c.digits.clone()).collect();
        OneToOneCode::new(words, false, self.k).map_err(|e| match e {
            Error::InvalidCodebook(msg) => {
                Error::InvalidCodebook(format!("stripping spaces is not injective: {msg}"))
            }
            other => other,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(entries: Vec<SpaceCodeword>, k: u32) -> Self {
        Self { entries, k }
    }
}

/// Linear-time space-terminated code for `dist`.
pub fn build_space_code(dist: &SourceDistribution) -> SpaceCodebook {
    let k = dist.k();
    let n = dist.len() as u64;
    let entries = assigned_heap_indices(dist.len(), k, false)
        .into_iter()
        .map(|x| SpaceCodeword {
            digits: x.to_word(k),
            // First child k*x + 1 exists iff k*x + 1 <= n.
            has_space: x.0 * u64::from(k) < n,
        })
        .collect();
    SpaceCodebook { entries, k }
}

/// `ceil(n/k) - 1`, the number of chosen strings that prefix another one.
pub fn internal_node_count(n: usize, k: u32) -> usize {
    n.div_ceil(k as usize) - 1
}

/// `L_plus + sum of p_i over space-marked symbols`, the same quantity as
/// [`SpaceCodebook::average_length`] computed from the one-to-one code.
pub fn average_length_from_one_to_one(
    code: &SpaceCodebook,
    dist: &SourceDistribution,
) -> Result<f64> {
    check_pairing(code.len(), code.k(), dist)?;
    let (l_plus, _) = radix::optimal_lengths(dist);
    let marked = total(
        dist.probs()
            .iter()
            .zip(code.entries())
            .filter(|(_, c)| c.has_space)
            .map(|(p, _)| p),
    );
    Ok(l_plus + marked)
}

/// Depth of the code tree: the length of the last one-to-one codeword.
pub fn tree_height(n: usize, k: u32) -> u32 {
    level_of(n as u64, k)
}

/// Index ranges of the closed-form length formula for the constructed code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormRanges {
    /// `ceil(log_k(n - ceil(n/k)))`.
    pub h: u32,
    /// Symbols `1 ..= head_end` carry a space.
    pub head_end: i64,
    /// Symbols `tail_start ..= tail_end` carry a space.
    pub tail_start: i64,
    pub tail_end: i64,
}

impl ClosedFormRanges {
    pub fn new(n: usize, k: u32) -> Option<Self> {
        let ceil_nk = n.div_ceil(k as usize) as u64;
        let v = n as u64 - ceil_nk;
        if v == 0 {
            return None;
        }
        let mut h = 0u32;
        let mut power = 1u64;
        while power < v {
            power *= u64::from(k);
            h += 1;
        }
        if h == 0 {
            return None;
        }
        let ls = |j: u32| level_start(j, k) as i64;
        let kh = i64::try_from(u64::from(k).checked_pow(h)?).ok()?;
        let kh1 = kh / i64::from(k);
        Some(Self {
            h,
            head_end: ls(h - 1) - 1,
            tail_start: (kh + kh1 - 2) / (i64::from(k) - 1) - ceil_nk as i64,
            tail_end: ls(h) - 1,
        })
    }

    /// Ranges are ordered, disjoint and inside `1..=n`.
    pub fn is_well_formed(&self, n: usize) -> bool {
        self.head_end >= 0
            && self.tail_start > self.head_end
            && self.tail_start >= 1
            && self.tail_start <= self.tail_end + 1
            && self.tail_end <= n as i64
    }

    pub fn is_marked(&self, i: usize) -> bool {
        let i = i as i64;
        (1..=self.head_end).contains(&i) || (self.tail_start..=self.tail_end).contains(&i)
    }
}

/// Total codeword lengths given by the closed-form formula, or `None` when
/// its index ranges are not well-formed for this `(n, k)`.
pub fn closed_form_lengths(n: usize, k: u32) -> Option<Vec<u32>> {
    let ranges = ClosedFormRanges::new(n, k).filter(|r| r.is_well_formed(n))?;
    Some(
        radix::one_to_one_lengths(n, k, false)
            .into_iter()
            .enumerate()
            .map(|(i, l)| l + u32::from(ranges.is_marked(i + 1)))
            .collect(),
    )
}

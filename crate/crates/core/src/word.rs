//! Strings over the code alphabet `{0, .., k-1}` and their text rendering.

use std::fmt;

use crate::{Error, Result};

/// Text form of the space mark.
pub const SPACE_MARK: char = '_';

/// A (possibly empty) string of k-ary digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(digits: Vec<u8>) -> Self {
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when `self` is a prefix of `other` and strictly shorter.
    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.0.starts_with(&self.0)
    }

    /// Parses digits `0-9a-z`, each of which must be below `k`.
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        text.bytes()
            .map(|b| {
                digit_value(b, k).ok_or_else(|| {
                    Error::InvalidCodebook(format!("{:?} is not a digit for k = {k}", b as char))
                })
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            write!(f, "{}", digit_char(d))?;
        }
        Ok(())
    }
}

pub(crate) fn digit_char(d: u8) -> char {
    char::from_digit(u32::from(d), 36).expect("digit below 36")
}

/// Value of a text digit, if it is one and lies below `k`.
pub(crate) fn digit_value(b: u8, k: u32) -> Option<u8> {
    let v = match b {
        b'0'..=b'9' => b - b'0',
        b'a'..=b'z' => b - b'a' + 10,
        _ => return None,
    };
    (u32::from(v) < k).then_some(v)
}

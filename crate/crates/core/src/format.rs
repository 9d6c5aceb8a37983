//! File formats: distribution files, codebook JSON and number rounding.
//!
//! A distribution file is either a JSON object `{"k": 2, "probs": [...]}` or
//! a CSV file whose header row is `prob` followed by one weight per line.
//! Weights need not be normalized.
//!
//! A codebook file is `{"kind": ..., "k": ..., "codewords": [...]}` where the
//! kind is `one_to_one`, `one_to_one_eps` or `space_prefix`, and codeword `j`
//! (0-based) belongs to symbol `j + 1`. Spaces render as `_` and the empty
//! word as `""`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::radix::OneToOneCode;
use crate::source_model::{SourceDistribution, ZeroPolicy};
use crate::space_code::{SpaceCodebook, SpaceCodeword};
use crate::word::Word;
use crate::{Error, Result};

/// Significant digits of numbers in JSON output.
pub const JSON_DIGITS: usize = 15;

/// Alphabet size used when neither the file nor the caller names one.
pub const DEFAULT_K: u32 = 2;

/// Rounds `x` to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() || digits == 0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub probs: Vec<f64>,
}

impl DistributionFile {
    /// Parses JSON when the first non-blank character is `{`, CSV otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| {
                Error::InvalidDistribution(format!("bad JSON distribution file: {e}"))
            });
        }
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| Error::InvalidDistribution(format!("bad CSV distribution file: {e}")))?;
        if header.len() != 1 || &header[0] != "prob" {
            return Err(Error::InvalidDistribution(
                "CSV distribution file needs the header `prob`".into(),
            ));
        }
        let mut probs = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record =
                record.map_err(|e| Error::InvalidDistribution(format!("bad CSV row: {e}")))?;
            let cell = record.get(0).unwrap_or_default();
            let p = cell.parse::<f64>().map_err(|_| {
                Error::InvalidDistribution(format!("row {} is not a number: {cell:?}", line + 2))
            })?;
            probs.push(p);
        }
        Ok(Self { k: None, probs })
    }

    /// Builds the distribution; `k_override` wins over the file's `k`.
    pub fn distribution(
        &self,
        k_override: Option<u32>,
        zeros: ZeroPolicy,
    ) -> Result<SourceDistribution> {
        let k = k_override.or(self.k).unwrap_or(DEFAULT_K);
        SourceDistribution::normalize_with(&self.probs, k, zeros)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    OneToOne,
    OneToOneEps,
    SpacePrefix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookFile {
    pub kind: CodeKind,
    pub k: u32,
    pub codewords: Vec<String>,
}

impl CodebookFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidCodebook(format!("bad codebook JSON: {e}")))
    }

    pub fn from_space_code(code: &SpaceCodebook) -> Self {
        Self {
            kind: CodeKind::SpacePrefix,
            k: code.k(),
            codewords: code.entries().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_one_to_one(code: &OneToOneCode) -> Self {
        Self {
            kind: if code.uses_epsilon() {
                CodeKind::OneToOneEps
            } else {
                CodeKind::OneToOne
            },
            k: code.k(),
            codewords: code.codewords().iter().map(ToString::to_string).collect(),
        }
    }

    /// Reorders codewords from sorted-symbol order to the input order of the
    /// distribution they were built for.
    pub fn in_input_order(mut self, dist: &SourceDistribution) -> Self {
        let mut pairs: Vec<(usize, String)> = dist
            .original_order()
            .iter()
            .copied()
            .zip(self.codewords)
            .collect();
        pairs.sort_by_key(|(pos, _)| *pos);
        self.codewords = pairs.into_iter().map(|(_, w)| w).collect();
        self
    }

    /// Loads the codewords as a prefix-free space-terminated code. Plain
    /// one-to-one codebooks are accepted when they happen to be prefix-free.
    pub fn to_space_code(&self) -> Result<SpaceCodebook> {
        if self.kind == CodeKind::OneToOneEps {
            return Err(Error::InvalidCodebook(
                "a code containing the empty word cannot be decoded".into(),
            ));
        }
        let entries = self
            .codewords
            .iter()
            .map(|w| SpaceCodeword::parse(w, self.k))
            .collect::<Result<_>>()?;
        SpaceCodebook::new(entries, self.k)
    }

    pub fn to_one_to_one(&self) -> Result<OneToOneCode> {
        if self.kind == CodeKind::SpacePrefix {
            return self.to_space_code()?.strip_spaces();
        }
        let words = self
            .codewords
            .iter()
            .map(|w| Word::parse(w, self.k))
            .collect::<Result<_>>()?;
        OneToOneCode::new(words, self.kind == CodeKind::OneToOneEps, self.k)
    }
}

fn round_value(value: &mut Value, digits: usize) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x, digits)))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_value(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_value(v, digits)),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`JSON_DIGITS`] significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    round_value(&mut v, JSON_DIGITS);
    serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
}

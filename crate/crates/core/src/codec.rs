//! Streaming encoder and decoder for space-terminated codes.
//!
//! Streams are text over `0-9a-z` (first `k` digits) plus `_` for the space.
//! Decoding is a single left-to-right pass over a trie of the codebook that
//! keeps one node as its only state: a digit descends, reaching a bare
//! codeword emits it, and a space emits the space-terminated codeword of the
//! current node.

use crate::space_code::SpaceCodebook;
use crate::word::{digit_char, digit_value, SPACE_MARK};
use crate::{Error, Result, StreamFault};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, Default)]
struct Slots {
    /// Symbol whose codeword is exactly this node's digits.
    bare: Option<usize>,
    /// Symbol whose codeword is this node's digits plus a space.
    spaced: Option<usize>,
    has_children: bool,
}

/// Trie over the digit strings of a codebook.
#[derive(Debug, Clone)]
pub struct CodeTrie {
    k: usize,
    /// `children[node * k + d]`, `NONE` when absent.
    children: Vec<u32>,
    slots: Vec<Slots>,
}

impl CodeTrie {
    /// Builds the trie and rejects codebooks that are not prefix-free.
    pub fn build(code: &SpaceCodebook) -> Result<Self> {
        let k = code.k() as usize;
        let mut trie = CodeTrie {
            k,
            children: vec![NONE; k],
            slots: vec![Slots::default()],
        };
        for (symbol, entry) in code.entries().iter().enumerate() {
            if entry.digits.is_empty() {
                return Err(Error::InvalidCodebook(format!(
                    "codeword {} has no digits",
                    symbol + 1
                )));
            }
            let conflict = |other: usize| {
                Error::InvalidCodebook(format!(
                    "codewords {} and {} violate the prefix condition",
                    other + 1,
                    symbol + 1
                ))
            };
            let mut node = 0usize;
            for &d in entry.digits.digits() {
                if usize::from(d) >= k {
                    return Err(Error::InvalidCodebook(format!(
                        "codeword {} has digit {d} >= k",
                        symbol + 1
                    )));
                }
                if let Some(other) = trie.slots[node].bare {
                    return Err(conflict(other));
                }
                trie.slots[node].has_children = true;
                node = trie.child_or_insert(node, d);
            }
            let slots = trie.slots[node];
            if let Some(other) = slots.bare {
                return Err(conflict(other));
            }
            if entry.has_space {
                if let Some(other) = slots.spaced {
                    return Err(conflict(other));
                }
                trie.slots[node].spaced = Some(symbol);
            } else {
                if let Some(other) = slots.spaced {
                    return Err(conflict(other));
                }
                if slots.has_children {
                    return Err(Error::InvalidCodebook(format!(
                        "codeword {} is a prefix of another codeword",
                        symbol + 1
                    )));
                }
                trie.slots[node].bare = Some(symbol);
            }
        }
        Ok(trie)
    }

    fn child_or_insert(&mut self, node: usize, d: u8) -> usize {
        let slot = node * self.k + usize::from(d);
        if self.children[slot] == NONE {
            self.children[slot] = self.slots.len() as u32;
            self.slots.push(Slots::default());
            self.children.extend(std::iter::repeat_n(NONE, self.k));
        }
        self.children[slot] as usize
    }

    fn child(&self, node: usize, d: u8) -> Option<usize> {
        match self.children[node * self.k + usize::from(d)] {
            NONE => None,
            c => Some(c as usize),
        }
    }
}

/// Concatenates the codewords of the 1-based `message` symbols.
pub fn encode(code: &SpaceCodebook, message: &[usize]) -> Result<String> {
    let mut out = String::new();
    for &symbol in message {
        let entry = symbol
            .checked_sub(1)
            .and_then(|i| code.entries().get(i))
            .ok_or(Error::UnknownSymbol {
                index: symbol,
                n: code.len(),
            })?;
        out.extend(entry.digits.digits().iter().map(|&d| digit_char(d)));
        if entry.has_space {
            out.push(SPACE_MARK);
        }
    }
    Ok(out)
}

/// Incremental decoder; feed bytes with [`push`](Self::push) and call
/// [`finish`](Self::finish) at end of input.
#[derive(Debug)]
pub struct StreamDecoder<'a> {
    trie: &'a CodeTrie,
    node: usize,
    offset: usize,
}

impl<'a> StreamDecoder<'a> {
    pub fn new(trie: &'a CodeTrie) -> Self {
        Self {
            trie,
            node: 0,
            offset: 0,
        }
    }

    /// Consumes one byte and returns the 1-based symbol it completes, if any.
    pub fn push(&mut self, byte: u8) -> Result<Option<usize>> {
        let offset = self.offset;
        let fail = |fault| Err(Error::MalformedStream { offset, fault });
        self.offset += 1;
        if byte == SPACE_MARK as u8 {
            if self.node == 0 {
                return fail(StreamFault::SpaceAtRoot);
            }
            return match self.trie.slots[self.node].spaced {
                Some(symbol) => {
                    self.node = 0;
                    Ok(Some(symbol + 1))
                }
                None => fail(StreamFault::SpaceNotAllowed),
            };
        }
        let Some(d) = digit_value(byte, self.trie.k as u32) else {
            return fail(StreamFault::InvalidByte(byte));
        };
        let Some(next) = self.trie.child(self.node, d) else {
            return fail(StreamFault::NoSuchCodeword);
        };
        if let Some(symbol) = self.trie.slots[next].bare {
            self.node = 0;
            Ok(Some(symbol + 1))
        } else {
            self.node = next;
            Ok(None)
        }
    }

    /// Fails if the input stopped inside a codeword.
    pub fn finish(self) -> Result<()> {
        if self.node == 0 {
            Ok(())
        } else {
            Err(Error::MalformedStream {
                offset: self.offset,
                fault: StreamFault::Truncated,
            })
        }
    }
}

/// Decodes a whole stream into 1-based symbol indices.
pub fn decode(code: &SpaceCodebook, stream: &str) -> Result<Vec<usize>> {
    let trie = CodeTrie::build(code)?;
    decode_with(&trie, stream.as_bytes())
}

pub fn decode_with(trie: &CodeTrie, stream: &[u8]) -> Result<Vec<usize>> {
    let mut decoder = StreamDecoder::new(trie);
    let mut out = Vec::new();
    for &b in stream {
        if let Some(symbol) = decoder.push(b)? {
            out.push(symbol);
        }
    }
    decoder.finish()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_space_code, SourceDistribution};

    fn paper_code() -> SpaceCodebook {
        build_space_code(&SourceDistribution::normalize(&[1.0; 10], 2).unwrap())
    }

    fn malformed(offset: usize, fault: StreamFault) -> Error {
        Error::MalformedStream { offset, fault }
    }

    #[test]
    fn encode_examples() {
        let code = paper_code();
        assert_eq!(encode(&code, &[1, 3]).unwrap(), "1_11");
        assert_eq!(encode(&code, &[]).unwrap(), "");
        assert_eq!(encode(&code, &[10, 2]).unwrap(), "0000_");
        assert_eq!(
            encode(&code, &[11]),
            Err(Error::UnknownSymbol { index: 11, n: 10 })
        );
        assert_eq!(
            encode(&code, &[0]),
            Err(Error::UnknownSymbol { index: 0, n: 10 })
        );
    }

    #[test]
    fn decode_examples() {
        let code = paper_code();
        assert_eq!(decode(&code, "1_11").unwrap(), [1, 3]);
        assert_eq!(decode(&code, "").unwrap(), Vec::<usize>::new());
        assert_eq!(
            decode(&code, "11_"),
            Err(malformed(2, StreamFault::SpaceAtRoot))
        );
    }

    #[test]
    fn decode_faults() {
        let code = build_space_code(&SourceDistribution::normalize(&[1.0; 4], 2).unwrap());
        // {1, 0_, 01, 00}: "1" is a leaf, so "1_" puts a space at the root.
        assert_eq!(
            decode(&code, "1_"),
            Err(malformed(1, StreamFault::SpaceAtRoot))
        );
        assert_eq!(
            decode(&code, "0"),
            Err(malformed(1, StreamFault::Truncated))
        );
        assert_eq!(
            decode(&code, "12"),
            Err(malformed(1, StreamFault::InvalidByte(b'2')))
        );
        assert_eq!(
            decode(&code, "0 "),
            Err(malformed(1, StreamFault::InvalidByte(b' ')))
        );

        // n = 3, k = 3: "0", "1", "2" only, so no space anywhere.
        let three = build_space_code(&SourceDistribution::normalize(&[1.0; 3], 3).unwrap());
        assert_eq!(
            decode(&three, "_"),
            Err(malformed(0, StreamFault::SpaceAtRoot))
        );

        // n = 5, k = 3: "2" is node 3 and "20" would be node 10 > 5.
        let five = build_space_code(&SourceDistribution::normalize(&[1.0; 5], 3).unwrap());
        let words: Vec<String> = five.entries().iter().map(|c| c.to_string()).collect();
        assert_eq!(words, ["2", "1", "0_", "01", "00"]);
        assert_eq!(
            decode(&five, "02"),
            Err(malformed(1, StreamFault::NoSuchCodeword))
        );
    }

    #[test]
    fn space_not_allowed_on_hand_built_code() {
        let entries = ["00", "01", "1"]
            .iter()
            .map(|w| crate::SpaceCodeword::parse(w, 2).unwrap())
            .collect();
        let code = SpaceCodebook::new(entries, 2).unwrap();
        assert_eq!(
            decode(&code, "0_"),
            Err(malformed(1, StreamFault::SpaceNotAllowed))
        );
        assert_eq!(decode(&code, "10001").unwrap(), [3, 1, 2]);
    }

    #[test]
    fn streaming_matches_batch() {
        let code = paper_code();
        let trie = CodeTrie::build(&code).unwrap();
        let mut decoder = StreamDecoder::new(&trie);
        let mut out = Vec::new();
        for b in "0111_000".bytes() {
            out.extend(decoder.push(b).unwrap());
        }
        decoder.finish().unwrap();
        assert_eq!(out, decode(&code, "0111_000").unwrap());
    }
}

//! Prefix-free codes in which a designated *space* symbol may only appear as
//! the last letter of a codeword.
//!
//! The crate builds optimal k-ary one-to-one codes (with and without the empty
//! word), turns them into space-terminated prefix-free codes in linear time,
//! encodes and decodes symbol streams, evaluates entropy-based bounds on the
//! average codeword length, and certifies the construction against an
//! exhaustive oracle on small instances.
//!
//! ```
//! use spacecode::{build_space_code, SourceDistribution};
//!
//! let dist = SourceDistribution::normalize(&[10., 9., 8., 7., 6., 5., 4., 3., 2., 1.], 2)?;
//! let code = build_space_code(&dist);
//! let rendered: Vec<String> = code.entries().iter().map(|c| c.to_string()).collect();
//! assert_eq!(rendered, ["1_", "0_", "11", "10", "01_", "00_", "011", "010", "001", "000"]);
//! # Ok::<(), spacecode::Error>(())
//! ```

pub mod bench;
pub mod bounds;
pub mod cli;
pub mod codec;
mod error;
pub mod format;
pub mod oracle;
pub mod radix;
pub mod source_model;
pub mod space_code;
pub mod word;

pub use error::{Error, Result, StreamFault};
pub use radix::{assign_one_to_one, epsilon_gap_exact, HeapIndex, OneToOneCode};
pub use source_model::{EntropyValue, SourceDistribution, ZeroPolicy};
pub use space_code::{build_space_code, SpaceCodebook, SpaceCodeword};
pub use word::Word;

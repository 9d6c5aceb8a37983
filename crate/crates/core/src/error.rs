use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid code alphabet size {0} (need 2 <= k <= 36)")]
    InvalidAlphabet(u32),
    #[error("probability {0} is outside (0, 1]")]
    InvalidProbability(f64),
    #[error("invalid heap index {0}")]
    InvalidIndex(u64),
    #[error("code and distribution do not match: {0}")]
    InvalidPairing(String),
    #[error("unknown symbol {index} (code has {n} symbols)")]
    UnknownSymbol { index: usize, n: usize },
    #[error("malformed stream at byte {offset}: {fault}")]
    MalformedStream { offset: usize, fault: StreamFault },
    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),
    #[error("search budget exceeded after {searched} nodes")]
    BudgetExceeded { searched: u64 },
    #[error("invalid parameter: {0}")]
    InvalidSpec(String),
    #[error("I/O error: {0}")]
    Io(String),
}

/// Why a stream failed to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamFault {
    /// A digit leads outside the code tree.
    NoSuchCodeword,
    /// A space with no digits before it.
    SpaceAtRoot,
    /// A space after digits that do not form a space-terminated codeword.
    SpaceNotAllowed,
    /// The stream ends inside a codeword.
    Truncated,
    /// A byte that is neither a valid digit nor the space mark.
    InvalidByte(u8),
}

impl fmt::Display for StreamFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamFault::NoSuchCodeword => f.write_str("digit leaves the code tree"),
            StreamFault::SpaceAtRoot => f.write_str("space at the start of a codeword"),
            StreamFault::SpaceNotAllowed => {
                f.write_str("space after a codeword prefix that takes none")
            }
            StreamFault::Truncated => f.write_str("stream ends inside a codeword"),
            StreamFault::InvalidByte(b) => write!(f, "unexpected byte 0x{b:02x}"),
        }
    }
}

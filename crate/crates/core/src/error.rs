use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet {{{p}, {q}}}: {reason}")]
    InvalidAlphabet { p: u32, q: u32, reason: &'static str },

    #[error("{value} is not a letter of the alphabet {{{p}, {q}}}")]
    NotALetter { value: u64, p: u32, q: u32 },

    #[error("`{0}` is not a number")]
    MalformedWord(String),

    #[error("run lengths must be positive (found 0 at position {index})")]
    ZeroRunLength { index: usize },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("input word is empty")]
    EmptyWord,

    #[error("state has {found} digits, expected {expected}")]
    StateLength { expected: usize, found: usize },

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("depth parameters differ: {left} vs {right}")]
    DepthMismatch { left: u32, right: u32 },

    #[error("leaf {leaf} is out of range for a tree with {leaves} leaves")]
    LeafOutOfRange { leaf: u64, leaves: u64 },

    #[error("node on path {path} swaps its subtrees; restriction is undefined")]
    SwappedPrefix { path: String },

    #[error("path of length {len} is too long for depth parameter {n}")]
    PathTooLong { len: usize, n: u32 },

    #[error("moduli differ: 2^{left} vs 2^{right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("not a member of J_{n}: {violation}")]
    NotAMember { n: u32, violation: crate::jn::Violation },

    #[error("permutation domains differ: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed portrait: {0}")]
    MalformedPortrait(String),

    #[error("the maximal-orbit criterion is only established for odd n (got n = {n})")]
    EvenN { n: u32 },

    #[error("n = {n} is below the minimum of {min} for this operation")]
    TooSmall { n: u32, min: u32 },

    #[error("work budget exhausted: needed {needed}, {remaining} remaining")]
    BudgetExceeded { needed: u64, remaining: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

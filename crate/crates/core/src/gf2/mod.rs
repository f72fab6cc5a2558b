//! Linear algebra over GF(2): words, codes, duals, cosets and weight enumerators.

mod code;
pub mod enumerate;
pub mod text;
mod word;

pub use code::LinearCode;
pub use enumerate::{
    coset_weight_enumerator, weight_enumerator, weight_enumerator_exhaustive, WeightEnumerator,
    ENUMERATION_LIMIT,
};
pub use word::{word_from_string, BinaryWord, MAX_LENGTH};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("empty word")]
    EmptyWord,
    #[error("unexpected character {found:?} at position {position}")]
    BadCharacter { position: usize, found: char },
    #[error("length {0} is outside the supported range 1..={MAX_LENGTH}")]
    UnsupportedLength(usize),
    #[error("bits set beyond length {length}")]
    BitsOutOfRange { length: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(
        "code of dimension {dimension} exceeds the enumeration limit of {ENUMERATION_LIMIT} \
         (dual dimension {dual_dimension})"
    )]
    Capacity {
        dimension: usize,
        dual_dimension: usize,
    },
}

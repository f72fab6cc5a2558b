use std::fmt;
use std::str::FromStr;

use super::Gf2Error;

/// Longest supported word. Two machine words of storage.
pub const MAX_LENGTH: usize = 128;

/// A fixed-length vector over GF(2).
///
/// Coordinate `i` is stored in bit `i` of a `u128`, so the textual form
/// `"1100"` has coordinates 0 and 1 set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    len: u8,
    bits: u128,
}

fn mask(len: usize) -> u128 {
    if len == MAX_LENGTH {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

fn check_length(len: usize) -> Result<(), Gf2Error> {
    if len == 0 || len > MAX_LENGTH {
        return Err(Gf2Error::UnsupportedLength(len));
    }
    Ok(())
}

impl BinaryWord {
    pub fn zero(len: usize) -> Result<Self, Gf2Error> {
        check_length(len)?;
        Ok(Self {
            len: (len - 1) as u8,
            bits: 0,
        })
    }

    pub fn all_ones(len: usize) -> Result<Self, Gf2Error> {
        check_length(len)?;
        Ok(Self {
            len: (len - 1) as u8,
            bits: mask(len),
        })
    }

    /// Builds a word from its packed representation; bits at or above `len`
    /// are rejected rather than masked.
    pub fn from_bits(len: usize, bits: u128) -> Result<Self, Gf2Error> {
        check_length(len)?;
        if bits & !mask(len) != 0 {
            return Err(Gf2Error::BitsOutOfRange { length: len });
        }
        Ok(Self {
            len: (len - 1) as u8,
            bits,
        })
    }

    /// The word with ones exactly at `positions`.
    pub fn from_support(len: usize, positions: &[usize]) -> Result<Self, Gf2Error> {
        check_length(len)?;
        let mut bits = 0u128;
        for &p in positions {
            if p >= len {
                return Err(Gf2Error::BitsOutOfRange { length: len });
            }
            bits |= 1u128 << p;
        }
        Ok(Self {
            len: (len - 1) as u8,
            bits,
        })
    }

    /// Parses a string of `'0'`/`'1'` characters; character `i` becomes coordinate `i`.
    pub fn parse(s: &str) -> Result<Self, Gf2Error> {
        if s.is_empty() {
            return Err(Gf2Error::EmptyWord);
        }
        let len = s.chars().count();
        check_length(len)?;
        let mut bits = 0u128;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1u128 << i,
                other => {
                    return Err(Gf2Error::BadCharacter {
                        position: i,
                        found: other,
                    })
                }
            }
        }
        Ok(Self {
            len: (len - 1) as u8,
            bits,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize + 1
    }

    /// Always false; words have length at least one.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len() && (self.bits >> i) & 1 == 1
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Lowest nonzero coordinate.
    pub fn leading_position(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    fn same_length(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// ⟨a, b⟩ = Σ aᵢbᵢ mod 2.
    pub fn inner_product(&self, other: &Self) -> Result<u8, Gf2Error> {
        self.same_length(other)?;
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.same_length(other)?;
        Ok(Self {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }
}

impl FromStr for BinaryWord {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

/// Convenience for callers that want word-from-string as a free function.
pub fn word_from_string(s: &str) -> Result<BinaryWord, Gf2Error> {
    BinaryWord::parse(s)
}

use std::fmt;

use super::enumerate::{self, ENUMERATION_LIMIT};
use super::{BinaryWord, Gf2Error};

/// A binary linear code held as a reduced row-echelon generator matrix.
///
/// Rows are sorted by strictly increasing pivot (the lowest set coordinate),
/// and each pivot column is zero in every other row. Two values compare equal
/// exactly when they span the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    length: usize,
    generators: Vec<BinaryWord>,
}

/// Reduces `rows` (already length-checked) to canonical RREF.
fn reduce(length: usize, rows: impl IntoIterator<Item = u128>) -> Vec<BinaryWord> {
    let mut basis: Vec<u128> = Vec::new();
    for mut row in rows {
        for &b in &basis {
            if row & (b & b.wrapping_neg()) != 0 {
                row ^= b;
            }
        }
        if row == 0 {
            continue;
        }
        let pivot = row & row.wrapping_neg();
        for b in basis.iter_mut() {
            if *b & pivot != 0 {
                *b ^= row;
            }
        }
        basis.push(row);
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
        .into_iter()
        .map(|bits| BinaryWord::from_bits(length, bits).expect("row stays within length"))
        .collect()
}

impl LinearCode {
    /// The zero code `{0}` of the given length.
    pub fn zero(length: usize) -> Result<Self, Gf2Error> {
        BinaryWord::zero(length)?;
        Ok(Self {
            length,
            generators: Vec::new(),
        })
    }

    /// All of GF(2)^n.
    pub fn full_space(length: usize) -> Result<Self, Gf2Error> {
        BinaryWord::zero(length)?;
        let generators = (0..length)
            .map(|i| BinaryWord::from_support(length, &[i]))
            .collect::<Result<_, _>>()?;
        Ok(Self { length, generators })
    }

    /// The `[n, n-1]` code of all even-weight words.
    pub fn even_weight(length: usize) -> Result<Self, Gf2Error> {
        Self::all_ones_repetition(length)?.dual()
    }

    /// `{0, 11…1}`.
    pub fn all_ones_repetition(length: usize) -> Result<Self, Gf2Error> {
        Self::from_generators(length, &[BinaryWord::all_ones(length)?])
    }

    /// Gaussian elimination over GF(2). Dependent and zero rows are dropped.
    /// An empty list gives the zero code.
    pub fn from_generators(length: usize, rows: &[BinaryWord]) -> Result<Self, Gf2Error> {
        BinaryWord::zero(length)?;
        for r in rows {
            if r.len() != length {
                return Err(Gf2Error::LengthMismatch {
                    expected: length,
                    found: r.len(),
                });
            }
        }
        Ok(Self {
            length,
            generators: reduce(length, rows.iter().map(|r| r.bits())),
        })
    }

    /// Like [`LinearCode::from_generators`] but takes the length from the first row.
    pub fn from_rows(rows: &[BinaryWord]) -> Result<Self, Gf2Error> {
        let first = rows.first().ok_or(Gf2Error::EmptyWord)?;
        Self::from_generators(first.len(), rows)
    }

    /// Reed–Muller code RM(r, m) of length 2^m: evaluations of all monomials
    /// of degree at most `r` in `m` variables, point `x` having variable `i`
    /// equal to bit `i` of `x`.
    pub fn reed_muller(r: usize, m: usize) -> Result<Self, Gf2Error> {
        let length = 1usize << m;
        BinaryWord::zero(length)?;
        let mut rows = Vec::new();
        for monomial in 0u32..(1u32 << m) {
            if monomial.count_ones() as usize > r {
                continue;
            }
            let mut bits = 0u128;
            for x in 0..length as u32 {
                if x & monomial == monomial {
                    bits |= 1u128 << x;
                }
            }
            rows.push(BinaryWord::from_bits(length, bits)?);
        }
        Self::from_generators(length, &rows)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[BinaryWord] {
        &self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators
            .iter()
            .map(|g| g.leading_position().expect("generators are nonzero"))
    }

    fn check_word(&self, w: &BinaryWord) -> Result<(), Gf2Error> {
        if w.len() != self.length {
            return Err(Gf2Error::LengthMismatch {
                expected: self.length,
                found: w.len(),
            });
        }
        Ok(())
    }

    /// The dual code `{w : ⟨w, g⟩ = 0 for every generator g}`.
    pub fn dual(&self) -> Result<Self, Gf2Error> {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut is_pivot = vec![false; self.length];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // For RREF [I | A] up to column order, the kernel is spanned by one
        // vector per free column f: 1 at f and A[r][f] at pivot p_r.
        let rows = (0..self.length).filter(|&f| !is_pivot[f]).map(|f| {
            let mut bits = 1u128 << f;
            for (g, &p) in self.generators.iter().zip(&pivots) {
                if g.get(f) {
                    bits |= 1u128 << p;
                }
            }
            bits
        });
        Ok(Self {
            length: self.length,
            generators: reduce(self.length, rows.collect::<Vec<_>>()),
        })
    }

    /// Residue of `w` after reducing against the generators.
    fn residue(&self, mut bits: u128) -> u128 {
        for g in &self.generators {
            let pivot = g.bits() & g.bits().wrapping_neg();
            if bits & pivot != 0 {
                bits ^= g.bits();
            }
        }
        bits
    }

    pub fn contains(&self, w: &BinaryWord) -> Result<bool, Gf2Error> {
        self.check_word(w)?;
        Ok(self.residue(w.bits()) == 0)
    }

    /// True iff `w` is orthogonal to every codeword, i.e. `w` lies in the dual.
    pub fn is_orthogonal_to(&self, w: &BinaryWord) -> Result<bool, Gf2Error> {
        self.check_word(w)?;
        Ok(self
            .generators
            .iter()
            .all(|g| (g.bits() & w.bits()).count_ones().is_multiple_of(2)))
    }

    /// Span of `self` and `delta`.
    pub fn extend(&self, delta: &BinaryWord) -> Result<Self, Gf2Error> {
        self.check_word(delta)?;
        let rows = self
            .generators
            .iter()
            .map(|g| g.bits())
            .chain(std::iter::once(delta.bits()));
        Ok(Self {
            length: self.length,
            generators: reduce(self.length, rows.collect::<Vec<_>>()),
        })
    }

    /// Every generator has even weight; since the even-weight words form a
    /// subspace this is the same as every codeword being even.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| g.weight() % 2 == 0)
    }

    /// True iff `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &Self) -> Result<bool, Gf2Error> {
        if self.length != other.length {
            return Err(Gf2Error::LengthMismatch {
                expected: other.length,
                found: self.length,
            });
        }
        Ok(self.generators.iter().all(|g| other.residue(g.bits()) == 0))
    }

    /// Kernel of `w ↦ ⟨w, delta⟩` restricted to this code.
    pub fn orthogonal_subcode(&self, delta: &BinaryWord) -> Result<Self, Gf2Error> {
        self.check_word(delta)?;
        let odd = |g: &BinaryWord| (g.bits() & delta.bits()).count_ones() % 2 == 1;
        let Some(anchor) = self.generators.iter().find(|g| odd(g)).copied() else {
            return Ok(self.clone());
        };
        let rows: Vec<u128> = self
            .generators
            .iter()
            .filter(|g| **g != anchor)
            .map(|g| {
                if odd(g) {
                    g.bits() ^ anchor.bits()
                } else {
                    g.bits()
                }
            })
            .collect();
        Ok(Self {
            length: self.length,
            generators: reduce(self.length, rows),
        })
    }

    /// Words of weight two in the code, found by scanning coordinate pairs.
    /// Does not enumerate the code, so it works at any dimension.
    pub fn weight_two_words(&self) -> Vec<BinaryWord> {
        self.weight_two_in_coset(0)
    }

    /// Weight-two words of the coset `delta + self`.
    pub fn coset_weight_two_words(&self, delta: &BinaryWord) -> Result<Vec<BinaryWord>, Gf2Error> {
        self.check_word(delta)?;
        Ok(self.weight_two_in_coset(self.residue(delta.bits())))
    }

    fn weight_two_in_coset(&self, target_residue: u128) -> Vec<BinaryWord> {
        // Residues are linear, so e_i + e_j lies in the coset iff
        // residue(e_i) ^ residue(e_j) == residue(delta).
        let residues: Vec<u128> = (0..self.length).map(|i| self.residue(1u128 << i)).collect();
        let mut found = Vec::new();
        for i in 0..self.length {
            for j in i + 1..self.length {
                if residues[i] ^ residues[j] == target_residue {
                    let bits = (1u128 << i) | (1u128 << j);
                    found.push(BinaryWord::from_bits(self.length, bits).expect("in range"));
                }
            }
        }
        found
    }

    /// Iterates all 2^k codewords in Gray-code order.
    pub fn codewords(&self) -> Result<impl Iterator<Item = BinaryWord> + '_, Gf2Error> {
        self.coset_iter(&BinaryWord::zero(self.length)?)
    }

    /// Lazily yields `delta + w` for every codeword `w`.
    pub fn coset_iter(
        &self,
        delta: &BinaryWord,
    ) -> Result<impl Iterator<Item = BinaryWord> + '_, Gf2Error> {
        self.check_word(delta)?;
        self.check_capacity()?;
        let length = self.length;
        let gens: Vec<u128> = self.generators.iter().map(|g| g.bits()).collect();
        let total = 1u64 << gens.len();
        let mut current = delta.bits();
        Ok((0..total).map(move |i| {
            if i > 0 {
                current ^= gens[i.trailing_zeros() as usize];
            }
            BinaryWord::from_bits(length, current).expect("in range")
        }))
    }

    /// Materializes the coset `delta + C`.
    pub fn coset(&self, delta: &BinaryWord) -> Result<Vec<BinaryWord>, Gf2Error> {
        Ok(self.coset_iter(delta)?.collect())
    }

    pub(crate) fn check_capacity(&self) -> Result<(), Gf2Error> {
        if self.dimension() > ENUMERATION_LIMIT {
            return Err(Gf2Error::Capacity {
                dimension: self.dimension(),
                dual_dimension: self.length - self.dimension(),
            });
        }
        Ok(())
    }

    /// Smallest nonzero weight, or `None` for the zero code.
    pub fn minimum_distance(&self) -> Result<Option<usize>, Gf2Error> {
        let we = self.weight_enumerator()?;
        Ok(we
            .counts()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| **c > 0u32.into())
            .map(|(w, _)| w))
    }

    pub(crate) fn generator_bits(&self) -> Vec<u128> {
        self.generators.iter().map(|g| g.bits()).collect()
    }

    pub fn weight_enumerator(&self) -> Result<super::WeightEnumerator, Gf2Error> {
        enumerate::weight_enumerator(self)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]{{", self.length, self.dimension())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

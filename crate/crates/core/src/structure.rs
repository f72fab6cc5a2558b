//! Structure codes `(C, D)` of a framed VOA, their validity checks, τ-words
//! and the weight-one obstruction read off from `C`.
//!
//! `D` collects the 1/16-words that occur in `V`, and `C` is the code of the
//! τ-word-zero part `V⁰ = M_C`. A valid pair has both codes even and
//! `C ⊆ D⊥`; it is holomorphic exactly when `C = D⊥`.

use std::collections::HashSet;
use std::fmt;

use crate::characters::{CharacterError, FrameModuleLabel, IsingLabel};
use crate::gf2::{BinaryWord, Gf2Error, LinearCode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("C has length {c} but D has length {d}")]
    LengthMismatch { c: usize, d: usize },
    #[error("structure codes fail validation: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("label {label} has length {found}, expected {expected}")]
    LabelLength {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("label {0} appears more than once")]
    DuplicateLabel(String),
    #[error("label {0} has multiplicity 0")]
    ZeroMultiplicity(String),
    #[error("label {label} has zero 1/16-word so its multiplicity must be 1, got {multiplicity}")]
    CodeMultiplicity { label: String, multiplicity: u64 },
    #[error("label {label}: 1/16-word {word} is not in D")]
    TauWordNotInD { label: String, word: BinaryWord },
    #[error("label {label}: doubled label {word} is not in C")]
    DoubledLabelNotInC { label: String, word: BinaryWord },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// The central charge `n/2` kept as a count of halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rank {
    halves: usize,
}

impl Rank {
    pub fn from_frame_length(n: usize) -> Self {
        Self { halves: n }
    }

    /// `Some(n/2)` when integral.
    pub fn as_integer(&self) -> Option<usize> {
        self.halves.is_multiple_of(2).then_some(self.halves / 2)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}/2", self.halves),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Also require every word of `D` to have weight divisible by 8.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub length: usize,
    pub rank: Rank,
    pub dim_c: usize,
    pub dim_d: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

/// A candidate pair `(C, D)` of equal length. Validity is reported by
/// [`StructureCodes::validate`] rather than enforced on construction so that
/// failing inputs can still be inspected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureCodes {
    c: LinearCode,
    d: LinearCode,
}

fn first_odd_generator(code: &LinearCode) -> Option<BinaryWord> {
    code.generators()
        .iter()
        .find(|g| g.weight() % 2 == 1)
        .copied()
}

impl StructureCodes {
    pub fn new(c: LinearCode, d: LinearCode) -> Result<Self, StructureError> {
        if c.length() != d.length() {
            return Err(StructureError::LengthMismatch {
                c: c.length(),
                d: d.length(),
            });
        }
        Ok(Self { c, d })
    }

    /// Builds the pair and rejects it unless it validates.
    pub fn validated(c: LinearCode, d: LinearCode) -> Result<Self, StructureError> {
        let s = Self::new(c, d)?;
        s.ensure_valid()?;
        Ok(s)
    }

    /// The holomorphic pair `(D⊥, D)`.
    pub fn holomorphic_from_d(d: LinearCode) -> Result<Self, StructureError> {
        Self::new(d.dual()?, d)
    }

    pub fn length(&self) -> usize {
        self.c.length()
    }

    pub fn c(&self) -> &LinearCode {
        &self.c
    }

    pub fn d(&self) -> &LinearCode {
        &self.d
    }

    pub fn rank(&self) -> Rank {
        Rank::from_frame_length(self.length())
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(ValidationOptions::default())
    }

    pub fn validate_with(&self, options: ValidationOptions) -> ValidationReport {
        let mut checks = Vec::new();
        for (name, code) in [("C even", &self.c), ("D even", &self.d)] {
            let odd = first_odd_generator(code);
            checks.push(Check {
                name,
                passed: odd.is_none(),
                detail: match odd {
                    None => "all generators have even weight".into(),
                    Some(g) => format!("generator {g} has odd weight {}", g.weight()),
                },
            });
        }

        let mut clash = None;
        'outer: for a in self.c.generators() {
            for b in self.d.generators() {
                if a.inner_product(b).expect("equal lengths") == 1 {
                    clash = Some((*a, *b));
                    break 'outer;
                }
            }
        }
        checks.push(Check {
            name: "C in D-perp",
            passed: clash.is_none(),
            detail: match clash {
                None => "every generator of C is orthogonal to every generator of D".into(),
                Some((a, b)) => format!("<{a}, {b}> = 1"),
            },
        });

        let n = self.length();
        checks.push(Check {
            name: "n even",
            passed: n.is_multiple_of(2),
            detail: format!("n = {n}"),
        });

        if options.strict {
            checks.push(self.divisible_by_eight_check());
        }

        ValidationReport {
            checks,
            length: n,
            rank: self.rank(),
            dim_c: self.c.dimension(),
            dim_d: self.d.dimension(),
        }
    }

    fn divisible_by_eight_check(&self) -> Check {
        let name = "D weights divisible by 8";
        match self.d.weight_enumerator() {
            Ok(we) => {
                let bad: Vec<usize> = we
                    .counts()
                    .iter()
                    .enumerate()
                    .filter(|(w, c)| w % 8 != 0 && **c != 0u32.into())
                    .map(|(w, _)| w)
                    .collect();
                Check {
                    name,
                    passed: bad.is_empty(),
                    detail: if bad.is_empty() {
                        "all codeword weights are multiples of 8".into()
                    } else {
                        format!("D has codewords of weight {bad:?}")
                    },
                }
            }
            Err(e) => Check {
                name,
                passed: false,
                detail: format!("undecided: {e}"),
            },
        }
    }

    pub fn ensure_valid(&self) -> Result<(), StructureError> {
        let report = self.validate();
        if report.passed() {
            Ok(())
        } else {
            Err(StructureError::Invalid(report.failures()))
        }
    }

    /// `C = D⊥`, compared in canonical form. Requires a valid pair.
    pub fn is_holomorphic(&self) -> Result<bool, StructureError> {
        self.ensure_valid()?;
        Ok(self.c == self.d.dual()?)
    }

    /// Weight-two words of `C` and low-weight τ-words of `D`.
    pub fn v1_code_obstruction(&self) -> Result<V1Obstruction, StructureError> {
        self.ensure_valid()?;
        let weight_two = self.c.weight_two_words();
        let mut suspicious: Vec<BinaryWord> = self
            .d
            .codewords()?
            .filter(|a| !a.is_zero() && a.weight() <= 16)
            .collect();
        suspicious.sort_by_key(|a| (a.weight(), *a));
        Ok(V1Obstruction {
            a2: weight_two.len(),
            weight_two_words: weight_two,
            suspicious_tau_words: suspicious,
        })
    }

    /// Checks a frame decomposition against the codes and pairs them up.
    pub fn attach_decomposition(
        &self,
        decomposition: FrameDecomposition,
    ) -> Result<FramedStructure, StructureError> {
        let n = self.length();
        if decomposition.length() != n {
            return Err(StructureError::LengthMismatch {
                c: n,
                d: decomposition.length(),
            });
        }
        for (label, _) in decomposition.entries() {
            let word = tau_word(label);
            if !self.d.contains(&word)? {
                return Err(StructureError::TauWordNotInD {
                    label: label.to_string(),
                    word,
                });
            }
            if let Some(doubled) = doubled_word(label) {
                if !self.c.contains(&doubled)? {
                    return Err(StructureError::DoubledLabelNotInC {
                        label: label.to_string(),
                        word: doubled,
                    });
                }
            }
        }
        Ok(FramedStructure {
            codes: self.clone(),
            decomposition,
        })
    }
}

/// Report of [`StructureCodes::v1_code_obstruction`].
///
/// `a2 > 0` forces `V₁ ≠ 0`, since each weight-two codeword of `C` gives one
/// weight-one state of `M_C`. `a2 = 0` is necessary for `V₁ = 0` but not
/// sufficient: the nonzero τ-words listed in `suspicious_tau_words` have
/// lowest conceivable weight `wt(α)/16 ≤ 1` and would need multiplicity data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V1Obstruction {
    pub a2: usize,
    pub weight_two_words: Vec<BinaryWord>,
    pub suspicious_tau_words: Vec<BinaryWord>,
}

impl V1Obstruction {
    pub fn forces_nonzero_v1(&self) -> bool {
        self.a2 > 0
    }
}

/// 1 exactly at the coordinates labelled 1/16.
pub fn tau_word(label: &FrameModuleLabel) -> BinaryWord {
    let support: Vec<usize> = label
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, h)| **h == IsingLabel::Sixteenth)
        .map(|(i, _)| i)
        .collect();
    BinaryWord::from_support(label.len(), &support).expect("label length is in range")
}

/// `(2h_1, …, 2h_n)` for a label with no 1/16 entries.
pub fn doubled_word(label: &FrameModuleLabel) -> Option<BinaryWord> {
    let mut support = Vec::new();
    for (i, h) in label.labels().iter().enumerate() {
        if h.doubled()? {
            support.push(i);
        }
    }
    Some(BinaryWord::from_support(label.len(), &support).expect("label length is in range"))
}

/// Explicit multiset `V = ⊕ m · L(1/2,h_1) ⊗ ⋯ ⊗ L(1/2,h_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameDecomposition {
    length: usize,
    entries: Vec<(FrameModuleLabel, u64)>,
}

impl FrameDecomposition {
    pub fn new(
        length: usize,
        entries: Vec<(FrameModuleLabel, u64)>,
    ) -> Result<Self, StructureError> {
        let mut seen = HashSet::new();
        for (label, multiplicity) in &entries {
            if label.len() != length {
                return Err(StructureError::LabelLength {
                    label: label.to_string(),
                    expected: length,
                    found: label.len(),
                });
            }
            if !seen.insert(label.clone()) {
                return Err(StructureError::DuplicateLabel(label.to_string()));
            }
            if *multiplicity == 0 {
                return Err(StructureError::ZeroMultiplicity(label.to_string()));
            }
            if tau_word(label).is_zero() && *multiplicity != 1 {
                return Err(StructureError::CodeMultiplicity {
                    label: label.to_string(),
                    multiplicity: *multiplicity,
                });
            }
        }
        Ok(Self { length, entries })
    }

    /// One entry per codeword of `C`: the decomposition of `M_C`.
    pub fn of_code_voa(code: &LinearCode) -> Result<Self, StructureError> {
        let entries = code
            .codewords()?
            .map(|w| (FrameModuleLabel::from_codeword(&w), 1))
            .collect();
        Self::new(code.length(), entries)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn entries(&self) -> &[(FrameModuleLabel, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Structure codes together with a decomposition checked against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedStructure {
    codes: StructureCodes,
    decomposition: FrameDecomposition,
}

impl FramedStructure {
    pub fn codes(&self) -> &StructureCodes {
        &self.codes
    }

    pub fn decomposition(&self) -> &FrameDecomposition {
        &self.decomposition
    }
}

//! Miyamoto involutions, the Z₂-orbifold transform on structure codes, the
//! `g`-involution split of the result, and the uniqueness pipeline that
//! strings them together.
//!
//! Everything here is symbolic: components `V^α` are named by their τ-words
//! and only code-level data and graded counts are computed.

use std::fmt;
use std::ops::Mul;

use crate::gf2::{coset_weight_enumerator, BinaryWord, Gf2Error, LinearCode};
use crate::structure::{StructureCodes, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("τ-word {0} is not in D, so V^α = 0")]
    NotInD(BinaryWord),
    #[error("involutions act on different structure codes")]
    DifferentStructures,
    #[error("hypothesis failed: input structure codes are not holomorphic (C != D-perp)")]
    NotHolomorphic,
    #[error("δ = {0} lies in C, so τ_δ is the identity and the orbifold is trivial")]
    TrivialDelta(BinaryWord),
    #[error("the g-involution split needs an even-weight δ")]
    OddParity,
    #[error("hypothesis failed: C contains the weight-2 word {0}, so V_1 != 0")]
    WeightTwoInC(BinaryWord),
    #[error("frame length {0} is too short for δ = 110…0")]
    FrameTooShort(usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(bit: u8) -> Self {
        if bit & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// `τ_β`, acting on `V^α` by `(-1)^⟨α,β⟩`.
#[derive(Debug, Clone, Copy)]
pub struct TauInvolution<'a> {
    codes: &'a StructureCodes,
    beta: BinaryWord,
}

impl<'a> TauInvolution<'a> {
    pub fn new(codes: &'a StructureCodes, beta: BinaryWord) -> Result<Self, OrbifoldError> {
        if beta.len() != codes.length() {
            return Err(Gf2Error::LengthMismatch {
                expected: codes.length(),
                found: beta.len(),
            }
            .into());
        }
        Ok(Self { codes, beta })
    }

    pub fn beta(&self) -> &BinaryWord {
        &self.beta
    }

    pub fn sign(&self, alpha: &BinaryWord) -> Result<Sign, OrbifoldError> {
        if !self.codes.d().contains(alpha)? {
            return Err(OrbifoldError::NotInD(*alpha));
        }
        Ok(Sign::from_parity(alpha.inner_product(&self.beta)?))
    }

    /// Trivial on every `V^α` iff `β ∈ D⊥`.
    pub fn is_identity(&self) -> bool {
        self.codes
            .d()
            .is_orthogonal_to(&self.beta)
            .expect("length checked on construction")
    }

    /// Same automorphism iff `β₁ + β₂ ∈ D⊥`, reflecting `P ≅ Z₂ⁿ/D⊥`.
    pub fn equivalent(&self, other: &TauInvolution<'_>) -> Result<bool, OrbifoldError> {
        if !std::ptr::eq(self.codes, other.codes) && self.codes != other.codes {
            return Err(OrbifoldError::DifferentStructures);
        }
        let sum = self.beta.add(&other.beta)?;
        Ok(self.codes.d().is_orthogonal_to(&sum)?)
    }
}

/// `tau_sign` as a free function.
pub fn tau_sign(t: &TauInvolution<'_>, alpha: &BinaryWord) -> Result<Sign, OrbifoldError> {
    t.sign(alpha)
}

pub fn tau_equivalent(a: &TauInvolution<'_>, b: &TauInvolution<'_>) -> Result<bool, OrbifoldError> {
    a.equivalent(b)
}

/// `D⁰ = {α ∈ D : ⟨α, δ⟩ = 0}`.
pub fn fixed_subcode(s: &StructureCodes, delta: &BinaryWord) -> Result<LinearCode, OrbifoldError> {
    Ok(s.d().orthogonal_subcode(delta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldCertificates {
    pub output_holomorphic: bool,
    pub output_a2: usize,
    pub delta_in_output_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldResult {
    pub input: StructureCodes,
    pub delta: BinaryWord,
    pub output: StructureCodes,
    pub d0: LinearCode,
    pub parity: Parity,
    pub certificates: OrbifoldCertificates,
}

/// Structure codes of `V(τ_δ)`: `(C + ⟨δ⟩, D⁰)` for even `wt δ` and `(C, D)`
/// for odd `wt δ`. The input must be holomorphic and `δ ∉ C`.
pub fn orbifold_transform(
    s: &StructureCodes,
    delta: &BinaryWord,
) -> Result<OrbifoldResult, OrbifoldError> {
    if delta.len() != s.length() {
        return Err(Gf2Error::LengthMismatch {
            expected: s.length(),
            found: delta.len(),
        }
        .into());
    }
    if !s.is_holomorphic()? {
        return Err(OrbifoldError::NotHolomorphic);
    }
    if s.c().contains(delta)? {
        return Err(OrbifoldError::TrivialDelta(*delta));
    }
    let d0 = fixed_subcode(s, delta)?;
    let (parity, output) = if delta.weight().is_multiple_of(2) {
        (
            Parity::Even,
            StructureCodes::new(s.c().extend(delta)?, d0.clone())?,
        )
    } else {
        (Parity::Odd, s.clone())
    };
    let certificates = OrbifoldCertificates {
        output_holomorphic: output.is_holomorphic()?,
        output_a2: output.c().weight_two_words().len(),
        delta_in_output_c: output.c().contains(delta)?,
    };
    Ok(OrbifoldResult {
        input: s.clone(),
        delta: *delta,
        output,
        d0,
        parity,
        certificates,
    })
}

/// The `+1` eigenspace of `g`: `⊕_{β∈D⁰} V^β`, i.e. the τ_δ-fixed part of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusPart {
    pub codes: StructureCodes,
    /// Weight-one states of its code VOA `M_C`, i.e. `A₂(C)`. The other
    /// components `V^β`, `β ≠ 0`, sit inside `V` and are assumed to carry no
    /// weight-one states.
    pub weight_one_dim: usize,
}

/// The `-1` eigenspace of `g`: `⊕_{β∈D⁰} M_{δ+C} ⊠ V^β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinusPart {
    pub delta: BinaryWord,
    pub c: LinearCode,
    pub d0: LinearCode,
    /// Weight-two words of `δ + C`, each one weight-one state of `M_{δ+C}`.
    pub weight_one_count: usize,
    /// Minimum weight of `δ + C`; the top weight of `M_{δ+C}` is half of it.
    pub min_coset_weight: usize,
}

impl MinusPart {
    /// Top weight of `M_{δ+C}` in halves.
    pub fn top_weight_halves(&self) -> usize {
        self.min_coset_weight
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSplit {
    pub plus: PlusPart,
    pub minus: MinusPart,
}

impl GSplit {
    /// Every code-level grade-1 state is in the minus part and the plus part
    /// has none, so `[V₁, V₁] ⊆ V⁺₁ = 0`.
    pub fn abelian_certificate(&self) -> bool {
        self.plus.weight_one_dim == 0 && self.minus.weight_one_count >= 1
    }
}

/// Splits `V(τ_δ)` by the involution `g` that is `+1` on `V^{⟨τ_δ⟩}` and `-1`
/// on the coset part.
pub fn g_split(r: &OrbifoldResult) -> Result<GSplit, OrbifoldError> {
    if r.parity != Parity::Even {
        return Err(OrbifoldError::OddParity);
    }
    let c = r.input.c();
    let plus = PlusPart {
        codes: StructureCodes::new(c.clone(), r.d0.clone())?,
        weight_one_dim: c.weight_two_words().len(),
    };
    let coset = coset_weight_enumerator(c, &r.delta)?;
    let min_coset_weight = coset
        .counts()
        .iter()
        .position(|n| *n != 0u32.into())
        .expect("a coset is nonempty");
    let minus = MinusPart {
        delta: r.delta,
        c: c.clone(),
        d0: r.d0.clone(),
        weight_one_count: c.coset_weight_two_words(&r.delta)?.len(),
        min_coset_weight,
    };
    Ok(GSplit { plus, minus })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub delta: BinaryWord,
    pub orbifold: OrbifoldResult,
    pub split: GSplit,
    pub certificates: Vec<Certificate>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }
}

/// `δ = (1,1,0,…,0)`.
pub fn pipeline_delta(n: usize) -> Result<BinaryWord, OrbifoldError> {
    if n < 2 {
        return Err(OrbifoldError::FrameTooShort(n));
    }
    Ok(BinaryWord::from_support(n, &[0, 1])?)
}

/// Runs the code-level steps of the uniqueness argument on holomorphic
/// structure codes whose `C` has no weight-two words.
///
/// Fixes `δ = 110…0`, orbifolds by `τ_δ`, splits by `g`, and certifies:
/// (i) the output is holomorphic, (ii) `δ ∈ C̃` so `A₂(C̃) ≥ 1` and
/// `V(τ_δ)₁ ≠ 0`, (iii) all grade-1 states are `g`-odd, (iv) `D⁰` has index 2.
pub fn moonshine_pipeline(s: &StructureCodes) -> Result<PipelineReport, OrbifoldError> {
    if !s.is_holomorphic()? {
        return Err(OrbifoldError::NotHolomorphic);
    }
    if let Some(w) = s.c().weight_two_words().first() {
        return Err(OrbifoldError::WeightTwoInC(*w));
    }
    let delta = pipeline_delta(s.length())?;
    // δ has weight 2 and C has none, so δ ∉ C.
    debug_assert!(!s.c().contains(&delta)?);
    let orbifold = orbifold_transform(s, &delta)?;
    let split = g_split(&orbifold)?;

    let out = &orbifold.output;
    let certs = &orbifold.certificates;
    let dim_d = s.d().dimension();
    let dim_d0 = orbifold.d0.dimension();
    let certificates = vec![
        Certificate {
            name: "output holomorphic",
            passed: certs.output_holomorphic,
            detail: format!(
                "dim C~ = {}, dim D0 = {}, C~ == (D0)-perp: {}",
                out.c().dimension(),
                out.d().dimension(),
                certs.output_holomorphic
            ),
        },
        Certificate {
            name: "V(tau)_1 nonzero",
            passed: certs.delta_in_output_c && certs.output_a2 >= 1,
            detail: format!(
                "delta in C~: {}, A2(C~) = {}",
                certs.delta_in_output_c, certs.output_a2
            ),
        },
        Certificate {
            name: "abelian weight-one space",
            passed: split.abelian_certificate(),
            detail: format!(
                "plus-part weight-1 dim = {}, minus-part weight-1 count = {}",
                split.plus.weight_one_dim, split.minus.weight_one_count
            ),
        },
        Certificate {
            name: "D0 has index 2",
            passed: dim_d0 + 1 == dim_d,
            detail: format!("dim D = {dim_d}, dim D0 = {dim_d0}"),
        },
    ];
    Ok(PipelineReport {
        delta,
        orbifold,
        split,
        certificates,
    })
}

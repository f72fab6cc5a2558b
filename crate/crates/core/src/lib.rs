//! Structure codes of framed vertex operator algebras.
//!
//! A framed VOA of central charge `n/2` is described at the code level by a
//! pair of even binary codes `(C, D)` of length `n`. This crate provides exact
//! GF(2) linear algebra for such pairs, q-series characters of the Ising
//! modules and code VOAs, Miyamoto involutions, the Z₂-orbifold transform on
//! structure codes, and a pipeline that checks the code-level steps of the
//! characterization of the moonshine module among holomorphic framed VOAs
//! with `V₁ = 0`.
//!
//! The `parallel` feature (on by default) runs the codeword enumeration
//! kernels and batch loops on rayon.

pub mod characters;
pub mod cli;
pub mod gf2;
pub mod orbifold;
mod par;
pub mod qseries;
pub mod structure;

pub use characters::{
    code_voa_character, frame_decomposition_character, frame_module_character, ising_character,
    FrameModuleLabel, IsingLabel,
};
pub use gf2::{BinaryWord, LinearCode, WeightEnumerator};
pub use orbifold::{
    fixed_subcode, g_split, moonshine_pipeline, orbifold_transform, OrbifoldResult, TauInvolution,
};
pub use qseries::QSeries;
pub use structure::{FrameDecomposition, StructureCodes};

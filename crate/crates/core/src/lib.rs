//! Permutation modules over prime fields and the Artin-motive calculus built on them.
//!
//! The crate is layered bottom-up:
//!
//! * [`ffarith`] exact linear algebra and polynomials over `F_p`;
//! * [`groups`] permutation groups, coset spaces and other finite Γ-sets;
//! * [`modrep`] `F_p[Γ]`-modules, homomorphism spaces and Krull-Schmidt decomposition;
//! * [`artin`] Artin motives as summands of permutation modules inside a finite Galois context;
//! * [`titsdex`] Dynkin diagrams with ∗-action and Tits p-index comparison;
//! * [`motexpr`] formal motives made of shifted A-upper motives and their Artin-Tate traces.
//!
//! [`json`] holds the on-disk formats shared with the command-line tool.

pub mod artin;
pub mod error;
pub mod ffarith;
pub mod groups;
pub mod json;
pub mod modrep;
pub mod motexpr;
pub mod titsdex;

pub use error::{Error, Result};
pub use ffarith::{FMatrix, FPoly, PrimeField};
pub use groups::{FiniteGroup, GSet, Perm, Subgroup};
pub use modrep::{Decomposition, GModule};
pub use artin::{ArtinMotive, EtaleAlgebra, GaloisContext};
pub use motexpr::{AUpperLabel, FormalMotive, TraceVerdict, VarietyCatalog};
pub use titsdex::{DiagramIso, DynkinDiagram, StarAction, TitsGroupDatum, Verdict};

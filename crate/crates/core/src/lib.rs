//! Exact computation of minimal presentations of the loop homology algebra
//! `H_*(ΩZ_K)` of a moment-angle complex over a flag simplicial complex `K`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactlin`] – Smith normal form, homology of two-term complexes and the
//!   `gen`/`rel` invariants of finitely generated modules over `ℤ`, `ℚ`, `𝔽_p`.
//! * [`simplicial`] – simplicial complexes on `[m]`, full subcomplexes,
//!   reduced homology with cycle representatives, f/h-vectors.
//! * [`freealg`] – the free graded algebra on abstract generator symbols,
//!   graded commutators and nested commutator identities.
//! * [`pcalg`] – the partially commutative algebra `k[K]^!` with a canonical
//!   normal form; every output of the engine is checked against it.
//! * [`torbar`] – the Koszul-type complex computing `Tor`, and explicit cycles
//!   in the bar construction.
//! * [`presentation`] – GPTW generators, the rewriting process, relation
//!   synthesis and verification.
//! * [`homotopy`] – sphere multiplicities of `ΩZ_K` and homotopy ranks.

pub mod error;
pub mod exactlin;
pub mod freealg;
pub mod homotopy;
pub mod pcalg;
pub mod presentation;
pub mod simplicial;
pub mod torbar;

pub use error::{Error, Result};
pub use exactlin::{CoefficientRing, ExactMatrix, ModuleInvariants};
pub use freealg::{FreePolynomial, GeneratorSymbol};
pub use pcalg::{PcAlgebra, PcElement};
pub use presentation::{Grading, Presentation};
pub use simplicial::{SimplicialComplex, SimplicialCycle, VertexSet};

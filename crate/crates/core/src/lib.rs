//! Spectral extremal quantities of small graphs.
//!
//! The crate computes the Nordhaus-Gaddum sum `λ₁(G) + λ₁(Ḡ)` and the signless
//! Laplacian spread `q₁(G) − qₙ(G)`, verifies the conjectured extremal graphs of
//! both quantities by exhaustive enumeration, runs eigenvector-guided edge-toggle
//! hill climbing, and models graph limits with step graphons.
//!
//! Modules, bottom-up:
//!
//! - [`graph`]: bit-row simple graphs, constructors, graph6/JSON, canonical forms.
//! - [`eigen`]: cyclic Jacobi eigensolver for dense symmetric matrices.
//! - [`spectral`]: objective functions, closed forms and diagnostics.
//! - [`search`]: exhaustive verification and local search.
//! - [`graphon`]: step graphons, operator spectra and the cut norm.

pub mod eigen;
pub mod error;
pub mod graph;
pub mod graphon;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, Family, Graph};

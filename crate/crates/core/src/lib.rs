//! Numerical workbench for biorthogonal systems on finite-dimensional normed spaces.
//!
//! The crate measures how large the norm products `‖x_i‖ · ‖F_i‖` of a
//! biorthogonal system `{(x_i, F_i)}` must be, and audits several ways of
//! manufacturing the functionals `F_i`:
//!
//! * [`norms`] — norm specifications (`ℓ_p`, weighted `ℓ_p`, polyhedral),
//!   dual norms with maximizer certificates, and duality mappings.
//! * [`hilbert`] — an inner product `(u, v) = Σ tₙ uₙ*(u) uₙ*(v)` induced by a
//!   weighted family of norming functionals, realized as a Gram matrix.
//! * [`biortho`] — systems of vectors, biorthogonality/defect audits, the
//!   two-dimensional worked example, and Gram-based functional constructions.
//! * [`extension`] — minimal dual-norm extension of partially specified
//!   functionals (Hahn–Banach as an optimization problem) and an Auerbach
//!   basis search driving all products to 1.
//! * [`cli`] — deterministic scenario runner behind the `mbasis` binary.
//!
//! Everything is plain dense linear algebra over `f64`; determinism is part of
//! the contract (seeded RNG, stable output formatting).

pub mod biortho;
pub mod cli;
pub mod extension;
pub mod hilbert;
mod lp;
pub mod norms;
pub mod oracle;
pub mod report;

pub use norms::{DualNorm, Exponent, Functional, NormError, NormKind, NormSpec};

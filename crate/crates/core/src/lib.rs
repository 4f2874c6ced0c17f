//! Finite models of quantale-valued orders, cotopologies and sobriety.
//!
//! Everything here is exhaustively checkable: quantales are finite tables
//! validated against the complete-lattice and monoid laws, fuzzy sets are
//! vectors over a named point set, and the topological notions (closure,
//! specialization, irreducible closed sets, sobrification) are computed by
//! direct enumeration with explicit caps on anything exponential.
//!
//! Module map:
//!
//! * [`quantale`] — the value algebra `(Q, &, →)` and the standard chains;
//! * [`fuzzy`] — fuzzy sets `X → Q`, the inclusion degree `sub`, images
//!   and preimages along point maps;
//! * [`qorder`] — Q-valued orders, lower sets and the Alexandroff space;
//! * [`cotopology`] — closed-set families, generation from a subbasis,
//!   closure, specialization, products and the Hausdorff property;
//! * [`sobriety`] — irreducible closed sets, the sobrification and its
//!   universal property, directed completeness;
//! * [`duality`] — crisp spaces, the scale functor `ω_Q`, negation
//!   duality and frame-map points;
//! * [`formats`] — the JSON documents the command-line front end reads.

pub mod cotopology;
pub mod duality;
pub mod error;
pub mod formats;
pub mod fuzzy;
pub mod qorder;
pub mod quantale;
pub mod sobriety;

pub use error::{Error, Result};
pub use quantale::{El, Quantale, StandardKind};

//! Exact combinatorial invariants of loopless matroids.
//!
//! The crate computes characteristic and Kazhdan–Lusztig polynomials, local
//! Euler obstructions, the constants `c_M`, microlocal multiplicities `m_M` and
//! Chern–Mather coefficients, each through more than one independent route so
//! the routes can be checked against each other. All arithmetic is exact.
//!
//! ```
//! use matroid_cc::{uniform, Engine};
//!
//! let engine = Engine::new();
//! let m = uniform(3, 4).unwrap();
//! assert_eq!(engine.m_closed(&m).unwrap(), 2.into());
//! assert_eq!(engine.kl_poly(&m).unwrap().to_string(), "2t + 1");
//! ```

pub mod cache;
pub mod catalog;
pub mod error;
pub mod input;
pub mod kl;
pub mod lattice;
pub mod matroid;
pub mod memo;
pub mod microlocal;
pub mod poly;
pub mod record;
pub mod sweep;
pub mod verify;

pub use catalog::{builtin, enumerate_matroids, parse_revlex, CatalogEntry, EnumerateOptions, Tag};
pub use error::{Error, Result};
pub use kl::{kl_at_one, kl_poly};
pub use lattice::{
    beta, build_lattice, char_poly, descending_flags, reduced_char_poly, FlagOfFlats, FlatLattice,
};
pub use matroid::{
    canonical_key, canonical_labeling, matroid_from_graph, matroid_from_matrix, uniform,
    CanonicalKey, Matroid, Subset,
};
pub use memo::Engine;
pub use microlocal::{
    c_closed, c_flag_sum, check_identity_a, check_identity_b, chern_mather_coeffs, csm_weights,
    eu_closed, eu_everywhere_positive, eu_function, FlatFunction,
};
pub use poly::IntPoly;

//! Exact computations with alternating forms on `(Z/r)^2g`: the Weil pairing,
//! forms killed by isotropic pairs, and Bogomolov-style intersections of
//! restriction kernels over bicyclic subgroups.
//!
//! The layers, bottom up:
//!
//! * [`zmodlinalg`]: Smith normal form over `Z` and Howell normal form over
//!   `Z/n`, with linear solving for arbitrary (composite) moduli.
//! * [`finab`]: finite abelian groups, elements and canonical subgroups.
//! * [`sympl`]: the symplectic group `Γ = (Z/r)^2g`, its Weil pairing and the
//!   module of alternating bi-additive forms standing in for `H²(Γ, C*)`.
//! * [`brauer`]: the isotropic-pair subgroup `G`, bicyclic families,
//!   restriction kernels and their intersection `G'`.
//! * [`covers`]: component counts and torsion-level shadows of the cyclic
//!   cover geometry.
//! * [`report`] and [`selftest`]: grid runs with machine-readable output and
//!   the seeded property suites driven by the command-line tool.
//!
//! Values of pairings and forms are written additively in `Z/r`, having fixed
//! once and for all an identification `μ_r ≅ Z/r`.

pub mod brauer;
pub mod covers;
pub mod finab;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod sympl;
pub mod zmodlinalg;

mod error;

pub use error::{Error, Result};

/// Default bound on the size of any set this crate enumerates exhaustively.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

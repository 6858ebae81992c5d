//! Explicit models of desingularized Jacobian Kummer surfaces.
//!
//! A principally polarized abelian surface `A = C^2 / (Z^2 + Omega Z^2)` has a
//! Kummer quotient `A / (z ~ -z)` whose minimal desingularization embeds in
//! `P^5` as the intersection of quadrics.  This crate builds that model from
//! theta functions with half-integer characteristics:
//!
//! * ten even theta constants `A_1..A_10` parametrize the surface, and the
//!   squares `A_i^2` are quadratic forms in four level-(2,4) constants
//!   `B_0..B_3` (the [`surface::veronese`] map);
//! * six odd fourth-order thetas `X_1..X_6` give coordinates on `P^5`, and the
//!   surface is cut out by fifteen diagonal quadrics `E_1..E_15` spanning a
//!   three-dimensional net ([`surface::build_equations`]);
//! * eighty Rosenhain hyperplanes with coefficients `A_i A_j A_k` slice the
//!   surface in the thirty-two lines coming from tropes and exceptional
//!   curves ([`rosenhain`]);
//! * a symplectic group action permutes everything, with explicit eighth
//!   roots of unity as phases ([`action`], [`symplectic`]);
//! * the same model makes sense over a finite field once the `A_i^2` lift to
//!   squares, and the whole configuration can be searched for and verified
//!   exactly ([`ff`]);
//! * degenerate period matrices give boundary fibers (products of elliptic
//!   curves, cone pairs, a union of eight planes) with their own explicit
//!   equations and smoothness certificates ([`fiber`]).
//!
//! Numerical work happens over `Complex64` through truncated theta series
//! with certified tail bounds ([`theta`]); exact work happens over `F_p`
//! ([`field::Fp`]) through the same generic interfaces.

pub mod action;
pub mod chars;
pub mod ff;
pub mod fiber;
pub mod field;
pub mod linalg;
pub mod rosenhain;
pub mod sample;
pub mod surface;
pub mod symplectic;
pub mod theta;

use thiserror::Error;

/// Errors shared across the crate.
///
/// Numerical routines fail loudly rather than silently losing precision, and
/// exact routines fail loudly rather than guessing (no square root, rank not
/// as required, and so on).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The truncation radius needed to reach the requested tolerance exceeds
    /// the policy cap.
    #[error("theta truncation radius {required} exceeds cap {cap}")]
    RadiusExceeded { required: i64, cap: i64 },

    /// The imaginary part of a period matrix is not positive definite.
    #[error("period matrix has non positive definite imaginary part")]
    NotPositiveDefinite,

    /// A denominator was exactly zero (finite field) or smaller than the
    /// guard threshold (complex).
    #[error("division by zero or near-zero value in {0}")]
    DivisionByNearZero(&'static str),

    /// A projective input had all coordinates zero.
    #[error("all projective coordinates are zero")]
    BasePoint,

    /// A linear system had unexpected rank.
    #[error("rank {got} where {expected} was required in {context}")]
    RankDeficient {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    /// A quadric could not be written in the span of the expected generators.
    #[error("quadric does not lie in the net of E1, E2, E3 (residual {residual:e})")]
    NotInNet { residual: f64 },

    /// A square root does not exist in the field.
    #[error("no square root of {value} modulo {p}")]
    NoSquareRoot { value: u64, p: u64 },

    /// A construction needs a square root the field does not contain.
    #[error("required square root unavailable: {0}")]
    RootUnavailable(&'static str),

    /// The ten squared theta constants cannot be simultaneously scaled to
    /// squares in `F_p`.
    #[error("squared constants are not liftable over F_{p}")]
    NotLiftable { p: u64 },

    /// The field lacks a root of unity needed to apply a phase.
    #[error("F_{p} has no primitive {order}th root of unity")]
    MissingRootOfUnity { p: u64, order: u32 },

    /// Newton iteration failed to locate a zero.
    #[error("newton iteration did not converge after {iterations} steps (last |f| = {last:e})")]
    NewtonDiverged { iterations: u32, last: f64 },

    /// A fiber construction was requested at a parameter on the boundary of
    /// its validity region.
    #[error("parameter lies on the boundary locus: {0}")]
    OnBoundary(&'static str),

    /// A vanishing pattern of even constants matched no known stratum.
    #[error("vanishing pattern {0:?} matches no classified stratum")]
    UnknownPattern(Vec<usize>),

    /// No sign assignment made the finite-field line configuration close.
    #[error("no sign assignment yields a consistent line configuration over F_{p}")]
    CalibrationFailed { p: u64 },

    /// An exact reproduction diverged from its reference data.
    #[error("mismatch at {0}")]
    Mismatch(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

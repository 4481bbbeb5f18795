//! Numerical study of solution curves for semilinear elliptic problems at
//! resonance.
//!
//! The equations treated here have the form
//!
//! ```text
//!     Δu + λ₁ u + h(u) = μ₁ φ₁ + e   in Ω,      u = 0 on ∂Ω,
//! ```
//!
//! where `λ₁` is the principal Dirichlet eigenvalue of `-Δ` on `Ω`, `φ₁ > 0`
//! is the corresponding eigenfunction normalized in `L²`, the forcing term
//! `e` is orthogonal to `φ₁`, and `h` is a bounded perturbation.  Because the
//! linear part is exactly at resonance, the problem is solvable only for
//! certain values of the amplitude `μ₁`, and the natural object of study is
//! the *solution curve*: the pair `(u, μ₁)` parameterized by the first
//! Fourier coefficient `ξ₁ = ∫ u φ₁`.
//!
//! The crate provides three independent routes to that curve, which are meant
//! to be compared against each other:
//!
//! * **Continuation** ([`continuation`]): a finite-difference discretization
//!   of the domain plus a Newton iteration that solves, for each prescribed
//!   `ξ₁` on a grid, the coupled system for `(u, μ₁)`.  This is the "exact"
//!   numerical route.
//! * **Asymptotics** ([`asym`]): closed-form large-`ξ₁` approximations of
//!   `μ₁(ξ₁)` for concrete domains (disks, rectangles, balls) and concrete
//!   nonlinearities, derived from the oscillatory integral
//!   `∫ h(ξ₁ φ₁) φ₁` by stationary phase.
//! * **Oscillatory quadrature** ([`oscint`]): direct high-accuracy evaluation
//!   of that same integral, together with stationary-phase reference
//!   formulas, used to validate the closed forms where they apply and to
//!   extend beyond them where they do not.
//!
//! Supporting modules supply the ingredients: [`specfun`] evaluates Bessel
//! functions and eigenvalue data for the supported domains, [`quad`] is an
//! adaptive Gauss–Kronrod integrator, [`linsolve`] holds the meshes and the
//! banded direct solver used by continuation, and [`problems`] is a catalog
//! of ready-made problem instances.
//!
//! # Parallelism
//!
//! Grid sweeps (tracing a curve's asymptotic companion over thousands of
//! `ξ₁` values, or evaluating validation batches) are data-parallel.  With
//! the default `parallel` feature they run on a rayon thread pool; without it
//! the same entry points fall back to sequential loops and produce bitwise
//! identical results in the same order.  See [`parallel`].

pub mod asym;
pub mod continuation;
pub mod linsolve;
pub mod oscint;
pub mod parallel;
pub mod problems;
pub mod quad;
pub mod specfun;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A function was evaluated outside its supported domain
    /// (negative argument, unsupported Bessel order, bad interval, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An iterative process (root bracketing, Newton, inverse iteration)
    /// failed to converge within its budget.
    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),

    /// An adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance.  The best available estimate is carried along.
    #[error("quadrature tolerance not met: requested {requested:e}, achieved {achieved:e}")]
    QuadratureTolerance {
        requested: f64,
        achieved: f64,
        estimate: f64,
    },

    /// A linear solve hit a (numerically) singular matrix or an
    /// unacceptable condition estimate.
    #[error("linear solve failed: {0}")]
    SingularSystem(String),

    /// A mesh or problem description is internally inconsistent.
    #[error("invalid problem setup: {0}")]
    InvalidSetup(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

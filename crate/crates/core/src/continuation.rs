//! Trace the solution curve `(u, μ₁)(ξ₁)` by continuation in `ξ₁`.
//!
//! For each target `ξ₁` on a grid, a Newton iteration solves the coupled
//! system "equation + normalization" for `(u, μ₁)`.  Linearizing `h` around
//! the current iterate `u^k` turns the equation into
//!
//! ```text
//!     Δw + (λ₁ + h'(u^k)) w = μ φ₁ + h'(u^k) u^k − h(u^k) + e,
//! ```
//!
//! which is affine in the unknown amplitude `μ`.  One factorization of the
//! operator therefore yields the whole family of candidate solutions: with
//! `w₁` the response to `φ₁` and `w₂` the response to the remaining
//! right-hand side, every `w = μ w₁ + w₂` solves the linearized equation,
//! and the normalization `⟨u, φ₁⟩ = ξ₁` picks the amplitude
//!
//! ```text
//!     μ^{k+1} = (ξ₁ − ⟨w₂, φ₁⟩) / ⟨w₁, φ₁⟩,      u^{k+1} = μ^{k+1} w₁ + w₂.
//! ```
//!
//! Exactly at resonance the linearized operator is singular (or nearly so)
//! in a single known direction, which is the reason the problem needs the
//! amplitude `μ` in the first place.  The factorization subtracts a tiny
//! shift `σ` so it never fails; the amplified near-null components this
//! injects into `w₁` and `w₂` cancel in `μ w₁ + w₂` because the
//! normalization fixes the component of `u` along `φ₁`.  See
//! [`ResolvedEigenpair`] for the two ways the resonant eigenpair itself can
//! be chosen.
//!
//! A trace is strictly sequential — each converged point seeds the next
//! through one of the [`PredictorMode`] extrapolations — and deterministic:
//! the same configuration and problem produce a bitwise identical curve on
//! the same build.

use std::fmt;
use std::sync::Arc;

use crate::linsolve::{
    discrete_eigenpair, factor_operator, inner, laplacian_apply, norm, Field, Mesh,
};
use crate::problems::{sample_forcing, ProblemSpec};
use crate::specfun::{DomainSpec, Eigenpair};
use crate::{Error, Result};

/// Which eigenpair anchors the resonance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMode {
    /// Principal eigenpair `(λ₁ʰ, φ₁ʰ)` of the discrete Laplacian on the
    /// trace mesh.  With this choice the resonance is exact at the discrete
    /// level: the near-singular solves are consistently conditioned, the
    /// forcing can be orthogonalized against `φ₁ʰ` exactly, and the null
    /// problem `h ≡ 0` reproduces `μ = 0` to rounding.  The default.
    #[default]
    Discrete,
    /// The continuum eigenpair sampled on the mesh, kept for comparison
    /// with analysis done in the continuum.  The discrete operator is then
    /// only approximately resonant, and `μ` picks up an `O(λ₁ʰ − λ₁)`
    /// discretization component.
    Continuous,
}

/// How the initial Newton guess for the next grid point is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictorMode {
    /// Reuse the previous solution unchanged.
    None,
    /// Tangent step along the last `w₁`: the curve derivative satisfies
    /// `u_ξ = μ'(ξ) w₁`, and the μ-difference of the last two points stands
    /// in for `μ'·dξ` without rescaling.
    SlopeReuse,
    /// Same tangent direction, with the secant slope rescaled to the
    /// upcoming step length.  Coincides with [`PredictorMode::SlopeReuse`]
    /// on a uniform grid, but stays consistent across halved steps.  The
    /// default.
    #[default]
    Secant,
}

/// Spatial resolution of the trace mesh, paired with the domain kind it
/// fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshResolution {
    /// 1-D radial mesh with `nodes` points (radially symmetric balls).
    Radial { nodes: usize },
    /// Tensor-product rectangle mesh.
    Rect { nx: usize, ny: usize },
    /// Polar disk mesh.
    Polar { nr: usize, ntheta: usize },
}

impl MeshResolution {
    /// Build the mesh for `domain`; rejects mismatched pairings.
    pub fn build(&self, domain: &DomainSpec) -> Result<Arc<Mesh>> {
        match (self, domain) {
            (MeshResolution::Polar { nr, ntheta }, DomainSpec::Disk2D) => {
                Mesh::polar_disk(*nr, *ntheta)
            }
            (MeshResolution::Rect { nx, ny }, DomainSpec::Rect2D { a, b }) => {
                Mesh::rect(*a, *b, *nx, *ny)
            }
            (MeshResolution::Radial { nodes }, DomainSpec::BallRadial { n }) => {
                Mesh::radial(*n, *nodes)
            }
            _ => Err(Error::InvalidSetup(format!(
                "mesh resolution {self:?} does not fit domain {domain:?}"
            ))),
        }
    }
}

/// Parameters of one continuation run.
#[derive(Debug, Clone)]
pub struct ContinuationConfig {
    /// First `ξ₁` grid value.
    pub xi_start: f64,
    /// Upper end of the grid; the last point is the largest
    /// `xi_start + k·dxi` not exceeding it.
    pub xi_end: f64,
    /// `ξ₁` grid step (the continuation step, not the mesh spacing).
    pub dxi: f64,
    /// Newton stops when the relative μ increment
    /// `|μ^{k+1} − μ^k| / max(|μ^k|, mu_floor)` drops below this.
    pub newton_rel_tol: f64,
    /// Floor inside the relative increment test; the curve crosses `μ = 0`
    /// over and over, so the bare relative error is undefined there.
    pub mu_floor: f64,
    /// Iteration cap per point before the step is declared failed.
    pub max_newton_iters: usize,
    /// Mesh resolution for the traced domain.
    pub resolution: MeshResolution,
    /// Eigenpair anchoring (see [`EigenMode`]).
    pub eigen: EigenMode,
    /// Initial-guess extrapolation between points.
    pub predictor: PredictorMode,
}

impl ContinuationConfig {
    /// Config with the default tolerances (`newton_rel_tol = 1e-8`,
    /// `mu_floor = 1e-12`, `max_newton_iters = 25`), discrete eigenpair and
    /// secant predictor.
    pub fn new(xi_start: f64, xi_end: f64, dxi: f64, resolution: MeshResolution) -> Self {
        ContinuationConfig {
            xi_start,
            xi_end,
            dxi,
            newton_rel_tol: 1e-8,
            mu_floor: 1e-12,
            max_newton_iters: 25,
            resolution,
            eigen: EigenMode::default(),
            predictor: PredictorMode::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.xi_start.is_finite() || !self.xi_end.is_finite() {
            return Err(Error::InvalidArgument(
                "continuation range must be finite".into(),
            ));
        }
        if self.xi_end < self.xi_start {
            return Err(Error::InvalidArgument(format!(
                "empty continuation range [{}, {}]",
                self.xi_start, self.xi_end
            )));
        }
        if !(self.dxi > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "continuation step must be positive, got {}",
                self.dxi
            )));
        }
        if !(self.newton_rel_tol > 0.0) || !(self.mu_floor > 0.0) {
            return Err(Error::InvalidArgument(
                "newton_rel_tol and mu_floor must be positive".into(),
            ));
        }
        if self.max_newton_iters == 0 {
            return Err(Error::InvalidArgument(
                "max_newton_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One converged state along the curve.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    /// Prescribed first Fourier coefficient `⟨u, φ₁⟩`.
    pub xi: f64,
    /// Solved amplitude of the `φ₁` forcing component.
    pub mu: f64,
    /// Solution sample on the trace mesh.
    pub u: Field,
    /// Newton sweeps spent on this point.
    pub newton_iters: usize,
    /// Mesh norm of `Δu + λ₁u + h(u) − μφ₁ − e` over the interior.
    pub pde_residual: f64,
    /// `|⟨u, φ₁⟩ − ξ₁|`.
    pub projection_error: f64,
}

/// The eigenpair a trace is anchored to, resolved on a concrete mesh.
#[derive(Debug, Clone)]
pub struct ResolvedEigenpair {
    /// Which anchoring produced this pair.
    pub mode: EigenMode,
    /// Resonant eigenvalue entering the operator `Δ + λ₁ + h'(u)`.
    pub lambda1: f64,
    /// Eigenfunction sample used in every projection `⟨·, φ₁⟩`.
    pub phi1: Field,
}

impl ResolvedEigenpair {
    /// Resolve the eigenpair on `mesh` according to `mode`.
    ///
    /// Discrete mode runs inverse iteration for the exact discrete pair;
    /// continuous mode samples the closed-form eigenfunction and keeps the
    /// continuum eigenvalue (the sample is *not* renormalized — the point
    /// of the mode is to reproduce the continuum setup verbatim).
    pub fn resolve(mesh: &Arc<Mesh>, mode: EigenMode) -> Result<ResolvedEigenpair> {
        match mode {
            EigenMode::Discrete => {
                let (lambda1, phi1) = discrete_eigenpair(mesh)?;
                Ok(ResolvedEigenpair { mode, lambda1, phi1 })
            }
            EigenMode::Continuous => {
                let pair = Eigenpair::new(mesh.domain.clone())?;
                let mut phi1 = match mesh.domain {
                    DomainSpec::Rect2D { .. } | DomainSpec::RectNd { .. } => {
                        Field::from_fn(mesh, |x| pair.phi1_point(x))
                    }
                    _ => Field::from_radial_fn(mesh, |r| pair.phi1_radial(r))?,
                };
                for node in 0..mesh.node_count() {
                    if mesh.is_boundary(node) {
                        phi1.values_mut()[node] = 0.0;
                    }
                }
                Ok(ResolvedEigenpair { mode, lambda1: pair.lambda1, phi1 })
            }
        }
    }

    /// Forcing sample adjusted to the anchoring: discrete mode projects out
    /// the `φ₁ʰ` component so the discrete problem is exactly resonant with
    /// an exactly orthogonal forcing; continuous mode keeps the sample as
    /// is.
    pub fn align_forcing(&self, e: &Field) -> Result<Field> {
        match self.mode {
            EigenMode::Continuous => Ok(e.clone()),
            EigenMode::Discrete => {
                let c = inner(e, &self.phi1)? / inner(&self.phi1, &self.phi1)?;
                let mut out = e.clone();
                out.axpy(-c, &self.phi1);
                Ok(out)
            }
        }
    }
}

/// A traced solution curve.
#[derive(Debug, Clone)]
pub struct SolutionCurve {
    /// Configuration the trace ran with.
    pub config: ContinuationConfig,
    /// Converged points, strictly increasing in `ξ₁`.
    pub points: Vec<CurvePoint>,
    /// Eigenpair every projection in `points` refers to.
    pub eigenpair: ResolvedEigenpair,
}

/// A Newton solve that did not deliver a converged point.
#[derive(Debug)]
pub enum NewtonFailure {
    /// The iteration cap was reached, or the μ update stopped making
    /// progress while the residual stayed above budget.  Carries the last
    /// iterate with its diagnostics for post-mortem or restart.
    Diverged { last: Box<CurvePoint> },
    /// A step of the iteration itself failed (mesh mismatch, singular
    /// factorization beyond the shift's reach, forcing sampling).
    Solver(Error),
}

impl fmt::Display for NewtonFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewtonFailure::Diverged { last } => write!(
                f,
                "Newton did not converge at ξ₁ = {} ({} iterations, residual {:.3e})",
                last.xi, last.newton_iters, last.pde_residual
            ),
            NewtonFailure::Solver(err) => write!(f, "Newton step failed: {err}"),
        }
    }
}

impl std::error::Error for NewtonFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            NewtonFailure::Diverged { .. } => None,
            NewtonFailure::Solver(err) => Some(err),
        }
    }
}

/// A trace that stopped before reaching `xi_end`.
#[derive(Debug)]
pub struct TraceFailure {
    /// Points traced successfully before the failure; may be empty.
    pub partial: SolutionCurve,
    /// The grid value that could not be solved.
    pub xi_failed: f64,
    /// Why the final attempt failed.
    pub source: NewtonFailure,
}

impl fmt::Display for TraceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "continuation stopped at ξ₁ = {} after {} points: {}",
            self.xi_failed,
            self.partial.points.len(),
            self.source
        )
    }
}

impl std::error::Error for TraceFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Why [`trace_curve`] returned no curve.
#[derive(Debug)]
pub enum TraceError {
    /// The trace could not be set up at all (invalid config, mesh build,
    /// eigenpair resolution, forcing sampling).
    Setup(Error),
    /// The trace ran and stopped early; carries the partial curve.
    Aborted(Box<TraceFailure>),
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::Setup(err) => write!(f, "continuation setup failed: {err}"),
            TraceError::Aborted(failure) => failure.fmt(f),
        }
    }
}

impl std::error::Error for TraceError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            TraceError::Setup(err) => Some(err),
            TraceError::Aborted(failure) => Some(failure.as_ref()),
        }
    }
}

/// Shift subtracted from the linearized operator before factoring.
///
/// The unshifted operator `Δ + λ₁ + h'(u)` is numerically singular whenever
/// the resonant mode's Rayleigh quotient of `h'(u)` passes through zero —
/// which happens along every curve, since `h'` oscillates.  Subtracting `σ`
/// keeps every factorization well posed.  The amplified near-null
/// components this injects into `w₁` and `w₂` cancel in `u = μw₁ + w₂`
/// because the normalization pins `⟨u, φ₁⟩`, and the only trace left in the
/// converged equation is a `σu` term, two orders below the residual budget.
const OPERATOR_SHIFT: f64 = 1e-8;

/// Early exit: once the unshifted residual is below this (relative to
/// `1 + ‖u‖`), further μ increments measure rounding, not convergence.
/// This is also what lets exactly-linear problems converge in one sweep.
const RESIDUAL_EXIT: f64 = 1e-8;

/// Hard bound on the unshifted residual at a converged point; a μ-stationary
/// iterate above it is reported as divergence, not convergence.
const RESIDUAL_BUDGET: f64 = 1e-6;

/// Levels of step halving before a trace gives up on a grid point.
const MAX_HALVINGS: u32 = 4;

/// Mesh norm of `Δu + λ₁u + h(u) − μφ₁ − e` over the interior nodes.
fn equation_residual(
    problem: &ProblemSpec,
    frame: &ResolvedEigenpair,
    e: &Field,
    u: &Field,
    mu: f64,
) -> f64 {
    let mesh = u.mesh().clone();
    let h = &problem.nonlinearity;
    let mut res = laplacian_apply(u);
    for node in 0..mesh.node_count() {
        if mesh.is_boundary(node) {
            continue;
        }
        let uv = u.values()[node];
        res.values_mut()[node] +=
            frame.lambda1 * uv + h.h(uv) - mu * frame.phi1.values()[node] - e.values()[node];
    }
    norm(&res)
}

struct NewtonOutcome {
    point: CurvePoint,
    w1: Field,
}

/// The Newton loop proper, with the forcing already sampled and aligned.
fn newton_iterate(
    problem: &ProblemSpec,
    mesh: &Arc<Mesh>,
    frame: &ResolvedEigenpair,
    e: &Field,
    xi_target: f64,
    u0: &Field,
    cfg: &ContinuationConfig,
) -> std::result::Result<NewtonOutcome, NewtonFailure> {
    let h = &problem.nonlinearity;
    let mut u = u0.clone();
    let mut mu_prev: Option<f64> = None;
    let mut last: Option<NewtonOutcome> = None;

    for iter in 1..=cfg.max_newton_iters {
        let mut a = Field::zeros(mesh);
        let mut rhs = Field::zeros(mesh);
        for node in 0..mesh.node_count() {
            if mesh.is_boundary(node) {
                continue;
            }
            let uv = u.values()[node];
            let dh = h.dh(uv);
            a.values_mut()[node] = frame.lambda1 + dh - OPERATOR_SHIFT;
            rhs.values_mut()[node] = dh * uv - h.h(uv) + e.values()[node];
        }
        let factored = factor_operator(mesh, &a).map_err(NewtonFailure::Solver)?;
        let w1 = factored.solve(&frame.phi1).map_err(NewtonFailure::Solver)?;
        let w2 = factored.solve(&rhs).map_err(NewtonFailure::Solver)?;

        let denom = inner(&w1, &frame.phi1).map_err(NewtonFailure::Solver)?;
        let numer = xi_target - inner(&w2, &frame.phi1).map_err(NewtonFailure::Solver)?;
        let mu = numer / denom;
        if !mu.is_finite() {
            break;
        }

        u = {
            let mut next = w2;
            next.axpy(mu, &w1);
            next
        };
        let pde_residual = equation_residual(problem, frame, e, &u, mu);
        let projection_error = (inner(&u, &frame.phi1).map_err(NewtonFailure::Solver)? - xi_target)
            .abs();
        let point = CurvePoint {
            xi: xi_target,
            mu,
            u: u.clone(),
            newton_iters: iter,
            pde_residual,
            projection_error,
        };

        let scale = 1.0 + norm(&u);
        let increment_done = mu_prev
            .is_some_and(|p| (mu - p).abs() / p.abs().max(cfg.mu_floor) < cfg.newton_rel_tol);
        let residual_done = pde_residual <= RESIDUAL_EXIT * scale;
        if (increment_done || residual_done) && pde_residual <= RESIDUAL_BUDGET * scale {
            return Ok(NewtonOutcome { point, w1 });
        }
        if increment_done {
            // μ has stopped moving but the equation is not satisfied:
            // iterating further cannot help.
            return Err(NewtonFailure::Diverged { last: Box::new(point) });
        }

        mu_prev = Some(mu);
        last = Some(NewtonOutcome { point, w1 });
    }

    match last {
        Some(outcome) => Err(NewtonFailure::Diverged { last: Box::new(outcome.point) }),
        None => Err(NewtonFailure::Solver(Error::NoConvergence(format!(
            "no usable Newton iterate at ξ₁ = {xi_target}"
        )))),
    }
}

/// Solve for the curve point at one prescribed `ξ₁`, starting from `u0`.
///
/// `frame` must come from [`ResolvedEigenpair::resolve`] on the same mesh;
/// the forcing is sampled from the problem and aligned to the frame's
/// anchoring on every call (use [`trace_curve`] to amortize that across a
/// whole curve).
pub fn newton_solve(
    problem: &ProblemSpec,
    mesh: &Arc<Mesh>,
    frame: &ResolvedEigenpair,
    xi_target: f64,
    u0: &Field,
    cfg: &ContinuationConfig,
) -> std::result::Result<CurvePoint, NewtonFailure> {
    let raw = sample_forcing(&problem.forcing, mesh).map_err(NewtonFailure::Solver)?;
    let e = frame.align_forcing(&raw).map_err(NewtonFailure::Solver)?;
    newton_iterate(problem, mesh, frame, &e, xi_target, u0, cfg).map(|outcome| outcome.point)
}

/// Initial guess for the solve at `prev.xi + dxi`, extrapolated from the
/// last converged state along the direction `w1_last` (the final `w₁` of
/// the previous solve, which spans the curve's tangent).
pub fn predict(
    prev: &CurvePoint,
    prev2: Option<&CurvePoint>,
    w1_last: &Field,
    dxi: f64,
    mode: PredictorMode,
) -> Field {
    let mu_step = match (mode, prev2) {
        (PredictorMode::None, _) | (_, None) => return prev.u.clone(),
        (PredictorMode::SlopeReuse, Some(p2)) => prev.mu - p2.mu,
        (PredictorMode::Secant, Some(p2)) => {
            let span = prev.xi - p2.xi;
            if span.abs() <= f64::EPSILON * prev.xi.abs().max(1.0) {
                return prev.u.clone();
            }
            (prev.mu - p2.mu) * (dxi / span)
        }
    };
    let mut out = prev.u.clone();
    out.axpy(mu_step, w1_last);
    out
}

/// Walker state shared by the grid loop and its halved sub-steps.
struct Walker<'a> {
    problem: &'a ProblemSpec,
    mesh: &'a Arc<Mesh>,
    frame: &'a ResolvedEigenpair,
    e: &'a Field,
    cfg: &'a ContinuationConfig,
    prev: Option<CurvePoint>,
    prev2: Option<CurvePoint>,
    w1: Option<Field>,
}

impl Walker<'_> {
    fn guess(&self, target: f64) -> Field {
        match (&self.prev, &self.w1) {
            (Some(prev), Some(w1)) => {
                predict(prev, self.prev2.as_ref(), w1, target - prev.xi, self.cfg.predictor)
            }
            // First point: solutions sit near ξ₁φ₁ for every admissible h.
            _ => {
                let mut u0 = self.frame.phi1.clone();
                u0.scale(target);
                u0
            }
        }
    }

    /// Solve at `target`, halving the step up to [`MAX_HALVINGS`] times by
    /// inserting unemitted intermediate solves between the last converged
    /// point and `target`.
    fn advance(&mut self, target: f64, depth: u32) -> std::result::Result<CurvePoint, NewtonFailure> {
        let u0 = self.guess(target);
        match newton_iterate(self.problem, self.mesh, self.frame, self.e, target, &u0, self.cfg)
        {
            Ok(outcome) => {
                self.prev2 = self.prev.take();
                self.prev = Some(outcome.point.clone());
                self.w1 = Some(outcome.w1);
                Ok(outcome.point)
            }
            Err(err) => {
                let Some(from) = self.prev.as_ref().map(|p| p.xi) else {
                    return Err(err);
                };
                let mid = 0.5 * (from + target);
                if depth >= MAX_HALVINGS || !(from < mid && mid < target) {
                    return Err(err);
                }
                self.advance(mid, depth + 1)?;
                self.advance(target, depth + 1)
            }
        }
    }
}

/// Trace the curve over the configured `ξ₁` grid.
///
/// Emits one [`CurvePoint`] per grid value.  A Newton failure at a grid
/// value triggers step halving (intermediate solves that seed the predictor
/// but are not emitted); persistent failure aborts with the partial curve.
pub fn trace_curve(
    problem: &ProblemSpec,
    cfg: &ContinuationConfig,
) -> std::result::Result<SolutionCurve, TraceError> {
    trace_curve_with_forcing(problem, cfg, None)
}

/// Same as [`trace_curve`], with the forcing sample optionally replaced by
/// tabulated values (one per mesh node, boundary included), for callers
/// that load forcing data from a file rather than the catalog.
pub fn trace_curve_with_forcing(
    problem: &ProblemSpec,
    cfg: &ContinuationConfig,
    forcing_values: Option<&[f64]>,
) -> std::result::Result<SolutionCurve, TraceError> {
    cfg.validate().map_err(TraceError::Setup)?;
    let mesh = cfg.resolution.build(&problem.domain).map_err(TraceError::Setup)?;
    let frame = ResolvedEigenpair::resolve(&mesh, cfg.eigen).map_err(TraceError::Setup)?;

    let raw = match forcing_values {
        Some(values) => {
            if values.len() != mesh.node_count() {
                return Err(TraceError::Setup(Error::InvalidArgument(format!(
                    "forcing table has {} values, mesh has {} nodes",
                    values.len(),
                    mesh.node_count()
                ))));
            }
            let mut field = Field::zeros(&mesh);
            field.values_mut().copy_from_slice(values);
            field
        }
        None => sample_forcing(&problem.forcing, &mesh).map_err(TraceError::Setup)?,
    };
    let e = frame.align_forcing(&raw).map_err(TraceError::Setup)?;

    let span = cfg.xi_end - cfg.xi_start;
    let steps = (span / cfg.dxi + 1e-9).floor() as usize;
    let targets: Vec<f64> = (0..=steps).map(|k| cfg.xi_start + k as f64 * cfg.dxi).collect();

    let mut walker = Walker {
        problem,
        mesh: &mesh,
        frame: &frame,
        e: &e,
        cfg,
        prev: None,
        prev2: None,
        w1: None,
    };
    let mut points = Vec::with_capacity(targets.len());
    for &target in &targets {
        match walker.advance(target, 0) {
            Ok(point) => points.push(point),
            Err(source) => {
                return Err(TraceError::Aborted(Box::new(TraceFailure {
                    partial: SolutionCurve { config: cfg.clone(), points, eigenpair: frame },
                    xi_failed: target,
                    source,
                })));
            }
        }
    }
    Ok(SolutionCurve { config: cfg.clone(), points, eigenpair: frame })
}

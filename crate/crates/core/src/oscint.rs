//! Oscillatory integrals `∫ f(x) e^{iμ g(x)} dx` and their stationary-phase
//! approximations.
//!
//! Two independent evaluation routes are provided on purpose:
//!
//! 1. [`integrate_oscillatory`] — direct adaptive quadrature.  Initial
//!    panels are laid out so each spans only a few radians of phase (from a
//!    scan of `μ |g'|`), then a worst-panel-first refinement drives the
//!    error down.  Real and imaginary parts are evaluated in one fused
//!    Gauss–Kronrod pass per panel.  Cost grows linearly with `μ`, so this
//!    is the ground-truth route for moderate `μ`.
//! 2. [`stationary_phase_estimate`] — the classical `μ → ∞` approximation:
//!    each interior nondegenerate critical point `x₀` of `g` contributes
//!    `f(x₀) √(2π/(μ|g''(x₀)|)) e^{i[μ g(x₀) + sgn(g'') π/4]}`, and a
//!    stationary *endpoint* contributes half of that.  Cost is independent
//!    of `μ`; accuracy improves like `1/μ`.
//!
//! Comparing the two routes on the same [`PhaseProblem`] is the crate's
//! basic validation tool for every closed-form asymptotic formula.  The
//! plain real-valued [`integrate`] lives here too, as the shared entry
//! point for all non-oscillatory (or pre-panelled) 1-D quadrature.
//!
//! Complex values are carried as `(re, im)` pairs throughout.

use crate::quad::{self, Tolerance, WG, WGK, XGK};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_4, PI};

/// Default panel budget for [`integrate`]: ample for every integrand in
/// this crate, including ones with integrable endpoint singularities.
const DEFAULT_PANEL_BUDGET: usize = 20_000;

/// Adaptively evaluate the real integral `∫ₐᵇ f(x) dx` to absolute *or*
/// relative tolerance `tol` (whichever is weaker at the converged value).
///
/// The underlying 15-point Gauss–Kronrod rule never samples panel
/// endpoints, so integrable singularities *at* `a` or `b` — `r^{-1/2}`
/// weights, `cos(πr)/r` forcings and the like — are handled without any
/// special casing; refinement simply concentrates panels there.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let t = Tolerance { abs_tol: tol, rel_tol: tol };
    quad::adaptive(&f, a, b, t, DEFAULT_PANEL_BUDGET)
}

/// An oscillatory integrand `f(x) e^{iμ g(x)}` on an interval, with the
/// phase derivatives the stationary-phase machinery needs.
pub struct PhaseProblem<'a> {
    /// Slowly varying amplitude `f`.
    pub amplitude: &'a (dyn Fn(f64) -> f64 + Sync),
    /// Phase `g` (multiplied by `mu` in the exponent).
    pub phase: &'a (dyn Fn(f64) -> f64 + Sync),
    /// `g'`.
    pub phase_d1: &'a (dyn Fn(f64) -> f64 + Sync),
    /// `g''`.
    pub phase_d2: &'a (dyn Fn(f64) -> f64 + Sync),
    /// Integration interval `(a, b)`, `a < b`.
    pub interval: (f64, f64),
    /// Large parameter `μ > 0`.
    pub mu: f64,
}

impl PhaseProblem<'_> {
    fn validate(&self) -> Result<()> {
        let (a, b) = self.interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidArgument(format!(
                "bad phase-problem interval [{a}, {b}]"
            )));
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "phase parameter must be positive, got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

/// Fused Gauss–Kronrod pass for a complex-valued integrand: one sweep over
/// the nodes yields `((re, im), error)` with the error measured in modulus.
fn gk15_complex<F: Fn(f64) -> (f64, f64)>(f: &F, a: f64, b: f64) -> ((f64, f64), f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let (fc_re, fc_im) = f(center);
    let mut gauss = (WG[3] * fc_re, WG[3] * fc_im);
    let mut kron = (WGK[7] * fc_re, WGK[7] * fc_im);
    let mut abs_scale = WGK[7] * (fc_re * fc_re + fc_im * fc_im).sqrt();

    for j in 0..7 {
        let x = half * XGK[j];
        let (l_re, l_im) = f(center - x);
        let (r_re, r_im) = f(center + x);
        kron.0 += WGK[j] * (l_re + r_re);
        kron.1 += WGK[j] * (l_im + r_im);
        abs_scale += WGK[j]
            * ((l_re * l_re + l_im * l_im).sqrt() + (r_re * r_re + r_im * r_im).sqrt());
        if j % 2 == 1 {
            gauss.0 += WG[j / 2] * (l_re + r_re);
            gauss.1 += WG[j / 2] * (l_im + r_im);
        }
    }

    let integral = (kron.0 * half, kron.1 * half);
    let diff_re = (kron.0 - gauss.0) * half;
    let diff_im = (kron.1 - gauss.1) * half;
    let raw_err = (diff_re * diff_re + diff_im * diff_im).sqrt();
    let scale = abs_scale * half.abs();
    let err = if scale > 0.0 && raw_err > 0.0 {
        raw_err.min(scale * 1.0_f64.min((200.0 * raw_err / scale).powf(1.5)))
    } else {
        raw_err
    };
    (integral, err)
}

struct ComplexPanel {
    a: f64,
    b: f64,
    integral: (f64, f64),
    err: f64,
}

impl PartialEq for ComplexPanel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for ComplexPanel {}
impl PartialOrd for ComplexPanel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ComplexPanel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Phase budget per initial panel, in radians.  A couple of radians keeps
/// the 15-point rule comfortably inside its resolved regime.
const RADIANS_PER_PANEL: f64 = 2.5;

/// Lay out initial panel boundaries so each panel carries roughly
/// [`RADIANS_PER_PANEL`] of phase, based on a trapezoid scan of `μ|g'|`.
fn phase_aware_breaks(p: &PhaseProblem, max_panels: usize) -> Vec<f64> {
    let (a, b) = p.interval;
    const SCAN: usize = 1024;
    let h = (b - a) / SCAN as f64;

    // Cumulative phase Φ(x) = μ ∫ₐˣ |g'|.
    let mut cumulative = vec![0.0_f64; SCAN + 1];
    let mut prev = (p.phase_d1)(a).abs();
    for i in 1..=SCAN {
        let x = a + h * i as f64;
        let cur = (p.phase_d1)(x).abs();
        cumulative[i] = cumulative[i - 1] + 0.5 * (prev + cur) * h * p.mu;
        prev = cur;
    }
    let total_phase = cumulative[SCAN];
    let wanted = (total_phase / RADIANS_PER_PANEL).ceil().max(4.0) as usize;
    let n_panels = wanted.min(max_panels.max(4));

    // Invert the cumulative phase at equal increments.
    let mut breaks = Vec::with_capacity(n_panels + 1);
    breaks.push(a);
    let mut scan_idx = 0usize;
    for k in 1..n_panels {
        let target = total_phase * k as f64 / n_panels as f64;
        while scan_idx < SCAN && cumulative[scan_idx + 1] < target {
            scan_idx += 1;
        }
        // Linear interpolation inside the scan cell.
        let lo = cumulative[scan_idx];
        let hi = cumulative[scan_idx + 1];
        let frac = if hi > lo { (target - lo) / (hi - lo) } else { 0.5 };
        let x = a + h * (scan_idx as f64 + frac);
        if x > *breaks.last().unwrap() {
            breaks.push(x);
        }
    }
    breaks.push(b);
    breaks
}

/// Directly evaluate `∫ₐᵇ f(x) e^{iμ g(x)} dx` to the requested tolerance.
///
/// Returns `(re, im)`.  The tolerance target combines `abs_tol` with
/// `rel_tol` against the modulus of the running estimate; `max_panels`
/// bounds the total panel count (initial layout plus refinement).
pub fn integrate_oscillatory(
    p: &PhaseProblem,
    tol: Tolerance,
    max_panels: usize,
) -> Result<(f64, f64)> {
    p.validate()?;
    let f = |x: f64| {
        let amp = (p.amplitude)(x);
        let ph = p.mu * (p.phase)(x);
        (amp * ph.cos(), amp * ph.sin())
    };

    let breaks = phase_aware_breaks(p, max_panels);
    let mut heap = BinaryHeap::new();
    let mut n_panels = breaks.len() - 1;
    for w in breaks.windows(2) {
        let (integral, err) = gk15_complex(&f, w[0], w[1]);
        heap.push(ComplexPanel { a: w[0], b: w[1], integral, err });
    }

    let totals = |heap: &BinaryHeap<ComplexPanel>| {
        let mut sum = (0.0_f64, 0.0_f64);
        let mut err = 0.0_f64;
        for panel in heap.iter() {
            sum.0 += panel.integral.0;
            sum.1 += panel.integral.1;
            err += panel.err;
        }
        (sum, err)
    };

    loop {
        let ((sr, si), err_sum) = totals(&heap);
        let modulus = (sr * sr + si * si).sqrt();
        if err_sum <= tol.abs_tol.max(tol.rel_tol * modulus) {
            return Ok((sr, si));
        }
        if n_panels >= max_panels {
            return Err(Error::QuadratureTolerance {
                requested: tol.abs_tol.max(tol.rel_tol * modulus),
                achieved: err_sum,
                estimate: modulus,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let ((sr, si), err_sum) = totals(&heap);
            let modulus = (sr * sr + si * si).sqrt();
            if err_sum <= tol.abs_tol.max(tol.rel_tol * modulus) {
                return Ok((sr, si));
            }
            return Err(Error::QuadratureTolerance {
                requested: tol.abs_tol.max(tol.rel_tol * modulus),
                achieved: err_sum,
                estimate: modulus,
            });
        }
        let (li, le) = gk15_complex(&f, worst.a, mid);
        let (ri, re_) = gk15_complex(&f, mid, worst.b);
        heap.push(ComplexPanel { a: worst.a, b: mid, integral: li, err: le });
        heap.push(ComplexPanel { a: mid, b: worst.b, integral: ri, err: re_ });
        n_panels += 1;
    }
}

/// Model value of a clean quadratic phase: for `∫ f(x) e^{-iμα x²} dx`
/// with the stationary point at the origin and `f` slowly varying, the
/// limit is `f(0) √(π/(μα)) e^{-iπ/4}`.
///
/// Rejects `α ≤ 0` and `μ ≤ 0`, where the model does not apply.
pub fn stationary_phase_quadratic(f0: f64, alpha: f64, mu: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "quadratic phase coefficient must be positive, got {alpha}"
        )));
    }
    if !(mu > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "phase parameter must be positive, got {mu}"
        )));
    }
    let amp = f0 * (PI / (mu * alpha)).sqrt();
    Ok((amp * FRAC_PI_4.cos(), -amp * FRAC_PI_4.sin()))
}

/// Contribution of an interior nondegenerate critical point `x₀`:
/// `f(x₀) √(2π/(μ|g''|)) e^{i[μ g(x₀) + sgn(g'') π/4]}`.
///
/// Building block shared by the problem-level entry points; callers supply
/// `f0 = f(x₀)`, `g0 = g(x₀)`, `g2 = g''(x₀)`.
pub fn interior_point_term(f0: f64, g0: f64, g2: f64, mu: f64) -> (f64, f64) {
    let amp = f0 * (2.0 * PI / (mu * g2.abs())).sqrt();
    let phase = mu * g0 + g2.signum() * FRAC_PI_4;
    (amp * phase.cos(), amp * phase.sin())
}

/// Contribution of a stationary *endpoint* (half of the interior value):
/// `f(x₀) √(π/(2μ|g''|)) e^{i[μ g(x₀) + sgn(g'') π/4]}`.
pub fn endpoint_term(f0: f64, g0: f64, g2: f64, mu: f64) -> (f64, f64) {
    let amp = f0 * (PI / (2.0 * mu * g2.abs())).sqrt();
    let phase = mu * g0 + g2.signum() * FRAC_PI_4;
    (amp * phase.cos(), amp * phase.sin())
}

/// Leading-order value of a [`PhaseProblem`] whose phase has exactly one
/// interior nondegenerate critical point and none at the endpoints.
///
/// Locates the critical point from `g'`, then applies
/// [`interior_point_term`].  Problems with zero or several critical
/// points, or with a stationary endpoint, are rejected — those shapes
/// belong to [`stationary_phase_endpoint`] or
/// [`stationary_phase_estimate`].
pub fn stationary_phase_interior(p: &PhaseProblem) -> Result<(f64, f64)> {
    p.validate()?;
    let (a, b) = p.interval;
    for x_end in [a, b] {
        if (p.phase_d1)(x_end).abs() < 1e-9 * derivative_scale(p) {
            return Err(Error::InvalidArgument(format!(
                "phase is stationary at the endpoint x = {x_end}; \
                 use the endpoint variant"
            )));
        }
    }
    let pts = stationary_points(p);
    let x0 = match pts.as_slice() {
        [x0] => *x0,
        [] => {
            return Err(Error::InvalidArgument(
                "no interior critical point found".into(),
            ))
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "expected a single interior critical point, found {}",
                pts.len()
            )))
        }
    };
    let g2 = (p.phase_d2)(x0);
    if g2 == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "degenerate stationary point at x = {x0}"
        )));
    }
    Ok(interior_point_term(
        (p.amplitude)(x0),
        (p.phase)(x0),
        g2,
        p.mu,
    ))
}

/// Leading-order value of a [`PhaseProblem`] whose phase is stationary at
/// exactly one *endpoint* (nondegenerate) and strictly monotone inside —
/// the `f₁'(0) cos(ξ φ₁(r))`-type integrals of the radial asymptotics.
///
/// Verifies the shape (one stationary endpoint, `g'' ≠ 0` there, no sign
/// change of `g'` in the interior) and applies [`endpoint_term`].
pub fn stationary_phase_endpoint(p: &PhaseProblem) -> Result<(f64, f64)> {
    p.validate()?;
    let (a, b) = p.interval;
    let scale = derivative_scale(p);
    let stat_a = (p.phase_d1)(a).abs() < 1e-9 * scale;
    let stat_b = (p.phase_d1)(b).abs() < 1e-9 * scale;
    let x0 = match (stat_a, stat_b) {
        (true, false) => a,
        (false, true) => b,
        (true, true) => {
            return Err(Error::InvalidArgument(
                "both endpoints are stationary; split the interval".into(),
            ))
        }
        (false, false) => {
            return Err(Error::InvalidArgument(
                "neither endpoint is stationary".into(),
            ))
        }
    };
    if !stationary_points(p).is_empty() {
        return Err(Error::InvalidArgument(
            "phase has an interior critical point; use the interior variant".into(),
        ));
    }
    let g2 = (p.phase_d2)(x0);
    if g2 == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "degenerate stationary endpoint at x = {x0}"
        )));
    }
    Ok(endpoint_term((p.amplitude)(x0), (p.phase)(x0), g2, p.mu))
}

/// Typical interior magnitude of `g'`, for deciding whether an endpoint
/// derivative counts as zero.
fn derivative_scale(p: &PhaseProblem) -> f64 {
    let (a, b) = p.interval;
    let mut m = 0.0_f64;
    for i in 0..64 {
        let x = a + (b - a) * (i as f64 + 0.5) / 64.0;
        m = m.max((p.phase_d1)(x).abs());
    }
    m.max(f64::MIN_POSITIVE)
}

/// Locate the zeros of `g'` in the open interval by a sign-change scan,
/// bisection, and a Newton polish with `g''`.
pub fn stationary_points(p: &PhaseProblem) -> Vec<f64> {
    let (a, b) = p.interval;
    const SCAN: usize = 2048;
    let h = (b - a) / SCAN as f64;
    let mut points = Vec::new();
    let mut x_prev = a + h * 1e-3; // stay off the endpoints
    let mut f_prev = (p.phase_d1)(x_prev);
    for i in 1..=SCAN {
        let x = if i == SCAN { b - h * 1e-3 } else { a + h * i as f64 };
        let fx = (p.phase_d1)(x);
        if f_prev == 0.0 {
            points.push(x_prev);
        } else if f_prev * fx < 0.0 {
            // Bisect, then polish.
            let (mut lo, mut hi, mut flo) = (x_prev, x, f_prev);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                let fm = (p.phase_d1)(mid);
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            let mut root = 0.5 * (lo + hi);
            for _ in 0..3 {
                let d1 = (p.phase_d1)(root);
                let d2 = (p.phase_d2)(root);
                if d2 == 0.0 {
                    break;
                }
                let next = root - d1 / d2;
                if next > a && next < b {
                    root = next;
                }
            }
            points.push(root);
        }
        x_prev = x;
        f_prev = fx;
    }
    points
}

/// Leading-order stationary-phase value of the whole integral: interior
/// critical points plus stationary endpoints.
///
/// Fails if a critical point is degenerate (`g'' = 0` there), where the
/// quadratic model does not apply.
pub fn stationary_phase_estimate(p: &PhaseProblem) -> Result<(f64, f64)> {
    p.validate()?;
    let (a, b) = p.interval;
    let scale = derivative_scale(p);
    let mut total = (0.0_f64, 0.0_f64);

    let mut add = |contrib: (f64, f64)| {
        total.0 += contrib.0;
        total.1 += contrib.1;
    };

    for x0 in stationary_points(p) {
        let g2 = (p.phase_d2)(x0);
        if g2 == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "degenerate stationary point at x = {x0}"
            )));
        }
        add(interior_point_term(
            (p.amplitude)(x0),
            (p.phase)(x0),
            g2,
            p.mu,
        ));
    }

    for x_end in [a, b] {
        if (p.phase_d1)(x_end).abs() < 1e-9 * scale {
            let g2 = (p.phase_d2)(x_end);
            if g2 == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "degenerate stationary endpoint at x = {x_end}"
                )));
            }
            add(endpoint_term(
                (p.amplitude)(x_end),
                (p.phase)(x_end),
                g2,
                p.mu,
            ));
        }
    }
    Ok(total)
}

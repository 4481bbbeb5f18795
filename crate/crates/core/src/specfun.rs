//! Bessel functions, eigenvalue data, and domain geometry.
//!
//! Everything downstream — the continuation solver, the closed-form
//! asymptotics, the oscillatory integrals — is driven by the principal
//! Dirichlet eigenpair of the Laplacian on one of a small family of domains:
//!
//! * the unit disk in the plane,
//! * the unit ball in `R^n` for `n = 2..=5` (treated radially),
//! * rectangles `(0,a₁) × … × (0,aₙ)`.
//!
//! For the radial domains the eigenfunction is `φ₁(r) = c · r^{-ν} J_ν(ν₁ r)`
//! with `ν = n/2 - 1`, where `ν₁` is the first positive zero of `J_ν` and `c`
//! normalizes `φ₁` in `L²` of the ball.  So the module provides `J_ν` for the
//! handful of integer and half-integer orders that arise, first zeros of
//! those functions, and an [`Eigenpair`] type bundling `λ₁`, `λ₂`, and
//! eigenfunction evaluation (with derivatives, which the phase analysis of
//! the oscillatory integrals needs).
//!
//! Evaluation strategy for `J_ν`:
//! * integer orders, small argument: ascending power series;
//! * integer orders, large argument: Miller's downward recurrence with the
//!   even-order normalization `J₀ + 2ΣJ_{2k} = 1`;
//! * half-integer orders: spherical closed forms in `sin`/`cos`, switching to
//!   the power series near zero where the closed forms cancel.

use crate::{Error, Result};
use std::f64::consts::PI;

/// Largest argument handled by the ascending series for integer orders;
/// beyond this Miller's recurrence takes over.
const SERIES_CUTOFF_INT: f64 = 12.0;

/// Γ(p/2) for positive integer `p`, computed exactly from factorials:
/// even `p = 2m` gives `(m-1)!`, odd `p = 2m+1` gives `(2m-1)!! √π / 2^m`.
pub fn gamma_half(p: u32) -> f64 {
    assert!(p >= 1, "gamma_half needs a positive numerator");
    if p % 2 == 0 {
        let m = p / 2;
        (1..m).map(|k| k as f64).product::<f64>()
    } else {
        let m = p / 2; // p = 2m + 1
        let double_fact: f64 = (1..=m).map(|k| (2 * k - 1) as f64).product();
        double_fact * PI.sqrt() / 2_f64.powi(m as i32)
    }
}

/// Surface area `ω_n` of the unit sphere `S^{n-1}` in `R^n`, the constant in
/// every radial integral `∫_B f(|x|) dx = ω_n ∫₀¹ f(r) r^{n-1} dr`.
/// Equals `2 π^{n/2} / Γ(n/2)` (equivalently `n π^{n/2} / Γ(n/2 + 1)`).
pub fn omega_n(n: u32) -> f64 {
    assert!(n >= 1);
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Ascending power series for `J_ν`, valid for any order `ν = v2/2` with
/// `v2 ≥ 0`.  Accurate while the terms stay comparable to the result, i.e.
/// for small-to-moderate `x`.
fn bessel_series(v2: u32, x: f64) -> f64 {
    let nu = v2 as f64 / 2.0;
    let half_x = 0.5 * x;
    let q = half_x * half_x;
    // Leading factor (x/2)^ν / Γ(ν+1); the series multiplies it.
    let lead = half_x.powf(nu) / gamma_half(v2 + 2);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=80u32 {
        // term_k / term_{k-1} = -q / (k (k + ν)).
        term *= -q / (k as f64 * (k as f64 + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    lead * sum
}

/// Miller's downward recurrence for integer-order `J_n(x)`, `x > 0`.
///
/// Recurrence start is well above both `n` and `x`; the unnormalized column
/// is fixed afterwards by `J₀ + 2 Σ_{k≥1} J_{2k} = 1`.
fn bessel_int_miller(n: u32, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    // Start index comfortably past the turning point k ≈ x.
    let mut m = (x + 12.0 * x.cbrt() + 20.0).ceil() as usize;
    m += m % 2; // even, so the normalization sum sees a clean last term
    let mut above = 0.0_f64; // J_{m+1} (unnormalized)
    let mut here = 1e-30_f64; // J_m (unnormalized seed)
    let mut norm = 2.0 * here; // m is even and nonzero
    let mut unnormalized = if n as usize == m { here } else { 0.0 };

    for k in (1..=m).rev() {
        let below = (2.0 * k as f64 / x) * here - above;
        above = here;
        here = below;
        if here.abs() > 1e250 {
            here *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            unnormalized *= 1e-250;
        }
        let idx = k - 1; // `here` currently holds J_idx
        if idx % 2 == 0 {
            norm += if idx == 0 { here } else { 2.0 * here };
        }
        if idx == n as usize {
            unnormalized = here;
        }
    }
    unnormalized / norm
}

/// `J_ν(x)` for the orders that arise from balls in dimensions 2 through 5:
/// `ν ∈ {0, 1/2, 1, 3/2, 2, 5/2, 3}`.  Requires `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bessel_j requires x >= 0, got {x}"
        )));
    }
    let v2 = (2.0 * nu).round();
    if (2.0 * nu - v2).abs() > 1e-12 || !(0.0..=6.0).contains(&v2) {
        return Err(Error::InvalidArgument(format!(
            "unsupported Bessel order {nu}; supported: 0, 1/2, 1, 3/2, 2, 5/2, 3"
        )));
    }
    let v2 = v2 as u32;

    if x == 0.0 {
        return Ok(if v2 == 0 { 1.0 } else { 0.0 });
    }

    let val = match v2 {
        // Integer orders: series below the cutoff, Miller above.
        0 | 2 | 4 | 6 => {
            if x <= SERIES_CUTOFF_INT {
                bessel_series(v2, x)
            } else {
                bessel_int_miller(v2 / 2, x)
            }
        }
        // J_{1/2} = sqrt(2/(πx)) sin x: no cancellation at any x.
        1 => (2.0 / (PI * x)).sqrt() * x.sin(),
        // J_{3/2} = sqrt(2/(πx)) (sin x / x - cos x): the parenthesis loses
        // digits for small x, so fall back to the series there.
        3 => {
            if x <= 1.0 {
                bessel_series(3, x)
            } else {
                (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
            }
        }
        // J_{5/2} = sqrt(2/(πx)) ((3/x² - 1) sin x - 3 cos x / x).
        5 => {
            if x <= 1.5 {
                bessel_series(5, x)
            } else {
                (2.0 / (PI * x)).sqrt()
                    * ((3.0 / (x * x) - 1.0) * x.sin() - 3.0 * x.cos() / x)
            }
        }
        _ => unreachable!("order filtered above"),
    };
    Ok(val)
}

/// First positive zero of `J_ν` for a supported order.
///
/// Brackets the zero by marching from near the origin (where `J_ν > 0`),
/// then bisects, then polishes with a few secant steps for full precision.
pub fn bessel_first_root(nu: f64) -> Result<f64> {
    let f = |x: f64| bessel_j(nu, x).expect("order validated by caller");
    // Validate the order once up front so the closure can't fail.
    bessel_j(nu, 1.0)?;

    // March in steps of 0.1; the first zero of every supported order lies
    // well below 7 (it grows roughly like ν + 1.86 ν^{1/3} + ...).
    let step = 0.1;
    let mut a = 0.05;
    let mut fa = f(a);
    let mut bracket = None;
    for i in 1..200 {
        let b = 0.05 + step * i as f64;
        let fb = f(b);
        if fa > 0.0 && fb <= 0.0 {
            bracket = Some((a, b, fa, fb));
            break;
        }
        a = b;
        fa = fb;
    }
    let (mut a, mut b, mut fa, mut fb) = bracket.ok_or_else(|| {
        Error::NoConvergence(format!("no sign change found for J_{nu} in (0, 20)"))
    })?;

    // Bisection: robust contraction to ~1e-9.
    for _ in 0..35 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm > 0.0 {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }

    // Secant polish: quadratic convergence from an already-tight bracket.
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..8 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x2);
        if (x1 - x0).abs() < 1e-15 * x1.abs() {
            break;
        }
    }
    Ok(x1)
}

/// Geometry of a supported domain.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// Unit disk in the plane, treated with full angular resolution.
    Disk2D,
    /// Unit ball in `R^n`, restricted to radially symmetric data.
    BallRadial { n: u32 },
    /// Rectangle `(0, a) × (0, b)`.
    Rect2D { a: f64, b: f64 },
    /// Box `(0, a₁) × … × (0, aₙ)` (closed-form work only; not meshed).
    RectNd { dims: Vec<f64> },
}

impl DomainSpec {
    /// Space dimension.
    pub fn dim(&self) -> u32 {
        match self {
            DomainSpec::Disk2D => 2,
            DomainSpec::BallRadial { n } => *n,
            DomainSpec::Rect2D { .. } => 2,
            DomainSpec::RectNd { dims } => dims.len() as u32,
        }
    }

    /// Lebesgue measure (area, volume, ...) of the domain.
    pub fn measure(&self) -> f64 {
        match self {
            DomainSpec::Disk2D => PI,
            // Volume of the unit n-ball is ω_n / n with ω_n = |S^{n-1}|.
            DomainSpec::BallRadial { n } => omega_n(*n) / *n as f64,
            DomainSpec::Rect2D { a, b } => a * b,
            DomainSpec::RectNd { dims } => dims.iter().product(),
        }
    }

    /// True when the eigenfunction depends only on `|x|`.
    pub fn is_radial(&self) -> bool {
        matches!(self, DomainSpec::Disk2D | DomainSpec::BallRadial { .. })
    }

    fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Disk2D => Ok(()),
            DomainSpec::BallRadial { n } => {
                if (2..=5).contains(n) {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "radial balls supported for n = 2..=5, got n = {n}"
                    )))
                }
            }
            DomainSpec::Rect2D { a, b } => {
                if *a > 0.0 && *b > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "rectangle sides must be positive, got {a} x {b}"
                    )))
                }
            }
            DomainSpec::RectNd { dims } => {
                if dims.len() < 2 {
                    return Err(Error::InvalidArgument(
                        "boxes need at least two sides".into(),
                    ));
                }
                if dims.iter().all(|&a| a > 0.0) {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument("box sides must be positive".into()))
                }
            }
        }
    }
}

/// Principal Dirichlet eigendata of `-Δ` on a [`DomainSpec`], with enough
/// structure to evaluate `φ₁` and its radial derivatives anywhere.
///
/// `φ₁` is normalized in `L²(Ω)` and positive; `phi1_peak` is its maximum
/// (attained at the center), which acts as the phase velocity `d(ξ₁ φ₁)/dξ₁`
/// at the peak in all the oscillatory-integral work.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub domain: DomainSpec,
    /// Principal eigenvalue `λ₁`.
    pub lambda1: f64,
    /// Second eigenvalue `λ₂` (the resonance gap `λ₂ - λ₁` controls
    /// conditioning of the projected linear solves).
    pub lambda2: f64,
    /// Radial domains: first zero `ν₁` of `J_ν`, so `λ₁ = ν₁²`.
    pub nu1: Option<f64>,
    /// Maximum of `φ₁` (at the center of the domain).
    pub phi1_peak: f64,
    /// Radial domains: Bessel order `ν = n/2 - 1`.
    bessel_order: Option<f64>,
    /// Radial domains: coefficient `c` in `φ₁(r) = c r^{-ν} J_ν(ν₁ r)`.
    radial_coeff: Option<f64>,
}

/// Below this radius the radial eigenfunction switches to its even Taylor
/// expansion, avoiding `r^{-ν}` cancellation on the axis.
const AXIS_SWITCH: f64 = 1e-4;

impl Eigenpair {
    /// Compute the eigenpair for a domain.
    pub fn new(domain: DomainSpec) -> Result<Self> {
        domain.validate()?;
        match &domain {
            DomainSpec::Disk2D => Self::ball(domain.clone(), 2),
            DomainSpec::BallRadial { n } => Self::ball(domain.clone(), *n),
            DomainSpec::Rect2D { a, b } => Self::boxed(domain.clone(), &[*a, *b]),
            DomainSpec::RectNd { dims } => {
                let d = dims.clone();
                Self::boxed(domain.clone(), &d)
            }
        }
    }

    fn ball(domain: DomainSpec, n: u32) -> Result<Self> {
        let nu = n as f64 / 2.0 - 1.0;
        let nu1 = bessel_first_root(nu)?;
        let lambda1 = nu1 * nu1;
        // λ₂ belongs to the first angular mode: order ν + 1 = n/2.
        let root2 = bessel_first_root(nu + 1.0)?;
        let lambda2 = root2 * root2;

        // Normalize: ω_n c² ∫₀¹ (r^{-ν} J_ν(ν₁ r))² r^{n-1} dr = 1.  With
        // n - 1 - 2ν = 1 the integrand is J_ν²(ν₁ r) r, and the closed form
        // ∫₀¹ J_ν²(ν₁ r) r dr = J_{ν+1}(ν₁)² / 2 applies for every order.
        let j_next = bessel_j(nu + 1.0, nu1)?;
        let coeff = (2.0 / (omega_n(n) * j_next * j_next)).sqrt();

        // φ₁(0) = c lim r^{-ν} J_ν(ν₁ r) = c (ν₁/2)^ν / Γ(ν+1).
        let phi1_peak = coeff * (0.5 * nu1).powf(nu) / gamma_half((2.0 * nu) as u32 + 2);

        Ok(Eigenpair {
            domain,
            lambda1,
            lambda2,
            nu1: Some(nu1),
            phi1_peak,
            bessel_order: Some(nu),
            radial_coeff: Some(coeff),
        })
    }

    fn boxed(domain: DomainSpec, dims: &[f64]) -> Result<Self> {
        let lambda1: f64 = dims.iter().map(|a| (PI / a).powi(2)).sum();
        // λ₂ doubles the frequency along one axis; the cheapest axis wins.
        let lambda2 = dims
            .iter()
            .map(|a| lambda1 + 3.0 * (PI / a).powi(2))
            .fold(f64::INFINITY, f64::min);
        let volume: f64 = dims.iter().product();
        let phi1_peak = 2_f64.powf(dims.len() as f64 / 2.0) / volume.sqrt();
        Ok(Eigenpair {
            domain,
            lambda1,
            lambda2,
            nu1: None,
            phi1_peak,
            bessel_order: None,
            radial_coeff: None,
        })
    }

    /// Normalization constant `c₀` of the radial profile
    /// `φ₁(r) = c₀ r^{-ν} J_ν(ν₁ r)` (`None` on boxes).  For the disk this
    /// coincides with `phi1_peak`; in higher dimensions it does not.
    pub fn c0(&self) -> Option<f64> {
        self.radial_coeff
    }

    /// `φ₁` at a point given by coordinates (length must match `dim()`).
    /// Radial domains accept either full coordinates or a single radius.
    pub fn phi1_point(&self, x: &[f64]) -> f64 {
        match &self.domain {
            DomainSpec::Disk2D | DomainSpec::BallRadial { .. } => {
                let r = if x.len() == 1 {
                    x[0].abs()
                } else {
                    x.iter().map(|c| c * c).sum::<f64>().sqrt()
                };
                self.phi1_radial(r)
            }
            DomainSpec::Rect2D { a, b } => {
                debug_assert_eq!(x.len(), 2);
                self.phi1_peak * (PI * x[0] / a).sin() * (PI * x[1] / b).sin()
            }
            DomainSpec::RectNd { dims } => {
                debug_assert_eq!(x.len(), dims.len());
                self.phi1_peak
                    * x.iter()
                        .zip(dims)
                        .map(|(xi, ai)| (PI * xi / ai).sin())
                        .product::<f64>()
            }
        }
    }

    /// Radial profile `φ₁(r)` (radial domains only).
    pub fn phi1_radial(&self, r: f64) -> f64 {
        let nu = self.bessel_order.expect("radial profile on a radial domain");
        let c = self.radial_coeff.unwrap();
        let nu1 = self.nu1.unwrap();
        if r < AXIS_SWITCH {
            // Even Taylor expansion from Δφ = -λφ:
            // φ(r) = φ(0) (1 - λ r²/(2n) + λ² r⁴/(8n(n+2))).
            let n = self.domain.dim() as f64;
            let l = self.lambda1;
            return self.phi1_peak
                * (1.0 - l * r * r / (2.0 * n) + l * l * r.powi(4) / (8.0 * n * (n + 2.0)));
        }
        c * r.powf(-nu) * bessel_j(nu, nu1 * r).expect("order is supported")
    }

    /// Radial derivative `φ₁'(r)`, from `(x^{-ν} J_ν)' = -x^{-ν} J_{ν+1}`.
    pub fn dphi1_radial(&self, r: f64) -> f64 {
        let nu = self.bessel_order.expect("radial derivative on a radial domain");
        let c = self.radial_coeff.unwrap();
        let nu1 = self.nu1.unwrap();
        if r < AXIS_SWITCH {
            let n = self.domain.dim() as f64;
            let l = self.lambda1;
            return self.phi1_peak * (-l * r / n + l * l * r.powi(3) / (2.0 * n * (n + 2.0)));
        }
        -c * nu1 * r.powf(-nu) * bessel_j(nu + 1.0, nu1 * r).expect("order is supported")
    }

    /// `φ₁''(0)`: with radial symmetry, `Δφ = -λφ` forces
    /// `φ''(0) = -λ₁ φ₁(0)/n`.  This curvature is the second-derivative
    /// input to stationary-phase contributions from the center.
    pub fn d2phi1_origin(&self) -> f64 {
        let n = self.domain.dim() as f64;
        -self.lambda1 * self.phi1_peak / n
    }
}

/// Eigenpair of the unit ball in `R^n` restricted to radial data
/// (`n = 2` is the disk).  Shorthand for [`Eigenpair::new`].
pub fn ball_eigenpair(n: u32) -> Result<Eigenpair> {
    if n == 2 {
        Eigenpair::new(DomainSpec::Disk2D)
    } else {
        Eigenpair::new(DomainSpec::BallRadial { n })
    }
}

/// Eigenpair of the box `(0, a₁) × … × (0, aₙ)`.  Two sides build a
/// [`DomainSpec::Rect2D`]; more build a [`DomainSpec::RectNd`].
pub fn rect_eigenpair(dims: &[f64]) -> Result<Eigenpair> {
    match dims {
        [a, b] => Eigenpair::new(DomainSpec::Rect2D { a: *a, b: *b }),
        _ => Eigenpair::new(DomainSpec::RectNd {
            dims: dims.to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{adaptive, Tolerance};
    use proptest::prelude::*;

    // ------------------------------------------------------------------
    // Independent oracle: J₀(x) = (1/π) ∫₀^π cos(x sin θ) dθ, evaluated by
    // composite Simpson.  Shares no code with the production evaluator.
    // ------------------------------------------------------------------
    fn j0_oracle(x: f64) -> f64 {
        let n = 20_000; // even
        let h = PI / n as f64;
        let f = |t: f64| (x * t.sin()).cos();
        let mut sum = f(0.0) + f(PI);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(h * i as f64);
        }
        sum * h / (3.0 * PI)
    }

    #[test]
    fn j0_matches_integral_representation() {
        // Crosses both evaluation branches (series and Miller).
        for &x in &[0.0, 0.3, 1.0, 2.404, 5.0, 11.9, 12.1, 17.3, 25.0, 40.0] {
            let got = bessel_j(0.0, x).unwrap();
            let want = j0_oracle(x);
            assert!(
                (got - want).abs() < 1e-12,
                "J0({x}): got {got}, oracle {want}"
            );
        }
    }

    #[test]
    fn j1_matches_integral_representation() {
        // J₁(x) = (1/π) ∫₀^π cos(θ - x sin θ) dθ.
        let j1_oracle = |x: f64| {
            let n = 20_000;
            let h = PI / n as f64;
            let f = |t: f64| (t - x * t.sin()).cos();
            let mut sum = f(0.0) + f(PI);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                sum += w * f(h * i as f64);
            }
            sum * h / (3.0 * PI)
        };
        for &x in &[0.5, 2.0, 3.83, 8.0, 14.0, 30.0] {
            let got = bessel_j(1.0, x).unwrap();
            let want = j1_oracle(x);
            assert!(
                (got - want).abs() < 1e-12,
                "J1({x}): got {got}, oracle {want}"
            );
        }
    }

    #[test]
    fn half_integer_orders_match_closed_forms_through_series_region() {
        // In the small-x region the implementation uses the power series;
        // compare against the spherical closed forms evaluated in extended
        // care (the cancellation there costs the closed form ~1e-12 absolute,
        // which is exactly why the series is used — so compare loosely).
        for i in 1..=20 {
            let x = 0.05 * i as f64;
            let cf32 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            let got32 = bessel_j(1.5, x).unwrap();
            assert!((got32 - cf32).abs() < 1e-11, "J_3/2({x})");
            let cf52 =
                (2.0 / (PI * x)).sqrt() * ((3.0 / (x * x) - 1.0) * x.sin() - 3.0 * x.cos() / x);
            let got52 = bessel_j(2.5, x).unwrap();
            assert!((got52 - cf52).abs() < 1e-10, "J_5/2({x})");
        }
    }

    #[test]
    fn first_roots_match_frozen_references() {
        // Classical zeros, frozen to full double precision.
        let cases = [
            (0.0, 2.404_825_557_695_773),
            (1.0, 3.831_705_970_207_512),
            (0.5, PI),
            (1.5, 4.493_409_457_909_064),
            (2.0, 5.135_622_301_840_683),
            (2.5, 5.763_459_196_894_550),
        ];
        for (nu, want) in cases {
            let got = bessel_first_root(nu).unwrap();
            assert!(
                (got - want).abs() < 1e-11,
                "first zero of J_{nu}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn j1_value_at_first_j0_zero() {
        // J₁ at the first zero of J₀ — the disk normalization constant.
        let nu1 = bessel_first_root(0.0).unwrap();
        let j1 = bessel_j(1.0, nu1).unwrap();
        assert!((j1 - 0.519_147_497_289_466_9).abs() < 1e-12);
    }

    #[test]
    fn gamma_half_small_values() {
        let sp = PI.sqrt();
        assert!((gamma_half(1) - sp).abs() < 1e-15); // Γ(1/2)
        assert!((gamma_half(2) - 1.0).abs() < 1e-15); // Γ(1)
        assert!((gamma_half(3) - sp / 2.0).abs() < 1e-15); // Γ(3/2)
        assert!((gamma_half(4) - 1.0).abs() < 1e-15); // Γ(2)
        assert!((gamma_half(5) - 0.75 * sp).abs() < 1e-15); // Γ(5/2)
        assert!((gamma_half(6) - 2.0).abs() < 1e-15); // Γ(3)
        assert!((gamma_half(7) - 15.0 * sp / 8.0).abs() < 1e-14); // Γ(7/2)
    }

    #[test]
    fn unit_sphere_areas() {
        assert!((omega_n(2) - 2.0 * PI).abs() < 1e-14);
        assert!((omega_n(3) - 4.0 * PI).abs() < 1e-14);
        assert!((omega_n(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((omega_n(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_negative_argument_and_unsupported_order() {
        assert!(bessel_j(0.0, -1.0).is_err());
        assert!(bessel_j(0.25, 1.0).is_err());
        assert!(bessel_j(4.0, 1.0).is_err());
    }

    #[test]
    fn disk_eigenpair_frozen_values() {
        let e = Eigenpair::new(DomainSpec::Disk2D).unwrap();
        assert!((e.lambda1 - 5.783_185_962_946_785).abs() < 1e-9);
        // λ₂ is the square of the first J₁ zero.
        assert!((e.lambda2 - 3.831_705_970_207_512_f64.powi(2)).abs() < 1e-9);
        // Peak value 1/(√π J₁(ν₁)).
        assert!((e.phi1_peak - 1.086_761_6).abs() < 1e-6);
        // Spectral gap.
        assert!((e.lambda2 - e.lambda1 - 8.899).abs() < 5e-4);
    }

    #[test]
    fn ball3_eigenpair_closed_form() {
        // n = 3: ν = 1/2, ν₁ = π, φ₁ = sin(πr)/(r √(2π)), peak √(π/2).
        let e = Eigenpair::new(DomainSpec::BallRadial { n: 3 }).unwrap();
        assert!((e.nu1.unwrap() - PI).abs() < 1e-11);
        assert!((e.lambda1 - PI * PI).abs() < 1e-10);
        assert!((e.phi1_peak - (PI / 2.0).sqrt()).abs() < 1e-11);
        for i in 1..10 {
            let r = 0.1 * i as f64;
            let closed = (PI * r).sin() / (r * (2.0 * PI).sqrt());
            assert!((e.phi1_radial(r) - closed).abs() < 1e-12, "r = {r}");
        }
        // φ₁''(0) = -λ₁ φ₁(0)/3 = -π^{5/2}/(3√2).
        let want = -PI.powf(2.5) / (3.0 * 2_f64.sqrt());
        assert!((e.d2phi1_origin() - want).abs() < 1e-10);
    }

    #[test]
    fn eigenfunctions_are_l2_normalized() {
        for n in 2..=5 {
            let e = Eigenpair::new(DomainSpec::BallRadial { n }).unwrap();
            let nn = n as f64;
            let integral = adaptive(
                &|r: f64| e.phi1_radial(r).powi(2) * r.powf(nn - 1.0),
                0.0,
                1.0,
                Tolerance::absolute(1e-12),
                200,
            )
            .unwrap();
            let norm = omega_n(n) * integral;
            assert!((norm - 1.0).abs() < 1e-10, "n = {n}: ||φ₁||² = {norm}");
        }
    }

    #[test]
    fn disk_j0_squared_moment() {
        // ∫₀¹ J₀²(ν₁ r) r dr = J₁(ν₁)²/2 ≈ 0.134757.
        let nu1 = bessel_first_root(0.0).unwrap();
        let integral = adaptive(
            &|r: f64| bessel_j(0.0, nu1 * r).unwrap().powi(2) * r,
            0.0,
            1.0,
            Tolerance::absolute(1e-13),
            200,
        )
        .unwrap();
        assert!((integral - 0.134_757_06).abs() < 1e-7);
        let j1 = bessel_j(1.0, nu1).unwrap();
        assert!((integral - j1 * j1 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn radial_profile_smooth_across_axis_switch() {
        // Straddle the Taylor/Bessel switch and verify the difference is
        // pure slope (no jump beyond roundoff once the genuine linear
        // variation is subtracted).
        for n in [2u32, 3, 5] {
            let e = Eigenpair::new(DomainSpec::BallRadial { n }).unwrap();
            let lo = AXIS_SWITCH * 0.999;
            let hi = AXIS_SWITCH * 1.001;
            let jump = e.phi1_radial(hi) - e.phi1_radial(lo);
            let slope_part = e.dphi1_radial(AXIS_SWITCH) * (hi - lo);
            assert!((jump - slope_part).abs() < 1e-12 * e.phi1_peak, "n = {n}");
            let djump = e.dphi1_radial(hi) - e.dphi1_radial(lo);
            let curv_part = e.d2phi1_origin() * (hi - lo);
            assert!((djump - curv_part).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn radial_derivative_matches_finite_differences() {
        let e = Eigenpair::new(DomainSpec::Disk2D).unwrap();
        for i in 1..=9 {
            let r = 0.1 * i as f64;
            let h = 1e-6;
            let fd = (e.phi1_radial(r + h) - e.phi1_radial(r - h)) / (2.0 * h);
            assert!(
                (e.dphi1_radial(r) - fd).abs() < 1e-8,
                "r = {r}: analytic {} vs fd {fd}",
                e.dphi1_radial(r)
            );
        }
    }

    #[test]
    fn rect_eigenpair_values() {
        let e = Eigenpair::new(DomainSpec::Rect2D { a: 1.0, b: 2.0 }).unwrap();
        assert!((e.lambda1 - PI * PI * 1.25).abs() < 1e-12);
        assert!((e.lambda2 - 2.0 * PI * PI).abs() < 1e-12);
        assert!((e.phi1_peak - 2_f64.sqrt()).abs() < 1e-13);
        // Peak attained at the center.
        assert!((e.phi1_point(&[0.5, 1.0]) - e.phi1_peak).abs() < 1e-13);
        // Dirichlet boundary.
        assert!(e.phi1_point(&[0.0, 0.7]).abs() < 1e-15);
    }

    #[test]
    fn rect_eigenfunction_l2_norm_by_tensor_quadrature() {
        let e = Eigenpair::new(DomainSpec::Rect2D { a: 1.0, b: 2.0 }).unwrap();
        // Separable: ∫ φ₁² = peak² ∫ sin² ∫ sin² = peak² (a/2)(b/2).
        let inner_x = adaptive(
            &|x: f64| (PI * x).sin().powi(2),
            0.0,
            1.0,
            Tolerance::absolute(1e-13),
            100,
        )
        .unwrap();
        let inner_y = adaptive(
            &|y: f64| (PI * y / 2.0).sin().powi(2),
            0.0,
            2.0,
            Tolerance::absolute(1e-13),
            100,
        )
        .unwrap();
        let norm = e.phi1_peak.powi(2) * inner_x * inner_y;
        assert!((norm - 1.0).abs() < 1e-11);
    }

    #[test]
    fn domain_measures() {
        assert!((DomainSpec::Disk2D.measure() - PI).abs() < 1e-14);
        assert!((DomainSpec::BallRadial { n: 3 }.measure() - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((DomainSpec::Rect2D { a: 1.0, b: 2.0 }.measure() - 2.0).abs() < 1e-15);
        let boxy = DomainSpec::RectNd { dims: vec![1.0, 2.0, 3.0] };
        assert!((boxy.measure() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn domain_validation_rejects_bad_setups() {
        assert!(Eigenpair::new(DomainSpec::BallRadial { n: 7 }).is_err());
        assert!(Eigenpair::new(DomainSpec::Rect2D { a: -1.0, b: 1.0 }).is_err());
        assert!(Eigenpair::new(DomainSpec::RectNd { dims: vec![1.0] }).is_err());
    }

    proptest! {
        /// Three-term recurrence J_{ν-1} + J_{ν+1} = (2ν/x) J_ν ties each
        /// supported order to its neighbors across both evaluation regimes.
        #[test]
        fn three_term_recurrence(x in 0.1_f64..15.0, idx in 0usize..3) {
            let nu = [1.0, 1.5, 2.0][idx];
            let below = bessel_j(nu - 1.0, x).unwrap();
            let here = bessel_j(nu, x).unwrap();
            let above = bessel_j(nu + 1.0, x).unwrap();
            let lhs = below + above;
            let rhs = 2.0 * nu / x * here;
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs().max(rhs.abs())));
        }

        /// The radial eigenfunction is positive inside and decreasing.
        #[test]
        fn phi1_positive_and_decreasing(r in 0.001_f64..0.999, n in 2u32..=5) {
            let e = Eigenpair::new(DomainSpec::BallRadial { n }).unwrap();
            prop_assert!(e.phi1_radial(r) > 0.0);
            prop_assert!(e.dphi1_radial(r) < 0.0);
        }
    }
}

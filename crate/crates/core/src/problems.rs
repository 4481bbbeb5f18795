//! Catalog of ready-made problem instances.
//!
//! A problem instance couples a domain with a nonlinearity `h` and a forcing
//! term `e ⊥ φ₁`.  Each nonlinearity carries its derivative `h'` (needed by
//! the Newton iteration) and, when an elementary closed form exists, an
//! antiderivative `H` (needed by the oscillatory-integral asymptotics).  The
//! catalog deliberately stores these as independent closures rather than
//! deriving one from another numerically, so that the finite-difference
//! consistency checks in [`validate`] are genuine cross-checks.
//!
//! Two structural facts about the catalog are worth spelling out:
//!
//! * Every forcing is orthogonal to `φ₁` *analytically* — by odd symmetry in
//!   a coordinate (`xy` on the disk, `(x-1/2)(y-1)` on the rectangle), by
//!   Bessel orthogonality (`J₀(j_{0,2} r)` against `J₀(ν₁ r)`), or by an
//!   explicit cancellation (`cos(πr)/r` against `sin(πr)/r` on the unit
//!   ball).  [`validate`] confirms the discrete counterpart.
//! * Nonlinearities given only on `[0, ∞)` are extended below zero either by
//!   the catalog itself (the square-root oscillation uses the zero extension)
//!   or by [`extend_h_negative`], which builds a `C²` Hermite blend on
//!   `[-1, 0]` and a constant beyond, then verifies by sampling that the
//!   extension keeps the slope below the resonance gap and stays sublinear.

use std::fmt;
use std::sync::Arc;

use crate::linsolve::{inner, Field, Mesh};
use crate::quad::{adaptive, Tolerance};
use crate::specfun::{bessel_j, omega_n, DomainSpec, Eigenpair};
use crate::{Error, Result};

/// Second positive zero of `J₀`, used by the disk forcing that is orthogonal
/// to `φ₁` through Bessel orthogonality.
const BESSEL_J0_SECOND_ZERO: f64 = 5.520078110286311;

/// Scalar evaluator shared across threads by the sweep drivers.
type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How `h(ξ₁ φ₁(x))` oscillates as the curve parameter `ξ₁` grows.
///
/// The oscillatory quadrature sizes its panels from the local phase rate, and
/// that rate depends on where the oscillation lives: directly in `u`, or only
/// in `ln(uᵅ + 1)`, which slows the phase down logarithmically and stretches
/// the spacing between sign changes of the solution curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OscillationKind {
    /// No oscillation at all (`h` constant or monotone).
    None,
    /// Phase proportional to `u`, as in `sin u` or `u sin u`.
    InU,
    /// Phase `ln(uᵅ + 1)`, as in `√u · sin(ln(u^{3/2} + 1))`.
    InLogPower { alpha: f64 },
}

/// A bounded (or at most sublinear) nonlinearity `h` with its analytic
/// derivative and, when available, an antiderivative.
#[derive(Clone)]
pub struct Nonlinearity {
    /// Stable identifier, usable from the command line.
    pub id: String,
    h_fn: Eval,
    dh_fn: Eval,
    big_h_fn: Option<Eval>,
    /// Growth exponent `p` with `h(u) = O(|u|^p)`; drives the expected
    /// envelope `|μ₁| ~ ξ₁^{p-1}` of the solution curve.
    pub growth_p: Option<f64>,
    /// Oscillation class of `h`; see [`OscillationKind`].
    pub oscillation: OscillationKind,
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nonlinearity")
            .field("id", &self.id)
            .field("has_big_h", &self.big_h_fn.is_some())
            .field("growth_p", &self.growth_p)
            .field("oscillation", &self.oscillation)
            .finish()
    }
}

impl Nonlinearity {
    /// Evaluate `h(u)`.
    pub fn h(&self, u: f64) -> f64 {
        (self.h_fn)(u)
    }

    /// Evaluate `h'(u)`.
    pub fn dh(&self, u: f64) -> f64 {
        (self.dh_fn)(u)
    }

    /// Evaluate the antiderivative `H(u)` when a closed form is available.
    /// `H` is *an* antiderivative — its constant is whatever makes the
    /// closed form tidy, not necessarily `H(0) = 0`.
    pub fn big_h(&self, u: f64) -> Option<f64> {
        self.big_h_fn.as_ref().map(|f| f(u))
    }

    /// Whether a closed-form antiderivative is stored.
    pub fn has_big_h(&self) -> bool {
        self.big_h_fn.is_some()
    }

    /// Assemble a nonlinearity from raw closures.  The catalog constructors
    /// below should cover normal use; this is the escape hatch for custom
    /// experiments (and for [`extend_h_negative`]).
    pub fn custom(
        id: impl Into<String>,
        h: Eval,
        dh: Eval,
        big_h: Option<Eval>,
        growth_p: Option<f64>,
        oscillation: OscillationKind,
    ) -> Nonlinearity {
        Nonlinearity {
            id: id.into(),
            h_fn: h,
            dh_fn: dh,
            big_h_fn: big_h,
            growth_p,
            oscillation,
        }
    }

    /// `h(u) = u sin u`, the classical bounded-derivative-free example with
    /// linear growth.  `H(u) = sin u - u cos u`.
    pub fn u_sin_u() -> Nonlinearity {
        Nonlinearity {
            id: "u-sin-u".into(),
            h_fn: Arc::new(|u| u * u.sin()),
            dh_fn: Arc::new(|u| u.sin() + u * u.cos()),
            big_h_fn: Some(Arc::new(|u| u.sin() - u * u.cos())),
            growth_p: Some(1.0),
            oscillation: OscillationKind::InU,
        }
    }

    /// `h(u) = |u|^p sin u` for `p ∈ (0, 1]`: sublinear growth with the same
    /// oscillation as `u sin u`.  The absolute value makes the formula valid
    /// on the whole line (and makes `h` odd).  No elementary antiderivative.
    pub fn power_sin(p: f64) -> Result<Nonlinearity> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "power-sin exponent must lie in (0, 1], got {p}"
            )));
        }
        Ok(Nonlinearity {
            id: format!("power-sin-{p}"),
            h_fn: Arc::new(move |u| u.abs().powf(p) * u.sin()),
            dh_fn: Arc::new(move |u| {
                if u == 0.0 {
                    // p |u|^{p-1} sin u → 0 as u → 0 for p > 0, but the raw
                    // expression is ∞ · 0 at the origin.
                    0.0
                } else {
                    p * u.abs().powf(p - 1.0) * u.signum() * u.sin() + u.abs().powf(p) * u.cos()
                }
            }),
            big_h_fn: None,
            growth_p: Some(p),
            oscillation: OscillationKind::InU,
        })
    }

    /// `h(u) = sin u`: bounded, `H(u) = 1 - cos u`.
    pub fn sin_u() -> Nonlinearity {
        Nonlinearity {
            id: "sin-u".into(),
            h_fn: Arc::new(f64::sin),
            dh_fn: Arc::new(f64::cos),
            big_h_fn: Some(Arc::new(|u| 1.0 - u.cos())),
            growth_p: Some(0.0),
            oscillation: OscillationKind::InU,
        }
    }

    /// `h(u) = √u · sin(ln(u^{3/2} + 1))` for `u ≥ 0`, extended by zero below.
    ///
    /// The zero extension is `C¹` because `h(u) ≈ u²` near the origin.  The
    /// antiderivative has the closed form
    /// `H(u) = (√2/3) (u^{3/2} + 1) sin(ln(u^{3/2} + 1) - π/4)`,
    /// whose value at zero is `-1/3`; below zero `H` stays at that constant.
    /// Sampling shows `h' < 1` on `[0, ∞)`, comfortably below the resonance
    /// gap of every supported domain.
    pub fn sqrt_sin_log() -> Nonlinearity {
        Nonlinearity {
            id: "sqrt-sin-log".into(),
            h_fn: Arc::new(|u| {
                if u <= 0.0 {
                    0.0
                } else {
                    u.sqrt() * u.powf(1.5).ln_1p().sin()
                }
            }),
            dh_fn: Arc::new(|u| {
                if u <= 0.0 {
                    0.0
                } else {
                    let w = u.powf(1.5);
                    let l = w.ln_1p();
                    l.sin() / (2.0 * u.sqrt()) + 1.5 * u * l.cos() / (w + 1.0)
                }
            }),
            big_h_fn: Some(Arc::new(|u| {
                if u <= 0.0 {
                    -1.0 / 3.0
                } else {
                    let w = u.powf(1.5);
                    let l = w.ln_1p();
                    2.0_f64.sqrt() / 3.0 * (w + 1.0) * (l - std::f64::consts::FRAC_PI_4).sin()
                }
            })),
            growth_p: Some(0.5),
            oscillation: OscillationKind::InLogPower { alpha: 1.5 },
        }
    }

    /// `h(u) = u sin(ln(u² + 1))`: odd, smooth on the whole line, linear
    /// growth with logarithmic phase.  `H(u) = (u²+1)(sin L - cos L)/4` with
    /// `L = ln(u² + 1)`.
    pub fn u_sin_log_sq() -> Nonlinearity {
        Nonlinearity {
            id: "u-sin-log-sq".into(),
            h_fn: Arc::new(|u| u * (u * u).ln_1p().sin()),
            dh_fn: Arc::new(|u| {
                let l = (u * u).ln_1p();
                l.sin() + 2.0 * u * u * l.cos() / (u * u + 1.0)
            }),
            big_h_fn: Some(Arc::new(|u| {
                let l = (u * u).ln_1p();
                0.25 * (u * u + 1.0) * (l.sin() - l.cos())
            })),
            growth_p: Some(1.0),
            oscillation: OscillationKind::InLogPower { alpha: 2.0 },
        }
    }

    /// `h(u) = sin(ln(u + 1))` for `u ≥ 0`, extended oddly below: bounded
    /// with the slowest phase in the catalog.  The odd extension is `C¹`
    /// (`h'(0) = 1` from both sides).  `H(u) = (|u|+1)(sin L - cos L)/2` with
    /// `L = ln(|u| + 1)` — even, since `h` is odd.
    pub fn sin_log() -> Nonlinearity {
        Nonlinearity {
            id: "sin-log".into(),
            h_fn: Arc::new(|u| u.signum() * u.abs().ln_1p().sin()),
            dh_fn: Arc::new(|u| {
                let a = u.abs();
                a.ln_1p().cos() / (a + 1.0)
            }),
            big_h_fn: Some(Arc::new(|u| {
                let a = u.abs();
                let l = a.ln_1p();
                0.5 * (a + 1.0) * (l.sin() - l.cos())
            })),
            growth_p: Some(0.0),
            oscillation: OscillationKind::InLogPower { alpha: 1.0 },
        }
    }

    /// `h ≡ 0`: the exactly linear resonant problem, for which the solution
    /// curve is identically `μ₁ = 0`.
    pub fn zero() -> Nonlinearity {
        Nonlinearity {
            id: "zero".into(),
            h_fn: Arc::new(|_| 0.0),
            dh_fn: Arc::new(|_| 0.0),
            big_h_fn: Some(Arc::new(|_| 0.0)),
            growth_p: Some(0.0),
            oscillation: OscillationKind::None,
        }
    }

    /// Look up a catalog nonlinearity by its identifier.  `power-sin-{p}`
    /// accepts any exponent in `(0, 1]`, e.g. `power-sin-0.5`.
    pub fn builtin(id: &str) -> Result<Nonlinearity> {
        match id {
            "u-sin-u" => Ok(Self::u_sin_u()),
            "sin-u" => Ok(Self::sin_u()),
            "sqrt-sin-log" => Ok(Self::sqrt_sin_log()),
            "u-sin-log-sq" => Ok(Self::u_sin_log_sq()),
            "sin-log" => Ok(Self::sin_log()),
            "zero" => Ok(Self::zero()),
            _ => {
                if let Some(rest) = id.strip_prefix("power-sin-") {
                    let p: f64 = rest.parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad power-sin exponent in id {id:?}"))
                    })?;
                    Self::power_sin(p)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "unknown nonlinearity id {id:?}"
                    )))
                }
            }
        }
    }
}

/// A forcing term `e` with `∫ e φ₁ = 0`.
///
/// The evaluator takes full coordinates (`[x, y]` on two-dimensional domains)
/// or a bare radius `[r]` on radial ones; radially symmetric forcings accept
/// both.  `singular_at_origin` marks forcings like `cos(πr)/r` whose pointwise
/// values blow up at the center even though every integral of interest is
/// finite; [`sample_forcing`] replaces the center value by extrapolation.
#[derive(Clone)]
pub struct Forcing {
    /// Stable identifier.
    pub id: String,
    /// Domain the forcing belongs to (its orthogonality to `φ₁` is specific
    /// to that domain's eigenfunction).
    pub domain: DomainSpec,
    eval_fn: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    /// Whether `e` depends on the radius alone.
    pub is_radial: bool,
    /// Whether the pointwise value at `r = 0` is undefined.
    pub singular_at_origin: bool,
}

impl fmt::Debug for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Forcing")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("is_radial", &self.is_radial)
            .field("singular_at_origin", &self.singular_at_origin)
            .finish()
    }
}

impl Forcing {
    /// Evaluate `e` at the given coordinates.
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval_fn)(x)
    }

    /// `e(x, y) = x y` on the unit disk — odd in each coordinate, hence
    /// orthogonal to the radial `φ₁`.
    pub fn xy() -> Forcing {
        Forcing {
            id: "xy".into(),
            domain: DomainSpec::Disk2D,
            eval_fn: Arc::new(|x| x[0] * x[1]),
            is_radial: false,
            singular_at_origin: false,
        }
    }

    /// `e(x, y) = x²y - 3xy⁴` on the unit disk — each monomial is odd in one
    /// coordinate, so the whole expression is orthogonal to `φ₁`.
    pub fn disk_poly() -> Forcing {
        Forcing {
            id: "x2y-3xy4".into(),
            domain: DomainSpec::Disk2D,
            eval_fn: Arc::new(|x| {
                let (a, b) = (x[0], x[1]);
                a * a * b - 3.0 * a * b.powi(4)
            }),
            is_radial: false,
            singular_at_origin: false,
        }
    }

    /// `e(x, y) = (x - 1/2)(y - 1)` on `(0,1) × (0,2)` — odd about the center
    /// of each side while `φ₁` is even, hence orthogonal.
    pub fn rect_mixed() -> Forcing {
        Forcing {
            id: "rect-mixed".into(),
            domain: DomainSpec::Rect2D { a: 1.0, b: 2.0 },
            eval_fn: Arc::new(|x| (x[0] - 0.5) * (x[1] - 1.0)),
            is_radial: false,
            singular_at_origin: false,
        }
    }

    /// `e(r) = cos(πr)/r` on the unit ball in `ℝ³`.  Against
    /// `φ₁ ∝ sin(πr)/r` the weighted integrand is `cos(πr) sin(πr) r · const`,
    /// which integrates to zero over `[0, 1]` — the `1/r` singularity
    /// disappears under the volume weight `r²`.
    pub fn cos_pi_r_over_r() -> Forcing {
        Forcing {
            id: "cos-pi-r-over-r".into(),
            domain: DomainSpec::BallRadial { n: 3 },
            eval_fn: Arc::new(|x| {
                let r = radius_of(x);
                if r == 0.0 {
                    f64::INFINITY
                } else {
                    (std::f64::consts::PI * r).cos() / r
                }
            }),
            is_radial: true,
            singular_at_origin: true,
        }
    }

    /// `e(r) = J₀(j_{0,2} r)` on the disk — orthogonal to `φ₁ ∝ J₀(ν₁ r)` by
    /// the orthogonality of Bessel functions with distinct zeros.
    pub fn bessel_second() -> Forcing {
        Forcing {
            id: "bessel-j0-second".into(),
            domain: DomainSpec::BallRadial { n: 2 },
            eval_fn: Arc::new(|x| {
                let r = radius_of(x);
                bessel_j(0.0, BESSEL_J0_SECOND_ZERO * r).unwrap_or(f64::NAN)
            }),
            is_radial: true,
            singular_at_origin: false,
        }
    }

    /// `e ≡ 0` on the given domain.
    pub fn zero(domain: DomainSpec) -> Forcing {
        let is_radial = domain.is_radial();
        Forcing {
            id: "zero".into(),
            domain,
            eval_fn: Arc::new(|_| 0.0),
            is_radial,
            singular_at_origin: false,
        }
    }
}

/// Radius from either a bare `[r]` or full coordinates.
fn radius_of(x: &[f64]) -> f64 {
    match x.len() {
        1 => x[0].abs(),
        _ => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
    }
}

/// Sample a forcing onto a mesh.
///
/// Radially symmetric forcings are sampled through the radius so the discrete
/// field inherits the symmetry exactly.  For a forcing singular at the origin
/// the center value is replaced by linear extrapolation from the first ring,
/// `e₀ = 2 e(r₁) - e(2 r₁)` — a regularization choice, not an approximation
/// claim; the center carries a vanishing share of the quadrature weight as
/// the mesh refines.
pub fn sample_forcing(forcing: &Forcing, mesh: &Arc<Mesh>) -> Result<Field> {
    if forcing.domain != mesh.domain {
        return Err(Error::InvalidArgument(format!(
            "forcing {:?} belongs to {:?}, not to the mesh domain {:?}",
            forcing.id, forcing.domain, mesh.domain
        )));
    }
    if forcing.singular_at_origin {
        let r1 = mesh.radius(1).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "forcing {:?} is singular at the origin and needs a mesh with a radial coordinate",
                forcing.id
            ))
        })?;
        let center = 2.0 * forcing.eval(&[r1]) - forcing.eval(&[2.0 * r1]);
        let mut field = Field::zeros(mesh);
        for node in 0..mesh.node_count() {
            let r = mesh.radius(node).expect("radius exists on this mesh");
            field.values_mut()[node] = if r > 0.0 { forcing.eval(&[r]) } else { center };
        }
        Ok(field)
    } else if forcing.is_radial {
        Field::from_radial_fn(mesh, |r| forcing.eval(&[r]))
    } else {
        Ok(Field::from_fn(mesh, |x| forcing.eval(x)))
    }
}

/// A complete problem instance: domain, nonlinearity, forcing.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    /// Stable identifier.
    pub id: String,
    /// Domain of the boundary value problem.
    pub domain: DomainSpec,
    /// Perturbation `h`.
    pub nonlinearity: Nonlinearity,
    /// Forcing term `e ⊥ φ₁`.
    pub forcing: Forcing,
}

/// Identifiers accepted by [`ProblemSpec::builtin`].
pub const BUILTIN_PROBLEMS: [&str; 9] = [
    "disk-usinu-xy",
    "disk-sqrtusinu-poly",
    "disk-oscln-xy",
    "rect-usinu",
    "ball3-sinu",
    "ball2-sinu",
    "disk-zero-xy",
    "rect-zero",
    "ball3-zero",
];

impl ProblemSpec {
    /// Assemble a problem, checking that the forcing belongs to the domain.
    pub fn new(
        id: impl Into<String>,
        domain: DomainSpec,
        nonlinearity: Nonlinearity,
        forcing: Forcing,
    ) -> Result<ProblemSpec> {
        if forcing.domain != domain {
            return Err(Error::InvalidSetup(format!(
                "forcing {:?} is defined on {:?}, not on {:?}",
                forcing.id, forcing.domain, domain
            )));
        }
        Ok(ProblemSpec {
            id: id.into(),
            domain,
            nonlinearity,
            forcing,
        })
    }

    /// Look up one of the built-in instances listed in [`BUILTIN_PROBLEMS`].
    pub fn builtin(id: &str) -> Result<ProblemSpec> {
        let (domain, nonlinearity, forcing) = match id {
            "disk-usinu-xy" => (DomainSpec::Disk2D, Nonlinearity::u_sin_u(), Forcing::xy()),
            "disk-sqrtusinu-poly" => (
                DomainSpec::Disk2D,
                Nonlinearity::power_sin(0.5)?,
                Forcing::disk_poly(),
            ),
            "disk-oscln-xy" => (
                DomainSpec::Disk2D,
                Nonlinearity::sqrt_sin_log(),
                Forcing::xy(),
            ),
            "rect-usinu" => (
                DomainSpec::Rect2D { a: 1.0, b: 2.0 },
                Nonlinearity::u_sin_u(),
                Forcing::rect_mixed(),
            ),
            "ball3-sinu" => (
                DomainSpec::BallRadial { n: 3 },
                Nonlinearity::sin_u(),
                Forcing::cos_pi_r_over_r(),
            ),
            "ball2-sinu" => (
                DomainSpec::BallRadial { n: 2 },
                Nonlinearity::sin_u(),
                Forcing::bessel_second(),
            ),
            "disk-zero-xy" => (DomainSpec::Disk2D, Nonlinearity::zero(), Forcing::xy()),
            "rect-zero" => {
                let domain = DomainSpec::Rect2D { a: 1.0, b: 2.0 };
                (
                    domain.clone(),
                    Nonlinearity::zero(),
                    Forcing::zero(domain),
                )
            }
            "ball3-zero" => {
                let domain = DomainSpec::BallRadial { n: 3 };
                (
                    domain.clone(),
                    Nonlinearity::zero(),
                    Forcing::zero(domain),
                )
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown problem id {id:?}; known ids: {}",
                    BUILTIN_PROBLEMS.join(", ")
                )))
            }
        };
        ProblemSpec::new(id, domain, nonlinearity, forcing)
    }
}

/// Measured consistency defects for a problem instance; see [`validate`].
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// `|∫ e φ₁|` (continuous quadrature for radial forcings, mesh inner
    /// product otherwise).
    pub orthogonality_defect: f64,
    /// Largest deviation of the stored `h'` from a centered difference of the
    /// stored `h` over the sample grid.
    pub derivative_defect: f64,
    /// Largest deviation of a centered difference of the stored `H` from the
    /// stored `h`, when `H` is available.
    pub antiderivative_defect: Option<f64>,
}

/// Offset sample grid on `[-10, 10]` that avoids hitting `u = 0`, where
/// several catalog nonlinearities switch branches.
fn sample_grid() -> impl Iterator<Item = f64> {
    (0..100).map(|j| -10.0 + 20.0 * (j as f64 + 0.5) / 100.0)
}

/// Check a problem instance for internal consistency.
///
/// Three defects are measured.  The orthogonality defect `|∫ e φ₁|` is
/// evaluated by adaptive one-dimensional quadrature when the forcing is
/// radially symmetric (the weighted integrand `e(r) φ₁(r) r^{n-1}` is smooth
/// even for forcings singular at the origin, and the quadrature reaches far
/// below mesh accuracy), and by the mesh inner product otherwise (the grid
/// forcings in the catalog vanish there exactly, by symmetry of the node
/// layout).  The derivative and antiderivative defects compare the stored
/// closures against centered finite differences of each other on a fixed
/// sample grid.
pub fn validate(spec: &ProblemSpec, mesh: &Arc<Mesh>) -> Result<ValidationReport> {
    let pair = Eigenpair::new(spec.domain.clone())?;

    let orthogonality_defect = if spec.forcing.is_radial && spec.domain.is_radial() {
        let n = spec.domain.dim();
        let f = |r: f64| {
            if r == 0.0 {
                0.0
            } else {
                spec.forcing.eval(&[r]) * pair.phi1_radial(r) * r.powi(n as i32 - 1)
            }
        };
        let integral = adaptive(&f, 0.0, 1.0, Tolerance::absolute(1e-12), 4000)?;
        (omega_n(n) * integral).abs()
    } else {
        let e = sample_forcing(&spec.forcing, mesh)?;
        let phi = if spec.domain.is_radial() {
            Field::from_radial_fn(mesh, |r| pair.phi1_radial(r))?
        } else {
            Field::from_fn(mesh, |x| pair.phi1_point(x))
        };
        inner(&e, &phi)?.abs()
    };

    let nl = &spec.nonlinearity;
    let delta = 1e-5;
    let mut derivative_defect = 0.0_f64;
    let mut antiderivative_defect: Option<f64> = nl.has_big_h().then_some(0.0);
    for u in sample_grid() {
        let fd_h = (nl.h(u + delta) - nl.h(u - delta)) / (2.0 * delta);
        derivative_defect = derivative_defect.max((nl.dh(u) - fd_h).abs());
        if let Some(defect) = antiderivative_defect.as_mut() {
            let hp = nl.big_h(u + delta).expect("antiderivative present");
            let hm = nl.big_h(u - delta).expect("antiderivative present");
            *defect = defect.max(((hp - hm) / (2.0 * delta) - nl.h(u)).abs());
        }
    }

    Ok(ValidationReport {
        orthogonality_defect,
        derivative_defect,
        antiderivative_defect,
    })
}

// Quintic Hermite basis on [0, 1]: value/slope/curvature at the left end.
// The right-end basis functions are not needed because the blend shares its
// value with both endpoints and ends flat.
fn h10(s: f64) -> f64 {
    s - 6.0 * s.powi(3) + 8.0 * s.powi(4) - 3.0 * s.powi(5)
}
fn h20(s: f64) -> f64 {
    0.5 * s * s - 1.5 * s.powi(3) + 1.5 * s.powi(4) - 0.5 * s.powi(5)
}
fn dh10(s: f64) -> f64 {
    1.0 - 18.0 * s * s + 32.0 * s.powi(3) - 15.0 * s.powi(4)
}
fn dh20(s: f64) -> f64 {
    s - 4.5 * s * s + 6.0 * s.powi(3) - 2.5 * s.powi(4)
}
fn i10(s: f64) -> f64 {
    0.5 * s * s - 1.5 * s.powi(4) + 1.6 * s.powi(5) - 0.5 * s.powi(6)
}
fn i20(s: f64) -> f64 {
    s.powi(3) / 6.0 - 0.375 * s.powi(4) + 0.3 * s.powi(5) - s.powi(6) / 12.0
}

/// Extend a nonlinearity given on `[0, ∞)` to the whole line.
///
/// On `[-1, 0]` the extension is the quintic Hermite blend matching `h`,
/// `h'`, and `h''` at `0⁺` and flattening to the constant `h(0)` at `-1`
/// (value, slope, and curvature all continuous); below `-1` it stays at
/// `h(0)`.  The second derivative at `0⁺` is estimated by one-sided
/// differences of the stored `h'`.
///
/// Two conditions from the solvability theory are then verified by sampling
/// and cause an error when violated: the slope `h'` must stay below the
/// resonance gap `λ₂ - λ₁` of the unit disk (the reference domain for the
/// sign-changing analysis; the gap evaluates to about `8.899`), and `h` must
/// admit a sublinear bound `|h(u)| ≤ γ|u| + c` with `γ` below that same gap.
/// Nonlinearities with unbounded curvature at `0⁺` (such as `|u|^p sin u`
/// with `p < 1`) produce a steep blend and are rejected by the slope check.
pub fn extend_h_negative(base: &Nonlinearity) -> Result<Nonlinearity> {
    let h0 = base.h(0.0);
    let dh0 = base.dh(0.0);
    // One-sided O(δ²) estimate of h''(0⁺) from the analytic slope.
    let d = 1e-4;
    let d2h0 = (-3.0 * base.dh(0.0) + 4.0 * base.dh(d) - base.dh(2.0 * d)) / (2.0 * d);

    let base_h = base.h_fn.clone();
    let h_fn: Eval = Arc::new(move |u| {
        if u >= 0.0 {
            base_h(u)
        } else if u <= -1.0 {
            h0
        } else {
            let s = -u;
            h0 - dh0 * h10(s) + d2h0 * h20(s)
        }
    });

    let base_dh = base.dh_fn.clone();
    let dh_fn: Eval = Arc::new(move |u| {
        if u >= 0.0 {
            base_dh(u)
        } else if u <= -1.0 {
            0.0
        } else {
            let s = -u;
            // d/du of the blend; the inner derivative flips the sign.
            dh0 * dh10(s) - d2h0 * dh20(s)
        }
    });

    let big_h_fn: Option<Eval> = base.big_h_fn.clone().map(|base_big| {
        let big0 = base_big(0.0);
        // ∫₀ᵘ h for u in [-1, 0] via the antiderivatives of the basis, and
        // the matching linear continuation below -1.
        let big_at = move |s: f64| big0 - (h0 * s - dh0 * i10(s) + d2h0 * i20(s));
        let big_m1 = big_at(1.0);
        let f: Eval = Arc::new(move |u| {
            if u >= 0.0 {
                base_big(u)
            } else if u <= -1.0 {
                big_m1 + h0 * (u + 1.0)
            } else {
                big_at(-u)
            }
        });
        f
    });

    let extended = Nonlinearity {
        id: format!("{}-extended", base.id),
        h_fn,
        dh_fn,
        big_h_fn,
        growth_p: base.growth_p,
        oscillation: base.oscillation,
    };

    // Resonance gap of the unit disk, the reference bound for both checks.
    let disk = Eigenpair::new(DomainSpec::Disk2D)?;
    let gap = disk.lambda2 - disk.lambda1;

    // Sampled slope bound h' < λ₂ - λ₁: a log grid on the positive side, the
    // blend region, and the constant tail.
    let mut samples: Vec<f64> = Vec::new();
    for j in 0..400 {
        samples.push(10f64.powf(-6.0 + 12.0 * j as f64 / 399.0));
    }
    for j in 0..100 {
        samples.push(10.0 * (j as f64 + 0.5) / 100.0);
    }
    for j in 0..200 {
        samples.push(-(j as f64 + 0.5) / 200.0);
    }
    samples.extend_from_slice(&[-1.0, -1.5, -10.0, -1e3]);
    let mut max_slope = f64::NEG_INFINITY;
    for &u in &samples {
        max_slope = max_slope.max(extended.dh(u));
    }
    if !(max_slope < gap) {
        return Err(Error::InvalidSetup(format!(
            "extension of {:?} reaches slope {max_slope:.3}, at or above the resonance gap {gap:.3}",
            base.id
        )));
    }

    // Sampled sublinearity |h(u)| ≤ γ|u| + c with γ below the gap.
    let mut c = 1.0_f64;
    for &u in &samples {
        if u.abs() <= 1.0 {
            c = c.max(1.0 + extended.h(u).abs());
        }
    }
    let mut gamma_needed = 0.0_f64;
    for &u in &samples {
        if u.abs() > 1.0 {
            gamma_needed = gamma_needed.max((extended.h(u).abs() - c) / u.abs());
        }
    }
    if !(gamma_needed < gap) {
        return Err(Error::InvalidSetup(format!(
            "extension of {:?} needs sublinear slope {gamma_needed:.3}, at or above the resonance gap {gap:.3}",
            base.id
        )));
    }

    Ok(extended)
}

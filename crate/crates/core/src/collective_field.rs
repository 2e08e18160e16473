//! Collective-field upper bound `F_φ(v)`.
//!
//! The energy functional of a trial pair density `φ` is
//!
//! ```text
//! F_φ = (1/8) ∫ (∇φ)²/φ d³r + v ∫∫ φ(r) f(|r - r'|) φ(r') d³r d³r'
//! ```
//!
//! evaluated over the family `φ(r) ∝ exp(-(r/b)^q)`. With `s = r/b` every
//! term is a pure power of `b` times a coefficient depending on `q` only:
//! the kinetic coefficient has a Gamma closed form, the pair moments
//! `⟨|x - y|^p⟩ = C_p(q) b^p` are reduced to a double radial integral over the
//! two radii `t < s`. The scale `b` is then eliminated analytically and the
//! remaining one-dimensional problem in `q` is solved numerically.

use std::cell::RefCell;

use serde::Serialize;

use crate::closed_bounds::bound_report;
use crate::numerics::{
    gamma_unchecked, integrate_semi_infinite_n, integrate_singular_inner_n, minimize_with_prescan,
    MinimizeSpec, QuadratureSpec,
};
use crate::{BoundReport, Error, PotentialKind, Problem, Result};

/// Lower edge of the admissible powers; the one-dimensional kinetic integral
/// diverges for `q <= 1/2`.
const MIN_POWER: f64 = 0.5;
pub const DEFAULT_Q_BRACKET: (f64, f64) = (0.6, 12.0);
const PRESCAN_SAMPLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialDensity {
    b: f64,
    q: f64,
}

impl TrialDensity {
    pub fn new(b: f64, q: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::invalid("b", b, "scale must be positive"));
        }
        check_power(q)?;
        Ok(Self { b, q })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

fn check_power(q: f64) -> Result<()> {
    if q > MIN_POWER && q.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("q", q, "power must exceed 1/2"))
    }
}

fn require_three_dimensions(prob: &Problem) -> Result<()> {
    if prob.d() == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(prob.d()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiResult {
    pub energy: f64,
    pub q_opt: f64,
    pub b_opt: f64,
    pub converged: bool,
    /// The coarse scan in `q` saw more than one local minimum.
    pub multiple_minima: bool,
}

/// Kinetic coefficient `T(q)` with `⟨KE⟩ = T(q)/b²` in three dimensions.
pub fn kinetic_coeff(q: f64) -> Result<f64> {
    check_power(q)?;
    Ok(q * q * gamma_unchecked(2.0 + 1.0 / q) / (8.0 * gamma_unchecked(3.0 / q)))
}

/// `∫₀^∞ exp(-s^q) s² ds = Γ(3/q)/q`.
fn normalization(q: f64) -> f64 {
    gamma_unchecked(3.0 / q) / q
}

/// `s · exp(-s^q)` without overflow for large `s`.
#[inline]
fn radial_weight(s: f64, q: f64) -> f64 {
    (s.ln() - s.powf(q)).exp()
}

/// Angular average kernel for `|x - y|^p` with `|x| = s > t = |y|`, `u = s - t`,
/// scaled by `2st`: `((s+t)^a - (s-t)^a)/a` with `a = p + 2`, or the
/// logarithm `ln((s+t)/(s-t))` when `a = 0`.
#[inline]
fn pair_kernel(a: f64, s: f64, t: f64, u: f64) -> f64 {
    // odd-power expansions of the integer shifts: exact and free of cancellation
    if a == 4.0 {
        return 2.0 * s * t * (s * s + t * t);
    }
    if a == 3.0 {
        return 2.0 * s * s * t + (2.0 / 3.0) * t * t * t;
    }
    if a == 1.0 {
        return 2.0 * t;
    }
    let x = t / s;
    if a == 0.0 {
        if x < 0.5 {
            2.0 * x.atanh()
        } else {
            ((s + t) / u).ln()
        }
    } else if x < 0.5 {
        // (s-t)^a · expm1(a ln((s+t)/(s-t))) avoids cancellation for t << s
        u.powf(a) * (2.0 * a * x.atanh()).exp_m1() / a
    } else {
        ((s + t).powf(a) - u.powf(a)) / a
    }
}

/// Dimensionless pair moments `C_p(q)` for several exponents at once.
fn pair_moments<const K: usize>(
    q: f64,
    exponents: [f64; K],
    spec: &QuadratureSpec,
) -> Result<[f64; K]> {
    check_power(q)?;
    for &p in &exponents {
        if !(p > -3.0) {
            return Err(Error::invalid("p", p, "pair moment diverges for p <= -3"));
        }
    }
    let shifts = exponents.map(|p| p + 2.0);
    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);

    let outer = integrate_semi_infinite_n(
        |t| {
            let weight = radial_weight(t, q);
            if weight == 0.0 || inner_failure.borrow().is_some() {
                return [0.0; K];
            }
            let inner = integrate_singular_inner_n(
                |s, u| {
                    let ws = radial_weight(s, q);
                    if ws == 0.0 {
                        return [0.0; K];
                    }
                    shifts.map(|a| ws * pair_kernel(a, s, t, u))
                },
                t,
                spec,
            );
            match inner {
                Ok(values) => values.map(|v| weight * v),
                Err(e) => {
                    *inner_failure.borrow_mut() = Some(e);
                    [0.0; K]
                }
            }
        },
        spec,
    );
    if let Some(e) = inner_failure.into_inner() {
        return Err(e);
    }
    let norm = normalization(q);
    Ok(outer?.map(|v| v / (norm * norm)))
}

/// `C_p(q)` with `⟨|x - y|^p⟩ = C_p(q) b^p`, by double quadrature.
pub fn moment_coeff(q: f64, p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if p == -2.0 {
        return Err(Error::invalid(
            "p",
            p,
            "use inverse_square_coeff for p = -2",
        ));
    }
    pair_moments(q, [p], spec).map(|[c]| c)
}

/// `C₋₂(q)` with `⟨|x - y|⁻²⟩ = C₋₂(q)/b²`, through the logarithmic kernel.
pub fn inverse_square_coeff(q: f64, spec: &QuadratureSpec) -> Result<f64> {
    pair_moments(q, [-2.0], spec).map(|[c]| c)
}

/// Every coefficient the energy needs at a given power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentTable {
    pub q: f64,
    pub kinetic_t: f64,
    pub normalization_i: f64,
    pub moment_c2: f64,
    pub moment_c1: f64,
    pub moment_cm1: f64,
    pub moment_cm2: f64,
}

impl MomentTable {
    pub fn compute(q: f64, spec: &QuadratureSpec) -> Result<Self> {
        let [c2, c1, cm1, cm2] = pair_moments(q, [2.0, 1.0, -1.0, -2.0], spec)?;
        Ok(Self {
            q,
            kinetic_t: kinetic_coeff(q)?,
            normalization_i: normalization(q),
            moment_c2: c2,
            moment_c1: c1,
            moment_cm1: cm1,
            moment_cm2: cm2,
        })
    }

    /// Energy at scale `b`.
    pub fn energy(&self, prob: &Problem, b: f64) -> f64 {
        let (v, lambda, mu) = (prob.v(), prob.lambda(), prob.mu());
        let core = mu * self.moment_cm2 / (b * b);
        let attraction = match prob.kind() {
            PotentialKind::SoftCoreOscillator => lambda * self.moment_c2 * b * b,
            PotentialKind::Kratzer => -lambda * self.moment_cm1 / b,
        };
        self.kinetic_t / (b * b) + v * (attraction + core)
    }

    /// Optimal scale and the energy there.
    pub fn minimize_scale(&self, prob: &Problem) -> (f64, f64) {
        let (v, lambda, mu) = (prob.v(), prob.lambda(), prob.mu());
        // every 1/b² term
        let a = self.kinetic_t + v * mu * self.moment_cm2;
        match prob.kind() {
            PotentialKind::SoftCoreOscillator => {
                let b2 = v * lambda * self.moment_c2;
                ((a / b2).powf(0.25), 2.0 * (a * b2).sqrt())
            }
            PotentialKind::Kratzer => {
                let c = v * lambda * self.moment_cm1;
                (2.0 * a / c, -c * c / (4.0 * a))
            }
        }
    }
}

pub fn energy_at(prob: &Problem, density: &TrialDensity, spec: &QuadratureSpec) -> Result<f64> {
    require_three_dimensions(prob)?;
    let table = MomentTable::compute(density.q, spec)?;
    Ok(table.energy(prob, density.b))
}

/// Returns `(b_opt, energy)` at fixed power `q`.
pub fn minimize_scale(prob: &Problem, q: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    require_three_dimensions(prob)?;
    Ok(MomentTable::compute(q, spec)?.minimize_scale(prob))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeSettings {
    pub quadrature: QuadratureSpec,
    pub q_bracket: (f64, f64),
    pub q_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for OptimizeSettings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            q_bracket: DEFAULT_Q_BRACKET,
            q_tolerance: 1e-8,
            max_iterations: 200,
        }
    }
}

fn optimize_power<F>(energy: F, settings: &OptimizeSettings) -> Result<(f64, f64, bool, bool)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (low, high) = settings.q_bracket;
    check_power(low)?;
    let spec = MinimizeSpec::new(low, high, settings.q_tolerance, settings.max_iterations)?;
    let scan = minimize_with_prescan(energy, &spec, PRESCAN_SAMPLES)?;
    let m = scan.minimum;
    Ok((m.x, m.value, m.converged, scan.multiple_minima))
}

/// `F_φ(v)` optimized over both `b` and `q` with default settings.
pub fn optimize(prob: &Problem) -> Result<PhiResult> {
    optimize_with(prob, &OptimizeSettings::default())
}

pub fn optimize_with(prob: &Problem, settings: &OptimizeSettings) -> Result<PhiResult> {
    require_three_dimensions(prob)?;
    let quadrature = settings.quadrature;
    let energy = |q: f64| MomentTable::compute(q, &quadrature).map(|t| t.minimize_scale(prob).1);
    let (q_opt, _, converged, multiple_minima) = optimize_power(energy, settings)?;
    let (b_opt, energy) = MomentTable::compute(q_opt, &quadrature)?.minimize_scale(prob);
    Ok(PhiResult {
        energy,
        q_opt,
        b_opt,
        converged: converged && !multiple_minima,
        multiple_minima,
    })
}

/// Closed-form bounds plus the optimized collective-field bound.
pub fn bound_report_with_phi(prob: &Problem) -> Result<BoundReport> {
    let phi = optimize(prob)?;
    let mut report = bound_report(prob)?;
    report.upper_phi = Some(phi.energy);
    report.q_opt = Some(phi.q_opt);
    report.b_opt = Some(phi.b_opt);
    Ok(report)
}

/// One-dimensional δ-pair functional at power `q`: `K(q)/b² - v P(q)/b` with
/// `K = (1/8)∫(φ')²/φ · b²` and `P = ∫φ² · b` for normalized `φ`.
fn delta_coefficients(q: f64) -> (f64, f64) {
    let g = gamma_unchecked(1.0 + 1.0 / q);
    let kinetic = q * gamma_unchecked(2.0 - 1.0 / q) / (8.0 * g);
    let overlap = 2f64.powf(-1.0 / q) / (2.0 * g);
    (kinetic, overlap)
}

fn delta_scale_minimum(v: f64, q: f64) -> (f64, f64) {
    let (kinetic, overlap) = delta_coefficients(q);
    let c = v * overlap;
    (2.0 * kinetic / c, -c * c / (4.0 * kinetic))
}

fn check_coupling(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "v",
            v,
            "coupling must be positive and finite",
        ))
    }
}

/// Collective-field bound for the one-dimensional attractive δ pair
/// potential at fixed power `q` (scale optimized).
pub fn delta_1d_phi_at_power(v: f64, q: f64) -> Result<PhiResult> {
    check_coupling(v)?;
    check_power(q)?;
    let (b_opt, energy) = delta_scale_minimum(v, q);
    Ok(PhiResult {
        energy,
        q_opt: q,
        b_opt,
        converged: true,
        multiple_minima: false,
    })
}

/// Collective-field bound for the δ model optimized over `b` and `q`.
pub fn delta_1d_phi(v: f64) -> Result<PhiResult> {
    check_coupling(v)?;
    let settings = OptimizeSettings::default();
    let energy = |q: f64| Ok(delta_scale_minimum(v, q).1);
    let (q_opt, _, converged, multiple_minima) = optimize_power(energy, &settings)?;
    let (b_opt, energy) = delta_scale_minimum(v, q_opt);
    Ok(PhiResult {
        energy,
        q_opt,
        b_opt,
        converged: converged && !multiple_minima,
        multiple_minima,
    })
}

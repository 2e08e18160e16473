//! Exp-sinh quadrature on `(0, ∞)`.
//!
//! The substitution `x = exp(π/2 · sinh τ)` maps the half line onto the real
//! axis and makes the transformed integrand decay double-exponentially at
//! both ends, so integrable endpoint singularities at `x = 0` (logarithmic or
//! weak power law) and exponential decay at infinity are both handled by the
//! trapezoidal rule in `τ`. The step is halved until two successive estimates
//! agree.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

const TAU_LOW: f64 = -6.0;
const TAU_HIGH: f64 = 4.0;
// relative size below which a tail term is dropped
const TAIL_CUTOFF: f64 = 1e-18;
const MIN_LEVEL: u32 = 2;
// integrals this small are zero for every purpose here
const ABSOLUTE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    relative_tolerance: f64,
    max_refinement_levels: u32,
}

impl QuadratureSpec {
    pub fn new(relative_tolerance: f64, max_refinement_levels: u32) -> Result<Self> {
        if !(1e-14..=1e-4).contains(&relative_tolerance) {
            return Err(Error::invalid(
                "relative_tolerance",
                relative_tolerance,
                "must lie in [1e-14, 1e-4]",
            ));
        }
        if max_refinement_levels <= MIN_LEVEL {
            return Err(Error::invalid(
                "max_refinement_levels",
                max_refinement_levels as f64,
                "need more than two refinement levels",
            ));
        }
        Ok(Self {
            relative_tolerance,
            max_refinement_levels,
        })
    }

    pub fn relative_tolerance(&self) -> f64 {
        self.relative_tolerance
    }

    pub fn max_refinement_levels(&self) -> u32 {
        self.max_refinement_levels
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            max_refinement_levels: 12,
        }
    }
}

#[inline]
fn node(tau: f64) -> (f64, f64) {
    let x = (FRAC_PI_2 * tau.sinh()).exp();
    (x, FRAC_PI_2 * tau.cosh() * x)
}

/// Per-side walk state used to drop negligible tail nodes.
struct Tail {
    seen_nonzero: bool,
    quiet: u32,
    prev: f64,
}

impl Tail {
    fn new() -> Self {
        Self {
            seen_nonzero: false,
            quiet: 0,
            prev: f64::INFINITY,
        }
    }

    /// Records a term and reports whether the walk on this side may stop.
    fn finished<const K: usize>(&mut self, term: &[f64; K], scale: &[f64; K]) -> bool {
        let mut rel = 0.0f64;
        for i in 0..K {
            let mag = term[i].abs();
            if mag > 0.0 {
                self.seen_nonzero = true;
                rel = rel.max(if scale[i] > 0.0 {
                    mag / scale[i]
                } else {
                    f64::INFINITY
                });
            }
        }
        if self.seen_nonzero && rel <= TAIL_CUTOFF && rel <= self.prev {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.prev = rel;
        self.quiet >= 2
    }
}

/// Integrates a vector-valued `f` over `(0, ∞)`; all components share the
/// nodes and each must meet the tolerance.
pub fn integrate_semi_infinite_n<const K: usize, F>(f: F, spec: &QuadratureSpec) -> Result<[f64; K]>
where
    F: Fn(f64) -> [f64; K],
{
    let mut estimate = [0.0; K];
    let mut abs_estimate = [0.0; K];
    let mut previous = [f64::NAN; K];
    let mut h = 1.0f64;

    for level in 0..=spec.max_refinement_levels {
        let mut sum = [0.0; K];
        let mut abs_sum = [0.0; K];
        // current scale used to judge tails; the coarser level is a good proxy
        let mut scale = abs_estimate;

        let eval = |tau: f64, sum: &mut [f64; K], abs_sum: &mut [f64; K]| -> Result<[f64; K]> {
            let (x, w) = node(tau);
            let values = f(x);
            let mut term = [0.0; K];
            for i in 0..K {
                if !values[i].is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        x,
                        value: values[i],
                    });
                }
                term[i] = w * values[i];
                sum[i] += term[i];
                abs_sum[i] += term[i].abs();
            }
            Ok(term)
        };

        let (first, step) = if level == 0 { (1i64, 1i64) } else { (1, 2) };
        if level == 0 {
            eval(0.0, &mut sum, &mut abs_sum)?;
            scale = abs_sum;
        }

        for direction in [1.0f64, -1.0] {
            let limit = if direction > 0.0 { TAU_HIGH } else { -TAU_LOW };
            let mut tail = Tail::new();
            let mut k = first;
            loop {
                let tau = k as f64 * h;
                if tau > limit {
                    break;
                }
                let term = eval(direction * tau, &mut sum, &mut abs_sum)?;
                for i in 0..K {
                    scale[i] = scale[i].max(abs_sum[i] * h);
                }
                if tail.finished(&term, &scale) {
                    break;
                }
                k += step;
            }
        }

        for i in 0..K {
            if level == 0 {
                estimate[i] = h * sum[i];
                abs_estimate[i] = h * abs_sum[i];
            } else {
                estimate[i] = 0.5 * estimate[i] + h * sum[i];
                abs_estimate[i] = 0.5 * abs_estimate[i] + h * abs_sum[i];
            }
        }

        if level >= MIN_LEVEL {
            let converged = (0..K).all(|i| {
                (estimate[i] - previous[i]).abs()
                    <= spec.relative_tolerance * abs_estimate[i] + ABSOLUTE_FLOOR
            });
            if converged {
                return Ok(estimate);
            }
        }
        previous = estimate;
        h *= 0.5;
    }

    // report the worst component
    let worst = (0..K)
        .max_by(|&a, &b| {
            let ea = (estimate[a] - previous[a]).abs() / abs_estimate[a].max(f64::MIN_POSITIVE);
            let eb = (estimate[b] - previous[b]).abs() / abs_estimate[b].max(f64::MIN_POSITIVE);
            ea.total_cmp(&eb)
        })
        .unwrap_or(0);
    Err(Error::QuadratureNotConverged {
        last: estimate.get(worst).copied().unwrap_or(f64::NAN),
        previous: previous.get(worst).copied().unwrap_or(f64::NAN),
    })
}

/// `∫₀^∞ f(x) dx` for `f` continuous on `(0, ∞)` with at least exponential
/// decay; an integrable singularity at the origin is allowed.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_n(|x| [f(x)], spec).map(|[v]| v)
}

/// `∫_t^∞ g(s) ds` where `g` may be singular at `s = t`.
///
/// The integrand is called as `g(s, s - t)`; the offset is passed exactly so
/// kernels such as `ln((s + t)/(s - t))` can avoid cancellation.
pub fn integrate_singular_inner<G>(g: G, t: f64, spec: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64, f64) -> f64,
{
    integrate_singular_inner_n(|s, u| [g(s, u)], t, spec).map(|[v]| v)
}

pub fn integrate_singular_inner_n<const K: usize, G>(
    g: G,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<[f64; K]>
where
    G: Fn(f64, f64) -> [f64; K],
{
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "inner integral needs t > 0"));
    }
    integrate_semi_infinite_n(|u| g(t + u, u), spec)
}

use crate::{Error, Result};

const GOLDEN: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeSpec {
    pub bracket_low: f64,
    pub bracket_high: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl MinimizeSpec {
    pub fn new(
        bracket_low: f64,
        bracket_high: f64,
        tolerance: f64,
        max_iterations: usize,
    ) -> Result<Self> {
        if !(bracket_low < bracket_high) || !bracket_low.is_finite() || !bracket_high.is_finite() {
            return Err(Error::invalid(
                "bracket_low",
                bracket_low,
                "bracket must satisfy low < high",
            ));
        }
        if !(tolerance > 0.0) {
            return Err(Error::invalid("tolerance", tolerance, "must be positive"));
        }
        Ok(Self {
            bracket_low,
            bracket_high,
            tolerance,
            max_iterations,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanMinimum {
    pub minimum: Minimum,
    /// More than one interior local minimum was seen on the coarse grid.
    pub multiple_minima: bool,
}

/// Brent's method: golden-section search with parabolic steps.
///
/// For a unimodal `f` the result lies within `tolerance` of the minimizer;
/// otherwise the best point visited is returned. Running out of iterations
/// yields the best-so-far point with `converged = false`.
pub fn minimize_1d<F>(f: F, spec: &MinimizeSpec) -> Result<Minimum>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (spec.bracket_low, spec.bracket_high);
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut d = 0.0f64;
    let mut e = 0.0f64;

    for iteration in 1..=spec.max_iterations {
        let mid = 0.5 * (a + b);
        let tol1 = spec.tolerance * 0.5 + f64::EPSILON * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(Minimum {
                x,
                value: fx,
                iterations: iteration - 1,
                converged: true,
            });
        }

        let mut golden = true;
        if e.abs() > tol1 {
            // parabola through (v, fv), (w, fw), (x, fx)
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if mid >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { a - x } else { b - x };
            d = GOLDEN * e;
        }

        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u)?;

        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }

    Ok(Minimum {
        x,
        value: fx,
        iterations: spec.max_iterations,
        converged: false,
    })
}

/// Coarse uniform scan of the bracket followed by Brent refinement around the
/// best sample. Samples are evaluated in parallel and consumed in grid order,
/// so the result does not depend on scheduling.
pub fn minimize_with_prescan<F>(f: F, spec: &MinimizeSpec, samples: usize) -> Result<ScanMinimum>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    use rayon::prelude::*;

    let samples = samples.max(3);
    let step = (spec.bracket_high - spec.bracket_low) / (samples - 1) as f64;
    let grid: Vec<f64> = (0..samples)
        .map(|i| spec.bracket_low + i as f64 * step)
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let interior_minima = (1..samples - 1)
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .count();

    let low = grid[best.saturating_sub(1)];
    let high = grid[(best + 1).min(samples - 1)];
    let local = MinimizeSpec {
        bracket_low: low,
        bracket_high: high,
        ..*spec
    };
    let mut minimum = minimize_1d(&f, &local)?;
    if values[best] < minimum.value {
        minimum.x = grid[best];
        minimum.value = values[best];
    }
    Ok(ScanMinimum {
        minimum,
        multiple_minima: interior_minima > 1,
    })
}

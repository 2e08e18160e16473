//! Finite-difference ground state of `H = -Δ + v f(r)` in `d` dimensions.
//!
//! With `u(r) = r^{(d-1)/2} ψ(r)` the s-wave problem becomes
//! `-u'' + [v f(r) + (d-1)(d-3)/(4r²)] u = E u` on the half line. It is
//! discretized with the three-point Laplacian on a uniform mesh with
//! Dirichlet ends, and the smallest eigenvalue of the resulting symmetric
//! tridiagonal matrix is isolated by Sturm-sequence bisection. One halving
//! of the spacing plus Richardson extrapolation removes the `h²` error.
//!
//! Nothing here shares algebra with [`crate::closed_bounds`], which is the
//! point: it is the independent check on the closed-form lower bounds.

use crate::closed_bounds::sigma2_gaussian;
use crate::{minimum_point, Error, Problem, Result};

pub const MIN_POINTS: usize = 200;
pub const DEFAULT_POINTS: usize = 4000;
// default meshes resolve the core radius with this many intervals
const CORE_RESOLUTION: f64 = 150.0;
const MAX_DEFAULT_POINTS: usize = 200_000;
/// Largest acceptable Richardson error estimate, relative to the energy.
pub const MESH_TOLERANCE: f64 = 1e-3;
const MAX_BISECTIONS: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    r_min: f64,
    r_max: f64,
    n_points: usize,
}

impl Mesh {
    /// `n_points` counts both boundary nodes. `r_min = 0` is allowed: the
    /// reduced solution vanishes at the origin.
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min >= 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::invalid(
                "r_max",
                r_max,
                "mesh needs 0 <= r_min < r_max",
            ));
        }
        if n_points < MIN_POINTS {
            return Err(Error::invalid(
                "n_points",
                n_points as f64,
                "mesh needs at least 200 points",
            ));
        }
        Ok(Self {
            r_min,
            r_max,
            n_points,
        })
    }

    /// Mesh tied to the problem's own length scales: the inner edge at
    /// `1e-4 r̂` (zero when the shape has no interior minimum) and the outer
    /// edge at twenty Gaussian pair separations. At least 4000 points, more
    /// when needed to put 150 intervals inside `r̂`, where the solution
    /// behaves like a non-integer power of `r`.
    pub fn for_problem(prob: &Problem) -> Self {
        let r_hat = minimum_point(prob.potential()).map_or(0.0, |(r, _)| r);
        let r_min = 1e-4 * r_hat;
        let r_max = 20.0 * sigma2_gaussian(prob).sqrt();
        let n_points = if r_hat > 0.0 {
            let needed = ((r_max - r_min) * CORE_RESOLUTION / r_hat).ceil() as usize + 1;
            needed.clamp(DEFAULT_POINTS, MAX_DEFAULT_POINTS)
        } else {
            DEFAULT_POINTS
        };
        Self {
            r_min,
            r_max,
            n_points,
        }
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    /// Same interval with half the spacing; every old node is kept.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * (self.n_points - 1) + 1,
            ..*self
        }
    }
}

/// Eigenvalues strictly below `x` (Sturm count via the LDLᵀ pivots).
fn count_below(diag: &[f64], off2: f64, x: f64) -> usize {
    let mut count = 0;
    let mut pivot = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        pivot = if i == 0 { a - x } else { a - x - off2 / pivot };
        if pivot == 0.0 {
            pivot = -f64::EPSILON * (a.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue of the raw finite-difference operator on `mesh`.
pub fn fd_ground_eigenvalue(prob: &Problem, mesh: &Mesh) -> Result<f64> {
    let h = mesh.spacing();
    let inv_h2 = 1.0 / (h * h);
    let d = prob.d() as f64;
    let centrifugal = (d - 1.0) * (d - 3.0) / 4.0;
    let pot = prob.potential();
    let v = prob.v();

    let diag: Vec<f64> = (1..mesh.n_points - 1)
        .map(|i| {
            let r = mesh.r_min + i as f64 * h;
            2.0 * inv_h2 + v * pot.eval(r) + centrifugal / (r * r)
        })
        .collect();
    let off = inv_h2;

    let mut hi = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let mut lo = diag
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let neighbours = if i == 0 || i + 1 == diag.len() {
                1.0
            } else {
                2.0
            };
            a - neighbours * off
        })
        .fold(f64::INFINITY, f64::min);

    for _ in 0..MAX_BISECTIONS {
        let width = hi - lo;
        if width <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if count_below(&diag, off * off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::EigenNotConverged {
        iterations: MAX_BISECTIONS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub energy: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Estimated error of `fine`, `|fine - coarse| / 3`.
    pub error_estimate: f64,
}

pub fn ground_energy_estimate(prob: &Problem, mesh: &Mesh) -> Result<OracleEstimate> {
    let coarse = fd_ground_eigenvalue(prob, mesh)?;
    let fine = fd_ground_eigenvalue(prob, &mesh.refined())?;
    let energy = (4.0 * fine - coarse) / 3.0;
    let error_estimate = (fine - coarse).abs() / 3.0;
    let tolerance = MESH_TOLERANCE * energy.abs();
    if error_estimate > tolerance {
        return Err(Error::MeshTooCoarse {
            estimate: error_estimate,
            tolerance,
        });
    }
    Ok(OracleEstimate {
        energy,
        coarse,
        fine,
        error_estimate,
    })
}

/// Lowest eigenvalue of the reduced Hamiltonian after one Richardson step.
pub fn ground_energy(prob: &Problem, mesh: &Mesh) -> Result<f64> {
    ground_energy_estimate(prob, mesh).map(|e| e.energy)
}

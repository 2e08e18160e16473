//! Potential shapes, dimensionless problem instances and the bridge to
//! physical units.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    /// `λr² + μ/r²`
    #[serde(rename = "oscillator")]
    SoftCoreOscillator,
    /// `-λ/r + μ/r²`
    Kratzer,
}

impl std::fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialKind::SoftCoreOscillator => f.write_str("oscillator"),
            PotentialKind::Kratzer => f.write_str("kratzer"),
        }
    }
}

/// Pair-potential shape `f(r)`: an attractive term of strength `lambda` plus
/// a soft repulsive core `mu/r²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    kind: PotentialKind,
    lambda: f64,
    mu: f64,
}

impl Potential {
    pub fn new(kind: PotentialKind, lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(
                "lambda",
                lambda,
                "must be positive and finite",
            ));
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::invalid("mu", mu, "must be non-negative and finite"));
        }
        Ok(Self { kind, lambda, mu })
    }

    pub fn oscillator(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(PotentialKind::SoftCoreOscillator, lambda, mu)
    }

    pub fn kratzer(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(PotentialKind::Kratzer, lambda, mu)
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Shape value without the domain check; callers guarantee `r > 0`.
    pub(crate) fn eval(&self, r: f64) -> f64 {
        let core = self.mu / (r * r);
        match self.kind {
            PotentialKind::SoftCoreOscillator => self.lambda * r * r + core,
            PotentialKind::Kratzer => -self.lambda / r + core,
        }
    }
}

/// A dimensionless bound-state problem: `H = -Δ + v f(r)` in `d` dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    potential: Potential,
    d: u32,
    v: f64,
}

impl Problem {
    pub fn new(potential: Potential, d: u32, v: f64) -> Result<Self> {
        if d < 3 {
            return Err(Error::invalid(
                "d",
                d as f64,
                "spatial dimension must be >= 3",
            ));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(
                "v",
                v,
                "coupling must be positive and finite",
            ));
        }
        Ok(Self { potential, d, v })
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn kind(&self) -> PotentialKind {
        self.potential.kind
    }

    pub fn lambda(&self) -> f64 {
        self.potential.lambda
    }

    pub fn mu(&self) -> f64 {
        self.potential.mu
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// Same potential and dimension at a different coupling.
    pub fn with_coupling(&self, v: f64) -> Result<Self> {
        Self::new(self.potential, self.d, v)
    }
}

/// Physical parameters of the N-particle system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSystem {
    n: u64,
    mass: f64,
    depth: f64,
    range: f64,
    hbar: f64,
}

impl PhysicalSystem {
    pub fn new(n: u64, mass: f64, depth: f64, range: f64, hbar: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("N", n as f64, "need at least two particles"));
        }
        for (name, value) in [("m", mass), ("V0", depth), ("a", range), ("hbar", hbar)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::invalid(name, value, "must be positive and finite"));
            }
        }
        Ok(Self {
            n,
            mass,
            depth,
            range,
            hbar,
        })
    }

    /// `N` particles of unit mass with unit range and `ħ = 1`.
    pub fn natural_units(n: u64, depth: f64) -> Result<Self> {
        Self::new(n, 1.0, depth, 1.0, 1.0)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `(N-1) ħ² / (m a²)`, the factor converting `E` into the physical energy.
    pub fn energy_unit(&self) -> f64 {
        (self.n - 1) as f64 * self.hbar * self.hbar / (self.mass * self.range * self.range)
    }
}

/// Particle count for the δ-model benchmark, which has a finite large-N limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParticleCount {
    Finite(u64),
    Infinite,
}

pub fn potential_value(pot: &Potential, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid("r", r, "potential is defined for r > 0"));
    }
    Ok(pot.eval(r))
}

/// Position `r̂` and value `f(r̂)` of the minimum of the shape on `[0, ∞)`.
///
/// For the oscillator without a core the minimum sits at the origin with
/// value zero; the Kratzer shape without a core is unbounded below.
pub fn minimum_point(pot: &Potential) -> Result<(f64, f64)> {
    let (lambda, mu) = (pot.lambda, pot.mu);
    match pot.kind {
        PotentialKind::SoftCoreOscillator => {
            if mu == 0.0 {
                return Ok((0.0, 0.0));
            }
            let r_hat = (mu / lambda).powf(0.25);
            Ok((r_hat, 2.0 * (lambda * mu).sqrt()))
        }
        PotentialKind::Kratzer => {
            if mu == 0.0 {
                return Err(Error::NoInteriorMinimum);
            }
            let r_hat = 2.0 * mu / lambda;
            Ok((r_hat, pot.eval(r_hat)))
        }
    }
}

/// `v = N m V₀ a² / (2ħ²)`.
pub fn dimensionless_coupling(phys: &PhysicalSystem) -> f64 {
    phys.n as f64 * phys.mass * phys.depth * phys.range * phys.range / (2.0 * phys.hbar * phys.hbar)
}

/// Physical energy `ℰ` from the energy parameter `E`.
pub fn recover_energy(phys: &PhysicalSystem, energy_parameter: f64) -> f64 {
    phys.energy_unit() * energy_parameter
}

/// Energy parameter `E = m ℰ a² / ((N-1) ħ²)`; inverse of [`recover_energy`].
pub fn dimensionless_energy(phys: &PhysicalSystem, energy: f64) -> f64 {
    energy / phys.energy_unit()
}

/// Exact energy parameter of the one-dimensional attractive δ model,
/// `F_N(v) = -(1 + 1/N) v² / 6`.
pub fn delta_exact_energy(n: ParticleCount, v: f64) -> Result<f64> {
    let inverse_n = match n {
        ParticleCount::Finite(n) if n < 2 => {
            return Err(Error::invalid("N", n as f64, "need at least two particles"))
        }
        ParticleCount::Finite(n) => 1.0 / n as f64,
        ParticleCount::Infinite => 0.0,
    };
    Ok(-(1.0 + inverse_n) * v * v / 6.0)
}

/// Static configuration energy `C(N,2) V₀ f(r̂)` with every pair at the
/// potential minimum.
pub fn classical_floor(pot: &Potential, n: u64, depth: f64) -> Result<f64> {
    if !(depth >= 0.0) {
        return Err(Error::invalid("V0", depth, "depth must be non-negative"));
    }
    let (_, f_hat) = minimum_point(pot)?;
    let pairs = (n * n.saturating_sub(1)) as f64 / 2.0;
    Ok(pairs * depth * f_hat)
}

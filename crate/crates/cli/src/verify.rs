//! Built-in verification suite: every check compares one computed number with
//! an independent reference and a tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use boson_bounds::closed_bounds::asymptotic_bounds;
use boson_bounds::radial_oracle::fd_ground_eigenvalue;
use boson_bounds::{
    delta_1d_phi, delta_1d_phi_at_power, gaussian_upper, ground_energy, inverse_square_coeff,
    lower_bound, m_of_d, minimize_scale, moment_coeff, optimize, Mesh, Potential, PotentialKind,
    Problem, QuadratureSpec,
};
use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::args::VerifyArgs;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    /// Radial eigensolver against the closed-form lower bounds.
    Oracle,
    /// Gaussian member of the trial family against the closed-form upper bound.
    Gauss,
    /// One-dimensional δ model calibration.
    Delta,
    /// Reference optimal powers.
    Qcal,
    /// Exact collapse of all bounds for the pure oscillator.
    Collapse,
    /// Lower ≤ collective field ≤ Gaussian on a coupling sweep.
    Ordering,
    /// Pair-moment identities.
    Moments,
    /// Large-coupling limits.
    Asymptotics,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Oracle,
        Group::Gauss,
        Group::Delta,
        Group::Qcal,
        Group::Collapse,
        Group::Ordering,
        Group::Moments,
        Group::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Oracle => "oracle",
            Group::Gauss => "gauss",
            Group::Delta => "delta",
            Group::Qcal => "qcal",
            Group::Collapse => "collapse",
            Group::Ordering => "ordering",
            Group::Moments => "moments",
            Group::Asymptotics => "asymptotics",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
    /// `observed >= expected`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub group: Group,
    pub label: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: Tolerance,
    pub passed: bool,
}

impl Check {
    fn new(
        group: Group,
        label: impl Into<String>,
        observed: f64,
        expected: f64,
        tolerance: Tolerance,
    ) -> Self {
        let passed = match tolerance {
            Tolerance::Absolute(t) => (observed - expected).abs() <= t,
            Tolerance::Relative(t) => (observed - expected).abs() <= t * expected.abs(),
            Tolerance::AtLeast => observed >= expected,
        };
        Self {
            group,
            label: label.into(),
            observed,
            expected,
            tolerance,
            passed,
        }
    }

    fn failed(group: Group, label: impl Into<String>, reason: &dyn fmt::Display) -> Self {
        Self {
            group,
            label: format!("{}: {reason}", label.into()),
            observed: f64::NAN,
            expected: f64::NAN,
            tolerance: Tolerance::AtLeast,
            passed: false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let tol = match self.tolerance {
            Tolerance::Absolute(t) => format!("± {t:e}"),
            Tolerance::Relative(t) => format!("± {t:e} relative"),
            Tolerance::AtLeast => "lower limit".to_string(),
        };
        write!(
            f,
            "{status} {} {}: {} expected, observed {} ({tol})",
            self.group.name(),
            self.label,
            self.expected,
            self.observed
        )
    }
}

fn problem(kind: PotentialKind, lambda: f64, mu: f64, d: u32, v: f64) -> Problem {
    Problem::new(Potential::new(kind, lambda, mu).expect("valid shape"), d, v)
        .expect("valid problem")
}

fn relative_error(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn oracle_checks() -> Vec<Check> {
    use PotentialKind::*;
    let g = Group::Oracle;
    let mut checks = Vec::new();
    for (kind, mu, v, expected, tol) in [
        (SoftCoreOscillator, 0.0, 1.0, 3.0, 1e-6),
        (SoftCoreOscillator, 1.0, 2.0, 5.0 * 2f64.sqrt(), 1e-5),
        (Kratzer, 1.0, 2.0, -0.25, 1e-5),
    ] {
        let prob = problem(kind, 1.0, mu, 3, v);
        let label = format!("{kind} mu={mu} v={v}");
        match ground_energy(&prob, &Mesh::for_problem(&prob)) {
            Ok(e) => checks.push(Check::new(g, label, e, expected, Tolerance::Absolute(tol))),
            Err(e) => checks.push(Check::failed(g, label, &e)),
        }
    }

    let values = [0.5, 1.0, 2.0];
    for kind in [SoftCoreOscillator, Kratzer] {
        let mut worst: f64 = 0.0;
        for lambda in values {
            for mu in values {
                for v in [1.0, 2.0, 10.0] {
                    for d in [3, 5] {
                        let prob = problem(kind, lambda, mu, d, v);
                        let e = ground_energy(&prob, &Mesh::for_problem(&prob)).unwrap_or(f64::NAN);
                        worst = worst.max(relative_error(e, lower_bound(&prob)));
                        if e.is_nan() {
                            worst = f64::INFINITY;
                        }
                    }
                }
            }
        }
        checks.push(Check::new(
            g,
            format!("{kind} grid worst relative error"),
            worst,
            0.0,
            Tolerance::Absolute(1e-5),
        ));
    }

    let prob = problem(SoftCoreOscillator, 1.0, 0.0, 3, 1.0);
    let mesh = Mesh::new(0.0, 12.0, 401).expect("valid mesh");
    let ratio = match (
        fd_ground_eigenvalue(&prob, &mesh),
        fd_ground_eigenvalue(&prob, &mesh.refined()),
    ) {
        (Ok(a), Ok(b)) => (a - 3.0) / (b - 3.0),
        _ => f64::NAN,
    };
    checks.push(Check::new(
        g,
        "error ratio under spacing halving",
        ratio,
        4.0,
        Tolerance::Absolute(0.05),
    ));
    checks
}

fn gauss_checks() -> Vec<Check> {
    let spec = QuadratureSpec::default();
    let mut rng = StdRng::seed_from_u64(20);
    let mut checks = Vec::new();
    for kind in [PotentialKind::SoftCoreOscillator, PotentialKind::Kratzer] {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let prob = problem(
                kind,
                rng.gen_range(0.2..3.0),
                rng.gen_range(0.0..3.0),
                3,
                rng.gen_range(0.2..30.0),
            );
            let e = minimize_scale(&prob, 2.0, &spec).map_or(f64::NAN, |(_, e)| e);
            let err = relative_error(e, gaussian_upper(&prob));
            worst = if err.is_nan() {
                f64::INFINITY
            } else {
                worst.max(err)
            };
        }
        checks.push(Check::new(
            Group::Gauss,
            format!("{kind} q=2 vs gaussian bound, worst of 20"),
            worst,
            0.0,
            Tolerance::Absolute(1e-7),
        ));
    }
    checks
}

fn delta_checks() -> Vec<Check> {
    let g = Group::Delta;
    let mut checks = Vec::new();
    match delta_1d_phi(1.0) {
        Ok(phi) => {
            checks.push(Check::new(
                g,
                "F_phi(1)",
                phi.energy,
                -0.164868,
                Tolerance::Absolute(1e-4),
            ));
            checks.push(Check::new(
                g,
                "F_phi(1) above exact large-N value",
                phi.energy,
                -1.0 / 6.0,
                Tolerance::AtLeast,
            ));
        }
        Err(e) => checks.push(Check::failed(g, "F_phi(1)", &e)),
    }
    match delta_1d_phi_at_power(1.0, 2.0) {
        Ok(phi) => checks.push(Check::new(
            g,
            "F_phi(1) at q=2",
            phi.energy,
            -1.0 / (2.0 * PI),
            Tolerance::Absolute(1e-9),
        )),
        Err(e) => checks.push(Check::failed(g, "F_phi(1) at q=2", &e)),
    }
    checks
}

/// Reference optimal powers at `λ = μ = 1`, `d = 3`.
pub const REFERENCE_Q: [(PotentialKind, f64, f64, f64); 4] = [
    (PotentialKind::SoftCoreOscillator, 2.0, 2.8593, 0.005),
    (PotentialKind::SoftCoreOscillator, 20.0, 4.460, 0.01),
    (PotentialKind::Kratzer, 2.0, 2.0017, 0.005),
    (PotentialKind::Kratzer, 20.0, 3.237, 0.01),
];

fn qcal_checks() -> Vec<Check> {
    REFERENCE_Q
        .iter()
        .map(|&(kind, v, q, tol)| {
            let label = format!("{kind} q_opt(v={v})");
            match optimize(&problem(kind, 1.0, 1.0, 3, v)) {
                Ok(phi) => Check::new(Group::Qcal, label, phi.q_opt, q, Tolerance::Absolute(tol)),
                Err(e) => Check::failed(Group::Qcal, label, &e),
            }
        })
        .collect()
}

fn collapse_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for d in [3u32, 4, 5] {
        let mut worst: f64 = 0.0;
        for v in [1.0, 4.0, 9.0] {
            let prob = problem(PotentialKind::SoftCoreOscillator, 1.0, 0.0, d, v);
            let exact = d as f64 * v.sqrt();
            worst = worst.max(relative_error(lower_bound(&prob), exact));
            worst = worst.max(relative_error(gaussian_upper(&prob), exact));
            if d == 3 {
                let phi = optimize(&prob).map_or(f64::NAN, |p| p.energy);
                worst = if phi.is_nan() {
                    f64::INFINITY
                } else {
                    worst.max(relative_error(phi, exact))
                };
            }
        }
        let what = if d == 3 {
            "lower, phi, gaussian"
        } else {
            "lower, gaussian"
        };
        checks.push(Check::new(
            Group::Collapse,
            format!("d={d} {what} vs d*sqrt(v)"),
            worst,
            0.0,
            Tolerance::Absolute(1e-7),
        ));
    }
    checks
}

fn ordering_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for kind in [PotentialKind::SoftCoreOscillator, PotentialKind::Kratzer] {
        let mut margin = f64::INFINITY;
        for i in 1..=10 {
            let prob = problem(kind, 1.0, 1.0, 3, 2.0 * i as f64);
            let phi = optimize(&prob).map_or(f64::NAN, |p| p.energy);
            let m = (phi - lower_bound(&prob)).min(gaussian_upper(&prob) + 1e-9 - phi);
            margin = if m.is_nan() {
                f64::NEG_INFINITY
            } else {
                margin.min(m)
            };
        }
        checks.push(Check::new(
            Group::Ordering,
            format!("{kind} v=2..20 smallest margin"),
            margin,
            0.0,
            Tolerance::AtLeast,
        ));
    }
    checks
}

fn moment_checks() -> Vec<Check> {
    let g = Group::Moments;
    let spec = QuadratureSpec::default();
    let gamma = |x: f64| boson_bounds::numerics::gamma_fn(x).expect("positive argument");
    let mut checks = Vec::new();
    for q in [1.0, 1.5, 2.0, 3.0, 4.0, 6.0] {
        let expected = 2.0 * gamma(5.0 / q) / gamma(3.0 / q);
        let label = format!("C_2({q})");
        match moment_coeff(q, 2.0, &spec) {
            Ok(c) => checks.push(Check::new(g, label, c, expected, Tolerance::Relative(1e-8))),
            Err(e) => checks.push(Check::failed(g, label, &e)),
        }
    }
    match inverse_square_coeff(2.0, &spec) {
        Ok(c) => checks.push(Check::new(g, "C_-2(2)", c, 1.0, Tolerance::Absolute(1e-7))),
        Err(e) => checks.push(Check::failed(g, "C_-2(2)", &e)),
    }
    match moment_coeff(2.0, -1.0, &spec) {
        Ok(c) => checks.push(Check::new(
            g,
            "C_-1(2)",
            c,
            (2.0 / PI).sqrt(),
            Tolerance::Absolute(1e-7),
        )),
        Err(e) => checks.push(Check::failed(g, "C_-1(2)", &e)),
    }
    checks
}

fn asymptotic_checks() -> Vec<Check> {
    let g = Group::Asymptotics;
    let v = 1e6;
    let osc = problem(PotentialKind::SoftCoreOscillator, 1.0, 1.0, 3, v);
    let kr = problem(PotentialKind::Kratzer, 1.0, 1.0, 3, v);
    let mut checks = vec![
        Check::new(
            g,
            "oscillator lower/(2v)",
            lower_bound(&osc) / (2.0 * v),
            1.0,
            Tolerance::Absolute(1e-3),
        ),
        Check::new(
            g,
            "oscillator gaussian/(2v sqrt3)",
            gaussian_upper(&osc) / (2.0 * v * 3f64.sqrt()),
            1.0,
            Tolerance::Absolute(1e-3),
        ),
        Check::new(
            g,
            "kratzer lower/(-v/4)",
            lower_bound(&kr) / (-v / 4.0),
            1.0,
            Tolerance::Absolute(1e-3),
        ),
        Check::new(
            g,
            "kratzer gaussian/(-v (2/pi)/4)",
            gaussian_upper(&kr) / (-v * (2.0 / PI) / 4.0),
            1.0,
            Tolerance::Absolute(1e-3),
        ),
        Check::new(g, "M(3)", m_of_d(3), 2.0 / PI, Tolerance::Relative(1e-15)),
    ];
    if let Ok(a) = asymptotic_bounds(&kr) {
        checks.push(Check::new(
            g,
            "kratzer asymptote ratio",
            a.upper / a.lower,
            2.0 / PI,
            Tolerance::Relative(1e-14),
        ));
    }
    checks
}

pub fn run_group(group: Group) -> Vec<Check> {
    match group {
        Group::Oracle => oracle_checks(),
        Group::Gauss => gauss_checks(),
        Group::Delta => delta_checks(),
        Group::Qcal => qcal_checks(),
        Group::Collapse => collapse_checks(),
        Group::Ordering => ordering_checks(),
        Group::Moments => moment_checks(),
        Group::Asymptotics => asymptotic_checks(),
    }
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let groups: Vec<Group> = match args.only {
        Some(g) => vec![g],
        None => Group::ALL.to_vec(),
    };
    let mut failed = Vec::new();
    let mut total = 0;
    for g in groups {
        for check in run_group(g) {
            writeln!(out, "{check}")?;
            total += 1;
            if !check.passed {
                failed.push(format!("{} {}", check.group.name(), check.label));
            }
        }
    }
    writeln!(out, "{} of {total} checks passed", total - failed.len())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "failed checks:\n  {}",
            failed.join("\n  ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_tolerances() {
        assert!(Check::new(Group::Delta, "x", 1.0, 1.05, Tolerance::Absolute(0.1)).passed);
        assert!(!Check::new(Group::Delta, "x", 1.0, 1.2, Tolerance::Absolute(0.1)).passed);
        assert!(Check::new(Group::Delta, "x", 100.0, 101.0, Tolerance::Relative(0.01)).passed);
        assert!(Check::new(Group::Delta, "x", 2.0, 1.0, Tolerance::AtLeast).passed);
        assert!(!Check::new(Group::Delta, "x", f64::NAN, 1.0, Tolerance::Absolute(1.0)).passed);
    }

    #[test]
    fn delta_line_reads_well() {
        let line = delta_checks()[0].to_string();
        assert!(
            line.starts_with("PASS delta F_phi(1): -0.164868 expected"),
            "{line}"
        );
    }
}

//! Closed-form bounds for the two soluble shapes.
//!
//! The lower bound `F₂(v)` is the exact lowest eigenvalue of `-Δ + v f(r)`;
//! the upper bound `F_G(v)` is its scale-optimized Gaussian Rayleigh quotient.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use serde::Serialize;

use crate::numerics::gamma_unchecked;
use crate::{Error, PotentialKind, Problem, Result};

/// Large-`v` leading coefficients: `E ~ coeff · v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptotes {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper_gaussian: f64,
    pub upper_phi: Option<f64>,
    pub q_opt: Option<f64>,
    pub b_opt: Option<f64>,
    pub sigma2: f64,
    /// `None` without a soft core.
    pub asymptote_lower: Option<f64>,
    pub asymptote_upper: Option<f64>,
}

fn dm2(prob: &Problem) -> f64 {
    prob.d() as f64 - 2.0
}

pub fn lower_bound(prob: &Problem) -> f64 {
    let (v, lambda, mu, d) = (prob.v(), prob.lambda(), prob.mu(), prob.d() as f64);
    match prob.kind() {
        PotentialKind::SoftCoreOscillator => {
            let half = 0.5 * d - 1.0;
            2.0 * (v * lambda).sqrt() * (1.0 + (mu * v + half * half).sqrt())
        }
        PotentialKind::Kratzer => {
            let denom = 1.0 + (dm2(prob).powi(2) + 4.0 * v * mu).sqrt();
            -(v * lambda).powi(2) / (denom * denom)
        }
    }
}

pub fn gaussian_upper(prob: &Problem) -> f64 {
    let (v, lambda, mu, d) = (prob.v(), prob.lambda(), prob.mu(), prob.d() as f64);
    match prob.kind() {
        PotentialKind::SoftCoreOscillator => {
            (d * v * lambda).sqrt() * (d + 4.0 * v * mu / dm2(prob)).sqrt()
        }
        PotentialKind::Kratzer => {
            let g = v * lambda * gamma_d(prob.d());
            -(g * g) / (2.0 * d + 8.0 * v * mu / dm2(prob))
        }
    }
}

// below this dimension γ_d is built by recurrence from exact seeds
const RECURRENCE_LIMIT: u32 = 64;

/// `Γ((d-1)/2) / Γ(d/2)`.
pub fn gamma_d(d: u32) -> f64 {
    if d < RECURRENCE_LIMIT {
        return recurrence(d, FRAC_2_SQRT_PI, PI.sqrt() / 2.0, |k| (k - 1.0) / k);
    }
    let d = d as f64;
    gamma_unchecked(0.5 * (d - 1.0)) / gamma_unchecked(0.5 * d)
}

/// `γ_{d+2} = γ_d (d-1)/d`, seeded at `d = 3` or `d = 4` by parity.
fn recurrence(d: u32, odd_seed: f64, even_seed: f64, factor: impl Fn(f64) -> f64) -> f64 {
    let (mut k, mut g) = if d % 2 == 1 {
        (3, odd_seed)
    } else {
        (4, even_seed)
    };
    while k < d {
        g *= factor(k as f64);
        k += 2;
    }
    g
}

/// `γ_d² (d-2) / 2`, the Kratzer upper-to-lower asymptote ratio.
pub fn m_of_d(d: u32) -> f64 {
    // squared seeds keep M(3) = 2/π exact
    let g2 = if d < RECURRENCE_LIMIT {
        recurrence(d, 4.0 / PI, PI / 4.0, |k| ((k - 1.0) / k).powi(2))
    } else {
        gamma_d(d).powi(2)
    };
    g2 * (d as f64 - 2.0) / 2.0
}

/// Mean-squared pair separation in the optimal Gaussian trial state.
pub fn sigma2_gaussian(prob: &Problem) -> f64 {
    let (v, lambda, mu, d) = (prob.v(), prob.lambda(), prob.mu(), prob.d() as f64);
    let core = 1.0 + 4.0 * v * mu / (d * dm2(prob));
    match prob.kind() {
        PotentialKind::SoftCoreOscillator => d / (2.0 * (v * lambda).sqrt()) * core.sqrt(),
        PotentialKind::Kratzer => {
            let g = v * lambda * gamma_d(prob.d());
            d.powi(3) / (2.0 * g * g) * core * core
        }
    }
}

pub fn asymptotic_bounds(prob: &Problem) -> Result<Asymptotes> {
    let (lambda, mu, d) = (prob.lambda(), prob.mu(), prob.d() as f64);
    if mu == 0.0 {
        return Err(Error::AsymptoteUndefined);
    }
    Ok(match prob.kind() {
        PotentialKind::SoftCoreOscillator => {
            let lower = 2.0 * (lambda * mu).sqrt();
            Asymptotes {
                lower,
                upper: lower * (d / (d - 2.0)).sqrt(),
            }
        }
        PotentialKind::Kratzer => {
            let lower = -lambda * lambda / (4.0 * mu);
            Asymptotes {
                lower,
                upper: lower * m_of_d(prob.d()),
            }
        }
    })
}

/// All closed-form quantities; the collective-field fields stay empty.
pub fn bound_report(prob: &Problem) -> Result<BoundReport> {
    let asymptotes = match asymptotic_bounds(prob) {
        Ok(a) => Some(a),
        Err(Error::AsymptoteUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        lower: lower_bound(prob),
        upper_gaussian: gaussian_upper(prob),
        upper_phi: None,
        q_opt: None,
        b_opt: None,
        sigma2: sigma2_gaussian(prob),
        asymptote_lower: asymptotes.map(|a| a.lower),
        asymptote_upper: asymptotes.map(|a| a.upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Potential;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn osc(l: f64, m: f64, d: u32, v: f64) -> Problem {
        Problem::new(Potential::oscillator(l, m).unwrap(), d, v).unwrap()
    }

    fn kr(l: f64, m: f64, d: u32, v: f64) -> Problem {
        Problem::new(Potential::kratzer(l, m).unwrap(), d, v).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        assert_relative_eq!(
            lower_bound(&osc(1.0, 1.0, 3, 2.0)),
            5.0 * 2f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            lower_bound(&kr(1.0, 1.0, 3, 2.0)),
            -0.25,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            lower_bound(&osc(1.0, 0.0, 3, 4.0)),
            6.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn gaussian_upper_examples() {
        assert_relative_eq!(
            gaussian_upper(&osc(1.0, 1.0, 3, 2.0)),
            66f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gaussian_upper(&kr(1.0, 1.0, 3, 2.0)),
            -4.0 / (5.5 * PI),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gaussian_upper(&osc(1.0, 0.0, 3, 4.0)),
            6.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn three_dimensional_specializations() {
        // d = 3 forms: √(vλ)[2 + √(1+4μv)] and √(vλ)·√(9 + 12vμ); Kratzer -(vλ)²/(π(3/2 + 2vμ))
        for &(l, m, v) in &[(1.0, 1.0, 2.0), (0.3, 2.5, 7.0), (4.0, 0.1, 0.5)] {
            let p = osc(l, m, 3, v);
            let s = (v * l).sqrt();
            assert_relative_eq!(
                lower_bound(&p),
                s * (2.0 + (1.0 + 4.0 * m * v).sqrt()),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                gaussian_upper(&p),
                s * (9.0 + 12.0 * v * m).sqrt(),
                max_relative = 1e-14
            );
            let k = kr(l, m, 3, v);
            let denom = 1.0 + (1.0 + 4.0 * v * m).sqrt();
            assert_relative_eq!(
                lower_bound(&k),
                -(v * l).powi(2) / (denom * denom),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                gaussian_upper(&k),
                -(v * l).powi(2) / (PI * (1.5 + 2.0 * v * m)),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn pure_coulomb_case() {
        for d in 3..8 {
            let p = kr(1.3, 0.0, d, 2.0);
            let vl: f64 = 2.6;
            let df = d as f64;
            assert_relative_eq!(
                lower_bound(&p),
                -vl * vl / ((df - 1.0) * (df - 1.0)),
                max_relative = 1e-14
            );
            let g = vl * gamma_d(d);
            assert_relative_eq!(
                gaussian_upper(&p),
                -g * g / (2.0 * df),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn gamma_d_values() {
        assert_relative_eq!(gamma_d(3), 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_d(4), PI.sqrt() / 2.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_d(5), 4.0 / (3.0 * PI.sqrt()), max_relative = 1e-14);
    }

    #[test]
    fn sigma2_examples() {
        assert_relative_eq!(
            sigma2_gaussian(&osc(1.0, 0.0, 3, 1.0)),
            1.5,
            max_relative = 1e-15
        );
        let expected = 3.0 / (2.0 * 2f64.sqrt()) * (11.0f64 / 3.0).sqrt();
        assert_relative_eq!(
            sigma2_gaussian(&osc(1.0, 1.0, 3, 2.0)),
            expected,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            sigma2_gaussian(&kr(1.0, 0.0, 3, 1.0)),
            27.0 * PI / 8.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn asymptote_examples() {
        let a = asymptotic_bounds(&osc(1.0, 1.0, 3, 1.0)).unwrap();
        assert_relative_eq!(a.lower, 2.0, max_relative = 1e-15);
        assert_relative_eq!(a.upper, 2.0 * 3f64.sqrt(), max_relative = 1e-15);
        let a = asymptotic_bounds(&kr(1.0, 1.0, 3, 1.0)).unwrap();
        assert_relative_eq!(a.lower, -0.25, max_relative = 1e-15);
        assert_relative_eq!(a.upper, -0.25 * 2.0 / PI, max_relative = 1e-13);
        assert_eq!(
            asymptotic_bounds(&kr(1.0, 0.0, 3, 1.0)),
            Err(Error::AsymptoteUndefined)
        );
        assert_relative_eq!(m_of_d(3), 2.0 / PI, max_relative = 1e-14);
        assert!(m_of_d(8) > 0.9);
    }

    #[test]
    fn recurrence_matches_gamma_ratio() {
        assert_eq!(m_of_d(3), 2.0 / PI);
        for d in 3..80u32 {
            let x = d as f64;
            let direct = gamma_unchecked(0.5 * (x - 1.0)) / gamma_unchecked(0.5 * x);
            assert_relative_eq!(gamma_d(d), direct, max_relative = 1e-13);
            assert_relative_eq!(
                m_of_d(d),
                direct * direct * (x - 2.0) / 2.0,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn m_of_d_increases_to_one() {
        let mut prev = 0.0;
        for d in 3..=50 {
            let m = m_of_d(d);
            assert!(m > prev && m < 1.0, "M({d}) = {m}");
            prev = m;
        }
        assert!(m_of_d(50) > 0.98);
    }

    #[test]
    fn asymptotic_convergence() {
        for d in [3, 4, 7] {
            for prob in [
                osc(1.0, 1.0, d, 1e6),
                kr(1.0, 1.0, d, 1e6),
                osc(0.4, 2.0, d, 1e6),
            ] {
                let c = asymptotic_bounds(&prob).unwrap();
                let v = prob.v();
                assert!((lower_bound(&prob) / (v * c.lower) - 1.0).abs() < 0.01);
                assert!((gaussian_upper(&prob) / (v * c.upper) - 1.0).abs() < 0.01);
            }
        }
    }

    #[test]
    fn report_collapse_and_values() {
        let r = bound_report(&osc(1.0, 0.0, 3, 4.0)).unwrap();
        assert_relative_eq!(r.lower, 6.0, max_relative = 1e-15);
        assert_relative_eq!(r.upper_gaussian, 6.0, max_relative = 1e-15);
        assert!(r.asymptote_lower.is_none() && r.upper_phi.is_none());
        let r = bound_report(&kr(1.0, 1.0, 3, 2.0)).unwrap();
        assert_relative_eq!(r.lower, -0.25, max_relative = 1e-15);
        assert_relative_eq!(r.upper_gaussian, -4.0 / (5.5 * PI), max_relative = 1e-13);
        assert!(r.sigma2 > 0.0);
    }

    fn any_problem() -> impl Strategy<Value = Problem> {
        (
            any::<bool>(),
            0.1f64..10.0,
            0.1f64..10.0,
            3u32..=10,
            0.1f64..50.0,
        )
            .prop_map(|(is_osc, l, m, d, v)| {
                if is_osc {
                    osc(l, m, d, v)
                } else {
                    kr(l, m, d, v)
                }
            })
    }

    proptest! {
        #[test]
        fn ordering(prob in any_problem()) {
            prop_assert!(lower_bound(&prob) < gaussian_upper(&prob));
            prop_assert!(sigma2_gaussian(&prob) > 0.0);
        }

        #[test]
        fn oscillator_collapse(l in 0.1f64..10.0, d in 3u32..=10, v in 0.1f64..50.0) {
            let p = osc(l, 0.0, d, v);
            let exact = d as f64 * (v * l).sqrt();
            prop_assert!((lower_bound(&p) - exact).abs() <= 4.0 * f64::EPSILON * exact);
            prop_assert!((gaussian_upper(&p) - exact).abs() <= 4.0 * f64::EPSILON * exact);
        }

        #[test]
        fn lambda_scaling(l in 0.1f64..10.0, m in 0.0f64..10.0, d in 3u32..=10, v in 0.1f64..50.0) {
            let (o, o1) = (osc(l, m, d, v), osc(1.0, m, d, v));
            prop_assert!((lower_bound(&o) - l.sqrt() * lower_bound(&o1)).abs() < 1e-12 * lower_bound(&o).abs());
            prop_assert!((gaussian_upper(&o) - l.sqrt() * gaussian_upper(&o1)).abs() < 1e-12 * gaussian_upper(&o).abs());
            let (k, k1) = (kr(l, m, d, v), kr(1.0, m, d, v));
            prop_assert!((lower_bound(&k) - l * l * lower_bound(&k1)).abs() < 1e-12 * lower_bound(&k).abs());
            prop_assert!((gaussian_upper(&k) - l * l * gaussian_upper(&k1)).abs() < 1e-12 * gaussian_upper(&k).abs());
        }

        #[test]
        fn nondecreasing_in_mu(l in 0.1f64..10.0, m in 0.0f64..10.0, dm in 0.0f64..5.0,
                               d in 3u32..=10, v in 0.1f64..50.0) {
            for build in [osc as fn(f64, f64, u32, f64) -> Problem, kr] {
                let (a, b) = (build(l, m, d, v), build(l, m + dm, d, v));
                prop_assert!(lower_bound(&a) <= lower_bound(&b));
                prop_assert!(gaussian_upper(&a) <= gaussian_upper(&b));
            }
        }
    }
}

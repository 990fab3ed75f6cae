//! Gaussian trial states and the variational upper bound.
//!
//! The trial state is a product of identical Gaussians in the Jacobi
//! relative coordinates ρ₂..ρ_N,
//!
//! ```text
//! ψ(r) = (a/π)^(3/4) exp(−a r²/2),   φ(k) = (1/(aπ))^(3/4) exp(−k²/(2a))
//! ```
//!
//! Its energy reduces to that of the one-body problem κ|p| + c r² with
//! κ = √α and c = αγ, α = N(N−1):
//!
//! ```text
//! E(a) = κ · 2√(a/π) + c · 3/(2a)
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{alpha, check_positive};

/// Width parameter a of the single-coordinate Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTrial {
    a: f64,
}

impl GaussianTrial {
    pub fn new(a: f64) -> Result<Self> {
        check_positive("a", a)?;
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// ⟨|k|⟩ in the momentum-space state.
    pub fn mean_k(&self) -> f64 {
        2.0 * (self.a / PI).sqrt()
    }

    /// ⟨r²⟩ in the position-space state.
    pub fn mean_r2(&self) -> f64 {
        1.5 / self.a
    }

    /// |ψ(r)|².
    pub fn position_density(&self, r: f64) -> f64 {
        (self.a / PI).powf(1.5) * (-self.a * r * r).exp()
    }

    /// |φ(k)|².
    pub fn momentum_density(&self, k: f64) -> f64 {
        (self.a * PI).powf(-1.5) * (-k * k / self.a).exp()
    }
}

pub fn gaussian_moments(a: f64) -> Result<(f64, f64)> {
    let g = GaussianTrial::new(a)?;
    Ok((g.mean_k(), g.mean_r2()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialEnergy {
    pub a: f64,
    pub energy: f64,
    pub kinetic_part: f64,
    pub potential_part: f64,
}

/// Trial energy of κ|p| + c r² in the Gaussian of width `a`.
pub fn one_body_gaussian_energy(kappa: f64, c: f64, a: f64) -> Result<TrialEnergy> {
    check_positive("kappa", kappa)?;
    check_positive("c", c)?;
    let g = GaussianTrial::new(a)?;
    let kinetic_part = kappa * g.mean_k();
    let potential_part = c * g.mean_r2();
    Ok(TrialEnergy {
        a,
        energy: kinetic_part + potential_part,
        kinetic_part,
        potential_part,
    })
}

/// Stationary point a* = (9π c² / (4κ²))^(1/3) of the one-body trial energy.
pub fn one_body_optimal_a(kappa: f64, c: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("c", c)?;
    Ok((9.0 * PI * c * c / (4.0 * kappa * kappa)).cbrt())
}

fn reduced_coefficients(n: usize, gamma: f64) -> Result<(f64, f64)> {
    let alpha = alpha(n)?.alpha_f64();
    check_positive("gamma", gamma)?;
    Ok((alpha.sqrt(), alpha * gamma))
}

/// ⟨H⟩ in the N-body product Gaussian: (4αa/π)^(1/2) + 3αγ/(2a).
pub fn gaussian_energy(n: usize, gamma: f64, a: f64) -> Result<TrialEnergy> {
    let (kappa, c) = reduced_coefficients(n, gamma)?;
    one_body_gaussian_energy(kappa, c, a)
}

/// a* = (9π γ² α / 4)^(1/3).
pub fn optimal_a(n: usize, gamma: f64) -> Result<f64> {
    let (kappa, c) = reduced_coefficients(n, gamma)?;
    one_body_optimal_a(kappa, c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericMinimum {
    pub a: f64,
    pub energy: f64,
    /// Bracket doublings spent before a minimum was enclosed.
    pub expansions: usize,
    pub evaluations: usize,
}

/// Hard cap on doublings of the search bracket.
pub const MAX_BRACKET_DOUBLINGS: usize = 200;

/// Relative bracket width at which golden-section comparisons are still
/// far above rounding noise. Below it a sign bisection on symmetric
/// differences takes over.
const GOLDEN_FLOOR: f64 = 1e-6;
const DIFFERENCE_STEP: f64 = 1e-5;

/// Minimizes the one-body trial energy over a > 0 using function values
/// only.
///
/// The search runs in u = ln a, where the energy is a sum of exponentials
/// and hence convex. A bracket is grown from a = 1 by doublings, shrunk by
/// golden section to relative width 1e−6, then narrowed to `tol` by
/// bisection on the sign of E(u+δ) − E(u−δ).
pub fn minimize_one_body_numeric(kappa: f64, c: f64, tol: f64) -> Result<NumericMinimum> {
    if !(tol.is_finite() && tol >= 1e-12) {
        return Err(Error::DomainError {
            value: tol,
            domain: "tol >= 1e-12",
        });
    }
    check_positive("kappa", kappa)?;
    check_positive("c", c)?;

    let mut evaluations = 0usize;
    let mut energy = |u: f64| -> f64 {
        evaluations += 1;
        let a = u.exp();
        kappa * 2.0 * (a / PI).sqrt() + c * 1.5 / a
    };

    // Bracket [lo, hi] around a point mid with E(mid) below both ends.
    let step = std::f64::consts::LN_2;
    let (mut lo, mut mid, mut hi) = (-step, 0.0, step);
    let (mut e_lo, mut e_mid, mut e_hi) = (energy(lo), energy(mid), energy(hi));
    let mut expansions = 0;
    while !(e_mid <= e_lo && e_mid <= e_hi) {
        if expansions >= MAX_BRACKET_DOUBLINGS {
            return Err(Error::ConvergenceFailure {
                method: "minimize_gaussian_numeric",
                detail: format!("no bracket after {MAX_BRACKET_DOUBLINGS} doublings"),
            });
        }
        expansions += 1;
        if e_hi < e_lo {
            (lo, e_lo) = (mid, e_mid);
            (mid, e_mid) = (hi, e_hi);
            hi += step;
            e_hi = energy(hi);
        } else {
            (hi, e_hi) = (mid, e_mid);
            (mid, e_mid) = (lo, e_lo);
            lo -= step;
            e_lo = energy(lo);
        }
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let golden_stop = tol.max(GOLDEN_FLOOR);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = energy(x1);
    let mut f2 = energy(x2);
    while hi - lo > golden_stop {
        if f1 < f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - inv_phi * (hi - lo);
            f1 = energy(x1);
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + inv_phi * (hi - lo);
            f2 = energy(x2);
        }
    }

    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        let slope = energy(m + DIFFERENCE_STEP) - energy(m - DIFFERENCE_STEP);
        if slope > 0.0 {
            hi = m;
        } else if slope < 0.0 {
            lo = m;
        } else {
            lo = m;
            hi = m;
        }
    }

    let u = 0.5 * (lo + hi);
    let e = energy(u);
    Ok(NumericMinimum {
        a: u.exp(),
        energy: e,
        expansions,
        evaluations,
    })
}

/// Numeric minimization of [`gaussian_energy`], independent of the
/// closed-form minimizer.
pub fn minimize_gaussian_numeric(n: usize, gamma: f64, tol: f64) -> Result<NumericMinimum> {
    let (kappa, c) = reduced_coefficients(n, gamma)?;
    minimize_one_body_numeric(kappa, c, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{constant_b, energy_scale, upper_bound};

    /// Composite Simpson on [0, cut] of 4π x² w(x) f(x).
    fn radial_integral(w: impl Fn(f64) -> f64, cut: f64) -> f64 {
        let n = 200_000;
        let h = cut / n as f64;
        let g = |x: f64| 4.0 * PI * x * x * w(x);
        let mut s = g(0.0) + g(cut);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn moments_closed_form() {
        assert!((gaussian_moments(PI).unwrap().0 - 2.0).abs() < 1e-15);
        assert_eq!(gaussian_moments(1.0).unwrap().1, 1.5);
        assert!((gaussian_moments(4.0).unwrap().0 - 2.256758334191025).abs() < 1e-14);
        assert!(gaussian_moments(0.0).is_err());
        assert!(gaussian_moments(-1.0).is_err());
    }

    #[test]
    fn moments_against_quadrature() {
        for a in [0.1, 1.0, 4.0, 10.0] {
            let g = GaussianTrial::new(a).unwrap();
            // tail of exp(−a r²) below 1e−16 past r² = 37/a
            let r_cut = (37.0 / a).sqrt();
            let k_cut = (37.0 * a).sqrt();
            let norm_r = radial_integral(|r| g.position_density(r), r_cut);
            let norm_k = radial_integral(|k| g.momentum_density(k), k_cut);
            let mean_r2 = radial_integral(|r| r * r * g.position_density(r), r_cut);
            let mean_k = radial_integral(|k| k * g.momentum_density(k), k_cut);
            assert!((norm_r - 1.0).abs() < 1e-10);
            assert!((norm_k - 1.0).abs() < 1e-10);
            assert!((mean_r2 - g.mean_r2()).abs() < 1e-10 * g.mean_r2().max(1.0));
            assert!((mean_k - g.mean_k()).abs() < 1e-10 * g.mean_k().max(1.0));
        }
    }

    #[test]
    fn trial_energy_values() {
        let t = gaussian_energy(2, 1.0, 1.0).unwrap();
        assert!((t.energy - 4.595769121605731).abs() < 1e-13);
        assert_eq!(t.energy, t.kinetic_part + t.potential_part);
        assert!((t.kinetic_part - (8.0 / PI).sqrt()).abs() < 1e-15);
        assert_eq!(t.potential_part, 3.0);
    }

    #[test]
    fn optimal_width() {
        let a2 = optimal_a(2, 1.0).unwrap();
        assert!((a2 - 2.417987931024704).abs() < 1e-13);
        let a3 = optimal_a(3, 1.0).unwrap();
        assert!((a3 - 3.487342054528879).abs() < 1e-13);
        let s = 5.0;
        assert!(
            (optimal_a(4, s * 0.3).unwrap() - s.powf(2.0 / 3.0) * optimal_a(4, 0.3).unwrap()).abs()
                < 1e-12
        );

        for (n, g) in [(2, 1.0), (3, 1.0), (17, 0.02), (200, 40.0)] {
            let e = gaussian_energy(n, g, optimal_a(n, g).unwrap())
                .unwrap()
                .energy;
            let ub = upper_bound(n, g).unwrap();
            assert!((e - ub).abs() < 1e-12 * ub);
        }
    }

    #[test]
    fn energy_dominates_minimum() {
        let ub = upper_bound(5, 0.7).unwrap();
        let mut a = 1e-4;
        while a < 1e4 {
            assert!(gaussian_energy(5, 0.7, a).unwrap().energy >= ub - 1e-12);
            a *= 1.37;
        }
    }

    #[test]
    fn strictly_convex_on_geometric_grid() {
        let values: Vec<f64> = (0..200)
            .map(|i| {
                gaussian_energy(4, 2.0, 1e-3 * 1.08f64.powi(i))
                    .unwrap()
                    .energy
            })
            .collect();
        for w in values.windows(3) {
            // equal log-spacing; convex in ln a
            assert!(w[0] + w[2] - 2.0 * w[1] > 0.0);
        }
    }

    #[test]
    fn numeric_minimizer_matches_closed_form() {
        for (n, g) in [(2, 1.0), (3, 1.0), (2, 0.25), (20, 10.0), (1000, 1e-3)] {
            let m = minimize_gaussian_numeric(n, g, 1e-9).unwrap();
            let a_star = optimal_a(n, g).unwrap();
            let ub = upper_bound(n, g).unwrap();
            assert!(
                (m.a - a_star).abs() <= 1e-9 * a_star,
                "n={n} a={} vs {a_star}",
                m.a
            );
            assert!((m.energy - ub).abs() <= 1e-9 * ub);
            assert!((m.energy / energy_scale(n, g).unwrap() - constant_b()).abs() < 1e-9);
        }
        let m = minimize_gaussian_numeric(2, 0.25, 1e-9).unwrap();
        assert!((m.energy - 2.3447779).abs() < 1e-7);
    }

    #[test]
    fn numeric_minimizer_far_from_unit_width() {
        // a* far from 1 forces many doublings
        let m = minimize_one_body_numeric(1.0, 1e12, 1e-9).unwrap();
        assert!(m.expansions > 10);
        let a_star = one_body_optimal_a(1.0, 1e12).unwrap();
        assert!((m.a - a_star).abs() <= 1e-9 * a_star);
        let m = minimize_one_body_numeric(1e9, 1e-9, 1e-6).unwrap();
        let a_star = one_body_optimal_a(1e9, 1e-9).unwrap();
        assert!((m.a - a_star).abs() <= 1e-6 * a_star);
    }

    #[test]
    fn bracket_cap() {
        // a* ≈ 1e−150 needs ~500 doublings
        let err = minimize_one_body_numeric(1.0, 1e-225, 1e-6).unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { .. }));
    }

    #[test]
    fn tolerance_floor() {
        assert!(minimize_gaussian_numeric(2, 1.0, 1e-13).is_err());
        assert!(minimize_gaussian_numeric(2, 1.0, 1e-12).is_ok());
    }
}

//! Closed-form lower and upper bounds on the ground-state energy.
//!
//! For H = Σ|pᵢ| + Σ_{i<j} γ|rᵢ − rⱼ|² the ground energy E satisfies
//!
//! ```text
//! A (γ N²(N−1)²)^(1/3) ≤ E ≤ B (γ N²(N−1)²)^(1/3)
//! ```
//!
//! where A = |z₁| is the magnitude of the first zero of Ai and
//! B = (81/(2π))^(1/3). The same two coefficients bound the nonrelativistic
//! linear-potential system with argument N²(N−1)³λ²/(4m).
//!
//! The coefficient A is sometimes written "Ai(0)" in the literature. Ai
//! evaluated at zero is ≈ 0.355; the value meant is the zero magnitude,
//! which is also the bottom of the spectrum of p² + r in three dimensions.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::airy::airy_first_zero;
use crate::error::Result;
use crate::model::{alpha, check_positive};

/// Tolerance used for the cached lower-bound coefficient.
pub const DEFAULT_A_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub a: f64,
    pub b: f64,
}

impl BoundConstants {
    pub fn get() -> Result<Self> {
        Ok(Self {
            a: cached_a()?,
            b: constant_b(),
        })
    }
}

/// Lower and upper energy with the midpoint and relative half-gap
/// `(upper − lower)/(upper + lower)`, i.e. the worst-case relative error of
/// quoting `mean` as the energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub lower: f64,
    pub upper: f64,
    pub mean: f64,
    pub rel_half_gap: f64,
}

impl BoundResult {
    pub fn new(lower: f64, upper: f64) -> Self {
        debug_assert!(lower <= upper);
        Self {
            lower,
            upper,
            mean: 0.5 * (lower + upper),
            rel_half_gap: (upper - lower) / (upper + lower),
        }
    }
}

/// Lower-bound coefficient A, computed from the Airy zero finder.
pub fn constant_a(tol: f64) -> Result<f64> {
    airy_first_zero(tol)
}

/// Upper-bound coefficient B = (81/(2π))^(1/3).
pub fn constant_b() -> f64 {
    (81.0 / (2.0 * PI)).cbrt()
}

fn cached_a() -> Result<f64> {
    static A: OnceLock<Result<f64>> = OnceLock::new();
    A.get_or_init(|| constant_a(DEFAULT_A_TOLERANCE)).clone()
}

/// (γ α²)^(1/3), the common energy scale of both bounds.
pub fn energy_scale(n: usize, gamma: f64) -> Result<f64> {
    let pairs = alpha(n)?;
    check_positive("gamma", gamma)?;
    let a = pairs.alpha_f64();
    Ok((gamma * a * a).cbrt())
}

pub fn lower_bound(n: usize, gamma: f64) -> Result<f64> {
    Ok(cached_a()? * energy_scale(n, gamma)?)
}

pub fn upper_bound(n: usize, gamma: f64) -> Result<f64> {
    Ok(constant_b() * energy_scale(n, gamma)?)
}

pub fn bound_pair(n: usize, gamma: f64) -> Result<BoundResult> {
    let scale = energy_scale(n, gamma)?;
    Ok(BoundResult::new(cached_a()? * scale, constant_b() * scale))
}

/// Bounds for Σ pᵢ²/2m + Σ λ|rᵢ − rⱼ|.
pub fn nr_bounds(n: usize, lambda: f64, mass: f64) -> Result<BoundResult> {
    alpha(n)?;
    check_positive("lambda", lambda)?;
    check_positive("mass", mass)?;
    let nf = n as f64;
    let arg = nf * nf * (nf - 1.0).powi(3) * lambda * lambda / (4.0 * mass);
    let scale = arg.cbrt();
    Ok(BoundResult::new(cached_a()? * scale, constant_b() * scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUOTED_A: f64 = 2.33810741;
    const QUOTED_B: f64 = 2.3447779;

    #[test]
    fn constants() {
        assert!((constant_a(1e-8).unwrap() - QUOTED_A).abs() <= 1e-8);
        assert!((constant_a(1e-10).unwrap() - 2.3381074105).abs() <= 1e-10);
        assert!((constant_b() - QUOTED_B).abs() < 1e-7);
        let b = constant_b();
        assert!((b * b * b * 2.0 * PI - 81.0).abs() < 1e-12);
        let c = BoundConstants::get().unwrap();
        assert!(c.a < c.b);
    }

    #[test]
    fn tightest_tolerance_never_silently_wrong() {
        match constant_a(1e-13) {
            Ok(a) => assert!((a - 2.338107410459767).abs() < 2e-13),
            Err(e) => assert!(e.is_numerical()),
        }
    }

    #[test]
    fn unit_argument_returns_constants() {
        // γ N²(N−1)² = 0.25 · 4 · 1 = 1
        let lo = lower_bound(2, 0.25).unwrap();
        let hi = upper_bound(2, 0.25).unwrap();
        assert!((lo - QUOTED_A).abs() < 1e-8);
        assert!((hi - QUOTED_B).abs() < 1e-7);
        assert_eq!(lo, cached_a().unwrap());
    }

    #[test]
    fn reference_values() {
        // Frozen from a 30-digit evaluation of A·x^(1/3) and B·x^(1/3).
        assert!((lower_bound(2, 1.0).unwrap() - 3.711514162978477).abs() < 1e-13);
        assert!((upper_bound(2, 1.0).unwrap() - 3.7221029453964).abs() < 1e-13);
        assert!((lower_bound(3, 1.0).unwrap() - 7.720260569439558).abs() < 1e-13);
        assert!((upper_bound(3, 1.0).unwrap() - 7.742286124452897).abs() < 1e-13);
    }

    #[test]
    fn gap_is_scale_free() {
        let g1 = bound_pair(2, 1.0).unwrap().rel_half_gap;
        let g2 = bound_pair(50, 3.0).unwrap().rel_half_gap;
        assert!((g1 - g2).abs() < 1e-15);
        assert!((g1 - 0.00142444549719861).abs() < 1e-14);
        assert!(g1 > 0.00142 && g1 < 0.00143);
        assert!(g1 < 0.0015);
    }

    #[test]
    fn bound_result_fields() {
        let r = bound_pair(7, 2.5).unwrap();
        assert!(r.lower <= r.upper);
        assert_eq!(r.mean, 0.5 * (r.lower + r.upper));
        assert_eq!(r.rel_half_gap, (r.upper - r.lower) / (r.upper + r.lower));
    }

    #[test]
    fn nonrelativistic_values() {
        let r = nr_bounds(2, 1.0, 0.25).unwrap();
        assert!((r.lower - 3.711514162978477).abs() < 1e-13);
        let r = nr_bounds(2, 1.0, 0.5).unwrap();
        assert!((r.lower - 2.945830743353453).abs() < 1e-13);
        assert!((r.upper - 2.95423506552809).abs() < 1e-13);
        // λ²/(4m) = 1/4 with N = 2 makes the argument 4·1·(1/4) = 1
        let r = nr_bounds(2, 0.5, 0.25).unwrap();
        assert_eq!(r.lower, cached_a().unwrap());
        assert!(nr_bounds(2, 1.0, -1.0).is_err());
        assert!(nr_bounds(1, 1.0, 1.0).is_err());
    }

    #[test]
    fn invalid_inputs_propagate() {
        assert_eq!(
            lower_bound(1, 1.0).unwrap_err().field(),
            Some("n_particles")
        );
        assert_eq!(upper_bound(3, 0.0).unwrap_err().field(), Some("gamma"));
    }
}

//! Numerical ground states of the reduced one-body Hamiltonians.
//!
//! Two unrelated routes are provided:
//!
//! * [`solve_linear_schroedinger`] shoots the local problem μp² + νr
//!   (s-wave) with Runge–Kutta integration and bisection on the energy.
//! * [`solve_salpeter_oscillator`] diagonalizes κ√(m² + p²) + c r² on a
//!   radial grid, using the discrete sine transform to make the kinetic
//!   term diagonal.
//!
//! The two are Fourier duals of each other when m = 0 (κ|p| + c r² ↔
//! c p² + κ r), so their ground energies must coincide.

mod salpeter;
mod shooting;

pub use salpeter::{
    salpeter_hamiltonian, sine_transform, sine_transform_matrix, solve_salpeter_oscillator,
};
pub use shooting::solve_linear_schroedinger;

use crate::error::{Error, Result};
use crate::model::{alpha, check_positive};

/// Smallest accepted number of interior grid points.
pub const MIN_GRID_POINTS: usize = 64;

/// Largest grid the dense eigensolver is asked to handle.
pub const MAX_GRID_POINTS: usize = 4096;

/// Default domain size in units of the characteristic length.
pub const DOMAIN_LENGTHS: f64 = 32.0;

/// Uniform interior grid on (0, r_max) for the reduced wavefunction u(r),
/// with u(0) = u(r_max) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        check_positive("r_max", r_max)?;
        if n_points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse {
                n_points,
                detail: format!("at least {MIN_GRID_POINTS} interior points are required"),
            });
        }
        if n_points > MAX_GRID_POINTS {
            return Err(Error::DomainError {
                value: n_points as f64,
                domain: "n_points <= 4096",
            });
        }
        Ok(Self { r_max, n_points })
    }

    /// Grid spanning [`DOMAIN_LENGTHS`] characteristic lengths (κ/c)^(1/3)
    /// of κ|p| + c r².
    pub fn for_oscillator(kappa: f64, c: f64, n_points: usize) -> Result<Self> {
        check_positive("kappa", kappa)?;
        check_positive("c", c)?;
        Self::new(DOMAIN_LENGTHS * (kappa / c).cbrt(), n_points)
    }

    /// Unchecked constructor for internal companion grids.
    pub(crate) fn raw(r_max: f64, n_points: usize) -> Self {
        Self { r_max, n_points }
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.n_points + 1) as f64
    }

    /// r_j = j·spacing for j = 1..=n_points.
    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.n_points).map(|j| self.node(j)).collect()
    }

    /// Momenta p_k = kπ/r_max, k = 1..=n_points, of the sine basis.
    pub fn momenta(&self) -> Vec<f64> {
        (1..=self.n_points)
            .map(|k| k as f64 * std::f64::consts::PI / self.r_max)
            .collect()
    }
}

/// Ground-state energy from one of the numerical routes, with the
/// diagnostics needed to judge it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub energy: f64,
    /// ‖Hv − Ev‖/‖v‖ in energy units.
    pub residual: f64,
    /// Extrapolation from a coarser companion solve.
    pub richardson_estimate: f64,
    pub converged: bool,
    /// Grid points (or RK4 steps per unit length for shooting) of the
    /// finest solve.
    pub n_points: usize,
    /// Outer radius actually used.
    pub r_max: f64,
    /// Probability in the outer 10% of the domain.
    pub tail_mass: f64,
    /// |E(n) − E(n/2)| on the same domain; zero for the shooting route.
    pub spacing_error: f64,
}

impl SpectralResult {
    /// Larger of the Richardson correction and the spacing error.
    pub fn grid_error(&self) -> f64 {
        (self.energy - self.richardson_estimate)
            .abs()
            .max(self.spacing_error)
    }
}

/// κ = √α and c = αγ for the reduced N-body problem.
pub fn reduced_coefficients(n: usize, gamma: f64) -> Result<(f64, f64)> {
    let a = alpha(n)?.alpha_f64();
    check_positive("gamma", gamma)?;
    Ok((a.sqrt(), a * gamma))
}

/// Default grid for [`reduced_problem_energy`].
pub fn reduced_problem_grid(n: usize, gamma: f64, n_points: usize) -> Result<RadialGrid> {
    let (kappa, c) = reduced_coefficients(n, gamma)?;
    RadialGrid::for_oscillator(kappa, c, n_points)
}

/// Ground energy of √α|p| + αγ r², the one-body operator whose spectrum
/// bottom bounds the N-body energy from below.
pub fn reduced_problem_energy(
    n: usize,
    gamma: f64,
    grid: &RadialGrid,
    tol: f64,
) -> Result<SpectralResult> {
    let (kappa, c) = reduced_coefficients(n, gamma)?;
    solve_salpeter_oscillator(0.0, kappa, c, grid, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let g = RadialGrid::new(13.0, 64).unwrap();
        assert!((g.spacing() - 0.2).abs() < 1e-15);
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 64);
        assert!(nodes[0] > 0.0);
        assert!(*nodes.last().unwrap() < g.r_max());
        assert!(nodes.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(
            RadialGrid::new(10.0, 8),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(RadialGrid::new(0.0, 128).is_err());
        assert!(RadialGrid::new(-1.0, 128).is_err());
        assert!(RadialGrid::new(1.0, 8192).is_err());
    }

    #[test]
    fn oscillator_grid_scale() {
        let g = RadialGrid::for_oscillator(1.0, 8.0, 128).unwrap();
        assert!((g.r_max() - 16.0).abs() < 1e-14);
    }
}

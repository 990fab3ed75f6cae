//! Problem parameters, validation and the exact scaling relations the bound
//! formulas obey.
//!
//! Natural units (ħ = c = 1) are used throughout: the relativistic kinetic
//! energy of a massless particle is simply |p|.

use crate::error::{Error, Result};

/// Largest particle count accepted by validation. Keeps N²(N−1)² well inside
/// the range where the cube-root argument is accurate in double precision.
pub const MAX_PARTICLES: usize = 1_000_000;

/// Which Hamiltonian family a [`SystemSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Σ|pᵢ| + Σ γ|rᵢ − rⱼ|²
    RelativisticOscillator,
    /// Σ pᵢ²/2m + Σ λ|rᵢ − rⱼ|
    NonrelativisticLinear,
}

/// Coupling constants of the pair interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interaction {
    RelativisticOscillator { gamma: f64 },
    NonrelativisticLinear { lambda: f64, mass: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub n_particles: usize,
    pub interaction: Interaction,
}

impl SystemSpec {
    pub fn relativistic(n_particles: usize, gamma: f64) -> Self {
        Self {
            n_particles,
            interaction: Interaction::RelativisticOscillator { gamma },
        }
    }

    pub fn nonrelativistic(n_particles: usize, lambda: f64, mass: f64) -> Self {
        Self {
            n_particles,
            interaction: Interaction::NonrelativisticLinear { lambda, mass },
        }
    }

    pub fn variant(&self) -> Variant {
        match self.interaction {
            Interaction::RelativisticOscillator { .. } => Variant::RelativisticOscillator,
            Interaction::NonrelativisticLinear { .. } => Variant::NonrelativisticLinear,
        }
    }
}

/// Pair counts derived from N: `alpha = N(N−1)` and the binomial `N choose 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCount {
    pub alpha: u64,
    pub n_choose_2: u64,
}

impl PairCount {
    pub fn alpha_f64(&self) -> f64 {
        self.alpha as f64
    }
}

pub(crate) fn check_particle_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::non_physical(
            "n_particles",
            n as f64,
            "at least two particles are required",
        ));
    }
    if n > MAX_PARTICLES {
        return Err(Error::non_physical(
            "n_particles",
            n as f64,
            "particle count exceeds the supported maximum of 10^6",
        ));
    }
    Ok(())
}

pub(crate) fn check_positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::non_physical(field, value, "must be finite and > 0"))
    }
}

/// Returns the spec unchanged if every invariant holds.
pub fn validate_system(spec: SystemSpec) -> Result<SystemSpec> {
    check_particle_count(spec.n_particles)?;
    match spec.interaction {
        Interaction::RelativisticOscillator { gamma } => check_positive("gamma", gamma)?,
        Interaction::NonrelativisticLinear { lambda, mass } => {
            check_positive("lambda", lambda)?;
            check_positive("mass", mass)?;
        }
    }
    Ok(spec)
}

pub fn alpha(n: usize) -> Result<PairCount> {
    check_particle_count(n)?;
    let n = n as u64;
    let alpha = n * (n - 1);
    Ok(PairCount {
        alpha,
        n_choose_2: alpha / 2,
    })
}

/// Factor by which every energy of the system scales when its coupling is
/// multiplied by `scale`.
///
/// Oscillator energies go as γ^(1/3); for the linear nonrelativistic model
/// they go as λ^(2/3).
pub fn coupling_scaling_factor(spec: &SystemSpec, scale: f64) -> Result<f64> {
    check_positive("scale", scale)?;
    Ok(match spec.variant() {
        Variant::RelativisticOscillator => scale.cbrt(),
        Variant::NonrelativisticLinear => scale.cbrt().powi(2),
    })
}

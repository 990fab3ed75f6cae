//! Orthogonal Jacobi relative coordinates.
//!
//! Row 1 of the frame is the centre-of-mass row (all entries 1/√N). Row k
//! (k ≥ 2) separates particle k from the centre of mass of particles
//! 1..k−1:
//!
//! ```text
//! R[k] = (1, …, 1, −(k−1), 0, …, 0) / √(k(k−1))
//! ```
//!
//! so ρ₂ = (r₁ − r₂)/√2. Momenta transform with the same matrix.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::check_particle_count;

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiFrame {
    n: usize,
    /// Row-major N×N.
    matrix: Vec<f64>,
}

impl JacobiFrame {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry (row, col), zero-based.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.matrix[row * self.n..(row + 1) * self.n]
    }

    /// max |R Rᵀ − I| over all entries.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let dot: f64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    fn apply(&self, vectors: &[Vec3], transpose: bool) -> Vec<Vec3> {
        (0..self.n)
            .map(|i| {
                let mut out = [0.0; 3];
                for (j, v) in vectors.iter().enumerate() {
                    let r = if transpose {
                        self.get(j, i)
                    } else {
                        self.get(i, j)
                    };
                    if r != 0.0 {
                        for d in 0..3 {
                            out[d] += r * v[d];
                        }
                    }
                }
                out
            })
            .collect()
    }
}

/// Particle positions and, optionally, momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub positions: Vec<Vec3>,
    pub momenta: Option<Vec<Vec3>>,
}

impl Configuration {
    pub fn from_positions(positions: Vec<Vec3>) -> Self {
        Self {
            positions,
            momenta: None,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.positions.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.positions.len(),
            });
        }
        if let Some(p) = &self.momenta {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
        }
        Ok(())
    }
}

pub fn jacobi_matrix(n: usize) -> Result<JacobiFrame> {
    check_particle_count(n)?;
    let mut matrix = vec![0.0; n * n];
    let uniform = 1.0 / (n as f64).sqrt();
    matrix[..n].fill(uniform);
    for k in 2..=n {
        let kf = k as f64;
        let norm = (kf * (kf - 1.0)).sqrt();
        let row = &mut matrix[(k - 1) * n..k * n];
        row[..k - 1].fill(1.0 / norm);
        row[k - 1] = -(kf - 1.0) / norm;
    }
    Ok(JacobiFrame { n, matrix })
}

/// ρ = R r and, when momenta are present, π = R p.
pub fn to_relative(frame: &JacobiFrame, config: &Configuration) -> Result<Configuration> {
    config.check_len(frame.n)?;
    Ok(Configuration {
        positions: frame.apply(&config.positions, false),
        momenta: config.momenta.as_ref().map(|p| frame.apply(p, false)),
    })
}

/// Inverse of [`to_relative`]: r = Rᵀ ρ.
pub fn from_relative(frame: &JacobiFrame, relative: &Configuration) -> Result<Configuration> {
    relative.check_len(frame.n)?;
    Ok(Configuration {
        positions: frame.apply(&relative.positions, true),
        momenta: relative.momenta.as_ref().map(|p| frame.apply(p, true)),
    })
}

/// p_N = π₁/√N − √((N−1)/N) π_N, the last particle's momentum rebuilt from
/// the centre-of-mass and last Jacobi momenta.
pub fn last_particle_momentum(relative_momenta: &[Vec3]) -> Result<Vec3> {
    let n = relative_momenta.len();
    check_particle_count(n)?;
    let nf = n as f64;
    let c1 = 1.0 / nf.sqrt();
    let cn = ((nf - 1.0) / nf).sqrt();
    let (p1, pn) = (relative_momenta[0], relative_momenta[n - 1]);
    Ok([
        c1 * p1[0] - cn * pn[0],
        c1 * p1[1] - cn * pn[1],
        c1 * p1[2] - cn * pn[2],
    ])
}

fn norm2(v: &Vec3) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

/// Σ_{i<j} |rᵢ − rⱼ|².
pub fn pair_sum(positions: &[Vec3]) -> f64 {
    let mut total = 0.0;
    for (i, a) in positions.iter().enumerate() {
        for b in &positions[i + 1..] {
            total += norm2(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]]);
        }
    }
    total
}

/// Relative residual of N Σ_{i≥2} ρᵢ² = Σ_{i<j} |rᵢ − rⱼ|², normalized by
/// max(1, pair sum).
pub fn pair_sum_identity_residual(frame: &JacobiFrame, config: &Configuration) -> Result<f64> {
    let rel = to_relative(
        frame,
        &Configuration::from_positions(config.positions.clone()),
    )?;
    let jacobi_side: f64 = frame.n as f64 * rel.positions[1..].iter().map(norm2).sum::<f64>();
    let pairs = pair_sum(&config.positions);
    Ok((jacobi_side - pairs).abs() / pairs.max(1.0))
}

/// Positions (and momenta) with components drawn uniformly from [−1, 1].
pub fn random_configuration<R: Rng + ?Sized>(
    n: usize,
    with_momenta: bool,
    rng: &mut R,
) -> Configuration {
    let draw = |rng: &mut R| -> Vec<Vec3> {
        (0..n)
            .map(|_| {
                [
                    rng.random_range(-1.0..=1.0),
                    rng.random_range(-1.0..=1.0),
                    rng.random_range(-1.0..=1.0),
                ]
            })
            .collect()
    };
    let positions = draw(rng);
    let momenta = with_momenta.then(|| draw(rng));
    Configuration { positions, momenta }
}

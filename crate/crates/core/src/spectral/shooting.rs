use super::SpectralResult;
use crate::error::{Error, Result};
use crate::model::check_positive;

/// Outer integration limit in characteristic lengths. The ground state has
/// its turning point near 2.34, so this leaves ~10 lengths of decay.
const X_END: f64 = 12.0;
const INITIAL_STEPS_PER_LENGTH: usize = 64;
const MAX_STEPS_PER_LENGTH: usize = 8192;
/// Bisection stops once the energy bracket is this narrow (scaled units).
const ENERGY_RESOLUTION: f64 = 1e-12;

struct Shot {
    u: Vec<f64>,
    nodes: usize,
}

/// RK4 for u'' = (x − e) u from u(0) = 0, u'(0) = 1.
fn shoot(e: f64, steps_per_length: usize) -> Shot {
    let h = 1.0 / steps_per_length as f64;
    let n = (X_END * steps_per_length as f64).round() as usize;
    let accel = |x: f64, u: f64| (x - e) * u;

    let mut u = Vec::with_capacity(n + 1);
    let (mut y, mut w) = (0.0_f64, 1.0_f64);
    u.push(y);
    let mut nodes = 0;
    for i in 0..n {
        let x = i as f64 * h;
        let k1y = w;
        let k1w = accel(x, y);
        let k2y = w + 0.5 * h * k1w;
        let k2w = accel(x + 0.5 * h, y + 0.5 * h * k1y);
        let k3y = w + 0.5 * h * k2w;
        let k3w = accel(x + 0.5 * h, y + 0.5 * h * k2y);
        let k4y = w + h * k3w;
        let k4w = accel(x + h, y + h * k3y);
        let next = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if i > 0 && next * y < 0.0 {
            nodes += 1;
        }
        y = next;
        u.push(y);
    }
    Shot { u, nodes }
}

/// Ground-state energy of u'' = (x − e)u, u(0) = 0, in scaled units, by
/// bisection on the node count.
fn ground_energy(steps_per_length: usize) -> Result<(f64, Vec<f64>)> {
    let mut lo = 0.0;
    let mut hi = 4.0;
    let mut expansions = 0;
    while shoot(hi, steps_per_length).nodes == 0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 10 {
            return Err(Error::ConvergenceFailure {
                method: "solve_linear_schroedinger",
                detail: "no node found while bracketing the ground state".into(),
            });
        }
    }
    while hi - lo > ENERGY_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shoot(mid, steps_per_length).nodes == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let e = 0.5 * (lo + hi);
    Ok((e, shoot(lo, steps_per_length).u))
}

/// ‖−u'' + (x − e)u‖ / ‖u‖ with a five-point second difference, taken up
/// to the first minimum of |u| past the turning point, where the
/// exponentially growing solution starts to dominate.
fn ode_residual(u: &[f64], e: f64, steps_per_length: usize) -> f64 {
    let h = 1.0 / steps_per_length as f64;
    let turning = (e * steps_per_length as f64).ceil() as usize;
    let mut end = u.len() - 1;
    for i in turning.max(2)..u.len() - 1 {
        if u[i + 1].abs() > u[i].abs() {
            end = i;
            break;
        }
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 2..end.saturating_sub(1) {
        let d2 = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2])
            / (12.0 * h * h);
        let x = i as f64 * h;
        let r = -d2 + (x - e) * u[i];
        num += r * r;
    }
    for v in &u[..=end] {
        den += v * v;
    }
    (num / den).sqrt()
}

/// Ground-state energy of μp² + νr in three dimensions (s-wave).
///
/// In units of length (μ/ν)^(1/3) and energy μ^(1/3)ν^(2/3) the radial
/// equation is u'' = (x − e)u. It is integrated outward with fixed-step
/// RK4 and e is bisected on whether u has a node. The step is halved until
/// the Richardson correction between successive step sizes is below `tol`
/// (absolute energy units).
pub fn solve_linear_schroedinger(mu: f64, nu: f64, tol: f64) -> Result<SpectralResult> {
    check_positive("mu", mu)?;
    check_positive("nu", nu)?;
    check_positive("tol", tol)?;
    let length = (mu / nu).cbrt();
    let energy_unit = mu.cbrt() * nu.cbrt() * nu.cbrt();
    let scaled_tol = tol / energy_unit;

    let mut steps = INITIAL_STEPS_PER_LENGTH;
    let (mut coarse, _) = ground_energy(steps)?;
    loop {
        steps *= 2;
        let (fine, u) = ground_energy(steps)?;
        let richardson = fine + (fine - coarse) / 15.0;
        let correction = (fine - richardson).abs();
        if correction <= scaled_tol || steps >= MAX_STEPS_PER_LENGTH {
            let residual = ode_residual(&u, fine, steps) * energy_unit;
            let tail_start = (0.9 * u.len() as f64) as usize;
            let norm: f64 = u.iter().map(|v| v * v).sum();
            let tail: f64 = u[tail_start..].iter().map(|v| v * v).sum();
            return Ok(SpectralResult {
                energy: fine * energy_unit,
                residual,
                richardson_estimate: richardson * energy_unit,
                converged: correction <= scaled_tol
                    && residual < 1e-8 * energy_unit.max(fine * energy_unit).max(1.0),
                n_points: steps,
                r_max: X_END * length,
                tail_mass: tail / norm,
                spacing_error: 0.0,
            });
        }
        coarse = fine;
    }
}

//! Airy function Ai on a bounded window and the zero nearest the origin.
//!
//! Ai is evaluated from its ascending Maclaurin series,
//!
//! ```text
//! Ai(x) = c₁ f(x) − c₂ g(x)
//! f(x)  = Σ 3ᵏ (1/3)ₖ x³ᵏ / (3k)!
//! g(x)  = Σ 3ᵏ (2/3)ₖ x³ᵏ⁺¹ / (3k+1)!
//! ```
//!
//! with c₁ = Ai(0) and c₂ = −Ai′(0). The series is entire, but on the
//! positive axis the two halves cancel, so evaluation is restricted to
//! |x| ≤ [`SERIES_WINDOW`]. The first zero z₁ ≈ −2.338 sits well inside.

use crate::error::{Error, Result};

/// Ai(0) = 3^(−2/3) / Γ(2/3).
///
/// Γ(2/3) = 1.354117939426400416945..., 3^(−2/3) = 0.480749856769136...,
/// product quotient taken to 18 digits and rounded to the nearest double.
#[allow(clippy::excessive_precision)]
pub const AI_AT_ZERO: f64 = 0.355_028_053_887_817_239;

/// −Ai′(0) = 3^(−1/3) / Γ(1/3).
///
/// Γ(1/3) = 2.678938534707747633..., 3^(−1/3) = 0.693361274350634704...
#[allow(clippy::excessive_precision)]
pub const NEG_AI_PRIME_AT_ZERO: f64 = 0.258_819_403_792_806_798;

pub const SERIES_WINDOW: f64 = 10.0;

const MAX_TERMS: usize = 200;
const TERM_FLOOR: f64 = 1e-18;

/// Ai and Ai′ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub x: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

pub fn airy_ai(x: f64) -> Result<AiryValue> {
    if !x.is_finite() || x.abs() > SERIES_WINDOW {
        return Err(Error::DomainError {
            value: x,
            domain: "|x| <= 10",
        });
    }
    let x3 = x * x * x;

    // f, f′, g, g′ accumulated term by term. With t_k the k-th term of f
    // and s_k that of g:
    //   t_k  = t_{k−1}  x³ / ((3k−1)(3k))      t_0  = 1
    //   t′_k = t′_{k−1} x³ / ((3k−1)(3k−3))    t′_1 = x²/2
    //   s_k  = s_{k−1}  x³ / ((3k)(3k+1))      s_0  = x
    //   s′_k = s′_{k−1} x³ / ((3k)(3k−2))      s′_0 = 1
    let mut f = CompensatedSum::default();
    let mut fp = CompensatedSum::default();
    let mut g = CompensatedSum::default();
    let mut gp = CompensatedSum::default();

    let mut t = 1.0;
    let mut tp = 0.5 * x * x;
    let mut s = x;
    let mut sp = 1.0;
    f.add(t);
    g.add(s);
    gp.add(sp);
    fp.add(tp);

    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        sp *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        f.add(t);
        g.add(s);
        gp.add(sp);
        if k >= 2 {
            tp *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp.add(tp);
        }
        let largest = t.abs().max(s.abs()).max(sp.abs()).max(tp.abs());
        if largest < TERM_FLOOR {
            break;
        }
    }

    Ok(AiryValue {
        x,
        ai: AI_AT_ZERO * f.value() - NEG_AI_PRIME_AT_ZERO * g.value(),
        ai_prime: AI_AT_ZERO * fp.value() - NEG_AI_PRIME_AT_ZERO * gp.value(),
    })
}

/// Magnitude of the zero of Ai nearest the origin, |z₁| ≈ 2.338.
///
/// The sign change on [−3, −2] is certified first, then bisection narrows
/// the bracket and bracket-guarded Newton steps finish. Success means the
/// last Newton correction |Ai/Ai′| is below `tol`.
pub fn airy_first_zero(tol: f64) -> Result<f64> {
    if !(1e-13..=1e-4).contains(&tol) {
        return Err(Error::DomainError {
            value: tol,
            domain: "1e-13 <= tol <= 1e-4",
        });
    }

    let mut lo = -3.0;
    let mut hi = -2.0;
    let f_lo = airy_ai(lo)?.ai;
    let f_hi = airy_ai(hi)?.ai;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::ConvergenceFailure {
            method: "airy_first_zero",
            detail: format!("no sign change on [-3, -2]: Ai = {f_lo}, {f_hi}"),
        });
    }
    let lo_sign = f_lo.signum();

    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if airy_ai(mid)?.ai.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let v = airy_ai(x)?;
        if v.ai == 0.0 {
            return Ok(-x);
        }
        if v.ai.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let step = v.ai / v.ai_prime;
        if step.abs() < tol {
            return Ok(-(x - step));
        }
        let next = x - step;
        x = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < f64::EPSILON * 4.0 {
            break;
        }
    }

    Err(Error::ConvergenceFailure {
        method: "airy_first_zero",
        detail: format!("Newton correction did not fall below {tol:e}"),
    })
}

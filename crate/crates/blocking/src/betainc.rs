//! Regularized incomplete beta function `I_z(a, b)` by modified Lentz
//! continued fraction, switching through the symmetry
//! `I_z(a,b) = 1 - I_(1-z)(b,a)` once `z > (a+1)/(a+b+2)` so the fraction
//! always converges from its fast side.

use crate::error::BlockingError;
use statrs::function::gamma::ln_gamma;

const MAX_ITER: usize = 400;
const EPS: f64 = 1e-15;
const FPMIN: f64 = 1e-300;

fn betacf(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// `I_z(a, b)` for `z` in `[0, 1]`, `a >= 0`, `b > 0`. The boundary
/// convention `I_z(0, b) = 1` for `z > 0` extends the first-argument
/// recurrence down to zero, which the truncated-moment formulas rely on at
/// the smallest capacities.
pub fn regularized_incomplete_beta(z: f64, a: f64, b: f64) -> Result<f64, BlockingError> {
    if !(0.0..=1.0).contains(&z) || !z.is_finite() {
        return Err(BlockingError::DomainViolation { argument: z, domain: "z in [0,1]" });
    }
    if a < 0.0 || !a.is_finite() {
        return Err(BlockingError::DomainViolation { argument: a, domain: "a >= 0" });
    }
    if b <= 0.0 || !b.is_finite() {
        return Err(BlockingError::DomainViolation { argument: b, domain: "b > 0" });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    if z == 1.0 {
        return Ok(1.0);
    }
    let ln_front =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * z.ln() + b * (1.0 - z).ln();
    let front = ln_front.exp();
    if z < (a + 1.0) / (a + b + 2.0) {
        Ok(front * betacf(a, b, z) / a)
    } else {
        Ok(1.0 - front * betacf(b, a, 1.0 - z) / b)
    }
}

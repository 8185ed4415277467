use crate::error::{Error, Result};

/// First and second derivatives with error estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub first: f64,
    pub second: f64,
    pub first_error: f64,
    pub second_error: f64,
}

/// Central differences at `q0` with base step `h`, refined by two levels of
/// Richardson extrapolation (steps h, h/2, h/4).
///
/// The truncation error after extrapolation is O(h⁶), so cubic (and quintic)
/// polynomials are reproduced up to rounding. Rounding grows like
/// ε·|f|/h for the first derivative and ε·|f|/h² for the second, so pass a
/// profile that has its large constant part removed (a frequency *shift*
/// rather than an absolute frequency).
pub fn numeric_derivatives<F: Fn(f64) -> f64>(profile: F, q0: f64, h: f64) -> Result<Derivatives> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::invalid("finite-difference step", format!("must be positive, got {h}")));
    }
    let smallest = h / 4.0;
    if q0 + smallest == q0 || q0 - smallest == q0 {
        return Err(Error::Derivative(format!("step {h:e} underflows at q0 = {q0:e}")));
    }

    let f0 = profile(q0);
    let mut scale = f0.abs();
    let mut first = [0.0; 3];
    let mut second = [0.0; 3];
    for (i, step) in [h, h / 2.0, h / 4.0].into_iter().enumerate() {
        let fp = profile(q0 + step);
        let fm = profile(q0 - step);
        if !(fp.is_finite() && fm.is_finite() && f0.is_finite()) {
            return Err(Error::Derivative(format!("profile is not finite near q0 = {q0:e}")));
        }
        scale = scale.max(fp.abs()).max(fm.abs());
        first[i] = (fp - fm) / (2.0 * step);
        second[i] = (fp - 2.0 * f0 + fm) / (step * step);
    }

    let (d1, e1) = richardson(first);
    let (d2, e2) = richardson(second);

    // Rounding floors for the finest step.
    let eps = f64::EPSILON * scale;
    let floor1 = 4.0 * eps / smallest;
    let floor2 = 16.0 * eps / (smallest * smallest);
    let first_error = e1.max(floor1);
    let second_error = e2.max(floor2);

    // A smooth profile has shrinking Richardson corrections; a noisy one
    // leaves corrections far above the rounding floor and the value itself.
    if e1 > 1e3 * floor1 && e1 > 1e-3 * d1.abs() {
        return Err(Error::Derivative(format!(
            "first derivative not converged (correction {e1:e} vs value {d1:e})"
        )));
    }
    if e2 > 1e3 * floor2 && e2 > 1e-3 * d2.abs() {
        return Err(Error::Derivative(format!(
            "second derivative not converged (correction {e2:e} vs value {d2:e})"
        )));
    }

    Ok(Derivatives {
        first: d1,
        second: d2,
        first_error,
        second_error,
    })
}

/// Two extrapolation levels for an O(h²) central-difference sequence.
fn richardson(d: [f64; 3]) -> (f64, f64) {
    let r1a = (4.0 * d[1] - d[0]) / 3.0;
    let r1b = (4.0 * d[2] - d[1]) / 3.0;
    let r2 = (16.0 * r1b - r1a) / 15.0;
    (r2, (r2 - r1b).abs())
}

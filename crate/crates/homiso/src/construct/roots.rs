//! Simultaneous root finding for the pencil polynomials, via the
//! Aberth-Ehrlich iteration with deterministic starting points.

use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::scalar::C64;

/// All roots of `p(z) = coeffs[0] + coeffs[1] z + ...`, multiplicities
/// repeated. Coefficients negligible relative to the largest (1e-14)
/// are trimmed; returned roots are sorted by ascending magnitude.
///
/// Errors with `Numerical` when the iteration fails to settle within
/// `max_iter` sweeps, and with `InvalidArgument` when the trimmed
/// polynomial is constant.
pub fn polynomial_roots(coeffs: &[C64], max_iter: usize) -> Result<Vec<C64>> {
    let max_abs = coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max);
    if max_abs == 0.0 {
        return Err(Error::InvalidArgument(
            "zero polynomial has no isolated roots".into(),
        ));
    }
    let scale = C64::from_real(1.0 / max_abs);
    let trim = 1e-14;
    let mut c: Vec<C64> = coeffs.iter().map(|&x| x * scale).collect();
    while c.last().is_some_and(|l| l.modulus() <= trim) {
        c.pop();
    }
    // Factor out roots at the origin.
    let mut roots = Vec::new();
    while c.first().is_some_and(|f| f.modulus() <= trim) && c.len() > 1 {
        roots.push(C64::new(0.0, 0.0));
        c.remove(0);
    }
    let degree = c.len() - 1;
    match degree {
        0 => {
            if roots.is_empty() {
                return Err(Error::InvalidArgument(
                    "constant polynomial has no roots".into(),
                ));
            }
        }
        1 => roots.push(-c[0] / c[1]),
        2 => roots.extend(quadratic_roots(c[0], c[1], c[2])),
        _ => roots.extend(aberth(&c, max_iter)?),
    }
    roots.sort_by(|a, b| a.modulus().total_cmp(&b.modulus()));
    Ok(roots)
}

/// Numerically stable quadratic formula.
fn quadratic_roots(c0: C64, c1: C64, c2: C64) -> [C64; 2] {
    let disc = (c1 * c1 - C64::from_real(4.0) * c2 * c0).sqrt();
    // Pick the sign that avoids cancellation in -b -/+ disc.
    let q = if (c1 + disc).modulus() >= (c1 - disc).modulus() {
        -(c1 + disc) * C64::from_real(0.5)
    } else {
        -(c1 - disc) * C64::from_real(0.5)
    };
    if q.modulus() == 0.0 {
        return [C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    }
    [q / c2, c0 / q]
}

fn horner(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

fn aberth(c: &[C64], max_iter: usize) -> Result<Vec<C64>> {
    let degree = c.len() - 1;
    // Starting points on a circle at the root-magnitude scale, with an
    // angular offset breaking coefficient symmetries.
    let radius = (c[0].modulus() / c[degree].modulus()).powf(1.0 / degree as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<C64> = (0..degree)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / degree as f64 + 0.5;
            C64::from_polar(radius, theta)
        })
        .collect();

    let eps = 1e-14;
    for _ in 0..max_iter {
        let mut shift_max = 0.0f64;
        for j in 0..degree {
            let (p, dp) = horner(c, z[j]);
            if p.modulus() <= eps * c[degree].modulus() * z[j].modulus().powi(degree as i32).max(1.0) {
                continue;
            }
            let newton = if dp.modulus() > 0.0 { p / dp } else { p };
            let mut repulsion = C64::new(0.0, 0.0);
            for (k, &zk) in z.iter().enumerate() {
                if k != j {
                    let diff = z[j] - zk;
                    if diff.modulus() > 1e-300 {
                        repulsion += C64::from_real(1.0) / diff;
                    }
                }
            }
            let denom = C64::from_real(1.0) - newton * repulsion;
            let step = if denom.modulus() > 1e-300 { newton / denom } else { newton };
            z[j] -= step;
            shift_max = shift_max.max(step.modulus() / (1.0 + z[j].modulus()));
        }
        if shift_max <= eps {
            // Polish with plain Newton.
            for zj in z.iter_mut() {
                for _ in 0..3 {
                    let (p, dp) = horner(c, *zj);
                    if dp.modulus() > 0.0 {
                        *zj -= p / dp;
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(Error::Numerical(format!(
        "root iteration did not settle within {max_iter} sweeps"
    )))
}

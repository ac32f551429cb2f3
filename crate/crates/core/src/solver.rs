//! Damped fixed-point iteration shared by the numerical models.

use crate::error::{Error, Result};

/// Iterates `x ← (1-d)·x + d·F(x)` from `start` until the max-norm change
/// drops below `tolerance`. `step(cur, next)` must write `F(cur)` into
/// `next`. Returns the fixed point and the number of iterations used.
pub fn damped_fixed_point<F>(
    start: &[f64],
    mut step: F,
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<(Vec<f64>, usize)>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if !(damping > 0.0 && damping <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping {damping} outside (0, 1]"
        )));
    }
    let mut cur = start.to_vec();
    let mut next = vec![0.0; cur.len()];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iterations {
        step(&cur, &mut next);
        residual = 0.0;
        for (c, n) in cur.iter_mut().zip(&next) {
            let updated = (1.0 - damping) * *c + damping * n;
            residual = f64::max(residual, (updated - *c).abs());
            *c = updated;
        }
        if residual < tolerance {
            return Ok((cur, it));
        }
    }
    if cur.is_empty() {
        return Ok((cur, 0));
    }
    Err(Error::NotConverged {
        iterations: max_iterations,
        residual,
    })
}

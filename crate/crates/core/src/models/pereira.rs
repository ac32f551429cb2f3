//! Pereira-style trust propagation: the averaged α recurrence and the β
//! values computed by attack depth.

use crate::error::Result;
use crate::framework::Framework;
use crate::valuation::Valuation;

fn attacker_max(fw: &Framework, values: &[f64], x: usize) -> f64 {
    fw.attackers(x).iter().map(|&y| values[y]).fold(0.0, f64::max)
}

/// `α_0 = f`, `α_i(x) = ½·α_{i-1}(x) + ½·min{f(x), 1 - max_y α_{i-1}(y)}`.
/// Returns `α_0..=α_steps`. Runs on cyclic frameworks too.
pub fn pereira_alpha(fw: &Framework, f: &Valuation, steps: usize) -> Vec<Valuation> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(f.clone());
    for _ in 0..steps {
        let cur = out.last().expect("non-empty").values();
        let next = (0..fw.len())
            .map(|x| 0.5 * cur[x] + 0.5 * f.get(x).min(1.0 - attacker_max(fw, cur, x)))
            .collect();
        out.push(Valuation::from_vec_unchecked(next));
    }
    out
}

/// `β(x) = f(x)` at depth 0, else `min{f(x), 1 - max_y β(y)}`.
pub fn pereira_beta(fw: &Framework, f: &Valuation) -> Result<Valuation> {
    let depths = fw.attack_depths()?;
    let mut order: Vec<usize> = (0..fw.len()).collect();
    order.sort_by_key(|&x| depths[x]);
    let mut beta = vec![0.0; fw.len()];
    for x in order {
        beta[x] = if fw.is_source(x) {
            f.get(x)
        } else {
            f.get(x).min(1.0 - attacker_max(fw, &beta, x))
        };
    }
    Ok(Valuation::from_vec_unchecked(beta))
}

use crate::error::Result;
use crate::framework::Framework;
use crate::gr::GRConfig;
use crate::solver::damped_fixed_point;
use crate::valuation::Valuation;

fn categorise(fw: &Framework, values: &[f64], x: usize) -> f64 {
    1.0 / (1.0 + fw.attackers(x).iter().map(|&y| values[y]).sum::<f64>())
}

/// `h(x) = 1 / (1 + Σ_y h(y))`. Exact by depth on acyclic frameworks,
/// damped iteration from all-ones otherwise.
pub fn h_categoriser(fw: &Framework, cfg: &GRConfig) -> Result<Valuation> {
    if let Ok(depths) = fw.attack_depths() {
        let mut order: Vec<usize> = (0..fw.len()).collect();
        order.sort_by_key(|&x| depths[x]);
        let mut h = vec![1.0; fw.len()];
        for x in order {
            h[x] = categorise(fw, &h, x);
        }
        return Ok(Valuation::from_vec_unchecked(h));
    }
    let (h, _) = damped_fixed_point(
        &vec![1.0; fw.len()],
        |cur, next| {
            for (x, slot) in next.iter_mut().enumerate() {
                *slot = categorise(fw, cur, x);
            }
        },
        0.5,
        cfg.change_tolerance,
        cfg.max_iterations,
    )?;
    Ok(Valuation::from_vec_unchecked(h))
}

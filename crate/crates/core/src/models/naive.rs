use crate::afn::AfnKind;
use crate::framework::Framework;
use crate::valuation::Valuation;

/// `V_{i+1}(x) = g({1 - V_i(y)})` without damping. Returns `V_0..=V_steps`.
pub fn naive_iteration(fw: &Framework, kind: &AfnKind, v0: &Valuation, steps: usize) -> Vec<Valuation> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(v0.clone());
    for _ in 0..steps {
        let cur = out.last().expect("non-empty").values();
        let next = (0..fw.len()).map(|x| kind.attack_value(fw, cur, x)).collect();
        out.push(Valuation::from_vec_unchecked(next));
    }
    out
}

/// Smallest period `p ≤ max_period` with which the tail of `trajectory`
/// repeats (within `tolerance`), checked over the last `2p` entries.
pub fn period(trajectory: &[Valuation], max_period: usize, tolerance: f64) -> Option<usize> {
    let n = trajectory.len();
    (1..=max_period)
        .filter(|&p| 2 * p < n)
        .find(|&p| (n - 2 * p..n - p).all(|i| trajectory[i].max_abs_diff(&trajectory[i + p]) <= tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn npq_oscillates() {
        let fw = fixtures::npq();
        let v0 = Valuation::new(&fw, vec![1.0, 0.0, 0.5]).unwrap();
        let t = naive_iteration(&fw, &AfnKind::Min, &v0, 6);
        assert_eq!(t[1].values(), &[0.5, 0.0, 0.0]);
        assert_eq!(t[2].values(), &[1.0, 0.5, 0.5]);
        assert_eq!(t[3].values(), &[0.5, 0.0, 0.0]);
        assert_eq!(period(&t, 3, 0.0), Some(2));
    }

    #[test]
    fn legal_fixed_point_constant() {
        let fw = fixtures::fig6();
        let v0 = Valuation::new(&fw, vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let t = naive_iteration(&fw, &AfnKind::Min, &v0, 4);
        assert!(t.iter().all(|v| *v == v0));
        assert_eq!(period(&t, 2, 0.0), Some(1));
    }
}

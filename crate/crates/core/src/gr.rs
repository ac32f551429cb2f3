//! The iteration `V' = (1-V)·min(½, a) + V·max(½, a)` and its run loops.
//!
//! `a` is the aggregate of the complemented attacker values (1 for
//! sources). Updates are synchronous: every new value is computed from the
//! same snapshot.

use serde::{Deserialize, Serialize};

use crate::afn::AfnKind;
use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::valuation::Valuation;

pub use crate::cp::equilibrium_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GRConfig {
    /// Convergence threshold on the max per-node change.
    pub change_tolerance: f64,
    /// Distance to {0, ½, 1} within which a limit is snapped.
    pub snap_tolerance: f64,
    pub max_iterations: usize,
    pub record_trajectory: bool,
}

impl Default for GRConfig {
    fn default() -> Self {
        GRConfig {
            change_tolerance: 1e-12,
            snap_tolerance: 1e-6,
            max_iterations: 100_000,
            record_trajectory: false,
        }
    }
}

impl GRConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.change_tolerance > 0.0) {
            return Err(Error::InvalidParameter("change tolerance must be positive".into()));
        }
        if !(self.snap_tolerance > 0.0 && self.snap_tolerance < 0.25) {
            return Err(Error::InvalidParameter("snap tolerance must lie in (0, 1/4)".into()));
        }
        if self.change_tolerance >= self.snap_tolerance {
            return Err(Error::InvalidParameter(
                "change tolerance must be below the snap tolerance".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "argument", rename_all = "snake_case")]
pub enum GRStatus {
    Converged,
    IterationCapHit,
    UnresolvedValue(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GRReport {
    pub stable_index_k: usize,
    /// `V_{k+1}`.
    pub settled: Valuation,
    /// Snapped limit; unsnappable entries keep their raw value.
    pub equilibrium: Valuation,
    pub raw_equilibrium: Valuation,
    pub iterations_run: usize,
    pub status: GRStatus,
    /// `V_0, V_1, …, V_last` when requested.
    pub trajectory: Option<Vec<Valuation>>,
}

impl GRReport {
    pub fn converged(&self) -> bool {
        self.status == GRStatus::Converged
    }
}

/// Largest double below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;
/// Smallest positive double.
const ABOVE_ZERO: f64 = f64::from_bits(1);

/// One node update. An interior value never becomes crisp in exact
/// arithmetic, but rounding would absorb `1 - 2^-54` into 1 after about
/// fifty halvings; the result is kept strictly inside `(0, 1)` instead.
#[inline]
pub fn gr_update(value: f64, a: f64) -> f64 {
    let next = (1.0 - value) * a.min(0.5) + value * a.max(0.5);
    if value > 0.0 && value < 1.0 {
        next.clamp(ABOVE_ZERO, BELOW_ONE)
    } else {
        next
    }
}

pub fn gr_step(fw: &Framework, v: &Valuation, kind: &AfnKind) -> Valuation {
    let cur = v.values();
    Valuation::from_vec_unchecked(
        (0..fw.len())
            .map(|x| gr_update(cur[x], kind.attack_value(fw, cur, x)))
            .collect(),
    )
}

/// Crisp values of `prev` survive into `next`.
pub(crate) fn crisp_preserved(prev: &[f64], next: &[f64]) -> bool {
    prev.iter()
        .zip(next)
        .all(|(&p, &n)| (p != 0.0 && p != 1.0) || p == n)
}

/// Runs until the stable index is known. Returns `k` and `V_{k+1}`.
pub fn run_to_stable(fw: &Framework, v0: &Valuation, kind: &AfnKind) -> Result<(usize, Valuation)> {
    check_size(fw, v0)?;
    let mut cur = v0.clone();
    for k in 0..=fw.len() {
        let next = gr_step(fw, &cur, kind);
        if crisp_preserved(cur.values(), next.values()) {
            return Ok((k, next));
        }
        cur = next;
    }
    Err(Error::StabilityBoundExceeded(fw.len()))
}

pub fn run_to_equilibrium(fw: &Framework, v0: &Valuation, kind: &AfnKind, cfg: &GRConfig) -> Result<GRReport> {
    check_size(fw, v0)?;
    let report = run_schema(fw, v0, cfg, |cur, x| kind.attack_value(fw, cur, x))?;
    if report.iterations_run > report.stable_index_k && report.stable_index_k > fw.len() {
        return Err(Error::StabilityBoundExceeded(fw.len()));
    }
    Ok(report)
}

fn check_size(fw: &Framework, v0: &Valuation) -> Result<()> {
    if v0.len() != fw.len() {
        return Err(Error::SizeMismatch {
            expected: fw.len(),
            got: v0.len(),
        });
    }
    Ok(())
}

/// Shared loop for the argumentation and ADF forms. `aggregate(cur, x)`
/// yields the `a` value of node `x` on snapshot `cur`.
pub(crate) fn run_schema<A>(fw: &Framework, v0: &Valuation, cfg: &GRConfig, aggregate: A) -> Result<GRReport>
where
    A: Fn(&[f64], usize) -> f64,
{
    cfg.validate()?;
    let n = fw.len();
    let mut cur = v0.values().to_vec();
    let mut next = vec![0.0; n];
    let mut trajectory = cfg.record_trajectory.then(|| vec![v0.clone()]);
    let mut stable: Option<(usize, Vec<f64>)> = None;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iterations {
        for (x, slot) in next.iter_mut().enumerate() {
            *slot = gr_update(cur[x], aggregate(&cur, x));
        }
        if stable.is_none() && crisp_preserved(&cur, &next) {
            stable = Some((iterations, next.clone()));
        }
        let change = cur
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut cur, &mut next);
        iterations += 1;
        if let Some(t) = trajectory.as_mut() {
            t.push(Valuation::from_vec_unchecked(cur.clone()));
        }
        if stable.is_some() && change < cfg.change_tolerance {
            converged = true;
            break;
        }
    }

    let (k, settled) = match stable {
        Some(s) => s,
        // cap reached before stability could be confirmed
        None => (iterations, cur.clone()),
    };
    let mut unresolved = None;
    let snapped: Vec<f64> = cur
        .iter()
        .enumerate()
        .map(|(x, &raw)| match snap(raw, cfg.snap_tolerance) {
            Some(s) => s,
            None => {
                unresolved.get_or_insert(x);
                raw
            }
        })
        .collect();

    let status = if !converged {
        GRStatus::IterationCapHit
    } else if let Some(x) = unresolved {
        GRStatus::UnresolvedValue(fw.name(x).to_string())
    } else {
        GRStatus::Converged
    };

    Ok(GRReport {
        stable_index_k: k,
        settled: Valuation::from_vec_unchecked(settled),
        equilibrium: Valuation::from_vec_unchecked(snapped),
        raw_equilibrium: Valuation::from_vec_unchecked(cur),
        iterations_run: iterations,
        status,
        trajectory,
    })
}

/// Nearest of {0, ½, 1} if within `tolerance`.
pub fn snap(value: f64, tolerance: f64) -> Option<f64> {
    [0.0, 0.5, 1.0]
        .into_iter()
        .find(|t| (value - t).abs() <= tolerance)
}

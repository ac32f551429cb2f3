//! Repeated equilibrium runs that freeze newly crisp values and restore the
//! original seed everywhere else, until no new crisp value appears.

use serde::{Deserialize, Serialize};

use crate::afn::AfnKind;
use crate::cp::equilibrium_oracle;
use crate::error::{Error, Result};
use crate::framework::{ArgSet, Framework};
use crate::gr::{run_to_equilibrium, GRConfig, GRStatus};
use crate::valuation::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquilibriumMode {
    /// Exact limit through the labelling pipeline.
    #[default]
    Oracle,
    /// Iterate the min-kind schema.
    Iterative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedRound {
    pub seed: Valuation,
    pub equilibrium: Valuation,
    pub crisp: ArgSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedReport {
    pub rounds: Vec<EnhancedRound>,
    pub final_extension: ArgSet,
}

fn equilibrium(fw: &Framework, seed: &Valuation, cfg: &GRConfig, mode: EquilibriumMode) -> Result<Valuation> {
    match mode {
        EquilibriumMode::Oracle => Ok(equilibrium_oracle(fw, seed)),
        EquilibriumMode::Iterative => {
            let r = run_to_equilibrium(fw, seed, &AfnKind::Min, cfg)?;
            match r.status {
                GRStatus::Converged => Ok(r.equilibrium),
                _ => Err(Error::NotConverged {
                    iterations: r.iterations_run,
                    residual: r.raw_equilibrium.max_abs_diff(&r.equilibrium),
                }),
            }
        }
    }
}

pub fn enhanced_run(fw: &Framework, v0: &Valuation, cfg: &GRConfig, mode: EquilibriumMode) -> Result<EnhancedReport> {
    if v0.len() != fw.len() {
        return Err(Error::SizeMismatch {
            expected: fw.len(),
            got: v0.len(),
        });
    }
    let mut crisp = ArgSet::new();
    let mut seed = v0.clone();
    let mut rounds = Vec::new();
    loop {
        let ve = equilibrium(fw, &seed, cfg, mode)?;
        let (ins, outs) = ve.in_out_sets();
        let new: ArgSet = ins.union(&outs).copied().collect();
        let done = new.is_subset(&crisp);
        crisp.extend(new.iter().copied());
        rounds.push(EnhancedRound {
            seed: seed.clone(),
            equilibrium: ve.clone(),
            crisp: crisp.clone(),
        });
        if done {
            debug_assert!(rounds.len() <= fw.len() + 1);
            return Ok(EnhancedReport {
                rounds,
                final_extension: ins,
            });
        }
        let values = (0..fw.len())
            .map(|x| if new.contains(&x) { ve.get(x) } else { v0.get(x) })
            .collect();
        seed = Valuation::from_vec_unchecked(values);
    }
}

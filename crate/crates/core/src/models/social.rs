//! Social abstract argumentation under the product semantics:
//! `M(x) = τ(x) · Π_y (1 - τ(y,x)·M(y))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::gr::GRConfig;
use crate::solver::damped_fixed_point;
use crate::valuation::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VoteTally {
    pub positive: u64,
    pub negative: u64,
}

impl VoteTally {
    pub fn new(positive: u64, negative: u64) -> Self {
        VoteTally { positive, negative }
    }
}

/// `p / (p + m + ε)`.
pub fn tau_epsilon(t: VoteTally, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} must be positive")));
    }
    let p = t.positive as f64;
    Ok(p / (p + t.negative as f64 + epsilon))
}

#[derive(Debug, Clone)]
pub struct SocialFramework {
    framework: Framework,
    argument_votes: Vec<VoteTally>,
    /// Aligned with `framework.attacks()`; `None` means full support 1.
    attack_votes: Vec<Option<VoteTally>>,
    epsilon: f64,
}

impl SocialFramework {
    /// Argument votes indexed like `framework`; attacks start with full
    /// support until votes are set.
    pub fn new(framework: Framework, argument_votes: Vec<VoteTally>, epsilon: f64) -> Result<Self> {
        if argument_votes.len() != framework.len() {
            return Err(Error::SizeMismatch {
                expected: framework.len(),
                got: argument_votes.len(),
            });
        }
        tau_epsilon(VoteTally::default(), epsilon)?;
        let attack_votes = vec![None; framework.attacks().len()];
        Ok(SocialFramework {
            framework,
            argument_votes,
            attack_votes,
            epsilon,
        })
    }

    pub fn set_attack_votes(&mut self, from: &str, to: &str, votes: VoteTally) -> Result<()> {
        let edge = (self.framework.id(from)?, self.framework.id(to)?);
        let i = self
            .framework
            .attacks()
            .iter()
            .position(|&e| e == edge)
            .ok_or_else(|| Error::InvalidParameter(format!("no attack {from} -> {to}")))?;
        self.attack_votes[i] = Some(votes);
        Ok(())
    }

    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn argument_support(&self) -> Vec<f64> {
        self.argument_votes
            .iter()
            .map(|&t| tau_epsilon(t, self.epsilon).expect("epsilon checked"))
            .collect()
    }

    fn incoming(&self) -> Vec<Vec<(usize, f64)>> {
        let mut incoming = vec![Vec::new(); self.framework.len()];
        for (&(y, x), votes) in self.framework.attacks().iter().zip(&self.attack_votes) {
            let support = votes.map_or(1.0, |t| tau_epsilon(t, self.epsilon).expect("epsilon checked"));
            incoming[x].push((y, support));
        }
        incoming
    }
}

/// Damped iteration seeded with the argument supports.
pub fn social_solve(sf: &SocialFramework, damping: f64, cfg: &GRConfig) -> Result<Valuation> {
    let tau = sf.argument_support();
    let incoming = sf.incoming();
    let (m, _) = damped_fixed_point(
        &tau,
        |cur, next| {
            for (x, slot) in next.iter_mut().enumerate() {
                *slot = tau[x] * incoming[x].iter().map(|&(y, s)| 1.0 - s * cur[y]).product::<f64>();
            }
        },
        damping,
        cfg.change_tolerance,
        cfg.max_iterations,
    )?;
    Ok(Valuation::from_vec_unchecked(m))
}

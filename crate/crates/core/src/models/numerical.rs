//! Numerical networks: initial values, attack weights ξ and a pair of
//! combination functions. The equilibrium solves
//! `V(x) = h(V_0(x), g({1 - ξ(y,x)·V(y)}))`.

use crate::afn::AfnKind;
use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::gr::GRConfig;
use crate::solver::damped_fixed_point;
use crate::valuation::Valuation;

#[derive(Debug, Clone)]
pub struct NumericalNetwork {
    framework: Framework,
    initial: Valuation,
    /// Aligned with `framework.attacks()`.
    weights: Vec<f64>,
    pub g_kind: AfnKind,
    pub h_kind: AfnKind,
}

impl NumericalNetwork {
    /// All weights 1.
    pub fn new(framework: Framework, initial: Valuation, g_kind: AfnKind, h_kind: AfnKind) -> Result<Self> {
        if initial.len() != framework.len() {
            return Err(Error::SizeMismatch {
                expected: framework.len(),
                got: initial.len(),
            });
        }
        let weights = vec![1.0; framework.attacks().len()];
        Ok(NumericalNetwork {
            framework,
            initial,
            weights,
            g_kind,
            h_kind,
        })
    }

    pub fn set_weight(&mut self, from: &str, to: &str, weight: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::InvalidParameter(format!("weight {weight} outside [0, 1]")));
        }
        let edge = (self.framework.id(from)?, self.framework.id(to)?);
        let i = self
            .framework
            .attacks()
            .iter()
            .position(|&e| e == edge)
            .ok_or_else(|| Error::InvalidParameter(format!("no attack {from} -> {to}")))?;
        self.weights[i] = weight;
        Ok(())
    }

    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn initial(&self) -> &Valuation {
        &self.initial
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<f64> {
        self.framework
            .attacks()
            .iter()
            .position(|&e| e == (from, to))
            .map(|i| self.weights[i])
    }

    /// One application of the equation right-hand side.
    pub fn apply(&self, values: &[f64], out: &mut [f64], incoming: &[Vec<(usize, f64)>]) {
        for (x, slot) in out.iter_mut().enumerate() {
            let complements: Vec<f64> = incoming[x].iter().map(|&(y, w)| 1.0 - w * values[y]).collect();
            let a = self.g_kind.apply(&complements);
            *slot = self.h_kind.apply(&[self.initial.get(x), a]);
        }
    }

    fn incoming(&self) -> Vec<Vec<(usize, f64)>> {
        let mut incoming = vec![Vec::new(); self.framework.len()];
        for (&(y, x), &w) in self.framework.attacks().iter().zip(&self.weights) {
            incoming[x].push((y, w));
        }
        incoming
    }

    /// Max-norm residual of the equations at `v`.
    pub fn residual(&self, v: &Valuation) -> f64 {
        let mut out = vec![0.0; v.len()];
        self.apply(v.values(), &mut out, &self.incoming());
        v.values()
            .iter()
            .zip(&out)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Damped iteration from `V_0`. Returns the attractor of that seed.
pub fn numafn_solve(net: &NumericalNetwork, damping: f64, cfg: &GRConfig) -> Result<Valuation> {
    let incoming = net.incoming();
    let (v, _) = damped_fixed_point(
        net.initial.values(),
        |cur, next| net.apply(cur, next, &incoming),
        damping,
        cfg.change_tolerance,
        cfg.max_iterations,
    )?;
    Ok(Valuation::from_vec_unchecked(v))
}

/// Symmetric limit `κ/(1+κ)` of the two-cycle `V(X) = κ(1 - V(Y))`,
/// `V(Y) = κ(1 - V(X))`. Tends to ½ as κ → 1.
pub fn kappa_two_cycle(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::InvalidParameter(format!("kappa {kappa} outside (0, 1)")));
    }
    Ok(kappa / (1.0 + kappa))
}

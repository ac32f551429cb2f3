//! Host–parasitoid recurrence with linear escape functions:
//!
//! ```text
//! N' = λ·N·(1 - a1·P)·(1 - a2·Q)
//! P' = a1·N·P
//! Q' = a2·Q·N·(1 - a1·P)
//! ```
//!
//! Populations are non-negative reals and are not clamped to `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HassellParams {
    pub a1: f64,
    pub a2: f64,
    pub growth_lambda: f64,
}

impl HassellParams {
    pub fn new(a1: f64, a2: f64, growth_lambda: f64) -> Result<Self> {
        if !(a1 > 0.0 && a2 > 0.0 && growth_lambda > 0.0) {
            return Err(Error::InvalidParameter("parameters must be positive".into()));
        }
        Ok(HassellParams { a1, a2, growth_lambda })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HassellState {
    pub n: f64,
    pub p: f64,
    pub q: f64,
}

impl HassellState {
    pub fn new(n: f64, p: f64, q: f64) -> Self {
        HassellState { n, p, q }
    }

    pub fn max_abs_diff(&self, other: &HassellState) -> f64 {
        (self.n - other.n)
            .abs()
            .max((self.p - other.p).abs())
            .max((self.q - other.q).abs())
    }
}

pub fn hassell_step(params: &HassellParams, s: &HassellState) -> HassellState {
    let escape_p = 1.0 - params.a1 * s.p;
    HassellState {
        n: params.growth_lambda * s.n * escape_p * (1.0 - params.a2 * s.q),
        p: params.a1 * s.n * s.p,
        q: params.a2 * s.q * s.n * escape_p,
    }
}

/// States `0..=steps`.
pub fn hassell_simulate(params: &HassellParams, state0: HassellState, steps: usize) -> Vec<HassellState> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state0);
    for _ in 0..steps {
        let next = hassell_step(params, out.last().expect("non-empty"));
        out.push(next);
    }
    out
}

/// Interior fixed point `N = 1/a1`, `P = (a2-a1)/(a1·a2)`,
/// `Q = (λ·a1-a2)/(λ·a1·a2)`. Needs `λ·a1 ≥ a2 ≥ a1`.
pub fn hassell_fixed_point(params: &HassellParams) -> Result<HassellState> {
    let HassellParams { a1, a2, growth_lambda: l } = *params;
    if !(l * a1 >= a2 && a2 >= a1) {
        return Err(Error::InvalidParameter(
            "fixed point needs lambda*a1 >= a2 >= a1".into(),
        ));
    }
    let fp = HassellState {
        n: 1.0 / a1,
        p: (a2 - a1) / (a1 * a2),
        q: (l * a1 - a2) / (l * a1 * a2),
    };
    let residual = hassell_step(params, &fp).max_abs_diff(&fp);
    assert!(residual < 1e-12, "fixed point residual {residual}");
    Ok(fp)
}

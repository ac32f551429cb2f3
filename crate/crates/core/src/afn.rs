//! Argumentation-friendly aggregation functions and the equation systems
//! they generate.
//!
//! Every node equation has the form `v(x) = g({1 - v(y) : y ∈ Att(x)})`, so
//! `g` always receives complemented attacker values. With that convention
//! `min` gives `v(x) = 1 - max v(y)` and `product` gives `v(x) = Π (1 - v(y))`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{ArgSet, Framework};
use crate::semantics;
use crate::valuation::Valuation;

/// Anything that aggregates a finite sequence from `[0, 1]`.
pub trait Aggregator {
    fn aggregate(&self, values: &[f64]) -> f64;
}

impl<F> Aggregator for F
where
    F: Fn(&[f64]) -> f64,
{
    fn aggregate(&self, values: &[f64]) -> f64 {
        self(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AfnKind {
    Min,
    Product,
    /// `(1-w)·min(½, g) + w·max(½, g)` over a base function `g`.
    Lambda { weight: f64, base: Box<AfnKind> },
}

impl AfnKind {
    pub fn lambda(weight: f64, base: AfnKind) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::InvalidParameter(format!(
                "lambda weight {weight} outside [0, 1]"
            )));
        }
        Ok(AfnKind::Lambda {
            weight,
            base: Box::new(base),
        })
    }

    /// Checked evaluation: every input must lie in `[0, 1]`.
    pub fn eval(&self, values: &[f64]) -> Result<f64> {
        if let Some(&bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::ValueOutOfRange {
                argument: "<input>".to_string(),
                value: bad,
            });
        }
        Ok(self.apply(values))
    }

    pub(crate) fn apply(&self, values: &[f64]) -> f64 {
        match self {
            AfnKind::Min => values.iter().copied().fold(1.0, f64::min),
            AfnKind::Product => values.iter().product(),
            AfnKind::Lambda { weight, base } => {
                let g = base.apply(values);
                (1.0 - weight) * g.min(0.5) + weight * g.max(0.5)
            }
        }
    }

    /// Aggregate of the complemented attacker values of `x`.
    pub fn attack_value(&self, fw: &Framework, values: &[f64], x: usize) -> f64 {
        match self {
            // fast paths, no allocation
            AfnKind::Min => fw
                .attackers(x)
                .iter()
                .map(|&y| 1.0 - values[y])
                .fold(1.0, f64::min),
            AfnKind::Product => fw.attackers(x).iter().map(|&y| 1.0 - values[y]).product(),
            AfnKind::Lambda { .. } => {
                let complements: Vec<f64> =
                    fw.attackers(x).iter().map(|&y| 1.0 - values[y]).collect();
                self.apply(&complements)
            }
        }
    }
}

impl Aggregator for AfnKind {
    fn aggregate(&self, values: &[f64]) -> f64 {
        self.apply(values)
    }
}

impl fmt::Display for AfnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AfnKind::Min => f.write_str("min"),
            AfnKind::Product => f.write_str("product"),
            AfnKind::Lambda { weight, base } => write!(f, "lambda({weight}, {base})"),
        }
    }
}

impl std::str::FromStr for AfnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "max" => Ok(AfnKind::Min),
            "product" | "inv" => Ok(AfnKind::Product),
            other => Err(Error::InvalidParameter(format!("unknown function `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    /// `g(∅) = 1`
    T1,
    /// `g(1; Δ) = g(Δ)`
    T2,
    /// symmetry
    T3,
    /// `g(Δ) = 0` iff `0 ∈ Δ`
    T4,
    /// `g(Δ) = 1` iff every element is 1
    T5,
    /// continuity; not decidable from samples, never checked
    T6Continuity,
    /// all elements above 0 and some below 1 implies `g(Δ) ∈ (0, 1)`
    T6Interior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    /// `None` for axioms that are not tested.
    pub passed: Option<bool>,
    pub witness: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
    pub sequences_checked: usize,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom has an outcome")
    }

    /// All checked axioms passed.
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed != Some(false))
    }
}

const AXIOM_TOLERANCE: f64 = 1e-12;

/// Every sequence over `{0, ¼, ½, ¾, 1}` of length at most `max_len`.
pub fn boundary_grid(max_len: usize) -> Vec<Vec<f64>> {
    const POINTS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut all = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for &p in &POINTS {
                let mut s: Vec<f64> = seq.clone();
                s.push(p);
                next.push(s);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Checks T1–T5 and the interior condition on the boundary grid (length
/// ≤ 4), a few fixed sequences, and `samples` random sequences of length
/// 0..=6 drawn from a fixed seed.
pub fn check_afn_axioms<G: Aggregator + ?Sized>(g: &G, samples: usize) -> AxiomReport {
    check_afn_axioms_seeded(g, samples, 0x5eed)
}

pub fn check_afn_axioms_seeded<G: Aggregator + ?Sized>(
    g: &G,
    samples: usize,
    seed: u64,
) -> AxiomReport {
    let mut sequences = boundary_grid(4);
    sequences.extend([vec![0.0], vec![1.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.5]]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(0..=6);
        let seq = (0..len)
            .map(|_| match rng.gen_range(0..6) {
                0 => 0.0,
                1 => 1.0,
                2 => 0.5,
                _ => rng.gen::<f64>(),
            })
            .collect();
        sequences.push(seq);
    }

    let mut failures: [Option<Vec<f64>>; 7] = Default::default();
    let mut record = |idx: usize, seq: &[f64]| {
        if failures[idx].is_none() {
            failures[idx] = Some(seq.to_vec());
        }
    };

    if g.aggregate(&[]) != 1.0 {
        record(0, &[]);
    }
    for (i, seq) in sequences.iter().enumerate() {
        let value = g.aggregate(seq);

        let mut with_one = seq.clone();
        with_one.insert(i % (seq.len() + 1), 1.0);
        if (g.aggregate(&with_one) - value).abs() > AXIOM_TOLERANCE {
            record(1, &with_one);
        }

        if seq.len() > 1 {
            let mut reversed = seq.clone();
            reversed.reverse();
            let mut rotated = seq.clone();
            rotated.rotate_left(1);
            if (g.aggregate(&reversed) - value).abs() > AXIOM_TOLERANCE
                || (g.aggregate(&rotated) - value).abs() > AXIOM_TOLERANCE
            {
                record(2, seq);
            }
        }

        if (value == 0.0) != seq.contains(&0.0) {
            record(3, seq);
        }
        if (value == 1.0) != seq.iter().all(|&x| x == 1.0) {
            record(4, seq);
        }
        if seq.iter().all(|&x| x > 0.0) && seq.iter().any(|&x| x < 1.0) && !(value > 0.0 && value < 1.0)
        {
            record(6, seq);
        }
    }

    let axioms = [
        Axiom::T1,
        Axiom::T2,
        Axiom::T3,
        Axiom::T4,
        Axiom::T5,
        Axiom::T6Continuity,
        Axiom::T6Interior,
    ];
    let outcomes = axioms
        .iter()
        .zip(failures)
        .map(|(&axiom, witness)| {
            let passed = if axiom == Axiom::T6Continuity {
                None
            } else {
                Some(witness.is_none())
            };
            AxiomOutcome {
                axiom,
                passed,
                witness,
            }
        })
        .collect();
    AxiomReport {
        outcomes,
        sequences_checked: sequences.len(),
    }
}

/// Right-hand side of the node equation for `x`.
pub fn node_equation(fw: &Framework, kind: &AfnKind, v: &Valuation, x: usize) -> f64 {
    kind.attack_value(fw, v.values(), x)
}

/// Max-norm distance between `v` and the right-hand side of its equations.
pub fn equation_residual(fw: &Framework, kind: &AfnKind, v: &Valuation) -> f64 {
    (0..fw.len())
        .map(|x| (v.get(x) - node_equation(fw, kind, v, x)).abs())
        .fold(0.0, f64::max)
}

/// The `{1, 0, ½}` solution of the `min` equations for a complete extension.
pub fn extension_to_solution(fw: &Framework, e: &ArgSet) -> Result<Valuation> {
    if !semantics::is_complete(fw, e)? {
        return Err(Error::NotComplete);
    }
    let attacked = fw.attacked_set(e)?;
    let values = (0..fw.len())
        .map(|x| {
            if e.contains(&x) {
                1.0
            } else if attacked.contains(&x) {
                0.0
            } else {
                0.5
            }
        })
        .collect();
    let v = Valuation::from_vec_unchecked(values);
    debug_assert_eq!(equation_residual(fw, &AfnKind::Min, &v), 0.0);
    Ok(v)
}

/// Numerically solves the node equations on the undecided part of a
/// preferred extension and splices the result into the `{1, 0}` pattern.
///
/// The block is solved by damped iteration from ½; this is the constructive
/// half of the existence argument for preferred extensions.
pub fn preferred_extension_solution(
    fw: &Framework,
    kind: &AfnKind,
    e: &ArgSet,
    tolerance: f64,
    max_iterations: usize,
) -> Result<Valuation> {
    if !semantics::is_complete(fw, e)? {
        return Err(Error::NotComplete);
    }
    let attacked = fw.attacked_set(e)?;
    let undecided: ArgSet = (0..fw.len())
        .filter(|x| !e.contains(x) && !attacked.contains(x))
        .collect();
    let block = fw.restrict(&undecided)?;
    let seed = vec![0.5; block.len()];
    let (solved, _) = crate::solver::damped_fixed_point(
        &seed,
        |cur, next| {
            for (x, slot) in next.iter_mut().enumerate() {
                *slot = kind.attack_value(&block, cur, x);
            }
        },
        0.5,
        tolerance,
        max_iterations,
    )?;
    let mut values = vec![0.5; fw.len()];
    for x in 0..fw.len() {
        if e.contains(&x) {
            values[x] = 1.0;
        } else if attacked.contains(&x) {
            values[x] = 0.0;
        }
    }
    for (i, &x) in undecided.iter().enumerate() {
        values[x] = solved[i];
    }
    Valuation::new(fw, values)
}

//! Abstract dialectical frameworks run through the generalised iteration,
//! with `a` replaced by the numeric value of each acceptance condition.
//!
//! Conditions are evaluated with ⊤ = 1, ⊥ = 0, ¬x = 1 - x, ∧ = min and
//! ∨ = max.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::gr::{run_schema, GRConfig, GRReport};
use crate::valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AcceptanceCondition {
    True,
    False,
    Var(String),
    Not(Box<AcceptanceCondition>),
    And(Vec<AcceptanceCondition>),
    Or(Vec<AcceptanceCondition>),
}

impl AcceptanceCondition {
    pub fn var(name: &str) -> Self {
        AcceptanceCondition::Var(name.to_string())
    }

    pub fn not(c: AcceptanceCondition) -> Self {
        AcceptanceCondition::Not(Box::new(c))
    }

    pub fn and(cs: Vec<AcceptanceCondition>) -> Self {
        AcceptanceCondition::And(cs)
    }

    pub fn or(cs: Vec<AcceptanceCondition>) -> Self {
        AcceptanceCondition::Or(cs)
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            AcceptanceCondition::True | AcceptanceCondition::False => {}
            AcceptanceCondition::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            AcceptanceCondition::Not(c) => c.collect_vars(out),
            AcceptanceCondition::And(cs) | AcceptanceCondition::Or(cs) => {
                cs.iter().for_each(|c| c.collect_vars(out))
            }
        }
    }
}

impl fmt::Display for AcceptanceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, cs: &[AcceptanceCondition], op: &str| {
            f.write_str("(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            AcceptanceCondition::True => f.write_str("T"),
            AcceptanceCondition::False => f.write_str("F"),
            AcceptanceCondition::Var(v) => f.write_str(v),
            AcceptanceCondition::Not(c) => write!(f, "!{c}"),
            AcceptanceCondition::And(cs) => join(f, cs, "&"),
            AcceptanceCondition::Or(cs) => join(f, cs, "|"),
        }
    }
}

/// Numeric value of `c` under `v`; variables are looked up in `fw`.
pub fn eval_condition(c: &AcceptanceCondition, fw: &Framework, v: &Valuation) -> Result<f64> {
    let resolved = Resolved::new(c, fw)?;
    Ok(resolved.eval(v.values()))
}

/// Condition with variables replaced by argument indices.
#[derive(Debug, Clone)]
enum Resolved {
    Const(f64),
    Var(usize),
    Not(Box<Resolved>),
    And(Vec<Resolved>),
    Or(Vec<Resolved>),
}

impl Resolved {
    fn new(c: &AcceptanceCondition, fw: &Framework) -> Result<Self> {
        Ok(match c {
            AcceptanceCondition::True => Resolved::Const(1.0),
            AcceptanceCondition::False => Resolved::Const(0.0),
            AcceptanceCondition::Var(name) => Resolved::Var(
                fw.id(name)
                    .map_err(|_| Error::UndeclaredArgument(name.clone()))?,
            ),
            AcceptanceCondition::Not(c) => Resolved::Not(Box::new(Resolved::new(c, fw)?)),
            AcceptanceCondition::And(cs) => {
                Resolved::And(cs.iter().map(|c| Resolved::new(c, fw)).collect::<Result<_>>()?)
            }
            AcceptanceCondition::Or(cs) => {
                Resolved::Or(cs.iter().map(|c| Resolved::new(c, fw)).collect::<Result<_>>()?)
            }
        })
    }

    fn eval(&self, v: &[f64]) -> f64 {
        match self {
            Resolved::Const(c) => *c,
            Resolved::Var(x) => v[*x],
            Resolved::Not(c) => 1.0 - c.eval(v),
            Resolved::And(cs) => cs.iter().map(|c| c.eval(v)).fold(1.0, f64::min),
            Resolved::Or(cs) => cs.iter().map(|c| c.eval(v)).fold(0.0, f64::max),
        }
    }
}

/// An ADF: arguments, one condition each, and the link graph (`y → x`
/// whenever `y` occurs in the condition of `x`).
#[derive(Debug, Clone)]
pub struct Adf {
    links: Framework,
    conditions: Vec<AcceptanceCondition>,
    resolved: Vec<Resolved>,
}

impl Adf {
    pub fn new<S: AsRef<str>>(entries: &[(S, AcceptanceCondition)]) -> Result<Self> {
        let names: Vec<&str> = entries.iter().map(|(n, _)| n.as_ref()).collect();
        let bare = Framework::new(&names, &[])?;
        let mut edges = Vec::new();
        for (name, cond) in entries {
            for var in cond.variables() {
                bare.id(var)
                    .map_err(|_| Error::UndeclaredArgument(var.to_string()))?;
                edges.push((var, name.as_ref()));
            }
        }
        let links = Framework::new(&names, &edges)?;
        let conditions: Vec<AcceptanceCondition> = entries.iter().map(|(_, c)| c.clone()).collect();
        let resolved = conditions
            .iter()
            .map(|c| Resolved::new(c, &links))
            .collect::<Result<_>>()?;
        Ok(Adf {
            links,
            conditions,
            resolved,
        })
    }

    pub fn framework(&self) -> &Framework {
        &self.links
    }

    pub fn conditions(&self) -> &[AcceptanceCondition] {
        &self.conditions
    }

    pub fn condition_value(&self, x: usize, v: &Valuation) -> f64 {
        self.resolved[x].eval(v.values())
    }

    /// The four-statement example: `a = ⊤`, `b = a`, `c = c ∧ b`, `d = ¬d`.
    pub fn example() -> Adf {
        use AcceptanceCondition as C;
        Adf::new(&[
            ("a", C::True),
            ("b", C::var("a")),
            ("c", C::and(vec![C::var("c"), C::var("b")])),
            ("d", C::not(C::var("d"))),
        ])
        .expect("example is well formed")
    }
}

pub fn adf_run(adf: &Adf, v0: &Valuation, cfg: &GRConfig) -> Result<GRReport> {
    if v0.len() != adf.links.len() {
        return Err(Error::SizeMismatch {
            expected: adf.links.len(),
            got: v0.len(),
        });
    }
    run_schema(&adf.links, v0, cfg, |cur, x| adf.resolved[x].eval(cur))
}

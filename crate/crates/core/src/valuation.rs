//! Valuations (numeric assignments in `[0, 1]`) and labellings
//! (`in`/`out`/`und` assignments), with the translation between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{ArgSet, Framework};

/// Three-valued label of an argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    #[serde(rename = "und")]
    Undec,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::In, Label::Out, Label::Undec];

    pub fn value(self) -> f64 {
        match self {
            Label::In => 1.0,
            Label::Out => 0.0,
            Label::Undec => 0.5,
        }
    }

    /// 1 → in, 0 → out, anything strictly between → und.
    pub fn of_value(v: f64) -> Label {
        if v == 1.0 {
            Label::In
        } else if v == 0.0 {
            Label::Out
        } else {
            Label::Undec
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "und",
        })
    }
}

/// Total labelling, indexed like the framework it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling(Vec<Label>);

impl Labelling {
    pub fn new(labels: Vec<Label>) -> Self {
        Labelling(labels)
    }

    pub fn uniform(n: usize, label: Label) -> Self {
        Labelling(vec![label; n])
    }

    pub fn from_pairs(fw: &Framework, pairs: &[(&str, Label)]) -> Result<Self> {
        let mut labels: Vec<Option<Label>> = vec![None; fw.len()];
        for &(name, label) in pairs {
            let x = fw.id(name)?;
            if labels[x].replace(label).is_some() {
                return Err(Error::DuplicateEntry(name.to_string()));
            }
        }
        labels
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.ok_or_else(|| Error::UnknownArgument(fw.name(x).to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Labelling)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn get(&self, x: usize) -> Label {
        self.0[x]
    }

    pub fn set(&mut self, x: usize, label: Label) {
        self.0[x] = label;
    }

    pub fn with_label(&self, label: Label) -> ArgSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn in_set(&self) -> ArgSet {
        self.with_label(Label::In)
    }

    pub fn out_set(&self) -> ArgSet {
        self.with_label(Label::Out)
    }

    /// in → 1, out → 0, und → ½.
    pub fn to_valuation(&self) -> Valuation {
        Valuation(self.0.iter().map(|l| l.value()).collect())
    }

    /// The labelling induced by an extension: members in, attacked out,
    /// everything else und.
    pub fn from_extension(fw: &Framework, e: &ArgSet) -> Result<Self> {
        let attacked = fw.attacked_set(e)?;
        Ok(Labelling(
            (0..fw.len())
                .map(|x| {
                    if e.contains(&x) {
                        Label::In
                    } else if attacked.contains(&x) {
                        Label::Out
                    } else {
                        Label::Undec
                    }
                })
                .collect(),
        ))
    }
}

/// Total assignment of values in `[0, 1]`, indexed like its framework.
#[derive(Debug, Clone, PartialEq)]
pub struct Valuation(Vec<f64>);

impl Valuation {
    /// Checks size and range against `fw`.
    pub fn new(fw: &Framework, values: Vec<f64>) -> Result<Self> {
        if values.len() != fw.len() {
            return Err(Error::SizeMismatch {
                expected: fw.len(),
                got: values.len(),
            });
        }
        for (x, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ValueOutOfRange {
                    argument: fw.name(x).to_string(),
                    value: v,
                });
            }
        }
        Ok(Valuation(values))
    }

    /// Every argument of `fw` must be listed exactly once.
    pub fn from_pairs(fw: &Framework, pairs: &[(&str, f64)]) -> Result<Self> {
        let mut values: Vec<Option<f64>> = vec![None; fw.len()];
        for &(name, v) in pairs {
            let x = fw.id(name)?;
            if values[x].replace(v).is_some() {
                return Err(Error::DuplicateEntry(name.to_string()));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::UnknownArgument(fw.name(x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Valuation::new(fw, values)
    }

    pub fn constant(n: usize, value: f64) -> Self {
        assert!((0.0..=1.0).contains(&value));
        Valuation(vec![value; n])
    }

    /// For values produced by range-preserving maps inside the crate.
    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)), "{values:?}");
        Valuation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, x: usize) -> f64 {
        self.0[x]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    /// 1 → in, 0 → out, `(0,1)` → und.
    pub fn to_labelling(&self) -> Labelling {
        Labelling(self.0.iter().map(|&v| Label::of_value(v)).collect())
    }

    /// `in(v)` and `out(v)`: arguments valued exactly 1 and exactly 0.
    pub fn in_out_sets(&self) -> (ArgSet, ArgSet) {
        let mut ins = ArgSet::new();
        let mut outs = ArgSet::new();
        for (x, &v) in self.0.iter().enumerate() {
            if v == 1.0 {
                ins.insert(x);
            } else if v == 0.0 {
                outs.insert(x);
            }
        }
        (ins, outs)
    }

    pub fn in_set(&self) -> ArgSet {
        self.in_out_sets().0
    }

    pub fn max_abs_diff(&self, other: &Valuation) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

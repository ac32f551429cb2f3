//! Contraction and expansion sequences over labellings.
//!
//! `down_admissible` relabels illegal `in`/`out` arguments to `und` one at a
//! time; `up_complete` then relabels illegal `und` arguments to `in` or
//! `out`. The endpoints do not depend on the pick order; [`PickOrder`]
//! exists so tests can confirm that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::semantics::{classify_illegal, is_illegal};
use crate::valuation::{Label, Labelling, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PickOrder {
    /// Smallest argument index (first-appearance order).
    #[default]
    First,
    Last,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceStep {
    pub argument: usize,
    pub from: Label,
    pub to: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTrace {
    pub steps: Vec<SequenceStep>,
    pub final_labelling: Labelling,
}

fn pick(fw: &Framework, lab: &Labelling, order: PickOrder, want: impl Fn(Label) -> bool) -> Option<usize> {
    let candidate = |&x: &usize| want(lab.get(x)) && is_illegal(fw, lab, x);
    match order {
        PickOrder::First => (0..fw.len()).find(candidate),
        PickOrder::Last => (0..fw.len()).rev().find(candidate),
    }
}

pub fn down_admissible(fw: &Framework, lab: &Labelling) -> SequenceTrace {
    down_admissible_ordered(fw, lab, PickOrder::First)
}

pub fn down_admissible_ordered(fw: &Framework, lab: &Labelling, order: PickOrder) -> SequenceTrace {
    let mut cur = lab.clone();
    let mut steps = Vec::new();
    while let Some(x) = pick(fw, &cur, order, |l| l != Label::Undec) {
        steps.push(SequenceStep {
            argument: x,
            from: cur.get(x),
            to: Label::Undec,
        });
        cur.set(x, Label::Undec);
    }
    debug_assert!(steps.len() <= fw.len());
    SequenceTrace {
        steps,
        final_labelling: cur,
    }
}

pub fn up_complete(fw: &Framework, lab: &Labelling) -> Result<SequenceTrace> {
    up_complete_ordered(fw, lab, PickOrder::First)
}

pub fn up_complete_ordered(fw: &Framework, lab: &Labelling, order: PickOrder) -> Result<SequenceTrace> {
    let illegal = classify_illegal(fw, lab);
    if !illegal.is_admissible() {
        let culprit = illegal
            .illegal_in
            .iter()
            .chain(&illegal.illegal_out)
            .next()
            .copied()
            .unwrap_or(0);
        return Err(Error::NotAdmissible(fw.name(culprit).to_string()));
    }
    let mut cur = lab.clone();
    let mut steps = Vec::new();
    while let Some(x) = pick(fw, &cur, order, |l| l == Label::Undec) {
        let att = fw.attackers(x);
        let all_out = att.iter().all(|&y| cur.get(y) == Label::Out);
        let some_in = att.iter().any(|&y| cur.get(y) == Label::In);
        assert!(all_out != some_in, "expansion case must be unique");
        let to = if all_out { Label::In } else { Label::Out };
        steps.push(SequenceStep {
            argument: x,
            from: Label::Undec,
            to,
        });
        cur.set(x, to);
    }
    Ok(SequenceTrace {
        steps,
        final_labelling: cur,
    })
}

/// Contraction followed by expansion; the result is always complete.
pub fn cp_pipeline(fw: &Framework, lab: &Labelling) -> Labelling {
    cp_pipeline_ordered(fw, lab, PickOrder::First)
}

pub fn cp_pipeline_ordered(fw: &Framework, lab: &Labelling, order: PickOrder) -> Labelling {
    let da = down_admissible_ordered(fw, lab, order).final_labelling;
    up_complete_ordered(fw, &da, order)
        .expect("contraction output is admissible")
        .final_labelling
}

/// The exact equilibrium of the iteration started at `v0`, computed
/// through the labelling pipeline.
pub fn equilibrium_oracle(fw: &Framework, v0: &Valuation) -> Valuation {
    cp_pipeline(fw, &v0.to_labelling()).to_valuation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_legal_labelling;
    use Label::{In, Out, Undec};

    fn f6() -> Framework {
        Framework::new(
            &["X", "Y", "W", "Z"],
            &[("X", "Y"), ("Y", "W"), ("W", "Z"), ("Z", "W")],
        )
        .unwrap()
    }

    #[test]
    fn contraction_cascades_on_case2() {
        let fw = f6();
        let lab = Labelling::new(vec![Out, In, In, Out]);
        let trace = down_admissible(&fw, &lab);
        assert_eq!(trace.final_labelling, Labelling::uniform(4, Undec));
        assert!(trace.steps.iter().all(|s| s.to == Undec));
        assert_eq!(trace.steps[0].argument, 0);
    }

    #[test]
    fn legal_input_needs_no_steps() {
        let fw = f6();
        let lab = Labelling::new(vec![In, Out, In, Out]);
        assert!(down_admissible(&fw, &lab).steps.is_empty());
        assert!(up_complete(&fw, &lab).unwrap().steps.is_empty());
        assert_eq!(cp_pipeline(&fw, &lab), lab);
    }

    #[test]
    fn both_in_two_cycle_contracts_to_und() {
        let fw = Framework::new(&["A", "B"], &[("A", "B"), ("B", "A")]).unwrap();
        let lab = Labelling::new(vec![In, In]);
        assert_eq!(down_admissible(&fw, &lab).final_labelling, Labelling::uniform(2, Undec));
    }

    #[test]
    fn expansion_examples() {
        let fw = f6();
        let trace = up_complete(&fw, &Labelling::uniform(4, Undec)).unwrap();
        assert_eq!(trace.final_labelling.labels(), &[In, Out, Undec, Undec]);
        assert!(trace.steps.iter().all(|s| s.from == Undec));

        let chain = Framework::new(&["X", "Y", "W"], &[("X", "Y"), ("Y", "W")]).unwrap();
        let out = up_complete(&chain, &Labelling::new(vec![In, Out, Undec])).unwrap();
        assert_eq!(out.final_labelling.labels(), &[In, Out, In]);

        assert!(matches!(
            up_complete(&fw, &Labelling::new(vec![Out, Undec, Undec, Undec])),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn pipeline_examples() {
        let fw = f6();
        let out = cp_pipeline(&fw, &Labelling::new(vec![Out, Out, Out, In]));
        assert_eq!(out.labels(), &[In, Out, Out, In]);
        assert!(is_legal_labelling(&fw, &out));

        let l = Framework::new(
            &["X", "Y", "A", "B", "C", "Z"],
            &[("A", "B"), ("B", "C"), ("C", "A"), ("B", "X"), ("X", "Y"), ("Y", "X")],
        )
        .unwrap();
        let seed = Valuation::new(&l, vec![1.0, 0.0, 1.0, 0.0, 0.0, 0.5]).unwrap();
        let out = equilibrium_oracle(&l, &seed);
        assert_eq!(out.values(), &[0.5, 0.5, 0.5, 0.5, 0.5, 1.0]);
    }
}

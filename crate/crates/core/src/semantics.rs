//! Labelling legality and brute-force extension semantics.
//!
//! Everything here is written straight from the definitions and serves as
//! ground truth for the numeric engine and the labelling constructions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{ArgSet, Framework};
use crate::valuation::{Label, Labelling, Valuation};

/// Default largest framework the enumerating oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "ARGEQ_MAX_ORACLE_ARGS";

pub fn default_oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Complete,
    Preferred,
    Stable,
    Grounded,
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" | "co" => Ok(Semantics::Complete),
            "preferred" | "pr" => Ok(Semantics::Preferred),
            "stable" | "st" => Ok(Semantics::Stable),
            "grounded" | "gr" => Ok(Semantics::Grounded),
            other => Err(Error::InvalidParameter(format!("unknown semantics `{other}`"))),
        }
    }
}

/// Arguments labelled illegally, split by their label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IllegalSets {
    pub illegal_in: ArgSet,
    pub illegal_out: ArgSet,
    pub illegal_und: ArgSet,
}

impl IllegalSets {
    pub fn is_legal(&self) -> bool {
        self.illegal_in.is_empty() && self.illegal_out.is_empty() && self.illegal_und.is_empty()
    }

    /// No illegal `in` or `out` labels.
    pub fn is_admissible(&self) -> bool {
        self.illegal_in.is_empty() && self.illegal_out.is_empty()
    }
}

/// Whether `x` is illegally labelled under `lab`.
pub fn is_illegal(fw: &Framework, lab: &Labelling, x: usize) -> bool {
    let att = fw.attackers(x);
    match lab.get(x) {
        Label::In => att.iter().any(|&y| lab.get(y) != Label::Out),
        Label::Out => !att.iter().any(|&y| lab.get(y) == Label::In),
        Label::Undec => {
            att.iter().all(|&y| lab.get(y) == Label::Out)
                || att.iter().any(|&y| lab.get(y) == Label::In)
        }
    }
}

pub fn classify_illegal(fw: &Framework, lab: &Labelling) -> IllegalSets {
    let mut sets = IllegalSets::default();
    for x in 0..fw.len() {
        if is_illegal(fw, lab, x) {
            match lab.get(x) {
                Label::In => sets.illegal_in.insert(x),
                Label::Out => sets.illegal_out.insert(x),
                Label::Undec => sets.illegal_und.insert(x),
            };
        }
    }
    sets
}

pub fn is_legal_labelling(fw: &Framework, lab: &Labelling) -> bool {
    (0..fw.len()).all(|x| !is_illegal(fw, lab, x))
}

/// Numeric legality: 1 with all attackers 0; 0 with some attacker 1; or an
/// interior value with no attacker at 1 and some attacker above 0.
pub fn is_legal_assignment(fw: &Framework, v: &Valuation) -> bool {
    (0..fw.len()).all(|x| {
        let att = fw.attackers(x);
        let value = v.get(x);
        if value == 1.0 {
            att.iter().all(|&y| v.get(y) == 0.0)
        } else if value == 0.0 {
            att.iter().any(|&y| v.get(y) == 1.0)
        } else {
            !att.iter().any(|&y| v.get(y) == 1.0) && att.iter().any(|&y| v.get(y) > 0.0)
        }
    })
}

/// Flags for a candidate extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub conflict_free: bool,
    pub admissible: bool,
    pub complete: bool,
    pub stable: bool,
    /// `None` when the framework is above the enumeration cap.
    pub preferred: Option<bool>,
}

pub fn is_conflict_free(fw: &Framework, e: &ArgSet) -> bool {
    e.iter()
        .all(|&x| fw.attackers(x).iter().all(|y| !e.contains(y)))
}

/// Every attacker of `x` is attacked by `e` (given as `E+`).
fn acceptable(fw: &Framework, x: usize, attacked_by_e: &ArgSet) -> bool {
    fw.attackers(x).iter().all(|y| attacked_by_e.contains(y))
}

pub fn is_admissible(fw: &Framework, e: &ArgSet) -> Result<bool> {
    let plus = fw.attacked_set(e)?;
    Ok(is_conflict_free(fw, e) && e.iter().all(|&x| acceptable(fw, x, &plus)))
}

pub fn is_complete(fw: &Framework, e: &ArgSet) -> Result<bool> {
    let plus = fw.attacked_set(e)?;
    Ok(is_conflict_free(fw, e)
        && (0..fw.len()).all(|x| acceptable(fw, x, &plus) == e.contains(&x)))
}

pub fn is_stable(fw: &Framework, e: &ArgSet) -> Result<bool> {
    let plus = fw.attacked_set(e)?;
    Ok(is_conflict_free(fw, e) && (0..fw.len()).all(|x| e.contains(&x) || plus.contains(&x)))
}

pub fn extension_properties(fw: &Framework, e: &ArgSet, cap: usize) -> Result<ExtensionReport> {
    let conflict_free = is_conflict_free(fw, e);
    let admissible = is_admissible(fw, e)?;
    let complete = is_complete(fw, e)?;
    let stable = is_stable(fw, e)?;
    let preferred = if !complete {
        Some(false)
    } else if fw.len() > cap {
        None
    } else {
        let all = complete_labellings(fw, cap)?;
        Some(
            !all.iter()
                .map(Labelling::in_set)
                .any(|other| other.len() > e.len() && other.is_superset(e)),
        )
    };
    Ok(ExtensionReport {
        conflict_free,
        admissible,
        complete,
        stable,
        preferred,
    })
}

/// All legal (complete) labellings, by backtracking over `in/out/und`.
///
/// Arguments are assigned component by component, upstream first, and each
/// argument's legality is checked as soon as it and all its attackers are
/// assigned, which prunes most of the `3^n` space.
pub fn complete_labellings(fw: &Framework, cap: usize) -> Result<Vec<Labelling>> {
    let n = fw.len();
    if n > cap {
        return Err(Error::OracleCapExceeded { size: n, cap });
    }
    let order: Vec<usize> = fw.sccs().into_iter().flatten().collect();
    let mut pos = vec![0; n];
    for (p, &x) in order.iter().enumerate() {
        pos[x] = p;
    }
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let at = fw
            .attackers(x)
            .iter()
            .map(|&y| pos[y])
            .chain(std::iter::once(pos[x]))
            .max()
            .unwrap_or(pos[x]);
        ready[at].push(x);
    }

    let mut out = Vec::new();
    let mut lab = Labelling::uniform(n, Label::Undec);
    search(fw, &order, &ready, 0, &mut lab, &mut out);
    Ok(out)
}

fn search(
    fw: &Framework,
    order: &[usize],
    ready: &[Vec<usize>],
    p: usize,
    lab: &mut Labelling,
    out: &mut Vec<Labelling>,
) {
    if p == order.len() {
        out.push(lab.clone());
        return;
    }
    for label in Label::ALL {
        lab.set(order[p], label);
        if ready[p].iter().all(|&q| !is_illegal(fw, lab, q)) {
            search(fw, order, ready, p + 1, lab, out);
        }
    }
}

/// Extensions under `semantics`, duplicate-free and sorted by their index
/// lists.
pub fn enumerate_extensions(fw: &Framework, semantics: Semantics, cap: usize) -> Result<Vec<ArgSet>> {
    let labellings = complete_labellings(fw, cap)?;
    let complete: BTreeSet<ArgSet> = labellings.iter().map(Labelling::in_set).collect();
    let result: Vec<ArgSet> = match semantics {
        Semantics::Complete => complete.into_iter().collect(),
        Semantics::Preferred => complete
            .iter()
            .filter(|e| !complete.iter().any(|o| o.len() > e.len() && o.is_superset(e)))
            .cloned()
            .collect(),
        Semantics::Stable => labellings
            .iter()
            .filter(|l| l.labels().iter().all(|&x| x != Label::Undec))
            .map(Labelling::in_set)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        Semantics::Grounded => {
            let minimal: Vec<ArgSet> = complete
                .iter()
                .filter(|e| complete.iter().all(|o| o.is_superset(e)))
                .cloned()
                .collect();
            debug_assert_eq!(minimal.len(), 1);
            debug_assert_eq!(minimal.first(), Some(&grounded_extension(fw)));
            minimal
        }
    };
    Ok(result)
}

/// Least fixed point of the characteristic function `F(E) = {x | x is
/// acceptable w.r.t. E}`, iterated from the empty set.
pub fn grounded_extension(fw: &Framework) -> ArgSet {
    let mut e = ArgSet::new();
    loop {
        let plus = fw.attacked_set(&e).unwrap_or_default();
        let next: ArgSet = (0..fw.len()).filter(|&x| acceptable(fw, x, &plus)).collect();
        if next == e {
            return e;
        }
        e = next;
    }
}

//! Reference implementations used as oracles by the integration tests.
//! They work straight from the definitions on plain attack lists and share
//! no code with the library beyond the `Framework` container.
#![allow(dead_code)]

use std::collections::BTreeSet;

use argeq::{Framework, Label, Labelling, Valuation};
use rand::Rng;

pub type Set = BTreeSet<usize>;

pub fn random_framework<R: Rng>(rng: &mut R, max_nodes: usize, edge_p: f64) -> Framework {
    let n = rng.gen_range(1..=max_nodes);
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(edge_p) {
                edges.push((s, t));
            }
        }
    }
    framework_from(n, &edges)
}

pub fn framework_from(n: usize, edges: &[(usize, usize)]) -> Framework {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let pairs: Vec<(String, String)> = edges
        .iter()
        .map(|&(s, t)| (names[s].clone(), names[t].clone()))
        .collect();
    Framework::new(&names, &pairs).expect("generated framework is valid")
}

pub fn random_crisp_seed<R: Rng>(rng: &mut R, fw: &Framework) -> Valuation {
    let values = (0..fw.len()).map(|_| [0.0, 0.5, 1.0][rng.gen_range(0..3)]).collect();
    Valuation::new(fw, values).expect("values in range")
}

fn attackers(fw: &Framework, x: usize) -> Vec<usize> {
    fw.attacks().iter().filter(|&&(_, t)| t == x).map(|&(s, _)| s).collect()
}

fn attacks(fw: &Framework, s: usize, t: usize) -> bool {
    fw.attacks().contains(&(s, t))
}

pub fn conflict_free(fw: &Framework, e: &Set) -> bool {
    e.iter().all(|&a| e.iter().all(|&b| !attacks(fw, a, b)))
}

/// Every attacker of `x` is attacked by some member of `e`.
pub fn defends(fw: &Framework, e: &Set, x: usize) -> bool {
    attackers(fw, x)
        .into_iter()
        .all(|y| e.iter().any(|&z| attacks(fw, z, y)))
}

pub fn admissible(fw: &Framework, e: &Set) -> bool {
    conflict_free(fw, e) && e.iter().all(|&x| defends(fw, e, x))
}

pub fn complete(fw: &Framework, e: &Set) -> bool {
    admissible(fw, e) && (0..fw.len()).all(|x| !defends(fw, e, x) || e.contains(&x))
}

pub fn subsets(n: usize) -> impl Iterator<Item = Set> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

/// All complete extensions, sorted, by checking every subset.
pub fn brute_complete(fw: &Framework) -> Vec<Set> {
    let mut out: Vec<Set> = subsets(fw.len()).filter(|e| complete(fw, e)).collect();
    out.sort();
    out
}

pub fn brute_preferred(fw: &Framework) -> Vec<Set> {
    let all = brute_complete(fw);
    let mut out: Vec<Set> = all
        .iter()
        .filter(|e| !all.iter().any(|f| f != *e && e.is_subset(f)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn brute_stable(fw: &Framework) -> Vec<Set> {
    let mut out: Vec<Set> = subsets(fw.len())
        .filter(|e| {
            conflict_free(fw, e)
                && (0..fw.len()).all(|x| e.contains(&x) || e.iter().any(|&y| attacks(fw, y, x)))
        })
        .collect();
    out.sort();
    out
}

pub fn attacked_by(fw: &Framework, e: &Set) -> Set {
    (0..fw.len())
        .filter(|&x| e.iter().any(|&y| attacks(fw, y, x)))
        .collect()
}

/// Min-kind update written from the node formula.
pub fn reference_step(fw: &Framework, v: &[f64]) -> Vec<f64> {
    (0..fw.len())
        .map(|x| {
            let m = attackers(fw, x).into_iter().map(|y| v[y]).fold(0.0, f64::max);
            let a = 1.0 - m;
            (1.0 - v[x]) * a.min(0.5) + v[x] * a.max(0.5)
        })
        .collect()
}

/// Largest admissible labelling below `lab`: `in` and `out` may only be
/// weakened to `und`. Returns `(in, out)` of the unique largest one, or
/// `None` if no single candidate dominates all others.
pub fn largest_admissible_below(fw: &Framework, lab: &Labelling) -> Option<(Set, Set)> {
    let crisp: Vec<usize> = (0..fw.len()).filter(|&x| lab.get(x) != Label::Undec).collect();
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << crisp.len()) {
        let mut l = Labelling::uniform(fw.len(), Label::Undec);
        for (i, &x) in crisp.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l.set(x, lab.get(x));
            }
        }
        if labelling_admissible(fw, &l) {
            candidates.push((l.in_set(), l.out_set()));
        }
    }
    candidates
        .iter()
        .find(|(i, o)| candidates.iter().all(|(i2, o2)| i2.is_subset(i) && o2.is_subset(o)))
        .cloned()
}

/// No argument illegally `in` or illegally `out`.
pub fn labelling_admissible(fw: &Framework, l: &Labelling) -> bool {
    (0..fw.len()).all(|x| {
        let att = attackers(fw, x);
        match l.get(x) {
            Label::In => att.iter().all(|&y| l.get(y) == Label::Out),
            Label::Out => att.iter().any(|&y| l.get(y) == Label::In),
            Label::Undec => true,
        }
    })
}

/// Longest backward path from `x` by exhaustive search; `None` on a cycle.
pub fn brute_depth(fw: &Framework, x: usize) -> Option<usize> {
    fn go(fw: &Framework, x: usize, path: &mut Vec<usize>) -> Option<usize> {
        if path.contains(&x) {
            return None;
        }
        path.push(x);
        let mut best = 0;
        for y in attackers(fw, x) {
            best = best.max(1 + go(fw, y, path)?);
        }
        path.pop();
        Some(best)
    }
    go(fw, x, &mut Vec::new())
}

pub fn reachable(fw: &Framework, from: usize, to: usize) -> bool {
    let mut seen = vec![false; fw.len()];
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        if std::mem::replace(&mut seen[x], true) {
            continue;
        }
        stack.extend(fw.attacks().iter().filter(|&&(s, _)| s == x).map(|&(_, t)| t));
    }
    false
}

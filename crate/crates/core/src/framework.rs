//! Argumentation frameworks: arguments, the attack relation and the graph
//! queries the rest of the crate is built on.
//!
//! Arguments are addressed by their position in declaration order. That
//! order is also the tie-break order everywhere a procedure has to pick one
//! argument among several.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod parse;

pub use parse::FrameworkFormat;

/// A set of arguments, stored as declaration-order indices.
pub type ArgSet = BTreeSet<usize>;

/// Name of an argument. Non-empty, no whitespace, parentheses or commas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let valid = !name.is_empty()
            && !name
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','));
        if valid {
            Ok(ArgumentId(name))
        } else {
            Err(Error::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for ArgumentId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ArgumentId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        ArgumentId::new(value)
    }
}

impl From<ArgumentId> for String {
    fn from(id: ArgumentId) -> String {
        id.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An abstract argumentation framework `<S, R>`.
///
/// Immutable once built. Self-attacks are allowed, duplicate attacks are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    arguments: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl Framework {
    /// Builds a framework from argument names and `(attacker, target)` pairs.
    ///
    /// Duplicate attacks are rejected along with duplicate or undeclared
    /// arguments.
    pub fn new<S: AsRef<str>>(arguments: &[S], attacks: &[(S, S)]) -> Result<Self> {
        let mut builder = FrameworkBuilder::default();
        for name in arguments {
            builder.add_argument(name.as_ref())?;
        }
        for (from, to) in attacks {
            builder.add_attack(from.as_ref(), to.as_ref())?;
        }
        Ok(builder.build())
    }

    /// Builds a framework over `n` arguments named by index, from index pairs.
    /// Duplicate pairs are ignored. Meant for generated instances.
    pub fn from_indices(names: Vec<ArgumentId>, attacks: &[(usize, usize)]) -> Result<Self> {
        let mut builder = FrameworkBuilder::default();
        for name in names {
            builder.push_argument(name)?;
        }
        let n = builder.arguments.len();
        for &(a, b) in attacks {
            if a >= n {
                return Err(Error::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::IndexOutOfRange(b));
            }
            builder.attack_set.insert((a, b));
        }
        Ok(builder.build())
    }

    pub fn parse(text: &str, format: FrameworkFormat) -> Result<Self> {
        parse::parse_framework(text, format)
    }

    pub fn to_text(&self, format: FrameworkFormat) -> String {
        parse::write_framework(self, format)
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.arguments
    }

    pub fn name(&self, x: usize) -> &ArgumentId {
        &self.arguments[x]
    }

    /// Attacks in insertion order.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn has_attack(&self, from: usize, to: usize) -> bool {
        self.attackers
            .get(to)
            .is_some_and(|att| att.binary_search(&from).is_ok())
    }

    /// Index of the named argument.
    pub fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(name.to_string()))
    }

    /// Indices for several names at once.
    pub fn ids<S: AsRef<str>>(&self, names: &[S]) -> Result<ArgSet> {
        names.iter().map(|n| self.id(n.as_ref())).collect()
    }

    pub fn names(&self, set: &ArgSet) -> Vec<&str> {
        set.iter().map(|&x| self.arguments[x].as_str()).collect()
    }

    /// `Att(x)`, sorted by index. Panics if `x` is out of range.
    pub fn attackers(&self, x: usize) -> &[usize] {
        &self.attackers[x]
    }

    /// Arguments attacked by `x`, sorted by index.
    pub fn targets(&self, x: usize) -> &[usize] {
        &self.targets[x]
    }

    pub fn attackers_of(&self, name: &str) -> Result<ArgSet> {
        let x = self.id(name)?;
        Ok(self.attackers[x].iter().copied().collect())
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.attackers[x].is_empty()
    }

    fn check_set(&self, set: &ArgSet) -> Result<()> {
        match set.iter().find(|&&x| x >= self.len()) {
            Some(&x) => Err(Error::IndexOutOfRange(x)),
            None => Ok(()),
        }
    }

    /// `E+`: everything attacked by some member of `e`.
    pub fn attacked_set(&self, e: &ArgSet) -> Result<ArgSet> {
        self.check_set(e)?;
        Ok(e.iter()
            .flat_map(|&x| self.targets[x].iter().copied())
            .collect())
    }

    /// The sub-framework induced by `subset`, keeping declaration order.
    pub fn restrict(&self, subset: &ArgSet) -> Result<Framework> {
        self.check_set(subset)?;
        let remap: HashMap<usize, usize> = subset
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let names = subset.iter().map(|&x| self.arguments[x].clone()).collect();
        let attacks: Vec<(usize, usize)> = self
            .attacks
            .iter()
            .filter_map(|(a, b)| Some((*remap.get(a)?, *remap.get(b)?)))
            .collect();
        Framework::from_indices(names, &attacks)
    }

    /// Strongly connected components, upstream first: a component appears
    /// after every component containing one of its attackers. Members of
    /// each component are sorted.
    pub fn sccs(&self) -> Vec<ArgSet> {
        tarjan(self.len(), |v| &self.attackers[v])
    }

    /// Longest backward attack path from `x`; undefined when a cycle is
    /// reachable backwards.
    pub fn attack_depth(&self, x: usize) -> Result<usize> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange(x));
        }
        let mut memo: Vec<Option<usize>> = vec![None; self.len()];
        self.depth_from(x, &mut memo)
    }

    /// Attack depths of all arguments; fails if any cycle exists.
    pub fn attack_depths(&self) -> Result<Vec<usize>> {
        let mut memo: Vec<Option<usize>> = vec![None; self.len()];
        (0..self.len()).map(|x| self.depth_from(x, &mut memo)).collect()
    }

    fn depth_from(&self, root: usize, memo: &mut [Option<usize>]) -> Result<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Open,
            Done,
        }
        let mut mark: Vec<Mark> = memo
            .iter()
            .map(|m| if m.is_some() { Mark::Done } else { Mark::Fresh })
            .collect();
        let mut stack = vec![(root, 0usize)];
        if mark[root] == Mark::Done {
            return Ok(memo[root].unwrap_or(0));
        }
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let att = &self.attackers[v];
            if *next < att.len() {
                let y = att[*next];
                *next += 1;
                match mark[y] {
                    Mark::Open => return Err(Error::Cyclic(self.arguments[root].to_string())),
                    Mark::Fresh => {
                        mark[y] = Mark::Open;
                        stack.push((y, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                let depth = att
                    .iter()
                    .map(|&y| memo[y].map_or(0, |d| d + 1))
                    .max()
                    .unwrap_or(0);
                memo[v] = Some(depth);
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
        Ok(memo[root].unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.attack_depths().is_ok()
    }
}

/// Iterative Tarjan over `succ`. Components come out in completion order,
/// which for the attacker adjacency puts upstream components first.
fn tarjan<'a, F>(n: usize, succ: F) -> Vec<ArgSet>
where
    F: Fn(usize) -> &'a [usize],
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let next = succ(v);
            if *i < next.len() {
                let w = next[*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = ArgSet::new();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp.insert(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[derive(Default)]
struct FrameworkBuilder {
    arguments: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
    attack_list: Vec<(usize, usize)>,
    attack_set: BTreeSet<(usize, usize)>,
}

impl FrameworkBuilder {
    fn push_argument(&mut self, id: ArgumentId) -> Result<usize> {
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateArgument(id.to_string()));
        }
        let x = self.arguments.len();
        self.index.insert(id.clone(), x);
        self.arguments.push(id);
        Ok(x)
    }

    fn add_argument(&mut self, name: &str) -> Result<usize> {
        self.push_argument(ArgumentId::new(name)?)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UndeclaredArgument(name.to_string()))
    }

    /// Returns false if the attack was already present.
    fn add_attack(&mut self, from: &str, to: &str) -> Result<bool> {
        let pair = (self.lookup(from)?, self.lookup(to)?);
        if self.attack_set.insert(pair) {
            self.attack_list.push(pair);
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn build(self) -> Framework {
        let n = self.arguments.len();
        let attacks = if self.attack_list.len() == self.attack_set.len() {
            self.attack_list
        } else {
            self.attack_set.iter().copied().collect()
        };
        let mut attackers = vec![Vec::new(); n];
        let mut targets = vec![Vec::new(); n];
        for &(a, b) in &attacks {
            attackers[b].push(a);
            targets[a].push(b);
        }
        for list in attackers.iter_mut().chain(targets.iter_mut()) {
            list.sort_unstable();
        }
        Framework {
            arguments: self.arguments,
            index: self.index,
            attacks,
            attackers,
            targets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig6() -> Framework {
        Framework::new(
            &["X", "Y", "W", "Z"],
            &[("X", "Y"), ("Y", "W"), ("W", "Z"), ("Z", "W")],
        )
        .unwrap()
    }

    fn set(fw: &Framework, names: &[&str]) -> ArgSet {
        fw.ids(names).unwrap()
    }

    #[test]
    fn attackers_of_fig6() {
        let fw = fig6();
        assert_eq!(fw.attackers_of("W").unwrap(), set(&fw, &["Y", "Z"]));
        assert!(fw.attackers_of("X").unwrap().is_empty());
        assert!(matches!(fw.attackers_of("Q"), Err(Error::UnknownArgument(_))));
    }

    #[test]
    fn self_loop_attacks_itself() {
        let fw = Framework::new(&["X"], &[("X", "X")]).unwrap();
        assert_eq!(fw.attackers_of("X").unwrap(), set(&fw, &["X"]));
    }

    #[test]
    fn attacked_set_is_union_of_targets() {
        let fw = fig6();
        assert_eq!(fw.attacked_set(&set(&fw, &["X"])).unwrap(), set(&fw, &["Y"]));
        assert_eq!(
            fw.attacked_set(&set(&fw, &["X", "W"])).unwrap(),
            set(&fw, &["Y", "Z"])
        );
        assert!(fw.attacked_set(&ArgSet::new()).unwrap().is_empty());
        assert!(fw.attacked_set(&[9].into()).is_err());
    }

    #[test]
    fn restrict_induces_subgraph() {
        let fw = fig6();
        let sub = fw.restrict(&set(&fw, &["W", "Z"])).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.has_attack(sub.id("W").unwrap(), sub.id("Z").unwrap()));
        assert!(sub.has_attack(sub.id("Z").unwrap(), sub.id("W").unwrap()));
        assert_eq!(sub.attacks().len(), 2);

        let single = fw.restrict(&set(&fw, &["X"])).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.attacks().is_empty());

        assert!(fw.restrict(&ArgSet::new()).unwrap().is_empty());
    }

    #[test]
    fn sccs_upstream_first() {
        let fw = fig6();
        let comps = fw.sccs();
        assert_eq!(
            comps,
            vec![set(&fw, &["X"]), set(&fw, &["Y"]), set(&fw, &["W", "Z"])]
        );

        let l = Framework::new(
            &["X", "Y", "A", "B", "C", "Z"],
            &[("A", "B"), ("B", "C"), ("C", "A"), ("B", "X"), ("X", "Y"), ("Y", "X")],
        )
        .unwrap();
        let comps = l.sccs();
        assert_eq!(comps.len(), 3);
        assert!(comps.contains(&set(&l, &["A", "B", "C"])));
        assert!(comps.contains(&set(&l, &["X", "Y"])));
        assert!(comps.contains(&set(&l, &["Z"])));
        let pos = |s: &ArgSet| comps.iter().position(|c| c == s).unwrap();
        assert!(pos(&set(&l, &["A", "B", "C"])) < pos(&set(&l, &["X", "Y"])));

        let edgeless = Framework::new(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(edgeless.sccs().len(), 3);
    }

    #[test]
    fn attack_depth_on_chain_and_cycle() {
        let chain = Framework::new(&["X1", "X2", "X3"], &[("X1", "X2"), ("X2", "X3")]).unwrap();
        assert_eq!(chain.attack_depth(2).unwrap(), 2);
        assert_eq!(chain.attack_depth(0).unwrap(), 0);

        let cycle = Framework::new(&["A", "B"], &[("A", "B"), ("B", "A")]).unwrap();
        assert!(matches!(cycle.attack_depth(0), Err(Error::Cyclic(_))));

        // a cycle downstream of x does not matter
        let fw = fig6();
        assert_eq!(fw.attack_depth(fw.id("Y").unwrap()).unwrap(), 1);
        assert!(fw.attack_depth(fw.id("W").unwrap()).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Framework::new(&["a", "a"], &[]),
            Err(Error::DuplicateArgument(_))
        ));
        assert!(matches!(
            Framework::new(&["a"], &[("a", "b")]),
            Err(Error::UndeclaredArgument(_))
        ));
        assert!(ArgumentId::new("a b").is_err());
        assert!(ArgumentId::new("f(x)").is_err());
        assert!(ArgumentId::new("").is_err());
    }

    #[test]
    fn duplicate_attacks_collapse() {
        let fw = Framework::new(&["a", "b"], &[("a", "b"), ("a", "b")]).unwrap();
        assert_eq!(fw.attacks().len(), 1);
    }
}

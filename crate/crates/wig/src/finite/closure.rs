//! Subsemigroup closures and the weak-generation decision.

use std::collections::{BTreeSet, HashSet};

use super::FiniteSemigroup;
use crate::error::{Error, Result};

/// `⟨gens⟩` as a sorted list.
pub fn subsemigroup_closure(s: &FiniteSemigroup, gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let current: Vec<usize> = set.iter().copied().collect();
        for &a in &frontier {
            for &b in &current {
                for p in [s.mul(a, b), s.mul(b, a)] {
                    if set.insert(p) {
                        next.push(p);
                    }
                }
            }
        }
        frontier = next;
    }
    set.into_iter().collect()
}

fn missing_inverse(s: &FiniteSemigroup, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&a| !set.iter().any(|&b| s.is_inverse(a, b)))
}

/// Whether every member of the closed set `set` has an inverse inside it.
pub fn is_regular_subsemigroup(s: &FiniteSemigroup, set: &[usize]) -> bool {
    missing_inverse(s, set).is_none()
}

/// Inclusion-minimal regular subsemigroups reachable from `⟨x⟩` by adding,
/// for the least member lacking an inverse, one of its inverses in `S`.
/// Every regular subsemigroup containing `x` contains one of them.
pub fn minimal_regular_closures(s: &FiniteSemigroup, x: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !s.is_regular() {
        return Err(Error::NotRegularAmbient);
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut stack = vec![subsemigroup_closure(s, x)];
    while let Some(set) = stack.pop() {
        if !visited.insert(set.clone()) {
            continue;
        }
        match missing_inverse(s, &set) {
            None => {
                found.insert(set);
            }
            Some(a) => {
                for b in s.inverses(a).into_iter().rev() {
                    let mut gens = set.clone();
                    gens.push(b);
                    stack.push(subsemigroup_closure(s, &gens));
                }
            }
        }
    }
    let all: Vec<Vec<usize>> = found.into_iter().collect();
    let minimal = all
        .iter()
        .filter(|a| !all.iter().any(|b| b.len() < a.len() && b.iter().all(|x| a.binary_search(x).is_ok())))
        .cloned()
        .collect();
    Ok(minimal)
}

/// Outcome of the weak-generation test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakGeneration {
    pub weakly_generated: bool,
    pub closures: Vec<Vec<usize>>,
    /// The smallest proper regular closure, if any.
    pub witness: Option<Vec<usize>>,
}

/// `S` is weakly generated by `x` iff no proper regular subsemigroup
/// contains `x`.
pub fn is_weakly_generated(s: &FiniteSemigroup, x: &[usize]) -> Result<WeakGeneration> {
    let closures = minimal_regular_closures(s, x)?;
    let witness = closures.iter().filter(|c| c.len() < s.order()).min_by_key(|c| (c.len(), (*c).clone())).cloned();
    Ok(WeakGeneration { weakly_generated: witness.is_none(), closures, witness })
}

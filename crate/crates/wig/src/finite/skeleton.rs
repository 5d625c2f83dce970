//! Skeleton mappings `Γ(X) → E(S)` and the induced evaluation of
//! mountains in `S¹`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::quotient::GroundQuotient;
use super::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::generators::{Arena, Gen, Kind};
use crate::landscape::Mountain;

/// An element of `S¹`; `None` is the adjoined identity.
pub type Value = Option<usize>;

/// Images of the side and center entries of a triple.
pub type ValueTriple = (Value, Value, Value);

pub fn mul1(s: &FiniteSemigroup, a: Value, b: Value) -> Value {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(s.mul(a, b)),
    }
}

/// How to pick from sandwich sets with several members.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Policy {
    /// Always the least index.
    First,
    /// Every combination, failing past `limit` branches.
    Enumerate { limit: usize },
}

/// A sandwich set with several members met while extending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub level: usize,
    pub key: ValueTriple,
    pub candidates: Vec<usize>,
}

/// A (partial) skeleton mapping. Triples with equal value triples get the
/// same image.
#[derive(Clone, Debug)]
pub struct SkeletonAssignment {
    pub base: Vec<usize>,
    pub choice: BTreeMap<ValueTriple, usize>,
    pub level_images: Vec<BTreeSet<usize>>,
    pub stabilized_at: Option<usize>,
    pub branch_log: Vec<BranchPoint>,
    /// Image of letters not otherwise covered.
    pub fallback: Option<usize>,
    images: HashMap<Gen, usize>,
    pub level_maps: Vec<BTreeMap<ValueTriple, usize>>,
}

impl SkeletonAssignment {
    fn start(base: Vec<usize>) -> Self {
        let level1 = base.iter().copied().collect();
        SkeletonAssignment {
            base,
            choice: BTreeMap::new(),
            level_images: vec![level1],
            stabilized_at: None,
            branch_log: Vec::new(),
            fallback: None,
            images: HashMap::new(),
            level_maps: vec![BTreeMap::new()],
        }
    }

    /// Sends each allowed letter to its own element and every other letter
    /// to the zero.
    pub fn natural(arena: &Arena, q: &GroundQuotient) -> Self {
        let n = arena.alphabet().len();
        let base = (0..n).map(|i| q.element_of(&Mountain::of_letter(arena, arena.base(i)))).collect();
        let mut a = SkeletonAssignment::start(base);
        for &g in &q.allowed {
            a.images.insert(g, q.element_of(&Mountain::of_letter(arena, g)));
        }
        a.fallback = Some(q.zero());
        a
    }

    /// All images of letters of height ≥ 1 seen so far.
    pub fn image_set(&self) -> BTreeSet<usize> {
        self.level_images.iter().flatten().copied().collect()
    }

    pub fn image(&self, arena: &Arena, g: Gen) -> Result<Value> {
        match arena.kind(g) {
            Kind::One => return Ok(None),
            Kind::Base(i) => return Ok(Some(self.base[i])),
            Kind::Triple(..) => {}
        }
        if let Some(&x) = self.images.get(&g) {
            return Ok(Some(x));
        }
        if let Some(x) = self.fallback {
            return Ok(Some(x));
        }
        let key = (
            self.image(arena, arena.left(g))?,
            self.image(arena, arena.center(g).expect("triple"))?,
            self.image(arena, arena.right(g))?,
        );
        self.choice
            .get(&key)
            .map(|&x| Some(x))
            .ok_or_else(|| Error::UncoveredLetter(arena.format_gen(g, None)))
    }
}

/// Result of extending a base assignment.
#[derive(Clone, Debug)]
pub struct SkeletonRun {
    pub assignments: Vec<SkeletonAssignment>,
    /// Distinct image sets, sorted.
    pub skeletons: Vec<BTreeSet<usize>>,
}

fn candidates(s: &FiniteSemigroup, key: ValueTriple) -> Result<Vec<usize>> {
    let (l, c, r) = key;
    let e = mul1(s, r, c).ok_or(Error::EmptySandwich)?;
    let f = mul1(s, c, l).ok_or(Error::EmptySandwich)?;
    let set = s.sandwich_set(e, f)?;
    if set.is_empty() {
        return Err(Error::EmptySandwich);
    }
    Ok(set)
}

/// Extends `base: X → E(S)` level by level up to `max_level`, choosing
/// `g ↦ S((g^r)(g^c), (g^c)(g^l))`.
pub fn skeleton_extend(
    arena: &Arena,
    s: &FiniteSemigroup,
    base: &[usize],
    policy: Policy,
    max_level: usize,
) -> Result<SkeletonRun> {
    if base.len() != arena.alphabet().len() {
        return Err(Error::MalformedTable(format!("{} images for {} letters", base.len(), arena.alphabet().len())));
    }
    for (i, &x) in base.iter().enumerate() {
        if x >= s.order() {
            return Err(Error::OutOfRange(x));
        }
        if !s.is_idempotent(x) {
            return Err(Error::NotIdempotent(s.name(x).to_string()));
        }
        if base[..i].contains(&x) {
            return Err(Error::DuplicateName(s.name(x).to_string()));
        }
    }
    let mut finished = Vec::new();
    let mut stack = vec![(2usize, SkeletonAssignment::start(base.to_vec()))];
    let mut branches = 1usize;
    while let Some((level, mut asg)) = stack.pop() {
        if level > max_level {
            if asg.stabilized_at.is_none() && level >= 4 {
                // one more level from the up-neighbours of level - 2
                if let Some(m) = lookahead_map(arena, &asg, level)? {
                    asg.level_maps.push(m);
                    if repeats(&asg.level_maps) {
                        asg.stabilized_at = Some(level);
                    }
                    asg.level_maps.pop();
                }
            }
            finished.push(asg);
            continue;
        }
        let letters = arena.enum_level(level)?;
        let mut keys = Vec::with_capacity(letters.len());
        let mut fresh: Vec<ValueTriple> = Vec::new();
        for &g in letters.iter() {
            let look = |h: Gen| -> Value {
                match arena.kind(h) {
                    Kind::One => None,
                    Kind::Base(i) => Some(asg.base[i]),
                    Kind::Triple(..) => asg.images.get(&h).copied(),
                }
            };
            let key = (look(arena.left(g)), look(arena.center(g).expect("triple")), look(arena.right(g)));
            if !asg.choice.contains_key(&key) && !fresh.contains(&key) {
                fresh.push(key);
            }
            keys.push(key);
        }
        let options: Vec<Vec<usize>> = fresh.iter().map(|&k| candidates(s, k)).collect::<Result<_>>()?;
        for (k, opts) in fresh.iter().zip(&options) {
            if opts.len() > 1 {
                asg.branch_log.push(BranchPoint { level, key: *k, candidates: opts.clone() });
            }
        }
        let picks: Vec<Vec<usize>> = match policy {
            Policy::First => vec![options.iter().map(|o| o[0]).collect()],
            Policy::Enumerate { limit } => {
                let count = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len()));
                match count {
                    Some(c) if branches - 1 + c <= limit => {}
                    _ => return Err(Error::TooManyBranches(limit)),
                }
                branches += count.unwrap() - 1;
                cartesian(&options)
            }
        };
        for pick in picks.into_iter().rev() {
            let mut next = asg.clone();
            for (k, &v) in fresh.iter().zip(&pick) {
                next.choice.insert(*k, v);
            }
            let mut level_map = BTreeMap::new();
            let mut level_set = BTreeSet::new();
            for (&g, key) in letters.iter().zip(&keys) {
                let v = next.choice[key];
                next.images.insert(g, v);
                level_map.insert(*key, v);
                level_set.insert(v);
            }
            next.level_images.push(level_set);
            next.level_maps.push(level_map);
            if next.stabilized_at.is_none() && repeats(&next.level_maps) {
                next.stabilized_at = Some(level);
            }
            stack.push((level + 1, next));
        }
    }
    let skeletons: BTreeSet<BTreeSet<usize>> = finished.iter().map(SkeletonAssignment::image_set).collect();
    Ok(SkeletonRun { assignments: finished, skeletons: skeletons.into_iter().collect() })
}

/// Whether the last level map equals an earlier one.
fn repeats(maps: &[BTreeMap<ValueTriple, usize>]) -> bool {
    maps.split_last().is_some_and(|(last, rest)| !last.is_empty() && rest.contains(last))
}

/// The value-triple map of `level` computed from the images of the two
/// levels below, or `None` if some value triple has no chosen image yet.
fn lookahead_map(
    arena: &Arena,
    asg: &SkeletonAssignment,
    level: usize,
) -> Result<Option<BTreeMap<ValueTriple, usize>>> {
    let mut map = BTreeMap::new();
    for &c in arena.enum_level(level - 2)?.iter() {
        let vc = asg.image(arena, c)?;
        let mut counts: BTreeMap<Value, usize> = BTreeMap::new();
        for &x in arena.neighbors_up(c)?.iter() {
            *counts.entry(asg.image(arena, x)?).or_default() += 1;
        }
        for (&a, &na) in &counts {
            for &b in counts.keys() {
                if a == b && na < 2 {
                    continue;
                }
                let key = (a, vc, b);
                match asg.choice.get(&key) {
                    Some(&v) => {
                        map.insert(key, v);
                    }
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(Some(map))
}

fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect()
    })
}

/// Product of the letter images of `u` in `S¹`.
pub fn evaluate_mountain(arena: &Arena, s: &FiniteSemigroup, u: &[Gen], asg: &SkeletonAssignment) -> Result<Value> {
    let mut acc = None;
    for &g in u {
        acc = mul1(s, acc, asg.image(arena, g)?);
    }
    Ok(acc)
}

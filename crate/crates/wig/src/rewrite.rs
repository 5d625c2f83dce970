//! Normalization `β = β₂ ∘ β₁`: letters expand to mountains, then rivers
//! are uplifted until none remain.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::{Arena, Gen};
use crate::landscape::{self, beta1_letter, Mountain};

/// Which river to uplift next. The normal form does not depend on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Leftmost river of minimal height.
    #[default]
    LeftmostLowest,
    /// Uniformly random river, from a seeded generator.
    Random(u64),
}

/// Whether the identity class is an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Monoid,
    Semigroup,
}

/// One uplift: the position (in the landscape before the step) and the
/// landscape after it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub position: usize,
    pub collapsed: bool,
    pub result: Vec<Gen>,
}

/// River counts per height, compared lexicographically from height 0 up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiverVector(pub Vec<usize>);

impl PartialOrd for RiverVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RiverVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

pub fn river_vector(arena: &Arena, u: &[Gen]) -> RiverVector {
    let mut counts = Vec::new();
    for i in landscape::rivers(arena, u) {
        let h = arena.height(u[i]);
        if counts.len() <= h {
            counts.resize(h + 1, 0);
        }
        counts[h] += 1;
    }
    RiverVector(counts)
}

/// `β₁(w)`: the splice of the letters' mountains.
pub fn beta1(arena: &Arena, w: &[Gen]) -> Vec<Gen> {
    let mut out = vec![Gen::ONE];
    for &g in w {
        out.extend_from_slice(&beta1_letter(arena, g)[1..]);
    }
    out
}

/// Uplifts the river at `pos`.
pub fn uplift(arena: &Arena, u: &[Gen], pos: usize) -> Result<Vec<Gen>> {
    if pos == 0 || pos + 1 >= u.len() {
        return Err(Error::NotARiver(pos));
    }
    let h = arena.height(u[pos]);
    if arena.height(u[pos - 1]) != h + 1
        || arena.height(u[pos + 1]) != h + 1
        || !arena.is_side_of(u[pos], u[pos - 1])
        || !arena.is_side_of(u[pos], u[pos + 1])
    {
        return Err(Error::NotARiver(pos));
    }
    let mut out = u.to_vec();
    if u[pos - 1] == u[pos + 1] {
        out.drain(pos..pos + 2);
    } else {
        out[pos] = arena.make_triple(u[pos + 1], u[pos], u[pos - 1])?;
    }
    Ok(out)
}

const NIL: usize = usize::MAX;

/// In-place uplifting over an index-linked list. Slots keep their original
/// order, so `(height, slot)` orders rivers leftmost-lowest first.
struct Engine<'a> {
    arena: &'a Arena,
    letters: Vec<Gen>,
    heights: Vec<usize>,
    prev: Vec<usize>,
    next: Vec<usize>,
    rivers: BTreeSet<(usize, usize)>,
    len: usize,
}

impl<'a> Engine<'a> {
    fn new(arena: &'a Arena, u: &[Gen]) -> Self {
        let n = u.len();
        let mut e = Engine {
            arena,
            letters: u.to_vec(),
            heights: u.iter().map(|&g| arena.height(g)).collect(),
            prev: (0..n).map(|i| if i == 0 { NIL } else { i - 1 }).collect(),
            next: (0..n).map(|i| if i + 1 == n { NIL } else { i + 1 }).collect(),
            rivers: BTreeSet::new(),
            len: n,
        };
        for i in 0..n {
            if e.is_river(i) {
                e.rivers.insert((e.heights[i], i));
            }
        }
        e
    }

    fn is_river(&self, i: usize) -> bool {
        let (p, n) = (self.prev[i], self.next[i]);
        p != NIL && n != NIL && self.heights[p] > self.heights[i] && self.heights[n] > self.heights[i]
    }

    fn recheck(&mut self, i: usize) {
        if i == NIL {
            return;
        }
        let key = (self.heights[i], i);
        if self.is_river(i) {
            self.rivers.insert(key);
        } else {
            self.rivers.remove(&key);
        }
    }

    fn position(&self, slot: usize) -> usize {
        let mut k = 0;
        let mut i = slot;
        while self.prev[i] != NIL {
            i = self.prev[i];
            k += 1;
        }
        k
    }

    fn pick(&self, rng: &mut Option<ChaCha8Rng>) -> Option<usize> {
        match rng {
            None => self.rivers.first().map(|&(_, i)| i),
            Some(r) => {
                if self.rivers.is_empty() {
                    None
                } else {
                    let k = r.gen_range(0..self.rivers.len());
                    self.rivers.iter().nth(k).map(|&(_, i)| i)
                }
            }
        }
    }

    /// Returns whether the river collapsed.
    fn uplift(&mut self, i: usize) -> bool {
        let (p, n) = (self.prev[i], self.next[i]);
        self.rivers.remove(&(self.heights[i], i));
        if self.letters[p] == self.letters[n] {
            let nn = self.next[n];
            self.next[p] = nn;
            if nn != NIL {
                self.prev[nn] = p;
            }
            self.len -= 2;
            self.recheck(p);
            true
        } else {
            let g = self
                .arena
                .make_triple(self.letters[n], self.letters[i], self.letters[p])
                .expect("river flanks determine a valid letter");
            self.letters[i] = g;
            self.heights[i] += 2;
            self.recheck(p);
            self.recheck(n);
            false
        }
    }

    fn collect(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.len);
        let mut i = 0;
        while i != NIL {
            out.push(self.letters[i]);
            i = self.next[i];
        }
        out
    }
}

fn run(arena: &Arena, u: &[Gen], strategy: Strategy, mut trace: Option<&mut Vec<TraceStep>>) -> Vec<Gen> {
    let mut e = Engine::new(arena, u);
    let mut rng = match strategy {
        Strategy::LeftmostLowest => None,
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    while let Some(i) = e.pick(&mut rng) {
        let position = if trace.is_some() { e.position(i) } else { 0 };
        let collapsed = e.uplift(i);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep { position, collapsed, result: e.collect() });
        }
    }
    e.collect()
}

/// `β₂(u)` with the default strategy.
pub fn beta2(arena: &Arena, u: &[Gen]) -> Result<Vec<Gen>> {
    beta2_with(arena, u, Strategy::LeftmostLowest)
}

pub fn beta2_with(arena: &Arena, u: &[Gen], strategy: Strategy) -> Result<Vec<Gen>> {
    landscape::check_landscape(arena, u)?;
    Ok(run(arena, u, strategy, None))
}

/// `β₂(u)` together with every intermediate landscape.
pub fn beta2_traced(arena: &Arena, u: &[Gen], strategy: Strategy) -> Result<(Vec<Gen>, Vec<TraceStep>)> {
    landscape::check_landscape(arena, u)?;
    let mut t = Vec::new();
    let out = run(arena, u, strategy, Some(&mut t));
    Ok((out, t))
}

/// The canonical form of a nonempty word.
pub fn beta(arena: &Arena, w: &[Gen]) -> Mountain {
    let m = run(arena, &beta1(arena, w), Strategy::LeftmostLowest, None);
    Mountain::from_raw(arena, m)
}

/// `β` honoring the mode: in semigroup mode the identity class is an error.
pub fn normalize(arena: &Arena, w: &[Gen], mode: Mode) -> Result<Mountain> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let m = beta(arena, w);
    if m.is_trivial() && mode == Mode::Semigroup {
        return Err(Error::IdentityClass);
    }
    Ok(m)
}

/// Decides the word problem.
pub fn equivalent(arena: &Arena, u: &[Gen], v: &[Gen]) -> bool {
    beta(arena, u) == beta(arena, v)
}

/// Names of the defining relation schemas.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    LeftIdentity,
    RightIdentity,
    Idempotent,
    LeftAbsorb,
    RightAbsorb,
    Sandwich,
}

/// All defining relation instances `(lhs, rhs)` for the letter `g`.
pub fn rule_instances(arena: &Arena, g: Gen) -> Vec<(Rule, Vec<Gen>, Vec<Gen>)> {
    let mut out = vec![
        (Rule::LeftIdentity, vec![Gen::ONE, g], vec![g]),
        (Rule::RightIdentity, vec![g, Gen::ONE], vec![g]),
        (Rule::Idempotent, vec![g, g], vec![g]),
    ];
    if let Some(c) = arena.center(g) {
        let (l, r) = (arena.left(g), arena.right(g));
        out.push((Rule::LeftAbsorb, vec![c, l, g], vec![g]));
        out.push((Rule::RightAbsorb, vec![g, r, c], vec![g]));
        out.push((Rule::Sandwich, vec![r, c, g, c, l], vec![r, c, l]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Aliases;

    fn setup() -> (Arena, Aliases) {
        let a = Arena::default();
        let al = Aliases::two_letter_defaults(&a);
        (a, al)
    }

    fn w(a: &Arena, al: &Aliases, s: &str) -> Vec<Gen> {
        a.parse_word(s, Some(al)).unwrap()
    }

    #[test]
    fn beta1_examples() {
        let (a, al) = setup();
        assert_eq!(beta1(&a, &w(&a, &al, "e f")), w(&a, &al, "1 e 1 f 1"));
        assert_eq!(beta1(&a, &w(&a, &al, "e1")), w(&a, &al, "1 e e1 f 1"));
        assert_eq!(beta1(&a, &w(&a, &al, "f e f")), w(&a, &al, "1 f 1 e 1 f 1"));
    }

    #[test]
    fn uplift_examples() {
        let (a, al) = setup();
        assert_eq!(uplift(&a, &w(&a, &al, "e1 e e1"), 1).unwrap(), w(&a, &al, "e1"));
        assert_eq!(uplift(&a, &w(&a, &al, "e1 f f1"), 1).unwrap(), w(&a, &al, "e1 h2 f1"));
        assert_eq!(uplift(&a, &w(&a, &al, "1 e 1 f 1"), 2).unwrap(), w(&a, &al, "1 e f1 f 1"));
        assert_eq!(uplift(&a, &w(&a, &al, "1 e 1 f 1"), 1), Err(Error::NotARiver(1)));
    }

    #[test]
    fn beta2_examples() {
        let (a, al) = setup();
        assert_eq!(beta2(&a, &w(&a, &al, "1 e 1 f 1")).unwrap(), w(&a, &al, "1 e f1 f 1"));
        assert_eq!(beta2(&a, &w(&a, &al, "1 f 1 e 1 f 1")).unwrap(), w(&a, &al, "1 f e1 h3 f1 f 1"));
        let m = w(&a, &al, "1 f e1 h f1 f 1");
        assert_eq!(beta2(&a, &m).unwrap(), m);
        assert!(beta2(&a, &w(&a, &al, "e f")).is_err());
    }

    #[test]
    fn beta_examples() {
        let (a, al) = setup();
        assert_eq!(beta(&a, &w(&a, &al, "e e")), beta(&a, &w(&a, &al, "e")));
        assert_eq!(beta(&a, &w(&a, &al, "e")).letters(), &w(&a, &al, "1 e 1")[..]);
        assert_eq!(beta(&a, &w(&a, &al, "e1 f1")).letters(), &w(&a, &al, "1 e e1 h2 f1 e 1")[..]);
        assert_eq!(beta(&a, &w(&a, &al, "f1 e1")).peak(), al.get("h1").unwrap());
        assert!(beta(&a, &w(&a, &al, "1 1")).is_trivial());
        assert_eq!(normalize(&a, &w(&a, &al, "1"), Mode::Semigroup), Err(Error::IdentityClass));
    }

    #[test]
    fn equivalent_examples() {
        let (a, al) = setup();
        assert!(!equivalent(&a, &w(&a, &al, "e f"), &w(&a, &al, "f e")));
        for i in 2..=4 {
            for &g in a.enum_level(i).unwrap().iter() {
                for (_, lhs, rhs) in rule_instances(&a, g) {
                    assert!(equivalent(&a, &lhs, &rhs));
                }
            }
        }
    }

    #[test]
    fn trace_decreases_river_vector() {
        let (a, al) = setup();
        let start = beta1(&a, &w(&a, &al, "f e f e1 f1"));
        let (out, steps) = beta2_traced(&a, &start, Strategy::LeftmostLowest).unwrap();
        assert_eq!(steps.last().unwrap().result, out);
        let mut prev = river_vector(&a, &start);
        for s in &steps {
            let rv = river_vector(&a, &s.result);
            assert!(rv < prev);
            prev = rv;
        }
    }
}

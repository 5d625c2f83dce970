//! Rees quotients of `FI(X)` by ground filters, and congruence closures.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use super::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::generators::{Aliases, Arena, Gen};
use crate::landscape::Mountain;
use crate::structure::{d_class, multiply};

/// A ground-filter quotient with the mountain behind each element. The last
/// element is the zero.
#[derive(Clone, Debug)]
pub struct GroundQuotient {
    pub semigroup: FiniteSemigroup,
    pub mountains: Vec<Mountain>,
    pub allowed: Vec<Gen>,
}

impl GroundQuotient {
    pub fn zero(&self) -> usize {
        self.mountains.len()
    }

    /// Element of a mountain: its index if the peak is allowed, else zero.
    pub fn element_of(&self, u: &Mountain) -> usize {
        self.mountains.iter().position(|m| m == u).unwrap_or(self.zero())
    }
}

/// Elements are the mountains with peak in `allowed` plus a zero; products
/// leaving the allowed peaks become zero.
pub fn ground_filter_quotient(arena: &Arena, allowed: &[Gen], aliases: Option<&Aliases>) -> Result<GroundQuotient> {
    let mut peaks = allowed.to_vec();
    peaks.sort_by(|&a, &b| arena.cmp_canonical(a, b));
    peaks.dedup();
    for &g in &peaks {
        if g.is_one() {
            return Err(Error::NotDownClosed("1 is not allowed".into()));
        }
        for &h in arena.ground(g).iter() {
            if !h.is_one() && !peaks.contains(&h) {
                return Err(Error::NotDownClosed(format!(
                    "{} lies below {}",
                    arena.format_gen(h, aliases),
                    arena.format_gen(g, aliases)
                )));
            }
        }
    }
    let mountains: Vec<Mountain> = peaks.iter().flat_map(|&g| d_class(arena, g)).collect();
    let index: HashMap<&[Gen], usize> = mountains.iter().enumerate().map(|(i, m)| (m.letters(), i)).collect();
    let zero = mountains.len();
    let n = zero + 1;
    let mut rows = vec![vec![zero; n]; n];
    for (i, u) in mountains.iter().enumerate() {
        for (j, v) in mountains.iter().enumerate() {
            let w = multiply(arena, u, v)?;
            rows[i][j] = index.get(w.letters()).copied().unwrap_or(zero);
        }
    }
    let names = shortest_names(&rows, &peaks, &mountains, arena, aliases, zero);
    let semigroup = FiniteSemigroup::new(rows, Some(names))?;
    Ok(GroundQuotient { semigroup, mountains, allowed: peaks })
}

/// Names each element by the first shortest word over the allowed letters
/// found breadth-first; the zero is `0`.
fn shortest_names(
    rows: &[Vec<usize>],
    peaks: &[Gen],
    mountains: &[Mountain],
    arena: &Arena,
    aliases: Option<&Aliases>,
    zero: usize,
) -> Vec<String> {
    let mut names: Vec<Option<String>> = vec![None; rows.len()];
    names[zero] = Some("0".into());
    let gens: Vec<(usize, String)> = peaks
        .iter()
        .map(|&g| {
            let m = Mountain::of_letter(arena, g);
            let i = mountains.iter().position(|x| *x == m).expect("letter mountain present");
            (i, arena.format_gen(g, aliases))
        })
        .collect();
    let mut frontier = Vec::new();
    for (i, name) in &gens {
        if names[*i].is_none() {
            names[*i] = Some(name.clone());
            frontier.push(*i);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for (g, gname) in &gens {
                let p = rows[w][*g];
                if names[p].is_none() {
                    names[p] = Some(format!("{}{}", names[w].as_ref().unwrap(), gname));
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    names
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.unwrap_or_else(|| format!("x{i}")))
        .collect()
}

/// A quotient by a congruence with the projection.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub quotient: FiniteSemigroup,
    pub class_of: Vec<usize>,
}

/// The least congruence containing `pairs`. Classes are numbered by least
/// member and named after it.
pub fn congruence_closure(s: &FiniteSemigroup, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = s.order();
    for &(a, b) in pairs {
        for x in [a, b] {
            if x >= n {
                return Err(Error::OutOfRange(x));
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((a, b)) = queue.pop_front() {
        if uf.union(a, b) {
            for t in 0..n {
                queue.push_back((s.mul(a, t), s.mul(b, t)));
                queue.push_back((s.mul(t, a), s.mul(t, b)));
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut rep_class: HashMap<usize, usize> = HashMap::new();
    for (a, slot) in class_of.iter_mut().enumerate() {
        let root = uf.find(a);
        *slot = *rep_class.entry(root).or_insert_with(|| {
            reps.push(a);
            reps.len() - 1
        });
    }
    let rows = reps.iter().map(|&a| reps.iter().map(|&b| class_of[s.mul(a, b)]).collect()).collect();
    let names = reps.iter().map(|&a| s.name(a).to_string()).collect();
    Ok(Congruence { quotient: FiniteSemigroup::new(rows, Some(names))?, class_of })
}

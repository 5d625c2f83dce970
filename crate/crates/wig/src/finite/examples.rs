//! Reproductions of the two worked examples: the quotient `T` of `FI(e,f)`
//! with `T1`, `T2`, and the 16-element semigroup `R`.

use std::collections::BTreeSet;
use std::fmt;

use super::closure::{is_regular_subsemigroup, is_weakly_generated, subsemigroup_closure, WeakGeneration};
use super::quotient::{congruence_closure, ground_filter_quotient, Congruence, GroundQuotient};
use super::skeleton::{skeleton_extend, Policy, SkeletonRun};
use super::{FiniteSemigroup, Green};
use crate::error::Result;
use crate::generators::{Aliases, Arena, Gen};

/// Cayley table of `R`, generated by `examples/derive_r.rs`.
pub const R_FIXTURE: &str = include_str!("../../fixtures/example2_r.txt");

/// An egg-box layout: blocks of rows of cells, `*` marking idempotents.
pub type Layout = &'static [&'static [&'static [&'static str]]];

pub const LAYOUT_T: Layout = &[
    &[&["e*"]],
    &[&["f*"]],
    &[&["e1e*", "e1*"], &["fe", "fe1*"]],
    &[&["ef1*", "ef"], &["f1*", "f1f*"]],
    &[
        &["e1he*", "e1he1*", "e1hf1", "e1h*"],
        &["he", "he1*", "hf1*", "h*"],
        &["efe", "efe1", "ehf1*", "eh"],
        &["f1fe", "f1fe1", "f1hf1*", "f1h*"],
    ],
    &[&["0*"]],
];

pub const LAYOUT_T1: Layout = &[
    &[&["e*"]],
    &[&["f*"]],
    &[
        &["e1e*", "e1*", "e1hf1", "e1h*"],
        &["fe", "fe1*", "hf1*", "h*"],
        &["efe", "efe1", "ef1*", "ef"],
        &["f1fe", "f1fe1", "f1*", "f1f*"],
    ],
    &[&["0*"]],
];

pub const LAYOUT_T2: Layout = &[
    &[&["e*"]],
    &[&["f*"]],
    &[&["e1e*", "e1hf1", "e1h*"], &["fe", "hf1*", "h*"], &["efe", "ef1*", "ef"]],
    &[&["0*"]],
];

pub const LAYOUT_R: Layout = &[
    &[&["e*"]],
    &[&["f*"]],
    &[&["ge*", "g*"], &["fe", "fg*"]],
    &[&["eg1*", "ef"], &["g1*", "g1f*"]],
    &[&["efe*", "efg*", "gg1*"], &["fef*", "g1g*", "fgg1*"]],
];

/// One named verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// A list of checks plus informational notes.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "NOTE {n}")?;
        }
        Ok(())
    }
}

fn names(s: &FiniteSemigroup, xs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<&str> = xs.into_iter().map(|x| s.name(x)).collect();
    format!("{{{}}}", v.join(", "))
}

/// Checks that the layout blocks are exactly the D-classes of `s` with
/// rows R-classes, columns L-classes and stars on the idempotents. `eval`
/// maps a cell word to an element of `s`.
pub fn check_layout(s: &FiniteSemigroup, layout: Layout, eval: impl Fn(&str) -> Result<usize>) -> Vec<Check> {
    let mut out = Vec::new();
    let mut grid: Vec<Vec<Vec<(usize, bool)>>> = Vec::new();
    let mut errors = Vec::new();
    for block in layout {
        let mut b = Vec::new();
        for row in *block {
            let mut r = Vec::new();
            for cell in *row {
                let (word, star) = match cell.strip_suffix('*') {
                    Some(w) => (w, true),
                    None => (*cell, false),
                };
                match eval(word) {
                    Ok(x) => r.push((x, star)),
                    Err(e) => errors.push(format!("{word}: {e}")),
                }
            }
            b.push(r);
        }
        grid.push(b);
    }
    out.push(Check::new("cell words evaluate", errors.is_empty(), errors.join("; ")));
    if !errors.is_empty() {
        return out;
    }
    let mut bad = Vec::new();
    let mut all = BTreeSet::new();
    let mut count = 0;
    for (k, block) in grid.iter().enumerate() {
        let members: Vec<usize> = block.iter().flatten().map(|c| c.0).collect();
        count += members.len();
        all.extend(members.iter().copied());
        let set: BTreeSet<usize> = members.iter().copied().collect();
        let d = s.class_id(Green::D, members[0]);
        let class: BTreeSet<usize> = (0..s.order()).filter(|&x| s.class_id(Green::D, x) == d).collect();
        if set.len() != members.len() || set != class {
            bad.push(format!("block {k}"));
        }
    }
    out.push(Check::new("blocks are D-classes", bad.is_empty(), bad.join(", ")));
    let mut bad = Vec::new();
    for (k, block) in grid.iter().enumerate() {
        let rows: Vec<BTreeSet<usize>> =
            block.iter().map(|r| r.iter().map(|c| s.class_id(Green::R, c.0)).collect()).collect();
        let width = block[0].len();
        let cols: Vec<BTreeSet<usize>> =
            (0..width).map(|j| block.iter().map(|r| s.class_id(Green::L, r[j].0)).collect()).collect();
        let row_ids: BTreeSet<usize> = rows.iter().flatten().copied().collect();
        let col_ids: BTreeSet<usize> = cols.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != 1)
            || cols.iter().any(|c| c.len() != 1)
            || row_ids.len() != rows.len()
            || col_ids.len() != cols.len()
        {
            bad.push(format!("block {k}"));
        }
    }
    out.push(Check::new("rows are R-classes, columns are L-classes", bad.is_empty(), bad.join(", ")));
    let wrong: Vec<String> = grid
        .iter()
        .flatten()
        .flatten()
        .filter(|(x, star)| s.is_idempotent(*x) != *star)
        .map(|(x, _)| s.name(*x).to_string())
        .collect();
    out.push(Check::new("stars mark exactly the idempotents", wrong.is_empty(), wrong.join(", ")));
    out.push(Check::new(
        "blocks cover the semigroup",
        count == s.order() && all.len() == s.order(),
        format!("{count} cells, order {}", s.order()),
    ));
    out
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| Check { name: format!("{prefix}: {}", c.name), ..c }).collect()
}

/// Everything computed for the first example.
#[derive(Debug)]
pub struct Example1 {
    pub arena: Arena,
    pub aliases: Aliases,
    pub t: GroundQuotient,
    pub t1: Congruence,
    /// Members of `T2` as elements of `T1`.
    pub t2_members: Vec<usize>,
    pub t2: FiniteSemigroup,
    pub weak_t1: WeakGeneration,
    pub weak_t: Option<WeakGeneration>,
    pub report: Report,
}

pub fn example1() -> Result<Example1> {
    let arena = Arena::default();
    let aliases = Aliases::two_letter_defaults(&arena);
    let h = aliases.get("h").expect("default alias");
    let allowed: Vec<Gen> = arena.ground(h).iter().copied().filter(|g| !g.is_one()).collect();
    let t = ground_filter_quotient(&arena, &allowed, Some(&aliases))?;
    let ts = &t.semigroup;
    let mut report = Report::default();
    report.push("|T| = 27", ts.order() == 27, ts.order().to_string());
    report.checks.extend(prefixed("egg-box of T", check_layout(ts, LAYOUT_T, |w| ts.parse_element(w))));
    let zero = t.zero();
    let zeros: Vec<&str> = ["f1e1", "e1f1", "fef"]
        .into_iter()
        .filter(|w| ts.parse_element(w).ok() != Some(zero))
        .collect();
    report.push("f1e1 = e1f1 = fef = 0 in T", zeros.is_empty(), zeros.join(", "));
    let el = |w: &str| ts.parse_element(w);
    let (e, f, e1, f1, hh) = (el("e")?, el("f")?, el("e1")?, el("f1")?, el("h")?);
    let rel = ts.sandwich_set(f, e)?.contains(&e1)
        && ts.sandwich_set(e, f)?.contains(&f1)
        && ts.sandwich_set(ts.mul(f1, f), ts.mul(f, e1))?.contains(&hh);
    report.push("e1 in S(f,e), f1 in S(e,f), h in S(f1f,fe1)", rel, "");

    let t1 = congruence_closure(ts, &[(el("fe")?, el("he")?), (el("ef")?, el("eh")?)])?;
    let q = &t1.quotient;
    report.push("|T1| = 19", q.order() == 19, q.order().to_string());
    let to_t1 = |w: &str| ts.parse_element(w).map(|x| t1.class_of[x]);
    report.checks.extend(prefixed("egg-box of T1", check_layout(q, LAYOUT_T1, to_t1)));

    let gens = vec![to_t1("e")?, to_t1("f")?, to_t1("e1hf1")?];
    let t2_members = subsemigroup_closure(q, &gens);
    let (t2, back) = q.restrict(&t2_members)?;
    report.push("|T2| = 12", t2.order() == 12, t2.order().to_string());
    report.push("T2 is a regular subsemigroup", is_regular_subsemigroup(q, &t2_members), "");
    let to_t2 = |w: &str| {
        let x = to_t1(w)?;
        back.iter().position(|&y| y == x).ok_or_else(|| crate::error::Error::UnknownName(w.to_string()))
    };
    report.checks.extend(prefixed("egg-box of T2", check_layout(&t2, LAYOUT_T2, to_t2)));

    let x = [to_t1("e")?, to_t1("f")?];
    let weak_t1 = is_weakly_generated(q, &x)?;
    let witness = weak_t1.witness.as_ref().map_or(0, Vec::len);
    report.push(
        "T1 is not weakly generated by {e,f}",
        !weak_t1.weakly_generated && witness == 12,
        format!("witness of order {witness}"),
    );
    report.push(
        "witness equals T2",
        weak_t1.witness.as_deref() == Some(t2_members.as_slice()),
        names(q, weak_t1.witness.clone().unwrap_or_default()),
    );
    let weak_t = is_weakly_generated(ts, &[e, f]).ok();
    match &weak_t {
        Some(w) => report.notes.push(format!(
            "T weakly generated by {{e,f}}: {} ({} minimal regular closures, orders {:?})",
            w.weakly_generated,
            w.closures.len(),
            w.closures.iter().map(Vec::len).collect::<Vec<_>>()
        )),
        None => report.notes.push("T is not regular".into()),
    }
    Ok(Example1 { arena, aliases, t, t1, t2_members, t2, weak_t1, weak_t, report })
}

/// Everything computed for the second example.
#[derive(Debug)]
pub struct Example2 {
    pub arena: Arena,
    pub r: FiniteSemigroup,
    pub weak: WeakGeneration,
    pub first: SkeletonRun,
    pub all: SkeletonRun,
    pub report: Report,
}

/// Highest level used for the skeleton runs of the second example.
pub const EXAMPLE2_MAX_LEVEL: usize = 6;

pub fn load_r() -> Result<FiniteSemigroup> {
    FiniteSemigroup::parse(R_FIXTURE)
}

pub fn example2() -> Result<Example2> {
    let r = load_r()?;
    let arena = Arena::default();
    let mut report = Report::default();
    report.push("|R| = 16, associative", r.order() == 16, r.order().to_string());
    report.push("R is regular", r.is_regular(), "");
    let el = |w: &str| r.parse_element(w);
    let (e, f, g, g1) = (el("e")?, el("f")?, el("g")?, el("g1")?);
    report.push("R = <e,f,g,g1>", subsemigroup_closure(&r, &[e, f, g, g1]).len() == 16, "");
    report.checks.extend(prefixed("egg-box of R", check_layout(&r, LAYOUT_R, el)));
    let eq = |a: &str, b: &str| -> Result<bool> { Ok(el(a)? == el(b)?) };
    let rels = r.sandwich_set(f, e)?.contains(&g)
        && r.sandwich_set(e, f)?.contains(&g1)
        && eq("efe", "g e g1")?
        && eq("fef", "g1 g e")?
        && eq("efg", "g g1 f")?;
    report.push("defining relations hold", rels, "");
    let quoted: [(&str, &str, &[&str]); 6] = [
        ("f", "e", &["g"]),
        ("e", "f", &["g1"]),
        ("g f", "f g1", &["g1g"]),
        ("g e", "e g1", &["efe"]),
        ("g1 f", "f g", &["g1g", "fef"]),
        ("g1 e", "e g", &["efe", "gg1"]),
    ];
    for (a, b, want) in quoted {
        let got = r.sandwich_set(el(a)?, el(b)?)?;
        let want: BTreeSet<usize> = want.iter().map(|w| el(w)).collect::<Result<_>>()?;
        let pass = got.iter().copied().collect::<BTreeSet<_>>() == want;
        report.push(format!("S({a}, {b}) = {}", names(&r, want)), pass, names(&r, got));
    }
    let weak = is_weakly_generated(&r, &[e, f])?;
    report.push("R is weakly generated by {e,f}", weak.weakly_generated, format!("{} closures", weak.closures.len()));

    let first = skeleton_extend(&arena, &r, &[e, f], Policy::First, EXAMPLE2_MAX_LEVEL)?;
    let a0 = &first.assignments[0];
    let odd: BTreeSet<usize> = ["efe", "g1g"].iter().map(|w| el(w)).collect::<Result<_>>()?;
    let even: BTreeSet<usize> = ["fef", "efg", "fgg1"].iter().map(|w| el(w)).collect::<Result<_>>()?;
    let alternating = (3..=EXAMPLE2_MAX_LEVEL).all(|i| a0.level_images[i - 1] == if i % 2 == 1 { odd.clone() } else { even.clone() });
    let levels: Vec<String> = a0.level_images.iter().map(|s| names(&r, s.iter().copied())).collect();
    report.push("first-choice level images alternate", alternating, levels.join(" "));
    report.push(
        "first-choice skeleton stabilizes",
        a0.stabilized_at.is_some(),
        format!("at level {:?}", a0.stabilized_at),
    );
    let skeleton_a: BTreeSet<usize> =
        ["e", "f", "g", "g1", "efe", "efg", "fef", "g1g", "fgg1"].iter().map(|w| el(w)).collect::<Result<_>>()?;
    report.push("first-choice skeleton is A", first.skeletons == vec![skeleton_a.clone()], "");
    let all = skeleton_extend(&arena, &r, &[e, f], Policy::Enumerate { limit: 64 }, EXAMPLE2_MAX_LEVEL)?;
    let mut with_gg1 = skeleton_a.clone();
    with_gg1.insert(el("gg1")?);
    let mut found = all.skeletons.clone();
    found.sort_by_key(BTreeSet::len);
    report.push(
        "exactly two skeletons: A and A with gg1",
        found == vec![skeleton_a, with_gg1],
        format!("{} skeletons from {} mappings", all.skeletons.len(), all.assignments.len()),
    );
    for s in &all.skeletons {
        let members: Vec<usize> = s.iter().copied().collect();
        let closure = subsemigroup_closure(&r, &members);
        if !is_regular_subsemigroup(&r, &closure) {
            report.push("skeleton generates a regular subsemigroup", false, names(&r, members));
        }
    }
    Ok(Example2 { arena, r, weak, first, all, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_reproduces() {
        let ex = example1().unwrap();
        print!("{}", ex.report);
        assert!(ex.report.ok());
    }

    #[test]
    fn example2_reproduces() {
        let ex = example2().unwrap();
        print!("{}", ex.report);
        assert!(ex.report.ok());
    }
}

//! Finite semigroups given by Cayley tables: Green structure, sandwich
//! sets, quotients, closures and skeleton mappings.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub mod closure;
pub mod examples;
pub mod quotient;
pub mod skeleton;

pub use closure::{
    is_regular_subsemigroup, is_weakly_generated, minimal_regular_closures, subsemigroup_closure, WeakGeneration,
};
pub use quotient::{congruence_closure, ground_filter_quotient, Congruence, GroundQuotient};
pub use skeleton::{evaluate_mountain, skeleton_extend, Policy, SkeletonAssignment, SkeletonRun};

/// Green relation selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Green {
    R,
    L,
    D,
}

/// A finite semigroup stored as a validated Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<usize>,
    names: Vec<String>,
    idempotent: Vec<bool>,
    r_class: Vec<usize>,
    l_class: Vec<usize>,
    d_class: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates closure and associativity. Unnamed elements get their index
    /// as name.
    pub fn new(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::OutOfRange(x));
                }
                table.push(x);
            }
        }
        let names = match names {
            Some(v) if v.len() != n => {
                return Err(Error::MalformedTable(format!("{} names for {n} elements", v.len())));
            }
            Some(v) => v,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let idempotent = (0..n).map(|a| table[a * n + a] == a).collect();
        let mut s = FiniteSemigroup {
            n,
            table,
            names,
            idempotent,
            r_class: Vec::new(),
            l_class: Vec::new(),
            d_class: Vec::new(),
        };
        s.compute_green();
        Ok(s)
    }

    fn compute_green(&mut self) {
        let n = self.n;
        let right: Vec<Vec<usize>> = (0..n).map(|a| self.ideal(a, true, false)).collect();
        let left: Vec<Vec<usize>> = (0..n).map(|a| self.ideal(a, false, true)).collect();
        let two: Vec<Vec<usize>> = (0..n).map(|a| self.ideal(a, true, true)).collect();
        self.r_class = number_by_key(&right);
        self.l_class = number_by_key(&left);
        self.d_class = number_by_key(&two);
    }

    /// `aS¹`, `S¹a` or `S¹aS¹` as a sorted list.
    fn ideal(&self, a: usize, right: bool, left: bool) -> Vec<usize> {
        let mut set = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for s in 0..self.n {
                if right {
                    let y = self.mul(x, s);
                    if set.insert(y) {
                        stack.push(y);
                    }
                }
                if left {
                    let y = self.mul(s, x);
                    if set.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Parses the text format: first line `n`, optional `names:` line, then
    /// `n` rows of 0-based indices. Lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |i: usize, msg: &str| Error::Parse { pos: i + 1, msg: msg.to_string() };
        let (i0, first) = lines.next().ok_or_else(|| bad(0, "missing order line"))?;
        let n: usize = first.parse().map_err(|_| bad(i0, "order must be an integer"))?;
        let mut names = None;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines {
            if let Some(rest) = line.strip_prefix("names:") {
                names = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(i, "table entries must be integers")))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::MalformedTable(format!("{} rows, expected {n}", rows.len())));
        }
        FiniteSemigroup::new(rows, names)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\nnames: {}\n", self.n, self.names.join(" "));
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// Product of a nonempty sequence.
    pub fn product(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().copied().reduce(|a, b| self.mul(a, b))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Parses a product of element names. Whitespace separates factors;
    /// each factor may be a concatenation of names.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let mut factors = Vec::new();
        for token in text.split_whitespace() {
            factors.extend(self.segment(token)?);
        }
        self.product(&factors).ok_or(Error::EmptyWord)
    }

    fn segment(&self, token: &str) -> Result<Vec<usize>> {
        if let Some(i) = self.index_of(token) {
            return Ok(vec![i]);
        }
        let mut by_len: Vec<(usize, &str)> = self.names.iter().map(String::as_str).enumerate().collect();
        by_len.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));
        // dead[p]: no segmentation of token[p..]
        let mut dead = vec![false; token.len() + 1];
        fn go(pos: usize, token: &str, names: &[(usize, &str)], dead: &mut [bool], out: &mut Vec<usize>) -> bool {
            if pos == token.len() {
                return true;
            }
            if dead[pos] {
                return false;
            }
            for &(i, name) in names {
                if !name.is_empty() && token[pos..].starts_with(name) {
                    out.push(i);
                    if go(pos + name.len(), token, names, dead, out) {
                        return true;
                    }
                    out.pop();
                }
            }
            dead[pos] = true;
            false
        }
        let mut out = Vec::new();
        if go(0, token, &by_len, &mut dead, &mut out) {
            Ok(out)
        } else {
            Err(Error::UnknownName(token.to_string()))
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.idempotent[a]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.idempotent[a]).collect()
    }

    pub fn is_inverse(&self, a: usize, b: usize) -> bool {
        self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b
    }

    /// `V(a)`.
    pub fn inverses(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.is_inverse(a, b)).collect()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).any(|b| self.is_inverse(a, b)))
    }

    pub fn class_id(&self, rel: Green, a: usize) -> usize {
        match rel {
            Green::R => self.r_class[a],
            Green::L => self.l_class[a],
            Green::D => self.d_class[a],
        }
    }

    /// Classes of a Green relation, each sorted, ordered by least member.
    pub fn classes(&self, rel: Green) -> Vec<Vec<usize>> {
        let ids = match rel {
            Green::R => &self.r_class,
            Green::L => &self.l_class,
            Green::D => &self.d_class,
        };
        let count = ids.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (a, &c) in ids.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    pub fn h_related(&self, a: usize, b: usize) -> bool {
        self.r_class[a] == self.r_class[b] && self.l_class[a] == self.l_class[b]
    }

    /// Natural partial order: `a ≤ b` iff `a = eb = bf` for idempotents `e, f`.
    pub fn leq_natural(&self, a: usize, b: usize) -> bool {
        let e = self.idempotents();
        e.iter().any(|&x| self.mul(x, b) == a) && e.iter().any(|&y| self.mul(b, y) == a)
    }

    /// `S(e,f) = {g ∈ E(S) : fg = g = ge, egf = ef}`.
    pub fn sandwich_set(&self, e: usize, f: usize) -> Result<Vec<usize>> {
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(self.names[x].clone()));
            }
        }
        let ef = self.mul(e, f);
        Ok(self
            .idempotents()
            .into_iter()
            .filter(|&g| self.mul(f, g) == g && self.mul(g, e) == g && self.mul(self.mul(e, g), f) == ef)
            .collect())
    }

    /// The subsemigroup on a multiplicatively closed set, with the map from
    /// new indices to old ones.
    pub fn restrict(&self, set: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
        let members: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut rows = Vec::with_capacity(members.len());
        for &a in &members {
            let mut row = Vec::with_capacity(members.len());
            for &b in &members {
                let c = self.mul(a, b);
                row.push(*pos.get(&c).ok_or_else(|| Error::MalformedTable(format!("set not closed at {c}")))?);
            }
            rows.push(row);
        }
        let names = members.iter().map(|&a| self.names[a].clone()).collect();
        Ok((FiniteSemigroup::new(rows, Some(names))?, members))
    }

    /// D-classes as grids: rows are R-classes and columns L-classes, both
    /// ordered by least member. A cell lists its H-class.
    pub fn eggbox_grids(&self) -> Vec<Vec<Vec<Vec<usize>>>> {
        self.classes(Green::D)
            .into_iter()
            .map(|d| {
                let rows: BTreeSet<usize> = d.iter().map(|&a| self.r_class[a]).collect();
                let cols: BTreeSet<usize> = d.iter().map(|&a| self.l_class[a]).collect();
                let rows = order_by_least(&d, &rows, &self.r_class);
                let cols = order_by_least(&d, &cols, &self.l_class);
                rows.iter()
                    .map(|&r| {
                        cols.iter()
                            .map(|&c| {
                                d.iter().copied().filter(|&a| self.r_class[a] == r && self.l_class[a] == c).collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn cell_label(&self, cell: &[usize]) -> String {
        cell.iter()
            .map(|&a| format!("{}{}", self.names[a], if self.idempotent[a] { "*" } else { "" }))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn render_eggbox(&self) -> String {
        let mut out = String::new();
        for (k, grid) in self.eggbox_grids().iter().enumerate() {
            let labels: Vec<Vec<String>> =
                grid.iter().map(|row| row.iter().map(|c| self.cell_label(c)).collect()).collect();
            let width = labels.iter().flatten().map(String::len).max().unwrap_or(1);
            let _ = writeln!(out, "D{k}  {}x{}", grid.len(), grid[0].len());
            for row in &labels {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:width$}")).collect();
                let _ = writeln!(out, "  | {} |", cells.join(" | "));
            }
        }
        out
    }

    pub fn render_dot(&self) -> String {
        let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
        for (k, grid) in self.eggbox_grids().iter().enumerate() {
            let _ = writeln!(out, "  d{k} [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">");
            for row in grid {
                out.push_str("    <TR>");
                for cell in row {
                    let _ = write!(out, "<TD>{}</TD>", self.cell_label(cell));
                }
                out.push_str("</TR>\n");
            }
            out.push_str("  </TABLE>>];\n");
        }
        // covering edges of the J-order between D-classes
        let ds = self.classes(Green::D);
        let ideals: Vec<BTreeSet<usize>> = ds.iter().map(|d| self.ideal(d[0], true, true).into_iter().collect()).collect();
        for (i, a) in ideals.iter().enumerate() {
            for (j, b) in ideals.iter().enumerate() {
                if i == j || !a.is_superset(b) {
                    continue;
                }
                let covered = ideals
                    .iter()
                    .enumerate()
                    .any(|(k, c)| k != i && k != j && a.is_superset(c) && c.is_superset(b) && c != a && c != b);
                if !covered {
                    let _ = writeln!(out, "  d{i} -> d{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn number_by_key(keys: &[Vec<usize>]) -> Vec<usize> {
    let mut ids: HashMap<&[usize], usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.as_slice()).or_insert(next)
        })
        .collect()
}

fn order_by_least(members: &[usize], ids: &BTreeSet<usize>, class: &[usize]) -> Vec<usize> {
    let mut v: Vec<(usize, usize)> =
        ids.iter().map(|&c| (members.iter().copied().find(|&a| class[a] == c).unwrap(), c)).collect();
    v.sort();
    v.into_iter().map(|(_, c)| c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero() -> FiniteSemigroup {
        FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]], None).unwrap()
    }

    #[test]
    fn load_examples() {
        let t = FiniteSemigroup::new(vec![vec![0]], None).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(left_zero().idempotents(), vec![0, 1]);
        // 0*1 = 1 but 1*0 = 0 with 1*1 = 0: (1*1)*1 = 0*1 = 1, 1*(1*1) = 1*0 = 0
        let bad = FiniteSemigroup::new(vec![vec![0, 1], vec![0, 0]], None);
        assert!(matches!(bad, Err(Error::NotAssociative(..))));
        assert!(matches!(FiniteSemigroup::new(vec![vec![2]], None), Err(Error::OutOfRange(2))));
    }

    #[test]
    fn text_round_trip() {
        let s = left_zero();
        let t = FiniteSemigroup::parse(&s.to_text()).unwrap();
        assert_eq!(t.rows(), s.rows());
        assert_eq!(t.names(), s.names());
        let u = FiniteSemigroup::parse("2\nnames: a b\n0 0\n1 1\n").unwrap();
        assert_eq!(u.parse_element("ab a").unwrap(), 0);
        assert_eq!(u.parse_element("ba").unwrap(), 1);
        assert!(u.parse_element("c").is_err());
    }

    #[test]
    fn green_and_sandwich() {
        let s = left_zero();
        assert_eq!(s.classes(Green::R), vec![vec![0], vec![1]]);
        assert_eq!(s.classes(Green::L), vec![vec![0, 1]]);
        assert_eq!(s.classes(Green::D), vec![vec![0, 1]]);
        assert!(s.is_regular());
        assert!(s.sandwich_set(0, 0).unwrap().contains(&0));
        let z = FiniteSemigroup::new(vec![vec![0, 0], vec![0, 0]], None).unwrap();
        assert_eq!(z.sandwich_set(1, 0), Err(Error::NotIdempotent("1".into())));
        assert!(!z.is_regular());
    }

    #[test]
    fn eggbox_render() {
        let s = left_zero();
        let grids = s.eggbox_grids();
        assert_eq!(grids.len(), 1);
        assert_eq!(grids[0], vec![vec![vec![0]], vec![vec![1]]]);
        assert!(s.render_eggbox().contains("0*"));
        assert!(s.render_dot().starts_with("digraph"));
    }
}

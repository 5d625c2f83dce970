//! Canonical egg-boxes of D-classes, the graph `Γ_g`, valley normal forms,
//! the quadrant partition and the quadrant isomorphisms.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{Aliases, Arena, Gen, Side};
use crate::landscape::{classify, downhills, reversed, Direction, LrCode, Mountain, Shape};
use crate::rewrite::beta2;
use crate::structure::{d_class, is_idempotent, multiply};

/// The D-class of a peak laid out with rows = R-classes and columns =
/// L-classes, both in α-lex order.
#[derive(Clone, Debug)]
pub struct EggBox {
    pub peak: Gen,
    pub codes: Vec<LrCode>,
    pub downhills: Vec<Vec<Gen>>,
    pub cells: Vec<Vec<Mountain>>,
    pub idempotent: Vec<Vec<bool>>,
}

pub fn build_eggbox(arena: &Arena, g: Gen) -> Result<EggBox> {
    let h = arena.height(g);
    if h == 0 {
        return Err(Error::HeightTooSmall { height: 0, required: 1 });
    }
    if h > arena.cap() {
        return Err(Error::HeightCapExceeded { requested: h, cap: arena.cap() });
    }
    let downs = downhills(arena, g);
    let codes = LrCode::all(h - 1);
    let mut cells = Vec::with_capacity(downs.len());
    let mut idem = Vec::with_capacity(downs.len());
    for row in &downs {
        let up = reversed(row);
        let cells_row: Vec<Mountain> =
            downs.iter().map(|col| Mountain::from_hills(arena, &up, col).unwrap()).collect();
        idem.push(cells_row.iter().map(|u| is_idempotent(arena, u)).collect());
        cells.push(cells_row);
    }
    Ok(EggBox { peak: g, codes, downhills: downs, cells, idempotent: idem })
}

impl EggBox {
    /// Number of rows (= columns).
    pub fn size(&self) -> usize {
        self.codes.len()
    }

    /// Row and column of a member of the class.
    pub fn position(&self, arena: &Arena, u: &Mountain) -> Option<(usize, usize)> {
        if u.peak() != self.peak {
            return None;
        }
        let j = self.codes.binary_search(&u.left_code(arena)).ok()?;
        let k = self.codes.binary_search(&u.right_code(arena)).ok()?;
        Some((j, k))
    }

    /// Idempotent cells strictly below the diagonal.
    pub fn below_diagonal_idempotents(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n).flat_map(|j| (0..j).map(move |k| (j, k))).filter(|&(j, k)| self.idempotent[j][k]).collect()
    }

    pub fn diagonal_idempotent(&self) -> bool {
        (0..self.size()).all(|j| self.idempotent[j][j])
    }

    /// Edges `(j, k)`, `j < k`, of `Γ_g`: the idempotent cells above the
    /// diagonal.
    pub fn gamma_edges(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).filter(|&(j, k)| self.idempotent[j][k]).collect()
    }

    pub fn gamma_connected(&self) -> bool {
        let n = self.size();
        let mut uf = UnionFind::<usize>::new(n);
        for (j, k) in self.gamma_edges() {
            uf.union(j, k);
        }
        (1..n).all(|k| uf.equiv(0, k))
    }

    fn label(&self, arena: &Arena, u: &Mountain, aliases: Option<&Aliases>) -> String {
        u.display(arena, aliases)
    }

    pub fn render_text(&self, arena: &Arena, aliases: Option<&Aliases>) -> String {
        let n = self.size();
        let code = |c: &LrCode| if c.is_empty() { "-".to_string() } else { c.to_string() };
        let labels: Vec<Vec<String>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let star = if self.idempotent[j][k] { " *" } else { "" };
                        format!("{}{}", self.label(arena, &self.cells[j][k], aliases), star)
                    })
                    .collect()
            })
            .collect();
        let width = labels.iter().flatten().map(String::len).max().unwrap_or(1);
        let rw = self.codes.iter().map(|c| code(c).len()).max().unwrap_or(1);
        let mut out = format!("D[{}]  {n}x{n}\n", arena.format_gen(self.peak, aliases));
        out.push_str(&format!("{:rw$} ", ""));
        for c in &self.codes {
            out.push_str(&format!(" | {:width$}", code(c)));
        }
        out.push('\n');
        for (j, row) in labels.iter().enumerate() {
            out.push_str(&format!("{:rw$} ", code(&self.codes[j])));
            for cell in row {
                out.push_str(&format!(" | {cell:width$}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn render_dot(&self, arena: &Arena, aliases: Option<&Aliases>) -> String {
        let n = self.size();
        let esc = |s: &str| s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        let mut out = String::from("graph eggbox {\n  node [shape=plaintext];\n");
        out.push_str("  grid [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">\n");
        for j in 0..n {
            out.push_str("    <TR>");
            for k in 0..n {
                let star = if self.idempotent[j][k] { " *" } else { "" };
                out.push_str(&format!(
                    "<TD>{}{}</TD>",
                    esc(&self.label(arena, &self.cells[j][k], aliases)),
                    star
                ));
            }
            out.push_str("</TR>\n");
        }
        out.push_str("  </TABLE>>];\n  subgraph cluster_gamma {\n    label=\"Gamma\";\n    node [shape=circle];\n");
        for (k, c) in self.codes.iter().enumerate() {
            out.push_str(&format!("    v{k} [label=\"{}\"];\n", if c.is_empty() { "-".into() } else { c.to_string() }));
        }
        for (j, k) in self.gamma_edges() {
            out.push_str(&format!("    v{j} -- v{k};\n"));
        }
        out.push_str("  }\n}\n");
        out
    }

    pub fn to_json(&self, arena: &Arena, aliases: Option<&Aliases>) -> Value {
        let cells: Vec<Vec<Value>> = self
            .cells
            .iter()
            .zip(&self.idempotent)
            .map(|(row, idem)| {
                row.iter()
                    .zip(idem)
                    .map(|(u, &i)| {
                        let c = u.compact(arena);
                        json!({
                            "peak": arena.format_gen(c.peak, aliases),
                            "s": c.left.to_string(),
                            "t": c.right.to_string(),
                            "idempotent": i,
                        })
                    })
                    .collect()
            })
            .collect();
        json!({
            "peak": arena.format_gen(self.peak, aliases),
            "size": self.size(),
            "codes": self.codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "cells": cells,
            "gamma_edges": self.gamma_edges(),
            "gamma_connected": self.gamma_connected(),
        })
    }
}

/// Normal form shape of a valley after uplifting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ValleyNormalForm {
    /// The valley collapses to its endpoint letter.
    Letter(Gen),
    /// A hill leaving the longer arm at index `k`.
    UHill { k: usize, direction: Direction },
    /// `g^{r^p} … g^r g g^l … g^{l^q}`.
    PqLandscape { p: usize, q: usize, core: Gen },
}

fn chain_ok(arena: &Arena, start: Gen, side: Side, steps: usize) -> bool {
    // For 2 ≤ i ≤ steps: x^c ≠ x^{ss} where x = start^{s^{i-2}}.
    let mut x = start;
    for _ in 2..=steps {
        let twice = arena.side(arena.side(x, side), side);
        if arena.center(x) == Some(twice) {
            return false;
        }
        x = arena.side(x, side);
    }
    true
}

fn side_chain(arena: &Arena, start: Gen, side: Side, steps: usize) -> Vec<Gen> {
    let mut out = vec![start];
    let mut x = start;
    for _ in 0..steps {
        if arena.height(x) == 0 {
            break;
        }
        x = arena.side(x, side);
        out.push(x);
    }
    out
}

/// Normalizes a valley and identifies which normal form shape it reaches.
pub fn classify_valley(arena: &Arena, u: &[Gen]) -> Result<ValleyNormalForm> {
    let shape = classify(arena, u);
    if shape != Shape::Valley && shape != Shape::Canyon {
        return Err(Error::NotAValley(format!("{shape:?}")));
    }
    let river = (0..u.len()).min_by_key(|&i| arena.height(u[i])).unwrap();
    let (n, m) = (river, u.len() - 1 - river);
    let g = |t: usize| u[river - t];
    let h = |j: usize| u[river + j];
    let out = beta2(arena, u)?;
    let bad = || Error::UnclassifiedValley(arena.format_word(&out, None));
    if out.len() == 1 {
        return if n == m && out[0] == g(n) { Ok(ValleyNormalForm::Letter(out[0])) } else { Err(bad()) };
    }
    if out[0] != g(n) || out[out.len() - 1] != h(m) {
        return Err(bad());
    }
    match classify(arena, &out) {
        Shape::Hill(Direction::Down) => {
            // out = g_n … g_k g_k^l … g_k^{l^{k-m}}
            let t0 = (0..out.len()).take_while(|&t| t <= n && out[t] == g(n - t)).last().ok_or_else(bad)?;
            let k = n - t0;
            if k < m {
                return Err(bad());
            }
            let chain = side_chain(arena, g(k), Side::L, k - m);
            if out[t0..] != chain[..] || !chain_ok(arena, g(k), Side::L, k - m) {
                return Err(bad());
            }
            Ok(ValleyNormalForm::UHill { k, direction: Direction::Down })
        }
        Shape::Hill(Direction::Up) => {
            let len = out.len();
            let t0 = (0..len).take_while(|&t| t < m && out[len - 1 - t] == h(m - t)).last().ok_or_else(bad)?;
            let k = m - t0;
            if k < n {
                return Err(bad());
            }
            let mut chain = side_chain(arena, h(k), Side::R, k - n);
            chain.reverse();
            if out[..=len - 1 - t0] != chain[..] || !chain_ok(arena, h(k), Side::R, k - n) {
                return Err(bad());
            }
            Ok(ValleyNormalForm::UHill { k, direction: Direction::Up })
        }
        Shape::UpDown => {
            let p = (0..out.len()).max_by_key(|&i| arena.height(out[i])).unwrap();
            let core = out[p];
            let q = out.len() - 1 - p;
            let mut left = side_chain(arena, core, Side::R, p);
            left.reverse();
            let right = side_chain(arena, core, Side::L, q);
            if out[..=p] != left[..]
                || out[p..] != right[..]
                || p > m
                || q > n
                || !chain_ok(arena, core, Side::R, p)
                || !chain_ok(arena, core, Side::L, q)
            {
                return Err(bad());
            }
            Ok(ValleyNormalForm::PqLandscape { p, q, core })
        }
        _ => Err(bad()),
    }
}

/// Whether the second step of a flank goes to the center `g^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mark {
    Center,
    Other,
}

/// Quadrant of a mountain: the first descent on each flank, and with depth
/// 2 the `c`/`o` marks of the second descent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadrantKey {
    pub left: Side,
    pub right: Side,
    pub marks: Option<(Mark, Mark)>,
}

impl QuadrantKey {
    pub fn new(left: Side, right: Side) -> Self {
        QuadrantKey { left, right, marks: None }
    }

    pub fn marked(left: Side, lm: Mark, right: Side, rm: Mark) -> Self {
        QuadrantKey { left, right, marks: Some((lm, rm)) }
    }
}

impl fmt::Display for QuadrantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = |x: Mark| match x {
            Mark::Center => "_c",
            Mark::Other => "_o",
        };
        match self.marks {
            None => write!(f, "({},{})", self.left.as_char(), self.right.as_char()),
            Some((a, b)) => write!(f, "({}{},{}{})", self.left.as_char(), m(a), self.right.as_char(), m(b)),
        }
    }
}

pub fn quadrant(arena: &Arena, u: &Mountain, depth: usize) -> Result<QuadrantKey> {
    let height = arena.height(u.peak());
    let required = if depth >= 2 { 3 } else { 2 };
    if height < required {
        return Err(Error::HeightTooSmall { height, required });
    }
    let (s, t) = (u.left_code(arena), u.right_code(arena));
    let mut key = QuadrantKey::new(s.0[0], t.0[0]);
    if depth >= 2 {
        let sr = arena.side_resolution(u.peak())?;
        let mark = |first: Side, second: Side| {
            let c = if first == Side::L { sr.l_c } else { sr.r_c };
            if second == c {
                Mark::Center
            } else {
                Mark::Other
            }
        };
        key.marks = Some((mark(s.0[0], s.0[1]), mark(t.0[0], t.0[1])));
    }
    Ok(key)
}

/// Members of `D_g` in the given depth-1 quadrant, or matching the given
/// depth-2 key in the positions where `filter` says so.
pub fn quadrant_members(arena: &Arena, g: Gen, pred: impl Fn(QuadrantKey) -> bool) -> Result<Vec<Mountain>> {
    let depth = if arena.height(g) >= 3 { 2 } else { 1 };
    let mut out = Vec::new();
    for u in d_class(arena, g) {
        if pred(quadrant(arena, &u, depth)?) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Product in the principal factor `F_g`; `None` is the zero.
pub fn principal_factor_product(arena: &Arena, u: &Mountain, v: &Mountain, g: Gen) -> Result<Option<Mountain>> {
    if u.peak() != g || v.peak() != g {
        return Err(Error::WrongClass);
    }
    let w = multiply(arena, u, v)?;
    Ok(if w.peak() == g { Some(w) } else { None })
}

/// `φ_g^s(u) = λ_l(u) g λ_r(u)`, mapping `D_{g^s}` into `D_g^{s,s}`.
pub fn phi(arena: &Arena, g: Gen, side: Side, u: &Mountain) -> Result<Mountain> {
    let height = arena.height(g);
    if height < 2 {
        return Err(Error::HeightTooSmall { height, required: 2 });
    }
    if u.peak() != arena.side(g, side) {
        return Err(Error::WrongClass);
    }
    let mut w = u.lambda_l().to_vec();
    w.push(g);
    w.extend_from_slice(u.lambda_r());
    Mountain::new(arena, w)
}

/// The hat maps. For `L`: `v1 g^l g g^l g^c v2 ↦ v1 g^l g g^r g^c v2` on
/// `F_g^{l,l_c}`. For `R`: `v1 g^c g^r g g^r v2 ↦ v1 g^c g^l g g^r v2` on
/// `F_g^{r_c,r}`.
pub fn hat_phi(arena: &Arena, g: Gen, side: Side, u: &Mountain) -> Result<Mountain> {
    let height = arena.height(g);
    if height < 3 {
        return Err(Error::HeightTooSmall { height, required: 3 });
    }
    if u.peak() != g || !hat_domain_key(side)(quadrant(arena, u, 2)?) {
        return Err(Error::WrongClass);
    }
    let mut w = u.letters().to_vec();
    let p = u.peak_index();
    match side {
        Side::L => w[p + 1] = arena.right(g),
        Side::R => w[p - 1] = arena.left(g),
    }
    Mountain::new(arena, w)
}

/// Domain predicate of the hat map on a side.
pub fn hat_domain_key(side: Side) -> fn(QuadrantKey) -> bool {
    match side {
        Side::L => |k| k.left == Side::L && k.right == Side::L && matches!(k.marks, Some((_, Mark::Center))),
        Side::R => |k| k.left == Side::R && k.right == Side::R && matches!(k.marks, Some((Mark::Center, _))),
    }
}

/// Codomain predicate of the hat map on a side.
pub fn hat_codomain_key(side: Side) -> fn(QuadrantKey) -> bool {
    match side {
        Side::L => |k| k.left == Side::L && k.right == Side::R && matches!(k.marks, Some((_, Mark::Center))),
        Side::R => |k| k.left == Side::L && k.right == Side::R && matches!(k.marks, Some((Mark::Center, _))),
    }
}

/// Composite `φ_g^s ∘ φ_{g^s}^{c}` sending `D_{g^c}` onto `D_g^{s_c,s_c}`,
/// where `c` is the side of `g^s` that equals `g^c`.
pub fn phi_center_chain(arena: &Arena, g: Gen, side: Side, u: &Mountain) -> Result<Mountain> {
    let height = arena.height(g);
    if height < 3 {
        return Err(Error::HeightTooSmall { height, required: 3 });
    }
    let sr = arena.side_resolution(g)?;
    let inner = if side == Side::L { sr.l_c } else { sr.r_c };
    let gs = arena.side(g, side);
    phi(arena, g, side, &phi(arena, gs, inner, u)?)
}

/// Members of `D_g^{s_c,s_c}`.
pub fn center_quadrant(arena: &Arena, g: Gen, side: Side) -> Result<Vec<Mountain>> {
    quadrant_members(arena, g, |k| {
        k.left == side && k.right == side && k.marks == Some((Mark::Center, Mark::Center))
    })
}

/// Peaks of height `i` whose D-class has an idempotent in quadrant
/// `(l_o, r_o)`.
pub fn lo_ro_census(arena: &Arena, i: usize) -> Result<Vec<Gen>> {
    let target = QuadrantKey::marked(Side::L, Mark::Other, Side::R, Mark::Other);
    let mut out = Vec::new();
    for &g in arena.enum_level(i)?.iter() {
        let b = build_eggbox(arena, g)?;
        let hit = b.cells.iter().flatten().zip(b.idempotent.iter().flatten()).any(|(u, &idem)| {
            idem && quadrant(arena, u, 2).map(|k| k == target).unwrap_or(false)
        });
        if hit {
            out.push(g);
        }
    }
    Ok(out)
}

/// Outcome of checking that a map between principal-factor subsets is an
/// isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoReport {
    pub domain: usize,
    pub bijective: bool,
    pub product_failures: usize,
    pub idempotent_failures: usize,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.product_failures == 0 && self.idempotent_failures == 0
    }
}

/// Checks bijectivity onto `codomain` and `map(u·v) = map(u)·map(v)` for
/// the principal-factor products of peaks `dom_peak` and `cod_peak`.
pub fn check_isomorphism(
    arena: &Arena,
    domain: &[Mountain],
    dom_peak: Gen,
    codomain: &[Mountain],
    cod_peak: Gen,
    map: impl Fn(&Mountain) -> Result<Mountain>,
) -> Result<IsoReport> {
    let images: Vec<Mountain> = domain.iter().map(&map).collect::<Result<_>>()?;
    let mut sorted_img: Vec<_> = images.iter().map(|m| m.compact(arena)).collect();
    sorted_img.sort();
    sorted_img.dedup();
    let mut sorted_cod: Vec<_> = codomain.iter().map(|m| m.compact(arena)).collect();
    sorted_cod.sort();
    let bijective = sorted_img.len() == domain.len() && sorted_img == sorted_cod;
    let mut report = IsoReport { domain: domain.len(), bijective, ..Default::default() };
    for (i, u) in domain.iter().enumerate() {
        if is_idempotent(arena, u) != is_idempotent(arena, &images[i]) {
            report.idempotent_failures += 1;
        }
        for (j, v) in domain.iter().enumerate() {
            let left = principal_factor_product(arena, u, v, dom_peak)?.map(|w| map(&w)).transpose()?;
            let right = principal_factor_product(arena, &images[i], &images[j], cod_peak)?;
            if left != right {
                report.product_failures += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::beta;

    fn setup() -> (Arena, Aliases) {
        let a = Arena::default();
        let al = Aliases::two_letter_defaults(&a);
        (a, al)
    }

    fn w(a: &Arena, al: &Aliases, s: &str) -> Vec<Gen> {
        a.parse_word(s, Some(al)).unwrap()
    }

    #[test]
    fn eggbox_examples() {
        let (a, al) = setup();
        let e1 = build_eggbox(&a, al.get("e1").unwrap()).unwrap();
        assert_eq!(e1.size(), 2);
        assert_eq!(e1.idempotent, vec![vec![true, true], vec![false, true]]);
        assert_eq!(e1.cells[1][0], beta(&a, &w(&a, &al, "f e")));
        let e = build_eggbox(&a, a.base(0)).unwrap();
        assert_eq!(e.size(), 1);
        assert!(e.idempotent[0][0]);
        let h = build_eggbox(&a, al.get("h").unwrap()).unwrap();
        assert_eq!(h.cells.iter().flatten().count(), 16);
    }

    #[test]
    fn gamma_examples() {
        let (a, al) = setup();
        let e1 = build_eggbox(&a, al.get("e1").unwrap()).unwrap();
        assert_eq!(e1.gamma_edges(), vec![(0, 1)]);
        assert!(e1.gamma_connected());
        assert!(build_eggbox(&a, a.base(0)).unwrap().gamma_connected());
    }

    #[test]
    fn valley_examples() {
        let (a, al) = setup();
        let g = |s: &str| al.get(s).unwrap();
        assert_eq!(classify_valley(&a, &w(&a, &al, "e1 e e1")).unwrap(), ValleyNormalForm::Letter(g("e1")));
        assert_eq!(
            classify_valley(&a, &w(&a, &al, "e1 f f1")).unwrap(),
            ValleyNormalForm::PqLandscape { p: 1, q: 1, core: g("h2") }
        );
        assert_eq!(
            classify_valley(&a, &w(&a, &al, "h f1 f e1")).unwrap(),
            ValleyNormalForm::UHill { k: 2, direction: Direction::Down }
        );
        assert!(matches!(classify_valley(&a, &w(&a, &al, "1 e 1")), Err(Error::NotAValley(_))));
    }

    #[test]
    fn quadrant_examples() {
        let (a, al) = setup();
        let fef = beta(&a, &w(&a, &al, "f e f"));
        assert_eq!(fef.letters(), &w(&a, &al, "1 f e1 h3 f1 f 1")[..]);
        assert_eq!(quadrant(&a, &fef, 1).unwrap(), QuadrantKey::new(Side::R, Side::L));
        for i in 2..=4 {
            for &g in a.enum_level(i).unwrap().iter() {
                let k = quadrant(&a, &Mountain::of_letter(&a, g), 1).unwrap();
                assert_eq!(k, QuadrantKey::new(Side::L, Side::R));
            }
        }
        let p = beta(&a, &w(&a, &al, "e1 f1"));
        assert_eq!(quadrant(&a, &p, 1).unwrap(), QuadrantKey::new(Side::R, Side::L));
        assert!(matches!(quadrant(&a, &beta(&a, &w(&a, &al, "e1")), 2), Err(Error::HeightTooSmall { .. })));
    }

    #[test]
    fn principal_factor_examples() {
        let (a, al) = setup();
        let e1 = al.get("e1").unwrap();
        let b = build_eggbox(&a, e1).unwrap();
        let d = &b.cells[0][0];
        assert_eq!(principal_factor_product(&a, d, d, e1).unwrap().as_ref(), Some(d));
        let e = beta(&a, &w(&a, &al, "e"));
        assert_eq!(principal_factor_product(&a, d, &e, e1), Err(Error::WrongClass));
        let (r, l) = (&b.cells[1][0], &b.cells[0][1]);
        assert_eq!(principal_factor_product(&a, r, r, e1).unwrap(), None);
        assert!(principal_factor_product(&a, l, r, e1).unwrap().is_some());
    }

    #[test]
    fn phi_example() {
        let (a, al) = setup();
        let h = al.get("h").unwrap();
        let u = phi(&a, h, Side::L, &beta(&a, &w(&a, &al, "e1"))).unwrap();
        assert_eq!(u.letters(), &w(&a, &al, "1 e e1 h e1 f 1")[..]);
        assert_eq!(quadrant(&a, &u, 1).unwrap(), QuadrantKey::new(Side::L, Side::L));
    }

    #[test]
    fn isomorphisms_height_three() {
        let (a, al) = setup();
        let h = al.get("h").unwrap();
        for side in [Side::L, Side::R] {
            let gs = a.side(h, side);
            let dom = d_class(&a, gs);
            let cod = quadrant_members(&a, h, |k| k.left == side && k.right == side).unwrap();
            let r = check_isomorphism(&a, &dom, gs, &cod, h, |u| phi(&a, h, side, u)).unwrap();
            assert!(r.ok(), "{r:?}");
            let dom = quadrant_members(&a, h, hat_domain_key(side)).unwrap();
            let cod = quadrant_members(&a, h, hat_codomain_key(side)).unwrap();
            let r = check_isomorphism(&a, &dom, h, &cod, h, |u| hat_phi(&a, h, side, u)).unwrap();
            assert!(r.ok(), "{r:?}");
            let c = a.center(h).unwrap();
            let dom = d_class(&a, c);
            let cod = center_quadrant(&a, h, side).unwrap();
            let r = check_isomorphism(&a, &dom, c, &cod, h, |u| phi_center_chain(&a, h, side, u)).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn census_height_four() {
        let (a, _) = setup();
        assert_eq!(lo_ro_census(&a, 4).unwrap().len(), 2);
    }
}

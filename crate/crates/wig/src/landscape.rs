//! Words over the generators: landscape shapes, splicing, the hills
//! `λ_l(g)`, `λ_r(g)`, α-codes of downhills and the [`Mountain`] type.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Aliases, Arena, Gen, Side};

/// Direction of a hill.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Up,
    Down,
}

/// Most specific shape of a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    NotLandscape,
    /// A single letter other than `1`.
    Letter,
    Hill(Direction),
    Valley,
    Canyon,
    /// An uphill followed by a downhill whose ends are not both `1`.
    UpDown,
    MountainRange,
    Mountain,
    /// Any other landscape.
    Landscape,
}

pub fn is_landscape(arena: &Arena, w: &[Gen]) -> bool {
    !w.is_empty() && w.windows(2).all(|p| arena.adjacent(p[0], p[1]))
}

pub fn check_landscape(arena: &Arena, w: &[Gen]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    match w.windows(2).position(|p| !arena.adjacent(p[0], p[1])) {
        None => Ok(()),
        Some(i) => Err(Error::NotALandscape(format!("letters {} and {} are not adjacent", i, i + 1))),
    }
}

fn heights(arena: &Arena, w: &[Gen]) -> Vec<usize> {
    w.iter().map(|&g| arena.height(g)).collect()
}

/// Interior positions whose neighbours are both higher.
pub fn rivers(arena: &Arena, w: &[Gen]) -> Vec<usize> {
    let h = heights(arena, w);
    (1..w.len().saturating_sub(1)).filter(|&i| h[i - 1] > h[i] && h[i + 1] > h[i]).collect()
}

/// Interior positions whose neighbours are both lower.
pub fn ridges(arena: &Arena, w: &[Gen]) -> Vec<usize> {
    let h = heights(arena, w);
    (1..w.len().saturating_sub(1)).filter(|&i| h[i - 1] < h[i] && h[i + 1] < h[i]).collect()
}

/// The ridges of maximal height.
pub fn peaks(arena: &Arena, w: &[Gen]) -> Vec<usize> {
    let r = ridges(arena, w);
    let top = r.iter().map(|&i| arena.height(w[i])).max();
    r.into_iter().filter(|&i| Some(arena.height(w[i])) == top).collect()
}

pub fn classify(arena: &Arena, w: &[Gen]) -> Shape {
    if !is_landscape(arena, w) {
        return Shape::NotLandscape;
    }
    if w.len() == 1 {
        return if w[0].is_one() { Shape::Mountain } else { Shape::Letter };
    }
    let h = heights(arena, w);
    let ups: Vec<bool> = h.windows(2).map(|p| p[1] > p[0]).collect();
    let turns = ups.windows(2).filter(|p| p[0] != p[1]).count();
    let first_up = ups[0];
    let n_rivers = rivers(arena, w).len();
    if w[0].is_one() && w[w.len() - 1].is_one() {
        return if n_rivers == 0 { Shape::Mountain } else { Shape::MountainRange };
    }
    match (turns, first_up) {
        (0, true) => Shape::Hill(Direction::Up),
        (0, false) => Shape::Hill(Direction::Down),
        (1, false) if w[0] == w[w.len() - 1] => Shape::Canyon,
        (1, false) => Shape::Valley,
        (1, true) => Shape::UpDown,
        _ => Shape::Landscape,
    }
}

/// `u * v`: concatenation with the shared endpoint written once.
pub fn splice(u: &[Gen], v: &[Gen]) -> Result<Vec<Gen>> {
    match (u.last(), v.first()) {
        (Some(a), Some(b)) if a == b => {
            let mut out = Vec::with_capacity(u.len() + v.len() - 1);
            out.extend_from_slice(u);
            out.extend_from_slice(&v[1..]);
            Ok(out)
        }
        _ => Err(Error::EndpointMismatch(format!("{:?} vs {:?}", u.last(), v.first()))),
    }
}

pub fn reversed(u: &[Gen]) -> Vec<Gen> {
    u.iter().rev().copied().collect()
}

/// `β₁(g) = λ_l(g) * λ_r(g)`, memoized in the arena.
pub fn beta1_letter(arena: &Arena, g: Gen) -> Arc<[Gen]> {
    if let Some(h) = arena.cached_hill(g) {
        return h;
    }
    let mut w = lambda_left(arena, g);
    w.extend_from_slice(&lambda_right(arena, g)[1..]);
    let w: Arc<[Gen]> = Arc::from(w);
    arena.store_hill(g, w.clone());
    w
}

/// `λ_l(g)`: the uphill from `1` to `g` of `β₁(g)`.
pub fn lambda_left(arena: &Arena, g: Gen) -> Vec<Gen> {
    match arena.center(g) {
        Some(c) => {
            let mut w = lambda_left(arena, c);
            w.push(arena.left(g));
            w.push(g);
            w
        }
        None if g.is_one() => vec![Gen::ONE],
        None => vec![Gen::ONE, g],
    }
}

/// `λ_r(g)`: the downhill from `g` to `1` of `β₁(g)`.
pub fn lambda_right(arena: &Arena, g: Gen) -> Vec<Gen> {
    match arena.center(g) {
        Some(c) => {
            let mut w = vec![g, arena.right(g)];
            w.extend(lambda_right(arena, c));
            w
        }
        None if g.is_one() => vec![Gen::ONE],
        None => vec![g, Gen::ONE],
    }
}

/// `(λ_l(g), λ_r(g))`.
pub fn lambda_hills(arena: &Arena, g: Gen) -> (Vec<Gen>, Vec<Gen>) {
    (lambda_left(arena, g), lambda_right(arena, g))
}

/// A word over `{l, r}`, ordered lexicographically with `l < r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LrCode(pub Vec<Side>);

impl LrCode {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn starts_with(&self, prefix: &LrCode) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// All codes of the given length in lexicographic order.
    pub fn all(len: usize) -> Vec<LrCode> {
        (0..1usize << len)
            .map(|bits| {
                LrCode(
                    (0..len)
                        .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Side::L } else { Side::R })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for LrCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LrCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'l' => Ok(Side::L),
                'r' => Ok(Side::R),
                _ => Err(Error::Parse { pos: i, msg: format!("`{c}` is not l or r") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(LrCode)
    }
}

impl Serialize for LrCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LrCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// α-code of a downhill; steps leaving a height-1 letter are not recorded.
pub fn alpha(arena: &Arena, u: &[Gen]) -> Result<LrCode> {
    let mut code = Vec::new();
    for p in u.windows(2) {
        if arena.height(p[0]) == 1 {
            if !p[1].is_one() {
                return Err(Error::NotADownhill("step from a base letter must reach 1".into()));
            }
            continue;
        }
        match arena.side_of(p[1], p[0]) {
            Some(s) => code.push(s),
            None => return Err(Error::NotADownhill("consecutive letters are not a descent".into())),
        }
    }
    Ok(LrCode(code))
}

/// The downhill from `g` to `1` with the given α-code.
pub fn downhill_from_code(arena: &Arena, g: Gen, code: &LrCode) -> Result<Vec<Gen>> {
    let h = arena.height(g);
    if code.len() + 1 != h.max(1) || (h == 0 && !code.is_empty()) {
        return Err(Error::CodeLengthMismatch { got: code.len(), height: h });
    }
    let mut out = vec![g];
    let mut cur = g;
    for &s in &code.0 {
        cur = arena.side(cur, s);
        out.push(cur);
    }
    if !cur.is_one() {
        out.push(Gen::ONE);
    }
    Ok(out)
}

/// The `2^{i-1}` downhills from `g` to `1`, in α-lex order.
pub fn downhills(arena: &Arena, g: Gen) -> Vec<Vec<Gen>> {
    let h = arena.height(g);
    if h == 0 {
        return vec![vec![Gen::ONE]];
    }
    LrCode::all(h - 1).iter().map(|c| downhill_from_code(arena, g, c).unwrap()).collect()
}

/// A river-free mountain range: the canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mountain {
    letters: Vec<Gen>,
    peak: usize,
}

/// Compact mountain code `(κ, α(reverse λ_l), α(λ_r))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Compact {
    pub peak: Gen,
    pub left: LrCode,
    pub right: LrCode,
}

impl Mountain {
    pub fn new(arena: &Arena, letters: Vec<Gen>) -> Result<Self> {
        if letters.len() == 1 && letters[0].is_one() {
            return Ok(Mountain::trivial());
        }
        if letters.len() < 3 || !letters[0].is_one() || !letters[letters.len() - 1].is_one() {
            return Err(Error::NotAMountain("must start and end with 1".into()));
        }
        check_landscape(arena, &letters).map_err(|e| Error::NotAMountain(e.to_string()))?;
        let r = ridges(arena, &letters);
        if r.len() != 1 || !rivers(arena, &letters).is_empty() {
            return Err(Error::NotAMountain("must have exactly one ridge and no rivers".into()));
        }
        Ok(Mountain { peak: r[0], letters })
    }

    /// Builds without validation; `letters` must be a mountain.
    pub(crate) fn from_raw(arena: &Arena, letters: Vec<Gen>) -> Self {
        let peak = (0..letters.len()).max_by_key(|&i| arena.height(letters[i])).unwrap_or(0);
        Mountain { letters, peak }
    }

    /// The identity mountain `1`.
    pub fn trivial() -> Self {
        Mountain { letters: vec![Gen::ONE], peak: 0 }
    }

    /// `β₁(g)`.
    pub fn of_letter(arena: &Arena, g: Gen) -> Self {
        let w = beta1_letter(arena, g);
        Mountain { peak: w.len() / 2, letters: w.to_vec() }
    }

    /// `up * down` where `up` ends and `down` starts at the same peak.
    pub fn from_hills(arena: &Arena, up: &[Gen], down: &[Gen]) -> Result<Self> {
        Mountain::new(arena, splice(up, down)?)
    }

    pub fn from_compact(arena: &Arena, c: &Compact) -> Result<Self> {
        let mut up = downhill_from_code(arena, c.peak, &c.left)?;
        up.reverse();
        let down = downhill_from_code(arena, c.peak, &c.right)?;
        let peak = up.len() - 1;
        up.extend_from_slice(&down[1..]);
        Ok(Mountain { letters: up, peak })
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.len() == 1
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Gen> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `κ(u)`.
    pub fn peak(&self) -> Gen {
        self.letters[self.peak]
    }

    pub fn peak_index(&self) -> usize {
        self.peak
    }

    /// `λ_l(u)`, from `1` up to the peak.
    pub fn lambda_l(&self) -> &[Gen] {
        &self.letters[..=self.peak]
    }

    /// `λ_r(u)`, from the peak down to `1`.
    pub fn lambda_r(&self) -> &[Gen] {
        &self.letters[self.peak..]
    }

    pub fn reversed(&self) -> Mountain {
        Mountain { letters: reversed(&self.letters), peak: self.letters.len() - 1 - self.peak }
    }

    /// α-code of `reverse λ_l(u)`.
    pub fn left_code(&self, arena: &Arena) -> LrCode {
        alpha(arena, &reversed(self.lambda_l())).expect("mountain flanks are downhills")
    }

    /// α-code of `λ_r(u)`.
    pub fn right_code(&self, arena: &Arena) -> LrCode {
        alpha(arena, self.lambda_r()).expect("mountain flanks are downhills")
    }

    pub fn compact(&self, arena: &Arena) -> Compact {
        Compact { peak: self.peak(), left: self.left_code(arena), right: self.right_code(arena) }
    }

    pub fn display(&self, arena: &Arena, aliases: Option<&Aliases>) -> String {
        arena.format_word(&self.letters, aliases)
    }
}

impl Compact {
    pub fn display(&self, arena: &Arena, aliases: Option<&Aliases>) -> String {
        format!("{}|{}|{}", arena.format_gen(self.peak, aliases), self.left, self.right)
    }

    /// Parses `peak|left|right`.
    pub fn parse(arena: &Arena, text: &str, aliases: Option<&Aliases>) -> Result<Self> {
        let parts: Vec<&str> = text.rsplitn(3, '|').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { pos: 0, msg: "expected peak|left|right".into() });
        }
        Ok(Compact {
            peak: arena.parse_gen(parts[2].trim(), aliases)?,
            left: parts[1].trim().parse()?,
            right: parts[0].trim().parse()?,
        })
    }

    pub fn to_record(&self, arena: &Arena, aliases: Option<&Aliases>) -> CompactRecord {
        CompactRecord {
            peak: arena.format_gen(self.peak, aliases),
            s: self.left.to_string(),
            t: self.right.to_string(),
        }
    }

    pub fn from_record(arena: &Arena, rec: &CompactRecord, aliases: Option<&Aliases>) -> Result<Self> {
        Ok(Compact { peak: arena.parse_gen(&rec.peak, aliases)?, left: rec.s.parse()?, right: rec.t.parse()? })
    }
}

/// Serialized compact code: peak literal and the two α-codes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CompactRecord {
    pub peak: String,
    pub s: String,
    pub t: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arena, Aliases) {
        let a = Arena::default();
        let al = Aliases::two_letter_defaults(&a);
        (a, al)
    }

    fn w(a: &Arena, al: &Aliases, s: &str) -> Vec<Gen> {
        a.parse_word(s, Some(al)).unwrap()
    }

    #[test]
    fn classify_examples() {
        let (a, al) = setup();
        assert_eq!(classify(&a, &w(&a, &al, "1 e e1 f 1")), Shape::Mountain);
        assert_eq!(classify(&a, &w(&a, &al, "f1 e f1")), Shape::Canyon);
        assert_eq!(classify(&a, &w(&a, &al, "e f")), Shape::NotLandscape);
        assert_eq!(classify(&a, &w(&a, &al, "e1 e f1")), Shape::Valley);
        assert_eq!(classify(&a, &w(&a, &al, "1 e e1")), Shape::Hill(Direction::Up));
        assert_eq!(classify(&a, &w(&a, &al, "h f1 f")), Shape::Hill(Direction::Down));
        assert_eq!(classify(&a, &w(&a, &al, "1 e 1 f 1")), Shape::MountainRange);
        assert_eq!(classify(&a, &w(&a, &al, "e e1 f")), Shape::UpDown);
        assert_eq!(classify(&a, &w(&a, &al, "e1")), Shape::Letter);
        assert_eq!(classify(&a, &w(&a, &al, "1")), Shape::Mountain);
        assert_eq!(classify(&a, &w(&a, &al, "e1 e 1 f 1")), Shape::Landscape);
    }

    #[test]
    fn splice_examples() {
        let (a, al) = setup();
        assert_eq!(
            splice(&w(&a, &al, "1 e e1"), &w(&a, &al, "e1 f 1")).unwrap(),
            w(&a, &al, "1 e e1 f 1")
        );
        assert_eq!(splice(&w(&a, &al, "1 e 1"), &w(&a, &al, "1 f 1")).unwrap(), w(&a, &al, "1 e 1 f 1"));
        let down = w(&a, &al, "h f1 f 1");
        let c = splice(&down, &reversed(&down)).unwrap();
        assert_eq!(classify(&a, &c), Shape::Canyon);
        assert_eq!(c[c.len() - 1], down[0]);
        assert!(matches!(splice(&w(&a, &al, "1 e"), &w(&a, &al, "f 1")), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn lambda_hill_examples() {
        let (a, al) = setup();
        let g = |s: &str| a.parse_gen(s, Some(&al)).unwrap();
        assert_eq!(lambda_hills(&a, g("e")), (w(&a, &al, "1 e"), w(&a, &al, "e 1")));
        assert_eq!(lambda_hills(&a, g("e1")), (w(&a, &al, "1 e e1"), w(&a, &al, "e1 f 1")));
        assert_eq!(&*beta1_letter(&a, g("h")), &w(&a, &al, "1 f e1 h f1 f 1")[..]);
        assert_eq!(lambda_hills(&a, Gen::ONE), (vec![Gen::ONE], vec![Gen::ONE]));
    }

    #[test]
    fn alpha_examples() {
        let (a, al) = setup();
        let g = |s: &str| a.parse_gen(s, Some(&al)).unwrap();
        assert_eq!(alpha(&a, &w(&a, &al, "h f1 f 1")).unwrap().to_string(), "rl");
        assert_eq!(downhill_from_code(&a, g("e1"), &"l".parse().unwrap()).unwrap(), w(&a, &al, "e1 e 1"));
        assert!(matches!(
            downhill_from_code(&a, g("e1"), &"lr".parse().unwrap()),
            Err(Error::CodeLengthMismatch { .. })
        ));
        for i in 0..=4 {
            for &g in a.enum_level(i).unwrap().iter() {
                for code in LrCode::all(i.max(1) - 1) {
                    let d = downhill_from_code(&a, g, &code).unwrap();
                    assert_eq!(alpha(&a, &d).unwrap(), code);
                }
            }
        }
    }

    #[test]
    fn mountain_parts_examples() {
        let (a, al) = setup();
        let u = Mountain::new(&a, w(&a, &al, "1 e e1 f 1")).unwrap();
        assert_eq!(u.peak(), al.get("e1").unwrap());
        assert_eq!(u.lambda_l(), &w(&a, &al, "1 e e1")[..]);
        let c = u.compact(&a);
        assert_eq!((c.left.to_string(), c.right.to_string()), ("l".into(), "r".into()));
        assert_eq!(Mountain::from_compact(&a, &c).unwrap(), u);
        let e = Mountain::new(&a, w(&a, &al, "1 e 1")).unwrap().compact(&a);
        assert!(e.left.is_empty() && e.right.is_empty());
        assert!(Mountain::new(&a, w(&a, &al, "1 e 1 f 1")).is_err());
        let text = c.display(&a, Some(&al));
        assert_eq!(text, "e1|l|r");
        assert_eq!(Compact::parse(&a, &text, Some(&al)).unwrap(), c);
    }

    #[test]
    fn downhill_counts() {
        let (a, _) = setup();
        for i in 1..=4 {
            for &g in a.enum_level(i).unwrap().iter() {
                assert_eq!(downhills(&a, g).len(), 1 << (i - 1));
            }
        }
    }
}

//! The letters of the generating set: the identity `1`, base letters, and
//! nested triples `(l, c, r)`, interned in an [`Arena`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use parking_lot::RwLock;

use crate::error::{Error, Result};

/// Interned generator id. `Gen::ONE` is the identity letter.
///
/// The derived `Ord` is arena order (interning order), not the canonical
/// order; use [`Arena::cmp_canonical`] for the latter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gen(u32);

impl Gen {
    pub const ONE: Gen = Gen(0);

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self == Gen::ONE
    }
}

/// Structural shape of a generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    One,
    Base(usize),
    Triple(Gen, Gen, Gen),
}

/// One of the two side entries of a letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Side::L => 'l',
            Side::R => 'r',
        }
    }
}

/// For a triple `g` of height at least 3: which side of `g^l` (resp. `g^r`)
/// equals `g^c`, and the entry on the other side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SideResolution {
    pub l_c: Side,
    pub l_o: Gen,
    pub r_c: Side,
    pub r_o: Gen,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    kind: Kind,
    height: u32,
}

/// The ordered set of base letter names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "alphabet is empty".into() });
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !is_identifier(n) {
                return Err(Error::Parse { pos: 0, msg: format!("`{n}` is not an identifier") });
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::DuplicateName(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out })
    }

    /// Parses a comma separated list such as `e,f`.
    pub fn parse(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Alphabet::new(&names)
    }

    /// `count` letters named `a`, `b`, ... (then `a1`, ... past `z`).
    pub fn fresh(count: usize) -> Self {
        let names: Vec<String> = (0..count)
            .map(|i| {
                let c = (b'a' + (i % 26) as u8) as char;
                if i < 26 {
                    c.to_string()
                } else {
                    format!("{c}{}", i / 26)
                }
            })
            .collect();
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet { names: vec!["e".into(), "f".into()] }
    }
}

/// Default enumeration cap: the largest level (at most 6, at least 2) with
/// at most 100 000 letters.
pub fn default_cap(n: usize) -> usize {
    let limit = BigUint::from(100_000u32);
    let mut cap = 2;
    for i in 3..=6 {
        if level_size(i, n) <= limit {
            cap = i;
        } else {
            break;
        }
    }
    cap
}

/// Interning arena for one alphabet.
///
/// Interning is serialized behind write locks; all reads take shared locks
/// and may run concurrently.
pub struct Arena {
    alphabet: Alphabet,
    cap: usize,
    product_cap: usize,
    nodes: RwLock<Vec<Node>>,
    triples: RwLock<HashMap<(Gen, Gen, Gen), Gen>>,
    grounds: RwLock<HashMap<Gen, Arc<[Gen]>>>,
    levels: RwLock<Vec<Arc<[Gen]>>>,
    up: RwLock<HashMap<Gen, Arc<[Gen]>>>,
    hills: RwLock<HashMap<Gen, Arc<[Gen]>>>,
}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arena")
            .field("alphabet", &self.alphabet)
            .field("cap", &self.cap)
            .field("letters", &self.nodes.read().len())
            .finish()
    }
}

impl Default for Arena {
    fn default() -> Self {
        Arena::new(Alphabet::default())
    }
}

impl Arena {
    pub const DEFAULT_PRODUCT_CAP: usize = 64;

    pub fn new(alphabet: Alphabet) -> Self {
        let cap = default_cap(alphabet.len());
        Arena::with_caps(alphabet, cap, Arena::DEFAULT_PRODUCT_CAP)
    }

    /// `cap` bounds level enumeration; `product_cap` bounds the peak height
    /// of products in the mountain model.
    pub fn with_caps(alphabet: Alphabet, cap: usize, product_cap: usize) -> Self {
        let n = alphabet.len();
        let mut nodes = Vec::with_capacity(n + 1);
        nodes.push(Node { kind: Kind::One, height: 0 });
        for i in 0..n {
            nodes.push(Node { kind: Kind::Base(i), height: 1 });
        }
        let level0: Arc<[Gen]> = Arc::from(vec![Gen::ONE]);
        let level1: Arc<[Gen]> = (1..=n as u32).map(Gen).collect();
        Arena {
            alphabet,
            cap,
            product_cap,
            nodes: RwLock::new(nodes),
            triples: RwLock::new(HashMap::new()),
            grounds: RwLock::new(HashMap::new()),
            levels: RwLock::new(vec![level0, level1]),
            up: RwLock::new(HashMap::new()),
            hills: RwLock::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn product_cap(&self) -> usize {
        self.product_cap
    }

    /// Number of interned letters so far.
    pub fn len(&self) -> usize {
        self.nodes.read().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Base letter by alphabet index.
    pub fn base(&self, i: usize) -> Gen {
        assert!(i < self.alphabet.len(), "base letter index out of range");
        Gen(i as u32 + 1)
    }

    pub fn base_by_name(&self, name: &str) -> Option<Gen> {
        self.alphabet.index_of(name).map(|i| self.base(i))
    }

    fn node(&self, g: Gen) -> Node {
        self.nodes.read()[g.0 as usize]
    }

    pub fn kind(&self, g: Gen) -> Kind {
        self.node(g).kind
    }

    pub fn height(&self, g: Gen) -> usize {
        self.node(g).height as usize
    }

    /// `(g^l, g^r)`; both are `1` for base letters, `None` for `1`.
    pub fn sides(&self, g: Gen) -> Option<(Gen, Gen)> {
        match self.kind(g) {
            Kind::One => None,
            Kind::Base(_) => Some((Gen::ONE, Gen::ONE)),
            Kind::Triple(l, _, r) => Some((l, r)),
        }
    }

    /// `g^l` or `g^r`. Panics on `1`.
    pub fn side(&self, g: Gen, s: Side) -> Gen {
        let (l, r) = self.sides(g).expect("the identity letter has no entries");
        match s {
            Side::L => l,
            Side::R => r,
        }
    }

    pub fn left(&self, g: Gen) -> Gen {
        self.side(g, Side::L)
    }

    pub fn right(&self, g: Gen) -> Gen {
        self.side(g, Side::R)
    }

    /// `g^c` for triples.
    pub fn center(&self, g: Gen) -> Option<Gen> {
        match self.kind(g) {
            Kind::Triple(_, c, _) => Some(c),
            _ => None,
        }
    }

    /// True if `h` is the l- or r-entry of `g`.
    pub fn is_side_of(&self, h: Gen, g: Gen) -> bool {
        match self.sides(g) {
            Some((l, r)) => h == l || h == r,
            None => false,
        }
    }

    /// Which side of `g` equals `h`, if any; `L` wins for height-1 `g`.
    pub fn side_of(&self, h: Gen, g: Gen) -> Option<Side> {
        let (l, r) = self.sides(g)?;
        if h == l {
            Some(Side::L)
        } else if h == r {
            Some(Side::R)
        } else {
            None
        }
    }

    /// True if the two letters may be adjacent in a landscape.
    pub fn adjacent(&self, a: Gen, b: Gen) -> bool {
        self.is_side_of(a, b) || self.is_side_of(b, a)
    }

    pub fn side_resolution(&self, g: Gen) -> Result<SideResolution> {
        let h = self.height(g);
        if h < 3 {
            return Err(Error::HeightTooSmall { height: h, required: 3 });
        }
        let (l, c, r) = match self.kind(g) {
            Kind::Triple(l, c, r) => (l, c, r),
            _ => unreachable!(),
        };
        let resolve = |x: Gen| {
            let (xl, xr) = self.sides(x).unwrap();
            if xl == c {
                (Side::L, xr)
            } else {
                (Side::R, xl)
            }
        };
        let (l_c, l_o) = resolve(l);
        let (r_c, r_o) = resolve(r);
        Ok(SideResolution { l_c, l_o, r_c, r_o })
    }

    /// Interns `(l, c, r)` after checking the letter conditions.
    pub fn make_triple(&self, l: Gen, c: Gen, r: Gen) -> Result<Gen> {
        if let Some(&g) = self.triples.read().get(&(l, c, r)) {
            return Ok(g);
        }
        let (hl, hc, hr) = (self.height(l), self.height(c), self.height(r));
        if hl == 0 || hl != hr || hc + 1 != hl {
            return Err(Error::InvalidTriple(format!("height mismatch ({hl},{hc},{hr})")));
        }
        if l == r {
            return Err(Error::InvalidTriple("left and right entries coincide".into()));
        }
        if !(self.is_side_of(c, l) && self.is_side_of(c, r)) {
            return Err(Error::InvalidTriple("center is not a shared entry".into()));
        }
        Ok(self.intern_unchecked(l, c, r, hl as u32 + 1))
    }

    fn intern_unchecked(&self, l: Gen, c: Gen, r: Gen, height: u32) -> Gen {
        let mut triples = self.triples.write();
        if let Some(&g) = triples.get(&(l, c, r)) {
            return g;
        }
        let mut nodes = self.nodes.write();
        let g = Gen(nodes.len() as u32);
        nodes.push(Node { kind: Kind::Triple(l, c, r), height });
        triples.insert((l, c, r), g);
        g
    }

    /// Looks up an already interned triple.
    pub fn find_triple(&self, l: Gen, c: Gen, r: Gen) -> Option<Gen> {
        self.triples.read().get(&(l, c, r)).copied()
    }

    /// Canonical order: `1` < base letters (alphabet order) < triples, the
    /// latter by height and then recursively by `(l, c, r)`.
    pub fn cmp_canonical(&self, a: Gen, b: Gen) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (na, nb) = (self.node(a), self.node(b));
        na.height.cmp(&nb.height).then_with(|| match (na.kind, nb.kind) {
            (Kind::Base(i), Kind::Base(j)) => i.cmp(&j),
            (Kind::Triple(l1, c1, r1), Kind::Triple(l2, c2, r2)) => self
                .cmp_canonical(l1, l2)
                .then_with(|| self.cmp_canonical(c1, c2))
                .then_with(|| self.cmp_canonical(r1, r2)),
            _ => unreachable!("equal heights imply equal kinds"),
        })
    }

    /// The ground of `g`, as ids sorted in arena order.
    pub fn ground(&self, g: Gen) -> Arc<[Gen]> {
        if let Some(s) = self.grounds.read().get(&g) {
            return s.clone();
        }
        let set: Arc<[Gen]> = match self.sides(g) {
            None => Arc::from(vec![Gen::ONE]),
            Some((l, r)) => {
                let (gl, gr) = (self.ground(l), self.ground(r));
                let mut v: Vec<Gen> = Vec::with_capacity(gl.len() + gr.len() + 1);
                v.extend_from_slice(&gl);
                v.extend_from_slice(&gr);
                v.push(g);
                v.sort_unstable();
                v.dedup();
                Arc::from(v)
            }
        };
        self.grounds.write().insert(g, set.clone());
        set
    }

    /// `h ⪯ g`, i.e. `h` lies in the ground of `g`.
    pub fn precedes(&self, h: Gen, g: Gen) -> bool {
        if self.height(h) > self.height(g) {
            return false;
        }
        self.ground(g).binary_search(&h).is_ok()
    }

    fn check_cap(&self, i: usize) -> Result<()> {
        if i > self.cap {
            Err(Error::HeightCapExceeded { requested: i, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// All letters of height `i` in canonical order.
    pub fn enum_level(&self, i: usize) -> Result<Arc<[Gen]>> {
        self.check_cap(i)?;
        if let Some(lv) = self.levels.read().get(i) {
            return Ok(lv.clone());
        }
        let below = self.enum_level(i - 1)?;
        let mut levels = self.levels.write();
        if let Some(lv) = levels.get(i) {
            return Ok(lv.clone());
        }
        // Letters of level i-1 grouped by each of their side entries.
        let mut by_entry: HashMap<Gen, Vec<Gen>> = HashMap::new();
        for &r in below.iter() {
            let (a, b) = self.sides(r).unwrap();
            by_entry.entry(a).or_default().push(r);
            if b != a {
                by_entry.entry(b).or_default().push(r);
            }
        }
        let mut out = Vec::new();
        for &l in below.iter() {
            let (a, b) = self.sides(l).unwrap();
            let mut centers = vec![a];
            if b != a {
                centers.push(b);
                centers.sort_by(|x, y| self.cmp_canonical(*x, *y));
            }
            for c in centers {
                for &r in &by_entry[&c] {
                    if r != l {
                        out.push(self.intern_unchecked(l, c, r, i as u32));
                    }
                }
            }
        }
        let level: Arc<[Gen]> = Arc::from(out);
        let mut ups: HashMap<Gen, Vec<Gen>> = HashMap::new();
        for &t in level.iter() {
            let (l, r) = self.sides(t).unwrap();
            ups.entry(l).or_default().push(t);
            ups.entry(r).or_default().push(t);
        }
        {
            let mut up = self.up.write();
            for &g in below.iter() {
                let v = ups.remove(&g).unwrap_or_default();
                up.insert(g, Arc::from(v));
            }
        }
        debug_assert_eq!(levels.len(), i);
        levels.push(level.clone());
        Ok(level)
    }

    /// `G(g)`: the letters one level up having `g` as l- or r-entry.
    pub fn neighbors_up(&self, g: Gen) -> Result<Arc<[Gen]>> {
        let h = self.height(g);
        if h == 0 {
            return Err(Error::HeightTooSmall { height: 0, required: 1 });
        }
        self.enum_level(h + 1)?;
        Ok(self.up.read()[&g].clone())
    }

    pub(crate) fn cached_hill(&self, g: Gen) -> Option<Arc<[Gen]>> {
        self.hills.read().get(&g).cloned()
    }

    pub(crate) fn store_hill(&self, g: Gen, hill: Arc<[Gen]>) {
        self.hills.write().insert(g, hill);
    }

    /// Parses a generator literal: `1`, a base letter, an alias, or
    /// `(L,C,R)`.
    pub fn parse_gen(&self, text: &str, aliases: Option<&Aliases>) -> Result<Gen> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let g = p.expr(self, aliases)?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
        }
        Ok(g)
    }

    /// Parses whitespace separated literals. Spaces inside parentheses are
    /// allowed.
    pub fn parse_word(&self, text: &str, aliases: Option<&Aliases>) -> Result<Vec<Gen>> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            p.skip_ws();
            if p.pos == p.src.len() {
                break;
            }
            out.push(p.expr(self, aliases)?);
        }
        if out.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(out)
    }

    /// Canonical literal, using alias names where given.
    pub fn format_gen(&self, g: Gen, aliases: Option<&Aliases>) -> String {
        let mut s = String::new();
        self.write_gen(&mut s, g, aliases);
        s
    }

    fn write_gen(&self, out: &mut String, g: Gen, aliases: Option<&Aliases>) {
        if let Some(name) = aliases.and_then(|a| a.name_of(g)) {
            out.push_str(name);
            return;
        }
        match self.kind(g) {
            Kind::One => out.push('1'),
            Kind::Base(i) => out.push_str(self.alphabet.name(i)),
            Kind::Triple(l, c, r) => {
                out.push('(');
                self.write_gen(out, l, aliases);
                out.push(',');
                self.write_gen(out, c, aliases);
                out.push(',');
                self.write_gen(out, r, aliases);
                out.push(')');
            }
        }
    }

    pub fn format_word(&self, w: &[Gen], aliases: Option<&Aliases>) -> String {
        w.iter().map(|&g| self.format_gen(g, aliases)).collect::<Vec<_>>().join(" ")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{}`", b as char))
        }
    }

    fn expr(&mut self, arena: &Arena, aliases: Option<&Aliases>) -> Result<Gen> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => self.err("unexpected end of input"),
            Some(b'1') => {
                self.pos += 1;
                Ok(Gen::ONE)
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.expr(arena, aliases)?;
                self.expect(b',')?;
                let c = self.expr(arena, aliases)?;
                self.expect(b',')?;
                let r = self.expr(arena, aliases)?;
                self.expect(b')')?;
                arena.make_triple(l, c, r)
            }
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(g) = arena.base_by_name(name) {
                    return Ok(g);
                }
                if let Some(g) = aliases.and_then(|a| a.get(name)) {
                    return Ok(g);
                }
                Err(Error::UnknownName(name.to_string()))
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

/// Named abbreviations for generators, e.g. `e1 = (e,1,f)`.
#[derive(Clone, Debug, Default)]
pub struct Aliases {
    entries: Vec<(String, Gen)>,
    by_name: HashMap<String, Gen>,
    by_gen: HashMap<Gen, String>,
}

impl Aliases {
    pub fn new() -> Self {
        Aliases::default()
    }

    pub fn insert(&mut self, arena: &Arena, name: &str, g: Gen) -> Result<()> {
        if !is_identifier(name) {
            return Err(Error::Parse { pos: 0, msg: format!("`{name}` is not an identifier") });
        }
        if arena.base_by_name(name).is_some() || self.by_name.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.entries.push((name.to_string(), g));
        self.by_name.insert(name.to_string(), g);
        self.by_gen.entry(g).or_insert_with(|| name.to_string());
        Ok(())
    }

    /// Parses lines `name = expr`; `#` starts a comment. Earlier aliases may
    /// be used in later expressions.
    pub fn parse(arena: &Arena, text: &str) -> Result<Self> {
        let mut a = Aliases::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (name, expr) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected `name = expr` in `{line}`") })?;
            let g = arena.parse_gen(expr.trim(), Some(&a))?;
            a.insert(arena, name.trim(), g)?;
        }
        Ok(a)
    }

    /// The conventional names for a two-letter alphabet `{x, y}`:
    /// `x1 = (x,1,y)`, `y1 = (y,1,x)`, `h = (x1,y,y1)`, `h1 = (x1,x,y1)`,
    /// `h2 = (y1,y,x1)`, `h3 = (y1,x,x1)`. Empty for other alphabets or on
    /// name clashes.
    pub fn two_letter_defaults(arena: &Arena) -> Self {
        let mut a = Aliases::new();
        if arena.alphabet().len() != 2 {
            return a;
        }
        let (x, y) = (arena.base(0), arena.base(1));
        let (xn, yn) = (arena.alphabet().name(0).to_string(), arena.alphabet().name(1).to_string());
        let x1 = arena.make_triple(x, Gen::ONE, y).unwrap();
        let y1 = arena.make_triple(y, Gen::ONE, x).unwrap();
        let defs = [
            (format!("{xn}1"), x1),
            (format!("{yn}1"), y1),
            ("h".to_string(), arena.make_triple(x1, y, y1).unwrap()),
            ("h1".to_string(), arena.make_triple(x1, x, y1).unwrap()),
            ("h2".to_string(), arena.make_triple(y1, y, x1).unwrap()),
            ("h3".to_string(), arena.make_triple(y1, x, x1).unwrap()),
        ];
        for (name, g) in defs {
            if a.insert(arena, &name, g).is_err() {
                return Aliases::new();
            }
        }
        a
    }

    pub fn get(&self, name: &str) -> Option<Gen> {
        self.by_name.get(name).copied()
    }

    pub fn name_of(&self, g: Gen) -> Option<&str> {
        self.by_gen.get(&g).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Gen)> {
        self.entries.iter().map(|(n, g)| (n.as_str(), *g))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn pow(base: u32, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// `|G_i(X)|` for `|X| = n`, from the closed recurrence.
pub fn level_size(i: usize, n: usize) -> BigUint {
    match i {
        0 => BigUint::from(1u32),
        1 => BigUint::from(n),
        _ => {
            let mut size = BigUint::from(n);
            for k in 1..i {
                size *= growth_factor(k, n);
            }
            size
        }
    }
}

/// `|G_{k+1}| / |G_k|` = `(4^{k-1}(3n-5) + 2) / 3`.
fn growth_factor(k: usize, n: usize) -> BigUint {
    assert!(n >= 2 && k >= 1);
    (pow(4, k - 1) * BigUint::from(3 * n - 5) + BigUint::from(2u32)) / BigUint::from(3u32)
}

/// `(|G_{i+1}(X)|, |G(g)| for g ∈ G_i(X))` for `|X| = n`.
pub fn count_formulas(i: usize, n: usize) -> (BigUint, BigUint) {
    assert!(n >= 2 && i >= 1, "count_formulas needs n >= 2 and i >= 1");
    let size_gg = (pow(2, 2 * i - 1) * BigUint::from(3 * n - 5) + BigUint::from(4u32)) / BigUint::from(3u32);
    (level_size(i + 1, n), size_gg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ef() -> (Arena, Aliases) {
        let a = Arena::default();
        let al = Aliases::two_letter_defaults(&a);
        (a, al)
    }

    #[test]
    fn make_triple_examples() {
        let (a, al) = ef();
        let (e, f) = (a.base(0), a.base(1));
        let e1 = a.make_triple(e, Gen::ONE, f).unwrap();
        assert_eq!(Some(e1), al.get("e1"));
        let f1 = al.get("f1").unwrap();
        let h = a.make_triple(e1, f, f1).unwrap();
        assert_eq!(Some(h), al.get("h"));
        assert_eq!(a.height(h), 3);
        assert!(matches!(a.make_triple(e, Gen::ONE, e), Err(Error::InvalidTriple(_))));
        assert!(a.make_triple(e1, e, e).is_err());
        let b = Arena::new(Alphabet::parse("a,b,c").unwrap());
        let ab = b.make_triple(b.base(0), Gen::ONE, b.base(1)).unwrap();
        let bc = b.make_triple(b.base(1), Gen::ONE, b.base(2)).unwrap();
        assert!(b.make_triple(ab, b.base(1), bc).is_ok());
        assert!(matches!(b.make_triple(ab, b.base(0), bc), Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn ground_examples() {
        let (a, al) = ef();
        let g = |s: &str| a.parse_gen(s, Some(&al)).unwrap();
        assert_eq!(&*a.ground(Gen::ONE), &[Gen::ONE]);
        let mut want = [Gen::ONE, g("e"), g("f"), g("e1")];
        want.sort();
        assert_eq!(&*a.ground(g("e1")), &want[..]);
        let mut want = [Gen::ONE, g("e"), g("f"), g("e1"), g("f1"), g("h")];
        want.sort();
        assert_eq!(&*a.ground(g("h")), &want[..]);
        assert!(a.precedes(g("h"), g("h")));
        assert!(a.precedes(g("e"), g("h")));
        assert!(!a.precedes(g("h1"), g("h")));
    }

    #[test]
    fn levels_for_two_letters() {
        let (a, al) = ef();
        let names = |lv: &[Gen]| lv.iter().map(|&g| a.format_gen(g, Some(&al))).collect::<Vec<_>>();
        assert_eq!(names(&a.enum_level(2).unwrap()), ["e1", "f1"]);
        assert_eq!(names(&a.enum_level(3).unwrap()), ["h1", "h", "h3", "h2"]);
        assert_eq!(a.enum_level(4).unwrap().len(), 24);
        assert!(matches!(a.enum_level(7), Err(Error::HeightCapExceeded { requested: 7, cap: 6 })));
    }

    #[test]
    fn neighbors_up_examples() {
        let (a, al) = ef();
        let g = |s: &str| a.parse_gen(s, Some(&al)).unwrap();
        assert_eq!(&*a.neighbors_up(g("e")).unwrap(), &[g("e1"), g("f1")]);
        assert_eq!(a.neighbors_up(g("e1")).unwrap().len(), 4);
        let b = Arena::new(Alphabet::parse("a,b,c").unwrap());
        assert_eq!(b.neighbors_up(b.base(0)).unwrap().len(), 4);
    }

    #[test]
    fn count_formula_examples() {
        let u = |x: u32| BigUint::from(x);
        assert_eq!(count_formulas(1, 2).1, u(2));
        assert_eq!(count_formulas(2, 2), (u(4), u(4)));
        assert_eq!(count_formulas(3, 2).0, u(24));
        assert_eq!(level_size(6, 2), u(45408));
        assert_eq!(level_size(2, 3), u(6));
        assert_eq!(level_size(3, 3), u(36));
        assert_eq!(count_formulas(4, 2).1, u(44));
        assert_eq!(count_formulas(5, 2).1, u(172));
    }

    #[test]
    fn default_caps() {
        assert_eq!(default_cap(2), 6);
        assert_eq!(default_cap(3), 5);
        assert_eq!(default_cap(4), 4);
    }

    #[test]
    fn canonical_order_of_mixed_letters() {
        let (a, al) = ef();
        let g = |s: &str| a.parse_gen(s, Some(&al)).unwrap();
        let mut v = [g("h"), g("f"), Gen::ONE, g("f1"), g("e"), g("h1"), g("e1")];
        v.sort_by(|x, y| a.cmp_canonical(*x, *y));
        let names: Vec<_> = v.iter().map(|&x| a.format_gen(x, Some(&al))).collect();
        assert_eq!(names, ["1", "e", "f", "e1", "f1", "h1", "h"]);
    }

    #[test]
    fn literal_round_trip() {
        let (a, al) = ef();
        let h = a.parse_gen("h2", Some(&al)).unwrap();
        assert_eq!(a.format_gen(h, None), "((f,1,e),f,(e,1,f))");
        assert_eq!(a.parse_gen(" ( (f,1,e) , f, (e,1,f) ) ", None).unwrap(), h);
        assert_eq!(a.format_gen(h, Some(&al)), "h2");
        assert!(matches!(a.parse_gen("zz", None), Err(Error::UnknownName(_))));
        assert!(a.parse_gen("(e,1,f", None).is_err());
        let w = a.parse_word("1 e (e, 1, f) f 1", None).unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn aliases_file() {
        let a = Arena::default();
        let al = Aliases::parse(&a, "# demo\np = (e,1,f)\nq = (f,1,e)\nk = (p, f, q)\n").unwrap();
        assert_eq!(a.format_gen(al.get("k").unwrap(), None), "((e,1,f),f,(f,1,e))");
        assert!(Aliases::parse(&a, "e = (e,1,f)").is_err());
        assert!(Aliases::parse(&a, "p = q").is_err());
    }

    #[test]
    fn side_resolution_of_height_three() {
        let (a, al) = ef();
        let h = al.get("h").unwrap();
        let sr = a.side_resolution(h).unwrap();
        // h = (e1, f, f1): f is e1's r-entry and f1's l-entry.
        assert_eq!(sr.l_c, Side::R);
        assert_eq!(sr.l_o, a.base(0));
        assert_eq!(sr.r_c, Side::L);
        assert_eq!(sr.r_o, a.base(0));
        assert!(a.side_resolution(al.get("e1").unwrap()).is_err());
    }
}

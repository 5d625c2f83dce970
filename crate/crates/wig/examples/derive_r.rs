//! Searches for the 16-element semigroup `R` inside `Q × T2 × T3^op`, where
//! `Q` is the ground-filter quotient of `FI(e,f)` on `{e, f, e1, f1}`, and
//! writes its Cayley table to `fixtures/example2_r.txt`.
//!
//! Run with `cargo run -p wig --example derive_r`.

use std::collections::{BTreeSet, HashMap};

use wig::finite::examples::{check_layout, LAYOUT_R};
use wig::finite::{ground_filter_quotient, FiniteSemigroup};
use wig::{Aliases, Arena, Mountain};

type Elem = (usize, [u8; 2], [u8; 3]);

/// Element names in fixture order.
const ORDER: [&str; 16] = [
    "e", "f", "ge", "g", "fe", "fg", "eg1", "ef", "g1", "g1f", "efe", "efg", "gg1", "g1g", "fef", "fgg1",
];

fn idempotent_maps<const N: usize>() -> Vec<[u8; N]> {
    let mut out = Vec::new();
    let total = N.pow(N as u32);
    for code in 0..total {
        let mut m = [0u8; N];
        let mut c = code;
        for x in m.iter_mut() {
            *x = (c % N) as u8;
            c /= N;
        }
        if (0..N).all(|i| m[m[i] as usize] == m[i]) {
            out.push(m);
        }
    }
    out
}

struct Ambient<'a> {
    q: &'a FiniteSemigroup,
}

impl Ambient<'_> {
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let s = [a.1[b.1[0] as usize], a.1[b.1[1] as usize]];
        let t = [b.2[a.2[0] as usize], b.2[a.2[1] as usize], b.2[a.2[2] as usize]];
        (self.q.mul(a.0, b.0), s, t)
    }

    fn prod(&self, xs: &[&Elem]) -> Elem {
        xs[1..].iter().fold(*xs[0], |acc, x| self.mul(&acc, x))
    }
}

fn main() {
    let arena = Arena::default();
    let aliases = Aliases::two_letter_defaults(&arena);
    let letters: Vec<_> = ["e", "f", "e1", "f1"].iter().map(|n| arena.parse_gen(n, Some(&aliases)).unwrap()).collect();
    let gq = ground_filter_quotient(&arena, &letters, Some(&aliases)).unwrap();
    let q = &gq.semigroup;
    let qel: Vec<usize> = letters.iter().map(|&g| gq.element_of(&Mountain::of_letter(&arena, g))).collect();
    let amb = Ambient { q };
    let s2 = idempotent_maps::<2>();
    let s3 = idempotent_maps::<3>();
    let mut found = Vec::new();
    let mut tried = 0usize;
    for code2 in 0..s2.len().pow(4) {
        let sig: Vec<[u8; 2]> = (0..4).map(|k| s2[(code2 / s2.len().pow(k)) % s2.len()]).collect();
        for code3 in 0..s3.len().pow(4) {
            let tau: Vec<[u8; 3]> = (0..4).map(|k| s3[(code3 / s3.len().pow(k)) % s3.len()]).collect();
            let gens: Vec<Elem> = (0..4).map(|k| (qel[k], sig[k], tau[k])).collect();
            let (e, f, g, g1) = (&gens[0], &gens[1], &gens[2], &gens[3]);
            let p = |xs: &[&Elem]| amb.prod(xs);
            let rel = p(&[e, g]) == *g
                && p(&[g, f]) == *g
                && p(&[f, g, e]) == p(&[f, e])
                && p(&[f, g1]) == *g1
                && p(&[g1, e]) == *g1
                && p(&[e, g1, f]) == p(&[e, f])
                && p(&[e, f, e]) == p(&[g, e, g1])
                && p(&[f, e, f]) == p(&[g1, g, e])
                && p(&[e, f, g]) == p(&[g, g1, f]);
            if !rel {
                continue;
            }
            tried += 1;
            if let Some(r) = build(&amb, &gens) {
                let checks = check_layout(&r, LAYOUT_R, |w| r.parse_element(w));
                if checks.iter().all(|c| c.pass) && quoted_sandwiches(&r) && r.is_regular() {
                    found.push(r);
                }
            }
        }
    }
    let distinct: BTreeSet<Vec<Vec<usize>>> = found.iter().map(FiniteSemigroup::rows).collect();
    eprintln!("{tried} assignments satisfy the relations; {} pass all checks; {} distinct tables", found.len(), distinct.len());
    let r = found.first().expect("no completion found");
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example2_r.txt");
    let text = format!(
        "# R = <e, f, g, g1> inside Q x T2 x T3^op; generated by examples/derive_r.rs\n{}",
        r.to_text()
    );
    std::fs::write(path, text).unwrap();
    eprintln!("wrote {path}");
}

/// Closes the generators and lays the result out in fixture order, or
/// `None` if the closure is not the expected 16 elements.
fn build(amb: &Ambient, gens: &[Elem]) -> Option<FiniteSemigroup> {
    let names = ["e", "f", "g", "g1"];
    let mut named: HashMap<Elem, String> = HashMap::new();
    let mut frontier = Vec::new();
    for (x, n) in gens.iter().zip(names) {
        if named.insert(*x, n.to_string()).is_some() {
            return None;
        }
        frontier.push(*x);
    }
    // breadth-first over words, so each element keeps a shortest name
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for (g, gn) in gens.iter().zip(names) {
                let p = amb.mul(w, g);
                if !named.contains_key(&p) {
                    let name = format!("{}{gn}", named[w]);
                    named.insert(p, name);
                    next.push(p);
                    if named.len() > 16 {
                        return None;
                    }
                }
            }
        }
        frontier = next;
    }
    if named.len() != 16 {
        return None;
    }
    // pin the fixture order by evaluating each target name as a word
    let eval = |w: &str| -> Option<Elem> {
        let mut acc: Option<Elem> = None;
        let mut rest = w;
        while !rest.is_empty() {
            let (x, len) = match rest.as_bytes()[0] {
                b'g' if rest.starts_with("g1") => (gens[3], 2),
                b'e' => (gens[0], 1),
                b'f' => (gens[1], 1),
                b'g' => (gens[2], 1),
                _ => return None,
            };
            acc = Some(acc.map_or(x, |a| amb.mul(&a, &x)));
            rest = &rest[len..];
        }
        acc
    };
    let elems: Vec<Elem> = ORDER.iter().map(|w| eval(w)).collect::<Option<_>>()?;
    let pos: HashMap<Elem, usize> = elems.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    if pos.len() != 16 {
        return None;
    }
    let rows = elems.iter().map(|a| elems.iter().map(|b| pos[&amb.mul(a, b)]).collect()).collect();
    FiniteSemigroup::new(rows, Some(ORDER.iter().map(|s| s.to_string()).collect())).ok()
}

fn quoted_sandwiches(r: &FiniteSemigroup) -> bool {
    let el = |w: &str| r.parse_element(w).unwrap();
    let cases: [(&str, &str, &[&str]); 6] = [
        ("f", "e", &["g"]),
        ("e", "f", &["g1"]),
        ("g f", "f g1", &["g1g"]),
        ("g e", "e g1", &["efe"]),
        ("g1 f", "f g", &["g1g", "fef"]),
        ("g1 e", "e g", &["efe", "gg1"]),
    ];
    cases.iter().all(|(a, b, want)| {
        let got: BTreeSet<usize> = r.sandwich_set(el(a), el(b)).unwrap_or_default().into_iter().collect();
        got == want.iter().map(|w| el(w)).collect()
    })
}

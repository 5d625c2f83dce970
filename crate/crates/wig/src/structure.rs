//! The mountain model: product, gorges, idempotents, inverses, Green's
//! relations, the natural order and sandwich sets.

use crate::error::{Error, Result};
use crate::generators::{Arena, Gen};
use crate::landscape::{classify, downhills, reversed, splice, LrCode, Mountain, Shape};
use crate::rewrite::{beta, beta2};

/// `u ⊙ v = β₂(u * v)`.
pub fn multiply(arena: &Arena, u: &Mountain, v: &Mountain) -> Result<Mountain> {
    let w = splice(u.letters(), v.letters())?;
    let m = beta2(arena, &w)?;
    let out = Mountain::from_raw(arena, m);
    let h = arena.height(out.peak());
    if h > arena.product_cap() {
        return Err(Error::HeightCapExceeded { requested: h, cap: arena.product_cap() });
    }
    Ok(out)
}

/// Product of several mountains, left to right.
pub fn multiply_all(arena: &Arena, ms: &[&Mountain]) -> Result<Mountain> {
    let mut acc = Mountain::trivial();
    for m in ms {
        acc = multiply(arena, &acc, m)?;
    }
    Ok(acc)
}

/// A canyon is a gorge when it normalizes to its endpoint letter. A single
/// letter counts as a trivial gorge.
pub fn is_gorge(arena: &Arena, w: &[Gen]) -> Result<bool> {
    if w.len() == 1 {
        return Ok(true);
    }
    if classify(arena, w) != Shape::Canyon {
        return Err(Error::NotACanyon(format!("{} letters", w.len())));
    }
    let out = beta2(arena, w)?;
    Ok(out.len() == 1 && out[0] == w[0])
}

fn gorge_unchecked(arena: &Arena, w: &[Gen]) -> bool {
    is_gorge(arena, w).expect("flank splices of one peak are canyons")
}

/// `u` is idempotent iff `λ_r(u) * λ_l(u)` is a gorge.
pub fn is_idempotent(arena: &Arena, u: &Mountain) -> bool {
    let w = splice(u.lambda_r(), u.lambda_l()).unwrap();
    gorge_unchecked(arena, &w)
}

/// The reversal, an inverse of `u`.
pub fn canonical_inverse(u: &Mountain) -> Mountain {
    u.reversed()
}

/// Two-gorge test for mutual inverses.
pub fn is_inverse(arena: &Arena, u: &Mountain, v: &Mountain) -> bool {
    if u.peak() != v.peak() {
        return false;
    }
    let a = splice(u.lambda_r(), v.lambda_l()).unwrap();
    let b = splice(v.lambda_r(), u.lambda_l()).unwrap();
    gorge_unchecked(arena, &a) && gorge_unchecked(arena, &b)
}

/// The D-class of peak `g`, row-major in the canonical egg-box order.
pub fn d_class(arena: &Arena, g: Gen) -> Vec<Mountain> {
    let downs = downhills(arena, g);
    let mut out = Vec::with_capacity(downs.len() * downs.len());
    for row in &downs {
        let up = reversed(row);
        for col in &downs {
            out.push(Mountain::from_hills(arena, &up, col).unwrap());
        }
    }
    out
}

/// All inverses of `u`; they lie in the D-class of `u`.
pub fn inverses_in_class(arena: &Arena, u: &Mountain) -> Vec<Mountain> {
    d_class(arena, u.peak()).into_iter().filter(|v| is_inverse(arena, u, v)).collect()
}

/// `u ≤_R v`: `λ_l(v)` is a prefix of `λ_l(u)`.
pub fn leq_r(u: &Mountain, v: &Mountain) -> bool {
    u.lambda_l().starts_with(v.lambda_l())
}

/// `u ≤_L v`: `λ_r(v)` is a suffix of `λ_r(u)`.
pub fn leq_l(u: &Mountain, v: &Mountain) -> bool {
    u.lambda_r().ends_with(v.lambda_r())
}

/// `u ≤_J v`: `κ(v) ⪯ κ(u)`.
pub fn leq_j(arena: &Arena, u: &Mountain, v: &Mountain) -> bool {
    arena.precedes(v.peak(), u.peak())
}

/// Keys deciding R, L and D (= J); H is trivial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GreenKeys {
    pub r: (Gen, LrCode),
    pub l: (Gen, LrCode),
    pub d: Gen,
}

pub fn green_keys(arena: &Arena, u: &Mountain) -> GreenKeys {
    GreenKeys {
        r: (u.peak(), u.left_code(arena)),
        l: (u.peak(), u.right_code(arena)),
        d: u.peak(),
    }
}

/// The natural partial order `v ≤ u`.
pub fn leq_natural(arena: &Arena, v: &Mountain, u: &Mountain) -> bool {
    if v == u {
        return true;
    }
    let (vl, ul) = (v.lambda_l(), u.lambda_l());
    let (vr, ur) = (v.lambda_r(), u.lambda_r());
    if vl.len() <= ul.len() || !vl.starts_with(ul) || vr.len() <= ur.len() || !vr.ends_with(ur) {
        return false;
    }
    let u1 = &vl[ul.len()..];
    let u2 = &vr[..vr.len() - ur.len()];
    let mut w = u2.to_vec();
    w.push(u.peak());
    w.extend_from_slice(u1);
    classify(arena, &w) == Shape::Canyon && gorge_unchecked(arena, &w)
}

/// Is `c` in `S(e, f) = {g ∈ E : f g = g = g e, e g f = e f}`?
pub fn sandwich_membership(arena: &Arena, c: &Mountain, e: &Mountain, f: &Mountain) -> Result<bool> {
    for x in [e, f] {
        if !is_idempotent(arena, x) {
            return Err(Error::NotIdempotent(landscape_text(arena, x)));
        }
    }
    if !is_idempotent(arena, c) {
        return Ok(false);
    }
    if multiply(arena, f, c)? != *c || multiply(arena, c, e)? != *c {
        return Ok(false);
    }
    let egf = multiply(arena, &multiply(arena, e, c)?, f)?;
    Ok(egf == multiply(arena, e, f)?)
}

fn landscape_text(arena: &Arena, m: &Mountain) -> String {
    arena.format_word(m.letters(), None)
}

/// Checks `S(β(g^r g^c), β(g^c g^l)) ∩ D_g = {β₁(g)}`.
pub fn sandwich_singleton_check(arena: &Arena, g: Gen) -> Result<bool> {
    let c = arena.center(g).ok_or(Error::HeightTooSmall { height: arena.height(g), required: 2 })?;
    let (l, r) = (arena.left(g), arena.right(g));
    let e = beta(arena, &[r, c]);
    let f = beta(arena, &[c, l]);
    let mut members = Vec::new();
    for u in d_class(arena, g) {
        if sandwich_membership(arena, &u, &e, &f)? {
            members.push(u);
        }
    }
    Ok(members == [Mountain::of_letter(arena, g)])
}

/// The R-class of `u` (fixed `λ_l`), in column order.
pub fn r_class(arena: &Arena, u: &Mountain) -> Vec<Mountain> {
    downhills(arena, u.peak())
        .iter()
        .map(|d| Mountain::from_hills(arena, u.lambda_l(), d).unwrap())
        .collect()
}

/// The L-class of `u` (fixed `λ_r`), in row order.
pub fn l_class(arena: &Arena, u: &Mountain) -> Vec<Mountain> {
    downhills(arena, u.peak())
        .iter()
        .map(|d| Mountain::from_hills(arena, &reversed(d), u.lambda_r()).unwrap())
        .collect()
}

/// A witness `w` with `v ⊙ w = u` when `u ≤_R v`:
/// `reverse(λ_r(v))` followed by the part of `u` after `κ(v)`.
pub fn r_witness(arena: &Arena, u: &Mountain, v: &Mountain) -> Option<Mountain> {
    if !leq_r(u, v) {
        return None;
    }
    let mut w = reversed(v.lambda_r());
    w.extend_from_slice(&u.letters()[v.peak_index() + 1..]);
    Mountain::new(arena, w).ok()
}

/// All mountains whose peak lies at height at most `max_height`.
pub fn mountains_up_to(arena: &Arena, max_height: usize) -> Result<Vec<Mountain>> {
    let mut out = vec![Mountain::trivial()];
    for i in 1..=max_height {
        for &g in arena.enum_level(i)?.iter() {
            out.extend(d_class(arena, g));
        }
    }
    Ok(out)
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

    fn b(a: &Arena, al: &Aliases, s: &str) -> Mountain {
        beta(a, &a.parse_word(s, Some(al)).unwrap())
    }

    fn w(a: &Arena, al: &Aliases, s: &str) -> Vec<Gen> {
        a.parse_word(s, Some(al)).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let (a, al) = setup();
        let p = multiply(&a, &b(&a, &al, "e"), &b(&a, &al, "f")).unwrap();
        assert_eq!(p.letters(), &w(&a, &al, "1 e f1 f 1")[..]);
        let q = multiply(&a, &b(&a, &al, "e1"), &b(&a, &al, "f1")).unwrap();
        assert_eq!(q.peak(), al.get("h2").unwrap());
        let e = b(&a, &al, "e");
        assert_eq!(multiply(&a, &e, &e).unwrap(), e);
    }

    #[test]
    fn gorge_examples() {
        let (a, al) = setup();
        assert!(is_gorge(&a, &w(&a, &al, "f1 e f1")).unwrap());
        for i in 1..=4 {
            for &g in a.enum_level(i).unwrap().iter() {
                let (l, r) = crate::landscape::lambda_hills(&a, g);
                assert!(is_gorge(&a, &splice(&r, &l).unwrap()).unwrap());
            }
        }
        assert!(is_gorge(&a, &w(&a, &al, "f1 e 1 f f1")).unwrap());
        assert!(!is_gorge(&a, &w(&a, &al, "e1 e 1 f e1")).unwrap());
        assert!(matches!(is_gorge(&a, &w(&a, &al, "1 e 1")), Err(Error::NotACanyon(_))));
    }

    #[test]
    fn idempotent_examples() {
        let (a, al) = setup();
        let u = b(&a, &al, "e f1");
        assert_eq!(u.letters(), &w(&a, &al, "1 e f1 e 1")[..]);
        assert!(is_idempotent(&a, &u));
        let v = b(&a, &al, "e f");
        assert_eq!(v.letters(), &w(&a, &al, "1 e f1 f 1")[..]);
        assert!(!is_idempotent(&a, &v));
        assert!(is_idempotent(&a, &b(&a, &al, "e")));
    }

    #[test]
    fn inverse_examples() {
        let (a, al) = setup();
        let u = Mountain::new(&a, w(&a, &al, "1 e f1 f 1")).unwrap();
        assert_eq!(canonical_inverse(&u).letters(), &w(&a, &al, "1 f f1 e 1")[..]);
        assert!(is_inverse(&a, &u, &canonical_inverse(&u)));
        assert!(!is_inverse(&a, &b(&a, &al, "e"), &b(&a, &al, "f")));
        let inv = inverses_in_class(&a, &u);
        assert!(inv.contains(&canonical_inverse(&u)));
    }

    #[test]
    fn order_examples() {
        let (a, al) = setup();
        let (e, e1) = (b(&a, &al, "e"), b(&a, &al, "e1"));
        assert!(leq_r(&e1, &e));
        assert!(!leq_j(&a, &e, &e1));
        assert!(leq_j(&a, &e1, &e));
        assert!(leq_r(&e1, &e1));
        assert!(leq_natural(&a, &b(&a, &al, "e f1"), &e));
        assert!(leq_natural(&a, &e1, &e1));
        assert!(!leq_natural(&a, &e, &b(&a, &al, "f")));
    }

    #[test]
    fn sandwich_examples() {
        let (a, al) = setup();
        let g = |s: &str| al.get(s).unwrap();
        let e1 = Mountain::of_letter(&a, g("e1"));
        assert!(sandwich_membership(&a, &e1, &b(&a, &al, "f"), &b(&a, &al, "e")).unwrap());
        assert!(sandwich_singleton_check(&a, g("h")).unwrap());
        let h = g("h");
        let (l, c, r) = (a.left(h), a.center(h).unwrap(), a.right(h));
        let e = beta(&a, &[r, c]);
        let f = beta(&a, &[c, l]);
        assert!(!sandwich_membership(&a, &b(&a, &al, "f e1"), &e, &f).unwrap());
        assert!(matches!(
            sandwich_membership(&a, &e1, &b(&a, &al, "e f"), &b(&a, &al, "e")),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn class_sizes() {
        let (a, _) = setup();
        for i in 1..=3 {
            for &g in a.enum_level(i).unwrap().iter() {
                let d = d_class(&a, g);
                assert_eq!(d.len(), 1 << (2 * i - 2));
                assert_eq!(r_class(&a, &d[0]).len(), 1 << (i - 1));
                assert_eq!(l_class(&a, &d[0]).len(), 1 << (i - 1));
            }
        }
    }
}

//! Copies of `FI¹(X₁)` inside `FI(X)`: the towers `A_j`, `B_j` above a base
//! `(g, A)`, the bijection `φ₁` and the verified embedding.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::generators::{count_formulas, Alphabet, Arena, Gen, Kind};
use crate::landscape::{splice, Mountain};
use crate::rewrite::beta;
use crate::structure::{d_class, is_idempotent, mountains_up_to, multiply, sandwich_membership};

/// A base letter `g` of height `i ≥ 1` with `k` distinct members of
/// `G(g)`, and the arena of the fresh alphabet `X₁` of size `k`.
#[derive(Debug)]
pub struct EmbeddingSite<'a> {
    pub arena: &'a Arena,
    pub g: Gen,
    pub a: Vec<Gen>,
    pub x1: Arena,
    memo: Mutex<HashMap<Gen, Gen>>,
}

impl<'a> EmbeddingSite<'a> {
    pub fn new(arena: &'a Arena, g: Gen, a: Vec<Gen>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidSite(msg));
        if arena.height(g) == 0 {
            return invalid("the base letter must not be 1".into());
        }
        if a.is_empty() {
            return invalid("A must be nonempty".into());
        }
        let up: BTreeSet<Gen> = arena.neighbors_up(g)?.iter().copied().collect();
        let mut seen = BTreeSet::new();
        for &h in &a {
            if !up.contains(&h) {
                return invalid(format!("{} is not in G({})", arena.format_gen(h, None), arena.format_gen(g, None)));
            }
            if !seen.insert(h) {
                return invalid(format!("{} repeated", arena.format_gen(h, None)));
            }
        }
        let cap = arena.cap().saturating_sub(arena.height(g)).max(1);
        let x1 = Arena::with_caps(Alphabet::fresh(a.len()), cap, arena.product_cap());
        Ok(EmbeddingSite { arena, g, a, x1, memo: Mutex::new(HashMap::new()) })
    }

    /// Height of `g`.
    pub fn base_height(&self) -> usize {
        self.arena.height(self.g)
    }

    /// `φ₁`: `1 ↦ g`, `e_j ↦ A[j]`, triples component-wise.
    pub fn phi1(&self, h: Gen) -> Result<Gen> {
        let requested = self.x1.height(h) + self.base_height();
        if requested > self.arena.product_cap() {
            return Err(Error::HeightCapExceeded { requested, cap: self.arena.product_cap() });
        }
        if let Some(&x) = self.memo.lock().get(&h) {
            return Ok(x);
        }
        let out = match self.x1.kind(h) {
            Kind::One => self.g,
            Kind::Base(j) => self.a[j],
            Kind::Triple(l, c, r) => self.arena.make_triple(self.phi1(l)?, self.phi1(c)?, self.phi1(r)?)?,
        };
        self.memo.lock().insert(h, out);
        Ok(out)
    }

    /// `A_j`.
    pub fn a_level(&self, j: usize) -> Result<Vec<Gen>> {
        let requested = self.base_height() + j;
        if requested > self.arena.cap() {
            return Err(Error::HeightCapExceeded { requested, cap: self.arena.cap() });
        }
        match j {
            0 => return Ok(vec![self.g]),
            1 => return Ok(self.a.clone()),
            _ => {}
        }
        let below = self.a_level(j - 1)?;
        let mut out = BTreeSet::new();
        for &l in &below {
            for &r in &below {
                if l == r {
                    continue;
                }
                let centers: Vec<Gen> = if j == 2 {
                    vec![self.g]
                } else {
                    let (ll, lr) = self.arena.sides(l).expect("height ≥ 1");
                    [ll, lr].into_iter().filter(|&c| self.arena.is_side_of(c, r)).collect()
                };
                for c in centers {
                    if let Ok(h) = self.arena.make_triple(l, c, r) {
                        out.insert(h);
                    }
                }
            }
        }
        let mut v: Vec<Gen> = out.into_iter().collect();
        v.sort_by(|&x, &y| self.arena.cmp_canonical(x, y));
        Ok(v)
    }

    /// `[B_j]`: `β(h)` for `h ∈ A_j` with `j` even, `β(ghg)` for `j` odd.
    pub fn b_level(&self, j: usize) -> Result<Vec<Mountain>> {
        Ok(self
            .a_level(j)?
            .into_iter()
            .map(|h| if j.is_multiple_of(2) { beta(self.arena, &[h]) } else { beta(self.arena, &[self.g, h, self.g]) })
            .collect())
    }

    /// The word `g (h₁φ₁) ⋯ (h_mφ₁) g` of a mountain over `X₁`.
    pub fn alpha_word(&self, u: &Mountain) -> Result<Vec<Gen>> {
        let inner = &u.letters()[1..u.len() - 1];
        let mut w = vec![self.g];
        for &h in inner {
            w.push(self.phi1(h)?);
        }
        w.push(self.g);
        Ok(w)
    }

    /// The image of a mountain of `FI¹(X₁)` in `FI(X)`.
    pub fn embed(&self, u: &Mountain) -> Result<Mountain> {
        let w = if u.is_trivial() { vec![self.g] } else { self.alpha_word(u)? };
        Ok(beta(self.arena, &w))
    }

    /// `λ_l(g) * α(u) * λ_r(g)`; equals `embed(u)` on every mountain.
    pub fn embed_by_splice(&self, u: &Mountain) -> Result<Mountain> {
        let g = Mountain::of_letter(self.arena, self.g);
        let w = if u.is_trivial() { vec![self.g] } else { self.alpha_word(u)? };
        let left = splice(g.lambda_l(), &w)?;
        Mountain::new(self.arena, splice(&left, g.lambda_r())?)
    }

    /// `S([(gh^rg)h^c],[h^c(gh^lg)]) = {[h]}` and
    /// `S([h^r(gh^cg)],[(gh^cg)h^l]) = {[ghg]}`, by search of the D-class.
    pub fn sandwich_transport(&self, h: Gen) -> Result<bool> {
        let ar = self.arena;
        let (g, l, r) = (self.g, ar.left(h), ar.right(h));
        let c = ar.center(h).ok_or(Error::HeightTooSmall { height: ar.height(h), required: 2 })?;
        let cases = [
            (beta(ar, &[g, r, g, c]), beta(ar, &[c, g, l, g]), beta(ar, &[h])),
            (beta(ar, &[r, g, c, g]), beta(ar, &[g, c, g, l]), beta(ar, &[g, h, g])),
        ];
        for (e, f, want) in cases {
            let mut members = Vec::new();
            for u in d_class(ar, want.peak()) {
                if sandwich_membership(ar, &u, &e, &f)? {
                    members.push(u);
                }
            }
            if members != [want] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of an exhaustive embedding check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub mountains: usize,
    pub phi1_bijective_levels: Vec<(usize, bool)>,
    pub non_injective: usize,
    pub splice_mismatches: usize,
    pub product_failures: usize,
    pub idempotent_failures: usize,
    pub identity_failures: usize,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.phi1_bijective_levels.iter().all(|&(_, b)| b)
            && self.non_injective == 0
            && self.splice_mismatches == 0
            && self.product_failures == 0
            && self.idempotent_failures == 0
            && self.identity_failures == 0
    }
}

/// Checks the embedding over all mountains of `FI¹(X₁)` of height at most
/// `bound`.
pub fn verify_embedding(site: &EmbeddingSite, bound: usize) -> Result<EmbeddingReport> {
    let mut report = EmbeddingReport::default();
    for j in 1..=bound {
        let image: BTreeSet<Gen> =
            site.x1.enum_level(j)?.iter().map(|&h| site.phi1(h)).collect::<Result<_>>()?;
        let a: BTreeSet<Gen> = site.a_level(j)?.into_iter().collect();
        report.phi1_bijective_levels.push((j, image.len() == site.x1.enum_level(j)?.len() && image == a));
    }
    let domain = mountains_up_to(&site.x1, bound)?;
    report.mountains = domain.len();
    let images: Vec<Mountain> = domain.iter().map(|u| site.embed(u)).collect::<Result<_>>()?;
    let distinct: BTreeSet<&[Gen]> = images.iter().map(Mountain::letters).collect();
    report.non_injective = images.len() - distinct.len();
    let id = Mountain::of_letter(site.arena, site.g);
    for (u, img) in domain.iter().zip(&images) {
        if site.embed_by_splice(u)? != *img {
            report.splice_mismatches += 1;
        }
        if is_idempotent(&site.x1, u) != is_idempotent(site.arena, img) {
            report.idempotent_failures += 1;
        }
        if multiply(site.arena, &id, img)? != *img || multiply(site.arena, img, &id)? != *img {
            report.identity_failures += 1;
        }
    }
    for (u, iu) in domain.iter().zip(&images) {
        for (v, iv) in domain.iter().zip(&images) {
            let uv = multiply(&site.x1, u, v)?;
            if site.embed(&uv)? != multiply(site.arena, iu, iv)? {
                report.product_failures += 1;
            }
        }
    }
    Ok(report)
}

/// Least level `i` whose letters have at least `m` upper neighbours, with
/// that count. Level 1 already suffices when `m ≤ 2n - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteBound {
    pub level: usize,
    pub size: BigUint,
}

pub fn embedding_site(m: usize, n: usize) -> SiteBound {
    let target = BigUint::from(m);
    let mut i = 1;
    loop {
        let (_, size) = count_formulas(i, n);
        if size >= target {
            return SiteBound { level: i, size };
        }
        i += 1;
    }
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

    fn site<'a>(a: &'a Arena, al: &Aliases) -> EmbeddingSite<'a> {
        EmbeddingSite::new(a, a.base(0), vec![al.get("e1").unwrap(), al.get("f1").unwrap()]).unwrap()
    }

    #[test]
    fn phi1_examples() {
        let (a, al) = setup();
        let s = site(&a, &al);
        assert_eq!(s.phi1(Gen::ONE).unwrap(), a.base(0));
        let x = &s.x1;
        let ab = x.make_triple(x.base(0), Gen::ONE, x.base(1)).unwrap();
        let ba = x.make_triple(x.base(1), Gen::ONE, x.base(0)).unwrap();
        assert_eq!(s.phi1(ab).unwrap(), al.get("h1").unwrap());
        assert_eq!(s.phi1(ba).unwrap(), al.get("h3").unwrap());
    }

    #[test]
    fn embed_examples() {
        let (a, al) = setup();
        let s = site(&a, &al);
        let w = |t: &str| a.parse_word(t, Some(&al)).unwrap();
        assert_eq!(s.embed(&Mountain::trivial()).unwrap().letters(), &w("1 e 1")[..]);
        let u = Mountain::of_letter(&s.x1, s.x1.base(0));
        assert_eq!(s.embed(&u).unwrap().letters(), &w("1 e e1 e 1")[..]);
        let x = &s.x1;
        let ab = x.make_triple(x.base(0), Gen::ONE, x.base(1)).unwrap();
        let m = Mountain::new(x, vec![Gen::ONE, x.base(0), ab, x.base(1), Gen::ONE]).unwrap();
        let img = s.embed(&m).unwrap();
        assert_eq!(img.peak(), al.get("h1").unwrap());
        assert_eq!(img, s.embed_by_splice(&m).unwrap());
    }

    #[test]
    fn b_levels() {
        let (a, al) = setup();
        let s = site(&a, &al);
        assert_eq!(s.b_level(0).unwrap(), vec![beta(&a, &[a.base(0)])]);
        let b1 = s.b_level(1).unwrap();
        assert_eq!(b1.len(), 2);
        assert!(b1.iter().all(|u| is_idempotent(&a, u)));
        let a2: BTreeSet<Gen> = s.a_level(2).unwrap().into_iter().collect();
        assert_eq!(a2, BTreeSet::from([al.get("h1").unwrap(), al.get("h3").unwrap()]));
        assert!(s.b_level(2).unwrap().iter().all(|u| is_idempotent(&a, u)));
    }

    #[test]
    fn site_bounds() {
        assert_eq!(embedding_site(2, 2).level, 1);
        assert_eq!(embedding_site(4, 2).level, 2);
        let b = embedding_site(100, 2);
        assert_eq!((b.level, b.size), (5, BigUint::from(172u32)));
    }

    #[test]
    fn invalid_sites() {
        let (a, al) = setup();
        let h = al.get("h").unwrap();
        assert!(matches!(EmbeddingSite::new(&a, a.base(0), vec![h]), Err(Error::InvalidSite(_))));
        assert!(matches!(EmbeddingSite::new(&a, a.base(0), vec![]), Err(Error::InvalidSite(_))));
    }

    #[test]
    fn transport_and_small_verification() {
        let (a, al) = setup();
        let s = site(&a, &al);
        for h in s.a_level(2).unwrap() {
            assert!(s.sandwich_transport(h).unwrap());
        }
        let r = verify_embedding(&s, 2).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}

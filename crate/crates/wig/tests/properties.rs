//! Algebraic laws checked on seeded random inputs and small exhaustive sets.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wig::eggbox::quadrant;
use wig::embed::EmbeddingSite;
use wig::finite::examples::load_r;
use wig::finite::{
    congruence_closure, evaluate_mountain, is_regular_subsemigroup, is_weakly_generated, skeleton_extend,
    subsemigroup_closure, FiniteSemigroup, Policy,
};
use wig::landscape::{
    alpha, downhill_from_code, downhills, is_landscape, lambda_left, lambda_right, reversed, splice,
};
use wig::rewrite::{beta, beta1, beta2, beta2_traced, river_vector, rule_instances, Strategy};
use wig::sample::{random_mountain, random_word, rng};
use wig::structure::{
    canonical_inverse, is_idempotent, is_inverse, leq_l, leq_natural, leq_r, mountains_up_to, multiply, r_witness,
};
use wig::{Aliases, Alphabet, Arena, Gen, LrCode, Mountain, Side};

fn arena() -> Arena {
    Arena::default()
}

fn letters(a: &Arena, lo: usize, hi: usize) -> Vec<Gen> {
    (lo..=hi).flat_map(|i| a.enum_level(i).unwrap().to_vec()).collect()
}

/// A random walk that moves one level up or down at each step.
fn random_landscape(a: &Arena, r: &mut ChaCha8Rng, max_len: usize, max_height: usize) -> Vec<Gen> {
    let start = *letters(a, 1, max_height).choose(r).unwrap();
    let mut w = vec![start];
    let len = r.gen_range(1..=max_len);
    while w.len() < len {
        let cur = *w.last().unwrap();
        let h = a.height(cur);
        let up = h < max_height && (h == 0 || r.gen_bool(0.5));
        let next = if up {
            if cur.is_one() {
                a.base(r.gen_range(0..a.alphabet().len()))
            } else {
                *a.neighbors_up(cur).unwrap().choose(r).unwrap()
            }
        } else if h == 0 {
            break;
        } else {
            a.side(cur, if r.gen() { Side::L } else { Side::R })
        };
        w.push(next);
    }
    w
}

#[test]
fn generated_letters_satisfy_triple_invariants() {
    let a = arena();
    for g in letters(&a, 2, 4) {
        let (l, r) = a.sides(g).unwrap();
        let c = a.center(g).unwrap();
        assert_ne!(l, r);
        assert_eq!(a.height(l), a.height(g) - 1);
        assert_eq!(a.height(r), a.height(g) - 1);
        assert_eq!(a.height(c) + 2, a.height(g));
        assert!(a.is_side_of(c, l) && a.is_side_of(c, r));
        assert_eq!(a.make_triple(l, c, r).unwrap(), g);
    }
}

#[test]
fn each_letter_has_two_lower_neighbours() {
    let a = arena();
    for i in 2..=3 {
        let mut hits: HashMap<Gen, usize> = HashMap::new();
        for &g in a.enum_level(i).unwrap().iter() {
            for &x in a.neighbors_up(g).unwrap().iter() {
                *hits.entry(x).or_default() += 1;
            }
        }
        assert_eq!(hits.len(), a.enum_level(i + 1).unwrap().len());
        assert!(hits.values().all(|&k| k == 2));
    }
}

#[test]
fn ground_order_matches_inclusion_and_has_uphills() {
    let a = arena();
    let all = letters(&a, 0, 4);
    for &g in &all {
        let gg: BTreeSet<Gen> = a.ground(g).iter().copied().collect();
        for &h in &all {
            let gh: BTreeSet<Gen> = a.ground(h).iter().copied().collect();
            assert_eq!(a.precedes(h, g), gh.is_subset(&gg));
        }
        for &h in gg.iter().filter(|&&h| h != g) {
            // a downhill from g through side entries reaches h
            let reach = downhills(&a, g).iter().any(|d| d.contains(&h))
                || (h.is_one() && a.height(g) >= 1);
            assert!(reach, "{} below {}", a.format_gen(h, None), a.format_gen(g, None));
        }
    }
}

#[test]
fn alpha_codes_round_trip() {
    let a = arena();
    for g in letters(&a, 1, 4) {
        let codes = LrCode::all(a.height(g) - 1);
        assert_eq!(downhills(&a, g).len(), codes.len());
        for c in codes {
            assert_eq!(alpha(&a, &downhill_from_code(&a, g, &c).unwrap()).unwrap(), c);
        }
    }
}

#[test]
fn gorge_laws() {
    let a = arena();
    for g in letters(&a, 1, 4) {
        for d in downhills(&a, g) {
            let from_top = splice(&d, &reversed(&d)).unwrap();
            assert_eq!(beta2(&a, &from_top).unwrap(), vec![g]);
        }
        let w = splice(&lambda_right(&a, g), &lambda_left(&a, g)).unwrap();
        assert_eq!(beta2(&a, &w).unwrap(), vec![g]);
    }
}

#[test]
fn relation_instances_hold_at_height_four() {
    let a = arena();
    for g in letters(&a, 1, 4) {
        for (_, l, r) in rule_instances(&a, g) {
            assert_eq!(beta(&a, &l), beta(&a, &r));
        }
    }
}

#[test]
fn quadrants_partition_each_class() {
    let a = arena();
    for g in letters(&a, 2, 4) {
        let i = a.height(g) as u32;
        let mut counts: HashMap<(Side, Side), usize> = HashMap::new();
        for u in wig::structure::d_class(&a, g) {
            let k = quadrant(&a, &u, 1).unwrap();
            *counts.entry((k.left, k.right)).or_default() += 1;
        }
        assert_eq!(counts.len(), 4);
        assert!(counts.values().all(|&c| c == 1 << (2 * i - 4)));
    }
}

#[test]
fn skeleton_images_are_idempotent_and_regular() {
    let a = arena();
    let r = load_r().unwrap();
    let base: Vec<usize> = ["e", "f"].iter().map(|n| r.parse_element(n).unwrap()).collect();
    let run = skeleton_extend(&a, &r, &base, Policy::Enumerate { limit: 64 }, 5).unwrap();
    for asg in &run.assignments {
        let img: Vec<usize> = asg.image_set().into_iter().collect();
        assert!(img.iter().all(|&x| r.is_idempotent(x)));
        assert!(is_regular_subsemigroup(&r, &subsemigroup_closure(&r, &img)));
        for g in letters(&a, 1, 3) {
            for (_, lhs, rhs) in rule_instances(&a, g) {
                let lv = evaluate_mountain(&a, &r, &lhs, asg).unwrap();
                let rv = evaluate_mountain(&a, &r, &rhs, asg).unwrap();
                assert_eq!(lv, rv);
            }
        }
    }
}

#[test]
fn single_skeleton_agrees_with_weak_generation() {
    let a = Arena::new(Alphabet::parse("e,f").unwrap());
    let band = FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]], None).unwrap();
    let run = skeleton_extend(&a, &band, &[0, 1], Policy::Enumerate { limit: 8 }, 5).unwrap();
    assert_eq!(run.skeletons.len(), 1);
    let generated = subsemigroup_closure(&band, &run.skeletons[0].iter().copied().collect::<Vec<_>>());
    assert_eq!(generated.len(), band.order());
    assert!(is_weakly_generated(&band, &[0, 1]).unwrap().weakly_generated);
}

#[test]
fn tower_levels_are_idempotent_and_transport_sandwiches() {
    let a = arena();
    let al = Aliases::two_letter_defaults(&a);
    let g = |n: &str| a.parse_gen(n, Some(&al)).unwrap();
    let site = EmbeddingSite::new(&a, g("e"), vec![g("e1"), g("f1")]).unwrap();
    let id = Mountain::of_letter(&a, g("e"));
    for j in 0..=4 {
        for b in site.b_level(j).unwrap() {
            assert!(is_idempotent(&a, &b));
            assert_eq!(multiply(&a, &id, &b).unwrap(), b);
            assert_eq!(multiply(&a, &b, &id).unwrap(), b);
        }
    }
    for j in 2..=4 {
        for h in site.a_level(j).unwrap() {
            assert!(site.sandwich_transport(h).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compact_codes_round_trip(seed in any::<u64>()) {
        let a = arena();
        let u = random_mountain(&a, &mut rng(seed), 1, 5).unwrap();
        prop_assert_eq!(u.len() % 2, 1);
        prop_assert_eq!(Mountain::from_compact(&a, &u.compact(&a)).unwrap(), u);
    }

    #[test]
    fn splice_is_associative_and_reverses(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let u = random_mountain(&a, &mut r, 1, 4).unwrap();
        let v = random_mountain(&a, &mut r, 1, 4).unwrap();
        let w = random_mountain(&a, &mut r, 1, 4).unwrap();
        let (u, v, w) = (u.letters(), v.letters(), w.letters());
        let left = splice(&splice(u, v).unwrap(), w).unwrap();
        let right = splice(u, &splice(v, w).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(reversed(&splice(u, v).unwrap()), splice(&reversed(v), &reversed(u)).unwrap());
    }

    #[test]
    fn uplifts_decrease_the_river_vector(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let w = random_landscape(&a, &mut r, 9, 3);
        prop_assert!(is_landscape(&a, &w));
        let (_, trace) = beta2_traced(&a, &w, Strategy::Random(seed)).unwrap();
        let mut prev = river_vector(&a, &w);
        for step in trace {
            let next = river_vector(&a, &step.result);
            prop_assert!(next < prev);
            prev = next;
        }
    }

    #[test]
    fn hills_are_absorbed(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let u = random_landscape(&a, &mut r, 8, 3);
        let padded = splice(&splice(&lambda_left(&a, u[0]), &u).unwrap(), &lambda_right(&a, *u.last().unwrap())).unwrap();
        prop_assert_eq!(beta2(&a, &beta1(&a, &u)).unwrap(), beta2(&a, &padded).unwrap());
    }

    #[test]
    fn beta_is_a_congruence(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let u = random_word(&a, &mut r, 5, 3).unwrap();
        let v = random_word(&a, &mut r, 5, 3).unwrap();
        let uv: Vec<Gen> = u.iter().chain(&v).copied().collect();
        let bu = beta(&a, &u);
        let bv = beta(&a, &v);
        let joined: Vec<Gen> = bu.letters().iter().chain(bv.letters()).copied().collect();
        prop_assert_eq!(beta(&a, &uv), beta(&a, &joined));
        prop_assert_eq!(beta(&a, &uv), multiply(&a, &bu, &bv).unwrap());
    }

    #[test]
    fn product_is_associative_and_extends_flanks(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let ms: Vec<Mountain> = (0..3).map(|_| random_mountain(&a, &mut r, 1, 3).unwrap()).collect();
        let uv = multiply(&a, &ms[0], &ms[1]).unwrap();
        let vw = multiply(&a, &ms[1], &ms[2]).unwrap();
        prop_assert_eq!(multiply(&a, &uv, &ms[2]).unwrap(), multiply(&a, &ms[0], &vw).unwrap());
        prop_assert!(uv.lambda_l().starts_with(ms[0].lambda_l()));
        prop_assert!(uv.lambda_r().ends_with(ms[1].lambda_r()));
    }

    #[test]
    fn r_order_has_witnesses(seed in any::<u64>()) {
        let a = arena();
        let mut r = rng(seed);
        let u = random_mountain(&a, &mut r, 1, 3).unwrap();
        let w = random_mountain(&a, &mut r, 1, 3).unwrap();
        let uw = multiply(&a, &u, &w).unwrap();
        prop_assert!(leq_r(&uw, &u));
        prop_assert!(leq_l(&multiply(&a, &w, &u).unwrap(), &u));
        if leq_r(&w, &u) {
            let x = r_witness(&a, &w, &u).expect("witness");
            prop_assert_eq!(multiply(&a, &u, &x).unwrap(), w);
        }
    }

    #[test]
    fn reverse_is_an_inverse(seed in any::<u64>()) {
        let a = arena();
        let u = random_mountain(&a, &mut rng(seed), 1, 4).unwrap();
        let v = canonical_inverse(&u);
        prop_assert!(is_inverse(&a, &u, &v));
        prop_assert_eq!(multiply(&a, &multiply(&a, &u, &v).unwrap(), &u).unwrap(), u);
    }

    #[test]
    fn congruence_quotient_is_a_homomorphism(seed in any::<u64>()) {
        let s = load_r().unwrap();
        let mut r = rng(seed);
        let pairs = vec![(r.gen_range(0..s.order()), r.gen_range(0..s.order()))];
        let c = congruence_closure(&s, &pairs).unwrap();
        for x in 0..s.order() {
            for y in 0..s.order() {
                prop_assert_eq!(c.class_of[s.mul(x, y)], c.quotient.mul(c.class_of[x], c.class_of[y]));
            }
        }
        prop_assert_eq!(c.class_of[pairs[0].0], c.class_of[pairs[0].1]);
    }
}

#[test]
fn natural_order_is_a_partial_order_on_a_sample() {
    let a = arena();
    let ms: Vec<Mountain> = mountains_up_to(&a, 3).unwrap().into_iter().filter(|u| !u.is_trivial()).collect();
    for u in &ms {
        assert!(leq_natural(&a, u, u));
        for v in &ms {
            if u != v && leq_natural(&a, v, u) {
                assert!(!leq_natural(&a, u, v));
                assert!(!(leq_r(v, u) && leq_r(u, v)));
                for w in &ms {
                    if leq_natural(&a, w, v) {
                        assert!(leq_natural(&a, w, u));
                    }
                }
            }
        }
    }
}

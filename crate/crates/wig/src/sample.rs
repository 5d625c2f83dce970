//! Seeded random words and mountains.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::generators::{Arena, Gen, Side};
use crate::landscape::{Compact, LrCode, Mountain};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_letter<R: Rng>(arena: &Arena, rng: &mut R, min_height: usize, max_height: usize) -> Result<Gen> {
    let h = rng.gen_range(min_height..=max_height);
    let level = arena.enum_level(h)?;
    Ok(*level.choose(rng).expect("levels are nonempty"))
}

/// A word of length `1..=max_len` over letters of height `1..=max_height`.
pub fn random_word<R: Rng>(arena: &Arena, rng: &mut R, max_len: usize, max_height: usize) -> Result<Vec<Gen>> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len).map(|_| random_letter(arena, rng, 1, max_height.max(1))).collect()
}

fn random_code<R: Rng>(rng: &mut R, len: usize) -> LrCode {
    LrCode((0..len).map(|_| if rng.gen() { Side::L } else { Side::R }).collect())
}

/// A uniformly random mountain with a peak of height `min_height..=max_height`.
pub fn random_mountain<R: Rng>(arena: &Arena, rng: &mut R, min_height: usize, max_height: usize) -> Result<Mountain> {
    let peak = random_letter(arena, rng, min_height, max_height)?;
    let len = arena.height(peak).saturating_sub(1);
    let c = Compact { peak, left: random_code(rng, len), right: random_code(rng, len) };
    Mountain::from_compact(arena, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_output_is_reproducible() {
        let arena = Arena::default();
        let a: Vec<_> = (0..5).map(|_| ()).scan(rng(7), |r, _| random_word(&arena, r, 8, 3).ok()).collect();
        let b: Vec<_> = (0..5).map(|_| ()).scan(rng(7), |r, _| random_word(&arena, r, 8, 3).ok()).collect();
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..50 {
            let m = random_mountain(&arena, &mut r, 1, 4).unwrap();
            assert_eq!(Mountain::new(&arena, m.letters().to_vec()).unwrap(), m);
        }
    }
}

//! Seeded random generators for braid words, crossingless matchings,
//! and planar closed diagrams. Everything here is deterministic given
//! the seed, so randomized test suites are reproducible.
//!
//! Closed diagrams are produced as trace closures of random braid
//! words, which are planar by construction — no rejection sampling
//! against a planarity test is needed.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::diagram::{
    trace_closure, FramedBraidWord, Generator, Letter, TangleDiagram,
};
use crate::tlskein::{enumerate_basis, Matching};

/// A reproducible RNG for test drivers.
pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A uniformly random letter on `strands` strands: a positive or
/// negative crossing generator, or (with probability `twist_weight` in
/// percent) a framing twist.
fn random_letter<R: Rng>(rng: &mut R, strands: usize, twist_weight: u32) -> Letter {
    let power = if rng.gen_bool(0.5) { 1i8 } else { -1 };
    let gen = if strands > 1 && rng.gen_range(0..100) >= twist_weight {
        Generator::Sigma(rng.gen_range(1..strands))
    } else {
        Generator::Twist(rng.gen_range(1..=strands))
    };
    Letter { gen, power }
}

/// A random framed braid word of exactly `len` letters, drawn from the
/// crossing generators with an occasional framing twist.
pub fn random_braid_word<R: Rng>(rng: &mut R, strands: usize, len: usize) -> FramedBraidWord {
    let letters = (0..len).map(|_| random_letter(rng, strands, 15)).collect();
    FramedBraidWord::new(strands, letters).expect("letters are generated in range")
}

/// A random closed planar diagram with at most `max_crossings`
/// crossings, built as the trace closure of a random pure-crossing
/// braid word.
pub fn random_closed_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> TangleDiagram {
    let strands = rng.gen_range(2..=4usize);
    let crossings = rng.gen_range(1..=max_crossings);
    let letters = (0..crossings)
        .map(|_| Letter {
            gen: Generator::Sigma(rng.gen_range(1..strands)),
            power: if rng.gen_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    let word = FramedBraidWord::new(strands, letters).expect("letters are generated in range");
    trace_closure(&word)
}

/// A uniformly random crossingless matching on `2n` points.
pub fn random_matching<R: Rng>(rng: &mut R, n: usize) -> Matching {
    let basis = enumerate_basis(n);
    basis[rng.gen_range(0..basis.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_well_formed_and_reproducible() {
        let mut a = seeded_rng(11);
        let mut b = seeded_rng(11);
        for _ in 0..50 {
            let w1 = random_braid_word(&mut a, 4, 8);
            let w2 = random_braid_word(&mut b, 4, 8);
            assert_eq!(w1.strands(), 4);
            assert_eq!(w1.len(), 8);
            assert_eq!(format!("{w1}"), format!("{w2}"));
        }
    }

    #[test]
    fn closed_diagrams_are_planar_and_bounded() {
        let mut rng = seeded_rng(23);
        for _ in 0..100 {
            let d = random_closed_diagram(&mut rng, 10);
            assert!(d.crossing_count() <= 10);
            assert!(d.is_closed());
            assert!(d.validate_planarity());
        }
    }

    #[test]
    fn random_matchings_lie_in_the_basis() {
        let mut rng = seeded_rng(5);
        for n in 1..=4 {
            let basis = enumerate_basis(n);
            for _ in 0..20 {
                let m = random_matching(&mut rng, n);
                assert!(basis.contains(&m));
            }
        }
    }
}

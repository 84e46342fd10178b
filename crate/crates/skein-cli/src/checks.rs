//! Exhaustive relation verification backing the `verify` subcommand.
//!
//! The braiding check walks all words up to the cutoff at the level of
//! action-matrix pairs: a word `w` acts on one side of the gluing and
//! its boundary-reflected inverse on the other, and the relation holds
//! for every basis pair exactly when `M^T G N = G` against the Gram
//! matrix `G` of the pairing. Words inducing the same matrix pair are
//! deduplicated, with the first word kept as the potential witness.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;

use skein::braid::{action_matrix, invert, mirror_word};
use skein::diagram::{FramedBraidWord, Generator, Letter};
use skein::glue::{check_bigon_relation, check_conjugation_relation, pair};
use skein::tlskein::{enumerate_basis, SkeinVector};
use skein::{Laurent, Result};

type V = SkeinVector<BigInt>;
type Mat = Vec<Vec<Laurent>>;

/// Result of one relation family at one level: how many distinct
/// instances were checked and, on failure, a witness description.
pub struct RelationOutcome {
    pub relation: &'static str,
    pub n: usize,
    pub checked: usize,
    pub witness: Option<String>,
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    let mut acc = Laurent::zero();
                    for k in 0..dim {
                        acc = &acc + &(&a[r][k] * &b[k][c]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &Mat) -> Mat {
    let dim = a.len();
    (0..dim).map(|r| (0..dim).map(|c| a[c][r].clone()).collect()).collect()
}

fn framed_generators(strands: usize) -> Vec<Letter> {
    let mut letters = Vec::new();
    for power in [1i8, -1] {
        for i in 1..strands {
            letters.push(Letter { gen: Generator::Sigma(i), power });
        }
        for i in 1..=strands {
            letters.push(Letter { gen: Generator::Twist(i), power });
        }
    }
    letters
}

fn letter_text(l: &Letter) -> String {
    let (name, i) = match l.gen {
        Generator::Sigma(i) => ("s", i),
        Generator::Twist(i) => ("t", i),
    };
    if l.power == 1 {
        format!("{name}{i}")
    } else {
        format!("{name}{i}^-1")
    }
}

fn word_text(letters: &[Letter]) -> String {
    if letters.is_empty() {
        "e".to_string()
    } else {
        letters.iter().map(letter_text).collect::<Vec<_>>().join(" ")
    }
}

/// `pair(w.a, w^-1.b) = pair(a, b)` for all basis pairs and all words
/// up to `cutoff` letters in the framed generators on `2n` strands.
pub fn verify_braiding(n: usize, cutoff: usize) -> Result<RelationOutcome> {
    let strands = 2 * n;
    let basis = enumerate_basis(n);
    let dim = basis.len();
    let gram: Mat = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| pair(&V::basis(a.clone()), &V::basis(b.clone())))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut gens: Vec<(Letter, Mat, Mat)> = Vec::new();
    for letter in framed_generators(strands) {
        let w = FramedBraidWord::new(strands, vec![letter])?;
        let m = action_matrix::<BigInt>(&w, &basis)?;
        let nm = action_matrix::<BigInt>(&mirror_word(&invert(&w)), &basis)?;
        // identical matrix pairs (framing twists at different strands)
        // would only revisit the same states
        if !gens.iter().any(|(_, gm, gn)| *gm == m && *gn == nm) {
            gens.push((letter, m, nm));
        }
    }
    let identity: Mat = (0..dim)
        .map(|r| {
            (0..dim).map(|c| if r == c { Laurent::one() } else { Laurent::zero() }).collect()
        })
        .collect();
    let mut seen: HashSet<(Mat, Mat)> = HashSet::new();
    let mut queue: VecDeque<(Mat, Mat, Vec<Letter>)> = VecDeque::new();
    seen.insert((identity.clone(), identity.clone()));
    queue.push_back((identity.clone(), identity, Vec::new()));
    let mut checked = 0usize;
    while let Some((m, nm, letters)) = queue.pop_front() {
        checked += 1;
        let lhs = mat_mul(&transpose(&m), &mat_mul(&gram, &nm));
        if lhs != gram {
            return Ok(RelationOutcome {
                relation: "braiding",
                n,
                checked,
                witness: Some(format!("word {} at n = {n}", word_text(&letters))),
            });
        }
        if letters.len() == cutoff {
            continue;
        }
        for (l, g, gn) in &gens {
            let m2 = mat_mul(g, &m);
            let n2 = mat_mul(gn, &nm);
            if seen.insert((m2.clone(), n2.clone())) {
                let mut w2 = letters.clone();
                w2.push(*l);
                queue.push_back((m2, n2, w2));
            }
        }
    }
    Ok(RelationOutcome { relation: "braiding", n, checked, witness: None })
}

/// `pair(cap_insert_i(a), b) = pair(a, contract(b))` for all basis pairs
/// `a` at level `n - 1`, `b` at level `n`, and all cap positions.
pub fn verify_bigon(n: usize) -> Result<RelationOutcome> {
    let mut checked = 0usize;
    for a in enumerate_basis(n - 1) {
        let av = V::basis(a.clone());
        for b in enumerate_basis(n) {
            let bv = V::basis(b.clone());
            for i in 1..=2 * n - 1 {
                checked += 1;
                if !check_bigon_relation(&av, &bv, i)? {
                    return Ok(RelationOutcome {
                        relation: "bigon",
                        n,
                        checked,
                        witness: Some(format!("a = {a}, b = {b}, position {i}")),
                    });
                }
            }
        }
    }
    Ok(RelationOutcome { relation: "bigon", n, checked, witness: None })
}

/// Annular trace is conjugation-invariant: `trace(w.a.w^-1) = trace(a)`
/// for all basis elements and words up to `cutoff` letters on `n`
/// strands.
pub fn verify_conjugation(n: usize, cutoff: usize) -> Result<RelationOutcome> {
    let letters = framed_generators(n);
    let basis = enumerate_basis(n);
    let mut checked = 0usize;
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(current) = stack.pop() {
        if !current.is_empty() {
            let word = FramedBraidWord::new(n, current.clone())?;
            for b in &basis {
                checked += 1;
                if !check_conjugation_relation(&V::basis(b.clone()), &word)? {
                    return Ok(RelationOutcome {
                        relation: "conjugation",
                        n,
                        checked,
                        witness: Some(format!("word {} on {b}", word_text(&current))),
                    });
                }
            }
        }
        if current.len() < cutoff {
            for l in &letters {
                let mut next = current.clone();
                next.push(*l);
                stack.push(next);
            }
        }
    }
    Ok(RelationOutcome { relation: "conjugation", n, checked, witness: None })
}

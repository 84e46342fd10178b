//! The framed braid group action on skein vectors.
//!
//! Each generator acts by a local skein operator on the matching basis:
//! `s_i` acts as `A * e_i + A^-1 * id` (and its inverse as
//! `A^-1 * e_i + A * id`), while the framing twist `t_i` is the scalar
//! `-A^3` (inverse `-A^-3`). Both the disk action on all `2n` boundary
//! points and the one-sided rectangle actions on `n` strands are
//! provided; the diagrammatic route (stack the braid tangle and reduce)
//! is kept as a cross-check in the tests.

use crate::constants::{loop_value, neg_kink, pos_kink};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::num::Coeff;
use crate::diagram::{FramedBraidWord, Generator, Letter};
use crate::tlskein::{Matching, SkeinVector};

/// Applies `A^eps * e_i + A^-eps * id` to one matching, where `e_i` is
/// the cup-cap at adjacent boundary points `(i, i + 1)` of `2n` points.
fn sigma_on_matching<C: Coeff>(m: &Matching, i: usize, power: i8) -> Result<SkeinVector<C>> {
    let two_n = 2 * m.n();
    if i == 0 || i + 1 > two_n {
        return Err(Error::GeneratorOutOfRange { index: i, strands: two_n });
    }
    let (c_cup, c_id) = if power > 0 {
        (LaurentPoly::var_pow(1), LaurentPoly::var_pow(-1))
    } else {
        (LaurentPoly::var_pow(-1), LaurentPoly::var_pow(1))
    };
    // e_i on a matching: close (i, i+1), then re-open them
    let mut out = if m.partner(i) == i + 1 {
        // e_i fixes the matching up to a delta factor
        SkeinVector::monomial(m.clone(), loop_value::<C>())
    } else {
        let (small, _) = m.contract(i)?;
        SkeinVector::basis(small.cap_insert(i)?)
    }
    .scale(&c_cup);
    out.add_term(m.clone(), c_id)?;
    Ok(out)
}

/// Applies one generator at boundary position `i` (of `2n` points when
/// acting on the disk, of `n` when acting on one side of a rectangle).
fn letter_on_vector<C: Coeff>(
    v: &SkeinVector<C>,
    letter: Letter,
    positions: usize,
) -> Result<SkeinVector<C>> {
    match letter.gen {
        Generator::Twist(i) => {
            if i == 0 || i > positions {
                return Err(Error::GeneratorOutOfRange { index: i, strands: positions });
            }
            let factor = if letter.power > 0 { pos_kink() } else { neg_kink() };
            Ok(v.scale(&factor))
        }
        Generator::Sigma(i) => {
            if i == 0 || i + 1 > positions {
                return Err(Error::GeneratorOutOfRange { index: i, strands: positions });
            }
            let mut out = SkeinVector::zero(v.n());
            for (m, c) in v.terms() {
                let piece = sigma_on_matching(m, i, letter.power)?;
                out = out.add(&piece.scale(c))?;
            }
            Ok(out)
        }
    }
}

/// The left action of a framed braid word. A word on `2n` strands acts
/// on all `2n` boundary points of the disk, letters left-to-right with
/// the first letter applied first; a word on `n` strands acts on the
/// bottom side of the rectangle view via [`act_left`].
pub fn act<C: Coeff>(word: &FramedBraidWord, v: &SkeinVector<C>) -> Result<SkeinVector<C>> {
    let positions = 2 * v.n();
    if word.strands() == v.n() && v.n() != positions {
        return act_left(word, v);
    }
    if word.strands() != positions {
        return Err(Error::StrandMismatch { word: word.strands(), expected: positions });
    }
    let mut out = v.clone();
    for &letter in word.letters() {
        out = letter_on_vector(&out, letter, positions)?;
    }
    Ok(out)
}

/// The group inverse of a word; `act(invert(w), act(w, v)) = v`.
pub fn invert(word: &FramedBraidWord) -> FramedBraidWord {
    word.inverse()
}

/// Rewrites a word into the coordinates of the far side of a gluing
/// sphere: the two disks meet with opposite boundary orientations, so
/// generator indices reflect (`s_i -> s_(strands-i)`,
/// `t_i -> t_(strands+1-i)`) and the letters apply in reverse order.
/// This is an automorphism of the braid group, and it is the adjoint
/// with respect to the gluing pairing: `pair(w . a, b) =
/// pair(a, mirror_word(w) . b)`.
pub fn mirror_word(word: &FramedBraidWord) -> FramedBraidWord {
    let strands = word.strands();
    let letters = word
        .letters()
        .iter()
        .rev()
        .map(|l| Letter {
            gen: match l.gen {
                Generator::Sigma(i) => Generator::Sigma(strands - i),
                Generator::Twist(i) => Generator::Twist(strands + 1 - i),
            },
            power: l.power,
        })
        .collect();
    FramedBraidWord::new(strands, letters).expect("reflection preserves index range")
}

/// Acts on the bottom boundary (positions `1..=n`) of a rectangle
/// vector by stacking the braid tangle underneath: the braid's top edge
/// meets the vector, so the word's last letter is applied first. The
/// word must be on `n` strands.
pub fn act_left<C: Coeff>(word: &FramedBraidWord, v: &SkeinVector<C>) -> Result<SkeinVector<C>> {
    let n = v.n();
    if word.strands() != n {
        return Err(Error::StrandMismatch { word: word.strands(), expected: n });
    }
    let mut out = v.clone();
    for &letter in word.letters().iter().rev() {
        out = letter_on_vector(&out, letter, n)?;
    }
    Ok(out)
}

/// Acts on the top boundary of a rectangle vector: top position `j`
/// carries the disk label `2n + 1 - j`, so generator `s_j` becomes the
/// cup-cap at disk points `(2n - j, 2n - j + 1)`.
pub fn act_right<C: Coeff>(word: &FramedBraidWord, v: &SkeinVector<C>) -> Result<SkeinVector<C>> {
    let n = v.n();
    if word.strands() != n {
        return Err(Error::StrandMismatch { word: word.strands(), expected: n });
    }
    let mut out = v.clone();
    for &letter in word.letters() {
        match letter.gen {
            Generator::Twist(j) => {
                if j == 0 || j > n {
                    return Err(Error::GeneratorOutOfRange { index: j, strands: n });
                }
                let factor = if letter.power > 0 { pos_kink() } else { neg_kink() };
                out = out.scale(&factor);
            }
            Generator::Sigma(j) => {
                if j == 0 || j + 1 > n {
                    return Err(Error::GeneratorOutOfRange { index: j, strands: n });
                }
                let mut next = SkeinVector::zero(n);
                for (m, c) in out.terms() {
                    let piece = sigma_on_matching(m, 2 * n - j, letter.power)?;
                    next = next.add(&piece.scale(c))?;
                }
                out = next;
            }
        }
    }
    Ok(out)
}

/// The matrix of the disk action of `word` on the matching basis of
/// `K_n`, columns indexed by `basis`; entry `[r][c]` is the coefficient
/// of `basis[r]` in `word . basis[c]`.
pub fn action_matrix<C: Coeff>(
    word: &FramedBraidWord,
    basis: &[Matching],
) -> Result<Vec<Vec<LaurentPoly<C>>>> {
    let dim = basis.len();
    let mut cols = Vec::with_capacity(dim);
    for b in basis {
        let image = act(word, &SkeinVector::basis(b.clone()))?;
        cols.push(image.coordinates(basis));
    }
    // transpose columns into rows
    let mut rows = vec![vec![LaurentPoly::zero(); dim]; dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, entry) in col.iter().enumerate() {
            rows[r][c] = entry.clone();
        }
    }
    Ok(rows)
}

//! Exact rank computation for sparse relation matrices with
//! Laurent-polynomial entries: fraction-free echelon reduction over the
//! fraction field of `Z[A, A^-1]`, and an independent rational
//! elimination after substituting a concrete value for `A`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::num::Coeff;

/// Incremental echelon form over the fraction field of the Laurent
/// ring. Rows are inserted one at a time; the rank is the number of
/// retained pivot rows. Elimination is fraction-free (cross-
/// multiplication), with rows renormalized by content and `A`-power so
/// coefficients stay small.
pub struct LaurentEchelon<C: Coeff> {
    width: usize,
    /// pivot rows, each with its leading (pivot) column
    rows: Vec<(usize, Vec<LaurentPoly<C>>)>,
}

impl<C: Coeff> LaurentEchelon<C> {
    pub fn new(width: usize) -> Self {
        LaurentEchelon { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the pivots; if independent, keeps it and
    /// returns true.
    pub fn insert(&mut self, mut row: Vec<LaurentPoly<C>>) -> Result<bool> {
        if row.len() != self.width {
            return Err(Error::Inconsistency(format!(
                "row width {} does not match matrix width {}",
                row.len(),
                self.width
            )));
        }
        for (pivot_col, pivot_row) in &self.rows {
            let lead = &row[*pivot_col];
            if lead.is_zero() {
                continue;
            }
            // cross-multiplied elimination: row := p*row - l*pivot_row
            let p = pivot_row[*pivot_col].clone();
            let l = lead.clone();
            for (r, pv) in row.iter_mut().zip(pivot_row.iter()) {
                *r = &(&p * &*r) - &(&l * pv);
            }
            normalize_row(&mut row);
        }
        match row.iter().position(|e| !e.is_zero()) {
            Some(col) => {
                normalize_row(&mut row);
                self.rows.push((col, row));
                // keep pivot rows ordered by pivot column so later
                // insertions reduce left to right
                self.rows.sort_by_key(|(c, _)| *c);
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// Divides out the integer content and the common power of `A`.
fn normalize_row<C: Coeff>(row: &mut [LaurentPoly<C>]) {
    let mut content: Option<C> = None;
    let mut min_exp: Option<i64> = None;
    for e in row.iter() {
        for (exp, c) in e.terms() {
            content = Some(match content {
                None => c.abs(),
                Some(g) => g.gcd(c),
            });
            min_exp = Some(min_exp.map_or(*exp, |m: i64| m.min(*exp)));
        }
    }
    let (Some(content), Some(min_exp)) = (content, min_exp) else {
        return;
    };
    if content.is_one() && min_exp == 0 {
        return;
    }
    for e in row.iter_mut() {
        let reduced = LaurentPoly::from_terms(
            e.terms().map(|(exp, c)| (exp - min_exp, c.div_floor(&content))),
        );
        *e = reduced;
    }
}

/// Incremental echelon form over the rationals, used as the
/// cross-check: the same relation rows evaluated at a fixed rational
/// value of `A` must produce the same rank.
pub struct RationalEchelon {
    width: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RationalEchelon {
    pub fn new(width: usize) -> Self {
        RationalEchelon { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<BigRational>) -> Result<bool> {
        if row.len() != self.width {
            return Err(Error::Inconsistency(format!(
                "row width {} does not match matrix width {}",
                row.len(),
                self.width
            )));
        }
        for (pivot_col, pivot_row) in &self.rows {
            let lead = row[*pivot_col].clone();
            if lead.is_zero() {
                continue;
            }
            let scale = &lead / &pivot_row[*pivot_col];
            for (r, pv) in row.iter_mut().zip(pivot_row.iter()) {
                *r -= &scale * pv;
            }
        }
        match row.iter().position(|e| !e.is_zero()) {
            Some(col) => {
                self.rows.push((col, row));
                self.rows.sort_by_key(|(c, _)| *c);
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// A convenient evaluation point `A = num/den` for the rational
/// cross-check.
pub fn rational_point(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Laurent;

    fn p(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    #[test]
    fn rank_of_identity() {
        let mut ech = LaurentEchelon::<BigInt>::new(3);
        for i in 0..3 {
            let mut row = vec![Laurent::zero(); 3];
            row[i] = p("A^2");
            assert!(ech.insert(row).unwrap());
        }
        assert_eq!(ech.rank(), 3);
    }

    #[test]
    fn dependent_rows_are_dropped() {
        let mut ech = LaurentEchelon::<BigInt>::new(2);
        assert!(ech.insert(vec![p("A"), p("A^3")]).unwrap());
        // a Laurent multiple of the first row
        assert!(!ech.insert(vec![p("-A^-1"), p("-A")]).unwrap());
        // an integer multiple
        assert!(!ech.insert(vec![p("2A"), p("2A^3")]).unwrap());
        // genuinely independent
        assert!(ech.insert(vec![p("1"), p("0")]).unwrap());
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn polynomial_cancellation_detected() {
        // row3 = (A + A^-1) * row1 - row2 must reduce to zero
        let r1 = vec![p("1"), p("A^2")];
        let r2 = vec![p("A + A^-1"), p("A^3")];
        let r3 = vec![p("0"), p("A")];
        let mut ech = LaurentEchelon::<BigInt>::new(2);
        assert!(ech.insert(r1).unwrap());
        assert!(ech.insert(r2).unwrap());
        assert!(!ech.insert(r3).unwrap());
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn rational_echelon_matches_symbolic_on_random_rows() {
        use rand::{Rng as _, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let point = rational_point(2, 1);
        for _ in 0..20 {
            let width = rng.gen_range(2..6);
            let mut sym = LaurentEchelon::<BigInt>::new(width);
            let mut rat = RationalEchelon::new(width);
            for _ in 0..width + 2 {
                let row: Vec<Laurent> = (0..width)
                    .map(|_| {
                        Laurent::from_terms((0..2).map(|_| {
                            (rng.gen_range(-3..=3i64), BigInt::from(rng.gen_range(-2..=2)))
                        }))
                    })
                    .collect();
                let eval: Vec<BigRational> =
                    row.iter().map(|e| e.eval(&point).unwrap()).collect();
                sym.insert(row).unwrap();
                rat.insert(eval).unwrap();
            }
            // evaluation can only lose rank, never gain it
            assert!(rat.rank() <= sym.rank());
            // at a generic point like A = 2 these small random systems
            // should agree
            assert_eq!(rat.rank(), sym.rank());
        }
    }
}

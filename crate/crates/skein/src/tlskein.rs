//! The relative skein module of the ball with `2n` marked boundary
//! points: crossingless matchings as a basis, reduction of arbitrary
//! tangles into that basis, and the cap/contract and rectangle-stacking
//! operations of the Temperley-Lieb structure.
//!
//! Boundary points are labeled `1..=2n` counterclockwise around the
//! disk. The same data read as a rectangle tangle on `n` strands puts
//! bottom position `i` at label `i` and top position `j` at label
//! `2n + 1 - j`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bracket::resolve_crossing;
use crate::constants::loop_value;
use crate::diagram::{EdgeMerger, TangleDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::num::Coeff;

/// A crossingless (planar, non-interleaving) perfect matching of the
/// boundary points `1..=2n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matching {
    /// `partner[i]` is the 1-based partner of point `i + 1`.
    partner: Vec<usize>,
}

impl Matching {
    /// Builds a matching from unordered pairs of 1-based points.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * n;
        if pairs.len() != n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {n} pairs, got {}", pairs.len()),
            });
        }
        let mut partner = vec![0usize; m];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > m || b > m || a == b {
                return Err(Error::PositionOutOfRange { pos: a.max(b), max: m });
            }
            if partner[a - 1] != 0 || partner[b - 1] != 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("point matched twice in ({a},{b})"),
                });
            }
            partner[a - 1] = b;
            partner[b - 1] = a;
        }
        let out = Matching { partner };
        if !out.is_noncrossing() {
            return Err(Error::Parse {
                line: 0,
                msg: "matching has interleaved (crossing) pairs".into(),
            });
        }
        Ok(out)
    }

    /// Number of strands `n` (half the number of boundary points).
    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    /// 1-based partner of 1-based point `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i - 1]
    }

    /// The pairs `(a, b)` with `a < b`, in increasing order of `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=2 * self.n())
            .filter(|&a| a < self.partner(a))
            .map(|a| (a, self.partner(a)))
            .collect()
    }

    fn is_noncrossing(&self) -> bool {
        let pairs = self.pairs();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                // interleaved: a < c < b < d
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
        true
    }

    /// The identity rectangle tangle: bottom `i` joined to top `i`,
    /// i.e. pairs `(i, 2n + 1 - i)`.
    pub fn identity(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (i, 2 * n + 1 - i)).collect();
        Matching::from_pairs(n, &pairs).expect("identity is non-crossing")
    }

    /// The cup-cap rectangle tangle `e_i`: bottom `i, i+1` joined to each
    /// other, top `i, i+1` joined to each other, all other strands
    /// through.
    pub fn cup_cap(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::PositionOutOfRange { pos: i, max: n - 1 });
        }
        let mut pairs = vec![(i, i + 1), (2 * n - i, 2 * n + 1 - i)];
        for j in 1..=n {
            if j != i && j != i + 1 {
                pairs.push((j, 2 * n + 1 - j));
            }
        }
        Matching::from_pairs(n, &pairs)
    }

    /// The crossing-free diagram realizing this matching.
    pub fn to_diagram(&self) -> TangleDiagram {
        let m = 2 * self.n();
        let mut endpoint_edges = vec![0u32; m];
        let mut next = 0u32;
        for (a, b) in self.pairs() {
            endpoint_edges[a - 1] = next;
            endpoint_edges[b - 1] = next;
            next += 1;
        }
        TangleDiagram::new(endpoint_edges, Vec::new(), 0).expect("matchings are planar")
    }

    /// Inserts a new adjacent pair at positions `(i, i + 1)`, shifting
    /// labels `>= i` up by two. Maps `K_n` basis elements to `K_{n+1}`.
    pub fn cap_insert(&self, i: usize) -> Result<Self> {
        let m = 2 * self.n();
        if i == 0 || i > m + 1 {
            return Err(Error::PositionOutOfRange { pos: i, max: m + 1 });
        }
        let lift = |p: usize| if p >= i { p + 2 } else { p };
        let mut pairs: Vec<(usize, usize)> =
            self.pairs().iter().map(|&(a, b)| (lift(a), lift(b))).collect();
        pairs.push((i, i + 1));
        Matching::from_pairs(self.n() + 1, &pairs)
    }

    /// Joins boundary points `i` and `i + 1` by an arc and renumbers.
    /// Returns the smaller matching and the number of closed loops
    /// produced (1 when `i` and `i + 1` were already partners, else 0).
    pub fn contract(&self, i: usize) -> Result<(Self, usize)> {
        let m = 2 * self.n();
        if i == 0 || i + 1 > m {
            return Err(Error::PositionOutOfRange { pos: i, max: m - 1 });
        }
        let drop = |p: usize| if p > i + 1 { p - 2 } else { p };
        let (pi, pj) = (self.partner(i), self.partner(i + 1));
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut loops = 0;
        if pi == i + 1 {
            loops = 1;
        }
        for (a, b) in self.pairs() {
            if a == i || a == i + 1 || b == i || b == i + 1 {
                continue;
            }
            pairs.push((drop(a), drop(b)));
        }
        if loops == 0 {
            // the two outside partners get joined through the arc
            let (x, y) = (drop(pi.min(pj)), drop(pi.max(pj)));
            pairs.push((x, y));
        }
        Ok((Matching::from_pairs(self.n() - 1, &pairs)?, loops))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `{(1,2),(3,4)}` (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("{msg}: {s}") };
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| bad("matching must be brace-delimited"))?;
        let mut pairs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            rest = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('"))?;
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[..close];
            let (a, b) = body
                .split_once(',')
                .ok_or_else(|| bad("pair needs a comma"))?;
            let a: usize = a.trim().parse().map_err(|_| bad("bad number"))?;
            let b: usize = b.trim().parse().map_err(|_| bad("bad number"))?;
            pairs.push((a, b));
            rest = rest[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        if pairs.is_empty() && !inner.trim().is_empty() {
            return Err(bad("unparsed matching content"));
        }
        Matching::from_pairs(pairs.len(), &pairs)
    }
}

/// All crossingless matchings on `2n` points, in lexicographic order of
/// their pair lists (Catalan-many).
pub fn enumerate_basis(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut partner = vec![0usize; 2 * n];
    fill(&mut partner, &mut out);
    out
}

fn fill(partner: &mut Vec<usize>, out: &mut Vec<Matching>) {
    let m = partner.len();
    let Some(a0) = (0..m).find(|&i| partner[i] == 0) else {
        out.push(Matching { partner: partner.clone() });
        return;
    };
    // partner of the first free point, scanning upward; non-crossing
    // forces an even number of free points strictly between them and
    // forbids chords that leave the enclosed interval
    for b0 in a0 + 1..m {
        if partner[b0] != 0 {
            continue;
        }
        let free_between = (a0 + 1..b0).filter(|&i| partner[i] == 0).count();
        if free_between % 2 != 0 {
            continue;
        }
        let escapes = (a0 + 1..b0)
            .any(|i| partner[i] != 0 && !(a0 + 1 < partner[i] && partner[i] - 1 < b0));
        if escapes {
            continue;
        }
        partner[a0] = b0 + 1;
        partner[b0] = a0 + 1;
        fill(partner, out);
        partner[a0] = 0;
        partner[b0] = 0;
    }
}

/// A finitely-supported linear combination of crossingless matchings
/// with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkeinVector<C: Coeff> {
    n: usize,
    terms: BTreeMap<Matching, LaurentPoly<C>>,
}

impl<C: Coeff> SkeinVector<C> {
    /// The zero vector of `K_n`.
    pub fn zero(n: usize) -> Self {
        SkeinVector { n, terms: BTreeMap::new() }
    }

    /// A single basis element with coefficient 1.
    pub fn basis(m: Matching) -> Self {
        SkeinVector::monomial(m, LaurentPoly::one())
    }

    /// A single matching with an arbitrary coefficient.
    pub fn monomial(m: Matching, coeff: LaurentPoly<C>) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        SkeinVector { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &LaurentPoly<C>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Matching) -> LaurentPoly<C> {
        self.terms.get(m).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Adds `coeff * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Matching, coeff: LaurentPoly<C>) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::MismatchedN(m.n(), self.n));
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(LaurentPoly::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedN(other.n, self.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, by: &LaurentPoly<C>) -> Self {
        if by.is_zero() {
            return SkeinVector::zero(self.n);
        }
        SkeinVector {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * by)).collect(),
        }
    }

    /// Coordinates with respect to `basis` (an ordering of all
    /// matchings of `K_n`, as from [`enumerate_basis`]).
    pub fn coordinates(&self, basis: &[Matching]) -> Vec<LaurentPoly<C>> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// JSON object mapping matching text to coefficient text.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(m, c)| (m.to_string(), serde_json::Value::String(c.to_string())))
                .collect(),
        )
    }
}

impl<C: Coeff> fmt::Display for SkeinVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if c.num_terms() == 1 {
                write!(f, "{c} * {m}")?;
            } else {
                write!(f, "({c}) * {m}")?;
            }
        }
        Ok(())
    }
}

/// Parses a skein vector over `K_n`: terms joined by ` + `, each either
/// `{...}`, `coeff * {...}`, or `(coeff) * {...}`; `0` is the zero
/// vector.
pub fn parse_skein<C: Coeff>(s: &str, n: usize) -> Result<SkeinVector<C>> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let s = s.trim();
    let mut out = SkeinVector::zero(n);
    if s == "0" {
        return Ok(out);
    }
    for term in s.split(" + ") {
        let term = term.trim();
        let (coeff, matching) = match term.split_once('*') {
            Some((c, m)) => {
                let c = c.trim();
                let c = c
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(c);
                (c.parse::<LaurentPoly<C>>()?, m.trim())
            }
            None => (LaurentPoly::one(), term),
        };
        let m: Matching = matching.parse()?;
        if m.n() != n {
            return Err(bad(format!("matching {m} lives in K_{}, not K_{n}", m.n())));
        }
        out.add_term(m, coeff)?;
    }
    Ok(out)
}

/// Reduces an arbitrary `2n`-endpoint tangle into the crossingless
/// matching basis: resolve every crossing by the skein relation, absorb
/// closed loops as factors of `delta`.
pub fn reduce<C: Coeff>(d: &TangleDiagram) -> Result<SkeinVector<C>> {
    if d.endpoint_count() % 2 != 0 {
        return Err(Error::OddEndpointCount(d.endpoint_count()));
    }
    let n = d.n();
    let mut out = SkeinVector::zero(n);
    let delta = loop_value::<C>();
    let mut stack: Vec<(TangleDiagram, LaurentPoly<C>)> = vec![(d.clone(), LaurentPoly::one())];
    while let Some((t, coeff)) = stack.pop() {
        if t.crossing_count() == 0 {
            let weight = coeff * delta.pow(t.closed_loops() as u32);
            out.add_term(matching_of_crossingless(&t)?, weight)?;
        } else {
            let (d0, dinf) = resolve_crossing(&t, 0)?;
            stack.push((d0, &coeff * &LaurentPoly::var_pow(1)));
            stack.push((dinf, coeff * LaurentPoly::var_pow(-1)));
        }
    }
    Ok(out)
}

/// Reads off the boundary matching of a crossing-free diagram.
fn matching_of_crossingless(d: &TangleDiagram) -> Result<Matching> {
    let m = d.endpoint_count();
    let mut pairs = Vec::new();
    for a in 1..=m {
        let e = d.endpoint_edge(a);
        let b = (a + 1..=m)
            .find(|&b| d.endpoint_edge(b) == e)
            .or_else(|| (1..a).find(|&b| d.endpoint_edge(b) == e));
        match b {
            Some(b) if b > a => pairs.push((a, b)),
            Some(_) => {}
            None => return Err(Error::DanglingEdge(e, 1)),
        }
    }
    Matching::from_pairs(m / 2, &pairs)
}

/// Applies [`Matching::cap_insert`] linearly: `K_n -> K_{n+1}`.
pub fn cap_insert<C: Coeff>(v: &SkeinVector<C>, i: usize) -> Result<SkeinVector<C>> {
    let mut out = SkeinVector::zero(v.n() + 1);
    for (m, c) in v.terms() {
        out.add_term(m.cap_insert(i)?, c.clone())?;
    }
    Ok(out)
}

/// Applies [`Matching::contract`] linearly, weighting each closed loop
/// by `delta`: `K_{n+1} -> K_n`.
pub fn contract<C: Coeff>(v: &SkeinVector<C>, i: usize) -> Result<SkeinVector<C>> {
    if v.n() == 0 {
        return Err(Error::PositionOutOfRange { pos: i, max: 0 });
    }
    let delta = loop_value::<C>();
    let mut out = SkeinVector::zero(v.n() - 1);
    for (m, c) in v.terms() {
        let (small, loops) = m.contract(i)?;
        out.add_term(small, c * &delta.pow(loops as u32))?;
    }
    Ok(out)
}

/// Stacks two rectangle tangles: `bottom` then `top` above it, reading
/// both matchings in the rectangle convention (bottom `i` at label `i`,
/// top `j` at label `2n + 1 - j`). Returns `delta^loops * result`.
pub fn compose_rect_matchings<C: Coeff>(
    top: &Matching,
    bottom: &Matching,
) -> Result<SkeinVector<C>> {
    let n = top.n();
    if bottom.n() != n {
        return Err(Error::MismatchedN(bottom.n(), n));
    }
    // Edge ids: bottom matching uses ids 0.., top matching uses ids
    // shifted; glue bottom's top boundary (labels 2n+1-j) to top's
    // bottom boundary (labels j).
    let mut merger = EdgeMerger::new();
    let shift = n as u32;
    // assign one id per pair in each matching
    let id_of = |mat: &Matching, base: u32, p: usize| -> u32 {
        let pairs = mat.pairs();
        base + pairs
            .iter()
            .position(|&(a, b)| a == p || b == p)
            .expect("every point is matched") as u32
    };
    for j in 1..=n {
        let bottom_top_label = 2 * n + 1 - j;
        merger.union(id_of(bottom, 0, bottom_top_label), id_of(top, shift, j));
    }
    let mut pairs = Vec::new();
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    let mut record = |label: usize, root: u32, pairs: &mut Vec<(usize, usize)>| {
        if let Some(&other) = seen.get(&root) {
            pairs.push((other, label));
        } else {
            seen.insert(root, label);
        }
    };
    // composite boundary: bottom positions 1..=n from `bottom`, top
    // positions (labels n+1..=2n, i.e. top position j at 2n+1-j) from `top`
    for i in 1..=n {
        let root = merger.find(id_of(bottom, 0, i));
        record(i, root, &mut pairs);
    }
    for label in n + 1..=2 * n {
        let j = 2 * n + 1 - label; // top position in `top`'s own labels
        let root = merger.find(id_of(top, shift, 2 * n + 1 - j));
        record(label, root, &mut pairs);
    }
    let loops = merger.loops_formed;
    let m = Matching::from_pairs(n, &pairs)?;
    Ok(SkeinVector::monomial(m, loop_value::<C>().pow(loops as u32)))
}

/// Bilinear extension of [`compose_rect_matchings`] to skein vectors.
pub fn compose_rect<C: Coeff>(
    top: &SkeinVector<C>,
    bottom: &SkeinVector<C>,
) -> Result<SkeinVector<C>> {
    if top.n() != bottom.n() {
        return Err(Error::MismatchedN(bottom.n(), top.n()));
    }
    let mut out = SkeinVector::zero(top.n());
    for (mt, ct) in top.terms() {
        for (mb, cb) in bottom.terms() {
            let piece = compose_rect_matchings::<C>(mt, mb)?;
            out = out.add(&piece.scale(&(ct * cb)))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_tangle, parse_braid};
    use crate::Laurent;
    use num_bigint::BigInt;

    type V = SkeinVector<BigInt>;

    fn p(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    fn mat(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn catalan_counts() {
        // 1, 1, 2, 5, 14, 42
        for (n, c) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42)] {
            assert_eq!(enumerate_basis(n).len(), c, "n = {n}");
        }
    }

    /// Independent basis enumerator: filter all perfect matchings.
    fn basis_by_rejection(n: usize) -> Vec<Matching> {
        fn all(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let m = partner.len();
            let Some(a) = (0..m).find(|&i| partner[i] == 0) else {
                out.push(partner.clone());
                return;
            };
            for b in a + 1..m {
                if partner[b] == 0 {
                    partner[a] = b + 1;
                    partner[b] = a + 1;
                    all(partner, out);
                    partner[a] = 0;
                    partner[b] = 0;
                }
            }
        }
        let mut raw = Vec::new();
        all(&mut vec![0; 2 * n], &mut raw);
        let mut out: Vec<Matching> = raw
            .into_iter()
            .map(|partner| Matching { partner })
            .filter(Matching::is_noncrossing)
            .collect();
        out.sort_by_key(|m| m.pairs());
        out
    }

    #[test]
    fn basis_matches_rejection_enumeration() {
        for n in 0..=5 {
            let fast = enumerate_basis(n);
            let slow = basis_by_rejection(n);
            assert_eq!(fast, slow, "n = {n}");
        }
    }

    #[test]
    fn basis_is_sorted_and_valid() {
        let b = enumerate_basis(3);
        let mut sorted = b.clone();
        sorted.sort_by_key(|m| m.pairs());
        assert_eq!(b, sorted);
        assert!(b.iter().all(Matching::is_noncrossing));
        assert_eq!(b[0], mat("{(1,2),(3,4),(5,6)}"));
    }

    #[test]
    fn crossing_matching_rejected() {
        assert!(Matching::from_pairs(2, &[(1, 3), (2, 4)]).is_err());
        assert!("{(1,3),(2,4)}".parse::<Matching>().is_err());
        assert!(Matching::from_pairs(2, &[(1, 2), (1, 4)]).is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        for n in 0..=4 {
            for m in enumerate_basis(n) {
                assert_eq!(mat(&m.to_string()), m);
            }
        }
        assert_eq!(mat("{(1,2),(3,4)}").to_string(), "{(1,2),(3,4)}");
    }

    #[test]
    fn identity_and_cup_cap() {
        assert_eq!(Matching::identity(2), mat("{(1,4),(2,3)}"));
        assert_eq!(Matching::cup_cap(2, 1).unwrap(), mat("{(1,2),(3,4)}"));
        assert_eq!(Matching::cup_cap(3, 2).unwrap(), mat("{(1,6),(2,3),(4,5)}"));
        assert!(Matching::cup_cap(2, 2).is_err());
    }

    #[test]
    fn temperley_lieb_relations() {
        // e_i^2 = delta e_i; e_i e_{i+-1} e_i = e_i; e_i e_j = e_j e_i
        // for |i - j| >= 2 -- all through rectangle composition.
        let n = 4;
        let delta = p("-A^2 - A^-2");
        let e = |i: usize| V::basis(Matching::cup_cap(n, i).unwrap());
        let mul = |a: &V, b: &V| compose_rect(a, b).unwrap();
        for i in 1..n {
            let ei = e(i);
            assert_eq!(mul(&ei, &ei), ei.scale(&delta), "e_{i}^2");
        }
        for i in 1..n - 1 {
            let (ei, ej) = (e(i), e(i + 1));
            assert_eq!(mul(&mul(&ei, &ej), &ei), ei, "e_i e_(i+1) e_i");
            assert_eq!(mul(&mul(&ej, &ei), &ej), ej, "e_(i+1) e_i e_(i+1)");
        }
        assert_eq!(mul(&e(1), &e(3)), mul(&e(3), &e(1)));
        // identity is the unit
        let id = V::basis(Matching::identity(n));
        for i in 1..n {
            assert_eq!(mul(&id, &e(i)), e(i));
            assert_eq!(mul(&e(i), &id), e(i));
        }
    }

    #[test]
    fn contract_after_cap_is_delta() {
        let delta = p("-A^2 - A^-2");
        for n in 1..=3 {
            for m in enumerate_basis(n) {
                for i in 1..=2 * n + 1 {
                    let v = cap_insert::<BigInt>(&V::basis(m.clone()), i).unwrap();
                    let back = contract(&v, i).unwrap();
                    assert_eq!(back, V::basis(m.clone()).scale(&delta));
                }
            }
        }
    }

    #[test]
    fn contract_wires_through() {
        // contracting a non-adjacent pair reconnects the outside partners
        let m = mat("{(1,4),(2,3)}");
        let (small, loops) = m.contract(3).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(small, mat("{(1,2)}"));
        let (small, loops) = m.contract(2).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(small, mat("{(1,2)}"));
    }

    #[test]
    fn reduce_crossingless() {
        let d = Matching::cup_cap(2, 1).unwrap().to_diagram();
        let v: V = reduce(&d).unwrap();
        assert_eq!(v, V::basis(mat("{(1,2),(3,4)}")));
    }

    #[test]
    fn reduce_single_crossing() {
        // one positive crossing on 2 strands: A * (cups) + A^-1 * (through)
        let d = braid_to_tangle(&parse_braid("s1", 2).unwrap());
        let v: V = reduce(&d).unwrap();
        let mut expected = V::zero(2);
        expected.add_term(mat("{(1,2),(3,4)}"), p("A")).unwrap();
        expected.add_term(mat("{(1,4),(2,3)}"), p("A^-1")).unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn reduce_framing_twist() {
        let d = braid_to_tangle(&parse_braid("t1", 1).unwrap());
        let v: V = reduce(&d).unwrap();
        assert_eq!(v, V::basis(mat("{(1,2)}")).scale(&p("-A^3")));
        let d = braid_to_tangle(&parse_braid("t1^-1", 1).unwrap());
        let v: V = reduce(&d).unwrap();
        assert_eq!(v, V::basis(mat("{(1,2)}")).scale(&p("-A^-3")));
    }

    #[test]
    fn reduce_braid_composition_is_rect_composition() {
        // reduce(w1 w2) = compose_rect(reduce(w2-part stacked above), ...)
        let w1 = parse_braid("s1 s2^-1", 3).unwrap();
        let w2 = parse_braid("s2 s1", 3).unwrap();
        let r1: V = reduce(&braid_to_tangle(&w1)).unwrap();
        let r2: V = reduce(&braid_to_tangle(&w2)).unwrap();
        let both: V = reduce(&braid_to_tangle(&w1.concat(&w2).unwrap())).unwrap();
        assert_eq!(compose_rect(&r2, &r1).unwrap(), both);
    }

    #[test]
    fn reduce_cancelling_pair_is_identity() {
        let d = braid_to_tangle(&parse_braid("s1 s1^-1", 2).unwrap());
        let v: V = reduce(&d).unwrap();
        assert_eq!(v, V::basis(Matching::identity(2)));
    }

    #[test]
    fn skein_vector_display_and_parse() {
        let mut v = V::zero(2);
        v.add_term(mat("{(1,2),(3,4)}"), p("A")).unwrap();
        v.add_term(mat("{(1,4),(2,3)}"), p("-A^2 - A^-2")).unwrap();
        let text = v.to_string();
        assert_eq!(text, "A * {(1,2),(3,4)} + (-A^2 - A^-2) * {(1,4),(2,3)}");
        assert_eq!(parse_skein::<BigInt>(&text, 2).unwrap(), v);
        assert_eq!(parse_skein::<BigInt>("0", 2).unwrap(), V::zero(2));
        assert_eq!(V::zero(2).to_string(), "0");
        assert_eq!(parse_skein::<BigInt>("{(1,2)}", 1).unwrap(), V::basis(mat("{(1,2)}")));
    }

    #[test]
    fn vector_arithmetic() {
        let a = V::basis(mat("{(1,2),(3,4)}"));
        let b = V::basis(mat("{(1,4),(2,3)}"));
        let s = a.add(&b).unwrap();
        assert_eq!(s.sub(&b).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.scale(&p("0")), V::zero(2));
        assert!(a.add(&V::basis(mat("{(1,2)}"))).is_err());
    }

    #[test]
    fn coordinates_align_with_basis() {
        let basis = enumerate_basis(2);
        let mut v = V::zero(2);
        v.add_term(basis[1].clone(), p("A^5")).unwrap();
        let coords = v.coordinates(&basis);
        assert_eq!(coords.len(), 2);
        assert!(coords[0].is_zero());
        assert_eq!(coords[1], p("A^5"));
    }
}

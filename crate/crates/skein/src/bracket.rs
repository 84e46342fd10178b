//! Kauffman bracket evaluation of closed framed diagrams by recursive
//! skein resolution, an independent exhaustive state-sum oracle, and the
//! Reidemeister II/III test-harness moves.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::constants::{loop_value, neg_kink, pos_kink};
use crate::diagram::{EdgeId, EdgeMerger, TangleDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::num::Coeff;

/// Which way a crossing is smoothed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SmoothingChoice {
    /// Coefficient `A`: joins crossing slots (0,1) and (2,3).
    Zero,
    /// Coefficient `A^-1`: joins crossing slots (0,3) and (1,2).
    Infinity,
}

/// A smoothing assignment for one crossing of a state.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Smoothing {
    pub crossing: usize,
    pub choice: SmoothingChoice,
}

/// Exhaustion bound for the naive state-sum oracle.
pub const ORACLE_CROSSING_CAP: usize = 24;

/// Replaces crossing `c` by one of its two smoothings.
pub fn smooth(d: &TangleDiagram, c: usize, choice: SmoothingChoice) -> Result<TangleDiagram> {
    let quad = *d
        .crossings()
        .get(c)
        .ok_or(Error::UnknownCrossing(c))?;
    let pairs: [(usize, usize); 2] = match choice {
        SmoothingChoice::Zero => [(0, 1), (2, 3)],
        SmoothingChoice::Infinity => [(0, 3), (1, 2)],
    };
    let mut merger = EdgeMerger::new();
    for (p, q) in pairs {
        merger.union(quad[p], quad[q]);
    }
    Ok(merger.apply(d, &[c]))
}

/// Both smoothings of crossing `c`, in the order (zero, infinity), so
/// `bracket(d) = A * bracket(d0) + A^-1 * bracket(dinf)`.
pub fn resolve_crossing(
    d: &TangleDiagram,
    c: usize,
) -> Result<(TangleDiagram, TangleDiagram)> {
    Ok((
        smooth(d, c, SmoothingChoice::Zero)?,
        smooth(d, c, SmoothingChoice::Infinity)?,
    ))
}

/// If crossing `c` is a nugatory kink (its loop edge occupies two
/// cyclically adjacent slots), returns the absorbed diagram and the kink
/// sign: `+1` for the positive kink (factor `-A^3`), `-1` for the
/// negative one.
fn absorb_kink(d: &TangleDiagram, c: usize) -> Option<(TangleDiagram, i8)> {
    let quad = d.crossings()[c];
    let (sign, keep) = if quad[0] == quad[1] {
        (1, (2, 3))
    } else if quad[2] == quad[3] {
        (1, (0, 1))
    } else if quad[1] == quad[2] {
        (-1, (3, 0))
    } else if quad[3] == quad[0] {
        (-1, (1, 2))
    } else {
        return None;
    };
    let mut merger = EdgeMerger::new();
    merger.union(quad[keep.0], quad[keep.1]);
    Some((merger.apply(d, &[c]), sign))
}

/// The Kauffman bracket of a closed diagram, by recursive resolution
/// with memoization. Normalization: `<empty> = 1`, `<unknot> = delta`.
pub fn kauffman_bracket<C: Coeff>(d: &TangleDiagram) -> Result<LaurentPoly<C>> {
    if !d.is_closed() {
        return Err(Error::NotClosed(d.endpoint_count()));
    }
    let mut memo = HashMap::new();
    Ok(bracket_rec(d, &mut memo))
}

type Key = (Vec<EdgeId>, Vec<[EdgeId; 4]>, usize);

fn bracket_rec<C: Coeff>(d: &TangleDiagram, memo: &mut HashMap<Key, LaurentPoly<C>>) -> LaurentPoly<C> {
    let key = d.canonical_key();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let value = if d.crossing_count() == 0 {
        loop_value::<C>().pow(d.closed_loops() as u32)
    } else if let Some((rest, sign)) = (0..d.crossing_count()).find_map(|c| absorb_kink(d, c)) {
        let factor = if sign > 0 { pos_kink() } else { neg_kink() };
        factor * bracket_rec(&rest, memo)
    } else {
        let (d0, dinf) = resolve_crossing(d, 0).expect("crossing 0 exists");
        LaurentPoly::var_pow(1) * bracket_rec(&d0, memo)
            + LaurentPoly::var_pow(-1) * bracket_rec(&dinf, memo)
    };
    memo.insert(key, value.clone());
    value
}

/// Exhaustive state-sum evaluation: the sum over all `2^c` smoothing
/// states of `A^(#zero - #infinity) * delta^(#loops)`. Deliberately
/// naive and independent of `kauffman_bracket`; refuses more than
/// [`ORACLE_CROSSING_CAP`] crossings.
pub fn state_sum_oracle<C: Coeff + Send + Sync>(d: &TangleDiagram) -> Result<LaurentPoly<C>> {
    state_sum_oracle_with_cap(d, ORACLE_CROSSING_CAP)
}

/// State-sum oracle with an explicit crossing cap, for callers that
/// deliberately exceed the desk-scale default.
pub fn state_sum_oracle_with_cap<C: Coeff + Send + Sync>(
    d: &TangleDiagram,
    cap: usize,
) -> Result<LaurentPoly<C>> {
    if !d.is_closed() {
        return Err(Error::NotClosed(d.endpoint_count()));
    }
    let m = d.crossing_count();
    if m > cap {
        return Err(Error::CrossingCapExceeded(m, cap));
    }
    let delta = loop_value::<C>();
    let total = (0u64..(1u64 << m))
        .into_par_iter()
        .map(|mask| {
            let mut merger = EdgeMerger::new();
            let mut exponent = 0i64;
            for (c, quad) in d.crossings().iter().enumerate() {
                let infinity = mask >> c & 1 == 1;
                let pairs: [(usize, usize); 2] = if infinity {
                    exponent -= 1;
                    [(0, 3), (1, 2)]
                } else {
                    exponent += 1;
                    [(0, 1), (2, 3)]
                };
                for (p, q) in pairs {
                    merger.union(quad[p], quad[q]);
                }
            }
            let loops = merger.loops_formed + d.closed_loops();
            delta.pow(loops as u32).shift(exponent)
        })
        .reduce(LaurentPoly::zero, |a, b| a + b);
    Ok(total)
}

// ---------------------------------------------------------------------------
// Reidemeister moves (test-harness moves; the bracket is invariant under
// II and III and covariant under kinks)
// ---------------------------------------------------------------------------

/// Where to perform an R2 insertion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum R2Site {
    /// Push edge `a` across a shared face over edge `b`.
    Edges(EdgeId, EdgeId),
    /// Poke one crossing-free loop over another.
    TwoLoops,
    /// Poke a crossing-free loop over itself.
    SelfLoop,
}

fn fresh_base(d: &TangleDiagram) -> EdgeId {
    d.incidences().keys().max().map(|m| m + 1).unwrap_or(0)
}

/// Inserts a Reidemeister II pair at the given site. The new crossings
/// put `a` over `b` twice; the result is planar or the site is rejected.
pub fn apply_r2(d: &TangleDiagram, site: R2Site) -> Result<TangleDiagram> {
    let f = fresh_base(d);
    match site {
        R2Site::Edges(a, b) => {
            if a == b {
                return Err(Error::InapplicableMove("edges must be distinct".into()));
            }
            let inc = d.incidences();
            if !inc.contains_key(&a) || !inc.contains_key(&b) {
                return Err(Error::InapplicableMove("unknown edge id".into()));
            }
            // a splits into a(=a1), a2, a3; b into b(=b1), b2, b3.
            let (a2, a3, b2, b3) = (f, f + 1, f + 2, f + 3);
            // Replace one incidence of a by a3 and one incidence of b by
            // b3; four ways to orient, the first planar one wins.
            for (flip_a, flip_b) in [(false, false), (false, true), (true, false), (true, true)] {
                let mut cand = replace_incidence(d, a, a3, flip_a);
                cand = replace_incidence(&cand, b, b3, flip_b);
                let mut crossings = cand.crossings().to_vec();
                crossings.push([b, a2, b2, a]);
                crossings.push([b2, a2, b3, a3]);
                let cand = TangleDiagram::from_parts(
                    cand.endpoint_edges().to_vec(),
                    crossings,
                    cand.closed_loops(),
                );
                if cand.validate_planarity() {
                    return Ok(cand);
                }
            }
            Err(Error::InapplicableMove(format!(
                "edges {a} and {b} do not bound a common face"
            )))
        }
        R2Site::TwoLoops => {
            if d.closed_loops() < 2 {
                return Err(Error::InapplicableMove("needs two free loops".into()));
            }
            let (a2, a_out, b2, b_out) = (f, f + 1, f + 2, f + 3);
            let mut crossings = d.crossings().to_vec();
            crossings.push([b_out, a2, b2, a_out]);
            crossings.push([b2, a2, b_out, a_out]);
            Ok(TangleDiagram::from_parts(
                d.endpoint_edges().to_vec(),
                crossings,
                d.closed_loops() - 2,
            ))
        }
        R2Site::SelfLoop => {
            if d.closed_loops() < 1 {
                return Err(Error::InapplicableMove("needs a free loop".into()));
            }
            let (a2, b2, e_left, e_right) = (f, f + 1, f + 2, f + 3);
            let mut crossings = d.crossings().to_vec();
            crossings.push([e_left, a2, b2, e_left]);
            crossings.push([b2, a2, e_right, e_right]);
            Ok(TangleDiagram::from_parts(
                d.endpoint_edges().to_vec(),
                crossings,
                d.closed_loops() - 1,
            ))
        }
    }
}

/// Replaces one of the two incidences of `old` by `new`: the first
/// incidence in scan order, or the second when `second` is set.
fn replace_incidence(d: &TangleDiagram, old: EdgeId, new: EdgeId, second: bool) -> TangleDiagram {
    let mut endpoint_edges = d.endpoint_edges().to_vec();
    let mut crossings = d.crossings().to_vec();
    let target = usize::from(second);
    let mut occurrence = 0usize;
    {
        let slots = endpoint_edges
            .iter_mut()
            .chain(crossings.iter_mut().flat_map(|q| q.iter_mut()));
        for slot in slots {
            if *slot == old {
                if occurrence == target {
                    *slot = new;
                    break;
                }
                occurrence += 1;
            }
        }
    }
    TangleDiagram::from_parts(endpoint_edges, crossings, d.closed_loops())
}

/// Removes a cancelling Reidemeister II pair: both crossings are spliced
/// straight through.
pub fn undo_r2(d: &TangleDiagram, c1: usize, c2: usize) -> Result<TangleDiagram> {
    let nc = d.crossing_count();
    if c1 >= nc || c2 >= nc || c1 == c2 {
        return Err(Error::UnknownCrossing(c1.max(c2)));
    }
    let q1 = d.crossings()[c1];
    let q2 = d.crossings()[c2];
    let shared: Vec<EdgeId> = q1
        .iter()
        .filter(|e| q2.contains(e))
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    if shared.len() != 2 {
        return Err(Error::InapplicableMove(
            "crossings do not bound a cancelling bigon".into(),
        ));
    }
    let mut merger = EdgeMerger::new();
    for q in [q1, q2] {
        merger.union(q[0], q[2]);
        merger.union(q[1], q[3]);
    }
    Ok(merger.apply(d, &[c1, c2]))
}

/// Slides a strand across the opposite crossing of a triangle
/// (Reidemeister III). The three crossings must pairwise share exactly
/// one edge and some strand must pass uniformly over or uniformly under
/// at its two crossings of the triangle.
pub fn apply_r3(d: &TangleDiagram, c1: usize, c2: usize, c3: usize) -> Result<TangleDiagram> {
    let nc = d.crossing_count();
    for c in [c1, c2, c3] {
        if c >= nc {
            return Err(Error::UnknownCrossing(c));
        }
    }
    if c1 == c2 || c1 == c3 || c2 == c3 {
        return Err(Error::InapplicableMove("crossings must be distinct".into()));
    }
    // Try each crossing as the stationary one (the crossing the slider
    // does not touch).
    for (k, cx, cy) in [(c1, c2, c3), (c2, c1, c3), (c3, c1, c2)] {
        if let Some(out) = try_r3(d, k, cx, cy) {
            if out.validate_planarity() {
                return Ok(out);
            }
        }
    }
    Err(Error::InapplicableMove(
        "no strand passes uniformly over or under the triangle".into(),
    ))
}

fn shared_edge(a: [EdgeId; 4], b: [EdgeId; 4]) -> Option<EdgeId> {
    let s: Vec<EdgeId> = a
        .iter()
        .filter(|e| b.contains(e))
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    if s.len() == 1 {
        Some(s[0])
    } else {
        None
    }
}

fn slot_of(q: [EdgeId; 4], e: EdgeId) -> Option<usize> {
    let hits: Vec<usize> = (0..4).filter(|&i| q[i] == e).collect();
    if hits.len() == 1 {
        Some(hits[0])
    } else {
        None
    }
}

fn try_r3(d: &TangleDiagram, k: usize, cx: usize, cy: usize) -> Option<TangleDiagram> {
    let qk = d.crossings()[k];
    let qx = d.crossings()[cx];
    let qy = d.crossings()[cy];
    let ex = shared_edge(qk, qx)?;
    let ey = shared_edge(qk, qy)?;
    let ez = shared_edge(qx, qy)?;
    if ex == ey || ex == ez || ey == ez {
        return None;
    }
    // positions and far-side edges; each strand occupies opposite slots
    let pk_x = slot_of(qk, ex)?;
    let pk_y = slot_of(qk, ey)?;
    let px_e = slot_of(qx, ex)?;
    let px_z = slot_of(qx, ez)?;
    let py_e = slot_of(qy, ey)?;
    let py_z = slot_of(qy, ez)?;
    // the slider must be uniformly over or uniformly under
    let under_x = px_z % 2 == 0;
    let under_y = py_z % 2 == 0;
    if under_x != under_y {
        return None;
    }
    let x_far = qk[(pk_x + 2) % 4];
    let y_far = qk[(pk_y + 2) % 4];
    let x_out = qx[(px_e + 2) % 4];
    let z_a = qx[(px_z + 2) % 4];
    let y_out = qy[(py_e + 2) % 4];
    let z_b = qy[(py_z + 2) % 4];

    let mut crossings = d.crossings().to_vec();
    // stationary crossing: the triangle flips to its other side
    crossings[k][pk_x] = x_out;
    crossings[k][(pk_x + 2) % 4] = ex;
    crossings[k][pk_y] = y_out;
    crossings[k][(pk_y + 2) % 4] = ey;
    // slider crossing with x: moves past the stationary crossing
    crossings[cx][px_e] = x_far;
    crossings[cx][(px_e + 2) % 4] = ex;
    crossings[cx][px_z] = z_b;
    crossings[cx][(px_z + 2) % 4] = ez;
    // slider crossing with y
    crossings[cy][py_e] = y_far;
    crossings[cy][(py_e + 2) % 4] = ey;
    crossings[cy][py_z] = z_a;
    crossings[cy][(py_z + 2) % 4] = ez;
    Some(TangleDiagram::from_parts(
        d.endpoint_edges().to_vec(),
        crossings,
        d.closed_loops(),
    ))
}

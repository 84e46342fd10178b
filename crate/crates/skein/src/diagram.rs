//! Planar tangle/link diagrams with blackboard framing, plus parsers for
//! the diagram language and for framed braid words.
//!
//! A diagram is a 4-valent incidence structure: crossings carry their
//! four edges in counterclockwise order starting from the incoming
//! under-strand (PD convention), boundary points sit on the disk
//! boundary in counterclockwise label order `1..=2n`, and crossing-free
//! closed components are tracked by count. Planarity with the given
//! boundary order is validated eagerly at construction, so downstream
//! code may assume planar input.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub type EdgeId = u32;

/// One of the two incidences of an edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Site {
    /// Slot `slot` (0..4, counterclockwise) of crossing `crossing`.
    Crossing { crossing: usize, slot: usize },
    /// Boundary point with 1-based label `point`.
    Endpoint { point: usize },
}

/// A planar tangle diagram. `endpoint_edges[i]` is the edge attached to
/// boundary point `i + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangleDiagram {
    endpoint_edges: Vec<EdgeId>,
    crossings: Vec<[EdgeId; 4]>,
    closed_loops: usize,
}

impl TangleDiagram {
    /// Builds and fully validates a diagram (incidence counts, even
    /// endpoint count, planarity with the given boundary order).
    pub fn new(
        endpoint_edges: Vec<EdgeId>,
        crossings: Vec<[EdgeId; 4]>,
        closed_loops: usize,
    ) -> Result<Self> {
        let d = TangleDiagram { endpoint_edges, crossings, closed_loops };
        d.check_structure()?;
        if !d.validate_planarity() {
            return Err(Error::NonPlanar);
        }
        Ok(d)
    }

    /// Constructor for internal rewrites whose output is planar by
    /// construction (smoothings, closures, move applications).
    pub(crate) fn from_parts(
        endpoint_edges: Vec<EdgeId>,
        crossings: Vec<[EdgeId; 4]>,
        closed_loops: usize,
    ) -> Self {
        TangleDiagram { endpoint_edges, crossings, closed_loops }
    }

    pub fn empty() -> Self {
        TangleDiagram { endpoint_edges: vec![], crossings: vec![], closed_loops: 0 }
    }

    /// A closed diagram of `k` disjoint trivial loops.
    pub fn unknots(k: usize) -> Self {
        TangleDiagram { endpoint_edges: vec![], crossings: vec![], closed_loops: k }
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoint_edges.len()
    }

    /// Number of arc components demanded at the boundary (`2n` points).
    pub fn n(&self) -> usize {
        self.endpoint_edges.len() / 2
    }

    pub fn is_closed(&self) -> bool {
        self.endpoint_edges.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    pub fn closed_loops(&self) -> usize {
        self.closed_loops
    }

    /// Edge attached at boundary point `point` (1-based).
    pub fn endpoint_edge(&self, point: usize) -> EdgeId {
        self.endpoint_edges[point - 1]
    }

    pub fn endpoint_edges(&self) -> &[EdgeId] {
        &self.endpoint_edges
    }

    /// Incidence map: every edge to its (expected two) sites.
    pub fn incidences(&self) -> BTreeMap<EdgeId, Vec<Site>> {
        let mut map: BTreeMap<EdgeId, Vec<Site>> = BTreeMap::new();
        for (i, e) in self.endpoint_edges.iter().enumerate() {
            map.entry(*e).or_default().push(Site::Endpoint { point: i + 1 });
        }
        for (c, quad) in self.crossings.iter().enumerate() {
            for (slot, e) in quad.iter().enumerate() {
                map.entry(*e).or_default().push(Site::Crossing { crossing: c, slot });
            }
        }
        map
    }

    fn check_structure(&self) -> Result<()> {
        if self.endpoint_edges.len() % 2 != 0 {
            return Err(Error::OddEndpointCount(self.endpoint_edges.len()));
        }
        for (e, sites) in self.incidences() {
            if sites.len() != 2 {
                return Err(Error::DanglingEdge(e, sites.len()));
            }
        }
        Ok(())
    }

    /// True iff the incidence structure admits a planar embedding with
    /// all boundary points on the outer face in the given circular
    /// order. Checked through the Euler formula on the rotation system,
    /// component by component, with the boundary circle adjoined.
    pub fn validate_planarity(&self) -> bool {
        // Darts are indexed per rotation entry. Vertices: one per
        // crossing (rotation = the PD quadruple) and one per boundary
        // point (rotation = [arc to next point, interior edge, arc to
        // previous point], counterclockwise with the interior on the
        // left of the boundary orientation).
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum EdgeKey {
            Diagram(EdgeId),
            BoundaryArc(usize), // arc from point k to point k+1 (cyclic)
        }

        let np = self.endpoint_edges.len();
        let mut vertex_rotations: Vec<Vec<EdgeKey>> = Vec::new();
        for quad in &self.crossings {
            vertex_rotations.push(quad.iter().map(|e| EdgeKey::Diagram(*e)).collect());
        }
        for p in 0..np {
            let next_arc = EdgeKey::BoundaryArc(p);
            let prev_arc = EdgeKey::BoundaryArc((p + np - 1) % np);
            vertex_rotations.push(vec![
                next_arc,
                EdgeKey::Diagram(self.endpoint_edges[p]),
                prev_arc,
            ]);
        }
        if np == 2 {
            // With two boundary points the two arcs coincide as a single
            // doubled edge; the generic indexing above already names
            // them BoundaryArc(0) and BoundaryArc(1), which is what we
            // want: two distinct arcs between the same two vertices.
        }

        // Assemble darts.
        let mut darts: Vec<(usize, usize)> = Vec::new(); // (vertex, position)
        let mut by_edge: std::collections::HashMap<EdgeKey, Vec<usize>> =
            std::collections::HashMap::new();
        for (v, rot) in vertex_rotations.iter().enumerate() {
            for (pos, key) in rot.iter().enumerate() {
                let id = darts.len();
                darts.push((v, pos));
                by_edge.entry(*key).or_default().push(id);
            }
        }
        let mut twin = vec![usize::MAX; darts.len()];
        for (_, ds) in by_edge {
            if ds.len() != 2 {
                return false; // structurally broken; callers validate first
            }
            twin[ds[0]] = ds[1];
            twin[ds[1]] = ds[0];
        }
        let sigma = |d: usize| -> usize {
            let (v, pos) = darts[d];
            let deg = vertex_rotations[v].len();
            let npos = (pos + 1) % deg;
            // darts are laid out rotation-contiguously per vertex
            d - pos + npos
        };

        // Connected components over vertices.
        let nv = vertex_rotations.len();
        let mut comp = (0..nv).collect::<Vec<_>>();
        fn find(comp: &mut Vec<usize>, x: usize) -> usize {
            if comp[x] != x {
                let r = find(comp, comp[x]);
                comp[x] = r;
            }
            comp[x]
        }
        for d in 0..darts.len() {
            let (v1, _) = darts[d];
            let (v2, _) = darts[twin[d]];
            let r1 = find(&mut comp, v1);
            let r2 = find(&mut comp, v2);
            if r1 != r2 {
                comp[r1] = r2;
            }
        }

        // Faces: orbits of sigma ∘ twin.
        let mut face_of = vec![usize::MAX; darts.len()];
        let mut faces_per_comp: BTreeMap<usize, usize> = BTreeMap::new();
        let mut nfaces = 0usize;
        for start in 0..darts.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                face_of[d] = nfaces;
                d = sigma(twin[d]);
                if d == start {
                    break;
                }
            }
            let root = find(&mut comp, darts[start].0);
            *faces_per_comp.entry(root).or_default() += 1;
            nfaces += 1;
        }

        // Euler check per component: V - E + F = 2.
        let mut v_per: BTreeMap<usize, isize> = BTreeMap::new();
        let mut e_per: BTreeMap<usize, isize> = BTreeMap::new();
        for v in 0..nv {
            let root = find(&mut comp, v);
            *v_per.entry(root).or_default() += 1;
        }
        for d in 0..darts.len() {
            if d < twin[d] {
                let root = find(&mut comp, darts[d].0);
                *e_per.entry(root).or_default() += 1;
            }
        }
        for (root, f) in faces_per_comp {
            let v = v_per.get(&root).copied().unwrap_or(0);
            let e = e_per.get(&root).copied().unwrap_or(0);
            if v - e + f as isize != 2 {
                return false;
            }
        }
        true
    }

    /// Swaps over- and under-strand at every crossing (the planar
    /// reflection of the diagram); the bracket transforms by `A <-> A^-1`.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|&[e0, e1, e2, e3]| [e0, e3, e2, e1])
            .collect();
        TangleDiagram {
            endpoint_edges: self.endpoint_edges.clone(),
            crossings,
            closed_loops: self.closed_loops,
        }
    }

    /// Structure with edges relabeled in first-occurrence order; two
    /// diagrams that differ only by edge ids get equal keys. Used for
    /// memoization and for comparing rewrite results.
    pub fn canonical_key(&self) -> (Vec<EdgeId>, Vec<[EdgeId; 4]>, usize) {
        let mut relabel: std::collections::HashMap<EdgeId, EdgeId> =
            std::collections::HashMap::new();
        let mut next: EdgeId = 0;
        let mut map = |e: EdgeId, relabel: &mut std::collections::HashMap<EdgeId, EdgeId>| {
            *relabel.entry(e).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        };
        let eps = self.endpoint_edges.iter().map(|e| map(*e, &mut relabel)).collect();
        let crs = self
            .crossings
            .iter()
            .map(|q| {
                let mut out = [0; 4];
                for (i, e) in q.iter().enumerate() {
                    out[i] = map(*e, &mut relabel);
                }
                out
            })
            .collect();
        (eps, crs, self.closed_loops)
    }

    /// Strong canonical form: the lexicographically smallest relabeled
    /// crossing list over all crossing orders and half-turn rotations of
    /// each quadruple (rotating a quadruple by two slots names the same
    /// crossing). Two diagrams describe the same tangle datum, up to
    /// edge names and crossing bookkeeping, exactly when their canonical
    /// forms agree. Costlier than [`Self::canonical_key`]; meant for
    /// comparing rewrite results.
    pub fn canonical_form(&self) -> (Vec<EdgeId>, Vec<[EdgeId; 4]>, usize) {
        use std::collections::HashMap;

        let mut relabel: HashMap<EdgeId, EdgeId> = HashMap::new();
        let mut next: EdgeId = 0;
        let mut eps = Vec::with_capacity(self.endpoint_edges.len());
        for &e in &self.endpoint_edges {
            let id = *relabel.entry(e).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            });
            eps.push(id);
        }

        /// Hypothetical relabeling of one rotated quadruple: edges not in
        /// `map` get fresh ids from `next` in slot order.
        fn relabeled(
            q: [EdgeId; 4],
            rot: usize,
            map: &HashMap<EdgeId, EdgeId>,
            next: EdgeId,
        ) -> [EdgeId; 4] {
            let mut local: Vec<(EdgeId, EdgeId)> = Vec::new();
            let mut n = next;
            let mut out = [0; 4];
            for (i, slot) in out.iter_mut().enumerate() {
                let e = q[(i + rot) % 4];
                *slot = map
                    .get(&e)
                    .copied()
                    .or_else(|| local.iter().find(|(k, _)| *k == e).map(|&(_, v)| v))
                    .unwrap_or_else(|| {
                        let v = n;
                        n += 1;
                        local.push((e, v));
                        v
                    });
            }
            out
        }

        #[allow(clippy::too_many_arguments)]
        fn rec(
            crossings: &[[EdgeId; 4]],
            used: &mut [bool],
            map: &mut HashMap<EdgeId, EdgeId>,
            next: &mut EdgeId,
            acc: &mut Vec<[EdgeId; 4]>,
            best: &mut Option<Vec<[EdgeId; 4]>>,
        ) {
            if acc.len() == crossings.len() {
                if best.as_ref().map_or(true, |b| acc.as_slice() < b.as_slice()) {
                    *best = Some(acc.clone());
                }
                return;
            }
            // the lexicographic minimum is reached by greedily taking the
            // smallest relabeled quadruple; explore every tie
            let mut min_quad: Option<[EdgeId; 4]> = None;
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for (c, q) in crossings.iter().enumerate() {
                if used[c] {
                    continue;
                }
                for rot in [0usize, 2] {
                    let rq = relabeled(*q, rot, map, *next);
                    match &min_quad {
                        Some(m) if rq > *m => {}
                        Some(m) if rq == *m => cands.push((c, rot)),
                        _ => {
                            min_quad = Some(rq);
                            cands.clear();
                            cands.push((c, rot));
                        }
                    }
                }
            }
            let rq = min_quad.expect("some crossing remains");
            for (c, rot) in cands {
                let mut added: Vec<EdgeId> = Vec::new();
                for i in 0..4 {
                    let e = crossings[c][(i + rot) % 4];
                    if !map.contains_key(&e) {
                        map.insert(e, rq[i]);
                        added.push(e);
                    }
                }
                let saved_next = *next;
                *next += added.len() as EdgeId;
                used[c] = true;
                acc.push(rq);
                rec(crossings, used, map, next, acc, best);
                acc.pop();
                used[c] = false;
                *next = saved_next;
                for e in added {
                    map.remove(&e);
                }
            }
        }

        let mut best = None;
        rec(
            &self.crossings,
            &mut vec![false; self.crossings.len()],
            &mut relabel,
            &mut next,
            &mut Vec::new(),
            &mut best,
        );
        (eps, best.unwrap_or_default(), self.closed_loops)
    }

    /// Canonical text form of the diagram language; `parse_tangle` of the
    /// output reproduces the diagram exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("endpoints {}\n", self.endpoint_edges.len()));
        if self.closed_loops > 0 {
            out.push_str(&format!("loops {}\n", self.closed_loops));
        }
        // boundary attachments, grouped per edge
        let mut boundary: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.endpoint_edges.iter().enumerate() {
            boundary.entry(*e).or_default().push(i + 1);
        }
        for (e, points) in boundary {
            let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("edge {} {}\n", e, pts.join(" ")));
        }
        for quad in &self.crossings {
            out.push_str(&format!("X({},{},{},{})\n", quad[0], quad[1], quad[2], quad[3]));
        }
        out
    }
}

/// Merges edges of a diagram under construction, counting the closed
/// loops that appear when an identification closes a cycle.
pub(crate) struct EdgeMerger {
    parent: std::collections::HashMap<EdgeId, EdgeId>,
    pub loops_formed: usize,
}

impl EdgeMerger {
    pub fn new() -> Self {
        EdgeMerger { parent: std::collections::HashMap::new(), loops_formed: 0 }
    }

    pub fn find(&mut self, e: EdgeId) -> EdgeId {
        let p = *self.parent.get(&e).unwrap_or(&e);
        if p == e {
            return e;
        }
        let r = self.find(p);
        self.parent.insert(e, r);
        r
    }

    /// Identifies the free ends of `a` and `b`; returns true if this
    /// closed a cycle (one new free loop).
    pub fn union(&mut self, a: EdgeId, b: EdgeId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            self.loops_formed += 1;
            true
        } else {
            self.parent.insert(ra, rb);
            false
        }
    }

    /// Rewrites a diagram through the accumulated identifications,
    /// dropping crossing indices listed in `drop`.
    pub fn apply(&mut self, d: &TangleDiagram, drop: &[usize]) -> TangleDiagram {
        let endpoint_edges = d.endpoint_edges.iter().map(|e| self.find(*e)).collect();
        let crossings = d
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, quad)| {
                let mut q = *quad;
                for e in &mut q {
                    *e = self.find(*e);
                }
                q
            })
            .collect();
        TangleDiagram::from_parts(endpoint_edges, crossings, d.closed_loops + self.loops_formed)
    }
}

/// Disjoint union of two closed diagrams, with `d2`'s edges shifted into
/// a fresh id range.
pub fn disjoint_union(d1: &TangleDiagram, d2: &TangleDiagram) -> Result<TangleDiagram> {
    if !d1.is_closed() || !d2.is_closed() {
        return Err(Error::NotClosed(d1.endpoint_count().max(d2.endpoint_count())));
    }
    let shift = d1.incidences().keys().max().map(|m| m + 1).unwrap_or(0);
    let crossings = d1
        .crossings
        .iter()
        .copied()
        .chain(
            d2.crossings
                .iter()
                .map(|q| [q[0] + shift, q[1] + shift, q[2] + shift, q[3] + shift]),
        )
        .collect();
    Ok(TangleDiagram::from_parts(
        vec![],
        crossings,
        d1.closed_loops + d2.closed_loops,
    ))
}

/// Glues two tangles with the same number of boundary points into a
/// closed diagram, identifying boundary point `i` of `d1` with boundary
/// point `2n + 1 - i` of `d2` (the two disks meet along a diameter, so
/// the circular orders run oppositely).
pub fn glue_diagrams(d1: &TangleDiagram, d2: &TangleDiagram) -> Result<TangleDiagram> {
    if d1.endpoint_count() != d2.endpoint_count() {
        return Err(Error::MismatchedN(d1.n(), d2.n()));
    }
    let np = d1.endpoint_count();
    // shift d2's edge ids into a fresh range
    let shift = d1
        .incidences()
        .keys()
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let d2s = TangleDiagram::from_parts(
        d2.endpoint_edges.iter().map(|e| e + shift).collect(),
        d2.crossings
            .iter()
            .map(|q| [q[0] + shift, q[1] + shift, q[2] + shift, q[3] + shift])
            .collect(),
        d2.closed_loops,
    );
    let combined = TangleDiagram::from_parts(
        vec![],
        d1.crossings.iter().chain(d2s.crossings.iter()).copied().collect(),
        d1.closed_loops + d2s.closed_loops,
    );
    let mut merger = EdgeMerger::new();
    for i in 1..=np {
        merger.union(d1.endpoint_edge(i), d2s.endpoint_edge(np + 1 - i));
    }
    Ok(merger.apply(&combined, &[]))
}

/// Attaches `base` (a diagram with `k` boundary points) to the bottom of
/// `tangle` (a rectangle tangle on `k` strands, so `2k` boundary
/// points): base point `i` meets tangle bottom label `i`, and the
/// result's boundary point `i` is the tangle's top position `i` (tangle
/// label `2k + 1 - i`). This realizes the boundary action of a braid on
/// a disk diagram.
pub fn stack_onto(base: &TangleDiagram, tangle: &TangleDiagram) -> Result<TangleDiagram> {
    let k = base.endpoint_count();
    if tangle.endpoint_count() != 2 * k {
        return Err(Error::MismatchedN(tangle.n(), k));
    }
    let shift = base.incidences().keys().max().map(|m| m + 1).unwrap_or(0);
    let t_point = |p: usize| tangle.endpoint_edge(p) + shift;
    let crossings: Vec<[EdgeId; 4]> = base
        .crossings
        .iter()
        .copied()
        .chain(
            tangle
                .crossings
                .iter()
                .map(|q| [q[0] + shift, q[1] + shift, q[2] + shift, q[3] + shift]),
        )
        .collect();
    let endpoint_edges: Vec<EdgeId> = (1..=k).map(|i| t_point(2 * k + 1 - i)).collect();
    let combined = TangleDiagram::from_parts(
        endpoint_edges,
        crossings,
        base.closed_loops + tangle.closed_loops,
    );
    let mut merger = EdgeMerger::new();
    for i in 1..=k {
        merger.union(base.endpoint_edge(i), t_point(i));
    }
    Ok(merger.apply(&combined, &[]))
}

// ---------------------------------------------------------------------------
// Framed braid words
// ---------------------------------------------------------------------------

/// A generator of the framed braid group: a crossing `s_i` of strands
/// `i, i+1`, or a framing twist `t_i` on strand `i`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Sigma(usize),
    Twist(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Letter {
    pub gen: Generator,
    /// +1 or -1
    pub power: i8,
}

/// A word in the framed braid group on `strands` strands. The empty word
/// is the identity braid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FramedBraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl FramedBraidWord {
    pub fn identity(strands: usize) -> Self {
        FramedBraidWord { strands, letters: vec![] }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            check_generator(l.gen, strands)?;
        }
        Ok(FramedBraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, gen: Generator, power: i8) -> Result<()> {
        check_generator(gen, self.strands)?;
        self.letters.push(Letter { gen, power });
        Ok(())
    }

    /// The group inverse: reversed word with all powers negated.
    pub fn inverse(&self) -> Self {
        FramedBraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, power: -l.power })
                .collect(),
        }
    }

    /// Concatenation: `self`'s letters followed by `other`'s. Since the
    /// action applies letters in list order, `self` acts first:
    /// `act(u.concat(v), x) = act(v, act(u, x))`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { word: other.strands, expected: self.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FramedBraidWord { strands: self.strands, letters })
    }
}

fn check_generator(gen: Generator, strands: usize) -> Result<()> {
    let ok = match gen {
        Generator::Sigma(i) => i >= 1 && i + 1 <= strands,
        Generator::Twist(i) => i >= 1 && i <= strands,
    };
    if ok {
        Ok(())
    } else {
        let index = match gen {
            Generator::Sigma(i) | Generator::Twist(i) => i,
        };
        Err(Error::GeneratorOutOfRange { index, strands })
    }
}

impl fmt::Display for FramedBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let (c, i) = match l.gen {
                Generator::Sigma(i) => ('s', i),
                Generator::Twist(i) => ('t', i),
            };
            write!(f, "{c}{i}")?;
            if l.power < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Parses whitespace-separated tokens `s<i>`, `s<i>^-1`, `t<i>`, `t<i>^-1`.
pub fn parse_braid(text: &str, strands: usize) -> Result<FramedBraidWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (base, power) = match tok.strip_suffix("^-1") {
            Some(b) => (b, -1i8),
            None => (tok, 1i8),
        };
        let mut chars = base.chars();
        let kind = chars.next().ok_or_else(|| braid_err(tok))?;
        let idx: usize = chars.as_str().parse().map_err(|_| braid_err(tok))?;
        let gen = match kind {
            's' => Generator::Sigma(idx),
            't' => Generator::Twist(idx),
            _ => return Err(braid_err(tok)),
        };
        check_generator(gen, strands)?;
        letters.push(Letter { gen, power });
    }
    Ok(FramedBraidWord { strands, letters })
}

fn braid_err(tok: &str) -> Error {
    Error::Parse { line: 0, msg: format!("unknown braid token `{tok}`") }
}

// ---------------------------------------------------------------------------
// Braids as tangles
// ---------------------------------------------------------------------------

/// Renders a braid word on `k` strands as a tangle with `2k` boundary
/// points: bottom points are labels `1..=k` left to right, top points
/// continue counterclockwise, so top position `j` is label `2k + 1 - j`.
/// Each `s_i` contributes one crossing; each `t_i` a nugatory kink.
pub fn braid_to_tangle(w: &FramedBraidWord) -> TangleDiagram {
    let k = w.strands();
    let mut next_edge: EdgeId = 0;
    let mut fresh = || {
        let e = next_edge;
        next_edge += 1;
        e
    };
    let mut cur: Vec<EdgeId> = (0..k).map(|_| fresh()).collect();
    let bottom = cur.clone();
    let mut crossings = Vec::new();
    for l in w.letters() {
        match (l.gen, l.power) {
            (Generator::Sigma(i), p) => {
                let sw = cur[i - 1];
                let se = cur[i];
                let nw = fresh();
                let ne = fresh();
                if p > 0 {
                    // strand entering at bottom position i passes under
                    crossings.push([sw, se, ne, nw]);
                } else {
                    crossings.push([se, ne, nw, sw]);
                }
                cur[i - 1] = nw;
                cur[i] = ne;
            }
            (Generator::Twist(i), p) => {
                let inn = cur[i - 1];
                let out = fresh();
                let lp = fresh();
                if p > 0 {
                    crossings.push([inn, out, lp, lp]);
                } else {
                    crossings.push([inn, lp, lp, out]);
                }
                cur[i - 1] = out;
            }
        }
    }
    let mut endpoint_edges = vec![0; 2 * k];
    for i in 0..k {
        endpoint_edges[i] = bottom[i]; // label i+1
        endpoint_edges[2 * k - 1 - i] = cur[i]; // top position i+1 = label 2k-i
    }
    TangleDiagram::from_parts(endpoint_edges, crossings, 0)
}

/// Trace closure of a braid tangle: joins top position `j` to bottom
/// position `j` for every strand, producing a closed diagram.
pub fn trace_closure(w: &FramedBraidWord) -> TangleDiagram {
    let k = w.strands();
    let d = braid_to_tangle(w);
    let mut merger = EdgeMerger::new();
    for j in 1..=k {
        // top position j is label 2k + 1 - j
        merger.union(d.endpoint_edge(j), d.endpoint_edge(2 * k + 1 - j));
    }
    let closed = merger.apply(&d, &[]);
    TangleDiagram::from_parts(vec![], closed.crossings, closed.closed_loops)
}

/// Plat closure of a braid tangle on an even number of strands: caps
/// adjacent bottom pairs `(1,2), (3,4), ...` and the corresponding top
/// pairs.
pub fn plat_closure(w: &FramedBraidWord) -> Result<TangleDiagram> {
    let k = w.strands();
    if k % 2 != 0 {
        return Err(Error::OddEndpointCount(k));
    }
    let d = braid_to_tangle(w);
    let mut merger = EdgeMerger::new();
    for j in (1..=k).step_by(2) {
        merger.union(d.endpoint_edge(j), d.endpoint_edge(j + 1));
        // top positions j, j+1 are labels 2k+1-j, 2k-j
        merger.union(d.endpoint_edge(2 * k + 1 - j), d.endpoint_edge(2 * k - j));
    }
    let closed = merger.apply(&d, &[]);
    Ok(TangleDiagram::from_parts(vec![], closed.crossings, closed.closed_loops))
}

// ---------------------------------------------------------------------------
// Diagram language parser
// ---------------------------------------------------------------------------

/// Parses the line-oriented diagram language:
///
/// ```text
/// endpoints <2n>
/// loops <k>
/// arc <p>-<q>            # crossingless boundary-to-boundary arc
/// X(<e1>,<e2>,<e3>,<e4>) # crossing, CCW from incoming under-strand
/// edge <id> <p> [<q>]    # explicit boundary incidence(s) of edge <id>
/// ```
///
/// Statements may also be separated by `;`. `#` starts a comment.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram> {
    let mut endpoint_edges: Vec<Option<EdgeId>> = Vec::new();
    let mut crossings: Vec<[EdgeId; 4]> = Vec::new();
    let mut closed_loops = 0usize;
    let mut seen_endpoints = false;
    let mut max_edge: EdgeId = 0;
    let mut pending_arcs: Vec<(usize, usize, usize)> = Vec::new(); // (p, q, line)

    let err = |line: usize, msg: String| Error::Parse { line, msg };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        for stmt in raw.split(';') {
            let stmt = stmt.split('#').next().unwrap_or("").trim();
            if stmt.is_empty() {
                continue;
            }
            let mut parts = stmt.split_whitespace();
            let head = parts.next().unwrap();
            match head {
                "endpoints" => {
                    let count: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(line, "endpoints needs a count".into()))?;
                    if count % 2 != 0 {
                        return Err(Error::OddEndpointCount(count));
                    }
                    endpoint_edges = vec![None; count];
                    seen_endpoints = true;
                }
                "loops" => {
                    closed_loops = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(line, "loops needs a count".into()))?;
                }
                "arc" => {
                    let spec = parts
                        .next()
                        .ok_or_else(|| err(line, "arc needs <p>-<q>".into()))?;
                    let (p, q) = spec
                        .split_once('-')
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                        .ok_or_else(|| err(line, format!("bad arc spec `{spec}`")))?;
                    pending_arcs.push((p, q, line));
                }
                "edge" => {
                    let id: EdgeId = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(line, "edge needs an id".into()))?;
                    max_edge = max_edge.max(id);
                    let points: Vec<usize> = parts
                        .map(|s| s.parse().map_err(|_| err(line, format!("bad point `{s}`"))))
                        .collect::<Result<_>>()?;
                    if points.is_empty() || points.len() > 2 {
                        return Err(err(line, "edge takes one or two boundary points".into()));
                    }
                    for p in points {
                        attach(&mut endpoint_edges, p, id, line)?;
                    }
                }
                _ if head.starts_with("X(") || head.starts_with("X") => {
                    let inner = stmt
                        .strip_prefix('X')
                        .and_then(|s| s.trim().strip_prefix('('))
                        .and_then(|s| s.trim_end().strip_suffix(')'))
                        .ok_or_else(|| err(line, format!("bad crossing `{stmt}`")))?;
                    let ids: Vec<EdgeId> = inner
                        .split(',')
                        .map(|s| {
                            s.trim()
                                .parse()
                                .map_err(|_| err(line, format!("bad edge id `{}`", s.trim())))
                        })
                        .collect::<Result<_>>()?;
                    if ids.len() != 4 {
                        return Err(err(line, "crossing needs exactly 4 edges".into()));
                    }
                    for id in &ids {
                        max_edge = max_edge.max(*id);
                    }
                    crossings.push([ids[0], ids[1], ids[2], ids[3]]);
                }
                _ => return Err(err(line, format!("unknown statement `{head}`"))),
            }
        }
    }

    if !seen_endpoints {
        return Err(err(0, "missing `endpoints` declaration".into()));
    }
    for (p, q, line) in pending_arcs {
        max_edge += 1;
        let id = max_edge;
        attach(&mut endpoint_edges, p, id, line)?;
        attach(&mut endpoint_edges, q, id, line)?;
    }
    let endpoint_edges: Vec<EdgeId> = endpoint_edges
        .iter()
        .enumerate()
        .map(|(i, e)| e.ok_or(Error::BadEndpoint(i + 1, 0)))
        .collect::<Result<_>>()?;
    TangleDiagram::new(endpoint_edges, crossings, closed_loops)
}

fn attach(
    endpoint_edges: &mut [Option<EdgeId>],
    point: usize,
    id: EdgeId,
    line: usize,
) -> Result<()> {
    if point == 0 || point > endpoint_edges.len() {
        return Err(Error::Parse {
            line,
            msg: format!("boundary point {point} out of range 1..={}", endpoint_edges.len()),
        });
    }
    if endpoint_edges[point - 1].is_some() {
        return Err(Error::BadEndpoint(point, 2));
    }
    endpoint_edges[point - 1] = Some(id);
    Ok(())
}

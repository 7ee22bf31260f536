//! Curves on the thickened surface with the vertices removed, line fields and
//! winding numbers.
//!
//! A curve position is a *side*: a halfedge `h`, standing for the part of
//! the edge of `h` that lies in the disc around the vertex of `h`. Curves move
//! between sides by two kinds of elementary moves:
//!
//! - a *corner* `(h, next_ccw(h))` at a vertex, crossed counterclockwise
//!   from `h` to `next_ccw(h)` or clockwise back,
//! - a *crossing* of an internal edge from one of its sides to the other.
//!
//! Homotopy classes of paths are the elements of the free groupoid on these
//! moves, so the normal form of a curve is its freely reduced move sequence.
//!
//! Line fields are recorded relative to the canonical line field of the graph
//! by one integer weight per corner. A counterclockwise corner contributes
//! `1 + weight` to the winding number, a crossing from the lower to the upper
//! halfedge of its edge contributes `-1`, and inverse moves contribute the
//! negatives. The clockwise loop around an `m`-valent vertex therefore has
//! winding `-m` with respect to the canonical line field.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::ribbon_graph::{Contraction, EdgeId, EdgeKind, HalfEdge, RibbonGraph, Vertex};

/// One step of a [`Curve`] as written by a user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Cross an internal edge; `dir = 1` goes from its lower halfedge to its
    /// upper one, `dir = -1` the other way.
    Traverse { edge: EdgeId, dir: i8 },
    /// Starting on side `from` at `vertex`, pass `turns` corners,
    /// counterclockwise if positive.
    Turn { vertex: Vertex, from: HalfEdge, turns: i64 },
}

impl Step {
    pub fn reverse_on(&self, g: &RibbonGraph) -> Step {
        match *self {
            Step::Traverse { edge, dir } => Step::Traverse { edge, dir: -dir },
            Step::Turn { vertex, from, turns } => Step::Turn { vertex, from: g.rotate(from, turns), turns: -turns },
        }
    }
}

/// An elementary move of the free groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// The corner `(corner, next_ccw(corner))`; sign `1` goes counterclockwise
    /// from `corner`, sign `-1` comes back to it.
    Corner { corner: HalfEdge, sign: i8 },
    /// The edge with lower halfedge `lower`; `dir = 1` goes to the upper side.
    Cross { lower: HalfEdge, dir: i8 },
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::Corner { corner, sign } => Move::Corner { corner, sign: -sign },
            Move::Cross { lower, dir } => Move::Cross { lower, dir: -dir },
        }
    }

    pub fn source(self, g: &RibbonGraph) -> HalfEdge {
        match self {
            Move::Corner { corner, sign } if sign > 0 => corner,
            Move::Corner { corner, .. } => g.next_ccw(corner),
            Move::Cross { lower, dir } if dir > 0 => lower,
            Move::Cross { lower, .. } => g.tau(lower),
        }
    }

    pub fn target(self, g: &RibbonGraph) -> HalfEdge {
        self.inverse().source(g)
    }

    /// The move crossing from side `h` to the other side of its edge.
    pub fn cross_from(g: &RibbonGraph, h: HalfEdge) -> Move {
        let other = g.tau(h);
        if h < other {
            Move::Cross { lower: h, dir: 1 }
        } else {
            Move::Cross { lower: other, dir: -1 }
        }
    }
}

/// Appends `m`, cancelling it against the last move when they are inverse.
pub fn push_move(moves: &mut Vec<Move>, m: Move) {
    if moves.last() == Some(&m.inverse()) {
        moves.pop();
    } else {
        moves.push(m);
    }
}

pub fn reduce_moves(moves: impl IntoIterator<Item = Move>) -> Vec<Move> {
    let mut out = Vec::new();
    for m in moves {
        push_move(&mut out, m);
    }
    out
}

pub fn invert_moves(moves: &[Move]) -> Vec<Move> {
    moves.iter().rev().map(|m| m.inverse()).collect()
}

/// A combinatorial curve starting on the base edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub base: EdgeId,
    pub steps: Vec<Step>,
}

/// The lower side of an edge, where loops based at that edge are anchored.
pub fn anchor(base: EdgeId) -> HalfEdge {
    HalfEdge(base.0)
}

impl Curve {
    pub fn constant(base: EdgeId) -> Self {
        Self { base, steps: Vec::new() }
    }

    fn check_base(&self, g: &RibbonGraph) -> Result<HalfEdge> {
        match g.edge(self.base) {
            Some(e) => Ok(e.lower),
            None => Err(Error::BadCurve(format!("base {} is not an edge", self.base))),
        }
    }

    /// Follows the steps, checking that each one departs from the current
    /// side. Returns the start side and the unreduced moves.
    pub fn trace(&self, g: &RibbonGraph) -> Result<(HalfEdge, Vec<Move>)> {
        let a0 = self.check_base(g)?;
        let start = match self.steps.first() {
            None => a0,
            Some(Step::Turn { from, .. }) => *from,
            Some(Step::Traverse { edge, dir }) => {
                let e = g.edge(*edge).ok_or_else(|| Error::BadCurve(format!("{edge} is not an edge")))?;
                match (e.upper, *dir) {
                    (Some(_), 1) => e.lower,
                    (Some(upper), -1) => upper,
                    _ => return Err(Error::BadCurve(format!("cannot traverse edge {edge}"))),
                }
            }
        };
        if !g.contains(start) || g.edge_of(start) != self.base {
            return Err(Error::BadCurve("curve does not start on its base edge".into()));
        }
        let mut cur = start;
        let mut moves = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Traverse { edge, dir } => {
                    let e = g
                        .edge(edge)
                        .filter(|e| e.kind != EdgeKind::External)
                        .ok_or_else(|| Error::BadCurve(format!("step {i}: {edge} is not internal")))?;
                    let (from, to) = match dir {
                        1 => (e.lower, g.tau(e.lower)),
                        -1 => (g.tau(e.lower), e.lower),
                        _ => return Err(Error::BadCurve(format!("step {i}: direction must be 1 or -1"))),
                    };
                    if from != cur {
                        return Err(Error::BadCurve(format!(
                            "step {i}: traversal of {edge} departs from {from}, curve is at {cur}"
                        )));
                    }
                    moves.push(Move::Cross { lower: e.lower, dir });
                    cur = to;
                }
                Step::Turn { vertex, from, turns } => {
                    if from != cur {
                        return Err(Error::BadCurve(format!("step {i}: turn departs from {from}, curve is at {cur}")));
                    }
                    if !g.has_vertex(vertex) || g.vertex_of(from) != vertex {
                        return Err(Error::BadCurve(format!("step {i}: halfedge {from} is not at vertex {vertex}")));
                    }
                    if turns.unsigned_abs() > 1 << 20 {
                        return Err(Error::BadCurve(format!("step {i}: turn count too large")));
                    }
                    for _ in 0..turns.unsigned_abs() {
                        let m = if turns > 0 {
                            Move::Corner { corner: cur, sign: 1 }
                        } else {
                            Move::Corner { corner: g.prev_ccw(cur), sign: -1 }
                        };
                        cur = m.target(g);
                        moves.push(m);
                    }
                }
            }
        }
        Ok((start, moves))
    }

    pub fn end(&self, g: &RibbonGraph) -> Result<HalfEdge> {
        let (start, moves) = self.trace(g)?;
        Ok(moves.last().map_or(start, |m| m.target(g)))
    }

    pub fn is_closed(&self, g: &RibbonGraph) -> Result<bool> {
        Ok(g.edge_of(self.end(g)?) == self.base)
    }

    /// The reduced move sequence of a closed curve, as a loop at the lower
    /// side of the base edge. A crossing of the base edge is added at either
    /// end when the curve starts or ends on the upper side.
    pub fn anchored_moves(&self, g: &RibbonGraph) -> Result<Vec<Move>> {
        let (start, moves) = self.trace(g)?;
        let a0 = anchor(self.base);
        let end = moves.last().map_or(start, |m| m.target(g));
        if g.edge_of(end) != self.base {
            return Err(Error::NotALoop);
        }
        let mut out = Vec::with_capacity(moves.len() + 2);
        if start != a0 {
            out.push(Move::cross_from(g, a0));
        }
        for m in moves {
            push_move(&mut out, m);
        }
        if end != a0 {
            push_move(&mut out, Move::cross_from(g, end));
        }
        Ok(out)
    }

    /// Rebuilds a curve from moves departing from `start`, merging
    /// consecutive corners into turns.
    pub fn from_moves(g: &RibbonGraph, base: EdgeId, start: HalfEdge, moves: &[Move]) -> Curve {
        let mut steps: Vec<Step> = Vec::new();
        let mut cur = start;
        for &m in moves {
            match m {
                Move::Cross { lower, dir } => steps.push(Step::Traverse { edge: EdgeId(lower.0), dir }),
                Move::Corner { sign, .. } => {
                    let s = i64::from(sign);
                    match steps.last_mut() {
                        Some(Step::Turn { turns, .. }) if turns.signum() == s => *turns += s,
                        _ => steps.push(Step::Turn { vertex: g.vertex_of(cur), from: cur, turns: s }),
                    }
                }
            }
            cur = m.target(g);
        }
        Curve { base, steps }
    }

    /// The homotopy normal form of a closed curve.
    pub fn normal_form(&self, g: &RibbonGraph) -> Result<Curve> {
        let moves = self.anchored_moves(g)?;
        Ok(Curve::from_moves(g, self.base, anchor(self.base), &moves))
    }

    pub fn reverse(&self, g: &RibbonGraph) -> Curve {
        Curve { base: self.base, steps: self.steps.iter().rev().map(|s| s.reverse_on(g)).collect() }
    }

    /// The loop running through `self` first and then `next`.
    pub fn then(&self, g: &RibbonGraph, next: &Curve) -> Result<Curve> {
        if self.base != next.base {
            return Err(Error::BadCurve("loops have different base edges".into()));
        }
        let mut moves = self.anchored_moves(g)?;
        for m in next.anchored_moves(g)? {
            push_move(&mut moves, m);
        }
        Ok(Curve::from_moves(g, self.base, anchor(self.base), &moves))
    }

    /// Homotopy equality of closed curves.
    pub fn homotopic(&self, g: &RibbonGraph, other: &Curve) -> Result<bool> {
        Ok(self.base == other.base && self.anchored_moves(g)? == other.anchored_moves(g)?)
    }
}

/// Corner weights relative to the canonical line field; the corner
/// `(h, next_ccw(h))` is keyed by `h`. Missing corners have weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineField {
    weights: BTreeMap<HalfEdge, i64>,
}

impl LineField {
    /// The canonical line field of the graph.
    pub fn canonical() -> Self {
        Self::default()
    }

    pub fn from_weights(weights: impl IntoIterator<Item = (HalfEdge, i64)>) -> Self {
        let weights = weights.into_iter().filter(|&(_, w)| w != 0).collect();
        Self { weights }
    }

    pub fn weight(&self, corner: HalfEdge) -> i64 {
        self.weights.get(&corner).copied().unwrap_or(0)
    }

    pub fn set(&mut self, corner: HalfEdge, w: i64) {
        if w == 0 {
            self.weights.remove(&corner);
        } else {
            self.weights.insert(corner, w);
        }
    }

    /// The nonzero weights.
    pub fn weights(&self) -> &BTreeMap<HalfEdge, i64> {
        &self.weights
    }

    pub fn check(&self, g: &RibbonGraph) -> Result<()> {
        match self.weights.keys().find(|h| !g.contains(**h)) {
            Some(h) => Err(Error::BadLineField(format!("{h} is not a halfedge"))),
            None => Ok(()),
        }
    }

    /// Adds the integer combination `sum c_h * delta_h` of corner weights.
    pub fn shifted(&self, delta: &BTreeMap<HalfEdge, i64>) -> Self {
        let mut out = self.clone();
        for (&h, &d) in delta {
            out.set(h, out.weight(h) + d);
        }
        out
    }
}

/// Winding of a move sequence with respect to the canonical line field.
pub fn canonical_winding_of(moves: &[Move]) -> i64 {
    moves
        .iter()
        .map(|m| match *m {
            Move::Corner { sign, .. } => i64::from(sign),
            Move::Cross { dir, .. } => -i64::from(dir),
        })
        .sum()
}

/// Signed number of times each corner is crossed.
pub fn corner_counts(moves: &[Move]) -> BTreeMap<HalfEdge, i64> {
    let mut counts = BTreeMap::new();
    for m in moves {
        if let Move::Corner { corner, sign } = *m {
            *counts.entry(corner).or_insert(0) += i64::from(sign);
        }
    }
    counts.retain(|_, c| *c != 0);
    counts
}

/// The pairing of the corner weights of `l` with the crossing counts.
pub fn weight_pairing(moves: &[Move], l: &LineField) -> i64 {
    corner_counts(moves).iter().map(|(&h, &c)| c * l.weight(h)).sum()
}

pub fn winding_of(moves: &[Move], l: &LineField) -> i64 {
    canonical_winding_of(moves) + weight_pairing(moves, l)
}

/// Winding number of a closed curve.
pub fn winding(g: &RibbonGraph, c: &Curve, l: &LineField) -> Result<i64> {
    l.check(g)?;
    Ok(winding_of(&c.anchored_moves(g)?, l))
}

/// Generating loop of the fundamental group of the thickened surface with
/// the vertices removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LoopLabel {
    /// One clockwise turn around a vertex.
    Vertex(Vertex),
    /// The cycle closed by an internal edge outside the spanning tree.
    Cycle(EdgeId),
}

/// A free basis of loops based at the lower side of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopBasis {
    pub base: EdgeId,
    pub loops: Vec<(LoopLabel, Curve)>,
}

impl LoopBasis {
    pub fn vertex_loops(&self) -> impl Iterator<Item = (Vertex, &Curve)> {
        self.loops.iter().filter_map(|(l, c)| match l {
            LoopLabel::Vertex(v) => Some((*v, c)),
            LoopLabel::Cycle(_) => None,
        })
    }

    pub fn cycle_loops(&self) -> impl Iterator<Item = (EdgeId, &Curve)> {
        self.loops.iter().filter_map(|(l, c)| match l {
            LoopLabel::Cycle(e) => Some((*e, c)),
            LoopLabel::Vertex(_) => None,
        })
    }

    pub fn get(&self, label: LoopLabel) -> Option<&Curve> {
        self.loops.iter().find(|(l, _)| *l == label).map(|(_, c)| c)
    }
}

/// Paths from the anchor of a base edge to every side, along a breadth-first
/// spanning tree of the internal non-loop edges.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    base: EdgeId,
    root: Vertex,
    /// For each non-root vertex: the side it is entered from along the tree
    /// and the side of its parent the tree edge leaves from.
    parent: BTreeMap<Vertex, (HalfEdge, HalfEdge)>,
    tree_edges: BTreeSet<EdgeId>,
}

impl SpanningTree {
    pub fn new(g: &RibbonGraph, base: EdgeId) -> Result<Self> {
        if g.edge(base).is_none() {
            return Err(Error::BadArgument(format!("{base} is not an edge")));
        }
        let root = g.vertex_of(anchor(base));
        let mut parent = BTreeMap::new();
        let mut tree_edges = BTreeSet::new();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &h in g.rotation(v) {
                let k = g.tau(h);
                let w = g.vertex_of(k);
                if k != h && seen.insert(w) {
                    parent.insert(w, (k, h));
                    tree_edges.insert(g.edge_of(h));
                    queue.push_back(w);
                }
            }
        }
        Ok(Self { base, root, parent, tree_edges })
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.tree_edges.contains(&e)
    }

    /// The side on which the tree path enters vertex `v`.
    pub fn entry(&self, v: Vertex) -> HalfEdge {
        match self.parent.get(&v) {
            Some(&(entry, _)) => entry,
            None => anchor(self.base),
        }
    }

    /// Steps from the anchor to side `x`.
    pub fn path_to(&self, g: &RibbonGraph, x: HalfEdge) -> Vec<Step> {
        let v = g.vertex_of(x);
        let entry = self.entry(v);
        let mut steps = match self.parent.get(&v) {
            Some(&(entry, exit)) => {
                let mut s = self.path_to(g, exit);
                s.push(Step::Traverse { edge: g.edge_of(exit), dir: if exit < entry { 1 } else { -1 } });
                s
            }
            None => {
                debug_assert_eq!(v, self.root);
                Vec::new()
            }
        };
        let m = g.valency(v) as i64;
        let k = (g.slot(x) as i64 - g.slot(entry) as i64).rem_euclid(m);
        if k != 0 {
            steps.push(Step::Turn { vertex: v, from: entry, turns: k });
        }
        steps
    }
}

/// Generating loops based at the smallest edge.
pub fn generating_loops(g: &RibbonGraph) -> LoopBasis {
    let base = g.edges()[0].id;
    generating_loops_at(g, base).expect("smallest edge exists")
}

/// Generating loops based at `base`: one clockwise loop per vertex and one
/// loop per internal edge outside a spanning tree, in that order.
pub fn generating_loops_at(g: &RibbonGraph, base: EdgeId) -> Result<LoopBasis> {
    let tree = SpanningTree::new(g, base)?;
    let mut loops = Vec::new();
    for v in g.vertices() {
        let entry = tree.entry(v);
        let path = tree.path_to(g, entry);
        let mut steps = path.clone();
        steps.push(Step::Turn { vertex: v, from: entry, turns: -(g.valency(v) as i64) });
        steps.extend(path.iter().rev().map(|s| s.reverse_on(g)));
        loops.push((LoopLabel::Vertex(v), Curve { base, steps }));
    }
    for e in g.edges() {
        let Some(upper) = e.upper else { continue };
        if tree.contains_edge(e.id) {
            continue;
        }
        let mut steps = tree.path_to(g, e.lower);
        steps.push(Step::Traverse { edge: e.id, dir: 1 });
        steps.extend(tree.path_to(g, upper).iter().rev().map(|s| s.reverse_on(g)));
        loops.push((LoopLabel::Cycle(e.id), Curve { base, steps }));
    }
    Ok(LoopBasis { base, loops })
}

/// Whether every generating loop has even winding.
pub fn is_framing(g: &RibbonGraph, l: &LineField) -> Result<bool> {
    l.check(g)?;
    let basis = generating_loops(g);
    for (_, c) in &basis.loops {
        if winding(g, c, l)? % 2 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A line field, if one exists, with prescribed windings along the given
/// closed curves and prescribed weights on the `fixed` corners.
pub fn fit_line_field(
    g: &RibbonGraph,
    targets: &[(&Curve, i64)],
    fixed: &BTreeMap<HalfEdge, i64>,
) -> Result<Option<LineField>> {
    let free: Vec<HalfEdge> = g.halfedges().filter(|h| !fixed.contains_key(h)).collect();
    let index: BTreeMap<HalfEdge, usize> = free.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let base = LineField::from_weights(fixed.iter().map(|(&h, &w)| (h, w)));
    base.check(g)?;
    let mut rows = Vec::with_capacity(targets.len());
    let mut rhs = Vec::with_capacity(targets.len());
    for (c, target) in targets {
        let moves = c.anchored_moves(g)?;
        let mut row = vec![0i64; free.len()];
        for (h, n) in corner_counts(&moves) {
            if let Some(&i) = index.get(&h) {
                row[i] += n;
            }
        }
        rows.push(row);
        rhs.push(target - winding_of(&moves, &base));
    }
    if rows.is_empty() {
        return Ok(Some(base));
    }
    let a = if free.is_empty() { IntMatrix::zeros(rows.len(), 0) } else { IntMatrix::from_rows(&rows)? };
    Ok(a.solve(&rhs)?.map(|x| {
        let mut l = base;
        for (h, w) in free.iter().zip(x) {
            l.set(*h, w);
        }
        l
    }))
}

/// The framing with winding `-2` around every vertex and `0` along every
/// generating cycle.
pub fn standard_framing(g: &RibbonGraph) -> LineField {
    let basis = generating_loops(g);
    let targets: Vec<(&Curve, i64)> =
        basis.loops.iter().map(|(label, c)| (c, if matches!(label, LoopLabel::Vertex(_)) { -2 } else { 0 })).collect();
    fit_line_field(g, &targets, &BTreeMap::new())
        .ok()
        .flatten()
        .expect("vertex loops use disjoint corners and cycles are free")
}

impl Contraction {
    /// Moves of the original graph whose composite is the counterclockwise
    /// corner starting at `x` in the contracted graph.
    pub fn corner_moves(&self, x: HalfEdge) -> Vec<Move> {
        let g = &self.original;
        let run = self.corner_preimage(x);
        let mut moves = vec![Move::Corner { corner: run[0], sign: 1 }];
        for w in run.windows(2) {
            moves.push(Move::cross_from(g, g.tau(w[1])));
            moves.push(Move::Corner { corner: w[1], sign: 1 });
        }
        moves
    }

    fn check_base(&self, base: EdgeId) -> Result<()> {
        if base == self.edge {
            Err(Error::CurveCrossesEdge(self.edge))
        } else {
            Ok(())
        }
    }

    /// The anchored moves of a closed curve, carried to the contracted graph.
    /// Fails when the curve passes between the two endpoints of the
    /// contracted edge without crossing it.
    pub fn push_moves(&self, c: &Curve) -> Result<Vec<Move>> {
        self.check_base(c.base)?;
        let g = &self.original;
        let moves = c.anchored_moves(g)?;
        let mut out = Vec::with_capacity(moves.len());
        let mut i = 0;
        while i < moves.len() {
            let m = moves[i];
            let (source, target) = (m.source(g), m.target(g));
            if self.touches_edge(source) {
                return Err(Error::CurveCrossesEdge(self.edge));
            }
            if !self.touches_edge(target) {
                push_move(&mut out, m);
                i += 1;
                continue;
            }
            let (new_move, expected) = match m {
                Move::Corner { sign: 1, .. } => (Move::Corner { corner: source, sign: 1 }, self.corner_moves(source)),
                Move::Corner { .. } => {
                    let y = self.contracted.prev_ccw(source);
                    (Move::Corner { corner: y, sign: -1 }, invert_moves(&self.corner_moves(y)))
                }
                Move::Cross { .. } => return Err(Error::CurveCrossesEdge(self.edge)),
            };
            if moves.get(i..i + expected.len()) != Some(&expected[..]) {
                return Err(Error::CurveCrossesEdge(self.edge));
            }
            push_move(&mut out, new_move);
            i += expected.len();
        }
        Ok(out)
    }

    /// The image of a closed curve in the contracted graph, in normal form.
    pub fn push_curve(&self, c: &Curve) -> Result<Curve> {
        let moves = self.push_moves(c)?;
        Ok(Curve::from_moves(&self.contracted, c.base, anchor(c.base), &moves))
    }

    /// Anchored moves in the original graph of a closed curve on the
    /// contracted graph.
    pub fn lift_moves(&self, c: &Curve) -> Result<Vec<Move>> {
        self.check_base(c.base)?;
        let moves = c.anchored_moves(&self.contracted)?;
        let mut out = Vec::with_capacity(moves.len());
        for m in moves {
            let image = match m {
                Move::Corner { corner, sign } if self.contracted.vertex_of(corner) == self.merged => {
                    let run = self.corner_moves(corner);
                    if sign > 0 {
                        run
                    } else {
                        invert_moves(&run)
                    }
                }
                other => vec![other],
            };
            for x in image {
                push_move(&mut out, x);
            }
        }
        Ok(out)
    }

    /// A curve on the original graph whose image is `c`.
    pub fn lift_curve(&self, c: &Curve) -> Result<Curve> {
        let moves = self.lift_moves(c)?;
        Ok(Curve::from_moves(&self.original, c.base, anchor(c.base), &moves))
    }

    /// A line field on the original graph inducing the same weight pairing
    /// as `l` on every curve that survives contraction.
    ///
    /// Corners away from the merged vertex keep their weights. Each corner at
    /// the merged vertex spreads its weight over the original corners of its
    /// preimage, with the windings around the two endpoints prescribed by
    /// `endpoint_windings` (the pair for the kept and absorbed vertex).
    pub fn pull_back_line_field(&self, l: &LineField, endpoint_windings: (i64, i64)) -> Result<LineField> {
        l.check(&self.contracted)?;
        let g = &self.original;
        let merged_corners: Vec<HalfEdge> = self.contracted.rotation(self.merged).to_vec();
        let mut fixed = BTreeMap::new();
        for h in g.halfedges() {
            let v = g.vertex_of(h);
            if v != self.merged && v != self.absorbed {
                fixed.insert(h, l.weight(h));
            }
        }
        let local: Vec<HalfEdge> = g.rotation(self.merged).iter().chain(g.rotation(self.absorbed)).copied().collect();
        let index: BTreeMap<HalfEdge, usize> = local.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &x in &merged_corners {
            let mut row = vec![0i64; local.len()];
            for h in self.corner_preimage(x) {
                row[index[&h]] += 1;
            }
            rows.push(row);
            rhs.push(l.weight(x));
        }
        for (v, target) in [(self.merged, endpoint_windings.0), (self.absorbed, endpoint_windings.1)] {
            let mut row = vec![0i64; local.len()];
            for h in g.rotation(v) {
                row[index[h]] -= 1;
            }
            rows.push(row);
            rhs.push(target + g.valency(v) as i64);
        }
        let x = IntMatrix::from_rows(&rows)?
            .solve(&rhs)?
            .ok_or(Error::Internal("no line field restricts to the given one"))?;
        for (h, w) in local.iter().zip(x) {
            fixed.insert(*h, w);
        }
        Ok(LineField::from_weights(fixed))
    }
}

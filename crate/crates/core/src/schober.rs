//! Graph-parametrized perverse schobers, recorded through their transport
//! calculus.
//!
//! Every vertex `v` carries a cotwist symbol `T_v` and every halfedge `h` a
//! decoration word `S_h`. The clockwise elementary transport across the
//! corner `(h, next_ccw(h))`, from `next_ccw(h)` to `h`, is
//!
//! - `S_h * T_v * S_{next_ccw(h)}^-1` when `next_ccw(h)` is the seam of `v`,
//! - `S_h * [1] * S_{next_ccw(h)}^-1` otherwise.
//!
//! Counterclockwise steps are the inverses and crossing an edge is the
//! identity. A full clockwise turn around an `m`-valent vertex is thus
//! conjugate to `T_v[m-1]`. At a nonsingular vertex the cotwist is resolved
//! to `[-1]`, so the full turn is `[m-2]`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::curves::{
    canonical_winding_of, generating_loops, is_framing, weight_pairing, Curve, LineField, LoopLabel, Move,
};
use crate::error::{Error, Result};
use crate::ribbon_graph::{Contraction, EdgeId, EdgeKind, HalfEdge, RibbonGraph, Vertex};
use crate::word::{FunctorWord, Letter, RelationSet, Symbol};

/// The cotwist symbol used when none is given: `T(v3)` for vertex 3.
pub fn default_cotwist(v: Vertex) -> Symbol {
    Symbol::new(&format!("T(v{v})"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchoberDatum {
    graph: RibbonGraph,
    singular: BTreeSet<Vertex>,
    cotwists: BTreeMap<Vertex, Symbol>,
    decorations: BTreeMap<HalfEdge, FunctorWord>,
    relations: RelationSet,
}

impl SchoberDatum {
    /// # Errors
    /// `bad-schober` when a vertex or halfedge is unknown or two vertices
    /// share a cotwist symbol.
    pub fn new(
        graph: RibbonGraph,
        singular: impl IntoIterator<Item = Vertex>,
        cotwists: BTreeMap<Vertex, Symbol>,
        decorations: BTreeMap<HalfEdge, FunctorWord>,
        period: u64,
    ) -> Result<Self> {
        let singular: BTreeSet<Vertex> = singular.into_iter().collect();
        if let Some(v) = singular.iter().chain(cotwists.keys()).find(|v| !graph.has_vertex(**v)) {
            return Err(Error::BadSchober(format!("unknown vertex {v}")));
        }
        if let Some(h) = decorations.keys().find(|h| !graph.contains(**h)) {
            return Err(Error::BadSchober(format!("unknown halfedge {h}")));
        }
        let mut all = BTreeMap::new();
        for v in graph.vertices() {
            let t = cotwists.get(&v).cloned().unwrap_or_else(|| default_cotwist(v));
            all.insert(v, t);
        }
        let distinct: BTreeSet<&Symbol> = all.values().collect();
        if distinct.len() != all.len() {
            return Err(Error::BadSchober("vertices share a cotwist symbol".into()));
        }
        let mut relations = RelationSet::with_period(period);
        for (v, t) in &all {
            if !singular.contains(v) {
                relations.resolve(t.clone(), -1);
            }
        }
        let decorations = decorations.into_iter().filter(|(_, w)| !w.is_identity()).collect();
        Ok(Self { graph, singular, cotwists: all, decorations, relations })
    }

    /// No singularities, trivial decorations, no period.
    pub fn nonsingular(graph: RibbonGraph) -> Self {
        Self::new(graph, [], BTreeMap::new(), BTreeMap::new(), 0).expect("defaults are valid")
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn singular(&self) -> &BTreeSet<Vertex> {
        &self.singular
    }

    pub fn is_singular(&self, v: Vertex) -> bool {
        self.singular.contains(&v)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.singular.is_empty()
    }

    pub fn cotwist(&self, v: Vertex) -> &Symbol {
        &self.cotwists[&v]
    }

    pub fn cotwists(&self) -> &BTreeMap<Vertex, Symbol> {
        &self.cotwists
    }

    pub fn decoration(&self, h: HalfEdge) -> FunctorWord {
        self.decorations.get(&h).cloned().unwrap_or_default()
    }

    /// The non-identity decorations.
    pub fn decorations(&self) -> &BTreeMap<HalfEdge, FunctorWord> {
        &self.decorations
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn period(&self) -> u64 {
        self.relations.period()
    }

    pub fn with_decoration(mut self, h: HalfEdge, w: FunctorWord) -> Result<Self> {
        if !self.graph.contains(h) {
            return Err(Error::BadSchober(format!("unknown halfedge {h}")));
        }
        if w.is_identity() {
            self.decorations.remove(&h);
        } else {
            self.decorations.insert(h, w);
        }
        Ok(self)
    }

    pub fn with_period(mut self, period: u64) -> Self {
        self.relations.set_period(period);
        self
    }

    /// Replaces `S_h` by `S_h * w` for every halfedge at `v`. Transports are
    /// unchanged when `T_v` is resolved.
    pub fn redecorate_vertex(&self, v: Vertex, w: &FunctorWord) -> Result<Self> {
        let mut out = self.clone();
        for &h in self.graph.rotation(v) {
            out = out.with_decoration(h, self.decoration(h).compose(w))?;
        }
        Ok(out)
    }

    /// Replaces `S_h` by `phi * S_h` on both halfedges of edge `e`. Loop
    /// transports based away from `e` are unchanged; those based at `e` are
    /// conjugated by `phi`.
    pub fn gauge_edge(&self, e: EdgeId, phi: &FunctorWord) -> Result<Self> {
        let edge = self.graph.edge(e).ok_or_else(|| Error::BadArgument(format!("{e} is not an edge")))?;
        let mut out = self.clone();
        for h in edge.halfedges() {
            out = out.with_decoration(h, phi.compose(&self.decoration(h)))?;
        }
        Ok(out)
    }

    /// The transport of a single move, before normalization.
    pub fn step_word(&self, m: Move) -> FunctorWord {
        match m {
            Move::Cross { .. } => FunctorWord::identity(),
            Move::Corner { corner, sign } => {
                let g = &self.graph;
                let next = g.next_ccw(corner);
                let middle = if g.slot(next) == 0 {
                    FunctorWord::generator(self.cotwist(g.vertex_of(corner)).clone())
                } else {
                    FunctorWord::shift_by(1)
                };
                let cw = self.decoration(corner).compose(&middle).compose(&self.decoration(next).inverse());
                if sign < 0 {
                    cw
                } else {
                    cw.inverse()
                }
            }
        }
    }

    /// Composite transport of moves, the first move acting first.
    pub fn transport_moves(&self, moves: &[Move]) -> FunctorWord {
        let raw = moves.iter().fold(FunctorWord::identity(), |acc, &m| self.step_word(m).compose(&acc));
        self.relations.normal_form(&raw)
    }

    /// Transport along a curve, open or closed, in normal form.
    pub fn transport(&self, c: &Curve) -> Result<FunctorWord> {
        let (_, moves) = c.trace(&self.graph)?;
        Ok(self.transport_moves(&moves))
    }

    fn vertex_winding(&self, v: Vertex, l: &LineField) -> i64 {
        let g = &self.graph;
        -(g.valency(v) as i64) - g.rotation(v).iter().map(|&h| l.weight(h)).sum::<i64>()
    }

    /// Checks that `l` is a framing and winds by exactly `-2` around every
    /// nonsingular vertex, so that the corrected transport is trivial there.
    pub fn check_framing(&self, l: &LineField) -> Result<()> {
        if !is_framing(&self.graph, l)? {
            return Err(Error::OddWindingLineField);
        }
        match self.graph.vertices().find(|&v| !self.is_singular(v) && self.vertex_winding(v, l) != -2) {
            Some(v) => Err(Error::FramingNotExtendable(v)),
            None => Ok(()),
        }
    }

    fn corrected(&self, l: &LineField, c: &Curve, sign: i64) -> Result<FunctorWord> {
        self.check_framing(l)?;
        let moves = c.anchored_moves(&self.graph)?;
        // canonical winding minus framed winding is minus the weight pairing
        let correction = -weight_pairing(&moves, l);
        Ok(self.relations.normal_form(&self.transport_moves(&moves).then_shift(sign * correction)))
    }

    /// Transport along a closed curve shifted by the winding of the canonical
    /// line field minus the winding of the framing `l`.
    pub fn monodromy(&self, l: &LineField, c: &Curve) -> Result<FunctorWord> {
        self.corrected(l, c, 1)
    }

    /// [`SchoberDatum::monodromy`] with the correction applied with the wrong
    /// sign; exists so tests can confirm the sign is pinned down.
    #[doc(hidden)]
    pub fn monodromy_with_flipped_correction(&self, l: &LineField, c: &Curve) -> Result<FunctorWord> {
        self.corrected(l, c, -1)
    }

    pub fn monodromy_rep(&self, l: &LineField) -> Result<Vec<(LoopLabel, FunctorWord)>> {
        generating_loops(&self.graph).loops.iter().map(|(label, c)| Ok((*label, self.monodromy(l, c)?))).collect()
    }

    /// Monodromy without a framing, available when the stalk period divides
    /// 2: the transport shifted by the canonical winding.
    pub fn canonical_periodic_monodromy(&self, c: &Curve) -> Result<FunctorWord> {
        if !matches!(self.period(), 1 | 2) {
            return Err(Error::FramingRequired);
        }
        let moves = c.anchored_moves(&self.graph)?;
        let w = self.transport_moves(&moves).then_shift(canonical_winding_of(&moves));
        Ok(self.relations.normal_form(&w))
    }

    /// Clockwise step words around `v` in the ccw order starting at `first`:
    /// entry `k` goes from the side `k + 1` places after `first` to the side
    /// `k` places after it.
    fn ring_words(&self, v: Vertex, first: HalfEdge) -> (Vec<HalfEdge>, Vec<FunctorWord>) {
        let g = &self.graph;
        let m = g.valency(v) as i64;
        let order: Vec<HalfEdge> = (0..m).map(|k| g.rotate(first, k)).collect();
        let words = order
            .iter()
            .map(|&h| self.relations.normal_form(&self.step_word(Move::Corner { corner: h, sign: -1 })))
            .collect();
        (order, words)
    }

    /// The same schober with the seam of `v` moved to `h`; decorations at `v`
    /// are refitted so that every transport is unchanged.
    pub fn regauge(&self, v: Vertex, h: HalfEdge) -> Result<Self> {
        let graph = self.graph.with_seam(v, h)?;
        let (order, words) = self.ring_words(v, h);
        let fitted = fit_ring(&words, self.cotwist(v), self.is_singular(v), self.decoration(h), &self.relations)?;
        let mut out = Self { graph, ..self.clone() };
        for (h, d) in order.into_iter().zip(fitted) {
            out = out.with_decoration(h, d)?;
        }
        Ok(out)
    }

    /// The schober induced on the graph with edge `e` contracted.
    ///
    /// Decorations at the merged vertex are solved for so that the transport
    /// along every curve equals the transport along its image.
    pub fn pushforward_contract(&self, e: EdgeId) -> Result<Pushforward> {
        let edge = self.graph.edge(e).ok_or(Error::NotContractible(e))?;
        match edge.kind {
            EdgeKind::Loop => return Err(Error::LoopEdge(e)),
            EdgeKind::External => return Err(Error::NotContractible(e)),
            EdgeKind::Internal => {}
        }
        let contraction = self.graph.contract(e)?;
        let (v, w) = (contraction.merged, contraction.absorbed);
        if self.is_singular(v) && self.is_singular(w) {
            return Err(Error::EdgeJoinsTwoSingularities(e));
        }
        let singular_end = [v, w].into_iter().find(|&x| self.is_singular(x));
        let cotwist = self.cotwist(singular_end.unwrap_or(v)).clone();

        let h = &contraction.contracted;
        let order = h.rotation(v).to_vec();
        let words: Vec<FunctorWord> = order
            .iter()
            .map(|&x| {
                let run = crate::curves::invert_moves(&contraction.corner_moves(x));
                self.transport_moves(&run)
            })
            .collect();
        let fitted = fit_ring(&words, &cotwist, singular_end.is_some(), self.decoration(order[0]), &self.relations)?;

        let mut cotwists = self.cotwists.clone();
        cotwists.remove(&w);
        cotwists.insert(v, cotwist);
        let mut singular: BTreeSet<Vertex> = self.singular.clone();
        singular.remove(&w);
        if singular_end.is_some() {
            singular.insert(v);
        }
        let mut decorations: BTreeMap<HalfEdge, FunctorWord> = self
            .decorations
            .iter()
            .filter(|(x, _)| h.contains(**x))
            .map(|(&x, d)| (x, self.relations.normal_form(d)))
            .collect();
        for (x, d) in order.into_iter().zip(fitted) {
            decorations.insert(x, d);
        }
        let mut relations = RelationSet::with_period(self.period());
        for (x, t) in &cotwists {
            if !singular.contains(x) {
                relations.resolve(t.clone(), -1);
            }
        }
        let decorations = decorations.into_iter().filter(|(_, d)| !d.is_identity()).collect();
        let schober = Self { graph: h.clone(), singular, cotwists, decorations, relations };
        Ok(Pushforward { schober, contraction, singular_end })
    }
}

/// Solves for decorations `D_0..D_{M-1}` around one vertex with cotwist `t`
/// such that the clockwise step words are the given `words`:
/// `D_k [1] D_{k+1}^-1 = words[k]` for `k < M - 1` and
/// `D_{M-1} t D_0^-1 = words[M - 1]`.
fn fit_ring(
    words: &[FunctorWord],
    t: &Symbol,
    singular: bool,
    preferred: FunctorWord,
    rel: &RelationSet,
) -> Result<Vec<FunctorWord>> {
    let m = words.len();
    let total = rel.normal_form(&words.iter().fold(FunctorWord::identity(), |acc, w| acc.compose(w)));
    let d0 = if singular {
        let letters = total.letters();
        let j = letters.len() / 2;
        let middle_ok = letters.len() % 2 == 1 && letters[j] == Letter::new(t.clone(), 1);
        let prefix = FunctorWord::from_letters(0, letters[..j].iter().cloned());
        let expected = prefix.conjugate(&FunctorWord::generator(t.clone()).then_shift(m as i64 - 1));
        if !middle_ok || !rel.equal(&expected, &total) {
            return Err(Error::Internal("loop transport is not a conjugate of the cotwist"));
        }
        prefix
    } else {
        if !rel.equal(&total, &FunctorWord::shift_by(m as i64 - 2)) {
            return Err(Error::Internal("loop transport around a nonsingular vertex is not a shift"));
        }
        preferred
    };
    let mut out = Vec::with_capacity(m);
    out.push(rel.normal_form(&d0));
    for k in 0..m - 1 {
        let next = words[k].inverse().compose(&out[k]).then_shift(1);
        out.push(rel.normal_form(&next));
    }
    let seam = out[m - 1].compose(&FunctorWord::generator(t.clone())).compose(&out[0].inverse());
    if !rel.equal(&seam, &words[m - 1]) {
        return Err(Error::Internal("seam equation fails after fitting"));
    }
    Ok(out)
}

/// A contracted schober together with the contraction it came from.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub schober: SchoberDatum,
    pub contraction: Contraction,
    singular_end: Option<Vertex>,
}

impl Pushforward {
    pub fn push_curve(&self, c: &Curve) -> Result<Curve> {
        self.contraction.push_curve(c)
    }

    /// A framing of the original graph matching the framing `l` of the
    /// contracted graph on every surviving curve.
    pub fn pull_back_framing(&self, l: &LineField) -> Result<LineField> {
        self.schober.check_framing(l)?;
        let c = &self.contraction;
        let merged_winding = self.schober.vertex_winding(c.merged, l);
        let targets = match self.singular_end {
            Some(s) if s == c.merged => (merged_winding, -2),
            Some(_) => (-2, merged_winding),
            None => (-2, -2),
        };
        c.pull_back_line_field(l, targets)
    }
}

fn same_shape(s1: &SchoberDatum, s2: &SchoberDatum) -> bool {
    s1.graph == s2.graph && s1.relations == s2.relations
}

/// A word `W` with `W g_i W^-1 = h_i` for all `i`, comparing letters only.
pub fn simultaneous_conjugator(pairs: &[(FunctorWord, FunctorWord)]) -> Option<FunctorWord> {
    let strip = |w: &FunctorWord| FunctorWord::from_letters(0, w.letters().iter().cloned());
    let pairs: Vec<(FunctorWord, FunctorWord)> = pairs.iter().map(|(g, h)| (strip(g), strip(h))).collect();
    let Some((g, h)) = pairs.iter().find(|(g, _)| !g.is_identity()) else {
        return pairs.iter().all(|(_, h)| h.is_identity()).then(FunctorWord::identity);
    };
    let (a, gc) = g.cyclic_reduction();
    let (b, hc) = h.cyclic_reduction();
    let n = gc.letters().len();
    if hc.letters().len() != n {
        return None;
    }
    let r = (0..n).find(|&r| (0..n).all(|i| gc.letters()[(i + r) % n] == hc.letters()[i]))?;
    // gc = u v and hc = v u with |u| = r, so u^-1 conjugates gc to hc
    let x0 = FunctorWord::from_letters(0, gc.letters()[..r].iter().cloned()).inverse();
    let (root, _) = gc.primitive_root();
    let bound = pairs.iter().map(|(g, h)| g.letters().len() + h.letters().len()).sum::<usize>() as i64 + 2;
    let works = |w: &FunctorWord| pairs.iter().all(|(g, h)| w.conjugate(g) == *h);
    (0..=bound)
        .flat_map(|k| [k, -k])
        .map(|k| b.compose(&x0).compose(&root.pow(k)).compose(&a.inverse()))
        .find(|w| works(w))
}

/// Whether two nonsingular schobers on the same graph have monodromy
/// representations that agree up to one simultaneous conjugation.
pub fn nonsingular_equiv(s1: &SchoberDatum, s2: &SchoberDatum, l: &LineField) -> Result<bool> {
    if !s1.is_nonsingular() || !s2.is_nonsingular() {
        return Err(Error::NotNonsingular);
    }
    if !same_shape(s1, s2) {
        return Err(Error::Incompatible);
    }
    let r1 = s1.monodromy_rep(l)?;
    let r2 = s2.monodromy_rep(l)?;
    if r1.iter().zip(&r2).any(|((_, g), (_, h))| g.shift() != h.shift()) {
        return Ok(false);
    }
    let pairs: Vec<_> = r1.into_iter().zip(r2).map(|((_, g), (_, h))| (g, h)).collect();
    Ok(simultaneous_conjugator(&pairs).is_some())
}

/// Per-vertex signs `d_v` such that `d_v * (-1)^slot` labels the halfedges
/// with the two halfedges of each internal edge labelled oppositely.
fn alternating_labels(g: &RibbonGraph) -> Option<BTreeMap<Vertex, i8>> {
    let parity = |h: HalfEdge| if g.slot(h).is_multiple_of(2) { 1i8 } else { -1 };
    let mut delta: BTreeMap<Vertex, i8> = BTreeMap::new();
    for start in g.vertices() {
        if delta.contains_key(&start) {
            continue;
        }
        delta.insert(start, 1);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &h in g.rotation(v) {
                let k = g.tau(h);
                if k == h {
                    continue;
                }
                let w = g.vertex_of(k);
                // d_v p(h) = -d_w p(k)
                let want = -delta[&v] * parity(h) * parity(k);
                match delta.get(&w) {
                    Some(&d) if d != want => return None,
                    Some(_) => {}
                    None => {
                        delta.insert(w, want);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(delta)
}

fn first_odd_vertex(g: &RibbonGraph) -> Option<Vertex> {
    g.vertices().find(|&v| g.valency(v) % 2 == 1)
}

/// Whether the halfedges can be labelled in/out, alternating around every
/// vertex, with the two halfedges of each internal edge labelled oppositely.
pub fn is_orientable(g: &RibbonGraph) -> Result<bool> {
    if let Some(v) = first_odd_vertex(g) {
        return Err(Error::OddValency(v));
    }
    Ok(alternating_labels(g).is_some())
}

/// Signs `e_v * (-1)^i` on the halfedge in slot `i` (counted from 1) such
/// that the two halfedges of every internal edge get opposite signs.
///
/// For odd `n` all `e_v` are `+1` and the upper halfedge of each edge whose
/// ends would agree is flipped, so a solution always exists. For even `n` a
/// solution exists iff the graph is orientable; odd valency gives `None`.
pub fn gluing_sign_solve(g: &RibbonGraph, n: i64) -> Option<BTreeMap<HalfEdge, i8>> {
    let base = |h: HalfEdge, e: i8| if g.slot(h).is_multiple_of(2) { -e } else { e };
    if n.rem_euclid(2) == 1 {
        let mut signs: BTreeMap<HalfEdge, i8> = g.halfedges().map(|h| (h, base(h, 1))).collect();
        for e in g.edges() {
            if let Some(upper) = e.upper {
                if signs[&e.lower] == signs[&upper] {
                    signs.insert(upper, -signs[&upper]);
                }
            }
        }
        return Some(signs);
    }
    if first_odd_vertex(g).is_some() {
        return None;
    }
    let delta = alternating_labels(g)?;
    Some(g.halfedges().map(|h| (h, base(h, delta[&g.vertex_of(h)]))).collect())
}

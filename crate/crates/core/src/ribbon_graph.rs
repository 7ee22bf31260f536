//! Ribbon graphs: halfedges, the edge involution and counterclockwise cyclic
//! orders at each vertex.
//!
//! A [`RibbonGraph`] is always valid: connected, with an honest involution and
//! one cyclic order per vertex. Unchecked input is described by [`GraphData`]
//! and checked with [`validate`], which reports every violation it finds.
//!
//! Each vertex stores its cyclic order as a list. The first entry of the list
//! is the *seam* of the vertex; the schober module places the cotwist on the
//! clockwise step out of the seam.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

/// An edge, named by the smaller of its halfedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Internal,
    External,
    Loop,
}

/// A `tau`-orbit of halfedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub lower: HalfEdge,
    /// The second halfedge, `None` for external edges.
    pub upper: Option<HalfEdge>,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn halfedges(&self) -> impl Iterator<Item = HalfEdge> {
        core::iter::once(self.lower).chain(self.upper)
    }
}

/// Unchecked graph description, mirroring the JSON graph format.
///
/// Halfedges that appear in no `tau` pair are external. A pair `(h, h)` also
/// marks `h` as external.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphData {
    pub halfedges: Vec<HalfEdge>,
    pub tau: Vec<(HalfEdge, HalfEdge)>,
    /// Counterclockwise order of the halfedges at each vertex.
    pub vertices: Vec<(Vertex, Vec<HalfEdge>)>,
}

/// A violated ribbon graph invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    EmptyGraph,
    DuplicateHalfEdge(HalfEdge),
    UnknownHalfEdge(HalfEdge),
    /// The halfedge occurs in two incompatible `tau` pairs.
    TauNotInvolution(HalfEdge),
    /// The vertex carries more than one cyclic order.
    CyclicOrderSplit(Vertex),
    /// The halfedge occurs more than once among the cyclic orders.
    CyclicOrderConflict(HalfEdge),
    HalfEdgeWithoutVertex(HalfEdge),
    ZeroValency(Vertex),
    Disconnected,
}

impl Diagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::EmptyGraph => "empty-graph",
            Diagnostic::DuplicateHalfEdge(_) => "duplicate-halfedge",
            Diagnostic::UnknownHalfEdge(_) => "unknown-halfedge",
            Diagnostic::TauNotInvolution(_) => "tau-not-involution",
            Diagnostic::CyclicOrderSplit(_) => "cyclic-order-split",
            Diagnostic::CyclicOrderConflict(_) => "cyclic-order-conflict",
            Diagnostic::HalfEdgeWithoutVertex(_) => "halfedge-without-vertex",
            Diagnostic::ZeroValency(_) => "zero-valency",
            Diagnostic::Disconnected => "disconnected",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyGraph => write!(f, "graph has no vertices"),
            Diagnostic::DuplicateHalfEdge(h) => write!(f, "halfedge {h} is listed twice"),
            Diagnostic::UnknownHalfEdge(h) => write!(f, "halfedge {h} is not declared"),
            Diagnostic::TauNotInvolution(h) => {
                write!(f, "halfedge {h} is paired inconsistently, tau is not an involution")
            }
            Diagnostic::CyclicOrderSplit(v) => {
                write!(f, "vertex {v} carries more than one cyclic order")
            }
            Diagnostic::CyclicOrderConflict(h) => {
                write!(f, "halfedge {h} occurs in more than one cyclic order slot")
            }
            Diagnostic::HalfEdgeWithoutVertex(h) => write!(f, "halfedge {h} is not attached to a vertex"),
            Diagnostic::ZeroValency(v) => write!(f, "vertex {v} has no halfedges"),
            Diagnostic::Disconnected => write!(f, "graph is not connected"),
        }
    }
}

/// Checks every ribbon graph invariant. An empty result means the data
/// describes a valid graph.
pub fn validate(data: &GraphData) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut declared = BTreeSet::new();
    for &h in &data.halfedges {
        if !declared.insert(h) {
            out.push(Diagnostic::DuplicateHalfEdge(h));
        }
    }
    if data.vertices.is_empty() {
        out.push(Diagnostic::EmptyGraph);
    }

    let mut partner: BTreeMap<HalfEdge, HalfEdge> = BTreeMap::new();
    let mut broken = BTreeSet::new();
    for &(x, y) in &data.tau {
        for h in [x, y] {
            if !declared.contains(&h) && broken.insert(h) {
                out.push(Diagnostic::UnknownHalfEdge(h));
            }
        }
        for (h, k) in [(x, y), (y, x)] {
            if let Some(&old) = partner.get(&h) {
                if old != k && broken.insert(h) {
                    out.push(Diagnostic::TauNotInvolution(h));
                }
            } else {
                partner.insert(h, k);
            }
        }
    }

    let mut seen_vertex = BTreeSet::new();
    let mut placed = BTreeSet::new();
    for (v, ccw) in &data.vertices {
        if !seen_vertex.insert(*v) {
            out.push(Diagnostic::CyclicOrderSplit(*v));
        }
        if ccw.is_empty() {
            out.push(Diagnostic::ZeroValency(*v));
        }
        for &h in ccw {
            if !declared.contains(&h) {
                if broken.insert(h) {
                    out.push(Diagnostic::UnknownHalfEdge(h));
                }
            } else if !placed.insert(h) {
                out.push(Diagnostic::CyclicOrderConflict(h));
            }
        }
    }
    for &h in &declared {
        if !placed.contains(&h) {
            out.push(Diagnostic::HalfEdgeWithoutVertex(h));
        }
    }

    if out.is_empty() && !is_connected(data, &partner) {
        out.push(Diagnostic::Disconnected);
    }
    out
}

fn is_connected(data: &GraphData, partner: &BTreeMap<HalfEdge, HalfEdge>) -> bool {
    let owner: BTreeMap<HalfEdge, usize> =
        data.vertices.iter().enumerate().flat_map(|(i, (_, ccw))| ccw.iter().map(move |&h| (h, i))).collect();
    let n = data.vertices.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for h in &data.vertices[i].1 {
            if let Some(k) = partner.get(h) {
                let j = owner[k];
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Objects and arrows of the exit path category of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExitPathPresentation {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    /// One arrow `vertex -> edge` per halfedge; a loop contributes two.
    pub arrows: Vec<ExitArrow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitArrow {
    pub halfedge: HalfEdge,
    pub source: Vertex,
    pub target: EdgeId,
}

impl ExitPathPresentation {
    pub fn object_count(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }
}

/// Topological data of the thickened surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDatum {
    pub genus: u32,
    /// Orbits of `h -> next_ccw(tau(h))`, external halfedges fixed by `tau`.
    pub boundary_walks: Vec<Vec<HalfEdge>>,
    pub euler_char: i64,
}

/// A marked surface to compare a graph against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceTarget {
    pub genus: i64,
    /// Number of marked points on each boundary component.
    pub marked: Vec<i64>,
}

/// Result of contracting one edge.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub original: RibbonGraph,
    pub contracted: RibbonGraph,
    pub edge: EdgeId,
    /// Halfedge of the contracted edge at the surviving vertex.
    pub near: HalfEdge,
    /// Halfedge of the contracted edge at the absorbed vertex.
    pub far: HalfEdge,
    pub merged: Vertex,
    pub absorbed: Vertex,
    /// Where each surviving halfedge went. Ids are kept, so this is the
    /// identity on everything except the two removed halfedges.
    pub halfedge_map: BTreeMap<HalfEdge, HalfEdge>,
}

impl Contraction {
    pub fn touches_edge(&self, h: HalfEdge) -> bool {
        h == self.near || h == self.far
    }

    /// The counterclockwise corners of the original graph whose composite is
    /// the counterclockwise corner starting at `h` in the contracted graph.
    ///
    /// Corners away from the merged vertex map to themselves. At the merged
    /// vertex a corner may run through the contracted edge, possibly several
    /// times when an endpoint had valency one.
    pub fn corner_preimage(&self, h: HalfEdge) -> Vec<HalfEdge> {
        let g = &self.original;
        let mut run = vec![h];
        let mut arrival = g.next_ccw(h);
        while self.touches_edge(arrival) {
            let across = g.tau(arrival);
            run.push(across);
            arrival = g.next_ccw(across);
        }
        run
    }
}

/// A valid, connected ribbon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    tau: BTreeMap<HalfEdge, HalfEdge>,
    rotations: BTreeMap<Vertex, Vec<HalfEdge>>,
    position: BTreeMap<HalfEdge, (Vertex, usize)>,
}

impl RibbonGraph {
    pub fn new(data: GraphData) -> core::result::Result<Self, Vec<Diagnostic>> {
        let problems = validate(&data);
        if !problems.is_empty() {
            return Err(problems);
        }
        let mut tau: BTreeMap<HalfEdge, HalfEdge> = data.halfedges.iter().map(|&h| (h, h)).collect();
        for (x, y) in data.tau {
            tau.insert(x, y);
            tau.insert(y, x);
        }
        Ok(Self::assemble(tau, data.vertices.into_iter().collect()))
    }

    /// Builds a graph from cyclic orders and internal pairs; every halfedge
    /// named in a cyclic order is declared.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = (u32, Vec<u32>)>,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> core::result::Result<Self, Vec<Diagnostic>> {
        let vertices: Vec<(Vertex, Vec<HalfEdge>)> =
            vertices.into_iter().map(|(v, ccw)| (Vertex(v), ccw.into_iter().map(HalfEdge).collect())).collect();
        let halfedges = vertices.iter().flat_map(|(_, c)| c.iter().copied()).collect();
        let tau = pairs.into_iter().map(|(a, b)| (HalfEdge(a), HalfEdge(b))).collect();
        Self::new(GraphData { halfedges, tau, vertices })
    }

    fn assemble(tau: BTreeMap<HalfEdge, HalfEdge>, rotations: BTreeMap<Vertex, Vec<HalfEdge>>) -> Self {
        let position =
            rotations.iter().flat_map(|(&v, ccw)| ccw.iter().enumerate().map(move |(i, &h)| (h, (v, i)))).collect();
        Self { tau, rotations, position }
    }

    pub fn to_data(&self) -> GraphData {
        let halfedges = self.tau.keys().copied().collect();
        let tau = self.tau.iter().filter(|(h, k)| h < k).map(|(&h, &k)| (h, k)).collect();
        let vertices = self.rotations.iter().map(|(&v, c)| (v, c.clone())).collect();
        GraphData { halfedges, tau, vertices }
    }

    /// The `n`-spider: one vertex `0` with halfedges `0..n`, all external.
    pub fn spider(n: u32) -> Self {
        Self::from_parts([(0, (0..n).collect())], []).expect("spider is a valid graph")
    }

    pub fn halfedges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        self.tau.keys().copied()
    }

    pub fn halfedge_count(&self) -> usize {
        self.tau.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rotations.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn contains(&self, h: HalfEdge) -> bool {
        self.tau.contains_key(&h)
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.rotations.contains_key(&v)
    }

    /// # Panics
    /// If `h` is not a halfedge of the graph.
    pub fn tau(&self, h: HalfEdge) -> HalfEdge {
        self.tau[&h]
    }

    pub fn is_external(&self, h: HalfEdge) -> bool {
        self.tau(h) == h
    }

    pub fn vertex_of(&self, h: HalfEdge) -> Vertex {
        self.position[&h].0
    }

    /// Zero-based position of `h` in the cyclic order of its vertex, counted
    /// from the seam.
    pub fn slot(&self, h: HalfEdge) -> usize {
        self.position[&h].1
    }

    pub fn rotation(&self, v: Vertex) -> &[HalfEdge] {
        &self.rotations[&v]
    }

    pub fn valency(&self, v: Vertex) -> usize {
        self.rotations[&v].len()
    }

    pub fn seam(&self, v: Vertex) -> HalfEdge {
        self.rotations[&v][0]
    }

    /// `rho^k(h)`: `k` counterclockwise steps, negative `k` goes clockwise.
    pub fn rotate(&self, h: HalfEdge, k: i64) -> HalfEdge {
        let (v, i) = self.position[&h];
        let ccw = &self.rotations[&v];
        let m = ccw.len() as i64;
        ccw[(i as i64 + k).rem_euclid(m) as usize]
    }

    pub fn next_ccw(&self, h: HalfEdge) -> HalfEdge {
        self.rotate(h, 1)
    }

    pub fn prev_ccw(&self, h: HalfEdge) -> HalfEdge {
        self.rotate(h, -1)
    }

    pub fn edge_of(&self, h: HalfEdge) -> EdgeId {
        EdgeId(h.0.min(self.tau(h).0))
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        let lower = HalfEdge(id.0);
        let other = *self.tau.get(&lower)?;
        if other < lower {
            return None;
        }
        let (upper, kind) = if other == lower {
            (None, EdgeKind::External)
        } else if self.vertex_of(lower) == self.vertex_of(other) {
            (Some(other), EdgeKind::Loop)
        } else {
            (Some(other), EdgeKind::Internal)
        };
        Some(Edge { id, lower, upper, kind })
    }

    /// The partition of the halfedges into `tau`-orbits.
    pub fn edges(&self) -> Vec<Edge> {
        self.tau.iter().filter(|(h, k)| h <= k).filter_map(|(&h, _)| self.edge(EdgeId(h.0))).collect()
    }

    /// Number of `tau`-orbits of size two (loops included).
    pub fn internal_edge_count(&self) -> usize {
        self.tau.iter().filter(|(h, k)| h < k).count()
    }

    pub fn exit_path_category(&self) -> ExitPathPresentation {
        let arrows = self
            .halfedges()
            .map(|h| ExitArrow { halfedge: h, source: self.vertex_of(h), target: self.edge_of(h) })
            .collect();
        ExitPathPresentation {
            vertices: self.vertices().collect(),
            edges: self.edges().into_iter().map(|e| e.id).collect(),
            arrows,
        }
    }

    /// Contracts an internal, non-loop edge.
    ///
    /// The merged vertex keeps the id of the endpoint of the lower halfedge
    /// `a`. Its cyclic order is the order at that endpoint starting after `a`,
    /// followed by the order at the other endpoint starting after `tau(a)`.
    pub fn contract(&self, id: EdgeId) -> Result<Contraction> {
        let edge = self.edge(id).ok_or(Error::NotContractible(id))?;
        if edge.kind != EdgeKind::Internal {
            return Err(Error::NotContractible(id));
        }
        let a = edge.lower;
        let b = self.tau(a);
        let (v, w) = (self.vertex_of(a), self.vertex_of(b));
        let mut merged_order = Vec::with_capacity(self.valency(v) + self.valency(w) - 2);
        for (start, vertex) in [(a, v), (b, w)] {
            let m = self.valency(vertex) as i64;
            merged_order.extend((1..m).map(|k| self.rotate(start, k)));
        }
        if merged_order.is_empty() {
            // both endpoints are leaves; the result would have an empty vertex
            return Err(Error::NotContractible(id));
        }
        let mut tau = self.tau.clone();
        tau.remove(&a);
        tau.remove(&b);
        let mut rotations = self.rotations.clone();
        rotations.remove(&w);
        rotations.insert(v, merged_order);
        let halfedge_map = tau.keys().map(|&h| (h, h)).collect();
        Ok(Contraction {
            original: self.clone(),
            contracted: Self::assemble(tau, rotations),
            edge: id,
            near: a,
            far: b,
            merged: v,
            absorbed: w,
            halfedge_map,
        })
    }

    /// Orbits of `h -> next_ccw(tau(h))`, each starting at its smallest
    /// halfedge, in increasing order of that halfedge.
    pub fn boundary_walks(&self) -> Vec<Vec<HalfEdge>> {
        let mut seen = BTreeSet::new();
        let mut walks = Vec::new();
        for h in self.halfedges() {
            if seen.contains(&h) {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = h;
            while seen.insert(cur) {
                walk.push(cur);
                cur = self.next_ccw(self.tau(cur));
            }
            walks.push(walk);
        }
        walks
    }

    pub fn euler_char(&self) -> i64 {
        self.vertex_count() as i64 - self.internal_edge_count() as i64
    }

    pub fn surface_invariants(&self) -> Result<SurfaceDatum> {
        let boundary_walks = self.boundary_walks();
        let euler_char = self.euler_char();
        let twice_genus = 2 - euler_char - boundary_walks.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::NonIntegerGenus);
        }
        Ok(SurfaceDatum { genus: (twice_genus / 2) as u32, boundary_walks, euler_char })
    }

    /// Coarse spanning-graph test: genus and boundary count agree, and walks
    /// through external halfedges correspond to boundaries carrying marked
    /// points while closed walks correspond to unmarked boundaries.
    pub fn is_spanning_of(&self, target: &SurfaceTarget) -> Result<bool> {
        if target.genus < 0 {
            return Err(Error::BadSurfaceDatum("negative genus"));
        }
        if target.marked.is_empty() {
            return Err(Error::BadSurfaceDatum("no boundary components"));
        }
        if target.marked.iter().any(|&m| m < 0) {
            return Err(Error::BadSurfaceDatum("negative marked point count"));
        }
        let datum = self.surface_invariants()?;
        if i64::from(datum.genus) != target.genus || datum.boundary_walks.len() != target.marked.len() {
            return Ok(false);
        }
        let open_walks = datum.boundary_walks.iter().filter(|walk| walk.iter().any(|&h| self.is_external(h))).count();
        let marked_boundaries = target.marked.iter().filter(|&&m| m > 0).count();
        Ok(open_walks == marked_boundaries)
    }

    /// The same ribbon graph with the seam of `v` moved to `h`.
    pub fn with_seam(&self, v: Vertex, h: HalfEdge) -> Result<Self> {
        if !self.has_vertex(v) || !self.contains(h) || self.vertex_of(h) != v {
            return Err(Error::BadArgument(alloc::format!("halfedge {h} is not incident to vertex {v}")));
        }
        let m = self.valency(v) as i64;
        let order = (0..m).map(|k| self.rotate(h, k)).collect();
        let mut rotations = self.rotations.clone();
        rotations.insert(v, order);
        Ok(Self::assemble(self.tau.clone(), rotations))
    }

    /// Whether both graphs have the same halfedges, involution and cyclic
    /// orders, ignoring vertex names and seams.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.tau == other.tau && self.halfedges().all(|h| self.next_ccw(h) == other.next_ccw(h))
    }
}

//! JSON file formats and their conversion to core types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use schober_core::curves::{Curve, LineField, Step};
use schober_core::k0::K0Assignment;
use schober_core::matrix::IntMatrix;
use schober_core::ribbon_graph::{Diagnostic, GraphData};
use schober_core::schober::SchoberDatum;
use schober_core::{EdgeId, FunctorWord, HalfEdge, RibbonGraph, Symbol, Vertex};

/// A failure to turn a file into a value.
#[derive(Debug)]
pub enum FormatError {
    /// Malformed input; reported as `parse-error`.
    Parse(String),
    /// Well-formed input describing an invalid graph.
    Graph(Vec<Diagnostic>),
    /// Well-formed input rejected by a core constructor.
    Core(schober_core::Error),
}

impl From<schober_core::Error> for FormatError {
    fn from(e: schober_core::Error) -> Self {
        match e {
            schober_core::Error::WordSyntax(m) => FormatError::Parse(m),
            other => FormatError::Core(other),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn parse_key<T: std::str::FromStr>(key: &str, what: &str) -> Result<T> {
    key.parse().map_err(|_| FormatError::Parse(format!("{what} key {key:?} is not an integer")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub ccw: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub halfedges: Vec<u32>,
    pub tau: Vec<[u32; 2]>,
    pub vertices: Vec<VertexJson>,
}

impl GraphJson {
    pub fn data(&self) -> GraphData {
        GraphData {
            halfedges: self.halfedges.iter().map(|&h| HalfEdge(h)).collect(),
            tau: self.tau.iter().map(|[a, b]| (HalfEdge(*a), HalfEdge(*b))).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| (Vertex(v.id), v.ccw.iter().map(|&h| HalfEdge(h)).collect()))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<RibbonGraph> {
        RibbonGraph::new(self.data()).map_err(FormatError::Graph)
    }

    pub fn from_graph(g: &RibbonGraph) -> Self {
        let data = g.to_data();
        Self {
            halfedges: data.halfedges.iter().map(|h| h.0).collect(),
            tau: data.tau.iter().map(|(a, b)| [a.0, b.0]).collect(),
            vertices: data
                .vertices
                .iter()
                .map(|(v, ccw)| VertexJson { id: v.0, ccw: ccw.iter().map(|h| h.0).collect() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchoberJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    #[serde(default)]
    pub singular: Vec<u32>,
    #[serde(default)]
    pub cotwists: BTreeMap<String, String>,
    #[serde(default)]
    pub decorations: BTreeMap<String, String>,
    #[serde(default)]
    pub period: u64,
}

impl SchoberJson {
    pub fn to_schober(&self) -> Result<SchoberDatum> {
        let graph = self.graph.to_graph()?;
        let mut cotwists = BTreeMap::new();
        for (v, name) in &self.cotwists {
            cotwists.insert(Vertex(parse_key(v, "cotwist")?), Symbol::parse(name)?);
        }
        let mut decorations = BTreeMap::new();
        for (h, word) in &self.decorations {
            decorations.insert(HalfEdge(parse_key(h, "decoration")?), FunctorWord::parse(word)?);
        }
        let singular = self.singular.iter().map(|&v| Vertex(v));
        Ok(SchoberDatum::new(graph, singular, cotwists, decorations, self.period)?)
    }

    /// Only cotwists that differ from the default name are written.
    pub fn from_schober(s: &SchoberDatum) -> Self {
        Self {
            graph: GraphJson::from_graph(s.graph()),
            singular: s.singular().iter().map(|v| v.0).collect(),
            cotwists: s
                .cotwists()
                .iter()
                .filter(|(v, t)| **t != schober_core::schober::default_cotwist(**v))
                .map(|(v, t)| (v.0.to_string(), t.to_string()))
                .collect(),
            decorations: s.decorations().iter().map(|(h, w)| (h.0.to_string(), w.to_string())).collect(),
            period: s.period(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepJson {
    Traverse { edge: u32, dir: i8 },
    Turn { vertex: u32, from: u32, turn: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub base: u32,
    pub steps: Vec<StepJson>,
}

impl CurveJson {
    pub fn to_curve(&self) -> Curve {
        let steps = self
            .steps
            .iter()
            .map(|s| match *s {
                StepJson::Traverse { edge, dir } => Step::Traverse { edge: EdgeId(edge), dir },
                StepJson::Turn { vertex, from, turn } => {
                    Step::Turn { vertex: Vertex(vertex), from: HalfEdge(from), turns: turn }
                }
            })
            .collect();
        Curve { base: EdgeId(self.base), steps }
    }

    pub fn from_curve(c: &Curve) -> Self {
        let steps = c
            .steps
            .iter()
            .map(|s| match *s {
                Step::Traverse { edge, dir } => StepJson::Traverse { edge: edge.0, dir },
                Step::Turn { vertex, from, turns } => StepJson::Turn { vertex: vertex.0, from: from.0, turn: turns },
            })
            .collect();
        Self { base: c.base.0, steps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerJson {
    pub h: u32,
    pub w: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFieldJson {
    pub corners: Vec<CornerJson>,
}

impl LineFieldJson {
    pub fn to_line_field(&self) -> LineField {
        LineField::from_weights(self.corners.iter().map(|c| (HalfEdge(c.h), c.w)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalJson {
    pub f: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Json {
    pub rank: usize,
    #[serde(default)]
    pub singular: BTreeMap<String, SphericalJson>,
    #[serde(default)]
    pub decorations: BTreeMap<String, Vec<Vec<i64>>>,
}

/// A matrix from row-major integer arrays. An empty array is a matrix with
/// no rows and `cols` columns.
pub fn matrix(rows: &[Vec<i64>], cols: usize) -> Result<IntMatrix> {
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, cols));
    }
    Ok(IntMatrix::from_rows(rows)?)
}

impl K0Json {
    /// The assignment; singular vertex `v` binds the cotwist symbol that
    /// `cotwist` names for it.
    pub fn to_assignment(&self, cotwist: impl Fn(Vertex) -> Symbol) -> Result<K0Assignment> {
        let mut a = K0Assignment::new(self.rank);
        for (name, m) in &self.decorations {
            a = a.with_matrix(Symbol::parse(name)?, matrix(m, self.rank)?)?;
        }
        for (v, fg) in &self.singular {
            let v = Vertex(parse_key(v, "singular")?);
            let g = matrix(&fg.g, self.rank)?;
            let f = matrix(&fg.f, g.rows())?;
            a = a.with_cotwist(cotwist(v), &f, &g)?;
        }
        Ok(a)
    }
}

//! `schober`: file-driven front end for `schober-core`.
//!
//! Every verb reads JSON files, runs one operation and prints one JSON line:
//! `{"ok":true,"result":...}` with status 0, `{"ok":false,"error":code}` with
//! status 1 for domain errors, or status 2 for unreadable input. The `dot`
//! verb prints Graphviz text instead.

mod dot;
mod formats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use schober_core::curves::{generating_loops, is_framing, standard_framing, winding, LineField, LoopLabel};
use schober_core::k0::{
    eta_invariance_check, k0_monodromy_rep, k0_of_word, local_model_restriction_matrix, relative_cy_check,
    serre_matrix, weak_cy_check,
};
use schober_core::matrix::IntMatrix;
use schober_core::ribbon_graph::{validate, SurfaceTarget};
use schober_core::schober::{default_cotwist, gluing_sign_solve, is_orientable, nonsingular_equiv, SchoberDatum};
use schober_core::{EdgeId, FunctorWord, RibbonGraph};

use formats::{CurveJson, FormatError, GraphJson, K0Json, LineFieldJson, SchoberJson};

#[derive(Parser)]
#[command(name = "schober", version, about = "Ribbon graph schobers: transport, monodromy and K0 checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every ribbon graph invariant.
    Validate {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Genus, Euler characteristic and boundary walks of the thickening.
    Invariants {
        #[arg(long)]
        graph: PathBuf,
        /// Also test whether the graph spans the surface in this file,
        /// `{"genus":g,"marked":[..]}`.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Objects and arrows of the exit path category.
    ExitPaths {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Contract an internal edge.
    Contract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: u32,
    },
    /// Winding number of a closed curve; the canonical line field by default.
    Winding {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        line_field: Option<PathBuf>,
    },
    /// Whether a line field is a framing.
    FramingCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        line_field: PathBuf,
    },
    /// Transport along a curve.
    Transport {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Framed monodromy along a closed curve; the standard framing by default.
    Monodromy {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        line_field: Option<PathBuf>,
        /// Use the canonical line field; needs stalk period 1 or 2.
        #[arg(long, conflicts_with = "line_field")]
        canonical: bool,
    },
    /// Framed monodromy on the generating loops.
    MonodromyRep {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        line_field: Option<PathBuf>,
    },
    /// Schober induced on the graph with an edge contracted.
    PushContract {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        edge: u32,
        /// A closed curve to carry along.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Whether two nonsingular schobers have conjugate monodromy.
    Equiv {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        line_field: Option<PathBuf>,
    },
    /// Whether an even-valent graph is orientable.
    Orientable {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Halfedge signs for gluing Calabi-Yau structures of dimension `n`.
    GlueSigns {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// K0 matrix of a functor word.
    K0Word {
        #[arg(long)]
        k0: PathBuf,
        #[arg(long)]
        word: String,
        /// Schober naming the cotwists of singular vertices.
        #[arg(long)]
        schober: Option<PathBuf>,
    },
    /// K0 images of the monodromy on the generating loops.
    K0Rep {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        k0: PathBuf,
        #[arg(long)]
        line_field: Option<PathBuf>,
    },
    /// Serre matrix of a unimodular Euler form.
    Serre {
        #[arg(long)]
        euler: PathBuf,
    },
    /// K0 shadow of a weak n-Calabi-Yau structure.
    CyCheck {
        #[arg(long)]
        euler: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// K0 identity necessary for a relative m-Calabi-Yau structure.
    RelCyCheck {
        #[arg(long)]
        euler: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Restriction matrix of the local model at an m-valent vertex.
    LocalMatrix {
        #[arg(long)]
        m: usize,
    },
    /// Whether the K0 monodromy fixes a vector, given as a JSON array.
    EtaCheck {
        #[arg(long)]
        schober: PathBuf,
        #[arg(long)]
        k0: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long)]
        line_field: Option<PathBuf>,
    },
    /// Graphviz rendering of a graph or schober file.
    Dot {
        #[arg(long, required_unless_present = "schober", conflicts_with = "schober")]
        graph: Option<PathBuf>,
        #[arg(long)]
        schober: Option<PathBuf>,
    },
}

enum Failure {
    Parse(String),
    Domain { code: &'static str, message: String, extra: Option<(&'static str, Value)> },
}

impl From<schober_core::Error> for Failure {
    fn from(e: schober_core::Error) -> Self {
        FormatError::from(e).into()
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Parse(message) => Failure::Parse(message),
            FormatError::Core(e) => Failure::Domain { code: e.code(), message: e.to_string(), extra: None },
            FormatError::Graph(diagnostics) => Failure::Domain {
                code: diagnostics[0].code(),
                message: diagnostics[0].to_string(),
                extra: Some(("diagnostics", diagnostics_json(&diagnostics))),
            },
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

type Outcome = Result<Output, Failure>;

fn diagnostics_json(diagnostics: &[schober_core::ribbon_graph::Diagnostic]) -> Value {
    diagnostics.iter().map(|d| json!({"code": d.code(), "message": d.to_string()})).collect()
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn graph(path: &Path) -> Result<RibbonGraph, Failure> {
    Ok(read::<GraphJson>(path)?.to_graph()?)
}

fn schober(path: &Path) -> Result<SchoberDatum, Failure> {
    Ok(read::<SchoberJson>(path)?.to_schober()?)
}

fn curve(path: &Path) -> Result<schober_core::curves::Curve, Failure> {
    Ok(read::<CurveJson>(path)?.to_curve())
}

fn line_field(path: &Path) -> Result<LineField, Failure> {
    Ok(read::<LineFieldJson>(path)?.to_line_field())
}

fn framing_or_standard(path: Option<&Path>, g: &RibbonGraph) -> Result<LineField, Failure> {
    match path {
        Some(p) => line_field(p),
        None => Ok(standard_framing(g)),
    }
}

fn int_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    let rows: Vec<Vec<i64>> = read(path)?;
    Ok(formats::matrix(&rows, 0)?)
}

fn k0(path: &Path, s: Option<&SchoberDatum>) -> Result<schober_core::k0::K0Assignment, Failure> {
    let data: K0Json = read(path)?;
    Ok(data.to_assignment(|v| match s {
        Some(s) if s.graph().has_vertex(v) => s.cotwist(v).clone(),
        _ => default_cotwist(v),
    })?)
}

fn rows(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

fn loop_label(g: &RibbonGraph, label: LoopLabel) -> String {
    match label {
        LoopLabel::Vertex(_) if g.vertex_count() == 1 => "vertex-loop".into(),
        LoopLabel::Vertex(v) => format!("vertex-loop(v{v})"),
        LoopLabel::Cycle(e) => format!("cycle(e{e})"),
    }
}

fn ok(v: Value) -> Outcome {
    Ok(Output::Json(v))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { graph } => {
            let data = read::<GraphJson>(&graph)?.data();
            let diagnostics = validate(&data);
            if diagnostics.is_empty() {
                ok(json!({"valid": true}))
            } else {
                Err(FormatError::Graph(diagnostics).into())
            }
        }
        Command::Invariants { graph: path, target } => {
            let g = graph(&path)?;
            let s = g.surface_invariants()?;
            let mut out = json!({
                "genus": s.genus,
                "euler_char": s.euler_char,
                "boundary_walks": s.boundary_walks.iter().map(|w| w.iter().map(|h| h.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            if let Some(t) = target {
                let target: SurfaceTargetJson = read(&t)?;
                let target = SurfaceTarget { genus: target.genus, marked: target.marked };
                out["spanning"] = json!(g.is_spanning_of(&target)?);
            }
            ok(out)
        }
        Command::ExitPaths { graph: path } => {
            let p = graph(&path)?.exit_path_category();
            let arrows: Vec<Value> = p
                .arrows
                .iter()
                .map(|a| json!({"halfedge": a.halfedge.0, "source": a.source.0, "target": a.target.0}))
                .collect();
            ok(json!({
                "vertices": p.vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
                "edges": p.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                "arrows": arrows,
            }))
        }
        Command::Contract { graph: path, edge } => {
            let c = graph(&path)?.contract(EdgeId(edge))?;
            let map: Map<String, Value> = c.halfedge_map.iter().map(|(a, b)| (a.0.to_string(), json!(b.0))).collect();
            ok(json!({
                "graph": GraphJson::from_graph(&c.contracted),
                "merged": c.merged.0,
                "absorbed": c.absorbed.0,
                "halfedge_map": map,
            }))
        }
        Command::Winding { graph: path, curve: c, line_field: l } => {
            let g = graph(&path)?;
            let l = match l {
                Some(p) => line_field(&p)?,
                None => LineField::canonical(),
            };
            ok(json!({"winding": winding(&g, &curve(&c)?, &l)?}))
        }
        Command::FramingCheck { graph: path, line_field: l } => {
            let g = graph(&path)?;
            ok(json!({"framing": is_framing(&g, &line_field(&l)?)?}))
        }
        Command::Transport { schober: s, curve: c } => {
            let s = schober(&s)?;
            ok(json!({"word": s.transport(&curve(&c)?)?.to_string()}))
        }
        Command::Monodromy { schober: s, curve: c, line_field: l, canonical } => {
            let s = schober(&s)?;
            let c = curve(&c)?;
            let w = if canonical {
                s.canonical_periodic_monodromy(&c)?
            } else {
                s.monodromy(&framing_or_standard(l.as_deref(), s.graph())?, &c)?
            };
            ok(json!({"word": w.to_string()}))
        }
        Command::MonodromyRep { schober: s, line_field: l } => {
            let s = schober(&s)?;
            let l = framing_or_standard(l.as_deref(), s.graph())?;
            let rep: Map<String, Value> = s
                .monodromy_rep(&l)?
                .into_iter()
                .map(|(label, w)| (loop_label(s.graph(), label), json!(w.to_string())))
                .collect();
            ok(json!({"base": generating_loops(s.graph()).base.0, "monodromy": rep}))
        }
        Command::PushContract { schober: s, edge, curve: c } => {
            let s = schober(&s)?;
            let p = s.pushforward_contract(EdgeId(edge))?;
            let mut out = json!({
                "schober": SchoberJson::from_schober(&p.schober),
                "merged": p.contraction.merged.0,
                "absorbed": p.contraction.absorbed.0,
            });
            if let Some(c) = c {
                out["curve"] = json!(CurveJson::from_curve(&p.push_curve(&curve(&c)?)?));
            }
            ok(out)
        }
        Command::Equiv { schober: a, other: b, line_field: l } => {
            let (a, b) = (schober(&a)?, schober(&b)?);
            let l = framing_or_standard(l.as_deref(), a.graph())?;
            ok(json!({"equivalent": nonsingular_equiv(&a, &b, &l)?}))
        }
        Command::Orientable { graph: path } => ok(json!({"orientable": is_orientable(&graph(&path)?)?})),
        Command::GlueSigns { graph: path, n } => {
            let g = graph(&path)?;
            ok(match gluing_sign_solve(&g, n) {
                Some(signs) => {
                    let signs: Map<String, Value> = signs.iter().map(|(h, s)| (h.0.to_string(), json!(s))).collect();
                    json!({"feasible": true, "signs": signs})
                }
                None => json!({"feasible": false, "signs": null}),
            })
        }
        Command::K0Word { k0: a, word, schober: s } => {
            let s = s.map(|p| schober(&p)).transpose()?;
            let a = k0(&a, s.as_ref())?;
            let w = FunctorWord::parse(&word).map_err(FormatError::from)?;
            ok(json!({"matrix": rows(&k0_of_word(&w, &a)?)}))
        }
        Command::K0Rep { schober: s, k0: a, line_field: l } => {
            let s = schober(&s)?;
            let a = k0(&a, Some(&s))?;
            let l = framing_or_standard(l.as_deref(), s.graph())?;
            let rep: Map<String, Value> = k0_monodromy_rep(&s, &l, &a)?
                .into_iter()
                .map(|(label, m)| (loop_label(s.graph(), label), rows(&m)))
                .collect();
            ok(json!({"monodromy": rep}))
        }
        Command::Serre { euler } => ok(json!({"matrix": rows(&serre_matrix(&int_matrix(&euler)?)?)})),
        Command::CyCheck { euler, n } => ok(json!({"holds": weak_cy_check(&int_matrix(&euler)?, n)?})),
        Command::RelCyCheck { euler, f, g, m } => {
            let holds = relative_cy_check(&int_matrix(&euler)?, &int_matrix(&f)?, &int_matrix(&g)?, m)?;
            ok(json!({"necessary_condition_holds": holds}))
        }
        Command::LocalMatrix { m } => ok(json!({"matrix": rows(&local_model_restriction_matrix(m)?)})),
        Command::EtaCheck { schober: s, k0: a, eta, line_field: l } => {
            let eta: Vec<i64> = serde_json::from_str(&eta).map_err(|e| Failure::Parse(format!("eta: {e}")))?;
            let s = schober(&s)?;
            let a = k0(&a, Some(&s))?;
            let l = framing_or_standard(l.as_deref(), s.graph())?;
            let rep = k0_monodromy_rep(&s, &l, &a)?;
            ok(json!({"invariant": eta_invariance_check(rep.iter().map(|(_, m)| m), &eta)?}))
        }
        Command::Dot { graph: g, schober: s } => {
            let text = match (g, s) {
                (Some(g), _) => dot::render(&graph(&g)?, &Default::default()),
                (None, Some(s)) => {
                    let s = schober(&s)?;
                    dot::render(s.graph(), s.singular())
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            Ok(Output::Text(text))
        }
    }
}

#[derive(serde::Deserialize)]
struct SurfaceTargetJson {
    genus: i64,
    marked: Vec<i64>,
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            emit(&json!({"ok": false, "error": "parse-error", "message": first}));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(Output::Json(result)) => {
            emit(&json!({"ok": true, "result": result}));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(message)) => {
            emit(&json!({"ok": false, "error": "parse-error", "message": message}));
            ExitCode::from(2)
        }
        Err(Failure::Domain { code, message, extra }) => {
            let mut out = json!({"ok": false, "error": code, "message": message});
            if let Some((key, value)) = extra {
                out[key] = value;
            }
            emit(&out);
            ExitCode::from(1)
        }
    }
}

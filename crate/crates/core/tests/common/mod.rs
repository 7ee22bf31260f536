#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schober_core::curves::{
    anchor, fit_line_field, generating_loops, generating_loops_at, Curve, LineField, LoopLabel, Move, Step,
};
use schober_core::k0::K0Assignment;
use schober_core::matrix::IntMatrix;
use schober_core::schober::SchoberDatum;
use schober_core::word::Letter;
use schober_core::{EdgeId, FunctorWord, HalfEdge, RibbonGraph, Symbol, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected ribbon graph with at most `max_edges` edges, counting
/// external ones, on at most four vertices.
pub fn random_graph(rng: &mut ChaCha8Rng, max_edges: usize) -> RibbonGraph {
    assert!(max_edges >= 1);
    let nv = rng.gen_range(1..=4.min(max_edges + 1));
    let lo = (nv - 1).max(1);
    let ne = rng.gen_range(lo..=max_edges);
    let mut ends: Vec<(usize, Option<usize>)> = (1..nv).map(|i| (i, Some(rng.gen_range(0..i)))).collect();
    while ends.len() < ne {
        let v = rng.gen_range(0..nv);
        if rng.gen_bool(0.6) {
            ends.push((v, Some(rng.gen_range(0..nv))));
        } else {
            ends.push((v, None));
        }
    }
    let total: usize = ends.iter().map(|(_, w)| if w.is_some() { 2 } else { 1 }).sum();
    let mut ids: Vec<u32> = (0..total as u32).collect();
    ids.shuffle(rng);
    let mut next = ids.into_iter();
    let mut rotations: Vec<Vec<u32>> = vec![Vec::new(); nv];
    let mut pairs = Vec::new();
    for (v, w) in ends {
        let a = next.next().unwrap();
        rotations[v].push(a);
        if let Some(w) = w {
            let b = next.next().unwrap();
            rotations[w].push(b);
            pairs.push((a, b));
        }
    }
    for r in &mut rotations {
        r.shuffle(rng);
    }
    RibbonGraph::from_parts(rotations.into_iter().enumerate().map(|(v, r)| (v as u32, r)), pairs)
        .expect("generated graph is valid")
}

pub fn random_graph_with_internal_edge(rng: &mut ChaCha8Rng, max_edges: usize) -> RibbonGraph {
    loop {
        let g = random_graph(rng, max_edges);
        if g.edges().iter().any(|e| e.kind == schober_core::ribbon_graph::EdgeKind::Internal) {
            return g;
        }
    }
}

pub fn random_edge(rng: &mut ChaCha8Rng, g: &RibbonGraph) -> EdgeId {
    g.edges().choose(rng).unwrap().id
}

/// Moves departing from side `cur`.
pub fn moves_from(g: &RibbonGraph, cur: HalfEdge) -> Vec<Move> {
    let mut out = vec![Move::Corner { corner: cur, sign: 1 }, Move::Corner { corner: g.prev_ccw(cur), sign: -1 }];
    if !g.is_external(cur) {
        out.push(Move::cross_from(g, cur));
    }
    out
}

/// Inserts `count` cancelling pairs at random places of a move sequence
/// starting at `start`.
pub fn with_cancelling_pairs(
    rng: &mut ChaCha8Rng,
    g: &RibbonGraph,
    start: HalfEdge,
    moves: &[Move],
    count: usize,
) -> Vec<Move> {
    let mut out = moves.to_vec();
    for _ in 0..count {
        let i = rng.gen_range(0..=out.len());
        let cur = if i == 0 { start } else { out[i - 1].target(g) };
        let m = *moves_from(g, cur).choose(rng).unwrap();
        out.splice(i..i, [m, m.inverse()]);
    }
    out
}

/// A random product of generating loops based at `base`, written with some
/// extra cancelling moves.
pub fn random_loop_at(rng: &mut ChaCha8Rng, g: &RibbonGraph, base: EdgeId, len: usize) -> Curve {
    let basis = generating_loops_at(g, base).unwrap();
    let mut c = Curve::constant(base);
    for _ in 0..len {
        let (_, l) = basis.loops.choose(rng).unwrap();
        let l = if rng.gen_bool(0.5) { l.clone() } else { l.reverse(g) };
        c = c.then(g, &l).unwrap();
    }
    let a0 = anchor(base);
    let moves = c.anchored_moves(g).unwrap();
    let extra = rng.gen_range(0..3);
    let noisy = with_cancelling_pairs(rng, g, a0, &moves, extra);
    Curve::from_moves(g, base, a0, &noisy)
}

pub fn random_loop(rng: &mut ChaCha8Rng, g: &RibbonGraph, len: usize) -> Curve {
    let base = generating_loops(g).base;
    random_loop_at(rng, g, base, len)
}

pub fn even(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    2 * rng.gen_range(-bound..=bound)
}

/// A random framing with winding `-2` around the nonsingular vertices.
pub fn random_framing(rng: &mut ChaCha8Rng, s: &SchoberDatum) -> LineField {
    let g = s.graph();
    let basis = generating_loops(g);
    let targets: Vec<(&Curve, i64)> = basis
        .loops
        .iter()
        .map(|(label, c)| {
            let t = match label {
                LoopLabel::Vertex(v) if !s.is_singular(*v) => -2,
                _ => even(rng, 3),
            };
            (c, t)
        })
        .collect();
    let mut l = fit_line_field(g, &targets, &BTreeMap::new()).unwrap().expect("targets are reachable");
    // even moves of weight within one vertex keep every winding parity and
    // every vertex winding
    for v in g.vertices() {
        let ring = g.rotation(v).to_vec();
        if ring.len() < 2 {
            continue;
        }
        for _ in 0..2 {
            let (a, b) = (*ring.choose(rng).unwrap(), *ring.choose(rng).unwrap());
            let k = even(rng, 2);
            l.set(a, l.weight(a) + k);
            l.set(b, l.weight(b) - k);
        }
    }
    l
}

pub const DECORATION_SYMBOLS: [&str; 2] = ["S", "U"];

pub fn random_word(rng: &mut ChaCha8Rng, symbols: &[&str], max_len: usize) -> FunctorWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let s = Symbol::new(symbols.choose(rng).unwrap());
            Letter::new(s, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    FunctorWord::from_letters(rng.gen_range(-2..=2), letters)
}

pub fn random_decorations(rng: &mut ChaCha8Rng, g: &RibbonGraph) -> BTreeMap<HalfEdge, FunctorWord> {
    let mut out = BTreeMap::new();
    for h in g.halfedges() {
        if rng.gen_bool(0.4) {
            out.insert(h, random_word(rng, &DECORATION_SYMBOLS, 2));
        }
    }
    out
}

pub fn random_schober(
    rng: &mut ChaCha8Rng,
    g: &RibbonGraph,
    singular: impl IntoIterator<Item = Vertex>,
    period: u64,
) -> SchoberDatum {
    let decorations = random_decorations(rng, g);
    SchoberDatum::new(g.clone(), singular, BTreeMap::new(), decorations, period).unwrap()
}

pub fn random_singular_set(rng: &mut ChaCha8Rng, g: &RibbonGraph, p: f64) -> Vec<Vertex> {
    g.vertices().filter(|_| rng.gen_bool(p)).collect()
}

/// A unimodular matrix: a product of random elementary operations and a
/// signed permutation.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rows.shuffle(rng);
    for r in &mut rows {
        if rng.gen_bool(0.5) {
            r.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = rng.gen_range(-2..=2);
            let source = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(source) {
                *x += c * y;
            }
        }
    }
    IntMatrix::from_rows(&rows).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    if r == 0 {
        IntMatrix::zeros(0, c)
    } else {
        IntMatrix::from_rows(&rows).unwrap()
    }
}

/// `f` (`rank x 1`) and `g` (`1 x rank`) with `f g - 1` invertible.
pub fn random_spherical_pair(rng: &mut ChaCha8Rng, rank: usize) -> (IntMatrix, IntMatrix) {
    loop {
        let f = random_matrix(rng, rank, 1, 2);
        let g = random_matrix(rng, 1, rank, 2);
        let t = f.mul(&g).unwrap().sub(&IntMatrix::identity(rank)).unwrap();
        if t.is_unimodular() {
            return (f, g);
        }
    }
}

/// `K_0` images for the decoration symbols and the cotwists of the singular
/// vertices of `s`.
pub fn random_k0(rng: &mut ChaCha8Rng, s: &SchoberDatum, rank: usize) -> K0Assignment {
    let mut a = K0Assignment::new(rank);
    for name in DECORATION_SYMBOLS {
        a = a.with_matrix(Symbol::new(name), random_unimodular(rng, rank, 3)).unwrap();
    }
    for &v in s.singular() {
        let (f, g) = random_spherical_pair(rng, rank);
        a = a.with_cotwist(s.cotwist(v).clone(), &f, &g).unwrap();
    }
    a
}

/// Every ribbon graph whose vertices have the given valencies, listed by
/// cyclic orders `0..m0`, `m0..m0+m1`, ... and all involutions with at least
/// `min_pairs` pairs. Disconnected ones are skipped.
pub fn graphs_with_valencies(valencies: &[u32], min_pairs: usize, out: &mut Vec<RibbonGraph>) {
    let total: u32 = valencies.iter().sum();
    let mut rotations = Vec::new();
    let mut next = 0;
    for (v, &m) in valencies.iter().enumerate() {
        rotations.push((v as u32, (next..next + m).collect::<Vec<u32>>()));
        next += m;
    }
    let mut pairs = Vec::new();
    let mut used = vec![false; total as usize];
    involutions(0, &mut used, &mut pairs, &mut |pairs| {
        if pairs.len() >= min_pairs {
            if let Ok(g) = RibbonGraph::from_parts(rotations.clone(), pairs.iter().copied()) {
                out.push(g);
            }
        }
    });
}

type Pairing = [(u32, u32)];

fn involutions(i: usize, used: &mut Vec<bool>, pairs: &mut Vec<(u32, u32)>, visit: &mut dyn FnMut(&Pairing)) {
    let n = used.len();
    let Some(i) = (i..n).find(|&k| !used[k]) else {
        visit(pairs);
        return;
    };
    used[i] = true;
    involutions(i + 1, used, pairs, visit);
    for j in i + 1..n {
        if !used[j] {
            used[j] = true;
            pairs.push((i as u32, j as u32));
            involutions(i + 1, used, pairs, visit);
            pairs.pop();
            used[j] = false;
        }
    }
    used[i] = false;
}

/// Non-increasing sequences of even numbers `>= 2` with the given sum.
pub fn even_partitions(sum: u32, max_part: u32) -> Vec<Vec<u32>> {
    if sum == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut p = max_part.min(sum) / 2 * 2;
    while p >= 2 {
        for mut rest in even_partitions(sum - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
        p -= 2;
    }
    out
}

/// All connected ribbon graphs with even valencies and at most `max_edges`
/// edges, up to relabelling (possibly with repeats).
pub fn even_valent_graphs(max_edges: usize) -> Vec<RibbonGraph> {
    let mut out = Vec::new();
    for h in (2..=2 * max_edges as u32).step_by(2) {
        // edges = h - pairs
        let min_pairs = (h as usize).saturating_sub(max_edges);
        for p in even_partitions(h, h) {
            graphs_with_valencies(&p, min_pairs, &mut out);
        }
    }
    out
}

/// Non-increasing sequences of positive numbers with the given sum.
pub fn partitions(sum: u32, max_part: u32) -> Vec<Vec<u32>> {
    if sum == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in (1..=max_part.min(sum)).rev() {
        for mut rest in partitions(sum - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// All connected ribbon graphs with at most `max_edges` edges, up to
/// relabelling (possibly with repeats).
pub fn all_graphs(max_edges: usize) -> Vec<RibbonGraph> {
    let mut out = Vec::new();
    for h in 1..=2 * max_edges as u32 {
        let min_pairs = (h as usize).saturating_sub(max_edges);
        for p in partitions(h, h) {
            graphs_with_valencies(&p, min_pairs, &mut out);
        }
    }
    out
}

/// A random walk of steps from either side of `base`, if it returns to
/// `base`.
pub fn random_closed_walk(rng: &mut ChaCha8Rng, g: &RibbonGraph, base: EdgeId, len: usize) -> Option<Curve> {
    let lower = HalfEdge(base.0);
    let mut cur = if g.tau(lower) != lower && rng.gen_bool(0.5) { g.tau(lower) } else { lower };
    let mut steps = Vec::new();
    for _ in 0..len {
        let other = g.tau(cur);
        if other != cur && rng.gen_bool(0.4) {
            let dir = if cur < other { 1 } else { -1 };
            steps.push(Step::Traverse { edge: g.edge_of(cur), dir });
            cur = other;
        } else {
            let turns = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            steps.push(Step::Turn { vertex: g.vertex_of(cur), from: cur, turns });
            cur = g.rotate(cur, turns);
        }
    }
    (g.edge_of(cur) == base).then_some(Curve { base, steps })
}

pub fn closed_walks(rng: &mut ChaCha8Rng, g: &RibbonGraph, base: EdgeId, count: usize) -> Vec<Curve> {
    let mut out = Vec::new();
    for _ in 0..50 * count {
        if out.len() == count {
            break;
        }
        let len = rng.gen_range(0..12);
        out.extend(random_closed_walk(rng, g, base, len));
    }
    out
}

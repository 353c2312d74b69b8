//! Condensed relation graphs of height-one signed posets.
//!
//! One vertex per pair `±i`. A cross relation `-i ≺ j` gives a solid edge
//! `{i, j}` (a solid loop when `i = j`), a same-sign relation `-j ≺ -i`
//! gives a dashed edge `{i, j}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::poset::SignedPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("HeightError: relation graphs need height at most one, got {0}")]
    HeightError(usize),
    #[error("dashed self-loop at {0}")]
    DashedLoop(u32),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(u32),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("SeparableInput: no solid edge or loop")]
    SeparableInput,
    #[error("NotConnected: graph has {0} components")]
    NotConnected(usize),
    #[error("NoEvenCycle")]
    NoEvenCycle,
    #[error("RewriteStuck: no rewrite applies but dashed edges remain")]
    RewriteStuck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Dashed,
    Solid,
}

/// An edge with `a <= b`. Loops (`a == b`) are always solid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub a: u32,
    pub b: u32,
}

impl Edge {
    pub fn solid(i: u32, j: u32) -> Edge {
        Edge {
            kind: EdgeKind::Solid,
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn dashed(i: u32, j: u32) -> Edge {
        Edge {
            kind: EdgeKind::Dashed,
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn self_loop(i: u32) -> Edge {
        Edge::solid(i, i)
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn is_dashed(&self) -> bool {
        self.kind == EdgeKind::Dashed
    }

    /// Solid edges and loops.
    pub fn is_solid(&self) -> bool {
        self.kind == EdgeKind::Solid
    }

    pub fn touches(&self, v: u32) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: u32) -> u32 {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    /// Dashed edges, then loops, then solid edges, each lexicographic.
    fn key(&self) -> (u8, u32, u32) {
        let rank = match (self.kind, self.is_loop()) {
            (EdgeKind::Dashed, _) => 0,
            (EdgeKind::Solid, true) => 1,
            (EdgeKind::Solid, false) => 2,
        };
        (rank, self.a, self.b)
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.is_loop()) {
            (EdgeKind::Dashed, _) => write!(f, "dashed {{{},{}}}", self.a, self.b),
            (EdgeKind::Solid, true) => write!(f, "loop {}", self.a),
            (EdgeKind::Solid, false) => write!(f, "solid {{{},{}}}", self.a, self.b),
        }
    }
}

/// Vertices sorted, edges sorted dashed / loop / solid.
///
/// Graphs built from posets never carry two edges on one vertex pair. Hand
/// built graphs may carry a dashed and a solid edge on the same pair so the
/// forbidden-pattern scan has something to find.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationGraph {
    vertices: Vec<u32>,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: Vec<u32>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub has_odd_cycle: bool,
    pub is_tree: bool,
    pub is_single_odd_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub component_count: usize,
    pub components: Vec<ComponentInfo>,
    pub eta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ForbiddenPattern {
    /// Dashed `{i,j}` with a loop at `j`, `i > j`.
    DashedIntoLoop { i: u32, j: u32 },
    /// Dashed and solid edge on the same pair, `i < j`.
    DashedAndSolid { i: u32, j: u32 },
    /// Dashed `{i,j}` and solid `{j,k}`, `i > j`.
    DashedIntoSolid { i: u32, j: u32, k: u32 },
    /// Dashed `{i,j}` and `{j,k}` with `i < j < k`.
    DashedChain { i: u32, j: u32, k: u32 },
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenPattern::DashedIntoLoop { i, j } => write!(f, "(a) i={i}, j={j}"),
            ForbiddenPattern::DashedAndSolid { i, j } => write!(f, "(b) i={i}, j={j}"),
            ForbiddenPattern::DashedIntoSolid { i, j, k } => write!(f, "(c) i={i}, j={j}, k={k}"),
            ForbiddenPattern::DashedChain { i, j, k } => write!(f, "(d) i={i}, j={j}, k={k}"),
        }
    }
}

impl RelationGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let vertices: Vec<u32> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for e in edges {
            let e = Edge {
                kind: e.kind,
                a: e.a.min(e.b),
                b: e.a.max(e.b),
            };
            if e.is_loop() && e.is_dashed() {
                return Err(GraphError::DashedLoop(e.a));
            }
            for v in [e.a, e.b] {
                if vertices.binary_search(&v).is_err() {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            list.push(e);
        }
        list.sort();
        Ok(RelationGraph {
            vertices,
            edges: list,
        })
    }

    /// Vertices `1..=n` with the given edges.
    pub fn on_range(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        Self::new(1..=n, edges)
    }

    pub fn from_poset(p: &SignedPoset) -> Result<Self, GraphError> {
        let h = p.height();
        if h > 1 {
            return Err(GraphError::HeightError(h));
        }
        let mut edges = BTreeSet::new();
        for (x, y) in p.relations() {
            if x == 0 || y == 0 {
                continue;
            }
            let e = if x < 0 && y > 0 {
                Edge::solid(x.unsigned_abs(), y as u32)
            } else {
                Edge::dashed(x.unsigned_abs(), y.unsigned_abs())
            };
            edges.insert(e);
        }
        Self::new(1..=p.n() as u32, edges)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_dashed(&self) -> bool {
        self.edges.iter().any(Edge::is_dashed)
    }

    /// True when some solid edge or loop exists.
    pub fn has_solid(&self) -> bool {
        self.edges.iter().any(Edge::is_solid)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Loops count twice.
    pub fn degree(&self, v: u32) -> usize {
        self.edges
            .iter()
            .map(|e| {
                if e.is_loop() && e.a == v {
                    2
                } else {
                    usize::from(e.touches(v))
                }
            })
            .sum()
    }

    fn with_edges(&self, edges: Vec<Edge>) -> RelationGraph {
        let mut edges = edges;
        edges.sort();
        RelationGraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    fn replace(&self, old: Edge, new: Edge) -> RelationGraph {
        let edges = self
            .edges
            .iter()
            .map(|&e| if e == old { new } else { e })
            .collect();
        self.with_edges(edges)
    }

    fn remove(&self, old: Edge) -> RelationGraph {
        self.with_edges(self.edges.iter().copied().filter(|&e| e != old).collect())
    }

    /// Restriction to a vertex subset, keeping edges inside it.
    pub fn subgraph(&self, keep: &[u32]) -> RelationGraph {
        let set: BTreeSet<u32> = keep.iter().copied().collect();
        RelationGraph {
            vertices: set.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| set.contains(&e.a) && set.contains(&e.b))
                .collect(),
        }
    }

    /// Non-loop neighbours with the connecting edge, in edge order.
    fn adjacency(&self) -> BTreeMap<u32, Vec<(u32, Edge)>> {
        let mut adj: BTreeMap<u32, Vec<(u32, Edge)>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &e in &self.edges {
            if e.is_loop() {
                continue;
            }
            adj.get_mut(&e.a).expect("vertex").push((e.b, e));
            adj.get_mut(&e.b).expect("vertex").push((e.a, e));
        }
        for list in adj.values_mut() {
            list.sort_by_key(|&(w, e)| (w, e));
        }
        adj
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn census(&self) -> ComponentCensus {
        let adj = self.adjacency();
        let mut components = Vec::new();
        for comp in self.components() {
            let inside: BTreeSet<u32> = comp.iter().copied().collect();
            let edges: Vec<&Edge> = self
                .edges
                .iter()
                .filter(|e| inside.contains(&e.a))
                .collect();
            let has_loop = edges.iter().any(|e| e.is_loop());
            let has_odd_cycle = has_loop || !two_colorable(&comp, &adj, |_| true);
            let (v, m) = (comp.len(), edges.len());
            components.push(ComponentInfo {
                vertex_count: v,
                edge_count: m,
                has_odd_cycle,
                is_tree: m + 1 == v,
                is_single_odd_cycle: m == v && has_odd_cycle,
                vertices: comp,
            });
        }
        let eta = components.iter().filter(|c| !c.has_odd_cycle).count();
        ComponentCensus {
            component_count: components.len(),
            components,
            eta,
        }
    }

    /// A component is balanced when its vertices can be signed so that dashed
    /// edges join equal signs and solid edges opposite signs. Loops unbalance.
    /// The rank of the edge-row matrix is `|V|` minus the balanced count.
    pub fn balanced_components(&self) -> usize {
        let adj = self.adjacency();
        self.components()
            .iter()
            .filter(|comp| {
                let inside: BTreeSet<u32> = comp.iter().copied().collect();
                let looped = self
                    .edges
                    .iter()
                    .any(|e| e.is_loop() && inside.contains(&e.a));
                !looped && two_colorable(comp, &adj, |e| e.is_solid())
            })
            .count()
    }

    pub fn forbidden_patterns(&self) -> Vec<ForbiddenPattern> {
        let mut out = BTreeSet::new();
        let dashed: Vec<Edge> = self.edges.iter().copied().filter(Edge::is_dashed).collect();
        let solid: Vec<Edge> = self.edges.iter().copied().filter(Edge::is_solid).collect();
        for d in &dashed {
            for (j, i) in [(d.a, d.b), (d.b, d.a)] {
                for s in &solid {
                    if s.is_loop() {
                        if s.a == j && i > j {
                            out.insert(ForbiddenPattern::DashedIntoLoop { i, j });
                        }
                    } else if s.touches(j) {
                        let k = s.other(j);
                        if k == i {
                            out.insert(ForbiddenPattern::DashedAndSolid { i: d.a, j: d.b });
                        } else if i > j {
                            out.insert(ForbiddenPattern::DashedIntoSolid { i, j, k });
                        }
                    }
                }
                for d2 in &dashed {
                    if d2 == d || !d2.touches(j) {
                        continue;
                    }
                    let k = d2.other(j);
                    if i < j && j < k {
                        out.insert(ForbiddenPattern::DashedChain { i, j, k });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph relation {\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for e in &self.edges {
            let style = if e.is_dashed() { " [style=dashed]" } else { "" };
            out.push_str(&format!("  {} -- {}{style};\n", e.a, e.b));
        }
        out.push_str("}\n");
        out
    }
}

/// BFS 2-coloring of one component. `flips(e)` says whether `e` joins
/// opposite colors. Loops are skipped.
fn two_colorable(
    comp: &[u32],
    adj: &BTreeMap<u32, Vec<(u32, Edge)>>,
    flips: impl Fn(&Edge) -> bool,
) -> bool {
    let mut color: BTreeMap<u32, bool> = BTreeMap::new();
    let Some(&s) = comp.first() else {
        return true;
    };
    color.insert(s, false);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let cv = color[&v];
        for &(w, e) in &adj[&v] {
            let want = cv ^ flips(&e);
            match color.get(&w) {
                Some(&cw) if cw != want => return false,
                Some(_) => {}
                None => {
                    color.insert(w, want);
                    queue.push_back(w);
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RewriteKind {
    /// Dashed `{i,j}` next to solid `{j,k}` becomes solid `{i,k}`.
    SlideToFarEnd,
    /// Dashed edge at the end of a solid path from a loop turns solid.
    SolidifyFromLoop,
    /// An edge closing an unbalanced cycle becomes a loop.
    CycleToLoop,
    /// An edge of a balanced even cycle is deleted.
    DeleteCycleEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub kind: RewriteKind,
    pub removed: Edge,
    pub added: Option<Edge>,
    pub graph: RelationGraph,
}

/// Repeatedly rewrite dashed edges into solid edges or loops, keeping the
/// rank of the edge-row matrix, until none are left.
pub fn eliminate_dashed(g: &RelationGraph) -> Result<RelationGraph, GraphError> {
    let steps = eliminate_dashed_trace(g)?;
    Ok(steps.last().map_or_else(|| g.clone(), |s| s.graph.clone()))
}

/// Every intermediate graph of [`eliminate_dashed`], in order.
pub fn eliminate_dashed_trace(g: &RelationGraph) -> Result<Vec<RewriteStep>, GraphError> {
    if !g.has_solid() {
        return Err(GraphError::SeparableInput);
    }
    let comps = g.components().len();
    if comps != 1 {
        return Err(GraphError::NotConnected(comps));
    }
    let mut steps = Vec::new();
    let mut cur = g.clone();
    // each step removes a dashed edge and adds none
    while cur.has_dashed() {
        let step = if let Some(step) = solidify_from_loop(&cur) {
            step
        } else if let Some(step) = unbalanced_cycle_to_loop(&cur) {
            step
        } else if let Some(step) = slide_to_far_end(&cur) {
            step
        } else {
            return Err(GraphError::RewriteStuck);
        };
        cur = step.graph.clone();
        steps.push(step);
    }
    Ok(steps)
}

fn solidify_from_loop(g: &RelationGraph) -> Option<RewriteStep> {
    let p = g.edges.iter().find(|e| e.is_loop())?.a;
    let adj = g.adjacency();
    let mut reached = BTreeSet::from([p]);
    let mut queue = VecDeque::from([p]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[&v] {
            if e.is_solid() && reached.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let d = *g
        .edges
        .iter()
        .find(|e| e.is_dashed() && (reached.contains(&e.a) || reached.contains(&e.b)))?;
    let new = Edge::solid(d.a, d.b);
    Some(RewriteStep {
        kind: RewriteKind::SolidifyFromLoop,
        removed: d,
        added: Some(new),
        graph: g.replace(d, new),
    })
}

/// Simple cycle through a non-tree edge of a BFS forest, as an edge list.
fn unbalanced_cycle(g: &RelationGraph) -> Option<Vec<Edge>> {
    let adj = g.adjacency();
    let mut parent: BTreeMap<u32, Option<(u32, Edge)>> = BTreeMap::new();
    let mut sign: BTreeMap<u32, bool> = BTreeMap::new();
    let mut depth: BTreeMap<u32, usize> = BTreeMap::new();
    for &s in &g.vertices {
        if parent.contains_key(&s) {
            continue;
        }
        parent.insert(s, None);
        sign.insert(s, false);
        depth.insert(s, 0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(Some((v, e)));
                    sign.insert(w, sign[&v] ^ e.is_solid());
                    depth.insert(w, depth[&v] + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    for &e in &g.edges {
        if e.is_loop() || sign[&e.a] ^ sign[&e.b] == e.is_solid() {
            continue;
        }
        // walk both ends up to their common ancestor
        let (mut u, mut v) = (e.a, e.b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while u != v {
            if depth[&u] >= depth[&v] {
                let (pu, pe) = parent[&u].expect("non-root");
                left.push(pe);
                u = pu;
            } else {
                let (pv, pe) = parent[&v].expect("non-root");
                right.push(pe);
                v = pv;
            }
        }
        let mut cycle = left;
        cycle.extend(right.into_iter().rev());
        cycle.push(e);
        return Some(cycle);
    }
    None
}

fn unbalanced_cycle_to_loop(g: &RelationGraph) -> Option<RewriteStep> {
    let cycle = unbalanced_cycle(g)?;
    let closing = cycle
        .iter()
        .copied()
        .filter(Edge::is_dashed)
        .min()
        .or_else(|| cycle.iter().copied().min())?;
    let new = Edge::self_loop(closing.a);
    Some(RewriteStep {
        kind: RewriteKind::CycleToLoop,
        removed: closing,
        added: Some(new),
        graph: g.replace(closing, new),
    })
}

fn slide_to_far_end(g: &RelationGraph) -> Option<RewriteStep> {
    for &d in g.edges.iter().filter(|e| e.is_dashed()) {
        for (j, i) in [(d.b, d.a), (d.a, d.b)] {
            for &s in g
                .edges
                .iter()
                .filter(|e| e.is_solid() && !e.is_loop() && e.touches(j))
            {
                let k = s.other(j);
                if k == i {
                    continue;
                }
                let new = Edge::solid(i, k);
                if g.contains(&new) {
                    continue;
                }
                return Some(RewriteStep {
                    kind: RewriteKind::SlideToFarEnd,
                    removed: d,
                    added: Some(new),
                    graph: g.replace(d, new),
                });
            }
        }
    }
    None
}

/// Delete one edge of a balanced even cycle, keeping some solid edge.
pub fn delete_even_cycle_edge(g: &RelationGraph) -> Result<RelationGraph, GraphError> {
    delete_even_cycle_step(g).map(|s| s.graph)
}

pub fn delete_even_cycle_step(g: &RelationGraph) -> Result<RewriteStep, GraphError> {
    let solid_total = g.edges.iter().filter(|e| e.is_solid()).count();
    for cycle in simple_cycles(g) {
        let solid_on = cycle.iter().filter(|e| e.is_solid()).count();
        if cycle.len() % 2 != 0 || solid_on % 2 != 0 {
            continue;
        }
        let victim = cycle
            .iter()
            .copied()
            .filter(Edge::is_dashed)
            .min()
            .or_else(|| cycle.iter().copied().filter(|_| solid_total > 1).min());
        if let Some(victim) = victim {
            return Ok(RewriteStep {
                kind: RewriteKind::DeleteCycleEdge,
                removed: victim,
                added: None,
                graph: g.remove(victim),
            });
        }
    }
    Err(GraphError::NoEvenCycle)
}

/// Simple cycles of length at least two, each found once from its smallest
/// vertex. Exponential in general; graphs here have a handful of vertices.
fn simple_cycles(g: &RelationGraph) -> Vec<Vec<Edge>> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for &s in &g.vertices {
        let mut path = vec![s];
        let mut edges: Vec<Edge> = Vec::new();
        cycle_dfs(s, s, &adj, &mut path, &mut edges, &mut out);
    }
    out
}

fn cycle_dfs(
    start: u32,
    v: u32,
    adj: &BTreeMap<u32, Vec<(u32, Edge)>>,
    path: &mut Vec<u32>,
    edges: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) {
    for &(w, e) in &adj[&v] {
        if edges.last() == Some(&e) {
            continue;
        }
        if w == start {
            // each cycle is met in both directions; keep the one whose
            // first edge sorts before its closing edge
            if edges.first().is_some_and(|&f| f < e) {
                let mut c = edges.clone();
                c.push(e);
                out.push(c);
            }
            continue;
        }
        if w < start || path.contains(&w) {
            continue;
        }
        path.push(w);
        edges.push(e);
        cycle_dfs(start, w, adj, path, edges, out);
        edges.pop();
        path.pop();
    }
}

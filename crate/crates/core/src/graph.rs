//! Directed graphs over labeled vertices: order graphs, proximity graphs,
//! transitive reduction, Hasse diagrams, and the equivalence check between
//! the proximity graph and the Hasse diagram of the inducing order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use thiserror::Error;

use crate::order::OrderSpace;
use crate::proximity::Proximity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("unsupported graph for transitive reduction: {0}")]
    UnsupportedGraph(String),
    #[error("unknown export format `{0}` (expected `dot` or `json`)")]
    UnknownFormat(String),
}

/// A simple directed graph with optional real edge weights.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Option<f64>>,
}

impl DirectedGraph {
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for v in vertices {
            let name = v.into();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(name));
            }
            names.push(name);
        }
        Ok(Self {
            vertices: names,
            index,
            edges: BTreeMap::new(),
        })
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, weight: Option<f64>) -> Result<(), GraphError> {
        let i = self.require(src)?;
        let j = self.require(dst)?;
        if self.edges.insert((i, j), weight).is_some() {
            return Err(GraphError::DuplicateEdge(src.to_owned(), dst.to_owned()));
        }
        Ok(())
    }

    fn require(&self, v: &str) -> Result<usize, GraphError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_owned()))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, src: &str, dst: &str) -> bool {
        match (self.index.get(src), self.index.get(dst)) {
            (Some(&i), Some(&j)) => self.edges.contains_key(&(i, j)),
            _ => false,
        }
    }

    /// Edges as `(src, dst, weight)` labels, in vertex-index order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, Option<f64>)> {
        self.edges.iter().map(move |(&(i, j), &w)| {
            (self.vertices[i].as_str(), self.vertices[j].as_str(), w)
        })
    }

    /// Edge labels sorted lexicographically by (src, dst).
    pub fn edges_sorted(&self) -> Vec<(String, String, Option<f64>)> {
        let mut out: Vec<(String, String, Option<f64>)> = self
            .edges()
            .map(|(a, b, w)| (a.to_owned(), b.to_owned(), w))
            .collect();
        out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        out
    }

    fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .range((i, 0)..=(i, usize::MAX))
            .map(|(&(_, j), _)| j)
    }

    fn edge_index_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    /// Deterministic DOT rendering: vertices and edges sorted
    /// lexicographically, weights rendered with 6 significant digits.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        let mut names: Vec<&String> = self.vertices.iter().collect();
        names.sort();
        for name in names {
            out.push_str(&format!("  {};\n", dot_id(name)));
        }
        for (src, dst, weight) in self.edges_sorted() {
            match weight {
                Some(w) => out.push_str(&format!(
                    "  {} -> {} [label=\"{}\"];\n",
                    dot_id(&src),
                    dot_id(&dst),
                    format_significant(w, 6)
                )),
                None => out.push_str(&format!("  {} -> {};\n", dot_id(&src), dot_id(&dst))),
            }
        }
        out.push_str("}\n");
        out
    }

    /// Deterministic JSON rendering:
    /// `{"vertices":[...],"edges":[[src,dst,weight|null],...]}`, both
    /// lists sorted lexicographically.
    pub fn to_json(&self) -> String {
        let mut names: Vec<&String> = self.vertices.iter().collect();
        names.sort();
        let edges: Vec<serde_json::Value> = self
            .edges_sorted()
            .into_iter()
            .map(|(a, b, w)| {
                serde_json::json!([
                    a,
                    b,
                    w.map(serde_json::Value::from).unwrap_or(serde_json::Value::Null)
                ])
            })
            .collect();
        serde_json::json!({ "vertices": names, "edges": edges }).to_string()
    }

    pub fn export(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::Dot => self.to_dot(),
            GraphFormat::Json => self.to_json(),
        }
    }
}

/// Quote a DOT identifier only when it is not already a valid bare ID.
fn dot_id(name: &str) -> String {
    let bare = !name.is_empty()
        && !name.chars().next().unwrap().is_ascii_digit()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        name.to_owned()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Format `v` with the given number of significant digits (plain decimal
/// notation; values needing more integer digits keep them all).
pub(crate) fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(GraphError::UnknownFormat(other.to_owned())),
        }
    }
}

/// The graph of the full order relation: one vertex per element, an edge
/// `a -> b` for every related pair with `a != b` (self-loops omitted).
/// For cyclic orders the edges come from triple reachability: `a -> b`
/// appears iff some triple walks `a` directly into `b`, which excludes
/// exactly `b = a` and `b = predecessor(a)`.
pub fn order_graph(space: &OrderSpace) -> DirectedGraph {
    let mut g = DirectedGraph::new(space.elements().iter().cloned()).expect("unique elements");
    match space {
        OrderSpace::Partial(po) => {
            let n = po.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j && po.le_idx(i, j) {
                        g.edges.insert((i, j), None);
                    }
                }
            }
        }
        OrderSpace::Total(to) => {
            let po = to.as_partial();
            let n = po.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j && po.le_idx(i, j) {
                        g.edges.insert((i, j), None);
                    }
                }
            }
        }
        OrderSpace::Cyclic(cy) => {
            let n = cy.len();
            let mut pred = vec![0; n];
            for (i, &s) in cy.successor_indices().iter().enumerate() {
                pred[s] = i;
            }
            for i in 0..n {
                for j in 0..n {
                    if j != i && j != pred[i] {
                        g.edges.insert((i, j), None);
                    }
                }
            }
        }
    }
    g
}

/// Kahn topological sort; `None` when the graph has a cycle.
fn topological_order(g: &DirectedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut indegree = vec![0usize; n];
    for &(_, j) in g.edges.keys() {
        indegree[j] += 1;
    }
    let mut queue: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = queue.iter().next() {
        queue.remove(&i);
        order.push(i);
        for j in g.out_neighbors(i) {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                queue.insert(j);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn reachable_avoiding_direct(g: &DirectedGraph, src: usize, dst: usize) -> bool {
    // DFS from src's out-neighbors other than dst itself; finding dst
    // means a path of length >= 2 exists.
    let mut stack: Vec<usize> = g.out_neighbors(src).filter(|&w| w != dst).collect();
    let mut seen = vec![false; g.vertex_count()];
    while let Some(v) = stack.pop() {
        if v == dst {
            return true;
        }
        if seen[v] {
            continue;
        }
        seen[v] = true;
        stack.extend(g.out_neighbors(v).filter(|&w| !seen[w]));
    }
    false
}

/// Minimal edge subset preserving reachability.
///
/// For a DAG this is the unique transitive reduction, computed by the
/// per-edge alternate-path test. The only supported cyclic input is the
/// order graph of a cyclic order, whose reduction is the unique successor
/// cycle recovered from it.
pub fn transitive_reduction(g: &DirectedGraph) -> Result<DirectedGraph, GraphError> {
    if topological_order(g).is_some() {
        let mut reduced = DirectedGraph::new(g.vertices.iter().cloned()).expect("same vertices");
        for (i, j) in g.edge_index_pairs() {
            if !reachable_avoiding_direct(g, i, j) {
                reduced.edges.insert((i, j), g.edges[&(i, j)]);
            }
        }
        return Ok(reduced);
    }
    // Cyclic branch: recover the successor permutation. In the order
    // graph of a cyclic order each vertex points at every vertex except
    // itself and its predecessor, so the unique missing target is the
    // predecessor.
    let n = g.vertex_count();
    if n < 3 {
        return Err(GraphError::UnsupportedGraph(
            "cyclic graph on fewer than 3 vertices".to_owned(),
        ));
    }
    let mut succ = vec![usize::MAX; n];
    for i in 0..n {
        let outgoing: BTreeSet<usize> = g.out_neighbors(i).collect();
        let missing: Vec<usize> = (0..n).filter(|&j| j != i && !outgoing.contains(&j)).collect();
        let &[pred] = missing.as_slice() else {
            return Err(GraphError::UnsupportedGraph(
                "not the order graph of a cyclic order".to_owned(),
            ));
        };
        if succ[pred] != usize::MAX {
            return Err(GraphError::UnsupportedGraph(
                "not the order graph of a cyclic order".to_owned(),
            ));
        }
        succ[pred] = i;
    }
    let mut cur = 0;
    for step in 1..=n {
        cur = succ[cur];
        if cur == 0 && step != n {
            return Err(GraphError::UnsupportedGraph(
                "successor map is not a single cycle".to_owned(),
            ));
        }
    }
    if cur != 0 {
        return Err(GraphError::UnsupportedGraph(
            "successor map is not a single cycle".to_owned(),
        ));
    }
    let mut reduced = DirectedGraph::new(g.vertices.iter().cloned()).expect("same vertices");
    for (i, &s) in succ.iter().enumerate() {
        reduced.edges.insert((i, s), None);
    }
    Ok(reduced)
}

/// The Hasse diagram: transitive reduction of the order graph.
pub fn hasse(space: &OrderSpace) -> Result<DirectedGraph, GraphError> {
    transitive_reduction(&order_graph(space))
}

/// The graph of the induced proximity: an edge `a -> b` wherever
/// `near(a, b)` is 0 and `a != b`. Reflexive nearness never emits a loop.
pub fn proximity_graph(space: &OrderSpace) -> DirectedGraph {
    let mut g = DirectedGraph::new(space.elements().iter().cloned()).expect("unique elements");
    let ids = space.elements();
    for (i, a) in ids.iter().enumerate() {
        for (j, b) in ids.iter().enumerate() {
            if i == j {
                continue;
            }
            let verdict = crate::proximity::near(space, a, b).expect("elements of the space");
            if verdict == Proximity::Near {
                g.edges.insert((i, j), None);
            }
        }
    }
    g
}

/// Edge-set difference between two graphs, as sorted label pairs:
/// `(only_in_left, only_in_right)`.
pub fn edge_diff(
    left: &DirectedGraph,
    right: &DirectedGraph,
) -> (Vec<(String, String)>, Vec<(String, String)>) {
    let lhs: BTreeSet<(String, String)> = left
        .edges()
        .map(|(a, b, _)| (a.to_owned(), b.to_owned()))
        .collect();
    let rhs: BTreeSet<(String, String)> = right
        .edges()
        .map(|(a, b, _)| (a.to_owned(), b.to_owned()))
        .collect();
    (
        lhs.difference(&rhs).cloned().collect(),
        rhs.difference(&lhs).cloned().collect(),
    )
}

/// Result of comparing the proximity graph with the Hasse diagram.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub only_in_proximity: Vec<(String, String)>,
    pub only_in_hasse: Vec<(String, String)>,
}

/// Checks that the proximity graph of the induced proximity and the Hasse
/// diagram of the order have identical vertex and edge sets.
pub fn check_equivalence(space: &OrderSpace) -> Result<EquivalenceReport, GraphError> {
    let prox = proximity_graph(space);
    let hasse_diagram = hasse(space)?;
    let (only_in_proximity, only_in_hasse) = edge_diff(&prox, &hasse_diagram);
    Ok(EquivalenceReport {
        equivalent: only_in_proximity.is_empty() && only_in_hasse.is_empty(),
        only_in_proximity,
        only_in_hasse,
    })
}

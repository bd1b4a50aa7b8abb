//! Core graph data model: undirected weighted graphs with interdiction
//! costs, directed flow networks, edge sets, and the extended weight
//! domain used for spanning-tree values.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 1-based vertex id as it appears in instance files.
pub type VertexId = u32;

/// Index of an edge in a graph's canonical (sorted) edge list.
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(VertexId, usize),
    #[error("undirected edge {{{0}, {1}}} has interdiction cost 0; costs must be positive")]
    ZeroCost(VertexId, VertexId),
    #[error("arc ({0}, {1}) has capacity 0; capacities must be positive")]
    ZeroCapacity(VertexId, VertexId),
    #[error("bipartition invalid: {0}")]
    BadBipartition(String),
    #[error("source and sink coincide at vertex {0}")]
    SourceIsSink(VertexId),
    #[error("edge id {0} not present in host graph with {1} edges")]
    UnknownEdge(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("expected unit weights and costs")]
    NotUnit,
}

/// Weight of a spanning structure: a non-negative integer or infinity.
///
/// Infinity is the weight of a minimum spanning tree of a disconnected
/// graph. It compares greater than every finite value; arithmetic on
/// finite values never produces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedWeight {
    Finite(u64),
    Infinity,
}

impl ExtendedWeight {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedWeight::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedWeight::Finite(x) => Some(x),
            ExtendedWeight::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedWeight::Finite(x) => write!(f, "{x}"),
            ExtendedWeight::Infinity => write!(f, "Infinity"),
        }
    }
}

impl Serialize for ExtendedWeight {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedWeight::Finite(x) => ser.serialize_u64(*x),
            ExtendedWeight::Infinity => ser.serialize_str("Infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedWeight {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(de)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(ExtendedWeight::Finite)
                .ok_or_else(|| D::Error::custom("expected non-negative integer")),
            serde_json::Value::String(s) if s == "Infinity" => Ok(ExtendedWeight::Infinity),
            _ => Err(D::Error::custom("expected integer or \"Infinity\"")),
        }
    }
}

/// An undirected edge with weight and interdiction cost. Endpoints are
/// stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: u64,
    pub cost: u64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, weight: u64, cost: u64) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        Edge { u, v, weight, cost }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }
}

/// Bipartition annotation: the X side; the Y side is the complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: BTreeSet<VertexId>,
}

/// Undirected simple graph with per-edge weight and interdiction cost.
///
/// Vertices are `1..=n`. Edges are kept sorted by `(u, v)`; an [`EdgeId`]
/// is the index into that canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    bipartition: Option<Bipartition>,
}

impl WeightedGraph {
    pub fn new(
        n: usize,
        edges: Vec<(VertexId, VertexId, u64, u64)>,
        bipartition_left: Option<BTreeSet<VertexId>>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::with_capacity(edges.len());
        for (u, v, w, c) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if x == 0 || x as usize > n {
                    return Err(GraphError::VertexOutOfRange(x, n));
                }
            }
            if c == 0 {
                return Err(GraphError::ZeroCost(u.min(v), u.max(v)));
            }
            list.push(Edge::new(u, v, w, c));
        }
        list.sort();
        for w in list.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        let bipartition = match bipartition_left {
            None => None,
            Some(left) => {
                for &x in &left {
                    if x == 0 || x as usize > n {
                        return Err(GraphError::VertexOutOfRange(x, n));
                    }
                }
                for e in &list {
                    if left.contains(&e.u) == left.contains(&e.v) {
                        return Err(GraphError::BadBipartition(format!(
                            "edge {{{}, {}}} does not cross the bipartition",
                            e.u, e.v
                        )));
                    }
                }
                Some(Bipartition { left })
            }
        };
        Ok(WeightedGraph { n, edges: list, bipartition })
    }

    /// Builds a unit-weight, unit-cost graph from endpoint pairs.
    pub fn unit(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::new(n, pairs.iter().map(|&(u, v)| (u, v, 1, 1)).collect(), None)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.n as VertexId
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    pub fn has_unit_costs(&self) -> bool {
        self.edges.iter().all(|e| e.cost == 1)
    }

    pub fn has_zero_one_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight <= 1)
    }

    /// Total weight of all edges.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Looks up the edge id of `{u, v}`, if present.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
    }

    /// Adjacency lists: for each vertex (0-based slot `id-1`), the list of
    /// `(neighbor, edge id)` pairs in canonical edge order.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u as usize - 1].push((e.v, i));
            adj[e.v as usize - 1].push((e.u, i));
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// A copy of the graph with the given edges removed. Vertex set is
    /// unchanged. The bipartition annotation, when present, survives.
    pub fn without_edges(&self, removed: &[EdgeId]) -> WeightedGraph {
        let set: BTreeSet<EdgeId> = removed.iter().copied().collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !set.contains(i))
            .map(|(_, e)| *e)
            .collect();
        WeightedGraph { n: self.n, edges, bipartition: self.bipartition.clone() }
    }

    /// Keeps the listed vertices, renumbering them by increasing original
    /// id. Returns the induced subgraph and the old-to-new id map.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> (WeightedGraph, Vec<(VertexId, VertexId)>) {
        let mut map = Vec::new();
        let mut new_id = 0u32;
        for &v in keep {
            new_id += 1;
            map.push((v, new_id));
        }
        let lookup = |x: VertexId| map.iter().find(|(old, _)| *old == x).map(|(_, n)| *n);
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let (u, v) = (lookup(e.u)?, lookup(e.v)?);
                Some(Edge::new(u, v, e.weight, e.cost))
            })
            .collect::<Vec<_>>();
        let bipartition = self.bipartition.as_ref().map(|b| Bipartition {
            left: b.left.iter().filter_map(|&x| lookup(x)).collect(),
        });
        let mut g = WeightedGraph { n: map.len(), edges, bipartition };
        g.edges.sort();
        (g, map)
    }

    /// Attempts a proper 2-coloring. Returns the side containing vertex 1
    /// of each component, or an error when an odd cycle exists. The stored
    /// annotation is not consulted.
    pub fn two_color(&self) -> Result<BTreeSet<VertexId>, GraphError> {
        let adj = self.adjacency();
        let mut color = vec![None::<bool>; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for &(nb, _) in &adj[x] {
                    let y = nb as usize - 1;
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return Err(GraphError::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok((1..=self.n)
            .filter(|&v| color[v - 1] == Some(true))
            .map(|v| v as VertexId)
            .collect())
    }

    /// The declared bipartition when present, otherwise a computed one.
    pub fn bipartition_or_computed(&self) -> Result<BTreeSet<VertexId>, GraphError> {
        match &self.bipartition {
            Some(b) => Ok(b.left.clone()),
            None => self.two_color(),
        }
    }
}

/// A directed arc with capacity and interdiction cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub from: VertexId,
    pub to: VertexId,
    pub capacity: u64,
    pub cost: u64,
}

/// Directed network with arc capacities, arc interdiction costs, and
/// distinguished source and sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    s: VertexId,
    t: VertexId,
}

impl FlowNetwork {
    pub fn new(
        n: usize,
        arcs: Vec<(VertexId, VertexId, u64, u64)>,
        s: VertexId,
        t: VertexId,
    ) -> Result<Self, GraphError> {
        if s == t {
            return Err(GraphError::SourceIsSink(s));
        }
        for x in [s, t] {
            if x == 0 || x as usize > n {
                return Err(GraphError::VertexOutOfRange(x, n));
            }
        }
        let mut list = Vec::with_capacity(arcs.len());
        for (from, to, capacity, cost) in arcs {
            if from == to {
                return Err(GraphError::SelfLoop(from));
            }
            for x in [from, to] {
                if x == 0 || x as usize > n {
                    return Err(GraphError::VertexOutOfRange(x, n));
                }
            }
            if capacity == 0 {
                return Err(GraphError::ZeroCapacity(from, to));
            }
            list.push(Arc { from, to, capacity, cost });
        }
        list.sort();
        for w in list.windows(2) {
            if w[0].from == w[1].from && w[0].to == w[1].to {
                return Err(GraphError::DuplicateEdge(w[0].from, w[0].to));
            }
        }
        Ok(FlowNetwork { n, arcs: list, s, t })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    pub fn source(&self) -> VertexId {
        self.s
    }

    pub fn sink(&self) -> VertexId {
        self.t
    }

    pub fn without_arcs(&self, removed: &[usize]) -> FlowNetwork {
        let set: BTreeSet<usize> = removed.iter().copied().collect();
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !set.contains(i))
            .map(|(_, a)| *a)
            .collect();
        FlowNetwork { n: self.n, arcs, s: self.s, t: self.t }
    }
}

/// A subset of a host graph's edges together with its totals, both
/// recomputable from the members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSet {
    pub ids: Vec<EdgeId>,
    pub total_weight: u64,
    pub total_cost: u64,
}

impl EdgeSet {
    pub fn from_ids(g: &WeightedGraph, mut ids: Vec<EdgeId>) -> Result<Self, GraphError> {
        ids.sort_unstable();
        ids.dedup();
        for &i in &ids {
            if i >= g.edge_count() {
                return Err(GraphError::UnknownEdge(i, g.edge_count()));
            }
        }
        let total_weight = ids.iter().map(|&i| g.edge(i).weight).sum();
        let total_cost = ids.iter().map(|&i| g.edge(i).cost).sum();
        Ok(EdgeSet { ids, total_weight, total_cost })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Connected components: the number of parts and a vertex partition in
/// order of first appearance.
pub fn components(g: &WeightedGraph) -> (usize, Vec<Vec<VertexId>>) {
    let adj = g.adjacency();
    let mut label = vec![usize::MAX; g.vertex_count()];
    let mut parts: Vec<Vec<VertexId>> = Vec::new();
    for start in 0..g.vertex_count() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut part = Vec::new();
        let mut stack = vec![start];
        label[start] = id;
        while let Some(x) = stack.pop() {
            part.push(x as VertexId + 1);
            for &(nb, _) in &adj[x] {
                let y = nb as usize - 1;
                if label[y] == usize::MAX {
                    label[y] = id;
                    stack.push(y);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    (parts.len(), parts)
}

/// Number of connected components only.
pub fn component_count(g: &WeightedGraph) -> usize {
    components(g).0
}

/// Which edges to count when a chosen set dominates its surroundings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominationMode {
    /// Members of the chosen edge set count as dominated.
    Inclusive,
    /// Only edges outside the chosen set count.
    Exclusive,
}

/// A selection handed to [`coverage_counts`].
#[derive(Debug, Clone)]
pub enum Selection<'a> {
    Vertices(&'a [VertexId]),
    Edges(&'a [EdgeId]),
}

/// For a vertex selection, the number of edges with at least one endpoint
/// chosen (the mode is ignored). For an edge selection, the number of
/// dominated edges: an edge is dominated when it shares an endpoint with a
/// chosen edge; inclusive mode additionally counts every chosen edge.
pub fn coverage_counts(g: &WeightedGraph, sel: Selection<'_>, mode: DominationMode) -> usize {
    match sel {
        Selection::Vertices(vs) => {
            let set: BTreeSet<VertexId> = vs.iter().copied().collect();
            g.edges()
                .iter()
                .filter(|e| set.contains(&e.u) || set.contains(&e.v))
                .count()
        }
        Selection::Edges(ids) => {
            let set: BTreeSet<EdgeId> = ids.iter().copied().collect();
            let mut touched = vec![false; g.vertex_count() + 1];
            for &i in &set {
                let e = g.edge(i);
                touched[e.u as usize] = true;
                touched[e.v as usize] = true;
            }
            g.edges()
                .iter()
                .enumerate()
                .filter(|(i, e)| {
                    let member = set.contains(i);
                    let adjacent = touched[e.u as usize] || touched[e.v as usize];
                    match mode {
                        DominationMode::Inclusive => member || adjacent,
                        DominationMode::Exclusive => !member && adjacent,
                    }
                })
                .count()
        }
    }
}

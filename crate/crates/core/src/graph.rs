//! Edge streams and the insertion-only estimators plugged into the histogram.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::histogram::Estimator;

pub type VertexId = u32;

/// An undirected edge between two distinct, positive vertex ids.
///
/// Stored with the smaller endpoint first, so `{u, v}` and `{v, u}` compare
/// equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        if u == v {
            return Err(Error::RejectedItem(format!("self-loop on vertex {u}")));
        }
        if u == 0 || v == 0 {
            return Err(Error::RejectedItem(format!(
                "vertex ids start at 1, got {{{u}, {v}}}"
            )));
        }
        Ok(Self {
            u: u.min(v),
            v: u.max(v),
        })
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.u, self.v]
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// Greedy maximal matching: an arriving edge joins the matching iff both
/// endpoints are still unmatched.
///
/// The matched vertices cover every ingested edge, and the matching size is
/// within a factor 2 of the maximum matching of the ingested edges.
#[derive(Debug, Clone, Default)]
pub struct GreedyMatching {
    edges: Vec<Edge>,
    mate: HashMap<VertexId, VertexId>,
}

impl GreedyMatching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true when the edge was added to the matching.
    pub fn insert(&mut self, e: Edge) -> bool {
        if self.mate.contains_key(&e.u) || self.mate.contains_key(&e.v) {
            return false;
        }
        self.mate.insert(e.u, e.v);
        self.mate.insert(e.v, e.u);
        self.edges.push(e);
        true
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn matched_edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_matched(&self, x: VertexId) -> bool {
        self.mate.contains_key(&x)
    }

    /// Endpoints of the matched edges; a vertex cover of the ingested edges.
    pub fn cover(&self) -> HashSet<VertexId> {
        self.mate.keys().copied().collect()
    }

    pub fn covers(&self, e: &Edge) -> bool {
        self.is_matched(e.u) || self.is_matched(e.v)
    }
}

impl Estimator for GreedyMatching {
    type Item = Edge;

    fn ingest(&mut self, e: &Edge) -> Result<()> {
        self.insert(*e);
        Ok(())
    }

    fn value(&self) -> f64 {
        self.size() as f64
    }

    fn footprint(&self) -> usize {
        self.mate.len()
    }
}

/// Exact online tracker of alpha-good edges.
///
/// Edge `e_i` is alpha-good in the prefix seen so far when at most `alpha`
/// later arrivals touch each of its endpoints. Every arrival is a distinct
/// stream element, duplicates included. The estimator value is the running
/// maximum of the number of alpha-good edges over all prefixes.
///
/// Each touched vertex keeps the arrival indices of its last `alpha + 1`
/// incident edges; the one pushed out of that queue has just received its
/// `(alpha + 1)`-th later neighbour and stops being good. Queues are trimmed
/// from the front down to their oldest live entry, so memory stays linear in
/// the number of live edges.
#[derive(Debug, Clone)]
pub struct AlphaGoodTracker {
    alpha: usize,
    arrivals: u64,
    live: HashMap<u64, Edge>,
    recent: HashMap<VertexId, VecDeque<u64>>,
    running_max: usize,
}

impl AlphaGoodTracker {
    pub fn new(alpha: usize) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::Config("alpha must be at least 1".into()));
        }
        Ok(Self {
            alpha,
            arrivals: 0,
            live: HashMap::new(),
            recent: HashMap::new(),
            running_max: 0,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn insert(&mut self, e: Edge) {
        self.arrivals += 1;
        let index = self.arrivals;
        self.live.insert(index, e);
        for x in e.endpoints() {
            let queue = self.recent.entry(x).or_default();
            queue.push_back(index);
            if queue.len() > self.alpha + 1 {
                let expired = queue.pop_front().expect("queue is non-empty");
                if let Some(dead) = self.live.remove(&expired) {
                    self.trim(dead.other(x));
                }
            }
            self.trim(x);
        }
        self.running_max = self.running_max.max(self.live.len());
    }

    fn trim(&mut self, x: VertexId) {
        let Some(queue) = self.recent.get_mut(&x) else {
            return;
        };
        while queue.front().is_some_and(|i| !self.live.contains_key(i)) {
            queue.pop_front();
        }
        if queue.is_empty() {
            self.recent.remove(&x);
        }
    }

    /// |E_alpha(S_t)| for the prefix ingested so far.
    pub fn current_count(&self) -> usize {
        self.live.len()
    }

    /// E*_alpha: the maximum of `current_count` over all prefixes so far.
    pub fn star(&self) -> usize {
        self.running_max
    }

    /// Live edges with their 1-based arrival indices, in arrival order.
    pub fn live_edges(&self) -> Vec<(u64, Edge)> {
        let mut edges: Vec<(u64, Edge)> = self.live.iter().map(|(i, e)| (*i, *e)).collect();
        edges.sort_unstable();
        edges
    }
}

impl Estimator for AlphaGoodTracker {
    type Item = Edge;

    fn ingest(&mut self, e: &Edge) -> Result<()> {
        self.insert(*e);
        Ok(())
    }

    fn value(&self) -> f64 {
        self.running_max as f64
    }

    fn footprint(&self) -> usize {
        self.live.len() + self.recent.values().map(VecDeque::len).sum::<usize>()
    }
}

/// Default cap on distinct edges for exact matching.
pub const EXACT_EDGE_CAP: usize = 2_000;

/// Exact maximum matching size over the distinct ingested edges.
///
/// Keeps a maximum matching as witness. A new edge between two free vertices
/// extends it directly; any other new edge triggers a full recomputation
/// with Gabow's blossom algorithm. Desk scale only.
#[derive(Debug, Clone)]
pub struct ExactMatching {
    cap: usize,
    edges: Vec<Edge>,
    seen: HashSet<Edge>,
    mate: HashMap<VertexId, VertexId>,
    size: usize,
}

impl Default for ExactMatching {
    fn default() -> Self {
        Self::with_cap(EXACT_EDGE_CAP)
    }
}

impl ExactMatching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            edges: Vec::new(),
            seen: HashSet::new(),
            mate: HashMap::new(),
            size: 0,
        }
    }

    pub fn insert(&mut self, e: Edge) -> Result<()> {
        if self.seen.contains(&e) {
            return Ok(());
        }
        if self.edges.len() >= self.cap {
            return Err(Error::Capacity {
                what: "distinct edges for exact matching",
                limit: self.cap,
            });
        }
        self.seen.insert(e);
        self.edges.push(e);
        if !self.mate.contains_key(&e.u) && !self.mate.contains_key(&e.v) {
            self.mate.insert(e.u, e.v);
            self.mate.insert(e.v, e.u);
            self.size += 1;
        } else {
            self.recompute();
        }
        Ok(())
    }

    fn recompute(&mut self) {
        let (size, matching) = blossom_matching(&self.edges);
        self.mate.clear();
        for e in matching {
            self.mate.insert(e.u, e.v);
            self.mate.insert(e.v, e.u);
        }
        self.size = size;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn distinct_edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn matching(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .filter(|(u, v)| u < v)
            .map(|(u, v)| Edge { u: *u, v: *v })
            .collect()
    }
}

impl Estimator for ExactMatching {
    type Item = Edge;

    fn ingest(&mut self, e: &Edge) -> Result<()> {
        self.insert(*e)
    }

    fn value(&self) -> f64 {
        self.size as f64
    }

    fn footprint(&self) -> usize {
        self.edges.len()
    }
}

/// Maximum matching of an edge set via petgraph's blossom implementation.
pub fn blossom_matching(edges: &[Edge]) -> (usize, Vec<Edge>) {
    let mut index: HashMap<VertexId, NodeIndex> = HashMap::new();
    let mut graph: UnGraph<VertexId, ()> = UnGraph::with_capacity(2 * edges.len(), edges.len());
    let mut node = |graph: &mut UnGraph<VertexId, ()>, x: VertexId| {
        *index.entry(x).or_insert_with(|| graph.add_node(x))
    };
    for e in edges {
        let a = node(&mut graph, e.u);
        let b = node(&mut graph, e.v);
        graph.update_edge(a, b, ());
    }
    let matching = maximum_matching(&graph);
    let witness: Vec<Edge> = matching
        .edges()
        .map(|(a, b)| Edge {
            u: graph[a].min(graph[b]),
            v: graph[a].max(graph[b]),
        })
        .collect();
    (witness.len(), witness)
}

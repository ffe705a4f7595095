//! Brute-force ground truth: exact maximum matching, exact minimum vertex
//! cover, exact alpha-good counts, window recomputation and split-based
//! property checkers.
//!
//! Everything here is pure and sized for desk-scale instances. Witnesses are
//! checked before they are returned.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};
use crate::histogram::window_start;

/// Largest edge set the exact solvers accept.
pub const SNAPSHOT_EDGE_CAP: usize = 2_000;
/// Largest vertex cover the exact cover search will look for.
pub const COVER_SIZE_CAP: usize = 40;
/// Longest stream accepted by [`e_star_exact`].
pub const ESTAR_STREAM_CAP: usize = 10_000;

/// A simple graph given by its distinct edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSnapshot {
    edges: Vec<Edge>,
    vertex_count_hint: Option<usize>,
}

impl GraphSnapshot {
    /// Collects the distinct edges of a stream.
    pub fn from_stream(stream: &[Edge]) -> Self {
        let edges: BTreeSet<Edge> = stream.iter().copied().collect();
        Self {
            edges: edges.into_iter().collect(),
            vertex_count_hint: None,
        }
    }

    pub fn with_vertex_hint(mut self, n: usize) -> Self {
        self.vertex_count_hint = Some(n);
        self
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count_hint(&self) -> Option<usize> {
        self.vertex_count_hint
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Which exact quantity to evaluate on a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Matching,
    VertexCover,
    EStar { alpha: usize },
}

// Compact adjacency with deletable vertices, shared by both searches.
struct Residual {
    labels: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl Residual {
    fn new(edges: &[Edge]) -> Self {
        let mut index: HashMap<VertexId, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        for e in edges {
            let [a, b] = e.endpoints().map(|x| {
                *index.entry(x).or_insert_with(|| {
                    labels.push(x);
                    adj.push(Vec::new());
                    labels.len() - 1
                })
            });
            adj[a].push(b);
            adj[b].push(a);
        }
        let deg = adj.iter().map(Vec::len).collect();
        let alive = vec![true; labels.len()];
        Self {
            labels,
            adj,
            alive,
            deg,
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        for &x in &self.adj[v] {
            if self.alive[x] {
                self.deg[x] -= 1;
            }
        }
    }

    fn restore(&mut self, v: usize) {
        debug_assert!(!self.alive[v]);
        for &x in &self.adj[v] {
            if self.alive[x] {
                self.deg[x] += 1;
            }
        }
        self.alive[v] = true;
    }

    fn undo_to(&mut self, undo: &mut Vec<usize>, mark: usize) {
        while undo.len() > mark {
            let v = undo.pop().expect("undo stack above mark");
            self.restore(v);
        }
    }

    fn alive_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(|&x| self.alive[x])
    }

    // Sizes of the connected components among alive, non-isolated vertices.
    fn component_sizes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.labels.len()];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.labels.len() {
            if !self.alive[s] || seen[s] || self.deg[s] == 0 {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for x in self.adj[v].iter().copied() {
                    if self.alive[x] && !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    // Size of a greedy maximal matching on the alive part.
    fn greedy_matching_size(&self) -> usize {
        let mut used = vec![false; self.labels.len()];
        let mut size = 0;
        for v in 0..self.labels.len() {
            if !self.alive[v] || used[v] {
                continue;
            }
            if let Some(x) = self.alive_neighbours(v).find(|&x| !used[x]) {
                used[v] = true;
                used[x] = true;
                size += 1;
            }
        }
        size
    }
}

struct MatchingSearch {
    graph: Residual,
    undo: Vec<usize>,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl MatchingSearch {
    fn run(&mut self) {
        let mark = self.undo.len();
        let matched_before = self.current.len();

        // Isolated vertices go; a degree-one vertex is matched to its only
        // neighbour, which never loses optimality.
        loop {
            let mut changed = false;
            for v in 0..self.graph.labels.len() {
                if !self.graph.alive[v] {
                    continue;
                }
                match self.graph.deg[v] {
                    0 => {
                        self.graph.remove(v);
                        self.undo.push(v);
                        changed = true;
                    }
                    1 => {
                        let x = self.graph.alive_neighbours(v).next().expect("degree one");
                        self.current.push((v, x));
                        self.graph.remove(v);
                        self.undo.push(v);
                        self.graph.remove(x);
                        self.undo.push(x);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }

        let upper = self.current.len()
            + self
                .graph
                .component_sizes()
                .iter()
                .map(|s| s / 2)
                .sum::<usize>();
        if upper > self.best.len() {
            // Some maximum matching covers any non-isolated vertex, so
            // branching over the partners of one vertex is exhaustive.
            let pivot = (0..self.graph.labels.len())
                .filter(|&v| self.graph.alive[v])
                .min_by_key(|&v| self.graph.deg[v]);
            if let Some(v) = pivot {
                let mut partners: Vec<usize> = self.graph.alive_neighbours(v).collect();
                partners.sort_by_key(|&x| self.graph.deg[x]);
                for x in partners {
                    self.current.push((v, x));
                    self.graph.remove(v);
                    self.graph.remove(x);
                    self.run();
                    self.graph.restore(x);
                    self.graph.restore(v);
                    self.current.pop();
                    if self.best.len() >= upper {
                        break;
                    }
                }
            }
        }

        self.current.truncate(matched_before);
        self.graph.undo_to(&mut self.undo, mark);
    }
}

/// Exact maximum matching by branch and bound.
///
/// Returns the size and a witness matching.
pub fn max_matching_exact(g: &GraphSnapshot) -> Result<(usize, Vec<Edge>)> {
    if g.edges.len() > SNAPSHOT_EDGE_CAP {
        return Err(Error::Capacity {
            what: "edges for exact matching",
            limit: SNAPSHOT_EDGE_CAP,
        });
    }
    let mut search = MatchingSearch {
        graph: Residual::new(&g.edges),
        undo: Vec::new(),
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run();
    let labels = &search.graph.labels;
    let witness: Vec<Edge> = search
        .best
        .iter()
        .map(|&(a, b)| Edge::new(labels[a], labels[b]).expect("graph edges are valid"))
        .collect();
    assert!(is_matching(&witness), "matching witness is not disjoint");
    Ok((witness.len(), witness))
}

pub fn is_matching(edges: &[Edge]) -> bool {
    let mut used = BTreeSet::new();
    edges
        .iter()
        .all(|e| used.insert(e.u()) && used.insert(e.v()))
}

pub fn is_vertex_cover(edges: &[Edge], cover: &[VertexId]) -> bool {
    let cover: BTreeSet<VertexId> = cover.iter().copied().collect();
    edges
        .iter()
        .all(|e| cover.contains(&e.u()) || cover.contains(&e.v()))
}

struct CoverSearch {
    graph: Residual,
    undo: Vec<usize>,
    current: Vec<usize>,
    best: Option<Vec<usize>>,
    // only covers strictly smaller than this are of interest
    bound: usize,
}

impl CoverSearch {
    fn take(&mut self, v: usize) {
        self.current.push(v);
        self.graph.remove(v);
        self.undo.push(v);
    }

    fn run(&mut self) {
        let mark = self.undo.len();
        let taken_before = self.current.len();

        // Drop isolated vertices; a degree-one vertex is covered through its
        // neighbour.
        loop {
            let mut changed = false;
            for v in 0..self.graph.labels.len() {
                if !self.graph.alive[v] {
                    continue;
                }
                match self.graph.deg[v] {
                    0 => {
                        self.graph.remove(v);
                        self.undo.push(v);
                        changed = true;
                    }
                    1 => {
                        let x = self.graph.alive_neighbours(v).next().expect("degree one");
                        self.take(x);
                        changed = true;
                    }
                    _ => {}
                }
                if self.current.len() >= self.bound {
                    break;
                }
            }
            if !changed || self.current.len() >= self.bound {
                break;
            }
        }

        let pivot = (0..self.graph.labels.len())
            .filter(|&v| self.graph.alive[v] && self.graph.deg[v] > 0)
            .max_by_key(|&v| self.graph.deg[v]);

        match pivot {
            None => {
                if self.current.len() < self.bound {
                    self.bound = self.current.len();
                    self.best = Some(self.current.clone());
                }
            }
            Some(v) => {
                let lower = self.current.len() + self.graph.greedy_matching_size();
                if lower < self.bound {
                    // Either v is in the cover, or all of its neighbours are.
                    let inner = self.undo.len();
                    self.take(v);
                    self.run();
                    self.current.pop();
                    self.graph.undo_to(&mut self.undo, inner);

                    let neighbours: Vec<usize> = self.graph.alive_neighbours(v).collect();
                    if self.current.len() + neighbours.len() < self.bound {
                        for x in neighbours {
                            self.take(x);
                        }
                        self.run();
                    }
                }
            }
        }

        self.current.truncate(taken_before);
        self.graph.undo_to(&mut self.undo, mark);
    }
}

/// Exact minimum vertex cover by bounded search.
///
/// Fails with a capacity error when the graph has more than
/// [`SNAPSHOT_EDGE_CAP`] edges or no cover of size at most
/// [`COVER_SIZE_CAP`] exists.
pub fn min_vertex_cover_exact(g: &GraphSnapshot) -> Result<(usize, Vec<VertexId>)> {
    if g.edges.len() > SNAPSHOT_EDGE_CAP {
        return Err(Error::Capacity {
            what: "edges for exact vertex cover",
            limit: SNAPSHOT_EDGE_CAP,
        });
    }
    let mut search = CoverSearch {
        graph: Residual::new(&g.edges),
        undo: Vec::new(),
        current: Vec::new(),
        best: None,
        bound: COVER_SIZE_CAP + 1,
    };
    search.run();
    let best = search.best.ok_or(Error::Capacity {
        what: "vertex cover size",
        limit: COVER_SIZE_CAP,
    })?;
    let mut cover: Vec<VertexId> = best.iter().map(|&v| search.graph.labels[v]).collect();
    cover.sort_unstable();
    assert!(
        is_vertex_cover(&g.edges, &cover),
        "cover witness misses an edge"
    );
    Ok((cover.len(), cover))
}

/// |E_alpha(S)| straight from the definition: count, for every edge, the
/// later edges touching each endpoint. Quadratic.
pub fn alpha_good_count(stream: &[Edge], alpha: usize) -> usize {
    (0..stream.len())
        .filter(|&i| {
            let e = stream[i];
            e.endpoints()
                .iter()
                .all(|&x| stream[i + 1..].iter().filter(|f| f.touches(x)).count() <= alpha)
        })
        .count()
}

/// |E_alpha(S_t)| for every prefix length t = 1..=len.
///
/// Each edge is good from its arrival until the `(alpha + 1)`-th later edge
/// at one of its endpoints arrives; the prefix counts follow from those
/// lifetimes.
pub fn alpha_good_prefix_counts(stream: &[Edge], alpha: usize) -> Vec<usize> {
    let n = stream.len();
    let mut delta = vec![0i64; n + 1];
    for (i, e) in stream.iter().enumerate() {
        delta[i] += 1;
        let (mut at_u, mut at_v) = (0usize, 0usize);
        for (j, f) in stream.iter().enumerate().skip(i + 1) {
            if f.touches(e.u()) {
                at_u += 1;
            }
            if f.touches(e.v()) {
                at_v += 1;
            }
            if at_u > alpha || at_v > alpha {
                delta[j] -= 1;
                break;
            }
        }
    }
    let mut running = 0i64;
    delta[..n]
        .iter()
        .map(|d| {
            running += d;
            running as usize
        })
        .collect()
}

/// E*_alpha(S): the largest number of alpha-good edges over all prefixes.
pub fn e_star_exact(stream: &[Edge], alpha: usize) -> Result<usize> {
    if stream.len() > ESTAR_STREAM_CAP {
        return Err(Error::Capacity {
            what: "stream length for exact E*",
            limit: ESTAR_STREAM_CAP,
        });
    }
    if alpha == 0 {
        return Err(Error::Config("alpha must be at least 1".into()));
    }
    Ok(alpha_good_prefix_counts(stream, alpha)
        .into_iter()
        .max()
        .unwrap_or(0))
}

/// The active window at time `t` (1-based): the last `min(w, t)` items.
pub fn window_at(stream: &[Edge], w: usize, t: usize) -> Result<&[Edge]> {
    if t == 0 || t > stream.len() {
        return Err(Error::OutOfRange(format!(
            "time {t} outside 1..={}",
            stream.len()
        )));
    }
    if w == 0 {
        return Err(Error::Config("window must be at least 1".into()));
    }
    let start = window_start(t as u64, w) as usize;
    Ok(&stream[start - 1..t])
}

/// Exact value of `problem` on the active window at time `t`.
pub fn window_truth(stream: &[Edge], w: usize, t: usize, problem: Problem) -> Result<usize> {
    let window = window_at(stream, w, t)?;
    evaluate(window, problem)
}

/// Exact value of `problem` on a whole edge sequence.
pub fn evaluate(stream: &[Edge], problem: Problem) -> Result<usize> {
    match problem {
        Problem::Matching => Ok(max_matching_exact(&GraphSnapshot::from_stream(stream))?.0),
        Problem::VertexCover => Ok(min_vertex_cover_exact(&GraphSnapshot::from_stream(stream))?.0),
        Problem::EStar { alpha } => e_star_exact(stream, alpha),
    }
}

/// Segment boundaries `[start, mid_1, ..., end)` into the checked stream.
pub type SplitPoints = Vec<usize>;

/// Values of the checked function on the segments of one split.
///
/// Two-way checks fill `a`, `b` and `ab`; three-way checks fill `b`, `ab`,
/// `bc` and `abc`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SplitValues {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub ab: Option<f64>,
    pub bc: Option<f64>,
    pub abc: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitReport {
    pub splits: SplitPoints,
    pub values: SplitValues,
    pub violated: bool,
    pub witness: Option<String>,
}

// Picks the segment to split: the whole stream half of the time, otherwise
// a random contiguous piece with room for `parts` non-empty parts.
fn random_cuts(rng: &mut ChaCha8Rng, len: usize, parts: usize) -> Option<SplitPoints> {
    if len < parts {
        return None;
    }
    let (lo, hi) = if rng.random_bool(0.5) {
        (0, len)
    } else {
        let lo = rng.random_range(0..=len - parts);
        let hi = rng.random_range(lo + parts..=len);
        (lo, hi)
    };
    let mut inner: BTreeSet<usize> = BTreeSet::new();
    while inner.len() < parts - 1 {
        inner.insert(rng.random_range(lo + 1..hi));
    }
    let mut cuts = vec![lo];
    cuts.extend(inner);
    cuts.push(hi);
    Some(cuts)
}

/// Checks `f(AB) <= f(A) + f(B)` on `trials` random adjacent segment pairs.
pub fn check_subadditive<F>(
    f: F,
    stream: &[Edge],
    trials: usize,
    rng_seed: u64,
) -> Result<Vec<SplitReport>>
where
    F: Fn(&[Edge]) -> Result<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut reports = Vec::with_capacity(trials);
    for _ in 0..trials {
        let Some(cuts) = random_cuts(&mut rng, stream.len(), 2) else {
            break;
        };
        let (lo, mid, hi) = (cuts[0], cuts[1], cuts[2]);
        let a = f(&stream[lo..mid])?;
        let b = f(&stream[mid..hi])?;
        let ab = f(&stream[lo..hi])?;
        let violated = ab > a + b;
        reports.push(SplitReport {
            splits: cuts,
            values: SplitValues {
                a: Some(a),
                b: Some(b),
                ab: Some(ab),
                ..SplitValues::default()
            },
            violated,
            witness: violated.then(|| format!("f(AB) = {ab} > f(A) + f(B) = {}", a + b)),
        });
    }
    Ok(reports)
}

/// Grid of epsilon values used alongside the ratio form.
pub const EPSILON_GRID: [f64; 19] = [
    0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80,
    0.85, 0.90, 0.95,
];

/// Checks `(c, d)`-almost-smoothness on `trials` random three-way splits:
/// `f(B) <= c f(AB)`, `f(BC) <= c f(ABC)`, the ratio form
/// `min(f(B), f(AB)) f(ABC) <= d f(BC) f(AB)` and its implication form on
/// [`EPSILON_GRID`]. Splits with `f(AB) = 0` or `f(ABC) = 0` skip the
/// smoothness part.
pub fn check_almost_smooth<F>(
    f: F,
    c: f64,
    d: f64,
    stream: &[Edge],
    trials: usize,
    rng_seed: u64,
) -> Result<Vec<SplitReport>>
where
    F: Fn(&[Edge]) -> Result<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut reports = Vec::with_capacity(trials);
    for _ in 0..trials {
        let Some(cuts) = random_cuts(&mut rng, stream.len(), 3) else {
            break;
        };
        let (lo, i, j, hi) = (cuts[0], cuts[1], cuts[2], cuts[3]);
        let values = SplitValues {
            a: None,
            b: Some(f(&stream[i..j])?),
            c: Some(f(&stream[j..hi])?),
            ab: Some(f(&stream[lo..j])?),
            bc: Some(f(&stream[i..hi])?),
            abc: Some(f(&stream[lo..hi])?),
        };
        let witness = smoothness_witness(&values, c, d);
        reports.push(SplitReport {
            splits: cuts,
            values,
            violated: witness.is_some(),
            witness,
        });
    }
    Ok(reports)
}

fn smoothness_witness(values: &SplitValues, c: f64, d: f64) -> Option<String> {
    let b = values.b.unwrap_or(0.0);
    let ab = values.ab.unwrap_or(0.0);
    let bc = values.bc.unwrap_or(0.0);
    let abc = values.abc.unwrap_or(0.0);
    if b > c * ab {
        return Some(format!("f(B) = {b} > c f(AB) = {}", c * ab));
    }
    if bc > c * abc {
        return Some(format!("f(BC) = {bc} > c f(ABC) = {}", c * abc));
    }
    if ab == 0.0 || abc == 0.0 {
        return None;
    }
    // The implication is only claimed for eps <= 1, so with c > 1 the ratio
    // f(B) / f(AB) is capped at 1.
    let capped = b.min(ab);
    if capped * abc > d * bc * ab {
        return Some(format!(
            "min(f(B), f(AB)) f(ABC) = {} > d f(BC) f(AB) = {}",
            capped * abc,
            d * bc * ab
        ));
    }
    EPSILON_GRID.iter().find_map(|&eps| {
        (eps * ab <= b && eps * abc > d * bc).then(|| {
            format!(
                "eps = {eps}: eps f(AB) <= f(B) but eps f(ABC) = {} > d f(BC) = {}",
                eps * abc,
                d * bc
            )
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: VertexId, v: VertexId) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn snap(edges: &[(VertexId, VertexId)]) -> GraphSnapshot {
        let edges: Vec<Edge> = edges.iter().map(|&(u, v)| e(u, v)).collect();
        GraphSnapshot::from_stream(&edges)
    }

    fn complete(n: VertexId) -> GraphSnapshot {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        snap(&edges)
    }

    // Every subset of edges, keeping the largest that is a matching.
    fn matching_by_enumeration(g: &GraphSnapshot) -> usize {
        let edges = g.edges();
        assert!(edges.len() <= 20);
        (0u32..1 << edges.len())
            .filter_map(|mask| {
                let chosen: Vec<Edge> = (0..edges.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect();
                is_matching(&chosen).then_some(chosen.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matching_examples() {
        assert_eq!(
            max_matching_exact(&snap(&[(1, 2), (2, 3), (3, 4)]))
                .unwrap()
                .0,
            2
        );
        assert_eq!(
            max_matching_exact(&snap(&[(1, 2), (2, 3), (1, 3)]))
                .unwrap()
                .0,
            1
        );
        let k6 = complete(6);
        assert_eq!(matching_by_enumeration(&k6), 3);
        let (size, witness) = max_matching_exact(&k6).unwrap();
        assert_eq!(size, 3);
        assert!(is_matching(&witness));
        assert_eq!(max_matching_exact(&GraphSnapshot::default()).unwrap().0, 0);
    }

    #[test]
    fn cover_examples() {
        assert_eq!(
            min_vertex_cover_exact(&snap(&[(1, 2), (2, 3), (1, 3)]))
                .unwrap()
                .0,
            2
        );
        let star: Vec<(VertexId, VertexId)> = (2..=8).map(|leaf| (1, leaf)).collect();
        let (size, cover) = min_vertex_cover_exact(&snap(&star)).unwrap();
        assert_eq!((size, cover), (1, vec![1]));
        assert_eq!(min_vertex_cover_exact(&complete(6)).unwrap().0, 5);
    }

    #[test]
    fn cover_cap_is_enforced() {
        // 45 disjoint edges need 45 cover vertices
        let edges: Vec<(VertexId, VertexId)> = (0..45).map(|k| (2 * k + 1, 2 * k + 2)).collect();
        assert!(matches!(
            min_vertex_cover_exact(&snap(&edges)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn matching_cap_is_enforced() {
        let edges: Vec<(VertexId, VertexId)> = (0..2_001).map(|k| (2 * k + 1, 2 * k + 2)).collect();
        assert!(matches!(
            max_matching_exact(&snap(&edges)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn matching_agrees_with_enumeration_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(2..9u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.random_bool(0.4) && edges.len() < 16 {
                        edges.push((u, v));
                    }
                }
            }
            let g = snap(&edges);
            assert_eq!(
                max_matching_exact(&g).unwrap().0,
                matching_by_enumeration(&g)
            );
        }
    }

    #[test]
    fn estar_examples() {
        let star = [e(1, 2), e(1, 3), e(1, 4)];
        assert_eq!(alpha_good_prefix_counts(&star, 1), vec![1, 2, 2]);
        assert_eq!(e_star_exact(&star, 1).unwrap(), 2);
        let matching: Vec<Edge> = (0..7).map(|k| e(2 * k + 1, 2 * k + 2)).collect();
        assert_eq!(e_star_exact(&matching, 1).unwrap(), 7);
        assert_eq!(e_star_exact(&[], 1).unwrap(), 0);
    }

    #[test]
    fn prefix_counts_match_direct_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let len = rng.random_range(1..40);
            let stream: Vec<Edge> = (0..len)
                .map(|_| {
                    let u = rng.random_range(1..8);
                    let mut v = rng.random_range(1..8);
                    while v == u {
                        v = rng.random_range(1..8);
                    }
                    e(u, v)
                })
                .collect();
            for alpha in 1..4 {
                let fast = alpha_good_prefix_counts(&stream, alpha);
                for t in 1..=len {
                    assert_eq!(fast[t - 1], alpha_good_count(&stream[..t], alpha));
                }
            }
        }
    }

    #[test]
    fn window_truth_basics() {
        let stream = [e(1, 2), e(2, 3), e(3, 4), e(4, 5)];
        assert_eq!(window_truth(&stream, 10, 3, Problem::Matching).unwrap(), 2);
        assert_eq!(window_truth(&stream, 1, 4, Problem::Matching).unwrap(), 1);
        assert_eq!(
            window_truth(&stream, 1, 4, Problem::VertexCover).unwrap(),
            1
        );
        assert_eq!(
            window_truth(&stream, 2, 4, Problem::VertexCover).unwrap(),
            1
        );
        assert!(matches!(
            window_truth(&stream, 2, 5, Problem::Matching),
            Err(Error::OutOfRange(_))
        ));
        assert!(window_truth(&stream, 2, 0, Problem::Matching).is_err());
        // duplicates collapse for matching
        let dup = [e(1, 2), e(2, 1), e(1, 2)];
        assert_eq!(window_truth(&dup, 3, 3, Problem::Matching).unwrap(), 1);
        assert_eq!(
            window_truth(&dup, 3, 3, Problem::EStar { alpha: 1 }).unwrap(),
            2
        );
    }

    #[test]
    fn greedy_size_on_two_edge_path_is_consistent() {
        let greedy = |s: &[Edge]| {
            let mut g = crate::graph::GreedyMatching::new();
            for x in s {
                g.insert(*x);
            }
            Ok(g.size() as f64)
        };
        let stream = [e(1, 2), e(2, 3)];
        let reports = check_subadditive(greedy, &stream, 20, 1).unwrap();
        assert!(reports.iter().all(|r| !r.violated));
        assert_eq!(
            greedy(&stream[..1]).unwrap() + greedy(&stream[1..]).unwrap(),
            2.0
        );
        assert_eq!(greedy(&stream).unwrap(), 1.0);
    }

    #[test]
    fn checks_are_deterministic() {
        let stream: Vec<Edge> = (1..30).map(|k| e(k, k + 1)).collect();
        let m = |s: &[Edge]| Ok(evaluate(s, Problem::Matching)? as f64);
        let a = check_almost_smooth(m, 1.0, 2.0, &stream, 50, 9).unwrap();
        let b = check_almost_smooth(m, 1.0, 2.0, &stream, 50, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| !r.violated));
    }

    #[test]
    fn too_short_streams_yield_no_splits() {
        let m = |s: &[Edge]| Ok(s.len() as f64);
        assert!(check_almost_smooth(m, 1.0, 2.0, &[e(1, 2), e(2, 3)], 10, 0)
            .unwrap()
            .is_empty());
        assert!(check_subadditive(m, &[e(1, 2)], 10, 0).unwrap().is_empty());
    }
    #[test]
    fn left_monotone_slack_is_not_smoothness_slack() {
        // f(B) = 2 f(AB) is allowed with c = 2; the ratio is then capped at 1.
        let values = SplitValues {
            b: Some(2.0),
            ab: Some(1.0),
            bc: Some(3.0),
            abc: Some(4.0),
            ..SplitValues::default()
        };
        assert_eq!(smoothness_witness(&values, 2.0, 2.0), None);
        assert!(smoothness_witness(&values, 1.0, 2.0).is_some());
        let tight = SplitValues {
            b: Some(1.0),
            ab: Some(1.0),
            bc: Some(1.0),
            abc: Some(2.0),
            ..SplitValues::default()
        };
        assert_eq!(smoothness_witness(&tight, 1.0, 2.0), None);
        assert!(smoothness_witness(&tight, 1.0, 1.9).is_some());
    }
}

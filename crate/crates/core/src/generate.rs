//! Deterministic edge-stream generators.
//!
//! All generators emit distinct edges in a uniformly random arrival order
//! (except [`three_paths`], whose order is the point) and are reproducible
//! from their seed.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};

/// The three-segment stream built from vertex-disjoint paths `x-y-z-w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePaths {
    pub stream: Vec<Edge>,
    /// End (exclusive) of segment A, all `{x, y}` edges.
    pub a_end: usize,
    /// End (exclusive) of segment B, all `{y, z}` edges.
    pub b_end: usize,
}

impl ThreePaths {
    pub fn a(&self) -> &[Edge] {
        &self.stream[..self.a_end]
    }

    pub fn b(&self) -> &[Edge] {
        &self.stream[self.a_end..self.b_end]
    }

    pub fn c(&self) -> &[Edge] {
        &self.stream[self.b_end..]
    }
}

/// `n_copies` disjoint paths of three edges; copy `i` uses vertices
/// `4i+1 .. 4i+4`. Segment A holds every first edge, B every middle edge,
/// C every last edge.
pub fn three_paths(n_copies: usize) -> Result<ThreePaths> {
    if n_copies == 0 {
        return Err(Error::Generation("need at least one path".into()));
    }
    let base = |i: usize| (4 * i) as VertexId;
    let segment = |offset: VertexId| -> Vec<Edge> {
        (0..n_copies)
            .map(|i| Edge::new(base(i) + offset, base(i) + offset + 1).expect("distinct ids"))
            .collect()
    };
    let mut stream = segment(1);
    stream.extend(segment(2));
    stream.extend(segment(3));
    Ok(ThreePaths {
        stream,
        a_end: n_copies,
        b_end: 2 * n_copies,
    })
}

// A uniformly random labelled tree on 1..=n: each vertex in a random order
// attaches to a random earlier one.
fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let mut order: Vec<VertexId> = (1..=n as VertexId).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let parent = order[rng.random_range(0..i)];
            Edge::new(order[i], parent).expect("tree edges join distinct vertices")
        })
        .collect()
}

/// A random forest with `edge_count` edges on vertices `1..=n`.
pub fn forest(n: usize, edge_count: usize, seed: u64) -> Result<Vec<Edge>> {
    if n == 0 || edge_count > n.saturating_sub(1) {
        return Err(Error::Generation(format!(
            "a forest on {n} vertices has at most {} edges, asked for {edge_count}",
            n.saturating_sub(1)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree(n, &mut rng);
    edges.shuffle(&mut rng);
    edges.truncate(edge_count);
    Ok(edges)
}

/// Union of `alpha` independent random spanning trees, sampled down to
/// `edge_count` distinct edges. Arboricity is at most `alpha`.
pub fn alpha_union(n: usize, alpha: usize, edge_count: usize, seed: u64) -> Result<Vec<Edge>> {
    if n == 0 || alpha == 0 {
        return Err(Error::Generation(
            "need at least one vertex and alpha >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut union = BTreeSet::new();
    for _ in 0..alpha {
        union.extend(random_tree(n, &mut rng));
    }
    if edge_count > union.len() {
        return Err(Error::Generation(format!(
            "union of {alpha} random trees on {n} vertices has {} distinct edges, asked for {edge_count}",
            union.len()
        )));
    }
    let mut edges: Vec<Edge> = union.into_iter().collect();
    edges.shuffle(&mut rng);
    edges.truncate(edge_count);
    Ok(edges)
}

/// Erdős-Rényi `G(n, p)` in random arrival order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Vec<Edge>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Generation(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n as VertexId {
        for v in u + 1..=n as VertexId {
            if rng.random_bool(p) {
                edges.push(Edge::new(u, v).expect("u < v"));
            }
        }
    }
    edges.shuffle(&mut rng);
    Ok(edges)
}

/// Highest vertex id used by a stream.
pub fn max_vertex(stream: &[Edge]) -> VertexId {
    stream.iter().map(Edge::v).max().unwrap_or(0)
}

/// True when the distinct edges of `stream` form a forest.
pub fn is_forest(stream: &[Edge]) -> bool {
    let distinct: BTreeSet<Edge> = stream.iter().copied().collect();
    let n = max_vertex(stream) as usize;
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in distinct {
        let (a, b) = (
            find(&mut parent, e.u() as usize),
            find(&mut parent, e.v() as usize),
        );
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{evaluate, Problem};

    #[test]
    fn three_paths_single_copy() {
        let tp = three_paths(1).unwrap();
        let expect: Vec<Edge> = [(1, 2), (2, 3), (3, 4)]
            .iter()
            .map(|&(u, v)| Edge::new(u, v).unwrap())
            .collect();
        assert_eq!(tp.stream, expect);
        let m = |s: &[Edge]| evaluate(s, Problem::Matching).unwrap();
        let ab = &tp.stream[..tp.b_end];
        let bc = &tp.stream[tp.a_end..];
        assert_eq!((m(ab), m(tp.b()), m(bc), m(&tp.stream)), (1, 1, 1, 2));
        assert!(three_paths(0).is_err());
    }

    #[test]
    fn three_paths_ten_copies() {
        let tp = three_paths(10).unwrap();
        assert_eq!(tp.stream.len(), 30);
        let m = |s: &[Edge]| evaluate(s, Problem::Matching).unwrap();
        assert_eq!(m(&tp.stream), 20);
        assert_eq!(m(&tp.stream[tp.a_end..]), 10);
        assert!(is_forest(&tp.stream));
    }

    #[test]
    fn spanning_forest_is_acyclic() {
        for seed in 0..20 {
            let s = forest(10, 9, seed).unwrap();
            assert_eq!(s.len(), 9);
            assert!(is_forest(&s));
        }
        assert!(forest(10, 10, 0).is_err());
        assert!(forest(0, 0, 0).is_err());
    }

    #[test]
    fn alpha_union_sizes() {
        let s = alpha_union(20, 3, 50, 4).unwrap();
        assert_eq!(s.len(), 50);
        let distinct: BTreeSet<Edge> = s.iter().copied().collect();
        assert_eq!(distinct.len(), 50);
        assert!(alpha_union(20, 1, 20, 4).is_err());
    }

    #[test]
    fn gnp_edges() {
        assert!(gnp(10, 0.0, 3).unwrap().is_empty());
        assert_eq!(gnp(10, 1.0, 3).unwrap().len(), 45);
        assert!(gnp(10, 1.5, 3).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(forest(50, 30, 9).unwrap(), forest(50, 30, 9).unwrap());
        assert_eq!(
            alpha_union(30, 2, 40, 9).unwrap(),
            alpha_union(30, 2, 40, 9).unwrap()
        );
        assert_eq!(gnp(30, 0.2, 9).unwrap(), gnp(30, 0.2, 9).unwrap());
        assert_ne!(gnp(30, 0.2, 9).unwrap(), gnp(30, 0.2, 10).unwrap());
    }
}

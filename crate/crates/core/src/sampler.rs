//! Configuration-model sampling.
//!
//! Every vertex `i` owns `d_i` half-edges, numbered vertex-major. A uniformly
//! random perfect matching of the half-edges is drawn by shuffling their ids
//! and pairing consecutive entries.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::degree::DegreeSequence;
use crate::{Error, Result, SeededRng};

/// Default attempt budget for [`sample_simple`].
pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

/// Multigraph on vertices `0..n`. Loops and parallel edges are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    loops: usize,
    multi_pairs: usize,
}

impl MultiGraph {
    pub fn from_edges(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for n = {n}"
            )));
        }
        let loops = edges.iter().filter(|(u, v)| u == v).count();
        let mut pairs: Vec<(u32, u32)> = edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        let multi_pairs = pairs.windows(2).filter(|w| w[0] == w[1]).count();
        Ok(MultiGraph {
            n,
            edges,
            loops,
            multi_pairs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    /// Edges beyond the first between each pair of distinct vertices.
    pub fn multi_pairs(&self) -> usize {
        self.multi_pairs
    }

    pub fn is_simple(&self) -> bool {
        self.loops == 0 && self.multi_pairs == 0
    }

    /// Vertex degrees, loops counted twice.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }
}

/// Result of [`is_simple`] with the counts that make a graph non-simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Simplicity {
    pub simple: bool,
    pub loops: usize,
    pub multi_pairs: usize,
}

pub fn is_simple(g: &MultiGraph) -> Simplicity {
    Simplicity {
        simple: g.is_simple(),
        loops: g.loops,
        multi_pairs: g.multi_pairs,
    }
}

/// Owner vertex of each half-edge, vertex-major.
fn half_edge_owners(seq: &DegreeSequence) -> Vec<u32> {
    seq.degrees()
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat(v as u32).take(d as usize))
        .collect()
}

/// Uniform perfect matching of half-edges `0..2m`, as pairs of half-edge ids.
pub fn sample_pairing<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> Vec<(u32, u32)> {
    let mut ids: Vec<u32> = (0..2 * seq.m() as u32).collect();
    ids.shuffle(rng);
    ids.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

fn pairing_to_graph(seq: &DegreeSequence, owners: &[u32], pairing: &[(u32, u32)]) -> MultiGraph {
    let edges = pairing
        .iter()
        .map(|&(a, b)| (owners[a as usize], owners[b as usize]))
        .collect();
    MultiGraph::from_edges(seq.n(), edges).expect("owners are in range")
}

/// Configuration multigraph drawn with a caller-owned generator.
pub fn sample_multigraph_with<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> MultiGraph {
    let owners = half_edge_owners(seq);
    let pairing = sample_pairing(seq, rng);
    pairing_to_graph(seq, &owners, &pairing)
}

/// Configuration multigraph `G*(n, d)` for stream `rng`.
pub fn sample_multigraph(seq: &DegreeSequence, rng: SeededRng) -> MultiGraph {
    sample_multigraph_with(seq, &mut rng.rng())
}

/// A simple graph together with the number of pairings drawn to get it.
#[derive(Debug, Clone)]
pub struct SimpleSample {
    pub graph: MultiGraph,
    pub attempts: usize,
}

/// Uniform simple graph with degree sequence `seq`, by rejection.
pub fn sample_simple(seq: &DegreeSequence, rng: SeededRng, max_attempts: usize) -> Result<SimpleSample> {
    let owners = half_edge_owners(seq);
    let mut rng = rng.rng();
    let (mut loops, mut multi) = (0usize, 0usize);
    for attempt in 1..=max_attempts {
        let pairing = sample_pairing(seq, &mut rng);
        let graph = pairing_to_graph(seq, &owners, &pairing);
        if graph.is_simple() {
            return Ok(SimpleSample {
                graph,
                attempts: attempt,
            });
        }
        loops += graph.loops;
        multi += graph.multi_pairs;
    }
    let attempts = max_attempts.max(1);
    Err(Error::Exhausted {
        attempts: max_attempts,
        rejection_rate: 1.0,
        mean_loops: loops as f64 / attempts as f64,
        mean_multi: multi as f64 / attempts as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn seq(d: &[u64]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = sample_multigraph(&seq(&[1, 1]), SeededRng::new(1, 0));
        assert_eq!(g.edges().len(), 1);
        let (u, v) = g.edges()[0];
        assert_eq!((u.min(v), u.max(v)), (0, 1));
        assert!(is_simple(&g).simple);
    }

    #[test]
    fn two_twos_outcomes() {
        // 3 matchings of 4 half-edges: one gives two loops, two give a double edge
        let s = seq(&[2, 2]);
        let mut tally = BTreeMap::new();
        for r in 0..3000 {
            let g = sample_multigraph(&s, SeededRng::new(11, r));
            *tally.entry((g.loops(), g.multi_pairs())).or_insert(0usize) += 1;
            assert_eq!(g.degrees(), vec![2, 2]);
        }
        assert_eq!(tally.len(), 2);
        let double = tally[&(0, 1)] as f64 / 3000.0;
        assert!((double - 2.0 / 3.0).abs() < 0.03, "double edge frequency {double}");
        assert!(tally.contains_key(&(2, 0)));
    }

    #[test]
    fn single_vertex_loop() {
        let g = sample_multigraph(&seq(&[2]), SeededRng::new(0, 0));
        let s = is_simple(&g);
        assert!(!s.simple);
        assert_eq!(s.loops, 1);
    }

    #[test]
    fn simple_rejection() {
        let ok = sample_simple(&seq(&[1, 1]), SeededRng::new(3, 0), 10).unwrap();
        assert_eq!(ok.attempts, 1);

        let cubic = sample_simple(&seq(&[3, 3, 3, 3]), SeededRng::new(3, 0), 1000).unwrap();
        assert!(cubic.graph.is_simple());
        assert_eq!(cubic.graph.degrees(), vec![3; 4]);

        // no simple graph has degrees (3, 3)
        let err = sample_simple(&seq(&[3, 3]), SeededRng::new(3, 0), 50).unwrap_err();
        assert!(matches!(err, Error::Exhausted { attempts: 50, .. }));

        // K8 exists but a random pairing is almost never simple
        let dense = seq(&[7; 8]);
        assert!(sample_simple(&dense, SeededRng::new(3, 0), 50).is_err());
    }

    #[test]
    fn complete_graph_sequence_eventually_simple() {
        let k5 = seq(&[4; 5]);
        let s = sample_simple(&k5, SeededRng::new(5, 0), 100_000).unwrap();
        assert_eq!(s.graph.m(), 10);
        assert!(s.graph.is_simple());
    }

    #[test]
    fn out_of_range_edges_rejected() {
        assert!(MultiGraph::from_edges(2, vec![(0, 2)]).is_err());
    }
}

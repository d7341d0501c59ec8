//! Connected components and the statistics built on them.

pub mod paths;
mod union_find;

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::degree::DegreeSequence;
use crate::sampler::MultiGraph;
use crate::Result;

pub use paths::{count_paths, MAX_PATH_LENGTH, MAX_PATH_VERTICES};
use union_find::UnionFind;

/// Components of a graph.
///
/// Component ids follow the order of each component's lowest vertex. The
/// largest component `C1` is the one of maximal size containing the vertex with
/// the largest label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    n: usize,
    /// Size of each component, indexed by component id.
    component_sizes: Vec<usize>,
    largest_id: usize,
    membership: Vec<u32>,
    spectrum: BTreeMap<usize, usize>,
}

impl ComponentSummary {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    /// Component sizes in nonincreasing order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = self.component_sizes.clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn largest_id(&self) -> usize {
        self.largest_id
    }

    pub fn largest_size(&self) -> usize {
        self.component_sizes.get(self.largest_id).copied().unwrap_or(0)
    }

    /// Size of the largest component other than `C1` (0 if none).
    pub fn second_size(&self) -> usize {
        self.component_sizes
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != self.largest_id)
            .map(|(_, &s)| s)
            .max()
            .unwrap_or(0)
    }

    pub fn membership(&self) -> &[u32] {
        &self.membership
    }

    pub fn component_of(&self, vertex: usize) -> usize {
        self.membership[vertex] as usize
    }

    /// `k -> N_k`, the number of vertices lying in components of order `k`.
    pub fn spectrum(&self) -> &BTreeMap<usize, usize> {
        &self.spectrum
    }

    pub fn write_sizes_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["component_id", "size"])?;
        for (id, size) in self.component_sizes.iter().enumerate() {
            w.write_record([id.to_string(), size.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_spectrum_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "N_k"])?;
        for (k, nk) in &self.spectrum {
            w.write_record([k.to_string(), nk.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Exact components; loops and parallel edges do not affect connectivity.
pub fn components(g: &MultiGraph) -> ComponentSummary {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for &(u, v) in g.edges() {
        if u != v {
            uf.union(u, v);
        }
    }
    let mut root_to_id = vec![u32::MAX; n];
    let mut membership = vec![0u32; n];
    let mut component_sizes: Vec<usize> = Vec::new();
    for v in 0..n {
        let root = uf.find(v as u32) as usize;
        if root_to_id[root] == u32::MAX {
            root_to_id[root] = component_sizes.len() as u32;
            component_sizes.push(0);
        }
        let id = root_to_id[root];
        membership[v] = id;
        component_sizes[id as usize] += 1;
    }
    let max_size = component_sizes.iter().copied().max().unwrap_or(0);
    let largest_id = (0..n)
        .rev()
        .map(|v| membership[v] as usize)
        .find(|&id| component_sizes[id] == max_size)
        .unwrap_or(0);
    let mut spectrum = BTreeMap::new();
    for &s in &component_sizes {
        *spectrum.entry(s).or_insert(0) += s;
    }
    ComponentSummary {
        n,
        component_sizes,
        largest_id,
        membership,
        spectrum,
    }
}

fn sum_of_squares(s: &ComponentSummary) -> u128 {
    s.component_sizes.iter().map(|&c| (c as u128) * (c as u128)).sum()
}

/// `chi = (1/n) sum_i |C_i|^2`.
pub fn susceptibility(s: &ComponentSummary) -> f64 {
    sum_of_squares(s) as f64 / s.n as f64
}

/// `chi = (1/n) sum_k k N_k`, the same number computed from the size spectrum.
pub fn susceptibility_from_spectrum(s: &ComponentSummary) -> f64 {
    let total: u128 = s.spectrum.iter().map(|(&k, &nk)| k as u128 * nk as u128).sum();
    total as f64 / s.n as f64
}

/// `chi_hat = (1/n) sum_{i >= 2} |C_i|^2`.
pub fn modified_susceptibility(s: &ComponentSummary) -> f64 {
    let c1 = s.largest_size() as u128;
    (sum_of_squares(s) - c1 * c1) as f64 / s.n as f64
}

/// Degree census `k -> v_k(C1)` of the largest component.
pub fn giant_degree_profile(g: &MultiGraph, s: &ComponentSummary) -> BTreeMap<u64, usize> {
    let mut profile = BTreeMap::new();
    for (v, d) in g.degrees().into_iter().enumerate() {
        if s.component_of(v) == s.largest_id {
            *profile.entry(d).or_insert(0) += 1;
        }
    }
    profile
}

/// The graph left after deleting `C1`.
#[derive(Debug, Clone)]
pub struct Residual {
    pub graph: MultiGraph,
    /// Degrees of the surviving vertices, `None` when nothing survives.
    pub sequence: Option<DegreeSequence>,
    /// Original label of each surviving vertex, in relabelled order.
    pub labels: Vec<u32>,
}

/// Induced graph on the vertices outside `C1`, relabelled `0..n - |C1|` in
/// increasing order of original label.
pub fn remove_largest(g: &MultiGraph, s: &ComponentSummary) -> Residual {
    let mut new_label = vec![u32::MAX; g.n()];
    let mut labels = Vec::with_capacity(g.n() - s.largest_size());
    for v in 0..g.n() {
        if s.component_of(v) != s.largest_id {
            new_label[v] = labels.len() as u32;
            labels.push(v as u32);
        }
    }
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .filter(|&&(u, _)| new_label[u as usize] != u32::MAX)
        .map(|&(u, v)| (new_label[u as usize], new_label[v as usize]))
        .collect();
    let graph = MultiGraph::from_edges(labels.len(), edges).expect("relabelled edges in range");
    let sequence = if labels.is_empty() {
        None
    } else {
        let all = g.degrees();
        let degrees = labels.iter().map(|&v| all[v as usize]).collect();
        Some(DegreeSequence::new(degrees).expect("components have even degree sums"))
    };
    Residual {
        graph,
        sequence,
        labels,
    }
}

use crate::sampler::MultiGraph;
use crate::{Error, Result};

pub const MAX_PATH_VERTICES: usize = 1000;
pub const MAX_PATH_LENGTH: usize = 6;

/// Number of directed paths `i0 e1 i1 ... e_l i_l` with distinct vertices and
/// edges. Parallel edges are distinct edges; loops never lie on a path.
pub fn count_paths(g: &MultiGraph, ell: usize) -> Result<u128> {
    if g.n() > MAX_PATH_VERTICES || ell > MAX_PATH_LENGTH {
        return Err(Error::PathLimits {
            n: g.n(),
            ell,
            max_n: MAX_PATH_VERTICES,
            max_ell: MAX_PATH_LENGTH,
        });
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        if u != v {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
    }
    let mut on_path = vec![false; g.n()];
    let mut total = 0u128;
    for start in 0..g.n() {
        on_path[start] = true;
        total += extend(&adjacency, &mut on_path, start, ell);
        on_path[start] = false;
    }
    Ok(total)
}

fn extend(adjacency: &[Vec<u32>], on_path: &mut [bool], at: usize, remaining: usize) -> u128 {
    if remaining == 0 {
        return 1;
    }
    let mut count = 0;
    for &next in &adjacency[at] {
        let next = next as usize;
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        count += extend(adjacency, on_path, next, remaining - 1);
        on_path[next] = false;
    }
    count
}

//! Edge-list files.
//!
//! ```text
//! # suslab edge-list n=4 m=2 seed=7 stream=0 digest=3f0c9a1b2d4e5f60
//! 1 2
//! 3 4
//! ```
//!
//! Labels are 1-based. `n` in the header keeps isolated vertices.

use std::fmt::Write as _;
use std::hash::Hasher;

use fnv::FnvHasher;

use crate::degree::DegreeSequence;
use crate::sampler::MultiGraph;
use crate::{Error, Result, SeededRng};

/// FNV-1a digest of the degree list.
pub fn sequence_digest(seq: &DegreeSequence) -> String {
    let mut h = FnvHasher::default();
    for &d in seq.degrees() {
        h.write_u64(d);
    }
    format!("{:016x}", h.finish())
}

pub fn write_edge_list(g: &MultiGraph, rng: Option<SeededRng>, seq: Option<&DegreeSequence>) -> String {
    let mut out = String::with_capacity(16 * g.m() + 80);
    let _ = write!(out, "# suslab edge-list n={} m={}", g.n(), g.m());
    if let Some(rng) = rng {
        let _ = write!(out, " seed={} stream={}", rng.seed, rng.stream_id);
    }
    if let Some(seq) = seq {
        let _ = write!(out, " digest={}", sequence_digest(seq));
    }
    out.push('\n');
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Reads an edge list. Without an `n=` header the vertex count is the largest label.
pub fn read_edge_list(text: &str) -> Result<MultiGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_label = 0u32;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.split_whitespace().find_map(|t| t.strip_prefix("n=")) {
                n = Some(value.parse().map_err(|e| Error::Parse {
                    line: i + 1,
                    message: format!("header n: {e}"),
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let parse = |field: Option<&str>| -> Result<u32> {
            let field = field.ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `u v`, got `{line}`"),
            })?;
            let label: u32 = field.parse().map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("label: {e}"),
            })?;
            if label == 0 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "labels are 1-based".into(),
                });
            }
            Ok(label)
        };
        let mut fields = line.split_whitespace();
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        max_label = max_label.max(u).max(v);
        edges.push((u - 1, v - 1));
    }
    let n = n.unwrap_or(max_label as usize);
    MultiGraph::from_edges(n, edges)
}

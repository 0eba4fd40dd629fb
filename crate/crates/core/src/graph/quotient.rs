use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::PermGroup;

use super::Graph;

/// Assignment of vertices to the orbits of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMap {
    pub block_of: Vec<u32>,
    pub block_count: usize,
}

impl QuotientMap {
    /// Blocks numbered in order of their smallest vertex.
    pub fn from_blocks(vertex_count: usize, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut block_of = vec![u32::MAX; vertex_count];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v as usize >= vertex_count || block_of[v as usize] != u32::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "blocks do not partition {vertex_count} vertices (vertex {v})"
                    )));
                }
                block_of[v as usize] = b as u32;
            }
        }
        if block_of.contains(&u32::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover every vertex".into()));
        }
        Ok(QuotientMap {
            block_of,
            block_count: blocks.len(),
        })
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.block_count];
        for &b in &self.block_of {
            sizes[b as usize] += 1;
        }
        sizes
    }
}

/// Quotient of `g` by the orbits of `n_sub`. Blocks are adjacent when some of
/// their members are; adjacency inside a block is dropped.
pub fn quotient_graph(g: &Graph, n_sub: &PermGroup) -> Result<(Graph, QuotientMap)> {
    if n_sub.degree() != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            left: g.vertex_count(),
            right: n_sub.degree(),
        });
    }
    for p in n_sub.generators() {
        if !g.is_automorphism(p) {
            return Err(Error::NotAutomorphism(format!("{p}")));
        }
    }
    let map = QuotientMap::from_blocks(g.vertex_count(), &n_sub.orbits())?;
    let mut adjacency = vec![Vec::new(); map.block_count];
    for (u, v) in g.edges() {
        let (a, b) = (map.block_of[u as usize], map.block_of[v as usize]);
        if a != b {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
    }
    Ok((Graph::from_adjacency_lists(adjacency), map))
}

/// Is `g` a cover of `quotient` along `map`: each vertex's neighbours land in
/// distinct blocks, exactly the quotient-neighbours of its own block.
pub fn is_normal_cover(g: &Graph, quotient: &Graph, map: &QuotientMap) -> Result<bool> {
    if map.block_of.len() != g.vertex_count() || map.block_count != quotient.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "map of {} vertices into {} blocks does not fit graphs of {} and {} vertices",
            map.block_of.len(),
            map.block_count,
            g.vertex_count(),
            quotient.vertex_count()
        )));
    }
    if map.block_of.iter().any(|&b| b as usize >= map.block_count) {
        return Err(Error::InvalidArgument("block index out of range".into()));
    }
    for u in 0..g.vertex_count() as u32 {
        let b = map.block_of[u as usize];
        let mut images: Vec<u32> = g.neighbors(u).iter().map(|&v| map.block_of[v as usize]).collect();
        images.sort_unstable();
        if images.as_slice() != quotient.neighbors(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

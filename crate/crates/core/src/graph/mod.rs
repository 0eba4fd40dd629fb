//! Undirected simple graphs and their structural analyses.

mod arcs;
mod io;
mod quotient;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use arcs::{s_arc_transitivity, s_arc_transitivity_from_stabilizer, TransitivityReport, MAX_S};
pub use io::{from_graph6, to_dot, to_graph6};
pub use quotient::{is_normal_cover, quotient_graph, QuotientMap};

/// Immutable undirected simple graph in compressed sorted adjacency form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count())
    }
}

impl Graph {
    /// Builds a graph from unordered pairs. Duplicate edges collapse.
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= vertex_count {
                    return Err(Error::InvalidGraph(format!(
                        "endpoint {x} out of range for {vertex_count} vertices"
                    )));
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Graph::from_adjacency_lists(adjacency))
    }

    /// Lists must already be symmetric and loop-free; they are sorted and
    /// deduplicated here.
    pub(crate) fn from_adjacency_lists(mut adjacency: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// The common valency, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let n = self.vertex_count() as u32;
        let k = if n == 0 { 0 } else { self.degree(0) };
        (0..n).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Does `p` map edges to edges?
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count()
            && (0..self.vertex_count() as u32).all(|u| {
                let pu = p.image(u);
                self.degree(pu) == self.degree(u)
                    && self.neighbors(u).iter().all(|&v| self.is_adjacent(pu, p.image(v)))
            })
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Result<Graph> {
        if p.degree() != self.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: self.vertex_count(),
                right: p.degree(),
            });
        }
        let mut adjacency = vec![Vec::new(); self.vertex_count()];
        for u in 0..self.vertex_count() as u32 {
            adjacency[p.image(u) as usize] = self.neighbors(u).iter().map(|&v| p.image(v)).collect();
        }
        Ok(Graph::from_adjacency_lists(adjacency))
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s as u32);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// A proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut colour = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s as u32);
            while let Some(u) = queue.pop_front() {
                let c = colour[u as usize];
                for &v in self.neighbors(u) {
                    if colour[v as usize] == u8::MAX {
                        colour[v as usize] = 1 - c;
                        queue.push_back(v);
                    } else if colour[v as usize] == c {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeList {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EdgeList {
            n: self.vertex_count(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = EdgeList::deserialize(d)?;
        let edges: Vec<(u32, u32)> = list.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(list.n, &edges).map_err(serde::de::Error::custom)
    }
}

//! Canonical labelling and automorphism groups by individualization and
//! refinement.

mod partition;
mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph};
use crate::perm::{PermGroup, Permutation};

use partition::{Partition, Scratch};
pub use search::{SearchOptions, SearchStatus};

/// Degree up to which the search's group order is cross-checked by a
/// stabilizer chain.
pub const CHAIN_CHECK_DEGREE: usize = 6000;

/// A vertex colouring as an ordered partition into cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub color_of: Vec<u32>,
    pub cells: Vec<Vec<u32>>,
}

impl Coloring {
    pub fn uniform(n: usize) -> Self {
        Coloring {
            color_of: vec![0; n],
            cells: if n == 0 { Vec::new() } else { vec![(0..n as u32).collect()] },
        }
    }

    /// Colours are renumbered to be contiguous, keeping their order.
    pub fn from_colors(colors: &[u32]) -> Self {
        let mut distinct: Vec<u32> = colors.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut cells = vec![Vec::new(); distinct.len()];
        let color_of: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(v, c)| {
                let k = distinct.binary_search(c).expect("colour present") as u32;
                cells[k as usize].push(v as u32);
                k
            })
            .collect();
        Coloring { color_of, cells }
    }

    fn from_partition(p: &Partition) -> Self {
        let mut color_of = vec![0; p.len()];
        let cells: Vec<Vec<u32>> = p
            .cell_starts()
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                let mut c = p.cell_members(s).to_vec();
                c.sort_unstable();
                for &v in &c {
                    color_of[v as usize] = k as u32;
                }
                c
            })
            .collect();
        Coloring { color_of, cells }
    }
}

/// Coarsest equitable refinement of `initial`.
pub fn refine(g: &Graph, initial: &Coloring) -> Result<Coloring> {
    if initial.color_of.len() != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            left: g.vertex_count(),
            right: initial.color_of.len(),
        });
    }
    let mut p = Partition::from_cells(g.vertex_count(), &initial.cells);
    let starts = p.cell_starts();
    p.refine(g, &starts, &mut Scratch::default());
    Ok(Coloring::from_partition(&p))
}

/// A canonically relabelled copy of a graph. Equality, ordering and hashing
/// look at the canonical graph only.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    graph: Graph,
    relabeling: Permutation,
}

impl CanonicalForm {
    /// The canonical graph: vertex `v` of the input became `relabeling(v)`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn relabeling(&self) -> &Permutation {
        &self.relabeling
    }

    /// graph6 encoding of the canonical graph.
    pub fn bytes(&self) -> Vec<u8> {
        to_graph6(&self.graph)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    /// Orders by the canonical graph only, so equal keys mean isomorphic graphs.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |c: &CanonicalForm| (c.graph.vertex_count(), c.graph.edge_count());
        key(self)
            .cmp(&key(other))
            .then_with(|| self.graph.edges().cmp(other.graph.edges()))
    }
}

/// Everything one search produces.
#[derive(Clone, Debug)]
pub struct CanonResult {
    pub status: SearchStatus,
    pub canonical: Option<CanonicalForm>,
    /// Verified automorphisms found (including any supplied ones).
    pub generators: Vec<Permutation>,
    /// |Aut| when the search completed.
    pub group_order: Option<u128>,
    pub nodes: u64,
}

pub fn search(g: &Graph, options: &SearchOptions) -> Result<CanonResult> {
    let cells = Coloring::uniform(g.vertex_count()).cells;
    let out = search::run(g, &cells, options)?;
    let canonical = match out.labels {
        Some(labels) if !labels.is_empty() => {
            let relabeling = Permutation::from_images(labels)?;
            Some(CanonicalForm {
                graph: g.relabel(&relabeling)?,
                relabeling,
            })
        }
        Some(_) => None,
        None => None,
    };
    if let (Some(order), true) = (out.group_order, g.vertex_count() <= CHAIN_CHECK_DEGREE) {
        if g.vertex_count() > 0 {
            let group = PermGroup::new(g.vertex_count(), out.generators.clone())?;
            if group.order() != order {
                return Err(Error::Internal(format!(
                    "search group order {order} but generators give {}",
                    group.order()
                )));
            }
        }
    }
    Ok(CanonResult {
        status: out.status,
        canonical,
        generators: out.generators,
        group_order: out.group_order,
        nodes: out.nodes,
    })
}

fn complete_search(g: &Graph) -> Result<CanonResult> {
    search(g, &SearchOptions::default())
}

/// Canonical form of a non-empty graph.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    complete_search(g)?
        .canonical
        .ok_or_else(|| Error::InvalidGraph("graph has no vertices".into()))
}

/// The full automorphism group, with every generator checked.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    let r = complete_search(g)?;
    PermGroup::new(g.vertex_count().max(1), r.generators)
}

/// A vertex bijection taking `a` onto `b`, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Result<Option<Permutation>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.graph != cb.graph {
        return Ok(None);
    }
    let witness = ca.relabeling.then(&cb.relabeling.inverse());
    let ok = a.edges().all(|(u, v)| b.is_adjacent(witness.image(u), witness.image(v)));
    if !ok {
        return Err(Error::Internal("canonical forms agree but witness fails".into()));
    }
    Ok(Some(witness))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() == 0 && b.vertex_count() == 0 {
        return Ok(true);
    }
    Ok(isomorphism(a, b)?.is_some())
}

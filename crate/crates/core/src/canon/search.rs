use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

use super::partition::{Partition, Scratch};

/// Per-level node invariant: refinement trace and cell count.
pub(crate) type Invariant = (u64, usize);

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Maximum number of search-tree nodes; `None` for unlimited.
    pub node_budget: Option<u64>,
    /// Automorphisms known in advance. They are verified and only used to
    /// prune, so they cannot change the canonical form.
    pub known_automorphisms: Vec<Permutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SearchStatus {
    Complete,
    BudgetExceeded,
}

pub(crate) struct Outcome {
    pub status: SearchStatus,
    /// `labels[v]` is the canonical label of vertex v (complete searches only).
    pub labels: Option<Vec<u32>>,
    pub generators: Vec<Permutation>,
    /// Product of first-path orbit lengths (complete searches only).
    pub group_order: Option<u128>,
    pub nodes: u64,
}

struct Leaf {
    invariants: Vec<Invariant>,
    elems: Vec<u32>,
    pos: Vec<u32>,
    cert_offsets: Vec<usize>,
    cert: Vec<u32>,
}

enum Flow {
    Continue,
    FoundFirst,
    Budget,
}

/// Union-find over vertices for the automorphisms fixing one node's path.
struct Orbits {
    parent: Vec<u32>,
    seen: usize,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n as u32).collect(),
            seen: 0,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    fn absorb(&mut self, auts: &[Permutation], path: &[u32]) {
        while self.seen < auts.len() {
            let a = &auts[self.seen];
            self.seen += 1;
            if path.iter().all(|&v| a.fixes(v)) {
                for x in 0..self.parent.len() as u32 {
                    self.union(x, a.image(x));
                }
            }
        }
    }
}

struct Search<'g> {
    g: &'g Graph,
    budget: Option<u64>,
    nodes: u64,
    scratch: Scratch,
    path: Vec<u32>,
    path_invariants: Vec<Invariant>,
    first_path: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    auts: Vec<Permutation>,
    buffer: Vec<u32>,
}

pub(crate) fn run(g: &Graph, cells: &[Vec<u32>], options: &SearchOptions) -> Result<Outcome> {
    let n = g.vertex_count();
    for a in &options.known_automorphisms {
        if !g.is_automorphism(a) {
            return Err(Error::NotAutomorphism(format!("supplied automorphism {a}")));
        }
    }
    let mut search = Search {
        g,
        budget: options.node_budget,
        nodes: 0,
        scratch: Scratch::default(),
        path: Vec::new(),
        path_invariants: Vec::new(),
        first_path: Vec::new(),
        first: None,
        best: None,
        auts: options
            .known_automorphisms
            .iter()
            .filter(|a| !a.is_identity())
            .cloned()
            .collect(),
        buffer: Vec::new(),
    };
    if n == 0 {
        return Ok(Outcome {
            status: SearchStatus::Complete,
            labels: Some(Vec::new()),
            generators: Vec::new(),
            group_order: Some(1),
            nodes: 0,
        });
    }
    let mut root = Partition::from_cells(n, cells);
    let starts = root.cell_starts();
    let inv = (root.refine(g, &starts, &mut search.scratch), root.cells);
    search.path_invariants.push(inv);
    let flow = search.explore(root, true)?;
    let status = match flow {
        Flow::Budget => SearchStatus::BudgetExceeded,
        _ => SearchStatus::Complete,
    };
    let complete = status == SearchStatus::Complete;
    let group_order = complete.then(|| search.group_order());
    let labels = if complete {
        search.best.as_ref().map(|b| b.pos.clone())
    } else {
        None
    };
    Ok(Outcome {
        status,
        labels,
        generators: search.auts,
        group_order,
        nodes: search.nodes,
    })
}

impl<'g> Search<'g> {
    fn explore(&mut self, part: Partition, on_first: bool) -> Result<Flow> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Ok(Flow::Budget);
        }
        if part.is_discrete() {
            return self.leaf(&part, on_first);
        }
        let target = part.target_cell().expect("non-discrete partition");
        let mut children = part.cell_members(target).to_vec();
        children.sort_unstable();
        let mut orbits: Option<Orbits> = None;
        let mut explored: Vec<u32> = Vec::new();
        let mut explored_roots: Vec<u32> = Vec::new();
        for (i, &w) in children.iter().enumerate() {
            if !explored.is_empty() && !self.auts.is_empty() {
                let o = orbits.get_or_insert_with(|| Orbits::new(part.len()));
                let before = o.seen;
                o.absorb(&self.auts, &self.path);
                if o.seen != before {
                    explored_roots = explored.iter().map(|&x| o.find(x)).collect();
                    explored_roots.sort_unstable();
                }
                let r = o.find(w);
                if explored_roots.binary_search(&r).is_ok() {
                    continue;
                }
                explored_roots.push(r);
                explored_roots.sort_unstable();
            } else {
                explored_roots.push(w);
                explored_roots.sort_unstable();
            }
            explored.push(w);
            let child_first = on_first && i == 0;
            let mut child = part.clone();
            let h = child.individualize(self.g, w, &mut self.scratch);
            self.path.push(w);
            self.path_invariants.push((h, child.cells));
            if child_first {
                self.first_path.push(w);
            }
            let keep = child_first || self.worth_exploring();
            let flow = if keep {
                self.explore(child, child_first)?
            } else {
                Flow::Continue
            };
            self.path.pop();
            self.path_invariants.pop();
            match flow {
                Flow::Budget => return Ok(Flow::Budget),
                Flow::FoundFirst if !on_first => return Ok(Flow::FoundFirst),
                _ => {}
            }
        }
        Ok(Flow::Continue)
    }

    fn matches_first(&self) -> bool {
        self.first.as_ref().is_some_and(|f| {
            f.invariants.len() >= self.path_invariants.len()
                && f.invariants[..self.path_invariants.len()] == self.path_invariants[..]
        })
    }

    fn compare_best(&self) -> Ordering {
        match &self.best {
            None => Ordering::Greater,
            Some(b) => {
                let k = self.path_invariants.len().min(b.invariants.len());
                self.path_invariants[..k].cmp(&b.invariants[..k])
            }
        }
    }

    fn worth_exploring(&self) -> bool {
        self.matches_first() || self.compare_best() != Ordering::Less
    }

    fn make_leaf(&mut self, part: &Partition) -> Leaf {
        let n = part.len();
        let mut cert_offsets = Vec::with_capacity(n + 1);
        let mut cert = Vec::with_capacity(2 * self.g.edge_count());
        cert_offsets.push(0);
        for i in 0..n {
            let v = part.elems[i];
            let start = cert.len();
            cert.extend(self.g.neighbors(v).iter().map(|&u| part.pos[u as usize]));
            cert[start..].sort_unstable();
            cert_offsets.push(cert.len());
        }
        Leaf {
            invariants: self.path_invariants.clone(),
            elems: part.elems.clone(),
            pos: part.pos.clone(),
            cert_offsets,
            cert,
        }
    }

    /// Compares the relabelled graph at `part` with a stored leaf.
    fn compare_certificate(&mut self, part: &Partition, leaf: &Leaf) -> Ordering {
        for i in 0..part.len() {
            let v = part.elems[i];
            self.buffer.clear();
            self.buffer
                .extend(self.g.neighbors(v).iter().map(|&u| part.pos[u as usize]));
            self.buffer.sort_unstable();
            let stored = &leaf.cert[leaf.cert_offsets[i]..leaf.cert_offsets[i + 1]];
            let o = self.buffer.len().cmp(&stored.len()).then_with(|| self.buffer[..].cmp(stored));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    /// The automorphism taking `leaf` to `part`.
    fn automorphism(&self, part: &Partition, leaf: &Leaf) -> Result<Permutation> {
        let images = (0..part.len()).map(|v| part.elems[leaf.pos[v] as usize]).collect();
        let a = Permutation::from_images(images)?;
        if !self.g.is_automorphism(&a) {
            return Err(Error::Internal("equal certificates gave a non-automorphism".into()));
        }
        Ok(a)
    }

    fn leaf(&mut self, part: &Partition, on_first: bool) -> Result<Flow> {
        if on_first {
            let leaf = self.make_leaf(part);
            self.best = Some(Leaf {
                invariants: leaf.invariants.clone(),
                elems: leaf.elems.clone(),
                pos: leaf.pos.clone(),
                cert_offsets: leaf.cert_offsets.clone(),
                cert: leaf.cert.clone(),
            });
            self.first = Some(leaf);
            return Ok(Flow::Continue);
        }
        if self.matches_first() {
            let first = self.first.take().expect("first leaf exists");
            let same = self.compare_certificate(part, &first) == Ordering::Equal
                && first.invariants.len() == self.path_invariants.len();
            let aut = if same { Some(self.automorphism(part, &first)) } else { None };
            self.first = Some(first);
            if let Some(a) = aut {
                self.auts.push(a?);
                return Ok(Flow::FoundFirst);
            }
        }
        let order = match self.compare_best() {
            Ordering::Equal => {
                let best = self.best.take().expect("best leaf exists");
                let len_order = self.path_invariants.len().cmp(&best.invariants.len());
                let o = len_order.then_with(|| self.compare_certificate(part, &best));
                if o == Ordering::Equal {
                    let a = self.automorphism(part, &best);
                    self.best = Some(best);
                    self.auts.push(a?);
                } else {
                    self.best = Some(best);
                }
                o
            }
            o => o,
        };
        if order == Ordering::Greater {
            self.best = Some(self.make_leaf(part));
        }
        Ok(Flow::Continue)
    }

    fn group_order(&self) -> u128 {
        let n = self.g.vertex_count();
        let mut order: u128 = 1;
        for k in 0..self.first_path.len() {
            let prefix = &self.first_path[..k];
            let gens: Vec<&Permutation> = self
                .auts
                .iter()
                .filter(|a| prefix.iter().all(|&v| a.fixes(v)))
                .collect();
            let start = self.first_path[k];
            let mut seen = vec![false; n];
            seen[start as usize] = true;
            let mut stack = vec![start];
            let mut size = 1u128;
            while let Some(x) = stack.pop() {
                for a in &gens {
                    let y = a.image(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            order *= size;
        }
        order
    }
}

//! Pentavalent arc-transitive graphs as orbital graphs of coset actions.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::canon::{self, CanonicalForm, SearchOptions, SearchStatus};
use crate::error::{Error, Result};
use crate::graph::{s_arc_transitivity_from_stabilizer, to_graph6, Graph, TransitivityReport};
use crate::perm::{
    find_subgroups_of_order, recognize_small_group, CosetAction, GroupKind, PermGroup, Suborbit,
    MAX_SEARCH_ORDER,
};

pub const VALENCY: usize = 5;

/// Stabilizer orders tried when the caller gives none.
pub const DEFAULT_STAB_ORDERS: [u128; 7] = [5, 10, 20, 40, 60, 80, 120];

/// A connected arc-transitive graph built from one (stabilizer, suborbit) pair.
#[derive(Clone, Debug)]
pub struct GraphCandidate {
    pub graph: Graph,
    pub group_label: String,
    pub stabilizer_kind: GroupKind,
    pub stabilizer_order: u128,
    pub degree: usize,
    pub suborbit_rep: u32,
    pub connected: bool,
    /// Transitivity of the constructing group.
    pub transitivity: TransitivityReport,
    /// Images of the group's generators on the vertices.
    pub group_action: Vec<crate::perm::Permutation>,
    /// Images of the stabilizer's generators; they fix vertex 0.
    pub stabilizer_action: Vec<crate::perm::Permutation>,
    pub canonical_form: Option<CanonicalForm>,
    pub canon_status: SearchStatus,
    /// |Aut| of the graph when the canonical search completed.
    pub aut_order: Option<u128>,
    /// Verified automorphisms found by the search; they generate Aut when it completed.
    pub aut_generators: Vec<crate::perm::Permutation>,
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub group_label: String,
    pub seed: u64,
    /// Node budget for each canonical-form search.
    pub canon_budget: Option<u64>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            group_label: "G".into(),
            seed: 0,
            canon_budget: None,
        }
    }
}

fn arc_orbit_graph(action: &CosetAction, points: &[u32]) -> Graph {
    let n = action.degree();
    let mut seen: FxHashSet<(u32, u32)> = points.iter().map(|&x| (0, x)).collect();
    let mut queue: Vec<(u32, u32)> = seen.iter().copied().collect();
    queue.sort_unstable();
    let mut adjacency = vec![Vec::new(); n];
    while let Some((u, v)) = queue.pop() {
        adjacency[u as usize].push(v);
        for g in action.action_generators() {
            let arc = (g.image(u), g.image(v));
            if seen.insert(arc) {
                queue.push(arc);
            }
        }
    }
    Graph::from_adjacency_lists(adjacency)
}

/// The orbital graph of a self-paired suborbit of length 5.
pub fn orbital_graph(action: &CosetAction, sub: &Suborbit) -> Result<Graph> {
    if sub.length != VALENCY {
        return Err(Error::InvalidArgument(format!(
            "suborbit of length {} is not of length {VALENCY}",
            sub.length
        )));
    }
    if !sub.self_paired {
        return Err(Error::InvalidArgument(
            "suborbit is not self-paired, its orbital is directed".into(),
        ));
    }
    let g = arc_orbit_graph(action, &sub.points);
    if g.neighbors(0) != sub.points.as_slice() {
        return Err(Error::Internal("vertex 0 neighbourhood differs from the suborbit".into()));
    }
    Ok(g)
}

/// Undirected graph from a suborbit together with its paired suborbit.
pub fn symmetrized_orbital_graph(action: &CosetAction, sub: &Suborbit, paired: &Suborbit) -> Graph {
    let mut points = sub.points.clone();
    points.extend_from_slice(&paired.points);
    arc_orbit_graph(action, &points)
}

/// Is the orbital graph connected, decided by whether the stabilizer and one
/// representative of the suborbit generate the whole group.
pub fn connectivity_certificate(action: &CosetAction, sub: &Suborbit) -> Result<bool> {
    let x = *sub
        .points
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty suborbit".into()))?;
    let rep = action.representative(x as usize);
    let joined = action.stabilizer().join(std::slice::from_ref(rep))?;
    Ok(joined.order() == action.parent().order())
}

fn check_orders(group: &PermGroup, stab_orders: &[u128]) -> Result<Vec<u128>> {
    let order = group.order();
    if stab_orders.is_empty() {
        return Ok(DEFAULT_STAB_ORDERS.iter().copied().filter(|m| order.is_multiple_of(*m)).collect());
    }
    for &m in stab_orders {
        if m == 0 || !order.is_multiple_of(m) {
            return Err(Error::InvalidArgument(format!("{m} does not divide |G| = {order}")));
        }
        if m % 5 != 0 {
            return Err(Error::InvalidArgument(format!("stabilizer order {m} is not a multiple of 5")));
        }
        if m > MAX_SEARCH_ORDER {
            return Err(Error::Unsupported(format!("stabilizer order {m} exceeds {MAX_SEARCH_ORDER}")));
        }
    }
    let mut out = stab_orders.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn enumerate_pentavalent(group: &PermGroup, stab_orders: &[u128], seed: u64) -> Result<Vec<GraphCandidate>> {
    enumerate_with(
        group,
        stab_orders,
        &EnumerateOptions {
            seed,
            ..Default::default()
        },
    )
}

struct Job {
    action: usize,
    suborbit: Suborbit,
}

/// All pairwise non-isomorphic connected candidates, sorted by canonical form.
/// Candidates whose canonical search ran out of budget are kept, after the
/// others, in construction order.
pub fn enumerate_with(group: &PermGroup, stab_orders: &[u128], opts: &EnumerateOptions) -> Result<Vec<GraphCandidate>> {
    let orders = check_orders(group, stab_orders)?;
    let mut subgroups = Vec::new();
    for &m in &orders {
        for h in find_subgroups_of_order(group, m, opts.seed)? {
            subgroups.push((m, h));
        }
    }
    // A stabilizer with a nontrivial core acts unfaithfully; its graphs belong
    // to the quotient group and are found there.
    let actions: Vec<(u128, GroupKind, CosetAction)> = subgroups
        .par_iter()
        .map(|(m, h)| {
            let action = CosetAction::new(group, h)?;
            if action.kernel_order() != 1 {
                return Ok(None);
            }
            Ok(Some((*m, recognize_small_group(h)?, action)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let jobs: Vec<Job> = actions
        .iter()
        .enumerate()
        .flat_map(|(i, (_, _, a))| {
            a.suborbits()
                .into_iter()
                .filter(|s| s.length == VALENCY && s.self_paired)
                .map(move |s| Job { action: i, suborbit: s })
        })
        .collect();
    let built: Vec<Option<GraphCandidate>> = jobs
        .par_iter()
        .map(|job| {
            let (m, kind, action) = &actions[job.action];
            build_candidate(action, &job.suborbit, *m, *kind, opts)
        })
        .collect::<Result<_>>()?;
    Ok(dedup_candidates(built.into_iter().flatten().collect()))
}

fn build_candidate(
    action: &CosetAction,
    sub: &Suborbit,
    m: u128,
    kind: GroupKind,
    opts: &EnumerateOptions,
) -> Result<Option<GraphCandidate>> {
    let graph = orbital_graph(action, sub)?;
    let connected = graph.is_connected();
    if connected != connectivity_certificate(action, sub)? {
        return Err(Error::Internal(format!(
            "connectivity certificate disagrees with search (suborbit at {})",
            sub.points[0]
        )));
    }
    if !connected {
        return Ok(None);
    }
    let transitivity = s_arc_transitivity_from_stabilizer(&graph, action.stabilizer_images())?;
    if !transitivity.arc_transitive {
        return Err(Error::Internal("orbital graph is not arc-transitive".into()));
    }
    let mut known = action.action_generators().to_vec();
    known.extend(action.stabilizer_images().iter().cloned());
    let result = canon::search(
        &graph,
        &SearchOptions {
            node_budget: opts.canon_budget,
            known_automorphisms: known,
        },
    )?;
    Ok(Some(GraphCandidate {
        degree: graph.vertex_count(),
        graph,
        group_label: opts.group_label.clone(),
        stabilizer_kind: kind,
        stabilizer_order: m,
        suborbit_rep: sub.points[0],
        connected,
        transitivity,
        group_action: action.action_generators().to_vec(),
        stabilizer_action: action.stabilizer_images().to_vec(),
        canonical_form: result.canonical,
        canon_status: result.status,
        aut_order: result.group_order,
        aut_generators: result.generators,
    }))
}

fn dedup_candidates(all: Vec<GraphCandidate>) -> Vec<GraphCandidate> {
    let (mut done, open): (Vec<_>, Vec<_>) = all.into_iter().partition(|c| c.canonical_form.is_some());
    // stable sort keeps the first constructed representative of each class
    done.sort_by(|a, b| a.canonical_form.cmp(&b.canonical_form));
    done.dedup_by(|b, a| a.canonical_form == b.canonical_form);
    done.extend(open);
    done
}

/// The JSON record written per candidate.
#[derive(Serialize)]
pub struct CandidateRecord<'a> {
    pub group_label: &'a str,
    pub degree: usize,
    pub stab_kind: String,
    pub graph6: String,
    pub connected: bool,
    pub s: usize,
}

impl GraphCandidate {
    /// graph6 of the canonical graph when known, else of the constructed graph.
    pub fn graph6(&self) -> Vec<u8> {
        match &self.canonical_form {
            Some(c) => c.bytes(),
            None => to_graph6(&self.graph),
        }
    }

    pub fn record(&self) -> CandidateRecord<'_> {
        CandidateRecord {
            group_label: &self.group_label,
            degree: self.degree,
            stab_kind: self.stabilizer_kind.to_string(),
            graph6: String::from_utf8(self.graph6()).expect("graph6 is ASCII"),
            connected: self.connected,
            s: self.transitivity.s,
        }
    }
}

fn path_safe(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Writes `out/<group>/<degree>/candidate_<i>.json`, one file per candidate.
pub fn dump_candidates(candidates: &[GraphCandidate], out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dir = out.join(path_safe(&c.group_label)).join(c.degree.to_string());
        std::fs::create_dir_all(&dir)?;
        let path = dir.join(format!("candidate_{i}.json"));
        std::fs::write(&path, serde_json::to_vec_pretty(&c.record())?)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests;

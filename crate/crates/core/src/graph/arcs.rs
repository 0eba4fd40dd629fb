use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

use super::Graph;

/// Largest s searched. Transitivity on (MAX_S + 1)-arcs is only reported.
pub const MAX_S: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub s: usize,
    pub arc_transitive: bool,
    /// Total number of s-arcs in the graph, all in one orbit.
    pub arc_count_checked: u128,
    /// The group is still transitive on (MAX_S + 1)-arcs.
    pub extends_beyond_cap: bool,
}

/// Largest s such that `group` is transitive on the s-arcs of `g`.
///
/// `group` must act on the vertices of `g` and be vertex-transitive.
pub fn s_arc_transitivity(g: &Graph, group: &PermGroup) -> Result<TransitivityReport> {
    if group.degree() != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            left: g.vertex_count(),
            right: group.degree(),
        });
    }
    for p in group.generators() {
        if !g.is_automorphism(p) {
            return Err(Error::NotAutomorphism(format!("{p}")));
        }
    }
    if !group.is_transitive() {
        return Err(Error::InvalidArgument("group is not vertex-transitive".into()));
    }
    let stab = group.point_stabilizer(0)?;
    s_arc_transitivity_from_stabilizer(g, stab.generators())
}

/// As [`s_arc_transitivity`], given generators of the stabilizer of vertex 0
/// in a vertex-transitive group of automorphisms.
pub fn s_arc_transitivity_from_stabilizer(
    g: &Graph,
    stabilizer: &[Permutation],
) -> Result<TransitivityReport> {
    let n = g.vertex_count();
    for p in stabilizer {
        if p.degree() != n || !p.fixes(0) || !g.is_automorphism(p) {
            return Err(Error::NotAutomorphism(format!("{p} does not fix vertex 0")));
        }
    }
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidGraph("graph is not regular".into()))? as u128;
    let mut report = TransitivityReport {
        s: 0,
        arc_transitive: false,
        arc_count_checked: n as u128,
        extends_beyond_cap: false,
    };
    if k == 0 {
        return Ok(report);
    }
    let mut arc = vec![0u32];
    for s in 1..=MAX_S + 1 {
        let prev = if s >= 2 { Some(arc[s - 2]) } else { None };
        let next = g
            .neighbors(arc[s - 1])
            .iter()
            .copied()
            .find(|&v| Some(v) != prev);
        let Some(next) = next else { break };
        arc.push(next);
        let at_vertex = k * (k - 1).pow(s as u32 - 1);
        if orbit_size(&arc, stabilizer, at_vertex as usize) as u128 != at_vertex {
            break;
        }
        if s > MAX_S {
            report.extends_beyond_cap = true;
        } else {
            report.s = s;
            report.arc_count_checked = n as u128 * at_vertex;
        }
    }
    report.arc_transitive = report.s >= 1;
    Ok(report)
}

/// Orbit size of a tuple under the group generated by `gens`, stopping past `cap`.
fn orbit_size(start: &[u32], gens: &[Permutation], cap: usize) -> usize {
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    seen.insert(start.to_vec());
    let mut queue = vec![start.to_vec()];
    while let Some(t) = queue.pop() {
        for p in gens {
            let image: Vec<u32> = t.iter().map(|&x| p.image(x)).collect();
            if seen.insert(image.clone()) {
                if seen.len() > cap {
                    return seen.len();
                }
                queue.push(image);
            }
        }
    }
    seen.len()
}

//! The classification harness: one verdict per table row or negative check.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canon::{self, SearchOptions, SearchStatus, CHAIN_CHECK_DEGREE};
use crate::error::{Error, Result};
use crate::graph::{is_normal_cover, quotient_graph, Graph};
use crate::orbital::{enumerate_with, EnumerateOptions, GraphCandidate, VALENCY};
use crate::perm::{recognize_small_group, GroupKind, PermGroup, Permutation};
use crate::zoo::{alternating, dihedral, direct_product, direct_with_z2, j1, pgl2, psl2, sl2};

pub use suites::{suite, SUITES};

/// How to build the group a row starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    A5xD10,
    Psl2(u32),
    Psl2xZ2(u32),
    Pgl2(u32),
    Pgl2xZ2(u32),
    Sl2(u32),
    J1,
    J1xZ2,
}

impl Recipe {
    pub fn build(&self) -> Result<PermGroup> {
        match *self {
            Recipe::A5xD10 => direct_product(&alternating(5)?, &dihedral(5)?),
            Recipe::Psl2(q) => psl2(q),
            Recipe::Psl2xZ2(q) => direct_with_z2(&psl2(q)?),
            Recipe::Pgl2(q) => pgl2(q),
            Recipe::Pgl2xZ2(q) => direct_with_z2(&pgl2(q)?),
            Recipe::Sl2(q) => sl2(q),
            Recipe::J1 => j1(),
            Recipe::J1xZ2 => direct_with_z2(&j1()?),
        }
    }

    /// Does the last generator of the built group span a central Z2 factor?
    pub fn has_central_swap(&self) -> bool {
        matches!(self, Recipe::Psl2xZ2(_) | Recipe::Pgl2xZ2(_) | Recipe::J1xZ2)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::A5xD10 => write!(f, "A5xD10"),
            Recipe::Psl2(q) => write!(f, "PSL(2,{q})"),
            Recipe::Psl2xZ2(q) => write!(f, "PSL(2,{q})xZ2"),
            Recipe::Pgl2(q) => write!(f, "PGL(2,{q})"),
            Recipe::Pgl2xZ2(q) => write!(f, "PGL(2,{q})xZ2"),
            Recipe::Sl2(q) => write!(f, "SL(2,{q})"),
            Recipe::J1 => write!(f, "J1"),
            Recipe::J1xZ2 => write!(f, "J1xZ2"),
        }
    }
}

/// Accepts `a5xd10`, `j1`, `j1xz2` and `<family>:<q>` for the families
/// `psl2`, `psl2xz2`, `pgl2`, `pgl2xz2` and `sl2`.
impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown group recipe {s:?}"));
        match lower.as_str() {
            "a5xd10" => return Ok(Recipe::A5xD10),
            "j1" => return Ok(Recipe::J1),
            "j1xz2" => return Ok(Recipe::J1xZ2),
            _ => {}
        }
        let (family, q) = lower.split_once(':').ok_or_else(bad)?;
        let q: u32 = q.parse().map_err(|_| bad())?;
        match family {
            "psl2" => Ok(Recipe::Psl2(q)),
            "psl2xz2" => Ok(Recipe::Psl2xZ2(q)),
            "pgl2" => Ok(Recipe::Pgl2(q)),
            "pgl2xz2" => Ok(Recipe::Pgl2xZ2(q)),
            "sl2" => Ok(Recipe::Sl2(q)),
            _ => Err(bad()),
        }
    }
}

fn display_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Expected quotient by the central involution.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientSpec {
    pub expected_order: usize,
    pub expected_aut_order: u128,
}

/// One classification row.
#[derive(Clone, Debug, Serialize)]
pub struct RowSpec {
    pub label: String,
    #[serde(serialize_with = "display_string")]
    pub recipe: Recipe,
    pub expected_count: usize,
    pub expected_order_4n: usize,
    pub expected_aut_order: u128,
    pub expected_stab: GroupKind,
    pub expected_s: usize,
    /// `None` when the row does not state it.
    pub expected_bipartite: Option<bool>,
    pub quotient: Option<QuotientSpec>,
    pub notes: Vec<String>,
}

fn is_odd_squarefree(mut n: usize) -> bool {
    if n.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 2;
    }
    true
}

impl RowSpec {
    pub fn validate(&self) -> Result<()> {
        let n4 = self.expected_order_4n;
        if n4 == 0 || !n4.is_multiple_of(4) || !is_odd_squarefree(n4 / 4) {
            return Err(Error::InvalidArgument(format!(
                "{}: order {n4} is not 4n with n odd and square-free",
                self.label
            )));
        }
        if self.expected_aut_order != n4 as u128 * self.expected_stab.order() as u128 {
            return Err(Error::InvalidArgument(format!(
                "{}: |Aut| {} is not {n4} x |{}|",
                self.label, self.expected_aut_order, self.expected_stab
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// A canonical search ran out of budget; measurements are partial.
    Extended,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Extended => "EXTENDED",
            Verdict::Skipped => "SKIPPED",
        };
        f.write_str(s)
    }
}

/// Measurements for one enumerated graph.
#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub aut_order: Option<u128>,
    /// |Aut_v|, from |Aut| / |V| once Aut is known to be vertex-transitive.
    pub aut_stab_order: Option<u128>,
    /// The constructing subgroup.
    pub group_stab: GroupKind,
    /// The vertex stabilizer in Aut, when it could be recognized.
    pub aut_stab: Option<GroupKind>,
    /// s for the constructing group; also s for Aut when the two coincide.
    pub s: usize,
    pub s_extends_beyond_cap: bool,
    pub bipartite: bool,
    pub canon_complete: bool,
    /// Every generator of the constructing group preserves adjacency.
    pub group_embeds: bool,
    /// Counted towards this row (|Aut| matches or is unknown).
    pub counted: bool,
    pub graph6: String,
}

/// Result of a quotient by the central involution.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub vertices: usize,
    pub semiregular: bool,
    pub pentavalent: bool,
    pub connected: bool,
    pub normal_cover: bool,
    pub aut_order: Option<u128>,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub label: String,
    pub group: Option<String>,
    pub spec: Option<RowSpec>,
    pub found_count: usize,
    pub graphs: Vec<GraphReport>,
    pub quotients: Vec<QuotientReport>,
    pub mismatches: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub seed: u64,
    /// Wall time; kept out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl RowReport {
    pub fn skipped(label: &str, reason: &str) -> Self {
        RowReport {
            label: label.into(),
            group: None,
            spec: None,
            found_count: 0,
            graphs: Vec::new(),
            quotients: Vec::new(),
            mismatches: Vec::new(),
            notes: vec![reason.into()],
            verdict: Verdict::Skipped,
            seed: 0,
            runtime: Duration::ZERO,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub canon_budget: Option<u64>,
}

/// Is `(s, stab)` one of the pairs allowed for pentavalent (G, s)-transitive graphs?
pub fn stabilizer_lemma_allows(s: usize, stab: GroupKind) -> bool {
    use GroupKind::*;
    match (s, stab) {
        (1, Z5 | D10 | D20) => true,
        (2, F20 | F20xZ2 | A5 | S5) => true,
        (3, F20xZ4) => true,
        (3, Other(m)) => matches!(m, 720 | 1440 | 2880),
        (4, Other(m)) => matches!(m, 960 | 1920 | 2880 | 5760),
        (5, Other(m)) => m == 23040,
        _ => false,
    }
}

/// Every counted graph's (s, stabilizer in Aut) is allowed.
pub fn check_stabilizer_lemma(report: &RowReport) -> bool {
    report
        .graphs
        .iter()
        .filter(|g| g.counted)
        .all(|g| stabilizer_lemma_allows(g.s, g.aut_stab.unwrap_or(g.group_stab)))
}

fn measure(c: &GraphCandidate, group_order: u128, expected_aut: Option<u128>) -> Result<GraphReport> {
    let n = c.degree;
    let group_embeds = c.group_action.iter().all(|p| c.graph.is_automorphism(p));
    let mut aut_stab_order = None;
    let mut aut_stab = None;
    if let Some(aut) = c.aut_order {
        let aut_group = PermGroup::new(n, c.aut_generators.clone())?;
        if aut_group.orbit(0)?.len() != n || aut % n as u128 != 0 {
            return Err(Error::Internal("Aut is not vertex-transitive".into()));
        }
        aut_stab_order = Some(aut / n as u128);
        aut_stab = if aut == group_order {
            Some(c.stabilizer_kind)
        } else if aut / (n as u128) <= 240 && n <= CHAIN_CHECK_DEGREE {
            Some(recognize_small_group(&aut_group.point_stabilizer(0)?)?)
        } else {
            None
        };
    }
    Ok(GraphReport {
        vertices: n,
        aut_order: c.aut_order,
        aut_stab_order,
        group_stab: c.stabilizer_kind,
        aut_stab,
        s: c.transitivity.s,
        s_extends_beyond_cap: c.transitivity.extends_beyond_cap,
        bipartite: c.graph.is_bipartite(),
        canon_complete: c.canon_status == SearchStatus::Complete,
        group_embeds,
        counted: match (c.aut_order, expected_aut) {
            (Some(a), Some(e)) => a == e,
            _ => true,
        },
        graph6: String::from_utf8(c.graph6()).expect("graph6 is ASCII"),
    })
}

/// Quotient of `g` by the group generated by `central`, checked against `spec`.
pub fn quotient_consistency(
    g: &Graph,
    central: &Permutation,
    group_action: &[Permutation],
    spec: &QuotientSpec,
    canon_budget: Option<u64>,
) -> Result<QuotientReport> {
    let n_sub = PermGroup::new(g.vertex_count(), vec![central.clone()])?;
    let semiregular = n_sub.is_semiregular();
    let (q, map) = quotient_graph(g, &n_sub)?;
    let pentavalent = q.regular_degree() == Some(VALENCY);
    let connected = q.is_connected();
    let normal_cover = is_normal_cover(g, &q, &map)?;
    // the constructing group permutes the blocks; hand its images to the search
    let mut rep = vec![0u32; map.block_count];
    for (v, &b) in map.block_of.iter().enumerate().rev() {
        rep[b as usize] = v as u32;
    }
    let induced = group_action
        .iter()
        .map(|p| Permutation::from_images(rep.iter().map(|&v| map.block_of[p.image(v) as usize]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let aut_order = canon::search(
        &q,
        &SearchOptions {
            node_budget: canon_budget,
            known_automorphisms: induced,
        },
    )?
    .group_order;
    let consistent = semiregular
        && pentavalent
        && connected
        && normal_cover
        && q.vertex_count() == spec.expected_order
        && aut_order.is_none_or(|a| a == spec.expected_aut_order);
    Ok(QuotientReport {
        vertices: q.vertex_count(),
        semiregular,
        pentavalent,
        connected,
        normal_cover,
        aut_order,
        consistent,
    })
}

fn stabilizer_order_for(spec: &RowSpec, group_order: u128) -> Result<u128> {
    let n4 = spec.expected_order_4n as u128;
    let m = if group_order == spec.expected_aut_order {
        spec.expected_aut_order / n4
    } else {
        group_order / n4
    };
    if m * n4 != group_order {
        return Err(Error::InvalidArgument(format!(
            "{}: |G| = {group_order} is not a multiple of {n4}",
            spec.label
        )));
    }
    Ok(m)
}

pub fn verify_row(spec: &RowSpec, opts: &VerifyOptions) -> Result<RowReport> {
    spec.validate()?;
    let start = Instant::now();
    let group = spec.recipe.build()?;
    let order = group.order();
    let m = stabilizer_order_for(spec, order)?;
    let cands = enumerate_with(
        &group,
        &[m],
        &EnumerateOptions {
            group_label: spec.recipe.to_string(),
            seed: opts.seed,
            canon_budget: opts.canon_budget,
        },
    )?;
    let graphs = cands
        .iter()
        .map(|c| measure(c, order, Some(spec.expected_aut_order)))
        .collect::<Result<Vec<_>>>()?;

    let mut mismatches = Vec::new();
    let counted: Vec<usize> = (0..graphs.len()).filter(|&i| graphs[i].counted).collect();
    let found_count = counted.len();
    if found_count != spec.expected_count {
        mismatches.push(format!("found {found_count} graphs, expected {}", spec.expected_count));
    }
    for &i in &counted {
        let g = &graphs[i];
        let stab = g.aut_stab.unwrap_or(g.group_stab);
        let mut check = |ok: bool, what: String| {
            if !ok {
                mismatches.push(format!("graph {i}: {what}"));
            }
        };
        check(g.vertices == spec.expected_order_4n, format!("{} vertices", g.vertices));
        check(stab == spec.expected_stab, format!("stabilizer {stab}"));
        check(g.s == spec.expected_s, format!("s = {}", g.s));
        check(g.group_embeds, "constructing group is not in Aut".into());
        if let Some(b) = spec.expected_bipartite {
            check(g.bipartite == b, format!("bipartite = {}", g.bipartite));
        }
    }

    let mut quotients = Vec::new();
    if let Some(qspec) = &spec.quotient {
        if !spec.recipe.has_central_swap() {
            return Err(Error::InvalidArgument(format!("{}: recipe has no central involution", spec.label)));
        }
        for &i in &counted {
            let c = &cands[i];
            let central = c.group_action.last().expect("group has generators");
            let r = quotient_consistency(&c.graph, central, &c.group_action, qspec, opts.canon_budget)?;
            if !r.consistent {
                mismatches.push(format!("graph {i}: quotient by the centre is inconsistent"));
            }
            quotients.push(r);
        }
    }

    let incomplete = counted.iter().any(|&i| !graphs[i].canon_complete)
        || quotients.iter().any(|q| q.aut_order.is_none());
    let verdict = match (mismatches.is_empty(), incomplete) {
        (true, false) => Verdict::Pass,
        (true, true) => Verdict::Extended,
        (false, _) => Verdict::Fail,
    };
    let mut report = RowReport {
        label: spec.label.clone(),
        group: Some(spec.recipe.to_string()),
        spec: Some(spec.clone()),
        found_count,
        graphs,
        quotients,
        mismatches,
        notes: spec.notes.clone(),
        verdict,
        seed: opts.seed,
        runtime: start.elapsed(),
    };
    if report.verdict == Verdict::Pass && !check_stabilizer_lemma(&report) {
        report.mismatches.push("(s, stabilizer) pair outside the stabilizer tables".into());
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// A check that passes when no graph with `s >= min_s` arises.
#[derive(Clone, Debug)]
pub struct NegativeSpec {
    pub label: String,
    pub recipe: Recipe,
    pub stab_orders: Vec<u128>,
    pub min_s: usize,
    pub notes: Vec<String>,
}

pub fn verify_negative(spec: &NegativeSpec, opts: &VerifyOptions) -> Result<RowReport> {
    let start = Instant::now();
    let group = spec.recipe.build()?;
    let order = group.order();
    let cands = enumerate_with(
        &group,
        &spec.stab_orders,
        &EnumerateOptions {
            group_label: spec.recipe.to_string(),
            seed: opts.seed,
            canon_budget: opts.canon_budget,
        },
    )?;
    let mut graphs = cands
        .iter()
        .map(|c| measure(c, order, None))
        .collect::<Result<Vec<_>>>()?;
    for g in &mut graphs {
        g.counted = g.s >= spec.min_s;
    }
    let found_count = graphs.iter().filter(|g| g.counted).count();
    let mismatches = if found_count == 0 {
        Vec::new()
    } else {
        vec![format!("{found_count} graphs with s >= {} exist", spec.min_s)]
    };
    Ok(RowReport {
        label: spec.label.clone(),
        group: Some(spec.recipe.to_string()),
        spec: None,
        found_count,
        graphs,
        quotients: Vec::new(),
        verdict: if mismatches.is_empty() { Verdict::Pass } else { Verdict::Fail },
        mismatches,
        notes: spec.notes.clone(),
        seed: opts.seed,
        runtime: start.elapsed(),
    })
}

/// One entry of a suite.
#[derive(Clone, Debug)]
pub enum Check {
    Row(RowSpec),
    Negative(NegativeSpec),
    Skipped { label: String, reason: String },
}

impl Check {
    pub fn label(&self) -> &str {
        match self {
            Check::Row(r) => &r.label,
            Check::Negative(n) => &n.label,
            Check::Skipped { label, .. } => label,
        }
    }

    pub fn run(&self, opts: &VerifyOptions) -> Result<RowReport> {
        match self {
            Check::Row(r) => verify_row(r, opts),
            Check::Negative(n) => verify_negative(n, opts),
            Check::Skipped { label, reason } => Ok(RowReport::skipped(label, reason)),
        }
    }
}

/// Runs checks in parallel; reports come back in input order.
pub fn run_checks(checks: &[Check], opts: &VerifyOptions, progress: impl Fn(&RowReport) + Sync) -> Result<Vec<RowReport>> {
    checks
        .par_iter()
        .map(|c| {
            let r = c.run(opts)?;
            progress(&r);
            Ok(r)
        })
        .collect()
}

/// Exit status of a run: every non-skipped row passed, or (unless strict) is EXTENDED.
pub fn all_ok(reports: &[RowReport], strict: bool) -> bool {
    reports.iter().all(|r| match r.verdict {
        Verdict::Pass | Verdict::Skipped => true,
        Verdict::Extended => !strict,
        Verdict::Fail => false,
    })
}

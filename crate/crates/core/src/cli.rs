//! Command-line front end. Results go to standard output, progress to
//! standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::canon::isomorphism;
use crate::error::{Error, Result};
use crate::graph::{from_graph6, is_normal_cover, quotient_graph, to_dot, to_graph6, Graph};
use crate::orbital::{dump_candidates, enumerate_with, EnumerateOptions};
use crate::perm::{PermGroup, Permutation};
use crate::verify::{all_ok, run_checks, suite, Recipe, Verdict, VerifyOptions};
use crate::zoo::{filter_simple_orders_with_bound, Field, DEFAULT_PSL2_BOUND};

#[derive(Parser, Debug)]
#[command(name = "orbitale", version, about = "Pentavalent arc-transitive coset graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// RNG seed; falls back to ORBITALE_SEED, then 0.
    #[arg(long, global = true, env = "ORBITALE_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for each canonical-labelling search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for dumped candidates and reports.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Treat EXTENDED verdicts as failures.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group constructors.
    Group {
        #[command(subcommand)]
        action: GroupCommand,
    },
    /// Enumerate pentavalent arc-transitive graphs of a group.
    Enumerate {
        /// Recipe such as `j1`, `a5xd10` or `psl2xz2:25`.
        #[arg(long)]
        group: String,
        /// Vertex stabilizer orders; defaults to the standard list.
        #[arg(long = "stab-order", value_delimiter = ',')]
        stab_orders: Vec<u128>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Quotient a graph by the group generated by the given permutations.
    Quotient {
        graph: PathBuf,
        /// Generator in cycle notation, e.g. "(0 1)(2 3)"; repeatable.
        #[arg(long = "generator", required = true)]
        generators: Vec<String>,
    },
    /// Simple groups of order 2^i 3^j 5 n.
    Filter {
        /// Prime factors of n, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_PSL2_BOUND)]
        bound: u64,
    },
    /// Decide whether two graphs are isomorphic.
    Isocheck { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Order, degree and field data of a group.
    Info {
        /// psl2, pgl2, sl2, psl2xz2, pgl2xz2, a5xd10, j1 or j1xz2.
        #[arg(long)]
        name: String,
        #[arg(long)]
        q: Option<u32>,
    },
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.global.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return 2;
        }
        // fails only when a pool already exists, as in repeated in-process runs
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut out = std::io::stdout().lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        // a reader such as `head` closed stdout early
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn recipe(name: &str, q: Option<u32>) -> Result<Recipe> {
    match q {
        Some(q) if !name.contains(':') => format!("{name}:{q}").parse(),
        _ => name.parse(),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let data = std::fs::read(path)?;
    let text = String::from_utf8_lossy(&data);
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let line = trimmed.lines().next().unwrap_or("").trim_end();
    from_graph6(line.as_bytes())
}

fn render(g: &Graph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Graph6 => String::from_utf8(to_graph6(g)).expect("graph6 is ASCII"),
        Format::Dot => to_dot(g),
        Format::Json => serde_json::to_string(g)?,
    })
}

#[derive(Serialize)]
struct GroupInfo {
    group: String,
    order: String,
    degree: usize,
    transitive: bool,
    generators: usize,
    field: Option<crate::zoo::FieldSpec>,
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Group {
            action: GroupCommand::Info { name, q },
        } => {
            let r = recipe(name, *q)?;
            let group = r.build()?;
            let field = match r {
                Recipe::Psl2(q) | Recipe::Psl2xZ2(q) | Recipe::Pgl2(q) | Recipe::Pgl2xZ2(q) | Recipe::Sl2(q) => {
                    Some(Field::new(q)?.spec())
                }
                _ => None,
            };
            let info = GroupInfo {
                group: r.to_string(),
                order: group.order().to_string(),
                degree: group.degree(),
                transitive: group.is_transitive(),
                generators: group.generators().len(),
                field,
            };
            if g.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string_pretty(&info)?)?;
            } else {
                writeln!(out, "group: {}\norder: {}\ndegree: {}\ntransitive: {}", info.group, info.order, info.degree, info.transitive)?;
            }
            Ok(0)
        }
        Command::Enumerate { group, stab_orders } => {
            let r = recipe(group, None)?;
            let built = r.build()?;
            eprintln!("enumerating {r} (order {})", built.order());
            let cands = enumerate_with(
                &built,
                stab_orders,
                &EnumerateOptions {
                    group_label: r.to_string(),
                    seed: g.seed,
                    canon_budget: g.budget,
                },
            )?;
            eprintln!("{} graphs", cands.len());
            if let Some(dir) = &g.out_dir {
                let paths = dump_candidates(&cands, dir)?;
                eprintln!("wrote {} files under {}", paths.len(), dir.display());
            }
            if g.format == Format::Json {
                let records: Vec<_> = cands.iter().map(|c| c.record()).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
            } else {
                for c in &cands {
                    let graph = c.canonical_form.as_ref().map(|f| f.graph()).unwrap_or(&c.graph);
                    writeln!(out, "{}", render(graph, g.format)?)?;
                }
            }
            Ok(0)
        }
        Command::Verify { suite: name } => {
            let checks = suite(name)?;
            let opts = VerifyOptions {
                seed: g.seed,
                canon_budget: g.budget,
            };
            let reports = run_checks(&checks, &opts, |r| {
                eprintln!("{:<8} {} ({:.1?})", r.verdict.to_string(), r.label, r.runtime);
            })?;
            let json = serde_json::to_string_pretty(&reports)?;
            if let Some(dir) = &g.out_dir {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("report_{name}.json")), &json)?;
            }
            writeln!(out, "{json}")?;
            let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
            eprintln!("{} checks, {failed} failed", reports.len());
            Ok(if all_ok(&reports, g.strict) { 0 } else { 1 })
        }
        Command::Quotient { graph, generators } => {
            let gr = read_graph(graph)?;
            let gens = generators
                .iter()
                .map(|s| Permutation::parse_cycles(gr.vertex_count(), s))
                .collect::<Result<Vec<_>>>()?;
            let n_sub = PermGroup::new(gr.vertex_count(), gens)?;
            let (q, map) = quotient_graph(&gr, &n_sub)?;
            writeln!(out, "{}", render(&q, g.format)?)?;
            eprintln!(
                "{} blocks, semiregular: {}, normal cover: {}",
                map.block_count,
                n_sub.is_semiregular(),
                is_normal_cover(&gr, &q, &map)?
            );
            Ok(0)
        }
        Command::Filter { n, bound } => {
            let product = n.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
            let product = product.ok_or_else(|| Error::InvalidArgument("n overflows".into()))?;
            let records = filter_simple_orders_with_bound(product, *bound)?;
            if g.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
            } else {
                for r in &records {
                    writeln!(out, "{}\t{}", r.name, r.order)?;
                }
            }
            Ok(0)
        }
        Command::Isocheck { a, b } => {
            let (ga, gb) = (read_graph(a)?, read_graph(b)?);
            let iso = isomorphism(&ga, &gb)?;
            writeln!(out, "isomorphic: {}", iso.is_some())?;
            if let (Some(w), Format::Json) = (iso, g.format) {
                writeln!(out, "{}", serde_json::to_string(w.images())?)?;
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> Result<(i32, String)> {
        let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string()))?;
        let mut buf = Vec::new();
        let code = execute(&cli, &mut buf)?;
        Ok((code, String::from_utf8(buf).unwrap()))
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        assert_eq!(run(["orbitale", "verify", "--bogus"]), 2);
        assert_eq!(run(["orbitale", "frobnicate"]), 2);
    }

    #[test]
    fn computation_failures_exit_one() {
        assert_eq!(run(["orbitale", "verify", "--suite", "nope"]), 1);
        assert_eq!(run(["orbitale", "group", "info", "--name", "psl2", "--q", "6"]), 1);
    }

    #[test]
    fn group_info_reports_order_and_degree() {
        let (code, text) = run_capture(&["orbitale", "group", "info", "--name", "psl2", "--q", "25"]).unwrap();
        assert_eq!(code, 0);
        assert!(text.contains("order: 7800"));
        assert!(text.contains("degree: 26"));
    }

    #[test]
    fn filter_finds_j1() {
        let (code, text) = run_capture(&["orbitale", "filter", "--n", "3,7,11,19"]).unwrap();
        assert_eq!(code, 0);
        assert!(text.lines().any(|l| l.starts_with("J1")));
    }

    #[test]
    fn isocheck_of_a_file_with_itself() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.g6");
        std::fs::write(&path, "Dhc\n").unwrap();
        let p = path.to_str().unwrap();
        let (_, text) = run_capture(&["orbitale", "isocheck", p, p]).unwrap();
        assert_eq!(text.trim(), "isomorphic: true");
    }

    #[test]
    fn quotient_of_the_six_cycle_is_a_triangle() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c6.json");
        std::fs::write(&path, r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#).unwrap();
        let p = path.to_str().unwrap();
        let (_, text) = run_capture(&["orbitale", "--format", "json", "quotient", p, "--generator", "(0 3)(1 4)(2 5)"]).unwrap();
        let q: Graph = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.edge_count(), 3);
    }

    #[test]
    fn enumerate_dumps_and_prints() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, text) =
            run_capture(&["orbitale", "enumerate", "--group", "psl2:5", "--stab-order", "10", "--out-dir", d]).unwrap();
        assert_eq!(code, 0);
        assert_eq!(text.trim(), "E~~w");
        assert!(dir.path().join("PSL_2_5_").join("6").join("candidate_0.json").exists());
    }

    #[test]
    fn table3_small_suite_passes() {
        let (code, text) = run_capture(&["orbitale", "verify", "--suite", "table3-small"]).unwrap();
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r["verdict"] == "PASS"));
    }

    #[test]
    fn seed_flag_is_global() {
        let cli = Cli::try_parse_from(["orbitale", "verify", "--seed", "7"]).unwrap();
        assert_eq!(cli.global.seed, 7);
    }
}

//! `bbc`: recognise, colour, exactly solve, verify, generate and survey
//! backbone colouring instances on chordal hosts.
//!
//! Exit status: 0 success/valid, 1 invalid colouring, 2 precondition
//! rejection, 3 budget exhausted, 4 I/O or format error.

use anyhow::{anyhow, Context, Result};
use bbc::algorithms::{
    best_colouring, colour_forest_partition, colour_interval_bipartite, colour_sparse_peel,
    double_spaced_colouring, AlgorithmError, AlgorithmReport, Attempt, AttemptOutcome,
    DEFAULT_MAD_CHECK_THRESHOLD,
};
use bbc::chordal::{check_peo, clique_number, mcs_ordering};
use bbc::colouring::{verify_backbone_colouring, verify_circular_colouring};
use bbc::decomp::{clique_path_restricted, dump_decomposition, smooth_tree_decomposition};
use bbc::exact::{exact_bbc, exact_cbc, ExactResult};
use bbc::generators::{
    extract_bipartite_backbone, extract_c4free_backbone, extract_spanning_forest,
    gen_lower_bound_family, gen_random_chordal, gen_random_interval_two_clique, GeneratorSpec,
};
use bbc::graph::Bipartiteness;
use bbc::io::{parse_colouring, parse_instance, write_colouring, write_instance};
use bbc::mad::{exact_mad, Ratio};
use bbc::{BackboneInstance, Colouring};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "bbc", about = "Backbone colouring toolkit for chordal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Best,
    Double,
    Interval2,
    Sparse,
    C4free,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Interval host (every vertex in at most 2 maximal cliques), random
    /// bipartite backbone.
    IntervalBipartite,
    /// Random chordal host with a random spanning forest backbone.
    ChordalForest,
    /// Random chordal host with a maximal C4-free backbone.
    ChordalC4free,
    /// Random chordal host with no backbone edges.
    ChordalEdgeless,
    /// The lower-bound family: core clique plus attachment cliques over
    /// every r-subset, backbone gap 2.
    LowerBound,
}

#[derive(Subcommand)]
enum Command {
    /// Colour an instance with a constructive algorithm (best verified by
    /// default) and write the colouring plus a per-algorithm report.
    Colour {
        /// Instance file.
        input: PathBuf,
        #[arg(long, value_enum, default_value = "best")]
        alg: Algorithm,
        /// Bound on the backbone's maximum average degree (rational, e.g.
        /// 2 or 3/2), needed by the sparse algorithm on large hosts.
        #[arg(long)]
        d: Option<Ratio>,
        /// Colouring output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-algorithm CSV report path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compute the exact optimum by branch and bound.
    Exact {
        input: PathBuf,
        /// Solve the circular variant.
        #[arg(long)]
        circular: bool,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a colouring file against an instance.
    Verify {
        input: PathBuf,
        colouring: PathBuf,
        /// Check the circular gap constraint at the file's declared span.
        #[arg(long)]
        circular: bool,
    },
    /// Print structural facts: chordality, the restricted-interval
    /// property, backbone bipartiteness and C4-freeness.
    Recognize {
        input: PathBuf,
        /// Also dump a smooth tree decomposition, one `t` line per bag.
        #[arg(long)]
        dump: bool,
    },
    /// Exact maximum average degree of the backbone.
    Mad { input: PathBuf },
    /// Generate instances from a seeded family.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gap parameter for generated instances.
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Largest host size for the chordal families.
        #[arg(long, default_value_t = 300)]
        max_n: usize,
        /// Largest clique number (chordal families) or exact bag size
        /// (interval family).
        #[arg(long, default_value_t = 12)]
        omega: usize,
        /// Largest bag count for the interval family.
        #[arg(long, default_value_t = 30)]
        ell: usize,
        /// Family parameter r for the lower-bound family.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Output file (single instance) or stem (multiple; files get
        /// `-<index>.bbc` appended). Stdout when omitted and count is 1.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch-colour generated instances, solve them exactly within a
    /// budget, and report span/omega ratios as CSV.
    Survey {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        max_n: usize,
        #[arg(long, default_value_t = 12)]
        omega: usize,
        #[arg(long, default_value_t = 30)]
        ell: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Per-instance exact-solver budget in seconds.
        #[arg(long, default_value_t = 5)]
        budget: u64,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        d: Option<Ratio>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("BBC_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn read_instance(path: &Path) -> Result<BackboneInstance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Colour {
            input,
            alg,
            d,
            out,
            csv,
        } => cmd_colour(&input, alg, d, out, csv),
        Command::Exact {
            input,
            circular,
            budget,
            out,
        } => cmd_exact(&input, circular, budget, out),
        Command::Verify {
            input,
            colouring,
            circular,
        } => cmd_verify(&input, &colouring, circular),
        Command::Recognize { input, dump } => cmd_recognize(&input, dump),
        Command::Mad { input } => cmd_mad(&input),
        Command::Generate {
            family,
            count,
            seed,
            q,
            max_n,
            omega,
            ell,
            r,
            out,
        } => cmd_generate(family, count, seed, q, max_n, omega, ell, r, out),
        Command::Survey {
            family,
            count,
            seed,
            max_n,
            omega,
            ell,
            r,
            budget,
            csv,
            d,
        } => cmd_survey(family, count, seed, max_n, omega, ell, r, budget, csv, d),
    }
}

fn cmd_colour(
    input: &Path,
    alg: Algorithm,
    d: Option<Ratio>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> Result<u8> {
    let inst = read_instance(input)?;
    let id = input.display().to_string();
    let (outcome, attempts): (Result<(Colouring, AlgorithmReport), AlgorithmError>, Vec<Attempt>) =
        match alg {
            Algorithm::Best => match best_colouring(&inst, d) {
                Ok((col, report, attempts)) => (Ok((col, report)), attempts),
                Err(e) => (Err(e), Vec::new()),
            },
            Algorithm::Double => (double_spaced_colouring(&inst), Vec::new()),
            Algorithm::Interval2 => (colour_interval_bipartite(&inst), Vec::new()),
            Algorithm::Sparse => {
                let d = match d {
                    Some(d) => Some(d),
                    None if inst.backbone_is_edgeless() => Some(Ratio::from_int(1)),
                    None if inst.host.vertex_count() <= DEFAULT_MAD_CHECK_THRESHOLD => {
                        Some(exact_mad(&inst.backbone_graph()).value)
                    }
                    None => None,
                };
                match d {
                    Some(d) => (colour_sparse_peel(&inst, d), Vec::new()),
                    None => (
                        Err(AlgorithmError::Rejected {
                            algorithm: "sparse",
                            condition: "supply --d: the host is too large to compute Mad exactly"
                                .into(),
                        }),
                        Vec::new(),
                    ),
                }
            }
            Algorithm::C4free => (colour_forest_partition(&inst), Vec::new()),
        };

    if let Some(path) = &csv {
        let mut text = String::new();
        writeln!(text, "{}", AlgorithmReport::csv_header()).unwrap();
        match (&outcome, attempts.is_empty()) {
            (_, false) => {
                for a in &attempts {
                    writeln!(text, "{}", a.csv_row(&id)).unwrap();
                }
            }
            (Ok((_, report)), true) => writeln!(text, "{}", report.csv_row(&id)).unwrap(),
            (Err(_), true) => {}
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }

    match outcome {
        Ok((col, report)) => {
            let check = verify_backbone_colouring(&inst, &col)
                .map_err(|e| anyhow!("verifier error: {e}"))?;
            emit(&out, &write_colouring(&col))?;
            eprintln!(
                "{}: span {} (bound {}, omega {}) in {} ms",
                report.algorithm, report.span, report.bound, report.omega, report.millis
            );
            Ok(if check.valid { EXIT_OK } else { EXIT_INVALID })
        }
        Err(AlgorithmError::Rejected { condition, .. }) => {
            eprintln!("rejected: {condition}");
            Ok(EXIT_REJECTED)
        }
        Err(e @ AlgorithmError::MadHypothesisViolated { .. })
        | Err(e @ AlgorithmError::PartitionDeadlock { .. }) => {
            eprintln!("rejected: {e}");
            Ok(EXIT_REJECTED)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn cmd_exact(input: &Path, circular: bool, budget: u64, out: Option<PathBuf>) -> Result<u8> {
    let inst = read_instance(input)?;
    let budget = Duration::from_secs(budget);
    let result: ExactResult = if circular {
        exact_cbc(&inst, budget)
    } else {
        exact_bbc(&inst, budget)
    };
    let kind = if circular { "cbc" } else { "bbc" };
    let mut text = String::new();
    if result.exact {
        let (k, witness) = result.best.as_ref().unwrap();
        writeln!(text, "c nodes {} elapsed-ms {}", result.nodes, result.elapsed.as_millis())
            .unwrap();
        writeln!(text, "x {kind} {k}").unwrap();
        text.push_str(&write_colouring(witness));
        emit(&out, &text)?;
        Ok(EXIT_OK)
    } else {
        let (lo, hi) = result.bounds();
        writeln!(text, "c inexact: budget exhausted after {} nodes", result.nodes).unwrap();
        writeln!(
            text,
            "c bounds: lower {lo} upper {}",
            hi.map_or("unknown".to_string(), |h| h.to_string())
        )
        .unwrap();
        if let Some(w) = result.witness() {
            text.push_str(&write_colouring(w));
        }
        emit(&out, &text)?;
        Ok(EXIT_BUDGET)
    }
}

fn cmd_verify(input: &Path, colouring: &Path, circular: bool) -> Result<u8> {
    let inst = read_instance(input)?;
    let text = fs::read_to_string(colouring)
        .with_context(|| format!("reading {}", colouring.display()))?;
    let (k, col) = parse_colouring(&text, inst.host.vertex_count())
        .map_err(|e| anyhow!("{}: {e}", colouring.display()))?;
    let report = if circular {
        verify_circular_colouring(&inst, &col, k)
    } else {
        verify_backbone_colouring(&inst, &col)
    }
    .map_err(|e| anyhow!("verifier error: {e}"))?;
    if report.valid {
        println!("valid: span {}", report.span);
        Ok(EXIT_OK)
    } else {
        println!("invalid: {} violation(s)", report.violations.len());
        for v in report.violations.iter().take(10) {
            println!("  {:?} at edge {{{}, {}}}", v.kind, v.edge.0, v.edge.1);
        }
        Ok(EXIT_INVALID)
    }
}

fn cmd_recognize(input: &Path, dump: bool) -> Result<u8> {
    let inst = read_instance(input)?;
    let g = &inst.host;
    let ord = mcs_ordering(g);
    let chordal = check_peo(g, &ord).is_ok();
    let omega = if chordal {
        Some(clique_number(g).unwrap())
    } else {
        None
    };
    let interval_restricted = g
        .connected_components()
        .into_iter()
        .all(|comp| clique_path_restricted(&g.induced(&comp).0).is_ok());
    let h = inst.backbone_graph();
    let bipartite = matches!(h.is_bipartite(), Bipartiteness::Bipartite { .. });
    println!(
        "n={} m={} mH={} q={}",
        g.vertex_count(),
        g.edge_count(),
        inst.backbone_edges().len(),
        inst.q
    );
    println!("chordal: {}", if chordal { "yes" } else { "no" });
    println!(
        "omega: {}",
        omega.map_or("n/a".to_string(), |w| w.to_string())
    );
    println!(
        "interval-restricted: {}",
        if interval_restricted { "yes" } else { "no" }
    );
    println!("backbone-bipartite: {}", if bipartite { "yes" } else { "no" });
    println!(
        "backbone-c4-free: {}",
        if h.is_c4_free() { "yes" } else { "no" }
    );
    if dump {
        if !chordal {
            eprintln!("cannot dump a decomposition of a non-chordal host");
            return Ok(EXIT_REJECTED);
        }
        // bag ids run consecutively across components; each component
        // keeps its own root
        let mut bags: Vec<Vec<usize>> = Vec::new();
        let mut parents: Vec<Option<usize>> = Vec::new();
        for comp in g.connected_components() {
            let (sub, to_original) = g.induced(&comp);
            let std = smooth_tree_decomposition(&sub).map_err(|e| anyhow!("{e}"))?;
            let offset = bags.len();
            bags.extend(
                std.bags
                    .iter()
                    .map(|b| b.iter().map(|&v| to_original[v]).collect::<Vec<_>>()),
            );
            parents.extend(std.parent.iter().map(|p| p.map(|x| x + offset)));
        }
        print!("{}", dump_decomposition(&bags, &parents));
    }
    Ok(EXIT_OK)
}

fn cmd_mad(input: &Path) -> Result<u8> {
    let inst = read_instance(input)?;
    let r = exact_mad(&inst.backbone_graph());
    println!("mad: {}", r.value);
    println!(
        "witness ({} vertices): {}",
        r.witness.len(),
        r.witness
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(EXIT_OK)
}

/// Produces the i-th instance of a family, deterministically from the
/// base seed.
#[allow(clippy::too_many_arguments)]
fn make_instance(
    family: Family,
    index: usize,
    seed: u64,
    q: u32,
    max_n: usize,
    omega_cap: usize,
    ell_cap: usize,
    r: usize,
) -> Result<(String, BackboneInstance)> {
    let inst_seed = seed.wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(inst_seed ^ 0x5eed_bbc0);
    match family {
        Family::IntervalBipartite => {
            let ell = rng.random_range(1..=ell_cap.max(1));
            let omega = rng.random_range(2..=omega_cap.max(2));
            let g = gen_random_interval_two_clique(ell, omega, inst_seed)
                .map_err(|e| anyhow!("{e}"))?;
            let bb = extract_bipartite_backbone(&g, inst_seed.wrapping_add(1));
            let spec = GeneratorSpec::IntervalTwoClique {
                ell,
                omega,
                seed: inst_seed,
            };
            Ok((
                format!("{spec} backbone=bipartite"),
                BackboneInstance::new(g, bb, q)?,
            ))
        }
        Family::ChordalForest | Family::ChordalC4free | Family::ChordalEdgeless => {
            let omega = rng.random_range(3..=omega_cap.max(3));
            let n = rng.random_range(omega.max(2)..=max_n.max(omega.max(2)));
            let g = gen_random_chordal(n, omega, inst_seed).map_err(|e| anyhow!("{e}"))?;
            let (bb, kind) = match family {
                Family::ChordalForest => (
                    extract_spanning_forest(&g, inst_seed.wrapping_add(1)),
                    "forest",
                ),
                Family::ChordalC4free => (
                    extract_c4free_backbone(&g, inst_seed.wrapping_add(1)),
                    "c4free",
                ),
                _ => (Vec::new(), "edgeless"),
            };
            let spec = GeneratorSpec::RandomChordal {
                n,
                omega,
                seed: inst_seed,
            };
            Ok((
                format!("{spec} backbone={kind}"),
                BackboneInstance::new(g, bb, q)?,
            ))
        }
        Family::LowerBound => {
            let inst = gen_lower_bound_family(r).map_err(|e| anyhow!("{e}"))?;
            let spec = GeneratorSpec::LowerBound { r };
            Ok((spec.to_string(), inst))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: Family,
    count: usize,
    seed: u64,
    q: u32,
    max_n: usize,
    omega: usize,
    ell: usize,
    r: usize,
    out: Option<PathBuf>,
) -> Result<u8> {
    for i in 0..count {
        let (spec, inst) = make_instance(family, i, seed, q, max_n, omega, ell, r)?;
        let text = write_instance(&inst, &[format!("generator: {spec}")]);
        match (&out, count) {
            (None, _) => print!("{text}"),
            (Some(p), 1) => fs::write(p, &text)
                .with_context(|| format!("writing {}", p.display()))?,
            (Some(p), _) => {
                let path = p.with_file_name(format!(
                    "{}-{i:04}.bbc",
                    p.file_stem().map_or("instance".into(), |s| s.to_string_lossy())
                ));
                fs::write(&path, &text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(EXIT_OK)
}

struct SurveyRow {
    id: usize,
    spec: String,
    n: usize,
    omega: usize,
    spans: [Option<u32>; 4], // double, interval2, sparse, c4free
    best: Option<u32>,
    exact_lo: u32,
    exact_hi: Option<u32>,
    exact: bool,
    ratio: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_survey(
    family: Family,
    count: usize,
    seed: u64,
    max_n: usize,
    omega_cap: usize,
    ell: usize,
    r: usize,
    budget: u64,
    csv: Option<PathBuf>,
    d: Option<Ratio>,
) -> Result<u8> {
    let budget = Duration::from_secs(budget);
    let rows: Result<Vec<SurveyRow>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let (spec, inst) = make_instance(family, i, seed, 2, max_n, omega_cap, ell, r)?;
            let omega = clique_number(&inst.host)
                .map_err(|e| anyhow!("generated host not chordal: {e}"))?;
            let (_, best_report, attempts) =
                best_colouring(&inst, d).map_err(|e| anyhow!("{e}"))?;
            let span_of = |name: &str| {
                attempts.iter().find_map(|a| match &a.outcome {
                    AttemptOutcome::Success(rep) if a.algorithm == name => Some(rep.span),
                    _ => None,
                })
            };
            let exact = exact_bbc(&inst, budget);
            let (exact_lo, exact_hi) = exact.bounds();
            let ratio_base = exact.optimum().unwrap_or(best_report.span);
            Ok(SurveyRow {
                id: i,
                spec,
                n: inst.host.vertex_count(),
                omega,
                spans: [
                    span_of("double"),
                    span_of("interval2"),
                    span_of("sparse"),
                    span_of("c4free"),
                ],
                best: Some(best_report.span),
                exact_lo,
                exact_hi,
                exact: exact.exact,
                ratio: ratio_base as f64 / omega as f64,
            })
        })
        .collect();
    let mut rows = rows?;
    rows.sort_by_key(|r| r.id);

    let mut text = String::new();
    writeln!(
        text,
        "id,generator,n,omega,double,interval2,sparse,c4free,best,exact_lower,exact_upper,exact,ratio"
    )
    .unwrap();
    let fmt_opt = |o: Option<u32>| o.map_or(String::new(), |v| v.to_string());
    let mut max_exact_ratio: Option<f64> = None;
    for row in &rows {
        if row.exact {
            let rr = row.exact_lo as f64 / row.omega as f64;
            max_exact_ratio = Some(max_exact_ratio.map_or(rr, |m: f64| m.max(rr)));
        }
        writeln!(
            text,
            "{},{},{},{},{},{},{},{},{},{},{},{},{:.4}",
            row.id,
            row.spec,
            row.n,
            row.omega,
            fmt_opt(row.spans[0]),
            fmt_opt(row.spans[1]),
            fmt_opt(row.spans[2]),
            fmt_opt(row.spans[3]),
            fmt_opt(row.best),
            row.exact_lo,
            fmt_opt(row.exact_hi),
            if row.exact { "exact" } else { "bounds" },
            row.ratio
        )
        .unwrap();
    }
    let solved = rows.iter().filter(|r| r.exact).count();
    writeln!(
        text,
        "summary,max-exact-ratio,,,,,,,,,,{},{}",
        solved,
        max_exact_ratio.map_or("n/a".to_string(), |v| format!("{v:.4}"))
    )
    .unwrap();
    emit(&csv, &text)?;
    eprintln!(
        "{count} instances; {solved} solved exactly; max exact ratio {}",
        max_exact_ratio.map_or("n/a".to_string(), |v| format!("{v:.4}"))
    );
    Ok(EXIT_OK)
}

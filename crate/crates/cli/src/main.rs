//! `hecke`: command-line front end for W-graph verification, Gram matrices,
//! specialized ranks, MeatAxe chopping, blocks and the radical verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hecke_core::cache::GramCache;
use hecke_core::formats::{parse_gram, parse_invariants, parse_wgraph, write_gram, INVARIANTS_FORMAT, WGRAPH_FORMAT};
use hecke_core::gram::{det_factor_check, reconstruct_gram_modular, solve_gram_direct, solve_gram_standard_base, GramMatrix, ModularPlan};
use hecke_core::hecke::{schur_elements, SchurElement};
use hecke_core::meataxe::{chop, FModule, DEFAULT_BUDGET};
use hecke_core::pipeline::{run_pipeline, Dataset, PipelineOptions, PipelineReport};
use hecke_core::rings::laurent::LaurentPoly;
use hecke_core::specrank::{bad_prime_set, modular_target, rank_at_modular, rank_at_zeta};
use hecke_core::weyl::WeylType;
use hecke_core::wgraph::{build_generator_matrices, verify_representation, GenMatrices, WGraph};
use hecke_core::{fixtures, Error};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Decomposition numbers of Iwahori-Hecke algebras from W-graphs")]
struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    StandardBase,
    Modular,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining relations for a W-graph file.
    VerifyWgraph {
        /// W-graph file, or `builtin:NAME` (g2_1, g2_eps1, g2_eps2, g2_r, g2_rp, g2_eps, e6_10s).
        wgraph: String,
    },
    /// Compute the normalized Gram matrix of the invariant form.
    Gram {
        /// W-graph file, or `builtin:NAME`.
        wgraph: String,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluation points per prime in the first modular round.
        #[arg(long)]
        initial_points: Option<usize>,
        /// Largest number of evaluation points per prime.
        #[arg(long)]
        max_points: Option<usize>,
        /// Largest number of primes.
        #[arg(long)]
        max_primes: Option<usize>,
    },
    /// Rank of the Gram matrix at v = zeta_{2e}, and in characteristic l if given.
    Rank {
        /// W-graph file, or `builtin:NAME`.
        wgraph: String,
        /// Order of q = v^2 as a root of unity.
        #[arg(long)]
        e: u64,
        /// Characteristic of the residue field; omit for characteristic zero.
        #[arg(long)]
        ell: Option<u64>,
        /// Use this Gram file instead of solving.
        #[arg(long)]
        gram: Option<PathBuf>,
    },
    /// Primes where the specialized rank may drop, and those where it does.
    Badprimes {
        /// W-graph file, or `builtin:NAME`.
        wgraph: String,
        /// Order of q = v^2 as a root of unity.
        #[arg(long)]
        e: u64,
        /// Use this Gram file instead of solving.
        #[arg(long)]
        gram: Option<PathBuf>,
    },
    /// Composition factors of a W-graph module over GF(l^k).
    Chop {
        /// W-graph file, or `builtin:NAME`.
        wgraph: String,
        /// Order of q = v^2 as a root of unity.
        #[arg(long)]
        e: u64,
        /// Characteristic of the residue field.
        #[arg(long)]
        ell: u64,
        /// Seed for the random element search.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Blocks of the decomposition matrix with their defects.
    Blocks(PipelineArgs),
    /// Schur elements with a- and f-invariants.
    Schur {
        /// Weyl group type, e.g. G2 or E6.
        #[arg(long = "type")]
        weyl: String,
        /// Directory with W-graph files and an invariants table; G2 is built in.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Full pipeline and the comparison of radicals at l and at zeta.
    James(PipelineArgs),
}

#[derive(clap::Args)]
struct PipelineArgs {
    /// Weyl group type, e.g. G2 or E6.
    #[arg(long = "type")]
    weyl: String,
    /// Order of q = v^2 as a root of unity.
    #[arg(long)]
    e: u64,
    /// Characteristic of the residue field.
    #[arg(long)]
    ell: u64,
    /// Seed for the random element search.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Directory with W-graph files and an invariants table; G2 is built in.
    #[arg(long)]
    data: Option<PathBuf>,
}

/// Process exit codes.
const OK: u8 = 0;
const MATH_FAILURE: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    if e.is_resource() {
        return RESOURCE;
    }
    match e {
        Error::NotERegular { .. }
        | Error::NoRoot(_)
        | Error::Parse(_)
        | Error::VersionMismatch { .. }
        | Error::Io(_)
        | Error::MissingAInvariant(_) => USAGE,
        _ => MATH_FAILURE,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn read_wgraph(arg: &str) -> Result<(String, WGraph), Error> {
    let text = match arg.strip_prefix("builtin:") {
        Some(name) => fixtures::wgraph_text(name).ok_or_else(|| usage(format!("no built-in W-graph {name}")))?.to_string(),
        None => fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?,
    };
    let g = parse_wgraph(&text)?;
    Ok((text, g))
}

fn solve(m: &GenMatrices, method: Method, plan: &ModularPlan) -> Result<GramMatrix, Error> {
    match method {
        Method::Direct => solve_gram_direct(m),
        Method::StandardBase => solve_gram_standard_base(m),
        Method::Modular => reconstruct_gram_modular(m, plan),
    }
}

/// Gram matrix for a W-graph, through the cache when one is configured.
fn gram_for(text: &str, m: &GenMatrices, method: Method, plan: &ModularPlan) -> Result<GramMatrix, Error> {
    let cache = GramCache::from_env();
    if let Some(q) = cache.as_ref().and_then(|c| c.load(m, text)) {
        return Ok(q);
    }
    let q = solve(m, method, plan)?;
    if let Some(c) = &cache {
        c.store(m, text, &q)?;
    }
    Ok(q)
}

fn gram_from_args(wgraph: &str, gram: Option<&Path>) -> Result<(GenMatrices, GramMatrix), Error> {
    let (text, g) = read_wgraph(wgraph)?;
    let m = build_generator_matrices(&g);
    let q = match gram {
        Some(p) => {
            let q = parse_gram(&fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?)?;
            if !q.verify_invariance(&m) {
                return Err(Error::VerificationFailed(format!("{} is not invariant for {}", p.display(), m.label)));
            }
            q
        }
        None => gram_for(&text, &m, Method::Direct, &ModularPlan::default())?,
    };
    Ok((m, q))
}

/// Loads every W-graph and the invariants table from a directory; Gram
/// matrices are solved or taken from the cache.
fn dataset_from_dir(weyl: &WeylType, dir: &Path) -> Result<Dataset, Error> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    let mut table = None;
    let mut graphs = Vec::new();
    for p in paths {
        let text = fs::read_to_string(&p)?;
        if text.contains(INVARIANTS_FORMAT) {
            table = Some(parse_invariants(&text)?);
        } else if text.contains(WGRAPH_FORMAT) {
            let g = parse_wgraph(&text)?;
            graphs.push((text, g));
        }
    }
    let (t, labels) = table.ok_or_else(|| usage(format!("{} has no invariants table", dir.display())))?;
    if &t != weyl || graphs.iter().any(|(_, g)| &g.weyl != weyl) {
        return Err(usage(format!("data in {} is not of type {weyl}", dir.display())));
    }
    // Keep the order of the invariants table.
    graphs.sort_by_key(|(_, g)| labels.iter().position(|l| l.name == g.label).unwrap_or(usize::MAX));
    let mut grams = Vec::new();
    for (text, g) in &graphs {
        let m = build_generator_matrices(g);
        grams.push(gram_for(text, &m, Method::Direct, &ModularPlan::default())?);
    }
    let wgraphs: Vec<WGraph> = graphs.into_iter().map(|(_, g)| g).collect();
    Dataset::from_parts(*weyl, &labels, &wgraphs, grams)
}

fn dataset(weyl: &str, data: Option<&Path>) -> Result<Dataset, Error> {
    let t: WeylType = weyl.parse()?;
    match data {
        Some(dir) => dataset_from_dir(&t, dir),
        None if t.to_string() == "G2" => Dataset::g2(),
        None => Err(usage(format!("no built-in dataset for {t}; pass --data DIR"))),
    }
}

fn pipeline(args: &PipelineArgs) -> Result<PipelineReport, Error> {
    let d = dataset(&args.weyl, args.data.as_deref())?;
    run_pipeline(&d, args.e, args.ell, &PipelineOptions { seed: args.seed, budget: DEFAULT_BUDGET })
}

/// `c` rewritten from `u` to `v = u^{1/2}`.
fn in_v(s: &SchurElement) -> String {
    LaurentPoly::from_terms(s.c.terms().map(|(e, c)| (2 * e, c.clone()))).to_string()
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::VerifyWgraph { wgraph } => {
            let (_, g) = read_wgraph(&wgraph)?;
            let m = build_generator_matrices(&g);
            match verify_representation(&m) {
                None => {
                    println!("ok: {} {} (dimension {})", g.weyl, g.label, g.dim());
                    Ok(OK)
                }
                Some(rel) => {
                    println!("failed: {} {}: {rel} does not hold", g.weyl, g.label);
                    Ok(MATH_FAILURE)
                }
            }
        }
        Command::Gram { wgraph, method, out, initial_points, max_points, max_primes } => {
            let (text, g) = read_wgraph(&wgraph)?;
            let m = build_generator_matrices(&g);
            let mut plan = ModularPlan::default();
            plan.initial_points = initial_points.unwrap_or(plan.initial_points);
            plan.max_points = max_points.unwrap_or(plan.max_points).max(plan.initial_points);
            plan.max_primes = max_primes.unwrap_or(plan.max_primes).max(plan.initial_primes);
            let q = gram_for(&text, &m, method, &plan)?;
            let det = det_factor_check(&q, &g.weyl);
            if !det.passed() {
                return Err(Error::VerificationFailed(format!("determinant of {} has an unexpected factor", q.label)));
            }
            match out {
                Some(p) => fs::write(&p, write_gram(&q)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => print!("{}", write_gram(&q)),
            }
            Ok(OK)
        }
        Command::Rank { wgraph, e, ell, gram } => {
            let (_, q) = gram_from_args(&wgraph, gram.as_deref())?;
            let z = rank_at_zeta(&q, e);
            println!("{} {}  dimension {}  e = {e}", q.weyl, q.label, q.dim());
            println!("rank at v = zeta_{}: {} (corank {})", 2 * e, z.rank, z.corank());
            if let Some(ell) = ell {
                let r = rank_at_modular(&q, e, ell)?;
                println!("rank over {}: {} (corank {})", r.target, r.rank, r.corank());
            }
            Ok(OK)
        }
        Command::Badprimes { wgraph, e, gram } => {
            let (_, q) = gram_from_args(&wgraph, gram.as_deref())?;
            let b = bad_prime_set(&q, e, &q.weyl)?;
            let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            println!("{} {}  e = {e}  rank at zeta {}", q.weyl, q.label, b.rank);
            println!("norm of pivot minor: {}", b.norm);
            println!("candidates: {{{}}}", list(&b.candidates));
            for (p, why) in &b.excluded {
                println!("excluded {p}: {why}");
            }
            println!("verified: {{{}}}", list(&b.verified));
            Ok(OK)
        }
        Command::Chop { wgraph, e, ell, seed } => {
            let (_, g) = read_wgraph(&wgraph)?;
            hecke_core::specrank::check_modular_target(&g.weyl, e, ell)?;
            let (f, theta) = modular_target(e, ell)?;
            let m = FModule::specialize(&build_generator_matrices(&g), &f, theta)?;
            let cs = chop(&m, seed, DEFAULT_BUDGET)?;
            println!("{} {} over GF({ell}^{}), v = {}", g.weyl, g.label, f.degree(), f.format_elem(theta));
            let mut parts: Vec<(usize, usize)> = cs.iter().map(|c| (c.dim, c.multiplicity)).collect();
            parts.sort();
            for (dim, mult) in parts {
                println!("  constituent of dimension {dim}, multiplicity {mult}");
            }
            Ok(OK)
        }
        Command::Blocks(args) => {
            let r = pipeline(&args)?;
            println!("type {}  e = {}  l = {}", r.weyl, r.e, r.ell);
            for (k, b) in r.blocks.blocks.iter().enumerate() {
                let defect = b.defect.map_or("?".to_string(), |d| d.to_string());
                println!("block {} (defect {defect})", k + 1);
                for l in &b.labels {
                    let row = &r.decomposition.rows[r.decomposition.row_of(l).unwrap()];
                    let dim = r.simples.iter().find(|s| &s.label == l).map_or("-".to_string(), |s| s.dim.to_string());
                    println!("  {l}  a = {}  dim L = {dim}", row.a.map_or("?".into(), |a| a.to_string()));
                }
            }
            Ok(OK)
        }
        Command::Schur { weyl, data } => {
            let d = dataset(&weyl, data.as_deref())?;
            let schur = match d.schur {
                Some(s) => s,
                None => schur_elements(&d.reps, &d.weyl)?,
            };
            for s in &schur {
                println!("{}  dim {}  a = {}  f = {}  c = {}", s.label, s.dim, s.a, s.f, in_v(s));
            }
            Ok(OK)
        }
        Command::James(args) => {
            let r = pipeline(&args)?;
            print!("{r}");
            Ok(if r.verdict() { OK } else { MATH_FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                Error::NotERegular { .. } => eprintln!("refused: {e}"),
                Error::NoReconstruction => {
                    eprintln!("error: {e}; raise --max-points or --max-primes")
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

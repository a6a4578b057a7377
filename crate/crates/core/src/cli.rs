//! The `polartwist build` command: construct a graph, run the selected
//! verifiers and write a JSON report plus optional exports.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 3 on a
//! budget or configuration error, 1 on I/O trouble.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphcore::report::{CheckRecord, Report};
use crate::graphcore::{
    charpoly_fingerprint, check_drg, check_srg, clique_census, default_primes, four_vertex_condition, gm_validate, maximal_cliques,
    to_edgelist, to_graph6, DenseGraph, Mode, ValidationReport, Verdict,
};
use crate::grassmann::{grassmann_graph, twisted_grassmann_switch, twisted_grassmann_vertexswap};
use crate::twist_d5::{
    build_gamma, build_gamma_prime, classify_gamma_census, classify_gamma_prime_census, expected_parameters, sample_fact_one, D5Context,
    PairCase,
};
use crate::twist_d6::{build_gamma6, build_partition, half_witness_check, non_drg_certificate, validate_and_switch, D6Context};

pub const CACHE_ENV: &str = "POLARTWIST_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "polartwist", version, about = "Twisted graphs from hyperbolic polar spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and verify it.
    Build(BuildArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    D55,
    D55Twist,
    D66,
    D66Twist,
    Grassmann,
    GrassmannTwistSwap,
    GrassmannTwistSwitch,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Srg,
    Drg,
    Gm,
    Fact1,
    Cliques,
    #[value(name = "4vc")]
    FourVc,
    Cospectral,
    D2cert,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Sampled,
}

#[derive(Args, Debug, Clone)]
pub struct BuildArgs {
    pub construction: Construction,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Ambient dimension (grassmann only).
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace dimension for grassmann; `k` of `J_q(2k+1, k+1)` for the twists.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub verify: Vec<Check>,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    /// Required with `--mode sampled`; also seeds fact1.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub g6: Option<PathBuf>,
    #[arg(long)]
    pub edges: Option<PathBuf>,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Include wall-clock timings (makes the report differ between runs).
    #[arg(long)]
    pub timings: bool,
}

impl BuildArgs {
    pub fn mode(&self) -> Result<Mode> {
        match self.mode {
            ModeArg::Full => Ok(Mode::Full),
            ModeArg::Sampled => {
                let seed = self.seed.ok_or_else(|| Error::InvalidConfig("--mode sampled needs --seed".into()))?;
                Ok(Mode::Sampled { seed, count: self.samples })
            }
        }
    }
}

/// What was built, kept around for checks that need more than the graph.
enum Built {
    D55(D5Context),
    /// with `Γ` when a check needs it
    D55Twist(D5Context, Option<DenseGraph>),
    D66,
    D66Twist { ctx: D6Context, part: crate::twist_d6::D6Partition, validation: ValidationReport, switched: bool },
    Grassmann,
    TwistSwap { base: DenseGraph },
    TwistSwitch { base: DenseGraph, validation: ValidationReport },
}

struct Run {
    report: Report,
    timings: BTreeMap<String, f64>,
    clock: Instant,
}

impl Run {
    fn lap(&mut self, what: &str) {
        self.timings.insert(what.into(), self.clock.elapsed().as_secs_f64());
        self.clock = Instant::now();
    }

    fn check(&mut self, name: &str, mode: Mode, pass: bool, details: Value) {
        log::info!("{name}: {}", if pass { "pass" } else { "FAIL" });
        self.report.checks.push(CheckRecord::new(name, mode, pass, details));
    }
}

fn unsupported(check: Check, c: Construction) -> Error {
    Error::InvalidConfig(format!("check {check:?} is not available for {c:?}"))
}

fn twist_k(args: &BuildArgs) -> Result<usize> {
    let k = args.k.ok_or_else(|| Error::InvalidConfig("--k is required".into()))?;
    if let Some(n) = args.n {
        if n != 2 * k + 1 {
            return Err(Error::InvalidConfig(format!("twisted grassmann graphs need n = 2k+1, got n={n}, k={k}")));
        }
    }
    Ok(k)
}

fn build(args: &BuildArgs, run: &mut Run) -> Result<(DenseGraph, Built)> {
    let q = args.q;
    let cache = args.cache_dir.as_deref();
    let params = &mut run.report.parameters;
    let out = match args.construction {
        Construction::D55 => {
            let ctx = D5Context::with_cache(q, cache)?;
            (build_gamma(&ctx), Built::D55(ctx))
        }
        Construction::D55Twist => {
            let ctx = D5Context::with_cache(q, cache)?;
            let gp = build_gamma_prime(&ctx);
            params.insert("lines".into(), json!(ctx.lines().len()));
            params.insert("switching_set".into(), json!(ctx.d().len()));
            let gamma = args.verify.iter().any(|c| matches!(c, Check::Fact1 | Check::Cospectral)).then(|| build_gamma(&ctx));
            (gp, Built::D55Twist(ctx, gamma))
        }
        Construction::D66 => {
            let ctx = D6Context::with_cache(q, cache)?;
            (build_gamma6(&ctx), Built::D66)
        }
        Construction::D66Twist => {
            let ctx = D6Context::with_cache(q, cache)?;
            let mut g = build_gamma6(&ctx);
            let part = build_partition(&ctx)?;
            params.insert("point_cells".into(), json!(part.point_cells()));
            params.insert("plane_cells".into(), json!(part.plane_cells()));
            params.insert("self_polar_planes".into(), json!(part.self_polar_planes()));
            params.insert("switching_set".into(), json!(part.partition.switching_set.len()));
            let validation = gm_validate(&g, &part.partition)?;
            let switched = validation.passed();
            if switched {
                validate_and_switch(&part, &mut g)?;
            } else {
                log::warn!("switching partition fails validation; keeping the unswitched graph");
            }
            params.insert("switched".into(), json!(switched));
            (g, Built::D66Twist { ctx, part, validation, switched })
        }
        Construction::Grassmann => {
            let (n, k) = match (args.n, args.k) {
                (Some(n), Some(k)) => (n, k),
                _ => return Err(Error::InvalidConfig("grassmann needs --n and --k".into())),
            };
            params.insert("n".into(), json!(n));
            params.insert("k".into(), json!(k));
            (grassmann_graph(q, n, k)?.graph, Built::Grassmann)
        }
        Construction::GrassmannTwistSwap => {
            let k = twist_k(args)?;
            params.insert("k".into(), json!(k));
            let g = twisted_grassmann_vertexswap(q, k)?.graph;
            let base = grassmann_graph(q, 2 * k + 1, k + 1)?.graph;
            (g, Built::TwistSwap { base })
        }
        Construction::GrassmannTwistSwitch => {
            let k = twist_k(args)?;
            params.insert("k".into(), json!(k));
            let s = twisted_grassmann_switch(q, k)?;
            (s.switched, Built::TwistSwitch { base: s.base.graph, validation: s.report })
        }
    };
    run.report.parameters.insert("vertices".into(), json!(out.0.order()));
    run.lap("build");
    Ok(out)
}

fn validation_details(v: &ValidationReport) -> Value {
    json!({
        "cells": v.cells,
        "switching_set": v.switching_set,
        "violations": v.violations.len(),
        "first_violation": v.violations.first(),
        "half_pairs": v.half_pairs.len(),
    })
}

fn verdict_details<T: serde::Serialize>(v: &Verdict<T>) -> Value {
    match v {
        Verdict::Holds(t) => json!({ "holds": true, "value": t }),
        Verdict::Fails(c) => json!({ "holds": false, "counterexample": c }),
    }
}

fn run_check(args: &BuildArgs, check: Check, g: &DenseGraph, built: &Built, mode: Mode, run: &mut Run) -> Result<()> {
    let c = args.construction;
    let q = args.q;
    match check {
        Check::Srg => {
            let v = check_srg(g, mode);
            let expected = matches!(built, Built::D55(_) | Built::D55Twist(..)).then(|| expected_parameters(q));
            let pass = match (&v, expected) {
                (Verdict::Holds(p), Some(e)) => *p == e,
                (Verdict::Holds(_), None) => true,
                _ => false,
            };
            let mut d = verdict_details(&v);
            d["expected"] = json!(expected);
            run.check("srg", mode, pass, d);
        }
        Check::Drg => {
            let v = check_drg(g, mode)?;
            run.check("drg", mode, v.holds(), verdict_details(&v));
        }
        Check::Gm => match built {
            Built::TwistSwitch { validation, .. } | Built::D66Twist { validation, .. } => {
                let mut d = validation_details(validation);
                if let Built::D66Twist { ctx, part, .. } = built {
                    // the half-neighbor property is read off the unswitched graph
                    let gamma = build_gamma6(ctx);
                    d["half_witness"] = json!(half_witness_check(ctx, part, &gamma, validation));
                    d["note"] = json!("cospectrality follows from the validated switching conditions; the spectrum itself is not computed");
                }
                run.check("gm", Mode::Full, validation.passed(), d);
            }
            _ => return Err(unsupported(check, c)),
        },
        Check::Fact1 => {
            let Built::D55Twist(ctx, gamma) = built else { return Err(unsupported(check, c)) };
            let seed = args.seed.unwrap_or(0);
            let fmode = Mode::Sampled { seed, count: args.samples };
            let mut cases = Vec::new();
            let mut pass = true;
            for case in PairCase::ALL {
                let s = sample_fact_one(ctx, g, gamma.as_ref(), case, args.samples, seed)?;
                pass &= s.mismatches == 0 && s.claim_failures == 0;
                cases.push(s);
            }
            run.check("fact1", fmode, pass, json!(cases));
        }
        Check::Cliques => {
            let (pass, d) = match built {
                Built::D55Twist(ctx, _) => {
                    let r = classify_gamma_prime_census(ctx, g)?;
                    (r.passed(), json!(r))
                }
                Built::D55(ctx) => {
                    let r = classify_gamma_census(ctx, g)?;
                    (r.passed(), json!(r))
                }
                Built::Grassmann | Built::TwistSwap { .. } | Built::TwistSwitch { .. } => {
                    (true, json!({ "by_size": clique_census(&maximal_cliques(g)) }))
                }
                _ => return Err(unsupported(check, c)),
            };
            run.check("cliques", Mode::Full, pass, d);
        }
        Check::FourVc => {
            let v = four_vertex_condition(g, mode);
            // for the twisted D5 graph the condition holds exactly when q = 2
            let want = !matches!(built, Built::D55Twist(..)) || q == 2;
            let mut d = verdict_details(&v);
            d["expected_holds"] = json!(want);
            run.check("4vc", mode, v.holds() == want, d);
        }
        Check::Cospectral => {
            let base = match built {
                Built::TwistSwap { base } | Built::TwistSwitch { base, .. } => base.clone(),
                Built::D55Twist(_, Some(gamma)) => gamma.clone(),
                _ => return Err(unsupported(check, c)),
            };
            let primes = default_primes(3);
            let a = charpoly_fingerprint(g, &primes)?;
            let b = charpoly_fingerprint(&base, &primes)?;
            run.check("cospectral", Mode::Full, a.matches(&b), json!({ "primes": primes, "collision_bound": a.collision_bound() }));
        }
        Check::D2cert => {
            let Built::D66Twist { ctx, part, switched, .. } = built else { return Err(unsupported(check, c)) };
            if !*switched {
                run.check("d2cert", Mode::Full, false, json!({ "reason": "no switched graph: the partition fails validation" }));
            } else {
                match non_drg_certificate(ctx, part, g) {
                    Ok(cert) => run.check("d2cert", Mode::Full, cert.is_valid(), json!(cert)),
                    Err(Error::NotFound(s)) => run.check("d2cert", Mode::Full, false, json!({ "reason": s })),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    run.lap(&format!("check {check:?}").to_lowercase());
    Ok(())
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Builds, verifies and exports. The report is returned rather than written.
pub fn run(args: &BuildArgs) -> Result<Report> {
    let mode = args.mode()?;
    let name = args.construction.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut run = Run { report: Report::new(name, args.q), timings: BTreeMap::new(), clock: Instant::now() };
    let (g, built) = build(args, &mut run)?;

    let mut checks = args.verify.clone();
    checks.sort();
    checks.dedup();
    if matches!(built, Built::D66Twist { .. }) && !checks.contains(&Check::Gm) {
        checks.insert(0, Check::Gm);
    }
    for check in checks {
        run_check(args, check, &g, &built, mode, &mut run)?;
    }

    let exportable = !matches!(built, Built::D66Twist { switched: false, .. });
    if !exportable && (args.g6.is_some() || args.edges.is_some()) {
        log::warn!("no switched graph to export");
    }
    if let Some(p) = args.g6.as_ref().filter(|_| exportable) {
        write_file(p, |w| Ok(w.write_all(&to_graph6(&g, false)?)?))?;
    }
    if let Some(p) = args.edges.as_ref().filter(|_| exportable) {
        write_file(p, |w| to_edgelist(&g, w))?;
    }
    if args.timings {
        run.lap("export");
        run.report.timings = Some(run.timings);
    }
    Ok(run.report)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ValidationFailed(_) => 2,
        Error::Io(_) => 1,
        _ => 3,
    }
}

fn error_kind(e: &Error) -> String {
    format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let Command::Build(args) = cli.command;
    if let Some(w) = args.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            log::warn!("worker count ignored: {e}");
        }
    }
    let (body, code) = match run(&args) {
        Ok(r) => {
            let code = if r.all_passed() { 0 } else { 2 };
            (r.to_json(), code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let obj = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            (format!("{}\n", serde_json::to_string_pretty(&obj).expect("json")), exit_code(&e))
        }
    };
    let written = match &args.report {
        Some(p) => std::fs::write(p, &body).map_err(Error::from),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    code
}

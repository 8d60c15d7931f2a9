//! `looppres`: presentations and homotopy data of loop spaces of
//! moment-angle complexes over flag complexes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use looppres::exactlin::bigint_serde;
use looppres::homotopy::{self, DEFAULT_CUTOFF};
use looppres::pcalg::PcAlgebra;
use looppres::presentation::{build_presentation, verify_presentation, Grading, VerificationReport};
use looppres::torbar::{bar_cycle, koszul_homology, verify_bar_cycle};
use looppres::{CoefficientRing, Error, ModuleInvariants, SimplicialComplex, VertexSet};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_FLAG: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "looppres", version, about = "Loop homology presentations for flag complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CommandKind {
    Analyze,
    Presentation,
    Homotopy,
    Verify,
    Hilbert,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Flagness, f/h-vectors and homology of full subcomplexes.
    Analyze(Options),
    /// GPTW generators and relations.
    Presentation(Options),
    /// Sphere multiplicities, Poincaré series and rational homotopy ranks.
    Homotopy(Options),
    /// Runs every consistency check; exits 0 iff all pass.
    Verify(Options),
    /// Dimensions of k[K]^! against the Hilbert series.
    Hilbert(Options),
}

#[derive(clap::Args, Debug, Clone)]
struct Options {
    /// JSON file `{"m": int, "facets": [[…], …]}`.
    file: PathBuf,
    /// Coefficient ring: Z, Q or F<p>.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, value_enum, default_value_t = GradingArg::Multi)]
    grading: GradingArg,
    /// Truncation degree (default 16 for homotopy, 8 for hilbert).
    #[arg(long, value_parser = parse_trunc)]
    trunc: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Replace the input by the clique complex of its 1-skeleton.
    #[arg(long)]
    skeleton_clique: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum GradingArg {
    Multi,
    Z,
}

impl From<GradingArg> for Grading {
    fn from(g: GradingArg) -> Self {
        match g {
            GradingArg::Multi => Grading::Multi,
            GradingArg::Z => Grading::Z,
        }
    }
}

enum Failure {
    Parse(String),
    NotFlag(VertexSet),
    Other(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFlag { witness } => Failure::NotFlag(witness),
            Error::InvalidComplex(msg) => Failure::Parse(msg),
            Error::VertexOutOfRange { .. } | Error::NotPrime(_) => Failure::Parse(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn parse_trunc(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, opts) = match cli.command {
        Command::Analyze(o) => (CommandKind::Analyze, o),
        Command::Presentation(o) => (CommandKind::Presentation, o),
        Command::Homotopy(o) => (CommandKind::Homotopy, o),
        Command::Verify(o) => (CommandKind::Verify, o),
        Command::Hilbert(o) => (CommandKind::Hilbert, o),
    };
    if let Some(jobs) = opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(kind, &opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::NotFlag(witness)) => {
            eprintln!("error: complex is not flag; missing face {witness} has all edges present");
            ExitCode::from(EXIT_NOT_FLAG)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Checks) => ExitCode::from(EXIT_FAILURE),
    }
}

fn load(opts: &Options) -> std::result::Result<SimplicialComplex, Failure> {
    let text = std::fs::read_to_string(&opts.file)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", opts.file.display())))?;
    let k = SimplicialComplex::from_json(&text)?;
    Ok(if opts.skeleton_clique {
        k.clique_complex_of_skeleton()
    } else {
        k
    })
}

fn ring(opts: &Options) -> std::result::Result<CoefficientRing, Failure> {
    opts.ring.parse().map_err(|e: Error| Failure::Parse(e.to_string()))
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("plain data"));
}

fn run(kind: CommandKind, opts: &Options) -> Outcome {
    let ring = ring(opts)?;
    let k = load(opts)?;
    match kind {
        CommandKind::Analyze => analyze(&k, ring, opts),
        CommandKind::Presentation => {
            k.require_flag()?;
            let p = build_presentation(&k, ring, opts.grading.into())?;
            if opts.json {
                emit(&p.to_record());
            } else {
                print!("{p}");
            }
            Ok(())
        }
        CommandKind::Homotopy => {
            let report = homotopy::multiplicity_report(&k, opts.trunc.unwrap_or(DEFAULT_CUTOFF))?;
            if opts.json {
                emit(&report);
            } else {
                print_homotopy(&report);
            }
            Ok(())
        }
        CommandKind::Verify => verify(&k, ring, opts),
        CommandKind::Hilbert => hilbert(&k, ring, opts),
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct SubcomplexRow {
    #[serde(rename = "J")]
    j: VertexSet,
    b0: usize,
    h1: ModuleInvariants,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct AnalyzeReport {
    m: u32,
    flag: bool,
    witness: Option<VertexSet>,
    f: Vec<u64>,
    #[serde(with = "bigint_serde::vec")]
    h: Vec<BigInt>,
    subcomplexes: Vec<SubcomplexRow>,
}

fn analyze(k: &SimplicialComplex, ring: CoefficientRing, opts: &Options) -> Outcome {
    if let Some(w) = k.flag_witness() {
        return Err(Failure::NotFlag(w));
    }
    let fh = k.f_h_vectors();
    let mut subsets: Vec<VertexSet> = k.ground().subsets().collect();
    subsets.sort();
    let mut rows = Vec::new();
    for j in subsets {
        let b0 = k.reduced_b0(j);
        let h1 = if j.len() >= 4 {
            k.reduced_homology(j, ring, 2)?.invariants
        } else {
            ModuleInvariants::free(0)
        };
        if b0 > 0 || !h1.is_zero() {
            rows.push(SubcomplexRow { j, b0, h1 });
        }
    }
    let report = AnalyzeReport {
        m: k.m(),
        flag: true,
        witness: None,
        f: fh.f,
        h: fh.h,
        subcomplexes: rows,
    };
    if opts.json {
        emit(&report);
        return Ok(());
    }
    println!("m: {}", report.m);
    println!("flag: true");
    println!("f: {}", join(&report.f));
    println!("h: {}", join(&report.h));
    println!("full subcomplexes with b0 > 0 or H1 != 0 (ring {ring}):");
    for row in &report.subcomplexes {
        println!("  J={:<16} b0={}  H1={}", row.j.to_string(), row.b0, render_module(&row.h1, ring));
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn render_module(m: &ModuleInvariants, ring: CoefficientRing) -> String {
    let mut parts: Vec<String> = m.torsion.iter().map(|d| format!("{ring}/{d}")).collect();
    if m.rank > 0 {
        parts.push(if m.rank == 1 { ring.to_string() } else { format!("{ring}^{}", m.rank) });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_homotopy(r: &homotopy::MultiplicityReport) {
    println!("P(t) = {}", join(&r.p));
    println!("loop space splits as a product of ΩS^n with multiplicities:");
    for (n, e) in r.spheres() {
        println!("  D_{n} = {e}");
    }
    println!("Poincaré series of H_*(ΩZ_K): {}", join(&r.poincare));
    println!("rational homotopy ranks of Z_K:");
    for (n, rank) in &r.rational_ranks {
        println!("  π_{n} ⊗ Q: {rank}");
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct VerifyReport {
    presentation: VerificationReport,
    euler_identity: bool,
    tor_strands_checked: usize,
    tor_mismatches: Vec<String>,
    bar_cycles_checked: usize,
    bar_cycles_closed: usize,
    passed: bool,
}

fn verify(k: &SimplicialComplex, ring: CoefficientRing, opts: &Options) -> Outcome {
    k.require_flag()?;
    let p = build_presentation(k, ring, opts.grading.into())?;
    let presentation = verify_presentation(k, &p)?;
    let euler_identity = homotopy::euler_identity_check(k)?.equal;

    let mut tor_strands_checked = 0;
    let mut tor_mismatches = Vec::new();
    let algebra = PcAlgebra::new(k, ring)?;
    let mut bar_cycles_checked = 0;
    let mut bar_cycles_closed = 0;
    for j in k.ground().subsets() {
        for n in 0..=k.dimension_plus_one().min(j.len()) {
            tor_strands_checked += 1;
            let koszul = koszul_homology(k, j, n as u32, ring)?;
            let simplicial = k.reduced_homology(j, ring, n)?;
            if koszul != simplicial.invariants {
                tor_mismatches.push(format!("J={j}, n={n}"));
            }
            if (1..=3).contains(&n) {
                for cycle in &simplicial.cycles {
                    bar_cycles_checked += 1;
                    if verify_bar_cycle(&bar_cycle(&algebra, k, cycle)?) {
                        bar_cycles_closed += 1;
                    }
                }
            }
        }
    }
    let passed = presentation.all_passed()
        && euler_identity
        && tor_mismatches.is_empty()
        && bar_cycles_checked == bar_cycles_closed;
    let report = VerifyReport {
        presentation,
        euler_identity,
        tor_strands_checked,
        tor_mismatches,
        bar_cycles_checked,
        bar_cycles_closed,
        passed,
    };
    if opts.json {
        emit(&report);
    } else {
        let pr = &report.presentation;
        println!("generators: {}/{} equal their defining commutators", pr.generators_ok, pr.generators_checked);
        println!("rewrites: {}/{} evaluate correctly", pr.rewrites_ok, pr.rewrites_checked);
        println!("relations: {}/{} vanish in k[K]!", pr.relations_vanishing, pr.relations_checked);
        println!("counts: {}", if pr.counts_ok { "minimal" } else { "MISMATCH" });
        println!("euler identity: {}", if euler_identity { "holds" } else { "FAILS" });
        println!(
            "tor strands: {}/{} agree with reduced homology",
            report.tor_strands_checked - report.tor_mismatches.len(),
            report.tor_strands_checked
        );
        println!("bar cycles: {}/{} closed", report.bar_cycles_closed, report.bar_cycles_checked);
        for f in &pr.failures {
            println!("failure: {f}");
        }
        for f in &report.tor_mismatches {
            println!("failure: tor strand {f}");
        }
        println!("{}", if report.passed { "all checks passed" } else { "CHECKS FAILED" });
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct HilbertReport {
    dimensions: Vec<u64>,
    #[serde(with = "bigint_serde::vec")]
    hilbert_series: Vec<BigInt>,
    #[serde(with = "bigint_serde::vec")]
    loop_poincare: Vec<BigInt>,
    consistent: bool,
}

fn hilbert(k: &SimplicialComplex, ring: CoefficientRing, opts: &Options) -> Outcome {
    let n = opts.trunc.unwrap_or(8);
    let algebra = PcAlgebra::new(k, ring)?;
    let dimensions = algebra.graded_dimensions(n);
    let hilbert_series = homotopy::hilbert_series(k, n)?;
    let loop_poincare = homotopy::loop_poincare_series(k, n)?;
    let consistent = dimensions.iter().map(|&d| BigInt::from(d)).eq(hilbert_series.iter().cloned());
    let report = HilbertReport {
        dimensions,
        hilbert_series,
        loop_poincare,
        consistent,
    };
    if opts.json {
        emit(&report);
    } else {
        println!("{:>4} {:>14} {:>14} {:>14}", "deg", "dim k[K]!", "series", "H_*(ΩZ_K)");
        for d in 0..=n {
            println!(
                "{:>4} {:>14} {:>14} {:>14}",
                d, report.dimensions[d], report.hilbert_series[d], report.loop_poincare[d]
            );
        }
        println!("{}", if consistent { "consistent" } else { "INCONSISTENT" });
    }
    if consistent {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

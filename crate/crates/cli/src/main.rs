use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lrcmat::construct::{
    dmax_decide, graph_parameters, graph_set_system, ConstructionParams, DmaxVerdict, SetSystem,
};
use lrcmat::gammoid::{build_graph, equivalence_check};
use lrcmat::gfrep::{find_representation, matrix_to_csv, min_field_scan, DEFAULT_ATTEMPTS};
use lrcmat::io::{self, LatticeJson, MatroidInput};
use lrcmat::lrc;
use lrcmat::matroid::{validate_rank_axioms, AXIOM_CHECK_MAX_N};
use lrcmat::zlattice::CyclicFlatLattice;
use lrcmat::Matroid;

/// Matroids of locally repairable codes: parameters, constructions,
/// existence decisions, gammoids and representations over GF(p).
#[derive(Parser)]
#[command(name = "lrcmat", version)]
struct Cli {
    /// seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// (n,k,d) of a matroid, and the least r for a given delta
    Params {
        /// lattice, set system, matrix or {"uniform":{..}} JSON file, or inline JSON
        input: String,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a matroid and write its lattice of cyclic flats
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// recompute the parameters and cross-check the backings
        #[arg(long, global = true)]
        verify: bool,
        /// write the lattice here instead of stdout
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// also write a DOT drawing of the input graph (graph only)
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
    /// Whether some matroid meets the Singleton-like bound for (n,k,r,delta)
    Decide {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: usize,
    },
    /// Layered gammoid graph of a set system, as DOT
    Gammoid {
        system: String,
        /// write the DOT here instead of stdout
        #[arg(long)]
        dot: Option<PathBuf>,
        /// random subsets compared when n is too large for all of them
        #[arg(long, default_value_t = 4000)]
        samples: usize,
    },
    /// Search for a matrix over GF(p) with the same rank function
    Represent {
        input: String,
        #[arg(long, default_value_t = 8191)]
        prime: u32,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: usize,
        /// comma separated primes to try in turn; prints a table instead
        #[arg(long, value_delimiter = ',')]
        scan: Option<Vec<u32>>,
        #[arg(long)]
        csv: bool,
    },
    /// Check a description against the axioms it must satisfy
    Verify { input: String },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// from a set system JSON file
    General { system: String },
    /// from a weighted graph JSON file
    Graph {
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: usize,
    },
    /// the witness matroid chosen by `decide`
    DmaxWitness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: usize,
    },
}

/// A failed check that is not a library error, such as `--verify` finding
/// a mismatch.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Invalid>().is_some() {
        return 2;
    }
    match e.downcast_ref::<lrcmat::Error>() {
        Some(err) if err.is_capacity() => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// A path to a file, or JSON given inline when it starts with `{`.
fn read_input(arg: &str) -> anyhow::Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_matroid(arg: &str) -> anyhow::Result<Matroid> {
    let input = io::parse_matroid_input(&read_input(arg)?)?;
    Ok(input.into_matroid()?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Params { input, delta, json } => cmd_params(&input, delta, json),
        Cmd::Construct { kind, verify, out, dot } => cmd_construct(kind, verify, out.as_deref(), dot.as_deref()),
        Cmd::Decide { n, k, r, delta } => {
            let v = dmax_decide(n, k, r, delta)?;
            println!("{}", serde_json::to_string_pretty(&verdict_json(&v))?);
            Ok(())
        }
        Cmd::Gammoid { system, dot, samples } => cmd_gammoid(&system, dot.as_deref(), samples, cli.seed),
        Cmd::Represent { input, prime, attempts, scan, csv } => {
            cmd_represent(&input, prime, attempts, scan, csv, cli.seed)
        }
        Cmd::Verify { input } => cmd_verify(&input),
    }
}

fn cmd_params(input: &str, delta: Option<usize>, as_json: bool) -> anyhow::Result<()> {
    let m = load_matroid(input)?;
    let p = lrc::params(&m, delta)?;
    if as_json {
        let v = json!({ "n": p.n, "k": p.k, "d": p.d, "r": p.r, "delta": p.delta });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(());
    }
    match (delta, p.r) {
        (None, _) => println!("(n,k,d) = ({},{},{})", p.n, p.k, p.d),
        (Some(dl), Some(r)) => println!("(n,k,d,r,δ) = ({},{},{},{},{})", p.n, p.k, p.d, r, dl),
        (Some(dl), None) => println!("(n,k,d) = ({},{},{}); no r gives locality with δ = {dl}", p.n, p.k, p.d),
    }
    Ok(())
}

fn declared_json(p: &ConstructionParams) -> Value {
    json!({ "n": p.n, "k": p.k, "d": p.d, "r": p.r, "delta": p.delta })
}

fn lattice_with_declared(z: &CyclicFlatLattice, p: &ConstructionParams) -> anyhow::Result<String> {
    let mut v = serde_json::to_value(LatticeJson::from_lattice(z))?;
    v["declared"] = declared_json(p);
    Ok(serde_json::to_string_pretty(&v)?)
}

fn cmd_construct(kind: ConstructKind, verify: bool, out: Option<&Path>, dot: Option<&Path>) -> anyhow::Result<()> {
    let (z, declared, sys) = match kind {
        ConstructKind::General { system } => {
            let sys = io::set_system_from_json(&read_input(&system)?)?;
            let z = sys.construction_lattice()?;
            let p = sys.predicted_parameters()?;
            (z, p, Some(sys))
        }
        ConstructKind::Graph { graph, k, r, delta } => {
            let g = io::graph_from_json(&read_input(&graph)?)?;
            let sys = graph_set_system(&g, k, r, delta)?;
            let p = graph_parameters(&g, k, r, delta)?;
            if let Some(path) = dot {
                fs::write(path, g.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            }
            (sys.construction_lattice()?, p, Some(sys))
        }
        ConstructKind::DmaxWitness { n, k, r, delta } => {
            let v = dmax_decide(n, k, r, delta)?;
            let p = ConstructionParams { n, k, d: v.witness_d, r, delta };
            (v.witness.cyclic_flats()?, p, None)
        }
    };
    if verify {
        verify_construction(&z, &declared, sys.as_ref())?;
        eprintln!("verified: lattice axioms, parameters (n,k,d,r,δ) = {}", tuple(&declared));
    }
    write_or_print(out, &lattice_with_declared(&z, &declared)?)
}

fn tuple(p: &ConstructionParams) -> String {
    format!("({},{},{},{},{})", p.n, p.k, p.d, p.r, p.delta)
}

fn verify_construction(z: &CyclicFlatLattice, declared: &ConstructionParams, sys: Option<&SetSystem>) -> anyhow::Result<()> {
    let report = z.validate();
    if !report.is_valid() {
        return Err(Invalid(format!("constructed lattice is invalid: {report}")).into());
    }
    let m = MatroidInput::Lattice(z.clone()).into_matroid()?;
    let measured = lrc::params(&m, Some(declared.delta))?;
    let got = (measured.n, measured.k, measured.d, measured.r);
    let want = (declared.n, declared.k, declared.d, Some(declared.r));
    if got != want {
        return Err(Invalid(format!("measured {got:?} differs from declared {want:?}")).into());
    }
    if m.n() <= AXIOM_CHECK_MAX_N {
        let rep = validate_rank_axioms(&m)?;
        if !rep.is_valid() {
            return Err(Invalid(format!("rank axioms fail: {rep}")).into());
        }
    }
    if let Some(sys) = sys {
        let rep = equivalence_check(sys, 4000, 0)?;
        if let Some(x) = rep.mismatch {
            return Err(Invalid(format!("gammoid rank differs on {:?}", x.elements())).into());
        }
    }
    Ok(())
}

fn verdict_json(v: &DmaxVerdict) -> Value {
    let p = &v.params;
    json!({
        "n": p.n, "k": p.k, "r": p.r, "delta": p.delta,
        "h": p.h, "a": p.a, "blocks": p.blocks, "b": p.b,
        "case": v.case.as_str(),
        "perfect": v.perfect(),
        "bound": v.bound,
        "d_upper": v.d_upper,
        "d_lower": v.d_lower,
        "lower_source": v.lower_source.as_str(),
        "witness_d": v.witness_d,
    })
}

fn cmd_gammoid(system: &str, dot: Option<&Path>, samples: usize, seed: u64) -> anyhow::Result<()> {
    let sys = io::set_system_from_json(&read_input(system)?)?;
    let g = build_graph(&sys)?;
    let rep = equivalence_check(&sys, samples, seed)?;
    let summary = format!(
        "// middle vertices {}, arcs {}, equivalence {} ({} subsets{})",
        g.middle().len(),
        g.arc_count(),
        rep.agrees(),
        rep.subsets_checked,
        if rep.exhaustive { ", all" } else { ", sampled" }
    );
    write_or_print(dot, &format!("{summary}\n{}", g.to_dot()))?;
    if dot.is_some() {
        println!("{}", &summary[3..]);
    }
    if let Some(x) = rep.mismatch {
        return Err(Invalid(format!("gammoid rank differs on {:?}", x.elements())).into());
    }
    Ok(())
}

fn cmd_represent(
    input: &str,
    prime: u32,
    attempts: usize,
    scan: Option<Vec<u32>>,
    csv: bool,
    seed: u64,
) -> anyhow::Result<()> {
    let m = load_matroid(input)?;
    if let Some(primes) = scan {
        for e in min_field_scan(&m, &primes, seed, attempts)? {
            println!("p = {:>6}  found = {:<5}  attempts = {}", e.prime, e.found, e.attempts);
        }
        return Ok(());
    }
    let res = find_representation(&m, prime, seed, attempts)?;
    let Some(a) = res.matrix else {
        bail!("no representation over GF({prime}) in {attempts} attempts (seed {seed}, {} sampler)", res.sampler);
    };
    eprintln!("found over GF({prime}) after {} attempts ({} sampler)", res.attempts, res.sampler);
    if csv {
        print!("{}", matrix_to_csv(&a));
    } else {
        println!("{}", io::matrix_to_json(&a));
    }
    Ok(())
}

fn cmd_verify(input: &str) -> anyhow::Result<()> {
    let text = read_input(input)?;
    match io::parse_matroid_input(&text)? {
        MatroidInput::Lattice(z) => {
            let report = z.validate();
            if !report.is_valid() {
                return Err(Invalid(format!("lattice axioms violated: {report}")).into());
            }
            println!("lattice: {} members, axioms hold", z.len());
            let m = MatroidInput::Lattice(z).into_matroid()?;
            check_rank_axioms(&m)?;
        }
        MatroidInput::SetSystem(sys) => {
            sys.check_conditions()?;
            println!("set system: {} flats, construction conditions hold", sys.m());
            let z = sys.construction_lattice()?;
            let report = z.validate();
            if !report.is_valid() {
                return Err(Invalid(format!("construction lattice is invalid: {report}")).into());
            }
            let rep = equivalence_check(&sys, 4000, 0)?;
            if let Some(x) = rep.mismatch {
                return Err(Invalid(format!("gammoid rank differs on {:?}", x.elements())).into());
            }
            println!("gammoid agrees on {} subsets", rep.subsets_checked);
        }
        other => {
            let m = other.into_matroid()?;
            check_rank_axioms(&m)?;
        }
    }
    Ok(())
}

fn check_rank_axioms(m: &Matroid) -> anyhow::Result<()> {
    if m.n() > AXIOM_CHECK_MAX_N {
        println!("rank axioms: skipped, n = {} > {AXIOM_CHECK_MAX_N}", m.n());
        return Ok(());
    }
    let rep = validate_rank_axioms(m)?;
    if !rep.is_valid() {
        return Err(Invalid(format!("rank axioms fail: {rep}")).into());
    }
    println!("rank axioms hold on all 2^{} subsets", m.n());
    Ok(())
}

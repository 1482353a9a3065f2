//! `backdoor`: classify, solve, detect weak backdoor sets, build reduction
//! instances, generate random formulas and benchmark the detectors.
//!
//! Exit codes: 0 when the answer is positive (backdoor found, formula
//! satisfiable), 1 when it is negative, 2 on errors and timeouts.

mod bench;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use backdoor_core::classes::{membership, solve_in_class, Membership};
use backdoor_core::dimacs::{parse_dimacs, write_dimacs};
use backdoor_core::generate::{disjoint_c2, mixed_horn, negative_pairs, random_formula, GenSpec};
use backdoor_core::hitting_set::parse_hs;
use backdoor_core::reductions::{hs_to_match, parse_edge_graph, sat_to_chains, vc_to_zeroval, ReductionOutput};
use backdoor_core::search::{detect, verify_witness};
use backdoor_core::{Algorithm, BaseClassId, CnfFormula, Error, SearchOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "backdoor", version, about = "Weak backdoor set detection for CNF formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Membership of the formula in every base class.
    Classify {
        /// DIMACS CNF file, `-` for stdin.
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve a formula that belongs to the given class.
    Solve {
        file: PathBuf,
        #[arg(long)]
        class: BaseClassId,
        #[arg(long)]
        json: bool,
    },
    /// Look for a weak backdoor set of size at most k.
    Detect {
        file: PathBuf,
        #[arg(long)]
        class: BaseClassId,
        #[arg(short = 'k', default_value_t = 0)]
        k: usize,
        #[arg(long, default_value = "auto")]
        algo: Algorithm,
        /// Give up after this many seconds (exit code 2).
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a lower-bound instance: DIMACS on stdout or in `--out`, plus a
    /// JSON sidecar next to it.
    Reduce {
        kind: ReduceKind,
        /// CNF for sat2chains, `p hs` for hs2match, `p edge` for vc20val.
        input: PathBuf,
        /// Budget, required for hs2match and vc20val.
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random formula or a structured Horn family.
    Gen {
        #[arg(long = "vars", short = 'n', default_value_t = 10)]
        vars: u32,
        #[arg(long = "clauses", short = 'm', default_value_t = 20)]
        clauses: usize,
        #[arg(long, short = 'w', default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Structured family instead of a uniform random formula.
        #[arg(long)]
        family: Option<Family>,
        /// Family size: blocks that each need one backdoor variable.
        #[arg(long, default_value_t = 4)]
        size: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run detectors over a directory of DIMACS files and write CSV.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value = "horn")]
        class: BaseClassId,
        /// Comma-separated algorithms, one CSV row per file and algorithm.
        #[arg(long, value_delimiter = ',', default_value = "auto")]
        algo: Vec<Algorithm>,
        /// Budget for files without a `c k=<n>` comment.
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        /// Per-run timeout in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReduceKind {
    #[value(name = "sat2chains")]
    SatToChains,
    #[value(name = "hs2match")]
    HsToMatch,
    #[value(name = "vc20val")]
    VcToZeroVal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// Disjoint `{x, y, -z}` clauses.
    DisjointC2,
    /// Disjoint pairs `{-x, y, z}`, `{-x, y', z'}`.
    NegativePairs,
    /// Random mix of non-Horn blocks tied by Horn clauses.
    Mixed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Classify { file, json } => classify(&file, json),
        Command::Solve { file, class, json } => solve(&file, class, json),
        Command::Detect {
            file,
            class,
            k,
            algo,
            timeout,
            json,
            out,
        } => detect_cmd(&file, class, k, algo, timeout, json, out.as_deref()),
        Command::Reduce { kind, input, k, out } => reduce(kind, &input, k, out.as_deref()),
        Command::Gen {
            vars,
            clauses,
            width,
            seed,
            family,
            size,
            out,
        } => {
            let text = match family {
                None => write_dimacs(&random_formula(&GenSpec {
                    n_vars: vars,
                    n_clauses: clauses,
                    width,
                    seed,
                })?),
                Some(family) => {
                    let f = match family {
                        Family::DisjointC2 => disjoint_c2(size),
                        Family::NegativePairs => negative_pairs(size),
                        Family::Mixed => mixed_horn(size, seed),
                    };
                    format!("c k={size}\n{}", write_dimacs(&f))
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Bench {
            dir,
            class,
            algo,
            k,
            timeout,
            out,
        } => {
            let config = bench::BenchConfig {
                class,
                algos: algo,
                default_k: k,
                timeout: timeout.map(seconds).transpose()?,
            };
            let csv = bench::run(&dir, &config)?;
            emit(out.as_deref(), &csv)?;
            Ok(0)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_formula(path: &Path) -> Result<CnfFormula> {
    let text = read_input(path)?;
    parse_dimacs(&text).with_context(|| format!("{}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| anyhow!("invalid timeout {s}"))
}

fn classify(path: &Path, as_json: bool) -> Result<u8> {
    let f = read_formula(path)?;
    let mut members = serde_json::Map::new();
    let mut certificates = serde_json::Map::new();
    let mut lines = Vec::new();
    for class in BaseClassId::ALL {
        let m = membership(&f, class);
        members.insert(class.token().into(), Value::Bool(m.is_member()));
        lines.push(format!("{class}: {}", m.is_member()));
        match m {
            Membership::Matched(cert) => {
                let pairs: Vec<Value> = cert.iter().map(|(c, v)| json!([c.to_dimacs(), v.id()])).collect();
                for (c, v) in cert.iter() {
                    lines.push(format!("  {c} -> {v}"));
                }
                certificates.insert("match".into(), Value::Array(pairs));
            }
            Membership::Chained(dec) => {
                let chains: Vec<Value> = dec
                    .chains
                    .iter()
                    .map(|ch| json!(ch.variables.iter().map(|v| v.id()).collect::<Vec<_>>()))
                    .collect();
                for ch in &dec.chains {
                    let names: Vec<String> = ch.variables.iter().map(ToString::to_string).collect();
                    lines.push(format!("  chain {}", names.join(" -> ")));
                }
                certificates.insert("chains".into(), Value::Array(chains));
            }
            _ => {}
        }
    }
    if as_json {
        let report = json!({"classes": members, "certificates": certificates});
        println!("{report}");
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(0)
}

fn solve(path: &Path, class: BaseClassId, as_json: bool) -> Result<u8> {
    let f = read_formula(path)?;
    let model = solve_in_class(&f, class)?;
    if as_json {
        println!("{}", json!({"satisfiable": model.is_some(), "model": model}));
    } else {
        match &model {
            Some(m) => println!("SAT\n{m}"),
            None => println!("UNSAT"),
        }
    }
    Ok(if model.is_some() { 0 } else { 1 })
}

fn detect_cmd(
    path: &Path,
    class: BaseClassId,
    k: usize,
    algo: Algorithm,
    timeout: Option<f64>,
    as_json: bool,
    out: Option<&Path>,
) -> Result<u8> {
    let f = read_formula(path)?;
    let algo = algo.resolve(class)?;
    let mut opts = SearchOptions::default();
    if let Some(t) = timeout {
        opts = opts.with_timeout(seconds(t)?);
    }
    let result = match detect(&f, k, class, algo, &opts) {
        Ok(r) => r,
        Err(Error::Timeout(stats)) => {
            let text = if as_json {
                format!("{}\n", json!({"error": "timeout", "stats": stats}))
            } else {
                format!(
                    "timeout after {:.3}s: {} nodes, {} leaves, depth {}\n",
                    stats.elapsed_s, stats.nodes, stats.leaves, stats.max_depth
                )
            };
            emit(out, &text)?;
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };
    if result.found && !verify_witness(&f, &result.backdoor, &result.witness, class, k) {
        bail!("internal error: reported witness failed verification");
    }
    let text = if as_json {
        format!("{}\n", result.to_json())
    } else {
        let mut s = format!("found: {}\n", result.found);
        if result.found {
            let names: Vec<String> = result.backdoor.iter().map(ToString::to_string).collect();
            s += &format!("backdoor: {{{}}}\n", names.join(", "));
            s += &format!("witness: {}\n", result.witness);
            if let Some(m) = &result.model {
                s += &format!("model: {m}\n");
            }
        }
        let st = &result.stats;
        s += &format!(
            "algorithm: {algo}, nodes: {}, leaves: {}, max depth: {}, elapsed: {:.6}s\n",
            st.nodes, st.leaves, st.max_depth, st.elapsed_s
        );
        s
    };
    emit(out, &text)?;
    Ok(if result.found { 0 } else { 1 })
}

fn reduce(kind: ReduceKind, input: &Path, k: Option<usize>, out: Option<&Path>) -> Result<u8> {
    let text = read_input(input)?;
    let need_k = || k.ok_or_else(|| anyhow!("-k is required for this reduction"));
    let (output, forced): (ReductionOutput, Vec<u32>) = match kind {
        ReduceKind::SatToChains => {
            let f = parse_dimacs(&text).context("sat2chains expects a DIMACS CNF file")?;
            (sat_to_chains(&f), Vec::new())
        }
        ReduceKind::HsToMatch => {
            let inst = parse_hs(&text).context("hs2match expects a `p hs` file")?;
            let k = need_k()?;
            let (reduced, budget, forced) = inst
                .force_singletons(k)
                .ok_or_else(|| anyhow!("singleton sets force more than {k} elements"))?;
            (hs_to_match(&reduced, budget)?, forced)
        }
        ReduceKind::VcToZeroVal => {
            let g = parse_edge_graph(&text).context("vc20val expects a `p edge` file")?;
            (vc_to_zeroval(&g, need_k()?), Vec::new())
        }
    };
    let dimacs = write_dimacs(&output.formula);
    let mut sidecar: Value = serde_json::from_str(&output.sidecar_json())?;
    if matches!(kind, ReduceKind::HsToMatch) {
        sidecar["forced"] = json!(forced);
    }
    let sidecar = serde_json::to_string_pretty(&sidecar)? + "\n";
    match out {
        Some(path) => {
            fs::write(path, &dimacs).with_context(|| format!("cannot write {}", path.display()))?;
            let side = sidecar_path(path);
            fs::write(&side, sidecar).with_context(|| format!("cannot write {}", side.display()))?;
        }
        None => {
            print!("{dimacs}");
            eprint!("{sidecar}");
        }
    }
    Ok(0)
}

/// `out.cnf` gets `out.json`; an extension-less path gets `.json` appended.
fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

//! The `bench` subcommand: per-file search statistics as CSV, followed by
//! one summary row per algorithm with the exponential base fitted to
//! `ln(nodes) = a + k ln(base)` by least squares.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use backdoor_core::dimacs::parse_dimacs;
use backdoor_core::search::detect;
use backdoor_core::{Algorithm, BaseClassId, Error, SearchOptions, SearchStats};

pub const HEADER: &str = "instance,algorithm,class,k,nodes,leaves,max_depth,elapsed_s,found,error,fitted_base";

pub struct BenchConfig {
    pub class: BaseClassId,
    pub algos: Vec<Algorithm>,
    pub default_k: usize,
    pub timeout: Option<Duration>,
}

struct Row {
    instance: String,
    algo: Algorithm,
    k: Option<usize>,
    stats: Option<SearchStats>,
    found: Option<bool>,
    error: String,
}

/// Budget from a `c k=<n>` comment, if the file has one.
fn budget_hint(text: &str) -> Option<usize> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('c'))
        .find_map(|rest| rest.trim().strip_prefix("k=")?.trim().parse().ok())
}

fn corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot read {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "cnf") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn bench_one(path: &Path, algo: Algorithm, config: &BenchConfig) -> Row {
    let instance = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut row = Row {
        instance,
        algo,
        k: None,
        stats: None,
        found: None,
        error: String::new(),
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let k = budget_hint(&text).unwrap_or(config.default_k);
    row.k = Some(k);
    let formula = match parse_dimacs(&text) {
        Ok(f) => f,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let mut opts = SearchOptions::sequential();
    if let Some(t) = config.timeout {
        opts = opts.with_timeout(t);
    }
    match detect(&formula, k, config.class, algo, &opts) {
        Ok(r) => {
            row.found = Some(r.found);
            row.stats = Some(r.stats);
        }
        Err(Error::Timeout(stats)) => {
            row.error = "timeout".into();
            row.stats = Some(stats);
        }
        Err(e) => row.error = e.to_string(),
    }
    row
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Least-squares slope of `ln(nodes)` against `k`, exponentiated. `None`
/// without at least two distinct budgets.
pub fn fit_base(points: &[(usize, u64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, n)| n > 0)
        .map(|&(k, n)| (k as f64, (n as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    Some((sxy / sxx).exp())
}

fn run_jobs(jobs: &[(PathBuf, Algorithm)], config: &BenchConfig) -> Result<Vec<Row>> {
    let threads = match std::env::var("BACKDOOR_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Some(n),
            _ => bail!("BACKDOOR_THREADS must be a positive integer, got `{s}`"),
        },
        Err(_) => None,
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder.build()?;
        Ok(pool.install(|| {
            jobs.par_iter()
                .map(|(p, a)| bench_one(p, *a, config))
                .collect()
        }))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(jobs.iter().map(|(p, a)| bench_one(p, *a, config)).collect())
    }
}

pub fn run(dir: &Path, config: &BenchConfig) -> Result<String> {
    let algos: Vec<Algorithm> = config
        .algos
        .iter()
        .map(|a| a.resolve(config.class))
        .collect::<backdoor_core::Result<_>>()?;
    let files = corpus(dir)?;
    let jobs: Vec<(PathBuf, Algorithm)> = files
        .iter()
        .flat_map(|f| algos.iter().map(move |&a| (f.clone(), a)))
        .collect();
    let rows = run_jobs(&jobs, config)?;

    let mut out = String::from(HEADER);
    out.push('\n');
    for r in &rows {
        let (nodes, leaves, depth, elapsed) = match &r.stats {
            Some(s) => (
                s.nodes.to_string(),
                s.leaves.to_string(),
                s.max_depth.to_string(),
                format!("{:.6}", s.elapsed_s),
            ),
            None => Default::default(),
        };
        let fields = [
            quote(&r.instance),
            r.algo.to_string(),
            config.class.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            nodes,
            leaves,
            depth,
            elapsed,
            r.found.map(|f| f.to_string()).unwrap_or_default(),
            quote(&r.error),
            String::new(),
        ];
        out += &fields.join(",");
        out.push('\n');
    }
    if !rows.is_empty() {
        for &algo in &algos {
            let points: Vec<(usize, u64)> = rows
                .iter()
                .filter(|r| r.algo == algo && r.found.is_some())
                .filter_map(|r| Some((r.k?, r.stats.as_ref()?.nodes)))
                .collect();
            let base = fit_base(&points).map(|b| format!("{b:.4}")).unwrap_or_default();
            out += &format!("summary,{algo},{},,,,,,,,{base}\n", config.class);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_a_clean_exponential() {
        let points: Vec<(usize, u64)> = (1..8).map(|k| (k, 3u64.pow(k as u32) * 5)).collect();
        assert!((fit_base(&points).unwrap() - 3.0).abs() < 1e-9);
        assert!(fit_base(&[(2, 10)]).is_none());
        assert!(fit_base(&[(2, 10), (2, 20)]).is_none());
    }

    #[test]
    fn budget_comment() {
        assert_eq!(budget_hint("c k=7\np cnf 1 1\n1 0\n"), Some(7));
        assert_eq!(budget_hint("c hello\np cnf 0 0\n"), None);
    }
}

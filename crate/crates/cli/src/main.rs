// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `repcol`: construct, verify, search and bound proper edge-colourings of
//! complete graphs that avoid repeated colour-isomorphic patterns.
//!
//! Exit codes: 0 success (or repeat absent), 2 repeat found, 3 unknown
//! (budget exhausted), 1 error or rejected certificate.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use repcol::bounds::bound_report;
use repcol::constructors::{
    additive_colouring, clique_matching_colouring, lll_colouring, quadratic_colouring,
    random_algebraic_cycle_colouring, random_algebraic_tree_colouring, LllParams,
};
use repcol::graph::parse_pattern;
use repcol::search::{exact_f, results_table, SearchOptions};
use repcol::verifier::{
    check_proper, find_repeats, verify_certificate, CertificateVerdict, DetectionMode, DEFAULT_NODE_BUDGET,
};
use repcol::{EdgeColouring, RepeatCertificate, RepeatOutcome};

const EXIT_FOUND: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "repcol",
    version,
    about = "Colourings of K_n without repeated colour-isomorphic patterns"
)]
struct Cli {
    /// Worker threads for verification and search (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Additive,
    Quadratic,
    CliqueMatching,
    Lll,
    AlgCycle,
    AlgTree,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Additive => "additive",
            Family::Quadratic => "quadratic",
            Family::CliqueMatching => "clique-matching",
            Family::Lll => "lll",
            Family::AlgCycle => "alg-cycle",
            Family::AlgTree => "alg-tree",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Budgeted,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a colouring and write it in `rfc v1` format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Tree size for clique-matching and alg-tree.
        #[arg(long)]
        m: Option<usize>,
        /// Polynomial degree for the algebraic families.
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Pattern avoided by the lll family.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.25)]
        gamma: f64,
        #[arg(long, default_value_t = LllParams::default().max_resamples)]
        max_resamples: u64,
        /// Reject alg-tree draws whose class degree exceeds this.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check properness and look for k-repeats of a pattern.
    Verify {
        input: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Where to write the certificate when a repeat is found.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Compute f_k(n, H) exactly for tiny n.
    Search {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, num_args = 1.., required = true)]
        n: Vec<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Append the results table here.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Directory for witness colourings.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Evaluate every bound on f_k(n, H).
    Bounds {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Emit the tab-separated record stream instead of the table.
        #[arg(long)]
        records: bool,
    },
    /// Check a repeat certificate against a colouring.
    Certify { certificate: PathBuf, colouring: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Echoes the reproducibility-relevant settings into the colouring meta.
fn echo_config(col: &mut EdgeColouring, pairs: &[(&str, String)]) {
    for (key, value) in pairs {
        col.set_meta(format!("run.{key}"), value);
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: Family,
    n: usize,
    m: Option<usize>,
    d: usize,
    pattern: Option<&str>,
    k: usize,
    seed: u64,
    gamma: f64,
    max_resamples: u64,
    max_degree: Option<usize>,
    output: &Path,
) -> Result<u8> {
    let need_m = || m.context("--m is required for this family");
    let mut config = vec![
        ("subcommand", "construct".to_string()),
        ("family", family.name().to_string()),
        ("n", n.to_string()),
    ];
    let mut col = match family {
        Family::Additive => additive_colouring(n)?,
        Family::Quadratic => quadratic_colouring(n)?,
        Family::CliqueMatching => {
            config.push(("m", need_m()?.to_string()));
            clique_matching_colouring(n, need_m()?)?
        }
        Family::Lll => {
            let spec = pattern.context("--pattern is required for the lll family")?;
            let h = parse_pattern(spec)?;
            config.extend([
                ("pattern", spec.to_string()),
                ("k", k.to_string()),
                ("seed", seed.to_string()),
                ("gamma", gamma.to_string()),
                ("max_resamples", max_resamples.to_string()),
            ]);
            let params = LllParams {
                gamma,
                max_resamples,
                ..LllParams::default()
            };
            lll_colouring(n, &h, k, seed, &params)?
        }
        Family::AlgCycle => {
            config.extend([("d", d.to_string()), ("seed", seed.to_string())]);
            random_algebraic_cycle_colouring(n, d, seed)?
        }
        Family::AlgTree => {
            config.extend([
                ("m", need_m()?.to_string()),
                ("d", d.to_string()),
                ("seed", seed.to_string()),
            ]);
            if let Some(t) = max_degree {
                config.push(("max_degree", t.to_string()));
            }
            random_algebraic_tree_colouring(n, need_m()?, d, seed, max_degree)?
        }
    };
    echo_config(&mut col, &config);
    write(output, &col.to_rfc())?;
    let report = check_proper(&col);
    println!("colours {}", col.num_colours());
    println!("proper {}", report.proper);
    println!("max_class_degree {}", report.max_class_degree);
    Ok(0)
}

fn verify(input: &Path, pattern: &str, k: usize, mode: Mode, budget: u64, cert: Option<&Path>) -> Result<u8> {
    let col = EdgeColouring::from_rfc(&read(input)?)?;
    let h = parse_pattern(pattern)?;
    let report = check_proper(&col);
    println!("proper {}", report.proper);
    println!("max_class_degree {}", report.max_class_degree);
    if let Some(v) = &report.violation {
        println!(
            "violation vertex={} colour={} edges={}-{},{}-{}",
            v.vertex, v.colour, v.edges[0].0, v.edges[0].1, v.edges[1].0, v.edges[1].1
        );
    }
    let mode = match mode {
        Mode::Exact => DetectionMode::Exact,
        Mode::Budgeted => DetectionMode::Budgeted { node_budget: budget },
    };
    match find_repeats(&col, &h, k, mode)? {
        RepeatOutcome::Absent => {
            println!("verdict absent-proven");
            Ok(0)
        }
        RepeatOutcome::Found(c) => {
            println!("verdict found");
            print!("{}", c.to_text());
            if let Some(path) = cert {
                write(path, &c.to_text())?;
            }
            Ok(EXIT_FOUND)
        }
        RepeatOutcome::Unknown { nodes } => {
            println!("verdict unknown nodes={nodes}");
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn search(
    pattern: &str,
    k: usize,
    ns: &[usize],
    budget: Option<u64>,
    threads: usize,
    table: Option<&Path>,
    witness_dir: Option<&Path>,
) -> Result<u8> {
    let h = parse_pattern(pattern)?;
    let opts = SearchOptions {
        node_budget: budget,
        threads,
    };
    let mut results = Vec::new();
    let mut code = 0;
    for &n in ns {
        let r = exact_f(n, &h, k, &opts)?;
        match r.value {
            Some(v) => println!("n={n} value={v} exhaustive={}", r.exhaustive),
            None => {
                println!("n={n} interval=[{},{}] {}", r.lo, r.hi, r.note.as_deref().unwrap_or(""));
                code = EXIT_UNKNOWN;
            }
        }
        if let (Some(dir), Some(w)) = (witness_dir, &r.witness) {
            fs::create_dir_all(dir)?;
            let mut w = w.clone();
            echo_config(
                &mut w,
                &[
                    ("subcommand", "search".into()),
                    ("pattern", pattern.into()),
                    ("k", k.to_string()),
                    ("n", n.to_string()),
                ],
            );
            write(
                &dir.join(format!("f{k}_{n}_{}.rfc", h.label().replace([':', ','], "_"))),
                &w.to_rfc(),
            )?;
        }
        results.push(r);
    }
    let text = results_table(&results);
    print!("{text}");
    if let Some(path) = table {
        write(path, &text)?;
    }
    Ok(code)
}

fn certify(certificate: &Path, colouring: &Path) -> Result<u8> {
    let cert = RepeatCertificate::from_text(&read(certificate)?)?;
    let col = EdgeColouring::from_rfc(&read(colouring)?)?;
    match verify_certificate(&cert, &col) {
        CertificateVerdict::Accept => {
            println!("accept");
            Ok(0)
        }
        CertificateVerdict::Reject(reason) => {
            println!("reject: {reason}");
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()?;
    }
    match cli.command {
        Command::Construct {
            family,
            n,
            m,
            d,
            pattern,
            k,
            seed,
            gamma,
            max_resamples,
            max_degree,
            output,
        } => construct(
            family,
            n,
            m,
            d,
            pattern.as_deref(),
            k,
            seed,
            gamma,
            max_resamples,
            max_degree,
            &output,
        ),
        Command::Verify {
            input,
            pattern,
            k,
            mode,
            budget,
            cert,
        } => verify(&input, &pattern, k, mode, budget, cert.as_deref()),
        Command::Search {
            pattern,
            k,
            n,
            budget,
            table,
            witness_dir,
        } => search(
            &pattern,
            k,
            &n,
            budget,
            cli.threads,
            table.as_deref(),
            witness_dir.as_deref(),
        ),
        Command::Bounds { pattern, k, n, records } => {
            if k < 2 {
                bail!("k must be at least 2");
            }
            let report = bound_report(n, &parse_pattern(&pattern)?, k);
            print!(
                "{}",
                if records {
                    report.to_records()
                } else {
                    report.to_table()
                }
            );
            Ok(0)
        }
        Command::Certify { certificate, colouring } => certify(&certificate, &colouring),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

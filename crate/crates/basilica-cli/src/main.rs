//! Command-line front end for the basilica-spectral library. Every
//! subcommand writes its artifacts into an output directory through atomic
//! temp-file renames, appends a MANIFEST describing what was produced, and
//! keeps output bytes a pure function of the arguments.

use anyhow::{bail, Context, Result};
use basilica_spectral::eigen::{
    build_patch, dn_numeric_basis, localized_span_ratio, parse_increments, patch_rows_consistent,
};
use basilica_spectral::gaps::{escape_sampling, escape_svg, gap_enumerate_ctx, gaps_csv, gaps_svg, GapContext};
use basilica_spectral::graph::{build_g, build_gamma, to_dot, to_json};
use basilica_spectral::measure::{
    measure_csv, measure_svg, spectral_measure, total_mass,
};
use basilica_spectral::poly::IntPoly;
use basilica_spectral::recursion::{multiplicity_s_big, Sequences};
use basilica_spectral::sturm::{
    isolate_spectral_roots, refine_to_width, spectrum_svg, IsolatingInterval,
};
use basilica_spectral::verify;
use clap::{Args, Parser, Subcommand};
use rug::Rational;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "basilica", version, about = "Exact spectral analysis of the basilica graph family")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output directory for generated files
    #[arg(long, default_value = "out", global = true)]
    out_dir: PathBuf,
    /// Polynomial cache directory (default: the BASILICA_CACHE_DIR
    /// environment variable if set, else no cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a graph of the family as JSON, optionally with Graphviz dot
    Graph {
        #[arg(long)]
        level: usize,
        /// Emit the loop-carrying Schreier graph instead of the
        /// split-boundary graph
        #[arg(long)]
        schreier: bool,
        /// Also write a .dot rendering
        #[arg(long)]
        dot: bool,
    },
    /// Emit the characteristic polynomial family at one level
    Charpoly {
        #[arg(long)]
        level: usize,
    },
    /// Emit the factorization of the Dirichlet polynomial at one level
    Factor {
        #[arg(long)]
        level: usize,
    },
    /// Isolate all eigenvalues up to a level, refined to a requested width
    Spectrum {
        #[arg(long)]
        level: usize,
        /// Interval half-width target as a negated power of two: intervals
        /// are refined until narrower than 2^-width_log2
        #[arg(long, default_value_t = 30)]
        width_log2: u32,
    },
    /// Emit the spectral measure at one level (JSON, CSV, stem-plot SVG)
    Measure {
        #[arg(long)]
        level: usize,
    },
    /// Enumerate certified spectral gaps (JSON, CSV, bar SVG, escape SVG)
    Gaps {
        #[arg(long, default_value_t = 8)]
        max_level: usize,
        /// Minimum reported gap width, as "num/den" or an integer
        #[arg(long, default_value = "1/1000000")]
        min_width: String,
        /// Largest base depth tried by the escape certifier
        #[arg(long, default_value_t = 5)]
        escape_depth: usize,
        /// Seed for the escape-dynamics sampling cross-check
        #[arg(long, default_value_t = 0xba51)]
        seed: u64,
    },
    /// Build a blowup patch and report its localized eigenfunction structure
    Blowup {
        /// Comma-separated growth steps, each "1", "2a" or "2b"
        #[arg(long)]
        increments: String,
        /// Ball radius for the localized-span report
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Run the named verification checks and report pass/fail
    Verify {
        #[arg(long, default_value_t = 8)]
        max_level: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}

/// Collects (name, bytes) pairs and publishes them atomically.
struct Output {
    dir: PathBuf,
    written: Vec<(String, usize)>,
}

impl Output {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Output { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        let tmp = self.dir.join(format!("{}.tmp", name));
        std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &path).with_context(|| format!("publishing {}", path.display()))?;
        self.written.push((name.to_string(), bytes.len()));
        Ok(())
    }

    fn write_json(&mut self, name: &str, v: &serde_json::Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(v)?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    /// MANIFEST records what this run produced; incomplete runs still leave
    /// an accurate inventory of the files that made it out.
    fn finish(&mut self, complete: bool) -> Result<()> {
        let mut text = String::new();
        for (name, bytes) in &self.written {
            text.push_str(&format!("{}\t{} bytes\n", name, bytes));
        }
        text.push_str(if complete { "status\tcomplete\n" } else { "status\tpartial\n" });
        self.write("MANIFEST", text.as_bytes())
    }
}

fn rational_json(r: &Rational) -> serde_json::Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn interval_json(iv: &IsolatingInterval) -> serde_json::Value {
    json!({ "lo": rational_json(&iv.lo), "hi": rational_json(&iv.hi) })
}

fn parse_rational(s: &str) -> Result<Rational> {
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: rug::Integer = n.parse().ok().context("bad numerator")?;
            let d: rug::Integer = d.parse().ok().context("bad denominator")?;
            if d == 0 {
                bail!("zero denominator");
            }
            Rational::from((n, d))
        }
        None => {
            let n: rug::Integer = s.parse().ok().context("expected num/den or an integer")?;
            Rational::from(n)
        }
    };
    Ok(r)
}

/// Certified isolation of every γ_k root, k ≤ level, refined to the width
/// target, returned per level.
fn isolate_levels(
    seq: &mut Sequences,
    level: usize,
    eps: &Rational,
) -> Result<Vec<(usize, Vec<IsolatingInterval>)>> {
    let mut rows = Vec::new();
    for k in 1..=level {
        let f = seq.gamma(k);
        let ivs = isolate_spectral_roots(&f);
        let refined: Vec<_> = ivs.iter().map(|iv| refine_to_width(&f, iv, eps)).collect();
        rows.push((k, refined));
    }
    Ok(rows)
}

/// Runs one subcommand; Ok(false) means a verification-style failure that
/// should exit 1 without an error message beyond what was printed.
fn run(cli: &Cli) -> Result<bool> {
    let mut seq = match &cli.common.cache_dir {
        Some(d) => Sequences::with_cache_dir(d.clone()),
        None => Sequences::new(),
    };
    let mut out = Output::new(&cli.common.out_dir)?;
    match &cli.cmd {
        Cmd::Graph { level, schreier, dot } => {
            let (g, stem) = if *schreier {
                (build_gamma(*level), format!("schreier_{}", level))
            } else {
                (build_g(*level), format!("g_{}", level))
            };
            out.write_json(&format!("{}.json", stem), &to_json(&g))?;
            if *dot {
                out.write(&format!("{}.dot", stem), to_dot(&g).as_bytes())?;
            }
            out.finish(true)?;
        }
        Cmd::Charpoly { level } => {
            let n = *level;
            let mut v = json!({
                "level": n,
                "a": seq.a(n).to_json(),
                "b": seq.b(n).to_json(),
                "c": seq.c(n).to_json(),
                "gamma": seq.gamma(n).to_json(),
                "eta": seq.eta(n).to_json(),
            });
            if n >= 1 {
                v["d"] = seq.d(n).to_json();
                v["e"] = seq.e(n).to_json();
            }
            out.write_json(&format!("charpoly_{}.json", n), &v)?;
            out.finish(true)?;
        }
        Cmd::Factor { level } => {
            let n = *level;
            if n < 1 {
                bail!("factor requires level >= 1");
            }
            let mut factors = Vec::new();
            let mut check = IntPoly::one();
            for k in (1..=n).rev() {
                let s = if k == n {
                    rug::Integer::from(1)
                } else {
                    multiplicity_s_big((n - k) as u64)
                };
                if s == 0 {
                    continue;
                }
                let g = seq.gamma(k);
                check = check.mul(&g.pow(s.to_u64().unwrap()));
                factors.push(json!({
                    "level": k,
                    "multiplicity": s.to_string(),
                    "poly": g.to_json(),
                }));
            }
            if check != seq.c(n) {
                bail!("internal consistency failure: factor product differs from c_{}", n);
            }
            out.write_json(
                &format!("factor_{}.json", n),
                &json!({ "level": n, "factors": factors }),
            )?;
            out.finish(true)?;
        }
        Cmd::Spectrum { level, width_log2 } => {
            let eps = Rational::from((1, rug::Integer::from(1) << *width_log2));
            let rows = isolate_levels(&mut seq, *level, &eps)?;
            let v: Vec<_> = rows
                .iter()
                .map(|(k, ivs)| {
                    json!({
                        "level": k,
                        "roots": ivs.iter().map(interval_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.write_json(
                &format!("spectrum_{}.json", level),
                &json!({ "max_level": level, "levels": v }),
            )?;
            out.write(&format!("spectrum_{}.svg", level), spectrum_svg(&rows).as_bytes())?;
            out.finish(true)?;
        }
        Cmd::Measure { level } => {
            let n = *level;
            let eps = Rational::from((1, 1u64 << 30));
            let atoms = spectral_measure(&mut seq, n, &eps);
            if total_mass(&atoms) != 1u32 {
                bail!("atom weights do not sum to 1 at level {}", n);
            }
            let v: Vec<_> = atoms
                .iter()
                .map(|a| {
                    json!({
                        "level": a.level_k,
                        "root": interval_json(&a.root),
                        "weight": rational_json(&a.weight),
                    })
                })
                .collect();
            out.write_json(&format!("measure_{}.json", n), &json!({ "level": n, "atoms": v }))?;
            out.write(&format!("measure_{}.csv", n), measure_csv(&atoms).as_bytes())?;
            out.write(&format!("measure_{}.svg", n), measure_svg(&atoms).as_bytes())?;
            out.finish(true)?;
        }
        Cmd::Gaps { max_level, min_width, escape_depth, seed } => {
            let min_width = parse_rational(min_width)?;
            if min_width <= 0u32 {
                bail!("min width must be positive");
            }
            let ctx = GapContext::build(&mut seq, *max_level, *escape_depth);
            let gaps = gap_enumerate_ctx(&ctx, &min_width);
            let mut sampled_ok = true;
            if let Some(widest) = gaps
                .iter()
                .max_by(|a, b| Rational::from(&a.hi - &a.lo).cmp(&Rational::from(&b.hi - &b.lo)))
            {
                sampled_ok = escape_sampling(&mut seq, widest, 20, 30, 1e6, *seed);
            }
            let v: Vec<_> = gaps
                .iter()
                .map(|g| {
                    json!({
                        "lo": rational_json(&g.lo),
                        "hi": rational_json(&g.hi),
                        "base_depth": g.base_depth,
                    })
                })
                .collect();
            out.write_json(
                &format!("gaps_{}.json", max_level),
                &json!({
                    "max_level": max_level,
                    "count": gaps.len(),
                    "escape_sampling_ok": sampled_ok,
                    "gaps": v,
                }),
            )?;
            out.write(&format!("gaps_{}.csv", max_level), gaps_csv(&gaps).as_bytes())?;
            out.write(&format!("gaps_{}.svg", max_level), gaps_svg(&gaps).as_bytes())?;
            out.write(
                &format!("escape_{}.svg", escape_depth),
                escape_svg(&mut seq, *escape_depth, 4000).as_bytes(),
            )?;
            out.finish(true)?;
            if gaps.is_empty() {
                eprintln!("no gap certified at the requested width");
                return Ok(false);
            }
            if !sampled_ok {
                eprintln!("escape sampling failed inside a certified gap");
                return Ok(false);
            }
        }
        Cmd::Blowup { increments, radius } => {
            let incs = parse_increments(increments)
                .context("increments must be a comma-separated list of 1, 2a, 2b")?;
            let patch = build_patch(&incs);
            if !patch_rows_consistent(&patch) {
                bail!("patch construction produced inconsistent neighborhoods");
            }
            let span = localized_span_ratio(&patch, *radius);
            let per_level: Vec<_> = patch
                .levels
                .iter()
                .map(|&l| {
                    json!({
                        "level": l,
                        "dirichlet_neumann_dim": dn_numeric_basis(&build_g(l), l).len(),
                    })
                })
                .collect();
            let stem = increments.replace(',', "_");
            out.write_json(
                &format!("blowup_{}.json", stem),
                &json!({
                    "increments": incs.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                    "levels": patch.levels,
                    "top_vertices": patch.graph.vertex_count(),
                    "generic": patch.generic,
                    "chain": per_level,
                    "localized_span": {
                        "ball_radius": span.ball_radius,
                        "ball_size": span.ball_size,
                        "candidates": span.candidates,
                        "dim": span.dim,
                        "ratio": span.ratio,
                    },
                }),
            )?;
            out.finish(true)?;
        }
        Cmd::Verify { max_level } => {
            let checks = verify::run_all(&mut seq, *max_level);
            let mut all_ok = true;
            let mut v = Vec::new();
            for c in &checks {
                all_ok &= c.passed;
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                v.push(json!({ "name": c.name, "passed": c.passed, "detail": c.detail }));
            }
            out.write_json(
                "verify.json",
                &json!({ "max_level": max_level, "all_passed": all_ok, "checks": v }),
            )?;
            out.finish(all_ok)?;
            return Ok(all_ok);
        }
    }
    Ok(true)
}

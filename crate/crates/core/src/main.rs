use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use expander_core::certification::{
    certify_alpha_exact, certify_heuristic, exact_separator, heuristic_separator, Mode as CertMode,
    SEPARATOR_EXACT_LIMIT,
};
use expander_core::dot::{to_dot, Highlight};
use expander_core::extraction::{
    delete_nonexpanding, expander_from_one_point, extract_algorithmic, extract_from_locally_sparse,
    medium_set_expander, supercritical_pipeline_with, AlgorithmicOutcome, DeletionRule, Finder, MediumSetOutcome,
    PipelineStatus,
};
use expander_core::generators::{gen, GenKind, GenSpec};
use expander_core::minors::{
    ccl_bruteforce, clique_minor, embed_or_separate, CliqueMinorOutcome, CliqueOverrides, MinorOutcome,
};
use expander_core::paths::{
    cycle_lengths_family, cycle_spectrum_bruteforce, long_cycle, long_path, natural_sigma, ramsey_demo,
    random_sigma, CycleFamily, CycleOutcome, PathOutcome, CYCLE_SPECTRUM_BUDGET,
};
use expander_core::report::{read_graph, report_schema, RunReport};
use expander_core::spectral::{cheeger_exact, spectrum, sweep_cut};
use expander_core::{Graph, Result};

/// Expansion certification, expander extraction, long paths and cycles, and
/// minor embedding.
#[derive(Parser, Debug)]
#[command(name = "expander", version)]
struct Cli {
    /// Print the JSON schema of run reports and exit.
    #[arg(long)]
    json_schema: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,

    /// Write a Graphviz rendering of the result here.
    #[arg(long, global = true)]
    dot: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
    Auto,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Exact => "exact",
            ModeArg::Heuristic => "heuristic",
            ModeArg::Auto => "auto",
        }
    }

    /// Exact unless the mode says otherwise or `n` is above `limit`.
    fn exact(self, n: usize, limit: usize) -> bool {
        match self {
            ModeArg::Exact => true,
            ModeArg::Heuristic => false,
            ModeArg::Auto => n <= limit,
        }
    }
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file, or `-` for stdin.
    graph: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Gnp,
    Regular,
    Bipartite,
    Cliques,
    Path,
    Cycle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExtractMethod {
    Delete,
    MediumSet,
    OnePoint,
    LocallySparse,
    Algorithmic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Balanced,
    SmallSets,
    SeparatorFree,
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Alpha,
    Separator,
    Cheeger,
    Ccl,
    Cycles,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph as an edge list.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        /// Write the edge list here and a report to stdout; without it the
        /// edge list goes to stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Worst vertex-expansion ratio, exact or bracketed.
    Certify {
        #[command(flatten)]
        input: GraphArg,
        /// Verdict threshold; exit 1 unless the graph is an alpha-expander.
        #[arg(long)]
        alpha: Option<f64>,
        /// Restrict to sets of at most k vertices (exact mode).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Small separator.
    Separator {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Spectrum summary and sweep cut.
    Spectral {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Expander extraction.
    Extract {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, value_enum, default_value_t = ExtractMethod::Delete)]
        method: ExtractMethod,
        #[arg(long, value_enum, default_value_t = Rule::Balanced)]
        rule: Rule,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long)]
        delta_max: Option<usize>,
    },
    /// Depth-first search path of length ell, or a k-set with few neighbours.
    Longpath {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        /// Order vertices randomly (by --seed) instead of by id.
        #[arg(long)]
        random_sigma: bool,
    },
    /// Cycle longer than ell, or a set violating the expansion assumption.
    Longcycle {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        random_sigma: bool,
    },
    /// Cycles of pairwise distinct lengths.
    Cyclelengths {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Monochromatic long paths in randomly coloured random graphs.
    RamseyDemo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 6.0)]
        c: f64,
        /// Number of vertices of the host graph (default 25 r n).
        #[arg(long)]
        big_n: Option<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Minor embedding of H, or a separator.
    Minor {
        #[command(flatten)]
        input: GraphArg,
        /// Edge list of the target graph H.
        #[arg(long)]
        h: String,
        #[arg(long)]
        alpha: f64,
        /// Require |V(H')| <= alpha n / (6 D).
        #[arg(long)]
        enforce_size_bound: bool,
    },
    /// Clique minor from connected hitting sets.
    CliqueMinor {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        walk_constant: Option<f64>,
        #[arg(long)]
        no_padding: bool,
    },
    /// Supercritical random graph: trim, extract, certify.
    Pipeline {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        /// Edge probability (default (1 + eps) / n).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Exhaustive reference values.
    Oracle {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, value_enum)]
        kind: OracleKind,
    },
}

/// A finished run: the report, its exit code and what to draw.
struct Outcome {
    report: RunReport,
    negative: bool,
    graph: Option<Graph>,
    highlight: Highlight,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| expander_core::Error::InvalidArgument(format!("--{name} is required here")))
}

fn set_group(h: Highlight, label: &str, v: &Value) -> Highlight {
    match v.as_array() {
        Some(a) => h.group(label, a.iter().filter_map(|x| x.as_u64().map(|x| x as usize))),
        None => h,
    }
}

fn run(cli: &Cli, cmd: &Command) -> Result<Outcome> {
    let seed = cli.seed;
    let mode = cli.mode;
    let mut negative = false;
    let mut highlight = Highlight::default();
    match cmd {
        Command::Gen {
            kind,
            n,
            p,
            d,
            a,
            b,
            size,
            count,
            out,
        } => {
            let kind = match kind {
                Kind::Gnp => GenKind::Gnp {
                    n: need(*n, "n")?,
                    p: need(*p, "p")?,
                },
                Kind::Regular => GenKind::RandomRegular {
                    n: need(*n, "n")?,
                    d: need(*d, "d")?,
                },
                Kind::Bipartite => GenKind::CompleteBipartite {
                    a: need(*a, "a")?,
                    b: need(*b, "b")?,
                },
                Kind::Cliques => GenKind::CliqueUnion {
                    size: need(*size, "size")?,
                    count: need(*count, "count")?,
                },
                Kind::Path => GenKind::Path { n: need(*n, "n")? },
                Kind::Cycle => GenKind::Cycle { n: need(*n, "n")? },
            };
            let spec = GenSpec::new(kind, seed);
            let g = gen(&spec)?;
            let params = serde_json::to_value(&spec).map_err(std::io::Error::from)?;
            match out {
                None => {
                    g.write_edge_list(std::io::stdout().lock())?;
                    let report = RunReport::new("gen", seed, None, params).graph(&g).finish(&Value::Null)?;
                    return Ok(Outcome {
                        report,
                        negative: false,
                        graph: None,
                        highlight,
                    });
                }
                Some(path) => {
                    g.write_edge_list(fs::File::create(path)?)?;
                    let result = json!({"spec": spec, "n": g.n(), "m": g.m(), "out": path});
                    let report = RunReport::new("gen", seed, None, params).graph(&g).finish(&result)?;
                    return Ok(Outcome {
                        report,
                        negative,
                        graph: Some(g),
                        highlight,
                    });
                }
            }
        }
        Command::Pipeline { n, eps, p } => {
            let r = supercritical_pipeline_with(*n, *eps, seed, *p)?;
            negative = r.status == PipelineStatus::DensityGateFailed || !r.has_certified_expander();
            let report = RunReport::new("pipeline", seed, None, json!({"n": n, "eps": eps, "p": p})).finish(&r)?;
            return Ok(Outcome {
                report,
                negative,
                graph: None,
                highlight,
            });
        }
        Command::RamseyDemo { n, r, c, big_n, trials } => {
            let rep = ramsey_demo(*n, *r, *c, *big_n, seed, *trials)?;
            negative = rep.successes < rep.trials.len();
            let params = json!({"n": n, "r": r, "c": c, "big_n": big_n, "trials": trials});
            let report = RunReport::new("ramsey-demo", seed, None, params).finish(&rep)?;
            return Ok(Outcome {
                report,
                negative,
                graph: None,
                highlight,
            });
        }
        _ => {}
    }

    let input = match cmd {
        Command::Certify { input, .. }
        | Command::Separator { input }
        | Command::Spectral { input }
        | Command::Extract { input, .. }
        | Command::Longpath { input, .. }
        | Command::Longcycle { input, .. }
        | Command::Cyclelengths { input, .. }
        | Command::Minor { input, .. }
        | Command::CliqueMinor { input, .. }
        | Command::Oracle { input, .. } => input,
        _ => unreachable!("handled above"),
    };
    let g = read_graph(&input.graph)?;
    let n = g.n();
    let (name, params, result): (&str, Value, Value) = match cmd {
        Command::Certify { alpha, k, .. } => {
            let cert_mode = match k {
                Some(k) => CertMode::UpTo { k: *k },
                None => CertMode::Half,
            };
            let rep = if mode.exact(n, 22) {
                certify_alpha_exact(&g, cert_mode)?
            } else {
                if k.is_some() {
                    return Err(expander_core::Error::InvalidArgument(
                        "--k needs exact mode".to_string(),
                    ));
                }
                certify_heuristic(&g)?
            };
            let verdict = alpha.map(|a| rep.verdict(a));
            if let Some(v) = verdict {
                negative = v != Some(true);
            }
            if let Some(w) = &rep.witness {
                highlight = highlight.group("witness", w.iter());
            }
            let mut v = serde_json::to_value(&rep).map_err(std::io::Error::from)?;
            v["verdict"] = json!(verdict.flatten());
            ("certify", json!({"alpha": alpha, "k": k}), v)
        }
        Command::Separator { .. } => {
            let rep = if mode.exact(n, SEPARATOR_EXACT_LIMIT) {
                exact_separator(&g)?
            } else {
                heuristic_separator(&g)?
            };
            highlight = highlight
                .group("A", rep.separator.a.iter())
                .group("S", rep.separator.s.iter())
                .group("B", rep.separator.b.iter());
            ("separator", json!({}), to_value(&rep)?)
        }
        Command::Spectral { .. } => {
            let summary = spectrum(&g)?;
            let cut = if g.is_connected() && n >= 2 { Some(sweep_cut(&g)?) } else { None };
            if let Some(c) = &cut {
                highlight = highlight.group("sweep side", c.cut_set.iter());
            }
            ("spectral", json!({}), json!({"summary": summary, "sweep": cut}))
        }
        Command::Extract {
            method,
            rule,
            alpha,
            k,
            beta,
            c1,
            c2,
            delta_max,
            ..
        } => {
            let finder = if mode.exact(n, 22) { Finder::Exact } else { Finder::Heuristic };
            let params = json!({
                "method": format!("{method:?}"), "rule": format!("{rule:?}"), "alpha": alpha, "k": k,
                "beta": beta, "c1": c1, "c2": c2, "delta_max": delta_max
            });
            let result = match method {
                ExtractMethod::Delete => {
                    let r = match rule {
                        Rule::Balanced => DeletionRule::Balanced { alpha: need(*alpha, "alpha")? },
                        Rule::SmallSets => DeletionRule::SmallSets {
                            alpha: need(*alpha, "alpha")?,
                            k: need(*k, "k")?,
                        },
                        Rule::SeparatorFree => DeletionRule::SeparatorFree { beta: need(*beta, "beta")? },
                        Rule::Plain => DeletionRule::Plain { alpha: need(*alpha, "alpha")? },
                    };
                    let t = delete_nonexpanding(&g, r, finder)?;
                    highlight = highlight.group("survivor", t.survivor.iter()).group("deleted", t.z_total.iter());
                    to_value(&t)?
                }
                ExtractMethod::MediumSet => {
                    let o = medium_set_expander(&g, need(*k, "k")?, need(*alpha, "alpha")?)?;
                    if let MediumSetOutcome::Subgraph { vertices, .. } = &o {
                        highlight = highlight.group("expander", vertices.iter());
                    }
                    to_value(&o)?
                }
                ExtractMethod::OnePoint => {
                    let o = expander_from_one_point(&g, need(*k, "k")?, need(*alpha, "alpha")?)?;
                    highlight = highlight.group("expander", o.vertices.iter()).group("deleted", o.z.iter());
                    to_value(&o)?
                }
                ExtractMethod::LocallySparse => {
                    let dm = delta_max.unwrap_or_else(|| g.max_degree());
                    let o = extract_from_locally_sparse(&g, need(*c1, "c1")?, need(*c2, "c2")?, need(*beta, "beta")?, dm, finder)?;
                    negative = o.claim_holds == Some(false);
                    highlight = highlight.group("expander", o.vertices.iter());
                    to_value(&o)?
                }
                ExtractMethod::Algorithmic => {
                    let o = extract_algorithmic(&g, need(*c1, "c1")?, need(*c2, "c2")?, need(*beta, "beta")?)?;
                    match &o {
                        AlgorithmicOutcome::Witness { set, .. } => highlight = highlight.group("dense set", set.iter()),
                        AlgorithmicOutcome::Expander { certificate, .. } => {
                            negative = !certificate.meets_target;
                            highlight = highlight.group("expander", certificate.vertices.iter());
                        }
                    }
                    to_value(&o)?
                }
            };
            ("extract", params, result)
        }
        Command::Longpath { k, ell, random_sigma: rs, .. } => {
            let sigma = if *rs { random_sigma(n, seed) } else { natural_sigma(n) };
            let o = long_path(&g, *k, *ell, &sigma)?;
            match &o {
                PathOutcome::Path { vertices, .. } => highlight = highlight.walk(vertices, false),
                PathOutcome::Witness { set, .. } => {
                    negative = true;
                    highlight = highlight.group("witness", set.iter());
                }
            }
            ("longpath", json!({"k": k, "ell": ell, "random_sigma": rs}), to_value(&o)?)
        }
        Command::Longcycle { k, ell, random_sigma: rs, .. } => {
            let sigma = if *rs { random_sigma(n, seed) } else { natural_sigma(n) };
            let o = long_cycle(&g, *k, *ell, &sigma)?;
            match &o {
                CycleOutcome::Cycle { cycle, .. } => highlight = highlight.walk(&cycle.vertices, true),
                CycleOutcome::Violation { w_set, cycle, .. } => {
                    negative = true;
                    highlight = highlight.group("W", w_set.iter());
                    if let Some(c) = cycle {
                        highlight = highlight.walk(&c.vertices, true);
                    }
                }
                CycleOutcome::NoLargeComponent { .. } => negative = true,
            }
            ("longcycle", json!({"k": k, "ell": ell, "random_sigma": rs}), to_value(&o)?)
        }
        Command::Cyclelengths { eps, root, .. } => {
            let o = cycle_lengths_family(&g, *eps, *root)?;
            match &o {
                CycleFamily::Family { cycles, .. } => {
                    for c in cycles {
                        highlight = highlight.walk(&c.vertices, true);
                    }
                }
                CycleFamily::Inapplicable { .. } => negative = true,
            }
            ("cyclelengths", json!({"eps": eps, "root": root}), to_value(&o)?)
        }
        Command::Minor {
            h,
            alpha,
            enforce_size_bound,
            ..
        } => {
            let hg = read_graph(h)?;
            let o = embed_or_separate(&g, &hg, *alpha, *enforce_size_bound)?;
            match &o {
                MinorOutcome::Embedding { embedding, .. } => {
                    for (i, b) in embedding.branch_sets.iter().enumerate() {
                        highlight = highlight.group(&format!("branch {i}"), b.iter());
                    }
                }
                MinorOutcome::Separator { separator, .. } => {
                    negative = true;
                    highlight = highlight
                        .group("A", separator.a.iter())
                        .group("S", separator.s.iter())
                        .group("B", separator.b.iter());
                }
            }
            let params = json!({"h": h, "h_hash": hg.graph_hash(), "alpha": alpha, "enforce_size_bound": enforce_size_bound});
            ("minor", params, to_value(&o)?)
        }
        Command::CliqueMinor {
            alpha,
            b,
            k,
            walk_constant,
            no_padding,
            ..
        } => {
            let o = CliqueOverrides {
                b: *b,
                k: *k,
                walk_constant: *walk_constant,
                no_padding: *no_padding,
            };
            let out = clique_minor(&g, *alpha, o, seed)?;
            match &out {
                CliqueMinorOutcome::Minor { embedding, .. } => {
                    for (i, b) in embedding.branch_sets.iter().enumerate() {
                        highlight = highlight.group(&format!("branch {i}"), b.iter());
                    }
                }
                CliqueMinorOutcome::Failure { .. } => negative = true,
            }
            ("clique-minor", json!({"alpha": alpha, "overrides": o}), to_value(&out)?)
        }
        Command::Oracle { kind, .. } => {
            let v = match kind {
                OracleKind::Alpha => to_value(&certify_alpha_exact(&g, CertMode::Half)?)?,
                OracleKind::Separator => to_value(&exact_separator(&g)?)?,
                OracleKind::Cheeger => to_value(&cheeger_exact(&g)?)?,
                OracleKind::Ccl => json!({"ccl": ccl_bruteforce(&g)?}),
                OracleKind::Cycles => json!({"cycle_lengths": cycle_spectrum_bruteforce(&g, CYCLE_SPECTRUM_BUDGET)?}),
            };
            if let Some(w) = v.get("witness").or_else(|| v.get("isoperimetric_witness")) {
                highlight = set_group(highlight, "witness", w);
            }
            ("oracle", json!({"kind": format!("{kind:?}").to_lowercase()}), v)
        }
        Command::Gen { .. } | Command::Pipeline { .. } | Command::RamseyDemo { .. } => unreachable!("handled above"),
    };
    let report = RunReport::new(name, seed, Some(mode.name()), params).graph(&g).finish(&result)?;
    Ok(Outcome {
        report,
        negative,
        graph: Some(g),
        highlight,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x).map_err(std::io::Error::from)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        println!("{}", serde_json::to_string_pretty(&report_schema()).expect("static schema"));
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = &cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    match run(&cli, cmd) {
        Ok(out) => {
            if let (Some(path), Some(g)) = (&cli.dot, &out.graph) {
                if let Err(e) = fs::write(path, to_dot(g, &out.highlight)) {
                    eprintln!("error: writing {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            let is_gen_stdout = matches!(cmd, Command::Gen { out: None, .. });
            if is_gen_stdout {
                eprintln!("{}", serde_json::to_string(&out.report).expect("report serializes"));
            } else {
                let mut stdout = std::io::stdout().lock();
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            }
            if out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

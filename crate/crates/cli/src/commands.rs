use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, ValueEnum};

use kneser_core::bitset::Bitset;
use kneser_core::container::{
    babycont_params, build_container, reconstruct_container, supersat_lb, ym_log_bound,
    OrderedGraph, VertexOrdering,
};
use kneser_core::error::{Error, Result};
use kneser_core::kneser::{kneser_graph, KneserParams, DEFAULT_SOLVER_CAP};
use kneser_core::randomsim::{expected_y, threshold_scan, KneserSkeleton, DEFAULT_VERTEX_CAP};
use kneser_core::sample::{gnp_adjacency, greedy_independent_set};
use kneser_core::setfam::{parse_family, serialize_family, Family};
use kneser_core::shadow::{kk_edge_lower_bound, lovasz_shadow_bound, shadow_exact};
use kneser_core::verify::*;

use crate::rational::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Kneser,
    Gnp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingKind {
    Colex,
    Random,
}

fn write_output(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => write_atomic(path, contents),
    }
}

/// Write via a temp file in the destination directory plus rename, so a
/// crashed run never leaves a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let ctx = |e: std::io::Error| Error::resource(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(ctx)?;
    tmp.write_all(contents.as_bytes()).map_err(ctx)?;
    tmp.persist(path)
        .map_err(|e| Error::resource(format!("writing {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn read_family(path: &Path) -> Result<Family> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::resource(format!("reading {}: {e}", path.display())))?;
    parse_family(&text)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: ekr, hilton-milner, matching, setpairs, supersat, shadow, container.
    pub suite: String,

    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,

    /// Randomized instances for the sampled suites.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact-solver vertex cap.
    #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let n = args.n;
    let r = args.r;
    let params = KneserParams::new(n, r)?;
    let v = params.num_vertices_u64().unwrap_or(u64::MAX);

    let reports: Vec<SuiteReport> = match args.suite.as_str() {
        "ekr" => {
            let witness: &[(u32, u32)] = if n > 2 * r && v <= 200 {
                &[(n, r)]
            } else {
                &[]
            };
            vec![ekr_suite(&[(n, r)], witness, args.cap)?]
        }
        "hilton-milner" => vec![hilton_milner_suite(n, r)?],
        "matching" => vec![matching_suite(&[(n, r)], 40.max(args.cap.min(60)))?],
        "setpairs" => {
            if v <= 12 {
                vec![setpairs_exhaustive(n, r, args.cap)?]
            } else {
                vec![setpairs_random(n, r, args.trials, args.seed, args.cap)?]
            }
        }
        "supersat" => vec![supersat_suite(n, r, args.trials, args.seed)?],
        "shadow" => {
            // keep the exhaustive sweep affordable as V grows
            let exhaustive_size = if v <= 20 {
                4
            } else if v <= 60 {
                3
            } else {
                2
            };
            let mut reports = vec![shadow_suite(n, r, exhaustive_size, args.trials, args.seed)?];
            if n >= 2 * r {
                reports.push(kk_pipeline_suite(
                    n,
                    r,
                    args.trials.min(1000),
                    args.seed,
                    args.cap,
                )?);
            }
            reports
        }
        "container" => {
            let b_values = [(1i64, 3i64), (1, 1), (3, 1)];
            let mut reports = Vec::new();
            if v <= 20 {
                reports.push(container_kneser_suite(n, r, 5, &b_values)?);
            }
            reports.push(container_gnp_suite(
                args.trials.clamp(1, 200),
                40,
                0.2,
                &b_values,
                args.seed,
            )?);
            reports
        }
        other => {
            return Err(Error::domain(format!(
                "unknown suite {other:?}; expected one of ekr, hilton-milner, matching, \
                 setpairs, supersat, shadow, container"
            )))
        }
    };

    let all_passed = reports.iter().all(|r| r.passed());
    let rendered = match args.format {
        TextFormat::Json => format!("{}\n", serde_json::to_string_pretty(&reports).unwrap()),
        TextFormat::Text => {
            let mut s = String::new();
            for rep in &reports {
                s.push_str(&format!(
                    "suite {}: {} ({} instances)\n",
                    rep.suite,
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.instances
                ));
                if !rep.summary.is_empty() {
                    s.push_str(&format!("  {}\n", rep.summary));
                }
                for f in &rep.failures {
                    s.push_str(&format!("  counterexample: {f}\n"));
                }
            }
            s
        }
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---------------------------------------------------------------------------
// scan

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// Probability grid: "start:end:step" or a comma list like "0,0.5,1".
    #[arg(long = "p-grid")]
    pub p_grid: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
    pub format: ScanFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::domain(format!("invalid p-grid {spec:?}: {msg}"));
    let parse_p = |tok: &str| -> Result<f64> {
        let p: f64 = tok
            .trim()
            .parse()
            .map_err(|_| bad(format!("not a number: {tok:?}")))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(bad(format!("{p} outside [0,1]")));
        }
        Ok(p)
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:end:step".to_string()));
        }
        let start = parse_p(parts[0])?;
        let end = parse_p(parts[1])?;
        let step: f64 = parts[2]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad step {:?}", parts[2])))?;
        if step <= 0.0 || end < start {
            return Err(bad("need step > 0 and end >= start".to_string()));
        }
        let count = ((end - start) / step + 1e-9).floor() as usize;
        Ok((0..=count)
            .map(|i| {
                let p = start + i as f64 * step;
                if (p - end).abs() < 1e-9 {
                    end
                } else {
                    p.min(end)
                }
            })
            .collect())
    } else {
        spec.split(',').map(parse_p).collect()
    }
}

pub fn run_scan(args: ScanArgs) -> Result<ExitCode> {
    let grid = parse_grid(&args.p_grid)?;
    let params = KneserParams::new(args.n, args.r)?;
    let skeleton = KneserSkeleton::new(params, DEFAULT_VERTEX_CAP)?;
    let scan = threshold_scan(&skeleton, &grid, args.trials, args.seed, args.cap)?;
    let rendered = match args.format {
        ScanFormat::Csv => scan.to_csv(),
        ScanFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&scan.to_json()).unwrap()
        ),
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// container

#[derive(Args)]
pub struct ContainerArgs {
    #[arg(long, value_enum, default_value_t = GraphKind::Kneser)]
    pub graph: GraphKind,

    /// Kneser ground-set size (graph = kneser).
    #[arg(long)]
    pub n: Option<u32>,
    /// Kneser uniformity (graph = kneser).
    #[arg(long)]
    pub r: Option<u32>,

    /// Vertex count (graph = gnp).
    #[arg(long)]
    pub nv: Option<usize>,
    /// Edge probability (graph = gnp).
    #[arg(long)]
    pub p: Option<f64>,
    /// Seed for the random graph (graph = gnp).
    #[arg(long = "graph-seed", default_value_t = 0)]
    pub graph_seed: u64,

    /// The sparse set U as a family file (kneser graphs).
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// The sparse set U as comma-separated vertex ids.
    #[arg(long)]
    pub subset: Option<String>,
    /// Use the greedy independent set as U.
    #[arg(long, default_value_t = false)]
    pub greedy: bool,

    /// Density budget, exact rational like "1/10" (mu(U) <= a required).
    #[arg(long)]
    pub a: String,
    /// Degree parameter, exact rational like "1/3"; must be positive.
    #[arg(long)]
    pub b: String,

    #[arg(long, value_enum, default_value_t = OrderingKind::Colex)]
    pub ordering: OrderingKind,
    #[arg(long = "order-seed", default_value_t = 0)]
    pub order_seed: u64,

    /// Rebuild the container from the fingerprint and check equality.
    #[arg(long, default_value_t = false)]
    pub replay: bool,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_container(args: ContainerArgs) -> Result<ExitCode> {
    let adjacency: Vec<Bitset> = match args.graph {
        GraphKind::Kneser => {
            let (n, r) = match (args.n, args.r) {
                (Some(n), Some(r)) => (n, r),
                _ => {
                    return Err(Error::domain(
                        "--graph kneser needs --n and --r".to_string(),
                    ))
                }
            };
            kneser_graph(n, r)?.adjacency().to_vec()
        }
        GraphKind::Gnp => {
            let (nv, p) = match (args.nv, args.p) {
                (Some(nv), Some(p)) => (nv, p),
                _ => return Err(Error::domain("--graph gnp needs --nv and --p".to_string())),
            };
            gnp_adjacency(nv, p, args.graph_seed)
        }
    };
    let ordering = match args.ordering {
        OrderingKind::Colex => VertexOrdering::Identity,
        OrderingKind::Random => VertexOrdering::Seeded(args.order_seed),
    };
    let graph = OrderedGraph::new(adjacency, ordering);
    let nv = graph.num_vertices();

    let u: Bitset = if let Some(path) = &args.family {
        if args.graph != GraphKind::Kneser {
            return Err(Error::domain(
                "--family only makes sense for --graph kneser".to_string(),
            ));
        }
        let fam = read_family(path)?;
        if (fam.n(), fam.r()) != (args.n.unwrap(), args.r.unwrap()) {
            return Err(Error::domain(format!(
                "family file is over [{}]^({}), graph is K({},{})",
                fam.n(),
                fam.r(),
                args.n.unwrap(),
                args.r.unwrap()
            )));
        }
        let mut set = Bitset::new(nv);
        for s in fam.members() {
            set.insert(s.rank() as usize);
        }
        set
    } else if let Some(spec) = &args.subset {
        let mut set = Bitset::new(nv);
        for tok in spec.split(',') {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad vertex id {tok:?}")))?;
            if v >= nv {
                return Err(Error::domain(format!("vertex {v} out of range [0,{nv})")));
            }
            set.insert(v);
        }
        set
    } else if args.greedy {
        greedy_independent_set(graph.adjacency())
    } else {
        return Err(Error::domain(
            "supply U via --family, --subset, or --greedy".to_string(),
        ));
    };

    let a = parse_rational(&args.a).map_err(Error::domain)?;
    let b = parse_rational(&args.b).map_err(Error::domain)?;

    // the density precondition gets its own diagnostic and exit code 1
    let mu_u = graph.mu(&u);
    if mu_u > a {
        eprintln!("precondition failed: mu(U) = {mu_u} exceeds a = {a}");
        return Ok(ExitCode::from(1));
    }

    let run = build_container(&graph, &u, &a, &b)?;
    let mut doc = run.to_json(&graph);
    if args.replay {
        let replay = reconstruct_container(&graph, &run.fingerprint, &a, &b)?;
        let identical = replay == run.container;
        doc["reconstruction"] = serde_json::json!(if identical { "identical" } else { "MISMATCH" });
        if !identical {
            let rendered = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
            write_output(args.out.as_deref(), &rendered)?;
            return Err(Error::invariant(
                "replay from fingerprint did not reproduce the container".to_string(),
            ));
        }
    }
    let rendered = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// shadow

#[derive(Args)]
pub struct ShadowArgs {
    /// Family file to analyse.
    #[arg(long)]
    pub family: PathBuf,
    /// Shadow level; defaults to r - 1.
    #[arg(long)]
    pub k: Option<u32>,
    /// Also run the extremal-size edge-count pipeline and print its trace.
    #[arg(long, default_value_t = false)]
    pub pipeline: bool,
    #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
    pub cap: usize,
    /// Write the exact shadow family to this path.
    #[arg(long = "emit-shadow")]
    pub emit_shadow: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_shadow(args: ShadowArgs) -> Result<ExitCode> {
    let fam = read_family(&args.family)?;
    let k = match args.k {
        Some(k) => k,
        None if fam.r() >= 2 => fam.r() - 1,
        None => {
            return Err(Error::domain(
                "--k is required for 1-uniform families".to_string(),
            ))
        }
    };
    if fam.is_empty() {
        return Err(Error::domain("family is empty".to_string()));
    }
    let sh = shadow_exact(&fam, k)?;
    let bound = lovasz_shadow_bound(fam.len() as u64, fam.r(), k)?;
    if let Some(path) = &args.emit_shadow {
        write_atomic(path, &serialize_family(&sh))?;
    }
    let pipeline = if args.pipeline {
        Some(kk_edge_lower_bound(&fam, args.cap)?)
    } else {
        None
    };

    let rendered = match args.format {
        TextFormat::Json => {
            let mut doc = serde_json::json!({
                "n": fam.n(),
                "r": fam.r(),
                "size": fam.len(),
                "k": k,
                "exact_shadow_size": sh.len(),
                "lovasz_x": bound.lovasz_x,
                "lovasz_bound": bound.lovasz_bound,
            });
            if let Some((b, trace)) = &pipeline {
                doc["pipeline_bound"] = serde_json::json!(b);
                doc["pipeline_trace"] = serde_json::to_value(trace).unwrap();
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        TextFormat::Text => {
            let mut s = format!(
                "family: [{}]^({}), {} members\nshadow level {k}: exact size {}, \
                 bound {:.6} at x = {:.6}\n",
                fam.n(),
                fam.r(),
                fam.len(),
                sh.len(),
                bound.lovasz_bound,
                bound.lovasz_x
            );
            if let Some((b, trace)) = &pipeline {
                s.push_str(&format!(
                    "pipeline bound: {b}\ntrace: {}\n",
                    serde_json::to_string(trace).unwrap()
                ));
            }
            s
        }
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// Strip parameter for the container-theorem evaluators.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Container balance parameter.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Edge counts m, comma separated.
    #[arg(long)]
    pub m: Option<String>,
    /// Retention probabilities p, comma separated.
    #[arg(long)]
    pub p: Option<String>,
    /// Excess sizes k, comma separated.
    #[arg(long)]
    pub k: Option<String>,
    /// Measure the empirical stability ratio max(deficiency/ell) over this
    /// many sampled families.
    #[arg(long = "stability-trials")]
    pub stability_trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(spec: &str, what: &str) -> Result<Vec<T>> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::domain(format!("bad {what} value {tok:?}")))
        })
        .collect()
}

pub fn run_bounds(args: BoundsArgs) -> Result<ExitCode> {
    let params = KneserParams::new(args.n, args.r)?;
    let mut doc = serde_json::json!({
        "n": args.n,
        "r": args.r,
        "num_vertices": params.num_vertices().to_string(),
        "star_size": params.star_size().to_string(),
        "star_codegree": params.star_codegree().to_string(),
        "set_pairs_bound": params.set_pairs_bound().to_string(),
    });
    let mut text = format!(
        "K({},{}): V = {}, N = {}, M = {}, R = {}\n",
        args.n,
        args.r,
        params.num_vertices(),
        params.star_size(),
        params.star_codegree(),
        params.set_pairs_bound()
    );

    if let Some(m_spec) = &args.m {
        let ms: Vec<u64> = parse_list(m_spec, "m")?;
        if let (Some(eps), Some(beta)) = (args.epsilon, args.beta) {
            let mut rows = Vec::new();
            for &m in &ms {
                let bp = babycont_params(&params, eps, beta, m)?;
                text.push_str(&format!(
                    "containers (eps={eps}, beta={beta}, m={m}): k1 = {:.6e}, k2 = {:.6e}, \
                     ln count = {:.6e}{}\n",
                    bp.k1,
                    bp.k2,
                    bp.log_container_count,
                    if bp.vacuous {
                        " [vacuous: k1 >= V/3]"
                    } else {
                        ""
                    }
                ));
                rows.push(serde_json::to_value(&bp).unwrap());
            }
            doc["babycont"] = serde_json::Value::Array(rows);
        }
        if let Some(eps) = args.epsilon {
            let mut rows = Vec::new();
            for &m in &ms {
                match ym_log_bound(&params, eps, m, args.beta) {
                    Ok(v) => {
                        text.push_str(&format!("ln Y_{m} bound (eps={eps}): {v:.6e}\n"));
                        rows.push(serde_json::json!({"m": m, "ln_bound": v}));
                    }
                    Err(err) => {
                        text.push_str(&format!("ln Y_{m} bound: {err}\n"));
                        rows.push(serde_json::json!({"m": m, "error": err.to_string()}));
                    }
                }
            }
            doc["ym_log_bound"] = serde_json::Value::Array(rows);
        }
    }

    if let Some(k_spec) = &args.k {
        let ks: Vec<u64> = parse_list(k_spec, "k")?;
        let mut rows = Vec::new();
        for &k in &ks {
            let lb = supersat_lb(&params, k)?;
            text.push_str(&format!("supersaturation at N+{k}: e >= {lb}\n"));
            rows.push(serde_json::json!({"k": k, "edge_lower_bound": lb}));
        }
        doc["supersat_lb"] = serde_json::Value::Array(rows);
    }

    if let Some(p_spec) = &args.p {
        let ps: Vec<f64> = parse_list(p_spec, "p")?;
        let mut rows = Vec::new();
        for &p in &ps {
            let ey = expected_y(&params, p)?;
            text.push_str(&format!(
                "E[Y] at p={p}: ln = {:.6}, value = {:.6e}\n",
                ey.ln(),
                ey.value()
            ));
            rows.push(serde_json::json!({"p": p, "ln": ey.ln(), "value": ey.value()}));
        }
        doc["expected_y"] = serde_json::Value::Array(rows);
    }

    if let Some(trials) = args.stability_trials {
        let ratio = kneser_core::extremal::friedgut_ratio_empirical(
            args.n, args.r, trials, args.seed, args.cap,
        )?;
        text.push_str(&format!(
            "empirical stability ratio over {trials} families: max deficiency/ell = {ratio}\n"
        ));
        doc["stability_ratio"] = serde_json::json!({"trials": trials, "max_ratio": ratio});
    }

    let rendered = match args.format {
        TextFormat::Json => format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
        TextFormat::Text => text,
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

//! Command line for motif-preserving spectral partitioning.
//!
//! Subcommands: `preprocess` (filter a network to its motif core and report
//! size statistics), `sweep` (emit per-prefix sweep profiles for one or more
//! ordering methods), `cluster` (recursive tensor spectral bisection), and
//! `verify` (cross-check the fast paths against the brute-force oracle on a
//! small input).
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 a solver did not
//! converge (outputs are still written).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use motifcut::baselines::run_baseline;
use motifcut::graph::{filter_to_motif_core, DirectedGraph, LoadStats};
use motifcut::mlpr::{solve_mlpr, MlprConfig};
use motifcut::oracle;
use motifcut::orderings::tsc_ordering;
use motifcut::partition::{cluster, partition_json, partition_tsv, Method, PartitionConfig};
use motifcut::sweep::{sweep, ScoreKind, SweepProfile};
use motifcut::tensor::{build_tensor, uniform_distribution, TensorKind, TransitionTensor};

const USAGE: &str = "\
usage: motifcut <command> [flags]

commands:
  preprocess --input <file> [--tensor <kind>] --out <file>
      Keep only edges in at least one motif instance, restrict to the
      largest strongly connected component, and write the core as a
      0-based edge list plus a `<out>.map` sidecar with lines
      `internal_id original_label`. Prints `n m motifs` on stdout.

  sweep --input <file> [--method <m>[,<m>...]] [--tensor <kind>]
        [--alpha <a>] [--gamma <g>] [--tol <t>] [--max-iters <n>]
        [--score <s>] [--kmin <k>] [--seed <n>] --out <file>
      Write one sweep profile per method. With several methods the output
      name gains a `.<method>` suffix before the extension. An `.json`
      extension selects the JSON mirror of the CSV.

  cluster --input <file> [--tensor <kind>] --clusters <c>
          [--alpha <a>] [--gamma <g>] [--tol <t>] [--max-iters <n>]
          [--score <s>] [--kmin <k>] --out <file>
      Recursive tensor spectral bisection into <c> clusters; writes the
      partition as JSON to <out> and as `label<TAB>cluster` lines to
      `<out>.tsv`.

  verify --input <file> [--max-n <n>]
      Re-derive motif tensors, the collapsed matrix, the fixed point, and
      sweep rows with the brute-force oracle and compare.

flags:
  --tensor: edge | triangle | d3c | d3c-norecip | layered   (default d3c)
  --method: tsc | ul | dl | al | co | random | subdl        (default tsc)
  --score:  cond | ncut | exp | cond3 | exp3                (default cond3)
  defaults: alpha 0.99, gamma 0.01, tol 1e-10, max-iters 10000,
            kmin 20 for sweep (clamped to n/2) and 1 for cluster, seed 0

environment:
  MOTIFCUT_DATA  directory searched for --input paths that do not exist
                 relative to the working directory
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => usage(&msg),
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Usage problems exit 1; anything wrong with the data or solvers exits 2.
enum CliError {
    Usage(String),
    Data(String),
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Data(msg)
    }
}

type CliResult<T> = Result<T, CliError>;

struct Flags {
    values: HashMap<String, String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, String> {
        let mut values = HashMap::new();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let name = flag
                .strip_prefix("--")
                .ok_or_else(|| format!("unexpected argument {flag:?}"))?;
            let value = it
                .next()
                .ok_or_else(|| format!("flag --{name} needs a value"))?;
            values.insert(name.to_string(), value.clone());
        }
        Ok(Flags { values })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    fn required(&self, name: &str) -> CliResult<&str> {
        self.get(name)
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{name}")))
    }

    fn parse_with<T, F: Fn(&str) -> Option<T>>(
        &self,
        name: &str,
        default: T,
        f: F,
    ) -> CliResult<T> {
        match self.get(name) {
            None => Ok(default),
            Some(raw) => {
                f(raw).ok_or_else(|| CliError::Usage(format!("bad value for --{name}: {raw:?}")))
            }
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("{msg}");
    eprint!("{USAGE}");
    ExitCode::from(1)
}

fn run(args: &[String]) -> CliResult<ExitCode> {
    let Some(command) = args.first() else {
        return Ok(usage("missing command"));
    };
    let flags = match Flags::parse(&args[1..]) {
        Ok(f) => f,
        Err(e) => return Ok(usage(&e)),
    };
    // Required flags are validated by each command; value errors are usage
    // errors, everything downstream is a data error.
    match command.as_str() {
        "preprocess" => cmd_preprocess(&flags),
        "sweep" => cmd_sweep(&flags),
        "cluster" => cmd_cluster(&flags),
        "verify" => cmd_verify(&flags),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(ExitCode::SUCCESS)
        }
        other => Ok(usage(&format!("unknown command {other:?}"))),
    }
}

fn resolve_input(raw: &str) -> CliResult<PathBuf> {
    let p = PathBuf::from(raw);
    if p.exists() {
        return Ok(p);
    }
    if let Ok(dir) = std::env::var("MOTIFCUT_DATA") {
        let alt = Path::new(&dir).join(raw);
        if alt.exists() {
            return Ok(alt);
        }
    }
    Err(CliError::Data(format!("input file not found: {raw}")))
}

fn load_graph(flags: &Flags) -> CliResult<(DirectedGraph, LoadStats)> {
    let path = resolve_input(flags.required("input")?)?;
    let file = File::open(&path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    DirectedGraph::load_edge_list(BufReader::new(file)).map_err(|e| CliError::Data(e.to_string()))
}

fn tensor_kind(flags: &Flags) -> CliResult<TensorKind> {
    flags.parse_with("tensor", TensorKind::D3c, TensorKind::parse)
}

fn cmd_preprocess(flags: &Flags) -> CliResult<ExitCode> {
    let (g, stats) = load_graph(flags)?;
    let kind = tensor_kind(flags)?;
    let out = flags.required("out")?;
    let tensor = build_tensor(&g, kind);
    let core = filter_to_motif_core(&g, &tensor).map_err(|e| e.to_string())?;
    let core_tensor = build_tensor(&core.graph, kind);

    let mut w = BufWriter::new(File::create(out).map_err(|e| e.to_string())?);
    for (u, v) in core.graph.edges() {
        writeln!(w, "{u} {v}").map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;
    let map_path = format!("{out}.map");
    let mut w = BufWriter::new(File::create(&map_path).map_err(|e| e.to_string())?);
    for v in 0..core.graph.n() as u32 {
        writeln!(w, "{v} {}", core.graph.label(v)).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;

    eprintln!(
        "loaded n={} m={} (dropped {} self-loops, {} duplicates); core keeps n={} m={}",
        g.n(),
        g.m(),
        stats.self_loops_dropped,
        stats.duplicates_dropped,
        core.graph.n(),
        core.graph.m()
    );
    println!(
        "{} {} {}",
        core.graph.n(),
        core.graph.m(),
        core_tensor.total_count()
    );
    Ok(ExitCode::SUCCESS)
}

struct SweepArgs {
    methods: Vec<Method>,
    kind: TensorKind,
    score: ScoreKind,
    k_min: usize,
    seed: u64,
    cfg: PartitionConfig,
}

fn sweep_args(flags: &Flags, default_kmin: usize) -> CliResult<SweepArgs> {
    let methods: Vec<Method> = flags
        .get("method")
        .unwrap_or("tsc")
        .split(',')
        .map(|m| {
            Method::parse(m.trim()).ok_or_else(|| CliError::Usage(format!("unknown method {m:?}")))
        })
        .collect::<CliResult<_>>()?;
    let kind = tensor_kind(flags)?;
    let score = flags.parse_with("score", ScoreKind::Cond3, ScoreKind::parse)?;
    let k_min = flags.parse_with("kmin", default_kmin, |s| s.parse().ok())?;
    let seed = flags.parse_with("seed", 0u64, |s| s.parse().ok())?;
    let cfg = PartitionConfig {
        alpha: flags.parse_with("alpha", 0.99, |s| s.parse().ok())?,
        gamma: flags.parse_with("gamma", 0.01, |s| s.parse().ok())?,
        tol: flags.parse_with("tol", 1e-10, |s| s.parse().ok())?,
        max_iters: flags.parse_with("max-iters", 10_000, |s| s.parse().ok())?,
        score,
        k_min,
        seed,
    };
    Ok(SweepArgs {
        methods,
        kind,
        score,
        k_min,
        seed,
        cfg,
    })
}

fn profile_for(
    g: &DirectedGraph,
    tensor: &motifcut::tensor::MotifTensor,
    method: Method,
    a: &SweepArgs,
    k_min: usize,
) -> Result<SweepProfile, String> {
    if method == Method::Tsc {
        let tt = TransitionTensor::normalize(g, tensor, uniform_distribution(g.n()))
            .map_err(|e| e.to_string())?;
        let mlpr = MlprConfig {
            alpha: a.cfg.alpha,
            gamma: a.cfg.gamma,
            v: uniform_distribution(g.n()),
            tol: a.cfg.tol,
            max_iters: a.cfg.max_iters,
        };
        let sol = solve_mlpr(&tt, &mlpr).map_err(|e| e.to_string())?;
        if !sol.converged {
            eprintln!(
                "warning: fixed point stopped at residual {:.3e} after {} iterations",
                sol.residual_1norm, sol.iterations
            );
        }
        let ord = tsc_ordering(&tt, &sol.x).map_err(|e| e.to_string())?;
        let mut profile = sweep(g, tensor, &ord, a.score, k_min);
        profile.converged = profile.converged && sol.converged;
        Ok(profile)
    } else {
        run_baseline(g, method, tensor, a.score, k_min, a.seed).map_err(|e| e.to_string())
    }
}

fn write_profile(profile: &SweepProfile, g: &DirectedGraph, path: &str) -> Result<(), String> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| format!("{path}: {e}"))?);
    let res = if path.ends_with(".json") {
        profile.write_json(g, &mut w)
    } else {
        profile.write_csv(g, &mut w)
    };
    res.and_then(|_| w.flush())
        .map_err(|e| format!("{path}: {e}"))
}

fn cmd_sweep(flags: &Flags) -> CliResult<ExitCode> {
    let (g, _) = load_graph(flags)?;
    let a = sweep_args(flags, 20)?;
    let out = flags.required("out")?.to_string();
    if g.n() < 2 {
        return Err(CliError::Data("graph has fewer than two nodes".into()));
    }
    let k_min = a.k_min.min((g.n() / 2).max(1));
    let tensor = build_tensor(&g, a.kind);
    if tensor.is_empty() && a.kind != TensorKind::Edge {
        return Err(CliError::Data(format!(
            "graph contains no '{}' motifs",
            a.kind.as_str()
        )));
    }

    let out_path = |method: Method| -> String {
        if a.methods.len() == 1 {
            return out.clone();
        }
        match out.rsplit_once('.') {
            Some((stem, ext)) => format!("{stem}.{}.{ext}", method.as_str()),
            None => format!("{out}.{}", method.as_str()),
        }
    };

    let mut all_converged = true;
    let results: Vec<(Method, Result<SweepProfile, String>)> = if a.methods.len() == 1 {
        vec![(
            a.methods[0],
            profile_for(&g, &tensor, a.methods[0], &a, k_min),
        )]
    } else {
        // Orderings are pure functions of shared immutable inputs; fan the
        // methods out across threads.
        std::thread::scope(|scope| {
            let handles: Vec<_> = a
                .methods
                .iter()
                .map(|&m| {
                    let (g, tensor, a) = (&g, &tensor, &a);
                    scope.spawn(move || (m, profile_for(g, tensor, m, a, k_min)))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    for (method, result) in results {
        let profile = result?;
        all_converged &= profile.converged;
        let path = out_path(method);
        write_profile(&profile, &g, &path)?;
        eprintln!(
            "wrote {path} ({} rows, method {})",
            profile.rows.len(),
            profile.method
        );
    }
    Ok(if all_converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_cluster(flags: &Flags) -> CliResult<ExitCode> {
    let (g, _) = load_graph(flags)?;
    let kind = tensor_kind(flags)?;
    let a = sweep_args(flags, 1)?;
    let c: usize = flags
        .required("clusters")?
        .parse()
        .map_err(|_| CliError::Usage("bad value for --clusters".into()))?;
    let out = flags.required("out")?.to_string();

    let p = cluster(&g, kind, &a.cfg, c).map_err(|e| e.to_string())?;
    for w in &p.warnings {
        eprintln!("warning: {w}");
    }
    let json = partition_json(&p, &g, Method::Tsc, kind, &a.cfg);
    std::fs::write(&out, json).map_err(|e| format!("{out}: {e}"))?;
    let tsv_path = format!("{}.tsv", out.strip_suffix(".json").unwrap_or(&out));
    std::fs::write(&tsv_path, partition_tsv(&p, &g)).map_err(|e| format!("{tsv_path}: {e}"))?;
    eprintln!(
        "wrote {out} and {tsv_path} ({} clusters)",
        p.cluster_count()
    );

    let unconverged = p
        .warnings
        .iter()
        .any(|w| w.contains("residual") || w.contains("align"));
    Ok(if unconverged {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(flags: &Flags) -> CliResult<ExitCode> {
    let (g, _) = load_graph(flags)?;
    let max_n = flags.parse_with("max-n", 50usize, |s| s.parse().ok())?;
    let max_n = max_n.min(oracle::MAX_ORACLE_NODES);
    if g.n() > max_n {
        return Err(CliError::Data(format!(
            "graph has {} nodes; verification is capped at {max_n}",
            g.n()
        )));
    }
    if g.n() < 2 {
        return Err(CliError::Data("graph has fewer than two nodes".into()));
    }
    let n = g.n();
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {}", name, if ok { "ok" } else { "MISMATCH" });
        if !ok {
            failures += 1;
        }
    };

    for kind in [
        TensorKind::Triangle,
        TensorKind::D3c,
        TensorKind::D3cNoRecip,
        TensorKind::Layered,
    ] {
        let fast = build_tensor(&g, kind);
        let brute = oracle::brute_motifs(&g, kind).map_err(|e| e.to_string())?;
        check(
            &format!("motif tensor ({})", kind.as_str()),
            fast.entries() == brute.entries(),
        );
    }

    let kind = [TensorKind::D3c, TensorKind::Layered, TensorKind::Triangle]
        .into_iter()
        .find(|&k| !build_tensor(&g, k).is_empty())
        .unwrap_or(TensorKind::Edge);
    let tensor = build_tensor(&g, kind);
    let tt = TransitionTensor::normalize(&g, &tensor, uniform_distribution(n))
        .map_err(|e| e.to_string())?;
    let mut rng = motifcut::rng::SplitMix64::new(0xC11ECC);
    let mut x: Vec<f64> = (0..n).map(|_| rng.next_f64() + 1e-3).collect();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
    let z: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
    let dense = oracle::dense_collapse(&tt, &x).map_err(|e| e.to_string())?;
    let col_ok = (0..n).all(|j| {
        let col: f64 = (0..n).map(|i| dense[i][j]).sum();
        (col - 1.0).abs() < 1e-12
    });
    check("collapsed matrix columns stochastic", col_ok);
    let left = tt.left_apply(&x, &z).map_err(|e| e.to_string())?;
    let left_ok = (0..n).all(|j| {
        let d: f64 = (0..n).map(|i| z[i] * dense[i][j]).sum();
        (d - left[j]).abs() < 1e-10
    });
    check("sparse collapse matches dense collapse", left_ok);

    let mlpr = MlprConfig::with_uniform_teleport(n);
    let sol = solve_mlpr(&tt, &mlpr).map_err(|e| e.to_string())?;
    check(
        "fixed-point certificate",
        sol.converged && sol.residual_1norm <= 1e-8 && sol.min_entry >= 0.0,
    );

    let ord = motifcut::orderings::random_ordering(n, 7);
    let profile = sweep(&g, &tensor, &ord, ScoreKind::Cond3, 1);
    let mut rows_ok = true;
    for row in &profile.rows {
        let mut in_s = vec![false; n];
        for &v in &profile.order[..row.k] {
            in_s[v as usize] = true;
        }
        let brute = oracle::brute_scores(&g, &tensor, &in_s).map_err(|e| e.to_string())?;
        rows_ok &= row.cut == brute.cut
            && row.vol_s == brute.vol_s
            && row.cut3 == brute.cut3
            && row.vol3_s == brute.vol3_s
            && (row.phi3 - brute.phi3).abs() < 1e-10;
    }
    check("sweep rows match brute-force scores", rows_ok);

    if failures == 0 {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Data(format!("{failures} check(s) failed")))
    }
}

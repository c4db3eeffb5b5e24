use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tautdr::intersection::{load_psi_cache, psi_integral, save_psi_cache};
use tautdr::pixton::{dr_report, pixton_class, r_polynomial, DRProblem, Verdict};
use tautdr::relative::{
    assemble_t0, assemble_t0_at, auto_truncation, enumerate_bipartite, loop_axiom_demo, Bounds, RootConfig,
    TopologicalType,
};
use tautdr::scalar::{format_rational, rational};
use tautdr::stable_graphs::{automorphism_count, enumerate_stable_graphs};

#[derive(Parser, Debug)]
#[command(name = "tautdr", version, about = "Exact computations with tautological classes and DR cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List stable graphs of type (g, n) up to isomorphism.
    StableGraphs {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        legs: usize,
    },
    /// Pixton's class, its constant term and the vanishing pairings.
    Dr {
        #[arg(long)]
        genus: u32,
        /// comma-separated weights summing to zero
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long)]
        degree: usize,
        /// first r of the interpolation window (default: just above the bound)
        #[arg(long)]
        r_samples: Option<u64>,
    },
    /// Partial sums of the loop axiom for the (P^1, pt) example.
    LoopDemo {
        #[arg(long)]
        k: i64,
    },
    /// Admissible bipartite graphs of a topological type and their t^0 terms.
    Bipartite {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        legs: usize,
        /// comma-separated nonzero contact orders
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        mu: Vec<i64>,
        /// curve degree (default: sum of mu)
        #[arg(long)]
        degree: Option<i64>,
        /// max 0-side vertices and max degree per vertex, as "m,b"
        #[arg(long, default_value = "2,2")]
        bounds: String,
    },
    /// Randomized consistency checks.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<tautdr::Error> for Failure {
    fn from(e: tautdr::Error) -> Self {
        let code = match e {
            tautdr::Error::PolynomialityViolation(_) | tautdr::Error::Truncation(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Output {
    body: String,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = std::env::var_os("TAUTDR_CACHE").map(PathBuf::from);
    if let Some(path) = &cache {
        if let Err(e) = load_psi_cache(path) {
            eprintln!("tautdr: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|out| {
        write_output(cli.out.as_deref(), &out.body)?;
        Ok(out.failed)
    });
    if let Some(path) = &cache {
        if let Err(e) = save_psi_cache(path) {
            eprintln!("tautdr: {e}");
        }
    }
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(f) => {
            eprintln!("tautdr: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_output(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::StableGraphs { genus, legs } => stable_graphs(*genus, *legs, cli.format),
        Command::Dr { genus, a, degree, r_samples } => dr(*genus, a, *degree, *r_samples, cli.format),
        Command::LoopDemo { k } => loop_demo(*k, cli.format),
        Command::Bipartite { genus, legs, mu, degree, bounds } => {
            bipartite(*genus, *legs, mu, *degree, bounds, cli.format)
        }
        Command::Selfcheck { seed, samples } => selfcheck(*seed, *samples, cli.format),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| usage(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn stable_graphs(g: u32, n: usize, format: Format) -> Result<Output, Failure> {
    let graphs = enumerate_stable_graphs(g, n)?;
    let rows: Vec<(usize, &tautdr::StableGraph, u64)> =
        graphs.iter().enumerate().map(|(i, gr)| (i, gr, automorphism_count(gr))).collect();
    let body = match format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(i, gr, aut)| {
                    let mut v = gr.to_json();
                    v["id"] = json!(i);
                    v["automorphisms"] = json!(aut);
                    v
                })
                .collect();
            pretty(&json!({"g": g, "n": n, "count": graphs.len(), "graphs": list}))
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(i, gr, aut)| {
                    let edges: Vec<String> = gr.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    vec![i.to_string(), join(gr.genera()), join(&edges), join(gr.legs()), aut.to_string()]
                })
                .collect();
            csv_table(&["id", "genera", "edges", "legs", "automorphisms"], &table)?
        }
        Format::Text => {
            let mut s = format!("(g, n) = ({g}, {n}): {} graphs\n", graphs.len());
            for (i, gr, aut) in &rows {
                let _ = writeln!(
                    s,
                    "#{i}: genera [{}], {} edges, legs at [{}], |Aut| = {aut}",
                    join(gr.genera()),
                    gr.num_edges(),
                    join(gr.legs())
                );
            }
            s
        }
    };
    Ok(Output { body, failed: false })
}

fn dr(g: u32, a: &[i64], d: usize, start: Option<u64>, format: Format) -> Result<Output, Failure> {
    let p = DRProblem::new(g, a.to_vec(), d)?;
    if let Some(r) = start {
        p.check_r(r)?;
    }
    let report = dr_report(&p, start)?;
    let verdict = report.verdict().map(Verdict::as_str);
    let integral = format_rational(&report.constant_term_integral);
    let pairings: Vec<(String, String)> = report
        .vanishing
        .iter()
        .flat_map(|v| &v.pairings)
        .map(|(id, q)| (id.clone(), format_rational(q)))
        .collect();
    let body = match format {
        Format::Json => pretty(&report.to_json()),
        Format::Csv => {
            let mut rows = vec![
                vec!["constant_term_integral".into(), String::new(), integral],
                vec!["verdict".into(), String::new(), verdict.unwrap_or("").into()],
            ];
            rows.extend(pairings.into_iter().map(|(id, q)| vec!["pairing".into(), id, q]));
            csv_table(&["kind", "generator", "value"], &rows)?
        }
        Format::Text => {
            let mut s = format!("g = {g}, A = ({}), d = {d}\n", join(a));
            let _ = writeln!(s, "samples r = {}", join(&report.rpoly.samples));
            let _ = writeln!(s, "held out r = {}", join(&report.rpoly.held_out));
            let _ = writeln!(s, "terms of P^(d,r): {}", report.rpoly.class.len());
            let _ = writeln!(s, "terms of the constant term: {}", report.constant_term.len());
            let _ = writeln!(s, "constant term integral: {integral}");
            for (id, q) in &pairings {
                let _ = writeln!(s, "pairing {id}: {q}");
            }
            let _ = writeln!(s, "verdict: {}", verdict.unwrap_or("none (d <= g)"));
            s
        }
    };
    Ok(Output { body, failed: report.verdict() == Some(Verdict::Fail) })
}

fn loop_demo(k: i64, format: Format) -> Result<Output, Failure> {
    if k < 1 {
        return Err(usage(format!("--k must be at least 1, got {k}")));
    }
    let rows = (1..=k).map(loop_axiom_demo).collect::<Result<Vec<_>, _>>()?;
    let body = match format {
        Format::Json => pretty(&json!({"rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>()})),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.k.to_string(), format_rational(&r.lhs), format_rational(&r.partial_rhs)])
                .collect();
            csv_table(&["K", "lhs", "partial_rhs"], &table)?
        }
        Format::Text => {
            let mut s = format!("{:>4}  {:>6}  {:>12}\n", "K", "lhs", "partial_rhs");
            for r in &rows {
                let _ = writeln!(s, "{:>4}  {:>6}  {:>12}", r.k, format_rational(&r.lhs), format_rational(&r.partial_rhs));
            }
            s
        }
    };
    Ok(Output { body, failed: false })
}

fn parse_bounds(s: &str) -> Result<Bounds, Failure> {
    let bad = || usage(format!("--bounds expects \"m,b\" with nonnegative integers, got {s:?}"));
    let (m, b) = s.split_once(',').ok_or_else(bad)?;
    let max_zero_vertices: usize = m.trim().parse().map_err(|_| bad())?;
    let max_vertex_degree: i64 = b.trim().parse().map_err(|_| bad())?;
    if max_vertex_degree < 0 {
        return Err(bad());
    }
    Ok(Bounds { max_zero_vertices, max_vertex_degree })
}

fn bipartite(
    g: u32,
    n: usize,
    mu: &[i64],
    degree: Option<i64>,
    bounds: &str,
    format: Format,
) -> Result<Output, Failure> {
    let bounds = parse_bounds(bounds)?;
    let beta = degree.unwrap_or_else(|| mu.iter().sum());
    let t = TopologicalType::new(g, n, beta, mu.to_vec())?;
    let config = RootConfig::default();
    let graphs = enumerate_bipartite(&t, &bounds)?;
    let mut entries = Vec::new();
    for (graph, aut) in &graphs {
        let t0 = if graph.zero_side().is_empty() {
            None
        } else {
            Some(assemble_t0(graph, config)?)
        };
        entries.push((graph, *aut, t0));
    }
    let body = match format {
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|(gr, aut, t0)| {
                    json!({
                        "graph": gr.to_json(),
                        "automorphisms": aut,
                        "t0": t0.as_ref().map(|p| p.to_json()),
                    })
                })
                .collect();
            pretty(&json!({
                "topological_type": t.to_json(),
                "bounds": {"max_zero_vertices": bounds.max_zero_vertices, "max_vertex_degree": bounds.max_vertex_degree},
                "root_config": config.to_json(),
                "count": graphs.len(),
                "graphs": list,
            }))
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = entries
                .iter()
                .enumerate()
                .map(|(i, (gr, aut, t0))| {
                    vec![
                        i.to_string(),
                        gr.zero_side().len().to_string(),
                        gr.infinity_side().len().to_string(),
                        gr.edges().len().to_string(),
                        aut.to_string(),
                        t0.as_ref().map(ToString::to_string).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_table(&["id", "zero_vertices", "infinity_vertices", "edges", "automorphisms", "t0"], &table)?
        }
        Format::Text => {
            let mut s = format!(
                "g = {g}, n = {n}, beta = {beta}, mu = ({}): {} graphs (roots: sigma {}, denominator {})\n",
                join(mu),
                graphs.len(),
                config.sigma.as_str(),
                config.denominator.as_str()
            );
            for (i, (gr, aut, t0)) in entries.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "#{i}: |S0| = {}, |Ginf| = {}, {} edges, h1 = {}, |Aut| = {aut}, t0 = {}",
                    gr.zero_side().len(),
                    gr.infinity_side().len(),
                    gr.edges().len(),
                    gr.h1(),
                    t0.as_ref().map_or("-".to_string(), ToString::to_string)
                );
            }
            s
        }
    };
    Ok(Output { body, failed: false })
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn selfcheck(seed: u64, samples: usize, format: Format) -> Result<Output, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    for (g, n, count) in [(0, 3, 1), (1, 1, 2), (0, 5, 26), (2, 0, 7)] {
        let got = enumerate_stable_graphs(g, n)?.len();
        checks.push(Check {
            name: format!("census({g},{n})"),
            passed: got == count,
            detail: format!("{got} graphs"),
        });
    }
    for (g, d, value) in [(0, vec![0, 0, 0], rational(1, 1)), (1, vec![1], rational(1, 24)), (2, vec![4], rational(1, 1152))] {
        let got = psi_integral(g, &d)?;
        checks.push(Check {
            name: format!("psi({g};{})", join(&d)),
            passed: got == value,
            detail: format_rational(&got),
        });
    }

    for _ in 0..samples {
        let (g, n) = if rng.gen_bool(0.5) { (0u32, rng.gen_range(3..=5usize)) } else { (1, rng.gen_range(1..=2usize)) };
        let mut a: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
        a.push(-a.iter().sum::<i64>());
        let dim = 3 * g as usize + n - 3;
        let d = rng.gen_range(0..=dim.min(2));
        let p = DRProblem::new(g, a.clone(), d)?;
        let poly = r_polynomial(&p)?;
        let r = poly.held_out.last().copied().unwrap_or(p.r_bound() + 1) + rng.gen_range(1..=5);
        let direct = pixton_class(&p, r)?;
        let passed = poly.eval(r).checked_sub(&direct)?.is_zero();
        checks.push(Check {
            name: format!("pixton(g={g},A=({}),d={d},r={r})", join(&a)),
            passed,
            detail: format!("{} terms", direct.len()),
        });
    }

    for _ in 0..samples {
        let g = rng.gen_range(0..=1u32);
        let mut mu: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=2)).collect();
        if rng.gen_bool(0.5) {
            mu.push(-rng.gen_range(1..=2));
        }
        let beta: i64 = mu.iter().sum();
        if beta < 0 {
            continue;
        }
        let t = TopologicalType::new(g, 0, beta, mu.clone())?;
        let config = RootConfig::default();
        let mut graphs = 0;
        let mut passed = true;
        for (graph, _) in enumerate_bipartite(&t, &Bounds::default())? {
            if graph.zero_side().is_empty() {
                continue;
            }
            graphs += 1;
            let n = auto_truncation(&graph, config)?;
            passed &= assemble_t0_at(&graph, config, n)? == assemble_t0_at(&graph, config, 2 * n + 2)?;
        }
        checks.push(Check {
            name: format!("t0-stable(g={g},mu=({}))", join(&mu)),
            passed,
            detail: format!("{graphs} graphs with rubber"),
        });
    }

    for k in [1, 4] {
        let row = loop_axiom_demo(k)?;
        checks.push(Check {
            name: format!("loop-demo(K={k})"),
            passed: row.partial_rhs == rational(2 + 2 * k, 1),
            detail: format!("lhs {} rhs {}", format_rational(&row.lhs), format_rational(&row.partial_rhs)),
        });
    }

    let failed = checks.iter().any(|c| !c.passed);
    let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let body = match format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "status": status(c.passed), "detail": c.detail}))
                .collect();
            pretty(&json!({"seed": seed, "checks": list, "status": status(!failed)}))
        }
        Format::Csv => {
            let table: Vec<Vec<String>> =
                checks.iter().map(|c| vec![c.name.clone(), status(c.passed).into(), c.detail.clone()]).collect();
            csv_table(&["check", "status", "detail"], &table)?
        }
        Format::Text => {
            let mut s = format!("seed {seed}\n");
            for c in &checks {
                let _ = writeln!(s, "{} {} ({})", status(c.passed), c.name, c.detail);
            }
            s
        }
    };
    Ok(Output { body, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_parse() {
        assert_eq!(parse_bounds("3, 1").ok().map(|b| (b.max_zero_vertices, b.max_vertex_degree)), Some((3, 1)));
        assert!(parse_bounds("3").is_err());
        assert!(parse_bounds("1,-1").is_err());
    }

    #[test]
    fn negative_weights_parse() {
        let cli = Cli::try_parse_from(["tautdr", "dr", "--genus", "0", "--a", "1,-1,0,0", "--degree", "1"]).unwrap();
        match cli.command {
            Command::Dr { a, .. } => assert_eq!(a, vec![1, -1, 0, 0]),
            _ => panic!("wrong subcommand"),
        }
    }
}

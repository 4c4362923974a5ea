//! `becurv`: Bakry-Émery curvature of graphs from the command line.
//!
//! Exit codes: 0 on success or when a condition holds, 1 for a definite
//! negative answer, 2 for usage and input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use becurv::classify::{self, ConjectureReport, Predicates, ScanReport, Theorem};
use becurv::curvature::{check_cd, curvature_profile, Dimension, CD_TOLERANCE};
use becurv::graph::BallComponent;
use becurv::io::{parse_graph, to_edge_list, to_graph6};
use becurv::{families, Laplacian, Vertex, VertexFunction, WeightedGraph};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "becurv", version, about = "Bakry-Émery curvature of weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named graph family member.
    Generate {
        /// path, cycle, star, complete, hypercube, star3-plus, star3-subdivided, friendship, paw, petersen
        family: String,
        /// Family size parameter (omitted for paw and petersen).
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Curvature K(G, x; N) per vertex.
    Curvature {
        /// Edge-list or graph6 file, `-` for stdin.
        file: PathBuf,
        #[arg(long, default_value_t = Laplacian::NonNormalized)]
        laplacian: Laplacian,
        /// Dimension parameter, repeatable; `inf` for N = ∞.
        #[arg(long = "dimension", default_value = "inf")]
        dimensions: Vec<Dimension>,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        json: bool,
        /// Include the minimizing function.
        #[arg(long)]
        witness: bool,
    },
    /// Decide CD(K, N) for the whole graph.
    #[command(name = "check-cd")]
    CheckCd {
        file: PathBuf,
        #[arg(long = "K", allow_hyphen_values = true)]
        k: f64,
        #[arg(long = "N", default_value = "inf")]
        n: Dimension,
        #[arg(long, default_value_t = CD_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = Laplacian::NonNormalized)]
        laplacian: Laplacian,
        #[arg(long)]
        json: bool,
    },
    /// Girth, C4 and triangle tests, punctured-ball components.
    Structure {
        file: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive CD(0, ∞) scan over small connected graphs.
    Scan {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long)]
        c4_free: bool,
        #[arg(long)]
        triangle_free: bool,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        #[arg(long, default_value_t = Laplacian::NonNormalized)]
        laplacian: Laplacian,
        /// Compare against a classification list: 2.2, 2.4, 2.5 or 2.6.
        #[arg(long)]
        verify_theorem: Option<Theorem>,
        /// Exploratory listing of long induced cycles in CD(0, ∞) graphs.
        #[arg(long, conflicts_with = "verify_theorem")]
        conjecture: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Negative,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("THREADS").ok().and_then(|t| t.parse::<usize>().ok()) {
        // Only fails if the pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let result = match cli.command {
        Command::Generate { family, params, format, output } => generate(&family, &params, format, output),
        Command::Curvature { file, laplacian, dimensions, vertex, json, witness } => {
            curvature(&file, laplacian, &dimensions, vertex.as_deref(), json, witness)
        }
        Command::CheckCd { file, k, n, tol, laplacian, json } => check(&file, laplacian, k, n, tol, json),
        Command::Structure { file, vertex, json } => structure(&file, vertex.as_deref(), json),
        Command::Scan { max_n, c4_free, triangle_free, min_degree, laplacian, verify_theorem, conjecture, json } => {
            let pred = Predicates { c4_free, triangle_free, min_degree };
            scan(max_n, pred, laplacian, verify_theorem, conjecture, json)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Twelve significant digits, shortest form.
fn num(v: f64) -> String {
    if !v.is_finite() {
        return if v > 0.0 { "inf".into() } else if v < 0.0 { "-inf".into() } else { "nan".into() };
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".into()
    } else if rounded.abs() < 1e-4 || rounded.abs() >= 1e12 {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

fn read_graph(file: &PathBuf, preset: Laplacian) -> Result<WeightedGraph, Failure> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?
    };
    Ok(parse_graph(&text, preset)?)
}

fn select_vertices(g: &WeightedGraph, vertex: Option<&str>) -> Result<Vec<Vertex>, Failure> {
    match vertex {
        Some(label) => Ok(vec![g.vertex(label)?]),
        None => Ok(g.vertices().collect()),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn generate(family: &str, params: &[String], format: Format, output: Option<PathBuf>) -> Outcome {
    let preset = Laplacian::NonNormalized;
    let arg = || -> Result<usize, Failure> {
        match params {
            [p] => p.parse().map_err(|_| Failure::Usage(format!("{family}: invalid parameter `{p}`"))),
            _ => Err(Failure::Usage(format!("{family} takes exactly one integer parameter"))),
        }
    };
    let no_arg = || -> Result<(), Failure> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Failure::Usage(format!("{family} takes no parameters")))
        }
    };
    let g = match family {
        "path" => families::path(arg()?, preset)?,
        "cycle" => families::cycle(arg()?, preset)?,
        "star" => families::star(arg()?, preset)?,
        "complete" => families::complete(arg()?, preset)?,
        "hypercube" => {
            let d = u32::try_from(arg()?).map_err(|_| Failure::Usage("hypercube dimension too large".into()))?;
            families::hypercube(d, preset)?
        }
        "star3-plus" => families::star3_plus(arg()?, preset)?,
        "star3-subdivided" => families::star3_subdivided(arg()?, preset)?,
        "friendship" => families::friendship(arg()?, preset)?,
        "paw" => {
            no_arg()?;
            families::paw(preset)
        }
        "petersen" => {
            no_arg()?;
            families::petersen(preset)
        }
        other => return Err(Failure::Usage(format!("unknown family `{other}`"))),
    };
    let text = match format {
        Format::Edgelist => to_edge_list(&g),
        Format::Graph6 => to_graph6(&g)? + "\n",
    };
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct CurvatureRecord<'a> {
    vertex: &'a str,
    #[serde(rename = "N")]
    n: Dimension,
    #[serde(rename = "K", serialize_with = "becurv::curvature::serialize_extended")]
    k: f64,
    preset: Laplacian,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<(String, f64)>>,
}

fn labeled(g: &WeightedGraph, f: &VertexFunction) -> Vec<(String, f64)> {
    f.iter().map(|(v, x)| (g.label(v).to_string(), x)).collect()
}

fn format_witness(g: &WeightedGraph, f: &VertexFunction) -> String {
    f.iter().map(|(v, x)| format!("{}={}", g.label(v), num(x))).collect::<Vec<_>>().join(" ")
}

fn curvature(
    file: &PathBuf,
    preset: Laplacian,
    dims: &[Dimension],
    vertex: Option<&str>,
    json: bool,
    witness: bool,
) -> Outcome {
    let g = read_graph(file, preset)?;
    let vertices = select_vertices(&g, vertex)?;
    let mut records = Vec::new();
    for &x in &vertices {
        for r in curvature_profile(&g, x, dims)? {
            let w = if witness { r.witness.as_ref().map(|w| labeled(&g, w)) } else { None };
            records.push(CurvatureRecord { vertex: g.label(x), n: r.dimension, k: r.k, preset, witness: w });
        }
    }
    if json {
        return emit_json(&records);
    }
    let dims_text: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let mut out = io::stdout().lock();
    writeln!(out, "# laplacian: {preset}  N: {}", dims_text.join(", "))?;
    writeln!(out, "vertex\tN\tK")?;
    for r in &records {
        write!(out, "{}\t{}\t{}", r.vertex, r.n, num(r.k))?;
        if let Some(w) = &r.witness {
            let text: Vec<String> = w.iter().map(|(l, x)| format!("{l}={}", num(*x))).collect();
            write!(out, "\t{}", text.join(" "))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    holds: bool,
    #[serde(rename = "K")]
    k: f64,
    #[serde(rename = "N")]
    n: Dimension,
    tol: f64,
    preset: Laplacian,
    #[serde(serialize_with = "becurv::curvature::serialize_extended")]
    min_k: f64,
    violating_vertex: Option<&'a str>,
    witness: Option<Vec<(String, f64)>>,
}

fn check(file: &PathBuf, preset: Laplacian, k: f64, n: Dimension, tol: f64, json: bool) -> Outcome {
    if !k.is_finite() {
        return Err(Failure::Usage(format!("--K must be finite, got {k}")));
    }
    let g = read_graph(file, preset)?;
    let report = check_cd(&g, k, n, tol)?;
    if json {
        emit_json(&CheckRecord {
            holds: report.holds,
            k,
            n,
            tol,
            preset,
            min_k: report.min_k,
            violating_vertex: report.violating_vertex.map(|v| g.label(v)),
            witness: report.witness.as_ref().map(|w| labeled(&g, w)),
        })?;
    } else {
        let mut out = io::stdout().lock();
        writeln!(out, "# laplacian: {preset}  K: {}  N: {n}  tol: {tol:e}", num(k))?;
        if report.holds {
            writeln!(out, "HOLDS (min K = {})", num(report.min_k))?;
        } else {
            let v = report.violating_vertex.expect("failures name a vertex");
            writeln!(out, "FAILS at vertex {} (K = {})", g.label(v), num(report.min_k))?;
            if let Some(w) = &report.witness {
                writeln!(out, "witness: {}", format_witness(&g, w))?;
            }
        }
    }
    if report.holds {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

#[derive(Serialize)]
struct VertexStructure<'a> {
    vertex: &'a str,
    degree: usize,
    girth_at: Option<usize>,
    triangle: bool,
    components: Vec<BallComponent>,
}

#[derive(Serialize)]
struct StructureRecord<'a> {
    vertices: usize,
    edges: usize,
    girth: Option<usize>,
    c4_free: bool,
    triangle_free: bool,
    connected: bool,
    per_vertex: Vec<VertexStructure<'a>>,
}

fn structure(file: &PathBuf, vertex: Option<&str>, json: bool) -> Outcome {
    let g = read_graph(file, Laplacian::NonNormalized)?;
    let per_vertex = select_vertices(&g, vertex)?
        .into_iter()
        .map(|x| {
            Ok(VertexStructure {
                vertex: g.label(x),
                degree: g.degree(x),
                girth_at: g.girth_at(x)?,
                triangle: g.has_triangle_through(x)?,
                components: g.punctured_ball_components(x)?,
            })
        })
        .collect::<Result<Vec<_>, becurv::Error>>()?;
    let record = StructureRecord {
        vertices: g.len(),
        edges: g.edge_count(),
        girth: g.girth(),
        c4_free: g.is_c4_free(),
        triangle_free: g.is_triangle_free(),
        connected: g.is_connected(),
        per_vertex,
    };
    if json {
        return emit_json(&record);
    }
    let girth = |x: Option<usize>| x.map_or("inf".to_string(), |v| v.to_string());
    let mut out = io::stdout().lock();
    writeln!(out, "vertices: {}  edges: {}  connected: {}", record.vertices, record.edges, record.connected)?;
    writeln!(out, "girth: {}", girth(record.girth))?;
    writeln!(out, "c4-free: {}", record.c4_free)?;
    writeln!(out, "triangle-free: {}", record.triangle_free)?;
    writeln!(out, "vertex\tdegree\tgirth_at\ttriangle\tcomponents (r,s)")?;
    for v in &record.per_vertex {
        let comps: Vec<String> = v.components.iter().map(|c| format!("({},{})", c.r, c.s)).collect();
        writeln!(out, "{}\t{}\t{}\t{}\t{}", v.vertex, v.degree, girth(v.girth_at), v.triangle, comps.join(" "))?;
    }
    Ok(())
}

fn scan(
    max_n: usize,
    pred: Predicates,
    preset: Laplacian,
    theorem: Option<Theorem>,
    conjecture: bool,
    json: bool,
) -> Outcome {
    if conjecture {
        let mut report = classify::conjecture_scan(max_n)?;
        report.entries.retain(|e| e.preset == preset);
        return if json { emit_json(&report) } else { print_conjecture(&report, preset) };
    }
    let report = match theorem {
        Some(t) => {
            if t.preset() != preset || t.predicates() != pred {
                let want = t.predicates();
                return Err(Failure::Usage(format!(
                    "theorem {t} is checked with --laplacian {}{}{} --min-degree {}",
                    t.preset(),
                    if want.c4_free { " --c4-free" } else { "" },
                    if want.triangle_free { " --triangle-free" } else { "" },
                    want.min_degree,
                )));
            }
            classify::verify_theorem(t, max_n)?
        }
        None => classify::scan_classification(max_n, preset, &pred, None)?,
    };
    if json {
        emit_json(&report)?;
    } else {
        print_scan(&report)?;
    }
    if report.matches_expected() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn print_scan(r: &ScanReport) -> Outcome {
    let c = &r.constraints;
    let p = &c.predicates;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "# laplacian: {}  N: inf  max-n: {}  c4-free: {}  triangle-free: {}  min-degree: {}  threshold: -{:e}",
        c.preset, c.n_max, p.c4_free, p.triangle_free, p.min_degree, r.threshold
    )?;
    for note in &r.notes {
        writeln!(out, "# {note}")?;
    }
    writeln!(out, "enumerated: {}  satisfying CD(0,inf): {}", r.enumerated, r.satisfying.len())?;
    let by_graph = classify::entries_by_graph6(r);
    for g6 in &r.satisfying {
        let e = by_graph[g6.as_str()];
        writeln!(out, "  {g6}\tn={}\tmin K={}", e.n, num(e.min_k))?;
    }
    if let Some(theorem) = &r.theorem {
        writeln!(out, "theorem {theorem}: missing {:?}, unexpected {:?}", r.missing, r.unexpected)?;
        writeln!(out, "{}", if r.matches_expected() { "VERIFIED" } else { "MISMATCH" })?;
    }
    Ok(())
}

fn print_conjecture(r: &ConjectureReport, preset: Laplacian) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "# laplacian: {preset}  N: inf  max-n: {}  triangle-free: true  threshold: -{:e}", r.n_max, r.threshold)?;
    for note in &r.notes {
        writeln!(out, "# {note}")?;
    }
    writeln!(out, "examined: {}  satisfying CD(0,inf): {}", r.examined, r.entries.len())?;
    for e in r.entries.iter().filter(|e| !e.induced_cycle_lengths.is_empty()) {
        let tag = if e.is_long_cycle { "cycle" } else { "candidate exception" };
        writeln!(out, "  {}\tn={}\tmin K={}\tinduced {:?}\t{tag}", e.graph6, e.n, num(e.min_k), e.induced_cycle_lengths)?;
    }
    Ok(())
}

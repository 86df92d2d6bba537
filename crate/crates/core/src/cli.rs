//! Command-line front end: `generate`, `verify`, `jarnik`, `bench`.
//!
//! Exit codes: 0 on success or a verified double circle, 1 for domain errors
//! and failed verification, 2 for unparseable input.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    build_double_circle, jarnik_counts, jarnik_polygon, naive_symmetric, quadratic_baseline, PointSet, Role,
};
use crate::error::Error;
use crate::lattice::LatticeVector;
use crate::verification::{convex_hull, grid_size, is_double_circle, label_roles};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "double-circle", version, about = "Integer double circles and Jarnik polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// O(n^{3/2}) construction from visible vectors
    Doublecircle,
    /// quadratic construction on the parabola y = x^2 + x
    Baseline,
    /// quadratic construction from (1,1), ..., (1,n); n must be even
    Naive,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Doublecircle => "doublecircle",
            Method::Baseline => "baseline",
            Method::Naive => "naive",
        }
    }

    pub fn build(self, n: usize) -> Result<PointSet, Error> {
        match self {
            Method::Doublecircle => build_double_circle(n),
            Method::Baseline => quadratic_baseline(n),
            Method::Naive => naive_symmetric(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Points,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a 2n-point set and print it.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Doublecircle)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OutputFormat::Points)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG pixels per grid unit
        #[arg(long, default_value_t = 10)]
        scale: u32,
    },
    /// Read `x y` lines and check the double-circle conditions.
    Verify {
        /// Point file; standard input when omitted
        input: Option<PathBuf>,
    },
    /// Print the Jarnik polygon of order Q with its exact counts.
    Jarnik {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Points)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        scale: u32,
    },
    /// Time the double-circle construction; CSV on standard output.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [65536usize, 131072, 262144, 524288, 1048576])]
        n: Vec<usize>,
        /// Timed runs per n; the median is reported
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected two integers, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads `x y` pairs, one per line; blank lines and `#` comments are skipped.
pub fn parse_points(input: &mut dyn BufRead) -> Result<Vec<LatticeVector>, ParseError> {
    let mut points = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let malformed = || ParseError::Malformed { line: idx + 1, text: text.to_string() };
        let mut fields = text.split_whitespace();
        let x = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        let y = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        points.push(LatticeVector::new(x, y));
    }
    Ok(points)
}

pub fn render_points(set: &PointSet, header: &str) -> String {
    let mut s = String::with_capacity(16 * set.len() + header.len() + 4);
    let _ = writeln!(s, "# {header}");
    for p in set.points() {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    s
}

#[derive(Serialize)]
struct JsonPoint {
    x: i64,
    y: i64,
    role: Role,
}

fn json_points(set: &PointSet) -> Vec<JsonPoint> {
    set.points().iter().zip(set.labels()).map(|(p, &role)| JsonPoint { x: p.x, y: p.y, role }).collect()
}

#[derive(Serialize)]
struct GenerateJson<'a> {
    n: usize,
    method: &'a str,
    #[serde(rename = "N")]
    grid_size: u64,
    points: Vec<JsonPoint>,
}

#[derive(Serialize)]
struct JarnikJson {
    q: u64,
    vertex_count: u64,
    #[serde(rename = "size_S")]
    size_s: u64,
    vertex_ratio: f64,
    size_ratio: f64,
    #[serde(rename = "N")]
    grid_size: u64,
    points: Vec<JsonPoint>,
}

/// SVG drawing of a labelled set: hull polygon, filled hull vertices, hollow
/// inner points. The y axis points up.
pub fn render_svg(set: &PointSet, scale: u32, title: &str) -> Result<String, Error> {
    let pts = set.points();
    if pts.is_empty() {
        return Err(Error::Domain("nothing to draw".into()));
    }
    let min_x = pts.iter().map(|p| p.x).min().unwrap();
    let max_y = pts.iter().map(|p| p.y).max().unwrap();
    let size = grid_size(set) as i128;
    let scale = scale.max(1) as i128;
    let side = (size + 2) * scale;
    let px = |p: &LatticeVector| ((p.x as i128 - min_x as i128 + 1) * scale, (max_y as i128 - p.y as i128 + 1) * scale);
    let radius = (scale / 3).max(1);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    let _ = writeln!(s, "  <title>{title}</title>");
    let _ = writeln!(s, r#"  <rect width="{side}" height="{side}" fill="white"/>"#);
    if let Ok(hull) = convex_hull(set) {
        let coords: Vec<String> = hull.points().iter().map(|p| px(p)).map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(s, r#"  <polygon class="hull" points="{}" fill="none" stroke="black" stroke-width="1"/>"#, coords.join(" "));
    }
    for (p, role) in pts.iter().zip(set.labels()) {
        let (x, y) = px(p);
        let (class, fill) = match role {
            Role::HullVertex => ("hull-vertex", "black"),
            Role::InnerPoint => ("inner-point", "white"),
            Role::Unlabeled => ("point", "gray"),
        };
        let _ = writeln!(s, r#"  <circle class="{class}" cx="{x}" cy="{y}" r="{radius}" fill="{fill}" stroke="black"/>"#);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, body: &str) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn fail(stderr: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    EXIT_FAILURE
}

/// Runs one command against the given streams and returns the exit code.
pub fn run(cli: &Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Generate { n, method, format, out, scale } => {
            let set = match method.build(*n).and_then(|s| label_roles(&s)) {
                Ok(s) => s,
                Err(e) => return fail(stderr, e),
            };
            let size = grid_size(&set);
            let body = match format {
                OutputFormat::Points => render_points(&set, &format!("n={n} method={} N={size}", method.name())),
                OutputFormat::Json => {
                    let doc = GenerateJson { n: *n, method: method.name(), grid_size: size, points: json_points(&set) };
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                OutputFormat::Svg => match render_svg(&set, *scale, &format!("{} n={n} N={size}", method.name())) {
                    Ok(s) => s,
                    Err(e) => return fail(stderr, e),
                },
            };
            match emit(out, stdout, &body) {
                Ok(()) => EXIT_OK,
                Err(e) => fail(stderr, e),
            }
        }
        Command::Verify { input } => {
            let parsed = match input {
                Some(path) => match File::open(path) {
                    Ok(f) => parse_points(&mut io::BufReader::new(f)),
                    Err(e) => Err(ParseError::Io(e)),
                },
                None => parse_points(stdin),
            };
            let points = match parsed {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_PARSE;
                }
            };
            let set = PointSet::new(points);
            match is_double_circle(&set) {
                Ok(report) if report.passed => {
                    let _ = writeln!(stdout, "PASS n={} N={}", set.len() / 2, grid_size(&set));
                    EXIT_OK
                }
                Ok(report) => {
                    let tag = report.failed_condition.map(|c| c.tag()).unwrap_or("unknown");
                    let witness: Vec<String> = report.witness.iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(stdout, "FAIL {tag} witness={}", witness.join(","));
                    EXIT_FAILURE
                }
                Err(e) => fail(stderr, e),
            }
        }
        Command::Jarnik { q, format, out, scale } => {
            let built = jarnik_polygon(*q).and_then(|p| Ok((label_roles(&p)?, jarnik_counts(*q)?)));
            let (poly, summary) = match built {
                Ok(b) => b,
                Err(e) => return fail(stderr, e),
            };
            let size = grid_size(&poly);
            let body = match format {
                OutputFormat::Points => render_points(
                    &poly,
                    &format!(
                        "Q={q} vertex_count={} size_S={} vertex_ratio={:.6} size_ratio={:.6} N={size}",
                        summary.vertex_count,
                        summary.size_s,
                        summary.vertex_ratio(),
                        summary.size_ratio()
                    ),
                ),
                OutputFormat::Json => {
                    let doc = JarnikJson {
                        q: *q,
                        vertex_count: summary.vertex_count,
                        size_s: summary.size_s,
                        vertex_ratio: summary.vertex_ratio(),
                        size_ratio: summary.size_ratio(),
                        grid_size: size,
                        points: json_points(&poly),
                    };
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                OutputFormat::Svg => match render_svg(&poly, *scale, &format!("Jarnik Q={q}")) {
                    Ok(s) => s,
                    Err(e) => return fail(stderr, e),
                },
            };
            match emit(out, stdout, &body) {
                Ok(()) => EXIT_OK,
                Err(e) => fail(stderr, e),
            }
        }
        Command::Bench { n, repeats, out } => {
            let mut csv = String::from("n,wall_time_s,N,N_over_n_1_5\n");
            for &size in n {
                let mut times = Vec::with_capacity((*repeats).max(1));
                let mut grid = 0;
                for _ in 0..(*repeats).max(1) {
                    let start = Instant::now();
                    let built = build_double_circle(size);
                    times.push(start.elapsed().as_secs_f64());
                    match built {
                        Ok(set) => grid = grid_size(&set),
                        Err(e) => return fail(stderr, e),
                    }
                }
                times.sort_by(f64::total_cmp);
                let median = times[times.len() / 2];
                let ratio = grid as f64 / (size as f64).powf(1.5);
                let _ = writeln!(csv, "{size},{median:.6},{grid},{ratio:.6}");
            }
            match emit(out, stdout, &csv) {
                Ok(()) => EXIT_OK,
                Err(e) => fail(stderr, e),
            }
        }
    }
}

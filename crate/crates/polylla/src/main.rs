//! Command-line driver: read a Triangle-format triangulation or generate a
//! random one, convert it to a polygonal mesh, optionally verify, and export.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/output error,
//! 3 verification failure, 4 internal invariant violation.

use clap::Parser;
use polylla::export::{
    write_meshtxt, write_off, write_stats_json, write_svg, write_vtk, ExportOptions, PhaseTimings,
};
use polylla::generator::{random_delaunay, PointSetSpec};
use polylla::pipeline::{run_pipeline, PipelineResult};
use polylla::polymesh::verify;
use polylla::triangle_io::load_triangle_files;
use polylla::{PolyllaError, Triangulation};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "polylla",
    about = "Convert a 2D triangulation into a polygonal mesh via terminal-edge regions"
)]
struct Cli {
    /// Triangle .node file (vertices); requires --ele.
    #[arg(long)]
    node: Option<PathBuf>,
    /// Triangle .ele file (triangles); requires --node.
    #[arg(long)]
    ele: Option<PathBuf>,
    /// Triangle .neigh file (optional; derived from --ele when absent).
    #[arg(long)]
    neigh: Option<PathBuf>,
    /// Generate N random points in the unit square (plus its 4 corners).
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// PRNG seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Boundary snapping tolerance for --random (default 1e-9).
    #[arg(long)]
    gamma: Option<f64>,
    /// Write the polygonal mesh as OFF.
    #[arg(long, value_name = "PATH")]
    off: Option<PathBuf>,
    /// Write the polygonal mesh as legacy VTK polydata.
    #[arg(long, value_name = "PATH")]
    vtk: Option<PathBuf>,
    /// Render the polygonal mesh as SVG.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Write the mesh-array text dump.
    #[arg(long, value_name = "PATH")]
    meshtxt: Option<PathBuf>,
    /// Write statistics and phase timings as JSON.
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,
    /// Run the full invariant verification suite after conversion.
    #[arg(long)]
    verify: bool,
    /// Benchmark mode: comma-separated point counts, e.g. 1000,10000.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    bench: Option<Vec<usize>>,
    /// Repetitions for timing averages.
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Build polygons across threads (results are identical).
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(report)) => {
            eprintln!("verification failed:");
            for v in report {
                eprintln!("  - {v}");
            }
            ExitCode::from(3)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal invariant violation: {e}");
            ExitCode::from(4)
        }
    }
}

enum Failure {
    Usage(String),
    Input(PolyllaError),
    Verification(Vec<String>),
    Internal(PolyllaError),
}

impl From<PolyllaError> for Failure {
    fn from(e: PolyllaError) -> Self {
        match e {
            PolyllaError::Internal(_) => Failure::Internal(e),
            _ => Failure::Input(e),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.reps == 0 {
        return Err(Failure::Usage("--reps must be at least 1".into()));
    }
    if let Some(sizes) = &cli.bench {
        return bench(&cli, sizes);
    }
    let tri = load_input(&cli)?;

    // Average phase timings over the requested repetitions; the mesh itself
    // is identical across runs.
    let mut result: Option<PipelineResult<f64>> = None;
    let mut acc = PhaseTimings::default();
    for _ in 0..cli.reps {
        let r = run_pipeline(&tri, cli.parallel)?;
        acc.label_seconds += r.timings.label_seconds;
        acc.traversal_seconds += r.timings.traversal_seconds;
        acc.repair_seconds += r.timings.repair_seconds;
        acc.total_seconds += r.timings.total_seconds;
        result = Some(r);
    }
    let mut result = result.expect("at least one repetition");
    let reps = cli.reps as f64;
    result.timings = PhaseTimings {
        label_seconds: acc.label_seconds / reps,
        traversal_seconds: acc.traversal_seconds / reps,
        repair_seconds: acc.repair_seconds / reps,
        total_seconds: acc.total_seconds / reps,
    };

    if cli.verify {
        let report = verify(&result.mesh, &tri, &result.labels);
        if !report.is_valid() {
            return Err(Failure::Verification(report.violations));
        }
    }

    let opts = ExportOptions::default();
    let io = |e: std::io::Error| Failure::Input(PolyllaError::Io(e));
    if let Some(path) = &cli.off {
        std::fs::write(path, write_off(&result.mesh, &opts)).map_err(io)?;
    }
    if let Some(path) = &cli.vtk {
        std::fs::write(path, write_vtk(&result.mesh, &opts)).map_err(io)?;
    }
    if let Some(path) = &cli.svg {
        std::fs::write(path, write_svg(&result.mesh, &opts, None)).map_err(io)?;
    }
    if let Some(path) = &cli.meshtxt {
        std::fs::write(path, write_meshtxt(&result.mesh, &opts)).map_err(io)?;
    }
    if let Some(path) = &cli.stats {
        let text = write_stats_json(&result.stats, &result.timings)?;
        std::fs::write(path, text).map_err(io)?;
    }

    println!(
        "{} points, {} triangles -> {} polygons ({} regions, {} tips) in {:.3} ms",
        result.stats.input_points,
        result.stats.triangle_count,
        result.stats.polygon_count,
        result.stats.region_count,
        result.stats.tip_count,
        result.timings.total_seconds * 1e3
    );
    Ok(())
}

fn load_input(cli: &Cli) -> Result<Triangulation, Failure> {
    match (&cli.node, &cli.ele, cli.random) {
        (Some(node), Some(ele), None) => {
            let read = |p: &PathBuf| {
                std::fs::read_to_string(p).map_err(|e| {
                    Failure::Input(PolyllaError::Io(std::io::Error::new(
                        e.kind(),
                        format!("{}: {e}", p.display()),
                    )))
                })
            };
            let node_text = read(node)?;
            let ele_text = read(ele)?;
            let neigh_text = cli.neigh.as_ref().map(read).transpose()?;
            load_triangle_files(&node_text, &ele_text, neigh_text.as_deref())
                .map_err(Failure::from)
        }
        (None, None, Some(count)) => {
            let mut spec = PointSetSpec::new(count, cli.seed);
            if let Some(g) = cli.gamma {
                spec = spec.with_gamma(g);
            }
            random_delaunay(&spec).map_err(Failure::from)
        }
        (None, None, None) => Err(Failure::Usage(
            "choose an input: --node/--ele or --random N".into(),
        )),
        (Some(_), None, _) | (None, Some(_), _) => Err(Failure::Usage(
            "--node and --ele must be given together".into(),
        )),
        _ => Err(Failure::Usage(
            "--node/--ele and --random are mutually exclusive".into(),
        )),
    }
}

/// Benchmark mode: one CSV row per requested size with per-phase mean times.
fn bench(cli: &Cli, sizes: &[usize]) -> Result<(), Failure> {
    println!("n,triangles,polygons,label_s,traversal_s,repair_s,total_s");
    for &n in sizes {
        let mut spec = PointSetSpec::new(n, cli.seed);
        if let Some(g) = cli.gamma {
            spec = spec.with_gamma(g);
        }
        let tri = random_delaunay(&spec)?;
        let mut acc = PhaseTimings::default();
        let mut last = None;
        for _ in 0..cli.reps {
            let r = run_pipeline(&tri, cli.parallel)?;
            acc.label_seconds += r.timings.label_seconds;
            acc.traversal_seconds += r.timings.traversal_seconds;
            acc.repair_seconds += r.timings.repair_seconds;
            acc.total_seconds += r.timings.total_seconds;
            last = Some(r);
        }
        let r = last.expect("at least one repetition");
        let reps = cli.reps as f64;
        println!(
            "{},{},{},{:.6},{:.6},{:.6},{:.6}",
            n,
            r.stats.triangle_count,
            r.stats.polygon_count,
            acc.label_seconds / reps,
            acc.traversal_seconds / reps,
            acc.repair_seconds / reps,
            acc.total_seconds / reps
        );
        if acc.repair_seconds > acc.traversal_seconds {
            eprintln!("note: repair took longer than traversal for n = {n}");
        }
    }
    Ok(())
}

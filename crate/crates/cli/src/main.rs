use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bisar::analysis::{verify_scenario, Tolerances, DEFAULT_PHASE_TOL};
use bisar::imaging::{import_image_csv, render_magnitude, RenderSpec};
use bisar::report::simulate;
use bisar::{preset, Error, Point2D, Scenario, ScenarioConfig, PRESET_NAMES};
use clap::{Args, Parser, Subcommand};

/// Bistatic stepped-frequency SAR point-target simulator.
#[derive(Parser)]
#[command(name = "bisar", version)]
struct Cli {
    /// Worker threads for image reconstruction (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reconstruct a scenario and write image.csv, targets.json and magnitude.ppm.
    Simulate {
        #[command(flatten)]
        source: Source,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the magnitude/phase theorems on a scenario.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Phase tolerance in radians.
        #[arg(long, default_value_t = DEFAULT_PHASE_TOL)]
        tol: f64,
    },
    /// Render an image CSV to a binary PPM.
    Render {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Marker position `x,y` in meters; repeatable.
        #[arg(long = "marker", value_parser = parse_marker, allow_hyphen_values = true)]
        markers: Vec<Point2D>,
    },
    /// List the built-in scenarios, or write them as config files.
    Presets {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Scenario config file (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in scenario name.
    #[arg(long)]
    preset: Option<String>,
}

fn parse_marker(s: &str) -> Result<Point2D, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let x: f64 = x
        .trim()
        .parse()
        .map_err(|_| format!("bad x coordinate `{x}`"))?;
    let y: f64 = y
        .trim()
        .parse()
        .map_err(|_| format!("bad y coordinate `{y}`"))?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(format!("marker `{s}` is not finite"));
    }
    Ok(Point2D::new(x, y))
}

/// Exit codes: 0 ok, 1 theorem failure, 2 bad input, 3 I/O.
enum Failure {
    Theorem,
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn load(source: &Source) -> Result<Scenario, Failure> {
    let cfg = match (&source.config, &source.preset) {
        (Some(path), _) => ScenarioConfig::load(path).map_err(|e| match e {
            Error::Io { .. } => Failure::from(e),
            other => Failure::Input(format!("{}: {other}", path.display())),
        })?,
        (None, Some(name)) => preset(name).ok_or_else(|| {
            Failure::Input(format!(
                "unknown preset `{name}` (available: {})",
                PRESET_NAMES.join(", ")
            ))
        })?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let scenario = cfg.build()?;
    scenario.require_targets()?;
    Ok(scenario)
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| io_failure(path, e))
}

fn cmd_simulate(source: &Source, out: &Path) -> Result<(), Failure> {
    let scenario = load(source)?;
    let sim = simulate(&scenario)?;
    std::fs::create_dir_all(out).map_err(|e| io_failure(out, e))?;
    write(
        &out.join("image.csv"),
        bisar::imaging::image_to_csv(&sim.image).as_bytes(),
    )?;
    write(&out.join("targets.json"), sim.report.to_json().as_bytes())?;
    write(&out.join("magnitude.ppm"), &sim.raster.to_ppm())?;
    for (i, t) in sim.report.targets.iter().enumerate() {
        println!(
            "target {i} ({}, {}): {:.6} {:+.6}j  |v| = {:.6}  phase = {:.6}",
            t.x, t.y, t.re, t.im, t.magnitude, t.phase
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_verify(source: &Source, tol: f64) -> Result<(), Failure> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Input(format!("--tol must be positive, got {tol}")));
    }
    let scenario = load(source)?;
    let report = verify_scenario(&scenario, &Tolerances::with_phase(tol))?;
    println!(
        "M = {}, {} target(s), tol = {tol:e} rad",
        report.frequency_count,
        scenario.scene.len()
    );
    if report.verdicts.is_empty() {
        println!(
            "no theorem applies to {} targets; reporting the phase sum only",
            scenario.scene.len()
        );
    } else {
        println!(
            "{:<8} {:<11} {:<44} {:>13}",
            "theorem", "status", "observed", "residual"
        );
        for v in &report.verdicts {
            let observed = v
                .observed
                .iter()
                .map(|o| format!("{:.4}{:+.4}j", o.re, o.im))
                .collect::<Vec<_>>()
                .join(", ");
            println!(
                "{:<8} {:<11} {:<44} {:>13.6e}",
                v.theorem_id,
                v.status(),
                observed,
                v.residual
            );
        }
    }
    for (i, (p, v)) in scenario
        .scene
        .positions()
        .zip(&report.target_values)
        .enumerate()
    {
        println!(
            "target {i} ({}, {}): {:.6} {:+.6}j  |v| = {:.6}  phase = {:.6}",
            p.x, p.y, v.re, v.im, v.magnitude, v.phase
        );
    }
    println!("phase sum = {:.6}", report.phase_sum);
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Theorem)
    }
}

fn cmd_render(image: &Path, out: &Path, markers: &[Point2D]) -> Result<(), Failure> {
    let img = import_image_csv(image).map_err(|e| match e {
        Error::Io { .. } => Failure::from(e),
        other => Failure::Input(format!("{}: {other}", image.display())),
    })?;
    let spec = RenderSpec::with_markers(markers.to_vec());
    for m in spec.markers_outside(img.grid()) {
        eprintln!(
            "warning: marker ({}, {}) lies outside the image; clipped",
            m.x, m.y
        );
    }
    let raster = render_magnitude(&img, &spec)?;
    write(out, &raster.to_ppm())
}

fn cmd_presets(dir: Option<&Path>) -> Result<(), Failure> {
    for name in PRESET_NAMES {
        let cfg = preset(name).expect("listed preset exists");
        match dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
                write(&dir.join(format!("{name}.json")), cfg.to_json().as_bytes())?;
            }
            None => println!("{name}"),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Simulate { source, out } => cmd_simulate(source, out),
        Command::Verify { source, tol } => cmd_verify(source, *tol),
        Command::Render {
            image,
            out,
            markers,
        } => cmd_render(image, out, markers),
        Command::Presets { write } => cmd_presets(write.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Theorem) => {
            eprintln!("error: at least one theorem check failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

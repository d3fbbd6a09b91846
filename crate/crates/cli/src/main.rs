use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fockrange_core::catalog::ExampleId;
use fockrange_core::operator::{matrix_from_csv, matrix_from_json, matrix_to_csv};
use fockrange_core::report::check_region;
use fockrange_core::{
    build_truncation, membership, predict, run_example, sweep, verify, CMatrix, Complex64, Error, FieldOfValues,
    ModeSelection, PredictedRegion, RunOptions, RunReport, SymbolSpec,
};

mod svg;

#[derive(Parser)]
#[command(name = "fockrange", version, about = "Numerical ranges of weighted composition operators on the Fock space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the N x N truncation of C_{psi,phi}.
    BuildMatrix {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the field of values of a truncation or of a matrix file.
    Numrange {
        input: PathBuf,
        /// Treat INPUT as a CSV or JSON matrix instead of a symbol spec.
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Regions the closed-form results predict for a symbol.
    Predict {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full pipeline and report verdicts.
    Verify {
        spec: PathBuf,
        /// Extra region(s) to check, as JSON.
        #[arg(long)]
        region: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a worked example (2.5a, 2.5b, 3.2a, 3.2b, 3.2c or all).
    Examples {
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Render a report as SVG.
    Plot {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    angles: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Row index of the 2x2 compression.
    #[arg(long)]
    n: Option<usize>,
    /// Offset of the second basis vector of the compression.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Literal,
    Corrected,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

impl Common {
    fn options(&self, base: RunOptions) -> RunOptions {
        RunOptions {
            dim: self.dim.unwrap_or(base.dim),
            angles: self.angles.unwrap_or(base.angles),
            tol: self.tol.unwrap_or(base.tol),
            mode: match self.mode {
                Mode::Literal => ModeSelection::Literal,
                Mode::Corrected => ModeSelection::Corrected,
                Mode::Both => ModeSelection::Both,
            },
            n: self.n.or(base.n),
            m: self.m.or(base.m),
            ..base
        }
    }

    fn format(&self, allowed: &[Format], default: Format) -> anyhow::Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!(Error::InvalidInput("output format not supported by this command".into()));
        }
        Ok(f)
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_spec(path: &Path) -> anyhow::Result<SymbolSpec> {
    let text = read(path)?;
    SymbolSpec::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn sweep_csv(fov: &FieldOfValues) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theta", "h", "re_p", "im_p"])?;
    for ((t, h), p) in fov.angles.iter().zip(&fov.support).zip(&fov.boundary) {
        w.write_record([t.to_string(), h.to_string(), p.re.to_string(), p.im.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn load_matrix(path: &Path) -> anyhow::Result<CMatrix> {
    let text = read(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        matrix_from_json(&text)
    } else {
        matrix_from_csv(&text)
    };
    parsed.with_context(|| format!("in {}", path.display()))
}

fn load_regions(path: &Path) -> anyhow::Result<Vec<PredictedRegion>> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|r| vec![r])
    };
    Ok(parsed.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?)
}

fn report_output(report: &RunReport, common: &Common) -> anyhow::Result<()> {
    warn_all(&report.warnings);
    match common.format(&[Format::Json, Format::Svg], Format::Json)? {
        Format::Svg => emit(common.out.as_deref(), &svg::render_report(report)?),
        _ => emit(common.out.as_deref(), &report.to_json()),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::BuildMatrix { spec, common } => {
            let spec = load_spec(&spec)?;
            let op = build_truncation(&spec.symbol(), &spec.map()?, common.dim.unwrap_or(RunOptions::default().dim))?;
            warn_all(&op.warnings);
            let text = match common.format(&[Format::Csv, Format::Json], Format::Csv)? {
                Format::Json => serde_json::to_string_pretty(&op.to_json())?,
                _ => matrix_to_csv(&op.matrix)?,
            };
            emit(common.out.as_deref(), &text)?;
            Ok(false)
        }
        Command::Numrange { input, matrix, common } => {
            let opts = common.options(RunOptions::default());
            let m = if matrix {
                load_matrix(&input)?
            } else {
                let spec = load_spec(&input)?;
                let op = build_truncation(&spec.symbol(), &spec.map()?, opts.dim)?;
                warn_all(&op.warnings);
                op.matrix
            };
            let fov = sweep(&m, opts.angles)?;
            let text = match common.format(&[Format::Csv, Format::Json, Format::Svg], Format::Csv)? {
                Format::Csv => sweep_csv(&fov)?,
                Format::Json => {
                    let zero = membership(&fov, Complex64::new(0.0, 0.0), opts.tol);
                    serde_json::to_string_pretty(&serde_json::json!({
                        "dim": m.rows(),
                        "angles": opts.angles,
                        "hull_vertices": fov.hull(),
                        "area": fov.area(),
                        "max_support": fov.max_support(),
                        "contains_zero_verdict": zero,
                    }))?
                }
                Format::Svg => svg::render(&fov, &[])?,
            };
            emit(common.out.as_deref(), &text)?;
            Ok(false)
        }
        Command::Predict { spec, common } => {
            let spec = load_spec(&spec)?;
            let prediction = predict(&spec.symbol(), &spec.map()?, &common.options(RunOptions::default()))?;
            common.format(&[Format::Json], Format::Json)?;
            emit(common.out.as_deref(), &serde_json::to_string_pretty(&prediction)?)?;
            Ok(false)
        }
        Command::Verify { spec, region, common } => {
            let spec = load_spec(&spec)?;
            let opts = common.options(RunOptions::default());
            let mut report = verify(&spec.symbol(), &spec.map()?, &opts)?;
            if let Some(path) = region {
                let fov = report.field_of_values();
                for r in load_regions(&path)? {
                    report.push_verdict(check_region(&fov, &r, &opts));
                    report.regions.push(r);
                }
            }
            report_output(&report, &common)?;
            Ok(report.has_failure())
        }
        Command::Examples { id, common } => {
            let ids: Vec<ExampleId> = if id == "all" {
                ExampleId::ALL.to_vec()
            } else {
                vec![id.parse()?]
            };
            let opts = common.options(RunOptions::examples());
            let mut reports = Vec::new();
            for id in ids {
                let report = run_example(id, &opts)?;
                for v in &report.verdicts {
                    eprintln!("{id} {} {:?} margin {:e}", v.claim, v.status, v.margin);
                }
                reports.push(report);
            }
            let failed = reports.iter().any(RunReport::has_failure);
            if let [report] = reports.as_slice() {
                report_output(report, &common)?;
            } else {
                common.format(&[Format::Json], Format::Json)?;
                emit(common.out.as_deref(), &serde_json::to_string_pretty(&reports)?)?;
            }
            Ok(failed)
        }
        Command::Plot { report, out } => {
            let report = RunReport::from_json(&read(&report)?)?;
            emit(out.as_deref(), &svg::render_report(&report)?)?;
            Ok(false)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => 2,
        Some(Error::Hypothesis(_) | Error::Unbounded(_) | Error::NoFixedPoint) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("verification failed at this truncation");
            ExitCode::from(4)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

//! Command-line front end. Every subcommand writes a report (JSON or CSV) and exits with
//! 0 when all judged checks pass, 1 when one fails and 2 on a configuration error.

pub mod commands;
pub mod config;
pub mod report;

use crate::error::Error;
use crate::moebius::MoebiusMap;
use clap::{Args, Parser, Subcommand};
use config::{parse_complex, parse_map, OutputFormat, RunConfig};
use report::{PlotData, Report};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "moebius-ortho", version, about = "Moebius-transformed orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of Q_0..Q_N
    Table(CommonArgs),
    /// Q_n with construction and leading-coefficient checks, plus the image contour
    Transform(CommonArgs),
    /// Gram matrix on the image contour
    Gram(CommonArgs),
    /// Transformed differential equations at sample points
    OdeCheck(CommonArgs),
    /// Christoffel-Darboux identities at sample points
    CdCheck(CommonArgs),
    /// Pearson equations for the transformed weights
    PearsonCheck(CommonArgs),
    /// Rodrigues formulas against the recurrence
    RodriguesCheck(CommonArgs),
    /// Generating-function series against the recurrence
    GenfunCheck(CommonArgs),
    /// Zeros of Q_n and their location on the contour
    Zeros(CommonArgs),
    /// Interlacing of consecutive zero sets
    Interlace(CommonArgs),
    /// Generalized Bessel polynomials
    Bessel(CommonArgs),
    /// Romanovski polynomials
    Romanovski(CommonArgs),
    /// Jacobi to Laguerre and Hermite limits
    Limits(CommonArgs),
    /// Unit-circle zeros of Cayley-transformed families
    Cayley(CommonArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON run configuration; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Family parameter as "re" or "re,im"; repeat in the order (α, β)
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
    /// identity | inversion | cayley | cayley-line | a,b,c,d | 8 reals | four ';'-separated "re,im"
    #[arg(long, allow_hyphen_values = true)]
    map: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    panels: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Comma-separated increasing α values
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Sample points per identity check
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Report file; stdout when absent
    #[arg(long)]
    output: Option<PathBuf>,
    /// CSV file for zero and contour point lists
    #[arg(long)]
    plot: Option<PathBuf>,
}

type Runner = fn(&RunConfig, &mut Report, &mut PlotData) -> crate::Result<()>;

impl Command {
    fn parts(&self) -> (&'static str, &CommonArgs, Runner) {
        match self {
            Command::Table(a) => ("table", a, commands::table),
            Command::Transform(a) => ("transform", a, commands::transform),
            Command::Gram(a) => ("gram", a, commands::gram),
            Command::OdeCheck(a) => ("ode-check", a, commands::ode_check),
            Command::CdCheck(a) => ("cd-check", a, commands::cd_check),
            Command::PearsonCheck(a) => ("pearson-check", a, commands::pearson_check),
            Command::RodriguesCheck(a) => ("rodrigues-check", a, commands::rodrigues_check),
            Command::GenfunCheck(a) => ("genfun-check", a, commands::genfun_check),
            Command::Zeros(a) => ("zeros", a, commands::zeros),
            Command::Interlace(a) => ("interlace", a, commands::interlace),
            Command::Bessel(a) => ("bessel", a, commands::bessel),
            Command::Romanovski(a) => ("romanovski", a, commands::romanovski_cmd),
            Command::Limits(a) => ("limits", a, commands::limits),
            Command::Cayley(a) => ("cayley", a, commands::cayley),
        }
    }
}

fn default_map(command: &str) -> MoebiusMap {
    match command {
        "cayley" => MoebiusMap::cayley_to_circle(),
        "bessel" => MoebiusMap::inversion(),
        _ => MoebiusMap::identity(),
    }
}

fn resolve(command: &str, a: &CommonArgs) -> crate::Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::new("chebyshev", default_map(command), 4),
    };
    if let Some(f) = &a.family {
        cfg.family = f.clone();
    }
    if !a.params.is_empty() {
        cfg.params = a.params.iter().map(|s| parse_complex(s)).collect::<crate::Result<_>>()?;
    }
    if let Some(m) = &a.map {
        cfg.map = parse_map(m)?;
    }
    macro_rules! take {
        ($($field:ident <- $arg:ident),*) => {
            $(if let Some(v) = &a.$arg { cfg.$field = Some(v.clone()); })*
        };
    }
    take!(m <- m, nodes <- nodes, panels <- panels, tolerance <- tol, gamma <- gamma,
          beta <- beta, delta <- delta, alphas <- alphas, output <- output, plot <- plot);
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(p) = a.points {
        cfg.points = p;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(f) = a.format {
        cfg.format = f;
    }
    cfg.family_spec()?;
    cfg.scheme()?;
    if cfg.points == 0 {
        return Err(Error::InvalidArgument("--points must be positive".into()));
    }
    Ok(cfg)
}

fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_) | Error::DegenerateMap { .. } | Error::UnknownFamily(_) | Error::InadmissibleParameters(_)
    )
}

fn write_out(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

/// Runs one command; the return value is the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return 2;
        }
    };
    let (name, args, runner) = cli.command.parts();
    let cfg = match resolve(name, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut report = Report::new(name, &cfg);
    let mut plot = PlotData::new();
    if let Err(e) = runner(&cfg, &mut report, &mut plot) {
        eprintln!("error: {e}");
        return if is_config_error(&e) { 2 } else { 1 };
    }
    if let Err(e) = write_out(&cfg.output, &report.render(cfg.format)) {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    if let Some(p) = &cfg.plot {
        if let Err(e) = std::fs::write(p, plot.to_csv()) {
            eprintln!("error: cannot write plot data: {e}");
            return 2;
        }
    }
    if report.pass {
        0
    } else {
        let failed = report
            .results
            .iter()
            .filter(|r| r.pass == Some(false))
            .map(|r| r.name.as_str())
            .collect::<Vec<_>>();
        eprintln!("failed: {}", failed.join(", "));
        1
    }
}

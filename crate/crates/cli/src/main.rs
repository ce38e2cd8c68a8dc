mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_indec::bounds::{self, min_trace_upper};
use cubic_indec::codifferent::min_trace;
use cubic_indec::indecomposable::{closed_form_indecomposables, indecomposable_classes, match_closed_form};
use cubic_indec::verify::{self, CheckReport};
use cubic_indec::{Error, Family, OrderParams};
use rayon::prelude::*;

use output::{Format, Row, WitnessRow};

/// Indecomposable integers, minimal traces and norm bounds in simplest
/// cubic, Ennola and Thomas orders.
#[derive(Debug, Parser)]
#[command(name = "cubic-indec", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List indecomposables up to totally positive units.
    Enumerate(EnumerateArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Build an order with an indecomposable of minimal trace above N.
    Witness {
        n: u64,
        /// Confirm the minimal trace by exhaustive search.
        #[arg(long)]
        confirm: bool,
    },
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a_max: Option<i64>,
    #[arg(long)]
    b_min: Option<i64>,
    #[arg(long)]
    b_max: Option<i64>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Skip the exhaustive minimal-trace column.
    #[arg(long)]
    no_min_trace: bool,
    /// Also enumerate classes from the unit parallelepipeds and require
    /// agreement with the closed forms.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[command(flatten)]
    grid: GridArgs,
    /// Half-width of the (v₂, v₃) window for the lemma suites.
    #[arg(long, default_value_t = verify::LEMMA_WINDOW, value_parser = clap::value_parser!(i64).range(1..))]
    window: i64,
    #[arg(long, default_value_t = verify::POSITIVITY_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = verify::POSITIVITY_SEED)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Simplest,
    Ennola,
    Thomas,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Simplest => Family::SimplestCubic,
            FamilyArg::Ennola => Family::Ennola,
            FamilyArg::Thomas => Family::Thomas,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Simplest,
    Ennola,
    Thomas,
    Witness,
    Formulas,
    Lemmas,
    Positivity,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams { .. } | Error::Descriptor(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl GridArgs {
    fn range(exact: Option<i64>, lo: Option<i64>, hi: Option<i64>, name: &str) -> Result<(i64, i64), Failure> {
        match (exact, lo, hi) {
            (Some(x), None, None) => Ok((x, x)),
            (None, Some(lo), Some(hi)) => Ok((lo, hi)),
            (Some(_), _, _) => Err(Failure::Usage(format!("--{name} conflicts with --{name}-min/--{name}-max"))),
            _ => Err(Failure::Usage(format!("give --{name} or both --{name}-min and --{name}-max"))),
        }
    }

    /// Parameter grid in ascending `(a, b)` order. Thomas pairs violating
    /// `a ≤ b − 2` are skipped; anything else invalid is a usage error.
    fn params(&self) -> Result<Vec<OrderParams>, Failure> {
        let family: Family = self
            .family
            .ok_or_else(|| Failure::Usage("--family is required".into()))?
            .into();
        let (a_lo, a_hi) = Self::range(self.a, self.a_min, self.a_max, "a")?;
        let mut out = Vec::new();
        if family == Family::Thomas {
            let (b_lo, b_hi) = Self::range(self.b, self.b_min, self.b_max, "b")?;
            let single = a_lo == a_hi && b_lo == b_hi;
            for a in a_lo..=a_hi {
                for b in b_lo..=b_hi {
                    match OrderParams::thomas(a, b) {
                        Ok(p) => out.push(p),
                        Err(e) if single => return Err(e.into()),
                        Err(_) => {}
                    }
                }
            }
        } else {
            if self.b.is_some() || self.b_min.is_some() || self.b_max.is_some() {
                return Err(Failure::Usage(format!("{family} orders take no b parameter")));
            }
            for a in a_lo..=a_hi {
                out.push(OrderParams::new(family, a, None)?);
            }
        }
        if out.is_empty() {
            return Err(Failure::Usage("empty grid".into()));
        }
        Ok(out)
    }
}

fn enumerate(args: &EnumerateArgs) -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    for params in args.grid.params()? {
        let forms = closed_form_indecomposables(params);
        if args.cross_check {
            let classes = indecomposable_classes(params)?;
            let mut hit = vec![false; forms.len()];
            for c in &classes {
                let i = match_closed_form(c, &forms)?
                    .ok_or_else(|| Failure::Runtime(format!("{params}: class of {c} has no closed form")))?;
                hit[i] = true;
            }
            if let Some(i) = hit.iter().position(|h| !h) {
                return Err(Failure::Runtime(format!("{params}: {} not enumerated", forms[i])));
            }
        }
        let traces: Vec<Option<u64>> = forms
            .par_iter()
            .map(|d| {
                if args.no_min_trace {
                    return Ok(None);
                }
                let e = d.to_element();
                min_trace(&e, min_trace_upper(&e, Some(d))).map(Some)
            })
            .collect::<Result<_, _>>()?;
        rows.extend(forms.iter().zip(traces).map(|(d, t)| Row::new(d, t)));
    }
    Ok(rows)
}

fn verify_reports(args: &VerifyArgs) -> Result<Vec<CheckReport>, Failure> {
    let nb = |p| bounds::norm_bound(p).value;
    let has_grid = args.grid.family.is_some() || args.grid.a.is_some() || args.grid.a_max.is_some();
    let a_max = |default: i64| args.grid.a_max.unwrap_or(default);
    let reports = match args.suite {
        Suite::All => verify::run_acceptance()?,
        Suite::Simplest => {
            let lo = args.grid.a_min.unwrap_or(-1);
            let hi = a_max(*verify::SIMPLEST_CLASS_GRID.end());
            if lo > hi {
                return Err(Failure::Usage("empty grid".into()));
            }
            vec![
                verify::check_simplest_classes(lo..=hi)?,
                verify::check_simplest_bounds(lo..=hi, nb)?,
                verify::check_simplest_min_traces(lo..=hi)?,
            ]
        }
        Suite::Ennola => {
            let lo = args.grid.a_min.unwrap_or(*verify::ENNOLA_GRID.start());
            let hi = a_max(*verify::ENNOLA_GRID.end());
            if lo > hi {
                return Err(Failure::Usage("empty grid".into()));
            }
            vec![verify::check_ennola(lo..=hi, nb)?]
        }
        Suite::Thomas => {
            let grid: Vec<(i64, i64)> = if has_grid {
                args.grid.params()?.iter().map(|p| (p.a(), p.b().unwrap_or_default())).collect()
            } else {
                verify::THOMAS_GRID.to_vec()
            };
            vec![
                verify::check_thomas(&grid, bounds::min_trace_formula_thomas)?,
                verify::check_thomas_bounds(&grid)?,
            ]
        }
        Suite::Witness => vec![verify::check_witness(verify::WITNESS_GRID)?],
        Suite::Formulas => vec![verify::check_norm_formulas(Default::default())?],
        Suite::Lemmas if has_grid => args
            .grid
            .params()?
            .into_iter()
            .map(|p| verify::check_lemmas_for(p, args.window))
            .collect::<Result<_, _>>()?,
        Suite::Lemmas => vec![verify::check_lemmas()?],
        Suite::Positivity => vec![verify::check_positivity(args.samples, args.seed)?],
    };
    Ok(reports)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| Failure::Runtime(e.to_string());
    match &cli.command {
        Command::Enumerate(args) => {
            let rows = enumerate(args)?;
            output::write_rows(&mut out, cli.format, &rows).map_err(io)?;
            Ok(true)
        }
        Command::Verify(args) => {
            let reports = verify_reports(args)?;
            output::write_reports(&mut out, cli.format, &reports).map_err(io)?;
            Ok(reports.iter().all(CheckReport::passed))
        }
        Command::Witness { n, confirm } => {
            let w = bounds::witness_large_min_trace(*n, *confirm)?;
            let row = WitnessRow::new(*n, &w);
            let ok = row.exceeds_n;
            output::write_witness(&mut out, cli.format, &row).map_err(io)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

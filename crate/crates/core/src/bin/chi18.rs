use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chi18::arith::{format_rational, parse_rational};
use chi18::periods::{periods_of_quartic, PeriodOptions};
use chi18::pipeline::{
    degeneration_scan, delta_from_tau_omega, delta_of_quartic, format_period_report, parse_grid, twist_delta,
    DeltaReport, VERSION,
};
use chi18::quartic::{discriminant, TernaryForm};
use chi18::theta::{chi18_with, Chi18Options, Convention, SiegelPoint};
use chi18::{Error, Result};

#[derive(Parser)]
#[command(name = "chi18", version, about = "Theta nulls, quartic discriminants, periods and the Jacobian square test")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact discriminant of a plane quartic.
    Discr { quartic: PathBuf },
    /// Period matrices and tau of a smooth plane quartic.
    Periods {
        quartic: PathBuf,
        #[arg(long, default_value_t = 60)]
        prec: u32,
    },
    /// chi18 at a Siegel point.
    Chi18 {
        #[arg(long)]
        tau: PathBuf,
        #[arg(long, default_value_t = 60)]
        prec: u32,
        /// Use the literal series convention, evaluated without reduction.
        #[arg(long)]
        paper_literal: bool,
    },
    /// Delta and the square verdict, from a quartic or from (tau, omega1).
    Delta {
        #[arg(long, conflicts_with_all = ["tau", "omega1"])]
        quartic: Option<PathBuf>,
        #[arg(long, requires = "omega1")]
        tau: Option<PathBuf>,
        #[arg(long, requires = "tau")]
        omega1: Option<PathBuf>,
        #[arg(long, default_value_t = 120)]
        prec: u32,
    },
    /// Quadratic twist of a delta report.
    Twist {
        #[arg(long)]
        report: PathBuf,
        #[arg(short = 'D', allow_hyphen_values = true)]
        d: String,
    },
    /// Degeneration scan over the family Q^2 + t^2 H.
    Scan {
        #[arg(long)]
        conic: PathBuf,
        #[arg(long)]
        quartic: PathBuf,
        /// Comma-separated list of rationals.
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 120)]
        prec: u32,
    },
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn header(kind: &str, convention: &str, prec: u32) -> String {
    format!("# {kind}\nversion: {VERSION}\nconvention: {convention}\nprecision: {prec}\n")
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Discr { quartic } => {
            let f = TernaryForm::parse(&read(&quartic)?, 4)?;
            let d = discriminant(&f)?;
            Ok(format!(
                "# discriminant report\nversion: {VERSION}\ndiscriminant: {}\nsmooth: {}\n",
                format_rational(&d),
                d != 0
            ))
        }
        Command::Periods { quartic, prec } => {
            let f = TernaryForm::parse(&read(&quartic)?, 4)?;
            let d = discriminant(&f)?;
            if d == 0 {
                return Err(Error::Singular { discriminant: d });
            }
            Ok(format_period_report(&periods_of_quartic(&f, prec, PeriodOptions::default())?))
        }
        Command::Chi18 { tau, prec, paper_literal } => {
            let tau = SiegelPoint::parse(&read(&tau)?)?;
            let opts = if paper_literal {
                Chi18Options { convention: Convention::PaperLiteral, reduce: false }
            } else {
                Chi18Options::default()
            };
            let chi = chi18_with(&tau, prec, opts)?;
            let mut out = header("chi18 report", if paper_literal { "paper_literal" } else { "classical" }, prec);
            out.push_str(&format!("reduced: {}\n", opts.reduce));
            out.push_str(&format!("chi18: {}\n", chi.value));
            out.push_str(&format!("cocycle: {}\n", chi.cocycle));
            out.push_str(&format!("vanishing_nulls: {}\n", chi.vanishing_count()));
            out.push_str(&format!("min_null_log10: {:.3}\n", chi.min_null_log10()));
            out.push_str("gamma:\n");
            out.push_str(&chi.gamma.to_string());
            out.push_str("nulls:\n");
            for (c, v) in &chi.nulls {
                out.push_str(&format!("{c} {v}\n"));
            }
            Ok(out)
        }
        Command::Delta { quartic, tau, omega1, prec } => {
            let report = match (quartic, tau, omega1) {
                (Some(q), _, _) => delta_of_quartic(&TernaryForm::parse(&read(&q)?, 4)?, prec)?,
                (None, Some(t), Some(o)) => {
                    delta_from_tau_omega(&SiegelPoint::parse(&read(&t)?)?, &parse_grid(&read(&o)?)?, prec)?
                }
                _ => return Err(Error::InvalidArgument("give --quartic, or both --tau and --omega1".into())),
            };
            Ok(report.to_string())
        }
        Command::Twist { report, d } => {
            let r = DeltaReport::parse(&read(&report)?)?;
            Ok(twist_delta(&r, &parse_rational(&d)?)?.to_string())
        }
        Command::Scan { conic, quartic, t, prec } => {
            let q = TernaryForm::parse(&read(&conic)?, 2)?;
            let h = TernaryForm::parse(&read(&quartic)?, 4)?;
            let ts = t.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>>>()?;
            let table = degeneration_scan(&q, &h, &ts, prec)?;
            let out = table.to_string();
            match table.check() {
                Ok(()) => Ok(out),
                Err(e) => {
                    print!("{out}");
                    Err(e)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

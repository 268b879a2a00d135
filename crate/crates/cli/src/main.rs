use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symdet::code::{build_generator, projective_generator};
use symdet::gf::Field;
use symdet::oracle::verify::{self, VerifyOptions};
use symdet::oracle::Mode;
use symdet::qnumbers::{q_number, QMatrix};
use symdet::symmat::{strata, FormType, RankType};
use symdet::{combinat, krawtchouk, weights, Error, Guard};

#[derive(Parser)]
#[command(name = "symdet", version, about = "Weight distributions of symmetric determinantal codes over odd q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Base {
    /// Field order, an odd prime power.
    #[arg(long)]
    q: u64,
    /// Matrix size.
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stratum sizes mu_{r,tau}(m).
    Mu {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<i64>,
    },
    /// Number of symmetric matrices of rank at most t.
    Nu {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: usize,
    },
    /// Krawtchouk value F_r^(m)(s).
    Kraw {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// A single Q-number, or the full matrix as CSV.
    Qnum {
        #[command(flatten)]
        base: Base,
        /// Row stratum as `rank,type`.
        #[arg(long, allow_hyphen_values = true, requires = "col", conflicts_with = "matrix")]
        row: Option<String>,
        /// Column stratum as `rank,type`.
        #[arg(long, allow_hyphen_values = true, requires = "row")]
        col: Option<String>,
        #[arg(long)]
        matrix: bool,
    },
    /// Weight distribution table.
    Weights {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance.
    Mindist {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: usize,
        /// Report the projective code: distance, then length.
        #[arg(long)]
        projective: bool,
    },
    /// Count of rank <= t matrices with a given delta-partial k-trace.
    Ptrace {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Field element encoding.
        #[arg(long)]
        delta: u64,
        /// Field element encoding.
        #[arg(long)]
        alpha: u64,
    },
    /// Write a generator matrix file.
    Genmat {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Compare every formula against brute-force enumeration.
    Verify {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Representative)]
        mode: ModeArg,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Representative,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn parse_stratum(m: usize, s: &str) -> Result<RankType, Error> {
    let bad = || Error::Parse(format!("expected `rank,type`, got {s:?}"));
    let (k, tau) = s.split_once(',').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let tau: i64 = tau.trim().parse().map_err(|_| bad())?;
    let ty = FormType::from_sign(tau).ok_or_else(bad)?;
    RankType::within(m, k, ty)
}

fn field(base: &Base) -> Result<Field, Error> {
    Field::from_order(base.q)
}

fn guard(force: bool) -> Result<Guard, Error> {
    let mut g = Guard::from_env()?;
    g.force = force;
    Ok(g)
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    match cmd {
        Cmd::Mu { base, r, tau } => {
            let f = field(&base)?;
            let ty = tau.map(|t| FormType::from_sign(t).ok_or_else(|| Error::Parse(format!("type {t}")))).transpose()?;
            let selected: Vec<RankType> = strata(base.m)
                .into_iter()
                .filter(|s| r.is_none_or(|r| s.rank == r) && ty.is_none_or(|ty| s.ty == ty))
                .collect();
            if let Some(r) = r {
                let ty = ty.unwrap_or(if r % 2 == 1 { FormType::Parabolic } else { FormType::Hyperbolic });
                RankType::within(base.m, r, ty)?;
            }
            if r.is_some() && selected.len() == 1 {
                writeln!(stdout, "{}", combinat::mu_stratum(&f, base.m, selected[0])?)?;
            } else {
                for s in selected {
                    writeln!(stdout, "{} {} {}", s.rank, s.tau(), combinat::mu_stratum(&f, base.m, s)?)?;
                }
            }
        }
        Cmd::Nu { base, t } => {
            let f = field(&base)?;
            writeln!(stdout, "{}", combinat::nu(&f, base.m, t)?)?;
        }
        Cmd::Kraw { base, r, s } => {
            let f = field(&base)?;
            writeln!(stdout, "{}", krawtchouk::kraw_f(&f, base.m as i64, r, s)?)?;
        }
        Cmd::Qnum { base, row, col, matrix } => {
            let f = field(&base)?;
            match (row, col) {
                (Some(row), Some(col)) => {
                    let (row, col) = (parse_stratum(base.m, &row)?, parse_stratum(base.m, &col)?);
                    writeln!(stdout, "{}", q_number(&f, base.m, row, col)?)?;
                }
                _ if matrix => write!(stdout, "{}", QMatrix::compute(&f, base.m)?.to_csv())?,
                _ => return Err(Error::Parse("give --row and --col, or --matrix".into()).into()),
            }
        }
        Cmd::Weights { base, t, json: _, csv, out } => {
            let f = field(&base)?;
            let table = weights::weight_distribution(&f, base.m, t)?;
            let text = if csv { table.to_csv() } else { table.to_json() + "\n" };
            drop(stdout);
            emit(out.as_ref(), &text)?;
        }
        Cmd::Mindist { base, t, projective } => {
            let f = field(&base)?;
            if projective {
                writeln!(stdout, "{}", weights::min_distance_projective(&f, base.m, t)?)?;
                writeln!(stdout, "{}", weights::projective_length(&f, base.m, t)?)?;
            } else {
                writeln!(stdout, "{}", weights::min_distance(&f, base.m, t)?)?;
            }
        }
        Cmd::Ptrace { base, t, k, delta, alpha } => {
            let f = field(&base)?;
            let count = weights::partial_trace_count(&f, base.m, t, k, f.elem(delta)?, f.elem(alpha)?)?;
            writeln!(stdout, "{count}")?;
        }
        Cmd::Genmat { base, t, projective, no_labels, out, force } => {
            let f = field(&base)?;
            let g = guard(force)?;
            let gen = if projective {
                projective_generator(&f, base.m, t, &g)?
            } else {
                build_generator(&f, base.m, t, &g)?
            };
            let mut w = BufWriter::new(File::create(&out)?);
            gen.write_to(&mut w, !no_labels)?;
            w.flush()?;
        }
        Cmd::Verify { base, t, mode, force, json } => {
            let f = field(&base)?;
            let opts = VerifyOptions {
                t,
                mode: match mode {
                    ModeArg::Full => Mode::Full,
                    ModeArg::Representative => Mode::Representative,
                },
                guard: guard(force)?,
            };
            if let Some(t) = t {
                if t == 0 || t > base.m {
                    return Err(Error::RangeError(format!("need 1 <= t <= m, got t = {t}")).into());
                }
            }
            let report = verify::run(&f, base.m, &opts)?;
            if json {
                writeln!(stdout, "{}", report.to_json())?;
            } else {
                write!(stdout, "{report}")?;
            }
            if !report.all_pass() {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Lib(e @ Error::GuardExceeded { predicted, .. })) => {
            eprintln!("error: {e}");
            eprintln!("predicted cost: {predicted}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(
            e @ (Error::CrossCheckMismatch { .. }
            | Error::UniformityViolation(_)
            | Error::StratumWeightViolation(_)
            | Error::InexactDivision(_)
            | Error::NegativeCount(_)),
        )) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

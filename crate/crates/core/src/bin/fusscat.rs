//! Command-line front end: tables, sequences, path enumeration, verification
//! suites and generating-function checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use fusscat::exact::{bp_closed, fuss_catalan, StatIndex};
use fusscat::export::{self, Layer};
use fusscat::lattice::{enumerate_paths_with_limit, DEFAULT_ENUM_LIMIT};
use fusscat::simplex::{build_prime_grid, build_simplex, MAX_CELLS};
use fusscat::verify::{self, Bounds, Fault, GfCheck, Report, Suite};
use fusscat::Error;

#[derive(Parser)]
#[command(
    name = "fusscat",
    version,
    about = "Ballot and Fuss-Catalan tables, paths and trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print layers of a ballot-number table.
    Table(TableArgs),
    /// Print Fuss-Catalan numbers C_p(1), C_p(2), ...
    Seq {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        #[arg(long)]
        count: u64,
    },
    /// List all paths of a given size.
    Enumerate(EnumerateArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Check the generating functions at a truncation order.
    Gf {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        #[arg(long, default_value = "all", value_parser = ["F", "G-cubic", "prime-rational", "all"])]
        check: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Recurrence,
    Closed,
    Prime,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Recurrence => "recurrence",
            Source::Closed => "closed",
            Source::Prime => "prime",
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    p: u32,
    /// A single layer.
    #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
    n: Option<u64>,
    /// Layers 1 through N.
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = Source::Recurrence)]
    source: Source,
    /// Grid width in k for `--source prime`.
    #[arg(long, default_value_t = 4)]
    k_max: u64,
    /// Grid width in l for `--source prime`.
    #[arg(long, default_value_t = 4)]
    l_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    p: u32,
    #[arg(long)]
    n: u64,
    /// Print the statistics of each path.
    #[arg(long)]
    stats: bool,
    /// Print class sizes instead of the paths.
    #[arg(long, conflicts_with = "stats")]
    distribution: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict arity-dependent checks to one arity.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    p: Option<u32>,
    /// Layer bound for table and enumeration checks.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,
    /// Smaller default bounds.
    #[arg(long)]
    quick: bool,
    /// Add one to a single cell before checking, e.g. `simplex:3:5:1,2`.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn enum_limit() -> std::result::Result<u64, Failure> {
    match std::env::var("FUSS_MAX_ENUM") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "FUSS_MAX_ENUM must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

fn table(args: TableArgs, out: &mut impl Write) -> Outcome {
    let layers: Vec<u64> = match (args.n, args.n_max) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => unreachable!("clap requires one of --n and --n-max"),
    };
    let top = *layers.iter().max().unwrap_or(&0);
    if args.source == Source::Prime {
        if args.p != 3 {
            return Err(Failure::Usage("--source prime needs --p 3".into()));
        }
        let cells = (top as u128 + 1) * (args.k_max as u128 + 1) * (args.l_max as u128 + 1);
        if cells > MAX_CELLS {
            return Err(Error::TooLarge {
                requested: cells,
                limit: MAX_CELLS,
            }
            .into());
        }
        let grid = build_prime_grid(top, args.k_max, args.l_max)?;
        let mut slices = Vec::new();
        for &n in &layers {
            slices.push((n, grid.slice(n)?));
        }
        match args.format {
            Format::Plain => {
                for (i, (n, rows)) in slices.iter().enumerate() {
                    if slices.len() > 1 {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        writeln!(out, "n = {n}")?;
                    }
                    write!(out, "{}", export::matrix_plain(rows))?;
                }
            }
            Format::Csv => {
                for (i, (n, rows)) in slices.iter().enumerate() {
                    let text = export::matrix_csv(*n, rows)?;
                    // header once
                    let body = if i == 0 {
                        &text[..]
                    } else {
                        text.split_once('\n').map_or("", |x| x.1)
                    };
                    write!(out, "{body}")?;
                }
            }
            Format::Json => {
                let parts: Vec<String> = slices
                    .iter()
                    .map(|(n, rows)| export::matrix_json(*n, rows))
                    .collect();
                if parts.len() == 1 {
                    writeln!(out, "{}", parts[0])?;
                } else {
                    writeln!(out, "[{}]", parts.join(","))?;
                }
            }
        }
        return Ok(());
    }
    if layers.contains(&0) {
        return Err(Error::ZeroLayer.into());
    }
    let cube = (top as u128)
        .saturating_pow(args.p - 1)
        .saturating_mul(layers.len() as u128);
    if cube > MAX_CELLS {
        return Err(Error::TooLarge {
            requested: cube,
            limit: MAX_CELLS,
        }
        .into());
    }
    let p = args.p;
    let rendered: Vec<Layer> = match args.source {
        Source::Recurrence => {
            let s = build_simplex(p, top)?;
            layers
                .iter()
                .map(|&n| {
                    export::dense_layer(p, n, |ks| {
                        s.entry(&StatIndex::new(p, n, ks.to_vec()).expect("valid index"))
                            .expect("built layer")
                    })
                })
                .collect()
        }
        Source::Closed => layers
            .iter()
            .map(|&n| {
                export::dense_layer(p, n, |ks| {
                    bp_closed(&StatIndex::new(p, n, ks.to_vec()).expect("valid index"))
                })
            })
            .collect(),
        Source::Prime => unreachable!(),
    };
    match args.format {
        Format::Plain => write!(out, "{}", export::layers_plain(p, &rendered))?,
        Format::Csv => write!(out, "{}", export::layers_csv(p, &rendered)?)?,
        Format::Json => writeln!(
            out,
            "{}",
            export::layers_json(p, args.source.name(), &rendered)
        )?,
    }
    Ok(())
}

fn enumerate(args: EnumerateArgs, out: &mut impl Write) -> Outcome {
    let (p, n) = (args.p, args.n);
    let paths = enumerate_paths_with_limit(p, n, enum_limit()?)?;
    if args.distribution {
        let mut dist = std::collections::BTreeMap::<Vec<u64>, BigInt>::new();
        for path in &paths {
            *dist.entry(path.stats()?.ks).or_default() += 1;
        }
        match args.format {
            Format::Plain => {
                for (ks, c) in &dist {
                    writeln!(out, "{} {c}", join(ks))?;
                }
            }
            Format::Csv => write!(out, "{}", export::distribution_csv(p, &dist)?)?,
            Format::Json => writeln!(out, "{}", export::distribution_json(p, n, &dist))?,
        }
        return Ok(());
    }
    match args.format {
        Format::Plain => {
            for path in &paths {
                if args.stats {
                    let st = path.stats()?;
                    writeln!(out, "{path} last_run={} ks={}", st.last_run, join(&st.ks))?;
                } else {
                    writeln!(out, "{path}")?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["path".to_string()];
            if args.stats {
                header.push("last_run".into());
                header.extend((1..p).map(|i| format!("k{i}")));
            }
            w.write_record(&header).map_err(csv_err)?;
            for path in &paths {
                let mut rec = vec![path.to_string()];
                if args.stats {
                    let st = path.stats()?;
                    rec.push(st.last_run.to_string());
                    rec.extend(st.ks.iter().map(u64::to_string));
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)?;
        }
        Format::Json => {
            let mut rows = Vec::with_capacity(paths.len());
            for path in &paths {
                rows.push(if args.stats {
                    let st = path.stats()?;
                    serde_json::json!({"path": path.to_string(), "last_run": st.last_run, "ks": st.ks})
                } else {
                    serde_json::json!(path.to_string())
                });
            }
            writeln!(
                out,
                "{}",
                serde_json::json!({"p": p, "n": n, "paths": rows})
            )?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn join(ks: &[u64]) -> String {
    ks.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn report(r: &Report, out: &mut impl Write) -> Outcome {
    writeln!(out, "{}", r.to_json())?;
    let failed = r.failures().count();
    if failed == 0 {
        eprintln!("{} checks passed", r.checks.len());
        Ok(())
    } else {
        for c in r.failures() {
            eprintln!(
                "FAIL {}/{} ({}): {}",
                c.suite,
                c.name,
                c.bound,
                c.counterexample.as_deref().unwrap_or("")
            );
        }
        eprintln!("{failed} of {} checks failed", r.checks.len());
        Err(Failure::Verification)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Table(args) => table(args, out),
        Command::Seq { p, count } => {
            for n in 1..=count {
                writeln!(out, "{}", fuss_catalan(p, n))?;
            }
            Ok(())
        }
        Command::Enumerate(args) => enumerate(args, out),
        Command::Verify(args) => {
            let suites: Vec<Suite> = Suite::parse_selection(&args.suite)?;
            let fault: Option<Fault> = args.inject_fault.as_deref().map(str::parse).transpose()?;
            let bounds = Bounds {
                quick: args.quick,
                p: args.p,
                n_max: args.n_max,
                enum_limit: Some(enum_limit()?),
            };
            let r = verify::run(&suites, &bounds, fault.as_ref())?;
            report(&r, out)
        }
        Command::Gf { order, check } => {
            let which: GfCheck = check.parse()?;
            let r = verify::gf_checks(order as usize, which)?;
            report(&r, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            let _ = out.flush();
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

mod realization;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multitl::color::parse_colors;
use multitl::diagrams::{enumerate_colored, ColorSequence};
use multitl::hecke::{kl_basis, mult_kl_by_bs};
use multitl::jones_wenzl::JWResult;
use multitl::soergel_gate::{failing_primes, group_element, SoergelGate};
use multitl::{Color, Error};
use serde::Serialize;

use realization::RealizationArgs;

/// Multicolored Temperley-Lieb categories, Jones-Wenzl idempotents and
/// Kazhdan-Lusztig bases of universal Coxeter groups.
#[derive(Parser, Debug)]
#[command(name = "multitl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// More logging on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The top idempotent JW(word), or the obstruction to its existence.
    Jw {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        #[command(flatten)]
        realization: RealizationArgs,
    },
    /// Primes p <= max-prime for which the crystallographic realization fails at word.
    FailingPrimes {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Number of colored crossingless matchings from bottom to top.
    Count {
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
    },
    /// Hecke algebra computations.
    Hecke {
        #[command(subcommand)]
        op: HeckeOp,
    },
    /// Summand multiplicities of the identity of word.
    Decompose {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        realization: RealizationArgs,
    },
    /// Whether [B_w] = b_w, with witnesses when it fails.
    Verdict {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        realization: RealizationArgs,
    },
    /// Compares the summands of JW(word) extended by a letter with b_word b_letter.
    Check {
        #[arg(long)]
        word: String,
        #[arg(long, alias = "letter")]
        by: String,
        #[command(flatten)]
        realization: RealizationArgs,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeOp {
    /// b_w in the standard basis.
    Kl {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// b_left b_by in the Kazhdan-Lusztig basis.
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long)]
        by: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Descriptive,
    Oracle,
}

/// Why a command failed, and the exit code that goes with it.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Library(Error::Invariant(_)) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

/// A result rendered both ways; only one is printed.
struct Rendered {
    json: String,
    text: String,
}

impl Rendered {
    fn new<T: Serialize>(value: &T, text: String) -> Result<Self, Failure> {
        let json = serde_json::to_string(value)
            .map_err(|e| Failure::Library(Error::Invariant(format!("serialization: {e}"))))?;
        Ok(Rendered { json, text })
    }
}

fn colors(word: &str) -> Result<Vec<Color>, Failure> {
    Ok(parse_colors(word)?)
}

fn color(letter: &str) -> Result<Color, Failure> {
    match colors(letter)?.as_slice() {
        [c] => Ok(c.clone()),
        _ => Err(Failure::Usage(format!("expected a single color, got {letter:?}"))),
    }
}

fn sequence(word: &str) -> Result<ColorSequence, Failure> {
    Ok(ColorSequence::new(colors(word)?)?)
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Jw {
            word,
            method,
            realization,
        } => {
            let x = sequence(word)?;
            let gate = SoergelGate::new(realization.build(&[x.colors()])?);
            let jw = gate.jones_wenzl();
            let result: JWResult = match method {
                Method::Recursive => jw.recursive(&x)?,
                Method::Descriptive => jw.descriptive(&x)?,
                Method::Oracle => jw.oracle(&x)?.jw,
            };
            Rendered::new(&result.to_json(), render::jw(&result))
        }
        Command::FailingPrimes { word, max_prime } => {
            let w = group_element(&colors(word)?);
            let primes: Vec<u64> = failing_primes(&w, *max_prime).into_iter().collect();
            let text = primes.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            Rendered::new(&primes, text)
        }
        Command::Count { bottom, top } => {
            let n = enumerate_colored(&sequence(bottom)?, &sequence(top)?).len();
            Rendered::new(&n, n.to_string())
        }
        Command::Hecke { op: HeckeOp::Kl { word } } => {
            let w = group_element(&colors(word)?);
            let b = kl_basis(&w);
            Rendered::new(&b.to_json(), render::hecke(&b, "H"))
        }
        Command::Hecke {
            op: HeckeOp::Mult { left, by },
        } => {
            let x = group_element(&colors(left)?);
            let product = mult_kl_by_bs(&x, &color(by)?);
            Rendered::new(&product.to_json(), render::hecke(&product, "b"))
        }
        Command::Decompose { word, realization } => {
            let letters = colors(word)?;
            let gate = SoergelGate::new(realization.build(&[&letters])?);
            let d = gate.decompose_word(&group_element(&letters))?;
            let text = render::decomposition(&d);
            Rendered::new(&d, text)
        }
        Command::Verdict { word, realization } => {
            let letters = colors(word)?;
            let gate = SoergelGate::new(realization.build(&[&letters])?);
            let v = gate.verdict(&group_element(&letters))?;
            let text = render::verdict(&v);
            Rendered::new(&v, text)
        }
        Command::Check {
            word,
            by,
            realization,
        } => {
            let letters = colors(word)?;
            let s = color(by)?;
            let gate = SoergelGate::new(realization.build(&[&letters, std::slice::from_ref(&s)])?);
            let report = gate.categorified_dyer_check(&group_element(&letters), &s)?;
            let text = render::dyer(&report);
            Rendered::new(&report, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_env("MULTITL_LOG")
        .init();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

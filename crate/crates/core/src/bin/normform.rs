use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use normform::cli::{self, Command, Family, Invocation, OutputFormat, PairsCommand};
use normform::format::parse_field;

#[derive(Parser)]
#[command(name = "normform", version, about = "Exact normal forms for matrices and sl2 pairs")]
struct Args {
    /// `Q`, `GF <p>` or `GF<p>`; must match input file headers
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Rational,
    Affine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rational normal form R, invariant factors and a transform T
    Rnf {
        file: PathBuf,
        /// Check T^-1 A T = R exactly
        #[arg(long)]
        verify: bool,
    },
    /// Affine representative and its Q_j data
    Affine { file: PathBuf },
    /// Normal form in the chosen family
    NormalForm {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::Rational)]
        family: FamilyArg,
    },
    /// Check that T^-1 A T equals the rational normal form of A
    Verify { matrix: PathBuf, transform: PathBuf },
    /// Pairs of traceless 2x2 matrices
    #[command(subcommand)]
    Pairs(PairsCmd),
    /// Built-in consistency checks
    Selftest,
}

#[derive(Subcommand)]
enum PairsCmd {
    /// (det A, tr AB, det B) and the discriminant g
    Invariants { file: PathBuf },
    /// All normal-form points over an invariant triple
    Fiber {
        #[arg(allow_hyphen_values = true)]
        x1: String,
        #[arg(allow_hyphen_values = true)]
        x2: String,
        #[arg(allow_hyphen_values = true)]
        x3: String,
    },
    /// Conjugate a pair into normal form
    Reduce { file: PathBuf },
    /// Basis of intertwiners between two pair modules
    Hom { left: PathBuf, right: PathBuf },
    /// Split a 2-dimensional summand off a pair module
    Split { file: PathBuf },
}

/// Joins `--field GF <p>` into one value so that `--field Q <file>` stays unambiguous.
fn join_field_words(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut args = args.peekable();
    while let Some(a) = args.next() {
        if a == "--field" {
            if let Some(kind) = args.next() {
                if kind == "GF" {
                    if let Some(p) = args.next_if(|p| p.chars().all(|c| c.is_ascii_digit())) {
                        out.push(format!("--field=GF{p}"));
                        continue;
                    }
                }
                out.push(a);
                out.push(kind);
                continue;
            }
        }
        out.push(a);
    }
    out
}

fn main() -> ExitCode {
    let args = Args::parse_from(join_field_words(std::env::args()));
    let field = match args.field.as_deref().map(|s| parse_field(&s.split_whitespace().collect::<Vec<_>>())) {
        None => None,
        Some(Ok(f)) => Some(f),
        Some(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let command = match args.command {
        Cmd::Rnf { file, verify } => Command::Rnf { path: file, verify },
        Cmd::Affine { file } => Command::Affine { path: file },
        Cmd::NormalForm { file, family } => Command::NormalForm {
            path: file,
            family: match family {
                FamilyArg::Rational => Family::Rational,
                FamilyArg::Affine => Family::Affine,
            },
        },
        Cmd::Verify { matrix, transform } => Command::Verify { matrix, transform },
        Cmd::Pairs(p) => Command::Pairs(match p {
            PairsCmd::Invariants { file } => PairsCommand::Invariants { path: file },
            PairsCmd::Fiber { x1, x2, x3 } => PairsCommand::Fiber { x: [x1, x2, x3] },
            PairsCmd::Reduce { file } => PairsCommand::Reduce { path: file },
            PairsCmd::Hom { left, right } => PairsCommand::Hom { left, right },
            PairsCmd::Split { file } => PairsCommand::Split { path: file },
        }),
        Cmd::Selftest => Command::Selftest,
    };
    let format = match args.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    let (code, report) = cli::run(&Invocation { command, field, format });
    print!("{}", report.render(format));
    ExitCode::from(code as u8)
}

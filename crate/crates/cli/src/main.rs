mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lelongkit::error::Error;
use lelongkit::report::{emit_error, emit_report, Provenance};

#[derive(Parser, Debug)]
#[command(name = "lelongkit", version, about = "Noether presentations, Newton polygons at infinity, Lelong degrees and Bezout counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    GradedLex,
    Grevlex,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Emit the JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Comma-separated variable order.
    #[arg(long, default_value = "x,y")]
    pub vars: String,
    /// System file (`vars:` line, then one polynomial per line); replaces the
    /// polynomial flags.
    #[arg(long)]
    pub system: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "graded-lex")]
    pub order: OrderArg,
    /// Seed for randomized procedures.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Maximum number of S-pairs reduced by Buchberger's algorithm.
    #[arg(long)]
    pub pair_budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and print a polynomial canonically.
    Parse {
        #[arg(long)]
        expr: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced Gröbner basis.
    Groebner {
        /// Generators separated by `;`.
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Remainder of a polynomial modulo the ideal of the generators.
    NormalForm {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Degree of the normal form.
    DegV {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Checks whether the generators form a Noether presentation.
    NoetherCheck {
        #[arg(long)]
        gens: Option<String>,
        /// Number of free coordinates; defaults to #vars − #gens.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Searches for a linear change of coordinates giving a Noether presentation.
    NoetherFind {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = 64)]
        attempts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Number of points in the fiber of a plane curve over `x = x0`.
    FiberCount {
        #[arg(long)]
        curve: Option<String>,
        /// Real part of x0, a rational.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        /// Imaginary part of x0.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        x0_im: String,
        #[command(flatten)]
        common: Common,
    },
    /// Sheet count of the covering over random regular points of the unit circle.
    MassCheck {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Newton polygon at infinity and its branch families.
    NewtonPolygon {
        #[arg(long)]
        curve: Option<String>,
        /// Print the SVG rendering.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Puiseux expansion of one branch at infinity.
    Puiseux {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, default_value_t = 0)]
        segment: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Number of nonzero terms.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Decimal digits of the coefficients.
        #[arg(long, default_value_t = 20)]
        precision: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Lelong degree of a polynomial on a plane curve.
    LelongDegree {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Per-branch behaviour of a polynomial at infinity on a curve.
    BalayageCheck {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compares the Lelong degree on V(P) and V(P − t).
    MovingCheck {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        poly: String,
        /// Values of t separated by `,`; drawn from the seed when absent.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Affine Bézout bound, projective count and exact oracle.
    Bezout {
        #[arg(long)]
        p1: Option<String>,
        #[arg(long)]
        p2: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact number of distinct affine solutions.
    CountSolutions {
        #[arg(long)]
        p1: Option<String>,
        #[arg(long)]
        p2: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Sylvester resultant with respect to one variable.
    Resultant {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Eliminated variable.
        #[arg(long, default_value = "y")]
        var: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Groebner { .. } => "groebner",
            Command::NormalForm { .. } => "normal-form",
            Command::DegV { .. } => "deg-v",
            Command::NoetherCheck { .. } => "noether-check",
            Command::NoetherFind { .. } => "noether-find",
            Command::FiberCount { .. } => "fiber-count",
            Command::MassCheck { .. } => "mass-check",
            Command::NewtonPolygon { .. } => "newton-polygon",
            Command::Puiseux { .. } => "puiseux",
            Command::LelongDegree { .. } => "lelong-degree",
            Command::BalayageCheck { .. } => "balayage-check",
            Command::MovingCheck { .. } => "moving-check",
            Command::Bezout { .. } => "bezout",
            Command::CountSolutions { .. } => "count-solutions",
            Command::Resultant { .. } => "resultant",
        }
    }

    pub(crate) fn common(&self) -> &Common {
        match self {
            Command::Parse { common, .. }
            | Command::Groebner { common, .. }
            | Command::NormalForm { common, .. }
            | Command::DegV { common, .. }
            | Command::NoetherCheck { common, .. }
            | Command::NoetherFind { common, .. }
            | Command::FiberCount { common, .. }
            | Command::MassCheck { common, .. }
            | Command::NewtonPolygon { common, .. }
            | Command::Puiseux { common, .. }
            | Command::LelongDegree { common, .. }
            | Command::BalayageCheck { common, .. }
            | Command::MovingCheck { common, .. }
            | Command::Bezout { common, .. }
            | Command::CountSolutions { common, .. }
            | Command::Resultant { common, .. } => common,
        }
    }

    /// Commands whose output depends on random draws.
    fn randomized(&self) -> bool {
        match self {
            Command::NoetherFind { .. } | Command::MassCheck { .. } | Command::Bezout { .. } => true,
            Command::MovingCheck { t, .. } => t.is_none(),
            _ => false,
        }
    }
}

fn ci_mode() -> bool {
    std::env::var("LELONGKIT_CI").is_ok_and(|v| v == "1")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let json = cli.command.common().json;
    let mut provenance = Provenance::default();
    let result = if ci_mode() && cli.command.randomized() && cli.command.common().seed.is_none() {
        Err(Error::Usage(format!("`{name}` is randomized; LELONGKIT_CI=1 requires --seed")))
    } else {
        commands::run(&cli.command, &mut provenance)
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match result {
        Ok(outcome) => {
            let body = if json {
                emit_report(name, &provenance, &outcome.result)
            } else {
                outcome.text
            };
            let _ = out.write_all(body.as_bytes());
            if let Some(warning) = &outcome.warning {
                eprintln!("warning: {warning}");
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(err) => {
            if json {
                eprint!("{}", emit_error(name, &provenance, &err));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

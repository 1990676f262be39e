//! `asyminv`: evaluate asymptotic invariants on catalog models from the shell.
//!
//! Exit codes: 0 success, 1 computational error or failed assertion,
//! 2 configuration error.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "asyminv", version, about = "Exact asymptotic invariants of line bundles on concrete models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cap on lattice points enumerated per count.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an invariant at one class.
    Eval(EvalArgs),
    /// Evaluate invariants over a planar slice of classes.
    Grid(GridArgs),
    /// Section-count sweep toward the volume.
    Sweep(SweepArgs),
    /// Zariski decomposition on a surface model.
    Zariski(ZariskiArgs),
    /// Graded families of monomial ideals.
    Family(FamilyArgs),
    /// Run property checks.
    Check(CheckArgs),
    /// List preset model names.
    Presets,
    /// Re-render a saved JSON report in another format.
    Render {
        /// JSON file written with `--format json`, or `-` for stdin.
        input: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Vol,
    Hhat,
    Ord,
    Rvol,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Preset name or model file.
    #[arg(long, default_value = "blowup2")]
    pub model: String,
    /// Class coordinates, e.g. `2,-1` or `1/2,3`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
    #[arg(long, value_enum, default_value_t = What::Vol)]
    pub what: What,
    /// Ray (toric) or curve (surface) index for ord and rvol; all when omitted.
    #[arg(long)]
    pub ray: Option<usize>,
    /// Also run the section-count oracle up to this level.
    #[arg(long)]
    pub to: Option<i64>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long, default_value = "blowup2")]
    pub model: String,
    /// `origin;u;v;lo;hi;steps`, e.g. `0,0;1,0;0,1;-1;2;24`.
    #[arg(long, allow_hyphen_values = true)]
    pub slice: String,
    #[arg(long, value_enum, default_value_t = What::Vol)]
    pub what: What,
    #[arg(long)]
    pub ray: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub model: String,
    /// Defaults to `0,0,0` on Cutkosky models and the model's ample class
    /// elsewhere.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    /// Largest level of the schedule.
    #[arg(long, default_value_t = 100)]
    pub to: i64,
}

#[derive(Args, Debug)]
pub struct ZariskiArgs {
    #[arg(long, default_value = "blowup_surface")]
    pub model: String,
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Model file with a `family` section.
    #[arg(long)]
    pub model: Option<String>,
    /// Rule in the model-file language, e.g. `threshold m1+2m2`.
    #[arg(long, allow_hyphen_values = true)]
    pub rule: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
    /// Weighted order `min <w, alpha>`, e.g. `0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Check `a_m a_l ⊆ a_(m+l)` on the box.
    #[arg(long)]
    pub verify: bool,
    /// Regularity scan over `--grid`.
    #[arg(long)]
    pub scan: bool,
    /// Asymptotic order along this direction.
    #[arg(long, allow_hyphen_values = true)]
    pub ord: Option<String>,
    /// Inner estimates of the nef and pseudoeffective cones on the box.
    #[arg(long)]
    pub cones: bool,
    /// Index box `lo,hi` applied to every coordinate.
    #[arg(long = "box", default_value = "0,4", allow_hyphen_values = true)]
    pub index_box: String,
    /// Integer grid `origin;u;v;steps` for `--scan`.
    #[arg(long, default_value = "1,1;1,0;0,1;4", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = 8)]
    pub depth: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Property {
    LogConcavity,
    Homogeneity,
    Invariance,
    Lipschitz,
    ChamberFit,
    All,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Runs on a standard set of presets when omitted.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, value_enum, default_value_t = Property::All)]
    pub property: Property,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Slice for lipschitz and chamber_fit; per-model defaults otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub slice: Option<String>,
    /// Emit one record per sample.
    #[arg(long)]
    pub records: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = commands::budget(cli.budget);
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(a, budget),
        Command::Grid(a) => commands::grid(a),
        Command::Sweep(a) => commands::sweep(a, budget),
        Command::Zariski(a) => commands::zariski(a),
        Command::Family(a) => commands::family(a),
        Command::Check(a) => commands::check(a),
        Command::Presets => Ok(commands::presets()),
        Command::Render { input } => commands::render(input),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

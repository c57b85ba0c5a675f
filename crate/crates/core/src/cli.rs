//! Command-line front end.
//!
//! Exit codes: `0` success, `1` domain errors (bad files, malformed
//! configurations, out-of-range rules, failed verification), `2` usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::ca::{LocalRule, SpacetimeGrid};
use crate::config::{word_to_string, Alphabet, Configuration};
use crate::dynamics::{
    bmn_enumerate_cyclic, disk_cardinality, shift_bmn_bound, space_cardinality, BmnSpec,
};
use crate::error::Error;
use crate::metric::{agreement_interval, classical_distance, distance, summed_distance};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "grossca",
    version,
    about = "Exact grossone metrics and cellular automata"
)]
pub struct Cli {
    /// Print grossone as `G` instead of `①`.
    #[arg(long, global = true)]
    pub ascii: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a configuration and render a spacetime diagram.
    Evolve(EvolveArgs),
    /// Distance between the first configurations of two files.
    Distance(DistanceArgs),
    /// Agreement interval x ∧ y.
    Meet(PairArgs),
    /// Cardinalities of the space, of disks, and the shift-map bound.
    Cardinality(CardinalityArgs),
    /// Finite-horizon closeness-class queries.
    Bmn(BmnArgs),
    /// Seeded property checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("rule").required(true).args(["rule_table", "elementary", "totalistic", "shift"])
))]
pub struct RuleArgs {
    /// Rule table file (`alphabet=S range=R` header, then `<hood> <symbol>` lines).
    #[arg(long, value_name = "FILE")]
    pub rule_table: Option<PathBuf>,
    /// Elementary rule number 0..=255.
    #[arg(long, value_name = "N")]
    pub elementary: Option<u32>,
    /// Totalistic code; combine with --range and --alphabet.
    #[arg(long, value_name = "CODE")]
    pub totalistic: Option<u64>,
    /// The left shift σ(x)(i) = x(i+1).
    #[arg(long)]
    pub shift: bool,
    /// Range of a totalistic rule.
    #[arg(long, default_value_t = 1)]
    pub range: usize,
    /// Alphabet size for totalistic and shift rules.
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
}

impl RuleArgs {
    fn build(&self) -> Result<LocalRule, Error> {
        if let Some(path) = &self.rule_table {
            LocalRule::parse_table(&read_file(path)?)
        } else if let Some(n) = self.elementary {
            LocalRule::elementary(n)
        } else if let Some(code) = self.totalistic {
            LocalRule::totalistic(code, Alphabet::new(self.alphabet)?, self.range)
        } else {
            Ok(LocalRule::shift_left(Alphabet::new(self.alphabet)?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Pgm,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Number of steps.
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    /// Window `lo:hi` of cells to render.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (i64, i64),
    #[arg(long, value_enum, default_value_t = Render::Ascii)]
    pub render: Render,
    /// One glyph per symbol for ASCII output.
    #[arg(long)]
    pub glyphs: Option<String>,
    /// Configuration file; the first configuration is used.
    pub config: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceMode {
    Grossone,
    Classical,
    Summed,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub x: PathBuf,
    pub y: PathBuf,
    /// Alphabet size used to read the configurations.
    #[arg(short = 's', long = "alphabet", default_value_t = 2)]
    pub alphabet: usize,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = DistanceMode::Grossone)]
    pub mode: DistanceMode,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["space", "disk", "shift_bmn"])))]
pub struct CardinalityArgs {
    #[arg(long)]
    pub space: bool,
    #[arg(long, requires_all = ["m", "n"])]
    pub disk: bool,
    #[arg(long)]
    pub shift_bmn: bool,
    #[arg(short = 'm', allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(short = 'n', allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(short = 's', default_value_t = 2)]
    pub s: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["check", "enumerate"])))]
pub struct BmnArgs {
    /// Test whether Y stays in B_{m,n}(X) up to the horizon.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub check: Option<Vec<PathBuf>>,
    /// Enumerate B_{m,n} on a cyclic universe.
    #[arg(long, requires = "cyclic")]
    pub enumerate: bool,
    /// Cyclic universe size N.
    #[arg(long, value_name = "N")]
    pub cyclic: Option<usize>,
    /// Center word for --enumerate (defaults to N zeros).
    #[arg(long)]
    pub word: Option<String>,
    /// Print every member of the enumeration.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(short = 'm', allow_hyphen_values = true, default_value_t = 0)]
    pub m: i64,
    #[arg(short = 'n', allow_hyphen_values = true, default_value_t = 0)]
    pub n: i64,
    /// Horizon T.
    #[arg(short = 'T', default_value_t = 0)]
    pub horizon: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("suite").required(true).multiple(true).args(
    ["ultrametric", "shift_commute", "example3", "rule90_additivity"]
)))]
pub struct VerifyArgs {
    /// Metric axioms on random triples.
    #[arg(long)]
    pub ultrametric: bool,
    /// `step` against direct evaluation, and commutation with the shift.
    #[arg(long)]
    pub shift_commute: bool,
    /// Rule 128 clears every 12-cell core on a 0 background and fixes x_1.
    #[arg(long)]
    pub example3: bool,
    /// Rule 90 is additive mod 2.
    #[arg(long)]
    pub rule90_additivity: bool,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("`{s}`: expected lo:hi"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| format!("`{lo}`: not an integer"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| format!("`{hi}`: not an integer"))?;
    if lo > hi {
        return Err(format!("`{s}`: lo exceeds hi"));
    }
    Ok((lo, hi))
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn read_config(path: &Path, alphabet: Alphabet) -> Result<Configuration, Error> {
    Configuration::parse_file(&read_file(path)?, alphabet)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::parse(path.display().to_string(), "no configuration in file"))
}

/// Parses `argv` (including the program name), runs the command, and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let ascii = cli.ascii;
    match &cli.command {
        Command::Evolve(args) => {
            let rule = args.rule.build()?;
            let x = read_config(&args.config, rule.alphabet())?;
            let (lo, hi) = args.window;
            let grid = rule.spacetime(&x, args.steps, lo, hi)?;
            let text = match args.render {
                Render::Ascii => {
                    let glyphs = match &args.glyphs {
                        Some(g) => g.chars().collect(),
                        None => SpacetimeGrid::default_glyphs(rule.alphabet()),
                    };
                    grid.render_ascii(&glyphs)?
                }
                Render::Pgm => grid.render_pgm(),
            };
            write!(out, "{text}").map_err(io_err)?;
        }
        Command::Distance(args) => {
            let a = Alphabet::new(args.pair.alphabet)?;
            let x = read_config(&args.pair.x, a)?;
            let y = read_config(&args.pair.y, a)?;
            let d = match args.mode {
                DistanceMode::Grossone => distance(&x, &y)?,
                DistanceMode::Classical => classical_distance(&x, &y)?,
                DistanceMode::Summed => summed_distance(&x, &y)?,
            };
            writeln!(out, "{}", d.format(ascii)).map_err(io_err)?;
        }
        Command::Meet(args) => {
            let a = Alphabet::new(args.alphabet)?;
            let x = read_config(&args.x, a)?;
            let y = read_config(&args.y, a)?;
            let meet = agreement_interval(&x, &y)?;
            if ascii {
                writeln!(out, "{meet:#}").map_err(io_err)?;
            } else {
                writeln!(out, "{meet}").map_err(io_err)?;
            }
        }
        Command::Cardinality(args) => {
            let a = Alphabet::new(args.s)?;
            let q = if args.space {
                space_cardinality(a)
            } else if args.disk {
                disk_cardinality(a, args.m.unwrap_or(0), args.n.unwrap_or(0))?
            } else {
                shift_bmn_bound(a)
            };
            let note = if args.shift_bmn { " (upper bound)" } else { "" };
            writeln!(out, "{}{note}", q.format(ascii)).map_err(io_err)?;
        }
        Command::Bmn(args) => {
            let rule = args.rule.build()?;
            if let Some(paths) = &args.check {
                let x = read_config(&paths[0], rule.alphabet())?;
                let y = read_config(&paths[1], rule.alphabet())?;
                let spec = BmnSpec::new(rule, x, args.m, args.n, args.horizon)?;
                match spec.first_separation(&y)? {
                    None => writeln!(out, "member: true (T={})", args.horizon),
                    Some(t) => writeln!(out, "member: false (separates at t={t})"),
                }
                .map_err(io_err)?;
            } else {
                let n = args.cyclic.expect("clap enforces --cyclic");
                let word = match &args.word {
                    Some(w) => rule.alphabet().parse_word(w)?,
                    None => vec![0; n],
                };
                if word.len() != n {
                    return Err(Error::parse(
                        args.word.clone().unwrap_or_default(),
                        format!("word length {} differs from --cyclic {n}", word.len()),
                    ));
                }
                let res = bmn_enumerate_cyclic(&rule, &word, args.m, args.n, args.horizon)?;
                writeln!(out, "count: {}", res.count).map_err(io_err)?;
                if args.list {
                    for w in &res.members {
                        writeln!(out, "{}", word_to_string(w)).map_err(io_err)?;
                    }
                }
            }
        }
        Command::Verify(args) => {
            let mut failures = 0;
            if args.ultrametric {
                let r = verify::check_ultrametric(args.samples, args.seed)?;
                failures += r.violations();
                write!(out, "{r}").map_err(io_err)?;
            }
            if args.shift_commute {
                let r = verify::check_step(args.samples, args.seed)?;
                failures += r.violations();
                write!(out, "{r}").map_err(io_err)?;
            }
            if args.example3 {
                let r = verify::check_quiescence(12)?;
                failures += r.slow + usize::from(!r.x1_fixed);
                write!(out, "{r}").map_err(io_err)?;
            }
            if args.rule90_additivity {
                let r = verify::check_rule90_additivity(args.samples, args.seed)?;
                failures += r.violations;
                write!(out, "{r}").map_err(io_err)?;
            }
            let verdict = if failures == 0 { "ok" } else { "FAILED" };
            writeln!(out, "verify: {verdict} ({failures} violations)").map_err(io_err)?;
            return Ok(if failures == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

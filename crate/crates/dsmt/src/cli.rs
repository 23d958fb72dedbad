//! Argument parsing and dispatch. [`run`] never exits the process; it returns
//! the exit status so tests can drive it in-process.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dsmt_core::oracles::{brute_force_mbf, kisielewicz_d, memsize_report, MAX_FORMULA_ATOMS};
use dsmt_core::{
    canonicalize, dempster_combine, dsm_bel_pl, dsm_fuse_many, generate, known_cardinality, render_expr,
    to_dnf, weighted_redistribution, ClassicalBba, Error as CoreError, Frame, GeneralizedBba,
    RedistributionWeights, RegionIndex, VennMask,
};

use crate::bba_file::{atom_union, load_bba, union_mask, Bba, LoadError};
use crate::report::{fixed, num, write_hyperpowerset, Format, GenError, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Largest frame for which `beliefs --all` lists every element.
pub const MAX_BELIEFS_ALL_ATOMS: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "dsmt", version, about = "Hyper-powerset generation, set expressions and evidence fusion")]
pub struct Cli {
    /// Fractional digits for masses and beliefs.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=17))]
    pub precision: u8,
    /// Report timings and counts on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count, conflicts_with = "quiet")]
    pub verbose: u8,
    /// Suppress warnings.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every element of D^Θ in canonical order.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Canonicalize a set expression.
    Canon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Count monotone Boolean functions of n variables, d(n).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Lookup)]
        method: Method,
        /// Permit the closed formula at n = 5.
        #[arg(long)]
        long_running: bool,
    },
    /// Storage needed for D^Θ at whole bytes per element.
    Memsize {
        #[arg(long, default_value_t = 2)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Combine mass files.
    Fuse {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long, num_args = 2.., required = true)]
        bba: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Belief and plausibility of targets under the DSm combination of the inputs.
    Beliefs(BeliefsArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("targets").required(true).args(["target", "all"])))]
pub struct BeliefsArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub bba: Vec<PathBuf>,
    #[arg(long, num_args = 1..)]
    pub target: Vec<String>,
    /// Every element of D^Θ (small frames only).
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lookup,
    Brute,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Dsm,
    Dempster,
    Yager,
    Smets,
}

/// Failure carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// Extra diagnostic lines, e.g. a caret under a parse error.
    detail: Vec<String>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), detail: Vec::new() }
    }
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Capacity { .. } | CoreError::UnknownValue { .. } | CoreError::FrameTooLarge { .. } => {
            EXIT_CAPACITY
        }
        CoreError::FullContradiction { .. } => EXIT_CONTRADICTION,
        _ => EXIT_PARSE,
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::new(core_code(&e), e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let code = if e.is_io() { EXIT_USAGE } else { EXIT_PARSE };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed downstream pipe (`dsmt gen | head`) is not an error.
        let code = if e.kind() == io::ErrorKind::BrokenPipe { EXIT_OK } else { EXIT_USAGE };
        Failure::new(code, e.to_string())
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Core(e) => e.into(),
            GenError::Io(e) => e.into(),
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    precision: usize,
    verbose: u8,
    quiet: bool,
}

impl Ctx<'_> {
    fn warn(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "warning: {msg}");
        }
    }

    fn info(&mut self, msg: std::fmt::Arguments<'_>) {
        if self.verbose > 0 {
            let _ = writeln!(self.err, "{msg}");
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { out, err, precision: cli.precision as usize, verbose: cli.verbose, quiet: cli.quiet };
    let result = dispatch(cli.command, &mut ctx);
    let flushed = ctx.out.flush();
    match result.and_then(|()| flushed.map_err(Failure::from)) {
        Ok(()) => EXIT_OK,
        Err(f) if f.code == EXIT_OK => EXIT_OK,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            for line in &f.detail {
                let _ = writeln!(ctx.err, "{line}");
            }
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match command {
        Command::Gen { n, format } => gen(n, format, ctx),
        Command::Canon { n, expr, format } => canon(n, &expr, format, ctx),
        Command::Count { n, method, long_running } => count(n, method, long_running, ctx),
        Command::Memsize { min, max, format } => memsize(min, max, format, ctx),
        Command::Fuse { rule, bba, format } => fuse(rule, &bba, format, ctx),
        Command::Beliefs(args) => beliefs(&args, ctx),
    }
}

fn frame(n: usize) -> Result<Frame, Failure> {
    Frame::new(n).map_err(Failure::from)
}

fn gen(n: usize, format: Format, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let start = Instant::now();
    let total = write_hyperpowerset(frame(n)?, format, ctx.out)?;
    ctx.info(format_args!("generated {total} elements in {:.3} s", start.elapsed().as_secs_f64()));
    Ok(())
}

/// Parses `text`, turning syntax errors into an exit-2 failure with a caret.
fn parse_expr(text: &str, frame: Frame) -> Result<dsmt_core::Canonical, Failure> {
    canonicalize(text, frame).map_err(|e| {
        let mut f = Failure::from(e.clone());
        if let CoreError::Parse(p) = &e {
            let col = text[..p.offset.min(text.len())].chars().count();
            f.detail = vec![format!("  {text}"), format!("  {}^", " ".repeat(col))];
        }
        f
    })
}

fn canon(n: usize, expr: &str, format: Format, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let c = parse_expr(expr, frame(n)?)?;
    let mut t = Table::new(&["bits", "hex", "dnf"]);
    t.push(vec![c.mask.to_bit_string().into(), c.mask.to_hex().into(), c.dnf.into()]);
    t.render(format, ctx.out)?;
    Ok(())
}

fn count(n: usize, method: Method, long_running: bool, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let start = Instant::now();
    let d = match method {
        Method::Lookup => known_cardinality(n)?,
        Method::Brute => brute_force_mbf(n)?.count.into(),
        Method::Formula => {
            if n > MAX_FORMULA_ATOMS && long_running {
                ctx.warn(&format!("the closed formula sums 2^{} terms at n = {n}", 1u64 << n));
            }
            kisielewicz_d(n, long_running)?
        }
    };
    writeln!(ctx.out, "{d}")?;
    ctx.info(format_args!("counted in {:.3} s", start.elapsed().as_secs_f64()));
    Ok(())
}

fn memsize(min: usize, max: usize, format: Format, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    if min > max {
        return Err(Failure::new(EXIT_USAGE, format!("--min {min} exceeds --max {max}")));
    }
    let mut t = Table::new(&[
        "n",
        "bytes_per_elem",
        "elements",
        "elements_approx",
        "total_bytes",
        "total",
        "refined_powerset",
    ]);
    for row in memsize_report(min, max)? {
        t.push(vec![
            num(row.n),
            num(row.bytes_per_elem),
            num(&row.elem_count),
            row.count_human().into(),
            num(&row.total_bytes),
            row.total_human().into(),
            row.refined_human().into(),
        ]);
    }
    t.render(format, ctx.out)?;
    Ok(())
}

/// Loads every file on a common frame, forwarding warnings.
fn load_all(paths: &[PathBuf], ctx: &mut Ctx<'_>) -> Result<Vec<Bba>, Failure> {
    let mut frame = None;
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let loaded = load_bba(path, frame)?;
        for w in &loaded.warnings {
            ctx.warn(w);
        }
        frame = Some(loaded.bba.frame());
        out.push(loaded.bba);
    }
    Ok(out)
}

/// A file's assignment over `D^Θ`; classical files keep their atom unions.
fn to_generalized(bba: &Bba) -> Result<GeneralizedBba, Failure> {
    match bba {
        Bba::Dsm(m) => Ok(m.clone()),
        Bba::Dst(m) => {
            let f = m.frame();
            Ok(GeneralizedBba::new(f, m.focal().map(|(a, w)| (union_mask(a, f), w)))?)
        }
    }
}

/// A file's assignment over `2^Θ`, possible only when every focal element is a union of atoms.
fn to_classical(bba: &Bba, path: &std::path::Path) -> Result<ClassicalBba, Failure> {
    match bba {
        Bba::Dst(m) => Ok(m.clone()),
        Bba::Dsm(m) => {
            let mut entries = Vec::with_capacity(m.len());
            for (mask, w) in m.focal() {
                let Some(set) = atom_union(mask) else {
                    return Err(Failure::new(
                        EXIT_PARSE,
                        format!(
                            "{}: focal element {} is not a union of atoms; classical rules need exclusive atoms",
                            path.display(),
                            render_expr(&to_dnf(mask)?)
                        ),
                    ));
                };
                entries.push((set, w));
            }
            Ok(ClassicalBba::new(m.frame(), entries)?)
        }
    }
}

/// Mass that exclusive atoms would send to `∅`: focal elements covering no
/// single-atom region.
fn dsm_conflict(m: &GeneralizedBba) -> f64 {
    let mut parts: Vec<f64> = m
        .focal()
        .filter(|(mask, _)| {
            !(0..m.frame().n() as u32)
                .any(|i| mask.contains(RegionIndex::new(1 << i, m.frame()).expect("single-atom region")))
        })
        .map(|(_, w)| w)
        .collect();
    parts.sort_by(f64::total_cmp);
    parts.iter().sum()
}

fn mask_row(mask: &VennMask, mass: f64, precision: usize) -> Vec<crate::report::Cell> {
    let dnf = render_expr(&to_dnf(mask).expect("focal elements are isotone"));
    vec![dnf.into(), mask.to_bit_string().into(), fixed(mass, precision)]
}

fn fuse(rule: Rule, paths: &[PathBuf], format: Format, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    if matches!(rule, Rule::Yager | Rule::Smets) && paths.len() != 2 {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("the {rule:?} rule combines exactly two sources, got {}", paths.len()).to_lowercase(),
        ));
    }
    let sources = load_all(paths, ctx)?;
    let p = ctx.precision;
    let mut t = Table::new(&["expr", "bits", "mass"]);
    let conflict = match rule {
        Rule::Dsm => {
            let gs = sources.iter().map(to_generalized).collect::<Result<Vec<_>, _>>()?;
            let fused = dsm_fuse_many(&gs)?;
            for (mask, w) in fused.focal() {
                t.push(mask_row(mask, w, p));
            }
            dsm_conflict(&fused)
        }
        _ => {
            let cs = sources
                .iter()
                .zip(paths)
                .map(|(b, path)| to_classical(b, path))
                .collect::<Result<Vec<_>, _>>()?;
            let (result, conflict) = match rule {
                Rule::Dempster => {
                    // Unnormalized mass on ∅ across the whole chain is 1 - Π(1 - k_i).
                    let mut acc = cs[0].clone();
                    let mut kept = 1.0;
                    for next in &cs[1..] {
                        let step = dempster_combine(&acc, next).map_err(|e| match e {
                            CoreError::FullContradiction { .. } => {
                                CoreError::FullContradiction { conflict: 1.0 }
                            }
                            other => other,
                        })?;
                        kept *= 1.0 - step.conflict;
                        acc = step.result;
                    }
                    (acc, 1.0 - kept)
                }
                Rule::Yager => {
                    let o = weighted_redistribution(
                        &cs[0],
                        &cs[1],
                        &RedistributionWeights::yager(cs[0].frame()),
                    )?;
                    (o.result, o.conflict)
                }
                Rule::Smets => {
                    let o = weighted_redistribution(&cs[0], &cs[1], &RedistributionWeights::smets())?;
                    (o.result, o.conflict)
                }
                Rule::Dsm => unreachable!(),
            };
            let frame = result.frame();
            let mut rows: Vec<(VennMask, f64)> =
                result.focal().map(|(a, w)| (union_mask(a, frame), w)).collect();
            rows.sort_by(|a, b| a.0.cmp(&b.0));
            for (mask, w) in rows {
                t.push(mask_row(&mask, w, p));
            }
            conflict
        }
    };
    t.footer.push(("conflict", fixed(conflict, p)));
    t.render(format, ctx.out)?;
    Ok(())
}

fn beliefs(args: &BeliefsArgs, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let sources = load_all(&args.bba, ctx)?;
    let gs = sources.iter().map(to_generalized).collect::<Result<Vec<_>, _>>()?;
    let m = dsm_fuse_many(&gs)?;
    let frame = m.frame();
    let n = frame.n() as usize;

    let targets: Vec<(String, VennMask)> = if args.all {
        if n > MAX_BELIEFS_ALL_ATOMS {
            return Err(CoreError::Capacity {
                what: "beliefs --all",
                n,
                limit: MAX_BELIEFS_ALL_ATOMS,
                elements: known_cardinality(n).ok().map(|d| d - 1u32),
                bytes: None,
            }
            .into());
        }
        generate(frame)?
            .iter()
            .map(|mask| (render_expr(&to_dnf(&mask).expect("generated elements are isotone")), mask))
            .collect()
    } else {
        args.target
            .iter()
            .map(|text| parse_expr(text, frame).map(|c| (text.clone(), c.mask)))
            .collect::<Result<_, _>>()?
    };

    let p = ctx.precision;
    let mut t = Table::new(&["expr", "bits", "bel", "pl"]);
    for (text, mask) in targets {
        let bp = dsm_bel_pl(&m, &mask)?;
        t.push(vec![text.into(), mask.to_bit_string().into(), fixed(bp.bel, p), fixed(bp.pl, p)]);
    }
    t.render(args.format, ctx.out)?;
    Ok(())
}

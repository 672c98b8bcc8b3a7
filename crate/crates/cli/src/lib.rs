//! The `subcube` command line.
//!
//! Reports are `key: value` lines; with `--porcelain` they become
//! `key<TAB>value` lines with the same keys. Generated and transformed
//! collections are written in the SCP or AVSP file grammar.
//!
//! Exit status: 0 ok, 1 an expectation failed, 2 unreadable input or bad
//! command line, 3 search budget exhausted, 4 precondition violated.

pub mod expect;
pub mod fixtures;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use subcube::affine::{avsp_family, compress, format_avsp};
use subcube::families::{
    cubic, family_s, family_weight, homogeneous_6_4, homogeneous_pump, lagarias_shor, maximal_family,
    min_dim_family, special_perfect_matching, xor_extend, WeightVariant,
};
use subcube::format::format_scp;
use subcube::qary::{expand, minimal_qary, staircase_cover, ExpansionMap};
use subcube::search::{self, Objective, SearchConstraints, SearchReport, SearchStatus, DEFAULT_NODE_BUDGET};
use subcube::{canonical_form, Error, SubcubeCollection};

use crate::expect::{parse_expectations, Input};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXPECTATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "subcube", version, about = "Subcube and affine partitions: build, verify, search")]
struct Cli {
    /// Tab-separated report lines.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family member to standard output.
    Gen {
        /// s, weight, cubic, lagarias-shor, xor, maximal, spm, min-dim,
        /// homogeneous-6-4, pump, qary, staircase, avsp
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        q: u8,
        /// A, B, C or D (weight family).
        #[arg(long)]
        variant: Option<String>,
        /// Extra xor coordinates (xor family).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check partition, tightness, irreducibility and homogeneity.
    Verify {
        file: String,
        /// Comma-separated: partition, tight, irreducible, homogeneous=K;
        /// prefix `!` to require failure.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Size, weights, dimensions and coordinate usage.
    Stats { file: String },
    /// Canonical form under coordinate and symbol permutations.
    Canon { file: String },
    /// Exhaustive search.
    Search {
        /// min-size, max-points, max-size, homogeneous, min-cover, avsp-min-size
        objective: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u8,
        /// Codimension (homogeneous).
        #[arg(long)]
        k: Option<u32>,
        /// Node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Results are always merged in branch order; accepted for clarity.
        #[arg(long)]
        deterministic: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Only try `0^c *^(n-c)` as the member covering the all-zero point.
        #[arg(long)]
        fix_first: bool,
    },
    /// Pull a binary partition back to alphabet Q.
    Expand {
        file: String,
        #[arg(long)]
        q: u8,
        /// Per-coordinate preimages `ZEROS/ONES`, comma-separated, e.g.
        /// `0/12,01/2,0/12`; a single entry applies to every coordinate.
        /// Default: 0 to 0, everything else to 1.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Affine partition obtained by merging star-pattern classes.
    Compress { file: String },
    /// Closed-form bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u8,
    },
    /// The embedded fixture corpus.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    Dump { name: String },
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure::new(EXIT_PARSE, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::Budget(_) => EXIT_BUDGET,
            _ => EXIT_PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::parse(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    porcelain: bool,
}

impl Ctx<'_> {
    fn field(&mut self, key: &str, value: impl std::fmt::Display) -> std::io::Result<()> {
        if self.porcelain {
            writeln!(self.out, "{key}\t{value}")
        } else {
            writeln!(self.out, "{key}: {value}")
        }
    }
}

/// Runs one command line (including the program name) and returns the
/// exit status. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx { out, porcelain: cli.porcelain };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Outcome {
    match command {
        Command::Gen { family, n, q, variant, k } => gen(ctx, &family, n, q, variant.as_deref(), k),
        Command::Verify { file, expect } => verify(ctx, &file, expect.as_deref()),
        Command::Stats { file } => stats(ctx, &file),
        Command::Canon { file } => {
            let f = load_subcubes(&file)?;
            let c = canonical_form(&f)?;
            write!(ctx.out, "{}", format_scp(&c.form))?;
            Ok(EXIT_OK)
        }
        Command::Search { objective, n, q, k, budget, deterministic, threads, fix_first } => {
            let objective: Objective = objective.parse().map_err(|e: Error| Failure::parse(e.to_string()))?;
            let c = SearchConstraints {
                node_budget: budget,
                deterministic,
                threads,
                fix_first_subcube: fix_first,
                ..Default::default()
            };
            search_cmd(ctx, objective, n, q, k, &c)
        }
        Command::Expand { file, q, phi } => {
            let f = load_subcubes(&file)?;
            let map = match phi {
                Some(spec) => ExpansionMap::new(q, parse_phi(&spec, q, f.n())?)?,
                None => ExpansionMap::threshold(q, f.n())?,
            };
            write!(ctx.out, "{}", format_scp(&expand(&f, &map)?))?;
            Ok(EXIT_OK)
        }
        Command::Compress { file } => {
            let f = load_subcubes(&file)?;
            let c = compress(&f)?;
            let verdict = if c.tightness_condition { "holds" } else { "fails" };
            writeln!(ctx.out, "# tightness condition {verdict}")?;
            write!(ctx.out, "{}", format_avsp(&c.avsp))?;
            Ok(EXIT_OK)
        }
        Command::Bounds { n, q } => {
            let b = search::bounds(n, q)?;
            ctx.field("n", b.n)?;
            ctx.field("q", b.q)?;
            ctx.field("min-size-lower", b.min_size_lower.map_or("-".into(), |v| v.to_string()))?;
            ctx.field("max-size-upper", &b.max_size_upper)?;
            ctx.field("cover-lower", b.cover_lower)?;
            ctx.field("avsp-lower", b.avsp_lower)?;
            ctx.field("homogeneous-codims", join_or_dash(&b.homogeneous_codims))?;
            Ok(EXIT_OK)
        }
        Command::Fixtures { action: FixtureAction::List } => {
            for fx in fixtures::ALL {
                let exp: Vec<String> = fx.expectations().iter().map(|e| e.to_string()).collect();
                if ctx.porcelain {
                    writeln!(ctx.out, "{}\t{}\t{}", fx.name, fx.file, exp.join(","))?;
                } else {
                    writeln!(ctx.out, "{}: {}", fx.name, fx.description())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Fixtures { action: FixtureAction::Dump { name } } => {
            let fx = fixtures::get(&name).ok_or_else(|| Failure::new(EXIT_PRECONDITION, format!("no fixture `{name}`")))?;
            write!(ctx.out, "{}", fx.text)?;
            Ok(EXIT_OK)
        }
    }
}

fn join_or_dash<T: ToString>(xs: &[T]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `-` reads standard input.
fn read_text(path: &str) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load(path: &str) -> std::result::Result<Input, Failure> {
    Input::parse(&read_text(path)?).map_err(|e| Failure::parse(format!("{path}: {e}")))
}

fn load_subcubes(path: &str) -> std::result::Result<SubcubeCollection, Failure> {
    match load(path)? {
        Input::Subcubes(f) => Ok(f),
        Input::Affine(_) => Err(Failure::new(EXIT_PRECONDITION, format!("{path}: expected a subcube collection"))),
    }
}

fn gen(ctx: &mut Ctx, family: &str, n: Option<usize>, q: u8, variant: Option<&str>, k: Option<usize>) -> Outcome {
    let need_n = || n.ok_or_else(|| Failure::parse(format!("family `{family}` needs --n")));
    let f = match family {
        "s" => family_s(need_n()?)?,
        "weight" => {
            let v: WeightVariant = variant.ok_or_else(|| Failure::parse("family `weight` needs --variant"))?.parse()?;
            family_weight(need_n()?, v)?
        }
        "cubic" => cubic(need_n()?)?,
        "lagarias-shor" => lagarias_shor(need_n()?)?,
        "xor" => xor_extend(&family_s(need_n()?)?, k.ok_or_else(|| Failure::parse("family `xor` needs --k"))?)?,
        "maximal" => maximal_family(need_n()?)?,
        "spm" => special_perfect_matching(need_n()?)?,
        "min-dim" => min_dim_family(need_n()?)?,
        "homogeneous-6-4" => {
            if n.is_some_and(|n| n != 6) {
                return Err(Failure::new(EXIT_PRECONDITION, "family `homogeneous-6-4` has length 6"));
            }
            homogeneous_6_4()
        }
        "pump" => homogeneous_pump(&special_perfect_matching(need_n()?)?)?,
        "qary" => minimal_qary(need_n()?, q)?,
        "staircase" => staircase_cover(need_n()?, q)?,
        "avsp" => {
            write!(ctx.out, "{}", format_avsp(&avsp_family(need_n()?)?))?;
            return Ok(EXIT_OK);
        }
        _ => return Err(Failure::parse(format!("unknown family `{family}`"))),
    };
    write!(ctx.out, "{}", format_scp(&f))?;
    Ok(EXIT_OK)
}

fn verify(ctx: &mut Ctx, path: &str, expect: Option<&str>) -> Outcome {
    let expectations = parse_expectations(expect.unwrap_or("")).map_err(Failure::parse)?;
    let input = load(path)?;
    let c = input.check();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    ctx.field("members", input.len())?;
    ctx.field("partition", yes_no(c.partition))?;
    ctx.field("tight", yes_no(c.tight))?;
    ctx.field("irreducible", c.irreducible.map_or("-", yes_no))?;
    if let Some(w) = &c.witness {
        ctx.field("witness", w)?;
    }
    ctx.field("homogeneous", c.homogeneous.map_or("-".into(), |k| k.to_string()))?;
    let failed: Vec<String> = expectations.iter().filter(|e| !e.holds(&c)).map(|e| e.to_string()).collect();
    if failed.is_empty() {
        return Ok(EXIT_OK);
    }
    ctx.field("expectation-failed", failed.join(","))?;
    Ok(EXIT_EXPECTATION)
}

fn stats(ctx: &mut Ctx, path: &str) -> Outcome {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    match load(path)? {
        Input::Subcubes(f) => {
            ctx.field("q", f.q())?;
            ctx.field("n", f.n())?;
            ctx.field("size", f.len())?;
            ctx.field("partition", yes_no(f.is_partition()))?;
            ctx.field("tight", yes_no(f.is_tight()))?;
            if f.q() == 2 {
                ctx.field("weight-vector", join_or_dash(&f.weight_vector()?.0))?;
            }
            let d = f.dim_stats()?;
            let opt = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
            ctx.field("min-dim", d.min_dim)?;
            ctx.field("min-dim-star-last", opt(d.min_dim_star_last))?;
            ctx.field("min-dim-value-last", opt(d.min_dim_value_last))?;
            ctx.field("min-codim", d.min_codim)?;
            let s = f.structure_flags();
            ctx.field("regular", yes_no(s.regular))?;
            ctx.field("homogeneous", opt(s.homogeneous_codim))?;
            ctx.field("mentions-per-coordinate", join_or_dash(&s.mentions_per_coordinate))?;
            ctx.field("points", f.points().len())?;
        }
        Input::Affine(g) => {
            ctx.field("n", g.n())?;
            ctx.field("size", g.len())?;
            ctx.field("partition", yes_no(g.is_partition()))?;
            ctx.field("tight", yes_no(g.is_tight()))?;
            let mut counts = vec![0usize; g.n() + 1];
            for m in g.members() {
                counts[m.dimension() as usize] += 1;
            }
            ctx.field("dimension-counts", join_or_dash(&counts))?;
            ctx.field("min-dim", g.members().iter().map(|m| m.dimension()).min().unwrap_or(0))?;
        }
    }
    Ok(EXIT_OK)
}

fn search_cmd(ctx: &mut Ctx, objective: Objective, n: usize, q: u8, k: Option<u32>, c: &SearchConstraints) -> Outcome {
    let binary_only = |q: u8| if q == 2 { Ok(()) } else { Err(Failure::new(EXIT_PRECONDITION, format!("{objective} is binary only"))) };
    let report: SearchReport = match objective {
        Objective::MinSize => search::min_size_search(n, q, c)?,
        Objective::MinCover => search::min_cover_search(n, q, c)?,
        Objective::MaxPoints => {
            binary_only(q)?;
            search::max_points_search(n, c)?
        }
        Objective::MaxSize => {
            binary_only(q)?;
            search::max_size_search(n, c)?
        }
        Objective::AvspMinSize => {
            binary_only(q)?;
            search::avsp_min_size_search(n, c)?
        }
        Objective::Homogeneous => {
            binary_only(q)?;
            let k = k.ok_or_else(|| Failure::parse("homogeneous search needs --k"))?;
            search::homogeneous_search(n, k, c)?
        }
    };
    let text = if ctx.porcelain { report.to_porcelain() } else { report.to_text() };
    write!(ctx.out, "{text}")?;
    Ok(if report.status() == SearchStatus::Truncated { EXIT_BUDGET } else { EXIT_OK })
}

/// `ZEROS/ONES[,ZEROS/ONES..]` into one symbol-to-bit table per coordinate.
fn parse_phi(spec: &str, q: u8, n: usize) -> std::result::Result<Vec<Vec<u8>>, Failure> {
    let mut maps = Vec::new();
    for part in spec.split(',') {
        let (zeros, ones) = part
            .split_once('/')
            .ok_or_else(|| Failure::parse(format!("--phi entry `{part}` is not ZEROS/ONES")))?;
        let mut map = vec![u8::MAX; q as usize];
        for (bit, list) in [(0u8, zeros), (1u8, ones)] {
            for ch in list.trim().chars() {
                let v = ch
                    .to_digit(36)
                    .filter(|&v| v < q as u32)
                    .ok_or_else(|| Failure::parse(format!("--phi symbol `{ch}` outside 0..{q}")))?;
                if map[v as usize] != u8::MAX {
                    return Err(Failure::parse(format!("--phi entry `{part}` lists `{ch}` twice")));
                }
                map[v as usize] = bit;
            }
        }
        if map.contains(&u8::MAX) {
            return Err(Failure::parse(format!("--phi entry `{part}` does not list every symbol")));
        }
        maps.push(map);
    }
    match maps.len() {
        1 => Ok(vec![maps.pop().unwrap(); n]),
        len if len == n => Ok(maps),
        len => Err(Failure::parse(format!("--phi has {len} entries for length {n}"))),
    }
}

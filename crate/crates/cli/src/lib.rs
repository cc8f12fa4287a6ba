//! The `latcut` command line.
//!
//! Exit codes: `0` success, `1` usage or parse error, `2` violated
//! precondition, `3` internal invariant failure.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use latcut::cut::{closure_with_cuts, minimal_dominating_subfamily_with, remove_interior};
use latcut::families::{enumerate_circumscribed, example_family, relevant_splits, splits, SplitSpec};
use latcut::io::{read_polyhedron, write_h};
use latcut::lattice::{is_lattice_free, is_maximal_lattice_free, max_facet_width, zd_equivalent};
use latcut::polyhedron::Polyhedron;

/// Worker count for family evaluation; affects speed only.
pub const WORKERS_VAR: &str = "LATCUT_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "latcut", version, about = "Exact lattice-free cuts and closures of rational polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the max-facet-width m(L), or `inf`.
    Width { file: PathBuf },
    /// Write R_L(P) = conv(P \ int L) as an H-file.
    Remove {
        p: PathBuf,
        l: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Intersect R_L(P) over a family and report the cuts.
    Closure {
        p: PathBuf,
        /// Splits with ‖a‖∞ ≤ N.
        #[arg(long, value_name = "N", conflicts_with = "family")]
        splits_max_norm: Option<u64>,
        /// Inclusive offset range `A..B`; defaults to the offsets relevant for P.
        #[arg(long, value_name = "A..B", requires = "splits_max_norm", allow_hyphen_values = true)]
        offsets: Option<String>,
        /// Explicit family members.
        #[arg(long, num_args = 1.., value_name = "FILE")]
        family: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the indices of a dominating antichain of the family.
    Filter {
        p: PathBuf,
        #[arg(required = true)]
        family: Vec<PathBuf>,
    },
    /// Report lattice-freeness, maximality and width.
    Check { l: PathBuf },
    /// Build the thin body L_k and print its verification block.
    Example {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List maximal lattice-free polytopes L with conv(L ∩ ℤ^d) = P and m(L) = m.
    EnumCirc {
        p: PathBuf,
        #[arg(long)]
        m: u64,
        /// Group the output into ℤ^d-equivalence classes.
        #[arg(long)]
        classes: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(latcut::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(e) if e.is_precondition() => 2,
            Failure::Lib(latcut::Error::Parse { .. }) => 1,
            Failure::Lib(_) => 3,
        }
    }
}

impl From<latcut::Error> for Failure {
    fn from(e: latcut::Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn workers() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(1)
}

fn load(path: &Path) -> std::result::Result<Polyhedron, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    read_polyhedron(&text).map_err(|e| match e {
        latcut::Error::Parse { line, message } => Failure::Usage(format!("{}:{line}: {message}", path.display())),
        other => Failure::Lib(other),
    })
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Outcome {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

/// Parses `A..B` (or `A..=B`) as an inclusive range.
pub fn parse_offsets(s: &str) -> Option<RangeInclusive<i64>> {
    let (a, b) = s.split_once("..")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    Some(a..=b)
}

fn row(c: &latcut::polyhedron::Constraint) -> String {
    std::iter::once(c.bound().to_string())
        .chain(c.normal().iter().map(ToString::to_string))
        .collect::<Vec<_>>()
        .join(" ")
}

fn split_label(s: &SplitSpec) -> String {
    let a: Vec<String> = s.normal().iter().map(ToString::to_string).collect();
    format!("split a=({}) i={}", a.join(","), s.offset())
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    let mut text = String::new();
    match cmd {
        Command::Width { file } => {
            let l = load(&file)?;
            writeln!(text, "{}", max_facet_width(&l)?).expect("string write");
        }
        Command::Remove { p, l, output } => {
            let r = remove_interior(&load(&p)?, &load(&l)?)?;
            return emit(&write_h(&r), output.as_deref(), out);
        }
        Command::Closure {
            p,
            splits_max_norm,
            offsets,
            family,
            output,
        } => {
            let p = load(&p)?;
            let (bodies, labels): (Vec<Polyhedron>, Vec<String>) = match splits_max_norm {
                Some(n) => {
                    let specs = match offsets {
                        Some(s) => {
                            let r = parse_offsets(&s)
                                .ok_or_else(|| Failure::Usage(format!("invalid offset range `{s}`")))?;
                            splits(p.dim(), n, r)?
                        }
                        None => relevant_splits(&p, n)?,
                    };
                    specs.iter().map(|s| (s.body(), split_label(s))).unzip()
                }
                None => {
                    let mut b = Vec::with_capacity(family.len());
                    for f in &family {
                        b.push(load(f)?);
                    }
                    (b, family.iter().map(|f| f.display().to_string()).collect())
                }
            };
            let c = closure_with_cuts(&p, &bodies, workers())?;
            let mut report = String::new();
            for bc in &c.cuts {
                for h in &bc.cuts {
                    let tag = if h.infeasibility { " (infeasible)" } else { "" };
                    writeln!(report, "# cut {} <- {}{tag}", row(&h.constraint), labels[bc.body]).expect("string write");
                }
            }
            let file = write_h(&c.polyhedron);
            match output {
                Some(path) => {
                    emit(&file, Some(&path), out)?;
                    text = report;
                }
                None => text = file + &report,
            }
        }
        Command::Filter { p, family } => {
            let p = load(&p)?;
            let mut bodies = Vec::with_capacity(family.len());
            for f in &family {
                bodies.push(load(f)?);
            }
            let kept = minimal_dominating_subfamily_with(&p, &bodies, workers())?;
            let idx: Vec<String> = kept.iter().map(ToString::to_string).collect();
            writeln!(text, "{}", idx.join(" ")).expect("string write");
        }
        Command::Check { l } => {
            let l = load(&l)?;
            let free = is_lattice_free(&l)?;
            let maximal = free && is_maximal_lattice_free(&l)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            writeln!(
                text,
                "lattice-free: {}, maximal: {}, width: {}",
                yn(free),
                yn(maximal),
                max_facet_width(&l)?
            )
            .expect("string write");
        }
        Command::Example { dim, k, output } => {
            let e = example_family(dim, k)?;
            let r = &e.report;
            let mut block = String::new();
            writeln!(block, "# L_{k} in dimension {dim}").expect("string write");
            writeln!(block, "# vol(P) = {}", r.base_volume).expect("string write");
            writeln!(block, "# vol(L_k) = {}", r.volume).expect("string write");
            writeln!(
                block,
                "# vol(L_k) * k * 2^(d-1) = {}",
                &r.volume * latcut::exact::rat_int(&latcut::exact::int((k << (dim - 1)) as i64))
            )
            .expect("string write");
            let pts: Vec<String> = r
                .lattice_points
                .iter()
                .map(|z| format!("({})", z.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(block, "# lattice points ({}): {}", pts.len(), pts.join(" ")).expect("string write");
            writeln!(block, "# maximal lattice-free: {}", if r.maximal { "yes" } else { "no" }).expect("string write");
            writeln!(block, "# m(P) = {}, m(L_k) = {}, bound d*2^(d-1) = {}", r.base_width, r.width, r.width_bound)
                .expect("string write");
            let file = write_h(&e.body);
            match output {
                Some(path) => {
                    emit(&file, Some(&path), out)?;
                    text = block;
                }
                None => text = file + &block,
            }
        }
        Command::EnumCirc { p, m, classes } => {
            let p = load(&p)?;
            let found = enumerate_circumscribed(&p, m)?;
            writeln!(text, "# {} bodies", found.len()).expect("string write");
            let class_of = if classes { Some(group_classes(&found)?) } else { None };
            for (i, l) in found.iter().enumerate() {
                match &class_of {
                    Some(c) => writeln!(text, "# body {i} class {}", c[i]),
                    None => writeln!(text, "# body {i}"),
                }
                .expect("string write");
                text.push_str(&write_h(l));
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
}

/// Class index of each body; classes are numbered by first occurrence.
fn group_classes(bodies: &[Polyhedron]) -> std::result::Result<Vec<usize>, Failure> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(bodies.len());
    'next: for (i, b) in bodies.iter().enumerate() {
        for (c, &r) in reps.iter().enumerate() {
            if zd_equivalent(&bodies[r], b)?.is_some() {
                class.push(c);
                continue 'next;
            }
        }
        class.push(reps.len());
        reps.push(i);
    }
    Ok(class)
}

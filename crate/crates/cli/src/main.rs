//! `primexp`: exponents, cycles and bounds for primitive digraphs, plus the
//! verification runs.
//!
//! Exit codes: 0 success, 1 an asserted check failed, 2 usage error,
//! 3 bad input (unreadable file, parse error, invalid parameters).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use primexp::exponent::{
    self, formula_thm33, lemma22_bound, lemma23_bound, lemma25_bound, lemma26_bound, lemma32_bound,
    lemma34_bound, thm36_range,
};
use primexp::graph::{simple_cycles, DEFAULT_CYCLE_CAP};
use primexp::verify::{self, BoundsParams, CensusTable, Report};
use primexp::{are_isomorphic, frobenius_of, BoolMatrix, Digraph, Error, FamilySpec};

const EXIT_ASSERT: u8 = 1;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "primexp",
    version,
    about = "Exponents and girth of primitive Boolean matrices"
)]
struct Cli {
    /// Print details instead of a single result line.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Matrix text file: the order, then one 0/1 line per row.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,

    /// Named construction, e.g. `d_gN:n=10,g=3,N=1,2`.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive exponent.
    Exp(GraphInput),
    /// Length of a shortest cycle.
    Girth(GraphInput),
    /// Simple cycles and the set of cycle lengths.
    Cycles {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cap: usize,
    },
    /// Least m such that every integer >= m is a combination of the values.
    Frobenius {
        #[arg(required = true)]
        values: Vec<u64>,
    },
    /// Shortest walks meeting a cycle of every length.
    Cwalk(GraphInput),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Build a named digraph and print its matrix.
    Family(FamilyArgs),
    /// Test two digraphs for isomorphism.
    Iso(IsoArgs),
    /// Verification runs that write JSON-lines reports.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Lemma22,
    Lemma23,
    Lemma25,
    Lemma26,
    Lemma32,
    Lemma34,
    #[value(name = "formula-thm33")]
    FormulaThm33,
    #[value(name = "range-thm36")]
    RangeThm36,
}

#[derive(Args)]
struct BoundArgs {
    kind: BoundKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Digraph for lemma22, which depends on the cycle structure.
    #[arg(short = 'f', long = "file", conflicts_with = "family")]
    file: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Cycle,
    D1,
    D2,
    #[value(name = "d_gN", alias = "dgn")]
    DgN,
    Q1,
    Q2,
    H,
    Chord,
}

#[derive(Args)]
struct FamilyArgs {
    kind: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    g: Option<usize>,
    /// Chord indices for d_gN, comma separated.
    #[arg(long = "N", value_delimiter = ',')]
    chords: Vec<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Chord positions for chord, bit i-1 for position i.
    #[arg(long)]
    mask: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IsoArgs {
    #[arg(
        short = 'a',
        conflicts_with = "family_a",
        required_unless_present = "family_a"
    )]
    a: Option<PathBuf>,
    #[arg(
        short = 'b',
        conflicts_with = "family_b",
        required_unless_present = "family_b"
    )]
    b: Option<PathBuf>,
    #[arg(long)]
    family_a: Option<String>,
    #[arg(long)]
    family_b: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// JSON-lines report path; the CSV summary and findings go next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Upper bounds on random primitive digraphs and chord families.
    Bounds {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Additional two-cycle-union instances (longest cycle shorter than n).
        #[arg(long, default_value_t = 2_000)]
        pair_samples: u64,
        /// Also sweep the chord family `n,g`; repeatable.
        #[arg(long, value_parser = parse_pair)]
        chord: Vec<(usize, usize)>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exhaustive top-two exponent classes at order 4 or 5.
    Lemma24 {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exponent formula for every D_{g,N}.
    Thm33 {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Upper bound for H(n, g, k).
    Lemma34 {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exponent-window characterization over a chord family.
    Thm36 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Isomorphism classes of primitive digraphs with their invariants.
    Census {
        #[arg(long, required_unless_present = "merge")]
        n: Option<usize>,
        /// First enumeration index (inclusive).
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Last enumeration index (exclusive); defaults to 2^(n*n).
        #[arg(long)]
        end: Option<u64>,
        /// Combine census files from disjoint ranges instead of scanning.
        #[arg(long, num_args = 1.., conflicts_with_all = ["n", "end"])]
        merge: Vec<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,g")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

enum Failure {
    Assert(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(file: Option<&Path>, family: Option<&str>) -> Result<Digraph, Failure> {
    match (file, family) {
        (Some(path), _) => {
            let text = read(path)?;
            let m: BoolMatrix = text
                .parse()
                .map_err(|e: Error| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Digraph::from_matrix(m))
        }
        (None, Some(spec)) => Ok(spec.parse::<FamilySpec>()?.build()?),
        (None, None) => Err(Failure::Input(
            "no digraph given; use -f FILE or --family SPEC".into(),
        )),
    }
}

fn load_input(input: &GraphInput) -> Result<Digraph, Failure> {
    load(input.file.as_deref(), input.family.as_deref())
}

fn require(v: Option<usize>, name: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Input(format!("--{name} is required for this bound")))
}

fn run(cli: Cli) -> Outcome {
    let verbose = cli.verbose;
    match cli.command {
        Command::Exp(input) => {
            let d = load_input(&input)?;
            let r = exponent::exponent(&d)?;
            if verbose {
                println!("exponent {}", r.value);
                if let Some((u, v)) = r.certificate {
                    println!("no walk of length {} from v{u} to v{v}", r.value - 1);
                }
            } else {
                println!("{}", r.value);
            }
        }
        Command::Girth(input) => {
            let d = load_input(&input)?;
            match d.girth() {
                Some(g) => println!("{g}"),
                None => println!("none"),
            }
        }
        Command::Cycles { input, cap } => {
            let d = load_input(&input)?;
            let search = simple_cycles(&d, cap)?;
            let p = &search.profile;
            let lengths: Vec<String> = p.lengths.iter().map(|l| l.to_string()).collect();
            println!(
                "lengths={} cycles={}{}",
                lengths.join(","),
                p.cycle_count,
                if p.cap_hit {
                    " (cap hit, incomplete)"
                } else {
                    ""
                }
            );
            if verbose {
                for c in &search.cycles {
                    let vs: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                    println!("{}", vs.join(" "));
                }
            }
        }
        Command::Frobenius { values } => println!("{}", frobenius_of(&values)?),
        Command::Cwalk(input) => {
            let d = load_input(&input)?;
            let cw = exponent::c_walk_distances(&d)?;
            println!("d(C)={} at ({},{})", cw.max, cw.arg_max.0, cw.arg_max.1);
            if verbose {
                for row in cw.rows() {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    println!("{}", cells.join(" "));
                }
            }
        }
        Command::Bound(args) => bound(&args)?,
        Command::Family(args) => family(&args)?,
        Command::Iso(args) => {
            let a = load(args.a.as_deref(), args.family_a.as_deref())?;
            let b = load(args.b.as_deref(), args.family_b.as_deref())?;
            match are_isomorphic(&a, &b)? {
                Some(p) => println!("isomorphic {p}"),
                None => println!("not isomorphic"),
            }
        }
        Command::Verify(cmd) => return verify_cmd(cmd, verbose),
    }
    Ok(())
}

fn bound(args: &BoundArgs) -> Outcome {
    let n = || require(args.n, "n");
    let g = || require(args.g, "g");
    let value = match args.kind {
        BoundKind::Lemma22 => {
            let d = load(args.file.as_deref(), args.family.as_deref())?;
            lemma22_bound(&d)?
        }
        BoundKind::Lemma23 => lemma23_bound(n()?, g()?)?,
        BoundKind::Lemma25 => lemma25_bound(n()?)?,
        BoundKind::Lemma26 => lemma26_bound(n()?, g()?, require(args.q, "q")?)?,
        BoundKind::Lemma32 => lemma32_bound(n()?, g()?)?,
        BoundKind::Lemma34 => lemma34_bound(n()?, g()?)?,
        BoundKind::FormulaThm33 => formula_thm33(n()?, g()?, require(args.r, "r")?)?,
        BoundKind::RangeThm36 => {
            let w = thm36_range(n()?, g()?)?;
            println!("({}, {}]", w.low_exclusive, w.high_inclusive);
            return Ok(());
        }
    };
    println!("{value}");
    Ok(())
}

fn family(args: &FamilyArgs) -> Outcome {
    let n = args.n;
    let g = || require(args.g, "g");
    let spec = match args.kind {
        FamilyKind::Cycle => FamilySpec::StandardCycle { n },
        FamilyKind::D1 => FamilySpec::D1 { n },
        FamilyKind::D2 => FamilySpec::D2 { n },
        FamilyKind::DgN => FamilySpec::d_gn(n, g()?, &args.chords)?,
        FamilyKind::Q1 => FamilySpec::Q1 { n, g: g()? },
        FamilyKind::Q2 => FamilySpec::Q2 { n, g: g()? },
        FamilyKind::H => FamilySpec::H {
            n,
            g: g()?,
            k: require(args.k, "k")?,
        },
        FamilyKind::Chord => FamilySpec::ChordFamilyMember {
            n,
            g: g()?,
            mask: args
                .mask
                .ok_or_else(|| Failure::Input("--mask is required for chord".into()))?,
        },
    };
    let text = spec.build()?.to_matrix().to_string();
    match &args.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Input("--jobs must be at least 1".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Failure::Input(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn verify_cmd(cmd: VerifyCommand, verbose: bool) -> Outcome {
    let (report, run) = match cmd {
        VerifyCommand::Bounds {
            seed,
            n_max,
            samples,
            pair_samples,
            chord,
            run,
        } => {
            let params = BoundsParams {
                n_max,
                samples,
                seed,
                pair_samples,
                chord_families: chord,
            };
            (
                with_pool(run.jobs, || verify::verify_bounds(&params))??,
                run,
            )
        }
        VerifyCommand::Lemma24 { n, run } => {
            (with_pool(run.jobs, || verify::verify_lemma24(n))??, run)
        }
        VerifyCommand::Thm33 { n_min, n_max, run } => (
            with_pool(run.jobs, || verify::verify_thm33(n_min, n_max))??,
            run,
        ),
        VerifyCommand::Lemma34 { n_max, run } => {
            (with_pool(run.jobs, || verify::verify_lemma34(n_max))??, run)
        }
        VerifyCommand::Thm36 { n, g, run } => {
            (with_pool(run.jobs, || verify::verify_thm36(n, g))??, run)
        }
        VerifyCommand::Census {
            n,
            start,
            end,
            merge,
            run,
        } => return census_cmd(n, start, end, &merge, &run, verbose),
    };
    finish(&report, &run, verbose)
}

fn finish(report: &Report, run: &RunArgs, verbose: bool) -> Outcome {
    if let Some(out) = &run.out {
        report.write(out)?;
    }
    let failures = report.asserted_failures().count();
    let asserted = report.rows.iter().filter(|r| r.asserted).count();
    if verbose {
        print!("{}", report.findings_text());
        print!("{}", report.summary_csv()?);
    }
    let line = format!(
        "{}: {} rows, {asserted} asserted, {failures} asserted failures",
        report.name,
        report.rows.len()
    );
    if failures > 0 {
        return Err(Failure::Assert(line));
    }
    println!("{line}");
    Ok(())
}

fn census_cmd(
    n: Option<usize>,
    start: u64,
    end: Option<u64>,
    merge: &[PathBuf],
    run: &RunArgs,
    verbose: bool,
) -> Outcome {
    let table = if merge.is_empty() {
        let n = n.expect("clap requires --n without --merge");
        if !(2..=verify::CENSUS_ORDER_CAP).contains(&n) {
            return Err(Failure::Input(format!(
                "census needs 2 <= n <= {}, got {n}",
                verify::CENSUS_ORDER_CAP
            )));
        }
        let end = end.unwrap_or_else(|| verify::census_size(n));
        with_pool(run.jobs, || verify::census(n, start, end))??
    } else {
        let mut acc: Option<CensusTable> = None;
        for path in merge {
            let t = CensusTable::from_jsonl(&read(path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.merge(t)?,
            });
        }
        acc.expect("at least one file")
    };
    if let Some(out) = &run.out {
        table.write(out)?;
    }
    if verbose {
        print!("{}", table.summary_csv()?);
    }
    println!(
        "census n={}: {} classes, {} labelled primitive matrices",
        table.n,
        table.rows.len(),
        table.labelled_total()
    );
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assert(msg)) => {
            eprintln!("assertion failure: {msg}");
            ExitCode::from(EXIT_ASSERT)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

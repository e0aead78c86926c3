use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxdensity::ingest::{self, Decimal, GcDecoder, InputFormat, ScaledPairs};
use maxdensity::oracle::{brute_force_cost, brute_force_solve};
use maxdensity::{
    solve, solve_sparse, CandidateEvent, Density, Error, NumberPair, ProblemInstance,
    RunLengthSequence, Solution, StreamingSolver,
};

mod bench;
mod report;

use report::{Line, Scales};

/// Brute force is refused above this many inspected segments.
const VERIFY_GUARD: u64 = 100_000_000;

/// Fixed scale for streamed pairs, whose digits are not known up front.
const STREAM_DIGITS: u32 = 6;

#[derive(Parser)]
#[command(
    name = "maxdensity",
    version,
    about = "Maximum-density segment search with width bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a maximum-density segment.
    Solve(SolveArgs),
    /// Cross-check the fast solvers against brute force.
    Verify(VerifyArgs),
    /// Measure work counters on synthetic instances.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Minimum segment width.
    #[arg(long, value_parser = parse_bound)]
    wmin: Decimal,
    /// Maximum segment width; defaults to the total width.
    #[arg(long, value_parser = parse_bound)]
    wmax: Option<Decimal>,
    #[arg(long, default_value = "pairs", value_parser = parse_format)]
    format: InputFormat,
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Auto,
    Brute,
    Linear,
    Sparse,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: Algorithm,
    /// Print every candidate the solver considers, then the result.
    #[arg(long)]
    all: bool,
    /// Read the input incrementally and solve online.
    #[arg(long)]
    stream: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Perturbs the linear result; exercises the divergence path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
    sizes: Vec<usize>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "uniform,alternating"
    )]
    families: Vec<bench::Family>,
    #[arg(long, default_value_t = 8)]
    wmin: i64,
    #[arg(long, default_value_t = 16)]
    wmax: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn parse_bound(s: &str) -> Result<Decimal, String> {
    let d: Decimal = s.parse()?;
    if d.mantissa <= 0 {
        return Err("width bound must be positive".into());
    }
    Ok(d)
}

fn parse_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
    Guard(u64),
    Divergence,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn report(&self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Lib(Error::NoFeasibleSegment) => {
                eprintln!("error: no segment satisfies the width bounds");
                ExitCode::from(3)
            }
            Failure::Lib(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            Failure::Io(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            Failure::Guard(cost) => {
                eprintln!(
                    "error: brute force would inspect {cost} segments (limit {VERIFY_GUARD})"
                );
                ExitCode::from(4)
            }
            Failure::Divergence => ExitCode::from(1),
        }
    }
}

type Outcome = Result<(), Failure>;

/// A parsed input ready for the solvers.
enum Loaded {
    Dense {
        inst: ProblemInstance,
        scales: Scales,
    },
    Runs {
        rls: RunLengthSequence,
        w_min: usize,
        w_max: usize,
        value_digits: u32,
    },
}

impl Loaded {
    fn dense(&self) -> Result<(ProblemInstance, Scales), Failure> {
        match self {
            Loaded::Dense { inst, scales } => Ok((inst.clone(), *scales)),
            Loaded::Runs {
                rls,
                w_min,
                w_max,
                value_digits,
            } => {
                let inst = ProblemInstance::new(rls.expand(), *w_min as i64, *w_max as i64)?;
                Ok((
                    inst,
                    Scales {
                        value_digits: *value_digits,
                        width_digits: 0,
                    },
                ))
            }
        }
    }
}

fn open(path: &PathBuf) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn read_all(path: &PathBuf) -> io::Result<String> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text)?;
    Ok(text)
}

fn bound_digits(args: &InputArgs) -> u32 {
    args.wmin.digits.max(args.wmax.map_or(0, |d| d.digits))
}

fn scale_bound(d: Decimal, digits: u32) -> Result<i64, Failure> {
    d.scaled(digits)
        .ok_or_else(|| Failure::Usage("width bound outside the supported range".into()))
}

fn check_order(args: &InputArgs) -> Outcome {
    if let Some(wmax) = args.wmax {
        let digits = bound_digits(args);
        if scale_bound(args.wmin, digits)? > scale_bound(wmax, digits)? {
            return Err(Failure::Usage("--wmin exceeds --wmax".into()));
        }
    }
    Ok(())
}

fn load_dense(mut sp: ScaledPairs, args: &InputArgs) -> Result<Loaded, Failure> {
    sp.rescale_widths(sp.width_digits.max(bound_digits(args)))?;
    let wd = sp.width_digits;
    let w_min = scale_bound(args.wmin, wd)?;
    let w_max = match args.wmax {
        Some(d) => scale_bound(d, wd)?,
        None => sp.pairs.iter().map(|p| p.w).sum::<i64>().max(w_min),
    };
    let inst = ProblemInstance::new(sp.pairs, w_min, w_max)?;
    Ok(Loaded::Dense {
        inst,
        scales: Scales {
            value_digits: sp.value_digits,
            width_digits: wd,
        },
    })
}

fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    check_order(args)?;
    let text = read_all(&args.input)?;
    match args.format {
        InputFormat::Pairs => load_dense(ingest::parse_pairs(&text)?, args),
        InputFormat::Fasta => {
            let track = ingest::parse_fasta_gc(&text)?;
            if track.ambiguous > 0 {
                eprintln!(
                    "warning: {} ambiguous bases counted as non-GC",
                    track.ambiguous
                );
            }
            let sp = ScaledPairs {
                pairs: track.pairs,
                value_digits: 0,
                width_digits: 0,
            };
            load_dense(sp, args)
        }
        InputFormat::Rle => {
            let rle = ingest::parse_rle(&text)?;
            let n = rle.rls.len();
            // every width is an integer, so the bounds round inward
            let unit = 10i64.pow(args.wmin.digits);
            let w_min = (args.wmin.mantissa + unit - 1) / unit;
            let w_max = match args.wmax {
                Some(d) => d.mantissa / 10i64.pow(d.digits),
                None => n as i64,
            };
            if w_max < w_min {
                return Err(Failure::Lib(Error::NoFeasibleSegment));
            }
            Ok(Loaded::Runs {
                rls: rle.rls,
                w_min: w_min as usize,
                w_max: w_max as usize,
                value_digits: rle.value_digits,
            })
        }
    }
}

/// Collects `--all` output, printing text lines as they arrive.
struct EventSink {
    json: bool,
    scales: Scales,
    lines: Vec<Line>,
}

impl EventSink {
    fn new(json: bool, scales: Scales) -> Self {
        Self {
            json,
            scales,
            lines: Vec::new(),
        }
    }

    fn accept(&mut self, event: &CandidateEvent) {
        let line = Line::from_event(event, self.scales);
        if self.json {
            self.lines.push(line);
        } else {
            println!("{}", line.text());
        }
    }

    fn finish(self, best: &Solution) {
        let best = Line::from_solution(best, self.scales);
        if self.json {
            let doc = serde_json::json!({ "best": best, "events": self.lines });
            println!("{doc}");
        } else {
            println!("{}", best.text());
        }
    }
}

fn print_best(best: &Solution, scales: Scales, json: bool) {
    let line = Line::from_solution(best, scales);
    if json {
        println!("{}", serde_json::to_string(&line).expect("line serializes"));
    } else {
        println!("{}", line.text());
    }
}

fn run_solve(args: &SolveArgs) -> Outcome {
    if args.stream {
        return run_stream(args);
    }
    let loaded = load(&args.input)?;
    let algorithm = match (args.algorithm, &loaded) {
        (Algorithm::Auto, Loaded::Runs { .. }) => Algorithm::Sparse,
        (Algorithm::Auto, Loaded::Dense { .. }) => Algorithm::Linear,
        (Algorithm::Sparse, Loaded::Dense { .. }) => {
            return Err(Failure::Usage(
                "--algorithm sparse requires --format rle".into(),
            ))
        }
        (a, _) => a,
    };
    match algorithm {
        Algorithm::Sparse => {
            let Loaded::Runs {
                rls,
                w_min,
                w_max,
                value_digits,
            } = &loaded
            else {
                unreachable!("sparse needs run-length input");
            };
            let report = solve_sparse(rls, *w_min, *w_max)?;
            let scales = Scales {
                value_digits: *value_digits,
                width_digits: 0,
            };
            print_best(&report.best, scales, args.json);
        }
        Algorithm::Brute => {
            let (inst, scales) = loaded.dense()?;
            print_best(&brute_force_solve(&inst)?, scales, args.json);
        }
        _ => {
            let (inst, scales) = loaded.dense()?;
            if args.all {
                let mut sink = EventSink::new(args.json, scales);
                let report = solve(&inst, &mut |e: &CandidateEvent| sink.accept(e))?;
                sink.finish(&report.best);
            } else {
                let report = solve(&inst, &mut maxdensity::NoObserver)?;
                print_best(&report.best, scales, args.json);
            }
        }
    }
    Ok(())
}

fn run_stream(args: &SolveArgs) -> Outcome {
    let input = &args.input;
    check_order(input)?;
    if !matches!(args.algorithm, Algorithm::Auto | Algorithm::Linear) {
        return Err(Failure::Usage(
            "--stream supports only the linear algorithm".into(),
        ));
    }
    let (scales, unit_width) = match input.format {
        InputFormat::Pairs => {
            let wd = STREAM_DIGITS.max(bound_digits(input));
            (
                Scales {
                    value_digits: STREAM_DIGITS,
                    width_digits: wd,
                },
                None,
            )
        }
        InputFormat::Fasta => {
            let wd = bound_digits(input);
            (
                Scales {
                    value_digits: 0,
                    width_digits: wd,
                },
                Some(10i64.pow(wd)),
            )
        }
        InputFormat::Rle => {
            return Err(Failure::Usage(
                "--stream does not accept run-length input".into(),
            ))
        }
    };
    let w_min = scale_bound(input.wmin, scales.width_digits)?;
    let w_max = match input.wmax {
        Some(d) => scale_bound(d, scales.width_digits)?,
        None => i64::MAX,
    };
    let mut solver = StreamingSolver::new(w_min, w_max)?;
    let mut sink = EventSink::new(args.json, scales);
    let mut decoder = GcDecoder::new();
    let mut pending: Vec<NumberPair> = Vec::new();
    for (k, line) in open(&input.input)?.lines().enumerate() {
        let line = line?;
        match unit_width {
            None => {
                let digits = scales.value_digits;
                if let Some(p) = ingest::parse_pair_line(&line, k + 1, digits, scales.width_digits)?
                {
                    pending.push(p);
                }
            }
            Some(w) => {
                decoder.feed_line(&line, k + 1, |p| pending.push(NumberPair::new(p.a, w)))?
            }
        }
        for p in pending.drain(..) {
            for event in solver.push(p)? {
                if args.all {
                    sink.accept(&event);
                }
            }
        }
    }
    if solver.ingested() == 0 {
        return Err(Failure::Lib(Error::EmptySequence));
    }
    if decoder.ambiguous() > 0 {
        eprintln!(
            "warning: {} ambiguous bases counted as non-GC",
            decoder.ambiguous()
        );
    }
    let mut tail = Vec::new();
    let report = solver.finalize_with(&mut |e: &CandidateEvent| tail.push(*e))?;
    if args.all {
        tail.iter().for_each(|e| sink.accept(e));
        sink.finish(&report.best);
    } else {
        print_best(&report.best, scales, args.json);
    }
    Ok(())
}

fn describe(name: &str, result: &Result<Solution, Error>, scales: Scales) {
    match result {
        Ok(best) => println!("{name}\t{}", Line::from_solution(best, scales).text()),
        Err(e) => println!("{name}\t{e}"),
    }
}

fn density_of(result: &Result<Solution, Error>) -> Result<Density, Error> {
    result.as_ref().map(|s| s.density).map_err(Clone::clone)
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let loaded = load(&args.input)?;
    let (inst, scales) = loaded.dense()?;
    let cost = brute_force_cost(&inst);
    if cost > VERIFY_GUARD {
        return Err(Failure::Guard(cost));
    }
    let brute = brute_force_solve(&inst);
    let mut linear = solve(&inst, &mut maxdensity::NoObserver).map(|r| r.best);
    if args.inject_fault {
        if let Ok(s) = &mut linear {
            s.density = Density::new(s.density.num - 1, s.density.den);
        }
    }
    describe("brute", &brute, scales);
    describe("linear", &linear, scales);
    let mut others = vec![("linear", linear)];
    if let Loaded::Runs {
        rls, w_min, w_max, ..
    } = &loaded
    {
        let sparse = solve_sparse(rls, *w_min, *w_max).map(|r| r.best);
        describe("sparse", &sparse, scales);
        others.push(("sparse", sparse));
    }
    let want = density_of(&brute);
    for (name, got) in &others {
        if density_of(got) != want {
            println!("divergence: {name} disagrees with brute");
            return Err(Failure::Divergence);
        }
    }
    println!("ok");
    Ok(())
}

fn run_bench(args: &BenchArgs) -> Outcome {
    if args.wmin <= 0 || args.wmin > args.wmax {
        return Err(Failure::Usage("bench needs 0 < --wmin <= --wmax".into()));
    }
    let rows = bench::run(&args.families, &args.sizes, args.wmin, args.wmax, args.seed);
    if args.json {
        println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
    } else {
        bench::print_table(&rows);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => run_bench(args),
    });
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(failure)) => failure.report(),
        Err(_) => ExitCode::from(70),
    }
}

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use synchro_core::{
    bound_table, certify, exact_rt, parse, rank_profile, serialize, synthesize, Automaton,
    CorpusKind, CorpusSpec, Error, DEFAULT_BUDGET,
};
use synchro_optim::{convergence_report, OptimError};

#[derive(Parser)]
#[command(
    name = "synchro",
    version,
    about = "Reset thresholds and reset-word synthesis for synchronizing automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write generated automata as .dfa files
    Gen(GenArgs),
    /// Exact reset threshold and a shortest reset word
    Rt(FileArgs),
    /// Length spectrum: lambda, gaps, rho and bucket counts
    Spectrum(FileArgs),
    /// Constructive reset word with per-step length guarantees
    Synth(FileArgs),
    /// Compare reset thresholds against the cubic bounds
    Certify(CertifyArgs),
    /// Best-over-rho LP optimum and the analytic maximizer for each n
    Opt(OptArgs),
}

#[derive(Args)]
struct Output {
    /// Emit a JSON envelope instead of text
    #[arg(long)]
    json: bool,
    /// Leave the timing field of the JSON envelope empty
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cerny,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    /// Maximum number of images explored by the breadth-first search
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    file: FileArgs,
    /// Report and compare the exact reset threshold
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct OptArgs {
    /// Comma-separated state counts, each at least 100
    #[arg(long, value_delimiter = ',', default_value = "258,516,1032,2064")]
    n_list: Vec<usize>,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Core(Error),
    Optim(OptimError),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Error::Parse { .. }) => 2,
            Failure::Core(Error::NotSynchronizing) => 3,
            Failure::Core(Error::BudgetExceeded { .. }) => 4,
            Failure::Core(_) | Failure::Optim(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Optim(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<OptimError> for Failure {
    fn from(e: OptimError) -> Self {
        Failure::Optim(e)
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Key-sorted JSON envelope around `payload`.
fn envelope(
    command: &str,
    digest: &str,
    payload: impl Serialize,
    started: Instant,
    output: &Output,
) -> String {
    let timing = if output.no_timing {
        Value::Null
    } else {
        json!({ "elapsed_ms": started.elapsed().as_secs_f64() * 1e3 })
    };
    let value = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": digest,
        "payload": serde_json::to_value(payload).expect("payload serializes"),
        "timing": timing,
    });
    serde_json::to_string_pretty(&value).expect("envelope serializes")
}

fn load(path: &Path) -> Result<(Automaton, String), Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|_| {
        Failure::Core(Error::Parse {
            line: 1,
            message: "input is not UTF-8".into(),
        })
    })?;
    let automaton = parse(&text)?;
    Ok((automaton, sha256_hex(text.as_bytes())))
}

fn gen(args: &GenArgs) -> Result<String, Failure> {
    let started = Instant::now();
    let spec = CorpusSpec {
        kind: match args.kind {
            Kind::Cerny => CorpusKind::Cerny,
            Kind::Random => CorpusKind::Random,
        },
        n: args.n,
        m: args.m,
        seed: args.seed,
        count: args.count,
    };
    let items = spec.generate()?;
    fs::create_dir_all(&args.out)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", args.out.display())))?;
    let mut files = Vec::with_capacity(items.len());
    for (name, automaton) in &items {
        let path = args.out.join(format!("{name}.dfa"));
        fs::write(&path, serialize(automaton))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        files.push(path.display().to_string());
    }
    if args.output.json {
        let digest = sha256_hex(
            serde_json::to_string(&spec)
                .expect("spec serializes")
                .as_bytes(),
        );
        Ok(envelope(
            "gen",
            &digest,
            json!({ "spec": spec, "files": files }),
            started,
            &args.output,
        ))
    } else {
        Ok(files.join("\n"))
    }
}

fn rt(args: &FileArgs) -> Result<String, Failure> {
    let started = Instant::now();
    let (a, digest) = load(&args.file)?;
    let (rt, word) = exact_rt(&a, args.budget)?;
    let text = word.display(a.letters()).to_string();
    if args.output.json {
        let payload = json!({ "rt": rt, "word": text, "letters": word });
        Ok(envelope("rt", &digest, payload, started, &args.output))
    } else {
        Ok(format!("rt={rt} word={text}"))
    }
}

fn spectrum(args: &FileArgs) -> Result<String, Failure> {
    let started = Instant::now();
    let (a, digest) = load(&args.file)?;
    let profile = rank_profile(&a, args.budget)?;
    if args.output.json {
        Ok(envelope(
            "spectrum",
            &digest,
            &profile,
            started,
            &args.output,
        ))
    } else {
        Ok(render::profile(&profile, a.letters()))
    }
}

fn synth(args: &FileArgs) -> Result<String, Failure> {
    let started = Instant::now();
    let (a, digest) = load(&args.file)?;
    let trace = synthesize(&a, args.budget)?;
    if args.output.json {
        let mut payload = serde_json::to_value(&trace).expect("trace serializes");
        payload["final_word_text"] = json!(trace.final_word.display(a.letters()).to_string());
        payload["all_bounds_ok"] = json!(trace.all_bounds_ok());
        Ok(envelope("synth", &digest, payload, started, &args.output))
    } else {
        Ok(render::trace(&trace, a.letters()))
    }
}

fn certify_cmd(args: &CertifyArgs) -> Result<String, Failure> {
    let started = Instant::now();
    let (a, digest) = load(&args.file.file)?;
    let report = certify(&a, args.exact, args.file.budget)?;
    if args.file.output.json {
        Ok(envelope(
            "certify",
            &digest,
            &report,
            started,
            &args.file.output,
        ))
    } else {
        Ok(render::certificate(&report))
    }
}

fn opt(args: &OptArgs) -> Result<String, Failure> {
    let started = Instant::now();
    if args.n_list.is_empty() {
        return Err(Failure::Usage("--n-list is empty".into()));
    }
    if let Some(n) = args.n_list.iter().find(|&&n| n < 100) {
        return Err(Failure::Usage(format!(
            "--n-list values must be at least 100, got {n}"
        )));
    }
    let report = convergence_report(&args.n_list)?;
    let bounds = bound_table(&args.n_list)?;
    if args.output.json {
        let joined: Vec<String> = args.n_list.iter().map(|n| n.to_string()).collect();
        let digest = sha256_hex(joined.join(",").as_bytes());
        let payload = json!({ "convergence": report, "bounds": bounds });
        Ok(envelope("opt", &digest, payload, started, &args.output))
    } else if args.csv {
        Ok(render::convergence_csv(&report))
    } else {
        Ok(render::convergence(&report, &bounds))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Gen(args) => gen(args),
        Command::Rt(args) => rt(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Synth(args) => synth(args),
        Command::Certify(args) => certify_cmd(args),
        Command::Opt(args) => opt(args),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("synchro: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

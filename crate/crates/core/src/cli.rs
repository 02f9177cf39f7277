//! The `tmsat` command line.
//!
//! One binary, seven subcommands, three exit codes: 0 for success (and for
//! AGREE verdicts), 1 for a semantic disagreement between the encoder and
//! the simulator, 2 for anything wrong with the invocation or its inputs.
//! Nothing else is ever returned, and identical invocations produce
//! byte-identical output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use crate::cnf::{parse_dimacs, Assignment, CnfFormula};
use crate::machine::{
    accepts_nondet, enumerate_certificates, guess_and_check, parse_machine,
    MachineSpec, Verdict,
};
use crate::oracle::{reduce_and_query, transcript_report, OraclePredicate};
use crate::solver::{all_models_projected, brute_force_sat, dpll, SatVerdict};
use crate::tableau::{
    decode_model, encode, size_report, EncodeMode, Fidelity, ModeKind,
};

#[derive(Parser)]
#[command(
    name = "tmsat",
    version,
    about = "Compile bounded Turing-machine runs into CNF and cross-check the reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a machine run into a DIMACS CNF document
    Encode(EncodeArgs),
    /// Run the machine directly and print the witness trace
    Simulate(SimulateArgs),
    /// Decide satisfiability of a DIMACS document
    Solve(SolveArgs),
    /// Cross-check encoder satisfiability against the simulator
    Check(CheckArgs),
    /// List accepted certificates, directly and optionally via SAT
    Enumerate(EnumerateArgs),
    /// Run the query-machine reduction and print its transcript
    ReduceDemo(ReduceDemoArgs),
    /// Print per-group clause counts for an encoding
    Stats(StatsArgs),
}

#[derive(Args)]
struct MachineArgs {
    /// Machine description file
    #[arg(long)]
    machine: PathBuf,
    /// Input word, written in the machine's symbol names
    #[arg(long, default_value = "")]
    input: String,
    /// Step and tape bound
    #[arg(long)]
    steps: usize,
}

#[derive(Args)]
struct ModeArgs {
    /// What the first tableau row pins down
    #[arg(long, value_enum, default_value_t = ModeChoice::Full)]
    mode: ModeChoice,
    /// Pinned prefix length, cert-free mode only (default: input length)
    #[arg(long)]
    pin_len: Option<usize>,
    /// Certificate square count, cert-free mode only
    #[arg(long)]
    cert_len: Option<usize>,
    /// Rule translation flavour (default: literal when deterministic)
    #[arg(long, value_enum)]
    fidelity: Option<FidelityChoice>,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    machine: MachineArgs,
    #[command(flatten)]
    mode: ModeArgs,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    machine: MachineArgs,
    /// Certificate to lay out after the input and a separator blank
    #[arg(long)]
    cert: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS CNF file
    formula: PathBuf,
    #[arg(long, value_enum, default_value_t = EngineChoice::Dpll)]
    engine: EngineChoice,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    machine: MachineArgs,
    /// Rule translation flavour (default: literal when deterministic)
    #[arg(long, value_enum)]
    fidelity: Option<FidelityChoice>,
    /// Solve this DIMACS file in place of the encoder's output
    #[arg(long)]
    cnf_override: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    machine: MachineArgs,
    /// Certificate length in squares
    #[arg(long)]
    cert_len: usize,
    /// Also project certificates out of the SAT encoding and compare
    #[arg(long)]
    via_sat: bool,
}

#[derive(Args)]
struct ReduceDemoArgs {
    #[command(flatten)]
    machine: MachineArgs,
    #[arg(long, value_enum, default_value_t = OracleChoice::CnfSat)]
    oracle: OracleChoice,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    machine: MachineArgs,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeChoice {
    Full,
    CertFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FidelityChoice {
    Literal,
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Dpll,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    CnfSat,
    DnfTautology,
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version land on stdout and exit 0; everything else
            // is a usage error.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("tmsat: {message}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Encode(args) => cmd_encode(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Check(args) => cmd_check(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::ReduceDemo(args) => cmd_reduce_demo(args),
        Command::Stats(args) => cmd_stats(args),
    }
}

fn load_machine(path: &Path) -> Result<(MachineSpec, String), String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let machine =
        parse_machine(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok((machine, name))
}

fn parse_word(machine: &MachineSpec, text: &str) -> Result<Vec<usize>, String> {
    machine.parse_input(text).map_err(|e| e.to_string())
}

fn resolve_fidelity(machine: &MachineSpec, choice: Option<FidelityChoice>) -> Fidelity {
    match choice {
        Some(FidelityChoice::Literal) => Fidelity::Literal,
        Some(FidelityChoice::General) => Fidelity::General,
        None if machine.is_deterministic() => Fidelity::Literal,
        None => Fidelity::General,
    }
}

fn build_mode(
    machine: &MachineSpec,
    input_len: usize,
    args: &ModeArgs,
) -> Result<EncodeMode, String> {
    let kind = match args.mode {
        ModeChoice::Full => {
            if args.pin_len.is_some() || args.cert_len.is_some() {
                return Err(
                    "--pin-len and --cert-len only apply to --mode cert-free".into()
                );
            }
            ModeKind::Full
        }
        ModeChoice::CertFree => ModeKind::CertificateFree {
            pin_len: args.pin_len.unwrap_or(input_len),
            cert_len: args
                .cert_len
                .ok_or("--mode cert-free needs --cert-len")?,
        },
    };
    Ok(EncodeMode { kind, fidelity: resolve_fidelity(machine, args.fidelity) })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<i32, String> {
    let (machine, name) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let mode = build_mode(&machine, word.len(), &args.mode)?;
    let enc = encode(&machine, &word, args.machine.steps, mode)
        .map_err(|e| e.to_string())?;
    emit(args.output.as_deref(), &enc.to_dimacs(&name))?;
    Ok(0)
}

fn cmd_simulate(args: SimulateArgs) -> Result<i32, String> {
    let (machine, _) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let steps = args.machine.steps;
    let outcome = match &args.cert {
        Some(cert_text) => {
            let cert = parse_word(&machine, cert_text)?;
            guess_and_check(&machine, &word, &cert, steps)
        }
        None => accepts_nondet(&machine, &word, steps),
    }
    .map_err(|e| e.to_string())?;
    match &outcome.witness {
        Some(trace) => {
            for c in &trace.configs {
                println!(
                    "t={} state={} head={} tape={}",
                    c.step,
                    machine.states[c.state],
                    c.head,
                    machine.render_tape(&c.tape)
                );
            }
        }
        None => println!("NO-ACCEPT"),
    }
    Ok(0)
}

fn cmd_solve(args: SolveArgs) -> Result<i32, String> {
    let text = fs::read_to_string(&args.formula)
        .map_err(|e| format!("{}: {e}", args.formula.display()))?;
    let formula =
        parse_dimacs(&text).map_err(|e| format!("{}: {e}", args.formula.display()))?;
    let result = match args.engine {
        EngineChoice::Dpll => dpll(&formula),
        EngineChoice::Brute => brute_force_sat(&formula).map_err(|e| e.to_string())?,
    };
    match &result.model {
        Some(model) => {
            println!("SAT");
            println!("v {}", render_model(model));
        }
        None => println!("UNSAT"),
    }
    Ok(0)
}

fn render_model(model: &Assignment) -> String {
    let mut parts: Vec<String> = model
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let var = i as i64 + 1;
            if v { var.to_string() } else { (-var).to_string() }
        })
        .collect();
    parts.push("0".to_string());
    parts.join(" ")
}

fn cmd_check(args: CheckArgs) -> Result<i32, String> {
    let (machine, _) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let steps = args.machine.steps;

    let expected = accepts_nondet(&machine, &word, steps).map_err(|e| e.to_string())?;
    match expected.verdict {
        Verdict::Accept { step } => println!("simulator: accept step={step}"),
        Verdict::NoAccept => println!("simulator: no-accept"),
    }

    // With an override there is no layout to decode against, so the check
    // reduces to verdict agreement.
    let encoding = match args.cnf_override {
        Some(_) => None,
        None => {
            let fidelity = resolve_fidelity(&machine, args.fidelity);
            Some(
                encode(&machine, &word, steps, EncodeMode::full(fidelity))
                    .map_err(|e| e.to_string())?,
            )
        }
    };
    let override_formula: Option<CnfFormula> = match &args.cnf_override {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Some(
                parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?,
            )
        }
        None => None,
    };
    let formula = override_formula
        .as_ref()
        .or_else(|| encoding.as_ref().map(|e| &e.formula))
        .expect("either the override or the encoding is present");

    let result = dpll(formula);
    let sat = result.verdict == SatVerdict::Sat;
    println!("solver: {}", if sat { "sat" } else { "unsat" });

    let mut agree = sat == expected.accepted();
    if let (true, Some(enc)) = (sat, &encoding) {
        let model = result.model.as_ref().expect("sat result carries a model");
        match decode_model(enc, model) {
            Ok(trace) => {
                let accepting_step = trace.first_accepting_step(&enc.machine);
                let valid = trace.starts_at_initial()
                    && trace.follows_rules(&enc.machine)
                    && accepting_step.is_some();
                if valid {
                    println!(
                        "decode: trace valid, accepting step {}",
                        accepting_step.expect("validity includes acceptance")
                    );
                } else {
                    println!("decode: trace invalid");
                    agree = false;
                }
            }
            Err(e) => {
                println!("decode: {e}");
                agree = false;
            }
        }
    }

    if agree {
        println!("AGREE");
        Ok(0)
    } else {
        println!("DISAGREE");
        Ok(1)
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<i32, String> {
    let (machine, _) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let steps = args.machine.steps;

    let direct = enumerate_certificates(&machine, &word, args.cert_len, steps)
        .map_err(|e| e.to_string())?;
    for cert in &direct {
        println!("{}", machine.render_tape(cert));
    }
    if !args.via_sat {
        return Ok(0);
    }

    let mode = EncodeMode::certificate_free(word.len(), args.cert_len, Fidelity::General);
    let enc = encode(&machine, &word, steps, mode).map_err(|e| e.to_string())?;
    let squares = enc.certificate_squares();
    let mut vars = Vec::new();
    for &s in &squares {
        for j in 0..enc.machine.symbol_count() {
            vars.push(enc.layout.symbol_var(j, s, 1));
        }
    }
    let models =
        all_models_projected(&enc.formula, &vars).map_err(|e| e.to_string())?;
    let mut projected = Vec::with_capacity(models.len());
    for model in &models {
        let mut cert = Vec::with_capacity(squares.len());
        for &s in &squares {
            let symbol = (0..enc.machine.symbol_count())
                .find(|&j| {
                    model
                        .iter()
                        .any(|&(v, val)| v == enc.layout.symbol_var(j, s, 1) && val)
                })
                .expect("every model satisfies the one-symbol-per-square group");
            cert.push(symbol);
        }
        projected.push(cert);
    }
    projected.sort();

    println!("via-sat:");
    for cert in &projected {
        println!("{}", enc.machine.render_tape(cert));
    }
    if projected == direct {
        println!("AGREE");
        Ok(0)
    } else {
        println!("DISAGREE");
        Ok(1)
    }
}

fn cmd_reduce_demo(args: ReduceDemoArgs) -> Result<i32, String> {
    let (machine, _) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let oracle = match args.oracle {
        OracleChoice::CnfSat => OraclePredicate::CnfSat,
        OracleChoice::DnfTautology => OraclePredicate::DnfTautology,
    };
    let transcript = reduce_and_query(&machine, &word, args.machine.steps, oracle)
        .map_err(|e| e.to_string())?;
    print!("{}", transcript_report(&transcript));
    Ok(0)
}

fn cmd_stats(args: StatsArgs) -> Result<i32, String> {
    let (machine, _) = load_machine(&args.machine.machine)?;
    let word = parse_word(&machine, &args.machine.input)?;
    let mode = build_mode(&machine, word.len(), &args.mode)?;
    let report = size_report(&machine, &word, args.machine.steps, mode)
        .map_err(|e| e.to_string())?;
    for (group, count) in report.groups {
        println!("{group} {count}");
    }
    println!("clauses {}", report.clauses);
    println!("vars {}", report.vars);
    println!("literals {}", report.literals);
    Ok(0)
}

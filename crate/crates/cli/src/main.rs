mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use thiserror::Error;

use incomplab::codec::{self, pair, BitString};
use incomplab::constructions::{self as cons, Plant, Report};
use incomplab::proof::{check_proof, prove_search, AxiomSource, ProofScript};
use incomplab::syntax::{parse_sentence, Formula};
use incomplab::theory::{self, Theory};
use incomplab::tpl::{EnumeratorAxioms, Runtime, TplProgram};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "lab", version, about = "Codings, theories, proofs and incompleteness constructions")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Default step budget for simulations (env LAB_STEP_BUDGET).
    #[arg(long, global = true)]
    step_budget: Option<u64>,
    /// Default code budget for proof searches (env LAB_CODE_BUDGET).
    #[arg(long, global = true)]
    code_budget: Option<BigUint>,
    /// Directory for generated artifacts.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Seed for randomized test corpora (never used by constructions).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Bit-string, text and pairing codes.
    #[command(subcommand)]
    Codec(CodecCmd),
    /// Run and code TPL programs.
    #[command(subcommand)]
    Tpl(TplCmd),
    /// The theories T and S.
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// Check and search proofs.
    #[command(subcommand)]
    Proof(ProofCmd),
    /// The effective constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
}

#[derive(Subcommand)]
enum CodecCmd {
    /// Program code of a file's bytes.
    Encode { file: PathBuf },
    /// Text coded by a number.
    Decode { n: BigUint },
    /// The bit string coded by a number.
    Bits { n: BigUint },
    /// The number coding a bit string.
    FromBits { bits: String },
    /// `(n + m)^2 + n`.
    Pair { n: BigUint, m: BigUint },
    /// Inverse of `pair`; `none` (exit 1) outside its range.
    Unpair { p: BigUint },
}

#[derive(Subcommand)]
enum TplCmd {
    /// Run a program file.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "0")]
        input: BigUint,
        #[arg(long)]
        steps: Option<u64>,
    },
    /// Whether program `e` halts on `x` within `t` steps.
    Tau { e: BigUint, x: BigUint, t: BigUint },
    /// Program code of a file (after checking that it parses).
    Code { file: PathBuf },
}

#[derive(Subcommand)]
enum TheoryCmd {
    /// Axiom membership.
    Member { theory: Theory, sentence: String },
    /// Canonical enumeration.
    Enum {
        theory: Theory,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Decide an order-language sentence by quantifier elimination.
    Decide { sentence: String },
    /// Evaluate in the standard model.
    Eval {
        sentence: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ProofCmd {
    /// Check a proof script.
    Check {
        script: PathBuf,
        /// `T`, `S`, an enumerator `.tpl` or a finite `.fol` theory.
        #[arg(long)]
        theory: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Bounded search by increasing proof code.
    Search {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        budget: Option<BigUint>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Henkin completion over the order theory.
    Henkin {
        #[arg(long, default_value = "order")]
        base: String,
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
    /// Craig axiomatization of an enumerator.
    Craig { enumerator: String },
    /// The Kleene sentence of an enumerator.
    Kleene {
        enumerator: String,
        /// Plant the sentence at index 0 of the enumerator.
        #[arg(long)]
        plant: bool,
    },
    /// The Rosser pair of an enumerator.
    Rosser {
        enumerator: String,
        #[arg(long)]
        plant: Option<Plant>,
    },
    /// The halting diagonal against a claimed decider.
    Diagonal {
        decider: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The Rice reduction.
    Rice {
        enum_t: String,
        enum_s: String,
        #[arg(long)]
        psi: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// `Ok(true)` is exit 0, `Ok(false)` a valid negative result (exit 1).
type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(
        cli.global.step_budget,
        cli.global.code_budget.clone(),
        cli.global.seed,
        cli.global.out_dir.clone(),
    ) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Codec(c) => run_codec(c),
        Command::Tpl(c) => run_tpl(c, &cfg),
        Command::Theory(c) => run_theory(c, &cfg),
        Command::Proof(c) => run_proof(c, &cfg),
        Command::Construct(c) => run_construct(c, &cfg),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(cfg: &RunConfig, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.output_dir).map_err(|source| CliError::Io {
        path: cfg.output_dir.clone(),
        source,
    })?;
    let path = cfg.output_dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

fn sentence(text: &str) -> Result<Formula, CliError> {
    parse_sentence(text).map_err(|e| CliError::Input(format!("`{text}`: {e}")))
}

fn program(path: &Path) -> Result<TplProgram, CliError> {
    let src = read(path)?;
    TplProgram::parse(src.as_bytes()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `T`, `S`, a `.fol` file of sentences (one per line, `#` comments) or a
/// `.tpl` enumerator, as an enumerator code.
fn enumerator(arg: &str) -> Result<BigUint, CliError> {
    if let Ok(t) = arg.parse::<Theory>() {
        return Ok(theory::enumerator_code(t));
    }
    let path = Path::new(arg);
    if path.extension().is_some_and(|e| e == "fol") {
        let sentences = read_fol(path)?;
        return Ok(codec::program_code(theory::finite_enumerator_source(&sentences).as_bytes()));
    }
    Ok(program(path)?.code())
}

fn read_fol(path: &Path) -> Result<Vec<Formula>, CliError> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| sentence(l).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))))
        .collect()
}

fn print_report(r: &Report) {
    print!("{r}");
}

fn run_codec(c: CodecCmd) -> Outcome {
    match c {
        CodecCmd::Encode { file } => {
            let bytes = fs::read(&file).map_err(|source| CliError::Io { path: file, source })?;
            println!("{}", codec::program_code(&bytes));
        }
        CodecCmd::Decode { n } => {
            let bits = codec::nat_to_bits(&n);
            let text = codec::bits_to_ascii(&bits)
                .map_err(|e| CliError::Input(format!("bits \"{bits}\": {e}")))?;
            println!("{}", String::from_utf8_lossy(&text));
        }
        CodecCmd::Bits { n } => println!("\"{}\"", codec::nat_to_bits(&n)),
        CodecCmd::FromBits { bits } => {
            let b: BitString = bits.parse().map_err(input)?;
            println!("{}", codec::bits_to_nat(&b));
        }
        CodecCmd::Pair { n, m } => println!("{}", pair(&n, &m)),
        CodecCmd::Unpair { p } => match codec::unpair(&p) {
            Some((n, m)) => println!("{n} {m}"),
            None => {
                println!("none");
                return Ok(false);
            }
        },
    }
    Ok(true)
}

fn run_tpl(c: TplCmd, cfg: &RunConfig) -> Outcome {
    match c {
        TplCmd::Run { file, input, steps } => {
            let p = program(&file)?;
            let r = p.run(input, steps.unwrap_or(cfg.step_budget));
            println!("status: {:?}", r.status);
            println!("steps: {}", r.steps);
            match &r.out {
                incomplab::tpl::Value::Nat(n) => println!("out: {n}"),
                incomplab::tpl::Value::Bytes(b) => println!("out: \"{}\"", String::from_utf8_lossy(b)),
            }
            if let Some(f) = &r.fault {
                println!("fault: {f}");
            }
            Ok(r.halted())
        }
        TplCmd::Tau { e, x, t } => {
            let v = Runtime::new().tau_verdict(&e, &x, &t);
            println!("{}", v.halted_within);
            println!("steps: {}", v.steps_used);
            Ok(v.halted_within)
        }
        TplCmd::Code { file } => {
            println!("{}", program(&file)?.code());
            Ok(true)
        }
    }
}

fn run_theory(c: TheoryCmd, cfg: &RunConfig) -> Outcome {
    match c {
        TheoryCmd::Member { theory, sentence: s } => {
            let f = sentence(&s)?;
            let b = theory::member(theory, &mut Runtime::new(), &f);
            println!("{b}");
            Ok(b)
        }
        TheoryCmd::Enum { theory, from, count } => {
            let mut rt = Runtime::new();
            for i in from..from.saturating_add(count) {
                let f = theory::enumerate_axioms_with(theory, &mut rt, &BigUint::from(i));
                println!("{i}: {f}");
            }
            Ok(true)
        }
        TheoryCmd::Decide { sentence: s } => {
            let f = sentence(&s)?;
            let b = theory::decide_order_theory(&f).map_err(input)?;
            println!("{b}");
            Ok(b)
        }
        TheoryCmd::Eval { sentence: s, budget } => {
            let f = sentence(&s)?;
            let v = theory::eval_std(&f, budget.unwrap_or(cfg.step_budget));
            println!("{v}");
            Ok(v == theory::Verdict::TrueInN)
        }
    }
}

fn axioms<'r>(rt: &'r mut Runtime, theory: &str, cfg: &RunConfig) -> Result<EnumeratorAxioms<'r>, CliError> {
    Ok(EnumeratorAxioms {
        rt,
        enumerator: enumerator(theory)?,
        budget: cfg.step_budget,
        used: 0,
    })
}

fn run_proof(c: ProofCmd, cfg: &RunConfig) -> Outcome {
    match c {
        ProofCmd::Check { script, theory, target } => {
            let s = ProofScript::parse(&read(&script)?).map_err(input)?;
            let mut rt = Runtime::new();
            let mut ax = axioms(&mut rt, &theory, cfg)?;
            let target = target.as_deref().map(sentence).transpose()?;
            let checked = s.check(&mut ax).map_err(|e| e.to_string()).and_then(|d| {
                let concl = d.conclusion().clone();
                match &target {
                    Some(t) => check_proof(&s.to_proof(), &mut ax, t).map(|_| concl).map_err(|e| e.to_string()),
                    None => Ok(concl),
                }
            });
            match checked {
                Ok(concl) => {
                    println!("valid: true");
                    println!("steps: {}", s.steps.len());
                    println!("conclusion: {concl}");
                    println!("code: {}", s.to_proof().code());
                    Ok(true)
                }
                Err(e) => {
                    println!("valid: false");
                    println!("reason: {e}");
                    Ok(false)
                }
            }
        }
        ProofCmd::Search { theory, target, budget } => {
            let target = sentence(&target)?;
            let budget = budget.unwrap_or_else(|| cfg.code_budget.clone());
            let mut rt = Runtime::new();
            let mut ax = axioms(&mut rt, &theory, cfg)?;
            let found = prove_search(&mut ax as &mut dyn AxiomSource, &target, &budget).map_err(input)?;
            println!("code_budget: {budget}");
            match found {
                Some((c, p)) => {
                    println!("found: true");
                    println!("code: {c}");
                    let d = incomplab::proof::derive(&p, &mut ax).map_err(input)?;
                    print!("{}", ProofScript::from_derivation(&p, &d));
                    Ok(true)
                }
                None => {
                    println!("found: false");
                    Ok(false)
                }
            }
        }
    }
}

fn run_construct(c: ConstructCmd, cfg: &RunConfig) -> Outcome {
    match c {
        ConstructCmd::Henkin { base, count } => {
            if base != "order" {
                return Err(CliError::Input(format!("unknown base `{base}` (only `order` is available)")));
            }
            let mut dec = theory::OrderDecider::new();
            let st = cons::henkin_complete(&mut dec, cons::formula_from_index, count).map_err(input)?;
            let consistent = st.is_consistent(&mut dec).map_err(input)?;
            let asserted = st
                .committed
                .iter()
                .filter(|(_, p)| *p == cons::Polarity::Asserted)
                .count();
            let mut r = Report::new();
            r.push("construction", "henkin")
                .push("base", "order")
                .push("processed", st.committed.len())
                .push("asserted", asserted)
                .push("negated", st.committed.len() - asserted)
                .push("consistent", consistent);
            let fol: String = (0..st.committed.len())
                .filter_map(|j| st.sentence(j))
                .map(|f| format!("{f}\n"))
                .collect();
            write(cfg, "henkin.fol", &fol)?;
            write(cfg, "henkin.report", &r.to_string())?;
            print_report(&r);
            Ok(consistent)
        }
        ConstructCmd::Craig { enumerator: e } => {
            let mut craig = cons::Craig::new(&enumerator(&e)?).map_err(input)?;
            let r = craig.report();
            write(cfg, "craig_decider.tpl", craig.decider.source_text())?;
            write(cfg, "craig_enum.tpl", craig.hat_enumerator.source_text())?;
            write(cfg, "craig.report", &r.to_string())?;
            print_report(&r);
            Ok(true)
        }
        ConstructCmd::Kleene { enumerator: e, plant } => {
            let base = enumerator(&e)?;
            let e = if plant {
                let (src, code) = cons::planted_kleene_enumerator(&base).map_err(input)?;
                write(cfg, "planted_enum.tpl", &src)?;
                code
            } else {
                base
            };
            let k = cons::kleene_sentence(&e).map_err(input)?;
            let run = Runtime::new().run_code(&k.m, &k.m, cfg.step_budget);
            let mut r = k.report();
            r.push("planted", plant)
                .push("step_budget", cfg.step_budget)
                .push("searcher_halted", run.halted());
            if run.halted() {
                r.push("searcher_steps", run.steps);
            }
            write(cfg, "kleene_searcher.tpl", &k.source)?;
            write(cfg, "sentence.fol", &format!("{}\n", k.sentence))?;
            write(cfg, "kleene.report", &r.to_string())?;
            print_report(&r);
            Ok(true)
        }
        ConstructCmd::Rosser { enumerator: e, plant } => {
            let base = enumerator(&e)?;
            let e = match plant {
                Some(p) => {
                    let (src, code) = cons::planted_rosser_enumerator(&base, p).map_err(input)?;
                    write(cfg, "planted_enum.tpl", &src)?;
                    code
                }
                None => base,
            };
            let a = cons::rosser_pair(&e).map_err(input)?;
            let mut r = a.report();
            let input_nm = pair(&a.n, &a.m);
            let mut rt = Runtime::new();
            let rm = rt.run_code(&a.m, &input_nm, cfg.step_budget);
            let rn = rt.run_code(&a.n, &input_nm, cfg.step_budget);
            r.push(
                "planted",
                match plant {
                    Some(Plant::Pos) => "pos",
                    Some(Plant::Neg) => "neg",
                    None => "none",
                },
            )
            .push("step_budget", cfg.step_budget)
            .push("m_halted", rm.halted())
            .push("n_halted", rn.halted());
            if plant.is_none() {
                let mut ax = EnumeratorAxioms {
                    rt: &mut rt,
                    enumerator: e.clone(),
                    budget: u64::MAX,
                    used: 0,
                };
                let neg = Formula::not(a.sentence.clone());
                let pos_found = prove_search(&mut ax, &a.sentence, &cfg.code_budget).map_err(input)?;
                let neg_found = prove_search(&mut ax, &neg, &cfg.code_budget).map_err(input)?;
                r.push("code_budget", &cfg.code_budget)
                    .push("proof_found", pos_found.is_some())
                    .push("refutation_found", neg_found.is_some());
            }
            write(cfg, "searcher_pos.tpl", &a.pos_source)?;
            write(cfg, "searcher_neg.tpl", &a.neg_source)?;
            write(cfg, "sentence.fol", &format!("{}\n", a.sentence))?;
            write(cfg, "rosser.report", &r.to_string())?;
            print_report(&r);
            Ok(true)
        }
        ConstructCmd::Diagonal { decider, budget } => {
            let d = program(&decider)?.code();
            let b = budget.unwrap_or(cfg.step_budget);
            let rep = cons::diagonal(&d, b, b.saturating_mul(2).saturating_add(100), &cfg.code_budget)
                .map_err(input)?;
            let r = rep.report();
            write(cfg, "diagonal.tpl", &rep.diagonal_source)?;
            write(cfg, "diagonal.report", &r.to_string())?;
            print_report(&r);
            Ok(rep.outcome != cons::DiagonalOutcome::Inconclusive)
        }
        ConstructCmd::Rice { enum_t, enum_s, psi } => {
            let psi = sentence(&psi)?;
            let a = cons::rice_reduce(&enumerator(&enum_t)?, &enumerator(&enum_s)?, &psi).map_err(input)?;
            let k = cons::detector_index();
            let at_k = a.tpl_axiom(&mut Runtime::new(), &k, cfg.step_budget);
            let mut r = a.report();
            r.push(
                "t_prime_at_detector_index",
                at_k.as_deref().unwrap_or("none"),
            );
            write(cfg, "t_prime.tpl", a.program.source_text())?;
            write(cfg, "rice.report", &r.to_string())?;
            print_report(&r);
            Ok(true)
        }
    }
}

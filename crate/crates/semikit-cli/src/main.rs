//! `semikit` — semiring-weighted machines, formulas, and the reduction
//! between them, from the command line.
//!
//! Exit codes: 0 success, 1 a verification found a mismatch, 2 parse or
//! validation failure, 3 a step bound or resource cap was hit.  Output is
//! deterministic: identical inputs give byte-identical bytes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semikit::algebra::{literal, parse_spec, standard_instances, SemiringId};
use semikit::logic::{sat_value_brute, sat_value_onehot, ArtifactMeta};
use semikit::machine::format::{load_machine, save_machine};
use semikit::machine::transform::{gap_machine, normalize_unit_weights, single_accepting};
use semikit::machine::{behavior_coeff, Machine};
use semikit::reduce::layered::sat_value_layered;
use semikit::reduce::wtmsat::wtmsat_value;
use semikit::reduce::{cook_levin_reduce, NormalFormMachine};
use semikit::series::Polynomial;
use semikit::words::{words_up_to, Word};
use semikit::{logic, Caps, Error};

#[derive(Parser)]
#[command(
    name = "semikit",
    version,
    about = "Weighted machines, weighted formulas, and the exact reduction between them",
    after_help = "Set SEMIKIT_CAPS (e.g. \"vars=24,grid=8\") to move the resource caps."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    /// Sum over all assignments of the free variables
    Brute,
    /// Sum over the one-hot grid assignments from the metadata file
    Onehot,
    /// Row-by-row sweep over the tableau spine
    Layered,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizeMode {
    /// Unfold every weight of a machine over nat into unit-weight steps
    UnitNat,
    /// Funnel acceptance through a single fresh accepting state
    SingleAccept,
}

#[derive(Subcommand)]
enum Command {
    /// Print one behavior coefficient of a machine
    EvalMachine {
        /// Machine file (JSON)
        #[arg(short, long)]
        machine: PathBuf,
        /// Input word; "ε" or "" for the empty word
        #[arg(short, long)]
        word: String,
        /// Step bound override (defaults to the machine's declared bound)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Print the behavior polynomial up to a word length
    Behavior {
        #[arg(short, long)]
        machine: PathBuf,
        /// Largest input length to include
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Print the satisfaction value of a formula file
    Sat {
        /// Semiring the formula lives in, e.g. nat, mod(5), finlang(a,b)
        #[arg(short, long)]
        semiring: String,
        /// Formula file; onehot and layered also read FILE.meta.json
        #[arg(short, long)]
        formula: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        strategy: Strategy,
    },
    /// Write the tableau formula for a machine on one input
    Reduce {
        #[arg(short, long)]
        machine: PathBuf,
        /// Input word; "ε" or "" for the empty word
        #[arg(short, long)]
        word: String,
        /// Output formula file; metadata goes to OUT.meta.json
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check behavior coefficients against tableau values for all short inputs
    VerifyReduction {
        #[arg(short, long)]
        machine: PathBuf,
        /// Largest input length to check
        #[arg(long = "max-len", default_value_t = 2)]
        max_len: usize,
    },
    /// Evaluate a machine-evaluation instance: <machine JSON>#<word>#<unary budget>
    Wtmsat {
        /// The instance itself, or a path to a file holding it
        #[arg(short, long)]
        instance: String,
    },
    /// Rewrite a machine, preserving its behavior
    Normalize {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(long, value_enum)]
        mode: NormalizeMode,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Turn a Boolean decider into a signed accept/reject counter over int
    Gap {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// List the built-in semirings and their literal syntaxes
    Semirings,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BoundExceeded(_)
        | Error::BoundTooSmall { .. }
        | Error::BoundViolation(_)
        | Error::VarCapExceeded { .. }
        | Error::GridCapExceeded { .. }
        | Error::CapExceeded(_) => 3,
        _ => 2,
    }
}

fn parse_word(machine: &Machine, text: &str) -> Result<Word, Error> {
    Word::parse(text, &machine.input_alphabet)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::EvalMachine { machine, word, bound } => {
            let machine = load_machine(&machine)?;
            let word = parse_word(&machine, &word)?;
            let value = behavior_coeff(&machine, &word, bound)?;
            println!("{}", literal::print(&value));
        }
        Command::Behavior { machine, max_len } => {
            let machine = load_machine(&machine)?;
            let mut poly =
                Polynomial::new(&machine.semiring, machine.input_alphabet.clone())?;
            for word in words_up_to(&machine.input_alphabet, max_len) {
                poly.set_coeff(word.clone(), behavior_coeff(&machine, &word, None)?)?;
            }
            println!("{}", poly.to_text());
        }
        Command::Sat { semiring, formula, strategy } => {
            let sr = parse_spec(&semiring)?;
            let text = std::fs::read_to_string(&formula)?;
            let parsed = logic::text::parse(&sr, &text)?;
            let value = match strategy {
                Strategy::Brute => sat_value_brute(&sr, &parsed, caps.vars)?,
                Strategy::Onehot => {
                    let meta = load_meta(&formula)?;
                    sat_value_onehot(&sr, &parsed, &meta.grid())?
                }
                Strategy::Layered => {
                    let meta = load_meta(&formula)?;
                    sat_value_layered(&sr, &parsed, &meta)?
                }
            };
            println!("{}", literal::print(&value));
        }
        Command::Reduce { machine, word, out } => {
            let machine = load_machine(&machine)?;
            let word = parse_word(&machine, &word)?;
            let nf = NormalFormMachine::new(machine)?;
            let artifact = cook_levin_reduce(&nf, &word, &caps)?;
            let mut text = logic::text::print(&artifact.formula);
            text.push('\n');
            std::fs::write(&out, text)?;
            let meta_path = meta_path(&out);
            std::fs::write(&meta_path, artifact.meta().to_json())?;
            println!(
                "wrote {} and {}: {} rows x {} cols over {} symbols, {} nodes",
                out.display(),
                meta_path.display(),
                artifact.grid.rows,
                artifact.grid.cols,
                artifact.grid.symbols.len(),
                artifact.formula.size()
            );
        }
        Command::VerifyReduction { machine, max_len } => {
            let machine = load_machine(&machine)?;
            let nf = NormalFormMachine::new(machine)?;
            let mut mismatches = 0usize;
            let words = words_up_to(&nf.machine().input_alphabet, max_len);
            for word in &words {
                let direct = behavior_coeff(nf.machine(), word, None)?;
                let artifact = cook_levin_reduce(&nf, word, &caps)?;
                let tableau =
                    sat_value_layered(&artifact.semiring, &artifact.formula, &artifact.meta())?;
                let verdict = if direct == tableau {
                    "ok"
                } else {
                    mismatches += 1;
                    "MISMATCH"
                };
                println!(
                    "w={}\tbehavior={}\ttableau={}\t{}",
                    word.display_compact(),
                    literal::print(&direct),
                    literal::print(&tableau),
                    verdict
                );
            }
            if mismatches > 0 {
                println!("{mismatches} of {} words disagree", words.len());
                return Ok(1);
            }
            println!("all {} words agree", words.len());
        }
        Command::Wtmsat { instance } => {
            let text = if Path::new(&instance).is_file() {
                std::fs::read_to_string(&instance)?
            } else {
                instance
            };
            let value = wtmsat_value(text.trim_end_matches('\n'))?;
            println!("{}", literal::print(&value));
        }
        Command::Normalize { machine, mode, out } => {
            let machine = load_machine(&machine)?;
            let rewritten = match mode {
                NormalizeMode::UnitNat => normalize_unit_weights(&machine)?,
                NormalizeMode::SingleAccept => single_accepting(&machine)?,
            };
            save_machine(&out, &rewritten)?;
            println!(
                "wrote {}: {} states, {} transitions",
                out.display(),
                rewritten.states.len(),
                rewritten.transitions.len()
            );
        }
        Command::Gap { machine, out } => {
            let machine = load_machine(&machine)?;
            let counter = gap_machine(&machine)?;
            save_machine(&out, &counter)?;
            println!(
                "wrote {}: {} states, {} transitions",
                out.display(),
                counter.states.len(),
                counter.transitions.len()
            );
        }
        Command::Semirings => {
            for sr in standard_instances() {
                println!("{:<20} {}", sr.id().to_string(), syntax_of(sr.id()));
            }
        }
    }
    Ok(0)
}

fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

fn load_meta(formula: &Path) -> Result<ArtifactMeta, Error> {
    let path = meta_path(formula);
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::parse(format!("cannot read metadata file {}: {e}", path.display()))
    })?;
    ArtifactMeta::from_json(&text)
}

fn syntax_of(id: &SemiringId) -> &'static str {
    match id {
        SemiringId::Bool => "0 | 1",
        SemiringId::Nat => "unsigned decimal",
        SemiringId::Int => "signed decimal",
        SemiringId::Mod(_) => "decimal residue in [0, k)",
        SemiringId::Fuzzy(_) => "reduced fraction p/q in [0, 1], e.g. 1/2, 0/1, 1/1",
        SemiringId::MaxPlusNat => "unsigned decimal | -inf",
        SemiringId::MinPlusNat => "unsigned decimal | inf",
        SemiringId::FinLang(_) => "{ \"word\", ... } | { }, with \"ε\" for the empty word",
        SemiringId::SMax => "binary word | ε | -inf",
        SemiringId::FreeNat(_) => "sum of coeff \"word\" terms | 0, e.g. 2 \"xy\" + 1 \"y\"",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

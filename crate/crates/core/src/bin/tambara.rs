use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use tambara_core::decompose::{clarify, full_decomposition};
use tambara_core::functors::{
    check_axioms, coinduce, functor_isomorphism, CheckConfig, TambaraData,
};
use tambara_core::io;
use tambara_core::lewis::lewis_diagram;
use tambara_core::search::DEFAULT_BUDGET;
use tambara_core::{Error, SubgroupId};

const EXIT_INPUT: u8 = 1;
const EXIT_AXIOM: u8 = 2;

#[derive(Parser)]
#[command(
    name = "tambara",
    version,
    about = "Check and decompose finite Tambara functors"
)]
struct Cli {
    /// Largest fiber size in checked exponential diagrams.
    #[arg(long, global = true, default_value_t = 2)]
    fiber_bound: usize,
    /// Node budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Output file for commands that write a functor.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every axiom family.
    Check { path: PathBuf },
    /// Split into coinductions of clarified factors, or clarify with --lambda.
    Decompose {
        path: PathBuf,
        /// Keep idempotents of type in the upward closure of this subgroup; `all` keeps every type.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Print a Lewis diagram.
    Lewis {
        path: PathBuf,
        /// Comma-separated increasing chain of subgroups.
        #[arg(long, value_delimiter = ',')]
        chain: Option<Vec<String>>,
    },
    /// Coinduce a functor from a subgroup.
    Coinduce {
        path: PathBuf,
        #[arg(long)]
        from: String,
        /// Defaults to the whole group.
        #[arg(long)]
        to: Option<String>,
    },
    /// Restrict a functor to a subgroup.
    Restrict {
        path: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Search for an isomorphism between two functors.
    Iso { a: PathBuf, b: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = e.code();
        let message = match e {
            Error::NoNorms => "the input is a Green functor without norms; the product decomposition fails for \
                 Green functors (the C_p example with top S x S and bottom Coind_e S is a counterexample)"
                .to_string(),
            e => e.to_string(),
        };
        Failure { code, message }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<TambaraData, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    io::parse_functor(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn output_path(cli: &Cli, input: &Path, suffix: &str) -> PathBuf {
    if let Some(p) = &cli.out {
        return p.clone();
    }
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("functor");
    input.with_file_name(format!("{stem}.{suffix}.json"))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    println!("wrote {}", path.display());
    Ok(())
}

fn config(cli: &Cli) -> CheckConfig {
    CheckConfig {
        fiber_bound: cli.fiber_bound,
        ..CheckConfig::default()
    }
}

/// Refuses functors that fail their axioms.
fn require_valid(cli: &Cli, t: &TambaraData) -> Outcome {
    let report = check_axioms(t, &config(cli));
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(Failure {
            code: EXIT_AXIOM,
            message: format!(
                "axiom failure in {}: {}",
                f.family,
                f.witness.as_deref().unwrap_or("")
            ),
        }),
    }
}

fn level_sizes(t: &TambaraData) -> String {
    let group = t.group();
    t.subgroups()
        .into_iter()
        .map(|h| format!("{}: {}", group.label(h), t.level(h).size()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_check(cli: &Cli, path: &Path) -> Outcome {
    let t = load(path)?;
    let report = check_axioms(&t, &config(cli));
    print!("{report}");
    match report.first_failure() {
        None => {
            println!("ok");
            Ok(())
        }
        Some(f) => Err(Failure {
            code: EXIT_AXIOM,
            message: format!(
                "axiom failure in {}: {}",
                f.family,
                f.witness.as_deref().unwrap_or("")
            ),
        }),
    }
}

fn cmd_decompose(cli: &Cli, path: &Path, lambda: Option<&str>) -> Outcome {
    let t = load(path)?;
    if !t.has_norms() {
        return Err(Error::NoNorms.into());
    }
    require_valid(cli, &t)?;
    let group = Arc::clone(t.group());
    if let Some(id) = lambda {
        let set = io::parse_lambda(&t, id)?;
        let (q, projection) = clarify(&t, &set)?;
        let members: Vec<&str> = set.members().into_iter().map(|h| group.label(h)).collect();
        println!("clarification for {{{}}}", members.join(", "));
        println!("level sizes: {}", level_sizes(&q));
        println!(
            "{}",
            if q == t {
                "unchanged"
            } else if q.is_zero() {
                "zero functor"
            } else {
                "proper quotient"
            }
        );
        let doc = io::clarification_document(&q, &set, &projection);
        return write(&output_path(cli, path, "clarified"), &io::to_json(&doc));
    }
    let dec = full_decomposition(&t)?;
    println!("{} factor(s)", dec.factors.len());
    for (h, f) in &dec.factors {
        println!("({}, {})", group.label(*h), level_sizes(f));
    }
    write(
        &output_path(cli, path, "decomposed"),
        &io::to_json(&io::decomposition_document(&dec)),
    )
}

fn cmd_lewis(path: &Path, chain: Option<&[String]>) -> Outcome {
    let t = load(path)?;
    let chain: Option<Vec<SubgroupId>> = match chain {
        Some(ids) => Some(
            ids.iter()
                .map(|id| t.group().resolve(id.trim()))
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    print!("{}", lewis_diagram(&t, chain.as_deref())?);
    Ok(())
}

fn cmd_coinduce(cli: &Cli, path: &Path, from: &str, to: Option<&str>) -> Outcome {
    let t = load(path)?;
    let group = Arc::clone(t.group());
    let from = group.resolve(from)?;
    let to = match to {
        Some(id) => group.resolve(id)?,
        None => group.whole(),
    };
    let inner = if t.base() == from {
        t
    } else {
        t.restrict(from)?
    };
    let c = coinduce(&inner, to)?;
    println!("level sizes: {}", level_sizes(&c));
    write(
        &output_path(cli, path, "coinduced"),
        &io::functor_to_json(&c),
    )
}

fn cmd_restrict(cli: &Cli, path: &Path, to: &str) -> Outcome {
    let t = load(path)?;
    let to = t.group().resolve(to)?;
    let r = t.restrict(to)?;
    println!("level sizes: {}", level_sizes(&r));
    write(
        &output_path(cli, path, "restricted"),
        &io::functor_to_json(&r),
    )
}

fn cmd_iso(cli: &Cli, a: &Path, b: &Path) -> Outcome {
    let s = Arc::new(load(a)?);
    let t = Arc::new(load(b)?);
    if **s.group() != **t.group() || s.base() != t.base() || s.has_norms() != t.has_norms() {
        println!("not isomorphic");
        return Ok(());
    }
    match functor_isomorphism(&s, &t, cli.budget) {
        Ok(Some(m)) => {
            println!("isomorphic");
            let group = s.group();
            for h in s.subgroups() {
                let row: Vec<String> = m.table(h).iter().map(|x| x.to_string()).collect();
                println!("{}: [{}]", group.label(h), row.join(", "));
            }
            Ok(())
        }
        Ok(None) => {
            println!("not isomorphic");
            Ok(())
        }
        Err(Error::Timeout(n)) => {
            println!("timeout");
            Err(Error::Timeout(n).into())
        }
        Err(e) => Err(e.into()),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("TAMBARA_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    let outcome = match &cli.command {
        Command::Check { path } => cmd_check(&cli, path),
        Command::Decompose { path, lambda } => cmd_decompose(&cli, path, lambda.as_deref()),
        Command::Lewis { path, chain } => cmd_lewis(path, chain.as_deref()),
        Command::Coinduce { path, from, to } => cmd_coinduce(&cli, path, from, to.as_deref()),
        Command::Restrict { path, to } => cmd_restrict(&cli, path, to),
        Command::Iso { a, b } => cmd_iso(&cli, a, b),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

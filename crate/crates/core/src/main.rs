use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use gw_g24::cache::{self, LoadCheck};
use gw_g24::cohomology::{triple, BasisClass, ClassicalTripleTensor};
use gw_g24::equations::{GenerationPolicy, MAX_DEGREE};
use gw_g24::report::{degree_rows, render, TableFormat};
use gw_g24::schubert::{check_seeds, classical_triple_oracle, quantum_pieri, Partition};
use gw_g24::{Engine, Error, InvariantKey, SeedSet, GOLDEN_Q};

/// Degrees covered by the published table; anything above needs `--allow-beyond-table`.
const TABLE_DEGREE: u32 = 9;

const EXIT_USAGE: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;

#[derive(Parser)]
#[command(name = "gw-g24", version, about = "Genus-0 Gromov-Witten invariants of G(2,4) and rational ruled surfaces in P^3")]
struct Cli {
    /// Worker threads for equation generation
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Invariant cache to read (and, for `cache export`, write)
    #[arg(long, global = true)]
    cache_path: Option<PathBuf>,

    /// Permit degrees above 9, for which no published values exist
    #[arg(long, global = true)]
    allow_beyond_table: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print N(alpha, beta, gamma, delta; degree)
    Invariant {
        alpha: u32,
        beta: u32,
        gamma: u32,
        delta: u32,
        degree: u32,
        #[arg(long, value_enum, default_value_t = ValueFormat::Plain)]
        format: ValueFormat,
    },
    /// Print the table of Q_d (and optionally N_d = d^3 Q_d)
    Table {
        #[arg(long, default_value_t = TABLE_DEGREE)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
        format: OutputFormat,
        #[arg(long)]
        with_nd: bool,
    },
    /// Run the consistency checks and compare against published values
    Verify {
        #[arg(long, default_value_t = TABLE_DEGREE)]
        max_degree: u32,
        /// Check every monomial (not only the dimension layer) and fully re-verify a loaded cache
        #[arg(long)]
        exhaustive: bool,
    },
    /// Export or import the invariant cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Solve through --max-degree and write the cache file
    Export {
        #[arg(long, default_value_t = TABLE_DEGREE)]
        max_degree: u32,
    },
    /// Load and validate a cache file
    Import {
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

impl From<OutputFormat> for TableFormat {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Md => TableFormat::Markdown,
            OutputFormat::Csv => TableFormat::Csv,
            OutputFormat::Json => TableFormat::Json,
        }
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("{}", diagnostic(&e));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Checks) => ExitCode::from(EXIT_INCONSISTENT),
    }
}

fn diagnostic(e: &Error) -> serde_json::Value {
    match e {
        Error::Underdetermined { degree, unsolved } => json!({
            "kind": "underdetermined",
            "degree": degree,
            "unsolved": unsolved.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        Error::Inconsistent { degree, quadruple, monomial, residual } => json!({
            "kind": "violation",
            "degree": degree,
            "quadruple": quadruple.iter().map(|c| c.label()).collect::<Vec<_>>(),
            "monomial": monomial.0,
            "residual": residual.to_string(),
        }),
        Error::Cache(c) => json!({ "kind": "cache", "message": c.to_string() }),
        other => json!({ "kind": "error", "message": other.to_string() }),
    }
}

fn check_degree(degree: u32, cli: &Cli) -> Result<(), Failure> {
    if degree > MAX_DEGREE {
        return Err(Failure::Usage(format!("degree {degree} exceeds the supported maximum {MAX_DEGREE}")));
    }
    if degree > TABLE_DEGREE && !cli.allow_beyond_table {
        return Err(Failure::Usage(format!(
            "degree {degree} is beyond the published table (d <= {TABLE_DEGREE}); pass --allow-beyond-table"
        )));
    }
    Ok(())
}

fn engine(cli: &Cli, check: LoadCheck, policy: GenerationPolicy) -> Result<Engine, Failure> {
    let seeds = SeedSet::shipped();
    let store = match &cli.cache_path {
        Some(path) if path.exists() => cache::load(path, &seeds, check).map_err(Error::from)?,
        _ => Default::default(),
    };
    Ok(Engine::from_store(store, seeds).with_workers(cli.workers).with_policy(policy))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Invariant { alpha, beta, gamma, delta, degree, format } => {
            check_degree(*degree, &cli)?;
            let key = InvariantKey::new(*alpha, *beta, *gamma, *delta, *degree);
            let mut engine = engine(&cli, LoadCheck::default(), GenerationPolicy::DimensionLayer)?;
            let value = engine.invariant(&key)?;
            cmd_invariant(&key, &value, *format);
        }
        Command::Table { max_degree, format, with_nd } => {
            if *max_degree < 1 {
                return Err(Failure::Usage("--max-degree must be at least 1".into()));
            }
            check_degree(*max_degree, &cli)?;
            let mut engine = engine(&cli, LoadCheck::default(), GenerationPolicy::DimensionLayer)?;
            let rows = degree_rows(&mut engine, *max_degree)?;
            print!("{}", render(&rows, (*format).into(), *with_nd));
        }
        Command::Verify { max_degree, exhaustive } => {
            check_degree(*max_degree, &cli)?;
            let (check, policy) = if *exhaustive {
                (LoadCheck::Exhaustive, GenerationPolicy::WeightBox)
            } else {
                (LoadCheck::default(), GenerationPolicy::DimensionLayer)
            };
            let mut engine = engine(&cli, check, policy)?;
            cmd_verify(&mut engine, *max_degree)?;
        }
        Command::Cache { action } => {
            let path = cli
                .cache_path
                .clone()
                .ok_or_else(|| Failure::Usage("cache commands need --cache-path".into()))?;
            match action {
                CacheAction::Export { max_degree } => {
                    check_degree(*max_degree, &cli)?;
                    let mut engine =
                        Engine::with_seeds(SeedSet::shipped()).with_workers(cli.workers);
                    engine.solve_through(*max_degree)?;
                    cache::save(engine.store(), engine.seeds(), &path).map_err(Error::from)?;
                    println!("wrote {} invariants for degrees 1..={} to {}", engine.store().len(), max_degree, path.display());
                }
                CacheAction::Import { exhaustive } => {
                    let check = if *exhaustive { LoadCheck::Exhaustive } else { LoadCheck::default() };
                    let store = load_existing(&path, check)?;
                    println!(
                        "loaded {} invariants for degrees 1..={} from {}",
                        store.len(),
                        store.solved_degree(),
                        path.display()
                    );
                }
            }
        }
    }
    Ok(())
}

fn load_existing(path: &Path, check: LoadCheck) -> Result<gw_g24::InvariantStore, Failure> {
    if !path.exists() {
        return Err(Failure::Usage(format!("{} does not exist", path.display())));
    }
    Ok(cache::load(path, &SeedSet::shipped(), check).map_err(Error::from)?)
}

fn cmd_invariant(key: &InvariantKey, value: &BigInt, format: ValueFormat) {
    let weight = key.weight();
    let valid = key.is_dimension_valid();
    let note = if valid {
        format!("dimension-valid: alpha+beta+2gamma+3delta = {weight} = 4d+1")
    } else if key.degree == 0 {
        "dimension-invalid: degree 0 carries no quantum invariants".to_string()
    } else {
        format!("dimension-invalid: alpha+beta+2gamma+3delta = {weight} != 4d+1 = {}", 4 * key.degree + 1)
    };
    match format {
        ValueFormat::Plain => {
            println!("{value}");
            eprintln!("note: {note}");
        }
        ValueFormat::Json => {
            let out = json!({
                "key": {
                    "alpha": key.alpha, "beta": key.beta, "gamma": key.gamma,
                    "delta": key.delta, "degree": key.degree,
                },
                "value": value.to_string(),
                "dimension_valid": valid,
                "note": note,
            });
            println!("{out}");
        }
    }
}

fn cmd_verify(engine: &mut Engine, max_degree: u32) -> Result<(), Failure> {
    let mut ok = true;

    let tensor = ClassicalTripleTensor::from_potential();
    let mut agree = 0;
    for a in BasisClass::ALL {
        for b in BasisClass::ALL {
            for c in BasisClass::ALL {
                let oracle = classical_triple_oracle(Partition::from_basis(a), Partition::from_basis(b), Partition::from_basis(c));
                if oracle == triple(a, b, c) && oracle == tensor.get(a, b, c) {
                    agree += 1;
                } else {
                    ok = false;
                    eprintln!(
                        "{}",
                        json!({"kind": "classical", "triple": [a.label(), b.label(), c.label()],
                               "oracle": oracle, "ring": triple(a, b, c), "potential": tensor.get(a, b, c)})
                    );
                }
            }
        }
    }
    println!("classical oracle vs tensor: {agree}/216 triples agree");

    match check_seeds(engine.seeds()) {
        Ok(()) => println!("seed cross-checks: ok"),
        Err(e) => {
            ok = false;
            println!("seed cross-checks: FAILED");
            eprintln!("{}", diagnostic(&e));
        }
    }

    if max_degree == 0 {
        return finish(ok);
    }

    engine.solve_through(max_degree)?;

    // q-terms of σ1 * σλ against the solved degree-1 two-point invariants
    let mut pieri_ok = true;
    for lambda in Partition::ALL {
        let q = quantum_pieri(lambda).q_part;
        for nu in Partition::ALL {
            let mut e = [0u32; 4];
            let mut zero = false;
            for p in [lambda, nu.dual()] {
                match p.to_basis() {
                    BasisClass::T0 => zero = true,
                    BasisClass::T1 => {}
                    x => e[gw_g24::Monomial::slot(x).unwrap()] += 1,
                }
            }
            let expected = if zero {
                BigInt::from(0)
            } else {
                engine.store().get(&InvariantKey::new(e[0], e[1], e[2], e[3], 1))?
            };
            if BigInt::from(q.coefficient(nu.to_basis())) != expected {
                pieri_ok = false;
                eprintln!("{}", json!({"kind": "quantum_pieri", "lambda": lambda.to_string(), "nu": nu.to_string()}));
            }
        }
    }
    ok &= pieri_ok;
    println!("quantum Pieri vs degree-1 invariants: {}", if pieri_ok { "ok" } else { "FAILED" });

    let report = engine.verify_wdvv(max_degree)?;
    for d in &report.degrees {
        println!("wdvv degree {}: {} equations, {} violations", d.degree, d.equations, d.violations);
    }
    for v in &report.violations {
        eprintln!("{}", v.to_json());
    }
    ok &= report.is_ok();
    println!("wdvv equations checked: {}, violations: {}", report.equations_checked(), report.violations.len());

    let mut matched = 0;
    for d in 1..=max_degree.min(TABLE_DEGREE) {
        let got = engine.q_number(d)?;
        let want: BigInt = GOLDEN_Q[d as usize - 1].parse().expect("golden value");
        if got == want {
            matched += 1;
        } else {
            ok = false;
            eprintln!("{}", json!({"kind": "golden", "degree": d, "expected": want.to_string(), "found": got.to_string()}));
        }
    }
    println!("golden rows matched: {matched}");
    finish(ok)
}

fn finish(ok: bool) -> Result<(), Failure> {
    println!("result: {}", if ok { "ok" } else { "FAILED" });
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

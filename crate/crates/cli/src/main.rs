use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcat_core::bialgebroid::{check_comodule_algebra, compose_modules};
use qcat_core::campaign::{run_campaign, Suite};
use qcat_core::exactlin::FieldSpec;
use qcat_core::fincat::{check_unit_laws, compose_prof, hom_profunctor, Profunctor};
use qcat_core::io::{instance_to_json, parse_instance, validate_instance, Instance};
use qcat_core::report::Report;
use qcat_core::takeuchi::{beta_iso_report, Partition};

/// Exact checks for quantum categories, profunctors, bialgebroids and weak bialgebras.
#[derive(Parser)]
#[command(name = "qcat", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every axiom check for the instance in FILE.
    Validate { file: PathBuf },
    /// Compose two profunctors or two comodule algebras and write the result.
    Compose {
        #[arg(short)]
        a: PathBuf,
        #[arg(short)]
        b: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Rank and iso verdict of the comparison map for a partition of the given double modules.
    Beta {
        /// Partition such as 2+1; every part must be positive.
        #[arg(short)]
        p: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Seeded property campaign.
    Campaign {
        /// One of set, takeuchi, bialgebroid, frobenius, bridge.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// Exit 2: the input could not be used at all.
struct Usage(String);

fn default_field() -> Result<Option<FieldSpec>, Usage> {
    match std::env::var("QCAT_FIELD") {
        Ok(s) if !s.trim().is_empty() => s.parse().map(Some).map_err(|e| Usage(format!("QCAT_FIELD: {e}"))),
        _ => Ok(None),
    }
}

fn load(path: &Path) -> Result<Instance, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text, default_field()?).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn validate(file: &Path) -> Result<Report, Usage> {
    Ok(validate_instance(&load(file)?))
}

fn compose_profunctors(p: &Profunctor, q: &Profunctor, out: &Path) -> Result<Report, Usage> {
    let mut r = Report::new("compose profunctors");
    r.stat("dim_a", p.len());
    r.stat("dim_b", q.len());
    let c = match compose_prof(p, q) {
        Ok(c) => c,
        Err(e) => {
            r.fail("endpoints", e.to_string());
            return Ok(r);
        }
    };
    r.stat("composable_pairs", c.pairs.len());
    r.stat("dim_composite", c.profunctor.len());
    if hom_profunctor(p.source()).is_ok_and(|h| h == *p) {
        r.check("unit_law.left", check_unit_laws(q));
    }
    if hom_profunctor(q.target()).is_ok_and(|h| h == *q) {
        r.check("unit_law.right", check_unit_laws(p));
    }
    write(out, &Instance::Profunctor(c.profunctor))?;
    Ok(r)
}

fn write(out: &Path, inst: &Instance) -> Result<(), Usage> {
    std::fs::write(out, instance_to_json(inst) + "\n").map_err(|e| Usage(format!("{}: {e}", out.display())))
}

fn compose(a: &Path, b: &Path, out: &Path) -> Result<Report, Usage> {
    match (load(a)?, load(b)?) {
        (Instance::Profunctor(p), Instance::Profunctor(q)) => compose_profunctors(&p, &q, out),
        (Instance::ComoduleAlgebra(m1), Instance::ComoduleAlgebra(m2)) => {
            let mut r = Report::new("compose comodule algebras");
            r.stat("dim_a", m1.dim());
            r.stat("dim_b", m2.dim());
            for (name, m) in [("a", &m1), ("b", &m2)] {
                let v = check_comodule_algebra(m);
                if !v.passed() {
                    r.absorb(name, v);
                    return Ok(r);
                }
            }
            match compose_modules(&m1, &m2) {
                Ok(c) => {
                    r.stat("dim_pair", c.pair.dim());
                    r.stat("dim_composite", c.dim());
                    r.absorb("composite", check_comodule_algebra(&c.module));
                    write(out, &Instance::ComoduleAlgebra(c.module))?;
                }
                Err(e) => r.fail("compose", e.to_string()),
            }
            Ok(r)
        }
        (x, y) => Err(Usage(format!("cannot compose {:?} with {:?}; need two profunctors or two comodule algebras", x.kind(), y.kind()))),
    }
}

fn beta_cmd(p: &str, files: &[PathBuf]) -> Result<Report, Usage> {
    let partition: Partition = p.parse().map_err(|e: qcat_core::takeuchi::TakeuchiError| Usage(e.to_string()))?;
    if partition.has_zero_part() {
        return Err(Usage(format!("partition {partition} has a zero part; the comparison is only claimed invertible when every m_i > 0")));
    }
    let mut modules = Vec::with_capacity(files.len());
    for f in files {
        match load(f)? {
            Instance::DoubleModule(m) => modules.push(m),
            other => return Err(Usage(format!("{}: expected a double_module, found {:?}", f.display(), other.kind()))),
        }
    }
    if partition.total() != modules.len() {
        return Err(Usage(format!("partition {partition} covers {} modules, {} given", partition.total(), modules.len())));
    }
    beta_iso_report(&partition, &modules).map_err(|e| Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<Report, Usage> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Compose { a, b, o } => compose(a, b, o),
        Command::Beta { p, files } => beta_cmd(p, files),
        Command::Campaign { suite, seed, trials } => {
            let s: Suite = suite.parse().map_err(Usage)?;
            let field = default_field()?.unwrap_or(FieldSpec::Rationals);
            Ok(run_campaign(s, *seed, *trials, field))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = if cli.json { format!("{}\n", report.to_json()) } else { report.to_string() };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

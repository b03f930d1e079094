use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use supder_core::lab::ground_entails;
use supder_core::model::{check_model, construct_rstar};
use supder_core::problem::{parse, ProblemFile, Variant};
use supder_core::rewrite::{closure_compare, lss_lts, GroundClosure, GroundRewriteSystem};
use supder_core::saturation::{example1, replay_incompleteness, saturate, ProverConfig, Status};
use supder_core::simplify::{DemodMode, DerMode, Regime, RegimeConfig, SubsumptionMode};

#[derive(Parser)]
#[command(name = "supder", version, about = "Superposition prover with destructive equality resolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Saturate the clauses of a problem file.
    Prove(ProveArgs),
    /// Built-in demonstrations.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
    /// Closure-ordering and model-construction lab.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoKind {
    Incompleteness,
}

#[derive(Subcommand)]
enum LabCommand {
    /// Print normalization multisets and pairwise closure comparisons.
    Nm { file: PathBuf },
    /// Build the candidate interpretation and check it against the closures.
    Rstar { file: PathBuf },
}

#[derive(clap::Args)]
struct ProveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "horn-closure")]
    regime: RegimeArg,
    #[arg(long, value_enum)]
    der: Option<DerArg>,
    #[arg(long, value_enum)]
    demod: Option<DemodArg>,
    #[arg(long, value_enum)]
    subsume: Option<SubsumeArg>,
    #[arg(long, default_value_t = 100_000)]
    max_clauses: usize,
    #[arg(long, default_value_t = 60)]
    timeout_s: u64,
    /// Print the proof tree on success or the final clause set on saturation.
    #[arg(long)]
    proof: bool,
    /// Allow option combinations that the selected regime blocks.
    #[arg(long)]
    force_classical_experiment: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Classical,
    HornClosure,
    NonhornClosure,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerArg {
    Off,
    Full,
    NegativeOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemodArg {
    Off,
    ProperSubterm,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubsumeArg {
    Off,
    Propositional,
    FirstOrder,
}

fn read_problem(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).map_err(|d| anyhow!("{}:\n{d}", path.display()))
}

fn regime_config(args: &ProveArgs) -> RegimeConfig {
    let regime = match args.regime {
        RegimeArg::Classical => Regime::Classical,
        RegimeArg::HornClosure => Regime::HornClosure,
        RegimeArg::NonhornClosure => Regime::NonHornClosure,
    };
    let mut cfg = RegimeConfig::defaults(regime);
    if let Some(d) = args.der {
        cfg.der = match d {
            DerArg::Off => DerMode::Off,
            DerArg::Full => DerMode::Full,
            DerArg::NegativeOnly => DerMode::NegativeOnly,
        };
    }
    if let Some(d) = args.demod {
        cfg.demod = match d {
            DemodArg::Off => DemodMode::Off,
            DemodArg::ProperSubterm => DemodMode::ProperSubtermOnly,
            DemodArg::Full => DemodMode::Full,
        };
    }
    if let Some(s) = args.subsume {
        cfg.subsumption = match s {
            SubsumeArg::Off => SubsumptionMode::Off,
            SubsumeArg::Propositional => SubsumptionMode::Propositional,
            SubsumeArg::FirstOrder => SubsumptionMode::FirstOrder,
        };
    }
    cfg
}

fn prove(args: &ProveArgs) -> Result<()> {
    let problem = read_problem(&args.file)?;
    let mut cfg = ProverConfig::new(problem.ordering.clone(), regime_config(args));
    cfg.force = args.force_classical_experiment;
    cfg.limits.max_clauses = args.max_clauses;
    cfg.limits.timeout = Duration::from_secs(args.timeout_s);
    let input: Vec<_> = problem.clauses.iter().map(|c| (c.name.clone(), c.clause.clone())).collect();
    let result = saturate(&input, &cfg)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    println!("STATUS: {}", result.status);
    println!("% generated clauses: {}", result.generated);
    if args.proof {
        match (&result.status, &result.proof) {
            (Status::Unsatisfiable, Some(p)) => print!("{p}"),
            (Status::Saturated, _) => {
                for c in &result.final_clauses {
                    println!("{}", c.normalize_vars());
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn demo() -> Result<()> {
    let problem = example1();
    let report = replay_incompleteness(&problem.ordering);
    print!("{report}");
    println!("RESULT: {}", if report.passed() { "replay confirmed" } else { "replay failed" });
    Ok(())
}

/// Closures of a lab file, with ground clauses taken as closures under the empty substitution.
fn lab_input(problem: &ProblemFile) -> Result<(Vec<(String, GroundClosure)>, GroundRewriteSystem, Variant)> {
    let mut closures = Vec::new();
    for c in &problem.clauses {
        if !c.clause.is_ground() {
            return Err(anyhow!("clause {} is not ground; write it as a closure", c.name));
        }
        closures.push((c.name.clone(), GroundClosure::ground(c.clause.clone())));
    }
    for c in &problem.closures {
        closures.push((c.name.clone(), GroundClosure::new(c.clause.clone(), c.theta.clone())?));
    }
    let r = GroundRewriteSystem::new(problem.rules.clone())?;
    Ok((closures, r, problem.variant.unwrap_or(Variant::Horn)))
}

fn show_labeled<'a>(items: impl IntoIterator<Item = (&'a supder_core::Term, &'a u8)>) -> String {
    let parts: Vec<String> = items.into_iter().map(|(t, l)| format!("{t}:{l}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn lab_nm(path: &Path) -> Result<()> {
    let problem = read_problem(path)?;
    let (closures, r, variant) = lab_input(&problem)?;
    let cfg = &problem.ordering;
    println!("R = {r}");
    println!("variant {}", if variant == Variant::Horn { "horn" } else { "nonhorn" });
    for (name, c) in &closures {
        println!("{name}: {c}");
        let (lss, lts) = lss_lts(&c.clause);
        println!("  lss = {}", show_labeled(lss.iter()));
        println!("  lts = {}", show_labeled(lts.iter()));
        match variant {
            Variant::Horn => {
                let nm = c.nm_horn(&r)?;
                println!("  nm = {}", show_labeled(nm.iter().map(|(t, l)| (t, l))));
            }
            Variant::NonHorn => {
                let nm = c.nm_nh(&r)?;
                let parts: Vec<String> = nm.iter().map(|[a, b]| format!("{{{a}, {b}}}")).collect();
                println!("  nm = {{{}}}", parts.join(", "));
            }
        }
    }
    for (i, (na, a)) in closures.iter().enumerate() {
        for (nb, b) in &closures[i + 1..] {
            match closure_compare(cfg, &r, variant, a, b) {
                Ok(o) => println!("compare {na} {nb}: {o}"),
                Err(e) => println!("compare {na} {nb}: {e}"),
            }
        }
    }
    Ok(())
}

fn lab_rstar(path: &Path) -> Result<()> {
    let problem = read_problem(path)?;
    let (closures, _, variant) = lab_input(&problem)?;
    let n: Vec<GroundClosure> = closures.into_iter().map(|(_, c)| c).collect();
    let cfg = &problem.ordering;
    let m = construct_rstar(&n, variant, cfg);
    println!("R_* = {}", m.rstar);
    print!("{m}");
    let check = check_model(&m.rstar, &n, variant, cfg);
    match &check.first_failure {
        None => println!("model check: holds"),
        Some(c) => println!("model check: fails at {c}"),
    }
    let instances: Vec<_> = n.iter().map(|c| c.instance()).collect();
    let sat = !ground_entails(&instances, &supder_core::Clause::empty());
    println!("ground satisfiable: {sat}");
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Prove(args) => prove(&args),
        Command::Demo { which: DemoKind::Incompleteness } => demo(),
        Command::Lab { command: LabCommand::Nm { file } } => lab_nm(&file),
        Command::Lab { command: LabCommand::Rstar { file } } => lab_rstar(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

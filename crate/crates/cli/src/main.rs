use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arcc_core::checks::{check_architecture, RulePool};
use arcc_core::diag::{has_errors, Diagnostic};
use arcc_core::frontend::{load_project, BehaviorRegistry, LoadOptions, Project};
use arcc_core::genfw::{compose_plan, load_generator_registry, run_generation, GeneratorRegistry};
use arcc_core::model::ProfileId;
use arcc_core::pipeline::{bind_architecture, generation_diagnostics, plan_diagnostics, read_binding};
use arcc_core::simulator::{load_manifest, simulate};
use clap::{Args, Parser, Subcommand};

/// Compiler toolchain for component & connector architectures.
#[derive(Debug, Parser)]
#[command(name = "arcc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the model files and run the well-formedness checks of the profile.
    Check(ModelArgs),
    /// Validate a binding against the architecture.
    Bind {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_name = "FILE")]
        binding: PathBuf,
    },
    /// Bind, compose a generation plan and write the artifacts.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_name = "FILE")]
        binding: PathBuf,
        #[arg(long, value_name = "DIR")]
        generators: PathBuf,
        /// Target platform; defaults to the binding's platform.
        #[arg(long, value_name = "ID")]
        platform: Option<String>,
        /// Pick one of several matching component generators.
        #[arg(long, value_name = "NAME")]
        component_generator: Option<String>,
        #[arg(short = 'o', long = "out", value_name = "DIR")]
        out: PathBuf,
    },
    /// Run a generated manifest and print or write the trace.
    Simulate {
        #[arg(value_name = "MANIFEST")]
        manifest: PathBuf,
        #[arg(long, value_name = "N")]
        ticks: usize,
        /// Write the trace here instead of standard output.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Values for the root's in-ports, one row per tick.
        #[arg(long, value_name = "CSV")]
        inputs: Option<PathBuf>,
    },
    /// Inspect generator models.
    #[command(subcommand)]
    Generators(GeneratorsCommand),
}

#[derive(Debug, Subcommand)]
enum GeneratorsCommand {
    /// Print the validated registry as a table.
    List {
        #[arg(long, value_name = "DIR")]
        generators: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Architecture (.arc) and data model (.types) files.
    #[arg(required = true, value_name = "FILES")]
    files: Vec<PathBuf>,
    #[arg(long, value_name = "ID")]
    root: String,
    #[arg(long, default_value = "scheduled", value_parser = ["base", "scheduled"])]
    profile: String,
    /// Model library directory; may be repeated.
    #[arg(long = "lib", value_name = "DIR")]
    libs: Vec<PathBuf>,
}

/// Exit status for diagnostics with errors.
const FAILED: u8 = 1;

fn report(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn fail(diags: &[Diagnostic]) -> ExitCode {
    report(diags);
    ExitCode::from(FAILED)
}

fn load(model: &ModelArgs, registry: &BehaviorRegistry) -> Result<Project, Vec<Diagnostic>> {
    let mut opts = LoadOptions::new(&model.root);
    opts.profile = ProfileId::from_name(&model.profile).unwrap_or_default();
    opts.libs = model.libs.clone();
    let project = load_project(&model.files, &opts, registry)?;
    report(&project.warnings);
    Ok(project)
}

fn generators(dir: &Path, registry: &BehaviorRegistry) -> Result<GeneratorRegistry, Vec<Diagnostic>> {
    load_generator_registry(dir, &RulePool::new(registry))
}

fn check(model: &ModelArgs) -> Result<(), Vec<Diagnostic>> {
    let registry = BehaviorRegistry::with_builtins();
    let project = load(model, &registry)?;
    let diags = check_architecture(&project.architecture, &registry).diagnostics();
    if has_errors(&diags) {
        return Err(diags);
    }
    report(&diags);
    Ok(())
}

fn bind(model: &ModelArgs, binding: &Path) -> Result<(), Vec<Diagnostic>> {
    let registry = BehaviorRegistry::with_builtins();
    let project = load(model, &registry)?;
    let b = read_binding(binding)?;
    let (bound, warnings) = bind_architecture(&project.architecture, &b)?;
    report(&warnings);
    println!(
        "{} bound to platform {} ({} implementation(s))",
        bound.architecture.root,
        bound.platform,
        bound.resolved_impls.len()
    );
    Ok(())
}

struct GenerateArgs<'a> {
    binding: &'a Path,
    generators: &'a Path,
    platform: Option<&'a str>,
    component_generator: Option<&'a str>,
    out: &'a Path,
}

fn generate(model: &ModelArgs, args: GenerateArgs<'_>) -> Result<(), Vec<Diagnostic>> {
    let registry = BehaviorRegistry::with_builtins();
    let project = load(model, &registry)?;
    let b = read_binding(args.binding)?;
    let gens = generators(args.generators, &registry)?;
    let (bound, warnings) = bind_architecture(&project.architecture, &b)?;
    report(&warnings);
    let platform = args.platform.unwrap_or(&bound.platform);
    let plan = compose_plan(&gens, platform, &bound, args.component_generator)
        .map_err(|e| plan_diagnostics(&e))?;
    let set = run_generation(&plan, &bound, &registry, args.out)
        .map_err(|e| generation_diagnostics(&e))?;
    for f in &set.files {
        println!("{}", args.out.join(&f.path).display());
    }
    Ok(())
}

fn run_simulation(
    manifest: &Path,
    ticks: usize,
    trace: Option<&Path>,
    inputs: Option<&Path>,
) -> Result<(), String> {
    let sim = load_manifest(manifest).map_err(|e| e.to_string())?;
    let inputs = match inputs {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Some(
                sim.parse_inputs(&text, &p.display().to_string())
                    .map_err(|e| e.to_string())?,
            )
        }
        None => None,
    };
    let csv = simulate(&sim, ticks, inputs.as_ref())
        .map_err(|e| e.to_string())?
        .to_csv();
    match trace {
        Some(p) => std::fs::write(p, csv).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn list(dir: &Path) -> Result<(), Vec<Diagnostic>> {
    let registry = BehaviorRegistry::with_builtins();
    let gens = generators(dir, &registry)?;
    let header = ["NAME", "KIND", "PLATFORM", "LANGUAGE", "RTS", "CHECKS"].map(String::from);
    let mut rows = vec![header];
    for g in gens.generators() {
        let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
        let checks = if g.required_checks.is_empty() {
            "-".to_string()
        } else {
            g.required_checks.join(",")
        };
        rows.push([
            g.name.clone(),
            g.kind.to_string(),
            opt(&g.platform),
            opt(&g.language),
            opt(&g.rts),
            checks,
        ]);
    }
    let mut widths = [0usize; 6];
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        println!("{}", cells.join("  ").trim_end());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Check(model) => check(model),
        Command::Bind { model, binding } => bind(model, binding),
        Command::Generate {
            model,
            binding,
            generators,
            platform,
            component_generator,
            out,
        } => generate(
            model,
            GenerateArgs {
                binding,
                generators,
                platform: platform.as_deref(),
                component_generator: component_generator.as_deref(),
                out,
            },
        ),
        Command::Simulate {
            manifest,
            ticks,
            trace,
            inputs,
        } => {
            return match run_simulation(manifest, *ticks, trace.as_deref(), inputs.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(FAILED)
                }
            }
        }
        Command::Generators(GeneratorsCommand::List { generators }) => list(generators),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(diags) => fail(&diags),
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fihomlab::spec::{JobSpec, PolicySpec, TaskSpec};
use fihomlab::suite::{determinism_criterion, run_suite};
use fihomlab::{parse_spec, run_job, FieldChoice, RunOptions, TaskKind, EXIT_FAIL, EXIT_INVALID};

#[derive(Parser)]
#[command(name = "fihomlab", version, about = "Tor, regularity, local cohomology and nu for FI-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task listed in a job file.
    Run(JobArgs),
    /// Verify the regularity identity on the job's modules.
    Verify(ModuleArgs),
    /// Tor tables of the job's modules.
    Tor(ModuleArgs),
    /// Local cohomology of the job's modules.
    Lcoh(ModuleArgs),
    /// ν of every piece of the job's modules.
    Nu(ModuleArgs),
    /// Exactness of the Koszul strands of A.
    KoszulCheck(Overrides),
    /// Axioms of the good ideal for the chosen p.
    GoodIdealCheck(Overrides),
    /// Run the acceptance corpus.
    Suite(SuiteArgs),
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Directory for report.json, report.txt and the cache.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Q or F<q>.
    #[arg(long)]
    field: Option<FieldChoice>,
    /// Largest degree N computed.
    #[arg(long)]
    window: Option<usize>,
    /// Tor rows checked by the semi-induced test.
    #[arg(long)]
    imax: Option<usize>,
    /// Prime p of the good ideal used for ν (2 or 3).
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    nu_p: Option<u8>,
    /// Do not turn uncertified verdicts into exit code 2.
    #[arg(long)]
    assume_window_sufficient: bool,
    /// Print the JSON report instead of the text tables.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct JobArgs {
    /// TOML job file.
    spec: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct ModuleArgs {
    /// TOML job file.
    spec: PathBuf,
    /// Only this module; default all modules.
    #[arg(long)]
    module: Option<String>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct SuiteArgs {
    /// Directory for suite.json and suite.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the corpus a second time and compare the JSON byte for byte.
    #[arg(long)]
    determinism: bool,
}

fn load(path: &Path, o: &Overrides) -> Result<JobSpec, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("fihomlab: cannot read {}: {e}", path.display());
        EXIT_INVALID as u8
    })?;
    let mut job = parse_spec(&text).map_err(|e| {
        eprintln!("fihomlab: invalid spec {}:\n{e}", path.display());
        EXIT_INVALID as u8
    })?;
    apply(&mut job, o)?;
    Ok(job)
}

fn apply(job: &mut JobSpec, o: &Overrides) -> Result<(), u8> {
    if let Some(f) = o.field {
        job.field = f;
    }
    if let Some(w) = o.window {
        job.window = w;
    }
    if let Some(k) = o.imax {
        job.policy.i_max = Some(k);
    }
    if let Some(p) = o.nu_p {
        job.policy.nu_p = Some(p as usize);
    }
    let errors = job.validate();
    if errors.is_empty() {
        Ok(())
    } else {
        for e in errors {
            eprintln!("fihomlab: {e}");
        }
        Err(EXIT_INVALID as u8)
    }
}

fn execute(job: &JobSpec, o: &Overrides) -> u8 {
    let opts = RunOptions { assume_window_sufficient: o.assume_window_sufficient, cache_dir: None }.with_cache_for(o.out.as_deref());
    let start = Instant::now();
    let report = run_job(job, &opts);
    if let Some(dir) = &o.out {
        let written = std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(dir.join("report.json"), report.json_string()))
            .and_then(|_| std::fs::write(dir.join("report.txt"), &report.text));
        if let Err(e) = written {
            eprintln!("fihomlab: cannot write reports to {}: {e}", dir.display());
        }
    }
    if o.json {
        print!("{}", report.json_string());
    } else {
        print!("{}", report.text);
    }
    eprintln!("fihomlab: {} task(s) in {:.2?}", report.tasks.len(), start.elapsed());
    report.exit_code as u8
}

fn with_tasks(mut job: JobSpec, kind: TaskKind, module: Option<String>) -> Result<JobSpec, u8> {
    let names: Vec<String> = match module {
        Some(m) if job.module(&m).is_none() => {
            eprintln!("fihomlab: unknown module '{m}'");
            return Err(EXIT_INVALID as u8);
        }
        Some(m) => vec![m],
        None => job.modules.iter().map(|m| m.name.clone()).collect(),
    };
    job.tasks = names.into_iter().map(|m| TaskSpec { kind, module: Some(m), rows: None }).collect();
    Ok(job)
}

fn standalone(kind: TaskKind, o: &Overrides) -> u8 {
    let mut job = JobSpec {
        field: FieldChoice::Rationals,
        window: 6,
        policy: PolicySpec::default(),
        reps: Vec::new(),
        modules: Vec::new(),
        tasks: vec![TaskSpec { kind, module: None, rows: None }],
    };
    match apply(&mut job, o) {
        Ok(()) => execute(&job, o),
        Err(code) => code,
    }
}

fn suite(args: &SuiteArgs) -> u8 {
    let start = Instant::now();
    let report = run_suite();
    let first = report.json_string();
    let mut lines: Vec<String> = report.criteria.iter().map(|c| c.line()).collect();
    let mut passed = report.passed();
    if args.determinism {
        let c = determinism_criterion(&first);
        passed &= c.passed();
        lines.push(c.line());
    }
    for l in &lines {
        println!("{l}");
    }
    if let Some(dir) = &args.out {
        let written = std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(dir.join("suite.json"), &first))
            .and_then(|_| std::fs::write(dir.join("suite.txt"), lines.join("\n") + "\n"));
        if let Err(e) = written {
            eprintln!("fihomlab: cannot write reports to {}: {e}", dir.display());
        }
    }
    eprintln!("fihomlab: suite finished in {:.2?}", start.elapsed());
    if passed {
        0
    } else {
        EXIT_FAIL as u8
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(a) => match load(&a.spec, &a.overrides) {
            Ok(job) => execute(&job, &a.overrides),
            Err(c) => c,
        },
        Command::Verify(a) => module_task(a, TaskKind::Verify),
        Command::Tor(a) => module_task(a, TaskKind::Tor),
        Command::Lcoh(a) => module_task(a, TaskKind::Lcoh),
        Command::Nu(a) => module_task(a, TaskKind::Nu),
        Command::KoszulCheck(o) => standalone(TaskKind::KoszulCheck, &o),
        Command::GoodIdealCheck(o) => standalone(TaskKind::GoodIdealCheck, &o),
        Command::Suite(a) => suite(&a),
    };
    ExitCode::from(code)
}

fn module_task(a: ModuleArgs, kind: TaskKind) -> u8 {
    let job = load(&a.spec, &a.overrides).and_then(|job| with_tasks(job, kind, a.module));
    match job {
        Ok(job) => execute(&job, &a.overrides),
        Err(c) => c,
    }
}

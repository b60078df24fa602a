//! Executing a job: build the modules, run every task, assemble one JSON
//! document and one text report, and pick the exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fihom_core::fimod::{fi_constant, maxdeg, MaxDeg};
use fihom_core::ideal::{good_ideal, good_ideal_report, nu};
use fihom_core::koszul::{default_i_max, koszul_strand, tor_table};
use fihom_core::loccoh::{local_cohomology, Policy};
use fihom_core::verify::{nu_certificates_module, verify_main_theorem, Verdict, VerifyOptions};
use fihom_core::{Error, FIModule, Field, PrimeField, Rationals};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::build::{build_module, Built};
use crate::report::{
    certificate_json, good_ideal_json, loccoh_json, loccoh_text, nu_json, regularity_json, theorem_json, theorem_text,
    tor_json, tor_text,
};
use crate::spec::{print_spec, FieldChoice, JobSpec, TaskKind, TaskSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_WINDOW: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Uncertified,
    WindowInsufficient,
    Fail,
    Invalid,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Uncertified => "uncertified",
            Status::WindowInsufficient => "window-insufficient",
            Status::Fail => "fail",
            Status::Invalid => "invalid",
        }
    }

    fn parse(s: &str) -> Option<Status> {
        [Status::Ok, Status::Uncertified, Status::WindowInsufficient, Status::Fail, Status::Invalid]
            .into_iter()
            .find(|st| st.as_str() == s)
    }

    fn exit_code(self, assume_window_sufficient: bool) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Uncertified if assume_window_sufficient => EXIT_OK,
            Status::Uncertified | Status::WindowInsufficient => EXIT_WINDOW,
            Status::Fail => EXIT_FAIL,
            Status::Invalid => EXIT_INVALID,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Report uncertified verdicts without turning them into exit code 2.
    pub assume_window_sufficient: bool,
    pub cache_dir: Option<PathBuf>,
}

impl RunOptions {
    /// `FIHOMLAB_CACHE_DIR` if set, else `<out>/cache` when an output
    /// directory is given, else no cache.
    pub fn with_cache_for(mut self, out: Option<&Path>) -> Self {
        self.cache_dir = std::env::var_os("FIHOMLAB_CACHE_DIR")
            .map(PathBuf::from)
            .or_else(|| out.map(|o| o.join("cache")));
        self
    }
}

#[derive(Clone, Debug)]
pub struct TaskOutput {
    pub task: TaskSpec,
    pub status: Status,
    pub result: Value,
    pub text: String,
}

#[derive(Clone, Debug)]
pub struct JobReport {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
    pub tasks: Vec<TaskOutput>,
}

impl JobReport {
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::WindowExhausted { .. } => Status::WindowInsufficient,
        Error::NotPrime(_)
        | Error::NotInvertible { .. }
        | Error::NotEquivariant(_)
        | Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::DegreeMismatch { .. } => Status::Invalid,
        _ => Status::Fail,
    }
}

fn policy_of(job: &JobSpec) -> Policy {
    let d = Policy::default();
    Policy {
        i_max: job.policy.i_max.unwrap_or(d.i_max),
        margin: job.policy.margin.unwrap_or(d.margin),
        max_depth: job.policy.max_depth.unwrap_or(d.max_depth),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Content hash of everything a task's result depends on: field, window,
/// policy, the task itself and the definitions in its construction subtree.
pub fn task_key(job: &JobSpec, task: &TaskSpec) -> String {
    let (reps, mods) = match &task.module {
        Some(m) => job.subtree(m),
        None => Default::default(),
    };
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "field": job.field.to_string(),
        "window": job.window,
        "policy": job.policy,
        "nu_p": job.nu_p(),
        "task": task,
        "reps": reps.iter().filter_map(|r| job.rep(r)).collect::<Vec<_>>(),
        "modules": mods.iter().filter_map(|m| job.module(m)).collect::<Vec<_>>(),
    });
    sha256_hex(doc.to_string().as_bytes())
}

fn cache_load(dir: &Path, key: &str, task: &TaskSpec) -> Option<TaskOutput> {
    let text = std::fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    Some(TaskOutput {
        task: task.clone(),
        status: Status::parse(v.get("status")?.as_str()?)?,
        result: v.get("result")?.clone(),
        text: v.get("text")?.as_str()?.to_string(),
    })
}

fn cache_store(dir: &Path, key: &str, out: &TaskOutput) {
    let doc = json!({"status": out.status.as_str(), "result": out.result, "text": out.text});
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{key}.json.tmp{}", std::process::id()));
    if std::fs::write(&tmp, doc.to_string()).is_ok() {
        let _ = std::fs::rename(&tmp, dir.join(format!("{key}.json")));
    }
}

/// Run a validated job.
pub fn run_job(job: &JobSpec, opts: &RunOptions) -> JobReport {
    let shortfalls = job.window_shortfalls();
    if !shortfalls.is_empty() {
        let msgs: Vec<String> = shortfalls
            .iter()
            .map(|(loc, d)| format!("{loc}: constructor degree {d} exceeds window {}", job.window))
            .collect();
        return finish(job, Vec::new(), msgs, EXIT_WINDOW);
    }
    let outputs = match job.field {
        FieldChoice::Rationals => run_tasks(job, &Rationals, opts),
        FieldChoice::Prime(q) => match PrimeField::new(q) {
            Ok(f) => run_tasks(job, &f, opts),
            Err(e) => return finish(job, Vec::new(), vec![e.to_string()], EXIT_INVALID),
        },
    };
    let code = outputs
        .iter()
        .map(|o| o.status.exit_code(opts.assume_window_sufficient))
        .max_by_key(|&c| match c {
            EXIT_INVALID => 3,
            EXIT_FAIL => 2,
            EXIT_WINDOW => 1,
            _ => 0,
        })
        .unwrap_or(EXIT_OK);
    finish(job, outputs, Vec::new(), code)
}

fn finish(job: &JobSpec, tasks: Vec<TaskOutput>, errors: Vec<String>, exit_code: i32) -> JobReport {
    let json = json!({
        "tool": "fihomlab",
        "version": env!("CARGO_PKG_VERSION"),
        "spec_sha256": sha256_hex(print_spec(job).as_bytes()),
        "field": job.field.to_string(),
        "window": job.window,
        "nu_p": job.nu_p(),
        "policy": job.policy,
        "errors": errors,
        "tasks": tasks.iter().map(|t| json!({
            "kind": t.task.kind.as_str(),
            "module": t.task.module,
            "status": t.status.as_str(),
            "result": t.result,
        })).collect::<Vec<_>>(),
        "exit_code": exit_code,
    });
    let mut text = String::new();
    let _ = writeln!(text, "fihomlab: field {}, window {}", job.field, job.window);
    for e in &errors {
        let _ = writeln!(text, "error: {e}");
    }
    for t in &tasks {
        let _ = writeln!(
            text,
            "\n== {}{} [{}]",
            t.task.kind.as_str(),
            t.task.module.as_ref().map_or(String::new(), |m| format!(" {m}")),
            t.status.as_str()
        );
        text.push_str(&t.text);
    }
    let _ = writeln!(text, "\nexit code {exit_code}");
    JobReport { json, text, exit_code, tasks }
}

fn run_tasks<F>(job: &JobSpec, field: &F, opts: &RunOptions) -> Vec<TaskOutput>
where
    F: Field + Sync,
    F::Elem: Send + Sync,
{
    let keys: Vec<String> = job.tasks.iter().map(|t| task_key(job, t)).collect();
    let mut slots: Vec<Option<TaskOutput>> = job
        .tasks
        .iter()
        .zip(&keys)
        .map(|(t, k)| opts.cache_dir.as_deref().and_then(|d| cache_load(d, k, t)))
        .collect();

    let mut built = Built { reps: BTreeMap::new(), modules: BTreeMap::new() };
    let mut build_errors: BTreeMap<String, Error> = BTreeMap::new();
    for (t, slot) in job.tasks.iter().zip(&slots) {
        if let (None, Some(m)) = (slot, &t.module) {
            if !built.modules.contains_key(m) && !build_errors.contains_key(m) {
                if let Err(e) = build_module(job, field, m, &mut built) {
                    build_errors.insert(m.clone(), e);
                }
            }
        }
    }

    std::thread::scope(|scope| {
        let handles: Vec<_> = job
            .tasks
            .iter()
            .zip(slots.iter())
            .map(|(t, slot)| {
                if slot.is_some() {
                    return None;
                }
                if let Some(e) = t.module.as_ref().and_then(|m| build_errors.get(m)) {
                    let status = match error_status(e) {
                        Status::Fail => Status::Fail,
                        Status::WindowInsufficient => Status::WindowInsufficient,
                        _ => Status::Invalid,
                    };
                    return Some(Err(error_output(t, status, e)));
                }
                let module = t.module.as_ref().map(|m| &built.modules[m]);
                Some(Ok(scope.spawn(move || run_task(job, field, t, module))))
            })
            .collect();
        for (slot, h) in slots.iter_mut().zip(handles) {
            match h {
                None => {}
                Some(Err(out)) => *slot = Some(out),
                Some(Ok(h)) => *slot = Some(h.join().expect("task thread panicked")),
            }
        }
    });

    let outputs: Vec<TaskOutput> = slots.into_iter().map(|s| s.expect("every task ran")).collect();
    if let Some(dir) = &opts.cache_dir {
        for (o, k) in outputs.iter().zip(&keys) {
            if matches!(o.status, Status::Ok | Status::Uncertified | Status::Fail) {
                cache_store(dir, k, o);
            }
        }
    }
    outputs
}

fn error_output(task: &TaskSpec, status: Status, e: &Error) -> TaskOutput {
    TaskOutput {
        task: task.clone(),
        status,
        result: json!({"error": e.to_string()}),
        text: format!("error: {e}\n"),
    }
}

/// Run one task; errors become statuses.
pub fn run_task<F: Field>(job: &JobSpec, field: &F, task: &TaskSpec, module: Option<&FIModule<F>>) -> TaskOutput {
    match compute(job, field, task, module) {
        Ok((status, result, text)) => TaskOutput { task: task.clone(), status, result, text },
        Err(e) => error_output(task, error_status(&e), &e),
    }
}

fn compute<F: Field>(job: &JobSpec, field: &F, task: &TaskSpec, module: Option<&FIModule<F>>) -> Result<(Status, Value, String), Error> {
    let policy = policy_of(job);
    let need = || module.ok_or_else(|| Error::Parse(format!("task '{}' needs a module", task.kind.as_str())));
    match task.kind {
        TaskKind::Tor => {
            let m = need()?;
            let rows = match task.rows {
                Some(r) => r,
                None => default_i_max(m)?,
            };
            let t = tor_table(m, rows)?;
            Ok((Status::Ok, tor_json(&t), tor_text(&t)))
        }
        TaskKind::Reg => {
            let m = need()?;
            let rows = match task.rows {
                Some(r) => r,
                None => default_i_max(m)?,
            };
            let t = tor_table(m, rows)?;
            let reg = t.regularity();
            let text = format!("reg = {}\n", crate::report::fmt_deg(reg.reg));
            let mut v = regularity_json(&reg);
            v["t"] = json!((0..=rows).map(|i| crate::report::opt_usize(t.t(i))).collect::<Vec<_>>());
            v["certified"] = json!(t.valid_through == t.window);
            Ok((Status::Ok, v, text))
        }
        TaskKind::Lcoh => {
            let m = need()?;
            let t = local_cohomology(m, &policy)?.table();
            let status = if t.is_certified() { Status::Ok } else { Status::Uncertified };
            Ok((status, loccoh_json(&t), loccoh_text(&t)))
        }
        TaskKind::Nu => {
            let m = need()?;
            let gi = good_ideal(job.nu_p(), field)?;
            let mut pieces = Vec::new();
            let mut text = String::from("  n  dim  nu\n");
            for n in 0..=m.window() {
                let v = nu(m.piece(n), &gi)?;
                let _ = writeln!(text, "{n:>3}{:>5}{:>4}", m.piece(n).dim(), v.to_string());
                pieces.push(json!({"n": n, "dim": m.piece(n).dim(), "nu": nu_json(v), "certified": n <= m.valid_through()}));
            }
            let certs = match maxdeg(m) {
                MaxDeg::Finite(_) => nu_certificates_module(m, &gi)?,
                _ => Vec::new(),
            };
            let bad = certs.iter().any(|c| c.in_range && !c.holds());
            if !certs.is_empty() {
                let held = certs.iter().filter(|c| c.in_range && c.holds()).count();
                let total = certs.iter().filter(|c| c.in_range).count();
                let _ = writeln!(text, "top-degree certificates: {held}/{total} in range hold");
            }
            let status = if bad { Status::Fail } else { Status::Ok };
            let v = json!({
                "p": job.nu_p(),
                "pieces": pieces,
                "certificates": certs.iter().map(certificate_json).collect::<Vec<_>>(),
            });
            Ok((status, v, text))
        }
        TaskKind::Verify => {
            let m = need()?;
            let gi = good_ideal(job.nu_p(), field)?;
            let opts = VerifyOptions { policy, ..VerifyOptions::default() };
            let r = verify_main_theorem(m, Some(&gi), &opts)?;
            let status = match r.verdict {
                Verdict::Pass => Status::Ok,
                Verdict::Fail => Status::Fail,
                Verdict::Uncertified => Status::Uncertified,
            };
            Ok((status, theorem_json(&r), theorem_text(&r)))
        }
        TaskKind::KoszulCheck => {
            let a = fi_constant(field, job.window)?;
            let mut strands = Vec::new();
            let mut exact = true;
            let mut text = String::new();
            for n in 0..=job.window {
                let h = koszul_strand(&a, n)?.homology_dims();
                let expected: Vec<usize> = (0..h.len()).map(|i| usize::from(i == 0 && n == 0)).collect();
                let ok = h == expected;
                exact &= ok;
                let _ = writeln!(text, "  n = {n}: homology {h:?} {}", if ok { "ok" } else { "NOT EXACT" });
                strands.push(json!({"n": n, "homology": h, "ok": ok}));
            }
            let status = if exact { Status::Ok } else { Status::Fail };
            Ok((status, json!({"exact": exact, "strands": strands}), text))
        }
        TaskKind::GoodIdealCheck => {
            let gi = good_ideal(job.nu_p(), field)?;
            let r = good_ideal_report(&gi)?;
            let mut text = String::new();
            for c in &r.checks {
                let _ = writeln!(text, "  {:<36} {:<5} {}", c.axiom, if c.passed { "ok" } else { "FAIL" }, c.detail);
            }
            let status = if r.passed() { Status::Ok } else { Status::Fail };
            Ok((status, good_ideal_json(&r), text))
        }
    }
}

use std::process::Command;

use fihomlab::spec::{Entry, ModuleOp, ModuleSpec, PolicySpec, RepKind, RepSpec, TaskSpec};
use fihomlab::{parse_spec, print_spec, run_job, FieldChoice, JobSpec, RunOptions, TaskKind, EXIT_INVALID, EXIT_OK, EXIT_WINDOW};
use proptest::prelude::*;
use serde_json::Value;

const SUITE_SPEC: &str = r#"
# A, a torsion module in degree 2 and the augmentation ideal A+.
field = "Q"
window = 6

[[rep]]
name = "t1"
kind = "trivial"
degree = 1

[[rep]]
name = "r2"
kind = "regular"
degree = 2

[[module]]
name = "A"
op = "constant"

[[module]]
name = "T"
op = "torsion"
rep = "r2"

[[module]]
name = "Aplus"
op = "image"
source = "t1"
target = "A"
f0 = [[1]]

[[task]]
kind = "verify"
module = "A"

[[task]]
kind = "verify"
module = "T"

[[task]]
kind = "verify"
module = "Aplus"
"#;

fn run(text: &str) -> fihomlab::JobReport {
    run_job(&parse_spec(text).expect("valid spec"), &RunOptions::default())
}

fn task_result(report: &Value, k: usize) -> &Value {
    &report["tasks"][k]["result"]
}

#[test]
fn verify_suite_exits_zero() {
    let r = run(SUITE_SPEC);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.text);
    for k in 0..3 {
        assert_eq!(task_result(&r.json, k)["verdict"], "pass");
    }
    assert_eq!(task_result(&r.json, 0)["lhs"], 0);
    assert_eq!(task_result(&r.json, 1)["lhs"], 2);
    assert_eq!(task_result(&r.json, 2)["lhs"], 1);
    assert!(r.text.contains("verdict: PASS"));
}

#[test]
fn koszul_check_exits_zero() {
    let r = run("field = \"Q\"\nwindow = 6\n[[task]]\nkind = \"koszul-check\"\n");
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.text);
    assert_eq!(task_result(&r.json, 0)["exact"], true);
}

#[test]
fn window_below_constructor_degree_exits_two() {
    let text = "field = \"Q\"\nwindow = 2\n[[rep]]\nname = \"t3\"\nkind = \"trivial\"\ndegree = 3\n\
        [[module]]\nname = \"T\"\nop = \"torsion\"\nrep = \"t3\"\n[[task]]\nkind = \"verify\"\nmodule = \"T\"\n";
    let r = run(text);
    assert_eq!(r.exit_code, EXIT_WINDOW);
    assert!(r.json["errors"][0].as_str().unwrap().contains("exceeds window 2"));
}

#[test]
fn cokernel_of_augmentation_matches_the_image_pipeline() {
    // 0 -> A+ -> A -> k0 -> 0 with A semi-induced gives H^1(A+) = H^0(k0).
    let text = "field = \"Q\"\nwindow = 5\n[[rep]]\nname = \"t1\"\nkind = \"trivial\"\ndegree = 1\n\
        [[module]]\nname = \"A\"\nop = \"constant\"\n\
        [[module]]\nname = \"K\"\nop = \"cokernel\"\nsource = \"t1\"\ntarget = \"A\"\nf0 = [[\"1\"]]\n\
        [[module]]\nname = \"P\"\nop = \"image\"\nsource = \"t1\"\ntarget = \"A\"\nf0 = [[\"1\"]]\n\
        [[task]]\nkind = \"lcoh\"\nmodule = \"K\"\n[[task]]\nkind = \"lcoh\"\nmodule = \"P\"\n";
    let r = run(text);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.text);
    let k = task_result(&r.json, 0);
    let p = task_result(&r.json, 1);
    assert_eq!(k["rows"][0]["maxdeg"], 0);
    assert_eq!(p["rows"][1]["maxdeg"], 0);
    let dims = |v: &Value, i: usize| -> Vec<u64> {
        v["rows"][i]["cells"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect()
    };
    let (h0, h1) = (dims(k, 0), dims(p, 1));
    let common = h0.len().min(h1.len());
    assert!(common >= 4);
    assert_eq!(h0[..common], h1[..common]);
}

#[test]
fn non_equivariant_f0_is_invalid_input() {
    let text = "field = \"Q\"\nwindow = 4\n[[rep]]\nname = \"n2\"\nkind = \"natural\"\ndegree = 2\n\
        [[rep]]\nname = \"t2\"\nkind = \"trivial\"\ndegree = 2\n\
        [[module]]\nname = \"I\"\nop = \"induced\"\nrep = \"t2\"\n\
        [[module]]\nname = \"K\"\nop = \"kernel\"\nsource = \"n2\"\ntarget = \"I\"\nf0 = [[1, 0]]\n\
        [[task]]\nkind = \"tor\"\nmodule = \"K\"\n";
    let r = run(text);
    assert_eq!(r.exit_code, EXIT_INVALID, "{}", r.text);
    assert_eq!(r.json["tasks"][0]["status"], "invalid");
}

#[test]
fn reports_are_byte_stable() {
    let a = run(SUITE_SPEC).json_string();
    let b = run(SUITE_SPEC).json_string();
    assert_eq!(a, b);
    assert!(!a.contains("elapsed") && !a.contains("time"));
}

#[test]
fn tor_text_uses_betti_layout() {
    let text = "field = \"F5\"\nwindow = 4\n[[module]]\nname = \"A\"\nop = \"constant\"\n[[task]]\nkind = \"tor\"\nmodule = \"A\"\nrows = 2\n";
    let r = run(text);
    let header = r.text.lines().find(|l| l.trim_start().starts_with("n-i")).unwrap();
    assert_eq!(header.split_whitespace().collect::<Vec<_>>(), ["n-i", "0", "1", "2", "3", "4"]);
    let row0 = r.text.lines().find(|l| l.trim_start().starts_with("0:")).unwrap();
    assert_eq!(row0.split_whitespace().collect::<Vec<_>>(), ["0:", "1", ".", ".", ".", "."]);
}

#[test]
fn cache_hits_reproduce_results() {
    let dir = tempfile::tempdir().unwrap();
    let job = parse_spec(SUITE_SPEC).unwrap();
    let opts = RunOptions { assume_window_sufficient: false, cache_dir: Some(dir.path().to_path_buf()) };
    let first = run_job(&job, &opts);
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 3);
    let second = run_job(&job, &opts);
    assert_eq!(first.json_string(), second.json_string());
    assert_eq!(first.text, second.text);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fihomlab"))
}

#[test]
fn binary_exit_codes_and_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("job.toml");
    std::fs::write(&spec, SUITE_SPEC).unwrap();
    let cache = dir.path().join("cache-here");
    let out = dir.path().join("out");
    let status = bin()
        .args(["run", spec.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .env("FIHOMLAB_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(out.join("report.json").exists() && out.join("report.txt").exists());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 3);
    assert!(!out.join("cache").exists());

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "field = \"F2\"\nwindow = 3\n[policy]\nnu_p = 2\n").unwrap();
    let o = bin().args(["run", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 not invertible"));

    let o = bin().args(["koszul-check", "--field", "F5", "--window", "5"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));

    let o = bin().args(["good-ideal-check", "--field", "F2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("idempotent"));

    let o = bin().args(["verify", spec.to_str().unwrap(), "--module", "T", "--field", "F7", "--json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "F7");
    assert_eq!(v["tasks"].as_array().unwrap().len(), 1);
    let o = bin().args(["tor", spec.to_str().unwrap(), "--module", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
}

#[test]
fn minimal_spec_is_valid() {
    let job = parse_spec("field = \"Q\"\nwindow = 4\n[[module]]\nname = \"A\"\nop = \"constant\"\n[[task]]\nkind = \"reg\"\nmodule = \"A\"\n").unwrap();
    let r = run_job(&job, &RunOptions::default());
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(task_result(&r.json, 0)["reg"], 0);
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "c", "M", "N2"]).prop_map(String::from)
}

fn entry() -> impl Strategy<Value = Entry> {
    prop_oneof![(-5i64..5).prop_map(Entry::Int), (-5i64..5, 1i64..4).prop_map(|(a, b)| Entry::Text(format!("{a}/{b}")))]
}

fn rep_spec() -> impl Strategy<Value = RepSpec> {
    (
        name(),
        prop::sample::select(vec![RepKind::Trivial, RepKind::Sign, RepKind::Natural, RepKind::Regular, RepKind::Sum, RepKind::Custom]),
        prop::option::of(0usize..5),
        prop::collection::vec(name(), 0..3),
        prop::option::of(1usize..3),
        prop::collection::vec(prop::collection::vec(prop::collection::vec(entry(), 1..3), 1..3), 0..2),
    )
        .prop_map(|(name, kind, degree, parts, dim, gens)| RepSpec { name, kind, degree, parts, dim, gens })
}

fn module_spec() -> impl Strategy<Value = ModuleSpec> {
    (
        name(),
        prop::sample::select(vec![
            ModuleOp::Induced,
            ModuleOp::Torsion,
            ModuleOp::Constant,
            ModuleOp::Sum,
            ModuleOp::Shift,
            ModuleOp::Truncate,
            ModuleOp::Kernel,
            ModuleOp::Cokernel,
            ModuleOp::Image,
        ]),
        prop::option::of(name()),
        prop::collection::vec(name(), 0..3),
        (prop::option::of(name()), prop::option::of(0usize..4), prop::option::of(0usize..4)),
        (prop::option::of(name()), prop::option::of(name())),
        prop::option::of(prop::collection::vec(prop::collection::vec(entry(), 1..3), 1..3)),
    )
        .prop_map(|(name, op, rep, parts, (of, by, at), (source, target), f0)| ModuleSpec {
            name,
            op,
            rep,
            parts,
            of,
            by,
            at,
            source,
            target,
            f0,
        })
}

fn job_spec() -> impl Strategy<Value = JobSpec> {
    (
        prop::sample::select(vec![FieldChoice::Rationals, FieldChoice::Prime(2), FieldChoice::Prime(5), FieldChoice::Prime(7)]),
        0usize..9,
        (prop::option::of(0usize..4), prop::option::of(0usize..3), prop::option::of(2usize..4)),
        prop::collection::vec(rep_spec(), 0..3),
        prop::collection::vec(module_spec(), 0..3),
        prop::collection::vec(
            (
                prop::sample::select(vec![TaskKind::Tor, TaskKind::Reg, TaskKind::Lcoh, TaskKind::Nu, TaskKind::Verify, TaskKind::KoszulCheck]),
                prop::option::of(name()),
                prop::option::of(0usize..4),
            )
                .prop_map(|(kind, module, rows)| TaskSpec { kind, module, rows }),
            0..3,
        ),
    )
        .prop_map(|(field, window, (i_max, margin, nu_p), reps, modules, tasks)| JobSpec {
            field,
            window,
            policy: PolicySpec { i_max, margin, max_depth: None, nu_p },
            reps,
            modules,
            tasks,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_round_trips(job in job_spec()) {
        let text = print_spec(&job);
        let back: JobSpec = toml::from_str(&text).unwrap();
        prop_assert_eq!(&back, &job);
        if job.validate().is_empty() {
            prop_assert_eq!(parse_spec(&text).unwrap(), job);
        } else {
            prop_assert!(parse_spec(&text).is_err());
        }
    }
}

#[test]
fn shipped_example_job_passes() {
    let r = run(include_str!("../jobs/basic.toml"));
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.text);
    assert_eq!(task_result(&r.json, 0)["lhs"], 1);
}

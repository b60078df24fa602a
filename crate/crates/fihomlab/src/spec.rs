//! Job files: a TOML document naming a field, a window, representations,
//! module constructions and the tasks to run on them.
//!
//! ```toml
//! field = "F5"
//! window = 6
//!
//! [policy]
//! i_max = 2
//! nu_p = 2
//!
//! [[rep]]
//! name = "t1"
//! kind = "trivial"
//! degree = 1
//!
//! [[module]]
//! name = "A"
//! op = "constant"
//!
//! [[module]]
//! name = "Aplus"
//! op = "image"
//! source = "t1"
//! target = "A"
//! f0 = [["1"]]
//!
//! [[task]]
//! kind = "verify"
//! module = "Aplus"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fihom_core::field::is_prime;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::Prime(q) => *q,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "Q"),
            FieldChoice::Prime(q) => write!(f, "F{q}"),
        }
    }
}

impl std::str::FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "rationals") {
            return Ok(FieldChoice::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('F'))
            .map(|d| d.trim_start_matches('_').trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| format!("unknown field '{t}' (expected Q or F<q>)"))?;
        let q: u64 = digits.parse().map_err(|_| format!("unknown field '{t}' (expected Q or F<q>)"))?;
        if !is_prime(q) || q > u32::MAX as u64 {
            return Err(format!("{q} is not a supported prime"));
        }
        Ok(FieldChoice::Prime(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepKind {
    Zero,
    Trivial,
    Sign,
    Natural,
    Regular,
    /// Direct sum of `parts`.
    Sum,
    /// Explicit matrices for the adjacent transpositions.
    Custom,
}

/// A matrix entry, written either as an integer or as a string such as
/// `"-2/3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(v) => write!(f, "{v}"),
            Entry::Text(s) => write!(f, "{s}"),
        }
    }
}

pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub name: String,
    pub kind: RepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// One matrix per generator `s_0 .. s_{d-2}`, rows of entries.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gens: Vec<MatrixSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleOp {
    Induced,
    Torsion,
    Constant,
    Sum,
    Shift,
    Truncate,
    Kernel,
    Cokernel,
    Image,
}

impl ModuleOp {
    fn needs_morphism(self) -> bool {
        matches!(self, ModuleOp::Kernel | ModuleOp::Cokernel | ModuleOp::Image)
    }
}

/// A module construction. Which fields are required depends on `op`:
/// `rep` for induced and torsion; `parts` for sum; `of` with `by` or `at`
/// for shift and truncate; `source`, `target` and `f0` for the morphism
/// `I(source) -> target` of kernel, cokernel and image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub op: ModuleOp,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f0: Option<MatrixSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Tor,
    Reg,
    Lcoh,
    Nu,
    Verify,
    KoszulCheck,
    GoodIdealCheck,
}

impl TaskKind {
    pub fn needs_module(self) -> bool {
        !matches!(self, TaskKind::KoszulCheck | TaskKind::GoodIdealCheck)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Tor => "tor",
            TaskKind::Reg => "reg",
            TaskKind::Lcoh => "lcoh",
            TaskKind::Nu => "nu",
            TaskKind::Verify => "verify",
            TaskKind::KoszulCheck => "koszul-check",
            TaskKind::GoodIdealCheck => "good-ideal-check",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub kind: TaskKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    /// Tor rows for `tor` and `reg`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    /// Higher Tor rows inspected by the semi-induced test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    /// Block size of the good ideal used for ν; 2 or 3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_p: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(with = "field_serde")]
    pub field: FieldChoice,
    pub window: usize,
    #[serde(default, skip_serializing_if = "is_default_policy")]
    pub policy: PolicySpec,
    #[serde(default, rename = "rep", skip_serializing_if = "Vec::is_empty")]
    pub reps: Vec<RepSpec>,
    #[serde(default, rename = "module", skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSpec>,
    #[serde(default, rename = "task", skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskSpec>,
}

fn is_default_policy(p: &PolicySpec) -> bool {
    *p == PolicySpec::default()
}

mod field_serde {
    use super::FieldChoice;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FieldChoice, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldChoice, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One problem in a job file, with the place it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
pub struct SpecErrors(pub Vec<SpecError>);

/// Parse and validate a job file.
pub fn parse_spec(text: &str) -> Result<JobSpec, SpecErrors> {
    let job: JobSpec = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let before = &text[..span.start.min(text.len())];
                let line = before.matches('\n').count() + 1;
                let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                format!("line {line}, column {col}")
            }
            None => "spec".into(),
        };
        SpecErrors(vec![SpecError { location, message: e.message().to_string() }])
    })?;
    let errors = job.validate();
    if errors.is_empty() {
        Ok(job)
    } else {
        Err(SpecErrors(errors))
    }
}

/// Canonical text of a job; `parse_spec(&print_spec(j)) == Ok(j)` for every
/// valid job.
pub fn print_spec(job: &JobSpec) -> String {
    toml::to_string(job).expect("job specs always serialize")
}

impl JobSpec {
    /// Block size used for ν: the policy value, else 2 unless the
    /// characteristic is 2.
    pub fn nu_p(&self) -> usize {
        self.policy.nu_p.unwrap_or(if self.field.characteristic() == 2 { 3 } else { 2 })
    }

    pub fn rep(&self, name: &str) -> Option<&RepSpec> {
        self.reps.iter().find(|r| r.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&ModuleSpec> {
        self.modules.iter().find(|m| m.name == name)
    }

    /// Every problem with names, required fields, cycles and the choice of
    /// `p`. The window rule is checked separately at run time.
    pub fn validate(&self) -> Vec<SpecError> {
        let mut errors = Vec::new();
        let mut err = |location: String, message: String| errors.push(SpecError { location, message });

        if let Some(p) = self.policy.nu_p {
            if p != 2 && p != 3 {
                err("policy.nu_p".into(), format!("p must be 2 or 3, got {p}"));
            }
        }
        let p = self.nu_p() as u64;
        if (p == 2 || p == 3) && self.field.characteristic() == p {
            err(
                "policy.nu_p".into(),
                format!(
                    "{p} not invertible in {}: the good ideal for p = {p} needs {} in the field; use p = {}",
                    self.field,
                    if p == 2 { "1/2" } else { "2/3, hence 1/3," },
                    5 - p
                ),
            );
        }

        let mut seen = BTreeSet::new();
        for (k, r) in self.reps.iter().enumerate() {
            let loc = format!("rep[{k}] '{}'", r.name);
            if !seen.insert(r.name.as_str()) {
                err(loc.clone(), "duplicate rep name".into());
            }
            match r.kind {
                RepKind::Sum => {
                    if r.parts.is_empty() {
                        err(loc.clone(), "a sum needs at least one part".into());
                    }
                    for part in &r.parts {
                        if self.rep(part).is_none() {
                            err(loc.clone(), format!("unknown rep '{part}'"));
                        }
                    }
                }
                RepKind::Custom => {
                    let (Some(d), Some(dim)) = (r.degree, r.dim) else {
                        err(loc.clone(), "custom reps need degree and dim".into());
                        continue;
                    };
                    if r.gens.len() != d.saturating_sub(1) {
                        err(loc.clone(), format!("S_{d} needs {} generator matrices, found {}", d.saturating_sub(1), r.gens.len()));
                    }
                    for (g, m) in r.gens.iter().enumerate() {
                        if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                            err(loc.clone(), format!("generator {g} is not {dim}x{dim}"));
                        }
                    }
                }
                _ => {
                    if r.degree.is_none() {
                        err(loc.clone(), "missing degree".into());
                    }
                }
            }
        }
        if let Some(cycle) = find_cycle(self.reps.iter().map(|r| (r.name.as_str(), r.parts.iter().map(String::as_str).collect()))) {
            err("rep".into(), format!("cyclic definition: {cycle}"));
        }

        let mut seen = BTreeSet::new();
        for (k, m) in self.modules.iter().enumerate() {
            let loc = format!("module[{k}] '{}'", m.name);
            if !seen.insert(m.name.as_str()) {
                err(loc.clone(), "duplicate module name".into());
            }
            let need_rep = |field: &str, name: &Option<String>, err: &mut dyn FnMut(String, String)| match name {
                None => err(loc.clone(), format!("op '{}' needs '{field}'", op_name(m.op))),
                Some(n) if self.rep(n).is_none() => err(loc.clone(), format!("unknown rep '{n}'")),
                Some(_) => {}
            };
            let need_module = |field: &str, name: &Option<String>, err: &mut dyn FnMut(String, String)| match name {
                None => err(loc.clone(), format!("op '{}' needs '{field}'", op_name(m.op))),
                Some(n) if self.module(n).is_none() => err(loc.clone(), format!("unknown module '{n}'")),
                Some(_) => {}
            };
            match m.op {
                ModuleOp::Induced | ModuleOp::Torsion => need_rep("rep", &m.rep, &mut err),
                ModuleOp::Constant => {}
                ModuleOp::Sum => {
                    if m.parts.is_empty() {
                        err(loc.clone(), "a sum needs at least one part".into());
                    }
                    for part in &m.parts {
                        if self.module(part).is_none() {
                            err(loc.clone(), format!("unknown module '{part}'"));
                        }
                    }
                }
                ModuleOp::Shift => {
                    need_module("of", &m.of, &mut err);
                    if m.by.is_none() {
                        err(loc.clone(), "op 'shift' needs 'by'".into());
                    }
                }
                ModuleOp::Truncate => {
                    need_module("of", &m.of, &mut err);
                    if m.at.is_none() {
                        err(loc.clone(), "op 'truncate' needs 'at'".into());
                    }
                }
                ModuleOp::Kernel | ModuleOp::Cokernel | ModuleOp::Image => {
                    need_rep("source", &m.source, &mut err);
                    need_module("target", &m.target, &mut err);
                    if m.f0.is_none() {
                        err(loc.clone(), format!("op '{}' needs 'f0'", op_name(m.op)));
                    }
                }
            }
        }
        if let Some(cycle) = find_cycle(self.modules.iter().map(|m| (m.name.as_str(), module_deps(m)))) {
            err("module".into(), format!("cyclic definition: {cycle}"));
        }

        for (k, t) in self.tasks.iter().enumerate() {
            let loc = format!("task[{k}] '{}'", t.kind.as_str());
            match (&t.module, t.kind.needs_module()) {
                (None, true) => err(loc, "missing 'module'".into()),
                (Some(n), true) if self.module(n).is_none() => err(loc, format!("unknown module '{n}'")),
                (Some(_), false) => err(loc, "this task takes no module".into()),
                _ => {}
            }
        }
        errors
    }

    /// Constructor degrees above the window, as `(location, degree)`.
    pub fn window_shortfalls(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for m in &self.modules {
            let rep = match m.op {
                ModuleOp::Induced | ModuleOp::Torsion => m.rep.as_deref(),
                op if op.needs_morphism() => m.source.as_deref(),
                _ => None,
            };
            if let Some(d) = rep.and_then(|r| self.rep_degree(r)) {
                if d > self.window {
                    out.push((format!("module '{}'", m.name), d));
                }
            }
            if let (ModuleOp::Shift, Some(by)) = (m.op, m.by) {
                if by > self.window {
                    out.push((format!("module '{}'", m.name), by));
                }
            }
        }
        out
    }

    pub fn rep_degree(&self, name: &str) -> Option<usize> {
        self.rep_degree_guarded(name, 0)
    }

    fn rep_degree_guarded(&self, name: &str, depth: usize) -> Option<usize> {
        let r = self.rep(name)?;
        if depth > self.reps.len() {
            return None;
        }
        match r.kind {
            RepKind::Sum => r.parts.first().and_then(|p| self.rep_degree_guarded(p, depth + 1)),
            _ => r.degree,
        }
    }

    /// Names of the reps and modules a module depends on, itself included,
    /// in sorted order.
    pub fn subtree(&self, module: &str) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut reps = BTreeSet::new();
        let mut mods = BTreeSet::new();
        let mut stack = vec![module.to_string()];
        while let Some(name) = stack.pop() {
            if !mods.insert(name.clone()) {
                continue;
            }
            let Some(m) = self.module(&name) else { continue };
            stack.extend(module_deps(m).into_iter().map(String::from));
            let mut rep_stack: Vec<String> = m.rep.iter().chain(m.source.iter()).cloned().collect();
            while let Some(r) = rep_stack.pop() {
                if reps.insert(r.clone()) {
                    if let Some(rs) = self.rep(&r) {
                        rep_stack.extend(rs.parts.iter().cloned());
                    }
                }
            }
        }
        (reps, mods)
    }
}

fn op_name(op: ModuleOp) -> &'static str {
    match op {
        ModuleOp::Induced => "induced",
        ModuleOp::Torsion => "torsion",
        ModuleOp::Constant => "constant",
        ModuleOp::Sum => "sum",
        ModuleOp::Shift => "shift",
        ModuleOp::Truncate => "truncate",
        ModuleOp::Kernel => "kernel",
        ModuleOp::Cokernel => "cokernel",
        ModuleOp::Image => "image",
    }
}

fn module_deps(m: &ModuleSpec) -> Vec<&str> {
    m.parts.iter().map(String::as_str).chain(m.of.as_deref()).chain(m.target.as_deref()).collect()
}

/// A cycle among named definitions, rendered `a -> b -> a`.
fn find_cycle<'a>(graph: impl Iterator<Item = (&'a str, Vec<&'a str>)>) -> Option<String> {
    let graph: BTreeMap<&str, Vec<&str>> = graph.collect();
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit<'a>(
        v: &'a str,
        graph: &BTreeMap<&'a str, Vec<&'a str>>,
        marks: &mut BTreeMap<&'a str, Mark>,
        path: &mut Vec<&'a str>,
    ) -> Option<String> {
        match marks.get(v) {
            Some(Mark::Done) => return None,
            Some(Mark::Open) => {
                let start = path.iter().position(|&p| p == v).unwrap_or(0);
                let mut cycle: Vec<&str> = path[start..].to_vec();
                cycle.push(v);
                return Some(cycle.join(" -> "));
            }
            None => {}
        }
        marks.insert(v, Mark::Open);
        path.push(v);
        for &w in graph.get(v).map(Vec::as_slice).unwrap_or(&[]) {
            if graph.contains_key(w) {
                if let Some(c) = visit(w, graph, marks, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        marks.insert(v, Mark::Done);
        None
    }
    let mut marks = BTreeMap::new();
    for &v in graph.keys() {
        if let Some(c) = visit(v, &graph, &mut marks, &mut Vec::new()) {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "field = \"Q\"\nwindow = 4\n[[module]]\nname = \"A\"\nop = \"constant\"\n[[task]]\nkind = \"reg\"\nmodule = \"A\"\n";

    #[test]
    fn minimal_spec() {
        let job = parse_spec(MINIMAL).unwrap();
        assert_eq!(job.field, FieldChoice::Rationals);
        assert_eq!(job.window, 4);
        assert_eq!(job.tasks[0].kind, TaskKind::Reg);
        assert_eq!(parse_spec(&print_spec(&job)).unwrap(), job);
    }

    #[test]
    fn field_names() {
        assert_eq!("F5".parse::<FieldChoice>(), Ok(FieldChoice::Prime(5)));
        assert_eq!("GF(7)".parse::<FieldChoice>(), Ok(FieldChoice::Prime(7)));
        assert!("F6".parse::<FieldChoice>().is_err());
        assert!("R".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn p_two_over_f2_is_rejected() {
        let text = "field = \"F2\"\nwindow = 3\n[policy]\nnu_p = 2\n";
        let errs = parse_spec(text).unwrap_err();
        assert!(errs.to_string().contains("2 not invertible"), "{errs}");
        assert!(parse_spec("field = \"F2\"\nwindow = 3\n").is_ok());
    }

    #[test]
    fn unknown_names_and_cycles() {
        let text = "field = \"Q\"\nwindow = 3\n\
            [[module]]\nname = \"X\"\nop = \"shift\"\nof = \"Y\"\nby = 1\n\
            [[module]]\nname = \"Y\"\nop = \"sum\"\nparts = [\"X\"]\n\
            [[module]]\nname = \"Z\"\nop = \"induced\"\nrep = \"nope\"\n";
        let errs = parse_spec(text).unwrap_err().0;
        assert!(errs.iter().any(|e| e.message.contains("unknown rep 'nope'")));
        assert!(errs.iter().any(|e| e.message.contains("cyclic definition")));
    }

    #[test]
    fn syntax_errors_are_located() {
        let errs = parse_spec("field = \"Q\"\nwindow = \"x\"\n").unwrap_err().0;
        assert!(errs[0].location.starts_with("line 2"), "{:?}", errs);
    }

    #[test]
    fn window_rule() {
        let text = "field = \"Q\"\nwindow = 2\n[[rep]]\nname = \"r\"\nkind = \"regular\"\ndegree = 3\n\
            [[module]]\nname = \"T\"\nop = \"torsion\"\nrep = \"r\"\n";
        let job = parse_spec(text).unwrap();
        assert_eq!(job.window_shortfalls(), vec![("module 'T'".to_string(), 3)]);
    }
}

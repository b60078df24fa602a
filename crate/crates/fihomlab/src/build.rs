//! Turning a validated job into representations and modules over a field.

use std::collections::BTreeMap;

use fihom_core::fimod::{cokernel, fi_constant, fi_induced, fi_shift, fi_torsion_concentrated, fi_truncate, image, induced_morphism, kernel};
use fihom_core::{Error, FIModule, Field, Matrix, SnRep};

use crate::spec::{Entry, JobSpec, MatrixSpec, ModuleOp, RepKind};

pub struct Built<F: Field> {
    pub reps: BTreeMap<String, SnRep<F>>,
    pub modules: BTreeMap<String, FIModule<F>>,
}

pub fn parse_matrix<F: Field>(field: &F, m: &MatrixSpec) -> Result<Matrix<F>, Error> {
    let rows = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Entry::Int(v) => Ok(field.from_i64(*v)),
                    Entry::Text(s) => field.parse_elem(s),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, rows)
}

pub fn build_rep<F: Field>(job: &JobSpec, field: &F, name: &str, cache: &mut BTreeMap<String, SnRep<F>>) -> Result<SnRep<F>, Error> {
    if let Some(r) = cache.get(name) {
        return Ok(r.clone());
    }
    let spec = job.rep(name).ok_or_else(|| Error::Parse(format!("unknown rep '{name}'")))?;
    let degree = spec.degree.unwrap_or(0);
    let rep = match spec.kind {
        RepKind::Zero => SnRep::zero(field, degree),
        RepKind::Trivial => SnRep::trivial(field, degree),
        RepKind::Sign => SnRep::sign(field, degree),
        RepKind::Natural => SnRep::natural(field, degree),
        RepKind::Regular => SnRep::regular(field, degree),
        RepKind::Sum => {
            let mut acc: Option<SnRep<F>> = None;
            for part in &spec.parts {
                let r = build_rep(job, field, part, cache)?;
                acc = Some(match acc {
                    None => r,
                    Some(a) => a.direct_sum(&r)?,
                });
            }
            acc.ok_or_else(|| Error::Parse(format!("rep '{name}' has no parts")))?
        }
        RepKind::Custom => {
            let gens = spec.gens.iter().map(|g| parse_matrix(field, g)).collect::<Result<Vec<_>, _>>()?;
            SnRep::new(field, degree, spec.dim.unwrap_or(0), gens)?
        }
    };
    cache.insert(name.to_string(), rep.clone());
    Ok(rep)
}

pub fn build_module<F: Field>(job: &JobSpec, field: &F, name: &str, built: &mut Built<F>) -> Result<FIModule<F>, Error> {
    if let Some(m) = built.modules.get(name) {
        return Ok(m.clone());
    }
    let spec = job.module(name).ok_or_else(|| Error::Parse(format!("unknown module '{name}'")))?;
    let window = job.window;
    let missing = |what: &str| Error::Parse(format!("module '{name}' is missing '{what}'"));
    let module = match spec.op {
        ModuleOp::Constant => fi_constant(field, window)?,
        ModuleOp::Induced => {
            let v = build_rep(job, field, spec.rep.as_deref().ok_or_else(|| missing("rep"))?, &mut built.reps)?;
            fi_induced(&v, window)?
        }
        ModuleOp::Torsion => {
            let v = build_rep(job, field, spec.rep.as_deref().ok_or_else(|| missing("rep"))?, &mut built.reps)?;
            fi_torsion_concentrated(&v, window)?
        }
        ModuleOp::Sum => {
            let mut acc: Option<FIModule<F>> = None;
            for part in &spec.parts {
                let m = build_module(job, field, part, built)?;
                acc = Some(match acc {
                    None => m,
                    Some(a) => a.direct_sum(&m)?,
                });
            }
            acc.ok_or_else(|| missing("parts"))?
        }
        ModuleOp::Shift => {
            let m = build_module(job, field, spec.of.as_deref().ok_or_else(|| missing("of"))?, built)?;
            fi_shift(&m, spec.by.ok_or_else(|| missing("by"))?)?
        }
        ModuleOp::Truncate => {
            let m = build_module(job, field, spec.of.as_deref().ok_or_else(|| missing("of"))?, built)?;
            fi_truncate(&m, spec.at.ok_or_else(|| missing("at"))?)?.0
        }
        ModuleOp::Kernel | ModuleOp::Cokernel | ModuleOp::Image => {
            let v = build_rep(job, field, spec.source.as_deref().ok_or_else(|| missing("source"))?, &mut built.reps)?;
            let target = build_module(job, field, spec.target.as_deref().ok_or_else(|| missing("target"))?, built)?;
            let f0 = parse_matrix(field, spec.f0.as_ref().ok_or_else(|| missing("f0"))?)?;
            let f = induced_morphism(&v, &target, &f0)?;
            match spec.op {
                ModuleOp::Kernel => kernel(&f)?.0,
                ModuleOp::Cokernel => cokernel(&f)?.0,
                _ => image(&f)?.0,
            }
        }
    };
    built.modules.insert(name.to_string(), module.clone());
    Ok(module)
}

/// Every module of the job.
pub fn build_all<F: Field>(job: &JobSpec, field: &F) -> Result<Built<F>, Error> {
    let mut built = Built { reps: BTreeMap::new(), modules: BTreeMap::new() };
    for m in &job.modules {
        build_module(job, field, &m.name, &mut built)?;
    }
    Ok(built)
}

//! The acceptance corpus: ten criteria, each a batch of exact checks with a
//! deterministic JSON summary.

use std::fmt::Write as _;

use fihom_core::complex::FIComplex;
use fihom_core::fimod::{
    cokernel, fi_constant, fi_induced, fi_torsion_concentrated, fi_truncate, generation_degrees, image, induced_morphism,
    kernel, FIMorphism,
};
use fihom_core::algebra::{act, GroupAlgebraElement};
use fihom_core::ideal::{block_embed, good_ideal, nu, verify_good_ideal, two_sided_ideal_span, GoodIdeal, NuValue};
use fihom_core::koszul::{koszul_strand, tor_piece, tor_table};
use fihom_core::linalg::Subquotient;
use fihom_core::rep::{binomial, equivariant_hom_basis, external_tensor, induce_young};
use fihom_core::verify::{
    nu_certificates_complex, nu_certificates_module, nu_lower_bound_certificates, verify_main_theorem, NuPrediction,
    TheoremReport, Verdict, VerifyOptions,
};
use fihom_core::{Error, FIModule, Field, Matrix, Permutation, PrimeField, Rationals, SnRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{nu_json, opt_deg, opt_usize, verdict_str};

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub details: Value,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Criterion { id, title, checks: 0, failures: Vec::new(), notes: Vec::new(), details: json!(null) }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn error(&mut self, context: &str, e: Error) {
        self.checks += 1;
        self.failures.push(format!("{context}: {e}"));
    }

    /// One line: `PASS  3  good ideals (24 checks)`.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{}  {:>2}  {} ({} checks)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks
        );
        if let Some(f) = self.failures.first() {
            let _ = write!(s, "; first failure: {f}");
            if self.failures.len() > 1 {
                let _ = write!(s, " (+{} more)", self.failures.len() - 1);
            }
        }
        s
    }

    pub fn json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed(),
            "checks": self.checks,
            "failures": self.failures,
            "notes": self.notes,
            "details": self.details,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub criteria: Vec<Criterion>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }

    pub fn json(&self) -> Value {
        json!({
            "tool": "fihomlab",
            "version": env!("CARGO_PKG_VERSION"),
            "passed": self.passed(),
            "criteria": self.criteria.iter().map(Criterion::json).collect::<Vec<_>>(),
        })
    }

    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json()).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Criteria 1 through 9. Criterion 10 needs two runs; see
/// [`determinism_criterion`].
pub fn run_suite() -> SuiteReport {
    let theorem = theorem_corpus();
    SuiteReport {
        criteria: vec![
            koszul_exactness(),
            torsion_tor(),
            good_ideals(),
            nu_behavior(),
            annihilation_reduction(),
            theorem.criterion,
            stable_formula(&theorem.outcomes),
            nu_certificates(),
            tor0_oracle(&theorem.outcomes),
        ],
    }
}

/// Criterion 10: a second run of the suite must reproduce `first` byte for
/// byte.
pub fn determinism_criterion(first: &str) -> Criterion {
    let second = run_suite().json_string();
    let mut c = Criterion::new(10, "determinism: two suite runs give byte-identical JSON");
    c.check(first == second, || {
        let line = first.lines().zip(second.lines()).position(|(a, b)| a != b).map_or(0, |i| i + 1);
        format!("reports differ (first difference at line {line})")
    });
    c.details = json!({"bytes": first.len(), "sha256": crate::run::sha256_hex(first.as_bytes())});
    c
}

fn f5() -> PrimeField {
    PrimeField::new(5).expect("5 is prime")
}

fn f7() -> PrimeField {
    PrimeField::new(7).expect("7 is prime")
}

fn koszul_exactness() -> Criterion {
    let mut c = Criterion::new(1, "Koszul strands of A are exact in positive homological degree");
    let mut details = Vec::new();
    fn run<F: Field>(c: &mut Criterion, field: &F, details: &mut Vec<Value>) {
        let a = match fi_constant(field, 7) {
            Ok(a) => a,
            Err(e) => return c.error("A", e),
        };
        for n in 0..=7 {
            match koszul_strand(&a, n) {
                Ok(s) => {
                    let h = s.homology_dims();
                    let expected: Vec<usize> = (0..h.len()).map(|i| usize::from(i == 0 && n == 0)).collect();
                    c.check(h == expected, || format!("{} n = {n}: homology {h:?}", field.name()));
                    details.push(json!({"field": field.name(), "n": n, "homology": h}));
                }
                Err(e) => c.error(&format!("{} n = {n}", field.name()), e),
            }
        }
    }
    run(&mut c, &Rationals, &mut details);
    run(&mut c, &f5(), &mut details);
    c.details = json!(details);
    c
}

/// Conjugacy class representatives of `S_n`, one per cycle type.
fn class_representatives(n: usize) -> Vec<Permutation> {
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    partitions(n, n)
        .into_iter()
        .map(|parts| {
            let mut images = vec![0; n];
            let mut start = 0;
            for len in parts {
                for k in 0..len {
                    images[start + k] = start + (k + 1) % len;
                }
                start += len;
            }
            Permutation::from_images(images).expect("cycle images form a permutation")
        })
        .collect()
}

fn trace<F: Field>(m: &Matrix<F>) -> F::Elem {
    let f = m.field();
    (0..m.rows()).fold(f.zero(), |acc, i| f.add(&acc, m.get(i, i)))
}

/// Character of `Ind_{S_d × S_p}^{S_{d+p}} (V ⊠ sgn_p)` at `g` by the
/// induced-character formula summed over the whole group.
fn induced_sign_character<F: Field>(v: &SnRep<F>, p: usize, g: &Permutation, all: &[Permutation]) -> Result<F::Elem, Error> {
    let f = v.field();
    let d = v.degree();
    let mut sum = f.zero();
    for x in all {
        let h = x.compose(g).compose(&x.inverse());
        if (0..d).any(|i| h.apply(i) >= d) {
            continue;
        }
        let left = Permutation::from_images((0..d).map(|i| h.apply(i)).collect())?;
        let right = Permutation::from_images((d..d + p).map(|i| h.apply(i) - d).collect())?;
        let chi = f.mul(&trace(&v.action(&left)?), &f.from_i64(right.sign()));
        sum = f.add(&sum, &chi);
    }
    let order: i64 = (1..=d as i64).product::<i64>() * (1..=p as i64).product::<i64>();
    f.div(&sum, &f.from_i64(order))
}

fn torsion_tor() -> Criterion {
    let mut c = Criterion::new(2, "Tor of torsion modules is the induced sign representation");
    let mut details = Vec::new();
    fn run<F: Field>(c: &mut Criterion, field: &F, characters: bool, details: &mut Vec<Value>) {
        for d in 0..=2 {
            let reps = [("trivial", SnRep::trivial(field, d)), ("sign", SnRep::sign(field, d)), ("regular", SnRep::regular(field, d))];
            for (name, v) in reps {
                let label = format!("{} T({name}_{d})", field.name());
                let window = d + 4;
                let t = match fi_torsion_concentrated(&v, window) {
                    Ok(t) => t,
                    Err(e) => return c.error(&label, e),
                };
                let table = match tor_table(&t, 4) {
                    Ok(x) => x,
                    Err(e) => return c.error(&label, e),
                };
                let mut rows = Vec::new();
                for p in 0..=4 {
                    for n in 0..=window {
                        let expected = if n == d + p { binomial(d + p, d) * v.dim() } else { 0 };
                        let cell = table.cell(p, n);
                        c.check(cell.map_or(n < p && expected == 0, |x| x.certified && x.dim == expected), || {
                            format!("{label}: Tor_{p} in degree {n} is {cell:?}, expected {expected}")
                        });
                    }
                    rows.push(table.row(p));
                    if characters {
                        let all = Permutation::all(d + p);
                        let piece = match tor_piece(&t, p, d + p) {
                            Ok(x) => x,
                            Err(e) => return c.error(&label, e),
                        };
                        for g in class_representatives(d + p) {
                            let got = piece.action(&g).map(|m| trace(&m));
                            let want = induced_sign_character(&v, p, &g, &all);
                            match (got, want) {
                                (Ok(a), Ok(b)) => c.check(a == b, || {
                                    format!("{label}: character of Tor_{p} at {:?} is {}, expected {}", g.images(), field.format_elem(&a), field.format_elem(&b))
                                }),
                                (Err(e), _) | (_, Err(e)) => c.error(&label, e),
                            }
                        }
                    }
                }
                details.push(json!({"module": label, "rows": rows}));
            }
        }
    }
    run(&mut c, &Rationals, true, &mut details);
    run(&mut c, &f5(), false, &mut details);
    c.details = json!(details);
    c
}

fn good_ideals() -> Criterion {
    let mut c = Criterion::new(3, "good ideals satisfy their axioms and element identities");
    let mut details = Vec::new();
    fn run<F: Field>(c: &mut Criterion, field: &F, p: usize, details: &mut Vec<Value>) {
        let label = format!("p = {p} over {}", field.name());
        let gi = match good_ideal(p, field) {
            Ok(g) => g,
            Err(e) => return c.error(&label, e),
        };
        match verify_good_ideal(&gi) {
            Ok(r) => {
                c.check(r.passed(), || format!("{label}: axiom failed"));
                details.push(json!({"case": label, "quotient_dim": r.quotient_dim}));
            }
            Err(e) => c.error(&label, e),
        }
        let g = gi.generator();
        if p == 2 {
            let n = GroupAlgebraElement::norm(field, 2);
            c.check(n.mul(&n).ok() == Some(n.scale(&field.from_i64(2))), || format!("{label}: N^2 != 2N"));
        } else {
            c.check(g.mul(g).ok().as_ref() == Some(g), || format!("{label}: tau^2 != tau"));
            match two_sided_ideal_span(g) {
                Ok(span) => c.check(span.rows() - span.cols() == 2, || {
                    format!("{label}: dim k[S_3]/I = {}", span.rows() - span.cols())
                }),
                Err(e) => c.error(&label, e),
            }
        }
    }
    fn rejected<F: Field>(c: &mut Criterion, field: &F, p: usize) {
        let r = good_ideal(p, field);
        c.check(matches!(r, Err(Error::NotInvertible { .. })), || {
            format!("p = {p} over {} should be rejected", field.name())
        });
    }
    let f2 = PrimeField::new(2).expect("prime");
    let f3 = PrimeField::new(3).expect("prime");
    for p in [2, 3] {
        run(&mut c, &Rationals, p, &mut details);
        run(&mut c, &f5(), p, &mut details);
        run(&mut c, &f7(), p, &mut details);
    }
    run(&mut c, &f2, 3, &mut details);
    run(&mut c, &f3, 2, &mut details);
    rejected(&mut c, &f2, 2);
    rejected(&mut c, &f3, 3);
    c.details = json!(details);
    c
}

/// Smallest subrepresentation containing `v`.
pub fn cyclic_span<F: Field>(rep: &SnRep<F>, v: &[F::Elem]) -> Result<Matrix<F>, Error> {
    let f = rep.field();
    let mut basis = Matrix::from_columns(f, rep.dim(), &[v.to_vec()])?.column_space_basis();
    loop {
        let mut stacked = basis.clone();
        for g in rep.gens() {
            stacked = stacked.hstack(&g.mul(&basis)?)?;
        }
        let next = stacked.column_space_basis();
        if next.cols() == basis.cols() {
            return Ok(basis);
        }
        basis = next;
    }
}

/// The subrepresentation on the column span of `basis` and the quotient by
/// it.
pub fn split_rep<F: Field>(rep: &SnRep<F>, basis: &Matrix<F>) -> Result<(SnRep<F>, SnRep<F>), Error> {
    let f = rep.field();
    let none = Matrix::zero(f, rep.dim(), 0);
    let sub = Subquotient::new(basis, &none)?;
    let quo = Subquotient::new(&Matrix::identity(f, rep.dim()), basis)?;
    let sub_gens = rep.gens().iter().map(|g| sub.induced(g)).collect::<Result<Vec<_>, _>>()?;
    let quo_gens = rep.gens().iter().map(|g| quo.induced(g)).collect::<Result<Vec<_>, _>>()?;
    Ok((
        SnRep::new(f, rep.degree(), sub.dim(), sub_gens)?,
        SnRep::new(f, rep.degree(), quo.dim(), quo_gens)?,
    ))
}

fn random_vector<F: Field>(field: &F, dim: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let mut v: Vec<F::Elem> = (0..dim)
        .map(|_| if rng.gen_bool(0.4) { field.from_i64(rng.gen_range(-2..=2)) } else { field.zero() })
        .collect();
    if dim > 0 && v.iter().all(|x| field.is_zero(x)) {
        let k = rng.gen_range(0..dim);
        v[k] = field.one();
    }
    v
}

/// A direct sum of one to three standard representations of `S_n`,
/// sometimes replaced by a cyclic subrepresentation or its quotient.
pub fn random_rep<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng) -> Result<SnRep<F>, Error> {
    let parts = rng.gen_range(1..=3);
    let mut acc: Option<SnRep<F>> = None;
    for _ in 0..parts {
        let kind = rng.gen_range(0..if n <= 3 { 4 } else { 3 });
        let r = match kind {
            0 => SnRep::trivial(field, n),
            1 => SnRep::sign(field, n),
            2 => SnRep::natural(field, n),
            _ => SnRep::regular(field, n),
        };
        acc = Some(match acc {
            None => r,
            Some(a) => a.direct_sum(&r)?,
        });
    }
    let rep = acc.expect("at least one part");
    match rng.gen_range(0..3) {
        0 => Ok(rep),
        k => {
            let w = cyclic_span(&rep, &random_vector(field, rep.dim(), rng))?;
            let (sub, quo) = split_rep(&rep, &w)?;
            Ok(if k == 1 || quo.dim() == 0 { sub } else { quo })
        }
    }
}

fn nu_behavior() -> Criterion {
    let mut c = Criterion::new(4, "nu on sign, trivial and induced sign modules; min rule on extensions");
    let mut details = Vec::new();
    fn run<F: Field>(c: &mut Criterion, field: &F, seed: u64, details: &mut Vec<Value>) {
        let label = field.name();
        let p = if field.characteristic() == 2 { 3 } else { 2 };
        let gi = match good_ideal(p, field) {
            Ok(g) => g,
            Err(e) => return c.error(&label, e),
        };
        let mut nus = Vec::new();
        for n in 0..=7 {
            let s = nu(&SnRep::sign(field, n), &gi);
            c.check(s == Ok(NuValue::Finite(n)), || format!("{label}: nu(sgn_{n}) = {s:?}"));
            let t = nu(&SnRep::trivial(field, n), &gi);
            // For p = 3 the generator has coefficient sum 0, so it kills
            // every trivial block and nu(triv_n) = n.
            let want = if p == 2 { n - n / p } else { n };
            c.check(t == Ok(NuValue::Finite(want)), || format!("{label}: nu(triv_{n}) = {t:?}, expected {want}"));
            nus.push(json!({"n": n, "sign": s.map(nu_json).unwrap_or(json!(null)), "trivial": t.map(nu_json).unwrap_or(json!(null))}));
        }
        let mut induced = Vec::new();
        for d in 0..=2 {
            let ms: Vec<SnRep<F>> = match d {
                0 => vec![SnRep::trivial(field, 0)],
                1 => vec![SnRep::trivial(field, 1)],
                _ => vec![SnRep::trivial(field, 2), SnRep::sign(field, 2), SnRep::regular(field, 2)],
            };
            for k in 0..=7 - d {
                if (p - 1) * d > k {
                    continue;
                }
                for m in &ms {
                    let v = external_tensor(m, &SnRep::sign(field, k)).and_then(|y| induce_young(&y)).and_then(|r| nu(&r, &gi));
                    c.check(v == Ok(NuValue::Finite(k)), || format!("{label}: nu(Ind(M_{d} x sgn_{k})) = {v:?}"));
                    induced.push(json!({"d": d, "k": k, "dim": m.dim(), "nu": v.map(nu_json).unwrap_or(json!(null))}));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ses = 0;
        let mut proper = 0;
        while ses < 50 {
            let n = rng.gen_range(2..=5);
            let outcome = random_rep(field, n, &mut rng).and_then(|v| {
                let w = cyclic_span(&v, &random_vector(field, v.dim(), &mut rng))?;
                let (sub, quo) = split_rep(&v, &w)?;
                Ok((nu(&sub, &gi)?, nu(&v, &gi)?, nu(&quo, &gi)?, sub.dim() > 0 && quo.dim() > 0))
            });
            match outcome {
                Ok((a, b, q, prop)) => {
                    c.check(b == a.min(q), || format!("{label}: min rule fails on S_{n}: {a} / {b} / {q}"));
                    proper += usize::from(prop);
                }
                Err(e) => c.error(&label, e),
            }
            ses += 1;
        }
        details.push(json!({"field": label, "p": p, "small": nus, "induced": induced, "extensions": ses, "proper_extensions": proper}));
    }
    run(&mut c, &Rationals, 41, &mut details);
    run(&mut c, &f5(), 42, &mut details);
    run(&mut c, &f7(), 43, &mut details);
    run(&mut c, &PrimeField::new(2).expect("prime"), 44, &mut details);
    run(&mut c, &PrimeField::new(3).expect("prime"), 45, &mut details);
    c.notes.push("over F2 the block size is 3 and nu(triv_n) = n; the floor formula is checked for p = 2".into());
    c.details = json!(details);
    c
}

fn annihilation_reduction() -> Criterion {
    let mut c = Criterion::new(5, "single-operator annihilation test agrees with the two-sided ideal");
    let mut details = Vec::new();
    fn run<F: Field>(c: &mut Criterion, field: &F, count: usize, seed: u64, details: &mut Vec<Value>) {
        let label = field.name();
        let p = if field.characteristic() == 2 { 3 } else { 2 };
        let gi = match good_ideal(p, field) {
            Ok(g) => g,
            Err(e) => return c.error(&label, e),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let n = rng.gen_range(2..=4);
            let result = random_rep(field, n, &mut rng).and_then(|rep| brute_force_compare(&gi, &rep));
            match result {
                Ok((dim, agree, nu_fast, nu_brute)) => {
                    c.check(agree, || format!("{label}: operator and ideal tests disagree on a rep of S_{n}"));
                    c.check(nu_fast == nu_brute, || format!("{label}: nu {nu_fast} vs brute force {nu_brute}"));
                    details.push(json!({"field": label, "n": n, "dim": dim, "nu": nu_json(nu_fast)}));
                }
                Err(e) => c.error(&label, e),
            }
        }
    }
    run(&mut c, &Rationals, 6, 51, &mut details);
    run(&mut c, &f5(), 6, 52, &mut details);
    run(&mut c, &PrimeField::new(2).expect("prime"), 4, 53, &mut details);
    run(&mut c, &PrimeField::new(3).expect("prime"), 4, 54, &mut details);
    c.details = json!(details);
    c
}

/// For every `r`, whether `g^{⊠r}` acting as zero agrees with every
/// `σ g^{⊠r} ρ` acting as zero; also ν from the brute-force side.
fn brute_force_compare<F: Field>(gi: &GoodIdeal<F>, rep: &SnRep<F>) -> Result<(usize, bool, NuValue, NuValue), Error> {
    let n = rep.degree();
    let all = Permutation::all(n);
    let actions = all.iter().map(|s| rep.action(s)).collect::<Result<Vec<_>, _>>()?;
    let mut agree = true;
    let mut largest = None;
    for r in 0..=n / gi.block_size() + 1 {
        let x = act(&block_embed(gi, r, n)?, rep)?;
        let fast = x.is_zero();
        let mut brute = true;
        'outer: for a in &actions {
            let ax = a.mul(&x)?;
            for b in &actions {
                if !ax.mul(b)?.is_zero() {
                    brute = false;
                    break 'outer;
                }
            }
        }
        agree &= fast == brute;
        if !brute {
            largest = Some(r);
        }
    }
    let nu_brute = match largest {
        Some(r) if rep.dim() > 0 => NuValue::Finite(n - r),
        _ => NuValue::Infinite,
    };
    Ok((rep.dim(), agree, nu(rep, gi)?, nu_brute))
}

/// Field-independent summary of one suite module.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub label: String,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub t0: Option<usize>,
    pub h: Vec<Option<usize>>,
    pub max_shifted: Option<i64>,
    pub stable: Vec<(usize, Option<usize>)>,
    pub stabilization: Option<usize>,
    /// Certified `(n, Tor_0 from Koszul, Tor_0 from the definition)`.
    pub tor0: Vec<(usize, usize, usize)>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn json(&self) -> Value {
        json!({
            "module": self.label,
            "dims": self.dims,
            "verdict": verdict_str(self.verdict),
            "reg": opt_deg(self.lhs),
            "rhs": opt_deg(self.rhs),
            "t0": opt_usize(self.t0),
            "h": self.h.iter().map(|&x| opt_usize(x)).collect::<Vec<_>>(),
            "max_shifted": opt_deg(self.max_shifted),
            "stable": self.stable.iter().map(|&(n, t)| json!([n, opt_usize(t)])).collect::<Vec<_>>(),
            "stabilization": self.stabilization,
        })
    }
}

fn evaluate<F: Field>(label: String, m: &FIModule<F>) -> Result<(Outcome, TheoremReport), Error> {
    let p = if m.field().characteristic() == 2 { 3 } else { 2 };
    let gi = good_ideal(p, m.field())?;
    let r = verify_main_theorem(m, Some(&gi), &VerifyOptions::default())?;
    let gens = generation_degrees(m)?;
    let tor0 = (0..=r.tor.valid_through.min(r.tor.window))
        .filter_map(|n| r.tor.cell(0, n).filter(|c| c.certified).map(|c| (n, c.dim, gens[n])))
        .collect();
    let outcome = Outcome {
        label,
        dims: m.dims(),
        verdict: r.verdict,
        lhs: r.lhs,
        rhs: r.rhs,
        t0: r.t0,
        h: (0..r.loccoh.rows.len()).map(|i| r.loccoh.h(i)).collect(),
        max_shifted: r.max_shifted,
        stable: r.stable.clone(),
        stabilization: r.stabilization,
        tor0,
        notes: r.notes.clone(),
    };
    Ok((outcome, r))
}

/// Shift, label and complex.
type LabeledComplex = (i64, &'static str, FIComplex<Rationals>);

struct TheoremCorpus {
    criterion: Criterion,
    outcomes: Vec<Outcome>,
}

fn random_hom<F: Field>(v: &SnRep<F>, w: &SnRep<F>, rng: &mut ChaCha8Rng) -> Result<Option<Matrix<F>>, Error> {
    let f = v.field();
    let basis = equivariant_hom_basis(v, w)?;
    let mut out = Matrix::zero(f, w.dim(), v.dim());
    for b in &basis {
        out = out.add(&b.scale(&f.from_i64(rng.gen_range(-3..=3))))?;
    }
    Ok(if out.is_zero() { None } else { Some(out) })
}

/// Draws of random morphisms `I(V) -> I(W)` over F7; each yields a kernel
/// and a cokernel.
const RANDOM_WINDOW: usize = 8;
const RANDOM_TARGET: usize = 20;
const RANDOM_MAX_DRAWS: usize = 60;

fn theorem_corpus() -> TheoremCorpus {
    let mut c = Criterion::new(6, "reg(M) = max(t0, max(h^i + i)) on the theorem suite");
    let mut outcomes = Vec::new();
    let mut details = Vec::new();

    let mut record = |c: &mut Criterion, res: Result<(Outcome, TheoremReport), Error>, label: &str| -> Option<(Outcome, TheoremReport)> {
        match res {
            Ok((o, r)) => {
                c.check(o.verdict == Verdict::Pass, || format!("{label}: verdict {} {:?}", verdict_str(o.verdict), o.notes));
                c.check(o.lhs == o.rhs && (o.lhs.is_some() || o.dims.iter().all(|&d| d == 0)), || format!("{label}: reg {:?} vs {:?}", o.lhs, o.rhs));
                c.check(o.tor0.iter().all(|&(_, a, b)| a == b), || format!("{label}: Tor_0 mismatch"));
                details.push(o.json());
                outcomes.push(o.clone());
                Some((o, r))
            }
            Err(e) => {
                c.error(label, e);
                None
            }
        }
    };

    // (a) A: regularity 0 comes from t0 alone.
    let q = Rationals;
    match fi_constant(&q, 6) {
        Ok(a) => {
            if let Some((o, _)) = record(&mut c, evaluate("A over Q".into(), &a), "A") {
                c.check(o.lhs == Some(0) && o.t0 == Some(0), || format!("A: reg {:?}", o.lhs));
                c.check(o.h.iter().all(Option::is_none) && o.max_shifted.is_none(), || format!("A: h = {:?}", o.h));
            }
        }
        Err(e) => c.error("A", e),
    }

    // (b) torsion in degree d: reg = d = h^0.
    let f = f5();
    for d in 1..=3 {
        let label = format!("T(regular_{d}) over F5");
        let res = fi_torsion_concentrated(&SnRep::regular(&f, d), 8).and_then(|t| evaluate(label.clone(), &t));
        if let Some((o, _)) = record(&mut c, res, &label) {
            c.check(o.lhs == Some(d as i64) && o.h.first() == Some(&Some(d)), || format!("{label}: reg {:?}, h {:?}", o.lhs, o.h));
        }
    }

    // (c) A_+: reg = 1 = h^1 + 1 and t_n = n + 1 through window - 1.
    let aplus = fi_constant(&q, 6).and_then(|a| {
        let inc = induced_morphism(&SnRep::trivial(&q, 1), &a, &Matrix::identity(&q, 1))?;
        Ok(image(&inc)?.0)
    });
    match aplus {
        Ok(ap) => {
            let label = "A+ over Q";
            if let Some((o, _)) = record(&mut c, evaluate(label.into(), &ap), label) {
                c.check(o.lhs == Some(1) && o.h.get(1) == Some(&Some(0)), || format!("{label}: reg {:?}, h {:?}", o.lhs, o.h));
            }
            match tor_table(&ap, 5) {
                Ok(t) => {
                    for n in 1..=5 {
                        c.check(t.t(n) == Some(n + 1), || format!("{label}: t_{n} = {:?}", t.t(n)));
                    }
                }
                Err(e) => c.error(label, e),
            }
        }
        Err(e) => c.error("A+", e),
    }

    // (d) I(V) ⊕ T: reg = max(deg V, deg T), h^0 = deg T.
    let mixes: [(SnRep<PrimeField>, SnRep<PrimeField>); 3] = [
        (SnRep::natural(&f, 1), SnRep::trivial(&f, 2)),
        (SnRep::trivial(&f, 2), SnRep::sign(&f, 1)),
        (SnRep::trivial(&f, 0), SnRep::regular(&f, 2)),
    ];
    for (v, w) in &mixes {
        let label = format!("I(V_{}) + T(W_{}) over F5", v.degree(), w.degree());
        let res = fi_induced(v, 7)
            .and_then(|i| i.direct_sum(&fi_torsion_concentrated(w, 7)?))
            .and_then(|m| evaluate(label.clone(), &m));
        if let Some((o, _)) = record(&mut c, res, &label) {
            let want = v.degree().max(w.degree()) as i64;
            c.check(o.lhs == Some(want) && o.h.first() == Some(&Some(w.degree())), || {
                format!("{label}: reg {:?} (expected {want}), h {:?}", o.lhs, o.h)
            });
        }
    }

    // (e) kernels and cokernels of random morphisms between induced modules.
    let f = f7();
    let sources = [
        SnRep::natural(&f, 2),
        SnRep::trivial(&f, 2),
        SnRep::regular(&f, 2),
        SnRep::natural(&f, 1),
        SnRep::sign(&f, 2),
        SnRep::trivial(&f, 1),
    ];
    let targets = [SnRep::trivial(&f, 0), SnRep::trivial(&f, 1), SnRep::natural(&f, 1), SnRep::trivial(&f, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut passed = 0;
    let mut skipped = Vec::new();
    let mut draws = 0;
    while passed < RANDOM_TARGET && draws < RANDOM_MAX_DRAWS {
        let v = &sources[rng.gen_range(0..sources.len())];
        let w = &targets[rng.gen_range(0..targets.len())];
        if w.degree() > v.degree() {
            continue;
        }
        draws += 1;
        let label = format!("draw {draws}: I(V_{}, dim {}) -> I(W_{}, dim {})", v.degree(), v.dim(), w.degree(), w.dim());
        let built = fi_induced(w, RANDOM_WINDOW).and_then(|tgt| {
            let Some(f0) = random_hom(v, tgt.piece(v.degree()), &mut rng)? else {
                return Ok(None);
            };
            let mor = induced_morphism(v, &tgt, &f0)?;
            Ok(Some((kernel(&mor)?.0, cokernel(&mor)?.0)))
        });
        let (ker, coker) = match built {
            Ok(Some(pair)) => pair,
            Ok(None) => {
                skipped.push(json!({"draw": label, "reason": "zero map"}));
                continue;
            }
            Err(e) => {
                c.error(&label, e);
                continue;
            }
        };
        let results = [
            evaluate(format!("ker {label}"), &ker),
            evaluate(format!("coker {label}"), &coker),
        ];
        let uncertified = results.iter().any(|r| matches!(r, Ok((o, _)) if o.verdict == Verdict::Uncertified));
        let failed = results.iter().any(|r| matches!(r, Ok((o, _)) if o.verdict == Verdict::Fail) || r.is_err());
        if uncertified && !failed {
            let which: Vec<String> = results
                .iter()
                .filter_map(|r| r.as_ref().ok().filter(|(o, _)| o.verdict == Verdict::Uncertified).map(|(o, _)| o.label.clone()))
                .collect();
            skipped.push(json!({"draw": label, "reason": "local cohomology not certified in the window", "modules": which}));
            continue;
        }
        for (k, r) in results.into_iter().enumerate() {
            let l = format!("{} {label}", if k == 0 { "ker" } else { "coker" });
            record(&mut c, r, &l);
        }
        if !failed {
            passed += 1;
        }
    }
    c.check(passed >= RANDOM_TARGET, || format!("only {passed} random morphisms passed in {draws} draws"));
    c.notes.push(format!(
        "random morphisms over F7, window {RANDOM_WINDOW}: {passed} passed with both kernel and cokernel certified, {} draws skipped",
        skipped.len()
    ));
    c.details = json!({"modules": details, "skipped": skipped});
    TheoremCorpus { criterion: c, outcomes }
}

fn stable_formula(outcomes: &[Outcome]) -> Criterion {
    let mut c = Criterion::new(7, "t_n - n = max(h^i + i) from the stabilization degree on, which is at most 2");
    let mut details = Vec::new();
    for o in outcomes.iter().filter(|o| o.max_shifted.is_some()) {
        let r = o.max_shifted.expect("filtered");
        let Some(s) = o.stabilization else {
            c.check(false, || format!("{}: no stabilization observed", o.label));
            continue;
        };
        c.check(s <= 2, || format!("{}: stabilization degree {s}", o.label));
        c.check(!o.stable.is_empty(), || format!("{}: empty stable range", o.label));
        for &(n, t) in o.stable.iter().filter(|&&(n, _)| n >= s) {
            c.check(t.map(|t| t as i64 - n as i64) == Some(r), || format!("{}: t_{n} = {t:?}, expected {}", o.label, n as i64 + r));
        }
        details.push(json!({"module": o.label, "max_shifted": r, "stabilization": s, "range": o.stable.len()}));
    }
    c.details = json!(details);
    c
}

fn nu_certificates() -> Criterion {
    let mut c = Criterion::new(8, "nu certificates for torsion modules and complexes");
    let mut details = Vec::new();
    fn module_case<F: Field>(c: &mut Criterion, v: &SnRep<F>, window: usize, details: &mut Vec<Value>) {
        let d = v.degree();
        let label = format!("T(dim {} rep of S_{d}) over {}", v.dim(), v.field().name());
        let res = good_ideal(2, v.field()).and_then(|gi| {
            let t = fi_torsion_concentrated(v, window)?;
            nu_certificates_module(&t, &gi)
        });
        match res {
            Ok(certs) => {
                let mut seen = 0;
                for cert in certs.iter().filter(|x| x.n >= d as i64 && x.n <= (window - d) as i64) {
                    seen += 1;
                    c.check(cert.in_range && cert.holds() && cert.degree == cert.n as usize + d, || {
                        format!("{label}: n = {} computed {}", cert.n, cert.computed)
                    });
                }
                c.check(seen == window + 1 - 2 * d, || format!("{label}: {seen} certificates"));
                details.push(json!({"case": label, "certificates": seen}));
            }
            Err(e) => c.error(&label, e),
        }
    }
    let f = f5();
    for d in 0..=3 {
        module_case(&mut c, &SnRep::regular(&f, d), 8, &mut details);
        module_case(&mut c, &SnRep::sign(&f, d), 8, &mut details);
    }
    module_case(&mut c, &SnRep::natural(&Rationals, 2), 6, &mut details);

    let q = Rationals;
    let complexes = (|| -> Result<Vec<LabeledComplex>, Error> {
        let a = fi_constant(&q, 6)?;
        let (k0, _) = fi_truncate(&a, 0)?;
        let (t2, _) = fi_truncate(&a, 2)?;
        let (_, quotient) = fi_truncate(&t2, 1)?;
        Ok(vec![
            (0, "A<=2 -> A<=1", FIComplex::two_term(&quotient, 0)?),
            (1, "k0 -> A<=2 (zero map)", FIComplex::two_term(&FIMorphism::zero(&k0, &t2)?, 0)?),
        ])
    })();
    let gi = good_ideal(2, &q);
    match (complexes, gi) {
        (Ok(cs), Ok(gi)) => {
            for (r, label, cx) in &cs {
                match nu_certificates_complex(cx, &gi, 4) {
                    Ok(certs) => {
                        let in_range: Vec<_> = certs.iter().filter(|x| x.in_range).collect();
                        c.check(!in_range.is_empty(), || format!("{label}: no certificate in range"));
                        for cert in &in_range {
                            c.check(cert.predicted == NuPrediction::Equal((cert.n + r) as usize), || {
                                format!("{label}: predicted {:?}, r should be {r}", cert.predicted)
                            });
                            c.check(cert.holds(), || format!("{label}: n = {} computed {}", cert.n, cert.computed));
                        }
                        details.push(json!({"case": label, "r": r, "certificates": in_range.len()}));
                    }
                    Err(e) => c.error(label, e),
                }
            }
            // Lower bounds on single-term complexes placed at index j.
            let shifted = fi_constant(&q, 6).and_then(|a| fi_truncate(&a, 2)).map(|(t, _)| t);
            match shifted {
                Ok(t) => {
                    for j in 0..=2i64 {
                        let label = format!("A<=2 at index {j}");
                        match nu_lower_bound_certificates(&FIComplex::single(&t, j), &gi, (-j, 4)) {
                            Ok(certs) => {
                                let in_range: Vec<_> = certs.iter().filter(|x| x.in_range).collect();
                                c.check(!in_range.is_empty(), || format!("{label}: no certificate in range"));
                                for cert in &in_range {
                                    c.check(cert.holds(), || format!("{label}: n = {} computed {}", cert.n, cert.computed));
                                }
                                details.push(json!({"case": label, "lower_bounds": in_range.len()}));
                            }
                            Err(e) => c.error(&label, e),
                        }
                    }
                }
                Err(e) => c.error("A<=2", e),
            }
        }
        (Err(e), _) | (_, Err(e)) => c.error("complexes", e),
    }
    c.details = json!(details);
    c
}

fn tor0_oracle(outcomes: &[Outcome]) -> Criterion {
    let mut c = Criterion::new(9, "Koszul row 0 equals the minimal generators on every suite module");
    let mut details = Vec::new();
    for o in outcomes {
        c.check(!o.tor0.is_empty(), || format!("{}: no certified degrees", o.label));
        for &(n, koszul, direct) in &o.tor0 {
            c.check(koszul == direct, || format!("{}: degree {n}: {koszul} vs {direct}", o.label));
        }
        details.push(json!({"module": o.label, "degrees": o.tor0.len(), "row0": o.tor0.iter().map(|x| x.1).collect::<Vec<_>>()}));
    }
    c.details = json!(details);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_representatives_of_s4() {
        let reps = class_representatives(4);
        assert_eq!(reps.len(), 5);
        assert!(reps[4].is_identity());
    }

    #[test]
    fn induced_character_of_trivial_and_sign() {
        let q = Rationals;
        let all = Permutation::all(3);
        let id = Permutation::identity(3);
        // Ind from S_1 x S_2 of triv ⊠ sgn has dimension 3.
        let v = induced_sign_character(&SnRep::trivial(&q, 1), 2, &id, &all).unwrap();
        assert_eq!(v, q.from_i64(3));
    }

    #[test]
    fn cyclic_span_of_natural() {
        let q = Rationals;
        let nat = SnRep::natural(&q, 3);
        let ones = vec![q.one(); 3];
        assert_eq!(cyclic_span(&nat, &ones).unwrap().cols(), 1);
        let e0 = vec![q.one(), q.zero(), q.zero()];
        assert_eq!(cyclic_span(&nat, &e0).unwrap().cols(), 3);
        let diff = vec![q.one(), q.from_i64(-1), q.zero()];
        let w = cyclic_span(&nat, &diff).unwrap();
        let (sub, quo) = split_rep(&nat, &w).unwrap();
        assert_eq!((sub.dim(), quo.dim()), (2, 1));
    }
}

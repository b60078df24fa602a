//! Checking `reg(M) = max(t_0(M), max_i (h^i(M) + i))` and the stable
//! formula `t_n(M) = n + max_i (h^i(M) + i)` on concrete modules, with ν
//! certificates for the top Tor pieces.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{complex_cohomology, FIComplex};
use crate::error::Result;
use crate::field::Field;
use crate::fimod::{maxdeg, top_nonzero, FIModule, MaxDeg};
use crate::ideal::{nu, GoodIdeal, NuValue};
use crate::koszul::{default_i_max, hyper_tor_piece, hyper_tor_rows, tor_piece, tor_table, TorTable};
use crate::loccoh::{level_ses, local_cohomology, LocCohTable, Policy, Termination};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The window does not support a decision.
    Uncertified,
}

/// What a certificate predicts for ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuPrediction {
    Equal(usize),
    AtLeast(usize),
}

impl NuPrediction {
    pub fn holds(&self, v: NuValue) -> bool {
        match (*self, v) {
            (_, NuValue::Infinite) => matches!(self, NuPrediction::AtLeast(_)),
            (NuPrediction::Equal(e), NuValue::Finite(x)) => x == e,
            (NuPrediction::AtLeast(e), NuValue::Finite(x)) => x >= e,
        }
    }
}

/// ν of `Tor_n(X)` in internal degree `degree`, against a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NuCertificate {
    pub n: i64,
    pub degree: usize,
    pub predicted: NuPrediction,
    pub computed: NuValue,
    /// Whether the block-size hypothesis `(p - 1) · maxdeg ≤ index` holds
    /// for every term involved; out-of-range entries are informational.
    pub in_range: bool,
}

impl NuCertificate {
    pub fn holds(&self) -> bool {
        self.predicted.holds(self.computed)
    }
}

/// `ν(M_2) = min(ν(M_1), ν(M_3))` on `0 -> H^ℓ -> X_ℓ -> im -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinRuleCheck {
    pub level: usize,
    pub degree: usize,
    pub sub: NuValue,
    pub middle: NuValue,
    pub quotient: NuValue,
}

impl MinRuleCheck {
    pub fn holds(&self) -> bool {
        self.middle == self.sub.min(self.quotient)
    }
}

/// `Tor_n(M)` against `Tor_n` of the fiber complex of the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BridgeCell {
    pub n: usize,
    pub degree: usize,
    pub module: usize,
    pub complex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub tor: TorTable,
    pub loccoh: LocCohTable,
    /// `reg(M)` from the Tor rows.
    pub lhs: Option<i64>,
    /// `max(t_0, max_i (h^i + i))` from the recursion.
    pub rhs: Option<i64>,
    pub t0: Option<usize>,
    pub max_shifted: Option<i64>,
    /// `(n, t_n)` for `1 <= n <=` the last degree the window certifies.
    pub stable: Vec<(usize, Option<usize>)>,
    /// First `n` from which `t_n - n` equals `max_shifted` through the end
    /// of the stable range.
    pub stabilization: Option<usize>,
    pub bridge: Vec<BridgeCell>,
    pub nu_certificates: Vec<NuCertificate>,
    pub min_rule: Vec<MinRuleCheck>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub policy: Policy,
    /// Tor rows for the regularity; `None` for the default.
    pub tor_rows: Option<usize>,
    /// Rows compared with the fiber complex.
    pub bridge_rows: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { policy: Policy::default(), tor_rows: None, bridge_rows: 2 }
    }
}

fn opt_max(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn verify_main_theorem<F: Field>(
    m: &FIModule<F>,
    gi: Option<&GoodIdeal<F>>,
    opts: &VerifyOptions,
) -> Result<TheoremReport> {
    let rows = match opts.tor_rows {
        Some(r) => r,
        None => default_i_max(m)?,
    };
    let tor = tor_table(m, rows)?;
    let lc = local_cohomology(m, &opts.policy)?;
    let loccoh = lc.table();
    let mut notes = Vec::new();
    let mut fail = false;
    let mut uncertified = false;

    let lhs = tor.regularity().reg;
    let t0 = tor.t(0);
    let max_shifted = loccoh.max_shifted();
    let rhs = opt_max(t0.map(|t| t as i64), max_shifted);
    let certified = loccoh.is_certified();
    if !certified {
        uncertified = true;
        notes.push(format!("local cohomology not certified: {:?}", loccoh.termination));
    }
    if certified && lhs != rhs {
        notes.push(format!("reg from Tor is {lhs:?}, from local cohomology {rhs:?}"));
        fail = true;
    }

    // Stable formula over the degrees where row n can still show n + R.
    let vt = m.valid_through() as i64;
    let last = match max_shifted {
        Some(r) => (vt - r).min(rows as i64),
        None => vt.min(rows as i64),
    };
    let mut stable = Vec::new();
    let mut stabilization = None;
    if !certified {
    } else if last < 1 {
        uncertified = true;
        notes.push("window too small for the stable range".into());
    } else {
        let last = last as usize;
        let matches = |n: usize| tor.t(n).map(|t| t as i64 - n as i64) == max_shifted;
        stable = (1..=last).map(|n| (n, tor.t(n))).collect();
        if matches(last) {
            let mut n0 = last;
            while n0 > 0 && matches(n0 - 1) {
                n0 -= 1;
            }
            stabilization = Some(n0);
        } else {
            fail = true;
            notes.push(format!("t_{last} = {:?} does not match n + {max_shifted:?}", tor.t(last)));
        }
    }

    // Tor of the fiber complex agrees with Tor of M in positive degrees.
    let mut bridge = Vec::new();
    if lc.termination == Termination::SemiInduced {
        let c = lc.fiber_complex()?;
        let n_hi = opts.bridge_rows.min(rows);
        if n_hi >= 1 {
            let ht = hyper_tor_rows(&c, 1, n_hi as i64)?;
            for n in 1..=n_hi {
                for degree in 0..=ht.valid_through.min(tor.valid_through) {
                    let cell = BridgeCell { n, degree, module: tor.dim(n, degree), complex: ht.dim(n as i64, degree) };
                    if cell.module != cell.complex {
                        fail = true;
                        notes.push(format!("bridge mismatch at Tor_{n} degree {degree}"));
                    }
                    bridge.push(cell);
                }
            }
        }
    }

    let mut nu_certificates = Vec::new();
    let mut min_rule = Vec::new();
    if let (Some(gi), Some(r_max), Some(r), true) = (gi, max_shifted, loccoh.argmax_shifted(), !stable.is_empty()) {
        let p = gi.block_size();
        let top_h = (0..loccoh.depth()).filter_map(|i| loccoh.h(i)).max().unwrap_or(0);
        for &(n, _) in &stable {
            let degree = n + r_max as usize;
            let computed = nu(&tor_piece(m, n, degree)?, gi)?;
            nu_certificates.push(NuCertificate {
                n: n as i64,
                degree,
                predicted: NuPrediction::Equal(n + r),
                computed,
                in_range: (p - 1) * top_h <= n,
            });
        }
        for (l, level) in lc.levels.iter().enumerate() {
            let (k, im) = level_ses(level)?;
            let degree = k.valid_through().min(im.valid_through());
            min_rule.push(MinRuleCheck {
                level: l,
                degree,
                sub: nu(k.piece(degree), gi)?,
                middle: nu(level.module.piece(degree), gi)?,
                quotient: nu(im.piece(degree), gi)?,
            });
        }
    }
    for c in nu_certificates.iter().filter(|c| c.in_range && !c.holds()) {
        fail = true;
        notes.push(format!("ν certificate fails at n = {}: {:?} vs {}", c.n, c.predicted, c.computed));
    }
    for c in min_rule.iter().filter(|c| !c.holds()) {
        fail = true;
        notes.push(format!("min rule fails at level {}", c.level));
    }

    let verdict = if fail {
        Verdict::Fail
    } else if uncertified {
        Verdict::Uncertified
    } else {
        Verdict::Pass
    };
    Ok(TheoremReport {
        tor,
        loccoh,
        lhs,
        rhs,
        t0,
        max_shifted,
        stable,
        stabilization,
        bridge,
        nu_certificates,
        min_rule,
        verdict,
        notes,
    })
}

/// Top-degree certificates for a torsion module `X` with `ρ = maxdeg X`:
/// `ν(Tor_n(X)_{n+ρ}) = n` for `n` in the window.
pub fn nu_certificates_module<F: Field>(x: &FIModule<F>, gi: &GoodIdeal<F>) -> Result<Vec<NuCertificate>> {
    let MaxDeg::Finite(rho) = maxdeg(x) else {
        return Ok(Vec::new());
    };
    let p = gi.block_size();
    let mut out = Vec::new();
    for n in 0..=x.valid_through().saturating_sub(rho) {
        let computed = nu(&tor_piece(x, n, n + rho)?, gi)?;
        out.push(NuCertificate {
            n: n as i64,
            degree: n + rho,
            predicted: NuPrediction::Equal(n),
            computed,
            in_range: (p - 1) * rho <= n,
        });
    }
    Ok(out)
}

/// Top degrees of the nonzero terms of a complex.
fn term_tops<F: Field>(c: &FIComplex<F>) -> BTreeMap<i64, usize> {
    c.terms()
        .iter()
        .filter_map(|(&j, t)| top_nonzero(&t.dims()).map(|d| (j, d)))
        .collect()
}

fn complex_in_range(tops: &BTreeMap<i64, usize>, p: usize, n: i64) -> bool {
    tops.iter().all(|(&j, &d)| ((p - 1) * d) as i64 <= n + j)
}

/// For a bounded complex of torsion modules with
/// `ρ = max_i (i + maxdeg H^i)` attained first at `r`:
/// `ν(Tor_n(X)_{n+ρ}) = n + r`.
pub fn nu_certificates_complex<F: Field>(c: &FIComplex<F>, gi: &GoodIdeal<F>, n_max: i64) -> Result<Vec<NuCertificate>> {
    let h = complex_cohomology(c)?;
    let mut best: Option<(i64, i64)> = None;
    for (&i, hi) in &h {
        if let Some(d) = top_nonzero(&hi.dims()) {
            let v = i + d as i64;
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, i));
            }
        }
    }
    let Some((rho, r)) = best else {
        return Ok(Vec::new());
    };
    let tops = term_tops(c);
    let p = gi.block_size();
    let vt = c.valid_through() as i64;
    let mut out = Vec::new();
    for n in 0..=n_max {
        let degree = n + rho;
        if degree < 0 || degree > vt || n + r < 0 {
            continue;
        }
        let computed = nu(&hyper_tor_piece(c, n, degree as usize)?, gi)?;
        out.push(NuCertificate {
            n,
            degree: degree as usize,
            predicted: NuPrediction::Equal((n + r) as usize),
            computed,
            in_range: complex_in_range(&tops, p, n),
        });
    }
    Ok(out)
}

/// With `m` the lowest index of a nonzero term: `ν(Tor_n(X)) >= n + m` in
/// every degree where `Tor_n(X)` is nonzero.
pub fn nu_lower_bound_certificates<F: Field>(
    c: &FIComplex<F>,
    gi: &GoodIdeal<F>,
    n_range: (i64, i64),
) -> Result<Vec<NuCertificate>> {
    let Some(m) = c.lowest_nonzero() else {
        return Ok(Vec::new());
    };
    let tops = term_tops(c);
    let p = gi.block_size();
    let table = hyper_tor_rows(c, n_range.0, n_range.1)?;
    let mut out = Vec::new();
    for n in n_range.0..=n_range.1 {
        if n + m < 0 {
            continue;
        }
        for degree in 0..=table.valid_through {
            if table.dim(n, degree) == 0 {
                continue;
            }
            let computed = nu(&hyper_tor_piece(c, n, degree)?, gi)?;
            out.push(NuCertificate {
                n,
                degree,
                predicted: NuPrediction::AtLeast((n + m) as usize),
                computed,
                in_range: complex_in_range(&tops, p, n),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fimod::{fi_constant, fi_torsion_concentrated, fi_truncate, image, induced_morphism, FIMorphism};
    use crate::ideal::good_ideal;
    use crate::linalg::Matrix;
    use crate::rep::SnRep;

    #[test]
    fn constant_module() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let a = fi_constant(&q, 5).unwrap();
        let r = verify_main_theorem(&a, Some(&gi), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.notes);
        assert_eq!(r.lhs, Some(0));
        assert_eq!(r.max_shifted, None);
        assert_eq!(r.t0, Some(0));
    }

    #[test]
    fn torsion_module() {
        let f = PrimeField::new(5).unwrap();
        let gi = good_ideal(2, &f).unwrap();
        let t = fi_torsion_concentrated(&SnRep::trivial(&f, 2), 7).unwrap();
        let r = verify_main_theorem(&t, Some(&gi), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.notes);
        assert_eq!(r.lhs, Some(2));
        assert_eq!(r.loccoh.h(0), Some(2));
        assert!(r.stable.iter().all(|&(n, t)| t == Some(n + 2)));
        assert!(!r.nu_certificates.is_empty());
    }

    #[test]
    fn augmentation_ideal() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let a = fi_constant(&q, 6).unwrap();
        let f = induced_morphism(&SnRep::trivial(&q, 1), &a, &Matrix::identity(&q, 1)).unwrap();
        let (ap, _) = image(&f).unwrap();
        let r = verify_main_theorem(&ap, Some(&gi), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.notes);
        assert_eq!(r.lhs, Some(1));
        assert_eq!(r.loccoh.h(1), Some(0));
        assert_eq!(r.stabilization, Some(0));
        assert!(!r.bridge.is_empty());
    }

    #[test]
    fn torsion_top_degree_certificates() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let t = fi_torsion_concentrated(&SnRep::regular(&q, 2), 6).unwrap();
        let certs = nu_certificates_module(&t, &gi).unwrap();
        assert!(certs.iter().filter(|c| c.in_range).count() >= 3);
        assert!(certs.iter().filter(|c| c.in_range).all(NuCertificate::holds));
    }

    #[test]
    fn complex_certificates() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let a = fi_constant(&q, 6).unwrap();
        // k_0 -> A^{≤2} with zero differential: ρ = 3 attained at r = 1.
        let (k0, _) = fi_truncate(&a, 0).unwrap();
        let (t2, _) = fi_truncate(&a, 2).unwrap();
        let c = FIComplex::two_term(&FIMorphism::zero(&k0, &t2).unwrap(), 0).unwrap();
        let certs = nu_certificates_complex(&c, &gi, 3).unwrap();
        assert!(certs.iter().any(|c| c.in_range));
        for cert in certs.iter().filter(|c| c.in_range) {
            assert!(cert.holds(), "{cert:?}");
            assert_eq!(cert.predicted, NuPrediction::Equal(cert.n as usize + 1));
        }
        let lb = nu_lower_bound_certificates(&FIComplex::single(&t2, 1), &gi, (0, 4)).unwrap();
        assert!(lb.iter().filter(|c| c.in_range).all(NuCertificate::holds));
    }
}

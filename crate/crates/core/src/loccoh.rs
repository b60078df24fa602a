//! Local cohomology through shifts.
//!
//! If `Σ_b X` is semi-induced then `K = ker(X -> Σ_b X)` is the torsion
//! submodule of `X`, and with `C = coker(X -> Σ_b X)` we get
//! `H^i_m(X) = H^{i-1}_m(C)` for `i >= 1`. Iterating until the cokernel is
//! semi-induced produces every local cohomology group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::complex::FIComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fimod::{
    cokernel, fi_shift, image, kernel, max_generator_degree, maxdeg, shift_map, torsion_submodule, FIModule,
    FIMorphism, MaxDeg,
};
use crate::koszul::tor_table;

/// Knobs for the window-relative tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Policy {
    /// Tor rows `1..=i_max` must vanish for a module to count as
    /// semi-induced.
    pub i_max: usize,
    /// Trusted degrees required above the top generator before vanishing
    /// Tor is believed.
    pub margin: usize,
    /// Maximum number of recursion levels.
    pub max_depth: usize,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { i_max: 2, margin: 1, max_depth: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiInduced {
    Yes,
    No,
    Uncertified,
}

/// Window-relative semi-inducedness: `Tor_i(M)_n = 0` for `1 <= i <= i_max`
/// and all trusted `n`.
pub fn is_semi_induced<F: Field>(m: &FIModule<F>, policy: &Policy) -> Result<SemiInduced> {
    let table = tor_table(m, policy.i_max)?;
    if table.has_higher_tor() {
        return Ok(SemiInduced::No);
    }
    let trusted = m.restrict_window(m.valid_through());
    match max_generator_degree(&trusted)? {
        None => Ok(SemiInduced::Yes),
        Some(g) if m.valid_through() >= g + policy.margin => Ok(SemiInduced::Yes),
        Some(_) => Ok(SemiInduced::Uncertified),
    }
}

/// Least `b` with `Σ_b M` semi-induced.
pub fn min_acyclic_shift<F: Field>(m: &FIModule<F>, policy: &Policy) -> Result<usize> {
    for b in 0..=m.valid_through() {
        match is_semi_induced(&fi_shift(m, b)?, policy)? {
            SemiInduced::Yes => return Ok(b),
            SemiInduced::No => {}
            SemiInduced::Uncertified => {
                return Err(Error::WindowExhausted { needed: b, available: m.valid_through() })
            }
        }
    }
    Err(Error::WindowExhausted { needed: m.valid_through() + 1, available: m.valid_through() })
}

/// One step of the recursion applied to `X_ℓ`.
#[derive(Clone, Debug)]
pub struct Level<F: Field> {
    pub module: FIModule<F>,
    pub shift: usize,
    /// `X_ℓ -> Σ_b X_ℓ`.
    pub shift_map: FIMorphism<F>,
    /// `H^ℓ_m(M) = ker` of the shift map.
    pub cohomology: FIModule<F>,
    /// `Σ_b X_ℓ -> X_{ℓ+1}`.
    pub projection: FIMorphism<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    /// The last module was semi-induced: every further row vanishes.
    SemiInduced,
    /// The shift search ran out of window at this level.
    WindowExhausted { level: usize },
    /// `max_depth` levels were used without reaching a semi-induced module.
    DepthExceeded,
}

#[derive(Clone, Debug)]
pub struct LocalCohomology<F: Field> {
    pub levels: Vec<Level<F>>,
    /// The semi-induced module the recursion stopped at, if it did.
    pub last: Option<FIModule<F>>,
    pub termination: Termination,
}

pub fn local_cohomology<F: Field>(m: &FIModule<F>, policy: &Policy) -> Result<LocalCohomology<F>> {
    let mut levels = Vec::new();
    let mut x = m.clone();
    for level in 0..policy.max_depth {
        let b = match min_acyclic_shift(&x, policy) {
            Ok(b) => b,
            Err(Error::WindowExhausted { .. }) => {
                return Ok(LocalCohomology { levels, last: None, termination: Termination::WindowExhausted { level } })
            }
            Err(e) => return Err(e),
        };
        if b == 0 {
            return Ok(LocalCohomology { levels, last: Some(x), termination: Termination::SemiInduced });
        }
        let sm = shift_map(&x, b)?;
        let (h, _) = kernel(&sm)?;
        if level == 0 {
            check_torsion(m, &h)?;
        }
        let (next, projection) = cokernel(&sm)?;
        levels.push(Level { module: x, shift: b, shift_map: sm, cohomology: h, projection });
        x = next;
    }
    Ok(LocalCohomology { levels, last: None, termination: Termination::DepthExceeded })
}

/// `H^0` from the recursion must agree with the torsion submodule wherever
/// both are trusted.
fn check_torsion<F: Field>(m: &FIModule<F>, h0: &FIModule<F>) -> Result<()> {
    let tors = torsion_submodule(m)?;
    for n in 0..=h0.valid_through().min(tors.module.valid_through()) {
        if h0.piece(n).dim() != tors.module.piece(n).dim() {
            return Err(Error::Consistency(format!(
                "H^0 has dimension {} in degree {n} but the torsion submodule has {}",
                h0.piece(n).dim(),
                tors.module.piece(n).dim()
            )));
        }
    }
    Ok(())
}

/// One row of a local cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocCohRow {
    pub dims: Vec<usize>,
    pub valid_through: usize,
    pub maxdeg: MaxDeg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub shift: usize,
    pub window: usize,
    pub valid_through: usize,
    pub module_dims: Vec<usize>,
}

/// Dimensions of `H^i_m(M)_n` with the recursion trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocCohTable {
    pub rows: Vec<LocCohRow>,
    pub trace: Vec<TraceStep>,
    pub termination: Termination,
}

impl<F: Field> LocalCohomology<F> {
    pub fn table(&self) -> LocCohTable {
        let rows = self
            .levels
            .iter()
            .map(|l| LocCohRow {
                dims: l.cohomology.dims(),
                valid_through: l.cohomology.valid_through(),
                maxdeg: maxdeg(&l.cohomology),
            })
            .collect();
        let trace = self
            .levels
            .iter()
            .map(|l| TraceStep {
                shift: l.shift,
                window: l.module.window(),
                valid_through: l.module.valid_through(),
                module_dims: l.module.dims(),
            })
            .chain(self.last.iter().map(|x| TraceStep {
                shift: 0,
                window: x.window(),
                valid_through: x.valid_through(),
                module_dims: x.dims(),
            }))
            .collect();
        LocCohTable { rows, trace, termination: self.termination }
    }

    /// The fiber of `M -> F` with `F = [Σ_{b_0} X_0 -> Σ_{b_1} X_1 -> ..]`
    /// ending in the final semi-induced module: `M` sits at index 0 and
    /// `F^ℓ` at index `ℓ + 1`. Its cohomology is `H^•_m(M)`.
    pub fn fiber_complex(&self) -> Result<FIComplex<F>> {
        if self.termination != Termination::SemiInduced {
            return Err(Error::Consistency("the recursion did not terminate".into()));
        }
        let Some(first) = self.levels.first() else {
            let last = self.last.as_ref().expect("terminated");
            return Ok(FIComplex::single(last, 0));
        };
        let field = first.module.field();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        terms.insert(0, first.module.clone());
        diffs.insert(0, first.shift_map.clone());
        for (l, level) in self.levels.iter().enumerate() {
            let idx = l as i64 + 1;
            terms.insert(idx, level.shift_map.target().clone());
            let d = match self.levels.get(l + 1) {
                Some(next) => level.projection.then(&next.shift_map)?,
                None => level.projection.clone(),
            };
            diffs.insert(idx, d);
        }
        let last = self.last.as_ref().expect("terminated");
        terms.insert(self.levels.len() as i64 + 1, last.clone());
        FIComplex::new(field, terms, diffs)
    }
}

impl LocCohTable {
    /// `h^i`: top degree of `H^i_m`, `None` for -∞ (including every row
    /// past the end of a terminated recursion).
    pub fn h(&self, i: usize) -> Option<usize> {
        match self.rows.get(i).map(|r| r.maxdeg) {
            Some(MaxDeg::Finite(d)) => Some(d),
            Some(MaxDeg::AtLeast(d)) => Some(d),
            _ => None,
        }
    }

    /// Whether every row is a certified finite maxdeg and the recursion
    /// terminated.
    pub fn is_certified(&self) -> bool {
        self.termination == Termination::SemiInduced
            && self.rows.iter().all(|r| matches!(r.maxdeg, MaxDeg::Finite(_) | MaxDeg::NegInf))
    }

    /// `max_i (h^i + i)`, `None` when every row vanishes.
    pub fn max_shifted(&self) -> Option<i64> {
        (0..self.rows.len()).filter_map(|i| self.h(i).map(|h| h as i64 + i as i64)).max()
    }

    /// Least `r` attaining [`LocCohTable::max_shifted`].
    pub fn argmax_shifted(&self) -> Option<usize> {
        let best = self.max_shifted()?;
        (0..self.rows.len()).find(|&i| self.h(i).map(|h| h as i64 + i as i64) == Some(best))
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }
}

/// `0 -> ker -> X -> im -> 0` for the shift map at a level, the short exact
/// sequence whose ν values obey the min rule.
pub fn level_ses<F: Field>(level: &Level<F>) -> Result<(FIModule<F>, FIModule<F>)> {
    let (k, _) = kernel(&level.shift_map)?;
    let (im, _) = image(&level.shift_map)?;
    Ok((k, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fimod::{fi_constant, fi_induced, fi_torsion_concentrated, induced_morphism};
    use crate::koszul::{hyper_tor, tor_table};
    use crate::linalg::Matrix;
    use crate::rep::SnRep;

    fn aplus(n: usize) -> FIModule<Rationals> {
        let q = Rationals;
        let a = fi_constant(&q, n).unwrap();
        let f = induced_morphism(&SnRep::trivial(&q, 1), &a, &Matrix::identity(&q, 1)).unwrap();
        image(&f).unwrap().0
    }

    #[test]
    fn semi_induced_examples() {
        let q = Rationals;
        let p = Policy::default();
        let iv = fi_induced(&SnRep::natural(&q, 2), 5).unwrap();
        assert_eq!(is_semi_induced(&iv, &p).unwrap(), SemiInduced::Yes);
        let t = fi_torsion_concentrated(&SnRep::trivial(&q, 1), 5).unwrap();
        assert_eq!(is_semi_induced(&t, &p).unwrap(), SemiInduced::No);
        assert_eq!(is_semi_induced(&aplus(5), &p).unwrap(), SemiInduced::No);
        let late = fi_induced(&SnRep::trivial(&q, 3), 3).unwrap();
        assert_eq!(is_semi_induced(&late, &p).unwrap(), SemiInduced::Uncertified);
    }

    #[test]
    fn shifts() {
        let q = Rationals;
        let p = Policy::default();
        assert_eq!(min_acyclic_shift(&fi_constant(&q, 4).unwrap(), &p).unwrap(), 0);
        assert_eq!(min_acyclic_shift(&aplus(5), &p).unwrap(), 1);
        let t = fi_torsion_concentrated(&SnRep::regular(&q, 2), 6).unwrap();
        assert_eq!(min_acyclic_shift(&t, &p).unwrap(), 3);
        let t = fi_torsion_concentrated(&SnRep::trivial(&q, 3), 3).unwrap();
        assert!(matches!(min_acyclic_shift(&t, &p), Err(Error::WindowExhausted { .. })));
    }

    #[test]
    fn torsion_module() {
        let f = PrimeField::new(5).unwrap();
        let t = fi_torsion_concentrated(&SnRep::natural(&f, 2), 7).unwrap();
        let lc = local_cohomology(&t, &Policy::default()).unwrap();
        let table = lc.table();
        assert_eq!(table.termination, Termination::SemiInduced);
        assert_eq!(table.depth(), 1);
        assert_eq!(table.h(0), Some(2));
        assert_eq!(table.rows[0].dims[..5], [0, 0, 2, 0, 0]);
        assert!(table.is_certified());
    }

    #[test]
    fn augmentation_ideal() {
        let lc = local_cohomology(&aplus(6), &Policy::default()).unwrap();
        let table = lc.table();
        assert!(table.is_certified());
        assert_eq!(table.h(0), None);
        assert_eq!(table.h(1), Some(0));
        assert_eq!(table.rows[1].dims[0], 1);
        assert_eq!(table.max_shifted(), Some(1));
        assert_eq!(table.argmax_shifted(), Some(1));
    }

    #[test]
    fn semi_induced_has_no_local_cohomology() {
        let q = Rationals;
        let iv = fi_induced(&SnRep::sign(&q, 2), 5).unwrap();
        let table = local_cohomology(&iv, &Policy::default()).unwrap().table();
        assert_eq!(table.depth(), 0);
        assert_eq!(table.max_shifted(), None);
    }

    #[test]
    fn fiber_complex_bridge() {
        let m = aplus(6);
        let lc = local_cohomology(&m, &Policy::default()).unwrap();
        let c = lc.fiber_complex().unwrap();
        let h = crate::complex::complex_cohomology(&c).unwrap();
        assert!(h[&0].is_zero());
        assert_eq!(h[&1].piece(0).dim(), 1);
        let ht = hyper_tor(&c).unwrap();
        let tt = tor_table(&m, 4).unwrap();
        for n in 1..=3 {
            for deg in 0..=ht.valid_through {
                assert_eq!(ht.dim(n, deg), tt.dim(n as usize, deg), "Tor_{n} in degree {deg}");
            }
        }
    }
}

//! Bounded cochain complexes of FI-modules, cohomologically indexed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fimod::{subquotient_module, FIModule, FIMorphism};
use crate::linalg::Matrix;

/// Terms `C^j` for `j` in a bounded range, with `d^j : C^j -> C^{j+1}`.
/// All terms share one window; missing terms are zero and missing
/// differentials are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FIComplex<F: Field> {
    field: F,
    window: usize,
    terms: BTreeMap<i64, FIModule<F>>,
    diffs: BTreeMap<i64, FIMorphism<F>>,
}

impl<F: Field> FIComplex<F> {
    /// Validated constructor: shapes match the terms and `d ∘ d = 0`.
    pub fn new(
        field: &F,
        terms: BTreeMap<i64, FIModule<F>>,
        diffs: BTreeMap<i64, FIMorphism<F>>,
    ) -> Result<Self> {
        let Some((&lo, _)) = terms.first_key_value() else {
            return Err(Error::InvariantViolation("a complex needs at least one term".into()));
        };
        let hi = *terms.last_key_value().map(|(k, _)| k).expect("nonempty");
        let window = terms.values().map(FIModule::window).min().expect("nonempty");
        let mut full = BTreeMap::new();
        for j in lo..=hi {
            let t = match terms.get(&j) {
                Some(t) => t.restrict_window(window),
                None => FIModule::zero(field, window),
            };
            if t.field() != field {
                return Err(Error::FieldMismatch);
            }
            full.insert(j, t);
        }
        let mut out = BTreeMap::new();
        for j in lo..hi {
            let d = match diffs.get(&j) {
                Some(d) => {
                    let d = d.restrict_window(window);
                    if d.source().dims() != full[&j].dims() || d.target().dims() != full[&(j + 1)].dims() {
                        return Err(Error::InvariantViolation(format!("differential {j} does not match its terms")));
                    }
                    FIMorphism::new(&full[&j], &full[&(j + 1)], (0..=window).map(|n| d.map(n).clone()).collect())?
                }
                None => FIMorphism::zero(&full[&j], &full[&(j + 1)])?,
            };
            out.insert(j, d);
        }
        if let Some(&j) = diffs.keys().find(|&&j| j < lo || j >= hi) {
            return Err(Error::InvariantViolation(format!("differential {j} leaves the support")));
        }
        for j in lo..hi - 1 {
            for n in 0..=window {
                if !out[&(j + 1)].map(n).mul(out[&j].map(n))?.is_zero() {
                    return Err(Error::InvariantViolation(format!("d∘d ≠ 0 at index {j}, degree {n}")));
                }
            }
        }
        Ok(FIComplex { field: field.clone(), window, terms: full, diffs: out })
    }

    /// `M` placed at index `j`.
    pub fn single(m: &FIModule<F>, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(j, m.clone());
        FIComplex { field: m.field().clone(), window: m.window(), terms, diffs: BTreeMap::new() }
    }

    /// `source -> target` placed at indices `j, j + 1`.
    pub fn two_term(f: &FIMorphism<F>, j: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        terms.insert(j, f.source().clone());
        terms.insert(j + 1, f.target().clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(j, f.clone());
        Self::new(f.source().field(), terms, diffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn valid_through(&self) -> usize {
        self.terms.values().map(FIModule::valid_through).min().unwrap_or(self.window)
    }

    /// Lowest and highest index of the support (zero terms included).
    pub fn range(&self) -> (i64, i64) {
        (*self.terms.keys().next().expect("nonempty"), *self.terms.keys().next_back().expect("nonempty"))
    }

    pub fn term(&self, j: i64) -> Option<&FIModule<F>> {
        self.terms.get(&j)
    }

    pub fn terms(&self) -> &BTreeMap<i64, FIModule<F>> {
        &self.terms
    }

    /// `d^j`, if both `C^j` and `C^{j+1}` are in the support.
    pub fn differential(&self, j: i64) -> Option<&FIMorphism<F>> {
        self.diffs.get(&j)
    }

    /// Least index of a term that is nonzero within the window.
    pub fn lowest_nonzero(&self) -> Option<i64> {
        self.terms.iter().find(|(_, t)| !t.is_zero()).map(|(&j, _)| j)
    }
}

/// `H^j(C) = ker d^j / im d^{j-1}` as FI-modules, for every index of the
/// support.
pub fn complex_cohomology<F: Field>(c: &FIComplex<F>) -> Result<BTreeMap<i64, FIModule<F>>> {
    let (lo, hi) = c.range();
    let f = c.field();
    let vt = c.valid_through();
    let mut out = BTreeMap::new();
    for j in lo..=hi {
        let term = c.term(j).expect("support is contiguous");
        let sub: Vec<Matrix<F>> = (0..=c.window())
            .map(|n| match c.differential(j) {
                Some(d) => d.map(n).kernel_basis(),
                None => Matrix::identity(f, term.piece(n).dim()),
            })
            .collect();
        let killed: Vec<Matrix<F>> = (0..=c.window())
            .map(|n| match c.differential(j - 1) {
                Some(d) => d.map(n).column_space_basis(),
                None => Matrix::zero(f, term.piece(n).dim(), 0),
            })
            .collect();
        let (h, _) = subquotient_module(term, &sub, &killed, vt)?;
        out.insert(j, h);
    }
    Ok(out)
}

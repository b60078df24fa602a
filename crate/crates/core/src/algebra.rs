//! Elements of the group algebra `k[S_n]`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::perm::Permutation;
use crate::rep::SnRep;

/// A finite `k`-linear combination of permutations of one degree. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<F: Field> {
    field: F,
    degree: usize,
    terms: BTreeMap<Permutation, F::Elem>,
}

impl<F: Field> GroupAlgebraElement<F> {
    pub fn zero(field: &F, degree: usize) -> Self {
        GroupAlgebraElement { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn identity(field: &F, degree: usize) -> Self {
        Self::from_perm(field, Permutation::identity(degree))
    }

    pub fn from_perm(field: &F, p: Permutation) -> Self {
        let degree = p.degree();
        let mut terms = BTreeMap::new();
        terms.insert(p, field.one());
        GroupAlgebraElement { field: field.clone(), degree, terms }
    }

    pub fn from_terms(field: &F, degree: usize, terms: Vec<(Permutation, F::Elem)>) -> Result<Self> {
        let mut x = Self::zero(field, degree);
        for (p, c) in terms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: p.degree() });
            }
            x.add_term(p, &c);
        }
        Ok(x)
    }

    /// Sum of all permutations of degree `n`.
    pub fn norm(field: &F, degree: usize) -> Self {
        let mut x = Self::zero(field, degree);
        for p in Permutation::all(degree) {
            x.add_term(p, &field.one());
        }
        x
    }

    fn add_term(&mut self, p: Permutation, c: &F::Elem) {
        let f = &self.field;
        if f.is_zero(c) {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut e) => {
                let v = f.add(e.get(), c);
                if f.is_zero(&v) {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &F::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Permutation) -> F::Elem {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), &self.field.mul(c, x));
        }
        out
    }

    /// Convolution product; `(a b)` acts as `a` after `b`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let mut out = Self::zero(f, self.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose(q), &f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Image under `S_k ⊂ S_n` acting on points `offset .. offset + k`.
    pub fn embed(&self, offset: usize, n: usize) -> Self {
        let mut out = Self::zero(&self.field, n);
        for (p, c) in &self.terms {
            out.add_term(p.embed(offset, n), c);
        }
        out
    }

    /// Coefficient vector indexed by `Permutation::all(degree)`.
    pub fn to_vector(&self) -> Vec<F::Elem> {
        Permutation::all(self.degree).iter().map(|p| self.coefficient(p)).collect()
    }
}

/// Matrix by which `x` acts on `rep`.
pub fn act<F: Field>(x: &GroupAlgebraElement<F>, rep: &SnRep<F>) -> Result<Matrix<F>> {
    if x.degree() != rep.degree() {
        return Err(Error::DegreeMismatch { expected: rep.degree(), found: x.degree() });
    }
    if x.field() != rep.field() {
        return Err(Error::FieldMismatch);
    }
    let f = rep.field();
    let mut out = Matrix::zero(f, rep.dim(), rep.dim());
    for (p, c) in x.terms() {
        out = out.add(&rep.action(p)?.scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn identity_acts_as_identity() {
        let q = Rationals;
        let rep = SnRep::regular(&q, 3);
        let e = GroupAlgebraElement::identity(&q, 3);
        assert_eq!(act(&e, &rep).unwrap(), Matrix::identity(&q, 6));
    }

    #[test]
    fn norm_kills_sign() {
        let q = Rationals;
        let n = GroupAlgebraElement::identity(&q, 2)
            .add(&GroupAlgebraElement::from_perm(&q, Permutation::transposition(2, 0, 1)))
            .unwrap();
        assert!(act(&n, &SnRep::sign(&q, 2)).unwrap().is_zero());
        assert_eq!(n.mul(&n).unwrap(), n.scale(&q.from_i64(2)));
    }

    #[test]
    fn act_is_multiplicative_and_linear() {
        let f = PrimeField::new(7).unwrap();
        let rep = SnRep::natural(&f, 3);
        let all = Permutation::all(3);
        let x = GroupAlgebraElement::from_terms(
            &f,
            3,
            vec![(all[1].clone(), f.from_i64(2)), (all[4].clone(), f.from_i64(3))],
        )
        .unwrap();
        let y = GroupAlgebraElement::from_terms(
            &f,
            3,
            vec![(all[0].clone(), f.from_i64(5)), (all[5].clone(), f.from_i64(1)), (all[2].clone(), f.from_i64(6))],
        )
        .unwrap();
        let xy = act(&x.mul(&y).unwrap(), &rep).unwrap();
        assert_eq!(xy, act(&x, &rep).unwrap().mul(&act(&y, &rep).unwrap()).unwrap());
        let sum = act(&x.add(&y).unwrap(), &rep).unwrap();
        assert_eq!(sum, act(&x, &rep).unwrap().add(&act(&y, &rep).unwrap()).unwrap());
    }

    #[test]
    fn zero_coefficients_pruned() {
        let q = Rationals;
        let e = GroupAlgebraElement::identity(&q, 3);
        assert!(e.sub(&e).unwrap().is_zero());
    }

    #[test]
    fn degree_mismatch() {
        let q = Rationals;
        let e = GroupAlgebraElement::identity(&q, 3);
        assert!(matches!(act(&e, &SnRep::sign(&q, 2)), Err(Error::DegreeMismatch { .. })));
    }
}

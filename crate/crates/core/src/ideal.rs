//! Good ideals of `k[S_p]` for `p = 2, 3` and the invariant ν built from
//! their block embeddings into `k[S_n]`.
//!
//! A good ideal is generated by a single element `g` of `k[S_p]`. The ideal
//! `I_n(r)` is the two-sided ideal of `k[S_n]` generated by `g^{⊠r}`, the
//! product of copies of `g` acting on the blocks `{1..p}, {p+1..2p}, ..`.
//! Because `k[S_n]` acts invertibly on any representation, `I_n(r)`
//! annihilates a representation exactly when the single operator `g^{⊠r}`
//! does, so ν is computed from one matrix per `r`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{act, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::perm::Permutation;
use crate::rep::{external_tensor, induce_young, SnRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodIdeal<F: Field> {
    p: usize,
    generator: GroupAlgebraElement<F>,
}

/// Block size for the field: 2 unless the characteristic is 2, then 3.
pub fn default_block_size<F: Field>(field: &F) -> usize {
    if field.characteristic() == 2 {
        3
    } else {
        2
    }
}

/// The standard generator: the norm element `1 + (1,2)` for `p = 2`, and
/// `(1 + (1,2))(1 + (1,3)) - (2/3) N` for `p = 3` with `N` the norm element
/// of `k[S_3]`.
pub fn good_ideal<F: Field>(p: usize, field: &F) -> Result<GoodIdeal<F>> {
    if p != 2 && p != 3 {
        return Err(Error::GoodIdealAxiom(format!("no good ideal is known for p = {p}")));
    }
    if !field.integer_is_unit(p as u64) {
        return Err(Error::NotInvertible { p: p as u64, characteristic: field.characteristic() });
    }
    let one = GroupAlgebraElement::identity(field, p);
    let t12 = one.add(&GroupAlgebraElement::from_perm(field, Permutation::transposition(p, 0, 1)))?;
    let generator = if p == 2 {
        t12
    } else {
        let t13 = one.add(&GroupAlgebraElement::from_perm(field, Permutation::transposition(3, 0, 2)))?;
        let two_thirds = field.div(&field.from_i64(2), &field.from_i64(3))?;
        t12.mul(&t13)?.sub(&GroupAlgebraElement::norm(field, 3).scale(&two_thirds))?
    };
    let gi = GoodIdeal { p, generator };
    verify_good_ideal(&gi)?;
    Ok(gi)
}

impl<F: Field> GoodIdeal<F> {
    /// Wrap an arbitrary generator without checking the axioms.
    pub fn from_generator(generator: GroupAlgebraElement<F>) -> Self {
        GoodIdeal { p: generator.degree(), generator }
    }

    pub fn block_size(&self) -> usize {
        self.p
    }

    pub fn generator(&self) -> &GroupAlgebraElement<F> {
        &self.generator
    }

    pub fn field(&self) -> &F {
        self.generator.field()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodIdealReport {
    pub p: usize,
    pub field: String,
    pub checks: Vec<AxiomCheck>,
    /// `dim k[S_p] / I`.
    pub quotient_dim: usize,
}

impl GoodIdealReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Span of `{σ g ρ : σ, ρ ∈ S_n}` as a matrix whose columns are coefficient
/// vectors in the basis `Permutation::all(n)`.
pub fn two_sided_ideal_span<F: Field>(g: &GroupAlgebraElement<F>) -> Result<Matrix<F>> {
    let f = g.field();
    let n = g.degree();
    let all = Permutation::all(n);
    let mut columns = Vec::with_capacity(all.len() * all.len());
    for s in &all {
        let left = GroupAlgebraElement::from_perm(f, s.clone()).mul(g)?;
        for r in &all {
            columns.push(left.mul(&GroupAlgebraElement::from_perm(f, r.clone()))?.to_vector());
        }
    }
    Ok(Matrix::from_columns(f, all.len(), &columns)?.column_space_basis())
}

/// Check the good-ideal axioms over the field. Flatness is automatic over a
/// field; the quotient dimension is reported and for `p = 3` must be 2.
pub fn good_ideal_report<F: Field>(gi: &GoodIdeal<F>) -> Result<GoodIdealReport> {
    let f = gi.field();
    let g = &gi.generator;
    let p = gi.p;
    let mut checks = Vec::new();

    let square = g.mul(g)?;
    let scalar = if p == 2 { f.from_i64(2) } else { f.one() };
    let idem = square == g.scale(&scalar) && !f.is_zero(&scalar);
    checks.push(AxiomCheck {
        axiom: "idempotent",
        detail: if p == 2 { "N^2 = 2N".into() } else { "tau^2 = tau".into() },
        passed: idem,
    });

    let on_sign = act(g, &SnRep::sign(f, p))?;
    checks.push(AxiomCheck {
        axiom: "annihilates sgn_p",
        detail: format!("generator acts on sgn_{p} as zero"),
        passed: on_sign.is_zero(),
    });

    let ind = induce_young(&external_tensor(&SnRep::sign(f, p - 1), &SnRep::trivial(f, 1))?)?;
    let on_ind = act(g, &ind)?;
    checks.push(AxiomCheck {
        axiom: "does not annihilate Ind sgn_{p-1}",
        detail: format!("generator acts on Ind_{{S_{}}}^{{S_{p}}} sgn_{} with rank {}", p - 1, p - 1, on_ind.rank()),
        passed: !on_ind.is_zero(),
    });

    let span = two_sided_ideal_span(g)?;
    let order = span.rows();
    let quotient_dim = order - span.cols();
    checks.push(AxiomCheck {
        axiom: "k-flat",
        detail: format!("dim k[S_{p}]/I = {quotient_dim}"),
        passed: p != 3 || quotient_dim == 2,
    });

    Ok(GoodIdealReport { p, field: f.name(), checks, quotient_dim })
}

/// Like [`good_ideal_report`] but fails on the first violated axiom.
pub fn verify_good_ideal<F: Field>(gi: &GoodIdeal<F>) -> Result<GoodIdealReport> {
    let report = good_ideal_report(gi)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::GoodIdealAxiom(format!("{} ({})", bad.axiom, bad.detail)));
    }
    Ok(report)
}

/// `g^{⊠r}` inside `k[S_n]`, or zero when `p r > n`.
pub fn block_embed<F: Field>(gi: &GoodIdeal<F>, r: usize, n: usize) -> Result<GroupAlgebraElement<F>> {
    let f = gi.field();
    let p = gi.p;
    if p * r > n {
        return Ok(GroupAlgebraElement::zero(f, n));
    }
    let mut out = GroupAlgebraElement::identity(f, n);
    for k in 0..r {
        out = out.mul(&gi.generator.embed(k * p, n))?;
    }
    Ok(out)
}

/// ν of a representation; `Infinite` for the zero representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NuValue {
    Finite(usize),
    Infinite,
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Finite(v) => write!(f, "{v}"),
            NuValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Matrices of the block copies `g^{(1)}, g^{(2)}, ..` acting on `rep`.
fn block_operators<F: Field>(gi: &GoodIdeal<F>, rep: &SnRep<F>) -> Result<Vec<Matrix<F>>> {
    let n = rep.degree();
    let p = gi.p;
    (0..n / p)
        .map(|k| act(&gi.generator.embed(k * p, n), rep))
        .collect()
}

/// Largest `r` with `g^{⊠r}` acting nonzero on `rep`, for nonzero `rep`.
pub fn max_nonannihilating_block_count<F: Field>(rep: &SnRep<F>, gi: &GoodIdeal<F>) -> Result<Option<usize>> {
    if rep.field() != gi.field() {
        return Err(Error::FieldMismatch);
    }
    if rep.is_zero() {
        return Ok(None);
    }
    let mut current = Matrix::identity(rep.field(), rep.dim());
    let mut r = 0;
    for op in block_operators(gi, rep)? {
        let next = current.mul(&op)?;
        if next.is_zero() {
            break;
        }
        current = next;
        r += 1;
    }
    Ok(Some(r))
}

pub fn nu<F: Field>(rep: &SnRep<F>, gi: &GoodIdeal<F>) -> Result<NuValue> {
    Ok(match max_nonannihilating_block_count(rep, gi)? {
        None => NuValue::Infinite,
        Some(r) => NuValue::Finite(rep.degree() - r),
    })
}

/// Whether the element acts as zero on every vector of the representation.
pub fn annihilates<F: Field>(x: &GroupAlgebraElement<F>, rep: &SnRep<F>) -> Result<bool> {
    Ok(act(x, rep)?.is_zero())
}

/// `(Ind_{S_{p-1}}^{S_p} sgn_{p-1})^{⊠r}` as a representation of `S_{pr}`
/// restricted to the block group; returned as the matrices of the block
/// copies of `g`.
pub fn iterated_block_action<F: Field>(gi: &GoodIdeal<F>, r: usize) -> Result<Matrix<F>> {
    let f = gi.field();
    let p = gi.p;
    let single = induce_young(&external_tensor(&SnRep::sign(f, p - 1), &SnRep::trivial(f, 1))?)?;
    let g = act(&gi.generator, &single)?;
    let mut out = Matrix::identity(f, 1);
    for _ in 0..r {
        out = out.kron(&g)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn norm_element_over_q() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let g = gi.generator();
        assert_eq!(g.len(), 2);
        assert_eq!(g.mul(g).unwrap(), g.scale(&q.from_i64(2)));
        let report = verify_good_ideal(&gi).unwrap();
        assert!(report.passed());
        assert_eq!(report.quotient_dim, 1);
    }

    #[test]
    fn tau_over_q() {
        let q = Rationals;
        let gi = good_ideal(3, &q).unwrap();
        let t = gi.generator();
        assert_eq!(t.mul(t).unwrap(), *t);
        let report = verify_good_ideal(&gi).unwrap();
        assert_eq!(report.quotient_dim, 2);
        // The generator sends (x, 0, 0) in Ind sgn_2 to a nonzero vector.
        let ind = induce_young(&external_tensor(&SnRep::sign(&q, 2), &SnRep::trivial(&q, 1)).unwrap()).unwrap();
        let m = act(t, &ind).unwrap();
        let image = m.mul_vec(&[q.one(), q.zero(), q.zero()]).unwrap();
        assert!(image.iter().any(|x| !q.is_zero(x)));
    }

    #[test]
    fn tau_on_regular_rep() {
        let q = Rationals;
        let gi = good_ideal(3, &q).unwrap();
        let m = act(gi.generator(), &SnRep::regular(&q, 3)).unwrap();
        assert_eq!(m.mul(&m).unwrap(), m);
        // Trace oracle: an idempotent has rank equal to its trace, and left
        // multiplication by x on k[G] has trace |G| times the coefficient of
        // the identity: 6 * (1 - 2/3) = 2.
        let trace = (0..6).fold(q.zero(), |acc, i| q.add(&acc, m.get(i, i)));
        assert_eq!(trace, q.from_i64(2));
        assert_eq!(m.rank(), 2);
        // The two-sided ideal is larger than the right ideal τ k[S_3].
        assert_eq!(two_sided_ideal_span(gi.generator()).unwrap().cols(), 4);
    }

    #[test]
    fn preconditions() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(good_ideal(2, &f2), Err(Error::NotInvertible { p: 2, characteristic: 2 }));
        assert!(good_ideal(3, &f2).is_ok());
        let f3 = PrimeField::new(3).unwrap();
        assert!(good_ideal(3, &f3).is_err());
        assert!(good_ideal(2, &f3).is_ok());
        assert!(good_ideal(5, &Rationals).is_err());
        assert_eq!(default_block_size(&f2), 3);
        assert_eq!(default_block_size(&Rationals), 2);
    }

    #[test]
    fn bad_generator_names_axiom() {
        let q = Rationals;
        // 2 * identity satisfies the N^2 = 2N identity but does not
        // annihilate the sign representation.
        let gi = GoodIdeal::from_generator(GroupAlgebraElement::identity(&q, 2).scale(&q.from_i64(2)));
        match verify_good_ideal(&gi) {
            Err(Error::GoodIdealAxiom(msg)) => assert!(msg.contains("annihilates sgn_p")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn block_embedding() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        assert_eq!(block_embed(&gi, 0, 3).unwrap(), GroupAlgebraElement::identity(&q, 3));
        let e = block_embed(&gi, 1, 3).unwrap();
        let expect = GroupAlgebraElement::identity(&q, 3)
            .add(&GroupAlgebraElement::from_perm(&q, Permutation::transposition(3, 0, 1)))
            .unwrap();
        assert_eq!(e, expect);
        // Expand (1 + (1,2))(1 + (3,4)) by hand: 1, (1,2), (3,4), (1,2)(3,4).
        let e = block_embed(&gi, 2, 4).unwrap();
        assert_eq!(e.len(), 4);
        let a = Permutation::transposition(4, 0, 1);
        let b = Permutation::transposition(4, 2, 3);
        for p in [Permutation::identity(4), a.clone(), b.clone(), a.compose(&b)] {
            assert_eq!(e.coefficient(&p), q.one());
        }
        assert!(block_embed(&gi, 3, 5).unwrap().is_zero());
    }

    #[test]
    fn nu_of_sign_and_trivial() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        for n in 2..6 {
            assert_eq!(nu(&SnRep::sign(&q, n), &gi).unwrap(), NuValue::Finite(n));
            assert_eq!(nu(&SnRep::trivial(&q, n), &gi).unwrap(), NuValue::Finite(n - n / 2));
        }
        assert_eq!(nu(&SnRep::zero(&q, 3), &gi).unwrap(), NuValue::Infinite);
    }

    #[test]
    fn nu_of_induced_sign() {
        let q = Rationals;
        let gi = good_ideal(2, &q).unwrap();
        let m = induce_young(&external_tensor(&SnRep::trivial(&q, 1), &SnRep::sign(&q, 3)).unwrap()).unwrap();
        assert_eq!(nu(&m, &gi).unwrap(), NuValue::Finite(3));
    }

    #[test]
    fn iterated_block_action_nonzero() {
        for r in 0..=3 {
            assert!(!iterated_block_action(&good_ideal(2, &Rationals).unwrap(), r).unwrap().is_zero());
            let f2 = PrimeField::new(2).unwrap();
            assert!(!iterated_block_action(&good_ideal(3, &f2).unwrap(), r).unwrap().is_zero());
        }
    }

    #[test]
    fn nu_value_order() {
        assert!(NuValue::Finite(7) < NuValue::Infinite);
        assert_eq!(NuValue::Finite(2).min(NuValue::Infinite), NuValue::Finite(2));
        assert_eq!(alloc::format!("{}", NuValue::Infinite), "inf");
    }
}

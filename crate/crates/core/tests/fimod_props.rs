use std::collections::BTreeMap;

use fihom_core::complex::FIComplex;
use fihom_core::fimod::{cokernel, fi_constant, fi_induced, fi_shift, fi_torsion_concentrated, image, induced_morphism, kernel, torsion_submodule};
use fihom_core::koszul::{hyper_tor_rows, tor_table};
use fihom_core::rep::equivariant_hom_basis;
use fihom_core::{FIMorphism, Field, Matrix, PrimeField, Rationals, SnRep};
use proptest::prelude::*;

fn f7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

fn reps(f: &PrimeField) -> Vec<SnRep<PrimeField>> {
    vec![
        SnRep::trivial(f, 0),
        SnRep::trivial(f, 1),
        SnRep::trivial(f, 2),
        SnRep::sign(f, 2),
        SnRep::natural(f, 2),
        SnRep::regular(f, 2),
    ]
}

fn combine(f: &PrimeField, basis: &[Matrix<PrimeField>], coeffs: &[i64], rows: usize, cols: usize) -> Matrix<PrimeField> {
    basis
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(Matrix::zero(f, rows, cols), |acc, (b, &c)| acc.add(&b.scale(&f.from_i64(c))).unwrap())
}

/// `I(V) -> I(W)` from a combination of a basis of equivariant maps in
/// degree `deg V`.
fn morphism(v: &SnRep<PrimeField>, w: &SnRep<PrimeField>, window: usize, coeffs: &[i64]) -> FIMorphism<PrimeField> {
    let f = v.field();
    let tgt = fi_induced(w, window).unwrap();
    let piece = tgt.piece(v.degree());
    let basis = equivariant_hom_basis(v, piece).unwrap();
    let f0 = combine(f, &basis, coeffs, piece.dim(), v.dim());
    induced_morphism(v, &tgt, &f0).unwrap()
}

fn pair() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..6, 0usize..6, prop::collection::vec(-3i64..=3, 1..4)).prop_filter("degrees", |(a, b, _)| {
        let degs = [0, 1, 2, 2, 2, 2];
        degs[*b] <= degs[*a]
    })
}

fn add_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shift_is_exact((s, t, coeffs) in pair(), a in 1usize..3) {
        let f = f7();
        let rs = reps(&f);
        let m = morphism(&rs[s], &rs[t], 5, &coeffs);
        let shifted = m.shift(a).unwrap();
        prop_assert_eq!(cokernel(&shifted).unwrap().0.dims(), fi_shift(&cokernel(&m).unwrap().0, a).unwrap().dims());
        prop_assert_eq!(kernel(&shifted).unwrap().0.dims(), fi_shift(&kernel(&m).unwrap().0, a).unwrap().dims());
        let src = m.source();
        let sh = fi_shift(src, a).unwrap();
        for n in 0..=sh.window() {
            prop_assert_eq!(sh.piece(n).dim(), src.piece(n + a).dim());
            prop_assert_eq!(sh.piece(n).degree(), n);
        }
    }

    #[test]
    fn induced_morphisms_are_determined_in_the_generating_degree((s, t, c1) in pair(), u in 0usize..3, c2 in prop::collection::vec(-3i64..=3, 1..4)) {
        let f = f7();
        let rs = reps(&f);
        let (v, w) = (&rs[s], &rs[t]);
        let target = [SnRep::trivial(&f, 0), SnRep::trivial(&f, 1), SnRep::natural(&f, 1)][u].clone();
        prop_assume!(target.degree() <= w.degree());
        let first = morphism(v, w, 5, &c1);
        let second = morphism(w, &target, 5, &c2);
        let composite = first.then(&second).unwrap();
        let d = v.degree();
        let rebuilt = induced_morphism(v, second.target(), composite.map(d)).unwrap();
        prop_assert_eq!(rebuilt, composite);
    }

    #[test]
    fn torsion_of_a_sum_is_the_sum_of_torsions((s, t, coeffs) in pair(), d in 0usize..3) {
        let f = f7();
        let rs = reps(&f);
        let m = cokernel(&morphism(&rs[s], &rs[t], 6, &coeffs)).unwrap().0;
        let tors = fi_torsion_concentrated(&SnRep::natural(&f, d), 6).unwrap();
        let sum = m.direct_sum(&tors).unwrap();
        let lhs = torsion_submodule(&sum).unwrap().module.dims();
        let rhs = add_dims(&torsion_submodule(&m).unwrap().module.dims(), &torsion_submodule(&tors).unwrap().module.dims());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tor_is_additive((s, t, coeffs) in pair(), d in 0usize..3) {
        let f = f7();
        let rs = reps(&f);
        let m = cokernel(&morphism(&rs[s], &rs[t], 5, &coeffs)).unwrap().0;
        let n = fi_torsion_concentrated(&SnRep::sign(&f, d), 5).unwrap();
        let sum = m.direct_sum(&n).unwrap();
        let (a, b, c) = (tor_table(&m, 2).unwrap(), tor_table(&n, 2).unwrap(), tor_table(&sum, 2).unwrap());
        for i in 0..=2 {
            prop_assert_eq!(c.row(i), add_dims(&a.row(i), &b.row(i)));
        }
    }
}

/// `[A_+ -> A]` at indices `-1, 0` is quasi-isomorphic to `k_0` at 0.
#[test]
fn hyper_tor_is_invariant_under_quasi_isomorphism() {
    let q = Rationals;
    let a = fi_constant(&q, 5).unwrap();
    let inc = induced_morphism(&SnRep::trivial(&q, 1), &a, &Matrix::identity(&q, 1)).unwrap();
    let (_, incl) = image(&inc).unwrap();
    let two = FIComplex::two_term(&incl, -1).unwrap();
    let k0 = cokernel(&inc).unwrap().0;
    let one = FIComplex::single(&k0, 0);
    let x = hyper_tor_rows(&two, -1, 4).unwrap();
    let y = hyper_tor_rows(&one, -1, 4).unwrap();
    for n in -1..=4 {
        for m in 0..=5 {
            assert_eq!(x.dim(n, m), y.dim(n, m), "Tor_{n} in degree {m}");
        }
    }
    assert_eq!(y.t(3), Some(3));
}

/// A complex with a contractible summand has the hyper-Tor of the rest.
#[test]
fn contractible_summands_do_not_change_hyper_tor() {
    let f = f7();
    let t = fi_torsion_concentrated(&SnRep::natural(&f, 2), 5).unwrap();
    let i = fi_induced(&SnRep::trivial(&f, 1), 5).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(0, i.clone());
    terms.insert(1, i.direct_sum(&t).unwrap());
    let incl_maps: Vec<Matrix<PrimeField>> = (0..=5)
        .map(|n| Matrix::identity(&f, i.piece(n).dim()).vstack(&Matrix::zero(&f, t.piece(n).dim(), i.piece(n).dim())).unwrap())
        .collect();
    let mut diffs = BTreeMap::new();
    diffs.insert(0, FIMorphism::new(&i, &terms[&1], incl_maps).unwrap());
    let cone = FIComplex::new(&f, terms, diffs).unwrap();
    let x = hyper_tor_rows(&cone, -1, 3).unwrap();
    let y = hyper_tor_rows(&FIComplex::single(&t, 1), -1, 3).unwrap();
    for n in -1..=3 {
        for m in 0..=5 {
            assert_eq!(x.dim(n, m), y.dim(n, m), "Tor_{n} in degree {m}");
        }
    }
}


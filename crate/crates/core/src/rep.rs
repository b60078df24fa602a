//! Representations of symmetric groups given by the matrices of the
//! adjacent transpositions, and induction from Young subgroups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::perm::Permutation;

/// A representation of `S_n`: `gens[i]` is the matrix of the adjacent
/// transposition swapping 0-based points `i, i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnRep<F: Field> {
    field: F,
    degree: usize,
    dim: usize,
    gens: Vec<Matrix<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicKind {
    Trivial,
    Sign,
    /// Left multiplication on `k[S_n]`, basis in lexicographic order.
    Regular,
    /// Permutation action on `k^n`.
    Natural,
}

impl<F: Field> SnRep<F> {
    /// Validated constructor: checks involutions, braid relations and
    /// commutation of distant generators.
    pub fn new(field: &F, degree: usize, dim: usize, gens: Vec<Matrix<F>>) -> Result<Self> {
        let rep = Self::new_unchecked(field, degree, dim, gens)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Only checks shapes; for constructions that are correct by design.
    pub fn new_unchecked(field: &F, degree: usize, dim: usize, gens: Vec<Matrix<F>>) -> Result<Self> {
        let expected = degree.saturating_sub(1);
        if gens.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "number of adjacent transpositions",
                expected,
                found: gens.len(),
            });
        }
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: "generator size",
                    expected: dim,
                    found: g.rows().max(g.cols()),
                });
            }
        }
        Ok(SnRep { field: field.clone(), degree, dim, gens })
    }

    pub fn validate(&self) -> Result<()> {
        let id = Matrix::identity(&self.field, self.dim);
        for (i, g) in self.gens.iter().enumerate() {
            if g.mul(g)? != id {
                return Err(Error::InvariantViolation(format!("s_{} does not square to 1", i + 1)));
            }
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let (a, b) = (&self.gens[i], &self.gens[j]);
                let ok = if j == i + 1 {
                    a.mul(b)?.mul(a)? == b.mul(a)?.mul(b)?
                } else {
                    a.mul(b)? == b.mul(a)?
                };
                if !ok {
                    return Err(Error::InvariantViolation(format!(
                        "relation between s_{} and s_{} fails",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(field: &F, degree: usize) -> Self {
        let gens = (1..degree).map(|_| Matrix::zero(field, 0, 0)).collect();
        SnRep { field: field.clone(), degree, dim: 0, gens }
    }

    fn scalar(field: &F, degree: usize, s: i64) -> Self {
        let gens = (1..degree).map(|_| Matrix::from_i64(field, &[&[s]])).collect();
        SnRep { field: field.clone(), degree, dim: 1, gens }
    }

    pub fn trivial(field: &F, degree: usize) -> Self {
        Self::scalar(field, degree, 1)
    }

    pub fn sign(field: &F, degree: usize) -> Self {
        Self::scalar(field, degree, -1)
    }

    pub fn natural(field: &F, degree: usize) -> Self {
        let gens = (0..degree.saturating_sub(1))
            .map(|i| permutation_matrix(field, &Permutation::adjacent(degree, i)))
            .collect();
        SnRep { field: field.clone(), degree, dim: degree, gens }
    }

    pub fn regular(field: &F, degree: usize) -> Self {
        let elems = Permutation::all(degree);
        let index: BTreeMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let dim = elems.len();
        let gens = (0..degree.saturating_sub(1))
            .map(|i| {
                let s = Permutation::adjacent(degree, i);
                let mut m = Matrix::zero(field, dim, dim);
                for (col, p) in elems.iter().enumerate() {
                    m.set(index[&s.compose(p)], col, field.one());
                }
                m
            })
            .collect();
        SnRep { field: field.clone(), degree, dim, gens }
    }

    pub fn basic(kind: BasicKind, field: &F, degree: usize) -> Self {
        match kind {
            BasicKind::Trivial => Self::trivial(field, degree),
            BasicKind::Sign => Self::sign(field, degree),
            BasicKind::Regular => Self::regular(field, degree),
            BasicKind::Natural => Self::natural(field, degree),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn gens(&self) -> &[Matrix<F>] {
        &self.gens
    }

    /// Matrix of `s_{i+1}` (0-based index `i`).
    pub fn gen(&self, i: usize) -> &Matrix<F> {
        &self.gens[i]
    }

    /// Matrix of an arbitrary permutation, via a reduced word.
    pub fn action(&self, p: &Permutation) -> Result<Matrix<F>> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: p.degree() });
        }
        let mut m = Matrix::identity(&self.field, self.dim);
        for i in p.factor_adjacent() {
            m = m.mul(&self.gens[i])?;
        }
        Ok(m)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        Ok(SnRep { field: self.field.clone(), degree: self.degree, dim: self.dim + other.dim, gens })
    }

    /// Restriction to `S_k` acting on the first `k` points.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        if k > self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: k });
        }
        let gens = self.gens[..k.saturating_sub(1)].to_vec();
        Ok(SnRep { field: self.field.clone(), degree: k, dim: self.dim, gens })
    }

    /// Same representation in the basis given by the columns of `p`:
    /// generators become `p^-1 g p`.
    pub fn change_basis(&self, p: &Matrix<F>, p_inv: &Matrix<F>) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| p_inv.mul(g)?.mul(p))
            .collect::<Result<_>>()?;
        Ok(SnRep { field: self.field.clone(), degree: self.degree, dim: self.dim, gens })
    }

    /// Representation with the given generator matrices replacing the ones
    /// of `self` (same degree); used for subquotients.
    pub fn with_gens(&self, dim: usize, gens: Vec<Matrix<F>>) -> Result<Self> {
        Self::new_unchecked(&self.field, self.degree, dim, gens)
    }

    /// Whether `m : self -> other` commutes with every generator.
    pub fn is_equivariant_map(&self, other: &Self, m: &Matrix<F>) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        for (a, b) in self.gens.iter().zip(&other.gens) {
            if m.mul(a)? != b.mul(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A basis of `Hom_{S_n}(v, w)`: solutions `L` of `w(s) L = L v(s)` for
/// every generator `s`.
pub fn equivariant_hom_basis<F: Field>(v: &SnRep<F>, w: &SnRep<F>) -> Result<Vec<Matrix<F>>> {
    if v.degree != w.degree {
        return Err(Error::DegreeMismatch { expected: v.degree, found: w.degree });
    }
    let f = &v.field;
    let (dv, dw) = (v.dim, w.dim);
    // Column-major vec: vec(A L) = (I ⊗ A) vec L, vec(L B) = (Bᵀ ⊗ I) vec L.
    let mut system = Matrix::zero(f, 0, dv * dw);
    for (a, b) in w.gens.iter().zip(&v.gens) {
        let lhs = Matrix::identity(f, dv).kron(a)?;
        let rhs = b.transpose().kron(&Matrix::identity(f, dw))?;
        system = system.vstack(&lhs.sub(&rhs)?)?;
    }
    let kernel = system.kernel_basis();
    Ok((0..kernel.cols())
        .map(|c| Matrix::from_fn(f, dw, dv, |r, k| kernel.get(k * dw + r, c).clone()))
        .collect())
}

pub fn permutation_matrix<F: Field>(field: &F, p: &Permutation) -> Matrix<F> {
    let n = p.degree();
    let mut m = Matrix::zero(field, n, n);
    for i in 0..n {
        m.set(p.apply(i), i, field.one());
    }
    m
}

/// External tensor product `U ⊠ W`, a representation of `S_a × S_b`.
///
/// The left factor acts by `s_i ⊗ 1` for `i < a - 1`, the right by
/// `1 ⊗ s_j`; the generator straddling the two blocks does not exist.
/// Basis index of `u ⊗ w` is `u * dim W + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungRep<F: Field> {
    field: F,
    left_degree: usize,
    right_degree: usize,
    dim: usize,
    left_gens: Vec<Matrix<F>>,
    right_gens: Vec<Matrix<F>>,
}

pub fn external_tensor<F: Field>(u: &SnRep<F>, w: &SnRep<F>) -> Result<YoungRep<F>> {
    if u.field() != w.field() {
        return Err(Error::FieldMismatch);
    }
    let f = u.field();
    let id_u = Matrix::identity(f, u.dim());
    let id_w = Matrix::identity(f, w.dim());
    let left_gens = u.gens().iter().map(|g| g.kron(&id_w)).collect::<Result<_>>()?;
    let right_gens = w.gens().iter().map(|g| id_u.kron(g)).collect::<Result<_>>()?;
    Ok(YoungRep {
        field: f.clone(),
        left_degree: u.degree(),
        right_degree: w.degree(),
        dim: u.dim() * w.dim(),
        left_gens,
        right_gens,
    })
}

impl<F: Field> YoungRep<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.left_degree, self.right_degree)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generator `i` of the block group inside `S_{a+b}`; `None` at
    /// `i = a - 1`, which would straddle the blocks.
    pub fn generator(&self, i: usize) -> Option<&Matrix<F>> {
        let a = self.left_degree;
        if i + 1 < a {
            Some(&self.left_gens[i])
        } else if i + 1 == a {
            None
        } else {
            self.right_gens.get(i - a)
        }
    }

    pub fn left_gen(&self, i: usize) -> &Matrix<F> {
        &self.left_gens[i]
    }

    pub fn right_gen(&self, i: usize) -> &Matrix<F> {
        &self.right_gens[i]
    }
}

/// Bitmask of a subset of `{0, .., 63}`.
pub type Subset = u64;

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order of their sorted
/// element lists.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Subset> {
    fn rec(start: usize, n: usize, k: usize, acc: Subset, out: &mut Vec<Subset>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for x in start..=n - k {
            rec(x + 1, n, k - 1, acc | (1 << x), out);
        }
    }
    assert!(n < 64, "subsets of more than 63 points");
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Rank of `x` inside `set`: the number of elements of `set` below `x`.
pub fn rank_in(set: Subset, x: usize) -> usize {
    (set & ((1u64 << x) - 1)).count_ones() as usize
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Which block's subset orders the shuffle cosets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShuffleOrder {
    /// Lexicographic in the subset occupied by the left factor.
    ByLeft,
    /// Lexicographic in the subset occupied by the right factor.
    ByRight,
}

/// The shuffle cosets of `S_a × S_b` in `S_{a+b}`, each named by the
/// subset of points occupied by the left factor.
#[derive(Clone, Debug)]
pub struct ShuffleBasis {
    n: usize,
    left: usize,
    left_subsets: Vec<Subset>,
    index: BTreeMap<Subset, usize>,
}

impl ShuffleBasis {
    pub fn new(left: usize, right: usize, order: ShuffleOrder) -> Self {
        let n = left + right;
        let full: Subset = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let left_subsets: Vec<Subset> = match order {
            ShuffleOrder::ByLeft => subsets_lex(n, left),
            ShuffleOrder::ByRight => subsets_lex(n, right).into_iter().map(|s| full & !s).collect(),
        };
        let index = left_subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        ShuffleBasis { n, left, left_subsets, index }
    }

    pub fn len(&self) -> usize {
        self.left_subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left_subsets.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn left_subsets(&self) -> &[Subset] {
        &self.left_subsets
    }

    pub fn index_of(&self, left_subset: Subset) -> usize {
        self.index[&left_subset]
    }

    pub fn full_set(&self) -> Subset {
        if self.n == 0 {
            0
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// How the adjacent transposition swapping points `j, j + 1` moves the
    /// coset named `s`: the new coset and the block-group generator
    /// picked up, if any.
    pub fn move_coset(&self, s: Subset, j: usize) -> (Subset, BlockGen) {
        let in_a = s & (1 << j) != 0;
        let in_b = s & (1 << (j + 1)) != 0;
        match (in_a, in_b) {
            (true, true) => (s, BlockGen::Left(rank_in(s, j))),
            (false, false) => {
                let comp = self.full_set() & !s;
                (s, BlockGen::Right(rank_in(comp, j)))
            }
            _ => (s ^ (1 << j) ^ (1 << (j + 1)), BlockGen::None),
        }
    }
}

/// Generator of `S_a × S_b` picked up when moving a shuffle coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockGen {
    None,
    Left(usize),
    Right(usize),
}

/// `Ind_{S_a × S_b}^{S_{a+b}}` of an external tensor product, with basis
/// `(coset, v)` ordered coset-major, cosets in [`ShuffleOrder::ByLeft`].
pub fn induce_young<F: Field>(y: &YoungRep<F>) -> Result<SnRep<F>> {
    induce_young_ordered(y, ShuffleOrder::ByLeft)
}

pub fn induce_young_ordered<F: Field>(y: &YoungRep<F>, order: ShuffleOrder) -> Result<SnRep<F>> {
    let (a, b) = y.degrees();
    let basis = ShuffleBasis::new(a, b, order);
    let n = a + b;
    let d = y.dim();
    let f = y.field();
    let dim = basis.len() * d;
    let id = Matrix::identity(f, d);
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for j in 0..n.saturating_sub(1) {
        let mut m = Matrix::zero(f, dim, dim);
        for (col, &s) in basis.left_subsets().iter().enumerate() {
            let (t, g) = basis.move_coset(s, j);
            let block = match g {
                BlockGen::None => &id,
                BlockGen::Left(i) => y.left_gen(i),
                BlockGen::Right(i) => y.right_gen(i),
            };
            m.paste(basis.index_of(t) * d, col * d, block);
        }
        gens.push(m);
    }
    SnRep::new_unchecked(f, n, dim, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn basic_reps() {
        let q = Rationals;
        let sgn = SnRep::sign(&q, 3);
        assert_eq!(sgn.dim(), 1);
        for g in sgn.gens() {
            assert_eq!(*g, Matrix::from_i64(&q, &[&[-1]]));
        }
        let triv = SnRep::trivial(&q, 4);
        assert!(triv.gens().iter().all(|g| *g == Matrix::from_i64(&q, &[&[1]])));
        for kind in [BasicKind::Trivial, BasicKind::Sign, BasicKind::Regular, BasicKind::Natural] {
            for n in 0..5 {
                SnRep::basic(kind, &q, n).validate().unwrap();
            }
        }
        assert_eq!(SnRep::natural(&q, 4).dim(), 4);
    }

    #[test]
    fn hom_spaces() {
        let q = Rationals;
        let nat = SnRep::natural(&q, 3);
        // natural = trivial ⊕ standard: End has dimension 2.
        let end = equivariant_hom_basis(&nat, &nat).unwrap();
        assert_eq!(end.len(), 2);
        for l in &end {
            assert!(nat.is_equivariant_map(&nat, l).unwrap());
        }
        assert_eq!(equivariant_hom_basis(&SnRep::trivial(&q, 3), &nat).unwrap().len(), 1);
        assert!(equivariant_hom_basis(&SnRep::sign(&q, 3), &nat).unwrap().is_empty());
        // Frobenius reciprocity: dim Hom(regular, V) = dim V.
        assert_eq!(equivariant_hom_basis(&SnRep::regular(&q, 3), &nat).unwrap().len(), 3);
    }

    #[test]
    fn regular_rep_is_cayley_table() {
        let q = Rationals;
        let reg = SnRep::regular(&q, 3);
        assert_eq!(reg.dim(), 6);
        // Cayley-table oracle: the action of every group element sends the
        // basis vector of p to the basis vector of g∘p.
        let elems = Permutation::all(3);
        for g in &elems {
            let m = reg.action(g).unwrap();
            for (col, p) in elems.iter().enumerate() {
                let target = elems.iter().position(|x| *x == g.compose(p)).unwrap();
                for row in 0..6 {
                    let expect = if row == target { 1 } else { 0 };
                    assert_eq!(*m.get(row, col), q.from_i64(expect));
                }
            }
        }
    }

    #[test]
    fn action_is_homomorphism() {
        let f = PrimeField::new(5).unwrap();
        let nat = SnRep::natural(&f, 4);
        let all = Permutation::all(4);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let lhs = nat.action(&a.compose(b)).unwrap();
                let rhs = nat.action(a).unwrap().mul(&nat.action(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs, permutation_matrix(&f, &a.compose(b)));
            }
        }
    }

    #[test]
    fn external_tensor_shapes() {
        let q = Rationals;
        let t = external_tensor(&SnRep::trivial(&q, 2), &SnRep::trivial(&q, 3)).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.generator(1).is_none());
        assert_eq!(*t.generator(0).unwrap(), Matrix::identity(&q, 1));

        let s = external_tensor(&SnRep::sign(&q, 2), &SnRep::sign(&q, 1)).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(*s.generator(0).unwrap(), Matrix::from_i64(&q, &[&[-1]]));
        assert!(s.generator(1).is_none());
        assert!(s.generator(2).is_none());

        // Kronecker oracle: reg_2 ⊠ sgn_2 acts by swap ⊗ 1 and 1 ⊗ (-1).
        let r = external_tensor(&SnRep::regular(&q, 2), &SnRep::sign(&q, 2)).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(*r.generator(0).unwrap(), Matrix::from_i64(&q, &[&[0, 1], &[1, 0]]));
        assert_eq!(*r.generator(2).unwrap(), Matrix::from_i64(&q, &[&[-1, 0], &[0, -1]]));
        let lg = r.generator(0).unwrap();
        let rg = r.generator(2).unwrap();
        assert_eq!(lg.mul(rg).unwrap(), rg.mul(lg).unwrap());
    }

    #[test]
    fn induction_small_cases() {
        let q = Rationals;
        // Coset enumeration oracle: S_2 / (S_1 × S_1) has two cosets
        // swapped by s_1, giving the regular representation.
        let y = external_tensor(&SnRep::trivial(&q, 1), &SnRep::trivial(&q, 1)).unwrap();
        let ind = induce_young(&y).unwrap();
        assert_eq!(ind.dim(), 2);
        assert_eq!(*ind.gen(0), Matrix::from_i64(&q, &[&[0, 1], &[1, 0]]));
        assert_eq!(ind, SnRep::regular(&q, 2));

        let u = SnRep::natural(&q, 2);
        let y = external_tensor(&u, &SnRep::trivial(&q, 0)).unwrap();
        assert_eq!(induce_young(&y).unwrap(), u);

        // Ind_{S_1}^{S_2} sgn_1 is k[S_2].
        let y = external_tensor(&SnRep::trivial(&q, 0), &SnRep::sign(&q, 1)).unwrap();
        let y2 = external_tensor(&SnRep::sign(&q, 1), &SnRep::trivial(&q, 1)).unwrap();
        assert_eq!(induce_young(&y).unwrap().dim(), 1);
        assert_eq!(induce_young(&y2).unwrap(), SnRep::regular(&q, 2));
    }

    #[test]
    fn induction_dimensions_and_relations() {
        let f = PrimeField::new(3).unwrap();
        for (a, b) in [(1, 2), (2, 2), (3, 1), (0, 3), (2, 3)] {
            for (ku, kw) in [(BasicKind::Sign, BasicKind::Natural), (BasicKind::Regular, BasicKind::Sign)] {
                let u = SnRep::basic(ku, &f, a);
                let w = SnRep::basic(kw, &f, b);
                let ind = induce_young(&external_tensor(&u, &w).unwrap()).unwrap();
                assert_eq!(ind.dim(), binomial(a + b, a) * u.dim() * w.dim());
                ind.validate().unwrap();
                let by_right = induce_young_ordered(&external_tensor(&u, &w).unwrap(), ShuffleOrder::ByRight).unwrap();
                by_right.validate().unwrap();
            }
        }
    }

    #[test]
    fn frobenius_character_identity() {
        // The character of an induced representation at g counts fixed
        // cosets weighted by the inner character:
        // chi(g) = sum over cosets c with g c = c of chi_inner(c^-1 g c).
        let q = Rationals;
        let u = SnRep::natural(&q, 2);
        let w = SnRep::sign(&q, 2);
        let y = external_tensor(&u, &w).unwrap();
        let ind = induce_young(&y).unwrap();
        let trace = |m: &Matrix<Rationals>| (0..m.rows()).fold(q.zero(), |acc, i| q.add(&acc, m.get(i, i)));
        for g in Permutation::all(4) {
            let lhs = trace(&ind.action(&g).unwrap());
            let mut rhs = q.zero();
            for s in subsets_lex(4, 2) {
                let image: Subset = (0..4).filter(|&x| s & (1 << x) != 0).map(|x| 1u64 << g.apply(x)).sum();
                if image != s {
                    continue;
                }
                // Inner element: g restricted to s (left) and complement (right),
                // read in the order-preserving coordinates.
                let left: Vec<usize> = (0..4).filter(|&x| s & (1 << x) != 0).collect();
                let right: Vec<usize> = (0..4).filter(|&x| s & (1 << x) == 0).collect();
                let hl = Permutation::from_images(left.iter().map(|&x| left.iter().position(|&y| y == g.apply(x)).unwrap()).collect()).unwrap();
                let hr = Permutation::from_images(right.iter().map(|&x| right.iter().position(|&y| y == g.apply(x)).unwrap()).collect()).unwrap();
                let chi = q.mul(&trace(&u.action(&hl).unwrap()), &trace(&w.action(&hr).unwrap()));
                rhs = q.add(&rhs, &chi);
            }
            assert_eq!(lhs, rhs, "character mismatch at {g}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(subsets_lex(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(rank_in(0b1011, 3), 2);
    }
}

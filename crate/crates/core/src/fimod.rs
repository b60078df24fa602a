//! FI-modules in a finite degree window, presented as modules over
//! `A = k[t]`: a representation of `S_n` in each degree `0..=window` and the
//! step maps `φ_n : M_n -> M_{n+1}` (multiplication by `t`), where `S_n`
//! sits in `S_{n+1}` fixing the last point.
//!
//! `valid_through` records the largest degree in which the pieces are
//! trusted; degrees above it exist only as scaffolding for computations
//! that need them and every report derived from them is flagged.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subquotient};
use crate::perm::Permutation;
use crate::rep::{external_tensor, induce_young, ShuffleBasis, ShuffleOrder, SnRep, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FIModule<F: Field> {
    field: F,
    pieces: Vec<SnRep<F>>,
    /// `steps[n]` is `dim M_{n+1} x dim M_n`.
    steps: Vec<Matrix<F>>,
    valid_through: usize,
}

/// Maximum degree of a graded object, with window provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaxDeg {
    NegInf,
    Finite(usize),
    /// Nonzero through the window end and not certifiably infinite.
    AtLeast(usize),
    PosInf,
}

impl<F: Field> FIModule<F> {
    /// Validated constructor; see [`FIModule::validate`].
    pub fn new(field: &F, pieces: Vec<SnRep<F>>, steps: Vec<Matrix<F>>, valid_through: usize) -> Result<Self> {
        let m = FIModule { field: field.clone(), pieces, steps, valid_through };
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes, equivariance of each step, and that two consecutive
    /// steps are invariant under swapping the two new points.
    pub fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return Err(Error::InvariantViolation("an FI-module needs degree 0".into()));
        }
        let window = self.window();
        if self.steps.len() != window {
            return Err(Error::DimensionMismatch { context: "number of step maps", expected: window, found: self.steps.len() });
        }
        if self.valid_through > window {
            return Err(Error::InvariantViolation(format!(
                "valid_through {} exceeds window {window}",
                self.valid_through
            )));
        }
        for (n, p) in self.pieces.iter().enumerate() {
            if p.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: p.degree() });
            }
            if p.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
        }
        for (n, phi) in self.steps.iter().enumerate() {
            let (src, dst) = (&self.pieces[n], &self.pieces[n + 1]);
            if phi.rows() != dst.dim() || phi.cols() != src.dim() {
                return Err(Error::DimensionMismatch { context: "step map shape", expected: dst.dim(), found: phi.rows() });
            }
            for i in 0..n.saturating_sub(1) {
                if phi.mul(src.gen(i))? != dst.gen(i).mul(phi)? {
                    return Err(Error::NotEquivariant(format!("step {n} does not commute with s_{}", i + 1)));
                }
            }
        }
        for n in 0..window.saturating_sub(1) {
            let two = self.steps[n + 1].mul(&self.steps[n])?;
            if self.pieces[n + 2].gen(n).mul(&two)? != two {
                return Err(Error::InvariantViolation(format!(
                    "the two points added after degree {n} do not commute"
                )));
            }
        }
        Ok(())
    }

    pub fn zero(field: &F, window: usize) -> Self {
        FIModule {
            field: field.clone(),
            pieces: (0..=window).map(|n| SnRep::zero(field, n)).collect(),
            steps: (0..window).map(|_| Matrix::zero(field, 0, 0)).collect(),
            valid_through: window,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn window(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn valid_through(&self) -> usize {
        self.valid_through
    }

    /// Same module with validity lowered to `vt` (never raised).
    pub fn with_valid_through(mut self, vt: usize) -> Self {
        self.valid_through = self.valid_through.min(vt);
        self
    }

    pub fn piece(&self, n: usize) -> &SnRep<F> {
        &self.pieces[n]
    }

    pub fn pieces(&self) -> &[SnRep<F>] {
        &self.pieces
    }

    pub fn step(&self, n: usize) -> &Matrix<F> {
        &self.steps[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(SnRep::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(SnRep::is_zero)
    }

    /// Composite of the step maps from degree `from` to degree `to`.
    pub fn step_power(&self, from: usize, to: usize) -> Result<Matrix<F>> {
        let mut m = Matrix::identity(&self.field, self.pieces[from].dim());
        for n in from..to {
            m = self.steps[n].mul(&m)?;
        }
        Ok(m)
    }

    /// Same data restricted to degrees `0..=window`.
    pub fn restrict_window(&self, window: usize) -> Self {
        let window = window.min(self.window());
        FIModule {
            field: self.field.clone(),
            pieces: self.pieces[..=window].to_vec(),
            steps: self.steps[..window].to_vec(),
            valid_through: self.valid_through.min(window),
        }
    }

    /// Direct sum; the window and validity are the smaller of the two.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let window = self.window().min(other.window());
        let pieces = (0..=window)
            .map(|n| self.pieces[n].direct_sum(&other.pieces[n]))
            .collect::<Result<_>>()?;
        let steps = (0..window)
            .map(|n| self.steps[n].direct_sum(&other.steps[n]))
            .collect::<Result<_>>()?;
        Ok(FIModule {
            field: self.field.clone(),
            pieces,
            steps,
            valid_through: self.valid_through.min(other.valid_through).min(window),
        })
    }
}

/// The shuffle permutation of the coset named `s`: sends `0..a` to the
/// elements of `s` in order and `a..n` to the complement in order.
pub fn shuffle_permutation(n: usize, s: Subset) -> Permutation {
    let mut images: Vec<usize> = (0..n).filter(|&x| s & (1 << x) != 0).collect();
    images.extend((0..n).filter(|&x| s & (1 << x) == 0));
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Apply the matrix of `p` in `rep` to the columns of `v`.
pub fn apply_permutation<F: Field>(rep: &SnRep<F>, p: &Permutation, v: &Matrix<F>) -> Result<Matrix<F>> {
    let mut out = v.clone();
    for &i in p.factor_adjacent().iter().rev() {
        out = rep.gen(i).mul(&out)?;
    }
    Ok(out)
}

/// The induced module `I(V)` of a representation `V` of `S_d`:
/// `I(V)_n = Ind_{S_d × S_{n-d}}^{S_n} (V ⊠ triv)`, basis `(S, v)` with `S`
/// the image of `{0..d}`; steps include `S ⊂ [n]` into `[n+1]`.
pub fn fi_induced<F: Field>(v: &SnRep<F>, window: usize) -> Result<FIModule<F>> {
    let f = v.field();
    let d = v.degree();
    let mut pieces = Vec::with_capacity(window + 1);
    let mut bases = Vec::with_capacity(window + 1);
    for n in 0..=window {
        if n < d {
            pieces.push(SnRep::zero(f, n));
            bases.push(None);
        } else {
            pieces.push(induce_young(&external_tensor(v, &SnRep::trivial(f, n - d))?)?);
            bases.push(Some(ShuffleBasis::new(d, n - d, ShuffleOrder::ByLeft)));
        }
    }
    let vd = v.dim();
    let mut steps = Vec::with_capacity(window);
    for n in 0..window {
        let mut phi = Matrix::zero(f, pieces[n + 1].dim(), pieces[n].dim());
        if let (Some(src), Some(dst)) = (&bases[n], &bases[n + 1]) {
            for (col, &s) in src.left_subsets().iter().enumerate() {
                let row = dst.index_of(s);
                for k in 0..vd {
                    phi.set(row * vd + k, col * vd + k, f.one());
                }
            }
        }
        steps.push(phi);
    }
    FIModule::new(f, pieces, steps, window)
}

/// The module `A` itself: `k` in every degree, steps the identity.
pub fn fi_constant<F: Field>(field: &F, window: usize) -> Result<FIModule<F>> {
    fi_induced(&SnRep::trivial(field, 0), window)
}

/// `V` placed in degree `d`, zero elsewhere: an `A/A_+`-module.
pub fn fi_torsion_concentrated<F: Field>(v: &SnRep<F>, window: usize) -> Result<FIModule<F>> {
    let f = v.field();
    let d = v.degree();
    if d > window {
        return Err(Error::WindowExhausted { needed: d, available: window });
    }
    let pieces: Vec<SnRep<F>> = (0..=window)
        .map(|n| if n == d { v.clone() } else { SnRep::zero(f, n) })
        .collect();
    let steps = (0..window)
        .map(|n| Matrix::zero(f, pieces[n + 1].dim(), pieces[n].dim()))
        .collect();
    FIModule::new(f, pieces, steps, window)
}

/// Matrix of the permutation of `S_{m+1}` moving point `m` to point `r`
/// and shifting `r..m` up by one: `s_r ∘ s_{r+1} ∘ .. ∘ s_{m-1}`.
pub fn insert_point_matrix<F: Field>(rep: &SnRep<F>, r: usize) -> Result<Matrix<F>> {
    let m = rep.degree() - 1;
    let mut out = Matrix::identity(rep.field(), rep.dim());
    for i in r..m {
        out = out.mul(rep.gen(i))?;
    }
    Ok(out)
}

/// The shift `(Σ_a M)(S) = M(S ⊔ [a])`: degree `n` is `M_{n+a}` restricted
/// to `S_n` on the first `n` points, and the new point of each step is
/// inserted before the `a` shifted points.
pub fn fi_shift<F: Field>(m: &FIModule<F>, a: usize) -> Result<FIModule<F>> {
    if a > m.valid_through() {
        return Err(Error::WindowExhausted { needed: a, available: m.valid_through() });
    }
    if a == 0 {
        return Ok(m.clone());
    }
    let window = m.window() - a;
    let pieces = (0..=window)
        .map(|n| m.piece(n + a).restrict(n))
        .collect::<Result<Vec<_>>>()?;
    let steps = (0..window)
        .map(|n| insert_point_matrix(m.piece(n + a + 1), n)?.mul(m.step(n + a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FIModule { field: m.field.clone(), pieces, steps, valid_through: m.valid_through() - a })
}

/// The natural map `M -> Σ_a M`, `M_n -> M_{n+a}` by `a` steps.
pub fn shift_map<F: Field>(m: &FIModule<F>, a: usize) -> Result<FIMorphism<F>> {
    let target = fi_shift(m, a)?;
    let maps = (0..=target.window())
        .map(|n| m.step_power(n, n + a))
        .collect::<Result<Vec<_>>>()?;
    FIMorphism::new(&m.restrict_window(target.window()), &target, maps)
}

/// Truncation `M^{≤c}` and the quotient map `M -> M^{≤c}`.
pub fn fi_truncate<F: Field>(m: &FIModule<F>, c: usize) -> Result<(FIModule<F>, FIMorphism<F>)> {
    let f = m.field();
    let pieces: Vec<SnRep<F>> = (0..=m.window())
        .map(|n| if n <= c { m.piece(n).clone() } else { SnRep::zero(f, n) })
        .collect();
    let steps = (0..m.window())
        .map(|n| {
            if n < c {
                m.step(n).clone()
            } else {
                Matrix::zero(f, pieces[n + 1].dim(), pieces[n].dim())
            }
        })
        .collect();
    // Everything above c is exactly zero, so certification only depends on
    // the degrees kept.
    let vt = if c <= m.valid_through() { m.window() } else { m.valid_through() };
    let t = FIModule::new(f, pieces, steps, vt)?;
    let maps = (0..=m.window())
        .map(|n| {
            if n <= c {
                Matrix::identity(f, m.piece(n).dim())
            } else {
                Matrix::zero(f, 0, m.piece(n).dim())
            }
        })
        .collect();
    let q = FIMorphism::new(m, &t, maps)?;
    Ok((t, q))
}

/// Natural transformation between FI-modules, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FIMorphism<F: Field> {
    source: FIModule<F>,
    target: FIModule<F>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> FIMorphism<F> {
    /// Validated: equivariant in each degree and commuting with the steps.
    /// Source and target are cut to the common window.
    pub fn new(source: &FIModule<F>, target: &FIModule<F>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let window = source.window().min(target.window());
        if maps.len() < window + 1 {
            return Err(Error::DimensionMismatch { context: "morphism degrees", expected: window + 1, found: maps.len() });
        }
        let mut maps = maps;
        maps.truncate(window + 1);
        let f = FIMorphism {
            source: source.restrict_window(window),
            target: target.restrict_window(window),
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (n, m) in self.maps.iter().enumerate() {
            let (s, t) = (self.source.piece(n), self.target.piece(n));
            if m.rows() != t.dim() || m.cols() != s.dim() {
                return Err(Error::DimensionMismatch { context: "morphism shape", expected: t.dim(), found: m.rows() });
            }
            if !s.is_equivariant_map(t, m)? {
                return Err(Error::NotEquivariant(format!("degree {n} component")));
            }
        }
        for n in 0..self.window() {
            let lhs = self.target.step(n).mul(&self.maps[n])?;
            let rhs = self.maps[n + 1].mul(self.source.step(n))?;
            if lhs != rhs {
                return Err(Error::NotEquivariant(format!("does not commute with the step from degree {n}")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &FIModule<F>) -> Self {
        let maps = m.pieces().iter().map(|p| Matrix::identity(m.field(), p.dim())).collect();
        FIMorphism { source: m.clone(), target: m.clone(), maps }
    }

    pub fn zero(source: &FIModule<F>, target: &FIModule<F>) -> Result<Self> {
        let window = source.window().min(target.window());
        let maps = (0..=window)
            .map(|n| Matrix::zero(source.field(), target.piece(n).dim(), source.piece(n).dim()))
            .collect();
        Self::new(source, target, maps)
    }

    pub fn source(&self) -> &FIModule<F> {
        &self.source
    }

    pub fn target(&self) -> &FIModule<F> {
        &self.target
    }

    pub fn map(&self, n: usize) -> &Matrix<F> {
        &self.maps[n]
    }

    pub fn window(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn valid_through(&self) -> usize {
        self.source.valid_through().min(self.target.valid_through())
    }

    /// Same morphism restricted to degrees `0..=window`.
    pub fn restrict_window(&self, window: usize) -> Self {
        let window = window.min(self.window());
        FIMorphism {
            source: self.source.restrict_window(window),
            target: self.target.restrict_window(window),
            maps: self.maps[..=window].to_vec(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        let window = self.window().min(other.window());
        let maps = (0..=window)
            .map(|n| other.maps[n].mul(&self.maps[n]))
            .collect::<Result<_>>()?;
        Self::new(&self.source, &other.target, maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// `Σ_a f : Σ_a M -> Σ_a N`.
    pub fn shift(&self, a: usize) -> Result<Self> {
        let s = fi_shift(&self.source, a)?;
        let t = fi_shift(&self.target, a)?;
        let maps = (0..=s.window().min(t.window())).map(|n| self.maps[n + a].clone()).collect();
        Self::new(&s, &t, maps)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let window = source.window().min(target.window());
        let maps = (0..=window)
            .map(|n| self.maps[n].direct_sum(&other.maps[n]))
            .collect::<Result<_>>()?;
        Self::new(&source, &target, maps)
    }
}

/// Submodule-of-quotient `sub_n / killed_n` in each degree, given by basis
/// matrices of stable subspaces. Returns the module and, per degree, the
/// subquotient data used to build it.
pub fn subquotient_module<F: Field>(
    m: &FIModule<F>,
    sub: &[Matrix<F>],
    killed: &[Matrix<F>],
    valid_through: usize,
) -> Result<(FIModule<F>, Vec<Subquotient<F>>)> {
    let f = m.field();
    let window = m.window();
    let sqs = (0..=window)
        .map(|n| Subquotient::new(&sub[n], &killed[n]))
        .collect::<Result<Vec<_>>>()?;
    let mut pieces = Vec::with_capacity(window + 1);
    for (n, sq) in sqs.iter().enumerate() {
        let gens = m
            .piece(n)
            .gens()
            .iter()
            .map(|g| sq.induced(g))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Consistency(format!("induced action in degree {n}: {e}")))?;
        pieces.push(SnRep::new_unchecked(f, n, sq.dim(), gens)?);
    }
    let mut steps = Vec::with_capacity(window);
    for n in 0..window {
        let image = m.step(n).mul(&sqs[n].representatives())?;
        steps.push(
            sqs[n + 1]
                .project(&image)
                .map_err(|e| Error::Consistency(format!("induced step from degree {n}: {e}")))?,
        );
    }
    let out = FIModule::new(f, pieces, steps, valid_through)
        .map_err(|e| Error::Consistency(format!("subquotient module: {e}")))?;
    Ok((out, sqs))
}

fn zero_columns<F: Field>(field: &F, rows: usize) -> Matrix<F> {
    Matrix::zero(field, rows, 0)
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel<F: Field>(f: &FIMorphism<F>) -> Result<(FIModule<F>, FIMorphism<F>)> {
    let src = f.source();
    let field = src.field();
    let sub: Vec<_> = (0..=f.window()).map(|n| f.map(n).kernel_basis()).collect();
    let killed: Vec<_> = (0..=f.window()).map(|n| zero_columns(field, src.piece(n).dim())).collect();
    let (k, sqs) = subquotient_module(src, &sub, &killed, f.valid_through())?;
    let maps = sqs.iter().map(Subquotient::representatives).collect();
    let inc = FIMorphism::new(&k, src, maps)?;
    Ok((k, inc))
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel<F: Field>(f: &FIMorphism<F>) -> Result<(FIModule<F>, FIMorphism<F>)> {
    let tgt = f.target();
    let field = tgt.field();
    let sub: Vec<_> = (0..=f.window()).map(|n| Matrix::identity(field, tgt.piece(n).dim())).collect();
    let killed: Vec<_> = (0..=f.window()).map(|n| f.map(n).column_space_basis()).collect();
    let (c, sqs) = subquotient_module(tgt, &sub, &killed, f.valid_through())?;
    let maps = (0..=f.window())
        .map(|n| sqs[n].project(&Matrix::identity(field, tgt.piece(n).dim())))
        .collect::<Result<Vec<_>>>()?;
    let proj = FIMorphism::new(tgt, &c, maps)?;
    Ok((c, proj))
}

/// Image of `f` with its inclusion into the target.
pub fn image<F: Field>(f: &FIMorphism<F>) -> Result<(FIModule<F>, FIMorphism<F>)> {
    let tgt = f.target();
    let field = tgt.field();
    let sub: Vec<_> = (0..=f.window()).map(|n| f.map(n).column_space_basis()).collect();
    let killed: Vec<_> = (0..=f.window()).map(|n| zero_columns(field, tgt.piece(n).dim())).collect();
    let (im, sqs) = subquotient_module(tgt, &sub, &killed, f.valid_through())?;
    let maps = sqs.iter().map(Subquotient::representatives).collect();
    let inc = FIMorphism::new(&im, tgt, maps)?;
    Ok((im, inc))
}

/// The unique morphism `I(V) -> target` restricting to `f0` in degree `d`:
/// `(S, v) ↦ g_S · φ^{n-d}(f0 v)` with `g_S` the shuffle permutation.
pub fn induced_morphism<F: Field>(
    v: &SnRep<F>,
    target: &FIModule<F>,
    f0: &Matrix<F>,
) -> Result<FIMorphism<F>> {
    let d = v.degree();
    if d > target.window() {
        return Err(Error::WindowExhausted { needed: d, available: target.window() });
    }
    if !v.is_equivariant_map(target.piece(d), f0)? {
        return Err(Error::NotEquivariant(format!("f0 is not S_{d}-equivariant")));
    }
    let source = fi_induced(v, target.window())?.with_valid_through(target.valid_through());
    let field = v.field();
    let vd = v.dim();
    let mut maps = Vec::with_capacity(target.window() + 1);
    for n in 0..=target.window() {
        let tp = target.piece(n);
        let mut m = Matrix::zero(field, tp.dim(), source.piece(n).dim());
        if n >= d {
            let base = target.step_power(d, n)?.mul(f0)?;
            let basis = ShuffleBasis::new(d, n - d, ShuffleOrder::ByLeft);
            for (idx, &s) in basis.left_subsets().iter().enumerate() {
                let block = apply_permutation(tp, &shuffle_permutation(n, s), &base)?;
                m.paste(0, idx * vd, &block);
            }
        }
        maps.push(m);
    }
    FIMorphism::new(&source, target, maps)
}

/// The maximal torsion submodule, computed as the kernel of the composite
/// step map to the last trusted degree.
#[derive(Clone, Debug)]
pub struct Torsion<F: Field> {
    pub module: FIModule<F>,
    pub inclusion: FIMorphism<F>,
    /// Per degree `0..=valid_through`: whether the kernel chain had
    /// stabilized, so that survivors are certified non-torsion.
    pub certified: Vec<bool>,
}

pub fn torsion_submodule<F: Field>(m: &FIModule<F>) -> Result<Torsion<F>> {
    let vt = m.valid_through();
    let field = m.field();
    let mut sub = Vec::with_capacity(m.window() + 1);
    let mut certified = Vec::with_capacity(vt + 1);
    for n in 0..=m.window() {
        if n <= vt {
            let full = m.step_power(n, vt)?;
            let k = full.kernel_basis();
            // Stabilized when one fewer step already kills the same space.
            let stable = n < vt && m.step_power(n, vt - 1)?.kernel_basis().cols() == k.cols();
            certified.push(stable);
            sub.push(k);
        } else {
            // Untrusted degrees: keep whatever the last trusted kernel maps into.
            let prev: &Matrix<F> = &sub[n - 1];
            let img = m.step(n - 1).mul(prev)?.column_space_basis();
            sub.push(img);
        }
    }
    let killed: Vec<_> = (0..=m.window()).map(|n| zero_columns(field, m.piece(n).dim())).collect();
    let (t, sqs) = subquotient_module(m, &sub, &killed, vt)?;
    let maps = sqs.iter().map(Subquotient::representatives).collect();
    let inclusion = FIMorphism::new(&t, m, maps)?;
    Ok(Torsion { module: t, inclusion, certified })
}

/// Dimensions of `Tor_0(M)_n` for `n <= window` from the definition:
/// `M_n` modulo the span of the images of `M_{n-1}` under the `n` ways of
/// adding a point, `σ φ_{n-1}` for `σ` the transpositions `(j, n-1)`.
pub fn generation_degrees<F: Field>(m: &FIModule<F>) -> Result<Vec<usize>> {
    let mut dims = Vec::with_capacity(m.window() + 1);
    for n in 0..=m.window() {
        let dn = m.piece(n).dim();
        if n == 0 {
            dims.push(dn);
            continue;
        }
        let phi = m.step(n - 1);
        let mut span = Matrix::zero(m.field(), dn, 0);
        for j in 0..n {
            let img = if j + 1 == n {
                phi.clone()
            } else {
                m.piece(n).action(&Permutation::transposition(n, j, n - 1))?.mul(phi)?
            };
            span = span.hstack(&img)?;
        }
        dims.push(dn - span.rank());
    }
    Ok(dims)
}

/// Largest generation degree within the window, `None` if `M` has no
/// generators there.
pub fn max_generator_degree<F: Field>(m: &FIModule<F>) -> Result<Option<usize>> {
    Ok(generation_degrees(m)?.iter().rposition(|&d| d > 0))
}

/// Maximum nonzero degree. `PosInf` needs the last two steps of the window
/// to be isomorphisms with the top piece nonzero; otherwise a module that
/// is nonzero at the window end reports `AtLeast`.
pub fn maxdeg<F: Field>(m: &FIModule<F>) -> MaxDeg {
    let vt = m.valid_through();
    let Some(top) = (0..=vt).rev().find(|&n| !m.piece(n).is_zero()) else {
        return MaxDeg::NegInf;
    };
    if top < vt {
        return MaxDeg::Finite(top);
    }
    let iso = |n: usize| {
        let s = m.step(n);
        s.is_square() && s.rank() == s.rows()
    };
    if vt >= 2 && iso(vt - 1) && iso(vt - 2) {
        MaxDeg::PosInf
    } else {
        MaxDeg::AtLeast(vt)
    }
}

/// Maximum nonzero degree of a dimension vector, `None` if all vanish.
pub fn top_nonzero(dims: &[usize]) -> Option<usize> {
    dims.iter().rposition(|&d| d > 0)
}

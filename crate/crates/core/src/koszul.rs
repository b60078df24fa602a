//! The Koszul complex computing `Tor_•(M)` degreewise.
//!
//! In internal degree `n` the term of homological degree `i` is
//! `Ind_{S_{n-i} × S_i}^{S_n}(M_{n-i} ⊠ sgn_i)` with basis `(C, x)`: `C` the
//! set of points carrying the module factor, the complement `B` carrying the
//! sign, cosets ordered lexicographically by `B`. The differential moves the
//! `j`-th element of `B` into `C` through `φ` with sign `(-1)^{j-1}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::complex::FIComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fimod::{generation_degrees, insert_point_matrix, FIModule};
use crate::linalg::{Matrix, Subquotient};
use crate::rep::{external_tensor, induce_young_ordered, rank_in, ShuffleBasis, ShuffleOrder, SnRep};

/// One degree of the Koszul complex of an FI-module, truncated at
/// homological degree `top`.
#[derive(Clone, Debug)]
pub struct KoszulStrand<F: Field> {
    degree: usize,
    dims: Vec<usize>,
    /// `diffs[i - 1]` is `d_i : K_i -> K_{i-1}`.
    diffs: Vec<Matrix<F>>,
}

fn strand_basis(n: usize, i: usize) -> ShuffleBasis {
    ShuffleBasis::new(n - i, i, ShuffleOrder::ByRight)
}

/// `d_i : K_i -> K_{i-1}` in internal degree `n`.
pub fn koszul_differential<F: Field>(m: &FIModule<F>, n: usize, i: usize) -> Result<Matrix<F>> {
    let f = m.field();
    let k = n - i;
    let (src, dst) = (strand_basis(n, i), strand_basis(n, i - 1));
    let (ds, dt) = (m.piece(k).dim(), m.piece(k + 1).dim());
    let mut d = Matrix::zero(f, dst.len() * dt, src.len() * ds);
    if ds == 0 || dt == 0 {
        return Ok(d);
    }
    let phi = m.step(k);
    let blocks = (0..=k)
        .map(|r| insert_point_matrix(m.piece(k + 1), r)?.mul(phi))
        .collect::<Result<Vec<_>>>()?;
    let neg = f.from_i64(-1);
    let neg_blocks: Vec<_> = blocks.iter().map(|b| b.scale(&neg)).collect();
    let full = src.full_set();
    for (col, &c) in src.left_subsets().iter().enumerate() {
        let sign_block = full & !c;
        for (j, b) in (0..n).filter(|&x| sign_block & (1 << x) != 0).enumerate() {
            let r = rank_in(c, b);
            let row = dst.index_of(c | (1 << b));
            let block = if j % 2 == 0 { &blocks[r] } else { &neg_blocks[r] };
            d.paste(row * dt, col * ds, block);
        }
    }
    Ok(d)
}

/// The strand in degree `n` with terms `0..=min(n, top)`; `d² = 0` is
/// checked for every pair of consecutive differentials built.
pub fn koszul_strand_upto<F: Field>(m: &FIModule<F>, n: usize, top: usize) -> Result<KoszulStrand<F>> {
    if n > m.window() {
        return Err(Error::WindowExhausted { needed: n, available: m.window() });
    }
    let top = top.min(n);
    let dims = (0..=top).map(|i| strand_basis(n, i).len() * m.piece(n - i).dim()).collect();
    let diffs = (1..=top)
        .map(|i| koszul_differential(m, n, i))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..diffs.len() {
        if !diffs[i - 1].mul(&diffs[i])?.is_zero() {
            return Err(Error::Consistency(format!("Koszul d² ≠ 0 at degree {n}, position {i}")));
        }
    }
    Ok(KoszulStrand { degree: n, dims, diffs })
}

pub fn koszul_strand<F: Field>(m: &FIModule<F>, n: usize) -> Result<KoszulStrand<F>> {
    koszul_strand_upto(m, n, n)
}

impl<F: Field> KoszulStrand<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimensions of the terms `K_0, K_1, ..`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, i: usize) -> &Matrix<F> {
        &self.diffs[i - 1]
    }

    /// Homology dimensions at `0..=top - 1`, plus at `top` when the strand
    /// is complete (`top = n`).
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(Matrix::rank).collect();
        let top = self.dims.len() - 1;
        let complete = top == self.degree;
        let last = if complete { top } else { top.saturating_sub(1) };
        (0..=last)
            .filter(|&i| complete || i < top)
            .map(|i| {
                let out = if i == 0 { 0 } else { ranks[i - 1] };
                let inc = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - out - inc
            })
            .collect()
    }
}

/// `K_i` in internal degree `n` as an `S_n`-representation.
pub fn strand_term_rep<F: Field>(m: &FIModule<F>, n: usize, i: usize) -> Result<SnRep<F>> {
    let y = external_tensor(m.piece(n - i), &SnRep::sign(m.field(), i))?;
    induce_young_ordered(&y, ShuffleOrder::ByRight)
}

/// One entry of a Tor table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorCell {
    pub dim: usize,
    pub certified: bool,
}

/// `dim Tor_i(M)_n` for `i <= i_max` and every `n` in the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub i_max: usize,
    pub window: usize,
    pub valid_through: usize,
    cells: BTreeMap<(usize, usize), TorCell>,
}

impl TorTable {
    pub fn cell(&self, i: usize, n: usize) -> Option<TorCell> {
        self.cells.get(&(i, n)).copied()
    }

    pub fn dim(&self, i: usize, n: usize) -> usize {
        self.cell(i, n).map_or(0, |c| c.dim)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &TorCell)> {
        self.cells.iter()
    }

    /// Row `i` over degrees `0..=window`.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (0..=self.window).map(|n| self.dim(i, n)).collect()
    }

    /// `t_i`: the largest certified degree with `Tor_i ≠ 0`, `None` for -∞.
    pub fn t(&self, i: usize) -> Option<usize> {
        (0..=self.valid_through.min(self.window)).rev().find(|&n| {
            self.cell(i, n).is_some_and(|c| c.certified && c.dim > 0)
        })
    }

    /// Whether some certified cell of row `i` with `i >= 1` is nonzero.
    pub fn has_higher_tor(&self) -> bool {
        (1..=self.i_max).any(|i| self.t(i).is_some())
    }

    pub fn regularity(&self) -> RegularityReport {
        let mut reg: Option<i64> = None;
        let mut witnesses = Vec::new();
        for i in 0..=self.i_max {
            if let Some(t) = self.t(i) {
                let v = t as i64 - i as i64;
                match reg {
                    Some(r) if r > v => {}
                    Some(r) if r == v => witnesses.push((i, t)),
                    _ => {
                        reg = Some(v);
                        witnesses = alloc::vec![(i, t)];
                    }
                }
            }
        }
        RegularityReport { reg, witnesses }
    }
}

/// `reg(M) = max_i (t_i - i)` over certified rows, `None` for -∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub reg: Option<i64>,
    /// `(i, t_i)` attaining the maximum.
    pub witnesses: Vec<(usize, usize)>,
}

/// Default number of Tor rows: the window minus the lowest generator degree.
pub fn default_i_max<F: Field>(m: &FIModule<F>) -> Result<usize> {
    let low = generation_degrees(m)?.iter().position(|&d| d > 0).unwrap_or(0);
    Ok(m.window() - low)
}

/// Tor table of `M` through row `i_max`; row 0 is checked against the
/// direct computation of the minimal generators.
pub fn tor_table<F: Field>(m: &FIModule<F>, i_max: usize) -> Result<TorTable> {
    let gens = generation_degrees(m)?;
    let mut cells = BTreeMap::new();
    for n in 0..=m.window() {
        let strand = koszul_strand_upto(m, n, i_max + 1)?;
        let certified = n <= m.valid_through();
        for (i, dim) in strand.homology_dims().into_iter().enumerate().take(i_max + 1) {
            cells.insert((i, n), TorCell { dim, certified });
        }
        if cells[&(0, n)].dim != gens[n] {
            return Err(Error::Consistency(format!(
                "Tor_0 in degree {n} is {} but the generator count is {}",
                cells[&(0, n)].dim,
                gens[n]
            )));
        }
    }
    Ok(TorTable { i_max, window: m.window(), valid_through: m.valid_through(), cells })
}

/// `Tor_i(M)_n` as an `S_n`-representation.
pub fn tor_piece<F: Field>(m: &FIModule<F>, i: usize, n: usize) -> Result<SnRep<F>> {
    if i > n {
        return Ok(SnRep::zero(m.field(), n));
    }
    let rep = strand_term_rep(m, n, i)?;
    let f = m.field();
    let cycles = if i == 0 {
        Matrix::identity(f, rep.dim())
    } else {
        koszul_differential(m, n, i)?.kernel_basis()
    };
    let bounds = if i < n {
        koszul_differential(m, n, i + 1)?.column_space_basis()
    } else {
        Matrix::zero(f, rep.dim(), 0)
    };
    subquotient_rep(&rep, &cycles, &bounds)
}

fn subquotient_rep<F: Field>(rep: &SnRep<F>, sub: &Matrix<F>, killed: &Matrix<F>) -> Result<SnRep<F>> {
    let sq = Subquotient::new(sub, killed)?;
    let gens = rep
        .gens()
        .iter()
        .map(|g| sq.induced(g))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Consistency(format!("action on homology: {e}")))?;
    rep.with_gens(sq.dim(), gens)
}

/// Hyper-Tor of a bounded complex: `Tor_n(C)_m = H^{-n}` of the total
/// complex of the Koszul strands, whose term in total degree `j - i` is
/// `K_i(C^j)`. Kept apart from [`TorTable`] since `n` may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperTorTable {
    pub window: usize,
    pub valid_through: usize,
    cells: BTreeMap<(i64, usize), TorCell>,
}

impl HyperTorTable {
    pub fn dim(&self, n: i64, m: usize) -> usize {
        self.cells.get(&(n, m)).map_or(0, |c| c.dim)
    }

    pub fn cell(&self, n: i64, m: usize) -> Option<TorCell> {
        self.cells.get(&(n, m)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(i64, usize), &TorCell)> {
        self.cells.iter()
    }

    /// Largest certified internal degree where `Tor_n(C) ≠ 0`.
    pub fn t(&self, n: i64) -> Option<usize> {
        (0..=self.valid_through).rev().find(|&m| self.cell(n, m).is_some_and(|c| c.certified && c.dim > 0))
    }

    /// Range of `n` with a computed cell.
    pub fn n_range(&self) -> Option<(i64, i64)> {
        let lo = self.cells.keys().map(|k| k.0).min()?;
        let hi = self.cells.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }
}

/// Blocks `(j, i)` of total degree `t` in internal degree `m`, in order.
fn total_blocks<F: Field>(c: &FIComplex<F>, t: i64, m: usize) -> Vec<(i64, usize)> {
    let (lo, hi) = c.range();
    (lo..=hi)
        .filter_map(|j| {
            let i = j - t;
            (0..=m as i64).contains(&i).then_some((j, i as usize))
        })
        .collect()
}

fn block_dim<F: Field>(c: &FIComplex<F>, j: i64, i: usize, m: usize) -> usize {
    strand_basis(m, i).len() * c.term(j).expect("in support").piece(m - i).dim()
}

/// Total differential `D : Tot^t -> Tot^{t+1}` in internal degree `m`:
/// the complex differential plus `(-1)^j` times the Koszul differential.
fn total_differential<F: Field>(c: &FIComplex<F>, t: i64, m: usize) -> Result<Matrix<F>> {
    let f = c.field();
    let src = total_blocks(c, t, m);
    let dst = total_blocks(c, t + 1, m);
    let offsets = |blocks: &[(i64, usize)]| {
        let mut acc = 0;
        let mut out = BTreeMap::new();
        for &(j, i) in blocks {
            out.insert((j, i), acc);
            acc += block_dim(c, j, i, m);
        }
        (out, acc)
    };
    let (src_off, src_dim) = offsets(&src);
    let (dst_off, dst_dim) = offsets(&dst);
    let mut d = Matrix::zero(f, dst_dim, src_dim);
    for &(j, i) in &src {
        let col = src_off[&(j, i)];
        if let (Some(diff), Some(&row)) = (c.differential(j), dst_off.get(&(j + 1, i))) {
            let cosets = strand_basis(m, i).len();
            let block = Matrix::identity(f, cosets).kron(diff.map(m - i))?;
            d.paste(row, col, &block);
        }
        if i >= 1 {
            if let Some(&row) = dst_off.get(&(j, i - 1)) {
                let mut block = koszul_differential(c.term(j).expect("in support"), m, i)?;
                if j.rem_euclid(2) == 1 {
                    block = block.scale(&f.from_i64(-1));
                }
                d.paste(row, col, &block);
            }
        }
    }
    Ok(d)
}

pub fn hyper_tor<F: Field>(c: &FIComplex<F>) -> Result<HyperTorTable> {
    let (lo, hi) = c.range();
    hyper_tor_rows(c, -hi, c.window() as i64 - lo)
}

/// Hyper-Tor restricted to `n_lo <= n <= n_hi`.
pub fn hyper_tor_rows<F: Field>(c: &FIComplex<F>, n_lo: i64, n_hi: i64) -> Result<HyperTorTable> {
    let (lo, hi) = c.range();
    let vt = c.valid_through();
    let mut cells = BTreeMap::new();
    for m in 0..=c.window() {
        let t_lo = (lo - m as i64).max(-n_hi);
        let t_hi = hi.min(-n_lo);
        if t_lo > t_hi {
            continue;
        }
        let diffs: BTreeMap<i64, Matrix<F>> = (t_lo - 1..=t_hi)
            .map(|t| Ok((t, total_differential(c, t, m)?)))
            .collect::<Result<_>>()?;
        for t in t_lo..=t_hi {
            if !diffs[&t].mul(&diffs[&(t - 1)])?.is_zero() {
                return Err(Error::Consistency(format!("total differential squares to nonzero at {t}, degree {m}")));
            }
            let dim: usize = total_blocks(c, t, m).iter().map(|&(j, i)| block_dim(c, j, i, m)).sum();
            let h = dim - diffs[&t].rank() - diffs[&(t - 1)].rank();
            cells.insert((-t, m), TorCell { dim: h, certified: m <= vt });
        }
    }
    Ok(HyperTorTable { window: c.window(), valid_through: vt, cells })
}

/// `Tor_n(C)_m` as an `S_m`-representation.
pub fn hyper_tor_piece<F: Field>(c: &FIComplex<F>, n: i64, m: usize) -> Result<SnRep<F>> {
    let f = c.field();
    let t = -n;
    let mut rep = SnRep::zero(f, m);
    for (j, i) in total_blocks(c, t, m) {
        rep = rep.direct_sum(&strand_term_rep(c.term(j).expect("in support"), m, i)?)?;
    }
    let cycles = total_differential(c, t, m)?.kernel_basis();
    let bounds = total_differential(c, t - 1, m)?.column_space_basis();
    subquotient_rep(&rep, &cycles, &bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fimod::{fi_constant, fi_induced, fi_torsion_concentrated, fi_truncate, image, induced_morphism};
    use crate::rep::binomial;

    #[test]
    fn constant_module_strands() {
        let q = Rationals;
        let a = fi_constant(&q, 5).unwrap();
        let s = koszul_strand(&a, 2).unwrap();
        assert_eq!(s.dims(), &[1, 2, 1]);
        for n in 0..=5 {
            let h = koszul_strand(&a, n).unwrap().homology_dims();
            let expect: Vec<usize> = (0..=n).map(|i| usize::from(i == 0 && n == 0)).collect();
            assert_eq!(h, expect, "degree {n}");
        }
    }

    #[test]
    fn residue_field_strand() {
        let q = Rationals;
        let k = fi_torsion_concentrated(&SnRep::trivial(&q, 0), 3).unwrap();
        let s = koszul_strand(&k, 3).unwrap();
        assert_eq!(s.dims(), &[0, 0, 0, 1]);
        assert_eq!(strand_term_rep(&k, 3, 3).unwrap(), SnRep::sign(&q, 3));
        assert!(koszul_strand(&FIModule::zero(&q, 3), 3).unwrap().dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn differentials_are_equivariant() {
        let f = PrimeField::new(7).unwrap();
        let m = fi_induced(&SnRep::natural(&f, 2), 5).unwrap();
        for n in 1..=5 {
            for i in 1..=n {
                let d = koszul_differential(&m, n, i).unwrap();
                let src = strand_term_rep(&m, n, i).unwrap();
                let dst = strand_term_rep(&m, n, i - 1).unwrap();
                assert!(src.is_equivariant_map(&dst, &d).unwrap(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn torsion_module_tor() {
        let q = Rationals;
        let v = SnRep::natural(&q, 2);
        let t = fi_torsion_concentrated(&v, 6).unwrap();
        let table = tor_table(&t, 4).unwrap();
        for i in 0..=4 {
            for n in 0..=6 {
                let expect = if n == 2 + i { binomial(n, 2) * 2 } else { 0 };
                assert_eq!(table.dim(i, n), expect, "({i}, {n})");
            }
        }
        assert_eq!(table.regularity().reg, Some(2));
    }

    #[test]
    fn induced_module_has_no_higher_tor() {
        let q = Rationals;
        let m = fi_induced(&SnRep::sign(&q, 2), 5).unwrap();
        let table = tor_table(&m, 3).unwrap();
        assert_eq!(table.row(0), vec![0, 0, 1, 0, 0, 0]);
        assert!(!table.has_higher_tor());
        assert_eq!(table.regularity().reg, Some(2));
    }

    #[test]
    fn augmentation_ideal() {
        let q = Rationals;
        let a = fi_constant(&q, 5).unwrap();
        let f = induced_morphism(&SnRep::trivial(&q, 1), &a, &Matrix::identity(&q, 1)).unwrap();
        let (ap, _) = image(&f).unwrap();
        let table = tor_table(&ap, 4).unwrap();
        for i in 0..=3 {
            assert_eq!(table.t(i), Some(i + 1));
            assert_eq!(table.dim(i, i + 1), 1);
            assert_eq!(tor_piece(&ap, i, i + 1).unwrap(), SnRep::sign(&q, i + 1));
        }
        let reg = table.regularity();
        assert_eq!(reg.reg, Some(1));
        assert_eq!(reg.witnesses.len(), 5);
    }

    #[test]
    fn zero_module_regularity() {
        let q = Rationals;
        let table = tor_table(&FIModule::zero(&q, 3), 2).unwrap();
        assert_eq!(table.regularity().reg, None);
        assert_eq!(table.t(0), None);
    }

    #[test]
    fn hyper_tor_single_term_matches() {
        let q = Rationals;
        let (t, _) = fi_truncate(&fi_constant(&q, 5).unwrap(), 1).unwrap();
        let table = tor_table(&t, 5).unwrap();
        let h = hyper_tor(&FIComplex::single(&t, 0)).unwrap();
        for i in 0..=5 {
            for n in 0..=5 {
                assert_eq!(h.dim(i as i64, n), table.dim(i, n));
            }
        }
        let shifted = hyper_tor(&FIComplex::single(&t, 2)).unwrap();
        for i in 0..=3 {
            for n in 0..=5 {
                assert_eq!(shifted.dim(i as i64, n), table.dim(i + 2, n));
            }
        }
    }

    #[test]
    fn hyper_tor_of_acyclic_complex_vanishes() {
        let q = Rationals;
        let a = fi_induced(&SnRep::natural(&q, 1), 4).unwrap();
        let c = FIComplex::two_term(&crate::fimod::FIMorphism::identity(&a), 0).unwrap();
        let h = hyper_tor(&c).unwrap();
        assert!(h.cells().all(|(_, c)| c.dim == 0));
    }

    #[test]
    fn hyper_tor_piece_is_representation() {
        let q = Rationals;
        let (t, _) = fi_truncate(&fi_constant(&q, 4).unwrap(), 1).unwrap();
        let c = FIComplex::single(&t, 1);
        let p = hyper_tor_piece(&c, 1, 3).unwrap();
        assert_eq!(p.dim(), tor_piece(&t, 2, 3).unwrap().dim());
        p.validate().unwrap();
    }
}

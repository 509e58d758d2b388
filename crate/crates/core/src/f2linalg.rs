//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors and matrices store one bit per coefficient in `u64` words. Dense
//! matrices are row-major; [`SparseColumns`] holds the large (co)boundary
//! maps column by column and is reduced with [`reduce_pairs`].

use std::fmt;

use thiserror::Error;

const BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(BITS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subquotient requested for W not contained in U")]
    NotNested,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Vector with ones at the given indices; repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, idx: I) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / BITS] >> (i % BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % BITS);
        if b {
            self.words[i / BITS] |= m;
        } else {
            self.words[i / BITS] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / BITS] ^= 1u64 << (i % BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        xor_words(&mut self.words, &other.words);
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch");
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one(&self.words, 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * BITS + b)
            })
        })
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn first_one(words: &[u64], from_word: usize) -> Option<usize> {
    words[from_word..]
        .iter()
        .position(|w| *w != 0)
        .map(|k| (from_word + k) * BITS + words[from_word + k].trailing_zeros() as usize)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / BITS] >> (c % BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / BITS];
        let m = 1u64 << (c % BITS);
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for k in row.ones() {
                let src = other.row_words(k).to_vec();
                xor_words(out.row_words_mut(r), &src);
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&r| self.row(r).dot(v)))
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = BitVector::zeros(self.cols);
        for r in v.ones() {
            xor_words(&mut out.words, self.row_words(r));
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..m.cols {
            if top == m.rows {
                break;
            }
            let Some(p) = (top..m.rows).find(|&r| m.get(r, c)) else { continue };
            if p != top {
                for w in 0..m.stride {
                    m.data.swap(p * m.stride + w, top * m.stride + w);
                }
            }
            let pivot_row = m.row_words(top).to_vec();
            for r in 0..m.rows {
                if r != top && m.get(r, c) {
                    xor_words(m.row_words_mut(r), &pivot_row);
                }
            }
            pivots.push(c);
            top += 1;
        }
        m.rows = top;
        m.data.truncate(top * m.stride);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            if p != rank {
                for w in 0..m.stride {
                    m.data.swap(p * m.stride + w, rank * m.stride + w);
                }
            }
            let pivot_row = m.row_words(rank)[c / BITS..].to_vec();
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    let start = r * m.stride + c / BITS;
                    xor_words(&mut m.data[start..start + pivot_row.len()], &pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Null space `{x : self * x = 0}` as a subspace of `F2^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<BitVector> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &basis)
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        // Eliminate on the augmented matrix [self | b].
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols, b.get(r));
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if red.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            aug.set(r, n + r, true);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(BitMatrix::from_fn(n, n, |r, c| red.get(r, n + c)))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// A subspace of `F2^ambient`, kept as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: BitMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: BitMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[BitVector]) -> Self {
        let (basis, pivots) = BitMatrix::from_rows(ambient, vectors).rref();
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Echelon basis; every vector is reduced against the others.
    pub fn basis(&self) -> Vec<BitVector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut v = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                xor_words(&mut v.words, self.basis.row_words(i));
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut vs = self.basis();
        vs.extend(other.basis());
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        // Solve a*U + b*W = 0; the U-parts of solutions span the intersection.
        let (u, w) = (self.basis(), other.basis());
        if u.is_empty() || w.is_empty() {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked: Vec<BitVector> = u.iter().chain(&w).cloned().collect();
        let m = BitMatrix::from_rows(self.ambient, &stacked).transpose();
        let ker = m.kernel_basis();
        let vectors: Vec<BitVector> = ker
            .basis()
            .iter()
            .map(|k| {
                let mut acc = BitVector::zeros(self.ambient);
                for i in k.ones().filter(|&i| i < u.len()) {
                    acc.xor_assign(&u[i]);
                }
                acc
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }

    /// Image of the subspace under the linear map `v -> v * m`.
    pub fn image_under(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map domain mismatch");
        let imgs: Vec<BitVector> = self.basis().iter().map(|v| m.vec_mul(v)).collect();
        Subspace::span(m.cols(), &imgs)
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}

/// `dim U/W` for `W ⊆ U`.
pub fn subquotient_dim(u: &Subspace, w: &Subspace) -> Result<usize, LinalgError> {
    u.check(w)?;
    if !u.contains_subspace(w) {
        return Err(LinalgError::NotNested);
    }
    Ok(u.dim() - w.dim())
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BitMatrix) -> Subspace {
    m.kernel_basis()
}

/// Sparse matrix stored by columns; each column is a sorted list of row indices.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseColumns {
    nrows: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseColumns {
    pub fn new(nrows: usize) -> Self {
        SparseColumns { nrows, cols: Vec::new() }
    }

    pub fn with_columns(nrows: usize, cols: Vec<Vec<u32>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(cols.iter().all(|c| c.iter().all(|&r| (r as usize) < nrows)));
        SparseColumns { nrows, cols }
    }

    /// Appends a column given as an unsorted list; repeated rows cancel.
    pub fn push_unsorted(&mut self, mut rows: Vec<u32>) {
        rows.sort_unstable();
        self.cols.push(cancel_pairs(rows));
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, c: usize) -> &[u32] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.nrows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for &r in col {
                m.set(r as usize, c, true);
            }
        }
        m
    }

    pub fn from_dense(m: &BitMatrix) -> Self {
        let cols = (0..m.cols()).map(|c| m.column(c).ones().map(|r| r as u32).collect()).collect();
        SparseColumns { nrows: m.rows(), cols }
    }

    pub fn transpose(&self) -> SparseColumns {
        let mut out = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for &r in col {
                out[r as usize].push(c as u32);
            }
        }
        SparseColumns { nrows: self.cols.len(), cols: out }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseColumns) -> Result<SparseColumns, LinalgError> {
        if other.nrows != self.cols.len() {
            return Err(LinalgError::Shape(format!(
                "compose: inner dimensions {} and {}",
                self.cols.len(),
                other.nrows
            )));
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: Vec<u32> = col.iter().flat_map(|&k| self.cols[k as usize].iter().copied()).collect();
                acc.sort_unstable();
                cancel_pairs(acc)
            })
            .collect();
        Ok(SparseColumns { nrows: self.nrows, cols })
    }

    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols.len(), "vector length mismatch");
        let mut out = BitVector::zeros(self.nrows);
        for c in v.ones() {
            for &r in &self.cols[c] {
                out.flip(r as usize);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let order: Vec<u32> = (0..self.cols.len() as u32).collect();
        let row_rank: Vec<u32> = (0..self.nrows as u32).collect();
        reduce_pairs(self, &order, &row_rank, &[]).len()
    }
}

/// Removes adjacent equal pairs from a sorted list (mod 2 cancellation).
pub fn cancel_pairs(sorted: Vec<u32>) -> Vec<u32> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(sorted[i]);
        }
        i = j;
    }
    out
}

/// Ordered column reduction.
///
/// Columns are visited in `col_order` and may only absorb columns visited
/// earlier. A column's pivot is its nonzero row of smallest `row_rank`.
/// Columns listed in `skip` are known in advance to reduce to zero.
/// Returns `(column, pivot row)` pairs in visiting order.
///
/// Because only earlier columns are added to later ones, the number of
/// pairs with column among the first `j` visited and pivot rank below `i`
/// equals the rank of the corresponding submatrix, for every `i` and `j`.
pub fn reduce_pairs(m: &SparseColumns, col_order: &[u32], row_rank: &[u32], skip: &[u32]) -> Vec<(u32, u32)> {
    assert_eq!(row_rank.len(), m.nrows, "row ranks must cover every row");
    let nwords = words_for(m.nrows);
    let mut rank_to_row = vec![0u32; m.nrows];
    for (r, &k) in row_rank.iter().enumerate() {
        rank_to_row[k as usize] = r as u32;
    }
    let mut skipped = vec![false; m.ncols()];
    for &c in skip {
        skipped[c as usize] = true;
    }

    // Reduced pivot columns live in one arena; a column with pivot rank p
    // has no bits below p, so only its words from p/64 onward are stored.
    let mut slot = vec![u32::MAX; m.nrows];
    let mut starts: Vec<usize> = Vec::new();
    let mut arena: Vec<u64> = Vec::new();
    let mut pairs = Vec::new();
    let mut v = vec![0u64; nwords];

    for &c in col_order {
        if skipped[c as usize] {
            continue;
        }
        let col = &m.cols[c as usize];
        if col.is_empty() {
            continue;
        }
        let mut lo_word = usize::MAX;
        for &r in col {
            let k = row_rank[r as usize] as usize;
            v[k / BITS] ^= 1u64 << (k % BITS);
            lo_word = lo_word.min(k / BITS);
        }
        let mut pivot = None;
        while let Some(p) = first_one(&v, lo_word) {
            let s = slot[p];
            if s == u32::MAX {
                pivot = Some(p);
                break;
            }
            let w0 = p / BITS;
            let start = starts[s as usize];
            xor_words(&mut v[w0..], &arena[start..start + (nwords - w0)]);
            lo_word = w0;
        }
        if let Some(p) = pivot {
            let w0 = p / BITS;
            slot[p] = starts.len() as u32;
            starts.push(arena.len());
            arena.extend_from_slice(&v[w0..]);
            pairs.push((c, rank_to_row[p]));
            v[w0..].iter_mut().for_each(|w| *w = 0);
        }
        // otherwise v is already zero
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..max, 1..max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(BitMatrix::identity(70).rank(), 70);
        assert_eq!(BitMatrix::zeros(5, 9).rank(), 0);
    }

    #[test]
    fn small_kernel() {
        // [1 1 0; 0 1 1] has kernel spanned by (1,1,1).
        let m = BitMatrix::from_fn(2, 3, |r, c| c == r || c == r + 1);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&BitVector::from_indices(3, [0, 1, 2])));
    }

    #[test]
    fn subquotient_requires_nesting() {
        let u = Subspace::span(3, &[BitVector::unit(3, 0)]);
        let w = Subspace::span(3, &[BitVector::unit(3, 1)]);
        assert_eq!(subquotient_dim(&u, &w), Err(LinalgError::NotNested));
        assert_eq!(subquotient_dim(&Subspace::full(3), &u), Ok(2));
        assert!(matches!(u.sum(&Subspace::zero(4)), Err(LinalgError::AmbientMismatch { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_fn(4, 4, |r, c| c >= r);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(4));
        assert!(BitMatrix::zeros(3, 3).inverse().is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(80)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().1.len());
        }

        #[test]
        fn kernel_vectors_are_killed(m in arb_matrix(40)) {
            for v in m.kernel_basis().basis() {
                prop_assert!(m.mul_vec(&v).is_zero());
            }
        }

        #[test]
        fn sparse_rank_matches_dense(m in arb_matrix(150)) {
            let s = SparseColumns::from_dense(&m);
            prop_assert_eq!(s.rank(), m.rank());
            prop_assert_eq!(s.transpose().rank(), m.rank());
            prop_assert_eq!(s.to_dense(), m);
        }

        #[test]
        fn dimension_formula(a in arb_matrix(20), b in arb_matrix(20)) {
            let n = a.cols().min(b.cols());
            let u = Subspace::span(n, &a.row_vectors().iter().map(|v| trunc(v, n)).collect::<Vec<_>>());
            let w = Subspace::span(n, &b.row_vectors().iter().map(|v| trunc(v, n)).collect::<Vec<_>>());
            let s = u.sum(&w).unwrap();
            let i = u.intersection(&w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
            prop_assert_eq!(subquotient_dim(&s, &u).unwrap(), w.dim() - i.dim());
        }

        #[test]
        fn solve_finds_preimages(m in arb_matrix(30), seed in any::<u64>()) {
            let x = BitVector::from_indices(m.cols(), (0..m.cols()).filter(|i| seed >> (i % 64) & 1 == 1));
            let b = m.mul_vec(&x);
            let y = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn ordered_pairs_give_block_ranks(m in arb_matrix(24), seed in any::<u64>()) {
            // Random visiting order and row ranks; every lower-left block rank
            // must equal the pair count in that block.
            let s = SparseColumns::from_dense(&m);
            let mut order: Vec<u32> = (0..m.cols() as u32).collect();
            let mut row_rank: Vec<u32> = (0..m.rows() as u32).collect();
            let mut st = seed | 1;
            let mut next = || { st ^= st << 13; st ^= st >> 7; st ^= st << 17; st };
            for i in (1..order.len()).rev() { let j = (next() as usize) % (i + 1); order.swap(i, j); }
            for i in (1..row_rank.len()).rev() { let j = (next() as usize) % (i + 1); row_rank.swap(i, j); }
            let pairs = reduce_pairs(&s, &order, &row_rank, &[]);
            let pos: Vec<usize> = { let mut p = vec![0; order.len()]; for (i, &c) in order.iter().enumerate() { p[c as usize] = i; } p };
            for j in 0..=order.len() {
                for i in 0..=m.rows() {
                    let block = BitMatrix::from_fn(m.rows(), m.cols(), |r, c| {
                        pos[c] < j && (row_rank[r] as usize) < i && m.get(r, c)
                    });
                    let count = pairs.iter().filter(|(c, r)| pos[*c as usize] < j && (row_rank[*r as usize] as usize) < i).count();
                    prop_assert_eq!(block.rank(), count);
                }
            }
        }
    }

    fn trunc(v: &BitVector, n: usize) -> BitVector {
        BitVector::from_indices(n, v.ones().filter(|&i| i < n))
    }
}

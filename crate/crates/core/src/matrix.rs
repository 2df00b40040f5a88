//! Dense matrices over an exact field, with Gaussian elimination.
//!
//! Row-vector convention throughout: a matrix `F` of shape `m x n` is the
//! linear map `k^m -> k^n`, `v -> v F`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref<K: Field> {
    pub reduced: Matrix<K>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Build from row-major entries; the entry count must equal `rows * cols`.
    pub fn from_vec(field: &K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn from_fn(field: &K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// A single row.
    pub fn row_vector(field: &K, v: Vec<K::Elem>) -> Self {
        let n = v.len();
        Matrix { field: field.clone(), rows: 1, cols: n, data: v }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<K::Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<K::Elem> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "{}",
            Error::FieldMismatch(self.field.spec().to_string(), other.field.spec().to_string())
        );
    }

    /// Matrix product. Zero entries of either factor are skipped.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "product of {}x{} and {}x{}", self.rows, self.cols, other.rows, other.cols);
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        *o = f.add(o, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.spec().to_string(), other.field.spec().to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &K::Elem, other: &Self) {
        let f = self.field.clone();
        if f.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                *a = f.add(a, &f.mul(c, b));
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn pow(&self, n: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> K::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Trace of `self * other` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> K::Elem {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let b = other.get(k, i);
                if !f.is_zero(b) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
            }
        }
        acc
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(&first.field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { field: first.field.clone(), rows, cols, data }
    }

    /// Vertical stack that tolerates an empty list by using the given column count.
    pub fn vstack_or_empty(field: &K, cols: usize, parts: &[Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn block_diagonal(field: &K, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { rank: pivots.len(), pivots, reduced: m }
    }

    /// Row reduce in place, only choosing pivots among the first `pivot_cols`
    /// columns; the remaining columns are carried along. Returns pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]);
            for j in c..cols {
                let idx = r * cols + j;
                if !f.is_zero(&self.data[idx]) {
                    self.data[idx] = f.mul(&self.data[idx], &inv);
                }
            }
            let pivot_row: Vec<(usize, K::Elem)> = (c..cols)
                .filter(|&j| !f.is_zero(&self.data[r * cols + j]))
                .map(|j| (j, self.data[r * cols + j].clone()))
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let idx = i * cols + j;
                    self.data[idx] = f.sub(&self.data[idx], &f.mul(&factor, v));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : self * x = 0}` as columns.
    pub fn kernel_basis(&self) -> Self {
        let Rref { reduced, pivots, .. } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(reduced.get(r, fc)));
            }
        }
        k
    }

    /// Basis of the left null space `{v : v * self = 0}` as rows.
    pub fn left_kernel(&self) -> Self {
        self.transpose().kernel_basis().transpose()
    }

    /// Basis of the row space, as the nonzero rows of the reduced form.
    pub fn row_space(&self) -> Self {
        let Rref { reduced, rank, .. } = self.rref();
        reduced.select_rows(&(0..rank).collect::<Vec<_>>())
    }

    /// Indices of a maximal set of linearly independent rows, greedily from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = RowReducer::new(&self.field, self.cols);
        (0..self.rows).filter(|&i| basis.insert(self.row(i).to_vec())).collect()
    }

    /// Solve `self * x = b`.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        if self.field != b.field {
            return Err(Error::FieldMismatch(self.field.spec().to_string(), b.field.spec().to_string()));
        }
        let f = &self.field;
        let mut aug = Self::hstack(&[self, b]);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..aug.rows {
            for j in 0..b.cols {
                if !f.is_zero(aug.get(i, self.cols + j)) {
                    return Ok(None);
                }
            }
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Solve `x * self = b` for `x`.
    pub fn solve_left(&self, b: &Self) -> Result<Option<Self>> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::hstack(&[self, &Self::identity(&self.field, n)]);
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Matrix whose rows complete the rows of `self` (assumed independent) to a
    /// basis of the ambient space, using standard basis vectors.
    pub fn complement_rows(&self) -> Self {
        let f = &self.field;
        let mut red = RowReducer::new(f, self.cols);
        for i in 0..self.rows {
            red.insert(self.row_vec(i));
        }
        let mut extra = Vec::new();
        for j in 0..self.cols {
            let mut e = vec![f.zero(); self.cols];
            e[j] = f.one();
            if red.insert(e.clone()) {
                extra.push(e);
            }
        }
        Self::from_rows(f, self.cols, extra)
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.render(x)).collect())
            .collect()
    }
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.render().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Incremental echelon basis of a row space, supporting membership tests
/// and coordinate extraction.
#[derive(Clone, Debug)]
pub struct RowReducer<K: Field> {
    field: K,
    width: usize,
    /// Echelon rows, each normalised to 1 at its pivot, with zeros in every
    /// other stored pivot column.
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
    /// For each stored row, its expression in the inserted vectors.
    combos: Vec<Vec<K::Elem>>,
    inserted: usize,
}

impl<K: Field> RowReducer<K> {
    pub fn new(field: &K, width: usize) -> Self {
        RowReducer { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the stored rows; returns the remainder and the
    /// coefficients used (so that `v = remainder + sum coeff_t * row_t`).
    fn reduce(&self, mut v: Vec<K::Elem>) -> (Vec<K::Elem>, Vec<K::Elem>) {
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.rows.len()];
        for (t, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
            coeffs[t] = c;
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        let (rem, _) = self.reduce(v.to_vec());
        rem.iter().all(|x| self.field.is_zero(x))
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: Vec<K::Elem>) -> bool {
        assert_eq!(v.len(), self.width);
        let f = self.field.clone();
        let idx = self.inserted;
        self.inserted += 1;
        let (mut rem, coeffs) = self.reduce(v);
        let Some(p) = rem.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        // combo of the new row in inserted vectors: e_idx - sum coeffs_t combo_t
        let mut combo = vec![f.zero(); idx + 1];
        combo[idx] = f.one();
        for (t, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, x) in self.combos[t].iter().enumerate() {
                combo[k] = f.sub(&combo[k], &f.mul(c, x));
            }
        }
        let inv = f.inv(&rem[p]);
        for x in rem.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for x in combo.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // clear the new pivot column from existing rows
        for t in 0..self.rows.len() {
            let c = self.rows[t][p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.width {
                if !f.is_zero(&rem[j]) {
                    self.rows[t][j] = f.sub(&self.rows[t][j], &f.mul(&c, &rem[j]));
                }
            }
            let old = std::mem::take(&mut self.combos[t]);
            let mut new = old;
            new.resize(idx + 1, f.zero());
            for (k, x) in combo.iter().enumerate() {
                if !f.is_zero(x) {
                    new[k] = f.sub(&new[k], &f.mul(&c, x));
                }
            }
            self.combos[t] = new;
        }
        self.rows.push(rem);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors (vectors that
    /// did not enlarge the span get coefficient zero). `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        let f = &self.field;
        let (rem, coeffs) = self.reduce(v.to_vec());
        if rem.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut out = vec![f.zero(); self.inserted];
        for (t, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, x) in self.combos[t].iter().enumerate() {
                if !f.is_zero(x) {
                    out[k] = f.add(&out[k], &f.mul(c, x));
                }
            }
        }
        Some(out)
    }

    /// Reduced echelon basis as matrix rows (pivot order of insertion).
    pub fn basis(&self) -> Matrix<K> {
        Matrix::from_rows(&self.field, self.width, self.rows.clone())
    }
}

/// Coordinates with respect to a fixed list of independent row vectors.
#[derive(Clone, Debug)]
pub struct Coordinates<K: Field> {
    reducer: RowReducer<K>,
    len: usize,
}

impl<K: Field> Coordinates<K> {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &Matrix<K>) -> Result<Self> {
        let mut reducer = RowReducer::new(basis.field(), basis.cols());
        for i in 0..basis.rows() {
            if !reducer.insert(basis.row_vec(i)) {
                return Err(Error::Internal("coordinate basis is linearly dependent".into()));
            }
        }
        Ok(Coordinates { reducer, len: basis.rows() })
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn coords(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        self.reducer.coordinates(v)
    }

    /// Coordinates of every row of `m`; errors if a row leaves the span.
    pub fn coords_rows(&self, m: &Matrix<K>) -> Result<Matrix<K>> {
        let rows = (0..m.rows())
            .map(|i| self.coords(m.row(i)).ok_or_else(|| Error::Internal("vector outside span".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(m.field(), self.len, rows))
    }
}

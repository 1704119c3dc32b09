//! Dense exact linear and multilinear algebra.
//!
//! Tensor flattening convention, used everywhere in the crate: the basis
//! vector `e_i ⊗ e_j` of `k^m ⊗ k^n` has flat index `i * n + j` (left factor
//! major). Multi-fold tensors nest the same rule from the left.
//!
//! Zero-dimensional spaces are legal throughout; maps touching them have no
//! entries.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A vector of `k^n`, stored as its coordinate list.
pub type Vector = Vec<Scalar>;

/// The zero vector of `k^n`.
pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

/// The basis vector `e_i` of `k^n`.
pub fn basis_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// The pairing `Σ f_i v_i` of a covector with a vector.
pub fn dot(field: Field, f: &[Scalar], v: &[Scalar]) -> Scalar {
    assert_eq!(f.len(), v.len(), "pairing length mismatch");
    let mut acc = field.zero();
    for (a, b) in f.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

/// The tensor `a ⊗ b` with flat index `i * b.len() + j`.
pub fn kron_vectors(field: Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = zero_vector(field, a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

/// Applies the flip `k^m ⊗ k^n → k^n ⊗ k^m` to a tensor.
pub fn flip_vector(field: Field, v: &[Scalar], m: usize, n: usize) -> Vector {
    assert_eq!(v.len(), m * n, "flip length mismatch");
    let mut out = zero_vector(field, m * n);
    for i in 0..m {
        for j in 0..n {
            out[j * m + i] = v[i * n + j].clone();
        }
    }
    out
}

/// Applies `f_1 ⊗ … ⊗ f_r` to a tensor of the matching domain.
pub fn apply_kron(field: Field, maps: &[&LinearMap], v: &[Scalar]) -> Vector {
    let in_dims: Vec<usize> = maps.iter().map(|m| m.cols).collect();
    let out_dims: Vec<usize> = maps.iter().map(|m| m.rows).collect();
    let in_len: usize = in_dims.iter().product();
    let out_len: usize = out_dims.iter().product();
    assert_eq!(v.len(), in_len, "tensor apply length mismatch");
    let mut out = zero_vector(field, out_len);
    let mut idx = vec![0usize; maps.len()];
    for (flat, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        unflatten(flat, &in_dims, &mut idx);
        // Expand the image of the basis tensor factor by factor.
        let mut partial: Vec<(usize, Scalar)> = vec![(0, coeff.clone())];
        for (t, map) in maps.iter().enumerate() {
            let mut next = Vec::new();
            for (acc_idx, acc_c) in &partial {
                for r in 0..map.rows {
                    let e = map.get(r, idx[t]);
                    if !e.is_zero() {
                        next.push((acc_idx * out_dims[t] + r, acc_c * e));
                    }
                }
            }
            partial = next;
        }
        for (i, c) in partial {
            out[i] += &c;
        }
    }
    out
}

/// Applies a covector to the right factor: `v ∈ k^dl ⊗ k^dr ↦ (id ⊗ f)(v) ∈ k^dl`.
pub fn contract_right(field: Field, v: &[Scalar], dl: usize, dr: usize, f: &[Scalar]) -> Vector {
    assert_eq!(v.len(), dl * dr, "contraction length mismatch");
    assert_eq!(f.len(), dr, "covector length mismatch");
    (0..dl)
        .map(|i| dot(field, &v[i * dr..(i + 1) * dr], f))
        .collect()
}

/// Applies a covector to the left factor: `v ∈ k^dl ⊗ k^dr ↦ (f ⊗ id)(v) ∈ k^dr`.
pub fn contract_left(field: Field, f: &[Scalar], v: &[Scalar], dl: usize, dr: usize) -> Vector {
    assert_eq!(v.len(), dl * dr, "contraction length mismatch");
    assert_eq!(f.len(), dl, "covector length mismatch");
    let mut out = zero_vector(field, dr);
    for (i, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            let x = &v[i * dr + j];
            if !x.is_zero() {
                *slot += &(c * x);
            }
        }
    }
    out
}

/// Splits a flat index into its multi-index for the given factor dimensions.
pub fn unflatten(mut flat: usize, dims: &[usize], out: &mut [usize]) {
    for t in (0..dims.len()).rev() {
        out[t] = flat % dims[t];
        flat /= dims[t];
    }
}

/// A dense row-major matrix representing a linear map `k^cols → k^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl LinearMap {
    /// Builds a map from its row-major entries, checking the length.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(LinearMap {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        LinearMap {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(
            field,
            n,
            n,
            |i, j| {
                if i == j {
                    field.one()
                } else {
                    field.zero()
                }
            },
        )
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        LinearMap {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds the map whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        for c in columns {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Builds the map whose rows are the given covectors of length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    /// The `n × 1` map `1 ↦ v`.
    pub fn column_vector(field: Field, v: &[Scalar]) -> Self {
        Self::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    /// The `1 × n` map given by a covector.
    pub fn row_vector(field: Field, f: &[Scalar]) -> Self {
        Self::from_fn(field, 1, f.len(), |_, j| f[j].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_list(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    /// The composite `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinearMap) -> LinearMap {
        assert_eq!(
            self.cols, rhs.rows,
            "composing {}x{} with {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = LinearMap::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Applies the map to a vector.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(
            self.cols,
            v.len(),
            "applying {}x{} to a vector of length {}",
            self.rows,
            self.cols,
            v.len()
        );
        let mut out = zero_vector(self.field, self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *slot += &(a * x);
                }
            }
        }
        out
    }

    /// Precomposes a covector with the map: `f ∘ self`.
    pub fn pull_back(&self, f: &[Scalar]) -> Vector {
        assert_eq!(self.rows, f.len(), "covector length mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = self.field.zero();
                for (i, c) in f.iter().enumerate() {
                    let a = self.get(i, j);
                    if !c.is_zero() && !a.is_zero() {
                        acc += &(c * a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, rhs: &LinearMap) -> LinearMap {
        self.assert_same_shape(rhs);
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &LinearMap) -> LinearMap {
        self.assert_same_shape(rhs);
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    fn assert_same_shape(&self, rhs: &LinearMap) {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
    }

    /// The Kronecker product realizing `A ⊗ B`.
    pub fn kron(a: &LinearMap, b: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zeros(a.field, a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let y = b.get(k, l);
                        if !y.is_zero() {
                            out.set(i * b.rows + k, j * b.cols + l, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of several maps, left to right.
    pub fn kron_all(field: Field, maps: &[&LinearMap]) -> LinearMap {
        let mut acc = LinearMap::identity(field, 1);
        for m in maps {
            acc = LinearMap::kron(&acc, m);
        }
        acc
    }

    /// The flip `σ: k^m ⊗ k^n → k^n ⊗ k^m`, sending flat index `i*n+j` to `j*m+i`.
    pub fn flip(field: Field, m: usize, n: usize) -> LinearMap {
        let mut out = LinearMap::zeros(field, m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                out.set(j * m + i, i * n + j, field.one());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == LinearMap::identity(self.field, self.rows)
    }

    /// Matrix power of a square map.
    pub fn pow(&self, mut e: u64) -> LinearMap {
        assert_eq!(self.rows, self.cols, "power of a non-square map");
        let mut acc = LinearMap::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// The first column where two maps of equal shape differ.
    pub fn first_mismatch_column(&self, other: &LinearMap) -> Option<usize> {
        self.assert_same_shape(other);
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (LinearMap, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &inv * m.get(r, j);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = &factor * m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - &sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the kernel, in reduced echelon form: each vector has
    /// leading coordinate 1 and the leading positions strictly increase.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(self.field, self.cols);
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        echelon_basis(self.field, self.cols, &raw)
    }

    /// Solves `self · x = b`, returning the echelon particular solution
    /// (free variables zero) or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.rows,
                self.cols
            )));
        }
        let aug = LinearMap::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// The two-sided inverse of a square map, if it exists.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = LinearMap::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        // [A | I] always has rank n; A is invertible iff its own columns carry every pivot.
        if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
            return None;
        }
        Some(LinearMap::from_fn(self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    /// Stacks maps with the same number of columns vertically.
    pub fn vstack(field: Field, cols: usize, blocks: &[LinearMap]) -> LinearMap {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        LinearMap {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A `rows × cols` map that is the sum of the given blocks, each placed
    /// with its first column at the given offset.
    pub fn from_blocks(
        field: Field,
        rows: usize,
        cols: usize,
        parts: &[(usize, &LinearMap)],
    ) -> LinearMap {
        let mut m = LinearMap::zeros(field, rows, cols);
        for (offset, p) in parts {
            assert_eq!(p.rows, rows, "block row mismatch");
            assert!(offset + p.cols <= cols, "block exceeds width");
            for i in 0..rows {
                for j in 0..p.cols {
                    let v = p.get(i, j);
                    if !v.is_zero() {
                        let slot = &mut m.data[i * cols + offset + j];
                        *slot = &*slot + v;
                    }
                }
            }
        }
        m
    }
}

/// Reduces a spanning list to the unique reduced echelon basis of its span.
pub fn echelon_basis(field: Field, n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = LinearMap::from_rows(field, n, vectors).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// The `k`-linear structure of a bilinear product `k^left × k^right → k^out`.
///
/// Structure constants are `c[i][j][k]` with `e_j · e_k = Σ_i c[i][j][k] e_i`.
/// They are stored sparsely, indexed by the input pair `j * right + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bilinear {
    field: Field,
    out: usize,
    left: usize,
    right: usize,
    terms: Vec<Vec<(usize, Scalar)>>,
}

impl Bilinear {
    /// Builds the product from its dense constants `c[i][j][k]`, flattened
    /// as `(i * left + j) * right + k`.
    pub fn from_constants(
        field: Field,
        out: usize,
        left: usize,
        right: usize,
        c: &[Scalar],
    ) -> Result<Self> {
        if c.len() != out * left * right {
            return Err(Error::Shape(format!(
                "{} structure constants for shape {out}x{left}x{right}",
                c.len()
            )));
        }
        let mut terms = vec![Vec::new(); left * right];
        for i in 0..out {
            for j in 0..left {
                for k in 0..right {
                    let v = &c[(i * left + j) * right + k];
                    if !v.is_zero() {
                        terms[j * right + k].push((i, v.clone()));
                    }
                }
            }
        }
        Ok(Bilinear {
            field,
            out,
            left,
            right,
            terms,
        })
    }

    /// Builds the product from its matrix `k^left ⊗ k^right → k^out`.
    pub fn from_map(map: &LinearMap, left: usize, right: usize) -> Result<Self> {
        if map.cols() != left * right {
            return Err(Error::Shape(format!(
                "multiplication matrix has {} columns, expected {}",
                map.cols(),
                left * right
            )));
        }
        let mut terms = vec![Vec::new(); left * right];
        for (col, slot) in terms.iter_mut().enumerate() {
            for i in 0..map.rows() {
                let v = map.get(i, col);
                if !v.is_zero() {
                    slot.push((i, v.clone()));
                }
            }
        }
        Ok(Bilinear {
            field: map.field(),
            out: map.rows(),
            left,
            right,
            terms,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    /// The constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.terms[j * self.right + k]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Dense constants flattened as `(i * left + j) * right + k`.
    pub fn constants(&self) -> Vec<Scalar> {
        let mut c = vec![self.field.zero(); self.out * self.left * self.right];
        for (jk, list) in self.terms.iter().enumerate() {
            let (j, k) = (jk / self.right, jk % self.right);
            for (i, v) in list {
                c[(i * self.left + j) * self.right + k] = v.clone();
            }
        }
        c
    }

    /// The multiplication as a matrix `k^left ⊗ k^right → k^out`.
    pub fn to_map(&self) -> LinearMap {
        let mut m = LinearMap::zeros(self.field, self.out, self.left * self.right);
        for (col, list) in self.terms.iter().enumerate() {
            for (i, v) in list {
                m.set(*i, col, v.clone());
            }
        }
        m
    }

    /// Evaluates the product of two vectors.
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), self.left, "left operand length mismatch");
        assert_eq!(b.len(), self.right, "right operand length mismatch");
        let mut out = zero_vector(self.field, self.out);
        for (j, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let list = &self.terms[j * self.right + k];
                if list.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (i, c) in list {
                    out[*i] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Multiplies out a tensor: `Σ w_{jk} e_j ⊗ e_k ↦ Σ w_{jk} e_j e_k`.
    pub fn apply_flat(&self, w: &[Scalar]) -> Vector {
        assert_eq!(w.len(), self.left * self.right, "tensor length mismatch");
        let mut out = zero_vector(self.field, self.out);
        for (jk, x) in w.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &self.terms[jk] {
                out[*i] += &(x * c);
            }
        }
        out
    }

    /// The product with its arguments swapped.
    pub fn opposite(&self) -> Bilinear {
        let mut terms = vec![Vec::new(); self.left * self.right];
        for j in 0..self.left {
            for k in 0..self.right {
                terms[k * self.left + j] = self.terms[j * self.right + k].clone();
            }
        }
        Bilinear {
            field: self.field,
            out: self.out,
            left: self.right,
            right: self.left,
            terms,
        }
    }

    /// The componentwise product on tensor products: `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn tensor(&self, other: &Bilinear) -> Bilinear {
        let left = self.left * other.left;
        let right = self.right * other.right;
        let mut terms = vec![Vec::new(); left * right];
        for ja in 0..self.left {
            for ka in 0..self.right {
                let la = &self.terms[ja * self.right + ka];
                if la.is_empty() {
                    continue;
                }
                for jb in 0..other.left {
                    for kb in 0..other.right {
                        let lb = &other.terms[jb * other.right + kb];
                        if lb.is_empty() {
                            continue;
                        }
                        let j = ja * other.left + jb;
                        let k = ka * other.right + kb;
                        let slot = &mut terms[j * right + k];
                        for (ia, ca) in la {
                            for (ib, cb) in lb {
                                slot.push((ia * other.out + ib, ca * cb));
                            }
                        }
                    }
                }
            }
        }
        Bilinear {
            field: self.field,
            out: self.out * other.out,
            left,
            right,
            terms,
        }
    }

    /// The matrix of `x ↦ a · x`.
    pub fn left_multiplication(&self, a: &[Scalar]) -> LinearMap {
        let cols: Vec<Vector> = (0..self.right)
            .map(|k| self.product(a, &basis_vector(self.field, self.right, k)))
            .collect();
        LinearMap::from_columns(self.field, self.out, &cols)
    }

    /// The matrix of `x ↦ x · a`.
    pub fn right_multiplication(&self, a: &[Scalar]) -> LinearMap {
        let cols: Vec<Vector> = (0..self.left)
            .map(|j| self.product(&basis_vector(self.field, self.left, j), a))
            .collect();
        LinearMap::from_columns(self.field, self.out, &cols)
    }
}

/// Two-sided inverse of `a` in the algebra `(mult, unit)`.
///
/// Both one-sided equations are stacked into one linear system.
pub fn algebra_inverse(mult: &Bilinear, unit: &[Scalar], a: &[Scalar]) -> Option<Vector> {
    let n = mult.out_dim();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = mult.field();
    let system = LinearMap::vstack(
        field,
        n,
        &[mult.left_multiplication(a), mult.right_multiplication(a)],
    );
    let rhs: Vector = unit.iter().chain(unit.iter()).cloned().collect();
    let x = system.solve(&rhs).ok()??;
    (mult.product(a, &x) == unit && mult.product(&x, a) == unit).then_some(x)
}

/// Inserts the unit in the middle slot: `r = Σ p ⊗ q ↦ Σ p ⊗ u ⊗ q`.
pub fn insert_middle(field: Field, r: &[Scalar], dp: usize, u: &[Scalar], dq: usize) -> Vector {
    assert_eq!(r.len(), dp * dq, "insertion length mismatch");
    let du = u.len();
    let mut out = zero_vector(field, dp * du * dq);
    for i in 0..dp {
        for k in 0..dq {
            let c = &r[i * dq + k];
            if c.is_zero() {
                continue;
            }
            for (b, ub) in u.iter().enumerate() {
                if !ub.is_zero() {
                    out[(i * du + b) * dq + k] = c * ub;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn m(rows: usize, cols: usize, v: &[i64]) -> LinearMap {
        LinearMap::new(
            q(),
            rows,
            cols,
            v.iter().map(|&x| q().from_i64(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let a = LinearMap::identity(q(), 2);
        let b = LinearMap::identity(q(), 3);
        assert_eq!(LinearMap::kron(&a, &b), LinearMap::identity(q(), 6));
    }

    #[test]
    fn kron_with_empty_factor() {
        let z = LinearMap::zeros(q(), 0, 0);
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let k = LinearMap::kron(&z, &a);
        assert_eq!((k.rows(), k.cols()), (0, 0));
        assert!(k.entries().is_empty());
    }

    #[test]
    fn kron_of_scalars() {
        assert_eq!(
            LinearMap::kron(&m(1, 1, &[2]), &m(1, 1, &[3])),
            m(1, 1, &[6])
        );
    }

    #[test]
    fn kron_index_convention() {
        // (A ⊗ B)(e_i ⊗ e_j) lands at flat index i*n + j.
        let a = m(2, 2, &[0, 1, 1, 0]);
        let b = LinearMap::identity(q(), 3);
        let k = LinearMap::kron(&a, &b);
        let e = basis_vector(q(), 6, 3 + 2);
        assert_eq!(k.apply(&e), basis_vector(q(), 6, 2));
    }

    #[test]
    fn flips() {
        assert_eq!(LinearMap::flip(q(), 1, 4), LinearMap::identity(q(), 4));
        let f = LinearMap::flip(q(), 2, 2);
        assert!(f.compose(&f).is_identity());
        assert!(LinearMap::flip(q(), 2, 3)
            .compose(&LinearMap::flip(q(), 3, 2))
            .is_identity());
        let v: Vector = (0..6).map(|i| q().from_i64(i)).collect();
        assert_eq!(
            flip_vector(q(), &v, 2, 3),
            LinearMap::flip(q(), 2, 3).apply(&v)
        );
    }

    #[test]
    fn nullspace_examples() {
        assert!(LinearMap::identity(q(), 3).nullspace().is_empty());
        assert_eq!(LinearMap::zeros(q(), 2, 2).nullspace().len(), 2);
        let ns = m(1, 2, &[1, 1]).nullspace();
        assert_eq!(ns, vec![vec![q().one(), q().from_i64(-1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(4), q().from_i64(5)];
        assert_eq!(
            LinearMap::identity(q(), 2).solve(&b).unwrap(),
            Some(b.clone())
        );
        assert_eq!(LinearMap::zeros(q(), 2, 2).solve(&b).unwrap(), None);
        assert_eq!(
            m(1, 1, &[2]).solve(&[q().one()]).unwrap(),
            Some(vec![q().fraction(1, 2).unwrap()])
        );
        assert!(m(1, 1, &[2]).solve(&b).is_err());
    }

    #[test]
    fn inverse_and_singular() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert_eq!(
            LinearMap::zeros(q(), 0, 0).inverse(),
            Some(LinearMap::zeros(q(), 0, 0))
        );
    }

    #[test]
    fn scalar_algebra_inverse() {
        let k = Bilinear::from_constants(q(), 1, 1, 1, &[q().one()]).unwrap();
        let three = vec![q().from_i64(3)];
        assert_eq!(
            algebra_inverse(&k, &[q().one()], &three),
            Some(vec![q().fraction(1, 3).unwrap()])
        );
        assert_eq!(algebra_inverse(&k, &[q().one()], &[q().zero()]), None);
    }

    #[test]
    fn apply_kron_matches_matrix_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(3, 2, &[1, 0, -1, 2, 0, 5]);
        let v: Vector = (1..=4).map(|i| q().from_i64(i)).collect();
        assert_eq!(
            apply_kron(q(), &[&a, &b], &v),
            LinearMap::kron(&a, &b).apply(&v)
        );
    }

    #[test]
    fn middle_insertion() {
        let r: Vector = vec![q().from_i64(1), q().from_i64(2)];
        let u: Vector = vec![q().from_i64(1), q().from_i64(0), q().from_i64(0)];
        let out = insert_middle(q(), &r, 1, &u, 2);
        assert_eq!(out.len(), 6);
        assert_eq!(out[0], q().from_i64(1));
        assert_eq!(out[1], q().from_i64(2));
        assert!(out[2..].iter().all(Scalar::is_zero));
    }
}

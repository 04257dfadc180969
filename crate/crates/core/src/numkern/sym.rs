use std::fmt;

use super::{Mat, NumError};

/// Dense real symmetric matrix stored as its packed upper triangle.
///
/// `get(i, j)` and `get(j, i)` read the same slot, so symmetry holds by
/// construction. Entries are always finite.
#[derive(Clone, PartialEq)]
pub struct SymMat {
    n: usize,
    packed: Vec<f64>,
}

impl SymMat {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        SymMat {
            n,
            packed: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// All-ones matrix J_n.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    /// E_ij + E_ji style matrix with a single symmetric pair set to one.
    pub fn unit_pair(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, 1.0);
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                assert!(v.is_finite(), "SymMat entries must be finite");
                m.packed[Self::index(n, i, j)] = v;
            }
        }
        m
    }

    /// Square row-major rows; rejects asymmetry beyond `sym_tol` relative to
    /// the max-norm.
    pub fn from_rows(rows: &[Vec<f64>], sym_tol: f64) -> Result<Self, NumError> {
        let n = rows.len();
        if n == 0 {
            return Err(NumError::Shape("matrix must have at least one row".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(NumError::Shape(format!(
                "expected {n} columns per row, found a row with {}",
                r.len()
            )));
        }
        let mut scale = 0.0f64;
        for r in rows {
            for v in r {
                if !v.is_finite() {
                    return Err(NumError::NonFinite);
                }
                scale = scale.max(v.abs());
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (rows[i][j] - rows[j][i]).abs();
                if d > sym_tol * scale.max(f64::MIN_POSITIVE) && d > 0.0 {
                    return Err(NumError::NotSymmetric { i, j, diff: d });
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    /// Symmetric part of a square dense matrix.
    pub fn from_dense_sym_part(a: &Mat) -> Self {
        assert_eq!(a.rows(), a.cols(), "square matrix required");
        Self::from_fn(a.rows(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
    }

    /// Outer product x xᵀ.
    pub fn outer(x: &[f64]) -> Self {
        Self::from_fn(x.len(), |i, j| x[i] * x[j])
    }

    /// Diagonal matrix.
    pub fn diag(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0.0 })
    }

    #[inline]
    fn index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i hold n, n-1, ..., n-i+1 entries
        i * n - (i * i.saturating_sub(1)) / 2 + (j - i)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[Self::index(self.n, i, j)]
    }

    /// Sets both (i, j) and (j, i).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(v.is_finite(), "SymMat entries must be finite");
        self.packed[Self::index(self.n, i, j)] = v;
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn to_dense(&self) -> Mat {
        Mat::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Max-norm max_ij |A_ij|.
    pub fn max_abs(&self) -> f64 {
        self.packed.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.packed.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn frobenius(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Trace inner product ⟨A, B⟩ = Σ_ij A_ij B_ij.
    pub fn inner(&self, other: &SymMat) -> f64 {
        assert_eq!(self.n, other.n, "order mismatch");
        let mut s = 0.0;
        for i in 0..self.n {
            s += self.get(i, i) * other.get(i, i);
            for j in (i + 1)..self.n {
                s += 2.0 * self.get(i, j) * other.get(i, j);
            }
        }
        s
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "length mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// xᵀ A x.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n, "length mismatch");
        let mut s = 0.0;
        for i in 0..self.n {
            s += self.get(i, i) * x[i] * x[i];
            for j in (i + 1)..self.n {
                s += 2.0 * self.get(i, j) * x[i] * x[j];
            }
        }
        s
    }

    /// xᵀ A y.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let ay = self.mul_vec(y);
        x.iter().zip(&ay).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &SymMat) -> SymMat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SymMat) -> SymMat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> SymMat {
        SymMat {
            n: self.n,
            packed: self.packed.iter().map(|v| v * s).collect(),
        }
    }

    fn zip_with(&self, other: &SymMat, f: impl Fn(f64, f64) -> f64) -> SymMat {
        assert_eq!(self.n, other.n, "order mismatch");
        SymMat {
            n: self.n,
            packed: self.packed.iter().zip(&other.packed).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// max_ij |A_ij - B_ij|.
    pub fn max_abs_diff(&self, other: &SymMat) -> f64 {
        assert_eq!(self.n, other.n, "order mismatch");
        self.packed
            .iter()
            .zip(&other.packed)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Block-diagonal A ⊕ B.
    pub fn direct_sum(&self, other: &SymMat) -> SymMat {
        let n = self.n + other.n;
        SymMat::from_fn(n, |i, j| {
            if i < self.n && j < self.n {
                self.get(i, j)
            } else if i >= self.n && j >= self.n {
                other.get(i - self.n, j - self.n)
            } else {
                0.0
            }
        })
    }

    /// A ⊕ 0 with `extra` zero rows/columns appended.
    pub fn pad_zeros(&self, extra: usize) -> SymMat {
        let n = self.n + extra;
        SymMat::from_fn(n, |i, j| if i < self.n && j < self.n { self.get(i, j) } else { 0.0 })
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> SymMat {
        SymMat::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// B with B_ab = A_{perm[a], perm[b]}.
    pub fn permute(&self, perm: &[usize]) -> SymMat {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        SymMat::from_fn(self.n, |a, b| self.get(perm[a], perm[b]))
    }

    /// D A D for a diagonal D given by its entries.
    pub fn scale_diag(&self, d: &[f64]) -> SymMat {
        assert_eq!(d.len(), self.n, "length mismatch");
        SymMat::from_fn(self.n, |i, j| d[i] * self.get(i, j) * d[j])
    }

    /// Vᵀ A V for a dense n×m matrix V.
    pub fn congruence(&self, v: &Mat) -> SymMat {
        assert_eq!(v.rows(), self.n, "row count must match order");
        let av = self.to_dense().matmul(v);
        let m = v.cols();
        SymMat::from_fn(m, |a, b| (0..self.n).map(|k| v[(k, a)] * av[(k, b)]).sum())
    }
}

impl fmt::Debug for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMat({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:10.4}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as its full row-major array.
impl serde::Serialize for SymMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

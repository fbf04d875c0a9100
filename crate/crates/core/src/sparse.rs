//! Coordinate-format sparse matrices over `f64` or `Complex64`.
//!
//! Entries are kept sorted in row-major order with duplicates merged and exact
//! zeros dropped, so two operators built from the same triplets in any order
//! compare equal entry by entry.

use std::fmt::Debug;

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

/// Scalar field of a [`SparseOperator`]. Implemented for `f64` and `Complex64`.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Debug + Send + Sync {
    fn to_complex(self) -> Complex64 {
        Complex64::new(self.real(), self.imaginary())
    }
}

impl<T: ComplexField<RealField = f64> + Copy + Debug + Send + Sync> Scalar for T {}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<T: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, T)>,
    row_ptr: Vec<usize>,
}

pub type RealOperator = SparseOperator<f64>;
pub type ComplexOperator = SparseOperator<Complex64>;

impl<T: Scalar> SparseOperator<T> {
    /// Builds an operator from `(row, col, value)` triplets. Repeated positions
    /// are summed; positions whose sum is exactly zero are dropped.
    ///
    /// Panics if a triplet lies outside `rows × cols`.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut raw: Vec<(usize, usize, T)> = triplets.into_iter().collect();
        for &(r, c, _) in &raw {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
        }
        // stable sort keeps the summation order of duplicates deterministic
        raw.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, T)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != T::zero());
        Self::from_sorted(rows, cols, entries)
    }

    fn from_sorted(rows: usize, cols: usize, entries: Vec<(usize, usize, T)>) -> Self {
        let mut row_ptr = vec![0; rows + 1];
        for &(r, _, _) in &entries {
            row_ptr[r + 1] += 1;
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            rows,
            cols,
            entries,
            row_ptr,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_sorted(rows, cols, Vec::new())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![T::one(); dim])
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_triplets(n, n, diag.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[(usize, usize, T)] {
        &self.entries[self.row_ptr[r]..self.row_ptr[r + 1]]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let row = self.row(r);
        match row.binary_search_by_key(&c, |e| e.1) {
            Ok(i) => row[i].2,
            Err(_) => T::zero(),
        }
    }

    pub fn scale(&self, factor: T) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&(r, c, v)| (r, c, v * factor))
            .collect::<Vec<_>>();
        Self::from_triplets(self.rows, self.cols, entries)
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &Self, factor: T) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sparse addition"
        );
        let iter = self
            .entries
            .iter()
            .copied()
            .chain(other.entries.iter().map(|&(r, c, v)| (r, c, v * factor)));
        Self::from_triplets(self.rows, self.cols, iter)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -T::one())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in sparse product");
        let mut triplets = Vec::new();
        for &(r, k, a) in &self.entries {
            for &(_, c, b) in other.row(k) {
                triplets.push((r, c, a * b));
            }
        }
        Self::from_triplets(self.rows, other.cols, triplets)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn transpose(&self) -> Self {
        let t = self.entries.iter().map(|&(r, c, v)| (c, r, v));
        Self::from_triplets(self.cols, self.rows, t)
    }

    pub fn adjoint(&self) -> Self {
        let t = self.entries.iter().map(|&(r, c, v)| (c, r, v.conjugate()));
        Self::from_triplets(self.cols, self.rows, t)
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut y = vec![T::zero(); self.rows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    /// Largest entry modulus; zero for an empty operator.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.2.modulus())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Largest `|A_ij − conj(A_ji)|` together with its position.
    pub fn hermiticity_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for &(r, c, v) in &self.entries {
            let d = (v - self.get(c, r).conjugate()).modulus();
            if d > worst.0 {
                worst = (d, r, c);
            }
        }
        worst
    }

    pub fn to_dense(&self) -> DMatrix<T> {
        let mut m = DMatrix::from_element(self.rows, self.cols, T::zero());
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    pub fn to_complex(&self) -> ComplexOperator {
        ComplexOperator::from_sorted(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|&(r, c, v)| (r, c, v.to_complex()))
                .collect(),
        )
    }

    /// Sub-matrix keeping the listed rows and columns, in the given order.
    pub fn restrict(&self, keep_rows: &[usize], keep_cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in keep_cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut triplets = Vec::new();
        for (new_r, &old_r) in keep_rows.iter().enumerate() {
            for &(_, c, v) in self.row(old_r) {
                if col_map[c] != usize::MAX {
                    triplets.push((new_r, col_map[c], v));
                }
            }
        }
        Self::from_triplets(keep_rows.len(), keep_cols.len(), triplets)
    }
}

impl ComplexOperator {
    /// Real part, provided every imaginary part is at most `tol` in modulus.
    pub fn try_into_real(&self, tol: f64) -> Result<RealOperator, f64> {
        let worst = self.entries.iter().map(|e| e.2.im.abs()).fold(0.0, f64::max);
        if worst > tol {
            return Err(worst);
        }
        Ok(RealOperator::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|&(r, c, v)| (r, c, v.re)),
        ))
    }
}

/// `max_i |x_i|`.
pub fn max_norm<T: Scalar>(x: &[T]) -> f64 {
    x.iter().map(|v| v.modulus()).fold(0.0, f64::max)
}

/// `‖A x − λ x‖∞ / ‖x‖∞`.
pub fn eigen_residual<T: Scalar>(op: &SparseOperator<T>, x: &[T], lambda: T) -> f64 {
    let ax = op.apply(x);
    let diff = ax
        .iter()
        .zip(x)
        .map(|(&a, &v)| (a - lambda * v).modulus())
        .fold(0.0, f64::max);
    diff / max_norm(x)
}

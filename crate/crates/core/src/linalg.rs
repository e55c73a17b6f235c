//! Complex square matrices with sparse row storage.
//!
//! Each row keeps its nonzero entries as `(column, value)` pairs sorted by
//! column. Exact zeros are never stored, so equal matrices have equal storage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

type Row = Vec<(usize, C64)>;

#[inline]
fn is_zero(c: C64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

/// A `dim x dim` complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DenseRepr", into = "DenseRepr")]
pub struct ComplexMatrix {
    dim: usize,
    rows: Vec<Row>,
}

/// Wire form: `dim` plus row-major `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct DenseRepr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl From<ComplexMatrix> for DenseRepr {
    fn from(m: ComplexMatrix) -> Self {
        DenseRepr {
            dim: m.dim,
            entries: m.to_dense().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<DenseRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(r: DenseRepr) -> Result<Self> {
        ComplexMatrix::from_vec(
            r.dim,
            r.entries.into_iter().map(|[re, im]| C64::new(re, im)).collect(),
        )
    }
}

/// `a + s * b` over sorted sparse rows.
fn merge_rows(a: &[(usize, C64)], b: &[(usize, C64)], s: C64) -> Row {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            a[i - 1]
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, s * b[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, a[i - 1].1 + s * b[j - 1].1)
        };
        if !is_zero(v) {
            out.push((col, v));
        }
    }
    out
}

/// Largest `|a - b|` over the union of the two supports.
fn row_diff(a: &[(usize, C64)], b: &[(usize, C64)]) -> f64 {
    let mut dev: f64 = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let d = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            a[i - 1].1.norm()
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            b[j - 1].1.norm()
        } else {
            i += 1;
            j += 1;
            (a[i - 1].1 - b[j - 1].1).norm()
        };
        dev = dev.max(d);
    }
    dev
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting bad shapes and non-finite entries.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
            });
        }
        let rows = data
            .chunks(dim)
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !is_zero(**v))
                    .map(|(c, &v)| (c, v))
                    .collect()
            })
            .collect();
        Ok(Self { dim, rows })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::BadShape {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(dim, data)
    }

    /// Builds a matrix from nested real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![ONE; dim])
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            if !is_zero(e) {
                m.rows[i].push((i, e));
            }
        }
        m
    }

    /// The matrix unit `|row><col|`.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(row, col, ONE);
        m
    }

    /// The outer product `|a><b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let dim = a.len();
        let mut data = Vec::with_capacity(dim * dim);
        for x in a {
            for y in b {
                data.push(x * y.conj());
            }
        }
        Self::from_vec(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major copy of every entry.
    pub fn to_dense(&self) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[r * n + c] = v;
            }
        }
        out
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Nonzero entries of one row as `(column, value)`, sorted by column.
    pub fn row_entries(&self, row: usize) -> &[(usize, C64)] {
        &self.rows[row]
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        assert!(col < self.dim, "column index out of range");
        let r = &self.rows[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(k) => r[k].1,
            Err(_) => ZERO,
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        assert!(col < self.dim, "column index out of range");
        let r = &mut self.rows[row];
        match (r.binary_search_by_key(&col, |e| e.0), is_zero(value)) {
            (Ok(k), true) => {
                r.remove(k);
            }
            (Ok(k), false) => r[k].1 = value,
            (Err(_), true) => {}
            (Err(k), false) => r.insert(k, (col, value)),
        }
    }

    pub fn row(&self, row: usize) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for &(c, v) in &self.rows[row] {
            out[c] = v;
        }
        out
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out.rows[c].push((r, v.conj()));
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(c, v)| (c, v * s))
                    .filter(|e| !is_zero(e.1))
                    .collect()
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.matmul_unchecked(other))
    }

    pub(crate) fn matmul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut acc = vec![ZERO; n];
        let mut seen = vec![false; n];
        let mut touched: Vec<usize> = Vec::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if !seen[j] {
                        seen[j] = true;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j];
                if !is_zero(v) {
                    out.push((j, v));
                }
                acc[j] = ZERO;
                seen[j] = false;
            }
            touched.clear();
            rows.push(out);
        }
        Self { dim: n, rows }
    }

    /// `self += s * other`, in place.
    pub fn add_scaled(&mut self, s: C64, other: &Self) -> Result<()> {
        self.check_same_dim(other)?;
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            if !b.is_empty() {
                *a = merge_rows(a, b, s);
            }
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim;
        let dim = self.dim * m;
        let mut rows = Vec::with_capacity(dim);
        for arow in &self.rows {
            for brow in &other.rows {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for &(j, a) in arow {
                    for &(l, b) in brow {
                        let v = a * b;
                        if !is_zero(v) {
                            out.push((j * m + l, v));
                        }
                    }
                }
                rows.push(out);
            }
        }
        Self { dim, rows }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|e| e.1.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| row_diff(a, b))
            .fold(0.0, f64::max))
    }

    /// `‖self − 1‖_max`.
    fn identity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (r, row) in self.rows.iter().enumerate() {
            let mut diag = false;
            for &(c, v) in row {
                if c == r {
                    diag = true;
                    dev = dev.max((v - ONE).norm());
                } else {
                    dev = dev.max(v.norm());
                }
            }
            if !diag {
                dev = dev.max(1.0);
            }
        }
        dev
    }

    /// `‖A†A − 1‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        self.dagger().matmul_unchecked(self).identity_deviation()
    }

    /// Newton–Schulz iteration `M ← M (3 − M†M) / 2` towards the unitary
    /// polar factor, run until `‖M†M − 1‖_max ≤ tol` or `max_iter` steps.
    /// Converges quadratically from any `M` with `‖M†M − 1‖ < 1`.
    pub fn polar_refine(&self, tol: f64, max_iter: usize) -> Self {
        let mut m = self.clone();
        for _ in 0..max_iter {
            let g = m.dagger().matmul_unchecked(&m);
            if g.identity_deviation() <= tol {
                break;
            }
            let mut step = Self::identity(self.dim).scale(C64::new(1.5, 0.0));
            step.add_scaled(C64::new(-0.5, 0.0), &g)
                .expect("same dimension");
            m = m.matmul_unchecked(&step);
        }
        m
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `‖A − A†‖_max`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger()).expect("same dimension")
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul_unchecked(self))
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[C64]) -> Vec<C64> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(ZERO, |s, &(c, a)| s + a * v[c]))
            .collect()
    }

    /// Row-vector product `v^T A` (no conjugation of `v`).
    pub(crate) fn left_apply_unchecked(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for (&a, row) in v.iter().zip(&self.rows) {
            if is_zero(a) {
                continue;
            }
            for &(c, b) in row {
                out[c] += a * b;
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:>+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| merge_rows(a, b, ONE))
            .collect();
        ComplexMatrix { dim: self.dim, rows }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| merge_rows(a, b, -ONE))
            .collect();
        ComplexMatrix { dim: self.dim, rows }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        self.matmul_unchecked(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

/// Conjugation `u† a u`, computed as two matrix products.
pub fn conjugate(u: &ComplexMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    conjugate_with(u, a, crate::tolerance::UNITARITY)
}

pub fn conjugate_with(u: &ComplexMatrix, a: &ComplexMatrix, unitarity_tol: f64) -> Result<ComplexMatrix> {
    u.check_same_dim(a)?;
    u.ensure_unitary(unitarity_tol)?;
    Ok(u.dagger().matmul_unchecked(&a.matmul_unchecked(u)))
}

/// `<a|b>` with the conjugate on `a`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// The computational basis vector `|index>`.
pub fn basis_vector(dim: usize, index: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[index] = ONE;
    v
}

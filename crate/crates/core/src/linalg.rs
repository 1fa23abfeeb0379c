//! Small dense row-major matrices over [`Scalar`] and `Complex<Scalar>`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{RealScalar, Scalar};

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds from separate real and imaginary row-major parts.
    pub fn from_parts(re: &[Vec<T>], im: &[Vec<T>]) -> Option<Self> {
        let dim = re.len();
        if im.len() != dim || re.iter().chain(im).any(|row| row.len() != dim) {
            return None;
        }
        Some(Self::from_fn(dim, |i, j| Complex::new(re[i][j].clone(), im[i][j].clone())))
    }

    /// `|v><v|`
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i].clone() * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn re_rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self[(i, j)].re.clone()).collect()).collect()
    }

    pub fn im_rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self[(i, j)].im.clone()).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.clone() * s.clone()).collect() }
    }

    pub fn scale_real(&self, s: &T) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.scale(s.clone())).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `Tr(self * other)` in O(dim^2).
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + self.data[i * n + j].clone() * other.data[j * n + i].clone();
            }
        }
        acc
    }

    /// `Tr(self * conj(other))` with conjugation entrywise, in O(dim^2).
    pub fn trace_product_conj(&self, other: &Self) -> Complex<T> {
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + self.data[i * n + j].clone() * other.data[j * n + i].conj();
            }
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |i, j| self[(i / b, j / b)].clone() * other[(i % b, j % b)].clone())
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(Complex::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    /// `U * self * U^dagger`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let d = a.clone() - b.clone();
                d.re.to_f64().hypot(d.im.to_f64())
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.re.to_f64().hypot(z.im.to_f64())).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CMatrix<U> {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| Complex::new(f(&z.re), f(&z.im))).collect(),
        }
    }

    pub fn to_f64(&self) -> CMatrix<f64> {
        self.map(|x| x.to_f64())
    }
}

impl<T: RealScalar> CMatrix<T> {
    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<nalgebra::Complex<f64>> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let z = &self[(i, j)];
            nalgebra::Complex::new(Scalar::to_f64(&z.re), Scalar::to_f64(&z.im))
        })
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = out.data[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

/// Dense square real matrix, used for the N^2 x N^2 transforms on DWF vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> RMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in matrix-vector product");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Sub-block `(bi, bj)` of size `block` x `block`.
    pub fn block(&self, bi: usize, bj: usize, block: usize) -> Self {
        Self::from_fn(block, |i, j| self[(bi * block + i, bj * block + j)].clone())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs_f64())
            .fold(0.0, f64::max)
    }

    /// Gaussian elimination with the largest-magnitude pivot; exact over rationals.
    pub fn determinant(&self) -> T {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&x, &y| a[x * n + col].abs_f64().total_cmp(&a[y * n + col].abs_f64()));
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pv = a[col * n + col].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                let f = a[r * n + col].clone() / pv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[r * n + j].clone() - f.clone() * a[col * n + j].clone();
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RMatrix<U> {
        RMatrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for RMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for RMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Mul for &RMatrix<T> {
    type Output = RMatrix<T>;
    fn mul(self, rhs: &RMatrix<T>) -> RMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = RMatrix::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.data[i * n + j].clone() + a.clone() * rhs.data[k * n + j].clone();
                    out.data[i * n + j] = v;
                }
            }
        }
        out
    }
}

/// Permutation `P` acting on vectors by `(P v)[i] = v[map[i]]`, i.e. `P[i, map[i]] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// `None` unless `map` is a bijection on `0..map.len()`.
    pub fn new(map: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; map.len()];
        for &m in &map {
            if m >= map.len() || std::mem::replace(&mut seen[m], true) {
                return None;
            }
        }
        Some(Self { map })
    }

    pub fn identity(len: usize) -> Self {
        Self { map: (0..len).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.map.iter().map(|&j| v[j].clone()).collect()
    }

    /// `self * other` as matrices.
    pub fn compose(&self, other: &Self) -> Self {
        Self { map: self.map.iter().map(|&j| other.map[j]).collect() }
    }

    /// Rows of `self * m`, which are rows of `m` reordered.
    pub fn permute_rows<T: Scalar>(&self, m: &RMatrix<T>) -> RMatrix<T> {
        RMatrix::from_fn(m.dim(), |i, j| m[(self.map[i], j)].clone())
    }

    pub fn to_matrix<T: Scalar>(&self) -> RMatrix<T> {
        RMatrix::from_fn(self.len(), |i, j| if self.map[i] == j { T::one() } else { T::zero() })
    }
}

use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use super::{ComplexRational, GaussianInt, LinalgError, Rational};

/// Ring element usable as a matrix entry. Exact types never fail; the
/// fixed-width types report overflow through `None`.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, rhs: &Self) -> Option<Self>;
    fn checked_sub(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul(&self, rhs: &Self) -> Option<Self>;

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self = self.checked_add(&a.checked_mul(b)?)?;
        Some(())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self += a * b;
        Some(())
    }
}

impl Scalar for ComplexRational {
    fn zero() -> Self {
        ComplexRational::zero()
    }
    fn one() -> Self {
        ComplexRational::one()
    }
    fn is_zero(&self) -> bool {
        ComplexRational::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) -> Option<()> {
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
        } else {
            self.re += &a.re * &b.re - &a.im * &b.im;
            self.im += &a.re * &b.im + &a.im * &b.re;
        }
        Some(())
    }
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        i128::checked_add(*self, *rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        i128::checked_sub(*self, *rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        i128::checked_mul(*self, *rhs)
    }
}

impl Scalar for GaussianInt {
    fn zero() -> Self {
        GaussianInt::new(0, 0)
    }
    fn one() -> Self {
        GaussianInt::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        GaussianInt::checked_add(*self, *rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        GaussianInt::checked_sub(*self, *rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        GaussianInt::checked_mul(*self, *rhs)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of Gaussian rationals; Gamma matrices and their products live here.
pub type ExactMatrix = Matrix<ComplexRational>;
pub type RationalMatrix = Matrix<Rational>;

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    fn mismatch<U>(&self, rhs: &Matrix<U>) -> LinalgError {
        LinalgError::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(LinalgError::BadLength {
                    expected: m,
                    actual: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { rows: n, cols: m, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Exact product; zero entries on either side are skipped, which makes
    /// products of monomial matrices quadratic rather than cubic.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(self.mismatch(rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if b.is_zero() {
                        continue;
                    }
                    c.mul_add_assign(a, b).ok_or(LinalgError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> Option<T>) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.mismatch(rhs));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b).ok_or(LinalgError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, T::checked_add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, T::checked_sub)
    }

    pub fn scale(&self, k: &T) -> Result<Self, LinalgError> {
        self.try_map(|x| x.checked_mul(k).ok_or(LinalgError::Overflow))
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Result<Self, LinalgError> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let a = &self[(i / rhs.rows, j / rhs.cols)];
                let b = &rhs[(i % rhs.rows, j % rhs.cols)];
                data.push(a.checked_mul(b).ok_or(LinalgError::Overflow)?);
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn trace(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        (0..self.rows).try_fold(T::zero(), |acc, i| {
            acc.checked_add(&self[(i, i)]).ok_or(LinalgError::Overflow)
        })
    }

    /// `Tr(self · rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Self) -> Result<T, LinalgError> {
        if self.cols != rhs.rows || self.rows != rhs.cols {
            return Err(self.mismatch(rhs));
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                let b = &rhs[(k, i)];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc.mul_add_assign(a, b).ok_or(LinalgError::Overflow)?;
            }
        }
        Ok(acc)
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        loop {
            if exp & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.unwrap_or_else(|| Self::identity(self.rows)))
    }

    /// `Tr(self^exp)`, computed as `Tr(A^⌊k/2⌋ · A^⌈k/2⌉)` so the last
    /// (largest) product is never formed.
    pub fn power_trace(&self, exp: u32) -> Result<T, LinalgError> {
        let (low, high) = self.split_power(exp)?;
        low.trace_of_product(&high)
    }

    fn split_power(&self, exp: u32) -> Result<(Self, Self), LinalgError> {
        let low = self.pow(exp / 2)?;
        let high = if exp.is_multiple_of(2) {
            low.clone()
        } else {
            low.mul(self)?
        };
        Ok((low, high))
    }

    pub fn mat_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::BadLength {
                expected: self.cols,
                actual: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.mul_add_assign(a, b).ok_or(LinalgError::Overflow)?;
                }
                Ok(acc)
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

impl ExactMatrix {
    /// Scale out the common denominator and move to Gaussian `i128`
    /// entries. Returns the scaled matrix and the scale factor.
    pub fn to_gaussian(&self) -> Option<(Matrix<GaussianInt>, Rational)> {
        let denom = Rational::common_denominator(self.data.iter().flat_map(|z| [&z.re, &z.im]));
        let scale = Rational::from_integer(denom);
        let scaled = self
            .try_map(|z| GaussianInt::from_exact(&z.scale(&scale)).ok_or(()))
            .ok()?;
        Some((scaled, scale))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(ComplexRational::is_real)
    }
}

impl RationalMatrix {
    /// Scale out the common denominator and move to `i128` entries.
    /// Returns the scaled matrix and the scale factor.
    pub fn to_integer(&self) -> Option<(Matrix<i128>, Rational)> {
        let denom = Rational::common_denominator(&self.data);
        let scale = Rational::from_integer(denom);
        let scaled = self.try_map(|x| (x * &scale).to_i128().ok_or(())).ok()?;
        Some((scaled, scale))
    }
}

impl From<&RationalMatrix> for ExactMatrix {
    fn from(m: &RationalMatrix) -> Self {
        m.map(|x| ComplexRational::from_real(x.clone()))
    }
}

impl From<&Matrix<GaussianInt>> for ExactMatrix {
    fn from(m: &Matrix<GaussianInt>) -> Self {
        m.map(|z| z.to_exact())
    }
}

impl From<&Matrix<i128>> for RationalMatrix {
    fn from(m: &Matrix<i128>) -> Self {
        m.map(|&x| Rational::from(x))
    }
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    a.mul(b)
}

pub fn mat_trace(a: &ExactMatrix) -> Result<ComplexRational, LinalgError> {
    a.trace()
}

/// Exact `Tr(a^exp)`.
///
/// Powers run on Gaussian `i128` entries after clearing denominators; if any
/// intermediate overflows, the whole computation is redone over exact
/// Gaussian rationals. The final trace contraction is always exact.
pub fn power_trace(a: &ExactMatrix, exp: u32) -> Result<ComplexRational, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if let Some((scaled, scale)) = a.to_gaussian() {
        match scaled.split_power(exp) {
            Ok((low, high)) => {
                let tr = ExactMatrix::from(&low).trace_of_product(&ExactMatrix::from(&high))?;
                let factor = scale.pow(exp as i32)?.recip()?;
                return Ok(tr.scale(&factor));
            }
            Err(LinalgError::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    a.power_trace(exp)
}

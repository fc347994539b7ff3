//! Small dense linear algebra: row-major matrices, cyclic Jacobi eigensolvers
//! for real symmetric and complex Hermitian input, and the unitary
//! exponential of a Hermitian matrix.
//!
//! Dimensions here never exceed a few hundred, so plain `O(n^3)` Jacobi
//! sweeps are accurate and fast enough.

use std::ops::{Add, Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::{Error, Real, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy + Zero + One + Add<Output = E> + Mul<Output = E>> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![E::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = E::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(E::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`; the row index of `rhs` varies fastest.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        Self::from_fn(rows, cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)] * rhs[(r % rhs.rows, c % rhs.cols)]
        })
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &E {
        &self.data[r * self.cols + c]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Real> Matrix<T> {
    pub fn to_complex(&self) -> Matrix<Complex<T>> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// `max |MᵀM − I|`.
    pub fn orthogonality_residual(&self) -> T {
        let g = self.transpose().matmul(self);
        g.max_abs_diff(&Self::identity(self.cols))
    }
}

impl<T: Real> Matrix<Complex<T>> {
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).norm()))
    }

    /// `max |U†U − I|`.
    pub fn unitarity_residual(&self) -> T {
        let g = self.adjoint().matmul(self);
        g.max_abs_diff(&Self::identity(self.cols))
    }

    /// `max |H − H†|`.
    pub fn hermiticity_residual(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn real_part(&self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }
}

/// Eigen-decomposition of a real symmetric or complex Hermitian matrix.
///
/// `values` ascend; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen<E, T> {
    pub values: Vec<T>,
    pub vectors: Matrix<E>,
}

const MAX_SWEEPS: usize = 100;

fn sort_eigen<E: Copy + Zero + One + Add<Output = E> + Mul<Output = E>, T: Real>(
    values: Vec<T>,
    vectors: Matrix<E>,
) -> Eigen<E, T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalue"));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = Matrix::from_fn(vectors.rows, vectors.cols, |r, c| vectors[(r, order[c])]);
    Eigen {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
pub fn symmetric_eigen<T: Real>(m: &Matrix<T>) -> Result<Eigen<T, T>> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::Internal("symmetric_eigen: matrix not square".into()));
    }
    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(n);
    let scale = a.data.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    if scale == T::zero() {
        return Ok(sort_eigen(vec![T::zero(); n], v));
    }
    let tol = T::epsilon() * T::lit(0.1) * scale;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(n, |r, c| a[(r, c)].abs());
        if off <= tol {
            let values = (0..n).map(|i| a[(i, i)]).collect();
            return Ok(sort_eigen(values, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let (c, s) = jacobi_rotation(a[(p, p)], a[(q, q)], apq);
                rotate_real(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    Err(Error::Numeric("symmetric Jacobi eigensolver did not converge".into()))
}

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
///
/// Each pivot first rotates the phase of column `q` so the pivot entry
/// becomes real and positive, then applies an ordinary real Jacobi rotation.
pub fn hermitian_eigen<T: Real>(m: &Matrix<Complex<T>>) -> Result<Eigen<Complex<T>, T>> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::Internal("hermitian_eigen: matrix not square".into()));
    }
    let mut a = m.clone();
    let mut v = Matrix::<Complex<T>>::identity(n);
    let scale = a.data.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    if scale == T::zero() {
        return Ok(sort_eigen(vec![T::zero(); n], v));
    }
    let tol = T::epsilon() * T::lit(0.1) * scale;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(n, |r, c| a[(r, c)].norm());
        if off <= tol {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(sort_eigen(values, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                // A <- S† A S with S = diag(.., conj(apq)/r at q, ..)
                let phase = apq.conj() / r;
                for k in 0..n {
                    a[(k, q)] = a[(k, q)] * phase;
                    v[(k, q)] = v[(k, q)] * phase;
                }
                let phase_c = phase.conj();
                for k in 0..n {
                    a[(q, k)] = a[(q, k)] * phase_c;
                }
                let (c, s) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, r);
                let cz = Complex::new(c, T::zero());
                let sz = Complex::new(s, T::zero());
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = cz * akp - sz * akq;
                    a[(k, q)] = sz * akp + cz * akq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = cz * vkp - sz * vkq;
                    v[(k, q)] = sz * vkp + cz * vkq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = cz * apk - sz * aqk;
                    a[(q, k)] = sz * apk + cz * aqk;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
            }
        }
    }
    Err(Error::Numeric("Hermitian Jacobi eigensolver did not converge".into()))
}

fn off_diagonal_norm<T: Real>(n: usize, abs: impl Fn(usize, usize) -> T) -> T {
    let mut s = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                let x = abs(r, c);
                s = s + x * x;
            }
        }
    }
    s.sqrt()
}

/// Rotation `(c, s)` annihilating the real pivot `apq`.
fn jacobi_rotation<T: Real>(app: T, aqq: T, apq: T) -> (T, T) {
    let tau = (aqq - app) / (T::lit(2.0) * apq);
    let t = if tau == T::zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, t * c)
}

fn rotate_real<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, c: T, s: T) {
    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
}

/// `exp(i·t·H)` for Hermitian `H`, via its eigen-decomposition.
pub fn expm_i_hermitian<T: Real>(h: &Matrix<Complex<T>>, t: T) -> Result<Matrix<Complex<T>>> {
    let eig = hermitian_eigen(h)?;
    let n = h.rows;
    let v = &eig.vectors;
    let phases: Vec<Complex<T>> = eig
        .values
        .iter()
        .map(|&l| Complex::from_polar(T::one(), t * l))
        .collect();
    Ok(Matrix::from_fn(n, n, |r, c| {
        (0..n).fold(Complex::zero(), |acc, k| acc + v[(r, k)] * phases[k] * v[(c, k)].conj())
    }))
}

/// Pairwise (cascade) summation; deterministic for a given input order.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::zero(), |s, &x| s + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of `f(i)` for `i` in `range`.
pub fn pairwise_sum_by<T: Real>(range: std::ops::Range<usize>, f: &impl Fn(usize) -> T) -> T {
    const BLOCK: usize = 32;
    if range.len() <= BLOCK {
        return range.fold(T::zero(), |s, i| s + f(i));
    }
    let mid = range.start + range.len() / 2;
    pairwise_sum_by(range.start..mid, f) + pairwise_sum_by(mid..range.end, f)
}

pub fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    let sq: Vec<T> = v.iter().map(|z| z.norm_sqr()).collect();
    pairwise_sum(&sq).sqrt()
}

/// `⟨a|b⟩ = Σ conj(a_i) b_i`.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Complex::zero(), |s, (x, y)| s + x.conj() * y)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot that is exactly zero is replaced by `eps·‖A‖_max`; inverse
/// iteration relies on this to survive a shift sitting on an eigenvalue.
pub fn solve_complex<T: Real>(a: &Matrix<Complex<T>>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(Error::Internal("solve_complex: shape mismatch".into()));
    }
    let scale = a.data.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let floor = T::epsilon() * scale.max(T::min_positive_value());
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i * n + col].norm().partial_cmp(&m[j * n + col].norm()).expect("finite"))
            .expect("non-empty");
        if piv != col {
            for c in 0..n {
                m.swap(piv * n + c, col * n + c);
            }
            x.swap(piv, col);
        }
        if m[col * n + col].norm() < floor {
            m[col * n + col] = Complex::new(floor, T::zero());
        }
        let p = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = m[col * n + c];
                m[r * n + c] = m[r * n + c] - f * v;
            }
            let v = x[col];
            x[r] = x[r] - f * v;
        }
    }
    for r in (0..n).rev() {
        let mut acc = x[r];
        for c in r + 1..n {
            acc = acc - m[r * n + c] * x[c];
        }
        x[r] = acc / m[r * n + r];
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numeric("linear solve produced non-finite values".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn symmetric_eigen_of_2x2() {
        let m = Matrix::from_row_major(2, 2, vec![2.0_f64, 1.0, 1.0, 2.0]);
        let e = symmetric_eigen(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
        assert!(e.vectors.orthogonality_residual() < 1e-15);
    }

    #[test]
    fn hermitian_eigen_reconstructs_input() {
        let m = Matrix::from_row_major(
            3,
            3,
            vec![
                C::new(1.0, 0.0),
                C::new(0.5, 0.25),
                C::new(0.0, -1.0),
                C::new(0.5, -0.25),
                C::new(-2.0, 0.0),
                C::new(0.3, 0.1),
                C::new(0.0, 1.0),
                C::new(0.3, -0.1),
                C::new(0.7, 0.0),
            ],
        );
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.vectors.unitarity_residual() < 1e-14);
        let d = Matrix::from_fn(3, 3, |r, c| if r == c { C::new(e.values[r], 0.0) } else { C::zero() });
        let rebuilt = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
        assert!(rebuilt.max_abs_diff(&m) < 1e-14);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn expm_of_pauli_x() {
        let x = Matrix::from_row_major(2, 2, vec![C::zero(), C::one(), C::one(), C::zero()]);
        let t = 0.37;
        let u = expm_i_hermitian(&x, t).unwrap();
        let expect = Matrix::from_row_major(
            2,
            2,
            vec![
                C::new(t.cos(), 0.0),
                C::new(0.0, t.sin()),
                C::new(0.0, t.sin()),
                C::new(t.cos(), 0.0),
            ],
        );
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn kron_layout_puts_rhs_fastest() {
        let a = Matrix::from_row_major(2, 2, vec![1.0, 2.0, 3.0, 4.0]);
        let b = Matrix::from_row_major(2, 2, vec![0.0, 1.0, 1.0, 0.0]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], 1.0);
        assert_eq!(k[(1, 2)], 2.0);
        assert_eq!(k[(3, 2)], 4.0);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_input() {
        let xs: Vec<f64> = (1..=1000).map(|k| 1.0 / k as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn complex_solve_recovers_known_vector() {
        let a = Matrix::from_fn(4, 4, |r, c| Complex::new(1.0 / (r + c + 1) as f64, (r as f64 - c as f64) * 0.1));
        let want: Vec<Complex<f64>> = (0..4).map(|i| Complex::new(i as f64, 1.0 - i as f64)).collect();
        let b = a.matvec(&want);
        let got = solve_complex(&a, &b).unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10);
        }
    }
}

//! Symmetric-sector representation of `n` qubits.
//!
//! The sector is spanned by the Dicke states `|s_z⟩` (`s` excitations in the
//! frame where the marked item is the all-zeros string). In that basis the
//! collective operator `Σ S_x` is tridiagonal, and its eigenvectors `|s_x⟩`
//! (eigenvalue `n/2 − s`) form the overlap matrix `K` whose first row squared
//! is the binomial distribution.

use crate::linalg::{symmetric_eigen, Matrix};
use crate::{Error, Real, Result};

/// Largest `n` accepted by the direct (non-log-domain) constructors.
pub const MAX_SECTOR_QUBITS: usize = 64;

/// `P_n(s) = C(n, s) 2^{-n}` for `s = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialWeights<T> {
    n: usize,
    w: Vec<T>,
}

impl<T: Real> BinomialWeights<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.w
    }

    pub fn get(&self, s: usize) -> T {
        self.w[s]
    }

    pub fn into_vec(self) -> Vec<T> {
        self.w
    }
}

fn check_range(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SECTOR_QUBITS {
        return Err(Error::Domain(format!(
            "qubit count {n} outside 1..={MAX_SECTOR_QUBITS}"
        )));
    }
    Ok(())
}

/// Binomial weights by the multiplicative recurrence `w[s+1] = w[s](n−s)/(s+1)`
/// from `w[0] = 2^{-n}`; the upper half is mirrored so `w[s] == w[n−s]` exactly.
pub fn binomial_weights<T: Real>(n: usize) -> Result<BinomialWeights<T>> {
    check_range(n)?;
    let mut w = vec![T::zero(); n + 1];
    w[0] = T::lit(2.0).powi(-(n as i32));
    for s in 0..n / 2 {
        w[s + 1] = w[s] * T::count(n - s) / T::count(s + 1);
    }
    for s in 0..=n / 2 {
        w[n - s] = w[s];
    }
    Ok(BinomialWeights { n, w })
}

/// Binomial weights for any `n ≥ 1`. Beyond [`MAX_SECTOR_QUBITS`] the ratio
/// recurrence runs outward from the central term (which avoids underflowing
/// `2^{-n}`), the upper half is mirrored, and the result is normalised by its
/// pairwise sum. Tail terms below the smallest positive float come out as zero.
pub fn binomial_weights_any<T: Real>(n: usize) -> Result<BinomialWeights<T>> {
    if n == 0 {
        return Err(Error::Domain("qubit count must be at least 1".into()));
    }
    if n <= MAX_SECTOR_QUBITS {
        return binomial_weights(n);
    }
    let mut w = vec![T::zero(); n + 1];
    let c = n / 2;
    w[c] = T::one();
    for s in (1..=c).rev() {
        w[s - 1] = w[s] * T::count(s) / T::count(n - s + 1);
    }
    for s in 0..=c {
        w[n - s] = w[s];
    }
    let total = crate::linalg::pairwise_sum(&w);
    w.iter_mut().for_each(|x| *x = *x / total);
    Ok(BinomialWeights { n, w })
}

/// `Σ_α S_x^{(α)}` on the symmetric sector in the `|s_z⟩` basis:
/// zero diagonal, `J[s][s+1] = ½√((s+1)(n−s))`.
pub fn collective_x_operator<T: Real>(n: usize) -> Result<Matrix<T>> {
    check_range(n)?;
    let mut j = Matrix::zeros(n + 1, n + 1);
    for s in 0..n {
        let v = T::lit(0.5) * (T::count((s + 1) * (n - s))).sqrt();
        j[(s, s + 1)] = v;
        j[(s + 1, s)] = v;
    }
    Ok(j)
}

/// The `|s_x⟩` basis expressed in `|s_z⟩` coordinates.
#[derive(Debug, Clone)]
pub struct OverlapBasis<T> {
    pub n: usize,
    /// Column `s` holds `|s_x⟩`; entry `(r, s)` is `⟨r_z|s_x⟩`.
    pub k: Matrix<T>,
    /// `x_eigenvalues[s] = n/2 − s`.
    pub x_eigenvalues: Vec<T>,
}

impl<T: Real> OverlapBasis<T> {
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Coordinates of `|0_x⟩` (the uniform superposition) in the z basis.
    pub fn uniform_state(&self) -> Vec<T> {
        self.k.column(0)
    }
}

/// Diagonalises [`collective_x_operator`] and fixes signs so that
/// `⟨0_z|s_x⟩ > 0` for every `s`.
pub fn x_eigenbasis<T: Real>(n: usize) -> Result<OverlapBasis<T>> {
    let j = collective_x_operator::<T>(n)?;
    let eig = symmetric_eigen(&j)?;
    let dim = n + 1;
    // ascending eigenvalues -> column s of K takes eigenvalue index dim-1-s
    let mut k = Matrix::from_fn(dim, dim, |r, s| eig.vectors[(r, dim - 1 - s)]);
    for s in 0..dim {
        let expected = T::count(n) / T::lit(2.0) - T::count(s);
        let got = eig.values[dim - 1 - s];
        if (got - expected).abs() > T::lit(1e-6) * (T::one() + T::count(n)) {
            return Err(Error::Numeric(format!(
                "collective-x eigenvalue {got:?} does not match expected {expected:?}"
            )));
        }
        if k[(0, s)] < T::zero() {
            for r in 0..dim {
                k[(r, s)] = -k[(r, s)];
            }
        }
    }
    // Jacobi leaves KᵀK − I at ~n·eps; two Newton–Schulz steps take it to
    // rounding level, which keeps long products of G' norm-preserving.
    for _ in 0..2 {
        k = newton_schulz_step(&k);
    }
    let x_eigenvalues = (0..dim)
        .map(|s| T::count(n) / T::lit(2.0) - T::count(s))
        .collect();
    Ok(OverlapBasis { n, k, x_eigenvalues })
}

/// `K(3I − KᵀK)/2`: one step towards the nearest orthogonal matrix.
fn newton_schulz_step<T: Real>(k: &Matrix<T>) -> Matrix<T> {
    let g = k.transpose().matmul(k);
    let dim = k.cols();
    let m = Matrix::from_fn(dim, dim, |r, c| {
        let id = if r == c { T::lit(3.0) } else { T::zero() };
        (id - g[(r, c)]) * T::lit(0.5)
    });
    k.matmul(&m)
}

//! Eigen-analysis of the one-solution step `Ĝ'Ô'` on the symmetric sector.
//!
//! Eigenvalues are written `e^{i(γ + nφ/2)}`. The pair `γ±` closest to zero
//! carries almost all of the overlap between the uniform state and the marked
//! item; their splitting sets the iteration count.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::linalg::{hermitian_eigen, inner, pairwise_sum_by, solve_complex, vec_norm, Matrix};
use crate::phase_solver::{solve_phi, OmegaParam};
use crate::reduced_sim::{step_from_basis, ReducedOperator};
use crate::spin_space::{binomial_weights, x_eigenbasis};
use crate::{Error, Real, Result};

/// Largest `n` accepted by the asymptotic tables.
pub const MAX_ASYMPTOTIC_N: usize = 40;

/// Secular residual threshold.
pub const SECULAR_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct Eigenpair<T> {
    pub gamma: T,
    pub eigenvalue: Complex<T>,
    /// Unit vector in the `|s_z⟩` basis, phased so `⟨0_z|ψ⟩ ≥ 0`.
    pub vector: Vec<Complex<T>>,
    /// `⟨0_z|ψ⟩`.
    pub overlap_z: Complex<T>,
    /// `⟨ψ|0_x⟩`.
    pub overlap_x: Complex<T>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport<T> {
    pub n: usize,
    pub omega: T,
    pub phi: T,
    /// Sorted by ascending `γ`.
    pub eigenpairs: Vec<Eigenpair<T>>,
    pub gamma_plus_idx: usize,
    pub gamma_minus_idx: usize,
}

impl<T: Real> SpectralReport<T> {
    pub fn gamma_plus(&self) -> &Eigenpair<T> {
        &self.eigenpairs[self.gamma_plus_idx]
    }

    pub fn gamma_minus(&self) -> &Eigenpair<T> {
        &self.eigenpairs[self.gamma_minus_idx]
    }

    /// `|Σ|⟨0_x|ψ⟩|² − 1|` and `|Σ|⟨0_z|ψ⟩|² − 1|`.
    pub fn completeness_residuals(&self) -> (T, T) {
        let ps = &self.eigenpairs;
        let x = pairwise_sum_by(0..ps.len(), &|i| ps[i].overlap_x.norm_sqr());
        let z = pairwise_sum_by(0..ps.len(), &|i| ps[i].overlap_z.norm_sqr());
        ((x - T::one()).abs(), (z - T::one()).abs())
    }

    /// `Σ_{γ≠γ±} |⟨0_x|ψ⟩|²`.
    pub fn residual_mass_x(&self) -> T {
        self.residual_mass(|p| p.overlap_x.norm_sqr())
    }

    /// `Σ_{γ≠γ±} |⟨0_z|ψ⟩|²`.
    pub fn residual_mass_z(&self) -> T {
        self.residual_mass(|p| p.overlap_z.norm_sqr())
    }

    fn residual_mass(&self, f: impl Fn(&Eigenpair<T>) -> T) -> T {
        let ps = &self.eigenpairs;
        let skip = [self.gamma_plus_idx, self.gamma_minus_idx];
        pairwise_sum_by(0..ps.len(), &|i| if skip.contains(&i) { T::zero() } else { f(&ps[i]) })
    }

    /// `max ‖Uψ − λψ‖` over all eigenpairs.
    pub fn eigen_residual(&self, u: &ReducedOperator<T>) -> T {
        self.eigenpairs.iter().fold(T::zero(), |m, p| {
            let uv = u.entries.matvec(&p.vector);
            let r: Vec<Complex<T>> = uv.iter().zip(&p.vector).map(|(&a, &b)| a - p.eigenvalue * b).collect();
            m.max(vec_norm(&r))
        })
    }
}

/// Eigenvalue with its unit eigenvector.
pub type EigenPairRaw<T> = (Complex<T>, Vec<Complex<T>>);

/// Eigen-decomposition of a normal matrix.
///
/// The Hermitian part `(U+U†)/2` is diagonalised first; within each cluster
/// of (nearly) equal eigenvalues the anti-Hermitian part `(U−U†)/2i` is
/// diagonalised on the cluster's subspace. The two commute for normal `U`, so
/// the result diagonalises `U`. Eigenvalues are Rayleigh quotients.
pub fn normal_eigen<T: Real>(u: &Matrix<Complex<T>>) -> Result<Vec<EigenPairRaw<T>>> {
    let dim = u.rows();
    let ud = u.adjoint();
    let half = Complex::new(T::lit(0.5), T::zero());
    let herm = u.add(&ud).scale(half);
    let anti = u.sub(&ud).scale(Complex::new(T::zero(), -T::lit(0.5)));
    let eh = hermitian_eigen(&herm)?;

    let tol = T::epsilon().sqrt().max(T::lit(1e-4));
    let mut out = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && eh.values[end] - eh.values[end - 1] < tol {
            end += 1;
        }
        let m = end - start;
        let q = Matrix::from_fn(dim, m, |r, c| eh.vectors[(r, start + c)]);
        let vectors = if m == 1 {
            q
        } else {
            let sub = q.adjoint().matmul(&anti.matmul(&q));
            let sub = sub.add(&sub.adjoint()).scale(half);
            q.matmul(&hermitian_eigen(&sub)?.vectors)
        };
        for c in 0..m {
            let mut v = vectors.column(c);
            let norm = vec_norm(&v);
            if !(norm > T::zero()) {
                return Err(Error::Numeric("eigenvector collapsed to zero".into()));
            }
            v.iter_mut().for_each(|z| *z = *z / norm);
            let lambda = inner(&v, &u.matvec(&v));
            out.push((lambda, v));
        }
        start = end;
    }
    polish(u, &mut out, tol)?;
    Ok(out)
}

/// Two steps of shifted inverse iteration on every eigenpair that is
/// isolated by at least `sep`. Brings the eigenvector residual from the
/// Jacobi level down to rounding level, which matters for the tiny marked-item
/// components of eigenvectors sitting next to a pole of the secular equation.
fn polish<T: Real>(u: &Matrix<Complex<T>>, pairs: &mut [(Complex<T>, Vec<Complex<T>>)], sep: T) -> Result<()> {
    let dim = u.rows();
    let lambdas: Vec<Complex<T>> = pairs.iter().map(|p| p.0).collect();
    for (i, (lambda, v)) in pairs.iter_mut().enumerate() {
        let isolated = lambdas.iter().enumerate().all(|(j, &l)| j == i || (l - *lambda).norm() > sep);
        if !isolated {
            continue;
        }
        for _ in 0..2 {
            let shifted = Matrix::from_fn(dim, dim, |r, c| if r == c { u[(r, c)] - *lambda } else { u[(r, c)] });
            let mut y = solve_complex(&shifted, v)?;
            let norm = vec_norm(&y);
            y.iter_mut().for_each(|z| *z = *z / norm);
            *lambda = inner(&y, &u.matvec(&y));
            *v = y;
        }
    }
    Ok(())
}

fn wrap_angle<T: Real>(x: T) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let mut y = x - two_pi * (x / two_pi).round();
    if y <= -T::PI() {
        y = y + two_pi;
    }
    if y > T::PI() {
        y = y - two_pi;
    }
    y
}

/// Full eigensystem of the step operator with `γ±` identified.
pub fn eigendecompose_step<T: Real>(u: &ReducedOperator<T>, n: usize, omega: T, phi: T) -> Result<SpectralReport<T>> {
    if u.dim != n + 1 {
        return Err(Error::Domain(format!("operator dimension {} does not match n={n}", u.dim)));
    }
    let unit_tol = T::epsilon().sqrt();
    if u.unitarity_residual() > unit_tol {
        return Err(Error::Domain("step operator is not unitary".into()));
    }
    let basis = x_eigenbasis::<T>(n)?;
    let uniform: Vec<Complex<T>> = basis.uniform_state().into_iter().map(|x| Complex::new(x, T::zero())).collect();
    let shift = T::count(n) * phi / T::lit(2.0);

    let mut eigenpairs: Vec<Eigenpair<T>> = normal_eigen(&u.entries)?
        .into_iter()
        .map(|(lambda, mut v)| {
            // fix the free phase so that ⟨0_z|ψ⟩ is real and non-negative
            if v[0].norm() > T::zero() {
                let ph = v[0].conj() / v[0].norm();
                v.iter_mut().for_each(|z| *z = *z * ph);
            }
            Eigenpair {
                gamma: wrap_angle(lambda.arg() - shift),
                eigenvalue: lambda,
                overlap_z: v[0],
                overlap_x: inner(&v, &uniform),
                vector: v,
            }
        })
        .collect();
    eigenpairs.sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).expect("finite eigenphase"));

    let pick = |positive: bool| {
        let mut best: Option<usize> = None;
        for (i, p) in eigenpairs.iter().enumerate() {
            let side = if positive { p.gamma > T::zero() } else { p.gamma < T::zero() };
            if !side {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let (gb, gi) = (eigenpairs[b].gamma.abs(), p.gamma.abs());
                    let tie = (gb - gi).abs() <= T::epsilon() * T::lit(16.0);
                    if (tie && p.overlap_x.norm() > eigenpairs[b].overlap_x.norm()) || (!tie && gi < gb) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    };
    let (Some(plus), Some(minus)) = (pick(true), pick(false)) else {
        return Err(Error::Analysis("no sign-opposite pair of eigenphases near zero".into()));
    };
    Ok(SpectralReport {
        n,
        omega,
        phi,
        eigenpairs,
        gamma_plus_idx: plus,
        gamma_minus_idx: minus,
    })
}

/// Solves `φ(ω)`, builds the step and decomposes it.
pub fn spectral_report<T: Real>(n: usize, omega: OmegaParam<T>) -> Result<SpectralReport<T>> {
    let phi = solve_phi(n, omega)?.phi;
    let basis = x_eigenbasis::<T>(n)?;
    let u = step_from_basis(&basis, phi, omega.value);
    eigendecompose_step(&u, n, omega.value, phi)
}

/// Per-eigenpair secular residuals.
#[derive(Debug, Clone, Serialize)]
pub struct SecularRow<T> {
    pub gamma: T,
    /// `max_s |⟨s_x|ψ⟩(1−e^{i(γ+sφ)}) − ⟨s_x|0_z⟩⟨0_z|ψ⟩(1−e^{iω})|`.
    pub component: T,
    /// `|(1−e^{iω}) Σ_s P_n(s)/(1−e^{i(γ+sφ)}) − 1|`.
    pub eigenvalue_sum: T,
    /// `||⟨0_z|ψ⟩|²|1−e^{iω}|² Σ_s P_n(s)/|1−e^{i(γ+sφ)}|² − 1|`.
    pub normalization_sum: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct SecularSummary<T> {
    pub rows: Vec<SecularRow<T>>,
    /// Per `s`: `|Σ_γ |⟨0_z|ψ⟩|²(1−e^{iω})/(1−e^{i(γ+sφ)}) − 1|`.
    pub trace_identity: Vec<T>,
    pub max_residual: T,
}

fn one_minus_phase<T: Real>(x: T) -> Complex<T> {
    // 1 − e^{ix} = −2i·sin(x/2)·e^{ix/2}, accurate for small x
    let (s, c) = (x * T::lit(0.5)).sin_cos();
    let half = Complex::new(c, s);
    Complex::new(T::zero(), -T::lit(2.0) * s) * half
}

/// Residual of the eigenvalue sum rule at an arbitrary `γ`.
pub fn eigenvalue_sum_residual<T: Real>(n: usize, omega: T, phi: T, gamma: T) -> Result<T> {
    let dens: Vec<Complex<T>> = (0..=n).map(|s| one_minus_phase(gamma + T::count(s) * phi)).collect();
    let w = binomial_weights::<T>(n)?;
    Ok(eigenvalue_sum_from(w.as_slice(), one_minus_phase(omega), &dens))
}

fn eigenvalue_sum_from<T: Real>(w: &[T], om: Complex<T>, dens: &[Complex<T>]) -> T {
    let terms: Vec<Complex<T>> = w.iter().zip(dens).map(|(&p, &d)| Complex::new(p, T::zero()) / d).collect();
    let re = pairwise_sum_by(0..terms.len(), &|i| terms[i].re);
    let im = pairwise_sum_by(0..terms.len(), &|i| terms[i].im);
    (om * Complex::new(re, im) - Complex::new(T::one(), T::zero())).norm()
}

/// `1 − e^{i(γ+sφ)}` for every `s`, evaluated as a shifted Rayleigh quotient
/// in the x basis rather than from the rounded `γ`.
///
/// When an eigenvalue sits within `~P_n(s)` of the pole `γ + sφ ≡ 0`, the
/// absolute rounding of `γ` (one ulp of a number near `π`) would otherwise be
/// amplified by `P_n(s)/|γ+sφ|²` in the sum rules.
fn pole_offsets<T: Real>(x: &[Complex<T>], k0: &[T], psi0: Complex<T>, phi: T, om: Complex<T>) -> Vec<Complex<T>> {
    let dim = x.len();
    (0..dim)
        .map(|s| {
            let terms: Vec<Complex<T>> = (0..dim)
                .map(|t| {
                    let rel = phi * (T::count(s) - T::count(t));
                    let applied = one_minus_phase(rel) * x[t] + Complex::from_polar(T::one(), rel) * om * psi0 * k0[t];
                    x[t].conj() * applied
                })
                .collect();
            let re = pairwise_sum_by(0..dim, &|i| terms[i].re);
            let im = pairwise_sum_by(0..dim, &|i| terms[i].im);
            Complex::new(re, im)
        })
        .collect()
}

/// Checks the component relation and both sum rules for every eigenpair.
pub fn verify_secular<T: Real>(report: &SpectralReport<T>) -> Result<SecularSummary<T>> {
    let summary = secular_residuals(report)?;
    let tol = T::lit(SECULAR_TOLERANCE);
    if summary.max_residual < tol {
        return Ok(summary);
    }
    let bad: Vec<String> = summary
        .rows
        .iter()
        .filter(|r| r.component.max(r.eigenvalue_sum).max(r.normalization_sum) >= tol)
        .map(|r| format!("{:e}", r.gamma))
        .collect();
    Err(Error::Verification(format!(
        "secular residual {:e} above {SECULAR_TOLERANCE:e}; offending gamma: [{}]",
        summary.max_residual,
        bad.join(", ")
    )))
}

/// Computes the residuals without thresholding.
pub fn secular_residuals<T: Real>(report: &SpectralReport<T>) -> Result<SecularSummary<T>> {
    let n = report.n;
    let basis = x_eigenbasis::<T>(n)?;
    let w = binomial_weights::<T>(n)?;
    let k = &basis.k;
    let k0: Vec<T> = k.row(0).to_vec();
    let om = one_minus_phase(report.omega);
    let dim = n + 1;

    let mut rows = Vec::with_capacity(report.eigenpairs.len());
    let mut all_dens = Vec::with_capacity(report.eigenpairs.len());
    for p in &report.eigenpairs {
        let psi0 = p.overlap_z;
        let x: Vec<Complex<T>> = (0..dim)
            .map(|s| (0..dim).fold(Complex::<T>::zero(), |acc, r| acc + p.vector[r] * k[(r, s)]))
            .collect();
        let dens = pole_offsets(&x, &k0, psi0, report.phi, om);
        let component = (0..dim).fold(T::zero(), |m, s| m.max((x[s] * dens[s] - psi0 * om * k0[s]).norm()));
        let eigenvalue_sum = eigenvalue_sum_from(w.as_slice(), om, &dens);
        let norm_terms = pairwise_sum_by(0..dim, &|s| w.get(s) / dens[s].norm_sqr());
        let normalization_sum = (psi0.norm_sqr() * om.norm_sqr() * norm_terms - T::one()).abs();
        rows.push(SecularRow {
            gamma: p.gamma,
            component,
            eigenvalue_sum,
            normalization_sum,
        });
        all_dens.push(dens);
    }

    let ps = &report.eigenpairs;
    let trace_identity: Vec<T> = (0..dim)
        .map(|s| {
            let terms: Vec<Complex<T>> = ps
                .iter()
                .zip(&all_dens)
                .map(|(p, d)| om * p.overlap_z.norm_sqr() / d[s])
                .collect();
            let re = pairwise_sum_by(0..terms.len(), &|i| terms[i].re);
            let im = pairwise_sum_by(0..terms.len(), &|i| terms[i].im);
            Complex::new(re - T::one(), im).norm()
        })
        .collect();

    let max_residual = rows
        .iter()
        .map(|r| r.component.max(r.eigenvalue_sum).max(r.normalization_sum))
        .chain(trace_identity.iter().copied())
        .fold(T::zero(), T::max);
    Ok(SecularSummary {
        rows,
        trace_identity,
        max_residual,
    })
}

fn check_n_list(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::Domain("empty n list".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("n list must be strictly increasing".into()));
    }
    if let Some(n) = n_list.iter().copied().find(|&n| n == 0 || n > MAX_ASYMPTOTIC_N) {
        return Err(Error::Domain(format!("n={n} outside 1..={MAX_ASYMPTOTIC_N}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaRow<T> {
    pub n: usize,
    /// `2^{n/2}γ₊`.
    pub scaled_plus: T,
    /// `2^{n/2}γ₋`.
    pub scaled_minus: T,
    /// `2 sin(ω/2)`.
    pub target: T,
    /// `max(|2^{n/2}γ₊ − target|, |2^{n/2}γ₋ + target|)`.
    pub deviation: T,
    pub relative_deviation: T,
}

pub fn gamma_asymptotics<T: Real>(omega: OmegaParam<T>, n_list: &[usize]) -> Result<Vec<GammaRow<T>>> {
    check_n_list(n_list)?;
    let target = T::lit(2.0) * (omega.value * T::lit(0.5)).sin();
    n_list
        .iter()
        .map(|&n| {
            let r = spectral_report(n, omega)?;
            let scale = T::lit(2.0).powf(T::count(n) / T::lit(2.0));
            let sp = scale * r.gamma_plus().gamma;
            let sm = scale * r.gamma_minus().gamma;
            let deviation = (sp - target).abs().max((sm + target).abs());
            Ok(GammaRow {
                n,
                scaled_plus: sp,
                scaled_minus: sm,
                target,
                deviation,
                relative_deviation: deviation / target.abs(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapRow<T> {
    pub n: usize,
    /// `|⟨0_z|ψ_γ₊⟩|⁻²`.
    pub inv_sq_plus: T,
    pub inv_sq_minus: T,
    /// `⟨0_z|ψ_γ₊⟩⟨ψ_γ₊|0_x⟩`.
    pub product_plus: Complex<T>,
    pub product_minus: Complex<T>,
    pub residual_mass_x: T,
    pub residual_mass_z: T,
}

pub fn overlap_asymptotics<T: Real>(omega: OmegaParam<T>, n_list: &[usize]) -> Result<Vec<OverlapRow<T>>> {
    check_n_list(n_list)?;
    n_list
        .iter()
        .map(|&n| {
            let r = spectral_report(n, omega)?;
            let (p, m) = (r.gamma_plus(), r.gamma_minus());
            Ok(OverlapRow {
                n,
                inv_sq_plus: T::one() / p.overlap_z.norm_sqr(),
                inv_sq_minus: T::one() / m.overlap_z.norm_sqr(),
                product_plus: p.overlap_z * p.overlap_x,
                product_minus: m.overlap_z * m.overlap_x,
                residual_mass_x: r.residual_mass_x(),
                residual_mass_z: r.residual_mass_z(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoModePrediction<T> {
    pub iterations: u64,
    /// `|Σ_± e^{iNγ±}⟨0_z|ψ±⟩⟨ψ±|0_x⟩|²`.
    pub predicted: T,
    /// `2√(m_x·m_z)` with `m_x, m_z` the residual masses; bounds the gap to
    /// the exact success probability.
    pub bound: T,
}

/// Success probability after `iterations` steps keeping only `γ±`.
pub fn two_mode_prediction<T: Real>(report: &SpectralReport<T>, iterations: u64) -> TwoModePrediction<T> {
    let amp = [report.gamma_plus(), report.gamma_minus()]
        .iter()
        .fold(Complex::<T>::zero(), |acc, p| {
            // reduce N·γ mod 2π in f64 so large N keeps its phase
            let angle = (p.gamma.to_f64().expect("finite") * iterations as f64) % (2.0 * std::f64::consts::PI);
            acc + Complex::from_polar(T::one(), T::lit(angle)) * p.overlap_z * p.overlap_x
        });
    TwoModePrediction {
        iterations,
        predicted: amp.norm_sqr(),
        bound: T::lit(2.0) * (report.residual_mass_x() * report.residual_mass_z()).sqrt(),
    }
}

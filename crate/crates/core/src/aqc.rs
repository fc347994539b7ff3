//! Adiabatic counterparts of the two circuits.
//!
//! Roland's model `H_R(r) = −(1−r)|0̄⟩⟨0̄| − r|j⟩⟨j|` lives on the plane spanned
//! by `|0̄⟩` and `|1̄⟩ ∝ |j⟩ − c|0̄⟩` (`c = 2^{−n/2}`); its complement has energy
//! 0, which never drops below the second level, so the 2×2 block carries the
//! gap. Farhi's model `H_F(r) = −(1−r)ΣS_x − r|j⟩⟨j|` lives on the symmetric
//! sector in the z-aligned basis.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{expm_i_hermitian, symmetric_eigen, vec_norm, Matrix};
use crate::phase_solver::{solve_phi, OmegaParam};
use crate::reduced_sim::{evolve, grover_step_matrix, grover_theta, separable_block};
use crate::spin_space::{collective_x_operator, x_eigenbasis};
use crate::{Error, Real, Result};

/// Largest `n` for the Farhi family.
pub const MAX_FARHI_QUBITS: usize = 40;

/// Integrator bound on `‖H‖·Δt`.
pub const DEFAULT_MAX_STEP_NORM: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AqcKind {
    Roland,
    Farhi,
}

#[derive(Debug, Clone)]
pub struct HamiltonianFamily<T> {
    pub kind: AqcKind,
    pub n: usize,
    /// `⟨0̄|j⟩ = 2^{−n/2}`.
    pub overlap: T,
    /// `ΣS_x` on the sector (Farhi only).
    collective_x: Option<Matrix<T>>,
}

pub fn build_family<T: Real>(kind: AqcKind, n: usize) -> Result<HamiltonianFamily<T>> {
    if n == 0 {
        return Err(Error::Domain("need at least one qubit".into()));
    }
    let collective_x = match kind {
        AqcKind::Roland => None,
        AqcKind::Farhi => {
            if n > MAX_FARHI_QUBITS {
                return Err(Error::Domain(format!("Farhi family limited to n <= {MAX_FARHI_QUBITS}")));
            }
            Some(collective_x_operator(n)?)
        }
    };
    Ok(HamiltonianFamily {
        kind,
        n,
        overlap: T::lit(2.0).powf(-T::count(n) / T::lit(2.0)),
        collective_x,
    })
}

impl<T: Real> HamiltonianFamily<T> {
    pub fn dim(&self) -> usize {
        match self.kind {
            AqcKind::Roland => 2,
            AqcKind::Farhi => self.n + 1,
        }
    }

    /// Upper bound on `‖H(r)‖` over `r ∈ [0, 1]`.
    pub fn norm_bound(&self) -> T {
        match self.kind {
            AqcKind::Roland => T::one(),
            AqcKind::Farhi => (T::count(self.n) / T::lit(2.0)).max(T::one()),
        }
    }

    /// `H(r)`; real symmetric in both models.
    pub fn evaluate(&self, r: T) -> Result<Matrix<T>> {
        if !(r >= T::zero() && r <= T::one()) {
            return Err(Error::Domain(format!("interpolation parameter {r} outside [0, 1]")));
        }
        Ok(match self.kind {
            AqcKind::Roland => {
                let c = self.overlap;
                let s = (T::one() - c * c).sqrt();
                Matrix::from_row_major(
                    2,
                    2,
                    vec![-(T::one() - r) - r * c * c, -r * c * s, -r * c * s, -r * s * s],
                )
            }
            AqcKind::Farhi => {
                let j = self.collective_x.as_ref().expect("farhi family carries its operator");
                let mut h = Matrix::from_fn(self.dim(), self.dim(), |a, b| -(T::one() - r) * j[(a, b)]);
                h[(0, 0)] = h[(0, 0)] - r;
                h
            }
        })
    }

    /// Starting state: `|0̄⟩`, the ground state of `H(0)`.
    pub fn initial_state(&self) -> Result<Vec<T>> {
        Ok(match self.kind {
            AqcKind::Roland => vec![T::one(), T::zero()],
            AqcKind::Farhi => x_eigenbasis::<T>(self.n)?.uniform_state(),
        })
    }

    /// The marked item in this family's basis.
    pub fn marked_state(&self) -> Vec<T> {
        match self.kind {
            AqcKind::Roland => {
                let c = self.overlap;
                vec![c, (T::one() - c * c).sqrt()]
            }
            AqcKind::Farhi => {
                let mut e = vec![T::zero(); self.dim()];
                e[0] = T::one();
                e
            }
        }
    }

    /// Two lowest eigenvalues and the ground vector.
    pub fn low_spectrum(&self, r: T) -> Result<(T, T, Vec<T>)> {
        let h = self.evaluate(r)?;
        let eig = symmetric_eigen(&h)?;
        Ok((eig.values[0], eig.values[1], eig.vectors.column(0)))
    }
}

/// Ground-state energies and overlaps at the endpoints.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EndpointReport<T> {
    pub start_energy: T,
    /// `|⟨0̄|g(0)⟩|`.
    pub start_overlap: T,
    pub end_energy: T,
    /// `|⟨j|g(1)⟩|`.
    pub end_overlap: T,
    pub start_gap: T,
    pub end_gap: T,
}

pub fn endpoint_report<T: Real>(family: &HamiltonianFamily<T>) -> Result<EndpointReport<T>> {
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y).abs();
    let (e0, e1, g0) = family.low_spectrum(T::zero())?;
    let (f0, f1, g1) = family.low_spectrum(T::one())?;
    Ok(EndpointReport {
        start_energy: e0,
        start_overlap: dot(&g0, &family.initial_state()?),
        end_energy: f0,
        end_overlap: dot(&g1, &family.marked_state()),
        start_gap: e1 - e0,
        end_gap: f1 - f0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GapScan<T> {
    pub kind: AqcKind,
    pub n: usize,
    /// `(r, gap)` on the uniform grid.
    pub samples: Vec<(T, T)>,
    pub mu_star: T,
    pub min_gap: T,
}

/// Gap between the two lowest levels, refusing degenerate ground states.
fn gap_at<T: Real>(family: &HamiltonianFamily<T>, r: T) -> Result<T> {
    let (e0, e1, _) = family.low_spectrum(r)?;
    let gap = e1 - e0;
    let scale = family.norm_bound();
    if !(gap > T::epsilon() * T::lit(16.0) * scale) {
        return Err(Error::Model(format!("ground state degenerate at r = {r}")));
    }
    Ok(gap)
}

/// Uniform scan with `resolution` points, refined by golden-section search on
/// the bracket around the coarse minimum.
pub fn gap_scan<T: Real>(family: &HamiltonianFamily<T>, resolution: usize) -> Result<GapScan<T>> {
    if resolution < 3 {
        return Err(Error::Domain("gap scan needs at least 3 points".into()));
    }
    let last = T::count(resolution - 1);
    let samples: Vec<(T, T)> = (0..resolution)
        .map(|i| {
            let r = T::count(i) / last;
            Ok((r, gap_at(family, r)?))
        })
        .collect::<Result<_>>()?;
    let best = (0..resolution)
        .min_by(|&a, &b| samples[a].1.partial_cmp(&samples[b].1).expect("finite gap"))
        .expect("non-empty");
    let mut lo = samples[best.saturating_sub(1)].0;
    let mut hi = samples[(best + 1).min(resolution - 1)].0;

    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = gap_at(family, x1)?;
    let mut f2 = gap_at(family, x2)?;
    let tol = T::lit(1e-10).max(T::epsilon().sqrt() * T::lit(0.1));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = gap_at(family, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = gap_at(family, x2)?;
        }
    }
    let mu = polish_minimum(family, lo, hi)?.unwrap_or((lo + hi) / T::lit(2.0));
    let mut mu_star = mu;
    let mut min_gap = gap_at(family, mu)?;
    if samples[best].1 < min_gap {
        mu_star = samples[best].0;
        min_gap = samples[best].1;
    }
    Ok(GapScan {
        kind: family.kind,
        n: family.n,
        samples,
        mu_star,
        min_gap,
    })
}

/// Bisection on `g(r+h) − g(r−h)` around the golden-section bracket.
///
/// Golden-section compares gap values and so stalls once `g(r) − g(r*)`
/// falls below rounding, about `√ε` of the gap's curvature scale. The
/// symmetric difference changes sign at the minimum with a slope that stays
/// resolvable, so it pins `μ*` to near machine precision. Returns `None` when
/// the difference does not change sign on the widened bracket.
fn polish_minimum<T: Real>(family: &HamiltonianFamily<T>, lo: T, hi: T) -> Result<Option<T>> {
    let width = (hi - lo).max(T::epsilon());
    let h = (width * T::lit(1000.0)).max(T::lit(1e-4));
    let mut a = (lo - width * T::lit(100.0)).max(h);
    let mut b = (hi + width * T::lit(100.0)).min(T::one() - h);
    if !(a < b) {
        return Ok(None);
    }
    let diff = |r: T| -> Result<T> { Ok(gap_at(family, r + h)? - gap_at(family, r - h)?) };
    if !(diff(a)? < T::zero() && diff(b)? > T::zero()) {
        return Ok(None);
    }
    for _ in 0..200 {
        let mid = (a + b) / T::lit(2.0);
        if !(mid > a && mid < b) {
            break;
        }
        if diff(mid)? < T::zero() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some((a + b) / T::lit(2.0)))
}

/// `μ_R(r) = sin((π−2θ)r) / (sin((π−2θ)r) + sin((π−2θ)r + 2θ))`.
pub fn schedule_value<T: Real>(r: T, theta: T) -> Result<T> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(Error::Domain(format!("schedule parameter {r} outside [0, 1]")));
    }
    if !(theta > T::zero() && theta <= T::FRAC_PI_2()) {
        return Err(Error::Domain(format!("theta {theta} outside (0, pi/2]")));
    }
    let a = (T::PI() - T::lit(2.0) * theta) * r;
    let num = a.sin();
    let den = num + (a + T::lit(2.0) * theta).sin();
    if r == T::one() {
        return Ok(T::one());
    }
    Ok((num / den).max(T::zero()).min(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    Linear,
    /// [`schedule_value`] with `θ = arcsin 2^{−n/2}`.
    RolandOptimal,
}

impl Schedule {
    pub fn value<T: Real>(self, r: T, n: usize) -> Result<T> {
        match self {
            Schedule::Linear => Ok(r),
            Schedule::RolandOptimal => schedule_value(r, grover_theta::<T>(n)),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Checkpoint<T> {
    pub t: T,
    /// `|⟨g(t)|ψ(t)⟩|`.
    pub ground_overlap: T,
    /// `|⟨ψ(t_m)|(ĜÔ)^m|0̄⟩|` when `t` is a Grover checkpoint `t_m`.
    pub grover_overlap: Option<T>,
    pub grover_index: Option<u64>,
    pub norm: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolutionTrace<T> {
    pub kind: AqcKind,
    pub n: usize,
    pub total_time: T,
    pub schedule: Schedule,
    pub checkpoints: Vec<Checkpoint<T>>,
    pub final_ground_overlap: T,
    pub max_norm_drift: T,
    pub steps: u64,
}

/// `t_m = 4θTm/(π−2θ)` for `m = 0..=[π/4θ + ¼]`.
pub fn grover_checkpoint_times<T: Real>(n: usize, total_time: T) -> Vec<(u64, T)> {
    let theta = grover_theta::<T>(n);
    let last = (T::PI() / (T::lit(4.0) * theta) + T::lit(0.25)).floor().to_u64().unwrap_or(0);
    let unit = T::lit(4.0) * theta * total_time / (T::PI() - T::lit(2.0) * theta);
    (0..=last)
        .map(|m| (m, unit * T::lit(m as f64)))
        .filter(|&(_, t)| t <= total_time)
        .collect()
}

/// `exp(−iH)ψ` for a 2×2 Hermitian `H = a₀ + a·σ`, in closed form.
fn apply_exp_2x2<T: Real>(h: &Matrix<Complex<T>>, psi: &mut [Complex<T>]) {
    let half = T::lit(0.5);
    let a0 = (h[(0, 0)].re + h[(1, 1)].re) * half;
    let az = (h[(0, 0)].re - h[(1, 1)].re) * half;
    let ax = h[(0, 1)].re;
    let ay = -h[(0, 1)].im;
    let norm = (ax * ax + ay * ay + az * az).sqrt();
    let (sn, cs) = norm.sin_cos();
    let sinc = if norm > T::zero() { sn / norm } else { T::one() };
    let i = Complex::new(T::zero(), T::one());
    // cos|a| − i sin|a| (â·σ)
    let m00 = Complex::new(cs, T::zero()) - i * (az * sinc);
    let m11 = Complex::new(cs, T::zero()) + i * (az * sinc);
    let m01 = -i * Complex::new(ax, -ay) * sinc;
    let m10 = -i * Complex::new(ax, ay) * sinc;
    let g = Complex::from_polar(T::one(), -a0);
    let (p0, p1) = (psi[0], psi[1]);
    psi[0] = g * (m00 * p0 + m01 * p1);
    psi[1] = g * (m10 * p0 + m11 * p1);
}

struct Integrator<'a, T> {
    family: &'a HamiltonianFamily<T>,
    schedule: Schedule,
    total_time: T,
}

impl<T: Real> Integrator<'_, T> {
    fn hamiltonian(&self, t: T) -> Result<Matrix<Complex<T>>> {
        let r = (t / self.total_time).max(T::zero()).min(T::one());
        let mu = self.schedule.value(r, self.family.n)?;
        Ok(self.family.evaluate(mu)?.to_complex())
    }

    /// One fourth-order Magnus step from `t` to `t + h`.
    fn step(&self, psi: &mut Vec<Complex<T>>, t: T, h: T) -> Result<()> {
        let off = T::lit(3.0).sqrt() / T::lit(6.0);
        let h1 = self.hamiltonian(t + (T::lit(0.5) - off) * h)?;
        let h2 = self.hamiltonian(t + (T::lit(0.5) + off) * h)?;
        let comm = h2.matmul(&h1).sub(&h1.matmul(&h2));
        // Ω = −i·H_eff with H_eff = h/2(H1+H2) − i(√3h²/12)[H2,H1]
        let c1 = Complex::new(h * T::lit(0.5), T::zero());
        let c2 = Complex::new(T::zero(), -(T::lit(3.0).sqrt() * h * h / T::lit(12.0)));
        let h_eff = h1.add(&h2).scale(c1).add(&comm.scale(c2));
        if h_eff.rows() == 2 {
            apply_exp_2x2(&h_eff, psi);
        } else {
            *psi = expm_i_hermitian(&h_eff, -T::one())?.matvec(psi);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions<T> {
    /// Bound on `‖H‖·Δt`.
    pub max_step_norm: T,
}

impl<T: Real> Default for EvolveOptions<T> {
    fn default() -> Self {
        Self {
            max_step_norm: T::lit(DEFAULT_MAX_STEP_NORM),
        }
    }
}

/// Integrates `i∂ₜψ = H(μ(t/T))ψ` from the ground state of `H(0)`.
///
/// The horizon is split at the requested checkpoints (clamped to `[0, T]`,
/// sorted, with `T` always included) and each segment is covered by equal
/// steps that respect `‖H‖·Δt ≤ max_step_norm`. For Roland's family under the
/// optimal schedule, checkpoints coinciding with a Grover time `t_m` also
/// record the overlap with `(ĜÔ)^m|0̄⟩`.
pub fn adiabatic_evolve<T: Real>(
    family: &HamiltonianFamily<T>,
    total_time: T,
    schedule: Schedule,
    checkpoints: &[T],
    options: EvolveOptions<T>,
) -> Result<EvolutionTrace<T>> {
    if !(total_time > T::zero() && total_time.is_finite()) {
        return Err(Error::Domain("total time must be positive".into()));
    }
    if !(options.max_step_norm > T::zero()) {
        return Err(Error::Domain("step bound must be positive".into()));
    }
    let mut times: Vec<T> = checkpoints.iter().map(|&t| t.max(T::zero()).min(total_time)).collect();
    times.push(total_time);
    times.sort_by(|a, b| a.partial_cmp(b).expect("finite time"));
    times.dedup();

    let integ = Integrator {
        family,
        schedule,
        total_time,
    };
    let grover = match (family.kind, schedule) {
        (AqcKind::Roland, Schedule::RolandOptimal) => Some(grover_checkpoint_times::<T>(family.n, total_time)),
        _ => None,
    };
    let max_dt = options.max_step_norm / family.norm_bound();

    let mut psi: Vec<Complex<T>> = family
        .initial_state()?
        .into_iter()
        .map(|x| Complex::new(x, T::zero()))
        .collect();
    let mut t = T::zero();
    let mut steps: u64 = 0;
    let mut max_drift = T::zero();
    let mut out = Vec::with_capacity(times.len());
    for &target in &times {
        let span = target - t;
        if span > T::zero() {
            let count = (span / max_dt).ceil().max(T::one());
            let n_steps = count
                .to_u64()
                .ok_or_else(|| Error::Numeric("step count overflow".into()))?;
            let h = span / count;
            if !(h > T::zero()) || t + h == t {
                return Err(Error::Numeric("integration step size underflow".into()));
            }
            for k in 0..n_steps {
                integ.step(&mut psi, t + h * T::lit(k as f64), h)?;
            }
            steps += n_steps;
            t = target;
        }
        let norm = vec_norm(&psi);
        max_drift = max_drift.max((norm - T::one()).abs());
        let r = (t / total_time).max(T::zero()).min(T::one());
        let (_, _, ground) = family.low_spectrum(schedule.value(r, family.n)?)?;
        let ground_overlap = ground
            .iter()
            .zip(&psi)
            .fold(Complex::<T>::zero(), |s, (&g, &p)| s + p * g)
            .norm();
        let matched = grover.as_ref().and_then(|list| {
            list.iter()
                .find(|&&(_, tm)| (tm - t).abs() <= T::lit(1e-9) * total_time)
                .map(|&(m, _)| m)
        });
        let grover_overlap = matched.map(|m| {
            let init = vec![Complex::new(T::one(), T::zero()), Complex::zero()];
            let g = evolve(&grover_step_matrix::<T>(family.n), init, m);
            g.iter().zip(&psi).fold(Complex::<T>::zero(), |s, (&a, &b)| s + b.conj() * a).norm()
        });
        out.push(Checkpoint {
            t,
            ground_overlap,
            grover_overlap,
            grover_index: matched,
            norm,
        });
    }
    let final_ground_overlap = out.last().expect("T is always a checkpoint").ground_overlap;
    Ok(EvolutionTrace {
        kind: family.kind,
        n: family.n,
        total_time,
        schedule,
        checkpoints: out,
        final_ground_overlap,
        max_norm_drift: max_drift,
        steps,
    })
}

/// Fit of the separable circuit onto Farhi's endpoints:
/// `Ĝ' = exp(i·a·H_F(0))`, `Ô' = exp(i·b·H_F(1))`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FarhiFit<T> {
    pub a: T,
    pub b: T,
    /// `‖Ĝ' − exp(i·a·H_F(0))‖_max`.
    pub diffusion_residual: T,
    /// `‖Ô' − exp(i·b·H_F(1))‖_max`.
    pub oracle_residual: T,
    pub mu_star: T,
    /// `(a/b)·μ*/(1−μ*)`; 1 when `(a, b) ∝ (1−μ*, μ*)`.
    pub ratio: T,
    /// `ξ` with `b = πξμ*`.
    pub xi: T,
    /// `|a − πξ(1−μ*)|`: how far `a` is from the proportional form.
    pub proportional_mismatch: T,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityReport<T> {
    pub n: usize,
    pub omega: T,
    pub roland_mu_star: T,
    /// `‖Ĝ − exp(iπ·2(1−μ*)H_R(0))‖_max`.
    pub grover_diffusion_residual: T,
    /// `‖Ô − exp(iπ·2μ*H_R(1))‖_max`.
    pub grover_oracle_residual: T,
    /// `‖ĜÔ − step matrix‖_max`.
    pub grover_step_residual: T,
    pub farhi: Option<FarhiFit<T>>,
}

/// Grid resolution used by [`check_operator_identities`].
pub const IDENTITY_SCAN_RESOLUTION: usize = 401;

/// Checks the circuit/Hamiltonian correspondences. The Farhi fit is only
/// attempted for `n ≤ MAX_FARHI_QUBITS`.
pub fn check_operator_identities<T: Real>(n: usize, omega: OmegaParam<T>) -> Result<IdentityReport<T>> {
    let roland = build_family::<T>(AqcKind::Roland, n)?;
    let mu = gap_scan(&roland, IDENTITY_SCAN_RESOLUTION)?.mu_star;
    let h0 = roland.evaluate(T::zero())?.to_complex();
    let h1 = roland.evaluate(T::one())?.to_complex();
    let g = expm_i_hermitian(&h0, T::PI() * T::lit(2.0) * (T::one() - mu))?;
    let o = expm_i_hermitian(&h1, T::PI() * T::lit(2.0) * mu)?;

    let reflect = |v: &[T]| {
        Matrix::from_fn(2, 2, |r, c| {
            let id = if r == c { T::one() } else { T::zero() };
            Complex::new(id - T::lit(2.0) * v[r] * v[c], T::zero())
        })
    };
    let g_exact = reflect(&roland.initial_state()?);
    let o_exact = reflect(&roland.marked_state());
    let step = g_exact.matmul(&o_exact);

    let farhi = if n <= MAX_FARHI_QUBITS {
        let fam = build_family::<T>(AqcKind::Farhi, n)?;
        let mu_f = gap_scan(&fam, IDENTITY_SCAN_RESOLUTION)?.mu_star;
        let phi = solve_phi(n, omega)?.phi;
        let basis = x_eigenbasis::<T>(n)?;
        let g_circ = separable_block(&basis, phi);
        let (a, b) = (-phi, -omega.value);
        let g_fit = expm_i_hermitian(&fam.evaluate(T::zero())?.to_complex(), a)?;
        let o_fit = expm_i_hermitian(&fam.evaluate(T::one())?.to_complex(), b)?;
        let dim = n + 1;
        let o_circ = Matrix::from_fn(dim, dim, |r, c| {
            if r != c {
                Complex::zero()
            } else if r == 0 {
                Complex::from_polar(T::one(), omega.value)
            } else {
                Complex::new(T::one(), T::zero())
            }
        });
        let xi = b / (T::PI() * mu_f);
        Some(FarhiFit {
            a,
            b,
            diffusion_residual: g_circ.max_abs_diff(&g_fit),
            oracle_residual: o_circ.max_abs_diff(&o_fit),
            mu_star: mu_f,
            ratio: (a / b) * mu_f / (T::one() - mu_f),
            xi,
            proportional_mismatch: (a - T::PI() * xi * (T::one() - mu_f)).abs(),
        })
    } else {
        None
    };
    Ok(IdentityReport {
        n,
        omega: omega.value,
        roland_mu_star: mu,
        grover_diffusion_residual: g.max_abs_diff(&g_exact),
        grover_oracle_residual: o.max_abs_diff(&o_exact),
        grover_step_residual: step.max_abs_diff(&grover_step_matrix::<T>(n)),
        farhi,
    })
}

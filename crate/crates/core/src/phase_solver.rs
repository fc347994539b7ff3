//! Rotation angle of the separable diffusion step and iteration counts.
//!
//! For a phase `ω` imprinted by the oracle, the x-rotation angle `φ(ω)` is the
//! unique root in `(0, 2π/s_max)` (mirrored for `ω < 0`) of
//!
//! ```text
//! h(φ) = Σ_{s≥1} W(s) cot(sφ/2) − cot(ω/2)
//! ```
//!
//! where `W(s) = P_n(s)` for one marked item and `s_max` is the largest `s`
//! with `W(s) ≠ 0` (`n` for one item). `h` falls from `+∞` to `−∞`
//! across the bracket, so bisection always converges.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg::pairwise_sum_by;
use crate::spin_space::binomial_weights_any;
use crate::{Error, Real, Result};

/// Oracle phase `ω ∈ (−π, π]`, optionally with its kickback form
/// `ω = 2π·c/d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaParam<T> {
    pub value: T,
    pub rational: Option<(i64, u64)>,
}

impl<T: Real> OmegaParam<T> {
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() || value <= -T::PI() || value > T::PI() {
            return Err(Error::Domain(format!("omega {value:?} outside (-pi, pi]")));
        }
        Ok(Self {
            value,
            rational: None,
        })
    }

    /// `ω = 2π·numer/denom`, reduced to lowest terms.
    pub fn from_rational(numer: i64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("kickback denominator must be positive".into()));
        }
        let g = gcd(numer.unsigned_abs(), denom).max(1);
        let c = numer / g as i64;
        let d = denom / g;
        let value = T::lit(2.0) * T::PI() * T::lit(c as f64) / T::lit(d as f64);
        let mut p = Self::new(value)?;
        p.rational = Some((c, d));
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.value == T::zero()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Which defining equation a [`PhaseSolution`] solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionVariant {
    Single,
    /// Two marked items at Hamming distance `d`.
    TwoSolution { d: usize },
    /// Weights built from an explicit set of `k` marked items.
    Multi { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSolution<T> {
    pub n: usize,
    pub omega: T,
    pub phi: T,
    pub residual: T,
    pub variant: SolutionVariant,
}

/// Tolerance on the defining-equation residual (`1e-10` in double precision).
pub fn residual_tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e4))
}

/// `cot(x)` with the argument reduced modulo `π`; errors within `1e-9` of a pole.
pub fn cot_checked<T: Real>(x: T) -> Result<T> {
    let pi = T::PI();
    let r = x - pi * (x / pi).round();
    if r.abs() < T::lit(1e-9) {
        return Err(Error::Numeric(format!(
            "cot evaluated within 1e-9 of a pole (argument {x:?})"
        )));
    }
    Ok(r.cos() / r.sin())
}

/// `Σ_{s≥1} W(s) cot(sφ/2) − cot(ω/2)`.
pub fn defining_function<T: Real>(weights: &[T], phi: T, omega: T) -> Result<T> {
    let half = T::lit(0.5);
    let mut terms = Vec::with_capacity(weights.len());
    for (s, &w) in weights.iter().enumerate().skip(1) {
        if w == T::zero() {
            continue;
        }
        terms.push(w * cot_checked(T::count(s) * phi * half)?);
    }
    let sum = pairwise_sum_by(0..terms.len(), &|i| terms[i]);
    Ok(sum - cot_checked(omega * half)?)
}

/// Solves `h(φ) = 0` for an arbitrary weight vector indexed by `s = 0..=n`
/// (the `s = 0` entry is ignored).
pub fn solve_phi_weighted<T: Real>(
    weights: &[T],
    omega: OmegaParam<T>,
    variant: SolutionVariant,
) -> Result<PhaseSolution<T>> {
    let n = weights.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::Domain("need at least one qubit".into()));
    }
    if omega.is_zero() {
        return Err(Error::Domain("omega = 0: no iteration needed".into()));
    }
    let sign = omega.value.signum();
    let w_abs = omega.value.abs();
    // the first pole right of 0 belongs to the largest s with W(s) ≠ 0,
    // which is n − 1 for two items at odd distance
    let s_max = (1..=n)
        .rev()
        .find(|&s| weights[s] != T::zero())
        .ok_or_else(|| Error::Domain("all weights vanish".into()))?;
    let width = T::lit(2.0) * T::PI() / T::count(s_max);
    // endpoints stay outside the 1e-9 pole guard of cot_checked
    let eps_rel = T::lit(1e-12) * width;
    let ulps = T::lit(16.0) * T::epsilon() * width;
    let mut lo = eps_rel.max(T::lit(4e-9)).max(ulps);
    let mut hi = width - eps_rel.max(T::lit(4e-9) / T::count(s_max)).max(ulps);
    let h = |phi: T| defining_function(weights, phi, w_abs);
    if !(lo < hi) || h(lo)? <= T::zero() || h(hi)? >= T::zero() {
        return Err(Error::Numeric(format!(
            "failed to bracket the root for n={n}, omega={:?}",
            omega.value
        )));
    }
    let rel = T::lit(1e-15).max(T::epsilon());
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if hi - lo < rel * mid {
            break;
        }
        if h(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let phi = T::lit(0.5) * (lo + hi);
    let residual = h(phi)?;
    if residual.abs() >= residual_tolerance() {
        return Err(Error::Numeric(format!(
            "bisection residual {residual:?} above tolerance for n={n}"
        )));
    }
    Ok(PhaseSolution {
        n,
        omega: omega.value,
        phi: sign * phi,
        residual: sign * residual,
        variant,
    })
}

/// `φ(ω)` for a single marked item.
pub fn solve_phi<T: Real>(n: usize, omega: OmegaParam<T>) -> Result<PhaseSolution<T>> {
    if n == 0 {
        return Err(Error::Domain("need at least one qubit".into()));
    }
    if omega.is_zero() {
        return Err(Error::Domain("omega = 0: no iteration needed".into()));
    }
    let w = binomial_weights_any::<T>(n)?;
    solve_phi_weighted(w.as_slice(), omega, SolutionVariant::Single)
}

/// Weights of the two-solution equation, grouped by total excitation
/// `s = s₁ + s₂`: `W(s) = Σ (1 + (−1)^{s₂}) P_{n−d}(s₁) P_d(s₂)`, with the
/// `(s₁, s₂) = (0, 0)` term excluded.
pub fn two_solution_weights<T: Real>(n: usize, d: usize) -> Result<Vec<T>> {
    check_distance(n, d)?;
    let agree = block_weights::<T>(n - d)?;
    let diff = block_weights::<T>(d)?;
    let mut w = vec![T::zero(); n + 1];
    for (s1, &p1) in agree.iter().enumerate() {
        let start = usize::from(s1 == 0);
        for (s2, &p2) in diff.iter().enumerate().skip(start) {
            if s2 % 2 == 1 {
                continue;
            }
            w[s1 + s2] = w[s1 + s2] + T::lit(2.0) * p1 * p2;
        }
    }
    Ok(w)
}

/// `P_m(·)` including the empty block `P_0 = [1]`.
fn block_weights<T: Real>(m: usize) -> Result<Vec<T>> {
    if m == 0 {
        return Ok(vec![T::one()]);
    }
    Ok(binomial_weights_any::<T>(m)?.into_vec())
}

fn check_distance(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::Domain(format!(
            "Hamming distance {d} outside 1..={n}"
        )));
    }
    Ok(())
}

/// `φ₂(ω)` for two marked items at Hamming distance `d`; `ω ∈ (0, π)`.
pub fn solve_phi_two<T: Real>(n: usize, d: usize, omega: OmegaParam<T>) -> Result<PhaseSolution<T>> {
    check_distance(n, d)?;
    if !(omega.value > T::zero() && omega.value < T::PI()) {
        return Err(Error::Domain(format!(
            "two-solution omega {:?} outside (0, pi)",
            omega.value
        )));
    }
    let w = two_solution_weights::<T>(n, d)?;
    solve_phi_weighted(&w, omega, SolutionVariant::TwoSolution { d })
}

/// Weights for an explicit set of marked items, grouped by Hamming weight
/// of the x-basis string: `W(s) = Σ_{|x|=s} 2^{-n} |Σ_η (−1)^{x·j_η}|² / k`.
/// Reduces to `P_n(s)` for one item and to [`two_solution_weights`] for two.
/// Enumerates all `2^n` strings, so `n` is capped at 26.
pub fn multi_solution_weights<T: Real>(n: usize, marked: &[u64]) -> Result<Vec<T>> {
    if n == 0 || n > 26 {
        return Err(Error::Domain(format!("multi-solution weights need 1 <= n <= 26, got {n}")));
    }
    if marked.is_empty() {
        return Err(Error::Domain("no marked items".into()));
    }
    if let Some(&j) = marked.iter().find(|&&j| j >> n != 0) {
        return Err(Error::Domain(format!("marked item {j} out of range for n={n}")));
    }
    let k = marked.len() as f64;
    let mut acc = vec![0.0_f64; n + 1];
    for x in 0u64..(1u64 << n) {
        let amp: i64 = marked
            .iter()
            .map(|&j| if (x & j).count_ones() % 2 == 0 { 1 } else { -1 })
            .sum();
        acc[x.count_ones() as usize] += (amp * amp) as f64;
    }
    let scale = 2f64.powi(-(n as i32)) / k;
    Ok(acc.into_iter().map(|a| T::lit(a * scale)).collect())
}

/// `φ` for an explicit marked set (numerical heuristic beyond two items).
pub fn solve_phi_multi<T: Real>(n: usize, marked: &[u64], omega: OmegaParam<T>) -> Result<PhaseSolution<T>> {
    let w = multi_solution_weights::<T>(n, marked)?;
    solve_phi_weighted(&w, omega, SolutionVariant::Multi { k: marked.len() })
}

/// Grover's `N = ⌊π / (4 arcsin 2^{−n/2})⌋`.
pub fn grover_iterations(n: usize) -> u64 {
    let theta = 2f64.powf(-(n as f64) / 2.0).asin();
    (PI / (4.0 * theta)).floor() as u64
}

/// `N' = ⌊π 2^{n/2} / (4 sin|ω/2|) + ½⌋` for one solution and
/// `N'₂ = ⌊π 2^{n/2} / (4√2 sin(ω/2)) + ½⌋` for two.
pub fn circuit_iterations(n: usize, omega: f64, solutions: usize) -> Result<u64> {
    match solutions {
        1 => {
            if omega == 0.0 {
                return Err(Error::Domain("omega = 0: no iteration needed".into()));
            }
            Ok(heuristic_iterations(n, omega, 1))
        }
        2 => {
            if !(omega > 0.0 && omega < PI) {
                return Err(Error::Domain(format!("two-solution omega {omega} outside (0, pi)")));
            }
            Ok(heuristic_iterations(n, omega, 2))
        }
        k => Err(Error::Domain(format!("closed-form iteration count defined for 1 or 2 solutions, got {k}"))),
    }
}

/// `⌊π 2^{n/2} / (4√k sin|ω/2|) + ½⌋`; the `k > 2` case is an extrapolation.
pub fn heuristic_iterations(n: usize, omega: f64, k: usize) -> u64 {
    let root = 2f64.powf(n as f64 / 2.0);
    (PI * root / (4.0 * (k as f64).sqrt() * (omega / 2.0).sin().abs()) + 0.5).floor() as u64
}

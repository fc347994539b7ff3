//! Brute-force `2^n` statevector simulator with an optional ancilla register.
//!
//! This is the independent check on the reduced engines: the oracle acts on
//! actual basis indices, and the separable diffusion is applied as `n`
//! separate one-qubit rotations.
//!
//! Amplitude layout: index `m·ancilla_dim + k` for system basis state `m`
//! and ancilla level `k`. Qubit `α` is bit `α` of `m`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::linalg::{pairwise_sum_by, vec_norm};
use crate::phase_solver::{solve_phi, solve_phi_multi, solve_phi_two, OmegaParam};
use crate::{Error, Real, Result};

/// Default cap: `2^26` amplitudes of 16 bytes is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Chunk count above which gate kernels split work across threads.
const PAR_MIN_CHUNKS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub max_qubits: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullState<T> {
    n: usize,
    ancilla_dim: usize,
    amps: Vec<Complex<T>>,
}

/// Oracle flavours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleVariant<T> {
    /// `|m⟩|k⟩ → |m⟩|k ⊕ δ(m ∈ J)⟩` on a two-level ancilla.
    Standard,
    /// `|m⟩|k⟩ → |m⟩|k + δ(m ∈ J) mod d⟩` on a `d`-level ancilla.
    Generalized { ancilla_dim: usize },
    /// `exp(iω Σ_{j∈J} |j⟩⟨j|)` applied directly.
    PhaseDirect(T),
    /// The generalized oracle acting on an ancilla prepared by
    /// [`kickback_ancilla`]`(numer, denom)`; imprints `e^{2πi·numer/denom}` on `J`.
    PhaseKickback { numer: i64, denom: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffusionVariant<T> {
    /// `1 − 2|0̄⟩⟨0̄|`.
    Grover,
    /// `exp(iφ Σ S_x)` as `n` one-qubit rotations.
    Separable(T),
}

/// How the phase oracle is realised in [`run_search_full`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRealisation {
    Direct,
    /// Through the generalized oracle and a kickback ancilla; needs the
    /// rational form of `ω`.
    Kickback,
}

/// Ancilla eigenstate `Σ_k e^{−2πik·numer/denom}|k⟩/√denom` of the modular
/// increment, with eigenvalue `e^{2πi·numer/denom}`.
pub fn kickback_ancilla<T: Real>(numer: i64, denom: usize) -> Result<Vec<Complex<T>>> {
    if denom == 0 {
        return Err(Error::Domain("kickback ancilla dimension must be positive".into()));
    }
    let norm = T::one() / T::count(denom).sqrt();
    let base = -T::lit(2.0) * T::PI() * T::lit(numer as f64) / T::count(denom);
    Ok((0..denom)
        .map(|k| Complex::from_polar(norm, base * T::count(k)))
        .collect())
}

impl<T: Real> FullState<T> {
    /// `|0̄⟩ = 2^{−n/2} Σ_m |m⟩` with no ancilla.
    pub fn init_uniform(n: usize) -> Result<Self> {
        Self::init_uniform_with(n, &SimConfig::default())
    }

    pub fn init_uniform_with(n: usize, config: &SimConfig) -> Result<Self> {
        check_qubits(n, config)?;
        let amp = Complex::new(T::lit(2.0).powf(-T::count(n) / T::lit(2.0)), T::zero());
        Ok(Self {
            n,
            ancilla_dim: 1,
            amps: vec![amp; 1 << n],
        })
    }

    pub fn from_amplitudes(n: usize, ancilla_dim: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if ancilla_dim == 0 || amps.len() != (1usize << n) * ancilla_dim {
            return Err(Error::State(format!(
                "{} amplitudes do not fit n={n} with ancilla dimension {ancilla_dim}",
                amps.len()
            )));
        }
        Ok(Self { n, ancilla_dim, amps })
    }

    /// `self ⊗ ancilla`; `self` must not already carry an ancilla.
    pub fn with_ancilla(self, ancilla: &[Complex<T>]) -> Result<Self> {
        if self.ancilla_dim != 1 {
            return Err(Error::State("state already has an ancilla register".into()));
        }
        if ancilla.is_empty() {
            return Err(Error::State("empty ancilla".into()));
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|&a| ancilla.iter().map(move |&b| a * b))
            .collect();
        Ok(Self {
            n: self.n,
            ancilla_dim: ancilla.len(),
            amps,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, m: u64, k: usize) -> Complex<T> {
        self.amps[m as usize * self.ancilla_dim + k]
    }

    pub fn norm(&self) -> T {
        vec_norm(&self.amps)
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> T {
        crate::linalg::inner(&self.amps, &other.amps).norm()
    }

    /// Probability of measuring a system index in `marked`, summed over the ancilla.
    pub fn probability_of(&self, marked: &[u64]) -> T {
        let anc = self.ancilla_dim;
        let probs: Vec<T> = marked
            .iter()
            .map(|&j| {
                let base = j as usize * anc;
                pairwise_sum_by(0..anc, &|k| self.amps[base + k].norm_sqr())
            })
            .collect();
        pairwise_sum_by(0..probs.len(), &|i| probs[i])
    }

    pub fn apply_oracle(&mut self, marked: &[u64], variant: OracleVariant<T>) -> Result<()> {
        self.check_marked(marked)?;
        let anc = self.ancilla_dim;
        match variant {
            OracleVariant::Standard => {
                self.require_ancilla(2)?;
                self.increment_marked(marked);
            }
            OracleVariant::Generalized { ancilla_dim } => {
                self.require_ancilla(ancilla_dim)?;
                self.increment_marked(marked);
            }
            OracleVariant::PhaseKickback { denom, .. } => {
                self.require_ancilla(denom)?;
                self.increment_marked(marked);
            }
            OracleVariant::PhaseDirect(omega) => {
                let phase = Complex::from_polar(T::one(), omega);
                for &j in marked {
                    let base = j as usize * anc;
                    for a in &mut self.amps[base..base + anc] {
                        *a = *a * phase;
                    }
                }
            }
        }
        Ok(())
    }

    fn check_marked(&self, marked: &[u64]) -> Result<()> {
        for (i, &j) in marked.iter().enumerate() {
            if j >> self.n != 0 {
                return Err(Error::Domain(format!("marked index {j} out of range for n={}", self.n)));
            }
            if marked[..i].contains(&j) {
                return Err(Error::Domain(format!("marked index {j} listed twice")));
            }
        }
        Ok(())
    }

    fn require_ancilla(&self, dim: usize) -> Result<()> {
        if self.ancilla_dim != dim {
            return Err(Error::State(format!(
                "oracle needs a {dim}-level ancilla, state has {}",
                self.ancilla_dim
            )));
        }
        Ok(())
    }

    /// `k → k + 1 mod d` on every marked system index.
    fn increment_marked(&mut self, marked: &[u64]) {
        let anc = self.ancilla_dim;
        for &j in marked {
            let base = j as usize * anc;
            self.amps[base..base + anc].rotate_right(1);
        }
    }

    pub fn apply_diffusion(&mut self, variant: DiffusionVariant<T>) {
        match variant {
            DiffusionVariant::Grover => self.reflect_about_uniform(),
            DiffusionVariant::Separable(phi) => {
                let (s, c) = (phi * T::lit(0.5)).sin_cos();
                let diag = Complex::new(c, T::zero());
                let off = Complex::new(T::zero(), s);
                for qubit in 0..self.n {
                    self.apply_single_qubit(qubit, [[diag, off], [off, diag]]);
                }
            }
        }
    }

    /// Applies a 2×2 gate to one qubit (ancilla untouched).
    pub fn apply_single_qubit(&mut self, qubit: usize, gate: [[Complex<T>; 2]; 2]) {
        assert!(qubit < self.n, "qubit index out of range");
        let stride = (1usize << qubit) * self.ancilla_dim;
        let kernel = |chunk: &mut [Complex<T>]| {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = gate[0][0] * x + gate[0][1] * y;
                *b = gate[1][0] * x + gate[1][1] * y;
            }
        };
        if self.amps.len() / (2 * stride) >= PAR_MIN_CHUNKS {
            self.amps.par_chunks_mut(2 * stride).for_each(kernel);
        } else {
            self.amps.chunks_mut(2 * stride).for_each(kernel);
        }
    }

    fn reflect_about_uniform(&mut self) {
        let anc = self.ancilla_dim;
        let dim = 1usize << self.n;
        let c = T::lit(2.0).powf(-T::count(self.n) / T::lit(2.0));
        for k in 0..anc {
            let amps = &self.amps;
            let re = pairwise_sum_by(0..dim, &|m| amps[m * anc + k].re);
            let im = pairwise_sum_by(0..dim, &|m| amps[m * anc + k].im);
            // ψ −= 2|0̄⟩⟨0̄|ψ, with ⟨m|0̄⟩ = c
            let shift = Complex::new(re, im) * (T::lit(2.0) * c * c);
            for m in 0..dim {
                let a = &mut self.amps[m * anc + k];
                *a = *a - shift;
            }
        }
    }
}

fn check_qubits(n: usize, config: &SimConfig) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("need at least one qubit".into()));
    }
    if n > config.max_qubits {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the statevector cap of {}",
            config.max_qubits
        )));
    }
    Ok(())
}

/// Hamming distance between two indices.
pub fn hamming(a: u64, b: u64) -> usize {
    (a ^ b).count_ones() as usize
}

/// Picks `φ` for a marked set: `φ(ω)` for one item, `φ₂(ω)` for two, and the
/// weight-enumeration heuristic beyond that.
pub fn phi_for_marked<T: Real>(n: usize, omega: OmegaParam<T>, marked: &[u64]) -> Result<T> {
    let sol = match marked {
        [] => return Err(Error::Domain("no marked items".into())),
        [_] => solve_phi(n, omega)?,
        [a, b] => solve_phi_two(n, hamming(*a, *b), omega)?,
        _ => solve_phi_multi(n, marked, omega)?,
    };
    Ok(sol.phi)
}

/// Runs `(Ĝ'Ô')^iterations |0̄⟩` on the full register with an explicit `φ`
/// and returns the probability of measuring a marked item.
pub fn run_search_full_with_phi<T: Real>(
    n: usize,
    omega: OmegaParam<T>,
    phi: T,
    marked: &[u64],
    iterations: u64,
    realisation: OracleRealisation,
    config: &SimConfig,
) -> Result<T> {
    let mut state = FullState::init_uniform_with(n, config)?;
    let oracle = match realisation {
        OracleRealisation::Direct => OracleVariant::PhaseDirect(omega.value),
        OracleRealisation::Kickback => {
            let (numer, denom) = omega
                .rational
                .ok_or_else(|| Error::Domain("kickback oracle needs omega as 2pi*c/d".into()))?;
            let denom = usize::try_from(denom).map_err(|_| Error::Domain("ancilla too large".into()))?;
            state = state.with_ancilla(&kickback_ancilla(numer, denom)?)?;
            OracleVariant::PhaseKickback { numer, denom }
        }
    };
    for _ in 0..iterations {
        state.apply_oracle(marked, oracle)?;
        state.apply_diffusion(DiffusionVariant::Separable(phi));
    }
    Ok(state.probability_of(marked))
}

/// Full-register run with `φ` chosen by [`phi_for_marked`].
pub fn run_search_full<T: Real>(
    n: usize,
    omega: OmegaParam<T>,
    marked: &[u64],
    iterations: u64,
    realisation: OracleRealisation,
) -> Result<T> {
    let phi = phi_for_marked(n, omega, marked)?;
    run_search_full_with_phi(n, omega, phi, marked, iterations, realisation, &SimConfig::default())
}

/// Grover's circuit on the full register.
pub fn run_grover_full<T: Real>(n: usize, marked: &[u64], iterations: u64) -> Result<T> {
    let mut state = FullState::<T>::init_uniform(n)?;
    for _ in 0..iterations {
        state.apply_oracle(marked, OracleVariant::PhaseDirect(T::PI()))?;
        state.apply_diffusion(DiffusionVariant::Grover);
    }
    Ok(state.probability_of(marked))
}

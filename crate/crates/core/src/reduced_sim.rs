//! Exact simulation of both search circuits inside their invariant subspaces.
//!
//! All operators are written in the z-aligned basis, where the marked item is
//! the all-zeros string. The results therefore do not depend on which item
//! is marked; only the Hamming distance matters when there are two.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{pairwise_sum_by, Matrix};
use crate::phase_solver::{circuit_iterations, grover_iterations, solve_phi, solve_phi_two, OmegaParam};
use crate::spin_space::{x_eigenbasis, OverlapBasis};
use crate::{Error, Real, Result};

/// One problem instance for the separable circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec<T> {
    pub n: usize,
    pub omega: OmegaParam<T>,
    pub solutions: usize,
    /// Hamming distance of the two marked items (two-solution only).
    pub d: Option<usize>,
    pub phi: T,
    pub iterations: u64,
}

impl<T: Real> CircuitSpec<T> {
    /// Single marked item with `φ(ω)` and `N'` from the phase solver.
    pub fn single(n: usize, omega: OmegaParam<T>) -> Result<Self> {
        let sol = solve_phi(n, omega)?;
        let iterations = circuit_iterations(n, to_f64(omega.value), 1)?;
        Ok(Self {
            n,
            omega,
            solutions: 1,
            d: None,
            phi: sol.phi,
            iterations,
        })
    }

    /// Two marked items at Hamming distance `d` with `φ₂(ω)` and `N'₂`.
    pub fn two(n: usize, d: usize, omega: OmegaParam<T>) -> Result<Self> {
        let sol = solve_phi_two(n, d, omega)?;
        let iterations = circuit_iterations(n, to_f64(omega.value), 2)?;
        Ok(Self {
            n,
            omega,
            solutions: 2,
            d: Some(d),
            phi: sol.phi,
            iterations,
        })
    }

    pub fn with_iterations(mut self, iterations: u64) -> Self {
        self.iterations = iterations;
        self
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("finite value")
}

/// Dense unitary on the invariant subspace containing `|0̄⟩` and the marked items.
#[derive(Debug, Clone)]
pub struct ReducedOperator<T> {
    pub dim: usize,
    pub entries: Matrix<Complex<T>>,
}

impl<T: Real> ReducedOperator<T> {
    pub fn unitarity_residual(&self) -> T {
        self.entries.unitarity_residual()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Grover,
    Separable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow<T> {
    pub n: usize,
    /// `None` for Grover's circuit.
    pub omega: Option<T>,
    pub algorithm: Algorithm,
    pub iterations: u64,
    /// Raw value; may exceed 1 by rounding.
    pub success_probability: T,
    /// Squared amplitude outside the marked items, computed directly rather
    /// than as `1 − success` so tiny error rates keep their digits.
    pub error_rate: T,
}

impl<T: Real> TableRow<T> {
    /// Success probability clamped into `[0, 1]` for display.
    pub fn display_success(&self) -> T {
        self.success_probability.max(T::zero()).min(T::one())
    }
}

/// Full outcome of a reduced run.
#[derive(Debug, Clone)]
pub struct RunOutcome<T> {
    pub row: TableRow<T>,
    pub final_state: Vec<Complex<T>>,
    /// `| ‖ψ_N‖ − 1 |`.
    pub norm_drift: T,
}

/// `θ = arcsin 2^{−n/2}`.
pub fn grover_theta<T: Real>(n: usize) -> T {
    T::lit(2.0).powf(-T::count(n) / T::lit(2.0)).asin()
}

/// `ĜÔ` on span{|0̄⟩, |1̄⟩}: `−[[cos2θ, −sin2θ], [sin2θ, cos2θ]]`.
pub fn grover_step_matrix<T: Real>(n: usize) -> Matrix<Complex<T>> {
    let t2 = T::lit(2.0) * grover_theta::<T>(n);
    let (s, c) = t2.sin_cos();
    let re = |x: T| Complex::new(x, T::zero());
    Matrix::from_row_major(2, 2, vec![re(-c), re(s), re(-s), re(-c)])
}

/// Grover's circuit after `iterations` steps, in the two-dimensional sector.
pub fn run_grover<T: Real>(n: usize, iterations: u64) -> TableRow<T> {
    let u = grover_step_matrix::<T>(n);
    let init = vec![Complex::new(T::one(), T::zero()), Complex::zero()];
    let psi = evolve(&u, init, iterations);
    let c = T::lit(2.0).powf(-T::count(n) / T::lit(2.0));
    let s = (T::one() - c * c).sqrt();
    // |j⟩ = c|0̄⟩ + s|1̄⟩, and its in-plane complement s|0̄⟩ − c|1̄⟩
    let on = psi[0] * c + psi[1] * s;
    let off = psi[0] * s - psi[1] * c;
    TableRow {
        n,
        omega: None,
        algorithm: Algorithm::Grover,
        iterations,
        success_probability: on.norm_sqr(),
        error_rate: off.norm_sqr(),
    }
}

fn check_sector_n(n: usize) -> Result<()> {
    if n == 0 || n > crate::spin_space::MAX_SECTOR_QUBITS {
        return Err(Error::Domain(format!("qubit count {n} outside the reduced engine range")));
    }
    Ok(())
}

/// `K·diag(e^{iφ(n/2−s)})·Kᵀ`, i.e. `exp(iφ Σ S_x)` on one symmetric block.
pub fn separable_block<T: Real>(basis: &OverlapBasis<T>, phi: T) -> Matrix<Complex<T>> {
    let dim = basis.dim();
    let phases: Vec<Complex<T>> = basis
        .x_eigenvalues
        .iter()
        .map(|&x| Complex::from_polar(T::one(), phi * x))
        .collect();
    let k = &basis.k;
    Matrix::from_fn(dim, dim, |r, c| {
        (0..dim).fold(Complex::zero(), |acc, s| acc + phases[s] * (k[(r, s)] * k[(c, s)]))
    })
}

/// `Ĝ'·Ô'` on the `(n+1)`-dimensional symmetric sector.
pub fn build_step_single<T: Real>(spec: &CircuitSpec<T>) -> Result<ReducedOperator<T>> {
    if spec.solutions != 1 {
        return Err(Error::Domain("build_step_single needs a one-solution spec".into()));
    }
    check_sector_n(spec.n)?;
    let basis = x_eigenbasis::<T>(spec.n)?;
    Ok(step_from_basis(&basis, spec.phi, spec.omega.value))
}

pub(crate) fn step_from_basis<T: Real>(basis: &OverlapBasis<T>, phi: T, omega: T) -> ReducedOperator<T> {
    let mut g = separable_block(basis, phi);
    let oracle = Complex::from_polar(T::one(), omega);
    for r in 0..basis.dim() {
        g[(r, 0)] = g[(r, 0)] * oracle;
    }
    ReducedOperator {
        dim: basis.dim(),
        entries: g,
    }
}

/// Applies `u` to `init` `steps` times.
///
/// The operator is stored column-major with split real and imaginary parts so
/// the inner loop is a vectorisable axpy.
pub fn evolve<T: Real>(u: &Matrix<Complex<T>>, init: Vec<Complex<T>>, steps: u64) -> Vec<Complex<T>> {
    let dim = u.rows();
    assert_eq!(dim, init.len(), "evolve: dimension mismatch");
    let mut ure = vec![T::zero(); dim * dim];
    let mut uim = vec![T::zero(); dim * dim];
    for c in 0..dim {
        for r in 0..dim {
            ure[c * dim + r] = u[(r, c)].re;
            uim[c * dim + r] = u[(r, c)].im;
        }
    }
    let mut xr: Vec<T> = init.iter().map(|z| z.re).collect();
    let mut xi: Vec<T> = init.iter().map(|z| z.im).collect();
    let mut yr = vec![T::zero(); dim];
    let mut yi = vec![T::zero(); dim];
    for _ in 0..steps {
        yr.iter_mut().for_each(|v| *v = T::zero());
        yi.iter_mut().for_each(|v| *v = T::zero());
        for c in 0..dim {
            let (a, b) = (xr[c], xi[c]);
            let cr = &ure[c * dim..(c + 1) * dim];
            let ci = &uim[c * dim..(c + 1) * dim];
            for r in 0..dim {
                yr[r] = yr[r] + cr[r] * a - ci[r] * b;
                yi[r] = yi[r] + cr[r] * b + ci[r] * a;
            }
        }
        std::mem::swap(&mut xr, &mut yr);
        std::mem::swap(&mut xi, &mut yi);
    }
    xr.into_iter().zip(xi).map(|(r, i)| Complex::new(r, i)).collect()
}

fn squared_norm<T: Real>(v: &[Complex<T>]) -> T {
    pairwise_sum_by(0..v.len(), &|i| v[i].norm_sqr())
}

fn outcome<T: Real>(
    spec: &CircuitSpec<T>,
    psi: Vec<Complex<T>>,
    marked: &[usize],
) -> RunOutcome<T> {
    let success = marked.iter().fold(T::zero(), |s, &i| s + psi[i].norm_sqr());
    let error = pairwise_sum_by(0..psi.len(), &|i| {
        if marked.contains(&i) {
            T::zero()
        } else {
            psi[i].norm_sqr()
        }
    });
    let norm_drift = (squared_norm(&psi).sqrt() - T::one()).abs();
    RunOutcome {
        row: TableRow {
            n: spec.n,
            omega: Some(spec.omega.value),
            algorithm: Algorithm::Separable,
            iterations: spec.iterations,
            success_probability: success,
            error_rate: error,
        },
        final_state: psi,
        norm_drift,
    }
}

/// Runs the single-solution circuit from `|0̄⟩ = |0_x⟩`.
pub fn run_single_detailed<T: Real>(spec: &CircuitSpec<T>) -> Result<RunOutcome<T>> {
    check_sector_n(spec.n)?;
    let basis = x_eigenbasis::<T>(spec.n)?;
    let u = step_from_basis(&basis, spec.phi, spec.omega.value);
    let init: Vec<Complex<T>> = basis
        .uniform_state()
        .into_iter()
        .map(|x| Complex::new(x, T::zero()))
        .collect();
    let psi = evolve(&u.entries, init, spec.iterations);
    Ok(outcome(spec, psi, &[0]))
}

pub fn run_single<T: Real>(spec: &CircuitSpec<T>) -> Result<TableRow<T>> {
    Ok(run_single_detailed(spec)?.row)
}

/// Block order of the two-solution product space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoBlockLayout {
    /// Agreement block (`n − d` qubits) major: index `s₁(d+1) + s₂`.
    AgreementFirst,
    /// Difference block (`d` qubits) major: index `s₂(n−d+1) + s₁`.
    DifferenceFirst,
}

fn block_basis<T: Real>(m: usize) -> Result<OverlapBasis<T>> {
    if m == 0 {
        return Ok(OverlapBasis {
            n: 0,
            k: Matrix::identity(1),
            x_eigenvalues: vec![T::zero()],
        });
    }
    x_eigenbasis(m)
}

struct TwoSector<T> {
    op: ReducedOperator<T>,
    init: Vec<Complex<T>>,
    marked: [usize; 2],
}

fn two_sector<T: Real>(spec: &CircuitSpec<T>, layout: TwoBlockLayout) -> Result<TwoSector<T>> {
    if spec.solutions != 2 {
        return Err(Error::Domain("two-solution operator needs a two-solution spec".into()));
    }
    check_sector_n(spec.n)?;
    let d = spec
        .d
        .ok_or_else(|| Error::Domain("two-solution spec without Hamming distance".into()))?;
    if d == 0 || d > spec.n {
        return Err(Error::Domain(format!("Hamming distance {d} outside 1..={}", spec.n)));
    }
    let agree = block_basis::<T>(spec.n - d)?;
    let diff = block_basis::<T>(d)?;
    let ga = separable_block(&agree, spec.phi);
    let gd = separable_block(&diff, spec.phi);
    let (a0, d0) = (agree.uniform_state(), diff.uniform_state());
    let (na, nd) = (agree.dim(), diff.dim());
    let (mut g, init, marked) = match layout {
        TwoBlockLayout::AgreementFirst => {
            let init = a0.iter().flat_map(|&x| d0.iter().map(move |&y| x * y)).collect::<Vec<_>>();
            (ga.kron(&gd), init, [0, d])
        }
        TwoBlockLayout::DifferenceFirst => {
            let init = d0.iter().flat_map(|&y| a0.iter().map(move |&x| x * y)).collect::<Vec<_>>();
            (gd.kron(&ga), init, [0, d * na])
        }
    };
    let oracle = Complex::from_polar(T::one(), spec.omega.value);
    let dim = na * nd;
    for &c in &marked {
        for r in 0..dim {
            g[(r, c)] = g[(r, c)] * oracle;
        }
    }
    Ok(TwoSector {
        op: ReducedOperator { dim, entries: g },
        init: init.into_iter().map(|x| Complex::new(x, T::zero())).collect(),
        marked,
    })
}

/// `Ĝ'₂·Ô'₂` on the product of the agreement and difference symmetric blocks.
pub fn build_step_two<T: Real>(spec: &CircuitSpec<T>) -> Result<ReducedOperator<T>> {
    Ok(two_sector(spec, TwoBlockLayout::AgreementFirst)?.op)
}

pub fn run_two_with_layout<T: Real>(spec: &CircuitSpec<T>, layout: TwoBlockLayout) -> Result<RunOutcome<T>> {
    let sector = two_sector(spec, layout)?;
    let psi = evolve(&sector.op.entries, sector.init, spec.iterations);
    Ok(outcome(spec, psi, &sector.marked))
}

pub fn run_two<T: Real>(spec: &CircuitSpec<T>) -> Result<TableRow<T>> {
    Ok(run_two_with_layout(spec, TwoBlockLayout::AgreementFirst)?.row)
}

/// Column of a sweep over `n` and `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepColumn {
    Grover,
    /// Index into the `omegas` argument of [`table_sweep`].
    Omega(usize),
}

#[derive(Debug, Clone)]
pub struct SweepCell<T> {
    pub n: usize,
    pub column: SweepColumn,
    pub result: Result<TableRow<T>>,
}

/// Grover plus one separable column per `ω`, for every `n`.
///
/// Cells run in parallel; the output order is `n` ascending (in input order),
/// then Grover, then the `ω` columns in input order. A failing cell carries
/// its error and does not stop the sweep.
pub fn table_sweep<T: Real>(ns: &[usize], omegas: &[OmegaParam<T>]) -> Vec<SweepCell<T>> {
    let cells: Vec<(usize, SweepColumn)> = ns
        .iter()
        .flat_map(|&n| {
            std::iter::once((n, SweepColumn::Grover))
                .chain((0..omegas.len()).map(move |i| (n, SweepColumn::Omega(i))))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(n, column)| {
            let result = match column {
                SweepColumn::Grover => {
                    if n == 0 {
                        Err(Error::Domain("qubit count must be at least 1".into()))
                    } else {
                        Ok(run_grover::<T>(n, grover_iterations(n)))
                    }
                }
                SweepColumn::Omega(i) => CircuitSpec::single(n, omegas[i]).and_then(|s| run_single(&s)),
            };
            SweepCell { n, column, result }
        })
        .collect()
}

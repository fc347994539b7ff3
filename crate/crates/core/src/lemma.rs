//! Numeric checks of the binomial-average lemma: `Σ_s P_n(s) f(s/n) → f(½)`
//! for `f` with poles only at the origin, the moment sums `F(n, q)` that the
//! proof rests on, and the Stirling limit used to close it.

use serde::Serialize;

use crate::linalg::pairwise_sum_by;
use crate::spin_space::binomial_weights_any;
use crate::{Error, Real, Result};

/// Largest `|q|` accepted by [`moment_report`].
pub const MAX_MOMENT_ORDER: i32 = 12;

/// `Σ_{s=1}^n P_n(s) f(s/n)`, summed pairwise.
pub fn weighted_sum<T: Real>(n: usize, f: impl Fn(T) -> T) -> Result<T> {
    let w = binomial_weights_any::<T>(n)?;
    let mut terms = Vec::with_capacity(n);
    for s in 1..=n {
        let x = T::count(s) / T::count(n);
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::Domain(format!("function is not finite at s/n = {s}/{n}")));
        }
        terms.push(w.get(s) * v);
    }
    Ok(pairwise_sum_by(0..terms.len(), &|i| terms[i]))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LemmaRow<T> {
    pub n: usize,
    pub value: T,
    pub target: T,
    pub deviation: T,
}

/// `weighted_sum` of `cot(rx/2)` against its limit `cot(r/4)`.
pub fn cot_lemma_sequence<T: Real>(r: T, n_list: &[usize]) -> Result<Vec<LemmaRow<T>>> {
    let two_pi = T::lit(2.0) * T::PI();
    if !(r > T::zero() && r < two_pi) {
        return Err(Error::Domain(format!("r = {r} must lie in (0, 2pi) to keep poles off (0, 1]")));
    }
    let target = T::one() / (r / T::lit(4.0)).tan();
    n_list
        .iter()
        .map(|&n| {
            let value = weighted_sum(n, |x: T| T::one() / (r * x / T::lit(2.0)).tan())?;
            Ok(LemmaRow {
                n,
                value,
                target,
                deviation: (value - target).abs(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentReport<T> {
    pub n: usize,
    pub q: i32,
    /// `F(n, q) = Σ_{s=1}^n P_n(s)(s/n)^q`.
    pub f: T,
    /// Closed-form comparator `F̃(n, q)`.
    pub f_tilde: T,
    pub lower: T,
    pub upper: T,
}

impl<T: Real> MomentReport<T> {
    /// `lower ≤ F ≤ upper` up to a few ulps; for `q ∈ {0, 1}` the lower
    /// bound is attained exactly and only rounding separates the two sides.
    pub fn bounds_hold(&self) -> bool {
        let slack = T::lit(64.0) * T::epsilon() * self.f.abs().max(T::one());
        self.lower - slack <= self.f && self.f <= self.upper + slack
    }

    /// `|F(n, q) − 2^{−q}|`.
    pub fn limit_deviation(&self) -> T {
        (self.f - T::lit(2.0).powi(-self.q)).abs()
    }

    /// `|F(n, q)·2^q − 1|`.
    pub fn relative_limit_deviation(&self) -> T {
        (self.f * T::lit(2.0).powi(self.q) - T::one()).abs()
    }
}

/// `F̃(n, q)`: the falling-factorial moment `Σ s!/(s−q)! P_n(s)` over `n^q`.
///
/// For `q > 0` this is `Π_{i<q}(1 − i/n)·2^{−q}`. For `q = −m ≤ 0` the full
/// binomial identity overcounts the terms `s = −m..0`, which are subtracted.
pub fn f_tilde<T: Real>(n: usize, q: i32) -> T {
    let nn = T::count(n);
    if q > 0 {
        let falling = (0..q as usize).fold(T::one(), |acc, i| acc * (T::count(n - i) / nn));
        return falling * T::lit(2.0).powi(-q);
    }
    let m = (-q) as usize;
    // n^m · n!·2^m/(n+m)!
    let head = (1..=m).fold(T::lit(2.0).powi(m as i32), |acc, i| acc * nn / T::count(n + i));
    let two_n = T::lit(2.0).powf(-nn);
    let corr = pairwise_sum_by(0..m + 1, &|r| {
        // n!·2^{-n} / ((m−r)!·(n+r)!)
        let rising = (1..=r).fold(T::one(), |acc, i| acc * T::count(n + i));
        let fact = (1..=m - r).fold(T::one(), |acc, i| acc * T::count(i));
        two_n / (fact * rising)
    });
    head - corr * nn.powi(m as i32)
}

/// Direct `F(n, q)` with the closed-form sandwich bounds.
pub fn moment_report<T: Real>(n: usize, q: i32) -> Result<MomentReport<T>> {
    if q.abs() > MAX_MOMENT_ORDER {
        return Err(Error::Domain(format!("|q| = {} exceeds {MAX_MOMENT_ORDER}", q.abs())));
    }
    if n <= 4 * q.unsigned_abs() as usize {
        return Err(Error::Domain(format!("n = {n} must exceed 4|q| = {}", 4 * q.abs())));
    }
    let w = binomial_weights_any::<T>(n)?;
    let nn = T::count(n);
    let term = |s: usize| w.get(s) * (T::count(s) / nn).powi(q);
    let f = pairwise_sum_by(1..n + 1, &term);
    let ft = f_tilde::<T>(n, q);
    let head = pairwise_sum_by(1..n / 4 + 2, &term);
    let scale = (nn / (nn - T::lit(4.0) * T::lit(q as f64))).powi(q);
    Ok(MomentReport {
        n,
        q,
        f,
        f_tilde: ft,
        lower: ft,
        upper: scale * ft + head,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StirlingRow<T> {
    pub n: usize,
    /// `n!·eⁿ/(n^{n+½}√(2π))`.
    pub ratio: T,
    pub deviation: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct StirlingReport<T> {
    pub rows: Vec<StirlingRow<T>>,
    /// Deviation at the largest `n`.
    pub final_deviation: T,
    pub monotone: bool,
}

/// Stirling ratio evaluated in the log domain (`ln n! = Σ ln k`).
pub fn stirling_ratio<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("Stirling ratio needs n >= 1".into()));
    }
    let ln_fact = pairwise_sum_by(2..n + 1, &|k| T::count(k).ln());
    let nn = T::count(n);
    let half = T::lit(0.5);
    let ln_ratio = ln_fact + nn - (nn + half) * nn.ln() - half * (T::lit(2.0) * T::PI()).ln();
    Ok(ln_ratio.exp())
}

pub fn stirling_check<T: Real>(n_list: &[usize]) -> Result<StirlingReport<T>> {
    if n_list.is_empty() {
        return Err(Error::Domain("empty n list".into()));
    }
    let rows: Vec<StirlingRow<T>> = n_list
        .iter()
        .map(|&n| {
            let ratio = stirling_ratio::<T>(n)?;
            Ok(StirlingRow {
                n,
                ratio,
                deviation: (ratio - T::one()).abs(),
            })
        })
        .collect::<Result<_>>()?;
    let monotone = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let final_deviation = rows.iter().max_by_key(|r| r.n).expect("non-empty").deviation;
    Ok(StirlingReport {
        rows,
        final_deviation,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn binomial_mean_is_one_half() {
        for n in [1, 2, 7, 40, 64, 65, 1000, 4096] {
            let v = weighted_sum::<f64>(n, |x| x).unwrap();
            assert!((v - 0.5).abs() < 1e-14, "n={n} {v}");
        }
    }

    #[test]
    fn second_moment_closed_form() {
        for n in [3, 10, 33, 200] {
            let v = weighted_sum::<f64>(n, |x| x * x).unwrap();
            let want = (n as f64 + 1.0) / (4.0 * n as f64);
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn non_finite_function_is_rejected() {
        assert!(matches!(weighted_sum::<f64>(4, |x| 1.0 / (x - 0.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn cot_lemma_converges() {
        let ns = [16, 64, 256, 1024, 4096, 16384];
        let rows = cot_lemma_sequence(PI, &ns).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].deviation < w[0].deviation);
        }
        assert!(rows.last().unwrap().deviation < 1e-3);
        assert!((rows[0].target - 1.0).abs() < 1e-15);
        assert!(cot_lemma_sequence(2.0 * PI, &ns).is_err());
    }

    #[test]
    fn moment_cases() {
        let r = moment_report::<f64>(30, 0).unwrap();
        assert!((r.f - (1.0 - 2f64.powi(-30))).abs() < 1e-15);
        let r = moment_report::<f64>(100, 1).unwrap();
        assert!((r.f - 0.5).abs() < 1e-15 && (r.f_tilde - 0.5).abs() < 1e-15);
        let r = moment_report::<f64>(1000, -2).unwrap();
        assert!(r.bounds_hold() && (r.f - 4.0).abs() < 0.1);
        assert!(moment_report::<f64>(8, 2).is_err());
        assert!(moment_report::<f64>(1000, 13).is_err());
    }

    #[test]
    fn f_tilde_matches_its_defining_sum() {
        // n^q F̃ = Σ_{s ≥ max(q,1)} s!/(s−q)! P_n(s)
        for (n, q) in [(20usize, 3i32), (20, -3), (13, 0), (50, -5)] {
            let w = binomial_weights_any::<f64>(n).unwrap();
            let direct: f64 = (q.max(1) as usize..=n)
                .map(|s| {
                    let ratio = if q >= 0 {
                        (0..q as usize).map(|i| (s - i) as f64).product::<f64>()
                    } else {
                        1.0 / (1..=(-q) as usize).map(|i| (s + i) as f64).product::<f64>()
                    };
                    ratio * w.get(s)
                })
                .sum();
            let want = direct / (n as f64).powi(q);
            assert!((f_tilde::<f64>(n, q) - want).abs() < 1e-12 * want.abs().max(1.0), "n={n} q={q}");
        }
    }

    #[test]
    fn stirling_cases() {
        assert!((stirling_ratio::<f64>(1).unwrap() - std::f64::consts::E / (2.0 * PI).sqrt()).abs() < 1e-14);
        let r = stirling_check::<f64>(&[10, 100, 1000]).unwrap();
        assert!(r.monotone && r.final_deviation < 1e-4);
        assert!(r.rows[1].deviation < 1e-3);
    }
}

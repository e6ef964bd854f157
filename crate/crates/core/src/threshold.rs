//! Threshold and latency arithmetic.
//!
//! Counts and weighted sums are exact (integers and rationals). Floating
//! point enters only when the square root of the quadratic is taken; the
//! results agree with their closed forms to a relative 1e-12.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exrec::{AlphaMatrix, LocationType};
use crate::lattice::one_rec;

/// Error rate of a location type relative to the gate rate.
pub type Weight = Ratio<u64>;

/// Index of the memory type in weight vectors.
pub const MEMORY: usize = LocationType::Memory as usize - 1;

/// Every type at the gate rate.
pub fn unit_weights() -> [Weight; 7] {
    [Weight::from_integer(1); 7]
}

/// Memory at `ratio` times the gate rate, everything else at the gate rate.
pub fn memory_weights(ratio: Weight) -> [Weight; 7] {
    let mut w = unit_weights();
    w[MEMORY] = ratio;
    w
}

/// Parses `0.1`, `1/10` or `3` into an exact weight.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let bad = || Error::InvalidWeight(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Weight::new(n, d));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if (int.is_empty() && frac.is_empty()) || frac.len() > 18 {
        return Err(bad());
    }
    let digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || !digits(frac) {
        return Err(bad());
    }
    let den = 10u64.pow(frac.len() as u32);
    let i: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = i.checked_mul(den).and_then(|v| v.checked_add(f)).ok_or_else(bad)?;
    Ok(Weight::new(num, den))
}

/// C(n, 3): the number of location triples.
pub fn b_coefficient(location_count: u64) -> Result<u128> {
    if location_count < 3 {
        return Err(Error::TooFewLocations(location_count));
    }
    let n = location_count as u128;
    Ok(n * (n - 1) * (n - 2) / 6)
}

/// Σ_{i≥j} α_ij w_i w_j.
pub fn a_total(alpha: &AlphaMatrix, weights: &[Weight; 7]) -> Ratio<u128> {
    let w: Vec<Ratio<u128>> =
        weights.iter().map(|w| Ratio::new(*w.numer() as u128, *w.denom() as u128)).collect();
    let mut sum = Ratio::<u128>::zero();
    for i in 0..7 {
        for j in 0..=i {
            let a = alpha.entries[i][j] as u128;
            if a != 0 {
                sum += w[i] * w[j] * a;
            }
        }
    }
    sum
}

fn to_f64(r: Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A′ = (A/2)(1 + √(1 + 4B/A²)), the coefficient of the quadratic bound
/// that absorbs the cubic term at the threshold.
pub fn a_prime(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveA);
    }
    Ok(a / 2.0 * (1.0 + libm::sqrt(1.0 + 4.0 * b / (a * a))))
}

/// Positive root of A ε + B ε² = 1.
pub fn threshold_from_coefficients(a: f64, b: f64) -> f64 {
    2.0 / (a + libm::sqrt(a * a + 4.0 * b))
}

/// Equal-rate threshold 1/A′. With α = 0 this is B^(-1/2).
pub fn threshold_equal(alpha: &AlphaMatrix, location_count: u64) -> Result<f64> {
    threshold_weighted(alpha, &unit_weights(), location_count)
}

/// Largest ε with A_w ε² + B ε³ ≤ ε, where A_w = a_total(α, w) and the cubic
/// term is taken at the gate rate ε.
pub fn threshold_weighted(alpha: &AlphaMatrix, weights: &[Weight; 7], location_count: u64) -> Result<f64> {
    let b = b_coefficient(location_count)? as f64;
    Ok(threshold_from_coefficients(to_f64(a_total(alpha, weights)), b))
}

/// ε_L = ε0 (ε/ε0)^(2^k).
pub fn logical_rate(eps_phys: f64, eps0: f64, k: u32) -> f64 {
    let mut r = eps_phys / eps0;
    for _ in 0..k {
        r *= r;
    }
    eps0 * r
}

/// Per-type physical error rates at one concatenation level.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorRates {
    pub level: u32,
    pub rates: [f64; 7],
}

impl ErrorRates {
    pub fn new(level: u32, rates: [f64; 7]) -> Result<Self> {
        if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::InvalidWeight(alloc::format!("{rates:?}")));
        }
        Ok(Self { level, rates })
    }

    /// Rates `w_i ε`.
    pub fn scaled(level: u32, eps: f64, weights: &[Weight; 7]) -> Result<Self> {
        let mut rates = [0.0; 7];
        for (r, w) in rates.iter_mut().zip(weights) {
            *r = eps * (*w.numer() as f64 / *w.denom() as f64);
        }
        Self::new(level, rates)
    }

    pub fn max(&self) -> f64 {
        self.rates.iter().copied().fold(0.0, f64::max)
    }

    /// The bound Σ α_ij ε_i ε_j + B ε_max³ on the next level's CNOT rate.
    pub fn next_cnot_bound(&self, alpha: &AlphaMatrix, b: u128) -> f64 {
        let mut s = 0.0;
        for i in 0..7 {
            for j in 0..=i {
                s += alpha.entries[i][j] as f64 * self.rates[i] * self.rates[j];
            }
        }
        let m = self.max();
        s + b as f64 * m * m * m
    }
}

/// One gate's 1-Rec latency next to the 7-qubit figure.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatencyRow {
    pub gate: String,
    pub nine_qubit: usize,
    pub seven_qubit: usize,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatencyReport {
    pub levels: u32,
    pub rows: Vec<LatencyRow>,
    /// (16/35)^k for the CNOT 1-Rec.
    pub cnot_ratio: f64,
    /// Lower bound L_EC^k on the latency blowup.
    pub ec_blowup: u128,
}

/// 7-qubit 1-Rec latencies for the same gates.
pub const SEVEN_QUBIT_LATENCY: [(&str, usize); 5] =
    [("cnot", 35), ("swap", 35), ("prep0", 41), ("prep_plus", 41), ("meas", 1)];

pub fn latency_report(levels: u32) -> Result<LatencyReport> {
    let mut rows = Vec::new();
    for (gate, seven) in SEVEN_QUBIT_LATENCY {
        rows.push(LatencyRow { gate: gate.to_string(), nine_qubit: one_rec(gate)?.latency(), seven_qubit: seven });
    }
    let ec = crate::lattice::builtin("ec")?.latency() as u128;
    let r = rows[0].nine_qubit as f64 / rows[0].seven_qubit as f64;
    Ok(LatencyReport {
        levels,
        cnot_ratio: libm::pow(r, levels as f64),
        ec_blowup: ec.pow(levels),
        rows,
    })
}

/// Logical rate at each level for one physical rate.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelRate {
    pub level: u32,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThresholdReport {
    pub alpha_source: String,
    pub alpha: AlphaMatrix,
    pub a: u64,
    pub location_count: u64,
    pub b: u128,
    pub a_prime: f64,
    pub threshold_equal: f64,
    /// Weights as exact fractions, e.g. `1/10`.
    pub weights: Vec<String>,
    pub a_weighted: f64,
    pub threshold_weighted: f64,
    pub solver: String,
    pub physical_rate: f64,
    pub levels: Vec<LevelRate>,
    pub latency: LatencyReport,
}

pub const SOLVER: &str = "positive root of A_w e + B e^2 = 1, cubic term at the gate rate";

impl ThresholdReport {
    /// `physical_rate` drives the per-level table; `levels` is the deepest
    /// level reported.
    pub fn new(
        alpha_source: &str,
        alpha: &AlphaMatrix,
        location_count: u64,
        weights: &[Weight; 7],
        physical_rate: f64,
        levels: u32,
    ) -> Result<Self> {
        let b = b_coefficient(location_count)?;
        let a = alpha.total();
        let ap = a_prime(a as f64, b as f64)?;
        let eq = threshold_equal(alpha, location_count)?;
        Ok(Self {
            alpha_source: alpha_source.to_string(),
            alpha: *alpha,
            a,
            location_count,
            b,
            a_prime: ap,
            threshold_equal: eq,
            weights: weights.iter().map(|w| w.to_string()).collect(),
            a_weighted: to_f64(a_total(alpha, weights)),
            threshold_weighted: threshold_weighted(alpha, weights, location_count)?,
            solver: SOLVER.to_string(),
            physical_rate,
            levels: (0..=levels).map(|k| LevelRate { level: k, rate: logical_rate(physical_rate, eq, k) }).collect(),
            latency: latency_report(levels)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse_exactly() {
        assert_eq!(parse_weight("0.1").unwrap(), Weight::new(1, 10));
        assert_eq!(parse_weight("1/10").unwrap(), Weight::new(1, 10));
        assert_eq!(parse_weight("2").unwrap(), Weight::from_integer(2));
        assert_eq!(parse_weight(".25").unwrap(), Weight::new(1, 4));
        for bad in ["", ".", "-1", "1/0", "abc", "1e-3"] {
            assert!(parse_weight(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn b_small_counts() {
        assert_eq!(b_coefficient(3).unwrap(), 1);
        assert_eq!(b_coefficient(4).unwrap(), 4);
        assert_eq!(b_coefficient(2), Err(Error::TooFewLocations(2)));
    }

    #[test]
    fn a_prime_limits() {
        assert_eq!(a_prime(5.0, 0.0).unwrap(), 5.0);
        assert_eq!(a_prime(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(a_prime(0.0, 1.0), Err(Error::NonPositiveA));
    }

    #[test]
    fn logical_rate_trichotomy() {
        let e0 = 1e-3;
        assert_eq!(logical_rate(e0, e0, 5), e0);
        assert_eq!(logical_rate(2e-4, e0, 0), 2e-4);
        assert!(logical_rate(2e-4, e0, 2) < logical_rate(2e-4, e0, 1));
        assert!(logical_rate(2e-3, e0, 2) > logical_rate(2e-3, e0, 1));
    }
}

//! Closed-form measurement statistics of period finding.
//!
//! For a function with exact period `l` on `[0, N)`, `N = 2^t`, measuring the
//! function register leaves the counting register in a uniform superposition
//! over `k ≡ k₀ (mod l)`, which has `m(k₀) = ⌈(N - k₀)/l⌉` terms. After the
//! Fourier transform,
//!
//! ```text
//! Pr(j) = Σ_{k₀ < l} |Σ_{a < m(k₀)} e^{2πi·j·a·l/N}|² / N²
//! ```
//!
//! The offset `k₀` only contributes a global phase. `m(k₀)` takes at most two
//! values, so each `Pr(j)` costs two closed-form geometric sums.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Result, UsoError};

/// Cap on `t` for materialising the full distribution vector.
pub const MAX_VECTOR_WIDTH: u32 = 24;

/// Cap on `t` for streaming inverse-CDF sampling when `l` does not divide `2^t`.
pub const MAX_STREAM_WIDTH: u32 = 30;

/// Cap on `t` overall; `2^t` must fit comfortably in 128-bit arithmetic.
pub const MAX_WIDTH: u32 = 63;

/// `sin²(π y / N)` with `y` already reduced modulo `N`.
fn sin_sq(y: u128, modulus: u128) -> f64 {
    let y = y.min(modulus - y);
    let s = (PI * y as f64 / modulus as f64).sin();
    s * s
}

/// Precomputed constants for evaluating `Pr(j)` at a fixed `(l, t)`.
#[derive(Debug, Clone, Copy)]
pub struct PeriodSpectrum {
    period: u128,
    modulus: u128,
    m_lo: u128,
    // number of offsets whose residue class has `m_lo + 1` terms
    n_hi: u128,
}

impl PeriodSpectrum {
    pub fn new(period: u64, t: u32) -> Result<Self> {
        if t > MAX_WIDTH {
            return Err(UsoError::ResourceCap(format!("counting width {t} exceeds {MAX_WIDTH}")));
        }
        let modulus = 1u128 << t;
        let period = period as u128;
        if period == 0 || period > modulus {
            return Err(UsoError::InvalidConfig(format!(
                "period {period} must lie in [1, 2^{t}]"
            )));
        }
        Ok(PeriodSpectrum {
            period,
            modulus,
            m_lo: modulus / period,
            n_hi: modulus % period,
        })
    }

    pub fn width_modulus(&self) -> u128 {
        self.modulus
    }

    pub fn divides(&self) -> bool {
        self.n_hi == 0
    }

    /// `|Σ_{a<m} e^{2πi·a·x/N}|²` where `x = j·l mod N`.
    fn geometric(&self, x: u128, m: u128) -> f64 {
        if x == 0 {
            return (m * m) as f64;
        }
        let y = (m % self.modulus) * x % self.modulus;
        if y == 0 {
            return 0.0;
        }
        sin_sq(y, self.modulus) / sin_sq(x, self.modulus)
    }

    /// `Pr(j)`.
    pub fn probability(&self, j: u128) -> f64 {
        let x = (j % self.modulus) * (self.period % self.modulus) % self.modulus;
        let n_lo = self.period - self.n_hi;
        let mut total = n_lo as f64 * self.geometric(x, self.m_lo);
        if self.n_hi > 0 {
            total += self.n_hi as f64 * self.geometric(x, self.m_lo + 1);
        }
        let n = self.modulus as f64;
        total / (n * n)
    }

    /// Draws `count` outcomes by inverse-CDF sampling.
    ///
    /// When `l` divides `2^t` the distribution is uniform on the multiples of
    /// `2^t / l` and is sampled directly; otherwise the CDF is streamed once
    /// over all `2^t` outcomes against the sorted uniforms.
    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<u64>> {
        if self.divides() {
            let step = self.modulus / self.period;
            return Ok((0..count)
                .map(|_| (rng.random_range(0..self.period) * step) as u64)
                .collect());
        }
        if self.modulus > 1u128 << MAX_STREAM_WIDTH {
            return Err(UsoError::ResourceCap(format!(
                "streaming a non-dividing period needs 2^t ≤ 2^{MAX_STREAM_WIDTH}"
            )));
        }
        let mut draws: Vec<(f64, usize)> = (0..count).map(|i| (rng.random::<f64>(), i)).collect();
        draws.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = vec![0u64; count];
        let mut cdf = 0.0;
        let mut last_positive = 0u64;
        let mut next = 0;
        for j in 0..self.modulus as u64 {
            if next == count {
                break;
            }
            let p = self.probability(j as u128);
            if p > 0.0 {
                last_positive = j;
            }
            cdf += p;
            while next < count && draws[next].0 < cdf {
                out[draws[next].1] = j;
                next += 1;
            }
        }
        // rounding left the tail of the CDF just below 1
        for &(_, i) in &draws[next..] {
            out[i] = last_positive;
        }
        Ok(out)
    }
}

/// The full outcome distribution `Pr(j)`, `j ∈ [0, 2^t)`, for period `l`.
pub fn qpf_distribution(period: u64, t: u32) -> Result<Vec<f64>> {
    if t > MAX_VECTOR_WIDTH {
        return Err(UsoError::ResourceCap(format!(
            "distribution vector of width {t} exceeds 2^{MAX_VECTOR_WIDTH} entries"
        )));
    }
    let spectrum = PeriodSpectrum::new(period, t)?;
    Ok((0..spectrum.modulus).map(|j| spectrum.probability(j)).collect())
}

//! Desk-scale simulation of quantum period finding over the outmap
//! permutation, and the sink finder built on it.
//!
//! One circuit run prepares `Σ_k |k⟩|∅⟩|0⟩`, applies the powering oracle once
//! to get `Σ_k |k⟩|∅⟩|s^k(∅)⟩`, measures the function register, Fourier
//! transforms the counting register and reads it. Outcomes concentrate near
//! multiples of `2^t / l`, and continued fractions of `j / 2^t` expose `l`.
//!
//! [`QpfMode::Analytic`] samples the closed-form outcome distribution of the
//! true period (the same statistics, by deferred measurement);
//! [`QpfMode::Statevector`] builds the joint state explicitly.

pub mod distribution;
pub mod statevector;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::SubsetMask;
use crate::error::{Result, UsoError};
use crate::orientation::Outmap;
use crate::period::{orbit_period, PowerOracle};

pub use distribution::{qpf_distribution, PeriodSpectrum};
pub use statevector::{qft, PeriodFindingCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QpfMode {
    #[default]
    Analytic,
    Statevector,
}

impl FromStr for QpfMode {
    type Err = UsoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(QpfMode::Analytic),
            "statevector" => Ok(QpfMode::Statevector),
            _ => Err(UsoError::Parse(format!("unknown qpf mode {s:?}"))),
        }
    }
}

impl fmt::Display for QpfMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QpfMode::Analytic => "analytic",
            QpfMode::Statevector => "statevector",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QpfConfig {
    /// Counting-register width in qubits.
    pub t: u32,
    /// Circuit runs available to one recovery attempt.
    pub samples: u32,
    pub seed: u64,
    pub mode: QpfMode,
    /// Recovery attempts made by [`quantum_find_sink`] before giving up.
    pub retries: u32,
}

impl QpfConfig {
    /// Defaults for an `n`-cube: `t = 2n + 1`, 20 samples, 3 attempts.
    pub fn for_dim(n: u32) -> Self {
        QpfConfig {
            t: 2 * n + 1,
            samples: 20,
            seed: 0,
            mode: QpfMode::Analytic,
            retries: 3,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = t;
        self
    }

    pub fn with_mode(mut self, mode: QpfMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_samples(mut self, samples: u32) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_retries(mut self, retries: u32) -> Self {
        self.retries = retries;
        self
    }

    fn validate(&self, n: u32) -> Result<()> {
        if self.t < n {
            return Err(UsoError::InvalidConfig(format!(
                "counting width t = {} must be at least n = {n}",
                self.t
            )));
        }
        if self.t > distribution::MAX_WIDTH {
            return Err(UsoError::ResourceCap(format!(
                "counting width {} exceeds {}",
                self.t,
                distribution::MAX_WIDTH
            )));
        }
        if self.samples == 0 {
            return Err(UsoError::InvalidConfig("samples must be at least 1".into()));
        }
        if self.retries == 0 {
            return Err(UsoError::InvalidConfig("retries must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpfResult {
    /// Outcomes `j ∈ [0, 2^t)` of the circuit runs actually consumed.
    pub measured: Vec<u64>,
    /// Candidate periods formed so far, ascending.
    pub candidates: Vec<u64>,
    pub recovered_period: Option<u64>,
    /// Circuit runs, each one invocation of the powering oracle.
    pub queries_used: u64,
    /// Classical checks `s^r(∅) = ∅` made on candidates.
    pub validation_queries: u64,
}

/// Denominators `q ≤ bound` of the convergents of `j / 2^t`, ascending.
pub fn continued_fraction_candidates(j: u64, t: u32, bound: u64) -> Vec<u64> {
    let (mut num, mut den) = (j as u128, 1u128 << t);
    // denominators of the two previous convergents
    let (mut q_prev, mut q_prev2) = (0u128, 1u128);
    let mut out: Vec<u64> = Vec::new();
    while den != 0 {
        let a = num / den;
        let q = a * q_prev + q_prev2;
        if q > bound as u128 {
            break;
        }
        if out.last() != Some(&(q as u64)) {
            out.push(q as u64);
        }
        (q_prev2, q_prev) = (q_prev, q);
        (num, den) = (den, num - a * den);
    }
    out
}

/// Draws measurement outcomes for a prepared instance.
enum Sampler {
    Analytic(PeriodSpectrum),
    Statevector(Box<PeriodFindingCircuit>),
}

impl Sampler {
    fn new(m: &Outmap, oracle: &PowerOracle, cfg: &QpfConfig) -> Result<Self> {
        match cfg.mode {
            QpfMode::Analytic => {
                let l = orbit_period(m, SubsetMask::EMPTY)?.period;
                Ok(Sampler::Analytic(PeriodSpectrum::new(l, cfg.t)?))
            }
            QpfMode::Statevector => Ok(Sampler::Statevector(Box::new(PeriodFindingCircuit::prepare(
                oracle.decomposition(),
                m.dim(),
                cfg.t,
            )?))),
        }
    }

    fn sample(&self, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        match self {
            Sampler::Analytic(spectrum) => spectrum.sample(count, rng),
            Sampler::Statevector(circuit) => Ok(circuit.sample(count, rng)),
        }
    }
}

fn rng_for(cfg: &QpfConfig, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(attempt as u64);
    rng
}

/// `cfg.samples` measurement outcomes, deterministic given the seed.
pub fn qpf_sample(m: &Outmap, cfg: &QpfConfig) -> Result<Vec<u64>> {
    cfg.validate(m.dim())?;
    let oracle = PowerOracle::new(m)?;
    Sampler::new(m, &oracle, cfg)?.sample(cfg.samples as usize, &mut rng_for(cfg, 0))
}

fn prime_factors(mut r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= r {
        if r.is_multiple_of(p) {
            out.push(p);
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

struct Recovery<'a> {
    oracle: &'a PowerOracle,
    validations: u64,
}

impl Recovery<'_> {
    fn returns(&mut self, r: u64) -> bool {
        self.validations += 1;
        self.oracle.decomposition().power(r as u128, SubsetMask::EMPTY) == SubsetMask::EMPTY
    }

    /// Every `r` with `s^r(∅) = ∅` is a multiple of `l`; strip prime factors
    /// while the quotient still returns to `∅`.
    fn minimise(&mut self, mut r: u64) -> u64 {
        for p in prime_factors(r) {
            while r.is_multiple_of(p) && self.returns(r / p) {
                r /= p;
            }
        }
        r
    }
}

fn recover_attempt(
    m: &Outmap,
    oracle: &PowerOracle,
    sampler: &Sampler,
    cfg: &QpfConfig,
    attempt: u32,
) -> Result<QpfResult> {
    let bound = 1u64 << m.dim();
    let outcomes = sampler.sample(cfg.samples as usize, &mut rng_for(cfg, attempt))?;
    let mut recovery = Recovery { oracle, validations: 0 };
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    let mut rejected: HashSet<u64> = HashSet::new();
    let mut measured = Vec::new();

    for j in outcomes {
        measured.push(j);
        for q in continued_fraction_candidates(j, cfg.t, bound) {
            let combined: Vec<u64> = candidates.iter().map(|&c| c.lcm(&q)).filter(|&c| c <= bound).collect();
            candidates.extend(combined);
            candidates.insert(q);
        }
        let untested: Vec<u64> = candidates.iter().copied().filter(|c| !rejected.contains(c)).collect();
        for r in untested {
            if recovery.returns(r) {
                let period = recovery.minimise(r);
                return Ok(QpfResult {
                    queries_used: measured.len() as u64,
                    measured,
                    candidates: candidates.into_iter().collect(),
                    recovered_period: Some(period),
                    validation_queries: recovery.validations,
                });
            }
            rejected.insert(r);
        }
    }
    Ok(QpfResult {
        queries_used: measured.len() as u64,
        measured,
        candidates: candidates.into_iter().collect(),
        recovered_period: None,
        validation_queries: recovery.validations,
    })
}

/// Recovers the period of the `∅`-orbit from at most `cfg.samples` circuit
/// runs. Candidates are continued-fraction denominators and their pairwise
/// least common multiples up to `2^n`; the smallest candidate `r` with
/// `s^r(∅) = ∅` is accepted and reduced to the minimal period.
pub fn recover_period(m: &Outmap, cfg: &QpfConfig) -> Result<QpfResult> {
    cfg.validate(m.dim())?;
    let oracle = PowerOracle::new(m)?;
    let sampler = Sampler::new(m, &oracle, cfg)?;
    recover_attempt(m, &oracle, &sampler, cfg, 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumSinkReport {
    pub sink: SubsetMask,
    pub period: u64,
    pub attempts: u32,
    /// Outcomes of every circuit run, across attempts.
    pub measured: Vec<u64>,
    /// Candidates of the successful attempt.
    pub candidates: Vec<u64>,
    /// Powering-oracle invocations: one per circuit run plus one per
    /// evaluation of `s^{l-1}(∅)`.
    pub oracle_queries: u64,
    pub validation_queries: u64,
    /// Plain outmap queries used to confirm `s(sink) = ∅`.
    pub eval_queries: u64,
}

/// Period finding followed by one oracle call for `s^{l-1}(∅)`, confirmed
/// by `s(result) = ∅`. Fresh samples are drawn on failure, up to
/// `cfg.retries` attempts.
pub fn quantum_find_sink(m: &Outmap, cfg: &QpfConfig) -> Result<QuantumSinkReport> {
    cfg.validate(m.dim())?;
    let oracle = PowerOracle::new(m)?;
    let sampler = Sampler::new(m, &oracle, cfg)?;
    let mut measured = Vec::new();
    let (mut circuit_runs, mut validations, mut evals) = (0u64, 0u64, 0u64);
    for attempt in 0..cfg.retries {
        let res = recover_attempt(m, &oracle, &sampler, cfg, attempt)?;
        circuit_runs += res.queries_used;
        validations += res.validation_queries;
        measured.extend_from_slice(&res.measured);
        let Some(period) = res.recovered_period else { continue };
        let sink = oracle.power((period - 1) as u128, SubsetMask::EMPTY);
        evals += 1;
        if m.eval(sink).is_empty() {
            return Ok(QuantumSinkReport {
                sink,
                period,
                attempts: attempt + 1,
                measured,
                candidates: res.candidates,
                oracle_queries: circuit_runs + oracle.calls(),
                validation_queries: validations,
                eval_queries: evals,
            });
        }
    }
    Err(UsoError::RecoveryExhausted { attempts: cfg.retries })
}

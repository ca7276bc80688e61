//! Explicit state-vector simulation of the period-finding circuit.
//!
//! The joint state over the counting register (`t` qubits) and the function
//! register (`n` qubits) is built as `2^{-t/2} Σ_k |k⟩|s^k(∅)⟩`. The function
//! register is then measured, the collapsed counting register goes through a
//! gate-level quantum Fourier transform, and the counting register is read.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;

use crate::cube::SubsetMask;
use crate::error::{Result, UsoError};
use crate::period::CycleDecomposition;

/// Cap on `t + n` for the joint state vector.
pub const MAX_JOINT_QUBITS: u32 = 26;

fn hadamard(state: &mut [Complex64], qubit: u32) {
    let bit = 1usize << qubit;
    for i in 0..state.len() {
        if i & bit == 0 {
            let (a, b) = (state[i], state[i | bit]);
            state[i] = (a + b) * FRAC_1_SQRT_2;
            state[i | bit] = (a - b) * FRAC_1_SQRT_2;
        }
    }
}

fn controlled_phase(state: &mut [Complex64], control: u32, target: u32, angle: f64) {
    let mask = (1usize << control) | (1usize << target);
    let phase = Complex64::from_polar(1.0, angle);
    for (i, amp) in state.iter_mut().enumerate() {
        if i & mask == mask {
            *amp *= phase;
        }
    }
}

fn reverse_qubits(state: &mut [Complex64], qubits: u32) {
    if qubits == 0 {
        return;
    }
    for i in 0..state.len() {
        let r = i.reverse_bits() >> (usize::BITS - qubits);
        if i < r {
            state.swap(i, r);
        }
    }
}

/// In-place QFT, `|k⟩ ↦ 2^{-t/2} Σ_j e^{2πi·jk/2^t} |j⟩`, built from
/// Hadamards, controlled phase rotations and a final qubit reversal.
pub fn qft(state: &mut [Complex64]) {
    assert!(state.len().is_power_of_two(), "register length must be a power of two");
    let qubits = state.len().trailing_zeros();
    for target in (0..qubits).rev() {
        hadamard(state, target);
        for control in (0..target).rev() {
            controlled_phase(state, control, target, PI / (1u64 << (target - control)) as f64);
        }
    }
    reverse_qubits(state, qubits);
}

/// The prepared circuit for one outmap and counting width.
#[derive(Debug, Clone)]
pub struct PeriodFindingCircuit {
    t: u32,
    n: u32,
    // amplitudes indexed by (k << n) | v
    joint: Vec<Complex64>,
}

impl PeriodFindingCircuit {
    /// Prepares the post-oracle joint state.
    pub fn prepare(cycles: &CycleDecomposition, n: u32, t: u32) -> Result<Self> {
        if t + n > MAX_JOINT_QUBITS {
            return Err(UsoError::ResourceCap(format!(
                "state vector over t + n = {} qubits exceeds {MAX_JOINT_QUBITS}",
                t + n
            )));
        }
        let counting = 1usize << t;
        let mut joint = vec![Complex64::new(0.0, 0.0); counting << n];
        let amp = Complex64::new(1.0 / (counting as f64).sqrt(), 0.0);
        for k in 0..counting {
            let v = cycles.power(k as u128, SubsetMask::EMPTY);
            joint[(k << n) | v.index()] += amp;
        }
        Ok(PeriodFindingCircuit { t, n, joint })
    }

    /// Outcome probabilities of measuring the function register.
    pub fn function_register_probabilities(&self) -> Vec<f64> {
        let mut probs = vec![0.0; 1 << self.n];
        for (idx, amp) in self.joint.iter().enumerate() {
            probs[idx & ((1 << self.n) - 1)] += amp.norm_sqr();
        }
        probs
    }

    /// Counting-register distribution after the function register collapsed
    /// to `v` and the QFT was applied.
    pub fn counting_distribution_given(&self, v: SubsetMask) -> Vec<f64> {
        let mut slice: Vec<Complex64> = (0..1usize << self.t)
            .map(|k| self.joint[(k << self.n) | v.index()])
            .collect();
        let norm: f64 = slice.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 {
            return vec![0.0; slice.len()];
        }
        slice.iter_mut().for_each(|a| *a /= norm);
        qft(&mut slice);
        slice.iter().map(Complex64::norm_sqr).collect()
    }

    /// Marginal distribution of the counting register over both measurements.
    pub fn counting_distribution(&self) -> Vec<f64> {
        let mut total = vec![0.0; 1 << self.t];
        for (v, p) in self.function_register_probabilities().into_iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let cond = self.counting_distribution_given(SubsetMask::new(v as u32));
            total.iter_mut().zip(cond).for_each(|(acc, c)| *acc += p * c);
        }
        total
    }

    /// Runs the circuit `count` times: measure the function register, QFT,
    /// measure the counting register.
    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<u64> {
        let fprobs = self.function_register_probabilities();
        let mut cache: HashMap<usize, Vec<f64>> = HashMap::new();
        (0..count)
            .map(|_| {
                let v = inverse_cdf(&fprobs, rng.random::<f64>());
                let dist = cache
                    .entry(v)
                    .or_insert_with(|| self.counting_distribution_given(SubsetMask::new(v as u32)));
                inverse_cdf(dist, rng.random::<f64>()) as u64
            })
            .collect()
    }
}

fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut cdf = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        cdf += p;
        last = i;
        if u < cdf {
            return i;
        }
    }
    last
}

//! The outmap of a USO as a permutation of `2^[n]`: orbits, periods, powers
//! and sink extraction from the period of the `∅`-orbit.
//!
//! Powering goes through a full cycle decomposition, which costs `O(2^n)`
//! time and memory up front. No sub-exponential way to evaluate `s^k` for
//! huge `k` is known; the table is a desk-scale stand-in for that oracle.

use std::cell::Cell;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cube::SubsetMask;
use crate::error::{Result, UsoError};
use crate::orientation::{Outmap, OutmapOracle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodResult {
    pub start: SubsetMask,
    /// `start, s(start), ..., s^{l-1}(start)`.
    pub orbit: Vec<SubsetMask>,
    pub period: u64,
    /// `s^{l-1}(start)`; the global sink when `start = ∅` on a USO.
    pub sink_candidate: SubsetMask,
}

/// Minimal `l > 0` with `s^l(start) = start`, together with the orbit.
pub fn orbit_period(m: &Outmap, start: SubsetMask) -> Result<PeriodResult> {
    if m.get(start).is_none() {
        return Err(UsoError::MaskOutOfRange {
            mask: start.bits() as u64,
            n: m.dim(),
        });
    }
    let mut seen = vec![false; m.len()];
    let mut orbit = vec![start];
    seen[start.index()] = true;
    let mut v = m.eval(start);
    while v != start {
        if std::mem::replace(&mut seen[v.index()], true) {
            // entered a cycle that does not contain `start`
            return Err(UsoError::NotBijection);
        }
        orbit.push(v);
        v = m.eval(v);
    }
    let sink_candidate = *orbit.last().expect("orbit is non-empty");
    Ok(PeriodResult {
        start,
        period: orbit.len() as u64,
        orbit,
        sink_candidate,
    })
}

/// Disjoint cycles of a bijective outmap, with a per-vertex position index.
#[derive(Debug, Clone)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<SubsetMask>>,
    // (cycle id, position in cycle) for every vertex
    index: Vec<(u32, u32)>,
}

impl CycleDecomposition {
    pub fn new(m: &Outmap) -> Result<Self> {
        const UNSET: (u32, u32) = (u32::MAX, u32::MAX);
        let mut index = vec![UNSET; m.len()];
        let mut cycles = Vec::new();
        for start in m.vertices() {
            if index[start.index()] != UNSET {
                continue;
            }
            let id = cycles.len() as u32;
            let mut cycle = Vec::new();
            let mut v = start;
            loop {
                if index[v.index()] != UNSET {
                    if v == start {
                        break;
                    }
                    return Err(UsoError::NotBijection);
                }
                index[v.index()] = (id, cycle.len() as u32);
                cycle.push(v);
                v = m.eval(v);
            }
            cycles.push(cycle);
        }
        Ok(CycleDecomposition { cycles, index })
    }

    pub fn cycles(&self) -> &[Vec<SubsetMask>] {
        &self.cycles
    }

    /// The cycle through `u`.
    pub fn cycle_of(&self, u: SubsetMask) -> &[SubsetMask] {
        &self.cycles[self.index[u.index()].0 as usize]
    }

    /// `s^k(u)`.
    pub fn power(&self, k: u128, u: SubsetMask) -> SubsetMask {
        let (id, pos) = self.index[u.index()];
        let cycle = &self.cycles[id as usize];
        let len = cycle.len() as u128;
        cycle[((pos as u128 + k % len) % len) as usize]
    }

    /// `s^k(u)` for an arbitrary-precision exponent.
    pub fn power_big(&self, k: &BigUint, u: SubsetMask) -> SubsetMask {
        let len = self.cycle_of(u).len() as u64;
        let reduced = (k % len).to_u64().expect("remainder is below the cycle length");
        self.power(reduced as u128, u)
    }
}

/// `s^k(u)`, building the cycle decomposition on the fly.
pub fn power(m: &Outmap, k: u128, u: SubsetMask) -> Result<SubsetMask> {
    if m.get(u).is_none() {
        return Err(UsoError::MaskOutOfRange {
            mask: u.bits() as u64,
            n: m.dim(),
        });
    }
    Ok(CycleDecomposition::new(m)?.power(k, u))
}

/// `s^{l-1}(∅)` where `l` is the period of the `∅`-orbit.
pub fn sink_via_period(m: &Outmap) -> Result<SubsetMask> {
    let l = orbit_period(m, SubsetMask::EMPTY)?.period;
    let cycles = CycleDecomposition::new(m)?;
    Ok(cycles.power((l - 1) as u128, SubsetMask::EMPTY))
}

/// Number of queries the naive walk `s(∅), s²(∅), ...` makes before it
/// returns to `∅`.
pub fn naive_walk_count<O: OutmapOracle + ?Sized>(oracle: &O) -> Result<u64> {
    let limit = 1u64 << oracle.dim();
    let mut v = SubsetMask::EMPTY;
    for queries in 1..=limit {
        v = oracle.eval(v);
        if v.is_empty() {
            return Ok(queries);
        }
    }
    Err(UsoError::NotBijection)
}

/// Simulated powering oracle `|k,u,v⟩ ↦ |k,u,v ⊕ s^k(u)⟩`: supplies `s^k(u)`
/// and counts how often it was invoked.
#[derive(Debug)]
pub struct PowerOracle {
    cycles: CycleDecomposition,
    calls: Cell<u64>,
}

impl PowerOracle {
    pub fn new(m: &Outmap) -> Result<Self> {
        Ok(PowerOracle {
            cycles: CycleDecomposition::new(m)?,
            calls: Cell::new(0),
        })
    }

    pub fn power(&self, k: u128, u: SubsetMask) -> SubsetMask {
        self.calls.set(self.calls.get() + 1);
        self.cycles.power(k, u)
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn decomposition(&self) -> &CycleDecomposition {
        &self.cycles
    }
}

//! Classical sink finders with exact query accounting.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{Subcube, SubsetMask};
use crate::error::{Result, UsoError};
use crate::orientation::{Outmap, OutmapOracle};
use crate::period::sink_via_period;
use crate::verifier::BruteForceDecision;

/// Number of outmap evaluations observed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct QueryCounter {
    pub count: u64,
}

/// Pass-through oracle that counts every [`OutmapOracle::eval`].
#[derive(Debug)]
pub struct CountingOracle<'a> {
    outmap: &'a Outmap,
    count: Cell<u64>,
}

pub fn with_query_counting(m: &Outmap) -> CountingOracle<'_> {
    CountingOracle {
        outmap: m,
        count: Cell::new(0),
    }
}

impl CountingOracle<'_> {
    pub fn counter(&self) -> QueryCounter {
        QueryCounter {
            count: self.count.get(),
        }
    }
}

impl OutmapOracle for CountingOracle<'_> {
    fn dim(&self) -> u32 {
        self.outmap.dim()
    }

    fn eval(&self, v: SubsetMask) -> SubsetMask {
        self.count.set(self.count.get() + 1);
        self.outmap.eval(v)
    }
}

/// Answers "does the global sink lie in this subcube?".
pub trait DecisionOracle {
    fn decide(&mut self, c: &Subcube) -> Result<bool>;
}

impl DecisionOracle for BruteForceDecision {
    fn decide(&mut self, c: &Subcube) -> Result<bool> {
        Ok(BruteForceDecision::decide(self, c))
    }
}

/// Decision oracle that locates the sink once through the period of the
/// `∅`-orbit and answers membership from it.
#[derive(Debug, Clone)]
pub struct PeriodDecision {
    sink: SubsetMask,
}

impl PeriodDecision {
    pub fn new(m: &Outmap) -> Result<Self> {
        Ok(PeriodDecision {
            sink: sink_via_period(m)?,
        })
    }
}

impl DecisionOracle for PeriodDecision {
    fn decide(&mut self, c: &Subcube) -> Result<bool> {
        Ok(c.contains(self.sink))
    }
}

impl<F: FnMut(&Subcube) -> Result<bool>> DecisionOracle for F {
    fn decide(&mut self, c: &Subcube) -> Result<bool> {
        self(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetSearch {
    pub sink: SubsetMask,
    pub decision_calls: u32,
}

/// Search via decision: for each direction, ask whether the sink lies in
/// the lower facet of the current subcube and keep the facet that has it.
/// Uses exactly `n` decision calls; the final vertex is checked with one
/// outmap query.
pub fn solve_by_facet_decision<D: DecisionOracle + ?Sized>(m: &Outmap, decision: &mut D) -> Result<FacetSearch> {
    let mut cube = Subcube::full(m.dim());
    let mut calls = 0;
    for lambda in 1..=m.dim() {
        let (lower, upper) = cube.split(lambda)?;
        calls += 1;
        cube = if decision.decide(&lower)? { lower } else { upper };
    }
    let sink = cube.lo();
    if !m.eval(sink).is_empty() {
        return Err(UsoError::InconsistentDecision(format!(
            "answers led to {sink}, which is not a sink"
        )));
    }
    Ok(FacetSearch {
        sink,
        decision_calls: calls,
    })
}

/// RANDOM EDGE: from `start`, repeatedly follow a uniformly chosen outgoing
/// edge until reaching a vertex with no outgoing edges. Fails after `4^n`
/// steps.
pub fn random_edge_walk(m: &Outmap, start: SubsetMask, seed: u64) -> Result<(SubsetMask, QueryCounter)> {
    if m.get(start).is_none() {
        return Err(UsoError::MaskOutOfRange {
            mask: start.bits() as u64,
            n: m.dim(),
        });
    }
    let cap = 1u64.checked_shl(2 * m.dim()).unwrap_or(u64::MAX);
    let oracle = with_query_counting(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = start;
    for _ in 0..cap {
        let out = oracle.eval(v);
        if out.is_empty() {
            return Ok((v, oracle.counter()));
        }
        let pick = rng.random_range(0..out.len()) as usize;
        let lambda = out.elements().nth(pick).expect("pick < |out|");
        v = v.sym_diff(SubsetMask::singleton(lambda));
    }
    Err(UsoError::StepCapExceeded { cap })
}

//! Unique sink orientations (USOs) of hypercubes.
//!
//! Dense outmap tables, the standard USO constructions, definitional
//! verification, period analysis of the outmap permutation, an exact
//! desk-scale simulation of quantum period finding, and classical baselines
//! with query accounting.

pub mod cube;
pub mod error;
pub mod orientation;
pub mod period;
pub mod qpf;
pub mod solvers;
pub mod verifier;

pub use cube::{enumerate_subcubes, lambda_facets, sym_diff, Subcube, SubsetMask};
pub use error::{Result, UsoError};
pub use orientation::{Direction, Outmap, OutmapOracle};
pub use period::{naive_walk_count, orbit_period, sink_via_period, CycleDecomposition, PeriodResult, PowerOracle};
pub use qpf::{
    continued_fraction_candidates, qpf_distribution, qpf_sample, quantum_find_sink, recover_period, QpfConfig, QpfMode,
    QpfResult, QuantumSinkReport,
};
pub use solvers::{
    random_edge_walk, solve_by_facet_decision, with_query_counting, CountingOracle, DecisionOracle, FacetSearch,
    PeriodDecision, QueryCounter,
};
pub use verifier::{decide, enumerate_usos, global_sink, is_bijection, is_uso, subcube_sinks};

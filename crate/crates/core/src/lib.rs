//! Finiteness and rational-rank calculator for isotopy classes of knots,
//! framed knots, two-component links and knotted tori `S^p × S^q → S^m`.
//!
//! - [`fcs`]: the lattice sets `FCS(i, j)` and line-point queries.
//! - [`criteria`]: the finiteness criteria with strict hypothesis checks.
//! - [`rank`]: interval bounds on ranks, rank providers and exact-sequence bookkeeping.
//! - [`census`]: grid sweeps, CSV/JSON reports and cross-validation.
//! - [`cli`]: the `knotted-tori` command line.

pub mod census;
pub mod cli;
pub mod criteria;
pub mod fcs;
pub mod rank;

pub use census::{
    consistency_report, enumerate_domain, run_census, CensusRecord, ConsistencyReport, GridBounds,
    MPolicy,
};
pub use criteria::{
    connected_sum_infinite, framed_knot_infinite, knot_infinite, knotted_tori_infinite,
    knotted_tori_infinite_via_components, link_unknotted_infinite, link_zero_infinite,
    ConnectedSumVerdict, Criteria, DimTriple, DomainError, Explanation, Finiteness,
    FinitenessVerdict,
};
pub use fcs::{
    fcs_contains, fcs_line_witness, fcs_window, line_solutions, FcsDescriptor, LatticePoint,
    LineEquation, Parity,
};
pub use rank::{
    chain_rank_check, default_stiefel_rank, full_link_rank, interval_add, rank_of_verdict,
    sphere_rank, theorem3_chain, tori_rank, ChainTerm, DefaultProvider, RankInterval, RankProvider,
    TableProvider,
};

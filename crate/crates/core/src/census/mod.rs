//! Sweeps over dimension grids.
//!
//! [`run_census`] evaluates every criterion and the rank bound at each
//! triple of the knotted-tori domain inside a grid; [`consistency_report`]
//! cross-checks the direct criterion against its reformulation through
//! constituent groups, the exact-sequence rank condition, and the
//! vacuity of the framed-knot middle condition.

pub mod io;
pub mod mutation;

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{Criteria, DimTriple, Finiteness, FinitenessVerdict};
use crate::fcs::LatticePoint;
use crate::rank::{
    chain_rank_check, ChainViolation, RankContext, RankError, RankInterval, RankProvider,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("{axis} range {lo}..{hi} is empty")]
    Empty {
        axis: &'static str,
        lo: u32,
        hi: u32,
    },
    #[error("{axis} range must start at 1 or above")]
    NonPositive { axis: &'static str },
}

/// Which ambient dimensions to visit for each `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MPolicy {
    /// Exactly the `m` with `2p+q+2 < m < p+3q/2+2`.
    Auto,
    Range(RangeInclusive<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBounds {
    p: RangeInclusive<u32>,
    q: RangeInclusive<u32>,
    m: MPolicy,
}

fn check_range(axis: &'static str, r: &RangeInclusive<u32>) -> Result<(), GridError> {
    if r.is_empty() {
        return Err(GridError::Empty {
            axis,
            lo: *r.start(),
            hi: *r.end(),
        });
    }
    if *r.start() < 1 {
        return Err(GridError::NonPositive { axis });
    }
    Ok(())
}

impl GridBounds {
    pub fn new(
        p: RangeInclusive<u32>,
        q: RangeInclusive<u32>,
        m: MPolicy,
    ) -> Result<Self, GridError> {
        check_range("p", &p)?;
        check_range("q", &q)?;
        if let MPolicy::Range(r) = &m {
            check_range("m", r)?;
        }
        Ok(GridBounds { p, q, m })
    }

    pub fn auto(p: RangeInclusive<u32>, q: RangeInclusive<u32>) -> Result<Self, GridError> {
        Self::new(p, q, MPolicy::Auto)
    }

    pub fn p(&self) -> &RangeInclusive<u32> {
        &self.p
    }

    pub fn q(&self) -> &RangeInclusive<u32> {
        &self.q
    }

    pub fn m(&self) -> &MPolicy {
        &self.m
    }
}

/// In-domain triples of the grid in lexicographic `(p, q, m)` order.
pub fn enumerate_domain(bounds: &GridBounds) -> Vec<DimTriple> {
    enumerate_domain_with(&Criteria::standard(), bounds)
}

pub fn enumerate_domain_with(criteria: &Criteria, bounds: &GridBounds) -> Vec<DimTriple> {
    let t = criteria.thresholds;
    let mut out = Vec::new();
    for p in bounds.p.clone() {
        for q in bounds.q.clone() {
            let m_range = match &bounds.m {
                MPolicy::Auto => {
                    let first = 2 * i64::from(p) + i64::from(q) + t.tori_lower + 1;
                    // largest m with 2m < 2p + 3q + tori_upper
                    let last =
                        (2 * i64::from(p) + 3 * i64::from(q) + t.tori_upper - 1).div_euclid(2);
                    let clamp = |v: i64| v.clamp(0, i64::from(u32::MAX)) as u32;
                    if first > last {
                        continue;
                    }
                    clamp(first)..=clamp(last)
                }
                MPolicy::Range(r) => r.clone(),
            };
            out.extend(
                m_range
                    .filter(|&m| criteria.in_tori_domain(p, q, m))
                    .map(|m| DimTriple::new(p, q, m)),
            );
        }
    }
    out
}

/// Finiteness of the constituent groups of a knotted torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdicts {
    /// `E^m(S^{p+q})`
    pub knot_pq: Finiteness,
    /// `E^m(S^q)`
    pub knot_q: Finiteness,
    /// `E^m(D^p × S^q)`
    pub framed: Finiteness,
    /// `E^m_U(S^{p+q} ⊔ S^q)`
    pub linku: Finiteness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub triple: DimTriple,
    pub tori: FinitenessVerdict,
    pub components: ComponentVerdicts,
    pub rank: RankInterval,
}

impl CensusRecord {
    pub fn witness(&self) -> Option<LatticePoint> {
        self.tori.witness()
    }
}

fn evaluate(ctx: &RankContext<'_>, t: DimTriple) -> Result<CensusRecord, RankError> {
    let c = ctx.criteria;
    let DimTriple { p, q, m } = t;
    let tori = c.knotted_tori_infinite(p, q, m)?;
    let components = ComponentVerdicts {
        knot_pq: c.knot_infinite(p + q, m)?.finiteness(),
        knot_q: c.knot_infinite(q, m)?.finiteness(),
        framed: c.framed_knot_infinite(p, q, m)?.finiteness(),
        linku: c.link_unknotted_infinite(p + q, q, m)?.finiteness(),
    };
    let rank = ctx.tori_rank(p, q, m)?;
    Ok(CensusRecord {
        triple: t,
        tori,
        components,
        rank,
    })
}

/// One record per in-domain triple, in lexicographic order.
pub fn run_census(
    bounds: &GridBounds,
    provider: &dyn RankProvider,
) -> Result<Vec<CensusRecord>, RankError> {
    run_census_with(&RankContext::new(&Criteria::standard(), provider), bounds)
}

pub fn run_census_with(
    ctx: &RankContext<'_>,
    bounds: &GridBounds,
) -> Result<Vec<CensusRecord>, RankError> {
    enumerate_domain_with(ctx.criteria, bounds)
        .into_par_iter()
        .map(|t| evaluate(ctx, t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceFailure {
    pub triple: DimTriple,
    /// `None` when the criterion returned an error.
    pub direct: Option<Finiteness>,
    pub via_components: Option<Finiteness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub triple: DimTriple,
    pub violations: Vec<ChainViolation>,
    /// Set when the chain could not be assembled.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub equivalence_failures: Vec<EquivalenceFailure>,
    pub chain_violations: Vec<ChainReport>,
    pub vacuity_failures: Vec<DimTriple>,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.equivalence_failures.is_empty()
            && self.chain_violations.is_empty()
            && self.vacuity_failures.is_empty()
    }

    pub fn failure_count(&self) -> usize {
        self.equivalence_failures.len() + self.chain_violations.len() + self.vacuity_failures.len()
    }
}

struct TripleCheck {
    equivalence: Option<EquivalenceFailure>,
    chain: Option<ChainReport>,
    vacuity: bool,
}

fn check_triple(ctx: &RankContext<'_>, t: DimTriple) -> TripleCheck {
    let c = ctx.criteria;
    let DimTriple { p, q, m } = t;
    let direct = c
        .knotted_tori_infinite(p, q, m)
        .ok()
        .map(|v| v.finiteness());
    let via = c
        .knotted_tori_infinite_via_components(p, q, m)
        .ok()
        .map(|v| v.finiteness());
    let equivalence = (direct.is_none() || direct != via).then_some(EquivalenceFailure {
        triple: t,
        direct,
        via_components: via,
    });
    let chain = match ctx.theorem3_chain(p, q, m) {
        Ok(terms) => {
            let violations = chain_rank_check(&terms);
            (!violations.is_empty()).then_some(ChainReport {
                triple: t,
                violations,
                error: None,
            })
        }
        Err(e) => Some(ChainReport {
            triple: t,
            violations: Vec::new(),
            error: Some(e.to_string()),
        }),
    };
    TripleCheck {
        equivalence,
        chain,
        vacuity: c.framed_middle_condition(q, m),
    }
}

/// Cross-validation over the grid; all three lists are empty for a faithful
/// implementation.
pub fn consistency_report(bounds: &GridBounds, provider: &dyn RankProvider) -> ConsistencyReport {
    consistency_report_with(&RankContext::new(&Criteria::standard(), provider), bounds)
}

pub fn consistency_report_with(ctx: &RankContext<'_>, bounds: &GridBounds) -> ConsistencyReport {
    let triples = enumerate_domain_with(ctx.criteria, bounds);
    let checks: Vec<(DimTriple, TripleCheck)> = triples
        .into_par_iter()
        .map(|t| (t, check_triple(ctx, t)))
        .collect();
    let mut report = ConsistencyReport::default();
    for (t, check) in checks {
        report.equivalence_failures.extend(check.equivalence);
        report.chain_violations.extend(check.chain);
        if check.vacuity {
            report.vacuity_failures.push(t);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::DefaultProvider;

    fn t(p: u32, q: u32, m: u32) -> DimTriple {
        DimTriple::new(p, q, m)
    }

    #[test]
    fn enumerate_examples() {
        let b = GridBounds::auto(1..=1, 5..=5).unwrap();
        // m = 11 fails 2m < 2p+3q+4 = 21.
        assert_eq!(enumerate_domain(&b), vec![t(1, 5, 10)]);
        assert!(enumerate_domain(&GridBounds::auto(1..=1, 3..=3).unwrap()).is_empty());
        assert!(enumerate_domain(&GridBounds::auto(1..=1, 1..=1).unwrap()).is_empty());
    }

    #[test]
    fn explicit_m_range_is_filtered() {
        let b = GridBounds::new(1..=1, 5..=5, MPolicy::Range(1..=40)).unwrap();
        assert_eq!(enumerate_domain(&b), vec![t(1, 5, 10)]);
    }

    #[test]
    fn bounds_validation() {
        assert_eq!(
            GridBounds::auto(0..=3, 1..=2).unwrap_err(),
            GridError::NonPositive { axis: "p" }
        );
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 4..=3;
        assert!(matches!(
            GridBounds::auto(1..=2, empty),
            Err(GridError::Empty { axis: "q", .. })
        ));
    }

    #[test]
    fn census_rows() {
        let b = GridBounds::auto(1..=1, 5..=6).unwrap();
        let records = run_census(&b, &DefaultProvider::default()).unwrap();
        let first = &records[0];
        assert_eq!(first.triple, t(1, 5, 10));
        assert_eq!(first.tori, FinitenessVerdict::Finite);
        assert_eq!(first.rank, RankInterval::ZERO);
        let r = records.iter().find(|r| r.triple == t(1, 6, 11)).unwrap();
        assert_eq!(r.tori.explanation().unwrap().condition, "4 | p+q+1");
    }

    #[test]
    fn empty_grid() {
        let b = GridBounds::auto(1..=1, 1..=3).unwrap();
        assert!(run_census(&b, &DefaultProvider::default())
            .unwrap()
            .is_empty());
        assert!(consistency_report(&b, &DefaultProvider::default()).is_clean());
    }
}

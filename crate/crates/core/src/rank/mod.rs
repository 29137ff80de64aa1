//! Interval bounds on the rational rank of the groups involved.
//!
//! Exact ranks of the knot, link and Stiefel-manifold groups are external
//! data. They are supplied through a [`RankProvider`]; the default provider
//! derives what it can from the finiteness criteria alone, and
//! [`table::TableProvider`] reads known values from a file.

pub mod chain;
pub mod table;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{Criteria, DimTriple, DomainError, Finiteness, FinitenessVerdict};

pub use chain::{chain_rank_check, theorem3_chain, ChainTerm, ChainViolation};
pub use table::{RankTable, TableError, TableProvider};

/// A closed range `[lo, hi]` of possible ranks; `hi = None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankInterval {
    lo: u64,
    hi: Option<u64>,
}

impl RankInterval {
    /// Rank zero: the group is finite.
    pub const ZERO: RankInterval = RankInterval { lo: 0, hi: Some(0) };
    /// Nothing known.
    pub const UNKNOWN: RankInterval = RankInterval { lo: 0, hi: None };
    /// Infinite group of unknown rank.
    pub const POSITIVE: RankInterval = RankInterval { lo: 1, hi: None };

    /// `None` if `lo > hi`.
    pub fn new(lo: u64, hi: Option<u64>) -> Option<Self> {
        match hi {
            Some(h) if h < lo => None,
            _ => Some(RankInterval { lo, hi }),
        }
    }

    pub const fn exact(r: u64) -> Self {
        RankInterval { lo: r, hi: Some(r) }
    }

    pub const fn at_least(lo: u64) -> Self {
        RankInterval { lo, hi: None }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> Option<u64> {
        self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_some()
    }

    /// Provably finite group.
    pub fn is_zero(&self) -> bool {
        self.hi == Some(0)
    }

    /// Provably infinite group.
    pub fn is_positive(&self) -> bool {
        self.lo >= 1
    }

    pub fn contains(&self, r: u64) -> bool {
        r >= self.lo && self.hi.is_none_or(|h| r <= h)
    }

    /// Whether every rank allowed by `other` is allowed by `self`.
    pub fn includes(&self, other: &RankInterval) -> bool {
        let hi_ok = match (self.hi, other.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= a,
        };
        self.lo <= other.lo && hi_ok
    }

    pub fn intersect(&self, other: &RankInterval) -> Option<RankInterval> {
        let lo = self.lo.max(other.lo);
        let hi = match (self.hi, other.hi) {
            (None, h) | (h, None) => h,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        RankInterval::new(lo, hi)
    }
}

impl Default for RankInterval {
    fn default() -> Self {
        RankInterval::UNKNOWN
    }
}

impl Add for RankInterval {
    type Output = RankInterval;

    fn add(self, rhs: RankInterval) -> RankInterval {
        interval_add(self, rhs)
    }
}

impl std::iter::Sum for RankInterval {
    fn sum<I: Iterator<Item = RankInterval>>(iter: I) -> Self {
        iter.fold(RankInterval::ZERO, interval_add)
    }
}

impl fmt::Display for RankInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

/// Rank of a direct sum: endpoints add, unbounded absorbs.
pub fn interval_add(a: RankInterval, b: RankInterval) -> RankInterval {
    RankInterval {
        lo: a.lo.saturating_add(b.lo),
        hi: match (a.hi, b.hi) {
            (Some(x), Some(y)) => Some(x.saturating_add(y)),
            _ => None,
        },
    }
}

/// A finitely generated abelian group is infinite exactly when its rank is positive.
pub fn rank_of_verdict(v: &FinitenessVerdict) -> RankInterval {
    match v.finiteness() {
        Finiteness::Finite => RankInterval::ZERO,
        Finiteness::Infinite => RankInterval::POSITIVE,
    }
}

/// Rational rank of `π_i(S^n)`: one in degree `n`, and in degree `2n−1`
/// for even `n`; zero otherwise.
pub fn sphere_rank(i: u32, n: u32) -> u32 {
    let (i, n) = (u64::from(i), u64::from(n));
    u32::from(i == n || (n % 2 == 0 && i + 1 == 2 * n))
}

/// Source of rank bounds for the groups the rank formula is assembled from.
///
/// `None` means no information; callers treat it as `[0, inf)` and flag the
/// result as unconstrained.
pub trait RankProvider: Send + Sync {
    /// Rank of `π_q(V_{n,k})`.
    fn stiefel_rank(&self, q: u32, n: u32, k: u32) -> Option<RankInterval>;
    /// Rank of the knot group `E^m(S^q)`.
    fn knot_rank(&self, q: u32, m: u32) -> Option<RankInterval>;
    /// Rank of the unknotted-link group `E^m_U(S^p ⊔ S^q)`.
    fn linku_rank(&self, p: u32, q: u32, m: u32) -> Option<RankInterval>;
}

/// Bounds derived from the finiteness criteria only.
#[derive(Debug, Clone, Default)]
pub struct DefaultProvider {
    criteria: Criteria,
}

impl DefaultProvider {
    pub fn new(criteria: Criteria) -> Self {
        DefaultProvider { criteria }
    }

    pub fn criteria(&self) -> &Criteria {
        &self.criteria
    }
}

impl RankProvider for DefaultProvider {
    fn stiefel_rank(&self, q: u32, n: u32, k: u32) -> Option<RankInterval> {
        default_stiefel_rank_with(&self.criteria, q, n, k).ok()
    }

    fn knot_rank(&self, q: u32, m: u32) -> Option<RankInterval> {
        self.criteria
            .knot_infinite(q, m)
            .ok()
            .map(|v| rank_of_verdict(&v))
    }

    fn linku_rank(&self, p: u32, q: u32, m: u32) -> Option<RankInterval> {
        self.criteria
            .link_unknotted_infinite(p, q, m)
            .ok()
            .map(|v| rank_of_verdict(&v))
    }
}

/// Rank of `π_q(V_{n,k})` solved out of the rational splitting of the framed
/// knot group `E^{n+q}(D^k × S^q)` into the knot group and the Stiefel summand.
pub fn default_stiefel_rank(q: u32, n: u32, k: u32) -> Result<RankInterval, DomainError> {
    default_stiefel_rank_with(&Criteria::standard(), q, n, k)
}

pub fn default_stiefel_rank_with(
    criteria: &Criteria,
    q: u32,
    n: u32,
    k: u32,
) -> Result<RankInterval, DomainError> {
    let m = n.checked_add(q).expect("dimension overflow");
    let framed = criteria.framed_knot_infinite(k, q, m)?;
    let knot = criteria.knot_infinite(q, m).map_err(|e| DomainError {
        values: DimTriple::new(k, q, m),
        ..e
    })?;
    Ok(match (framed.is_infinite(), knot.is_infinite()) {
        (false, _) => RankInterval::ZERO,
        (true, false) => RankInterval::POSITIVE,
        (true, true) => RankInterval::UNKNOWN,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("rank interval {raw} contradicts verdict {verdict} at {triple}")]
    Inconsistent {
        triple: DimTriple,
        raw: RankInterval,
        verdict: Finiteness,
    },
}

/// Result of [`RankContext::tori_rank_detail`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToriRank {
    /// Link rank plus Stiefel rank, before consulting the verdict.
    pub raw: RankInterval,
    pub tightened: RankInterval,
    pub verdict: FinitenessVerdict,
    /// Some summand had no provider answer.
    pub unconstrained: bool,
}

/// A provider together with the criteria used to tighten its answers.
#[derive(Clone, Copy)]
pub struct RankContext<'a> {
    pub criteria: &'a Criteria,
    pub provider: &'a dyn RankProvider,
}

fn or_unknown(r: Option<RankInterval>, unconstrained: &mut bool) -> RankInterval {
    r.unwrap_or_else(|| {
        *unconstrained = true;
        RankInterval::UNKNOWN
    })
}

impl<'a> RankContext<'a> {
    pub fn new(criteria: &'a Criteria, provider: &'a dyn RankProvider) -> Self {
        RankContext { criteria, provider }
    }

    /// Rank of `E^m(S^n ⊔ S^q)` as `E_U ⊕ E^m(S^n) ⊕ E^m(S^q)`.
    pub fn full_link_rank(&self, n: u32, q: u32, m: u32) -> Result<RankInterval, DomainError> {
        self.full_link_rank_flagged(n, q, m).map(|(r, _)| r)
    }

    fn full_link_rank_flagged(
        &self,
        n: u32,
        q: u32,
        m: u32,
    ) -> Result<(RankInterval, bool), DomainError> {
        let c = self.criteria;
        c.link_unknotted_infinite(n, q, m)?;
        c.knot_infinite(n, m).map_err(|e| DomainError {
            values: DimTriple::new(n, q, m),
            ..e
        })?;
        c.knot_infinite(q, m).map_err(|e| DomainError {
            values: DimTriple::new(n, q, m),
            ..e
        })?;
        let mut unconstrained = false;
        let sum = or_unknown(self.provider.linku_rank(n, q, m), &mut unconstrained)
            + or_unknown(self.provider.knot_rank(n, m), &mut unconstrained)
            + or_unknown(self.provider.knot_rank(q, m), &mut unconstrained);
        Ok((sum, unconstrained))
    }

    /// Rank of `E^m(S^p × S^q)` below the metastable range, tightened by the
    /// finiteness verdict.
    pub fn tori_rank(&self, p: u32, q: u32, m: u32) -> Result<RankInterval, RankError> {
        self.tori_rank_detail(p, q, m).map(|t| t.tightened)
    }

    pub fn tori_rank_detail(&self, p: u32, q: u32, m: u32) -> Result<ToriRank, RankError> {
        let verdict = self.criteria.knotted_tori_infinite(p, q, m)?;
        let (link, mut unconstrained) = self.full_link_rank_flagged(p + q, q, m)?;
        let stiefel = or_unknown(self.provider.stiefel_rank(q, m - q, p), &mut unconstrained);
        let raw = link + stiefel;
        let inconsistent = || RankError::Inconsistent {
            triple: DimTriple::new(p, q, m),
            raw,
            verdict: verdict.finiteness(),
        };
        let tightened = match verdict.finiteness() {
            Finiteness::Infinite => raw.intersect(&RankInterval::POSITIVE),
            Finiteness::Finite => raw.intersect(&RankInterval::ZERO),
        }
        .ok_or_else(inconsistent)?;
        Ok(ToriRank {
            raw,
            tightened,
            verdict,
            unconstrained,
        })
    }

    /// Whether `∂*: E^m(D^p × S^q) → E_0^{m−1}(…)` is forced to have finite
    /// image: either its source is finite or `π_{q−1}(S^{m−p−q−1})` is.
    pub fn boundary_has_finite_image(&self, p: u32, q: u32, m: u32) -> Result<bool, DomainError> {
        self.criteria.check_tori_domain(p, q, m)?;
        let framed = self.criteria.framed_knot_infinite(p, q, m)?;
        Ok(!framed.is_infinite() || sphere_rank(q - 1, m - p - q - 1) == 0)
    }
}

/// [`RankContext::full_link_rank`] with the standard criteria.
pub fn full_link_rank(
    n: u32,
    q: u32,
    m: u32,
    provider: &dyn RankProvider,
) -> Result<RankInterval, DomainError> {
    RankContext::new(&Criteria::standard(), provider).full_link_rank(n, q, m)
}

/// [`RankContext::tori_rank`] with the standard criteria.
pub fn tori_rank(
    p: u32,
    q: u32,
    m: u32,
    provider: &dyn RankProvider,
) -> Result<RankInterval, RankError> {
    RankContext::new(&Criteria::standard(), provider).tori_rank(p, q, m)
}

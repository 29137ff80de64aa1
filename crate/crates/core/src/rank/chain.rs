//! Rank bookkeeping along the long exact sequence
//! `… → E_0^m(S^{p+q} ⊔ S^q) → E^m(S^p × S^q) → E^m(D^p × S^q) → E_0^{m−1}(…) → …`.
//!
//! Only the local necessary condition is checked: for exact `A → B → C` of
//! finitely generated abelian groups, `rank B ≤ rank A + rank C`.

use serde::{Deserialize, Serialize};

use super::{or_unknown, RankContext, RankError, RankInterval, RankProvider};
use crate::criteria::{hypothesis, Criteria, DimTriple, DomainError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub label: String,
    pub rank: RankInterval,
    /// At least one summand was outside every known range.
    pub unconstrained: bool,
}

impl ChainTerm {
    pub fn new(label: impl Into<String>, rank: RankInterval) -> Self {
        let label = label.into();
        assert!(!label.is_empty(), "chain term label must be nonempty");
        ChainTerm {
            label,
            rank,
            unconstrained: false,
        }
    }

    fn flagged(label: String, rank: RankInterval, unconstrained: bool) -> Self {
        ChainTerm {
            label,
            rank,
            unconstrained,
        }
    }
}

/// An interior term whose lower rank bound exceeds what its neighbours allow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    pub index: usize,
    pub label: String,
    pub lo: u64,
    /// `hi(A) + hi(C)`; always finite for a violation.
    pub neighbour_bound: u64,
}

/// Checks `lo(B) ≤ hi(A) + hi(C)` for every interior term `B`.
pub fn chain_rank_check(chain: &[ChainTerm]) -> Vec<ChainViolation> {
    chain
        .windows(3)
        .enumerate()
        .filter_map(|(i, w)| {
            let bound = (w[0].rank + w[2].rank).hi()?;
            (w[1].rank.lo() > bound).then(|| ChainViolation {
                index: i + 1,
                label: w[1].label.clone(),
                lo: w[1].rank.lo(),
                neighbour_bound: bound,
            })
        })
        .collect()
}

impl RankContext<'_> {
    /// The terms of the sequence starting at `E_0^m(S^{p+q} ⊔ S^q)` and
    /// descending while `q − k ≥ 1`, three terms per step `k`.
    pub fn theorem3_chain(&self, p: u32, q: u32, m: u32) -> Result<Vec<ChainTerm>, RankError> {
        let lower = i64::from(m) - 2 * i64::from(p) - i64::from(q);
        if lower <= self.criteria.thresholds.tori_lower {
            return Err(DomainError {
                constraint: hypothesis::TORI_LOWER,
                values: DimTriple::new(p, q, m),
            }
            .into());
        }
        let provider = self.provider;
        let n = m - q;
        let mut chain = Vec::with_capacity(3 * q as usize);
        for k in 0..q {
            let (qk, mk) = (q - k, m - k);

            let mut unc = false;
            let rank = or_unknown(provider.linku_rank(p + qk, qk, mk), &mut unc)
                + or_unknown(provider.knot_rank(p + qk, mk), &mut unc);
            chain.push(ChainTerm::flagged(
                format!("E_0^{mk}(S^{} ⊔ S^{qk})", p + qk),
                rank,
                unc,
            ));

            let label = format!("E^{mk}(S^{p} × S^{qk})");
            if self.criteria.in_tori_domain(p, qk, mk) {
                let t = self.tori_rank_detail(p, qk, mk)?;
                chain.push(ChainTerm::flagged(label, t.tightened, t.unconstrained));
            } else {
                chain.push(ChainTerm::flagged(label, RankInterval::UNKNOWN, true));
            }

            let mut unc = false;
            let rank = or_unknown(provider.knot_rank(qk, mk), &mut unc)
                + or_unknown(provider.stiefel_rank(qk, n, p), &mut unc);
            chain.push(ChainTerm::flagged(
                format!("E^{mk}(D^{p} × S^{qk})"),
                rank,
                unc,
            ));
        }
        Ok(chain)
    }
}

/// [`RankContext::theorem3_chain`] with the standard criteria.
pub fn theorem3_chain(
    p: u32,
    q: u32,
    m: u32,
    provider: &dyn RankProvider,
) -> Result<Vec<ChainTerm>, RankError> {
    RankContext::new(&Criteria::standard(), provider).theorem3_chain(p, q, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::DefaultProvider;

    fn term(rank: RankInterval) -> ChainTerm {
        ChainTerm::new("G", rank)
    }

    #[test]
    fn local_check() {
        let v = chain_rank_check(&[
            term(RankInterval::ZERO),
            term(RankInterval::POSITIVE),
            term(RankInterval::ZERO),
        ]);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].index, 1);
        assert!(chain_rank_check(&[
            term(RankInterval::exact(1)),
            term(RankInterval::POSITIVE),
            term(RankInterval::ZERO),
        ])
        .is_empty());
        assert!(chain_rank_check(&[term(RankInterval::POSITIVE)]).is_empty());
    }

    #[test]
    fn chain_at_1_6_11() {
        let chain = theorem3_chain(1, 6, 11, &DefaultProvider::default()).unwrap();
        assert_eq!(chain.len(), 18);
        // E_U(S^7 ⊔ S^6) and E^11(S^7) are both infinite, so the first two
        // terms carry rank at least 2.
        let ranks: Vec<_> = chain[..3].iter().map(|t| t.rank).collect();
        assert_eq!(
            ranks,
            [
                RankInterval::at_least(2),
                RankInterval::at_least(2),
                RankInterval::ZERO
            ]
        );
        assert_eq!(chain[0].label, "E_0^11(S^7 ⊔ S^6)");
        assert_eq!(chain[1].label, "E^11(S^1 × S^6)");
        assert_eq!(chain[2].label, "E^11(D^1 × S^6)");
        assert!(chain_rank_check(&chain).is_empty());
    }

    #[test]
    fn chain_at_example_one() {
        let chain = theorem3_chain(1, 5, 10, &DefaultProvider::default()).unwrap();
        assert!(chain[..3]
            .iter()
            .all(|t| t.rank == RankInterval::ZERO && !t.unconstrained));
        assert!(chain_rank_check(&chain).is_empty());
    }

    #[test]
    fn chain_domain() {
        let err = theorem3_chain(1, 3, 6, &DefaultProvider::default()).unwrap_err();
        assert!(matches!(
            err,
            RankError::Domain(DomainError {
                constraint: "m > 2p+q+2",
                ..
            })
        ));
    }
}

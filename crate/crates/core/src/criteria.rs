//! Finiteness criteria for knots, framed knots, links and knotted tori.
//!
//! Every criterion checks its dimension hypotheses first and returns a
//! [`DomainError`] naming the violated one; nothing is evaluated outside
//! the stated range. Inequalities involving `3q/2` are doubled so that all
//! arithmetic stays in integers:
//!
//! | stated                | evaluated               |
//! |-----------------------|-------------------------|
//! | `m < 3q/2 + 2`        | `2m < 3q + 4`           |
//! | `m < p + 3q/2 + 1`    | `2m < 2p + 3q + 2`      |
//! | `m < p + 3q/2 + 2`    | `2m < 2p + 3q + 4`      |
//!
//! The additive constants in the right-hand column, and the lower bound
//! `m > 2p + q + 2`, are held in [`Thresholds`] so that mutation tests can
//! shift them by one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fcs::{FcsTable, LatticePoint, LineEquation};

/// Dimensions `(p, q, m)`: the factors `S^p`, `S^q` and the ambient `S^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimTriple {
    pub p: u32,
    pub q: u32,
    pub m: u32,
}

impl DimTriple {
    pub const fn new(p: u32, q: u32, m: u32) -> Self {
        DimTriple { p, q, m }
    }
}

impl fmt::Display for DimTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, m={})", self.p, self.q, self.m)
    }
}

/// `values.p` is 0 for the knot criterion, which has no `p`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hypothesis {constraint} violated at {}", self.shown())]
pub struct DomainError {
    pub constraint: &'static str,
    pub values: DimTriple,
}

impl DomainError {
    fn shown(&self) -> String {
        match self.constraint {
            hypothesis::KNOT_CODIM => format!("(q={}, m={})", self.values.q, self.values.m),
            _ => self.values.to_string(),
        }
    }
}

/// Finite or infinite, without explanation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Finiteness {
    Finite,
    Infinite,
}

impl Finiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Finiteness::Finite => "finite",
            Finiteness::Infinite => "infinite",
        }
    }
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a criterion answered "infinite".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Explanation {
    /// Identifier of the condition that fired, e.g. `4 | p+q+1`.
    pub condition: String,
    /// FCS point on the relevant line, when the lattice condition fired.
    pub witness: Option<LatticePoint>,
}

impl Explanation {
    fn condition(condition: &str) -> Self {
        Explanation {
            condition: condition.to_owned(),
            witness: None,
        }
    }

    fn witness(condition: &str, point: LatticePoint) -> Self {
        Explanation {
            condition: condition.to_owned(),
            witness: Some(point),
        }
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.condition)?;
        if let Some(w) = self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FinitenessVerdict {
    Finite,
    Infinite(Explanation),
}

impl FinitenessVerdict {
    pub fn finiteness(&self) -> Finiteness {
        match self {
            FinitenessVerdict::Finite => Finiteness::Finite,
            FinitenessVerdict::Infinite(_) => Finiteness::Infinite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, FinitenessVerdict::Infinite(_))
    }

    pub fn explanation(&self) -> Option<&Explanation> {
        match self {
            FinitenessVerdict::Finite => None,
            FinitenessVerdict::Infinite(e) => Some(e),
        }
    }

    pub fn witness(&self) -> Option<LatticePoint> {
        self.explanation().and_then(|e| e.witness)
    }
}

impl fmt::Display for FinitenessVerdict {
    /// `finite` / `infinite`; the alternate form (`{:#}`) appends the explanation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessVerdict::Finite => f.write_str("finite"),
            FinitenessVerdict::Infinite(e) if f.alternate() => write!(f, "infinite: {e}"),
            FinitenessVerdict::Infinite(_) => f.write_str("infinite"),
        }
    }
}

/// Result of the connected-sum inference, which is only a sufficient condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectedSumVerdict {
    Infinite(Explanation),
    Unknown,
}

impl fmt::Display for ConnectedSumVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectedSumVerdict::Infinite(e) if f.alternate() => write!(f, "infinite: {e}"),
            ConnectedSumVerdict::Infinite(_) => f.write_str("infinite"),
            ConnectedSumVerdict::Unknown => f.write_str("unknown"),
        }
    }
}

pub mod condition {
    pub const KNOT: &str = "m < 3q/2+2 and 4 | q+1";
    pub const FRAMED_RANGE: &str = "4 | q+1 and m < p+3q/2+1";
    pub const FRAMED_ODD: &str = "2 | q+1 and m = 2q+1";
    pub const FRAMED_EVEN: &str = "2 | q and m = p+2q";
    pub const FCS_LINE: &str = "FCS line point";
    pub const LINK_UNKNOTTED: &str = "E_U link part infinite";
    pub const LINK_KNOT: &str = "first component knot infinite";
    pub const TORI_Q: &str = "4 | q+1";
    pub const TORI_PQ: &str = "4 | p+q+1";
    pub const VIA_LINK: &str = "linku(p+q,q,m)";
    pub const VIA_KNOT: &str = "knot(p+q,m)";
    pub const VIA_FRAMED: &str = "framed(p,q,m)";
    pub const CONSUM_FIRST: &str = "first summand infinite";
    pub const CONSUM_SECOND: &str = "second summand infinite";
}

pub mod hypothesis {
    pub const KNOT_CODIM: &str = "m > q+2";
    pub const FRAMED_P: &str = "1 <= p <= m-q";
    pub const LINK_POSITIVE: &str = "p, q >= 1";
    pub const LINK_CODIM: &str = "p, q < m-2";
    pub const TORI_P: &str = "p >= 1";
    pub const TORI_LOWER: &str = "m > 2p+q+2";
    pub const TORI_UPPER: &str = "m < p+3q/2+2";
    pub const CONSUM_ORDER: &str = "q1 >= p1 >= p2";
    pub const CONSUM_LOWER: &str = "m > 2p1+q1+2";
    pub const CONSUM_SUM: &str = "p2+q2 = p1+q1";
}

/// Additive constants of the dimension inequalities (after doubling).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Thresholds {
    /// `2m < 3q + knot_upper`.
    pub knot_upper: i64,
    /// `2m < 2p + 3q + framed_upper`.
    pub framed_upper: i64,
    /// `m > 2p + q + tori_lower`.
    pub tori_lower: i64,
    /// `2m < 2p + 3q + tori_upper`.
    pub tori_upper: i64,
}

impl Thresholds {
    pub const STANDARD: Thresholds = Thresholds {
        knot_upper: 4,
        framed_upper: 2,
        tori_lower: 2,
        tori_upper: 4,
    };
}

impl Default for Thresholds {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// The criteria evaluated against given FCS tables and thresholds.
///
/// The link and knotted-tori criteria each hold their own copy of the
/// table, so a transcription error in one shows up as a disagreement
/// between [`Criteria::knotted_tori_infinite`] and
/// [`Criteria::knotted_tori_infinite_via_components`].
/// [`Criteria::standard`] is what the free functions of this module use.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Criteria {
    pub link_table: FcsTable,
    pub tori_table: FcsTable,
    pub thresholds: Thresholds,
}

fn err(constraint: &'static str, p: u32, q: u32, m: u32) -> DomainError {
    DomainError {
        constraint,
        values: DimTriple::new(p, q, m),
    }
}

fn divides(d: i64, n: i64) -> bool {
    n.rem_euclid(d) == 0
}

impl Criteria {
    pub const fn standard() -> Self {
        Criteria {
            link_table: FcsTable::standard(),
            tori_table: FcsTable::standard(),
            thresholds: Thresholds::STANDARD,
        }
    }

    /// Both criteria read `table`.
    pub fn new(table: FcsTable, thresholds: Thresholds) -> Self {
        Criteria {
            link_table: table.clone(),
            tori_table: table,
            thresholds,
        }
    }

    pub fn with_tori_table(self, tori_table: FcsTable) -> Self {
        Criteria { tori_table, ..self }
    }

    /// Knots `S^q → S^m`.
    pub fn knot_infinite(&self, q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
        let (qi, mi) = (i64::from(q), i64::from(m));
        if mi <= qi + 2 {
            return Err(err(hypothesis::KNOT_CODIM, 0, q, m));
        }
        if 2 * mi < 3 * qi + self.thresholds.knot_upper && divides(4, qi + 1) {
            Ok(FinitenessVerdict::Infinite(Explanation::condition(
                condition::KNOT,
            )))
        } else {
            Ok(FinitenessVerdict::Finite)
        }
    }

    /// Framed knots `D^p × S^q → S^m`.
    pub fn framed_knot_infinite(
        &self,
        p: u32,
        q: u32,
        m: u32,
    ) -> Result<FinitenessVerdict, DomainError> {
        let (pi, qi, mi) = (i64::from(p), i64::from(q), i64::from(m));
        if mi <= qi + 2 {
            return Err(err(hypothesis::KNOT_CODIM, p, q, m));
        }
        if pi < 1 || pi > mi - qi {
            return Err(err(hypothesis::FRAMED_P, p, q, m));
        }
        let fired = if divides(4, qi + 1) && 2 * mi < 2 * pi + 3 * qi + self.thresholds.framed_upper
        {
            Some(condition::FRAMED_RANGE)
        } else if divides(2, qi + 1) && mi == 2 * qi + 1 {
            Some(condition::FRAMED_ODD)
        } else if divides(2, qi) && mi == pi + 2 * qi {
            Some(condition::FRAMED_EVEN)
        } else {
            None
        };
        Ok(match fired {
            Some(c) => FinitenessVerdict::Infinite(Explanation::condition(c)),
            None => FinitenessVerdict::Finite,
        })
    }

    /// Links `S^p ⊔ S^q → S^m` with unknotted components.
    pub fn link_unknotted_infinite(
        &self,
        p: u32,
        q: u32,
        m: u32,
    ) -> Result<FinitenessVerdict, DomainError> {
        let (pi, qi, mi) = (i64::from(p), i64::from(q), i64::from(m));
        if p < 1 || q < 1 {
            return Err(err(hypothesis::LINK_POSITIVE, p, q, m));
        }
        if pi >= mi - 2 || qi >= mi - 2 {
            return Err(err(hypothesis::LINK_CODIM, p, q, m));
        }
        let eq = LineEquation::new(mi - pi - 2, mi - qi - 2, mi - 3)
            .expect("codimension hypothesis makes both coefficients positive");
        Ok(match self.link_table.line_witness(mi - pi, mi - qi, &eq) {
            Some(w) => FinitenessVerdict::Infinite(Explanation::witness(condition::FCS_LINE, w)),
            None => FinitenessVerdict::Finite,
        })
    }

    /// Links `S^n ⊔ S^q → S^m` whose second component is unknotted.
    ///
    /// Splits as the unknotted-link group plus the knot group of the first
    /// component.
    pub fn link_zero_infinite(
        &self,
        n: u32,
        q: u32,
        m: u32,
    ) -> Result<FinitenessVerdict, DomainError> {
        let link = self.link_unknotted_infinite(n, q, m)?;
        let knot = self.knot_infinite(n, m).map_err(|e| DomainError {
            values: DimTriple::new(n, q, m),
            ..e
        })?;
        Ok(match (link, knot) {
            (FinitenessVerdict::Infinite(e), _) => FinitenessVerdict::Infinite(Explanation {
                condition: condition::LINK_UNKNOTTED.to_owned(),
                witness: e.witness,
            }),
            (_, FinitenessVerdict::Infinite(_)) => {
                FinitenessVerdict::Infinite(Explanation::condition(condition::LINK_KNOT))
            }
            _ => FinitenessVerdict::Finite,
        })
    }

    /// Hypotheses of the knotted-tori criterion, in the order they are reported.
    pub fn check_tori_domain(&self, p: u32, q: u32, m: u32) -> Result<(), DomainError> {
        let (pi, qi, mi) = (i64::from(p), i64::from(q), i64::from(m));
        if p < 1 {
            return Err(err(hypothesis::TORI_P, p, q, m));
        }
        if mi <= 2 * pi + qi + self.thresholds.tori_lower {
            return Err(err(hypothesis::TORI_LOWER, p, q, m));
        }
        if 2 * mi >= 2 * pi + 3 * qi + self.thresholds.tori_upper {
            return Err(err(hypothesis::TORI_UPPER, p, q, m));
        }
        Ok(())
    }

    pub fn in_tori_domain(&self, p: u32, q: u32, m: u32) -> bool {
        self.check_tori_domain(p, q, m).is_ok()
    }

    /// Knotted tori `S^p × S^q → S^m` below the metastable range.
    pub fn knotted_tori_infinite(
        &self,
        p: u32,
        q: u32,
        m: u32,
    ) -> Result<FinitenessVerdict, DomainError> {
        self.check_tori_domain(p, q, m)?;
        let (pi, qi, mi) = (i64::from(p), i64::from(q), i64::from(m));
        if divides(4, qi + 1) {
            return Ok(FinitenessVerdict::Infinite(Explanation::condition(
                condition::TORI_Q,
            )));
        }
        if divides(4, pi + qi + 1) {
            return Ok(FinitenessVerdict::Infinite(Explanation::condition(
                condition::TORI_PQ,
            )));
        }
        // Only reachable with weakened thresholds.
        let eq = LineEquation::new(mi - pi - qi - 2, mi - qi - 2, mi - 3)
            .map_err(|_| err(hypothesis::TORI_LOWER, p, q, m))?;
        Ok(
            match self.tori_table.line_witness(mi - pi - qi, mi - qi, &eq) {
                Some(w) => {
                    FinitenessVerdict::Infinite(Explanation::witness(condition::FCS_LINE, w))
                }
                None => FinitenessVerdict::Finite,
            },
        )
    }

    /// The same question answered through the constituent groups: the knot
    /// `S^{p+q}`, the framed knot `D^p × S^q` and the unknotted link
    /// `S^{p+q} ⊔ S^q`, reported in that order.
    pub fn knotted_tori_infinite_via_components(
        &self,
        p: u32,
        q: u32,
        m: u32,
    ) -> Result<FinitenessVerdict, DomainError> {
        self.check_tori_domain(p, q, m)?;
        if self.knot_infinite(p + q, m)?.is_infinite() {
            return Ok(FinitenessVerdict::Infinite(Explanation::condition(
                condition::VIA_KNOT,
            )));
        }
        if self.framed_knot_infinite(p, q, m)?.is_infinite() {
            return Ok(FinitenessVerdict::Infinite(Explanation::condition(
                condition::VIA_FRAMED,
            )));
        }
        if let FinitenessVerdict::Infinite(e) = self.link_unknotted_infinite(p + q, q, m)? {
            return Ok(FinitenessVerdict::Infinite(Explanation {
                condition: condition::VIA_LINK.to_owned(),
                witness: e.witness,
            }));
        }
        Ok(FinitenessVerdict::Finite)
    }

    /// Sufficient condition for infiniteness of knotted connected sums
    /// `S^{p1}×S^{q1} # S^{p2}×S^{q2} → S^m`.
    pub fn connected_sum_infinite(
        &self,
        p1: u32,
        q1: u32,
        p2: u32,
        q2: u32,
        m: u32,
    ) -> Result<ConnectedSumVerdict, DomainError> {
        if !(q1 >= p1 && p1 >= p2) {
            return Err(err(hypothesis::CONSUM_ORDER, p1, q1, m));
        }
        if i64::from(m) <= 2 * i64::from(p1) + i64::from(q1) + self.thresholds.tori_lower {
            return Err(err(hypothesis::CONSUM_LOWER, p1, q1, m));
        }
        if u64::from(p2) + u64::from(q2) != u64::from(p1) + u64::from(q1) {
            return Err(err(hypothesis::CONSUM_SUM, p2, q2, m));
        }
        for ((p, q), label) in [
            ((p1, q1), condition::CONSUM_FIRST),
            ((p2, q2), condition::CONSUM_SECOND),
        ] {
            if let Ok(FinitenessVerdict::Infinite(e)) = self.knotted_tori_infinite(p, q, m) {
                return Ok(ConnectedSumVerdict::Infinite(Explanation {
                    condition: format!("{label}: {}", e.condition),
                    witness: e.witness,
                }));
            }
        }
        Ok(ConnectedSumVerdict::Unknown)
    }

    /// Whether the framed-knot condition `2 | q+1 and m = 2q+1` holds. Inside the
    /// knotted-tori domain this never happens.
    pub fn framed_middle_condition(&self, q: u32, m: u32) -> bool {
        q % 2 == 1 && u64::from(m) == 2 * u64::from(q) + 1
    }
}

pub fn knot_infinite(q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().knot_infinite(q, m)
}

pub fn framed_knot_infinite(p: u32, q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().framed_knot_infinite(p, q, m)
}

pub fn link_unknotted_infinite(p: u32, q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().link_unknotted_infinite(p, q, m)
}

pub fn link_zero_infinite(n: u32, q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().link_zero_infinite(n, q, m)
}

pub fn knotted_tori_infinite(p: u32, q: u32, m: u32) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().knotted_tori_infinite(p, q, m)
}

pub fn knotted_tori_infinite_via_components(
    p: u32,
    q: u32,
    m: u32,
) -> Result<FinitenessVerdict, DomainError> {
    Criteria::standard().knotted_tori_infinite_via_components(p, q, m)
}

pub fn connected_sum_infinite(
    p1: u32,
    q1: u32,
    p2: u32,
    q2: u32,
    m: u32,
) -> Result<ConnectedSumVerdict, DomainError> {
    Criteria::standard().connected_sum_infinite(p1, q1, p2, q2, m)
}

//! Finiteness-checking lattice sets `FCS(i, j)`.
//!
//! `FCS(i, j)` is a set of positive lattice points depending only on the
//! parities of `i` and `j`. Three parity columns are given explicitly as
//! lists of clauses; a point is a member when it satisfies at least one
//! clause of its column. The fourth column (`i` even, `j` odd) is the mirror
//! image of the odd/even column in the diagonal `x = y`.
//!
//! The clause lists live in [`EVEN_EVEN`], [`ODD_EVEN`] and [`ODD_ODD`] and
//! are the only place the table is written down. [`FcsTable`] wraps them so
//! that tests can evaluate deliberately corrupted copies.

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FcsError {
    #[error("window bounds must be at least 1 (got x_max = {x_max}, y_max = {y_max})")]
    EmptyWindow { x_max: i64, y_max: i64 },
    #[error("line coefficients must be at least 1 (got a = {a}, b = {b})")]
    NonPositiveCoefficient { a: i64, b: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// The parity pair selecting one of the four definitions of `FCS(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FcsDescriptor {
    pub i: Parity,
    pub j: Parity,
}

impl FcsDescriptor {
    pub const ALL: [FcsDescriptor; 4] = [
        FcsDescriptor {
            i: Parity::Even,
            j: Parity::Even,
        },
        FcsDescriptor {
            i: Parity::Odd,
            j: Parity::Even,
        },
        FcsDescriptor {
            i: Parity::Odd,
            j: Parity::Odd,
        },
        FcsDescriptor {
            i: Parity::Even,
            j: Parity::Odd,
        },
    ];

    pub fn of(i: i64, j: i64) -> Self {
        FcsDescriptor {
            i: Parity::of(i),
            j: Parity::of(j),
        }
    }

    /// The explicit column used for this descriptor, and whether the point
    /// has to be mirrored in `x = y` before looking it up.
    pub fn column(self) -> (Column, bool) {
        match (self.i, self.j) {
            (Parity::Even, Parity::Even) => (Column::EvenEven, false),
            (Parity::Odd, Parity::Even) => (Column::OddEven, false),
            (Parity::Odd, Parity::Odd) => (Column::OddOdd, false),
            (Parity::Even, Parity::Odd) => (Column::OddEven, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub const fn reflected(self) -> Self {
        LatticePoint {
            x: self.y,
            y: self.x,
        }
    }

    pub const fn is_positive(self) -> bool {
        self.x >= 1 && self.y >= 1
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

/// The line `a·x + b·y = c` with `a, b ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineEquation {
    a: i64,
    b: i64,
    c: i64,
}

impl LineEquation {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, FcsError> {
        if a < 1 || b < 1 {
            return Err(FcsError::NonPositiveCoefficient { a, b });
        }
        Ok(LineEquation { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn holds_at(&self, p: LatticePoint) -> bool {
        self.a * p.x + self.b * p.y == self.c
    }
}

impl fmt::Display for LineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x+{}y={}", self.a, self.b, self.c)
    }
}

/// A constraint on one coordinate of a lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordRule {
    Equals(i64),
    AtLeast(i64),
    /// `value ≡ residue (mod modulus)`.
    Residue {
        modulus: i64,
        residue: i64,
    },
}

impl CoordRule {
    pub fn matches(self, value: i64) -> bool {
        match self {
            CoordRule::Equals(v) => value == v,
            CoordRule::AtLeast(v) => value >= v,
            CoordRule::Residue { modulus, residue } => value.rem_euclid(modulus) == residue,
        }
    }
}

/// One line of a column of the table: both coordinate rules must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause {
    pub x: CoordRule,
    pub y: CoordRule,
    /// The clause as written in the table, e.g. `4|x+3 and y=2`.
    pub text: &'static str,
}

impl Clause {
    pub fn matches(&self, p: LatticePoint) -> bool {
        self.x.matches(p.x) && self.y.matches(p.y)
    }
}

use CoordRule::{AtLeast, Equals, Residue};

const fn clause(x: CoordRule, y: CoordRule, text: &'static str) -> Clause {
    Clause { x, y, text }
}

// Divisibility conditions are stored as residue classes:
// 2|y  <=> y = 0 mod 2,   2|y+1 <=> y = 1 mod 2,
// 4|x+1 <=> x = 3 mod 4,  4|x+2 <=> x = 2 mod 4,  4|x+3 <=> x = 1 mod 4.

/// Column for `i`, `j` both even.
pub const EVEN_EVEN: &[Clause] = &[
    clause(Equals(1), Equals(1), "x=1 and y=1"),
    clause(
        Equals(2),
        Residue {
            modulus: 2,
            residue: 0,
        },
        "x=2 and 2|y",
    ),
    clause(Equals(3), Equals(3), "x=3 and y=3"),
    clause(Equals(3), AtLeast(5), "x=3 and y>=5"),
    clause(AtLeast(4), AtLeast(4), "x>=4 and y>=4"),
    clause(
        Residue {
            modulus: 2,
            residue: 0,
        },
        Equals(2),
        "2|x and y=2",
    ),
    clause(AtLeast(5), Equals(3), "x>=5 and y=3"),
];

/// Column for `i` odd, `j` even.
pub const ODD_EVEN: &[Clause] = &[
    clause(Equals(1), Equals(1), "x=1 and y=1"),
    clause(
        Equals(2),
        Residue {
            modulus: 2,
            residue: 1,
        },
        "x=2 and 2|y+1",
    ),
    clause(Equals(3), AtLeast(2), "x=3 and y>=2"),
    clause(AtLeast(4), AtLeast(4), "x>=4 and y>=4"),
    clause(
        Residue {
            modulus: 4,
            residue: 0,
        },
        Equals(2),
        "4|x and y=2",
    ),
    clause(
        Residue {
            modulus: 4,
            residue: 3,
        },
        Equals(2),
        "4|x+1 and y=2",
    ),
    clause(AtLeast(5), Equals(3), "x>=5 and y=3"),
];

/// Column for `i`, `j` both odd.
pub const ODD_ODD: &[Clause] = &[
    clause(Equals(1), Equals(1), "x=1 and y=1"),
    clause(
        Equals(2),
        Residue {
            modulus: 4,
            residue: 2,
        },
        "x=2 and 4|y+2",
    ),
    clause(
        Equals(2),
        Residue {
            modulus: 4,
            residue: 1,
        },
        "x=2 and 4|y+3",
    ),
    clause(AtLeast(3), AtLeast(3), "x>=3 and y>=3"),
    clause(
        Residue {
            modulus: 4,
            residue: 2,
        },
        Equals(2),
        "4|x+2 and y=2",
    ),
    clause(
        Residue {
            modulus: 4,
            residue: 1,
        },
        Equals(2),
        "4|x+3 and y=2",
    ),
];

/// One of the three explicitly listed columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    EvenEven,
    OddEven,
    OddOdd,
}

impl Column {
    pub const ALL: [Column; 3] = [Column::EvenEven, Column::OddEven, Column::OddOdd];
}

/// The clause that admitted a point, and whether the point was mirrored
/// (`i` even, `j` odd) before matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub clause: Clause,
    pub reflected: bool,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflected {
            write!(f, "{} (reflected in x=y)", self.clause.text)
        } else {
            f.write_str(self.clause.text)
        }
    }
}

/// A complete set of clause lists. [`FcsTable::standard`] is the table every
/// public entry point uses; edited copies exist for mutation testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcsTable {
    even_even: Cow<'static, [Clause]>,
    odd_even: Cow<'static, [Clause]>,
    odd_odd: Cow<'static, [Clause]>,
}

impl Default for FcsTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl FcsTable {
    pub const fn standard() -> Self {
        FcsTable {
            even_even: Cow::Borrowed(EVEN_EVEN),
            odd_even: Cow::Borrowed(ODD_EVEN),
            odd_odd: Cow::Borrowed(ODD_ODD),
        }
    }

    pub fn clauses(&self, column: Column) -> &[Clause] {
        match column {
            Column::EvenEven => &self.even_even,
            Column::OddEven => &self.odd_even,
            Column::OddOdd => &self.odd_odd,
        }
    }

    fn clauses_mut(&mut self, column: Column) -> &mut Vec<Clause> {
        match column {
            Column::EvenEven => self.even_even.to_mut(),
            Column::OddEven => self.odd_even.to_mut(),
            Column::OddOdd => self.odd_odd.to_mut(),
        }
    }

    /// A copy of the table with one clause replaced.
    ///
    /// Panics if `index` is out of range for the column.
    pub fn with_clause(mut self, column: Column, index: usize, replacement: Clause) -> Self {
        self.clauses_mut(column)[index] = replacement;
        self
    }

    /// A copy of the table with one clause deleted.
    ///
    /// Panics if `index` is out of range for the column.
    pub fn without_clause(mut self, column: Column, index: usize) -> Self {
        self.clauses_mut(column).remove(index);
        self
    }

    /// The first clause admitting `p` into `FCS(i, j)`, if any.
    pub fn membership(&self, i: i64, j: i64, p: LatticePoint) -> Option<Membership> {
        if !p.is_positive() {
            return None;
        }
        let (column, reflected) = FcsDescriptor::of(i, j).column();
        let probe = if reflected { p.reflected() } else { p };
        self.clauses(column)
            .iter()
            .find(|c| c.matches(probe))
            .map(|&clause| Membership { clause, reflected })
    }

    pub fn contains(&self, i: i64, j: i64, p: LatticePoint) -> bool {
        self.membership(i, j, p).is_some()
    }

    pub fn window(
        &self,
        i: i64,
        j: i64,
        x_max: i64,
        y_max: i64,
    ) -> Result<Vec<LatticePoint>, FcsError> {
        if x_max < 1 || y_max < 1 {
            return Err(FcsError::EmptyWindow { x_max, y_max });
        }
        Ok((1..=x_max)
            .flat_map(|x| (1..=y_max).map(move |y| LatticePoint::new(x, y)))
            .filter(|&p| self.contains(i, j, p))
            .collect())
    }

    /// The line solution with smallest `x` lying in `FCS(i, j)`.
    pub fn line_witness(&self, i: i64, j: i64, eq: &LineEquation) -> Option<LatticePoint> {
        line_solutions(eq)
            .into_iter()
            .find(|&p| self.contains(i, j, p))
    }
}

/// Whether `p ∈ FCS(i, j)`. Only the parities of `i` and `j` matter.
pub fn fcs_contains(i: i64, j: i64, p: LatticePoint) -> bool {
    FcsTable::standard().contains(i, j, p)
}

/// Like [`fcs_contains`] but reports the admitting clause.
pub fn fcs_membership(i: i64, j: i64, p: LatticePoint) -> Option<Membership> {
    FcsTable::standard().membership(i, j, p)
}

/// Members of `FCS(i, j)` in `[1, x_max] × [1, y_max]`, ordered by `x` then `y`.
pub fn fcs_window(i: i64, j: i64, x_max: i64, y_max: i64) -> Result<Vec<LatticePoint>, FcsError> {
    FcsTable::standard().window(i, j, x_max, y_max)
}

/// All positive solutions of `a·x + b·y = c`, ascending in `x`.
pub fn line_solutions(eq: &LineEquation) -> Vec<LatticePoint> {
    let (a, b, c) = (eq.a, eq.b, eq.c);
    let mut out = Vec::new();
    let mut x = 1;
    // y >= 1 requires a·x <= c - b.
    while a * x <= c - b {
        let rest = c - a * x;
        if rest % b == 0 {
            out.push(LatticePoint::new(x, rest / b));
        }
        x += 1;
    }
    out
}

/// First solution of `eq` (smallest `x`) that lies in `FCS(i, j)`.
pub fn fcs_line_witness(i: i64, j: i64, eq: &LineEquation) -> Option<LatticePoint> {
    FcsTable::standard().line_witness(i, j, eq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn line(a: i64, b: i64, c: i64) -> LineEquation {
        LineEquation::new(a, b, c).unwrap()
    }

    #[test]
    fn table_fixtures() {
        assert!(fcs_contains(4, 4, pt(1, 1)));
        assert!(fcs_contains(3, 4, pt(2, 3)));
        assert!(fcs_contains(3, 3, pt(1, 2)));
        assert!(!fcs_contains(4, 5, pt(2, 1)));
        for i in -3..7 {
            for j in -3..7 {
                assert!(!fcs_contains(i, j, pt(0, 5)));
                assert!(fcs_contains(i, j, pt(1, 1)));
            }
        }
    }

    #[test]
    fn membership_reports_clause() {
        let m = fcs_membership(3, 3, pt(1, 2)).unwrap();
        assert_eq!(m.clause.text, "4|x+3 and y=2");
        assert!(!m.reflected);

        let m = fcs_membership(4, 3, pt(3, 2)).unwrap();
        assert_eq!(m.clause.text, "x=2 and 2|y+1");
        assert!(m.reflected);
        assert_eq!(m.to_string(), "x=2 and 2|y+1 (reflected in x=y)");
    }

    #[test]
    fn negative_indices_use_parity() {
        assert_eq!(Parity::of(-3), Parity::Odd);
        assert_eq!(Parity::of(-4), Parity::Even);
        assert!(fcs_contains(-1, -1, pt(1, 2)));
    }

    #[test]
    fn window_small() {
        assert_eq!(fcs_window(4, 4, 1, 1).unwrap(), vec![pt(1, 1)]);
        assert_eq!(
            fcs_window(4, 4, 0, 5),
            Err(FcsError::EmptyWindow { x_max: 0, y_max: 5 })
        );
        // (2,2) is admitted by "x=2 and 4|y+2" (and "4|x+2 and y=2").
        assert_eq!(
            fcs_window(3, 3, 3, 3).unwrap(),
            vec![pt(1, 1), pt(1, 2), pt(2, 1), pt(2, 2), pt(3, 3)]
        );
    }

    #[test]
    fn line_solution_examples() {
        assert_eq!(line_solutions(&line(2, 3, 7)), vec![pt(2, 1)]);
        assert_eq!(line_solutions(&line(1, 1, 3)), vec![pt(1, 2), pt(2, 1)]);
        assert!(line_solutions(&line(1, 1, 1)).is_empty());
        assert!(line_solutions(&line(3, 2, -10)).is_empty());
        assert!(LineEquation::new(0, 1, 3).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(fcs_line_witness(3, 3, &line(1, 1, 3)), Some(pt(1, 2)));
        assert_eq!(fcs_line_witness(4, 5, &line(2, 3, 7)), None);
        assert_eq!(fcs_line_witness(4, 4, &line(5, 5, 3)), None);
    }

    #[test]
    fn explicit_columns_are_symmetric() {
        let table = FcsTable::standard();
        for column in [Column::EvenEven, Column::OddOdd] {
            for x in 1..=40 {
                for y in 1..=40 {
                    let hit = |p| table.clauses(column).iter().any(|c| c.matches(p));
                    assert_eq!(hit(pt(x, y)), hit(pt(y, x)), "{column:?} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn mutated_table_differs() {
        let mutated = FcsTable::standard().without_clause(Column::OddOdd, 5);
        assert!(!mutated.contains(3, 3, pt(1, 2)));
        assert!(fcs_contains(3, 3, pt(1, 2)));
    }
}

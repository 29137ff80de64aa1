//! Deliberately corrupted criteria, used to confirm that
//! [`consistency_report_with`](super::consistency_report_with) notices
//! transcription errors.

use std::fmt;

use crate::criteria::{Criteria, Thresholds};
use crate::fcs::{Clause, Column, CoordRule, FcsTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    /// Delete one clause of an explicit column.
    DropClause { column: Column, index: usize },
    /// Replace one clause.
    ReplaceClause {
        column: Column,
        index: usize,
        clause: Clause,
    },
    /// Replace the inequality constants.
    Thresholds(Thresholds),
}

impl Mutation {
    /// Clause edits land in the knotted-tori copy of the table only, leaving
    /// the link criterion as the reference.
    pub fn apply(&self) -> Criteria {
        let table = FcsTable::standard();
        let standard = Criteria::standard();
        match self {
            Mutation::DropClause { column, index } => {
                standard.with_tori_table(table.without_clause(*column, *index))
            }
            Mutation::ReplaceClause {
                column,
                index,
                clause,
            } => standard.with_tori_table(table.with_clause(*column, *index, *clause)),
            Mutation::Thresholds(t) => Criteria::new(table, *t),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = |column: Column, index: usize| FcsTable::standard().clauses(column)[index].text;
        match self {
            Mutation::DropClause { column, index } => {
                write!(f, "drop {:?} clause \"{}\"", column, text(*column, *index))
            }
            Mutation::ReplaceClause {
                column,
                index,
                clause,
            } => write!(
                f,
                "replace {:?} clause \"{}\" by \"{}\"",
                column,
                text(*column, *index),
                clause.text
            ),
            Mutation::Thresholds(t) => {
                let s = Thresholds::STANDARD;
                let mut parts = Vec::new();
                if t.knot_upper != s.knot_upper {
                    parts.push(format!("knot bound 3q+{}", t.knot_upper));
                }
                if t.framed_upper != s.framed_upper {
                    parts.push(format!("framed bound 2p+3q+{}", t.framed_upper));
                }
                if t.tori_lower != s.tori_lower {
                    parts.push(format!("tori lower bound 2p+q+{}", t.tori_lower));
                }
                if t.tori_upper != s.tori_upper {
                    parts.push(format!("tori upper bound 2p+3q+{}", t.tori_upper));
                }
                write!(f, "thresholds: {}", parts.join(", "))
            }
        }
    }
}

/// The fixed mutation set: five single-clause edits of the table and three
/// off-by-one shifts of the dimension inequalities (each shift moves the
/// undoubled bound on `m` by one).
pub fn seeded_mutations() -> Vec<Mutation> {
    use CoordRule::{Equals, Residue};
    let s = Thresholds::STANDARD;
    vec![
        // "x=2 and 2|y" becomes "x=2 and 2|y+1"
        Mutation::ReplaceClause {
            column: Column::EvenEven,
            index: 1,
            clause: Clause {
                x: Equals(2),
                y: Residue {
                    modulus: 2,
                    residue: 1,
                },
                text: "x=2 and 2|y+1",
            },
        },
        // "x=3 and y>=2"
        Mutation::DropClause {
            column: Column::OddEven,
            index: 2,
        },
        // "x>=4 and y>=4"
        Mutation::DropClause {
            column: Column::OddEven,
            index: 3,
        },
        // "x>=3 and y>=3"
        Mutation::DropClause {
            column: Column::OddOdd,
            index: 3,
        },
        // "4|x+3 and y=2" becomes "4|x+3 and y=3"
        Mutation::ReplaceClause {
            column: Column::OddOdd,
            index: 5,
            clause: Clause {
                x: Residue {
                    modulus: 4,
                    residue: 1,
                },
                y: Equals(3),
                text: "4|x+3 and y=3",
            },
        },
        Mutation::Thresholds(Thresholds {
            framed_upper: s.framed_upper - 2,
            ..s
        }),
        Mutation::Thresholds(Thresholds {
            tori_lower: s.tori_lower - 1,
            ..s
        }),
        Mutation::Thresholds(Thresholds {
            tori_upper: s.tori_upper + 2,
            ..s
        }),
    ]
}

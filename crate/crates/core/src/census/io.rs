//! CSV and JSON encodings of census records.
//!
//! Both formats use the columns
//! `p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition`.
//! An unbounded `rank_hi` is written as `inf`; absent witness and condition
//! fields are empty in CSV and `null` in JSON.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{CensusRecord, ComponentVerdicts};
use crate::criteria::{DimTriple, Explanation, Finiteness, FinitenessVerdict};
use crate::fcs::LatticePoint;
use crate::rank::RankInterval;

pub const CSV_HEADER: &str =
    "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition";

#[derive(Debug, Error)]
pub enum CensusIoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("row {row}: {message}")]
    Invalid { row: usize, message: String },
}

/// Upper rank bound: a number, or `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBound(pub Option<u64>);

impl Serialize for RankBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RankBound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct BoundVisitor;

        impl Visitor<'_> for BoundVisitor {
            type Value = RankBound;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RankBound, E> {
                Ok(RankBound(Some(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RankBound, E> {
                u64::try_from(v)
                    .map(|v| RankBound(Some(v)))
                    .map_err(|_| E::invalid_value(de::Unexpected::Signed(v), &self))
            }

            // csv infers "inf" as a float before offering it as a string.
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RankBound, E> {
                if v == f64::INFINITY {
                    Ok(RankBound(None))
                } else if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
                    Ok(RankBound(Some(v as u64)))
                } else {
                    Err(E::invalid_value(de::Unexpected::Float(v), &self))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RankBound, E> {
                match v {
                    "inf" => Ok(RankBound(None)),
                    other => other
                        .parse()
                        .map(|n| RankBound(Some(n)))
                        .map_err(|_| E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(BoundVisitor)
    }
}

/// Flat form of a [`CensusRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub p: u32,
    pub q: u32,
    pub m: u32,
    pub tori: Finiteness,
    pub knot_pq: Finiteness,
    pub knot_q: Finiteness,
    pub framed: Finiteness,
    pub linku: Finiteness,
    pub rank_lo: u64,
    pub rank_hi: RankBound,
    pub witness_x: Option<i64>,
    pub witness_y: Option<i64>,
    pub condition: Option<String>,
}

impl From<&CensusRecord> for CensusRow {
    fn from(r: &CensusRecord) -> Self {
        let witness = r.witness();
        CensusRow {
            p: r.triple.p,
            q: r.triple.q,
            m: r.triple.m,
            tori: r.tori.finiteness(),
            knot_pq: r.components.knot_pq,
            knot_q: r.components.knot_q,
            framed: r.components.framed,
            linku: r.components.linku,
            rank_lo: r.rank.lo(),
            rank_hi: RankBound(r.rank.hi()),
            witness_x: witness.map(|w| w.x),
            witness_y: witness.map(|w| w.y),
            condition: r.tori.explanation().map(|e| e.condition.clone()),
        }
    }
}

impl CensusRow {
    pub fn into_record(self, row: usize) -> Result<CensusRecord, CensusIoError> {
        let invalid = |message: &str| CensusIoError::Invalid {
            row,
            message: message.to_owned(),
        };
        let rank = RankInterval::new(self.rank_lo, self.rank_hi.0)
            .ok_or_else(|| invalid("rank_lo exceeds rank_hi"))?;
        let witness = match (self.witness_x, self.witness_y) {
            (Some(x), Some(y)) => Some(LatticePoint::new(x, y)),
            (None, None) => None,
            _ => return Err(invalid("witness needs both coordinates")),
        };
        let tori = match (self.tori, self.condition) {
            (Finiteness::Infinite, Some(condition)) => {
                FinitenessVerdict::Infinite(Explanation { condition, witness })
            }
            (Finiteness::Finite, None) if witness.is_none() => FinitenessVerdict::Finite,
            (Finiteness::Infinite, None) => return Err(invalid("infinite row without condition")),
            _ => return Err(invalid("finite row carries an explanation")),
        };
        Ok(CensusRecord {
            triple: DimTriple::new(self.p, self.q, self.m),
            tori,
            components: ComponentVerdicts {
                knot_pq: self.knot_pq,
                knot_q: self.knot_q,
                framed: self.framed,
                linku: self.linku,
            },
            rank,
        })
    }
}

pub fn to_csv(records: &[CensusRecord]) -> Result<String, CensusIoError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(CensusRow::from(r))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<CensusRecord>, CensusIoError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize::<CensusRow>()
        .enumerate()
        .map(|(i, row)| row?.into_record(i + 1))
        .collect()
}

pub fn to_json(records: &[CensusRecord]) -> Result<String, CensusIoError> {
    let rows: Vec<CensusRow> = records.iter().map(CensusRow::from).collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

pub fn from_json(text: &str) -> Result<Vec<CensusRecord>, CensusIoError> {
    let rows: Vec<CensusRow> = serde_json::from_str(text)?;
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| r.into_record(i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<CensusRecord> {
        let comps = ComponentVerdicts {
            knot_pq: Finiteness::Finite,
            knot_q: Finiteness::Finite,
            framed: Finiteness::Finite,
            linku: Finiteness::Infinite,
        };
        vec![
            CensusRecord {
                triple: DimTriple::new(1, 5, 10),
                tori: FinitenessVerdict::Finite,
                components: ComponentVerdicts {
                    linku: Finiteness::Finite,
                    ..comps
                },
                rank: RankInterval::ZERO,
            },
            CensusRecord {
                triple: DimTriple::new(2, 9, 16),
                tori: FinitenessVerdict::Infinite(Explanation {
                    condition: "FCS line point".into(),
                    witness: Some(LatticePoint::new(2, 1)),
                }),
                components: comps,
                rank: RankInterval::POSITIVE,
            },
        ]
    }

    #[test]
    fn csv_layout() {
        let text = to_csv(&sample()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "1,5,10,finite,finite,finite,finite,finite,0,0,,,");
        assert_eq!(
            lines[2],
            "2,9,16,infinite,finite,finite,finite,infinite,1,inf,2,1,FCS line point"
        );
    }

    #[test]
    fn empty_outputs() {
        assert_eq!(to_json(&[]).unwrap(), "[]");
        assert_eq!(to_csv(&[]).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(from_csv(&to_csv(&[]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn round_trip() {
        let records = sample();
        assert_eq!(from_csv(&to_csv(&records).unwrap()).unwrap(), records);
        assert_eq!(from_json(&to_json(&records).unwrap()).unwrap(), records);
    }

    #[test]
    fn json_uses_inf_and_null() {
        let text = to_json(&sample()).unwrap();
        assert!(text.contains("\"rank_hi\": \"inf\""));
        assert!(text.contains("\"witness_x\": null"));
    }

    #[test]
    fn rejects_inconsistent_rows() {
        let bad = format!("{CSV_HEADER}\n1,5,10,finite,finite,finite,finite,finite,2,1,,,\n");
        assert!(matches!(
            from_csv(&bad),
            Err(CensusIoError::Invalid { row: 1, .. })
        ));
        let bad = format!("{CSV_HEADER}\n1,5,10,infinite,finite,finite,finite,finite,1,inf,,,\n");
        assert!(from_csv(&bad).is_err());
    }
}

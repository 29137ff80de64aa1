//! Plain-text rank tables.
//!
//! One entry per line, whitespace separated; lines starting with `#` are
//! comments:
//!
//! ```text
//! stiefel <q> <n> <k> <lo> <hi|inf>
//! knot <q> <m> <lo> <hi|inf>
//! linku <p> <q> <m> <lo> <hi|inf>
//! ```
//!
//! A repeated key keeps the last entry and records a warning.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;
use thiserror::Error;

use super::{DefaultProvider, RankInterval, RankProvider};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read rank table {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("rank table line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankTable {
    pub stiefel: BTreeMap<(u32, u32, u32), RankInterval>,
    pub knot: BTreeMap<(u32, u32), RankInterval>,
    pub linku: BTreeMap<(u32, u32, u32), RankInterval>,
    /// Duplicate-key warnings produced while parsing.
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> TableError {
    TableError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_dim(line: usize, s: &str) -> Result<u32, TableError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("invalid dimension {s:?}")))
}

fn parse_interval(line: usize, lo: &str, hi: &str) -> Result<RankInterval, TableError> {
    let lo: u64 = lo
        .parse()
        .map_err(|_| parse_err(line, format!("invalid rank {lo:?}")))?;
    let hi = match hi {
        "inf" => None,
        h => Some(
            h.parse()
                .map_err(|_| parse_err(line, format!("invalid rank {h:?}")))?,
        ),
    };
    RankInterval::new(lo, hi).ok_or_else(|| parse_err(line, "lower bound exceeds upper bound"))
}

impl RankTable {
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut table = RankTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let arity = match fields[0] {
                "stiefel" | "linku" => 6,
                "knot" => 5,
                other => return Err(parse_err(line, format!("unknown entry kind {other:?}"))),
            };
            if fields.len() != arity {
                return Err(parse_err(
                    line,
                    format!(
                        "{} entry needs {} fields, found {}",
                        fields[0],
                        arity,
                        fields.len()
                    ),
                ));
            }
            let dims = fields[1..arity - 2]
                .iter()
                .map(|s| parse_dim(line, s))
                .collect::<Result<Vec<_>, _>>()?;
            let rank = parse_interval(line, fields[arity - 2], fields[arity - 1])?;
            let replaced = match fields[0] {
                "stiefel" => table.stiefel.insert((dims[0], dims[1], dims[2]), rank),
                "linku" => table.linku.insert((dims[0], dims[1], dims[2]), rank),
                _ => table.knot.insert((dims[0], dims[1]), rank),
            };
            if replaced.is_some() {
                let msg = format!(
                    "line {line}: duplicate {} entry overrides earlier value",
                    fields[0]
                );
                warn!("{msg}");
                table.warnings.push(msg);
            }
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.stiefel.len() + self.knot.len() + self.linku.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Table entries where present, otherwise the [`DefaultProvider`].
#[derive(Debug, Clone, Default)]
pub struct TableProvider {
    table: RankTable,
    fallback: DefaultProvider,
}

impl TableProvider {
    pub fn new(table: RankTable, fallback: DefaultProvider) -> Self {
        TableProvider { table, fallback }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        Ok(Self::new(
            RankTable::load(path)?,
            DefaultProvider::default(),
        ))
    }

    pub fn table(&self) -> &RankTable {
        &self.table
    }
}

impl RankProvider for TableProvider {
    fn stiefel_rank(&self, q: u32, n: u32, k: u32) -> Option<RankInterval> {
        self.table
            .stiefel
            .get(&(q, n, k))
            .copied()
            .or_else(|| self.fallback.stiefel_rank(q, n, k))
    }

    fn knot_rank(&self, q: u32, m: u32) -> Option<RankInterval> {
        self.table
            .knot
            .get(&(q, m))
            .copied()
            .or_else(|| self.fallback.knot_rank(q, m))
    }

    fn linku_rank(&self, p: u32, q: u32, m: u32) -> Option<RankInterval> {
        self.table
            .linku
            .get(&(p, q, m))
            .copied()
            .or_else(|| self.fallback.linku_rank(p, q, m))
    }
}

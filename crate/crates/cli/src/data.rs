//! Seed data shipped in three tiers: `published`, `derived-base` and `external`.

use std::path::{Path, PathBuf};

use gwenum_core::wallcross::InvariantTable;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Environment variable overriding the seed-data directory.
pub const DATA_DIR_VAR: &str = "GWENUM_DATA_DIR";

/// Printed presentations of one table, keyed by row.
#[derive(Debug, Clone, Deserialize)]
pub struct PresentationTable {
    pub tier: String,
    pub source: String,
    pub rows: Vec<PresentationRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PresentationRow {
    pub key: Vec<i64>,
    pub presentations: Vec<String>,
}

/// Gromov-Witten and Welschinger counts per row.
#[derive(Debug, Clone, Deserialize)]
pub struct CountTable {
    pub tier: String,
    pub source: String,
    pub rows: Vec<CountRow>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct CountRow {
    pub key: [i64; 2],
    pub gw: i64,
    pub w_plus: i64,
    pub w_minus: i64,
}

#[derive(Debug, Clone, Deserialize)]
struct RawCountTable {
    tier: String,
    source: String,
    rows: Vec<RawCountRow>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawCountRow {
    key: Vec<i64>,
    gw: i64,
    w_plus: i64,
    w_minus: i64,
}

/// The triangle of untwisted binomials and the twisted sequence over F_q.
#[derive(Debug, Clone, Deserialize)]
pub struct PascalData {
    pub diagonals: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TwistedData {
    pub values: Vec<String>,
}

/// A seed-data directory.
#[derive(Debug, Clone)]
pub struct SeedData {
    dir: PathBuf,
}

impl SeedData {
    /// `dir` if given, else `$GWENUM_DATA_DIR`, else the bundled data.
    pub fn locate(dir: Option<&Path>) -> Self {
        let dir = match dir {
            Some(d) => d.to_path_buf(),
            None => std::env::var_os(DATA_DIR_VAR)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))),
        };
        SeedData { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn read(&self, rel: &str) -> CliResult<String> {
        let path = self.dir.join(rel);
        std::fs::read_to_string(&path).map_err(|source| CliError::Io { path, source })
    }

    fn json<T: for<'de> Deserialize<'de>>(&self, rel: &str) -> CliResult<T> {
        let text = self.read(rel)?;
        serde_json::from_str(&text).map_err(|source| CliError::Seed {
            path: self.dir.join(rel),
            source,
        })
    }

    pub fn quadric_presentations(&self) -> CliResult<PresentationTable> {
        self.json("published/quadric.json")
    }

    pub fn blowup_presentations(&self) -> CliResult<PresentationTable> {
        self.json("published/blowup.json")
    }

    pub fn pascal(&self) -> CliResult<PascalData> {
        self.json("published/pascal.json")
    }

    pub fn twisted(&self) -> CliResult<TwistedData> {
        self.json("published/twisted.json")
    }

    fn counts(&self, rel: &str) -> CliResult<CountTable> {
        let raw: RawCountTable = self.json(rel)?;
        let rows = raw
            .rows
            .into_iter()
            .map(|r| {
                let key = match r.key.as_slice() {
                    [a] => [*a, 0],
                    [a, b] => [*a, *b],
                    _ => return Err(CliError::Usage(format!("{rel}: bad row key {:?}", r.key))),
                };
                Ok(CountRow {
                    key,
                    gw: r.gw,
                    w_plus: r.w_plus,
                    w_minus: r.w_minus,
                })
            })
            .collect::<CliResult<_>>()?;
        Ok(CountTable {
            tier: raw.tier,
            source: raw.source,
            rows,
        })
    }

    /// Counts for the quadric rows `a`, stored with key `[a, 0]`.
    pub fn quadric_counts(&self) -> CliResult<CountTable> {
        self.counts("derived-base/quadric_counts.json")
    }

    pub fn blowup_counts(&self) -> CliResult<CountTable> {
        self.counts("derived-base/blowup_counts.json")
    }

    /// An invariant table, looked up first as a path and then inside the data directory.
    pub fn table(&self, name: &str) -> CliResult<InvariantTable> {
        let direct = Path::new(name);
        let path = if direct.exists() {
            direct.to_path_buf()
        } else {
            self.dir.join(name)
        };
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(InvariantTable::from_json(&text)?)
    }

    /// Several tables over the same surface merged in order; later entries win.
    pub fn merged(&self, names: &[String]) -> CliResult<InvariantTable> {
        let (first, rest) = names
            .split_first()
            .ok_or_else(|| CliError::Usage("at least one --db is required".into()))?;
        let mut table = self.table(first)?;
        for name in rest {
            let more = self.table(name)?;
            if more.model() != table.model() || more.field() != table.field() {
                return Err(CliError::Usage(format!("{name} describes a different surface or field")));
            }
            for (c, s, e) in more.entries() {
                table.insert(c.clone(), s.clone(), e.value.clone(), e.source.clone())?;
            }
        }
        Ok(table)
    }

    /// The split Q(1) quadric table: derived data, optionally with the external tier.
    pub fn quadric_split_table(&self, external: bool) -> CliResult<InvariantTable> {
        let mut names = vec!["derived-base/q1_split.json".to_string()];
        if external {
            names.push("external/q1_split.json".to_string());
        }
        self.merged(&names)
    }
}

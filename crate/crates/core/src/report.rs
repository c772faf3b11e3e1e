//! Flat records shared by the CSV and JSON renderings of the CLI, so both
//! formats carry the same fields.

use serde::{Deserialize, Serialize};

use crate::aufbau::configuration_of;
use crate::half::Half;
use crate::navigation::Path;
use crate::quartet::{z_of, Quartet};
use crate::registry::Registry;
use crate::table::{family_of, series_of, subblock_of, Cell};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub z: u64,
    pub n: u32,
    pub l: u32,
    pub j: String,
    pub m: String,
    pub block: String,
    pub family: String,
    pub symbol: Option<String>,
    pub name: Option<String>,
    pub status: String,
    pub label: String,
}

impl CellRecord {
    pub fn new(cell: &Cell, registry: &Registry) -> Self {
        let q = cell.quartet;
        let record = registry.get(cell.z);
        CellRecord {
            z: cell.z,
            n: q.n(),
            l: q.l(),
            j: Half(q.j2() as i64).to_string(),
            m: Half(q.m2() as i64).to_string(),
            block: q.madelung_key().to_string(),
            family: family_of(&q).to_string(),
            label: record.label().to_string(),
            symbol: record.symbol,
            name: record.name,
            status: record.status.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementReport {
    pub z: u64,
    pub quartet: String,
    pub n: u32,
    pub l: u32,
    pub j: String,
    pub m: String,
    pub madelung_key: String,
    pub family: String,
    pub series: Option<String>,
    pub subblock_j: Option<String>,
    pub configuration: String,
    pub symbol: Option<String>,
    pub name: Option<String>,
    pub status: String,
}

impl ElementReport {
    pub fn new(q: &Quartet, registry: &Registry) -> Self {
        let z = z_of(q);
        let record = registry.get(z);
        ElementReport {
            z,
            quartet: q.to_string(),
            n: q.n(),
            l: q.l(),
            j: Half(q.j2() as i64).to_string(),
            m: Half(q.m2() as i64).to_string(),
            madelung_key: q.madelung_key().to_string(),
            family: family_of(q).to_string(),
            series: series_of(q).map(|s| format!("{:?}(n={})", s.kind, s.n)),
            subblock_j: subblock_of(q).map(|s| Half(s.j2 as i64).to_string()),
            configuration: configuration_of(z).expect("z >= 1").to_string(),
            symbol: record.symbol,
            name: record.name,
            status: record.status.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub z: u64,
    pub quartet: String,
    pub algebra: String,
}

pub fn step_records(path: &Path) -> Vec<StepRecord> {
    path.steps
        .iter()
        .map(|s| StepRecord { z: z_of(&s.quartet), quartet: s.quartet.to_string(), algebra: s.algebra.to_string() })
        .collect()
}

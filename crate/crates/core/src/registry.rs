//! Element names, observation status and property datasets keyed by Z.
//!
//! The built-in snapshot records which houses were inhabited and named in
//! 2006: every element up to Z = 110 named, 111 to 116 observed but unnamed,
//! and nothing from 117 on. A different registry can be loaded from a CSV
//! file with header `z,symbol,name,status`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const SNAPSHOT_2006: &str = include_str!("../data/registry_2006.csv");

const REGISTRY_HEADER: [&str; 4] = ["z", "symbol", "name", "status"];
const PROPERTY_HEADER: [&str; 2] = ["z", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    NamedObserved,
    ObservedUnnamed,
    Unobserved,
}

impl Status {
    /// Keyword used in registry files.
    pub fn keyword(&self) -> &'static str {
        match self {
            Status::NamedObserved => "named",
            Status::ObservedUnnamed => "unnamed",
            Status::Unobserved => "unobserved",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "named" => Ok(Status::NamedObserved),
            "unnamed" => Ok(Status::ObservedUnnamed),
            "unobserved" => Ok(Status::Unobserved),
            other => Err(Error::Domain(format!(
                "unknown status {other:?} (expected named, unnamed or unobserved)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub z: u64,
    pub symbol: Option<String>,
    pub name: Option<String>,
    pub status: Status,
}

impl ElementRecord {
    pub fn unobserved(z: u64) -> Self {
        ElementRecord { z, symbol: None, name: None, status: Status::Unobserved }
    }

    /// Cell label in the style of the inhabitants chart: the symbol when
    /// named, `X?` when observed without a name, `no` when not observed.
    pub fn label(&self) -> &str {
        match (self.status, &self.symbol) {
            (Status::NamedObserved, Some(sym)) => sym,
            (Status::ObservedUnnamed, _) | (Status::NamedObserved, None) => "X?",
            (Status::Unobserved, _) => "no",
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        match self.status {
            Status::NamedObserved if self.symbol.is_none() || self.name.is_none() => {
                Err("status named requires both symbol and name".into())
            }
            Status::Unobserved if self.symbol.is_some() || self.name.is_some() => {
                Err("status unobserved requires empty symbol and name".into())
            }
            _ => Ok(()),
        }
    }
}

/// Records keyed by Z; any Z not listed is unobserved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Registry {
    records: BTreeMap<u64, ElementRecord>,
}

fn non_empty(field: &str) -> Option<String> {
    let field = field.trim();
    (!field.is_empty()).then(|| field.to_string())
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let found: Vec<&str> = found.iter().map(str::trim).collect();
    if found != expected {
        return Err(Error::Schema(format!(
            "expected header {:?}, found {:?}",
            expected.join(","),
            found.join(",")
        )));
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

impl Registry {
    /// The built-in 2006 snapshot.
    pub fn snapshot() -> Self {
        Registry::load(SNAPSHOT_2006.as_bytes()).expect("embedded snapshot is well formed")
    }

    pub fn load<R: Read>(source: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
        check_header(reader.headers()?, &REGISTRY_HEADER)?;
        let mut records = BTreeMap::new();
        for row in reader.records() {
            let row = row?;
            let line = record_line(&row);
            let z: u64 = row[0]
                .trim()
                .parse()
                .ok()
                .filter(|z| *z >= 1)
                .ok_or_else(|| Error::parse(line, format!("Z must be a positive integer, got {:?}", &row[0])))?;
            let status: Status = row[3].trim().parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            let record = ElementRecord { z, symbol: non_empty(&row[1]), name: non_empty(&row[2]), status };
            record.check().map_err(|msg| Error::parse(line, msg))?;
            if records.insert(z, record).is_some() {
                return Err(Error::Conflict(z));
            }
        }
        Ok(Registry { records })
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        Registry::load(File::open(path)?)
    }

    /// Writes the listed records in ascending Z, in the format read by [`Registry::load`].
    pub fn save<W: Write>(&self, sink: W) -> Result<()> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
        writer.write_record(REGISTRY_HEADER)?;
        for r in self.records.values() {
            writer.write_record([
                r.z.to_string().as_str(),
                r.symbol.as_deref().unwrap_or(""),
                r.name.as_deref().unwrap_or(""),
                r.status.keyword(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn get(&self, z: u64) -> ElementRecord {
        self.records.get(&z).cloned().unwrap_or_else(|| ElementRecord::unobserved(z))
    }

    pub fn status(&self, z: u64) -> Status {
        self.records.get(&z).map_or(Status::Unobserved, |r| r.status)
    }

    pub fn by_symbol(&self, symbol: &str) -> Option<&ElementRecord> {
        self.records
            .values()
            .find(|r| r.symbol.as_deref().is_some_and(|s| s.eq_ignore_ascii_case(symbol)))
    }

    /// Explicitly listed records.
    pub fn records(&self) -> impl Iterator<Item = &ElementRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyDataset {
    pub property_name: String,
    pub unit: String,
    pub values: BTreeMap<u64, f64>,
    /// Rows whose value field was empty.
    #[serde(default)]
    pub skipped: usize,
}

impl PropertyDataset {
    pub fn new(property_name: impl Into<String>, unit: impl Into<String>) -> Self {
        PropertyDataset { property_name: property_name.into(), unit: unit.into(), values: BTreeMap::new(), skipped: 0 }
    }

    pub fn from_values(
        property_name: impl Into<String>,
        unit: impl Into<String>,
        values: impl IntoIterator<Item = (u64, f64)>,
    ) -> Self {
        let mut data = PropertyDataset::new(property_name, unit);
        data.values.extend(values);
        data
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, z: u64) -> Option<f64> {
        self.values.get(&z).copied()
    }
}

/// Reads a `z,value` CSV. Lines starting with `#` are comments; rows with an
/// empty value are skipped and counted.
pub fn load_property<R: Read>(source: R, property_name: &str, unit: &str) -> Result<PropertyDataset> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).comment(Some(b'#')).from_reader(source);
    check_header(reader.headers()?, &PROPERTY_HEADER)?;
    let mut data = PropertyDataset::new(property_name, unit);
    for row in reader.records() {
        let row = row?;
        let line = record_line(&row);
        let z: u64 = row[0]
            .trim()
            .parse()
            .ok()
            .filter(|z| *z >= 1)
            .ok_or_else(|| Error::parse(line, format!("Z must be a positive integer, got {:?}", &row[0])))?;
        let raw = row[1].trim();
        if raw.is_empty() {
            data.skipped += 1;
            continue;
        }
        let value: f64 = raw
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::parse(line, format!("value must be a finite number, got {raw:?}")))?;
        if data.values.insert(z, value).is_some() {
            return Err(Error::Conflict(z));
        }
    }
    Ok(data)
}

pub fn load_property_path(path: impl AsRef<Path>, property_name: &str, unit: &str) -> Result<PropertyDataset> {
    load_property(File::open(path)?, property_name, unit)
}

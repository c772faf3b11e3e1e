//! Rows, columns, families, blocks and series of the table.
//!
//! Rows ("streets") are indexed by `n`, columns ("avenues") by `(l, j, m)`.
//! Two cells share a column exactly when they differ only in `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::half::Half;
use crate::quartet::{block_capacity, quartets, z_of, MadelungKey, Quartet};
use crate::{Error, Result};

/// Column coordinates `(l, j, m)`, with `j` and `m` doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnId {
    l: u32,
    j2: u32,
    m2: i32,
}

impl ColumnId {
    pub fn new(l: u32, j2: u32, m2: i32) -> Result<Self> {
        // The lowest row holding this column has n = l + 1.
        Quartet::new(l + 1, l, j2, m2)?;
        Ok(ColumnId { l, j2, m2 })
    }

    pub fn of(q: &Quartet) -> Self {
        ColumnId { l: q.l(), j2: q.j2(), m2: q.m2() }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn j2(&self) -> u32 {
        self.j2
    }

    pub fn m2(&self) -> i32 {
        self.m2
    }

    /// The cell of this column in row `n`, if the row is long enough.
    pub fn at_row(&self, n: u32) -> Option<Quartet> {
        Quartet::new(n, self.l, self.j2, self.m2).ok()
    }

    pub fn contains(&self, q: &Quartet) -> bool {
        ColumnId::of(q) == *self
    }
}

impl fmt::Display for ColumnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.l, Half(self.j2 as i64), Half(self.m2 as i64))
    }
}

/// Parses `l,J,M`, e.g. `0,1/2,-1/2`.
impl FromStr for ColumnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (l, rest) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidQuartet(format!("expected column l,j,m, got {s:?}")))?;
        let l: u32 = l
            .trim()
            .parse()
            .map_err(|_| Error::InvalidQuartet(format!("l must be a non-negative integer, got {l:?}")))?;
        let q: Quartet = format!("{},{},{}", l + 1, l, rest).parse()?;
        Ok(ColumnId::of(&q))
    }
}

impl Serialize for ColumnId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColumnId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    AlkaliMetal,
    AlkalineEarth,
    Chalcogen,
    Halogen,
    NobleGas,
    Other,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Family of the column containing `q`. Depends only on `(l, j, m)`.
pub fn family_of(q: &Quartet) -> Family {
    match (q.l(), q.j2(), q.m2()) {
        (0, _, -1) => Family::AlkaliMetal,
        (0, _, 1) => Family::AlkalineEarth,
        (1, 3, -1) => Family::Chalcogen,
        (1, 3, 1) => Family::Halogen,
        (1, 3, 3) => Family::NobleGas,
        _ => Family::Other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `d`-blocks.
    Transition,
    /// `f`-blocks.
    InnerTransition,
    /// `g`-blocks, which have no homologue among known elements.
    GBlockPeriod,
}

impl SeriesKind {
    pub fn l(&self) -> u32 {
        match self {
            SeriesKind::Transition => 2,
            SeriesKind::InnerTransition => 3,
            SeriesKind::GBlockPeriod => 4,
        }
    }

    fn for_l(l: u32) -> Option<Self> {
        match l {
            2 => Some(SeriesKind::Transition),
            3 => Some(SeriesKind::InnerTransition),
            4 => Some(SeriesKind::GBlockPeriod),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub n: u32,
    pub l: u32,
    pub z_first: u64,
    pub z_last: u64,
}

impl SeriesSpec {
    pub fn contains(&self, z: u64) -> bool {
        (self.z_first..=self.z_last).contains(&z)
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(n={}) Z={}..{}", self.kind, self.n, self.z_first, self.z_last)
    }
}

/// Inclusive Z interval covered by an `l`-block.
pub fn block_interval(key: MadelungKey) -> (u64, u64) {
    let first = key.cells().next().expect("blocks are never empty");
    let z_first = z_of(&first);
    (z_first, z_first + block_capacity(key.l()) - 1)
}

/// The series (d, f or g block) containing `q`, if any.
pub fn series_of(q: &Quartet) -> Option<SeriesSpec> {
    let kind = SeriesKind::for_l(q.l())?;
    let (z_first, z_last) = block_interval(q.madelung_key());
    Some(SeriesSpec { kind, n: q.n(), l: q.l(), z_first, z_last })
}

/// Transition, inner-transition and g-block series for rows `3..=max_n`,
/// sorted by first atomic number.
pub fn series_catalog(max_n: u32) -> Vec<SeriesSpec> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for l in 2..=4u32 {
            if l >= n {
                continue;
            }
            let key = MadelungKey::from_shell(n, l).expect("l < n");
            let (z_first, z_last) = block_interval(key);
            let kind = SeriesKind::for_l(l).expect("l in 2..=4");
            out.push(SeriesSpec { kind, n, l, z_first, z_last });
        }
    }
    out.sort_by_key(|s| s.z_first);
    out
}

/// One half of an `l`-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubBlock {
    pub j2: u32,
    pub z_first: u64,
    pub z_last: u64,
}

impl SubBlock {
    pub fn len(&self) -> u64 {
        self.z_last - self.z_first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The `j = l - 1/2` and `j = l + 1/2` halves of block `(n, l)`, in that order.
pub fn subblock_split(n: u32, l: u32) -> Result<[SubBlock; 2]> {
    if l == 0 {
        return Err(Error::SingleSubBlock);
    }
    let key = MadelungKey::from_shell(n, l)?;
    let (z_first, z_last) = block_interval(key);
    let boundary = z_first + 2 * l as u64;
    Ok([
        SubBlock { j2: 2 * l - 1, z_first, z_last: boundary - 1 },
        SubBlock { j2: 2 * l + 1, z_first: boundary, z_last },
    ])
}

/// The sub-block containing `q`, or `None` for `l = 0` cells.
pub fn subblock_of(q: &Quartet) -> Option<SubBlock> {
    let [low, high] = subblock_split(q.n(), q.l()).ok()?;
    Some(if q.j2() == low.j2 { low } else { high })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub quartet: Quartet,
    pub z: u64,
}

/// The first `max_z` cells of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRegion {
    max_z: u64,
    cells: Vec<Cell>,
}

impl TableRegion {
    pub fn max_z(&self) -> u64 {
        self.max_z
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Largest `n` present in the region.
    pub fn max_row(&self) -> u32 {
        self.cells.iter().map(|c| c.quartet.n()).max().unwrap_or(0)
    }

    /// Cells of row `n`, in column order `(l, j, m)`.
    pub fn row(&self, n: u32) -> Vec<Cell> {
        let mut row: Vec<Cell> = self.cells.iter().filter(|c| c.quartet.n() == n).copied().collect();
        row.sort_by_key(|c| ColumnId::of(&c.quartet));
        row
    }

    pub fn column(&self, column: ColumnId) -> Vec<Cell> {
        self.cells.iter().filter(|c| column.contains(&c.quartet)).copied().collect()
    }
}

pub fn build_region(max_z: u64) -> Result<TableRegion> {
    if max_z == 0 {
        return Err(Error::Domain("max_z must be at least 1".into()));
    }
    let cells = quartets()
        .zip(1..=max_z)
        .map(|(quartet, z)| Cell { quartet, z })
        .collect();
    Ok(TableRegion { max_z, cells })
}

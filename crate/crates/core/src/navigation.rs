//! Ladder-operator moves between cells and shortest paths.
//!
//! Moves are combinatorial unit steps on the quantum numbers, labelled by the
//! algebra whose ladder operators realise them:
//!
//! * `SO3xSU2` stays inside one `l`-block: `m -> m ± 1`, or the `j` flip
//!   `j = l - 1/2 <-> l + 1/2` at fixed `m`;
//! * `SO4xSU2` stays in one row and changes `l` by one (see [`shift_l`]);
//! * `SO21` stays in one column and changes `n` by one;
//! * `SO42xSU2` jumps to any other cell.
//!
//! The table is infinite, so every query runs inside a [`Navigator`] that
//! only admits cells with `Z <= max_z`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quartet::{enumerate_quartets, z_of, MadelungKey, Quartet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveAlgebra {
    SO3xSU2,
    SO4xSU2,
    SO21,
    SO42xSU2,
}

impl MoveAlgebra {
    pub const ALL: [MoveAlgebra; 4] =
        [MoveAlgebra::SO3xSU2, MoveAlgebra::SO4xSU2, MoveAlgebra::SO21, MoveAlgebra::SO42xSU2];

    /// Short command-line name.
    pub fn short_name(&self) -> &'static str {
        match self {
            MoveAlgebra::SO3xSU2 => "so3",
            MoveAlgebra::SO4xSU2 => "so4",
            MoveAlgebra::SO21 => "so21",
            MoveAlgebra::SO42xSU2 => "so42",
        }
    }
}

impl fmt::Display for MoveAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for MoveAlgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        match key.as_str() {
            "so3" | "so3su2" | "so3xsu2" => Ok(MoveAlgebra::SO3xSU2),
            "so4" | "so4su2" | "so4xsu2" => Ok(MoveAlgebra::SO4xSU2),
            "so21" => Ok(MoveAlgebra::SO21),
            "so42" | "so42su2" | "so42xsu2" | "taxi" => Ok(MoveAlgebra::SO42xSU2),
            _ => Err(Error::Domain(format!(
                "unknown algebra {s:?} (expected so3, so4, so21 or so42)"
            ))),
        }
    }
}

/// Image of `q` in the block `(n, new_l)` under an `l`-changing move.
///
/// `j - l` keeps its sign where possible (an `l = 0` cell counts as
/// `j = l + 1/2`, and any cell landing on `l = 0` gets `j = 1/2`). The
/// fractional position `k/(2j)` with `k = m + j` is carried over and
/// rounded to the nearest slot `k'` of the new `j`, then clamped into
/// `[0, 2j']`. Both `2j` and `2j'` are odd, so the rounding never ties.
pub fn shift_l(q: &Quartet, new_l: u32) -> Option<Quartet> {
    if new_l >= q.n() {
        return None;
    }
    let sign = q.j2() as i64 - 2 * q.l() as i64;
    let new_j2 = if new_l == 0 { 1 } else { (2 * new_l as i64 + sign) as u32 };
    let j2 = q.j2() as i64;
    let k = (q.m2() as i64 + j2) / 2;
    let new_j2_i = new_j2 as i64;
    // round(k * new_j2 / j2)
    let k_new = ((2 * k * new_j2_i + j2) / (2 * j2)).clamp(0, new_j2_i);
    Quartet::new(q.n(), new_l, new_j2, (2 * k_new - new_j2_i) as i32).ok()
}

/// Unbounded neighbours for the algebras whose moves are local.
fn local_neighbors(q: &Quartet, algebra: MoveAlgebra) -> Vec<Quartet> {
    let mut out = Vec::new();
    let (n, l, j2, m2) = (q.n(), q.l(), q.j2(), q.m2());
    match algebra {
        MoveAlgebra::SO3xSU2 => {
            out.extend(Quartet::new(n, l, j2, m2 - 2).ok());
            out.extend(Quartet::new(n, l, j2, m2 + 2).ok());
            if l > 0 {
                let flipped = if j2 == 2 * l - 1 { 2 * l + 1 } else { 2 * l - 1 };
                out.extend(Quartet::new(n, l, flipped, m2).ok());
            }
        }
        MoveAlgebra::SO4xSU2 => {
            // Symmetric closure of shift_l: forward images plus every cell of
            // the adjacent blocks that maps back onto q.
            for new_l in [l.checked_sub(1), Some(l + 1)].into_iter().flatten() {
                if new_l >= n {
                    continue;
                }
                out.extend(shift_l(q, new_l));
                let key = MadelungKey::from_shell(n, new_l).expect("new_l < n");
                out.extend(key.cells().filter(|c| shift_l(c, l) == Some(*q)));
            }
        }
        MoveAlgebra::SO21 => {
            if n > 1 {
                out.extend(Quartet::new(n - 1, l, j2, m2).ok());
            }
            out.extend(Quartet::new(n + 1, l, j2, m2).ok());
        }
        MoveAlgebra::SO42xSU2 => unreachable!("taxi moves are not local"),
    }
    out.sort();
    out.dedup();
    out
}

/// One step of a path: the cell arrived at and the algebra used to get there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub quartet: Quartet,
    pub algebra: MoveAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: Quartet,
    pub steps: Vec<Step>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Quartet {
        self.steps.last().map_or(self.start, |s| s.quartet)
    }
}

/// Move graph restricted to the cells with `Z <= max_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Navigator {
    max_z: u64,
}

impl Navigator {
    pub fn new(max_z: u64) -> Self {
        Navigator { max_z }
    }

    /// Bound covering every cell of rows `1..=rows`.
    pub fn for_rows(rows: u32) -> Self {
        let rows = rows.max(1);
        let last = Quartet::new(rows, rows - 1, 2 * rows - 1, 2 * rows as i32 - 1).expect("valid corner cell");
        Navigator { max_z: z_of(&last) }
    }

    pub fn max_z(&self) -> u64 {
        self.max_z
    }

    pub fn contains(&self, q: &Quartet) -> bool {
        z_of(q) <= self.max_z
    }

    /// Cells reachable from `q` in one `algebra` move, in table order.
    pub fn neighbors(&self, q: &Quartet, algebra: MoveAlgebra) -> Vec<Quartet> {
        match algebra {
            MoveAlgebra::SO42xSU2 => enumerate_quartets(self.max_z as usize)
                .into_iter()
                .filter(|c| c != q)
                .collect(),
            local => local_neighbors(q, local).into_iter().filter(|c| self.contains(c)).collect(),
        }
    }

    /// Breadth-first shortest path using any of the `allowed` algebras.
    ///
    /// Candidate neighbours are visited in table order; when several algebras
    /// reach the same cell the first one in [`MoveAlgebra::ALL`] order is
    /// recorded. Returns `None` when `to` cannot be reached inside the bound.
    pub fn shortest_path(&self, from: &Quartet, to: &Quartet, allowed: &[MoveAlgebra]) -> Option<Path> {
        if from == to {
            return Some(Path { start: *from, steps: Vec::new() });
        }
        if !self.contains(to) || allowed.is_empty() {
            return None;
        }
        let mut algebras = allowed.to_vec();
        algebras.sort();
        algebras.dedup();

        let mut parent: HashMap<Quartet, (Quartet, MoveAlgebra)> = HashMap::new();
        let mut queue = VecDeque::from([*from]);
        while let Some(current) = queue.pop_front() {
            let mut candidates: Vec<(Quartet, MoveAlgebra)> = Vec::new();
            for &algebra in &algebras {
                candidates.extend(self.neighbors(&current, algebra).into_iter().map(|c| (c, algebra)));
            }
            // stable sort keeps the earliest algebra first among duplicates
            candidates.sort_by_key(|(c, _)| *c);
            candidates.dedup_by_key(|(c, _)| *c);
            for (next, algebra) in candidates {
                if next == *from || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, (current, algebra));
                if next == *to {
                    return Some(self.unwind(from, to, &parent));
                }
                queue.push_back(next);
            }
        }
        None
    }

    fn unwind(&self, from: &Quartet, to: &Quartet, parent: &HashMap<Quartet, (Quartet, MoveAlgebra)>) -> Path {
        let mut steps = Vec::new();
        let mut cursor = *to;
        while cursor != *from {
            let (prev, algebra) = parent[&cursor];
            steps.push(Step { quartet: cursor, algebra });
            cursor = prev;
        }
        steps.reverse();
        Path { start: *from, steps }
    }
}

//! Quartet addressing and the Madelung filling order.
//!
//! A cell of the table is addressed by a quartet `(n, l, j, m)` with
//! `0 <= l <= n-1`, `j = l ± 1/2` (only `j = 1/2` when `l = 0`) and
//! `m = -j, ..., j`. Cells are filled block by block in the Madelung order of
//! `[n+l, n]`; inside an `l`-block the `j = l - 1/2` sub-block comes first,
//! and inside a sub-block `m` increases from `-j` to `j`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::half::{parse_doubled, Half};
use crate::{Error, Result};

/// Address `(n, l, j, m)` of a cell, with `j` and `m` stored doubled.
///
/// The only way to obtain a `Quartet` is through [`Quartet::new`] (or
/// parsing), so every value satisfies the quartet constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quartet {
    n: u32,
    l: u32,
    j2: u32,
    m2: i32,
}

impl Quartet {
    pub fn new(n: u32, l: u32, j2: u32, m2: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuartet("n must be at least 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidQuartet(format!(
                "l must satisfy 0 <= l <= n-1 (n = {n}, l = {l})"
            )));
        }
        let j_ok = if l == 0 {
            j2 == 1
        } else {
            j2 == 2 * l - 1 || j2 == 2 * l + 1
        };
        if !j_ok {
            return Err(Error::InvalidQuartet(format!(
                "j must be l - 1/2 or l + 1/2 (l = {l}, j = {})",
                Half(j2 as i64)
            )));
        }
        if m2.unsigned_abs() > j2 || (m2 - j2 as i32) % 2 != 0 {
            return Err(Error::InvalidQuartet(format!(
                "m must be one of -j, -j+1, ..., j (j = {}, m = {})",
                Half(j2 as i64),
                Half(m2 as i64)
            )));
        }
        Ok(Quartet { n, l, j2, m2 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Twice `j`.
    pub fn j2(&self) -> u32 {
        self.j2
    }

    /// Twice `m`.
    pub fn m2(&self) -> i32 {
        self.m2
    }

    pub fn j(&self) -> f64 {
        self.j2 as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.m2 as f64 / 2.0
    }

    pub fn madelung_key(&self) -> MadelungKey {
        MadelungKey { sum: self.n + self.l, n: self.n }
    }

    /// Zero-based position of the cell inside its `l`-block.
    pub fn offset_in_block(&self) -> u64 {
        let before = if self.l > 0 && self.j2 == 2 * self.l + 1 { 2 * self.l } else { 0 };
        before as u64 + ((self.m2 + self.j2 as i32) / 2) as u64
    }
}

impl PartialOrd for Quartet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Global table order, identical to ordering by atomic number.
impl Ord for Quartet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.madelung_key()
            .cmp(&other.madelung_key())
            .then(self.j2.cmp(&other.j2))
            .then(self.m2.cmp(&other.m2))
    }
}

impl fmt::Display for Quartet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.n,
            self.l,
            Half(self.j2 as i64),
            Half(self.m2 as i64)
        )
    }
}

/// Parses `n,l,J,M` where `J` and `M` are integers or halves (`5/2`).
/// Surrounding parentheses are accepted.
impl FromStr for Quartet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidQuartet(format!(
                "expected four comma-separated fields n,l,j,m, got {s:?}"
            )));
        }
        let n: u32 = parts[0]
            .parse()
            .map_err(|_| Error::InvalidQuartet(format!("n must be a positive integer, got {:?}", parts[0])))?;
        let l: u32 = parts[1]
            .parse()
            .map_err(|_| Error::InvalidQuartet(format!("l must be a non-negative integer, got {:?}", parts[1])))?;
        let j2 = parse_doubled(parts[2])
            .filter(|v| *v > 0 && *v <= u32::MAX as i64)
            .ok_or_else(|| Error::InvalidQuartet(format!("j must be a positive half-integer, got {:?}", parts[2])))?;
        let m2 = parse_doubled(parts[3])
            .filter(|v| v.unsigned_abs() <= i32::MAX as u64)
            .ok_or_else(|| Error::InvalidQuartet(format!("m must be a half-integer, got {:?}", parts[3])))?;
        Quartet::new(n, l, j2 as u32, m2 as i32)
    }
}

/// The `[n+l, n]` label of an `l`-block.
///
/// Field order makes the derived ordering lexicographic on `(sum, n)`, which
/// is the Madelung order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MadelungKey {
    sum: u32,
    n: u32,
}

impl MadelungKey {
    pub fn new(sum: u32, n: u32) -> Result<Self> {
        if n == 0 || n > sum || 2 * n < sum + 1 {
            return Err(Error::InvalidQuartet(format!(
                "Madelung key [{sum},{n}] needs ceil((sum+1)/2) <= n <= sum"
            )));
        }
        Ok(MadelungKey { sum, n })
    }

    pub fn from_shell(n: u32, l: u32) -> Result<Self> {
        if l >= n {
            return Err(Error::InvalidQuartet(format!(
                "l must satisfy 0 <= l <= n-1 (n = {n}, l = {l})"
            )));
        }
        Ok(MadelungKey { sum: n + l, n })
    }

    pub fn sum(&self) -> u32 {
        self.sum
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.sum - self.n
    }

    pub fn capacity(&self) -> u64 {
        block_capacity(self.l())
    }

    /// The next block in Madelung order.
    pub fn succ(&self) -> MadelungKey {
        if self.n < self.sum {
            MadelungKey { sum: self.sum, n: self.n + 1 }
        } else {
            let sum = self.sum + 1;
            MadelungKey { sum, n: (sum + 2) / 2 }
        }
    }

    /// Cells of the block in table order.
    pub fn cells(&self) -> impl Iterator<Item = Quartet> {
        let (n, l) = (self.n, self.l());
        let js: Vec<u32> = if l == 0 { vec![1] } else { vec![2 * l - 1, 2 * l + 1] };
        js.into_iter().flat_map(move |j2| {
            (0..=j2).map(move |k| Quartet { n, l, j2, m2: 2 * k as i32 - j2 as i32 })
        })
    }
}

impl fmt::Display for MadelungKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.sum, self.n)
    }
}

pub fn madelung_compare(a: &MadelungKey, b: &MadelungKey) -> Ordering {
    a.cmp(b)
}

/// Number of cells in an `l`-block: `2(2l+1)`.
pub fn block_capacity(l: u32) -> u64 {
    2 * (2 * l as u64 + 1)
}

/// Madelung keys in order, starting from `[1,1]`. Unbounded.
pub fn madelung_keys() -> impl Iterator<Item = MadelungKey> {
    std::iter::successors(Some(MadelungKey { sum: 1, n: 1 }), |k| Some(k.succ()))
}

/// All quartets in table order. Unbounded; callers must `take`.
pub fn quartets() -> impl Iterator<Item = Quartet> {
    madelung_keys().flat_map(|k| k.cells())
}

/// The first `limit` quartets in table order.
pub fn enumerate_quartets(limit: usize) -> Vec<Quartet> {
    quartets().take(limit).collect()
}

/// Closed-form atomic number of the cell at `q`.
///
/// With `s = n + l`,
/// `Z = s(s²-1)/6 + (s+1)²/2 - [1+(-1)^s](s+1)/4 - 4l(l+1) + l + j(2l+1) + m - 1`.
/// Every term is multiplied through by 12 (and `j`, `m` are already doubled)
/// so the evaluation stays in integers; the total is always divisible by 12.
pub fn z_of(q: &Quartet) -> u64 {
    let s = (q.n + q.l) as i128;
    let l = q.l as i128;
    let parity = if s % 2 == 0 { 2 } else { 0 };
    let twelve_z = 2 * s * (s * s - 1) + 6 * (s + 1) * (s + 1) - 3 * parity * (s + 1) - 48 * l * (l + 1)
        + 12 * l
        + 6 * q.j2 as i128 * (2 * l + 1)
        + 6 * q.m2 as i128
        - 12;
    debug_assert_eq!(twelve_z % 12, 0, "Z formula must be integral for {q}");
    (twelve_z / 12) as u64
}

struct BlockStart {
    key: MadelungKey,
    first_z: u64,
}

/// Growable memo of block start positions, shared by all threads.
static BLOCK_STARTS: RwLock<Vec<BlockStart>> = RwLock::new(Vec::new());

fn locate_block(blocks: &[BlockStart], z: u64) -> Option<&BlockStart> {
    let idx = blocks.partition_point(|b| b.first_z <= z);
    let block = blocks.get(idx.checked_sub(1)?)?;
    (z < block.first_z + block.key.capacity()).then_some(block)
}

/// The unique quartet whose atomic number is `z`.
///
/// Walks the Madelung blocks once, memoizing where each block starts, then
/// indexes into the block that contains `z`.
pub fn quartet_of(z: u64) -> Result<Quartet> {
    if z == 0 {
        return Err(Error::Domain("atomic number must be at least 1".into()));
    }
    let found = {
        let blocks = BLOCK_STARTS.read().unwrap_or_else(|e| e.into_inner());
        locate_block(&blocks, z).map(|b| (b.key, z - b.first_z))
    };
    let (key, offset) = match found {
        Some(hit) => hit,
        None => {
            let mut blocks = BLOCK_STARTS.write().unwrap_or_else(|e| e.into_inner());
            if blocks.is_empty() {
                blocks.push(BlockStart { key: MadelungKey { sum: 1, n: 1 }, first_z: 1 });
            }
            loop {
                let last = blocks.last().expect("memo seeded");
                let next_z = last.first_z + last.key.capacity();
                if next_z > z {
                    break;
                }
                let key = last.key.succ();
                blocks.push(BlockStart { key, first_z: next_z });
            }
            let b = locate_block(&blocks, z).expect("memo covers z");
            (b.key, z - b.first_z)
        }
    };
    Ok(key.cells().nth(offset as usize).expect("offset within block capacity"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32, l: u32, j2: u32, m2: i32) -> Quartet {
        Quartet::new(n, l, j2, m2).unwrap()
    }

    fn key(sum: u32, n: u32) -> MadelungKey {
        MadelungKey::new(sum, n).unwrap()
    }

    #[test]
    fn madelung_compare_examples() {
        assert_eq!(madelung_compare(&key(3, 2), &key(3, 3)), Ordering::Less);
        assert_eq!(madelung_compare(&key(2, 2), &key(2, 2)), Ordering::Equal);
        assert_eq!(madelung_compare(&key(5, 3), &key(4, 4)), Ordering::Greater);
    }

    #[test]
    fn madelung_chain() {
        let chain: Vec<String> = madelung_keys().take(6).map(|k| k.to_string()).collect();
        assert_eq!(chain, ["[1,1]", "[2,2]", "[3,2]", "[3,3]", "[4,3]", "[4,4]"]);
    }

    #[test]
    fn invalid_keys() {
        assert!(MadelungKey::new(3, 1).is_err());
        assert!(MadelungKey::new(3, 4).is_err());
        assert!(MadelungKey::new(1, 0).is_err());
    }

    #[test]
    fn capacities() {
        assert_eq!(block_capacity(0), 2);
        assert_eq!(block_capacity(1), 6);
        assert_eq!(block_capacity(3), 14);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_quartets(1), vec![q(1, 0, 1, -1)]);
        assert_eq!(enumerate_quartets(2)[1], q(1, 0, 1, 1));
        assert_eq!(enumerate_quartets(5)[4], q(2, 1, 1, -1));
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_of(&q(1, 0, 1, -1)), 1);
        assert_eq!(z_of(&q(4, 3, 5, -5)), 57);
        assert_eq!(z_of(&q(6, 3, 7, 7)), 152);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(quartet_of(2).unwrap(), q(1, 0, 1, 1));
        assert_eq!(quartet_of(21).unwrap(), q(3, 2, 3, -3));
        assert_eq!(quartet_of(121).unwrap(), q(5, 4, 7, -7));
        assert!(matches!(quartet_of(0), Err(Error::Domain(_))));
    }

    #[test]
    fn validation() {
        assert!(Quartet::new(0, 0, 1, 1).is_err());
        assert!(Quartet::new(1, 1, 1, 1).is_err());
        assert!(Quartet::new(1, 0, 3, 1).is_err());
        assert!(Quartet::new(2, 1, 5, 1).is_err());
        assert!(Quartet::new(2, 1, 3, 5).is_err());
        assert!(Quartet::new(2, 1, 3, 0).is_err());
        let err = Quartet::new(3, 1, 3, 2).unwrap_err().to_string();
        assert!(err.contains("m must be"), "{err}");
    }

    #[test]
    fn parse_and_display() {
        let parsed: Quartet = "4,3,5/2,-5/2".parse().unwrap();
        assert_eq!(parsed, q(4, 3, 5, -5));
        assert_eq!(parsed.to_string(), "(4,3,5/2,-5/2)");
        assert_eq!(parsed.to_string().parse::<Quartet>().unwrap(), parsed);
        assert!("1,0,1/2".parse::<Quartet>().is_err());
        assert!("1,0,0.5,-0.5".parse::<Quartet>().is_err());
        assert!("1,0,3/2,1/2".parse::<Quartet>().is_err());
    }

    #[test]
    fn order_matches_z() {
        let cells = enumerate_quartets(500);
        for pair in cells.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn large_z_is_cheap() {
        let q = quartet_of(5_000_000).unwrap();
        assert_eq!(z_of(&q), 5_000_000);
    }
}

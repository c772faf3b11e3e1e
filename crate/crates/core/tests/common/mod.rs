//! Independent oracles shared by the integration tests. Nothing here calls
//! the enumeration or Z formula under test.
#![allow(dead_code)]

/// `(n, l, j2, m2)` tuples.
pub type Raw = (u32, u32, u32, i32);

/// Every cell whose block has `n + l <= max_sum`, sorted by brute force into
/// filling order: `(n+l, n)` lexicographic, then `j`, then `m`.
pub fn brute_force_table(max_sum: u32) -> Vec<Raw> {
    let mut cells = Vec::new();
    for n in 1..=max_sum {
        for l in 0..n {
            if n + l > max_sum {
                continue;
            }
            for j2 in [2 * l as i64 - 1, 2 * l as i64 + 1] {
                if j2 < 1 {
                    continue;
                }
                let mut m2 = -j2;
                while m2 <= j2 {
                    cells.push((n, l, j2 as u32, m2 as i32));
                    m2 += 2;
                }
            }
        }
    }
    cells.sort_by_key(|&(n, l, j2, m2)| (n + l, n, j2, m2));
    cells
}

/// Smallest `max_sum` whose brute-force table holds at least `count` cells.
pub fn brute_force_first(count: usize) -> Vec<Raw> {
    let mut s = 1;
    loop {
        let t = brute_force_table(s);
        if t.len() >= count {
            return t[..count].to_vec();
        }
        s += 1;
    }
}

/// Atomic number by position in the brute-force order.
pub fn oracle_z(cell: Raw) -> u64 {
    let (n, l, _, _) = cell;
    let table = brute_force_table(n + l);
    table.iter().position(|c| *c == cell).expect("cell in table") as u64 + 1
}

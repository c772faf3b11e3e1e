//! Idealized ground-state configurations from the Madelung filling order.
//!
//! Empirical anomalies (Cr, Cu, ...) are deliberately not modelled; use
//! [`compare`] to diff an idealized configuration against an observed one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quartet::{block_capacity, madelung_keys, MadelungKey};
use crate::{Error, Result};

/// Spectroscopic letters for `l = 0, 1, 2, ...` (no `j`, and no reuse of `s`/`p`).
const LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";

pub fn orbital_letter(l: u32) -> Option<char> {
    LETTERS.get(l as usize).map(|&b| b as char)
}

pub fn l_of_letter(c: char) -> Option<u32> {
    LETTERS.iter().position(|&b| b as char == c).map(|p| p as u32)
}

/// A shell `nl`, e.g. `3d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shell {
    pub n: u32,
    pub l: u32,
}

impl Shell {
    pub fn capacity(&self) -> u64 {
        block_capacity(self.l)
    }

    pub fn madelung_key(&self) -> MadelungKey {
        MadelungKey::from_shell(self.n, self.l).expect("shells always have l < n")
    }
}

impl From<MadelungKey> for Shell {
    fn from(key: MadelungKey) -> Self {
        Shell { n: key.n(), l: key.l() }
    }
}

impl fmt::Display for Shell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match orbital_letter(self.l) {
            Some(c) => write!(f, "{}{}", self.n, c),
            None => write!(f, "{}[l={}]", self.n, self.l),
        }
    }
}

/// The first `count` shells in Madelung order.
pub fn shell_sequence(count: usize) -> Vec<Shell> {
    madelung_keys().take(count).map(Shell::from).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellOccupancy {
    pub shell: Shell,
    pub electrons: u64,
}

impl fmt::Display for ShellOccupancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.shell, self.electrons)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub z: u64,
    pub shells: Vec<ShellOccupancy>,
}

impl Configuration {
    pub fn electrons(&self) -> u64 {
        self.shells.iter().map(|s| s.electrons).sum()
    }

    /// The shell holding the highest-numbered electron.
    pub fn last_shell(&self) -> Option<Shell> {
        self.shells.last().map(|s| s.shell)
    }

    pub fn occupancy(&self, shell: Shell) -> u64 {
        self.shells.iter().find(|s| s.shell == shell).map_or(0, |s| s.electrons)
    }
}

/// Conventional notation, e.g. `1s2 2s2 2p6`.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, occ) in self.shells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{occ}")?;
        }
        Ok(())
    }
}

pub fn configuration_of(z: u64) -> Result<Configuration> {
    if z == 0 {
        return Err(Error::Domain("atomic number must be at least 1".into()));
    }
    let mut left = z;
    let mut shells = Vec::new();
    for key in madelung_keys() {
        let shell = Shell::from(key);
        let electrons = left.min(shell.capacity());
        shells.push(ShellOccupancy { shell, electrons });
        left -= electrons;
        if left == 0 {
            break;
        }
    }
    Ok(Configuration { z, shells })
}

const NOBLE_CORES: [(&str, u64); 6] = [("He", 2), ("Ne", 10), ("Ar", 18), ("Kr", 36), ("Xe", 54), ("Rn", 86)];

/// Parses conventional notation such as `1s2 2s2 2p6` or `[Ar] 3d5 4s1`.
///
/// Shells keep the order they are written in; a noble-gas core expands to
/// its Madelung configuration, which matches the observed cores.
impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut shells: Vec<ShellOccupancy> = Vec::new();
        for token in s.split_whitespace() {
            if let Some(core) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                let z = NOBLE_CORES
                    .iter()
                    .find(|(sym, _)| *sym == core)
                    .map(|(_, z)| *z)
                    .ok_or_else(|| Error::Domain(format!("unknown core [{core}]")))?;
                shells.extend(configuration_of(z)?.shells);
                continue;
            }
            let bad = || Error::Domain(format!("malformed shell {token:?}"));
            let letter_at = token.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
            let n: u32 = token[..letter_at].parse().map_err(|_| bad())?;
            let letter = token[letter_at..].chars().next().ok_or_else(bad)?;
            let l = l_of_letter(letter).ok_or_else(bad)?;
            let count = &token[letter_at + 1..];
            let electrons: u64 = if count.is_empty() { 1 } else { count.parse().map_err(|_| bad())? };
            let shell = Shell { n, l };
            if l >= n || electrons == 0 || electrons > shell.capacity() {
                return Err(bad());
            }
            if shells.iter().any(|o| o.shell == shell) {
                return Err(Error::Domain(format!("shell {shell} listed twice")));
            }
            shells.push(ShellOccupancy { shell, electrons });
        }
        let z = shells.iter().map(|s| s.electrons).sum();
        if z == 0 {
            return Err(Error::Domain("empty configuration".into()));
        }
        Ok(Configuration { z, shells })
    }
}

/// A shell whose occupancy differs between two configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShellDifference {
    pub shell: Shell,
    pub idealized: u64,
    pub observed: u64,
}

/// Shells where `observed` departs from the idealized `ideal`, in Madelung order.
pub fn compare(ideal: &Configuration, observed: &Configuration) -> Vec<ShellDifference> {
    let mut shells: Vec<Shell> = ideal.shells.iter().chain(&observed.shells).map(|o| o.shell).collect();
    shells.sort_by_key(|s| s.madelung_key());
    shells.dedup();
    shells
        .into_iter()
        .filter_map(|shell| {
            let (a, b) = (ideal.occupancy(shell), observed.occupancy(shell));
            (a != b).then_some(ShellDifference { shell, idealized: a, observed: b })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(shells: &[Shell]) -> Vec<String> {
        shells.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn sequence() {
        assert_eq!(names(&shell_sequence(3)), ["1s", "2s", "2p"]);
        assert_eq!(shell_sequence(7)[6].to_string(), "3d");
        assert_eq!(shell_sequence(12)[11].to_string(), "6s");
    }

    #[test]
    fn configurations() {
        assert_eq!(configuration_of(1).unwrap().to_string(), "1s1");
        assert_eq!(configuration_of(10).unwrap().to_string(), "1s2 2s2 2p6");
        let sc = configuration_of(21).unwrap();
        assert_eq!(sc.to_string(), "1s2 2s2 2p6 3s2 3p6 4s2 3d1");
        assert!(configuration_of(0).is_err());
    }

    #[test]
    fn letters() {
        assert_eq!(orbital_letter(6), Some('i'));
        assert_eq!(orbital_letter(7), Some('k'));
        assert_eq!(l_of_letter('j'), None);
        let far = Shell { n: 30, l: 25 };
        assert_eq!(far.to_string(), "30[l=25]");
    }

    #[test]
    fn parse_round_trip() {
        let c = configuration_of(57).unwrap();
        assert_eq!(c.to_string().parse::<Configuration>().unwrap(), c);
        let cr: Configuration = "[Ar] 3d5 4s1".parse().unwrap();
        assert_eq!(cr.z, 24);
        assert!("2d1".parse::<Configuration>().is_err());
        assert!("1s3".parse::<Configuration>().is_err());
        assert!("[Og] 8s1".parse::<Configuration>().is_err());
    }

    #[test]
    fn chromium_anomaly() {
        let ideal = configuration_of(24).unwrap();
        let observed: Configuration = "[Ar] 3d5 4s1".parse().unwrap();
        let diff = compare(&ideal, &observed);
        assert_eq!(
            diff,
            vec![
                ShellDifference { shell: Shell { n: 4, l: 0 }, idealized: 2, observed: 1 },
                ShellDifference { shell: Shell { n: 3, l: 2 }, idealized: 4, observed: 5 },
            ]
        );
        assert!(compare(&ideal, &ideal).is_empty());
    }
}

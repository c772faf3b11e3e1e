//! Half-integers carried as doubled integers.
//!
//! `j` and `m` are always half-odd in this table, so they are stored as
//! `j2 = 2j` and `m2 = 2m`. These helpers convert between the doubled form
//! and the textual form used on the command line (`"5/2"`, `"-1/2"`, `"3"`).

use std::fmt;

/// Display wrapper printing a doubled integer as its logical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Half(pub i64);

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parse `"5/2"`, `"-1/2"`, `"+3/2"` or an integer such as `"2"` into its
/// doubled value. Only the denominators 1 and 2 are accepted.
pub fn parse_doubled(text: &str) -> Option<i64> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().ok()?;
            let den: i64 = den.trim().parse().ok()?;
            match den {
                1 => num.checked_mul(2),
                2 => Some(num),
                _ => None,
            }
        }
        None => text.parse::<i64>().ok()?.checked_mul(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Half(1).to_string(), "1/2");
        assert_eq!(Half(-5).to_string(), "-5/2");
        assert_eq!(Half(4).to_string(), "2");
        assert_eq!(Half(0).to_string(), "0");
    }

    #[test]
    fn parse() {
        assert_eq!(parse_doubled("5/2"), Some(5));
        assert_eq!(parse_doubled("-1/2"), Some(-1));
        assert_eq!(parse_doubled("+3/2"), Some(3));
        assert_eq!(parse_doubled("2"), Some(4));
        assert_eq!(parse_doubled("4/1"), Some(8));
        assert_eq!(parse_doubled("1/3"), None);
        assert_eq!(parse_doubled("0.5"), None);
        assert_eq!(parse_doubled(""), None);
    }
}

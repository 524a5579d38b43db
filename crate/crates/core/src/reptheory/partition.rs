use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("cannot parse partition at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("partition {partition} has {length} parts, more than the genus {genus}")]
    TooLong {
        partition: String,
        length: usize,
        genus: usize,
    },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `(1^k)`.
    pub fn column(k: usize) -> Partition {
        Partition(vec![1; k])
    }

    /// Drop zero entries of a dominant weight.
    pub fn from_dominant(weight: &[i32]) -> Partition {
        debug_assert!(weight.windows(2).all(|w| w[0] >= w[1]) && weight.iter().all(|&x| x >= 0));
        Partition(
            weight
                .iter()
                .filter(|&&x| x > 0)
                .map(|&x| x as u32)
                .collect(),
        )
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|λ|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// The partition as a weight vector of length `g`, zero padded.
    pub fn to_weight(&self, g: usize) -> Result<Vec<i32>, PartitionError> {
        if self.length() > g {
            return Err(PartitionError::TooLong {
                partition: self.to_string(),
                length: self.length(),
                genus: g,
            });
        }
        let mut w: Vec<i32> = self.0.iter().map(|&p| p as i32).collect();
        w.resize(g, 0);
        Ok(w)
    }

    /// Hook lengths in row-major order.
    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        let mut out = Vec::new();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - 1 - j as u32;
                let leg = t.0[j] - 1 - i as u32;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Every partition of `n`, in decreasing lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// Parts joined by commas; the empty partition prints as `0`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Accepts `2,2,1,1`, exponents such as `1^6` or `2^2,1^2`, and `""` or
/// `0` for the empty partition.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = s.len() - s.trim_start().len();
        for item in trimmed.split(',') {
            let start = offset + (item.len() - item.trim_start().len());
            offset += item.len() + 1;
            let item = item.trim();
            let err = |message: &str| PartitionError::Parse {
                position: start,
                message: message.to_string(),
            };
            let (base, exp) = match item.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (item, "1"),
            };
            let base: u32 = base
                .parse()
                .map_err(|_| err("expected a positive integer"))?;
            let exp: usize = exp.parse().map_err(|_| err("expected an exponent"))?;
            if base == 0 {
                return Err(err("parts must be positive"));
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(
            "2,2,1,1".parse::<Partition>().unwrap().parts(),
            &[2, 2, 1, 1]
        );
        assert_eq!("1^6".parse::<Partition>().unwrap(), Partition::column(6));
        assert_eq!(
            "2^2, 1^2".parse::<Partition>().unwrap(),
            "2,2,1,1".parse().unwrap()
        );
        assert!("".parse::<Partition>().unwrap().is_empty());
        assert!("0".parse::<Partition>().unwrap().is_empty());
        assert!(matches!(
            "1,2".parse::<Partition>(),
            Err(PartitionError::NotDecreasing(_))
        ));
        assert!(matches!(
            "2,x".parse::<Partition>(),
            Err(PartitionError::Parse { position: 2, .. })
        ));
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "2,2,1,1", "3,1"] {
            assert_eq!(s.parse::<Partition>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn transpose_and_hooks() {
        let l: Partition = "3,1".parse().unwrap();
        assert_eq!(l.transpose().parts(), &[2, 1, 1]);
        assert_eq!(l.transpose().transpose(), l);
        assert_eq!(l.hooks(), vec![4, 2, 1, 1]);
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn enumeration() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition::all_of(3)[0].parts(), &[3]);
    }

    #[test]
    fn weights() {
        let l: Partition = "2,1".parse().unwrap();
        assert_eq!(l.to_weight(4).unwrap(), vec![2, 1, 0, 0]);
        assert!(l.to_weight(1).is_err());
        assert_eq!(Partition::from_dominant(&[2, 1, 0]), l);
    }
}

//! Integer partitions `s ⊢ n`.
//!
//! Partitions are stored as non-increasing part lists and ordered
//! lexicographically on that list, which gives the row order of the
//! published coefficient tables: `1+1+1+1 < 2+1+1 < 2+2 < 3+1 < 4`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("invalid partition label {0:?}")]
    BadLabel(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// The single-part partition `(n)`.
    pub fn elementary(n: usize) -> Self {
        assert!(n > 0, "elementary partition of zero");
        Self { parts: alloc::vec![n] }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn from_frequency(freq: &BTreeMap<usize, usize>) -> Result<Self, PartitionError> {
        let mut parts = Vec::new();
        for (&j, &mu) in freq.iter().rev() {
            if j == 0 && mu > 0 {
                return Err(PartitionError::ZeroPart);
            }
            parts.extend(core::iter::repeat_n(j, mu));
        }
        Ok(Self { parts })
    }

    /// Non-increasing parts.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `r`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_elementary(&self) -> bool {
        self.parts.len() == 1
    }

    /// Frequency representation `j → μ_j`, zero multiplicities omitted.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut freq = BTreeMap::new();
        for &p in &self.parts {
            *freq.entry(p).or_insert(0) += 1;
        }
        freq
    }

    /// `"s1+s2+…+sr"`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            out.push_str(&alloc::format!("{p}"));
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({})", self.label())
    }
}

/// Parses `"2+1+1"`; whitespace around parts is ignored.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::BadLabel(s.into());
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|_| bad())
    }
}

pub fn to_frequency(s: &Partition) -> BTreeMap<usize, usize> {
    s.multiplicities()
}

/// All partitions of `n` in canonical (table) order. `n = 0` yields the
/// single empty partition.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

// Parts are chosen smallest-first at every depth, so output comes out in
// ascending lexicographic order without a sort.
fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in 1..=remaining.min(max_part) {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// `p(n)` via Euler's pentagonal-number recurrence.
///
/// # Panics
/// If `p(n)` does not fit in a `u128` (n beyond roughly 1400).
pub fn partition_count(n: usize) -> u128 {
    let mut p: Vec<i128> = alloc::vec![0; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let k = k as i128;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc
                .checked_add(sign * p[m - g1])
                .expect("partition count overflows u128");
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc = acc
                    .checked_add(sign * p[m - g2])
                    .expect("partition count overflows u128");
            }
        }
        p[m] = acc;
    }
    p[n] as u128
}

/// Asymptotic estimate `exp(π√(2n/3)) / (4n√3)`.
pub fn partition_count_estimate(n: usize) -> f64 {
    let n = n as f64;
    libm::exp(core::f64::consts::PI * libm::sqrt(2.0 * n / 3.0)) / (4.0 * n * libm::sqrt(3.0))
}

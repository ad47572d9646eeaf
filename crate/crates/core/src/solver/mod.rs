//! Solving for the coefficients `α_s`.
//!
//! Two routes:
//!
//! * [`general_algorithm`] draws `p(n)` random antisymmetric tensors in
//!   `d = 2n`, evaluates `T_k = Tr(β_k^{2n}) / ((2n)! m)` and
//!   `Z_k^(s) = Π_j ⟨B_k^{2 s_j}⟩` for each, and solves `Σ_s Z_k^(s) α_s = T_k`
//!   exactly.
//! * [`minimal_algorithm`] fixes `d = 2`, `B^{01} = 1`, and for each `n`
//!   obtains every non-elementary `α_s` from the product rule
//!   `α_s = Π_j α_j^{μ_j} / μ_j!`, leaving one equation in the single unknown
//!   `α_n`.

mod general;
mod minimal;
mod sampler;

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use general::{general_algorithm, general_algorithm_with, GeneralSystem};
pub use minimal::{minimal_algorithm, minimal_algorithm_with, MinimalRun};
pub use sampler::{random_antisym, SamplerConfig};

use crate::clifford::CliffordError;
use crate::contraction::ContractionError;
use crate::linalg::{LinalgError, Rational, RationalMatrix};
use crate::partitions::{enumerate_partitions, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("n must be at least 1")]
    ZeroOrder,
    #[error("general algorithm needs d >= 2, got d = {0}")]
    DimensionTooSmall(usize),
    /// The `Z` matrix stayed singular through every redraw.
    #[error("Z matrix for n = {n} is rank-deficient (rank {rank} < {size}) after {attempts} draws")]
    RankDeficient {
        n: usize,
        rank: usize,
        size: usize,
        attempts: u32,
        z: RationalMatrix,
    },
    #[error("no elementary coefficient for part {0}")]
    MissingElementary(usize),
    #[error("alpha_1 must equal 1, got {0}")]
    BadLeadingCoefficient(Rational),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `α_s` for every partition of one `n`, in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphaTable {
    n: usize,
    entries: Vec<(Partition, Rational)>,
}

impl AlphaTable {
    /// `values` in canonical partition order; must have `p(n)` entries.
    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Self, SolverError> {
        let parts = enumerate_partitions(n);
        if parts.len() != values.len() {
            return Err(LinalgError::BadLength {
                expected: parts.len(),
                actual: values.len(),
            }
            .into());
        }
        Ok(Self {
            n,
            entries: parts.into_iter().zip(values).collect(),
        })
    }

    /// Derive the whole table from elementary coefficients.
    pub fn from_elementary(n: usize, elementary: &ElementarySequence) -> Result<Self, SolverError> {
        let values = enumerate_partitions(n)
            .iter()
            .map(|s| recurrence_alpha(s, elementary))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_values(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: &Partition) -> Option<&Rational> {
        self.entries
            .binary_search_by(|(p, _)| p.cmp(s))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Lookup by label such as `"2+1+1"`.
    pub fn get_label(&self, label: &str) -> Option<&Rational> {
        self.get(&label.parse().ok()?)
    }

    pub fn elementary(&self) -> &Rational {
        self.get(&Partition::elementary(self.n))
            .expect("every table has its elementary entry")
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> + ExactSizeIterator {
        self.entries.iter().map(|(p, a)| (p, a))
    }
}

impl fmt::Debug for AlphaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter().map(|(p, a)| (p.label(), a))).finish()
    }
}

/// `α_1, α_2, …`: the coefficients of the single-part partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementarySequence(Vec<Rational>);

impl ElementarySequence {
    pub fn new(values: Vec<Rational>) -> Result<Self, SolverError> {
        match values.first() {
            Some(first) if !first.is_one() => Err(SolverError::BadLeadingCoefficient(first.clone())),
            _ => Ok(Self(values)),
        }
    }

    /// `α_j`, one-based.
    pub fn get(&self, j: usize) -> Option<&Rational> {
        j.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Keep only `α_1 … α_n`.
    pub fn truncated(&self, n: usize) -> Self {
        Self(self.0.iter().take(n).cloned().collect())
    }
}

/// `α_s = Π_j α_j^{μ_j} / μ_j!` over the frequency representation of `s`.
pub fn recurrence_alpha(s: &Partition, elementary: &ElementarySequence) -> Result<Rational, SolverError> {
    let mut acc = Rational::one();
    for (part, mult) in s.multiplicities() {
        let alpha = elementary.get(part).ok_or(SolverError::MissingElementary(part))?;
        acc *= alpha.pow(mult as i32)?;
        acc = acc.checked_div(&Rational::factorial(mult as u64))?;
    }
    Ok(acc)
}

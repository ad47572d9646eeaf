use alloc::vec::Vec;

use super::{recurrence_alpha, AlphaTable, ElementarySequence, SolverError};
use crate::clifford::{build_rep, AntisymTensor, Signature};
use crate::contraction::{even_cycle_traces, z_from_traces};
use crate::linalg::Rational;
use crate::partitions::{enumerate_partitions, Partition};

/// Output of [`minimal_algorithm`]: `α_1 … α_N` and the full table for every
/// `n ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRun {
    pub elementary: ElementarySequence,
    pub tables: Vec<AlphaTable>,
}

impl MinimalRun {
    pub fn table(&self, n: usize) -> Option<&AlphaTable> {
        n.checked_sub(1).and_then(|i| self.tables.get(i))
    }
}

/// Minimal algorithm with the default two-dimensional Minkowski metric.
pub fn minimal_algorithm(max_n: usize) -> Result<MinimalRun, SolverError> {
    minimal_algorithm_with(max_n, &Signature::minkowski(2))
}

/// Minimal algorithm with the single tensor `B^{01} = 1` in the given
/// signature (`d ≥ 2`).
pub fn minimal_algorithm_with(max_n: usize, sig: &Signature) -> Result<MinimalRun, SolverError> {
    if max_n == 0 {
        return Err(SolverError::ZeroOrder);
    }
    if sig.dim() < 2 {
        return Err(SolverError::DimensionTooSmall(sig.dim()));
    }
    let rep = build_rep(sig)?;
    let mut b = AntisymTensor::zero(sig.dim());
    b.set(0, 1, Rational::one());
    let traces = even_cycle_traces(sig, &b, max_n)?;
    let m = Rational::from(rep.m());

    let mut elementary: Vec<Rational> = Vec::with_capacity(max_n);
    let mut tables = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let t = rep
            .beta_power_trace(&b, 2 * n as u32)?
            .checked_div(&(Rational::factorial(2 * n as u64) * &m))?;

        let known = ElementarySequence(elementary.clone());
        let partitions = enumerate_partitions(n);
        let mut values = Vec::with_capacity(partitions.len());
        let mut rest = Rational::zero();
        for s in &partitions {
            if s.is_elementary() {
                values.push(None);
                continue;
            }
            let alpha = recurrence_alpha(s, &known)?;
            rest += z_from_traces(s, &traces) * &alpha;
            values.push(Some(alpha));
        }

        let z_top = z_from_traces(&Partition::elementary(n), &traces);
        assert!(
            !z_top.is_zero(),
            "Z^(n) vanished for B^01 = 1; the chain ⟨B^2n⟩ must be ±2"
        );
        let alpha_n = (t - rest).checked_div(&z_top)?;
        let values = values
            .into_iter()
            .map(|v| v.unwrap_or_else(|| alpha_n.clone()))
            .collect();
        elementary.push(alpha_n);
        tables.push(AlphaTable::from_values(n, values)?);
    }

    Ok(MinimalRun {
        elementary: ElementarySequence::new(elementary)?,
        tables,
    })
}

use alloc::vec::Vec;

use super::{random_antisym, AlphaTable, SamplerConfig, SolverError};
use crate::clifford::{build_rep, AntisymTensor, GammaRep, Signature};
use crate::contraction::z_vector;
use crate::linalg::{solve_rational_system, LinalgError, Rational, RationalMatrix};
use crate::partitions::partition_count;

/// The linear system `Σ_s Z_k^(s) α_s = T_k` for one set of tensors. Row `k`
/// belongs to `tensors[k]`; columns follow canonical partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSystem {
    pub n: usize,
    pub z: RationalMatrix,
    pub t: Vec<Rational>,
}

impl GeneralSystem {
    pub fn from_tensors(rep: &GammaRep, n: usize, tensors: &[AntisymTensor]) -> Result<Self, SolverError> {
        let sig = rep.signature();
        let norm = Rational::factorial(2 * n as u64) * Rational::from(rep.m());
        let mut rows = Vec::with_capacity(tensors.len());
        let mut t = Vec::with_capacity(tensors.len());
        for b in tensors {
            let trace = rep.beta_power_trace(b, 2 * n as u32)?;
            t.push(trace.checked_div(&norm)?);
            rows.push(z_vector(sig, b, n)?.values().cloned().collect());
        }
        Ok(Self {
            n,
            z: RationalMatrix::from_rows(rows)?,
            t,
        })
    }

    pub fn solve(&self) -> Result<AlphaTable, SolverError> {
        let alpha = solve_rational_system(&self.z, &self.t)?;
        AlphaTable::from_values(self.n, alpha)
    }
}

/// General algorithm in the default setting: Minkowski signature, `d = 2n`.
pub fn general_algorithm(n: usize, cfg: &SamplerConfig) -> Result<AlphaTable, SolverError> {
    general_algorithm_with(n, cfg, &Signature::minkowski(2 * n))
}

/// General algorithm in an arbitrary signature (and hence dimension).
///
/// Below `d = 2n` the tensors do not have enough independent invariants and
/// the `Z` matrix is singular for every draw; that surfaces as
/// [`SolverError::RankDeficient`] once the redraw budget is spent.
pub fn general_algorithm_with(n: usize, cfg: &SamplerConfig, sig: &Signature) -> Result<AlphaTable, SolverError> {
    if n == 0 {
        return Err(SolverError::ZeroOrder);
    }
    let d = sig.dim();
    if d < 2 {
        return Err(SolverError::DimensionTooSmall(d));
    }
    let rep = build_rep(sig)?;
    let p = partition_count(n) as usize;
    let attempts = cfg.max_resamples.max(1) + 1;
    let mut last = None;
    for attempt in 0..attempts {
        let base = u64::from(attempt) * p as u64;
        let tensors: Vec<AntisymTensor> = (0..p as u64).map(|i| random_antisym(d, cfg, base + i)).collect();
        let system = GeneralSystem::from_tensors(&rep, n, &tensors)?;
        match system.solve() {
            Ok(table) => return Ok(table),
            Err(SolverError::Linalg(LinalgError::RankDeficient { rank, size })) => {
                last = Some((rank, size, system.z));
            }
            Err(e) => return Err(e),
        }
    }
    let (rank, size, z) = last.expect("at least one attempt");
    Err(SolverError::RankDeficient {
        n,
        rank,
        size,
        attempts,
        z,
    })
}

//! Brute-force checks of the trace formula against explicit Gamma-matrix
//! products.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use thiserror::Error;

use crate::clifford::{build_rep, real_part, AntisymTensor, CliffordError, GammaRep, Signature, SignatureKind};
use crate::contraction::{contraction_sum, cycle_trace, ordered_trace_sum, ContractionError};
use crate::linalg::{ComplexRational, ExactMatrix, GaussianInt, LinalgError, Matrix, Rational};
use crate::solver::{general_algorithm_with, random_antisym, AlphaTable, SamplerConfig, SolverError};

/// Largest number of β-matrices the symmetrized trace will enumerate.
pub const MAX_SYMMETRIZED: usize = 8;
/// Largest `n` for the master-formula and pseudoscalar checks.
pub const MAX_VERIFY_N: usize = 4;

// Draw-index offsets so verification tensors never coincide with the
// solver's own draws for the same seed.
const MASTER_STREAM: u64 = 1 << 32;
const PSEUDOSCALAR_STREAM: u64 = 2 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("symmetrized trace needs 1..={MAX_SYMMETRIZED} tensors, got {0}")]
    TensorCount(usize),
    #[error("n = {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("every trial had a vanishing epsilon contraction")]
    NoUsableTrial,
    #[error("pseudoscalar ratio changed between trials: {first} vs {other}")]
    InconsistentRatio {
        first: Box<ComplexRational>,
        other: Box<ComplexRational>,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One exact comparison of the two sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub d: usize,
    pub signature: Signature,
    pub seed: Option<u64>,
    pub trial: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub matched: bool,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    fn new(n: usize, signature: Signature, seed: Option<u64>, trial: usize, lhs: Rational, rhs: Rational) -> Self {
        Self {
            n,
            d: signature.dim(),
            signature,
            seed,
            trial,
            matched: lhs == rhs,
            lhs,
            rhs,
            elapsed: None,
        }
    }
}

/// `(1/k!) Σ_π Tr(lead · β_π(1) ⋯ β_π(k))` as a Gaussian rational.
fn symmetrized_trace_with_lead(
    rep: &GammaRep,
    lead: Option<&ExactMatrix>,
    tensors: &[AntisymTensor],
) -> Result<ComplexRational, VerifyError> {
    let k = tensors.len();
    if k == 0 || k > MAX_SYMMETRIZED {
        return Err(VerifyError::TensorCount(k));
    }
    let betas = tensors.iter().map(|t| rep.beta(t)).collect::<Result<Vec<_>, _>>()?;
    let blocks = [k];
    let norm = Rational::factorial(k as u64);

    // Multilinear in the β's: scale each to Gaussian-integer entries.
    let scaled: Option<Vec<(Matrix<GaussianInt>, Rational)>> = betas.iter().map(ExactMatrix::to_gaussian).collect();
    let scaled_lead = match lead {
        Some(l) => l.to_gaussian().map(Some),
        None => Some(None),
    };
    if let (Some(scaled), Some(scaled_lead)) = (scaled, scaled_lead) {
        let factor: Rational = scaled.iter().map(|(_, s)| s).product::<Rational>()
            * scaled_lead.as_ref().map_or(Rational::one(), |(_, s)| s.clone());
        let mats: Vec<Matrix<GaussianInt>> = scaled.into_iter().map(|(m, _)| m).collect();
        match ordered_trace_sum(&mats, &blocks, scaled_lead.as_ref().map(|(m, _)| m)) {
            Ok(sum) => {
                let total = sum.to_exact();
                return Ok(total.scale(&(factor * &norm).recip()?));
            }
            Err(LinalgError::Overflow) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let sum = ordered_trace_sum(&betas, &blocks, lead)?;
    Ok(sum.scale(&norm.recip()?))
}

/// `Tr{β_1 ⋯ β_k}` by explicit enumeration of all `k!` orderings.
pub fn symmetrized_trace_bruteforce(rep: &GammaRep, tensors: &[AntisymTensor]) -> Result<Rational, VerifyError> {
    Ok(real_part(symmetrized_trace_with_lead(rep, None, tensors)?)?)
}

/// Right-hand side of the master formula: `m · Σ_s α_s B^(s)`.
pub fn master_formula_rhs(
    rep: &GammaRep,
    table: &AlphaTable,
    tensors: &[AntisymTensor],
) -> Result<Rational, VerifyError> {
    let mut total = Rational::zero();
    for (s, alpha) in table.iter() {
        total += alpha * contraction_sum(rep.signature(), s, tensors)?;
    }
    Ok(total * Rational::from(rep.m()))
}

fn check_order(n: usize, min: usize) -> Result<(), VerifyError> {
    if (min..=MAX_VERIFY_N).contains(&n) {
        Ok(())
    } else {
        Err(VerifyError::OrderOutOfRange {
            n,
            min,
            max: MAX_VERIFY_N,
        })
    }
}

/// Brute-force check of the master formula in the default Minkowski metric.
pub fn verify_master_formula(
    n: usize,
    trials: usize,
    cfg: &SamplerConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    verify_master_formula_with(n, trials, cfg, &SignatureKind::Minkowski)
}

/// For each trial, draws `2n` tensors in `d = 2n` and compares the
/// brute-force symmetrized trace with the formula evaluated using
/// coefficients from the general algorithm (same seed).
pub fn verify_master_formula_with(
    n: usize,
    trials: usize,
    cfg: &SamplerConfig,
    kind: &SignatureKind,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let check = MasterFormulaCheck::new(n, cfg, kind)?;
    (0..trials).map(|trial| check.trial(trial)).collect()
}

/// Setup shared by all trials of a master-formula check: the
/// representation in `d = 2n` and the coefficient table.
#[derive(Debug, Clone)]
pub struct MasterFormulaCheck {
    n: usize,
    cfg: SamplerConfig,
    rep: GammaRep,
    table: AlphaTable,
}

impl MasterFormulaCheck {
    pub fn new(n: usize, cfg: &SamplerConfig, kind: &SignatureKind) -> Result<Self, VerifyError> {
        check_order(n, 1)?;
        let sig = kind.for_dim(2 * n)?;
        let rep = build_rep(&sig)?;
        let table = general_algorithm_with(n, cfg, &sig)?;
        Ok(Self {
            n,
            cfg: *cfg,
            rep,
            table,
        })
    }

    /// Check against a caller-supplied table instead of solving for one.
    pub fn with_table(table: AlphaTable, cfg: &SamplerConfig, kind: &SignatureKind) -> Result<Self, VerifyError> {
        let n = table.n();
        check_order(n, 1)?;
        let rep = build_rep(&kind.for_dim(2 * n)?)?;
        Ok(Self {
            n,
            cfg: *cfg,
            rep,
            table,
        })
    }

    pub fn table(&self) -> &AlphaTable {
        &self.table
    }

    pub fn rep(&self) -> &GammaRep {
        &self.rep
    }

    /// The `2n` tensors used by trial number `trial`.
    pub fn tensors(&self, trial: usize) -> Vec<AntisymTensor> {
        let count = 2 * self.n as u64;
        let base = MASTER_STREAM + trial as u64 * count;
        (0..count)
            .map(|i| random_antisym(2 * self.n, &self.cfg, base + i))
            .collect()
    }

    pub fn trial(&self, trial: usize) -> Result<VerificationReport, VerifyError> {
        let tensors = self.tensors(trial);
        let lhs = symmetrized_trace_bruteforce(&self.rep, &tensors)?;
        let rhs = master_formula_rhs(&self.rep, &self.table, &tensors)?;
        Ok(VerificationReport::new(
            self.n,
            self.rep.signature().clone(),
            Some(self.cfg.seed),
            trial,
            lhs,
            rhs,
        ))
    }
}

/// `A^{ab} B^{cd} Tr{Γ_ab Γ_cd}` summed literally over all index values,
/// against `2m ⟨A B⟩`.
pub fn verify_rank2_identity(
    rep: &GammaRep,
    a: &AntisymTensor,
    b: &AntisymTensor,
) -> Result<VerificationReport, VerifyError> {
    let d = rep.dim();
    for t in [a, b] {
        if t.dim() != d {
            return Err(CliffordError::DimensionMismatch {
                expected: d,
                actual: t.dim(),
            }
            .into());
        }
    }
    let gab: Vec<ExactMatrix> = (0..d * d)
        .map(|idx| rep.gamma_ab(idx / d, idx % d))
        .collect::<Result<_, _>>()?;
    let half = Rational::new(1, 2)?;
    let mut lhs = ComplexRational::zero();
    for (i, x) in gab.iter().enumerate() {
        let coeff_a = a.get(i / d, i % d);
        if coeff_a.is_zero() {
            continue;
        }
        for (j, y) in gab.iter().enumerate() {
            let coeff_b = b.get(j / d, j % d);
            if coeff_b.is_zero() {
                continue;
            }
            let sym = (x.trace_of_product(y)? + y.trace_of_product(x)?).scale(&half);
            lhs = lhs + sym.scale(&(coeff_a * coeff_b));
        }
    }
    let lhs = real_part(lhs)?;
    let rhs = Rational::from(2 * rep.m()) * cycle_trace(rep.signature(), &[a.clone(), b.clone()])?;
    Ok(VerificationReport::new(1, rep.signature().clone(), None, 0, lhs, rhs))
}

/// `ε_{a1 b1 ⋯ an bn} B_1^{a1 b1} ⋯ B_n^{an bn}` with `ε_{01⋯(2n−1)} = +1`,
/// by direct summation over all `(2n)!` index permutations. The dimension
/// must be `2n`.
pub fn epsilon_contraction(tensors: &[AntisymTensor]) -> Result<Rational, VerifyError> {
    let d = 2 * tensors.len();
    if let Some(bad) = tensors.iter().find(|t| t.dim() != d) {
        return Err(CliffordError::DimensionMismatch {
            expected: d,
            actual: bad.dim(),
        }
        .into());
    }
    let mut slots = Vec::with_capacity(d);
    let mut used = vec![false; d];
    let mut total = Rational::zero();
    epsilon_walk(tensors, &mut slots, &mut used, false, Rational::one(), &mut total);
    Ok(total)
}

fn epsilon_walk(
    tensors: &[AntisymTensor],
    slots: &mut Vec<usize>,
    used: &mut [bool],
    odd: bool,
    weight: Rational,
    total: &mut Rational,
) {
    let d = used.len();
    if slots.len() == d {
        if odd {
            *total -= weight;
        } else {
            *total += weight;
        }
        return;
    }
    for v in 0..d {
        if used[v] {
            continue;
        }
        // Inversions gained by placing v after everything already placed.
        let flips = slots.iter().filter(|&&u| u > v).count();
        let next_odd = odd ^ (flips % 2 == 1);
        let pos = slots.len();
        let next_weight = if pos % 2 == 1 {
            let entry = tensors[pos / 2].get(slots[pos - 1], v);
            if entry.is_zero() {
                continue;
            }
            &weight * entry
        } else {
            weight.clone()
        };
        used[v] = true;
        slots.push(v);
        epsilon_walk(tensors, slots, used, next_odd, next_weight, total);
        slots.pop();
        used[v] = false;
    }
}

/// Ratio `Tr(Γ_* {β_1 ⋯ β_n}) / ε-contraction`, default Minkowski metric.
pub fn pseudoscalar_ratio(n: usize, trials: usize, cfg: &SamplerConfig) -> Result<ComplexRational, VerifyError> {
    pseudoscalar_ratio_with(n, trials, cfg, &SignatureKind::Minkowski)
}

/// Draws `n` tensors per trial in `d = 2n`; returns the ratio after checking
/// it is the same for every trial whose ε-contraction is nonzero. The value
/// depends on the orientation of `ε`, the metric and the phase of `Γ_*`.
pub fn pseudoscalar_ratio_with(
    n: usize,
    trials: usize,
    cfg: &SamplerConfig,
    kind: &SignatureKind,
) -> Result<ComplexRational, VerifyError> {
    check_order(n, 2)?;
    let d = 2 * n;
    let rep = build_rep(&kind.for_dim(d)?)?;
    let star = rep.chirality()?;
    let mut ratio: Option<ComplexRational> = None;
    for trial in 0..trials {
        let base = PSEUDOSCALAR_STREAM + (trial * n) as u64;
        let tensors: Vec<AntisymTensor> = (0..n as u64).map(|i| random_antisym(d, cfg, base + i)).collect();
        let eps = epsilon_contraction(&tensors)?;
        if eps.is_zero() {
            continue;
        }
        let lhs = symmetrized_trace_with_lead(&rep, Some(&star), &tensors)?;
        let this = lhs.scale(&eps.recip()?);
        match &ratio {
            None => ratio = Some(this),
            Some(first) if *first != this => {
                return Err(VerifyError::InconsistentRatio {
                    first: Box::new(first.clone()),
                    other: Box::new(this),
                })
            }
            Some(_) => {}
        }
    }
    ratio.ok_or(VerifyError::NoUsableTrial)
}

/// `Tr(Γ_* {β_1 ⋯ β_k})` by brute force.
pub fn pseudoscalar_trace(rep: &GammaRep, tensors: &[AntisymTensor]) -> Result<ComplexRational, VerifyError> {
    let star = rep.chirality()?;
    symmetrized_trace_with_lead(rep, Some(&star), tensors)
}

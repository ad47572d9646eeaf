//! Explicit Gamma-matrix representations and β-matrices.
//!
//! The representation is the usual tensor-product (Jordan–Wigner) tower of
//! Pauli matrices: for `d = 2k`,
//!
//! ```text
//! Γ_{2j}   = σ3 ⊗ … ⊗ σ3 ⊗ σ1 ⊗ 1 ⊗ … ⊗ 1
//! Γ_{2j+1} = σ3 ⊗ … ⊗ σ3 ⊗ σ2 ⊗ 1 ⊗ … ⊗ 1      (j leading σ3 factors)
//! ```
//!
//! Odd `d` appends the (phase-fixed) chirality element of the `d − 1`
//! construction. Directions with `η_aa = −1` get an extra factor of `i`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::linalg::{power_trace, ComplexRational, ExactMatrix, LinalgError, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("metric entries must be +1 or -1, got {0}")]
    BadMetricEntry(i8),
    #[error("dimension must be at least {min}, got {d}")]
    DimensionTooSmall { d: usize, min: usize },
    #[error("index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("dimension mismatch: expected d = {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("chirality element requires even d, got {0}")]
    OddDimension(usize),
    #[error("signature pattern has {pattern} entries but d = {d}")]
    PatternLength { pattern: usize, d: usize },
    #[error("unknown signature {0:?} (expected minkowski, euclidean, or a +/- pattern)")]
    UnknownSignature(String),
    #[error("trace has nonzero imaginary part {0}; representation is inconsistent")]
    NonRealTrace(Box<ComplexRational>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Diagonal metric `η_ab`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    eta: Vec<i8>,
}

impl Signature {
    pub fn new(eta: Vec<i8>) -> Result<Self, CliffordError> {
        if let Some(&bad) = eta.iter().find(|&&e| e != 1 && e != -1) {
            return Err(CliffordError::BadMetricEntry(bad));
        }
        Ok(Self { eta })
    }

    pub fn euclidean(d: usize) -> Self {
        Self { eta: vec![1; d] }
    }

    /// `(−, +, …, +)`.
    pub fn minkowski(d: usize) -> Self {
        let mut eta = vec![1; d];
        if let Some(first) = eta.first_mut() {
            *first = -1;
        }
        Self { eta }
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self, a: usize) -> i8 {
        self.eta[a]
    }

    pub fn entries(&self) -> &[i8] {
        &self.eta
    }

    /// Number of timelike (`η = −1`) directions.
    pub fn negatives(&self) -> usize {
        self.eta.iter().filter(|&&e| e < 0).count()
    }
}

/// `-+++` style.
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.eta {
            f.write_str(if e < 0 { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

/// A signature family, resolved to a concrete [`Signature`] once the
/// dimension is known.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SignatureKind {
    #[default]
    Minkowski,
    Euclidean,
    /// A fixed pattern; only valid in its own dimension.
    Explicit(Signature),
}

impl SignatureKind {
    pub fn for_dim(&self, d: usize) -> Result<Signature, CliffordError> {
        match self {
            Self::Minkowski => Ok(Signature::minkowski(d)),
            Self::Euclidean => Ok(Signature::euclidean(d)),
            Self::Explicit(sig) if sig.dim() == d => Ok(sig.clone()),
            Self::Explicit(sig) => Err(CliffordError::PatternLength { pattern: sig.dim(), d }),
        }
    }
}

/// `minkowski`, `euclidean`, or an explicit pattern such as `-+++`.
impl FromStr for SignatureKind {
    type Err = CliffordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minkowski" | "lorentzian" => Ok(Self::Minkowski),
            "euclidean" | "riemannian" => Ok(Self::Euclidean),
            p if !p.is_empty() && p.chars().all(|c| c == '+' || c == '-') => Ok(Self::Explicit(Signature::new(
                p.chars().map(|c| if c == '-' { -1 } else { 1 }).collect(),
            )?)),
            _ => Err(CliffordError::UnknownSignature(s.into())),
        }
    }
}

/// Antisymmetric tensor `B^{ab}` with both indices up.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AntisymTensor {
    d: usize,
    upper: Vec<Rational>,
}

impl AntisymTensor {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            upper: vec![Rational::zero(); d * d],
        }
    }

    /// From the strictly upper triangle, row by row: `B^{01}, B^{02}, …,
    /// B^{12}, …`.
    pub fn from_upper_triangle(d: usize, entries: impl IntoIterator<Item = Rational>) -> Result<Self, CliffordError> {
        let mut t = Self::zero(d);
        let mut it = entries.into_iter();
        let expected = d * d.saturating_sub(1) / 2;
        let mut count = 0;
        for a in 0..d {
            for b in a + 1..d {
                let v = it.next().ok_or(LinalgError::BadLength {
                    expected,
                    actual: count,
                })?;
                t.set(a, b, v);
                count += 1;
            }
        }
        if it.next().is_some() {
            return Err(LinalgError::BadLength {
                expected,
                actual: count + 1,
            }
            .into());
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `B^{ab}`.
    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.upper[a * self.d + b]
    }

    /// Sets `B^{ab} = v` and `B^{ba} = −v`. Diagonal entries must be zero.
    pub fn set(&mut self, a: usize, b: usize, v: Rational) {
        assert!(a != b || v.is_zero(), "antisymmetric tensor diagonal must vanish");
        self.upper[b * self.d + a] = -&v;
        self.upper[a * self.d + b] = v;
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            d: self.d,
            upper: self.upper.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Rational::is_zero)
    }

    /// The mixed tensor `(B)^a_b = B^{ac} η_{cb}` as a `d × d` matrix.
    pub fn mixed(&self, sig: &Signature) -> Result<RationalMatrix, CliffordError> {
        if sig.dim() != self.d {
            return Err(CliffordError::DimensionMismatch {
                expected: sig.dim(),
                actual: self.d,
            });
        }
        Ok(RationalMatrix::from_fn(self.d, self.d, |a, b| {
            let v = self.get(a, b);
            if sig.eta(b) < 0 {
                -v
            } else {
                v.clone()
            }
        }))
    }
}

impl fmt::Debug for AntisymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for a in 0..self.d {
            for b in a + 1..self.d {
                if !self.get(a, b).is_zero() {
                    map.entry(&(a, b), self.get(a, b));
                }
            }
        }
        map.finish()
    }
}

/// Gamma matrices `Γ_0 … Γ_{d−1}` satisfying `{Γ_a, Γ_b} = 2 η_ab 𝟙`.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaRep {
    sig: Signature,
    m: usize,
    gammas: Vec<ExactMatrix>,
}

fn cint(re: i64, im: i64) -> ComplexRational {
    ComplexRational::new(re.into(), im.into())
}

fn pauli() -> [ExactMatrix; 3] {
    let m = |e: [ComplexRational; 4]| ExactMatrix::new(2, 2, e.to_vec()).expect("2x2");
    [
        m([cint(0, 0), cint(1, 0), cint(1, 0), cint(0, 0)]),
        m([cint(0, 0), cint(0, -1), cint(0, 1), cint(0, 0)]),
        m([cint(1, 0), cint(0, 0), cint(0, 0), cint(-1, 0)]),
    ]
}

/// Euclidean generators for even `d = 2k`, each squaring to `+𝟙`.
fn euclidean_even(k: usize) -> Vec<ExactMatrix> {
    let [s1, s2, s3] = pauli();
    let id2 = ExactMatrix::identity(2);
    let mut out = Vec::with_capacity(2 * k);
    for j in 0..k {
        for middle in [&s1, &s2] {
            let mut g = ExactMatrix::identity(1);
            for site in 0..k {
                let factor = match site.cmp(&j) {
                    core::cmp::Ordering::Less => &s3,
                    core::cmp::Ordering::Equal => middle,
                    core::cmp::Ordering::Greater => &id2,
                };
                g = g.kron(factor).expect("exact kron");
            }
            out.push(g);
        }
    }
    out
}

fn ordered_product(mats: &[ExactMatrix], size: usize) -> ExactMatrix {
    mats.iter()
        .fold(ExactMatrix::identity(size), |acc, g| acc.mul(g).expect("square"))
}

/// Deterministic representation for the given signature.
pub fn build_rep(sig: &Signature) -> Result<GammaRep, CliffordError> {
    let d = sig.dim();
    if d == 0 {
        return Err(CliffordError::DimensionTooSmall { d, min: 1 });
    }
    let k = d / 2;
    let m = 1usize << k;
    let mut gammas = euclidean_even(k);
    if d % 2 == 1 {
        let mut extra = ordered_product(&gammas, m);
        if extra.mul(&extra)? != ExactMatrix::identity(m) {
            extra = extra.scale(&ComplexRational::i())?;
        }
        gammas.push(extra);
    }
    for (a, g) in gammas.iter_mut().enumerate() {
        if sig.eta(a) < 0 {
            *g = g.scale(&ComplexRational::i())?;
        }
    }
    Ok(GammaRep {
        sig: sig.clone(),
        m,
        gammas,
    })
}

impl GammaRep {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    /// Spinor dimension `m = 2^⌊d/2⌋`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gamma(&self, a: usize) -> Result<&ExactMatrix, CliffordError> {
        self.gammas.get(a).ok_or(CliffordError::IndexOutOfRange {
            index: a,
            d: self.dim(),
        })
    }

    pub fn gammas(&self) -> &[ExactMatrix] {
        &self.gammas
    }

    /// Checks `Γ_a Γ_b + Γ_b Γ_a = 2 η_ab 𝟙` for all pairs. Returns the first
    /// failing pair.
    pub fn check_clifford(&self) -> Result<(), (usize, usize)> {
        let d = self.dim();
        let id = ExactMatrix::identity(self.m);
        for a in 0..d {
            for b in a..d {
                let ab = self.gammas[a].mul(&self.gammas[b]).map_err(|_| (a, b))?;
                let ba = self.gammas[b].mul(&self.gammas[a]).map_err(|_| (a, b))?;
                let lhs = ab.add(&ba).map_err(|_| (a, b))?;
                let expected = if a == b {
                    id.scale(&cint(2 * self.sig.eta(a) as i64, 0)).map_err(|_| (a, b))?
                } else {
                    ExactMatrix::zeros(self.m, self.m)
                };
                if lhs != expected {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    /// `Γ_ab = (Γ_a Γ_b − Γ_b Γ_a) / 2`.
    pub fn gamma_ab(&self, a: usize, b: usize) -> Result<ExactMatrix, CliffordError> {
        let ga = self.gamma(a)?;
        let gb = self.gamma(b)?;
        let commutator = ga.mul(gb)?.sub(&gb.mul(ga)?)?;
        Ok(commutator.scale(&ComplexRational::from_real(Rational::new(1, 2)?))?)
    }

    /// `β = B^{ab} Γ_ab`, summed over all ordered pairs.
    pub fn beta(&self, b: &AntisymTensor) -> Result<ExactMatrix, CliffordError> {
        let d = self.dim();
        if b.dim() != d {
            return Err(CliffordError::DimensionMismatch {
                expected: d,
                actual: b.dim(),
            });
        }
        let mut beta = ExactMatrix::zeros(self.m, self.m);
        for x in 0..d {
            for y in 0..d {
                let coeff = b.get(x, y);
                if x == y || coeff.is_zero() {
                    continue;
                }
                let term = self.gamma_ab(x, y)?.scale(&ComplexRational::from_real(coeff.clone()))?;
                beta = beta.add(&term)?;
            }
        }
        Ok(beta)
    }

    /// `Γ_* = Γ_0 Γ_1 ⋯ Γ_{d−1}`, no extra phase.
    pub fn chirality(&self) -> Result<ExactMatrix, CliffordError> {
        if self.dim() % 2 == 1 {
            return Err(CliffordError::OddDimension(self.dim()));
        }
        Ok(ordered_product(&self.gammas, self.m))
    }

    /// `Tr(β^k)`; the result must be real.
    pub fn beta_power_trace(&self, b: &AntisymTensor, k: u32) -> Result<Rational, CliffordError> {
        let beta = self.beta(b)?;
        let tr = power_trace(&beta, k)?;
        real_part(tr)
    }
}

pub(crate) fn real_part(z: ComplexRational) -> Result<Rational, CliffordError> {
    if z.is_real() {
        Ok(z.re)
    } else {
        Err(CliffordError::NonRealTrace(Box::new(z)))
    }
}

impl fmt::Debug for GammaRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaRep")
            .field("sig", &self.sig)
            .field("m", &self.m)
            .finish_non_exhaustive()
    }
}

/// Free-function form of [`GammaRep::gamma_ab`].
pub fn gamma_ab(rep: &GammaRep, a: usize, b: usize) -> Result<ExactMatrix, CliffordError> {
    rep.gamma_ab(a, b)
}

/// Free-function form of [`GammaRep::beta`].
pub fn build_beta(rep: &GammaRep, b: &AntisymTensor) -> Result<ExactMatrix, CliffordError> {
    rep.beta(b)
}

pub fn chirality(rep: &GammaRep) -> Result<ExactMatrix, CliffordError> {
    rep.chirality()
}

pub fn beta_power_trace(rep: &GammaRep, b: &AntisymTensor, k: u32) -> Result<Rational, CliffordError> {
    rep.beta_power_trace(b, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(d: usize, a: usize, b: usize, v: i64) -> AntisymTensor {
        let mut t = AntisymTensor::zero(d);
        t.set(a, b, v.into());
        t
    }

    fn tensor(d: usize, entries: &[i64]) -> AntisymTensor {
        AntisymTensor::from_upper_triangle(d, entries.iter().map(|&x| Rational::from(x))).unwrap()
    }

    #[test]
    fn euclidean_two_dimensions() {
        let rep = build_rep(&Signature::euclidean(2)).unwrap();
        assert_eq!(rep.m(), 2);
        let id = ExactMatrix::identity(2);
        for g in rep.gammas() {
            assert_eq!(g.mul(g).unwrap(), id);
        }
        assert!(rep.check_clifford().is_ok());
        let g01 = rep.gamma_ab(0, 1).unwrap();
        assert_eq!(g01, rep.gamma(0).unwrap().mul(rep.gamma(1).unwrap()).unwrap());
    }

    #[test]
    fn spinor_size() {
        assert_eq!(build_rep(&Signature::minkowski(6)).unwrap().m(), 8);
        assert_eq!(build_rep(&Signature::minkowski(7)).unwrap().m(), 8);
        assert_eq!(build_rep(&Signature::euclidean(1)).unwrap().m(), 1);
    }

    #[test]
    fn clifford_relation_many_signatures() {
        for d in 1..=9 {
            for sig in [Signature::euclidean(d), Signature::minkowski(d)] {
                let rep = build_rep(&sig).unwrap();
                assert_eq!(rep.check_clifford(), Ok(()), "{sig:?}");
            }
        }
        let odd = Signature::new(vec![1, -1, -1, 1, -1]).unwrap();
        assert_eq!(build_rep(&odd).unwrap().check_clifford(), Ok(()));
    }

    #[test]
    fn representation_is_deterministic() {
        let sig = Signature::minkowski(6);
        assert_eq!(build_rep(&sig).unwrap(), build_rep(&sig).unwrap());
    }

    #[test]
    fn gamma_ab_antisymmetry() {
        let rep = build_rep(&Signature::minkowski(4)).unwrap();
        for a in 0..4 {
            assert!(rep.gamma_ab(a, a).unwrap().is_zero());
            for b in 0..4 {
                let ab = rep.gamma_ab(a, b).unwrap();
                let ba = rep.gamma_ab(b, a).unwrap();
                assert_eq!(ab.add(&ba).unwrap(), ExactMatrix::zeros(4, 4));
            }
        }
        assert!(matches!(
            rep.gamma_ab(0, 4),
            Err(CliffordError::IndexOutOfRange { index: 4, d: 4 })
        ));
    }

    #[test]
    fn beta_basics() {
        let rep = build_rep(&Signature::euclidean(2)).unwrap();
        assert!(rep.beta(&AntisymTensor::zero(2)).unwrap().is_zero());
        let beta = rep.beta(&single(2, 0, 1, 1)).unwrap();
        let twice = rep.gamma_ab(0, 1).unwrap().scale(&cint(2, 0)).unwrap();
        assert_eq!(beta, twice);
        assert!(matches!(
            rep.beta(&AntisymTensor::zero(3)),
            Err(CliffordError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn beta_power_traces_in_two_dimensions() {
        let rep = build_rep(&Signature::euclidean(2)).unwrap();
        let b = single(2, 0, 1, 1);
        assert_eq!(rep.beta_power_trace(&b, 2).unwrap(), -8);
        assert_eq!(rep.beta_power_trace(&b, 4).unwrap(), 32);
        for k in [1, 3, 5, 7] {
            assert_eq!(rep.beta_power_trace(&b, k).unwrap(), 0);
        }
        // Closed form 2·(−4)^n.
        for n in 0..10u32 {
            let expected = Rational::from(2) * Rational::from(-4).pow(n as i32).unwrap();
            assert_eq!(rep.beta_power_trace(&b, 2 * n).unwrap(), expected);
        }
    }

    #[test]
    fn odd_powers_vanish_in_higher_dimensions() {
        let rep = build_rep(&Signature::minkowski(6)).unwrap();
        let b = tensor(6, &[1, -2, 3, 0, 4, 5, -6, 7, 1, 2, -3, 0, 9, 8, -1]);
        for k in [1, 3, 5] {
            assert_eq!(rep.beta_power_trace(&b, k).unwrap(), 0);
        }
    }

    #[test]
    fn chirality_properties() {
        for d in [2, 4, 6, 8] {
            for sig in [Signature::euclidean(d), Signature::minkowski(d)] {
                let rep = build_rep(&sig).unwrap();
                let star = rep.chirality().unwrap();
                for g in rep.gammas() {
                    let anti = star.mul(g).unwrap().add(&g.mul(&star).unwrap()).unwrap();
                    assert!(anti.is_zero());
                }
                // Γ_*² = (−1)^{d(d−1)/2} · Π η_aa
                let sign = if (d * (d - 1) / 2 + sig.negatives()) % 2 == 0 {
                    1
                } else {
                    -1
                };
                let square = star.mul(&star).unwrap();
                assert_eq!(square, ExactMatrix::identity(rep.m()).scale(&cint(sign, 0)).unwrap());
                assert!(star.trace().unwrap().is_zero());
            }
        }
        let odd = build_rep(&Signature::euclidean(3)).unwrap();
        assert_eq!(odd.chirality(), Err(CliffordError::OddDimension(3)));
    }

    #[test]
    fn signature_parsing() {
        assert_eq!("minkowski".parse::<SignatureKind>().unwrap(), SignatureKind::Minkowski);
        assert_eq!("Euclidean".parse::<SignatureKind>().unwrap(), SignatureKind::Euclidean);
        let explicit: SignatureKind = "-++".parse().unwrap();
        assert_eq!(explicit.for_dim(3).unwrap(), Signature::minkowski(3));
        assert!(explicit.for_dim(4).is_err());
        assert!("x".parse::<SignatureKind>().is_err());
        assert_eq!(Signature::new(vec![1, 2]), Err(CliffordError::BadMetricEntry(2)));
    }

    #[test]
    fn mixed_lowers_second_index() {
        let sig = Signature::minkowski(2);
        let m = single(2, 0, 1, 1).mixed(&sig).unwrap();
        assert_eq!(m[(0, 1)], 1);
        assert_eq!(m[(1, 0)], 1);
        let e = single(2, 0, 1, 1).mixed(&Signature::euclidean(2)).unwrap();
        assert_eq!(e[(1, 0)], -1);
    }

    proptest! {
        #[test]
        fn even_power_traces_are_real(entries in prop::collection::vec(-9i64..=9, 15), minkowski in any::<bool>(), k in 1u32..4) {
            let sig = if minkowski { Signature::minkowski(6) } else { Signature::euclidean(6) };
            let rep = build_rep(&sig).unwrap();
            prop_assert!(rep.beta_power_trace(&tensor(6, &entries), 2 * k).is_ok());
        }

        #[test]
        fn power_trace_scales(entries in prop::collection::vec(-5i64..=5, 6), lambda in -7i64..=7, k in 0u32..7) {
            let rep = build_rep(&Signature::minkowski(4)).unwrap();
            let b = tensor(4, &entries);
            let lam = Rational::from(lambda);
            let scaled = b.scale(&lam);
            prop_assert_eq!(rep.beta(&scaled).unwrap(), rep.beta(&b).unwrap().scale(&ComplexRational::from_real(lam.clone())).unwrap());
            let lhs = rep.beta_power_trace(&scaled, k).unwrap();
            let rhs = lam.pow(k as i32).unwrap() * rep.beta_power_trace(&b, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn beta_is_traceless(entries in prop::collection::vec(-9i64..=9, 10)) {
            let rep = build_rep(&Signature::minkowski(5)).unwrap();
            prop_assert!(rep.beta(&tensor(5, &entries)).unwrap().trace().unwrap().is_zero());
        }
    }
}

//! Closed index chains `⟨B_1 ⋯ B_q⟩`, the per-partition products `Z^(s)`,
//! and the full contraction sums `B^(s)`.
//!
//! Index lowering always acts on the second slot: `(B)^a_b = B^{ac} η_{cb}`.
//! A chain is then the trace of the product of these mixed matrices.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::clifford::{AntisymTensor, CliffordError, Signature};
use crate::linalg::{LinalgError, Matrix, Rational, RationalMatrix, Scalar};
use crate::partitions::{enumerate_partitions, Partition};

/// Largest `n` accepted by [`contraction_sum`]; it enumerates `(2n)!`
/// orderings.
pub const MAX_CONTRACTION_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("empty index chain")]
    EmptyChain,
    #[error("expected {expected} tensors, got {actual}")]
    WrongTensorCount { expected: usize, actual: usize },
    #[error("contraction sums are limited to n <= {MAX_CONTRACTION_N}, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Z^(s)` for every partition of a fixed `n`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZVector {
    n: usize,
    entries: Vec<(Partition, Rational)>,
}

impl ZVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: &Partition) -> Option<&Rational> {
        self.entries
            .binary_search_by(|(p, _)| p.cmp(s))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.entries.iter().map(|(p, z)| (p, z))
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, z)| z)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `⟨B_1 ⋯ B_q⟩ = (B_1)^{c1}_{c2} (B_2)^{c2}_{c3} ⋯ (B_q)^{cq}_{c1}`.
pub fn cycle_trace(sig: &Signature, tensors: &[AntisymTensor]) -> Result<Rational, ContractionError> {
    let (first, rest) = tensors.split_first().ok_or(ContractionError::EmptyChain)?;
    let mut acc = first.mixed(sig)?;
    for t in rest {
        acc = acc.mul(&t.mixed(sig)?)?;
    }
    Ok(acc.trace()?)
}

/// `⟨B^{2j}⟩` for `j = 1..=max_j`, entry `j − 1`.
pub fn even_cycle_traces(sig: &Signature, b: &AntisymTensor, max_j: usize) -> Result<Vec<Rational>, ContractionError> {
    let mixed = b.mixed(sig)?;
    let square = mixed.mul(&mixed)?;
    let mut power = square.clone();
    let mut out = Vec::with_capacity(max_j);
    for j in 1..=max_j {
        out.push(power.trace()?);
        if j < max_j {
            power = power.mul(&square)?;
        }
    }
    Ok(out)
}

/// `Z^(s) = Π_j ⟨B^{2 s_j}⟩` given the even cycle traces (index `j − 1`).
pub fn z_from_traces(s: &Partition, traces: &[Rational]) -> Rational {
    s.parts().iter().map(|&part| &traces[part - 1]).product()
}

pub fn z_vector(sig: &Signature, b: &AntisymTensor, n: usize) -> Result<ZVector, ContractionError> {
    let traces = even_cycle_traces(sig, b, n)?;
    let entries = enumerate_partitions(n)
        .into_iter()
        .map(|s| {
            let z = z_from_traces(&s, &traces);
            (s, z)
        })
        .collect();
    Ok(ZVector { n, entries })
}

/// Sum over every ordering of `mats` of the product of block traces: block
/// `j` takes the next `blocks[j]` matrices of the ordering and contributes
/// the trace of their product. `lead`, if given, multiplies the first block
/// from the left.
///
/// Orderings are walked depth-first so partial products are shared between
/// orderings with a common prefix; every one of the `len!` orderings is
/// still visited.
pub(crate) fn ordered_trace_sum<T: Scalar>(
    mats: &[Matrix<T>],
    blocks: &[usize],
    lead: Option<&Matrix<T>>,
) -> Result<T, LinalgError> {
    debug_assert_eq!(blocks.iter().sum::<usize>(), mats.len());
    let mut walk = Walk {
        mats,
        blocks,
        used: vec![false; mats.len()],
        total: T::zero(),
    };
    walk.start_block(0, T::one(), lead)?;
    Ok(walk.total)
}

struct Walk<'a, T> {
    mats: &'a [Matrix<T>],
    blocks: &'a [usize],
    used: Vec<bool>,
    total: T,
}

impl<T: Scalar> Walk<'_, T> {
    fn start_block(&mut self, block: usize, weight: T, lead: Option<&Matrix<T>>) -> Result<(), LinalgError> {
        if block == self.blocks.len() {
            self.total = self.total.checked_add(&weight).ok_or(LinalgError::Overflow)?;
            return Ok(());
        }
        let len = self.blocks[block];
        match lead {
            Some(prefix) => self.extend(block, len, prefix.clone(), &weight),
            None => {
                for first in 0..self.mats.len() {
                    if self.used[first] {
                        continue;
                    }
                    self.used[first] = true;
                    let result = if len == 1 {
                        let tr = self.mats[first].trace()?;
                        self.close(block, &weight, &tr)
                    } else {
                        self.extend(block, len - 1, self.mats[first].clone(), &weight)
                    };
                    self.used[first] = false;
                    result?;
                }
                Ok(())
            }
        }
    }

    /// `remaining ≥ 1` matrices still to append to `prefix` in this block.
    fn extend(&mut self, block: usize, remaining: usize, prefix: Matrix<T>, weight: &T) -> Result<(), LinalgError> {
        for next in 0..self.mats.len() {
            if self.used[next] {
                continue;
            }
            self.used[next] = true;
            let result = if remaining == 1 {
                prefix
                    .trace_of_product(&self.mats[next])
                    .and_then(|tr| self.close(block, weight, &tr))
            } else {
                prefix
                    .mul(&self.mats[next])
                    .and_then(|p| self.extend(block, remaining - 1, p, weight))
            };
            self.used[next] = false;
            result?;
        }
        Ok(())
    }

    fn close(&mut self, block: usize, weight: &T, trace: &T) -> Result<(), LinalgError> {
        if trace.is_zero() {
            return Ok(());
        }
        let w = weight.checked_mul(trace).ok_or(LinalgError::Overflow)?;
        self.start_block(block + 1, w, None)
    }
}

/// `B^(s)`: the sum over all `(2n)!` assignments of distinct tensors to the
/// slots, each term a product of `r` chains where chain `j` consumes the
/// next `2 s_j` tensors. No block symmetry is divided out.
pub fn contraction_sum(
    sig: &Signature,
    s: &Partition,
    tensors: &[AntisymTensor],
) -> Result<Rational, ContractionError> {
    let n = s.n();
    if n > MAX_CONTRACTION_N {
        return Err(ContractionError::TooLarge(n));
    }
    if tensors.len() != 2 * n {
        return Err(ContractionError::WrongTensorCount {
            expected: 2 * n,
            actual: tensors.len(),
        });
    }
    let mixed = tensors.iter().map(|t| t.mixed(sig)).collect::<Result<Vec<_>, _>>()?;
    let blocks: Vec<usize> = s.parts().iter().map(|&p| 2 * p).collect();

    // The sum is multilinear in the tensors, so each can be scaled to
    // integer entries independently.
    let integer: Option<(Vec<Matrix<i128>>, Rational)> = mixed
        .iter()
        .map(RationalMatrix::to_integer)
        .collect::<Option<Vec<_>>>()
        .map(|scaled| {
            let factor = scaled.iter().map(|(_, k)| k).product();
            (scaled.into_iter().map(|(m, _)| m).collect(), factor)
        });
    if let Some((mats, factor)) = integer {
        match ordered_trace_sum(&mats, &blocks, None) {
            Ok(total) => return Ok(Rational::from(total).checked_div(&factor)?),
            Err(LinalgError::Overflow) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ordered_trace_sum(&mixed, &blocks, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use proptest::prelude::*;

    fn b01(d: usize, v: i64) -> AntisymTensor {
        let mut t = AntisymTensor::zero(d);
        t.set(0, 1, v.into());
        t
    }

    fn tensor(d: usize, entries: &[i64]) -> AntisymTensor {
        AntisymTensor::from_upper_triangle(d, entries.iter().map(|&x| Rational::from(x))).unwrap()
    }

    fn p(label: &str) -> Partition {
        label.parse().unwrap()
    }

    /// Explicit index-sum oracle for a closed chain.
    fn chain_by_indices(sig: &Signature, tensors: &[AntisymTensor]) -> Rational {
        let d = sig.dim();
        let q = tensors.len();
        let mut total = Rational::zero();
        let mut idx = vec![0usize; q];
        loop {
            let mut term = Rational::one();
            for (i, t) in tensors.iter().enumerate() {
                let (a, c) = (idx[i], idx[(i + 1) % q]);
                // (B)^a_c = B^{ac} η_cc
                term *= t.get(a, c) * Rational::from(sig.eta(c));
            }
            total += term;
            let mut k = 0;
            while k < q {
                idx[k] += 1;
                if idx[k] < d {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == q {
                return total;
            }
        }
    }

    /// Naive `(2n)!` oracle: explicit permutation list, cycle traces from
    /// index sums.
    fn contraction_by_permutations(sig: &Signature, s: &Partition, tensors: &[AntisymTensor]) -> Rational {
        fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
            if items.len() <= 1 {
                return vec![items];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                let mut rest = items.clone();
                let head = rest.remove(i);
                for mut tail in perms(rest) {
                    tail.insert(0, head);
                    out.push(tail);
                }
            }
            out
        }
        let mut total = Rational::zero();
        for perm in perms((0..tensors.len()).collect()) {
            let mut term = Rational::one();
            let mut pos = 0;
            for &part in s.parts() {
                let chain: Vec<AntisymTensor> = perm[pos..pos + 2 * part].iter().map(|&i| tensors[i].clone()).collect();
                term *= chain_by_indices(sig, &chain);
                pos += 2 * part;
            }
            total += term;
        }
        total
    }

    #[test]
    fn two_dimensional_chains() {
        let e = Signature::euclidean(2);
        let b = b01(2, 1);
        assert_eq!(cycle_trace(&e, &[b.clone(), b.clone()]).unwrap(), -2);
        assert_eq!(cycle_trace(&e, &vec![b.clone(); 4]).unwrap(), 2);
        assert_eq!(
            even_cycle_traces(&e, &b, 4).unwrap(),
            vec![Rational::from(-2), 2.into(), (-2).into(), 2.into()]
        );
        let m = Signature::minkowski(2);
        assert_eq!(even_cycle_traces(&m, &b, 3).unwrap(), vec![Rational::from(2); 3]);
        assert_eq!(cycle_trace(&e, &[]), Err(ContractionError::EmptyChain));
    }

    #[test]
    fn z_vector_two_dimensions() {
        let e = Signature::euclidean(2);
        let z = z_vector(&e, &b01(2, 1), 2).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(*z.get(&p("2")).unwrap(), 2);
        assert_eq!(*z.get(&p("1+1")).unwrap(), 4);
        let z1 = z_vector(&e, &b01(2, 3), 1).unwrap();
        assert_eq!(
            *z1.get(&p("1")).unwrap(),
            cycle_trace(&e, &[b01(2, 3), b01(2, 3)]).unwrap()
        );
    }

    #[test]
    fn n1_contraction_is_twice_the_pair_chain() {
        let sig = Signature::minkowski(4);
        let a = tensor(4, &[1, 2, -3, 4, 0, 5]);
        let b = tensor(4, &[-2, 1, 7, 3, 3, -1]);
        let pair = cycle_trace(&sig, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(pair, cycle_trace(&sig, &[b.clone(), a.clone()]).unwrap());
        assert_eq!(
            contraction_sum(&sig, &p("1"), &[a, b]).unwrap(),
            Rational::from(2) * pair
        );
    }

    #[test]
    fn n2_matches_naive_permutations() {
        let sig = Signature::minkowski(4);
        let ts = [
            tensor(4, &[1, 2, -3, 4, 0, 5]),
            tensor(4, &[-2, 1, 7, 3, 3, -1]),
            tensor(4, &[0, -4, 2, 2, 1, 9]),
            tensor(4, &[5, 5, -1, -8, 0, 2]),
        ];
        for s in enumerate_partitions(2) {
            assert_eq!(
                contraction_sum(&sig, &s, &ts).unwrap(),
                contraction_by_permutations(&sig, &s, &ts),
                "{s}"
            );
        }
    }

    #[test]
    fn identical_tensors_reduce_to_z() {
        let sig = Signature::minkowski(6);
        let b = tensor(6, &[1, -2, 3, 0, 4, 5, -6, 7, 1, 2, -3, 0, 9, 8, -1]);
        for n in 1..=3 {
            let z = z_vector(&sig, &b, n).unwrap();
            let ts = vec![b.clone(); 2 * n];
            let fact = Rational::factorial(2 * n as u64);
            for (s, zs) in z.iter() {
                assert_eq!(contraction_sum(&sig, s, &ts).unwrap(), &fact * zs, "{s}");
            }
        }
    }

    #[test]
    fn rational_entries_and_guards() {
        let sig = Signature::euclidean(3);
        let half = AntisymTensor::from_upper_triangle(
            3,
            [Rational::new(1, 2).unwrap(), Rational::new(-2, 3).unwrap(), 1.into()],
        )
        .unwrap();
        let other = tensor(3, &[2, 1, -1]);
        let ts = [half.clone(), other.clone(), other.clone(), half.clone()];
        for s in enumerate_partitions(2) {
            assert_eq!(
                contraction_sum(&sig, &s, &ts).unwrap(),
                contraction_by_permutations(&sig, &s, &ts)
            );
        }
        assert!(matches!(
            contraction_sum(&sig, &p("2"), &ts[..3]),
            Err(ContractionError::WrongTensorCount { expected: 4, actual: 3 })
        ));
        assert_eq!(contraction_sum(&sig, &p("5"), &[]), Err(ContractionError::TooLarge(5)));
    }

    proptest! {
        #[test]
        fn chain_matches_index_sum(entries in prop::collection::vec(-9i64..=9, 18), minkowski in any::<bool>()) {
            let sig = if minkowski { Signature::minkowski(4) } else { Signature::euclidean(4) };
            let ts: Vec<AntisymTensor> = entries.chunks(6).map(|c| tensor(4, c)).collect();
            prop_assert_eq!(cycle_trace(&sig, &ts).unwrap(), chain_by_indices(&sig, &ts));
        }

        #[test]
        fn odd_chains_vanish_euclidean(entries in prop::collection::vec(-9i64..=9, 10), k in 0usize..=4) {
            let sig = Signature::euclidean(5);
            let b = tensor(5, &entries);
            prop_assert!(cycle_trace(&sig, &vec![b; 2 * k + 1]).unwrap().is_zero());
        }

        #[test]
        fn z_scales_homogeneously(entries in prop::collection::vec(-5i64..=5, 6), lambda in -6i64..=6, n in 1usize..=4) {
            let sig = Signature::minkowski(4);
            let b = tensor(4, &entries);
            let lam = Rational::from(lambda);
            let z = z_vector(&sig, &b, n).unwrap();
            let zs = z_vector(&sig, &b.scale(&lam), n).unwrap();
            let factor = lam.pow(2 * n as i32).unwrap();
            for ((_, a), (_, b)) in z.iter().zip(zs.iter()) {
                prop_assert_eq!(&(a * &factor), b);
            }
        }

        #[test]
        fn contraction_is_order_invariant(entries in prop::collection::vec(-4i64..=4, 12), rot in 0usize..4) {
            let sig = Signature::euclidean(3);
            let mut ts: Vec<AntisymTensor> = entries.chunks(3).map(|c| tensor(3, c)).collect();
            let before: Vec<Rational> = enumerate_partitions(2).iter().map(|s| contraction_sum(&sig, s, &ts).unwrap()).collect();
            ts.rotate_left(rot);
            ts.swap(0, 3);
            let after: Vec<Rational> = enumerate_partitions(2).iter().map(|s| contraction_sum(&sig, s, &ts).unwrap()).collect();
            prop_assert_eq!(before, after);
        }
    }
}

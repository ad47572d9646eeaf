use alloc::vec::Vec;

use super::{LinalgError, Rational, RationalMatrix};

/// Bit-size key used to pick the pivot: smallest numerator first, then the
/// smallest denominator.
fn pivot_key(x: &Rational) -> (u64, u64) {
    (x.numer().bits(), x.denom().bits())
}

/// Gaussian elimination with full pivoting. Reduces `a` (and `rhs`, if
/// given) in place to upper-triangular form and returns the rank along with
/// the column permutation applied.
fn eliminate(a: &mut [Vec<Rational>], mut rhs: Option<&mut [Rational]>) -> (usize, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;

    while rank < rows.min(cols) {
        let pivot = (rank..rows)
            .flat_map(|i| (rank..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| pivot_key(&a[i][j]));
        let Some((pi, pj)) = pivot else { break };

        a.swap(rank, pi);
        if let Some(r) = rhs.as_deref_mut() {
            r.swap(rank, pi);
        }
        if pj != rank {
            for row in a.iter_mut() {
                row.swap(rank, pj);
            }
            perm.swap(rank, pj);
        }

        let inv = a[rank][rank].recip().expect("pivot is nonzero");
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for (offset, row) in rest.iter_mut().enumerate() {
            if row[rank].is_zero() {
                continue;
            }
            let factor = &row[rank] * &inv;
            for j in rank..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
            if let Some(r) = rhs.as_deref_mut() {
                let delta = &factor * &r[rank];
                r[rank + 1 + offset] -= delta;
            }
        }
        rank += 1;
    }
    (rank, perm)
}

fn to_rows(z: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..z.rows()).map(|i| z.row(i).to_vec()).collect()
}

/// Exact rank of a rational matrix.
pub fn rank(z: &RationalMatrix) -> usize {
    eliminate(&mut to_rows(z), None).0
}

/// Solve `z · x = t` exactly.
///
/// Singular systems return [`LinalgError::RankDeficient`]; there is no
/// least-squares fallback.
pub fn solve_rational_system(z: &RationalMatrix, t: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    if !z.is_square() {
        return Err(LinalgError::NotSquare {
            rows: z.rows(),
            cols: z.cols(),
        });
    }
    let n = z.rows();
    if t.len() != n {
        return Err(LinalgError::BadLength {
            expected: n,
            actual: t.len(),
        });
    }
    let mut a = to_rows(z);
    let mut b = t.to_vec();
    let (rank, perm) = eliminate(&mut a, Some(&mut b));
    if rank < n {
        return Err(LinalgError::RankDeficient { rank, size: n });
    }

    let mut y = alloc::vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc -= &a[i][j] * &y[j];
            }
        }
        y[i] = acc.checked_div(&a[i][i])?;
    }
    let mut x = alloc::vec![Rational::zero(); n];
    for (k, &col) in perm.iter().enumerate() {
        x[col] = y[k].clone();
    }
    Ok(x)
}

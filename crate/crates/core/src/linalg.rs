//! Dense exact linear algebra over an arbitrary [`Field`]: rank, kernel and
//! consistent-system solving by Gaussian elimination. Sizes here are small
//! (thousands of rows at most), so a straightforward dense elimination is the
//! right tool.

use crate::field::Field;

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        crate::exec::for_each_indexed_mut(rows, |i, row| {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, pv) in row.iter_mut().zip(pivot_row.iter()) {
                    if !pv.is_zero() {
                        *x = x.sub(&factor.mul(pv));
                    }
                }
            }
        });
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of the matrix given as rows.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    row_reduce(&mut rows).len()
}

/// Basis of the null space `{x : A x = 0}` for `A` given as rows over an
/// `ncols`-dimensional domain.
pub fn kernel_basis<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = row_reduce(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![F::zero(); ncols];
        v[fc] = F::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            // row ri reads x_pc + Σ a_j x_j = 0 over free columns j
            v[pc] = rows[ri][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone)]
pub enum SolveOutcome<F> {
    /// Unique solution.
    Unique(Vec<F>),
    /// Solvable but with free variables; a particular solution is given.
    Underdetermined(Vec<F>),
    /// No solution; the witness is a row index of the original system whose
    /// reduced form reads `0 = nonzero`.
    Inconsistent { row: usize },
}

/// Solves `A x = b` for `A` given as `m` rows of length `k`.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> SolveOutcome<F> {
    assert_eq!(a.len(), b.len());
    let k = a.first().map_or(0, |r| r.len());
    // augmented elimination, tracking original row positions
    let mut rows: Vec<(Vec<F>, usize)> = a
        .iter()
        .zip(b.iter())
        .enumerate()
        .map(|(i, (row, rhs))| {
            let mut r = row.clone();
            r.push(rhs.clone());
            (r, i)
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[c].inv().unwrap();
        for x in rows[r].0.iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[r].0.clone();
        for i in 0..rows.len() {
            if i != r && !rows[i].0[c].is_zero() {
                let factor = rows[i].0[c].clone();
                for (x, pv) in rows[i].0.iter_mut().zip(pivot_row.iter()) {
                    if !pv.is_zero() {
                        *x = x.sub(&factor.mul(pv));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // check for 0 = nonzero rows
    for (row, orig) in rows.iter().skip(pivots.len()) {
        if !row[k].is_zero() {
            return SolveOutcome::Inconsistent { row: *orig };
        }
    }
    let mut x = vec![F::zero(); k];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[ri].0[k].clone();
    }
    if pivots.len() == k {
        SolveOutcome::Unique(x)
    } else {
        SolveOutcome::Underdetermined(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Rat};

    fn rmat(data: &[&[i64]]) -> Vec<Vec<Rat>> {
        data.iter()
            .map(|row| row.iter().map(|&x| ratio(x, 1)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = rmat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(m.clone()), 2);
        let ker = kernel_basis(m.clone(), 3);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v.iter())
                    .fold(Rat::from_integer(0.into()), |acc, (a, b)| {
                        crate::field::Field::add(&acc, &a.mul(b))
                    });
                assert!(crate::field::Field::is_zero(&dot));
            }
        }
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a = rmat(&[&[2, 0], &[0, 3], &[2, 3]]);
        let b = vec![ratio(4, 1), ratio(9, 1), ratio(13, 1)];
        match solve(&a, &b) {
            SolveOutcome::Unique(x) => {
                assert_eq!(x, vec![ratio(2, 1), ratio(3, 1)]);
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
        let b_bad = vec![ratio(4, 1), ratio(9, 1), ratio(14, 1)];
        match solve(&a, &b_bad) {
            SolveOutcome::Inconsistent { row } => assert_eq!(row, 2),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }
}

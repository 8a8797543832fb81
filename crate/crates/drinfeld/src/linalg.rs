//! Exact linear solving over K = Fq(T).
//!
//! Gaussian elimination with first-nonzero pivoting (any nonzero pivot is
//! exact, so the choice only needs to be deterministic).  The solver reports
//! one of three outcomes; an inconsistency names the original index of a row
//! that reduced to 0 = nonzero, which callers surface as a witness.

use crate::algebra::{Fq, RatK};

/// Result of solving a linear system A x = b exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    /// The unique solution vector.
    Unique(Vec<RatK>),
    /// No solution; `row` is the original index of an offending equation.
    Inconsistent { row: usize },
    /// Consistent but with free variables (rank below the column count).
    Underdetermined,
}

/// Solves A x = b over K.  `rows` is the matrix by rows; every row must have
/// the same length, which is the number of unknowns.
pub fn solve_exact(fq: &Fq, rows: &[Vec<RatK>], rhs: &[RatK]) -> SolveOutcome {
    let m = rows.len();
    assert_eq!(m, rhs.len(), "matrix and right-hand side disagree on row count");
    let n = rows.first().map_or(0, Vec::len);
    for r in rows {
        assert_eq!(r.len(), n, "ragged matrix row");
    }

    // Augmented working copy, remembering each row's original index.
    let mut work: Vec<(usize, Vec<RatK>)> = rows
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (r, b))| {
            let mut row = r.clone();
            row.push(b.clone());
            (i, row)
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pos) = (rank..m).find(|&r| !work[r].1[col].is_zero()) else {
            continue;
        };
        work.swap(rank, pos);
        let pivot_inv = work[rank].1[col].inv(fq);
        for r in rank + 1..m {
            if work[r].1[col].is_zero() {
                continue;
            }
            let factor = work[r].1[col].mul(fq, &pivot_inv);
            for c in col..=n {
                let delta = work[rank].1[c].mul(fq, &factor);
                work[r].1[c] = work[r].1[c].sub(fq, &delta);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }

    // A zero row with nonzero right-hand side is a contradiction.  Report
    // the smallest original row index among them.
    let mut bad: Option<usize> = None;
    for (orig, row) in work.iter().skip(rank) {
        if !row[n].is_zero() {
            bad = Some(match bad {
                Some(b) => b.min(*orig),
                None => *orig,
            });
        }
    }
    if let Some(row) = bad {
        return SolveOutcome::Inconsistent { row };
    }
    if rank < n {
        return SolveOutcome::Underdetermined;
    }

    // Back substitution; with rank == n every column is a pivot column.
    let mut x = vec![RatK::zero(); n];
    for r in (0..n).rev() {
        let col = pivot_cols[r];
        let mut acc = work[r].1[n].clone();
        for c in col + 1..n {
            if !work[r].1[c].is_zero() {
                acc = acc.sub(fq, &work[r].1[c].mul(fq, &x[c]));
            }
        }
        x[col] = acc.div(fq, &work[r].1[col]);
    }
    SolveOutcome::Unique(x)
}

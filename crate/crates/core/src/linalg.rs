//! Exact Gaussian elimination over `Cyclo`.

use crate::cyclo::Cyclo;

pub(crate) struct Solution {
    pub rank: usize,
    /// A particular solution, when the system is consistent.
    pub particular: Option<Vec<Cyclo>>,
}

/// Solves `matrix · x = rhs`. Free variables are set to zero.
pub(crate) fn solve(mut matrix: Vec<Vec<Cyclo>>, mut rhs: Vec<Cyclo>, unknowns: usize, order: u64) -> Solution {
    let rows = matrix.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows).find(|&i| !matrix[i][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        rhs.swap(row, p);
        let inv = matrix[row][col].inv().expect("pivot is nonzero");
        for j in col..unknowns {
            matrix[row][j] = &matrix[row][j] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for i in 0..rows {
            if i == row || matrix[i][col].is_zero() {
                continue;
            }
            let factor = matrix[i][col].clone();
            for j in col..unknowns {
                let d = &factor * &matrix[row][j];
                matrix[i][j] = &matrix[i][j] - &d;
            }
            let d = &factor * &rhs[row];
            rhs[i] = &rhs[i] - &d;
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let rank = pivots.len();
    if rhs[rank..].iter().any(|v| !v.is_zero()) {
        return Solution { rank, particular: None };
    }
    let mut x = vec![Cyclo::zero(order); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rhs[i].clone();
    }
    Solution {
        rank,
        particular: Some(x),
    }
}

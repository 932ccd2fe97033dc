//! Minimal dense linear algebra for the embedded solvers.

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `tol` (singular system).
pub fn solve_dense(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (piv_row, piv_val) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if piv_val <= tol {
            return None;
        }
        m.swap(col, piv_row);
        rhs.swap(col, piv_row);
        perm.swap(col, piv_row);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for c in row + 1..n {
            s -= m[row][c] * x[c];
        }
        x[row] = s / m[row][row];
    }
    Some(x)
}

/// Attempts an LDL^T factorization to certify positive semidefiniteness.
/// `tol` bounds how negative a pivot may go before rejection.
pub fn is_psd(d: &[Vec<f64>], tol: f64) -> bool {
    let n = d.len();
    let mut a: Vec<Vec<f64>> = d.to_vec();
    for k in 0..n {
        let pivot = a[k][k];
        if pivot < -tol {
            return false;
        }
        if pivot.abs() <= tol {
            // semidefinite direction: the rest of the row/column must vanish
            for j in k + 1..n {
                if a[k][j].abs() > tol.sqrt() {
                    return false;
                }
            }
            continue;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            for j in k + 1..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    true
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| dot(row, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_systems() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_dense(&a, &[3.0, 5.0], 1e-12).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12);
        assert!((x[1] - 1.4).abs() < 1e-12);
        let singular = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve_dense(&singular, &[1.0, 2.0], 1e-12).is_none());
    }

    #[test]
    fn psd_detection() {
        assert!(is_psd(&[vec![1.0, 0.0], vec![0.0, 0.0]], 1e-10));
        assert!(is_psd(&[vec![2.0, 1.0], vec![1.0, 2.0]], 1e-10));
        assert!(!is_psd(&[vec![1.0, 2.0], vec![2.0, 1.0]], 1e-10));
        assert!(!is_psd(&[vec![-1.0, 0.0], vec![0.0, 1.0]], 1e-10));
    }
}

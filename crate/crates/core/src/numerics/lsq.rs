use crate::error::{Error, Result};
use crate::numerics::matrix::SymMatrix;

/// Euclidean column norms, with zero columns mapped to 1 so they can be used
/// as equilibration scales.
fn column_scales(rows: &[Vec<f64>], n: usize) -> Vec<f64> {
    let mut cn = vec![0.0_f64; n];
    for r in rows {
        for (j, v) in r.iter().enumerate() {
            cn[j] += v * v;
        }
    }
    for c in &mut cn {
        *c = c.sqrt();
        if *c == 0.0 {
            *c = 1.0;
        }
    }
    cn
}

/// Minimum-norm least-squares solution of `A x = b` via the normal equations
/// and an eigen-based pseudoinverse. Columns are equilibrated to unit norm
/// internally, so Vandermonde-type systems with wildly different column
/// magnitudes stay well conditioned.
pub fn lstsq(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    if m == 0 || m != rhs.len() {
        return Err(Error::Dimension(format!(
            "lstsq: {} rows vs {} rhs entries",
            m,
            rhs.len()
        )));
    }
    let n = rows[0].len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("lstsq: ragged or empty matrix".into()));
    }
    let cn = column_scales(rows, n);
    let gram = SymMatrix::from_fn(n, |i, j| {
        rows.iter().map(|r| r[i] * r[j]).sum::<f64>() / (cn[i] * cn[j])
    })?;
    let mut atb = vec![0.0; n];
    for (r, &b) in rows.iter().zip(rhs) {
        for (j, v) in r.iter().enumerate() {
            atb[j] += v * b;
        }
    }
    for (a, c) in atb.iter_mut().zip(&cn) {
        *a /= c;
    }
    let y = pinv_solve_sym(&gram, &atb, 1e-13)?;
    Ok(y.iter().zip(&cn).map(|(yi, ci)| yi / ci).collect())
}

/// Minimum-norm solution of `M x = rhs` for symmetric M, dropping eigenvalue
/// components below `rank_rel * max |eigenvalue|`.
pub fn pinv_solve_sym(m: &SymMatrix, rhs: &[f64], rank_rel: f64) -> Result<Vec<f64>> {
    let n = m.dim();
    if rhs.len() != n {
        return Err(Error::Dimension(format!(
            "pinv_solve_sym: dim {} vs rhs {}",
            n,
            rhs.len()
        )));
    }
    let eig = m.eigen()?;
    let top = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let cut = rank_rel * top;
    let mut x = vec![0.0; n];
    for (lam, vec) in eig.values.iter().zip(&eig.vectors) {
        if lam.abs() <= cut {
            continue;
        }
        let proj: f64 = vec.iter().zip(rhs).map(|(v, b)| v * b).sum();
        let scale = proj / lam;
        for (xi, vi) in x.iter_mut().zip(vec) {
            *xi += scale * vi;
        }
    }
    Ok(x)
}

/// Nonnegative least squares, Lawson-Hanson active-set method:
/// `argmin_{x >= 0} ||A x - b||_2`.
pub fn nnls(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    if m == 0 || m != rhs.len() {
        return Err(Error::Dimension(format!(
            "nnls: {} rows vs {} rhs entries",
            m,
            rhs.len()
        )));
    }
    let n = rows[0].len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("nnls: ragged or empty matrix".into()));
    }

    // Equilibrate columns to unit norm: the active-set dual test compares
    // gradient components across columns, which is only meaningful when the
    // columns share a scale. Solutions are mapped back at the end.
    let cn = column_scales(rows, n);
    let rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().zip(&cn).map(|(v, c)| v / c).collect())
        .collect();

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];

    let grad_scale = {
        let mut g = vec![0.0; n];
        for (r, &b) in rows.iter().zip(rhs) {
            for (j, v) in r.iter().enumerate() {
                g[j] += v * b;
            }
        }
        g.iter().fold(1.0_f64, |a, v| a.max(v.abs()))
    };
    let w_tol = 1e-12 * grad_scale;

    // Unconstrained least squares restricted to the passive columns.
    let solve_passive = |passive: &[bool]| -> Result<Vec<f64>> {
        let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let sub: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| cols.iter().map(|&j| r[j]).collect())
            .collect();
        let z = lstsq(&sub, rhs)?;
        let mut full = vec![0.0; n];
        for (k, &j) in cols.iter().enumerate() {
            full[j] = z[k];
        }
        Ok(full)
    };

    for _outer in 0..(3 * n + 10) {
        // w = A^T (b - A x)
        let mut w = vec![0.0; n];
        for (r, &b) in rows.iter().zip(rhs) {
            let pred: f64 = r.iter().zip(&x).map(|(a, v)| a * v).sum();
            let res = b - pred;
            for (j, v) in r.iter().enumerate() {
                w[j] += v * res;
            }
        }
        let best = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&a, &b| w[a].total_cmp(&w[b]));
        let Some(j_star) = best else { break };
        if w[j_star] <= w_tol {
            break;
        }
        passive[j_star] = true;

        let mut z = solve_passive(&passive)?;
        for _inner in 0..(3 * n + 10) {
            let blocking: Vec<usize> = (0..n)
                .filter(|&j| passive[j] && z[j] <= 0.0)
                .collect();
            if blocking.is_empty() {
                break;
            }
            let alpha = blocking
                .iter()
                .map(|&j| x[j] / (x[j] - z[j]))
                .fold(f64::INFINITY, f64::min)
                .clamp(0.0, 1.0);
            for j in 0..n {
                if passive[j] {
                    x[j] += alpha * (z[j] - x[j]);
                }
            }
            for j in 0..n {
                if passive[j] && x[j] <= 1e-14 * grad_scale.max(1.0) {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if passive.iter().all(|p| !p) {
                z = vec![0.0; n];
                break;
            }
            z = solve_passive(&passive)?;
        }
        x = z;
        for v in &mut x {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
    }
    for (v, c) in x.iter_mut().zip(&cn) {
        *v /= *c;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lstsq_square_exact() {
        let a = vec![vec![2.0, 0.0], vec![0.0, 4.0]];
        let x = lstsq(&a, &[2.0, 8.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn lstsq_overdetermined_mean() {
        let a = vec![vec![1.0], vec![1.0], vec![1.0]];
        let x = lstsq(&a, &[1.0, 2.0, 3.0]).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn pinv_min_norm_on_singular() {
        let m = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let x = pinv_solve_sym(&m, &[2.0, 2.0], 1e-12).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn nnls_clamps_negative_component() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let x = nnls(&a, &[1.0, -1.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_eq!(x[1], 0.0);
    }

    #[test]
    fn nnls_recovers_vandermonde_weights() {
        // moments of atoms at 1 and 4, unit weights: chi_k = 1^k + 4^k
        let a = vec![
            vec![1.0, 1.0],
            vec![1.0, 4.0],
            vec![1.0, 16.0],
        ];
        let x = nnls(&a, &[2.0, 5.0, 17.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn nnls_matches_lstsq_when_interior() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 2.0], vec![1.0, 3.0]];
        let b = [6.0, 9.0, 12.0];
        let x = nnls(&a, &b).unwrap();
        let y = lstsq(&a, &b).unwrap();
        assert_abs_diff_eq!(x[0], y[0], epsilon = 1e-9);
        assert_abs_diff_eq!(x[1], y[1], epsilon = 1e-9);
    }
}

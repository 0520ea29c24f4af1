use nalgebra::{Matrix4, SMatrix, SVector};

use super::{CovarianceMatrix, DiffusionMatrix, DriftMatrix};
use crate::error::{Error, Result};

const N: usize = 4;
const UNKNOWNS: usize = N * (N + 1) / 2;

fn upper_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // row-major packing of the upper triangle
    i * N - i * (i + 1) / 2 + j
}

fn residual(a: &Matrix4<f64>, v: &Matrix4<f64>, d: &Matrix4<f64>) -> Matrix4<f64> {
    a * v + v * a.transpose() + d
}

/// Solves `A V + V A^T + D = 0` for symmetric `V` by packing the ten
/// independent entries into a dense linear system.
pub fn lyapunov_steady(a: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let lam = a.max_real_eig();
    if !(lam < 0.0) {
        return Err(Error::NoSteadyState(lam));
    }
    let (a, d) = (&a.0, &d.0);

    let mut op = SMatrix::<f64, UNKNOWNS, UNKNOWNS>::zeros();
    let mut rhs = SVector::<f64, UNKNOWNS>::zeros();
    for i in 0..N {
        for j in i..N {
            let row = upper_index(i, j);
            for k in 0..N {
                op[(row, upper_index(k, j))] += a[(i, k)];
                op[(row, upper_index(i, k))] += a[(j, k)];
            }
            rhs[row] = -d[(i, j)];
        }
    }
    let lu = op.lu();
    let unpack = |x: &SVector<f64, UNKNOWNS>| Matrix4::from_fn(|i, j| x[upper_index(i, j)]);

    let mut x = lu.solve(&rhs).ok_or(Error::Singular("Lyapunov operator"))?;
    let scale = d.abs().max().max(f64::MIN_POSITIVE);
    let mut v = unpack(&x);
    for _ in 0..2 {
        let res = residual(a, &v, d);
        if res.abs().max() <= 1e-12 * scale {
            break;
        }
        // iterative refinement on the packed residual
        let mut r = SVector::<f64, UNKNOWNS>::zeros();
        for i in 0..N {
            for j in i..N {
                r[upper_index(i, j)] = -res[(i, j)];
            }
        }
        if let Some(dx) = lu.solve(&r) {
            x += dx;
            v = unpack(&x);
        }
    }
    Ok(CovarianceMatrix(v))
}

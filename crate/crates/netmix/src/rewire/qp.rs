//! Minimum-Frobenius-norm transition matrix solve.
//!
//! The matrix M over a strength support of size K must satisfy zero row
//! sums, zero column sums, sum_jk z_j z_k m_jk = 1, and entrywise bounds
//! keeping every link probability q_j q_k + c m_jk inside [0, 1] (with
//! c = xi * sigma_q^2). Minimizing ||M||_F under those constraints is the
//! projection of the origin onto an affine-subspace/box intersection, so the
//! KKT system collapses to m = clip(R^T y) with R the (2K+1)-row equality
//! operator. We solve F(y) = R clip(R^T y) - r = 0 by damped semismooth
//! Newton on the concave dual; each step is one dense solve of size 2K+1.

use nalgebra::{DMatrix, DVector};

pub(crate) struct QpSolution {
    /// Row-major K x K transition matrix.
    pub m: Vec<f64>,
    /// Max-norm residual of the equality constraints.
    pub residual: f64,
}

pub(crate) enum QpFailure {
    Stalled { residual: f64 },
}

/// Equality-only closed form: with row/column sums zero the minimizer is the
/// rank-one matrix of centered support values, scaled to meet the
/// normalization. Valid whenever no bound is active.
pub(crate) fn centered_closed_form(z: &[f64]) -> Vec<f64> {
    let k = z.len();
    let mean = z.iter().sum::<f64>() / k as f64;
    let norm: f64 = z.iter().map(|&v| v * (v - mean)).sum();
    let scale = 1.0 / (norm * norm);
    let mut m = vec![0.0; k * k];
    for j in 0..k {
        for l in 0..k {
            m[j * k + l] = (z[j] - mean) * (z[l] - mean) * scale;
        }
    }
    m
}

pub(crate) fn solve_projection(
    z: &[f64],
    q: &[f64],
    c: f64,
    tol: f64,
    max_iter: usize,
) -> Result<QpSolution, QpFailure> {
    let k = z.len();
    let rows = 2 * k + 1;

    if c == 0.0 {
        // bounds cannot bind: every link probability is q_j q_k in [0, 1]
        let m = centered_closed_form(z);
        let residual = equality_residual(z, &m);
        return Ok(QpSolution { m, residual });
    }

    let mut lo = vec![0.0; k * k];
    let mut hi = vec![0.0; k * k];
    for j in 0..k {
        for l in 0..k {
            let qq = q[j] * q[l];
            let (a, b) = ((-qq) / c, (1.0 - qq) / c);
            let idx = j * k + l;
            if c > 0.0 {
                lo[idx] = a;
                hi[idx] = b;
            } else {
                lo[idx] = b;
                hi[idx] = a;
            }
        }
    }

    let rt = |y: &DVector<f64>, t: &mut [f64]| {
        let nu = y[rows - 1];
        for j in 0..k {
            for l in 0..k {
                t[j * k + l] = y[j] + y[k + l] + z[j] * z[l] * nu;
            }
        }
    };
    let apply_r = |m: &[f64], out: &mut DVector<f64>| {
        out.fill(0.0);
        for j in 0..k {
            for l in 0..k {
                let v = m[j * k + l];
                out[j] += v;
                out[k + l] += v;
                out[rows - 1] += z[j] * z[l] * v;
            }
        }
        out[rows - 1] -= 1.0; // the only nonzero right-hand side
    };
    let clip = |t: &[f64], m: &mut [f64]| {
        for i in 0..k * k {
            m[i] = t[i].clamp(lo[i], hi[i]);
        }
    };
    // dual objective; maximized at the solution, unbounded iff infeasible
    let dual = |y: &DVector<f64>, t: &mut [f64], m: &mut [f64]| -> f64 {
        rt(y, t);
        clip(t, m);
        let mut value = y[rows - 1]; // r . y
        for i in 0..k * k {
            value += 0.5 * m[i] * m[i] - t[i] * m[i];
        }
        value
    };

    let mut y = DVector::zeros(rows);
    let mut t = vec![0.0; k * k];
    let mut m = vec![0.0; k * k];
    let mut f = DVector::zeros(rows);
    let mut best: Option<(f64, Vec<f64>)> = None;

    for _ in 0..max_iter {
        rt(&y, &mut t);
        clip(&t, &mut m);
        apply_r(&m, &mut f);
        let res = f.amax();
        if best.as_ref().map_or(true, |(r, _)| res < *r) {
            best = Some((res, m.clone()));
        }
        if res < tol {
            return Ok(QpSolution { m, residual: res });
        }

        // Newton matrix over the unclipped entries: G = R_free R_free^T
        let mut g = DMatrix::zeros(rows, rows);
        for j in 0..k {
            for l in 0..k {
                let idx = j * k + l;
                if t[idx] <= lo[idx] || t[idx] >= hi[idx] {
                    continue;
                }
                let w = z[j] * z[l];
                g[(j, j)] += 1.0;
                g[(k + l, k + l)] += 1.0;
                g[(j, k + l)] += 1.0;
                g[(k + l, j)] += 1.0;
                g[(j, rows - 1)] += w;
                g[(rows - 1, j)] += w;
                g[(k + l, rows - 1)] += w;
                g[(rows - 1, k + l)] += w;
                g[(rows - 1, rows - 1)] += w * w;
            }
        }
        let svd = g.svd(true, true);
        let eps = svd.singular_values.max() * 1e-13;
        let mut dy = svd
            .solve(&(-&f), eps.max(f64::MIN_POSITIVE))
            .unwrap_or_else(|_| -f.clone());
        // ascent check on the dual; fall back to the gradient if needed
        let mut slope = -f.dot(&dy);
        if slope <= 0.0 {
            dy = -f.clone();
            slope = f.norm_squared();
        }

        let g0 = dual(&y, &mut t, &mut m);
        let mut step = 1.0;
        let mut advanced = false;
        for _ in 0..80 {
            let candidate = &y + step * &dy;
            if dual(&candidate, &mut t, &mut m) >= g0 + 1e-4 * step * slope {
                y = candidate;
                advanced = true;
                break;
            }
            step *= 0.5;
        }
        if !advanced {
            break; // no progress possible at working precision
        }
    }

    let (residual, m) = best.expect("at least one iterate");
    if residual <= 1e-8 {
        Ok(QpSolution { m, residual })
    } else {
        Err(QpFailure::Stalled { residual })
    }
}

/// Max-norm residual of the three equality constraint families.
pub(crate) fn equality_residual(z: &[f64], m: &[f64]) -> f64 {
    let k = z.len();
    let mut worst: f64 = 0.0;
    let mut norm = 0.0;
    for j in 0..k {
        let mut row = 0.0;
        let mut col = 0.0;
        for l in 0..k {
            row += m[j * k + l];
            col += m[l * k + j];
            norm += z[j] * z[l] * m[j * k + l];
        }
        worst = worst.max(row.abs()).max(col.abs());
    }
    worst.max((norm - 1.0).abs())
}

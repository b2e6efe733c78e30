//! Grids, quadrature, finite-difference derivative checks, and an
//! independent finite-difference eigensolver used as a spectral oracle.

use crate::error::{Error, Result};

/// Uniform one-dimensional grid.
#[derive(Clone, Debug)]
pub struct Grid {
    lo: f64,
    hi: f64,
    points: Vec<f64>,
}

impl Grid {
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Result<Grid> {
        if !(hi > lo) {
            return Err(Error::Validation(format!(
                "grid needs hi > lo, got [{lo}, {hi}]"
            )));
        }
        if count < 5 {
            return Err(Error::Validation(format!(
                "grid needs at least 5 points, got {count}"
            )));
        }
        let h = (hi - lo) / (count - 1) as f64;
        let points = (0..count).map(|i| lo + h * i as f64).collect();
        Ok(Grid { lo, hi, points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.len() - 1) as f64
    }

    /// Index range kept when taking sup norms of derived residuals; the two
    /// points nearest each boundary are dropped because five-point stencils
    /// and boundary-sensitive operators are unreliable there.
    pub fn interior(&self) -> std::ops::Range<usize> {
        2..self.len() - 2
    }
}

/// Composite Simpson integration of uniformly spaced samples. An even sample
/// count leaves one panel over; it is closed with the trapezoid rule.
pub fn integrate(h: f64, values: &[f64]) -> f64 {
    let n = values.len();
    assert!(n >= 3, "integration needs at least 3 samples");
    let simpson_end = if n % 2 == 1 { n } else { n - 1 };
    let mut acc = values[0] + values[simpson_end - 1];
    for (i, &v) in values.iter().enumerate().take(simpson_end - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    let mut total = acc * h / 3.0;
    if n % 2 == 0 {
        total += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    total
}

pub fn sup_norm(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Largest deviation, relative to the sup of the claimed derivative, between
/// `df` and a fourth-order central difference of `f` over the grid interior.
pub fn fd_derivative_max_error(h: f64, f: &[f64], df: &[f64]) -> f64 {
    assert_eq!(f.len(), df.len());
    let n = f.len();
    assert!(n >= 5, "five-point stencil needs at least 5 samples");
    let scale = sup_norm(df).max(sup_norm(f)).max(1e-300);
    let mut worst = 0.0f64;
    for i in 2..n - 2 {
        let fd = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        worst = worst.max((fd - df[i]).abs() / scale);
    }
    worst
}

/// Count of eigenvalues strictly below `sigma` for the symmetric tridiagonal
/// matrix with constant off-diagonal (Sturm sequence via the LDL^T pivots).
fn count_below(diag: &[f64], off2: f64, sigma: f64) -> usize {
    let pivmin = 1e-14 * (1.0 + off2);
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - sigma } else { d - sigma - off2 / q };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest eigenvalues of -(hbar^2 / 2 mu) d^2/dx^2 + V on the grid with
/// Dirichlet boundary conditions, by bisection on the Sturm count of the
/// three-point discretization. Returns eigenvalues for 0-based `indices`.
pub fn fd_eigenvalues(
    grid: &Grid,
    potential: &[f64],
    hbar: f64,
    mu: f64,
    indices: &[usize],
) -> Result<Vec<f64>> {
    if potential.len() != grid.len() {
        return Err(Error::Validation(format!(
            "potential sampled at {} points for a {}-point grid",
            potential.len(),
            grid.len()
        )));
    }
    let h = grid.spacing();
    let kin = hbar * hbar / (mu * h * h);
    // interior points only: Dirichlet conditions at both ends
    let diag: Vec<f64> = potential[1..grid.len() - 1].iter().map(|v| v + kin).collect();
    let off = -0.5 * kin;
    let off2 = off * off;

    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let dmax = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let glo = dmin - 2.0 * off.abs();
    let ghi = dmax + 2.0 * off.abs();
    let tol = 1e-12 * (1.0f64).max(glo.abs()).max(ghi.abs());

    let mut out = Vec::with_capacity(indices.len());
    for &k in indices {
        if k >= diag.len() {
            return Err(Error::Validation(format!(
                "eigenvalue index {k} out of range for a {}-dimensional discretization",
                diag.len()
            )));
        }
        let (mut lo, mut hi) = (glo, ghi);
        let mut iter = 0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if count_below(&diag, off2, mid) >= k + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
            iter += 1;
            if iter > 200 {
                return Err(Error::NoConvergence(format!(
                    "eigenvalue bisection stalled at index {k}: [{lo}, {hi}]"
                )));
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

//! Closed-form eigenvalues of real symmetric 3x3 matrices.

use std::f64::consts::PI;

pub type Mat3 = [[f64; 3]; 3];

/// Eigenvalues of a symmetric 3x3 matrix, sorted in descending order.
///
/// Uses the trigonometric solution of the characteristic cubic after
/// shifting by the mean eigenvalue and scaling by the spread, so no
/// iteration or deflation is involved. Only the upper triangle is read.
pub fn symmetric_eigenvalues(a: &Mat3) -> [f64; 3] {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    let trace = a[0][0] + a[1][1] + a[2][2];
    if p1 == 0.0 {
        let mut d = [a[0][0], a[1][1], a[2][2]];
        d.sort_by(|x, y| y.total_cmp(x));
        return d;
    }

    let q = trace / 3.0;
    let d0 = a[0][0] - q;
    let d1 = a[1][1] - q;
    let d2 = a[2][2] - q;
    let p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();

    // B = (A - qI) / p; r = det(B) / 2 lies in [-1, 1] up to rounding.
    let b01 = a[0][1] / p;
    let b02 = a[0][2] / p;
    let b12 = a[1][2] / p;
    let (b00, b11, b22) = (d0 / p, d1 / p, d2 / p);
    let det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;

    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let e2 = trace - e1 - e3;
    let mut e = [e1, e2, e3];
    e.sort_by(|x, y| y.total_cmp(x));
    e
}

/// Symmetric part (M + Mᵀ)/2.
pub fn symmetric_part(m: &Mat3) -> Mat3 {
    let mut s = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = 0.5 * (m[i][j] + m[j][i]);
        }
    }
    s
}

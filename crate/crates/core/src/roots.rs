//! Polynomial roots via eigenvalues of the balanced companion matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Roots of `coeffs[0] x^n + coeffs[1] x^(n-1) + .. + coeffs[n]`.
///
/// Leading coefficient must be nonzero. Trailing zero coefficients are
/// returned as exact zero roots.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    assert!(
        !coeffs.is_empty() && coeffs[0] != 0.0,
        "leading coefficient must be nonzero"
    );
    let mut end = coeffs.len();
    while end > 1 && coeffs[end - 1] == 0.0 {
        end -= 1;
    }
    let zero_roots = coeffs.len() - end;
    let p = &coeffs[..end];
    let n = p.len() - 1;

    let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
    match n {
        0 => {}
        1 => roots.push(Complex64::new(-p[1] / p[0], 0.0)),
        _ => {
            let mut c = DMatrix::<f64>::zeros(n, n);
            for j in 0..n {
                c[(0, j)] = -p[j + 1] / p[0];
            }
            for i in 1..n {
                c[(i, i - 1)] = 1.0;
            }
            balance(&mut c);
            roots.extend(c.complex_eigenvalues().iter().copied());
        }
    }
    roots
}

/// Diagonal similarity scaling by powers of two (Parlett-Reinsch) so that
/// row and column norms are comparable. Eigenvalues are unchanged.
fn balance(a: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

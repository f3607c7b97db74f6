//! Small dense exact-rational matrix helpers: just enough linear algebra for
//! determinants, characteristic polynomials and block extraction. Float
//! eigenproblems go through nalgebra instead.

use crate::rational::{rat_i, rat_to_f64, Rat};
use num_traits::{One, Zero};

pub type RatMatrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    let t = &a[i][l] * &b[l][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

pub fn trace(a: &RatMatrix) -> Rat {
    (0..a.len()).fold(Rat::zero(), |acc, i| acc + &a[i][i])
}

/// Exact determinant by fraction-full Gaussian elimination.
pub fn det(a: &RatMatrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut out = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            out = -out;
        }
        let pv = m[col][col].clone();
        out *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    out
}

/// Monic characteristic polynomial of `a` via Faddeev-LeVerrier:
/// returns coefficients `c` with `char(x) = sum_k c[k] x^k`, `c[n] = 1`.
pub fn char_poly(a: &RatMatrix) -> Vec<Rat> {
    let n = a.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m = identity(n);
    for k in 1..=n {
        m = matmul(a, &m);
        let c = -trace(&m) / rat_i(k as i64);
        for row in 0..n {
            m[row][row] += &c;
        }
        coeffs[n - k] = c;
    }
    coeffs
}

/// Product of two dense univariate polynomials (coefficient vectors).
pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

pub fn to_f64_matrix(a: &RatMatrix) -> nalgebra::DMatrix<f64> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    nalgebra::DMatrix::from_fn(n, m, |i, j| rat_to_f64(&a[i][j]))
}

/// Real eigenvalues of a general square matrix, with a residual check:
/// every returned eigenvalue satisfies sigma_min(A - lambda I) <= tol * scale
/// and has imaginary part below `tol * scale`, otherwise `None`.
pub fn real_eigenvalues(a: &nalgebra::DMatrix<f64>, tol: f64) -> Option<Vec<f64>> {
    let n = a.nrows();
    if n == 0 {
        return Some(vec![]);
    }
    let scale = a.norm().max(1.0);
    let eig = a.clone().complex_eigenvalues();
    let mut out = Vec::with_capacity(n);
    for ev in eig.iter() {
        if ev.im.abs() > tol * scale {
            return None;
        }
        let shifted = a - nalgebra::DMatrix::identity(n, n) * ev.re;
        let smin = shifted
            .svd(false, false)
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if smin > tol * scale {
            return None;
        }
        out.push(ev.re);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(out)
}

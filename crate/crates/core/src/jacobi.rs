//! Jacobi coordinates of the four-body system, the exact diagonalization
//! identity of the kinetic form, and the S-state spectrum of the Jacobi
//! oscillator with its finite-difference radial oracle.
//!
//! Square roots live only in this module (as floats); every exact claim is
//! stated about squared quantities.

use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rat};
use num_traits::{One, Signed, Zero};

/// Four masses and four positions in a small configurable dimension.
#[derive(Clone, Debug)]
pub struct ParticleSystem {
    pub masses: [Rat; 4],
    /// `positions[i]` is the coordinate vector of particle `i+1`.
    pub positions: [Vec<Rat>; 4],
}

impl ParticleSystem {
    pub fn new(masses: [Rat; 4], positions: [Vec<Rat>; 4]) -> Result<Self> {
        if masses.iter().any(|m| !m.is_positive()) {
            return Err(Error::Config("masses must be positive".into()));
        }
        let dim = positions[0].len();
        if positions.iter().any(|p| p.len() != dim) || dim == 0 {
            return Err(Error::Config("positions must share a positive dimension".into()));
        }
        Ok(ParticleSystem { masses, positions })
    }

    pub fn dim(&self) -> usize {
        self.positions[0].len()
    }
}

/// Rows of the Jacobi transformation, kept as an exact squared normalizer
/// `c` and a rational coefficient vector `v`, so that row = sqrt(c) * v.
/// Row 0 is the center of mass; rows 1..3 are the Jacobi vectors.
pub fn jacobi_rows(masses: &[Rat; 4]) -> [(Rat, [Rat; 4]); 4] {
    let total: Rat = masses.iter().fold(Rat::zero(), |a, m| a + m);
    let partial = |j: usize| -> Rat {
        masses[..j].iter().fold(Rat::zero(), |a, m| a + m)
    };
    let mut rows: Vec<(Rat, [Rat; 4])> = Vec::with_capacity(4);
    rows.push((total.recip(), masses.clone()));
    for j in 1..=3usize {
        let mj = partial(j);
        let mj1 = partial(j + 1);
        let c = &masses[j] * &mj / &mj1;
        let mut v = std::array::from_fn(|_| Rat::zero());
        v[j] = Rat::one();
        for k in 0..j {
            v[k] = -&masses[k] / &mj;
        }
        rows.push((c, v));
    }
    [
        rows[0].clone(),
        rows[1].clone(),
        rows[2].clone(),
        rows[3].clone(),
    ]
}

/// Center-of-mass coordinate and the three Jacobi vectors, as floats.
pub fn jacobi_vectors(ps: &ParticleSystem) -> (Vec<f64>, [Vec<f64>; 3]) {
    let rows = jacobi_rows(&ps.masses);
    let dim = ps.dim();
    let eval_row = |(c, v): &(Rat, [Rat; 4])| -> Vec<f64> {
        let scale = rat_to_f64(c).sqrt();
        (0..dim)
            .map(|axis| {
                scale
                    * v.iter()
                        .zip(ps.positions.iter())
                        .map(|(coef, pos)| rat_to_f64(coef) * rat_to_f64(&pos[axis]))
                        .sum::<f64>()
            })
            .collect()
    };
    let r0 = eval_row(&rows[0]);
    let rj = [eval_row(&rows[1]), eval_row(&rows[2]), eval_row(&rows[3])];
    (r0, rj)
}

/// Result of the kinetic-energy diagonalization identity
/// `A diag(1/m) A^T = I`.
#[derive(Clone, Debug)]
pub struct KineticCheck {
    /// Exact diagonal entries (each must be 1).
    pub diagonal: [Rat; 4],
    /// Largest float magnitude among off-diagonal entries.
    pub max_off_diagonal: f64,
}

pub fn kinetic_diagonalization_check(masses: &[Rat; 4]) -> KineticCheck {
    let rows = jacobi_rows(masses);
    let diagonal = std::array::from_fn(|j| {
        let (c, v) = &rows[j];
        let quad: Rat = (0..4).map(|i| &v[i] * &v[i] / &masses[i]).fold(Rat::zero(), |a, t| a + t);
        c * quad
    });
    let mut max_off = 0.0f64;
    let rf: Vec<(f64, [f64; 4])> = rows
        .iter()
        .map(|(c, v)| (rat_to_f64(c).sqrt(), std::array::from_fn(|i| rat_to_f64(&v[i]))))
        .collect();
    let mf: [f64; 4] = std::array::from_fn(|i| rat_to_f64(&masses[i]));
    for j in 0..4 {
        for k in 0..4 {
            if j == k {
                continue;
            }
            let entry: f64 = (0..4)
                .map(|i| rf[j].0 * rf[j].1[i] * rf[k].0 * rf[k].1[i] / mf[i])
                .sum();
            max_off = max_off.max(entry.abs());
        }
    }
    KineticCheck {
        diagonal,
        max_off_diagonal: max_off,
    }
}

/// Exact mass-weighted squared spread about the center of mass,
/// `sum m_i |r_i - R_cm|^2`, and the exact sum `sum_j |r^(J)_j|^2`. Their
/// equality (coefficient one, not the cited reduced mass `mu`) is the
/// computed evidence on the Jacobi-normalization question.
pub fn moment_of_inertia_identity(ps: &ParticleSystem) -> (Rat, Rat) {
    let total: Rat = ps.masses.iter().fold(Rat::zero(), |a, m| a + m);
    let dim = ps.dim();
    let cm: Vec<Rat> = (0..dim)
        .map(|axis| {
            ps.masses
                .iter()
                .zip(ps.positions.iter())
                .map(|(m, p)| m * &p[axis])
                .fold(Rat::zero(), |a, t| a + t)
                / &total
        })
        .collect();
    let weighted: Rat = ps
        .masses
        .iter()
        .zip(ps.positions.iter())
        .map(|(m, p)| {
            (0..dim)
                .map(|axis| {
                    let dxy = &p[axis] - &cm[axis];
                    &dxy * &dxy
                })
                .fold(Rat::zero(), |a, t| a + t)
                * m
        })
        .fold(Rat::zero(), |a, t| a + t);
    let rows = jacobi_rows(&ps.masses);
    let jacobi_sum: Rat = rows[1..]
        .iter()
        .map(|(c, v)| {
            (0..dim)
                .map(|axis| {
                    let comp = v
                        .iter()
                        .zip(ps.positions.iter())
                        .map(|(coef, pos)| coef * &pos[axis])
                        .fold(Rat::zero(), |a, t| a + t);
                    &comp * &comp
                })
                .fold(Rat::zero(), |a, t| a + t)
                * c
        })
        .fold(Rat::zero(), |a, t| a + t);
    (weighted, jacobi_sum)
}

/// S-state spectrum of the Jacobi oscillator:
/// `E = omega sum_i sqrt(A_i) (4 n_i + d)`.
pub fn jacobi_spectrum(a: &[Rat; 3], omega: &Rat, d: &Rat, n: [u32; 3]) -> f64 {
    let w = rat_to_f64(omega);
    let df = rat_to_f64(d);
    (0..3)
        .map(|i| w * rat_to_f64(&a[i]).sqrt() * (4.0 * n[i] as f64 + df))
        .sum()
}

/// Finite-difference oracle for one radial oscillator
/// `-u'' - ((d-1)/r) u' + (sqrt(A) omega)^2 r^2 u` in the S sector, for
/// `d = 1` (even states, Neumann at the origin on a staggered grid) and
/// `d = 3` (through `v = r u`, Dirichlet). Returns `(E0, E1)` of the sector,
/// Richardson-extrapolated over two grids.
pub fn radial_oracle(a_coeff: f64, omega: f64, d: u32) -> Result<(f64, f64)> {
    if d != 1 && d != 3 {
        return Err(Error::Config("the radial oracle supports d = 1 and d = 3".into()));
    }
    let wt = a_coeff.sqrt() * omega;
    // e^{-wt r^2 / 2} < 1e-14  =>  r > sqrt(2 * 14 ln 10 / wt)
    let rmax = (2.0 * 14.0 * std::f64::consts::LN_10 / wt).sqrt() * 1.1;
    let solve = |n: usize| -> (f64, f64) {
        let h = rmax / n as f64;
        // grids: d=1: r_i = (i + 1/2) h with mirror at 0; d=3: r_i = (i+1) h
        let count = n - 1;
        let r = |i: usize| -> f64 {
            if d == 1 {
                (i as f64 + 0.5) * h
            } else {
                (i as f64 + 1.0) * h
            }
        };
        let pot = |i: usize| wt * wt * r(i) * r(i);
        let mut diag: Vec<f64> = (0..count).map(|i| 2.0 / (h * h) + pot(i)).collect();
        if d == 1 {
            diag[0] = 1.0 / (h * h) + pot(0); // mirrored ghost point
        }
        let off = -1.0 / (h * h);
        let predicted0 = wt * if d == 1 { 1.0 } else { 3.0 };
        let e0 = tridiag_inverse_iteration(&diag, off, predicted0 - 2.0 * wt);
        let e1 = tridiag_inverse_iteration(&diag, off, e0 + 3.5 * wt);
        (e0, e1)
    };
    let (e0a, e1a) = solve(3000);
    let (e0b, e1b) = solve(6000);
    Ok((
        (4.0 * e0b - e0a) / 3.0,
        (4.0 * e1b - e1a) / 3.0,
    ))
}

/// Smallest-in-magnitude eigenvalue of `T - shift` by inverse iteration with
/// a Thomas solve, returned as the Rayleigh quotient of the converged
/// vector; `T` is symmetric tridiagonal with constant off-diagonal.
fn tridiag_inverse_iteration(diag: &[f64], off: f64, shift: f64) -> f64 {
    let n = diag.len();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
    let mut lambda = shift;
    for _ in 0..200 {
        // solve (T - shift I) w = v by the Thomas algorithm
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        let b0 = diag[0] - shift;
        c_prime[0] = off / b0;
        d_prime[0] = v[0] / b0;
        for i in 1..n {
            let m = diag[i] - shift - off * c_prime[i - 1];
            c_prime[i] = off / m;
            d_prime[i] = (v[i] - off * d_prime[i - 1]) / m;
        }
        let mut w = vec![0.0; n];
        w[n - 1] = d_prime[n - 1];
        for i in (0..n - 1).rev() {
            w[i] = d_prime[i] - c_prime[i] * w[i + 1];
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= norm;
        }
        // Rayleigh quotient of w under T
        let mut tv = vec![0.0; n];
        for i in 0..n {
            tv[i] = diag[i] * w[i]
                + if i > 0 { off * w[i - 1] } else { 0.0 }
                + if i + 1 < n { off * w[i + 1] } else { 0.0 };
        }
        let new_lambda: f64 = w.iter().zip(tv.iter()).map(|(a, b)| a * b).sum();
        let delta = (new_lambda - lambda).abs();
        lambda = new_lambda;
        v = w;
        if delta < 1e-13 * lambda.abs().max(1.0) {
            break;
        }
    }
    lambda
}

//! Seeded random draws of exact-rational test data: masses, gauge
//! parameters, and rho-points. Interior points come from actual rational
//! tetrahedron coordinates, so all geometric constraints hold exactly.

use crate::geometry::{v4_squared, MassConfig, RhoPoint};
use crate::model::GaugeParams;
use crate::rational::{rat_i, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

/// Rational with numerator in `[lo, hi]` and denominator in `[1, max_den]`.
pub fn random_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rat {
    let n = rng.random_range(lo..=hi);
    let d = rng.random_range(1..=max_den);
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn random_positive_rat<R: Rng>(rng: &mut R, hi: i64, max_den: i64) -> Rat {
    loop {
        let x = random_rat(rng, 1, hi, max_den);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Arbitrary non-negative rho coordinates (not necessarily physical).
pub fn random_rho_point<R: Rng>(rng: &mut R) -> RhoPoint {
    RhoPoint::new(std::array::from_fn(|_| random_positive_rat(rng, 8, 5))).unwrap()
}

/// A strictly interior point: squared distances of four random rational
/// points in 3-space, resampled until the tetrahedron is non-degenerate.
pub fn random_interior_point<R: Rng>(rng: &mut R) -> RhoPoint {
    loop {
        let pts: Vec<[Rat; 3]> =
            (0..4).map(|_| std::array::from_fn(|_| random_rat(rng, -12, 12, 4))).collect();
        let mut coords = std::array::from_fn(|_| Rat::zero());
        for (k, v) in crate::poly::VarId::ALL.iter().enumerate() {
            let (i, j) = v.pair();
            let (pi, pj) = (&pts[i - 1], &pts[j - 1]);
            coords[k] = (0..3)
                .map(|c| {
                    let d = &pi[c] - &pj[c];
                    &d * &d
                })
                .fold(Rat::zero(), |acc, t| acc + t);
        }
        let x = RhoPoint::new(coords).unwrap();
        if !v4_squared(&x).is_zero() {
            return x;
        }
    }
}

/// Masses in roughly `[1/4, 8]`.
pub fn random_masses<R: Rng>(rng: &mut R) -> MassConfig {
    MassConfig::new(std::array::from_fn(|_| random_positive_rat(rng, 8, 4))).unwrap()
}

/// Strictly positive gauge parameters and frequency.
pub fn random_gauge<R: Rng>(rng: &mut R) -> GaugeParams {
    GaugeParams::new(
        std::array::from_fn(|_| random_positive_rat(rng, 6, 4)),
        random_positive_rat(rng, 4, 3),
    )
    .unwrap()
}

/// Rational dimension parameter from a small menu including generic values.
pub fn random_dimension<R: Rng>(rng: &mut R) -> Rat {
    let menu = [rat_i(3), rat_i(5), Rat::new(BigInt::from(7), BigInt::from(2))];
    menu[rng.random_range(0..menu.len())].clone()
}

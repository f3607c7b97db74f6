//! Geometry of the tetrahedron of interaction: Heron areas, Cayley-Menger
//! volume, physical-domain membership, the co-metric and its determinant
//! identity, gauge factors, effective potentials and the radial measure.

use crate::diffop::{apply_to_power_product, Factor};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Poly6, VarId};
use crate::rational::{rat, rat_i, Rat};
use num_traits::{One, Signed, Zero};

/// A point in the six squared-distance coordinates, all non-negative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RhoPoint(pub [Rat; 6]);

impl RhoPoint {
    pub fn new(coords: [Rat; 6]) -> Result<Self> {
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::Config(
                "rho coordinates must be non-negative".into(),
            ));
        }
        Ok(RhoPoint(coords))
    }

    pub fn get(&self, v: VarId) -> &Rat {
        &self.0[v.index()]
    }

    pub fn scaled(&self, lambda: &Rat) -> Self {
        RhoPoint(std::array::from_fn(|i| &self.0[i] * lambda))
    }
}

/// Four positive masses with the derived reduced masses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MassConfig {
    m: [Rat; 4],
}

impl MassConfig {
    pub fn new(m: [Rat; 4]) -> Result<Self> {
        if m.iter().any(|x| !x.is_positive()) {
            return Err(Error::Config("masses must be positive".into()));
        }
        Ok(MassConfig { m })
    }

    pub fn equal(m: Rat) -> Result<Self> {
        Self::new([m.clone(), m.clone(), m.clone(), m])
    }

    /// Mass of particle `i`, 1-based.
    pub fn mass(&self, i: usize) -> &Rat {
        &self.m[i - 1]
    }

    pub fn masses(&self) -> &[Rat; 4] {
        &self.m
    }

    pub fn total(&self) -> Rat {
        self.m.iter().fold(Rat::zero(), |acc, x| acc + x)
    }

    /// mu_ij = m_i m_j / (m_i + m_j).
    pub fn mu(&self, v: VarId) -> Rat {
        let (i, j) = v.pair();
        let (mi, mj) = (self.mass(i), self.mass(j));
        mi * mj / (mi + mj)
    }

    /// 1/mu_ij = 1/m_i + 1/m_j.
    pub fn inv_mu(&self, v: VarId) -> Rat {
        let (i, j) = v.pair();
        self.mass(i).recip() + self.mass(j).recip()
    }

    /// c_m = M / (m1 m2 m3 m4)^2.
    pub fn c_m(&self) -> Rat {
        let p = self.mass_product();
        self.total() / (&p * &p)
    }

    pub fn mass_product(&self) -> Rat {
        self.m.iter().fold(Rat::one(), |acc, x| acc * x)
    }
}

/// Heron quantity 16*S^2 as a function of the three squared sides:
/// `2(ab+ac+bc) - (a^2+b^2+c^2)`. The squared triangle area is this over 16.
fn heron16(a: &Rat, b: &Rat, c: &Rat) -> Rat {
    rat_i(2) * (a * b + a * c + b * c) - (a * a + b * b + c * c)
}

/// Squared area of the triangle with squared sides `(rho_a, rho_b, rho_c)`.
/// May be negative outside the physical domain; returned as-is.
pub fn heron_s2(rho_a: &Rat, rho_b: &Rat, rho_c: &Rat) -> Rat {
    heron16(rho_a, rho_b, rho_c) / rat_i(16)
}

/// The same Heron quantity as a polynomial in three chosen variables.
pub fn heron_s2_poly(a: VarId, b: VarId, c: VarId) -> Poly6 {
    let (pa, pb, pc) = (Poly6::var(a.index()), Poly6::var(b.index()), Poly6::var(c.index()));
    let cross = &(&pa * &pb) + &(&(&pa * &pc) + &(&pb * &pc));
    let squares = &(&pa * &pa) + &(&(&pb * &pb) + &(&pc * &pc));
    (&cross.scale(&rat_i(2)) - &squares).scale(&rat(1, 16))
}

/// The four faces of the tetrahedron, as triples of pair variables, indexed
/// by the opposite particle (face 1 omits particle 1, and so on).
pub const FACES: [(VarId, VarId, VarId); 4] = [
    (VarId::R23, VarId::R24, VarId::R34),
    (VarId::R13, VarId::R14, VarId::R34),
    (VarId::R12, VarId::R14, VarId::R24),
    (VarId::R12, VarId::R13, VarId::R23),
];

/// Squared volume of the tetrahedron as the degree-3 polynomial of the six
/// squared edges.
pub fn v4_squared_poly() -> Poly6 {
    let v = |id: VarId| Poly6::var(id.index());
    let (r12, r13, r14) = (v(VarId::R12), v(VarId::R13), v(VarId::R14));
    let (r23, r24, r34) = (v(VarId::R23), v(VarId::R24), v(VarId::R34));
    let sum_quad = &(&r13 + &r14) + &(&r23 + &r24);
    let term1 = &(&(&sum_quad * &r34) - &(&(&r13 - &r14) * &(&r23 - &r24))) - &(&r34 * &r34);
    let part1 = &term1 * &r12;
    let part2 = &(&(&r13 * &r13) * &r24) + &(&(&r12 * &r12) * &r34);
    let inner3 = &(&(&r14 - &r24) * &r34) - &(&r14 * &(&(&r14 + &r23) - &r24));
    let part3 = &r23 * &inner3;
    let inner4 =
        &(&r14 * &(&(&r23 + &r24) - &r34)) + &(&r24 * &(&(&r23 - &r24) + &r34));
    let part4 = &r13 * &inner4;
    (&(&(&part1 - &part2) + &part3) + &part4).scale(&rat(1, 144))
}

/// Exact squared volume at a point, via the polynomial form.
pub fn v4_squared(x: &RhoPoint) -> Rat {
    v4_squared_poly().eval(&x.0)
}

/// Independent oracle: squared volume from the 5x5 bordered Cayley-Menger
/// determinant of squared distances, `V^2 = det / 288`. Shares no code with
/// the polynomial expansion above.
pub fn cayley_menger_v4_squared(x: &RhoPoint) -> Rat {
    let r = |v: VarId| x.get(v).clone();
    let z = Rat::zero();
    let o = Rat::one();
    let m: Vec<Vec<Rat>> = vec![
        vec![z.clone(), o.clone(), o.clone(), o.clone(), o.clone()],
        vec![o.clone(), z.clone(), r(VarId::R12), r(VarId::R13), r(VarId::R14)],
        vec![o.clone(), r(VarId::R12), z.clone(), r(VarId::R23), r(VarId::R24)],
        vec![o.clone(), r(VarId::R13), r(VarId::R23), z.clone(), r(VarId::R34)],
        vec![o, r(VarId::R14), r(VarId::R24), r(VarId::R34), z],
    ];
    linalg::det(&m) / rat_i(288)
}

/// Membership of a point in the physical domain.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainVerdict {
    Interior,
    Boundary,
    Exterior,
}

/// Interior iff every coordinate and every face Heron quantity and the
/// squared volume are strictly positive; boundary when the weakest of these
/// is exactly zero; exterior otherwise. (A face Heron value is positive
/// exactly when all three triangle inequalities of that face are strict.)
pub fn domain_check(x: &RhoPoint) -> DomainVerdict {
    let mut boundary = false;
    for c in &x.0 {
        if c.is_zero() {
            boundary = true;
        }
    }
    for (a, b, c) in FACES {
        let s2 = heron_s2(x.get(a), x.get(b), x.get(c));
        if s2.is_negative() {
            return DomainVerdict::Exterior;
        }
        if s2.is_zero() {
            boundary = true;
        }
    }
    let v4 = v4_squared(x);
    if v4.is_negative() {
        return DomainVerdict::Exterior;
    }
    if v4.is_zero() {
        boundary = true;
    }
    if boundary {
        DomainVerdict::Boundary
    } else {
        DomainVerdict::Interior
    }
}

/// The 6x6 co-metric with polynomial entries, rows/columns in `VarId` order.
/// Entries `(12,34)`, `(13,24)`, `(14,23)` are identically zero.
pub fn cometric_poly(mc: &MassConfig) -> [[Poly6; 6]; 6] {
    let mut g: [[Poly6; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| Poly6::zero()));
    for v in VarId::ALL {
        let k = v.index();
        g[k][k] = Poly6::var(k).scale(&(rat_i(2) / mc.mu(v)));
    }
    // off-diagonal entry for pairs sharing particle `s`:
    // (rho_a + rho_b - rho_c)/m_s where c is the pair of the two non-shared
    // particles
    let mut set = |a: VarId, b: VarId| {
        let (i1, j1) = a.pair();
        let (i2, j2) = b.pair();
        let mut shared = None;
        for p in [i1, j1] {
            if p == i2 || p == j2 {
                shared = Some(p);
            }
        }
        let Some(s) = shared else {
            return; // opposite pairs: entry stays zero
        };
        let o1 = if i1 == s { j1 } else { i1 };
        let o2 = if i2 == s { j2 } else { i2 };
        let c = VarId::from_pair(o1, o2);
        let num = &(&Poly6::var(a.index()) + &Poly6::var(b.index())) - &Poly6::var(c.index());
        let entry = num.scale(&mc.mass(s).recip());
        g[a.index()][b.index()] = entry.clone();
        g[b.index()][a.index()] = entry;
    };
    for a in VarId::ALL {
        for b in VarId::ALL {
            if a.index() < b.index() {
                set(a, b);
            }
        }
    }
    g
}

/// Co-metric evaluated at a point.
pub fn cometric(mc: &MassConfig, x: &RhoPoint) -> [[Rat; 6]; 6] {
    let g = cometric_poly(mc);
    std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].eval(&x.0)))
}

/// Determinant of a 6x6 polynomial matrix by Laplace expansion with
/// row-subset memoization.
fn poly_det6(g: &[[Poly6; 6]; 6]) -> Poly6 {
    use std::collections::HashMap;
    // minor over columns col.. using the rows in `mask`
    fn minor(
        g: &[[Poly6; 6]; 6],
        col: usize,
        mask: u32,
        memo: &mut HashMap<(usize, u32), Poly6>,
    ) -> Poly6 {
        if col == 6 {
            return Poly6::one();
        }
        if let Some(hit) = memo.get(&(col, mask)) {
            return hit.clone();
        }
        let mut out = Poly6::zero();
        let mut sign = Rat::one();
        for row in 0..6 {
            if mask & (1 << row) == 0 {
                continue;
            }
            if !g[row][col].is_zero() {
                let sub = minor(g, col + 1, mask & !(1 << row), memo);
                out.add_assign_scaled(&g[row][col].mul_poly(&sub), &sign);
            }
            sign = -sign;
        }
        memo.insert((col, mask), out.clone());
        out
    }
    let mut memo = HashMap::new();
    minor(g, 0, 0b111111, &mut memo)
}

/// Determinant of the co-metric as an exact polynomial (degree 6).
pub fn cometric_det_poly(mc: &MassConfig) -> Poly6 {
    poly_det6(&cometric_poly(mc))
}

/// Mass-weighted sum of the squared sides, `sum m_i m_j rho_ij`.
pub fn sum_v2m(mc: &MassConfig, x: &RhoPoint) -> Rat {
    VarId::ALL
        .iter()
        .map(|&v| {
            let (i, j) = v.pair();
            mc.mass(i) * mc.mass(j) * x.get(v)
        })
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// Mass-weighted sum of the squared face areas, `sum S^2(face_i)/m_i`.
pub fn sum_v3m(mc: &MassConfig, x: &RhoPoint) -> Rat {
    FACES
        .iter()
        .enumerate()
        .map(|(i, &(a, b, c))| heron_s2(x.get(a), x.get(b), x.get(c)) / mc.mass(i + 1))
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// Result of the determinant identity check at a point.
#[derive(Clone, Debug)]
pub struct DetIdentity {
    pub lhs: Rat,
    pub rhs: Rat,
    pub equal: bool,
}

/// `det(cometric)` against the factorized form
/// `9216 c_m V4^2 [ (sum V2m)(sum V3m) - 9 M V4^2 ]`.
pub fn det_identity_check(mc: &MassConfig, x: &RhoPoint) -> DetIdentity {
    let g = cometric(mc, x);
    let lhs = linalg::det(&g.iter().map(|r| r.to_vec()).collect());
    let v4 = v4_squared(x);
    let bracket = sum_v2m(mc, x) * sum_v3m(mc, x) - rat_i(9) * mc.total() * &v4;
    let rhs = rat_i(9216) * mc.c_m() * v4 * bracket;
    let equal = lhs == rhs;
    DetIdentity { lhs, rhs, equal }
}

/// Transcription of the displayed effective potential, reading the squared
/// tokens as the plain weighted sums. The first term is
/// `[3 X^2 + 28 M p Y] / [32 p (X Y - 9 M V4^2)]` with `X = sum V2m`,
/// `Y = sum V3m`, `p = m1 m2 m3 m4`; the second term
/// `(d-5)(d-3) Y / (72 V4^2)` vanishes for d = 3, 5.
pub fn veff_transcribed(mc: &MassConfig, d: &Rat, x: &RhoPoint) -> Result<Rat> {
    let xx = sum_v2m(mc, x);
    let y = sum_v3m(mc, x);
    let v4 = v4_squared(x);
    let p = mc.mass_product();
    let m = mc.total();
    let denom = rat_i(32) * &p * (&xx * &y - rat_i(9) * &m * &v4);
    if denom.is_zero() || v4.is_zero() {
        return Err(Error::SingularPoint(
            "effective potential undefined on the domain boundary".into(),
        ));
    }
    let first = (rat_i(3) * &xx * &xx + rat_i(28) * &m * &p * &y) / denom;
    let second = (d - rat_i(5)) * (d - rat_i(3)) * &y / (rat_i(72) * &v4);
    Ok(first + second)
}

/// How to read the volume factor of the gauge function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaConvention {
    /// `Gamma = D^{-1/4} (V4^2)^{1 - d/4}` — the reading under which the
    /// displayed effective potential and the Laplace-Beltrami equivalence
    /// hold exactly.
    SquaredVolumeBase,
    /// `Gamma = D^{-1/4} (V4)^{1 - d/4}`, i.e. exponent `(1 - d/4)/2` on the
    /// squared-volume polynomial. Kept for the discrepancy report.
    LiteralVolumeBase,
}

fn gamma_factors(mc: &MassConfig, d: &Rat, conv: GammaConvention) -> [Factor<6>; 2] {
    let dm = cometric_det_poly(mc);
    let v4 = v4_squared_poly();
    let base_exp = Rat::one() - d / rat_i(4);
    let exp = match conv {
        GammaConvention::SquaredVolumeBase => base_exp,
        GammaConvention::LiteralVolumeBase => base_exp / rat_i(2),
    };
    [Factor::Pow(dm, rat(-1, 4)), Factor::Pow(v4, exp)]
}

/// Chain-rule oracle: `-[Delta_rad Gamma] / Gamma` at `x`, exact.
pub fn veff_oracle(
    mc: &MassConfig,
    d: &Rat,
    x: &RhoPoint,
    conv: GammaConvention,
) -> Result<Rat> {
    if domain_check(x) != DomainVerdict::Interior {
        return Err(Error::SingularPoint(
            "gauge factor requires a strictly interior point".into(),
        ));
    }
    let delta = crate::model::build_delta_rad(mc, d);
    let factors = gamma_factors(mc, d, conv);
    Ok(-apply_to_power_product(&delta, &factors, &x.0)?)
}

/// Both values of the effective potential at an interior point: the
/// transcription of the displayed formula and the chain-rule oracle
/// (computed with the squared-volume gauge base, under which they agree).
pub fn gauge_factor_and_veff(mc: &MassConfig, d: &Rat, x: &RhoPoint) -> Result<(Rat, Rat)> {
    let transcribed = veff_transcribed(mc, d, x)?;
    let oracle = veff_oracle(mc, d, x, GammaConvention::SquaredVolumeBase)?;
    Ok((transcribed, oracle))
}

/// Pointwise certification of the gauge equivalence: the first-order part of
/// `Gamma^{-1} Delta_rad Gamma` must match the first-order part of the
/// Laplace-Beltrami operator of the co-metric,
/// `d/mu_nu + 2 sum_mu g^{mu nu} d_mu log Gamma
///  == sum_mu d_mu g^{mu nu} - (1/2) sum_mu g^{mu nu} d_mu log D`.
/// Returns the per-direction residuals (all zero iff the equivalence holds).
pub fn gauge_equivalence_residuals(
    mc: &MassConfig,
    d: &Rat,
    x: &RhoPoint,
    conv: GammaConvention,
) -> Result<[Rat; 6]> {
    if domain_check(x) != DomainVerdict::Interior {
        return Err(Error::SingularPoint("interior point required".into()));
    }
    let g = cometric_poly(mc);
    let dm = cometric_det_poly(mc);
    let v4 = v4_squared_poly();
    let dm_val = dm.eval(&x.0);
    let v4_val = v4.eval(&x.0);
    let s = rat(-1, 4);
    let t = match conv {
        GammaConvention::SquaredVolumeBase => Rat::one() - d / rat_i(4),
        GammaConvention::LiteralVolumeBase => (Rat::one() - d / rat_i(4)) / rat_i(2),
    };
    let log_gamma_grad: Vec<Rat> = (0..6)
        .map(|i| {
            &s * dm.diff(i, 1).eval(&x.0) / &dm_val + &t * v4.diff(i, 1).eval(&x.0) / &v4_val
        })
        .collect();
    let log_d_grad: Vec<Rat> = (0..6).map(|i| dm.diff(i, 1).eval(&x.0) / &dm_val).collect();
    Ok(std::array::from_fn(|nu| {
        let lhs = d * mc.inv_mu(VarId::ALL[nu])
            + rat_i(2)
                * (0..6)
                    .map(|mu| g[mu][nu].eval(&x.0) * &log_gamma_grad[mu])
                    .fold(Rat::zero(), |a, b| a + b);
        let rhs = (0..6)
            .map(|mu| g[mu][nu].diff(mu, 1).eval(&x.0))
            .fold(Rat::zero(), |a, b| a + b)
            - rat(1, 2)
                * (0..6)
                    .map(|mu| g[mu][nu].eval(&x.0) * &log_d_grad[mu])
                    .fold(Rat::zero(), |a, b| a + b);
        lhs - rhs
    }))
}

/// Radial measure value `V4^{d-4}`, i.e. `(V4^2)^{(d-4)/2}`. Evaluated when
/// the half-exponent is integral, otherwise returned symbolically.
#[derive(Clone, PartialEq, Debug)]
pub enum MeasureValue {
    Exact(Rat),
    /// `(base, exponent)` with the exponent a non-integral rational.
    Symbolic(Rat, Rat),
}

pub fn radial_measure(d: &Rat, x: &RhoPoint) -> Result<MeasureValue> {
    if domain_check(x) != DomainVerdict::Interior {
        return Err(Error::SingularPoint(
            "measure evaluated on the domain boundary".into(),
        ));
    }
    let base = v4_squared(x);
    let exp = (d - rat_i(4)) / rat_i(2);
    if exp.is_integer() {
        let k = exp.to_integer();
        let k_i64 = i64::try_from(k.clone()).expect("measure exponent out of range");
        Ok(MeasureValue::Exact(crate::rational::rat_pow(&base, k_i64)))
    } else {
        Ok(MeasureValue::Symbolic(base, exp))
    }
}

/// Reduced co-metric variants with classical coordinates frozen.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DetVariant {
    /// `m1 -> inf`, other masses equal `m`; all six variables dynamical.
    Atomic,
    /// `m1, m2 -> inf`, `m3 = m4 = m`; `rho12` classical.
    MolecularTwoCenter,
    /// `m1, m2, m3 -> inf`, `m4 = m`; `rho12, rho13, rho23` classical.
    ThreeCenter,
}

/// Value of the displayed factorized determinant for the given variant;
/// callers cross-check it against the direct determinant of the reduced
/// co-metric via [`special_cometric_det`].
pub fn special_determinant(variant: DetVariant, m: &Rat, x: &RhoPoint) -> Rat {
    let v4 = v4_squared(x);
    let r = |v: VarId| x.get(v);
    match variant {
        DetVariant::Atomic => {
            // 9216/m^6 V4^2 [ (rho12+rho13+rho14) (S^2_2 + S^2_3 + S^2_4) - 9 V4^2 ]
            let faces_sum = FACES[1..]
                .iter()
                .map(|&(a, b, c)| heron_s2(r(a), r(b), r(c)))
                .fold(Rat::zero(), |acc, t| acc + t);
            let edge_sum = r(VarId::R12) + r(VarId::R13) + r(VarId::R14);
            rat_i(9216) / crate::rational::rat_pow(m, 6)
                * &v4
                * (edge_sum * faces_sum - rat_i(9) * &v4)
        }
        DetVariant::MolecularTwoCenter => {
            let g2 = molecular_g2(x);
            rat_i(288) / crate::rational::rat_pow(m, 5) * v4 * g2
        }
        DetVariant::ThreeCenter => rat_i(288) / crate::rational::rat_pow(m, 3) * v4,
    }
}

/// `G_2 = 2 rho12 (rho13+rho14+rho23+rho24-rho12) - (rho13-rho23)^2 - (rho14-rho24)^2`.
pub fn molecular_g2(x: &RhoPoint) -> Rat {
    let r = |v: VarId| x.get(v);
    let sum = r(VarId::R13) + r(VarId::R14) + r(VarId::R23) + r(VarId::R24) - r(VarId::R12);
    let d1 = r(VarId::R13) - r(VarId::R23);
    let d2 = r(VarId::R14) - r(VarId::R24);
    rat_i(2) * r(VarId::R12) * sum - &d1 * &d1 - &d2 * &d2
}

/// Direct determinant of the reduced co-metric for the variant (6x6 for
/// atomic, 5x5 for molecular, 3x3 for three-center), the independent side of
/// the factorization check.
pub fn special_cometric_det(variant: DetVariant, m: &Rat, x: &RhoPoint) -> Rat {
    let r = |v: VarId| x.get(v).clone();
    let inv_m = m.recip();
    let entry = |a: VarId, b: VarId, c: VarId| (r(a) + r(b) - r(c)) * &inv_m;
    let mat: Vec<Vec<Rat>> = match variant {
        DetVariant::Atomic => {
            // limit of the generic co-metric: 1/m1 terms vanish, mu_1j -> m
            let z = Rat::zero;
            let two = |v: VarId| r(v) * rat_i(2) * &inv_m;
            let four = |v: VarId| r(v) * rat_i(4) * &inv_m;
            vec![
                vec![
                    two(VarId::R12),
                    z(),
                    z(),
                    entry(VarId::R12, VarId::R23, VarId::R13),
                    entry(VarId::R12, VarId::R24, VarId::R14),
                    z(),
                ],
                vec![
                    z(),
                    two(VarId::R13),
                    z(),
                    entry(VarId::R13, VarId::R23, VarId::R12),
                    z(),
                    entry(VarId::R13, VarId::R34, VarId::R14),
                ],
                vec![
                    z(),
                    z(),
                    two(VarId::R14),
                    z(),
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    entry(VarId::R14, VarId::R34, VarId::R13),
                ],
                vec![
                    entry(VarId::R12, VarId::R23, VarId::R13),
                    entry(VarId::R13, VarId::R23, VarId::R12),
                    z(),
                    four(VarId::R23),
                    entry(VarId::R23, VarId::R24, VarId::R34),
                    entry(VarId::R23, VarId::R34, VarId::R24),
                ],
                vec![
                    entry(VarId::R12, VarId::R24, VarId::R14),
                    z(),
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    entry(VarId::R23, VarId::R24, VarId::R34),
                    four(VarId::R24),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                ],
                vec![
                    z(),
                    entry(VarId::R13, VarId::R34, VarId::R14),
                    entry(VarId::R14, VarId::R34, VarId::R13),
                    entry(VarId::R23, VarId::R34, VarId::R24),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                    four(VarId::R34),
                ],
            ]
        }
        DetVariant::MolecularTwoCenter => {
            let z = Rat::zero;
            let two = |v: VarId| r(v) * rat_i(2) * &inv_m;
            let four = |v: VarId| r(v) * rat_i(4) * &inv_m;
            vec![
                vec![
                    two(VarId::R13),
                    z(),
                    entry(VarId::R13, VarId::R23, VarId::R12),
                    z(),
                    entry(VarId::R13, VarId::R34, VarId::R14),
                ],
                vec![
                    z(),
                    two(VarId::R14),
                    z(),
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    entry(VarId::R14, VarId::R34, VarId::R13),
                ],
                vec![
                    entry(VarId::R13, VarId::R23, VarId::R12),
                    z(),
                    two(VarId::R23),
                    z(),
                    entry(VarId::R23, VarId::R34, VarId::R24),
                ],
                vec![
                    z(),
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    z(),
                    two(VarId::R24),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                ],
                vec![
                    entry(VarId::R13, VarId::R34, VarId::R14),
                    entry(VarId::R14, VarId::R34, VarId::R13),
                    entry(VarId::R23, VarId::R34, VarId::R24),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                    four(VarId::R34),
                ],
            ]
        }
        DetVariant::ThreeCenter => {
            let two = |v: VarId| r(v) * rat_i(2) * &inv_m;
            vec![
                vec![
                    two(VarId::R14),
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    entry(VarId::R14, VarId::R34, VarId::R13),
                ],
                vec![
                    entry(VarId::R14, VarId::R24, VarId::R12),
                    two(VarId::R24),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                ],
                vec![
                    entry(VarId::R14, VarId::R34, VarId::R13),
                    entry(VarId::R24, VarId::R34, VarId::R23),
                    two(VarId::R34),
                ],
            ]
        }
    };
    linalg::det(&mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;

    fn ones() -> RhoPoint {
        RhoPoint(std::array::from_fn(|_| Rat::one()))
    }

    fn pt(vals: [i64; 6]) -> RhoPoint {
        RhoPoint(std::array::from_fn(|i| rat_i(vals[i])))
    }

    #[test]
    fn heron_examples() {
        assert_eq!(heron_s2(&rat_i(1), &rat_i(1), &rat_i(1)), rat(3, 16));
        assert_eq!(heron_s2(&rat_i(9), &rat_i(16), &rat_i(25)), rat_i(36));
        assert_eq!(heron_s2(&rat_i(1), &rat_i(1), &rat_i(4)), rat_i(0));
    }

    #[test]
    fn heron_matches_product_form_on_perfect_squares() {
        // (a+b-c)(a+c-b)(b+c-a)(a+b+c)/16 with sides a,b,c
        let sides = [(3i64, 4i64, 5i64), (2, 3, 4), (7, 8, 9)];
        for (a, b, c) in sides {
            let s2 = heron_s2(&rat_i(a * a), &rat_i(b * b), &rat_i(c * c));
            let prod = rat_i((a + b - c) * (a + c - b) * (b + c - a) * (a + b + c)) / rat_i(16);
            assert_eq!(s2, prod);
        }
    }

    #[test]
    fn v4_examples() {
        assert_eq!(v4_squared(&ones()), rat(1, 72));
        assert_eq!(cayley_menger_v4_squared(&ones()), rat(1, 72));
        // unit square: coplanar
        let sq = pt([1, 2, 1, 1, 2, 1]);
        assert_eq!(v4_squared(&sq), rat_i(0));
        // homogeneity degree 3
        let four = ones().scaled(&rat_i(4));
        assert_eq!(v4_squared(&four), rat(64, 72));
    }

    #[test]
    fn v4_equals_cayley_menger_on_random_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let x = sampling::random_rho_point(&mut rng);
            assert_eq!(v4_squared(&x), cayley_menger_v4_squared(&x));
        }
    }

    #[test]
    fn domain_examples() {
        assert_eq!(domain_check(&ones()), DomainVerdict::Interior);
        assert_eq!(domain_check(&pt([1, 2, 1, 1, 2, 1])), DomainVerdict::Boundary);
        assert_eq!(
            domain_check(&pt([100, 1, 1, 1, 1, 1])),
            DomainVerdict::Exterior
        );
    }

    #[test]
    fn cometric_entries() {
        let mc = MassConfig::equal(rat_i(1)).unwrap();
        let g = cometric(&mc, &ones());
        assert_eq!(g[0][0], rat_i(4)); // 2/mu12 with mu12 = 1/2
        assert_eq!(g[0][5], rat_i(0));
        assert_eq!(g[1][4], rat_i(0));
        assert_eq!(g[2][3], rat_i(0));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = sampling::random_rho_point(&mut rng);
            let mcr = sampling::random_masses(&mut rng);
            let g = cometric(&mcr, &x);
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(g[i][j], g[j][i]);
                }
            }
        }
    }

    #[test]
    fn det_identity_examples() {
        let mc = MassConfig::equal(rat_i(1)).unwrap();
        // coplanar: both sides zero
        let sq = pt([1, 2, 1, 1, 2, 1]);
        let chk = det_identity_check(&mc, &sq);
        assert!(chk.equal && chk.lhs.is_zero());
        let chk1 = det_identity_check(&mc, &ones());
        assert!(chk1.equal);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = sampling::random_interior_point(&mut rng);
            let mcr = sampling::random_masses(&mut rng);
            assert!(det_identity_check(&mcr, &x).equal);
        }
    }

    #[test]
    fn det_poly_matches_pointwise_det() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mc = sampling::random_masses(&mut rng);
        let dp = cometric_det_poly(&mc);
        for _ in 0..5 {
            let x = sampling::random_rho_point(&mut rng);
            let g = cometric(&mc, &x);
            assert_eq!(dp.eval(&x.0), linalg::det(&g.iter().map(|r| r.to_vec()).collect()));
        }
    }

    #[test]
    fn veff_oracle_matches_transcription() {
        let mc = MassConfig::equal(rat_i(1)).unwrap();
        for d in [rat_i(3), rat_i(5), rat(7, 2)] {
            let (tr, or) = gauge_factor_and_veff(&mc, &d, &ones()).unwrap();
            assert_eq!(tr, or, "d = {d}");
        }
        // d = 3 on the equal-mass unit point: first term only
        let (tr, _) = gauge_factor_and_veff(&mc, &rat_i(3), &ones()).unwrap();
        assert_eq!(tr, rat(3, 2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..3 {
            let x = sampling::random_interior_point(&mut rng);
            let mcr = sampling::random_masses(&mut rng);
            for d in [rat_i(3), rat(7, 2)] {
                let (tr, or) = gauge_factor_and_veff(&mcr, &d, &x).unwrap();
                assert_eq!(tr, or);
            }
        }
    }

    #[test]
    fn veff_scaling_degree_minus_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        let x = sampling::random_interior_point(&mut rng);
        let mc = sampling::random_masses(&mut rng);
        let d = rat(7, 2);
        let lam = rat(3, 2);
        let (tr, or) = gauge_factor_and_veff(&mc, &d, &x).unwrap();
        let (tr2, or2) = gauge_factor_and_veff(&mc, &d, &x.scaled(&lam)).unwrap();
        assert_eq!(tr2, tr / &lam);
        assert_eq!(or2, or / &lam);
    }

    #[test]
    fn gauge_equivalence_certified_and_literal_base_fails() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let x = sampling::random_interior_point(&mut rng);
        let mc = sampling::random_masses(&mut rng);
        for d in [rat_i(3), rat(7, 2)] {
            let res =
                gauge_equivalence_residuals(&mc, &d, &x, GammaConvention::SquaredVolumeBase)
                    .unwrap();
            assert!(res.iter().all(|r| r.is_zero()), "residuals {res:?}");
            let res_lit =
                gauge_equivalence_residuals(&mc, &d, &x, GammaConvention::LiteralVolumeBase)
                    .unwrap();
            // literal base residual in direction nu is (d-4)/(2 mu_nu)
            for (nu, r) in res_lit.iter().enumerate() {
                let expect = (&d - rat_i(4)) / rat_i(2) * mc.inv_mu(VarId::ALL[nu]);
                assert_eq!(*r, expect);
            }
        }
    }

    #[test]
    fn veff_second_term_vanishes_at_d3_d5() {
        // transcription difference between d=3 and d=5 is zero only through
        // the first term; check the second term directly
        let mc = MassConfig::equal(rat_i(2)).unwrap();
        let x = ones();
        let y = sum_v3m(&mc, &x);
        let v4 = v4_squared(&x);
        for d in [rat_i(3), rat_i(5)] {
            let second = (&d - rat_i(5)) * (&d - rat_i(3)) * &y / (rat_i(72) * &v4);
            assert!(second.is_zero());
        }
    }

    #[test]
    fn radial_measure_contract() {
        let x = ones();
        assert_eq!(radial_measure(&rat_i(4), &x).unwrap(), MeasureValue::Exact(rat_i(1)));
        assert_eq!(
            radial_measure(&rat_i(6), &x).unwrap(),
            MeasureValue::Exact(rat(1, 72))
        );
        assert_eq!(
            radial_measure(&rat_i(3), &x).unwrap(),
            MeasureValue::Symbolic(rat(1, 72), rat(-1, 2))
        );
        let sq = pt([1, 2, 1, 1, 2, 1]);
        assert!(matches!(
            radial_measure(&rat_i(3), &sq),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn special_determinants_match_direct() {
        let m = rat(5, 7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = sampling::random_interior_point(&mut rng);
            for variant in [
                DetVariant::Atomic,
                DetVariant::MolecularTwoCenter,
                DetVariant::ThreeCenter,
            ] {
                assert_eq!(
                    special_determinant(variant, &m, &x),
                    special_cometric_det(variant, &m, &x)
                );
            }
        }
        // three-center at all rho = 1, m = 1: 288 * 1/72 = 4
        let one = rat_i(1);
        assert_eq!(
            special_determinant(DetVariant::ThreeCenter, &one, &ones()),
            rat_i(4)
        );
        // atomic at a coplanar point vanishes
        assert_eq!(
            special_determinant(DetVariant::Atomic, &one, &pt([1, 2, 1, 1, 2, 1])),
            rat_i(0)
        );
    }

    #[test]
    fn molecular_g2_symmetric_configuration() {
        // rho13 = rho23, rho14 = rho24: squared differences vanish
        let x = RhoPoint([
            rat_i(2),
            rat_i(3),
            rat_i(5),
            rat_i(3),
            rat_i(5),
            rat_i(4),
        ]);
        let expect = rat_i(2) * rat_i(2) * (rat_i(3) + rat_i(5) + rat_i(3) + rat_i(5) - rat_i(2));
        assert_eq!(molecular_g2(&x), expect);
    }

    #[test]
    fn homogeneity_audit() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let x = sampling::random_interior_point(&mut rng);
        let mc = sampling::random_masses(&mut rng);
        for lam in [rat_i(2), rat(3, 5)] {
            let xs = x.scaled(&lam);
            // V4^2: degree 3; heron: degree 2; det: degree 6
            assert_eq!(v4_squared(&xs), crate::rational::rat_pow(&lam, 3) * v4_squared(&x));
            assert_eq!(
                heron_s2(xs.get(VarId::R12), xs.get(VarId::R13), xs.get(VarId::R23)),
                crate::rational::rat_pow(&lam, 2)
                    * heron_s2(x.get(VarId::R12), x.get(VarId::R13), x.get(VarId::R23))
            );
            let d1 = det_identity_check(&mc, &x).lhs;
            let d2 = det_identity_check(&mc, &xs).lhs;
            assert_eq!(d2, crate::rational::rat_pow(&lam, 6) * d1);
        }
    }
}

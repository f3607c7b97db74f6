//! The one- and two-variable reduced representations carried by the volume
//! variables: the exactly-solvable P-dynamics with its Laguerre family, the
//! quasi-exactly-solvable sextic extension, and the exact chain-rule checks
//! that adjudicate how far the displayed (P,S) operator actually closes.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::geometry::{v4_squared_poly, MassConfig};
use crate::linalg;
use crate::model::build_delta_rad;
use crate::poly::{MultiIndex, Poly, Poly6, VarId};
use crate::rational::{rat_i, Rat};
use num_traits::{One, Signed};

/// The two volume variables as polynomials in the pair coordinates:
/// `P = (sum m_i m_j rho_ij) / M` and the mass-weighted sum `S` of the four
/// face Heron quadratics (16 times the squared areas).
#[derive(Clone, Debug)]
pub struct VolumeVars {
    pub p: Poly6,
    pub s: Poly6,
}

pub fn volume_vars(mc: &MassConfig) -> VolumeVars {
    let total = mc.total();
    let mut p = Poly6::zero();
    for v in VarId::ALL {
        let (i, j) = v.pair();
        p.add_term(MultiIndex::unit(v.index()), mc.mass(i) * mc.mass(j) / &total);
    }
    let mut s = Poly6::zero();
    // face of particles {i,j,k} weighted by m_i m_j m_k
    for omitted in 1..=4usize {
        let tri: Vec<usize> = (1..=4).filter(|&x| x != omitted).collect();
        let weight = tri.iter().map(|&i| mc.mass(i).clone()).product::<Rat>();
        let e = [
            VarId::from_pair(tri[0], tri[1]),
            VarId::from_pair(tri[0], tri[2]),
            VarId::from_pair(tri[1], tri[2]),
        ];
        let (pa, pb, pc) = (
            Poly6::var(e[0].index()),
            Poly6::var(e[1].index()),
            Poly6::var(e[2].index()),
        );
        let cross = &(&pa * &pb) + &(&(&pa * &pc) + &(&pb * &pc));
        let squares = &(&pa * &pa) + &(&(&pb * &pb) + &(&pc * &pc));
        s.add_assign_scaled(&(&cross.scale(&rat_i(2)) - &squares), &weight);
    }
    VolumeVars { p, s }
}

/// `Delta_P = 2 P d^2_P + 3 d d_P` over the one-variable ring.
pub fn build_delta_p(d: &Rat) -> DiffOp<1> {
    let mut op = DiffOp::zero();
    op.add_term(MultiIndex([2]), Poly::var(0).scale(&rat_i(2)));
    op.add_term(MultiIndex([1]), Poly::constant(rat_i(3) * d));
    op
}

/// The displayed two-variable operator
/// `Delta_PS = 2 P d^2_PP + 8 M P S d^2_SS + 8 M (d-1) P d_S + 3 d d_P`,
/// variables ordered `(P, S)`.
pub fn build_delta_ps(mc: &MassConfig, d: &Rat) -> DiffOp<2> {
    let total = mc.total();
    let mut op = DiffOp::zero();
    op.add_term(MultiIndex([2, 0]), Poly::var(0).scale(&rat_i(2)));
    op.add_term(
        MultiIndex([0, 2]),
        Poly::var(0).mul_poly(&Poly::var(1)).scale(&(rat_i(8) * &total)),
    );
    op.add_term(
        MultiIndex([0, 1]),
        Poly::var(0).scale(&(rat_i(8) * &total * (d - rat_i(1)))),
    );
    op.add_term(MultiIndex([1, 0]), Poly::constant(rat_i(3) * d));
    op
}

/// Outcome of one chain-rule reduction check.
#[derive(Clone, Debug)]
pub struct ReductionItem {
    /// Exponents `(j, k)` of the monomial `P^j S^k`.
    pub monomial: (u32, u32),
    /// `Delta_rad(f(P(rho), S(rho))) - (Delta_PS f)(P(rho), S(rho))`,
    /// exact.
    pub residual: Poly6,
    /// Whether the residual matches the closed-form characterization of the
    /// display's missing terms (see [`reduction_check`]).
    pub characterized: bool,
}

/// Chain-rule reduction of `Delta_rad` through the volume variables, for all
/// monomials `P^j S^k` with `j + k <= max_degree`.
///
/// The verdicts this computes: the P-only dynamics closes exactly
/// (`residual = 0` whenever `k = 0`); the displayed two-variable operator is
/// incomplete. Its residuals are fully characterized by
/// `<grad P, grad S>_g = 4 S` (a missing `8 S d_P d_S` cross term, still
/// expressible in the volume variables) together with
/// `<grad S, grad S>_g = 8 M P S + 3456 M m1 m2 m3 m4 V4^2`, whose squared-
/// volume part is not a function of `(P, S)` — so no completion closes the
/// dynamics beyond functions linear in `S`.
pub fn reduction_check(mc: &MassConfig, d: &Rat, max_degree: u32) -> Vec<ReductionItem> {
    let vv = volume_vars(mc);
    let delta6 = build_delta_rad(mc, d);
    let delta_ps = build_delta_ps(mc, d);
    let total = mc.total();
    let mass_prod = mc.mass_product();
    let v4 = v4_squared_poly();
    // <grad P, grad S> and the S-quadratic defect, as rho-polynomials
    let cross_defect = vv.s.scale(&rat_i(8)); // residual of P S
    let s2_defect = v4.scale(&(rat_i(6912) * &total * &mass_prod)); // residual of S^2
    let mut out = Vec::new();
    for j in 0..=max_degree {
        for k in 0..=(max_degree - j) {
            if j + k == 0 {
                continue;
            }
            let f: Poly<2> = Poly::monomial(MultiIndex([j, k]), Rat::one());
            let composed = f.eval_poly(&[vv.p.clone(), vv.s.clone()]);
            let lhs = delta6.apply(&composed);
            let rhs = delta_ps.apply(&f).eval_poly(&[vv.p.clone(), vv.s.clone()]);
            let residual = &lhs - &rhs;
            // predicted residual from the two defects:
            //   Delta(P^j S^k) gains j*k * <gradP,gradS>-term * 2 ... the
            //   chain rule gives residual = 2 j k P^{j-1} S^{k-1} * (4S)
            //                + k(k-1) P^j S^{k-2} * s2_defect-part
            let mut predicted = Poly6::zero();
            if j >= 1 && k >= 1 {
                let factor = vv.p.pow(j - 1).mul_poly(&vv.s.pow(k - 1));
                predicted.add_assign_scaled(
                    &factor.mul_poly(&cross_defect),
                    &rat_i((j * k) as i64),
                );
            }
            if k >= 2 {
                let factor = vv.p.pow(j).mul_poly(&vv.s.pow(k - 2));
                predicted.add_assign_scaled(
                    &factor.mul_poly(&s2_defect),
                    &rat_i((k * (k - 1)) as i64 / 2),
                );
            }
            let characterized = residual == predicted;
            out.push(ReductionItem {
                monomial: (j, k),
                residual,
                characterized,
            });
        }
    }
    out
}

/// Parameters of the quasi-exactly-solvable P-model.
#[derive(Clone, Debug)]
pub struct QesParams {
    /// Anharmonic coupling `A >= 0`; `A = 0` is the exactly-solvable branch.
    pub coupling: Rat,
    /// Size parameter of the preserved polynomial space `{1, P, .., P^N}`.
    pub n: u32,
    pub omega: Rat,
    pub d: Rat,
}

/// sl(2,R) generators over the single variable P.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sl2Generator {
    JPlus,
    JZero,
    JMinus,
}

pub fn realize_sl2(gen: Sl2Generator, n: &Rat) -> DiffOp<1> {
    match gen {
        Sl2Generator::JMinus => DiffOp::derivative(0),
        Sl2Generator::JZero => {
            let mut op = DiffOp::term(Poly::var(0).scale(&rat_i(2)), MultiIndex([1]));
            op.add_term(MultiIndex([0]), Poly::constant(-n.clone()));
            op
        }
        Sl2Generator::JPlus => {
            let mut op = DiffOp::term(
                Poly::var(0).mul_poly(&Poly::var(0)),
                MultiIndex([1]),
            );
            op.add_term(MultiIndex([0]), Poly::var(0).scale(&(-n.clone())));
            op
        }
    }
}

/// `h^(qes)_P = -J- J0 - (3d + N - 2) J- + 4A J+ + 2 omega J0 + 2 N omega`,
/// equal to `-Delta_P + 4P(AP + omega) d_P - 4 N A P`.
pub fn qes_operator(q: &QesParams) -> DiffOp<1> {
    let n = rat_i(q.n as i64);
    let jm = realize_sl2(Sl2Generator::JMinus, &n);
    let j0 = realize_sl2(Sl2Generator::JZero, &n);
    let jp = realize_sl2(Sl2Generator::JPlus, &n);
    let mut h = jm.compose(&j0).scale(&rat_i(-1));
    h = h.add(&jm.scale(&(-(rat_i(3) * &q.d + &n - rat_i(2)))));
    h = h.add(&jp.scale(&(rat_i(4) * &q.coupling)));
    h = h.add(&j0.scale(&(rat_i(2) * &q.omega)));
    h.add(&DiffOp::mul_by(Poly::constant(rat_i(2) * &n * &q.omega)))
}

/// Coefficients of the sextic potential (in the radial variable the cubic in
/// P is sextic):
/// `V(P) = 3(d-1)(3d-1)/(8P) + 2 omega^2 P
///         + A [2A P^3 + 4 omega P^2 - (3d + 2 - 4N) P] + 2 N omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct QesPotential {
    pub inverse_p: Rat,
    pub linear: Rat,
    pub quadratic: Rat,
    pub cubic: Rat,
    pub constant: Rat,
}

pub fn qes_potential(q: &QesParams) -> QesPotential {
    let d = &q.d;
    let w = &q.omega;
    let a = &q.coupling;
    let n = rat_i(q.n as i64);
    QesPotential {
        inverse_p: rat_i(3) * (d - rat_i(1)) * (rat_i(3) * d - rat_i(1)) / rat_i(8),
        linear: rat_i(2) * w * w - a * (rat_i(3) * d + rat_i(2) - rat_i(4) * &n),
        quadratic: rat_i(4) * a * w,
        cubic: rat_i(2) * a * a,
        constant: rat_i(2) * n * w,
    }
}

/// The assembled QES model: matrix on `{1, P, .., P^N}`, characteristic
/// polynomial, float eigenvalues with residuals, and the ground-state factor
/// data describing `psi = Pol_N(P) P^{(3d-1)/4} e^{-omega P - A P^2 / 2}`.
#[derive(Clone, Debug)]
pub struct QesModel {
    pub potential: QesPotential,
    pub matrix: linalg::RatMatrix,
    pub char_poly: Vec<Rat>,
    /// Float eigenvalues sorted ascending; empirically real (reported, not
    /// proven).
    pub eigenvalues: Vec<f64>,
    pub all_real: bool,
    /// Exponent of the power prefactor, `(3d-1)/4`.
    pub prefactor_exponent: Rat,
}

pub fn qes_model(q: &QesParams) -> Result<QesModel> {
    if q.coupling.is_negative() {
        return Err(Error::Config("QES coupling A must be non-negative".into()));
    }
    let h = qes_operator(q);
    let m = h.matrix_on_basis(q.n)?;
    let matrix = m.entries.clone();
    let char_poly = m.char_poly();
    let mf = linalg::to_f64_matrix(&matrix);
    let (eigenvalues, all_real) = match linalg::real_eigenvalues(&mf, 1e-9) {
        Some(e) => (e, true),
        None => {
            let mut e: Vec<f64> = mf.complex_eigenvalues().iter().map(|c| c.re).collect();
            e.sort_by(|a, b| a.partial_cmp(b).unwrap());
            (e, false)
        }
    };
    Ok(QesModel {
        potential: qes_potential(q),
        matrix,
        char_poly,
        eigenvalues,
        all_real,
        prefactor_exponent: (rat_i(3) * &q.d - rat_i(1)) / rat_i(4),
    })
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Closed-form `N = 1` eigenpairs when the discriminant `4 omega^2 + 12 d A`
/// is a perfect square: returns `(eigenvalue, polynomial)` pairs whose
/// eigen-residual under the realized operator is exactly zero.
pub fn qes_n1_exact(q: &QesParams) -> Option<Vec<(Rat, Poly<1>)>> {
    assert_eq!(q.n, 1);
    let disc = rat_i(4) * &q.omega * &q.omega + rat_i(12) * &q.d * &q.coupling;
    let root = rat_sqrt(&disc)?;
    let mut out = Vec::new();
    for sign in [Rat::one(), -Rat::one()] {
        let lam = rat_i(2) * &q.omega + sign * &root;
        // eigenvector of [[0, -3d], [-4A, 4w]] for eigenvalue lam:
        // (x0, x1) with -3d x1 = lam x0 -> take x0 = -3d, x1 = lam
        let mut pol = Poly::<1>::constant(rat_i(-3) * &q.d);
        pol.add_term(MultiIndex([1]), lam.clone());
        if pol.is_zero() {
            pol = Poly::one();
        }
        out.push((lam, pol));
    }
    Some(out)
}

/// Generalized Laguerre polynomial part and energy of the exactly-solvable
/// P-family: `L_N^{((3d-2)/2)}(2 omega P)` with
/// `epsilon_N = (3d + 4N) omega`. The eigen-residual of the gauged operator
/// `-Delta_P + 4 omega P d_P` is checked to vanish exactly before returning.
pub fn es_laguerre(d: &Rat, omega: &Rat, n: u32) -> Result<(Poly<1>, Rat)> {
    let alpha = (rat_i(3) * d - rat_i(2)) / rat_i(2);
    // recurrence: (k+1) L_{k+1} = (2k+1+alpha - x) L_k - (k+alpha) L_{k-1},
    // with x = 2 omega P
    let x = Poly::<1>::var(0).scale(&(rat_i(2) * omega));
    let mut lkm1 = Poly::<1>::one();
    let mut lk = if n == 0 {
        lkm1.clone()
    } else {
        &Poly::constant(&alpha + rat_i(1)) - &x
    };
    for k in 1..n {
        let kq = rat_i(k as i64);
        let an = &(&Poly::constant(rat_i(2) * &kq + rat_i(1) + &alpha) - &x);
        let mut next = an.mul_poly(&lk);
        next.add_assign_scaled(&lkm1, &(-(&kq + &alpha)));
        next = next.scale(&(&kq + rat_i(1)).recip());
        lkm1 = lk;
        lk = next;
    }
    let pol = lk;
    let energy = (rat_i(3) * d + rat_i(4) * rat_i(n as i64)) * omega;
    // gauged ES operator: -Delta_P + 4 omega P d_P; eigenvalue 4 N omega
    let mut h = build_delta_p(d).scale(&rat_i(-1));
    h = h.add(&DiffOp::term(
        Poly::var(0).scale(&(rat_i(4) * omega)),
        MultiIndex([1]),
    ));
    let residual = &h.apply(&pol) - &pol.scale(&(rat_i(4) * rat_i(n as i64) * omega));
    if !residual.is_zero() {
        return Err(Error::IdentityFailure(format!(
            "Laguerre eigen-residual nonzero at N = {n}"
        )));
    }
    Ok((pol, energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sampling;
    use num_traits::Zero;
    use rand::SeedableRng;

    #[test]
    fn volume_vars_examples() {
        let mc1 = MassConfig::equal(rat_i(1)).unwrap();
        let vv = volume_vars(&mc1);
        for k in 0..6 {
            assert_eq!(vv.p.coeff(&MultiIndex::unit(k)), rat(1, 4));
        }
        let ones = [rat_i(1), rat_i(1), rat_i(1), rat_i(1), rat_i(1), rat_i(1)];
        assert_eq!(vv.s.eval(&ones), rat_i(12));
        let zeros = [rat_i(0), rat_i(0), rat_i(0), rat_i(0), rat_i(0), rat_i(0)];
        assert_eq!(vv.p.eval(&zeros), rat_i(0));
        assert_eq!(vv.s.eval(&zeros), rat_i(0));
    }

    #[test]
    fn delta_p_and_ps_displays() {
        let d = rat(7, 2);
        let dp = build_delta_p(&d);
        // Delta_P (P) = 3d ; Delta_P (P^2) = (4 + 6d) P
        assert_eq!(dp.apply(&Poly::var(0)), Poly::constant(rat_i(3) * &d));
        assert_eq!(
            dp.apply(&Poly::var(0).pow(2)),
            Poly::var(0).scale(&(rat_i(4) + rat_i(6) * &d))
        );
        let mc = MassConfig::equal(rat_i(1)).unwrap();
        let dps = build_delta_ps(&mc, &d);
        // Delta_PS (S) = 8 M (d-1) P
        assert_eq!(
            dps.apply(&Poly::monomial(MultiIndex([0, 1]), Rat::one())),
            Poly::monomial(MultiIndex([1, 0]), rat_i(8) * mc.total() * (&d - rat_i(1)))
        );
    }

    #[test]
    fn p_reduction_closes_exactly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..5 {
            let mc = sampling::random_masses(&mut rng);
            let d = sampling::random_dimension(&mut rng);
            let vv = volume_vars(&mc);
            let delta6 = build_delta_rad(&mc, &d);
            let dp = build_delta_p(&d);
            for k in 1..=4u32 {
                let f = Poly::<1>::var(0).pow(k);
                let lhs = delta6.apply(&f.eval_poly(std::array::from_ref(&vv.p)));
                let rhs = dp.apply(&f).eval_poly(std::array::from_ref(&vv.p));
                assert_eq!(lhs, rhs, "P^{k}");
            }
        }
    }

    #[test]
    fn ps_reduction_verdict() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(72);
        let mc = sampling::random_masses(&mut rng);
        let d = rat(7, 2);
        let items = reduction_check(&mc, &d, 3);
        for item in &items {
            let (j, k) = item.monomial;
            if k == 0 || (j, k) == (0, 1) {
                assert!(item.residual.is_zero(), "({j},{k}) should close");
            }
            assert!(
                item.characterized,
                "residual of ({j},{k}) must match the closed-form defects"
            );
        }
        // the mixed monomial P S picks up exactly 8 S
        let ps = items.iter().find(|i| i.monomial == (1, 1)).unwrap();
        let vv = volume_vars(&mc);
        assert_eq!(ps.residual, vv.s.scale(&rat_i(8)));
        assert!(!ps.residual.is_zero());
    }

    #[test]
    fn qes_operator_equals_direct_form() {
        // -Delta_P + 4P(AP+omega)d_P - 4NAP
        let q = QesParams {
            coupling: rat(1, 3),
            n: 2,
            omega: rat(2, 3),
            d: rat(7, 2),
        };
        let h = qes_operator(&q);
        let mut direct = build_delta_p(&q.d).scale(&rat_i(-1));
        let p = Poly::<1>::var(0);
        direct = direct.add(&DiffOp::term(
            p.mul_poly(&(&p.scale(&q.coupling) + &Poly::constant(q.omega.clone()))).scale(&rat_i(4)),
            MultiIndex([1]),
        ));
        direct = direct.add(&DiffOp::mul_by(
            p.scale(&(rat_i(-4) * rat_i(q.n as i64) * &q.coupling)),
        ));
        assert_eq!(h, direct);
    }

    #[test]
    fn qes_flag_preserved_any_coupling() {
        for a in [rat_i(0), rat(1, 3), rat_i(5)] {
            for n in [0u32, 1, 3, 6] {
                let q = QesParams {
                    coupling: a.clone(),
                    n,
                    omega: rat_i(1),
                    d: rat_i(3),
                };
                assert!(qes_operator(&q).matrix_on_basis(n).is_ok());
            }
        }
    }

    #[test]
    fn qes_n0_ground_energy() {
        let q = QesParams {
            coupling: rat(5, 7),
            n: 0,
            omega: rat_i(1),
            d: rat_i(3),
        };
        let m = qes_model(&q).unwrap();
        assert_eq!(m.matrix, vec![vec![rat_i(0)]]);
        // total E0 = epsilon + 3 d omega = 3 d omega
        assert_eq!(m.eigenvalues, vec![0.0]);
    }

    #[test]
    fn qes_n1_exact_pair() {
        // A = 1/3, d = 3, omega = 1: discriminant 4 + 12 = 16
        let q = QesParams {
            coupling: rat(1, 3),
            n: 1,
            omega: rat_i(1),
            d: rat_i(3),
        };
        let pairs = qes_n1_exact(&q).expect("perfect-square discriminant");
        let h = qes_operator(&q);
        let mut eigs: Vec<Rat> = pairs.iter().map(|(l, _)| l.clone()).collect();
        eigs.sort();
        assert_eq!(eigs, vec![rat_i(-2), rat_i(6)]);
        for (lam, pol) in pairs {
            let residual = &h.apply(&pol) - &pol.scale(&lam);
            assert!(residual.is_zero());
        }
    }

    #[test]
    fn es_branch_equidistant() {
        let q0 = QesParams {
            coupling: Rat::zero(),
            n: 5,
            omega: rat(3, 2),
            d: rat(7, 2),
        };
        let m = qes_model(&q0).unwrap();
        assert!(m.all_real);
        for (k, e) in m.eigenvalues.iter().enumerate() {
            assert!((e - 4.0 * 1.5 * k as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn laguerre_family() {
        // d=3, omega=1: epsilon_N = 9 + 4N
        for n in 0..=10u32 {
            let (_, e) = es_laguerre(&rat_i(3), &rat_i(1), n).unwrap();
            assert_eq!(e, rat_i(9 + 4 * n as i64));
        }
        // d=3, omega=1, N=1: linear polynomial 1 + alpha - 2P = 7/2 - 2P
        let (pol, e) = es_laguerre(&rat_i(3), &rat_i(1), 1).unwrap();
        assert_eq!(e, rat_i(13));
        assert_eq!(pol.coeff(&MultiIndex([0])), rat(9, 2));
        assert_eq!(pol.coeff(&MultiIndex([1])), rat_i(-2));
        // omega scaling: epsilon scales linearly
        let (_, e2) = es_laguerre(&rat_i(3), &rat_i(2), 4).unwrap();
        assert_eq!(e2, rat_i(2) * rat_i(9 + 16));
        // d = 1: the effective 1/P coefficient 3(d-1)(3d-1)/8 vanishes
        let q = QesParams {
            coupling: Rat::zero(),
            n: 0,
            omega: rat_i(1),
            d: rat_i(1),
        };
        assert_eq!(qes_potential(&q).inverse_p, Rat::zero());
    }

    #[test]
    fn sl2_relations() {
        let n = rat(5, 2);
        let jp = realize_sl2(Sl2Generator::JPlus, &n);
        let j0 = realize_sl2(Sl2Generator::JZero, &n);
        let jm = realize_sl2(Sl2Generator::JMinus, &n);
        assert_eq!(jm.commutator(&jp), j0);
        assert_eq!(j0.commutator(&jp), jp.scale(&rat_i(2)));
        assert_eq!(j0.commutator(&jm), jm.scale(&rat_i(-2)));
    }
}

//! Acceptance suite: one test per criterion, each printing its own
//! pass/fail line (run with `--nocapture` to see them). Every tolerance and
//! time budget is pinned here.

use fourbody::config::RunConfig;
use fourbody::diffop::DiffOp;
use fourbody::geometry::{self, MassConfig, RhoPoint};
use fourbody::model::{self, GaugeParams, SpecialModel, SpecialOperator};
use fourbody::poly::{Poly6, VarId};
use fourbody::rational::{rat, rat_i, Rat};
use fourbody::report::{run_full_suite, CheckStatus};
use fourbody::spectra::{self, EnergyValue};
use fourbody::{jacobi, reduced, sampling, sl7, symmetries};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn conclude(criterion: &str, start: Instant, budget_secs: Option<f64>, ok: bool) {
    let elapsed = start.elapsed().as_secs_f64();
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[{verdict}] {criterion} ({elapsed:.2}s)");
    assert!(ok, "{criterion} failed");
    if let Some(budget) = budget_secs {
        assert!(
            elapsed < budget,
            "{criterion} exceeded its {budget}s budget ({elapsed:.2}s)"
        );
    }
}

#[test]
fn criterion_01_ground_state_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut ok = true;
    let d_menu = [rat_i(3), rat_i(5), rat(7, 2)];
    for i in 0..20 {
        let mc = sampling::random_masses(&mut rng);
        let gp = sampling::random_gauge(&mut rng);
        let d = &d_menu[i % 3];
        let h = model::build_h_es(&mc, &gp, d);
        ok &= h.apply(&Poly6::one()).is_zero();
    }
    conclude(
        "criterion 01: h_es(1) = 0 for 20 random draws",
        start,
        Some(10.0),
        ok,
    );
}

#[test]
fn criterion_02_determinant_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut ok = true;
    for _ in 0..5 {
        let mc = sampling::random_masses(&mut rng);
        for _ in 0..100 {
            let x = sampling::random_interior_point(&mut rng);
            ok &= geometry::det_identity_check(&mc, &x).equal;
        }
    }
    conclude(
        "criterion 02: determinant identity at 100 interior points x 5 mass draws",
        start,
        Some(30.0),
        ok,
    );
}

#[test]
fn criterion_03_cayley_menger_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let ones = RhoPoint::new(std::array::from_fn(|_| Rat::one())).unwrap();
    let mut ok = geometry::v4_squared(&ones) == rat(1, 72);
    for _ in 0..100 {
        let x = sampling::random_rho_point(&mut rng);
        ok &= geometry::v4_squared(&x) == geometry::cayley_menger_v4_squared(&x);
    }
    conclude(
        "criterion 03: squared volume equals Cayley-Menger/288 at 100 points",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_04_hidden_algebra_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut ok = true;
    for i in 0..10 {
        let mc = sampling::random_masses(&mut rng);
        let gp = sampling::random_gauge(&mut rng);
        let d = sampling::random_dimension(&mut rng);
        let direct = model::build_h_es(&mc, &gp, &d);
        let algebraic = sl7::h_es_from_generators(&mc, &gp, &d);
        ok &= direct == algebraic;
        if i < 2 {
            // both constructions preserve the flag up to degree 4
            ok &= direct.matrix_on_basis(4).is_ok();
            ok &= algebraic.matrix_on_basis(4).is_ok();
        }
    }
    conclude(
        "criterion 04: Lie-algebraic form structurally equals the direct operator",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_05_equal_mass_spectrum() {
    let start = Instant::now();
    let mc = MassConfig::equal(rat_i(1)).unwrap();
    let gp = GaugeParams::uniform(rat_i(1), rat_i(1)).unwrap();
    let h = model::build_h_es(&mc, &gp, &rat_i(3));
    let ok = match spectra::spectrum(&h, 2) {
        Ok(levels) => {
            spectra::aggregate_exact(&levels)
                == Some(vec![(rat_i(0), 1), (rat_i(8), 6), (rat_i(16), 21)])
        }
        Err(_) => false,
    };
    conclude(
        "criterion 05: equal-mass spectrum on P_2 is exactly {0^1, 8^6, 16^21}",
        start,
        Some(5.0),
        ok,
    );
}

#[test]
fn criterion_06_general_mass_linearity() {
    let start = Instant::now();
    let mc = MassConfig::new([rat_i(1), rat_i(2), rat_i(3), rat_i(4)]).unwrap();
    let gp = GaugeParams::uniform(rat_i(1), rat_i(1)).unwrap();
    let h = model::build_h_es(&mc, &gp, &rat_i(3));
    let ok = match spectra::spectrum(&h, 2) {
        Ok(levels) => levels.iter().all(|l| match &l.energy {
            EnergyValue::Exact(_) => true,
            EnergyValue::Approx { residual, .. } => *residual < 1e-9,
        }),
        Err(_) => false,
    };
    conclude(
        "criterion 06: masses (1,2,3,4) eigenvalues on P_2 are frequency sums within 1e-9",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_07_symmetry_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut ok = true;
    for _ in 0..10 {
        let mc = sampling::random_masses(&mut rng);
        let d = rat(7, 2);
        for item in symmetries::verify_symmetry_suite(&mc, &d) {
            ok &= item.holds;
        }
    }
    conclude(
        "criterion 07: symmetry suite (commutation, so(3) constants, decomposition) on 10 draws",
        start,
        Some(60.0),
        ok,
    );
}

#[test]
fn criterion_08_special_limits() {
    let start = Instant::now();
    let m = rat(5, 7);
    let d = rat(7, 2);
    let mut ok = true;
    // atomic and three-center displayed forms equal the coefficient-wise
    // limits, exactly
    let gp = GaugeParams::new(
        [rat(1, 2), rat(2, 3), rat_i(3), rat(5, 7), rat(1, 5), rat(4, 3)],
        rat(2, 3),
    )
    .unwrap();
    match model::build_special(&SpecialModel::Atomic { m: m.clone() }, &gp, &d) {
        Ok(SpecialOperator::Six(limit)) => ok &= sl7::atomic_display(&m, &gp, &d) == limit,
        _ => ok = false,
    }
    let gp3 = GaugeParams::new(
        [
            Rat::zero(),
            Rat::zero(),
            rat_i(3),
            Rat::zero(),
            rat(1, 5),
            rat(4, 3),
        ],
        rat(2, 3),
    )
    .unwrap();
    let model3 = SpecialModel::ThreeCenter {
        m: m.clone(),
        rho12: rat_i(1),
        rho13: rat_i(2),
        rho23: rat_i(1),
    };
    match model::build_special(&model3, &gp3, &d) {
        Ok(SpecialOperator::Three(limit)) => {
            let mut disp = sl7::three_center_display(&m, &gp3, &d);
            for (v, val) in model3.classical_coords() {
                disp = disp.substitute_coeff_var(v.index(), &val).unwrap();
            }
            ok &= model::project_operator::<3>(&disp, &model3.dynamical_vars())
                .map(|p| p == limit)
                .unwrap_or(false);
        }
        _ => ok = false,
    }
    // molecular: the limit construction annihilates constants, its reduced
    // potential matches the displayed coefficients, and the potential curve
    // is minimal at rho12 = 0 where it equals the exact a = 0 energy
    let gp_mol = GaugeParams::new(
        [
            Rat::zero(),
            rat(2, 3),
            rat_i(3),
            rat(5, 7),
            rat(1, 5),
            rat(4, 3),
        ],
        rat(2, 3),
    )
    .unwrap();
    let model_mol = SpecialModel::MolecularTwoCenter {
        m: m.clone(),
        rho12: rat(3, 2),
    };
    match model::build_special(&model_mol, &gp_mol, &d) {
        Ok(SpecialOperator::Five(h)) => ok &= h.apply(&fourbody::poly::Poly::one()).is_zero(),
        _ => ok = false,
    }
    let em = model_mol.ext_masses().unwrap();
    let (nu, _) = model::forward_spring_map_ext(&em, &gp_mol, &d).unwrap();
    let (b, c) = (gp_mol.gauge(VarId::R13), gp_mol.gauge(VarId::R14));
    let (e, f, g) = (
        gp_mol.gauge(VarId::R23),
        gp_mol.gauge(VarId::R24),
        gp_mol.gauge(VarId::R34),
    );
    let mw2 = &m * &gp_mol.omega * &gp_mol.omega;
    let two_w2 = rat_i(2) * &gp_mol.omega * &gp_mol.omega;
    ok &= &two_w2 * &nu.0[VarId::R13.index()]
        == &mw2 * (rat_i(2) * b * b + b * (rat_i(2) * e + g) - c * g);
    ok &= &two_w2 * &nu.0[VarId::R34.index()] == &mw2 * g * (b + c + e + f + g);
    let e0_flat = &gp_mol.omega * &d * gp_mol.sum();
    ok &= model::molecular_e0(&m, &gp_mol, &d, &Rat::zero()) == e0_flat;
    ok &= model::molecular_e0(&m, &gp_mol, &d, &rat(3, 2)) > e0_flat;
    // a nonzero mandated-zero gauge parameter must be rejected
    ok &= model::build_special(&model_mol, &gp, &d).is_err();
    conclude(
        "criterion 08: special operators are exact infinite-mass limits",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_09_p_representation() {
    let start = Instant::now();
    let mut ok = true;
    for n in 0..=10u32 {
        match reduced::es_laguerre(&rat_i(3), &rat_i(1), n) {
            Ok((_, e)) => ok &= e == rat_i(9 + 4 * n as i64),
            Err(_) => ok = false,
        }
        // generic d as well: epsilon_N = (3d + 4N) omega with zero residual
        match reduced::es_laguerre(&rat(7, 2), &rat(2, 3), n) {
            Ok((_, e)) => {
                ok &= e == (rat_i(3) * rat(7, 2) + rat_i(4 * n as i64)) * rat(2, 3)
            }
            Err(_) => ok = false,
        }
    }
    let q = reduced::QesParams {
        coupling: rat(1, 3),
        n: 1,
        omega: rat_i(1),
        d: rat_i(3),
    };
    match reduced::qes_n1_exact(&q) {
        Some(pairs) => {
            let h = reduced::qes_operator(&q);
            for (lam, pol) in pairs {
                ok &= (&h.apply(&pol) - &pol.scale(&lam)).is_zero();
            }
        }
        None => ok = false,
    }
    // N = 0: epsilon = 0, total ground energy 3 d omega
    let q0 = reduced::QesParams {
        coupling: rat(5, 7),
        n: 0,
        omega: rat_i(1),
        d: rat_i(3),
    };
    ok &= reduced::qes_model(&q0)
        .map(|m| m.eigenvalues == vec![0.0])
        .unwrap_or(false);
    conclude(
        "criterion 09: P-representation Laguerre levels and QES N=1 exact eigenpairs",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_10_born_oppenheimer() {
    let start = Instant::now();
    // b = c = e = f = 1, d = 3, omega = 1 (a = 2 keeps the m^2 bracket
    // nonzero; the leading coefficient is a-independent)
    let gp = GaugeParams::new(
        [rat_i(2), rat_i(1), rat_i(1), rat_i(1), rat_i(1), rat_i(1)],
        rat_i(1),
    )
    .unwrap();
    let result = fourbody::bo::bo_gap_expansion_check(
        &gp,
        &rat_i(3),
        &[rat(1, 1000), rat(1, 10000)],
    );
    let ok = match result {
        Ok(exp) => {
            (exp.leading - 6.0).abs() / 6.0 < 0.01
                && exp.gap_ratio > 9.5
                && exp.gap_ratio < 10.5
        }
        Err(_) => false,
    };
    conclude(
        "criterion 10: Born-Oppenheimer leading coefficient 6 within 1%, gap ratio in [9.5, 10.5]",
        start,
        Some(1.0),
        ok,
    );
}

#[test]
fn criterion_11_jacobi() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut ok = true;
    for _ in 0..20 {
        let masses: [Rat; 4] = std::array::from_fn(|_| sampling::random_rat(&mut rng, 1, 8, 4));
        let chk = jacobi::kinetic_diagonalization_check(&masses);
        ok &= chk.diagonal.iter().all(|x| *x == Rat::one());
        ok &= chk.max_off_diagonal < 1e-12;
    }
    for (a, w, d) in [(1.0, 1.0, 3u32), (4.0, 1.0, 3), (0.25, 2.0, 1)] {
        match jacobi::radial_oracle(a, w, d) {
            Ok((e0, e1)) => {
                let wt = a.sqrt() * w;
                ok &= (e0 - wt * d as f64).abs() < 1e-6;
                ok &= (e1 - wt * (4.0 + d as f64)).abs() < 1e-6;
            }
            Err(_) => ok = false,
        }
    }
    conclude(
        "criterion 11: Jacobi kinetic identity (20 draws) and radial-oracle match to 1e-6",
        start,
        None,
        ok,
    );
}

#[test]
fn criterion_12_discrepancy_ledger() {
    let start = Instant::now();
    let cfg = RunConfig::default().validate().unwrap();
    let report = run_full_suite(&cfg);
    let mut ok = report.all_green();
    for id in [
        "geometry.veff_reading",
        "symmetry.s_family_transcription",
        "reduced.ps_completeness",
        "jacobi.moment_normalization",
    ] {
        match report.find(id) {
            Some(chk) => {
                ok &= chk.status == CheckStatus::ReportedDiscrepancy;
                // evidence payload must be non-trivial
                ok &= chk.details.get("verdict").is_some();
            }
            None => ok = false,
        }
    }
    conclude(
        "criterion 12: report carries the four adjudicated discrepancies with evidence",
        start,
        None,
        ok,
    );
}

#[test]
fn flag_violation_is_an_error_not_a_truncation() {
    // a raising generator with mismatched N escapes P_N and must be refused
    let raiser = sl7::realize(sl7::GeneratorId::Raiser(1), &rat_i(5));
    assert!(matches!(
        raiser.matrix_on_basis(2),
        Err(fourbody::Error::FlagViolation { .. })
    ));
    // multiplication operators always escape
    let mul = DiffOp::mul_by(Poly6::var(0));
    assert!(mul.matrix_on_basis(3).is_err());
}

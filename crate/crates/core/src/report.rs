//! The structured verification report: every identity of the model run as a
//! check with a stable id, a pass/fail/reported-discrepancy status and a
//! details payload. Adjudicated notation questions are always emitted as
//! `reported-discrepancy` with their computed evidence — never as a silent
//! pass.

use crate::config::ValidatedConfig;
use crate::diffop::DiffOp;
use crate::geometry::{
    self, DetVariant, DomainVerdict, GammaConvention, MassConfig, RhoPoint,
};
use crate::model::{self, GaugeParams, SpecialModel, SpecialOperator};
use crate::poly::{MultiIndex, Poly6, VarId};
use crate::rational::{rat, rat_i, rat_string, rat_to_f64, Rat};
use crate::sampling;
use crate::spectra::{self, EnergyValue};
use crate::{reduced, sl7, symmetries};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "reported-discrepancy")]
    ReportedDiscrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check_id: String,
    pub status: CheckStatus,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_green(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_id == id)
    }
}

fn pass_fail(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn check(id: &str, ok: bool, details: Value) -> Check {
    Check {
        check_id: id.into(),
        status: pass_fail(ok),
        details,
    }
}

fn discrepancy(id: &str, details: Value) -> Check {
    Check {
        check_id: id.into(),
        status: CheckStatus::ReportedDiscrepancy,
        details,
    }
}

fn ones() -> RhoPoint {
    RhoPoint::new(std::array::from_fn(|_| Rat::one())).unwrap()
}

fn cayley_menger_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = geometry::v4_squared(&ones()) == rat(1, 72);
    for _ in 0..100 {
        let x = sampling::random_rho_point(rng);
        if geometry::v4_squared(&x) != geometry::cayley_menger_v4_squared(&x) {
            ok = false;
        }
    }
    check(
        "geometry.cayley_menger_oracle",
        ok,
        json!({"points": 100, "unit_tetrahedron": "1/72"}),
    )
}

fn det_identity_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = true;
    for _ in 0..5 {
        let mc = sampling::random_masses(rng);
        for _ in 0..100 {
            let x = sampling::random_interior_point(rng);
            if !geometry::det_identity_check(&mc, &x).equal {
                ok = false;
            }
        }
    }
    check(
        "geometry.det_identity",
        ok,
        json!({"points": 100, "mass_draws": 5}),
    )
}

fn heron_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = geometry::heron_s2(&rat_i(1), &rat_i(1), &rat_i(1)) == rat(3, 16)
        && geometry::heron_s2(&rat_i(9), &rat_i(16), &rat_i(25)) == rat_i(36);
    for _ in 0..20 {
        // rational sides with a + b > c by construction, so the quartic
        // product form stays rational
        let a = sampling::random_rat(rng, 1, 9, 3);
        let b = sampling::random_rat(rng, 1, 9, 3);
        let c = &a + &b * rat(1, 2);
        let heron = geometry::heron_s2(&(&a * &a), &(&b * &b), &(&c * &c));
        let prod = (&a + &b - &c) * (&a + &c - &b) * (&b + &c - &a) * (&a + &b + &c) / rat_i(16);
        if heron != prod {
            ok = false;
        }
    }
    check("geometry.heron_product_form", ok, json!({"samples": 22}))
}

fn domain_check_entry() -> Check {
    let square = RhoPoint::new([
        rat_i(1),
        rat_i(2),
        rat_i(1),
        rat_i(1),
        rat_i(2),
        rat_i(1),
    ])
    .unwrap();
    let exterior = RhoPoint::new([
        rat_i(100),
        rat_i(1),
        rat_i(1),
        rat_i(1),
        rat_i(1),
        rat_i(1),
    ])
    .unwrap();
    let ok = geometry::domain_check(&ones()) == DomainVerdict::Interior
        && geometry::domain_check(&square) == DomainVerdict::Boundary
        && geometry::domain_check(&exterior) == DomainVerdict::Exterior;
    check("geometry.domain_membership", ok, json!({}))
}

fn special_det_check(rng: &mut ChaCha8Rng) -> Check {
    let m = sampling::random_rat(rng, 1, 6, 3);
    let mut ok = true;
    for _ in 0..10 {
        let x = sampling::random_interior_point(rng);
        for variant in [
            DetVariant::Atomic,
            DetVariant::MolecularTwoCenter,
            DetVariant::ThreeCenter,
        ] {
            if geometry::special_determinant(variant, &m, &x)
                != geometry::special_cometric_det(variant, &m, &x)
            {
                ok = false;
            }
        }
    }
    check(
        "geometry.special_determinants",
        ok,
        json!({"points": 10, "variants": ["atomic", "molecular", "three-center"]}),
    )
}

fn veff_reading_check(rng: &mut ChaCha8Rng) -> Check {
    let mut matches = true;
    let mut literal_residual_example = String::new();
    let mut sample = Vec::new();
    for _ in 0..3 {
        let mc = sampling::random_masses(rng);
        let x = sampling::random_interior_point(rng);
        for d in [rat_i(3), rat_i(5), rat(7, 2)] {
            let (tr, or) = match geometry::gauge_factor_and_veff(&mc, &d, &x) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if tr != or {
                matches = false;
            }
            sample.push(json!({
                "d": rat_string(&d),
                "transcribed": rat_string(&tr),
                "oracle": rat_string(&or),
            }));
            let lit = geometry::gauge_equivalence_residuals(
                &mc,
                &d,
                &x,
                GammaConvention::LiteralVolumeBase,
            )
            .map(|r| r.iter().any(|v| !v.is_zero()))
            .unwrap_or(false);
            if lit && literal_residual_example.is_empty() {
                let res = geometry::gauge_equivalence_residuals(
                    &mc,
                    &d,
                    &x,
                    GammaConvention::LiteralVolumeBase,
                )
                .unwrap();
                literal_residual_example = rat_string(&res[0]);
            }
        }
    }
    discrepancy(
        "geometry.veff_reading",
        json!({
            "verdict": "the displayed effective potential matches the chain-rule oracle exactly \
                        when its squared tokens are read as the plain weighted sums and the gauge \
                        factor's volume base is the squared-volume polynomial (V4^2)^{1-d/4}; the \
                        literal V4 base leaves first-order residuals (d-4)/(2 mu_nu)",
            "transcription_matches_oracle": matches,
            "literal_base_residual_sample": literal_residual_example,
            "samples": sample,
        }),
    )
}

fn radial_measure_check() -> Check {
    use geometry::MeasureValue;
    let x = ones();
    let ok = geometry::radial_measure(&rat_i(4), &x).unwrap() == MeasureValue::Exact(rat_i(1))
        && geometry::radial_measure(&rat_i(6), &x).unwrap() == MeasureValue::Exact(rat(1, 72))
        && geometry::radial_measure(&rat_i(3), &x).unwrap()
            == MeasureValue::Symbolic(rat(1, 72), rat(-1, 2));
    check("geometry.radial_measure", ok, json!({}))
}

fn ground_state_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = true;
    for _ in 0..20 {
        let mc = sampling::random_masses(rng);
        let gp = sampling::random_gauge(rng);
        let d = sampling::random_dimension(rng);
        let h = model::build_h_es(&mc, &gp, &d);
        if !h.apply(&Poly6::one()).is_zero() {
            ok = false;
        }
    }
    check(
        "model.ground_state_consistency",
        ok,
        json!({"draws": 20, "d_menu": ["3", "5", "7/2"]}),
    )
}

fn flag_preservation_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = true;
    for _ in 0..3 {
        let mc = sampling::random_masses(rng);
        let gp = sampling::random_gauge(rng);
        let d = sampling::random_dimension(rng);
        let h = model::build_h_es(&mc, &gp, &d);
        match h.matrix_on_basis(4) {
            Ok(m) => {
                if !m.is_block_triangular() {
                    ok = false;
                }
            }
            Err(_) => ok = false,
        }
    }
    check("model.flag_preservation", ok, json!({"max_degree": 4, "draws": 3}))
}

fn forward_map_printed_check(rng: &mut ChaCha8Rng) -> Check {
    let mut nu12_ok = true;
    let mut nu13_ok = true;
    let mut nu34_always_differs = true;
    let mut difference_formula_ok = true;
    for _ in 0..20 {
        let mc = sampling::random_masses(rng);
        let gp = sampling::random_gauge(rng);
        let nu = model::forward_spring_map(&mc, &gp);
        let printed = model::printed_spring_relations(&mc, &gp);
        nu12_ok &= printed[0].1 == nu.0[0];
        nu13_ok &= printed[1].1 == nu.0[1];
        let diff = &printed[2].1 - &nu.0[5];
        let expect = gp.gauge(VarId::R23)
            * gp.gauge(VarId::R24)
            * mc.mu(VarId::R23)
            * mc.mu(VarId::R24)
            * (mc.mass(2).recip() - mc.mass(4).recip());
        difference_formula_ok &= diff == expect;
        if mc.mass(2) != mc.mass(4) && diff.is_zero() {
            nu34_always_differs = false;
        }
    }
    Check {
        check_id: "model.forward_map_printed".into(),
        status: if nu12_ok && nu13_ok && difference_formula_ok {
            CheckStatus::ReportedDiscrepancy
        } else {
            CheckStatus::Fail
        },
        details: json!({
            "nu12_printed_matches": nu12_ok,
            "nu13_printed_matches": nu13_ok,
            "nu34_printed_differs": nu34_always_differs,
            "verdict": "the printed nu34 weighs its e*f term by 1/m4 where the algorithmic \
                        forward map derives 1/m2; the difference is \
                        e f mu23 mu24 (1/m2 - 1/m4) exactly",
            "draws": 20,
        }),
    }
}

fn conjugation_oracle_check(rng: &mut ChaCha8Rng) -> Check {
    use crate::diffop::{apply_to_power_product, Factor};
    let mut ok = true;
    let mc = sampling::random_masses(rng);
    let gp = sampling::random_gauge(rng);
    let d = sampling::random_dimension(rng);
    let em = model::ExtMasses::finite(&mc);
    let h = model::build_h_es(&mc, &gp, &d);
    let phi = model::ground_state_exponent(&em, &gp).unwrap();
    let (nu, e0) = model::forward_spring_map_ext(&em, &gp, &d).unwrap();
    let v = model::build_es_potential(&nu, &gp.omega);
    let full = model::build_delta_rad(&mc, &d)
        .scale(&rat_i(-1))
        .add(&DiffOp::mul_by(&v - &Poly6::constant(e0)));
    for alpha in [
        MultiIndex([1, 0, 0, 0, 0, 0]),
        MultiIndex([0, 1, 0, 0, 1, 0]),
        MultiIndex([0, 0, 2, 0, 0, 0]),
        MultiIndex([0, 0, 0, 1, 0, 1]),
    ] {
        for _ in 0..3 {
            let x = sampling::random_interior_point(rng);
            let mut factors: Vec<Factor<6>> = vec![Factor::ExpNeg(phi.clone())];
            for (i, &k) in alpha.0.iter().enumerate() {
                if k > 0 {
                    factors.push(Factor::Pow(Poly6::var(i), rat_i(k as i64)));
                }
            }
            let lhs = apply_to_power_product(&full, &factors, &x.0).unwrap();
            let mono = Poly6::monomial(alpha, Rat::one());
            let rhs = h.apply(&mono).eval(&x.0) / mono.eval(&x.0);
            if lhs != rhs {
                ok = false;
            }
        }
    }
    check(
        "model.conjugation_oracle",
        ok,
        json!({"monomials": 4, "points_each": 3}),
    )
}

fn special_limits_check() -> Check {
    let m = rat(5, 7);
    let d = rat(7, 2);
    let gp_full = GaugeParams::new(
        [rat(1, 2), rat(2, 3), rat_i(3), rat(5, 7), rat(1, 5), rat(4, 3)],
        rat(2, 3),
    )
    .unwrap();
    let mut ok = true;
    // atomic: six-dimensional, annihilates constants
    match model::build_special(&SpecialModel::Atomic { m: m.clone() }, &gp_full, &d) {
        Ok(SpecialOperator::Six(h)) => ok &= h.apply(&Poly6::one()).is_zero(),
        _ => ok = false,
    }
    // molecular: five-dimensional, a = 0 mandated, E0 curve minimal at 0
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
    let rho12 = rat(3, 2);
    match model::build_special(
        &SpecialModel::MolecularTwoCenter {
            m: m.clone(),
            rho12: rho12.clone(),
        },
        &gp_mol,
        &d,
    ) {
        Ok(SpecialOperator::Five(h)) => ok &= h.apply(&crate::poly::Poly::one()).is_zero(),
        _ => ok = false,
    }
    let e0_at_zero = model::molecular_e0(&m, &gp_mol, &d, &Rat::zero());
    let e0_exact = &gp_mol.omega * &d * gp_mol.sum();
    ok &= e0_at_zero == e0_exact;
    ok &= model::molecular_e0(&m, &gp_mol, &d, &rho12) >= e0_at_zero;
    // nonzero mandated gauge must be rejected
    ok &= model::build_special(
        &SpecialModel::MolecularTwoCenter {
            m: m.clone(),
            rho12,
        },
        &gp_full,
        &d,
    )
    .is_err();
    // three-center: three-dimensional
    let gp_3 = GaugeParams::new(
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
    match model::build_special(
        &SpecialModel::ThreeCenter {
            m,
            rho12: rat_i(1),
            rho13: rat_i(2),
            rho23: rat_i(1),
        },
        &gp_3,
        &d,
    ) {
        Ok(SpecialOperator::Three(h)) => ok &= h.apply(&crate::poly::Poly::one()).is_zero(),
        _ => ok = false,
    }
    check("model.special_limits", ok, json!({}))
}

fn sl7_relations_check() -> Check {
    let mut ok = true;
    let mut names = Vec::new();
    for r in sl7::verify_algebra_relations(&rat(7, 3)) {
        ok &= r.holds;
        names.push(json!({"relation": r.relation, "holds": r.holds}));
    }
    check("sl7.algebra_relations", ok, Value::Array(names))
}

fn sl7_flag_check() -> Check {
    let mut ok = true;
    let mut dims = Vec::new();
    for n in 0..=3u32 {
        match sl7::flag_action_check(n) {
            Ok(dim) => dims.push(json!({"N": n, "dim": dim})),
            Err(e) => {
                ok = false;
                dims.push(json!({"N": n, "error": e.to_string()}));
            }
        }
    }
    check("sl7.flag_action", ok, Value::Array(dims))
}

fn sl7_equivalence_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = true;
    for _ in 0..10 {
        let mc = sampling::random_masses(rng);
        let gp = sampling::random_gauge(rng);
        let d = sampling::random_dimension(rng);
        if sl7::h_es_from_generators(&mc, &gp, &d) != model::build_h_es(&mc, &gp, &d) {
            ok = false;
        }
    }
    check("sl7.h_es_equivalence", ok, json!({"draws": 10}))
}

fn sl7_special_displays_check() -> Check {
    let m = rat(5, 7);
    let d = rat(7, 2);
    let gp = GaugeParams::new(
        [rat(1, 2), rat(2, 3), rat_i(3), rat(5, 7), rat(1, 5), rat(4, 3)],
        rat(2, 3),
    )
    .unwrap();
    let mc_eq = MassConfig::equal(m.clone()).unwrap();
    let gp_eq = GaugeParams::uniform(rat(3, 2), rat(2, 3)).unwrap();
    let equal_ok = sl7::equal_mass_display(&m, &rat(3, 2), &rat(2, 3), &d)
        == model::build_h_es(&mc_eq, &gp_eq, &d);
    let atomic_ok = match model::build_special(&SpecialModel::Atomic { m: m.clone() }, &gp, &d) {
        Ok(SpecialOperator::Six(limit)) => sl7::atomic_display(&m, &gp, &d) == limit,
        _ => false,
    };
    let gp_3 = GaugeParams::new(
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
    let model_3 = SpecialModel::ThreeCenter {
        m: m.clone(),
        rho12: rat_i(1),
        rho13: rat_i(2),
        rho23: rat_i(1),
    };
    let three_ok = match model::build_special(&model_3, &gp_3, &d) {
        Ok(SpecialOperator::Three(limit)) => {
            let mut disp = sl7::three_center_display(&m, &gp_3, &d);
            let mut fine = true;
            for (v, val) in model_3.classical_coords() {
                match disp.substitute_coeff_var(v.index(), &val) {
                    Ok(x) => disp = x,
                    Err(_) => fine = false,
                }
            }
            fine && model::project_operator::<3>(&disp, &model_3.dynamical_vars())
                .map(|p| p == limit)
                .unwrap_or(false)
        }
        _ => false,
    };
    // molecular display: known typos; report the residual shape
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
    let em = SpecialModel::MolecularTwoCenter {
        m: m.clone(),
        rho12: rat(3, 2),
    }
    .ext_masses()
    .unwrap();
    let limit6 = model::build_h_es_ext(&em, &gp_mol, &d).unwrap();
    let residual = sl7::molecular_display(&m, &gp_mol, &d).sub(&limit6);
    let residual_terms: Vec<Value> = residual
        .terms()
        .map(|(dorder, coeff)| {
            json!({
                "dorder": dorder.0.to_vec(),
                "coeff": format!("{coeff}"),
            })
        })
        .collect();
    Check {
        check_id: "sl7.special_displays".into(),
        status: if equal_ok && atomic_ok && three_ok {
            CheckStatus::ReportedDiscrepancy
        } else {
            CheckStatus::Fail
        },
        details: json!({
            "equal_mass_display_matches_with_corrected_bracket": equal_ok,
            "atomic_display_matches_limit": atomic_ok,
            "three_center_display_matches_limit": three_ok,
            "molecular_display_matches_limit": residual.is_zero(),
            "molecular_display_residual_terms": residual_terms,
            "verdict": "the displayed molecular operator carries a lowering-term row copied from \
                        the atomic case and a truncated f-row; the coefficient-wise infinite-mass \
                        limit of the generic operator is treated as ground truth",
        }),
    }
}

fn symmetry_suite_check(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut all_ok = true;
    let mut j3s1_detail = String::new();
    for _ in 0..10 {
        let mc = sampling::random_masses(rng);
        let d = sampling::random_dimension(rng);
        for item in symmetries::verify_symmetry_suite(&mc, &d) {
            if !item.holds {
                all_ok = false;
            }
            if item.name.starts_with("[A3, S1]") {
                j3s1_detail = item.detail.clone();
            }
        }
    }
    // the printed S1 fails the normative identities (negative control)
    let mc = MassConfig::new([rat_i(1), rat_i(2), rat_i(3), rat_i(4)]).unwrap();
    let d3 = rat_i(3);
    let printed_fails = !model::build_delta_rad(&mc, &d3)
        .commutator(&symmetries::printed_s1(&mc, &d3))
        .is_zero();
    vec![
        check(
            "symmetry.suite",
            all_ok,
            json!({"mass_draws": 10, "d": "drawn from {3, 5, 7/2}"}),
        ),
        discrepancy(
            "symmetry.s_family_transcription",
            json!({
                "printed_s1_commutes_with_delta": !printed_fails,
                "corrected_family_passes": all_ok,
                "verdict": "the printed S1..S4 (with 1/mu weights, overall sign and a \
                            multiplicative -d(rho+rho+rho) tail) satisfy neither \
                            sum S_i/m_i = Delta_rad nor [Delta_rad, S_i] = 0; the corrected \
                            transcription (unit weights, derivative tail d(d12+d13+d14)) \
                            satisfies both exactly",
            }),
        ),
        discrepancy(
            "symmetry.j3_s1_prefactor",
            json!({
                "proportionality_holds": all_ok,
                "computed": j3s1_detail,
                "verdict": "[alpha3 J3, S1] is exactly proportional to m3 S5 - m4 S6 with the \
                            rational factor -2 m1; the printed prefactor implies 2 sqrt(m1)",
            }),
        ),
    ]
}

fn spectra_checks() -> Vec<Check> {
    let mc1 = MassConfig::equal(rat_i(1)).unwrap();
    let gp1 = GaugeParams::uniform(rat_i(1), rat_i(1)).unwrap();
    let h1 = model::build_h_es(&mc1, &gp1, &rat_i(3));
    let equal_ok = match spectra::spectrum(&h1, 2) {
        Ok(levels) => {
            spectra::aggregate_exact(&levels)
                == Some(vec![(rat_i(0), 1), (rat_i(8), 6), (rat_i(16), 21)])
        }
        Err(_) => false,
    };
    let mc2 = MassConfig::new([rat_i(1), rat_i(2), rat_i(3), rat_i(4)]).unwrap();
    let h2 = model::build_h_es(&mc2, &gp1, &rat_i(3));
    let linear_ok = match spectra::spectrum(&h2, 2) {
        Ok(levels) => levels.iter().all(|l| match &l.energy {
            EnergyValue::Exact(_) => true,
            EnergyValue::Approx { residual, .. } => *residual < 1e-9,
        }),
        Err(_) => false,
    };
    vec![
        check(
            "spectra.equal_mass_p2",
            equal_ok,
            json!({"expected": {"0": 1, "8": 6, "16": 21}}),
        ),
        check(
            "spectra.general_mass_linearity",
            linear_ok,
            json!({"masses": ["1", "2", "3", "4"], "tolerance": 1e-9}),
        ),
    ]
}

fn p_representation_check() -> Check {
    let mut ok = true;
    for n in 0..=10u32 {
        match reduced::es_laguerre(&rat_i(3), &rat_i(1), n) {
            Ok((_, e)) => ok &= e == rat_i(9 + 4 * n as i64),
            Err(_) => ok = false,
        }
    }
    // QES N = 1 exact closed form
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
                let residual = &h.apply(&pol) - &pol.scale(&lam);
                ok &= residual.is_zero();
            }
        }
        None => ok = false,
    }
    // ground energy at N = 0: epsilon = 0, total 3 d omega
    let q0 = reduced::QesParams {
        coupling: rat(5, 7),
        n: 0,
        omega: rat_i(1),
        d: rat_i(3),
    };
    ok &= reduced::qes_model(&q0)
        .map(|m| m.eigenvalues == vec![0.0])
        .unwrap_or(false);
    check(
        "reduced.p_representation",
        ok,
        json!({"laguerre_levels": 11, "qes_n1": "A=1/3, d=3, omega=1"}),
    )
}

fn ps_completeness_check(rng: &mut ChaCha8Rng) -> Check {
    let mc = sampling::random_masses(rng);
    let d = rat(7, 2);
    let items = reduced::reduction_check(&mc, &d, 3);
    let mut p_closes = true;
    let mut s_linear_closes = true;
    let mut all_characterized = true;
    let mut nonzero: Vec<Value> = Vec::new();
    for item in &items {
        let (j, k) = item.monomial;
        if k == 0 && !item.residual.is_zero() {
            p_closes = false;
        }
        if (j, k) == (0, 1) && !item.residual.is_zero() {
            s_linear_closes = false;
        }
        all_characterized &= item.characterized;
        if !item.residual.is_zero() {
            nonzero.push(json!({
                "monomial": format!("P^{j} S^{k}"),
                "residual_terms": item.residual.num_terms(),
                "characterized": item.characterized,
            }));
        }
    }
    Check {
        check_id: "reduced.ps_completeness".into(),
        status: if p_closes && s_linear_closes && all_characterized {
            CheckStatus::ReportedDiscrepancy
        } else {
            CheckStatus::Fail
        },
        details: json!({
            "p_dynamics_closes": p_closes,
            "s_linear_closes": s_linear_closes,
            "displayed_operator_complete": nonzero.is_empty(),
            "residuals": nonzero,
            "verdict": "the displayed two-variable operator is incomplete: the chain rule gives \
                        <grad P, grad S> = 4S (a missing 8S d_P d_S cross term, still inside the \
                        volume variables) and <grad S, grad S> = 8MPS + 3456 M m1m2m3m4 V4^2, \
                        whose squared-volume part is not a function of (P, S); the reduction \
                        therefore closes only for functions at most linear in S",
        }),
    }
}

fn jacobi_checks(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut kinetic_ok = true;
    for _ in 0..20 {
        let masses = std::array::from_fn(|_| sampling::random_rat(rng, 1, 8, 4));
        let chk = crate::jacobi::kinetic_diagonalization_check(&masses);
        kinetic_ok &= chk.diagonal.iter().all(|x| *x == Rat::one());
        kinetic_ok &= chk.max_off_diagonal < 1e-12;
    }
    let mut oracle_ok = true;
    let mut oracle_rows = Vec::new();
    for (a, w, d) in [(1.0, 1.0, 3u32), (4.0, 1.0, 3), (0.25, 2.0, 1), (2.25, 0.5, 3), (1.0, 1.0, 1)] {
        match crate::jacobi::radial_oracle(a, w, d) {
            Ok((e0, e1)) => {
                let wt = a.sqrt() * w;
                let d0 = (e0 - wt * d as f64).abs();
                let d1 = (e1 - wt * (4.0 + d as f64)).abs();
                oracle_ok &= d0 < 1e-6 && d1 < 1e-6;
                oracle_rows.push(json!({"A": a, "omega": w, "d": d,
                                        "ground_error": d0, "gap_error": d1}));
            }
            Err(_) => oracle_ok = false,
        }
    }
    // normalization question: exact moment-of-inertia identity
    let mut unit_coefficient = true;
    let mut mu_value = String::new();
    for _ in 0..5 {
        let masses: [Rat; 4] = std::array::from_fn(|_| sampling::random_rat(rng, 1, 8, 4));
        let positions = std::array::from_fn(|_| {
            (0..3).map(|_| sampling::random_rat(rng, -9, 9, 4)).collect()
        });
        let ps = crate::jacobi::ParticleSystem::new(masses.clone(), positions).unwrap();
        let (weighted, jacobi_sum) = crate::jacobi::moment_of_inertia_identity(&ps);
        unit_coefficient &= weighted == jacobi_sum;
        let total: Rat = masses.iter().fold(Rat::zero(), |a, m| a + m);
        let prod: Rat = masses.iter().fold(Rat::one(), |a, m| a * m);
        mu_value = format!("{:.6}", rat_to_f64(&(prod / total)).cbrt());
    }
    vec![
        check("jacobi.kinetic_identity", kinetic_ok, json!({"mass_draws": 20})),
        check(
            "jacobi.spectrum_oracle",
            oracle_ok,
            Value::Array(oracle_rows),
        ),
        discrepancy(
            "jacobi.moment_normalization",
            json!({
                "identity": "sum m_i |r_i - R_cm|^2 = sum_j |r^J_j|^2, exact with coefficient 1",
                "unit_coefficient_holds": unit_coefficient,
                "cited_reduced_mass_mu_last_draw": mu_value,
                "verdict": "with this Jacobi normalization the moment-of-inertia \
                            potential carries unit spring coefficients, not A_i = mu = \
                            (m1m2m3m4/M)^(1/3); the cited value presumes a mass-rescaled Jacobi \
                            convention",
            }),
        ),
    ]
}

fn bo_check() -> Check {
    // b = c = e = f = 1, d = 3, omega = 1 pins the leading coefficient at 6;
    // a = 2 keeps the displayed m^2 bracket nonzero for the 5% comparison
    let gp = GaugeParams::new(
        [rat_i(2), rat_i(1), rat_i(1), rat_i(1), rat_i(1), rat_i(1)],
        rat_i(1),
    )
    .unwrap();
    let result = crate::bo::bo_gap_expansion_check(
        &gp,
        &rat_i(3),
        &[rat(1, 1000), rat(1, 10000)],
    );
    match result {
        Ok(exp) => {
            let ok = (exp.leading - exp.leading_displayed).abs() / exp.leading_displayed < 0.01
                && exp.gap_ratio > 9.5
                && exp.gap_ratio < 10.5
                && (exp.second - exp.second_displayed).abs() / exp.second_displayed.abs() < 0.05;
            check(
                "bo.expansion",
                ok,
                json!({
                    "leading": exp.leading,
                    "leading_displayed": exp.leading_displayed,
                    "second": exp.second,
                    "second_displayed": exp.second_displayed,
                    "gap_ratio": exp.gap_ratio,
                }),
            )
        }
        Err(e) => check("bo.expansion", false, json!({"error": e.to_string()})),
    }
}

/// Run every verification suite with the configured seed; checks appear in a
/// fixed order, so a fixed seed yields a byte-identical report.
pub fn run_full_suite(cfg: &ValidatedConfig) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = vec![cayley_menger_check(&mut rng)];
    checks.push(det_identity_check(&mut rng));
    checks.push(heron_check(&mut rng));
    checks.push(domain_check_entry());
    checks.push(special_det_check(&mut rng));
    checks.push(veff_reading_check(&mut rng));
    checks.push(radial_measure_check());
    checks.push(ground_state_check(&mut rng));
    checks.push(flag_preservation_check(&mut rng));
    checks.push(forward_map_printed_check(&mut rng));
    checks.push(conjugation_oracle_check(&mut rng));
    checks.push(special_limits_check());
    checks.push(sl7_relations_check());
    checks.push(sl7_flag_check());
    checks.push(sl7_equivalence_check(&mut rng));
    checks.push(sl7_special_displays_check());
    checks.extend(symmetry_suite_check(&mut rng));
    checks.extend(spectra_checks());
    checks.push(p_representation_check());
    checks.push(ps_completeness_check(&mut rng));
    checks.extend(jacobi_checks(&mut rng));
    checks.push(bo_check());
    Report {
        version: 1,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    #[test]
    fn deterministic_under_seed() {
        let cfg = RunConfig::default().validate().unwrap();
        let a = serde_json::to_string(&run_full_suite(&cfg)).unwrap();
        let b = serde_json::to_string(&run_full_suite(&cfg)).unwrap();
        assert_eq!(a, b);
    }
}

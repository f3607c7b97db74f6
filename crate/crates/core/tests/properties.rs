//! Randomized structural invariants of the polynomial and operator rings:
//! exact ring axioms, the evaluation homomorphism, an independent
//! interpolation oracle for differentiation, Leibniz composition and the
//! Jacobi identity.

use fourbody::diffop::DiffOp;
use fourbody::poly::{graded_basis, MultiIndex, Poly, Poly6};
use fourbody::rational::{rat_i, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn multi_index_strategy() -> impl Strategy<Value = MultiIndex<6>> {
    proptest::array::uniform6(0u32..3).prop_map(MultiIndex)
}

fn poly_strategy() -> impl Strategy<Value = Poly6> {
    proptest::collection::vec((multi_index_strategy(), rat_strategy()), 0..6).prop_map(|terms| {
        let mut p = Poly6::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    })
}

fn point_strategy() -> impl Strategy<Value = [Rat; 6]> {
    proptest::array::uniform6(rat_strategy())
}

fn first_order_op_strategy() -> impl Strategy<Value = DiffOp<6>> {
    proptest::collection::vec((0usize..6, poly_strategy()), 1..3).prop_map(|terms| {
        let mut op = DiffOp::zero();
        for (var, coeff) in terms {
            op.add_term(MultiIndex::unit(var), coeff);
        }
        op
    })
}

fn op_strategy() -> impl Strategy<Value = DiffOp<6>> {
    proptest::collection::vec(
        (proptest::array::uniform6(0u32..2), poly_strategy()),
        1..3,
    )
    .prop_map(|terms| {
        let mut op = DiffOp::zero();
        for (dorder, coeff) in terms {
            op.add_term(MultiIndex(dorder), coeff);
        }
        op
    })
}

/// Independent differentiation oracle: restrict `p` to the line
/// `x + t e_var`, recover the 1-variable polynomial exactly by Lagrange
/// interpolation on `deg+1` integer nodes, and read off the derivative at
/// `t = 0`. Shares nothing with `Poly::diff`.
fn derivative_by_interpolation(p: &Poly6, var: usize, x: &[Rat; 6]) -> Rat {
    let deg = p.degree().unwrap_or(0) as usize;
    let nodes: Vec<Rat> = (0..=deg as i64).map(rat_i).collect();
    let values: Vec<Rat> = nodes
        .iter()
        .map(|t| {
            let mut pt = x.clone();
            pt[var] = &x[var] + t;
            p.eval(&pt)
        })
        .collect();
    // q(t) = sum_k values_k * L_k(t); q'(0) = sum_k values_k * L_k'(0)
    let mut deriv = Rat::zero();
    for k in 0..nodes.len() {
        let mut weight = Rat::zero();
        // L_k'(0) = sum_{j != k} 1/(x_k - x_j) * prod_{i != k, j} (0 - x_i)/(x_k - x_i)
        for j in 0..nodes.len() {
            if j == k {
                continue;
            }
            let mut term = (&nodes[k] - &nodes[j]).recip();
            for i in 0..nodes.len() {
                if i == k || i == j {
                    continue;
                }
                term *= (-&nodes[i]) / (&nodes[k] - &nodes[i]);
            }
            weight += term;
        }
        deriv += &values[k] * weight;
    }
    deriv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let fg_h = (&f * &g).mul_poly(&h);
        let f_gh = f.mul_poly(&(&g * &h));
        prop_assert_eq!(fg_h, f_gh);
        let left = f.mul_poly(&(&g + &h));
        let right = &(&f * &g) + &(&f * &h);
        prop_assert_eq!(left, right);
        let comm = &(&f + &g) - &(&g + &f);
        prop_assert!(comm.is_zero());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_homomorphism(f in poly_strategy(), g in poly_strategy(), x in point_strategy()) {
        prop_assert_eq!(f.mul_poly(&g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
    }

    #[test]
    fn differentiation_matches_interpolation_oracle(
        f in poly_strategy(),
        var in 0usize..6,
        x in point_strategy(),
    ) {
        let direct = f.diff(var, 1).eval(&x);
        let oracle = derivative_by_interpolation(&f, var, &x);
        prop_assert_eq!(direct, oracle);
    }

    #[test]
    fn degree_of_product_adds(f in poly_strategy(), g in poly_strategy()) {
        if let (Some(df), Some(dg)) = (f.degree(), g.degree()) {
            prop_assert_eq!(f.mul_poly(&g).degree(), Some(df + dg));
        }
    }

    #[test]
    fn compose_is_application(a in op_strategy(), b in op_strategy(), f in poly_strategy()) {
        let lhs = a.compose(&b).apply(&f);
        let rhs = a.apply(&b.apply(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_is_linear(a in op_strategy(), f in poly_strategy(), g in poly_strategy()) {
        let lhs = a.apply(&(&f + &g));
        let rhs = &a.apply(&f) + &a.apply(&g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_antisymmetric_bilinear(
        a in first_order_op_strategy(),
        b in first_order_op_strategy(),
        c in rat_strategy(),
    ) {
        let ab = a.commutator(&b);
        let ba = b.commutator(&a);
        prop_assert_eq!(ab.clone(), ba.scale(&rat_i(-1)));
        prop_assert!(a.commutator(&a).is_zero());
        let scaled = a.scale(&c).commutator(&b);
        prop_assert_eq!(scaled, ab.scale(&c));
    }

    #[test]
    fn jacobi_identity(
        a in first_order_op_strategy(),
        b in first_order_op_strategy(),
        c in first_order_op_strategy(),
    ) {
        let total = a.commutator(&b).commutator(&c)
            .add(&b.commutator(&c).commutator(&a))
            .add(&c.commutator(&a).commutator(&b));
        prop_assert!(total.is_zero());
    }
}

#[test]
fn graded_basis_counts_and_order() {
    for (n, expect) in [(0u32, 1usize), (1, 7), (2, 28), (3, 84), (4, 210)] {
        let b = graded_basis::<6>(n);
        assert_eq!(b.len(), expect);
        for w in b.windows(2) {
            assert!(w[0] < w[1], "ordering must be strictly increasing");
        }
    }
    // one- and two-variable rings share the machinery
    assert_eq!(graded_basis::<1>(10).len(), 11);
    assert_eq!(graded_basis::<2>(4).len(), 15);
}

#[test]
fn compose_matches_application_on_basis() {
    // 30 pseudo-random (A, B, f) triples with a fixed cheap generator
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..30 {
        let mut a = DiffOp::<6>::zero();
        let mut b = DiffOp::<6>::zero();
        for _ in 0..2 {
            let v = (next() % 6) as usize;
            let w = (next() % 6) as usize;
            let c = rat_i((next() % 7) as i64 - 3);
            a.add_term(MultiIndex::unit(v), Poly::var(w).scale(&c));
            b.add_term(
                MultiIndex::unit(w).mul(&MultiIndex::unit(v)),
                Poly::var(v).scale(&rat_i((next() % 5) as i64 - 2)),
            );
        }
        let f = Poly6::var((next() % 6) as usize)
            .pow(1 + (next() % 3) as u32)
            .mul_poly(&Poly6::var((next() % 6) as usize));
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
        assert_eq!(b.compose(&a).apply(&f), b.apply(&a.apply(&f)));
    }
}

#[test]
fn operator_matrix_spectrum_blocks() {
    // h^(es) on the degree-2 basis: block char poly equals full char poly
    let mc = fourbody::geometry::MassConfig::new([rat_i(2), rat_i(1), rat_i(3), rat_i(1)]).unwrap();
    let gp = fourbody::model::GaugeParams::uniform(Rat::one(), Rat::one()).unwrap();
    let h = fourbody::model::build_h_es(&mc, &gp, &rat_i(3));
    let m = h.matrix_on_basis(2).unwrap();
    assert!(m.is_block_triangular());
    assert_eq!(m.char_poly(), m.block_char_poly());
}

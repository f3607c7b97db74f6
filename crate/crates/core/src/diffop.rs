//! Linear differential operators with polynomial coefficients.
//!
//! Every operator in the model — the radial Laplacian, the gauged oscillator
//! operator, the symmetry generators, the reduced P/(P,S) operators — is a
//! finite sum of `coeff(x) * d^alpha` terms. Composition is materialized via
//! the Leibniz rule so that operator identities reduce to structural equality
//! of normalized term maps.

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::poly::{graded_basis, MultiIndex, Poly};
use crate::rational::{binomial, rat_i, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Normalized operator: one polynomial coefficient per derivative
/// multi-order, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffOp<const V: usize> {
    terms: BTreeMap<MultiIndex<V>, Poly<V>>,
}

impl<const V: usize> DiffOp<V> {
    pub fn zero() -> Self {
        DiffOp {
            terms: BTreeMap::new(),
        }
    }

    /// The term `coeff * d^order`.
    pub fn term(coeff: Poly<V>, dorder: MultiIndex<V>) -> Self {
        let mut op = Self::zero();
        op.add_term(dorder, coeff);
        op
    }

    /// Pure first derivative in one variable.
    pub fn derivative(var: usize) -> Self {
        Self::term(Poly::one(), MultiIndex::unit(var))
    }

    /// Multiplication operator by a polynomial.
    pub fn mul_by(p: Poly<V>) -> Self {
        Self::term(p, MultiIndex::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex<V>, &Poly<V>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dorder: &MultiIndex<V>) -> Poly<V> {
        self.terms.get(dorder).cloned().unwrap_or_else(Poly::zero)
    }

    /// Highest total derivative order among the terms.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, dorder: MultiIndex<V>, coeff: Poly<V>) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(dorder).or_insert_with(Poly::zero);
        entry.add_assign_scaled(&coeff, &Rat::one());
        if entry.is_zero() {
            self.terms.remove(&dorder);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        DiffOp {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.scale(s)))
                .collect(),
        }
    }

    /// Exact action on a polynomial.
    pub fn apply(&self, p: &Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (dorder, coeff) in &self.terms {
            let mut q = p.clone();
            for (var, &k) in dorder.0.iter().enumerate() {
                if k > 0 {
                    q = q.diff(var, k);
                }
                if q.is_zero() {
                    break;
                }
            }
            if !q.is_zero() {
                out.add_assign_scaled(&coeff.mul_poly(&q), &Rat::one());
            }
        }
        out
    }

    /// Operator composition `self o other` (apply `other` first), expanded
    /// symbolically with the Leibniz rule.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                // d^ka (cb d^kb f) = sum_{gamma <= ka} C(ka,gamma)
                //                    (d^{ka-gamma} cb) d^{gamma+kb} f
                for_each_sub_multi(ka, |gamma| {
                    let mut db = cb.clone();
                    let mut coef = Rat::one();
                    for i in 0..V {
                        let diff_ord = ka.0[i] - gamma.0[i];
                        if diff_ord > 0 {
                            db = db.diff(i, diff_ord);
                        }
                        coef *= binomial(ka.0[i], gamma.0[i]);
                    }
                    if db.is_zero() {
                        return;
                    }
                    let key = gamma.mul(kb);
                    out.add_term(key, ca.mul_poly(&db).scale(&coef));
                });
            }
        }
        out
    }

    /// `[self, other] = self o other - other o self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// Relabel variables in both the coefficients and the derivative orders.
    pub fn permute_vars(&self, perm: &[usize; V]) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let mut e = [0u32; V];
            for i in 0..V {
                e[perm[i]] = k.0[i];
            }
            out.add_term(MultiIndex(e), c.permute_vars(perm));
        }
        out
    }

    /// Substitute a rational value for one variable in every coefficient.
    /// The variable must not be differentiated by any term.
    pub fn substitute_coeff_var(&self, var: usize, value: &Rat) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.0[var] > 0 {
                return Err(Error::BadLimit(format!(
                    "cannot freeze variable {var}: a derivative in it survives"
                )));
            }
            out.add_term(*k, c.substitute(var, value));
        }
        Ok(out)
    }

    /// Symbolic ratio `[self e^{-phi}] / e^{-phi}` for derivative order <= 2.
    pub fn exp_ratio(&self, phi: &Poly<V>) -> Result<Poly<V>> {
        let mut out = Poly::zero();
        for (dorder, coeff) in &self.terms {
            let contrib = match dorder.degree() {
                0 => Poly::one(),
                1 => {
                    let i = var_of(dorder, 0);
                    -&phi.diff(i, 1)
                }
                2 => {
                    let (i, j) = second_order_vars(dorder);
                    let di = phi.diff(i, 1);
                    let dj = phi.diff(j, 1);
                    &di.mul_poly(&dj) - &phi.diff(i, 1).diff(j, 1)
                }
                o => return Err(Error::UnsupportedOrder(o)),
            };
            out.add_assign_scaled(&coeff.mul_poly(&contrib), &Rat::one());
        }
        Ok(out)
    }

    /// Matrix of the operator on `graded_basis(max_degree)`; column `j`
    /// holds the coordinates of `self(basis[j])`.
    pub fn matrix_on_basis(&self, max_degree: u32) -> Result<OperatorMatrix<V>> {
        let basis = graded_basis::<V>(max_degree);
        let index: BTreeMap<MultiIndex<V>, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let n = basis.len();
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for (j, mono) in basis.iter().enumerate() {
            let image = self.apply(&Poly::monomial(*mono, Rat::one()));
            for (m, c) in image.terms() {
                match index.get(m) {
                    Some(&i) => entries[i][j] = c.clone(),
                    None => {
                        return Err(Error::FlagViolation {
                            max_degree,
                            monomial: format!("{:?}", m.0),
                        })
                    }
                }
            }
        }
        let mut block_offsets = vec![0usize];
        let mut deg = 0;
        for (i, m) in basis.iter().enumerate() {
            while m.degree() > deg {
                block_offsets.push(i);
                deg += 1;
            }
        }
        block_offsets.push(n);
        Ok(OperatorMatrix {
            basis,
            entries,
            block_offsets,
        })
    }
}

fn var_of<const V: usize>(m: &MultiIndex<V>, skip: usize) -> usize {
    let mut count = 0;
    for i in 0..V {
        for _ in 0..m.0[i] {
            if count == skip {
                return i;
            }
            count += 1;
        }
    }
    unreachable!("multi-index shorter than requested entry");
}

fn second_order_vars<const V: usize>(m: &MultiIndex<V>) -> (usize, usize) {
    (var_of(m, 0), var_of(m, 1))
}

fn for_each_sub_multi<const V: usize>(bound: &MultiIndex<V>, mut f: impl FnMut(&MultiIndex<V>)) {
    let mut cur = MultiIndex::<V>::zero();
    loop {
        f(&cur);
        // odometer increment below `bound`
        let mut i = 0;
        loop {
            if i == V {
                return;
            }
            if cur.0[i] < bound.0[i] {
                cur.0[i] += 1;
                break;
            }
            cur.0[i] = 0;
            i += 1;
        }
    }
}

/// One multiplicative factor of a gauge function.
#[derive(Clone, Debug)]
pub enum Factor<const V: usize> {
    /// `A(x)^e` with rational exponent; `A(x)` must be nonzero at the
    /// evaluation point.
    Pow(Poly<V>, Rat),
    /// `e^{-phi(x)}`.
    ExpNeg(Poly<V>),
}

/// Exact value of `[Op F] / F` at `x`, where `F` is the product of the given
/// factors. Only first and second partials of the factors enter, so the
/// result is rational whenever `x` is. Operators of derivative order > 2 are
/// rejected.
pub fn apply_to_power_product<const V: usize>(
    op: &DiffOp<V>,
    factors: &[Factor<V>],
    x: &[Rat; V],
) -> Result<Rat> {
    if op.max_order() > 2 {
        return Err(Error::UnsupportedOrder(op.max_order()));
    }
    // log-derivative data of F: L_i = d_i log F, M_ij = d_i d_j log F
    let mut log_grad = vec![Rat::zero(); V];
    let mut log_hess = vec![vec![Rat::zero(); V]; V];
    for factor in factors {
        match factor {
            Factor::Pow(a, e) => {
                let av = a.eval(x);
                if av.is_zero() {
                    return Err(Error::SingularPoint(format!(
                        "factor base vanishes at the evaluation point (exponent {e})"
                    )));
                }
                let grads: Vec<Rat> = (0..V).map(|i| a.diff(i, 1).eval(x)).collect();
                for i in 0..V {
                    log_grad[i] += e * &grads[i] / &av;
                    for j in i..V {
                        let hij = a.diff(i, 1).diff(j, 1).eval(x);
                        let t = e * (&hij / &av - &grads[i] * &grads[j] / (&av * &av));
                        log_hess[i][j] += &t;
                        if i != j {
                            log_hess[j][i] += t;
                        }
                    }
                }
            }
            Factor::ExpNeg(phi) => {
                for i in 0..V {
                    log_grad[i] -= phi.diff(i, 1).eval(x);
                    for j in i..V {
                        let t = phi.diff(i, 1).diff(j, 1).eval(x);
                        log_hess[i][j] -= &t;
                        if i != j {
                            log_hess[j][i] -= t;
                        }
                    }
                }
            }
        }
    }
    // d_i F / F = L_i ; d_i d_j F / F = L_i L_j + M_ij
    let mut total = Rat::zero();
    for (dorder, coeff) in op.terms() {
        let cv = coeff.eval(x);
        if cv.is_zero() {
            continue;
        }
        let ratio = match dorder.degree() {
            0 => Rat::one(),
            1 => log_grad[var_of(dorder, 0)].clone(),
            2 => {
                let (i, j) = second_order_vars(dorder);
                &log_grad[i] * &log_grad[j] + &log_hess[i][j]
            }
            _ => unreachable!("order checked above"),
        };
        total += cv * ratio;
    }
    Ok(total)
}

/// Dense exact matrix of an operator on a graded basis, organized in degree
/// blocks. With the (degree, lex) monomial order a flag-preserving operator
/// has zero entries from degree-`n` columns to rows of degree > `n`, so its
/// spectrum is readable from the diagonal blocks.
#[derive(Clone, Debug)]
pub struct OperatorMatrix<const V: usize> {
    pub basis: Vec<MultiIndex<V>>,
    pub entries: RatMatrix,
    /// `block_offsets[k]..block_offsets[k+1]` indexes the degree-`k` block.
    pub block_offsets: Vec<usize>,
}

impl<const V: usize> OperatorMatrix<V> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_offsets.len() - 1
    }

    /// The degree-`k` diagonal block.
    pub fn diagonal_block(&self, k: usize) -> RatMatrix {
        let lo = self.block_offsets[k];
        let hi = self.block_offsets[k + 1];
        (lo..hi)
            .map(|i| (lo..hi).map(|j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// True when no column flows to a strictly higher degree row.
    pub fn is_block_triangular(&self) -> bool {
        for (j, mj) in self.basis.iter().enumerate() {
            for (i, mi) in self.basis.iter().enumerate() {
                if mi.degree() > mj.degree() && !self.entries[i][j].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact characteristic polynomial of the full matrix.
    pub fn char_poly(&self) -> Vec<Rat> {
        linalg::char_poly(&self.entries)
    }

    /// Product of the characteristic polynomials of the diagonal blocks;
    /// equals `char_poly()` exactly iff the block-triangular structure holds.
    pub fn block_char_poly(&self) -> Vec<Rat> {
        let mut out = vec![Rat::one()];
        for k in 0..self.num_blocks() {
            let cp = linalg::char_poly(&self.diagonal_block(k));
            out = linalg::poly_mul(&out, &cp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly6;
    use crate::rational::rat;

    fn euler6() -> DiffOp<6> {
        let mut op = DiffOp::zero();
        for i in 0..6 {
            op.add_term(MultiIndex::unit(i), Poly::var(i));
        }
        op
    }

    #[test]
    fn apply_basics() {
        let d12 = DiffOp::<6>::derivative(0);
        let p = Poly6::var(0).pow(2);
        assert_eq!(d12.apply(&p), Poly6::var(0).scale(&rat_i(2)));
        // Euler operator eigenvalue on rho12^k
        let e = euler6();
        for k in 0..5u32 {
            let m = Poly6::var(0).pow(k);
            assert_eq!(e.apply(&m), m.scale(&rat_i(k as i64)));
        }
    }

    #[test]
    fn compose_leibniz() {
        // d o rho12 = rho12 d + 1
        let d = DiffOp::<6>::derivative(0);
        let m = DiffOp::mul_by(Poly6::var(0));
        let c = d.compose(&m);
        let expect = DiffOp::term(Poly6::var(0), MultiIndex::unit(0))
            .add(&DiffOp::mul_by(Poly6::one()));
        assert_eq!(c, expect);
        // identity composition
        let id = DiffOp::mul_by(Poly6::one());
        assert_eq!(id.compose(&d), d);
        assert_eq!(d.compose(&id), d);
    }

    #[test]
    fn commutator_canonical_pair() {
        let d = DiffOp::<6>::derivative(0);
        let m = DiffOp::mul_by(Poly6::var(0));
        assert_eq!(d.commutator(&m), DiffOp::mul_by(Poly6::one()));
        assert!(d.commutator(&d).is_zero());
    }

    #[test]
    fn matrix_euler_diagonal() {
        let m = euler6().matrix_on_basis(1).unwrap();
        assert_eq!(m.dim(), 7);
        for i in 0..7 {
            for j in 0..7 {
                let expect = if i == j && i > 0 { rat_i(1) } else { rat_i(0) };
                assert_eq!(m.entries[i][j], expect);
            }
        }
        assert!(m.is_block_triangular());
    }

    #[test]
    fn matrix_derivative_lowers_degree() {
        let m = DiffOp::<6>::derivative(0).matrix_on_basis(2).unwrap();
        assert!(m.is_block_triangular());
        // strictly lowering: diagonal blocks are all zero
        for k in 0..m.num_blocks() {
            let b = m.diagonal_block(k);
            assert!(b.iter().all(|row| row.iter().all(|x| x.is_zero())));
        }
    }

    #[test]
    fn flag_violation_detected() {
        // multiplication by rho12 raises degree out of any finite basis
        let m = DiffOp::mul_by(Poly6::var(0)).matrix_on_basis(2);
        assert!(matches!(m, Err(Error::FlagViolation { .. })));
    }

    #[test]
    fn power_product_chain_rule() {
        // d_rho12 on F = rho12^{1/2} at rho12 = 4: F'/F = 1/2 * 1/4 = 1/8
        let op = DiffOp::<6>::derivative(0);
        let x = [rat_i(4), rat_i(1), rat_i(1), rat_i(1), rat_i(1), rat_i(1)];
        let v = apply_to_power_product(&op, &[Factor::Pow(Poly6::var(0), rat(1, 2))], &x).unwrap();
        assert_eq!(v, rat(1, 8));
        // 2 rho12 d^2 on rho12^alpha at rho12=1 -> 2 alpha (alpha - 1)
        let alpha = rat(5, 3);
        let op2 = DiffOp::term(
            Poly6::var(0).scale(&rat_i(2)),
            MultiIndex([2, 0, 0, 0, 0, 0]),
        );
        let x1: [Rat; 6] = std::array::from_fn(|_| rat_i(1));
        let v2 =
            apply_to_power_product(&op2, &[Factor::Pow(Poly6::var(0), alpha.clone())], &x1)
                .unwrap();
        assert_eq!(v2, rat_i(2) * &alpha * (&alpha - rat_i(1)));
    }

    #[test]
    fn exp_ratio_gaussian() {
        // [d^2/dx^2 e^{-s x}] / e^{-s x} = s^2 with phi = s x
        let phi = Poly6::var(0).scale(&rat(3, 2));
        let op = DiffOp::term(Poly6::one(), MultiIndex([2, 0, 0, 0, 0, 0]));
        let r = op.exp_ratio(&phi).unwrap();
        assert_eq!(r, Poly6::constant(rat(9, 4)));
    }

    #[test]
    fn singular_point_rejected() {
        let op = DiffOp::<6>::derivative(0);
        let x: [Rat; 6] = std::array::from_fn(|_| rat_i(0));
        let v = apply_to_power_product(&op, &[Factor::Pow(Poly6::var(0), rat(1, 2))], &x);
        assert!(matches!(v, Err(Error::SingularPoint(_))));
    }
}

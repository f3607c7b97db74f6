//! Exact multivariate polynomials over the rationals.
//!
//! The ring is generic in the number of variables `V`: the six-variable ring
//! carries every expression in the pair coordinates, while the one- and
//! two-variable rings back the reduced representations. Monomials are ordered
//! by total degree, then lexicographically on the exponent tuple; this grading
//! is what makes flag-preserving operator matrices block triangular.

use crate::rational::{rat_i, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent tuple of one monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex<const V: usize>(pub [u32; V]);

impl<const V: usize> MultiIndex<V> {
    pub fn zero() -> Self {
        MultiIndex([0; V])
    }

    pub fn unit(var: usize) -> Self {
        let mut e = [0; V];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        MultiIndex(e)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

impl<const V: usize> PartialOrd for MultiIndex<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<const V: usize> Ord for MultiIndex<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// One of the six squared-distance variables, in the fixed order
/// `(12, 13, 14, 23, 24, 34)` that identifies them with `u1..u6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum VarId {
    R12,
    R13,
    R14,
    R23,
    R24,
    R34,
}

impl VarId {
    pub const ALL: [VarId; 6] = [
        VarId::R12,
        VarId::R13,
        VarId::R14,
        VarId::R23,
        VarId::R24,
        VarId::R34,
    ];

    pub fn index(self) -> usize {
        match self {
            VarId::R12 => 0,
            VarId::R13 => 1,
            VarId::R14 => 2,
            VarId::R23 => 3,
            VarId::R24 => 4,
            VarId::R34 => 5,
        }
    }

    /// The unordered particle pair `(i, j)`, `1 <= i < j <= 4`.
    pub fn pair(self) -> (usize, usize) {
        match self {
            VarId::R12 => (1, 2),
            VarId::R13 => (1, 3),
            VarId::R14 => (1, 4),
            VarId::R23 => (2, 3),
            VarId::R24 => (2, 4),
            VarId::R34 => (3, 4),
        }
    }

    pub fn from_pair(i: usize, j: usize) -> VarId {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        match (i, j) {
            (1, 2) => VarId::R12,
            (1, 3) => VarId::R13,
            (1, 4) => VarId::R14,
            (2, 3) => VarId::R23,
            (2, 4) => VarId::R24,
            (3, 4) => VarId::R34,
            _ => panic!("invalid particle pair ({i},{j})"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarId::R12 => "rho12",
            VarId::R13 => "rho13",
            VarId::R14 => "rho14",
            VarId::R23 => "rho23",
            VarId::R24 => "rho24",
            VarId::R34 => "rho34",
        }
    }
}

/// Sparse polynomial with rational coefficients; zero coefficients are never
/// stored, so `==` is structural equality of normalized forms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly<const V: usize> {
    terms: BTreeMap<MultiIndex<V>, Rat>,
}

impl<const V: usize> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(MultiIndex::zero(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(MultiIndex::unit(i), Rat::one())
    }

    pub fn monomial(m: MultiIndex<V>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex<V>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &MultiIndex<V>) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: MultiIndex<V>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &Rat) {
        for (m, c) in &other.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul_poly(self);
        }
        out
    }

    /// Formal partial derivative of the given order.
    pub fn diff(&self, var: usize, order: u32) -> Self {
        let mut cur = self.clone();
        for _ in 0..order {
            let mut next = Self::zero();
            for (m, c) in &cur.terms {
                let k = m.0[var];
                if k == 0 {
                    continue;
                }
                let mut e = m.0;
                e[var] -= 1;
                next.add_term(MultiIndex(e), c * rat_i(k as i64));
            }
            cur = next;
        }
        cur
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &[Rat; V]) -> Rat {
        let mut out = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                for _ in 0..k {
                    t *= &x[i];
                }
            }
            out += t;
        }
        out
    }

    /// Substitute polynomials (possibly over a different ring) for the
    /// variables.
    pub fn eval_poly<const W: usize>(&self, args: &[Poly<W>; V]) -> Poly<W> {
        let mut out = Poly::<W>::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::<W>::constant(c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul_poly(&args[i].pow(k));
                }
            }
            out.add_assign_scaled(&t, &Rat::one());
        }
        out
    }

    /// Substitute a rational value for one variable, keeping the ring.
    pub fn substitute(&self, var: usize, value: &Rat) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = m.0[var];
            let mut e = m.0;
            e[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff *= value;
            }
            out.add_term(MultiIndex(e), coeff);
        }
        out
    }

    /// Relabel variables: monomial exponent of variable `i` moves to
    /// `perm[i]`. `perm` must be a permutation of `0..V`.
    pub fn permute_vars(&self, perm: &[usize; V]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = [0u32; V];
            for i in 0..V {
                e[perm[i]] = m.0[i];
            }
            out.add_term(MultiIndex(e), c.clone());
        }
        out
    }
}

impl<const V: usize> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rat::one());
        out
    }
}

impl<const V: usize> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &rat_i(-1));
        out
    }
}

impl<const V: usize> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        self.mul_poly(rhs)
    }
}

impl<const V: usize> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.scale(&rat_i(-1))
    }
}

impl<const V: usize> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in m.0.iter().enumerate() {
                if k == 1 {
                    write!(f, "*x{i}")?;
                } else if k > 1 {
                    write!(f, "*x{i}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `<= max_degree`, in (degree, lex) order.
/// Length is `C(max_degree + V, V)`.
pub fn graded_basis<const V: usize>(max_degree: u32) -> Vec<MultiIndex<V>> {
    let mut out = Vec::new();
    let mut cur = [0u32; V];
    fn rec<const V: usize>(
        cur: &mut [u32; V],
        pos: usize,
        remaining: u32,
        out: &mut Vec<MultiIndex<V>>,
    ) {
        if pos == V {
            out.push(MultiIndex(*cur));
            return;
        }
        for k in 0..=remaining {
            cur[pos] = k;
            rec(cur, pos + 1, remaining - k, out);
        }
        cur[pos] = 0;
    }
    rec(&mut cur, 0, max_degree, &mut out);
    out.sort();
    out
}

/// Convenience: the six-variable polynomial ring used throughout.
pub type Poly6 = Poly<6>;

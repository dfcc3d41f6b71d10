use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gaussian::{write_sum, GaussianRational};
use super::monomial::Monomial;

/// Sparse polynomial over ℚ(i) in `γ^{±1}, q^{±1}, h̄₃, h₄, h₅, …`.
///
/// Terms are kept in a [`BTreeMap`] keyed by [`Monomial`] order and no zero
/// coefficient is ever stored, so derived equality is polynomial equality and
/// iteration order is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Hash-based term accumulator used by the arithmetic kernels.
#[derive(Default)]
pub struct PolyBuilder {
    acc: HashMap<Monomial, GaussianRational>,
}

impl PolyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.acc.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_poly(&mut self, p: &Poly) {
        for (m, c) in p.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, p: &Poly, c: &GaussianRational) {
        for (m, d) in p.terms() {
            self.add_term(m.clone(), c * d);
        }
    }

    /// Accumulates `c·m·p`.
    pub fn add_monomial_times(&mut self, c: &GaussianRational, m: &Monomial, p: &Poly) {
        for (pm, pc) in p.terms() {
            self.add_term(m.mul(pm), c * pc);
        }
    }

    pub fn add_product(&mut self, a: &Poly, b: &Poly) {
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn build(self) -> Poly {
        Poly { terms: self.acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::from_int(1))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `γ^k`.
    pub fn gamma(k: i32) -> Self {
        Self::term(1.into(), Monomial::new(k, 0, 0, &[]))
    }

    /// `q^k = h₃^{k/3}`.
    pub fn q(k: i32) -> Self {
        Self::term(1.into(), Monomial::new(0, k, 0, &[]))
    }

    pub fn h3() -> Self {
        Self::q(3)
    }

    pub fn hbar3() -> Self {
        Self::term(1.into(), Monomial::new(0, 0, 1, &[]))
    }

    /// `h_j` for `j ≥ 3`; `h_3` is stored as `q³`.
    pub fn h(j: u32) -> Self {
        assert!(j >= 3, "h_j is defined for j >= 3");
        if j == 3 {
            Self::h3()
        } else {
            Self::term(1.into(), Monomial::new(0, 0, 0, &[(j, 1)]))
        }
    }

    /// Balanced coordinate `z_j = h₃^{-j/3} h_j`, as an unscaled polynomial.
    pub fn z(j: u32) -> Self {
        assert!(j >= 4, "z_j is defined for j >= 4");
        Self::term(1.into(), Monomial::new(0, -(j as i32), 0, &[(j, 1)]))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(iter: I) -> Self {
        let mut b = PolyBuilder::new();
        for (m, c) in iter {
            b.add_term(m, c);
        }
        b.build()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, GaussianRational> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of a unit `c·γ^a·q^b`; `None` for anything else.
    pub fn try_inv(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        let mi = m.try_inv()?;
        let ci = c.checked_inv().ok()?;
        Some(Self::term(ci, mi))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    /// `c·m·self`.
    pub fn mul_term(&self, c: &GaussianRational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial is injective on monomials.
        Self { terms: self.terms.iter().map(|(pm, d)| (pm.mul(m), c * d)).collect() }
    }

    /// Largest `j` with `h_j` present.
    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn hbar3_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::hbar3).max().unwrap_or(0)
    }

    pub fn is_hbar3_free(&self) -> bool {
        self.terms.keys().all(|m| m.hbar3() == 0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(m.clone()) {
                btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
            }
        }
        Poly { terms }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(m.clone()) {
                btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                btree_map::Entry::Vacant(e) => {
                    e.insert(-c);
                }
            }
        }
        Poly { terms }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some((m, c)) = rhs.as_monomial() {
            return self.mul_term(c, m);
        }
        if let Some((m, c)) = self.as_monomial() {
            return rhs.mul_term(c, m);
        }
        let mut b = PolyBuilder::new();
        b.add_product(self, rhs);
        b.build()
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for Poly {
    /// Highest-order term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write_sum(f, self.terms.iter().rev().map(|(m, c)| (m.to_string(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn monomial_product() {
        let z4 = Poly::z(4);
        let sq = &z4 * &z4;
        assert_eq!(sq, Poly::term(1.into(), Monomial::new(0, -8, 0, &[(4, 2)])));
    }

    #[test]
    fn curvature_times_h4() {
        // (γ² − 2h₃h̄₃)·h₄
        let r = &Poly::gamma(2) - &(&Poly::h3() * &Poly::hbar3()).scale(&c(2, 1));
        let got = &r * &Poly::h(4);
        let want = &(&Poly::gamma(2) * &Poly::h(4)) - &(&(&Poly::h3() * &Poly::hbar3()) * &Poly::h(4)).scale(&c(2, 1));
        assert_eq!(got, want);
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn zero_absorbs() {
        assert!((&Poly::z(5) * &Poly::zero()).is_zero());
    }

    #[test]
    fn self_difference_is_structurally_zero() {
        let p = &(&Poly::z(5) + &Poly::gamma(-1)) * &Poly::hbar3();
        assert_eq!(&p - &p, Poly::zero());
    }

    #[test]
    fn unit_inverse() {
        let u = Poly::term(GaussianRational::imag_ratio(9, 1), Monomial::new(2, 1, 0, &[]));
        assert_eq!(&u * &u.try_inv().unwrap(), Poly::one());
        assert!(Poly::z(4).try_inv().is_none());
        assert!((&Poly::one() + &Poly::q(1)).try_inv().is_none());
    }
}

//! Balanced representation `h₃^{k/3} · body(z₄, z₅, …, r², γ)` with
//! `z_j = h₃^{-j/3} h_j` and `r² = h₃h̄₃`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::gaussian::{write_sum, GaussianRational};
use super::monomial::{bump, Exponents, Monomial};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A monomial `γ^gamma · (r²)^r2 · ∏ z_j^{e_j}` of a balanced body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BalancedMonomial {
    gamma: i32,
    r2: u32,
    z: Exponents,
}

impl BalancedMonomial {
    pub fn new(gamma: i32, r2: u32, z: &[(u32, u32)]) -> Self {
        let mut exps = Exponents::new();
        for &(j, e) in z {
            assert!(j >= 4, "balanced coordinates start at z_4");
            bump(&mut exps, j, e as i64);
        }
        Self { gamma, r2, z: exps }
    }

    pub fn gamma(&self) -> i32 {
        self.gamma
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn z(&self) -> &[(u32, u32)] {
        &self.z
    }

    /// Spectral weight `Σ (j−3)·e_j`; `r²` and `γ` are weightless.
    pub fn weight(&self) -> i64 {
        self.z.iter().map(|&(j, e)| (j as i64 - 3) * e as i64).sum()
    }

    /// Total degree in the `z` variables.
    pub fn degree(&self) -> u32 {
        self.z.iter().map(|&(_, e)| e).sum()
    }

    /// Index of the highest balanced coordinate present (0 if none).
    pub fn top(&self) -> u32 {
        self.z.last().map(|&(j, _)| j).unwrap_or(0)
    }

    fn jet_sum(&self) -> u32 {
        self.z.iter().map(|&(j, e)| j * e).sum()
    }
}

impl Ord for BalancedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.jet_sum()
            .cmp(&other.jet_sum())
            .then(self.r2.cmp(&other.r2))
            .then(self.gamma.cmp(&other.gamma))
            .then_with(|| self.z.as_slice().cmp(other.z.as_slice()))
    }
}

impl PartialOrd for BalancedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `h₃^{prefactor_thirds/3} · body`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BalancedPoly {
    prefactor_thirds: i32,
    body: BTreeMap<BalancedMonomial, GaussianRational>,
}

/// Gradings of a balanced body. `None` means the terms disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    /// Index of the highest `z_j` present.
    pub order: u32,
    pub weight: Option<i64>,
    pub degree: Option<u32>,
}

impl BalancedPoly {
    pub fn new<I>(prefactor_thirds: i32, terms: I) -> Self
    where
        I: IntoIterator<Item = (BalancedMonomial, GaussianRational)>,
    {
        let mut body: BTreeMap<BalancedMonomial, GaussianRational> = BTreeMap::new();
        for (m, c) in terms {
            let slot = body.entry(m).or_default();
            *slot += &c;
        }
        body.retain(|_, c| !c.is_zero());
        Self { prefactor_thirds, body }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prefactor_thirds(&self) -> i32 {
        self.prefactor_thirds
    }

    pub fn body(&self) -> &BTreeMap<BalancedMonomial, GaussianRational> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_empty()
    }

    /// Same value with the prefactor moved to `k`; only meaningful for zero.
    pub fn with_prefactor(mut self, k: i32) -> Self {
        if self.is_zero() {
            self.prefactor_thirds = k;
        }
        self
    }

    /// Rescales the body by `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.prefactor_thirds, self.body.iter().map(|(m, d)| (m.clone(), c * d)))
    }

    pub fn grading(&self) -> Grading {
        let order = self.body.keys().map(BalancedMonomial::top).max().unwrap_or(0);
        let mut weights = self.body.keys().map(BalancedMonomial::weight);
        let mut degrees = self.body.keys().map(BalancedMonomial::degree);
        let weight = match weights.next() {
            Some(w) => weights.all(|x| x == w).then_some(w),
            None => Some(0),
        };
        let degree = match degrees.next() {
            Some(d) => degrees.all(|x| x == d).then_some(d),
            None => Some(0),
        };
        Grading { order, weight, degree }
    }

    /// Body terms with the highest `z_j` first, compared index by index
    /// downward; this is the order the displays use.
    pub fn display_terms(&self) -> Vec<(&BalancedMonomial, &GaussianRational)> {
        let mut v: Vec<_> = self.body.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            b.z.iter().rev().cmp(a.z.iter().rev()).then(b.r2.cmp(&a.r2)).then(b.gamma.cmp(&a.gamma))
        });
        v
    }

    /// Largest power of `r²` in the body.
    pub fn r2_degree(&self) -> u32 {
        self.body.keys().map(BalancedMonomial::r2).max().unwrap_or(0)
    }
}

/// Rewrites `p` as `h₃^{k/3}·body` by `h_j = q^j z_j`, `h̄₃ = r² q^{-3}`.
pub fn to_balanced(p: &Poly) -> Result<BalancedPoly> {
    let mut prefactor = None;
    let mut body = BTreeMap::new();
    for (m, c) in p.terms() {
        let jets: i64 = m.h().iter().map(|&(j, e)| j as i64 * e as i64).sum();
        let k = (m.q() as i64 + jets - 3 * m.hbar3() as i64) as i32;
        match prefactor {
            None => prefactor = Some(k),
            Some(k0) if k0 != k => return Err(Error::MixedPrefactor { first: k0, second: k }),
            _ => {}
        }
        let bm = BalancedMonomial { gamma: m.gamma(), r2: m.hbar3(), z: m.h().iter().copied().collect() };
        body.insert(bm, c.clone());
    }
    Ok(BalancedPoly { prefactor_thirds: prefactor.unwrap_or(0), body })
}

/// Inverse of [`to_balanced`].
pub fn from_balanced(b: &BalancedPoly) -> Poly {
    Poly::from_terms(b.body.iter().map(|(bm, c)| {
        let jets: i64 = bm.z.iter().map(|&(j, e)| j as i64 * e as i64).sum();
        let q = b.prefactor_thirds as i64 + 3 * bm.r2 as i64 - jets;
        let m = Monomial::new(bm.gamma, q as i32, bm.r2, &bm.z);
        (m, c.clone())
    }))
}

impl fmt::Display for BalancedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.gamma != 0 {
            parts.push(if self.gamma == 1 { "g".to_string() } else { format!("g^{}", self.gamma) });
        }
        if self.r2 != 0 {
            parts.push(if self.r2 == 1 { "r2".to_string() } else { format!("r2^{}", self.r2) });
        }
        for &(j, e) in self.z.iter().rev() {
            parts.push(if e == 1 { format!("z{j}") } else { format!("z{j}^{e}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl fmt::Display for BalancedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.prefactor_thirds != 0 {
            write!(f, "h3^({}/3) * ", self.prefactor_thirds)?;
        }
        f.write_str("(")?;
        write_sum(f, self.display_terms().into_iter().map(|(m, c)| (m.to_string(), c)))?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn z4_is_unscaled_h4() {
        let p = Poly::term(1.into(), Monomial::new(0, -4, 0, &[(4, 1)]));
        let b = to_balanced(&p).unwrap();
        assert_eq!(b.prefactor_thirds(), 0);
        assert_eq!(b, BalancedPoly::new(0, [(BalancedMonomial::new(0, 0, &[(4, 1)]), gr(1, 1))]));
    }

    #[test]
    fn seed_prefactor() {
        let s3 = Poly::term(GaussianRational::imag_ratio(-3, 2), Monomial::new(1, -1, 0, &[]));
        let b = to_balanced(&s3).unwrap();
        assert_eq!(b.prefactor_thirds(), -1);
        assert_eq!(b.body().len(), 1);
        assert_eq!(from_balanced(&b), s3);
    }

    #[test]
    fn b5_body() {
        // h₃^{-4/3}h₅ − (5/3)h₃^{-7/3}h₄² = h₃^{1/3}(z₅ − (5/3)z₄²)
        let p = &Poly::term(1.into(), Monomial::new(0, -4, 0, &[(5, 1)]))
            - &Poly::term(gr(5, 3), Monomial::new(0, -7, 0, &[(4, 2)]));
        let b = to_balanced(&p).unwrap();
        assert_eq!(b.prefactor_thirds(), 1);
        let want = BalancedPoly::new(
            1,
            [(BalancedMonomial::new(0, 0, &[(5, 1)]), gr(1, 1)), (BalancedMonomial::new(0, 0, &[(4, 2)]), gr(-5, 3))],
        );
        assert_eq!(b, want);
    }

    #[test]
    fn mixed_prefactor_rejected() {
        let p = &Poly::z(4) + &Poly::q(1);
        assert!(matches!(to_balanced(&p), Err(Error::MixedPrefactor { .. })));
    }

    #[test]
    fn r2_pairs_up() {
        let r2 = &Poly::h3() * &Poly::hbar3();
        let b = to_balanced(&r2).unwrap();
        assert_eq!(b.prefactor_thirds(), 0);
        assert_eq!(b.r2_degree(), 1);
        let g = b.grading();
        assert_eq!((g.order, g.weight, g.degree), (0, Some(0), Some(0)));
    }

    #[test]
    fn gradings() {
        let z4 = to_balanced(&Poly::z(4)).unwrap().grading();
        assert_eq!((z4.order, z4.weight, z4.degree), (4, Some(1), Some(1)));
        let j = to_balanced(&(&Poly::z(5) - &(&Poly::z(4) * &Poly::z(4)).scale(&gr(5, 3)))).unwrap();
        let g = j.grading();
        assert_eq!((g.order, g.weight, g.degree), (5, Some(2), None));
        let mixed = to_balanced(&(&Poly::z(5) + &Poly::z(4))).unwrap().grading();
        assert_eq!(mixed.weight, None);
    }

    #[test]
    fn display_order_puts_top_variable_first() {
        let p = &(&Poly::z(4) * &Poly::z(4)) + &(&Poly::z(5) + &(&Poly::z(6) * &Poly::z(4)));
        let q = &to_balanced(&(&p * &Poly::z(4))).unwrap();
        let order: Vec<_> = q.display_terms().into_iter().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, ["z6*z4^2", "z5*z4", "z4^3"]);
        assert_eq!(q.to_string(), "(z6*z4^2 + z5*z4 + z4^3)");
        let b5 = BalancedPoly::new(
            1,
            [(BalancedMonomial::new(-1, 0, &[(5, 1)]), gr(1, 3)), (BalancedMonomial::new(-1, 0, &[(4, 2)]), gr(-5, 9))],
        );
        assert_eq!(b5.to_string(), "h3^(1/3) * (1/3*g^-1*z5 - 5/9*g^-1*z4^2)");
    }
}

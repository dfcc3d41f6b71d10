//! Total derivatives on the prolongation ring.
//!
//! Modulo the contact ideal, `dh_j + i·j·h_j·ρ = h_{j+1}ξ + T_j ξ̄`. The
//! ρ-terms cancel on every equivariant function the engine handles, so the
//! scalar operators are plain derivations:
//!
//! * `∂_ξ`:  `h_j ↦ h_{j+1}` (so `q ↦ q^{-2}h₄/3`), `h̄₃ ↦ 0`, `γ ↦ 0`;
//! * `∂_ξ̄`: `h_j ↦ T_j` (so `q ↦ 0`), `γ ↦ 0`, on `h̄₃`-free input.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{to_balanced, BalancedPoly, GaussianRational, Monomial, Poly, PolyBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjMethod {
    /// `T_{j+1} = ∂_ξ T_j + (j/2)·R·h_j`, memoized.
    Recursive,
    /// `T_{j+1} = Σ_s a_{j,s} h_{j−s} ∂_ξ^s R`.
    Closed,
}

/// Derivation context for a prolongation ring truncated at `h_N`.
///
/// Holds the configured tower bound and the append-only `T_j` memo table.
/// Concurrent readers share the table; extension takes the write lock.
#[derive(Debug)]
pub struct Prolongation {
    max_tower: u32,
    // table[i] = T_{i+3}
    table: RwLock<Vec<Poly>>,
}

/// `a_{j,s} = (j+2s+3)/(2(j−1)) · C(j−1, s+2)` for `j ≥ 3`, `0 ≤ s ≤ j−3`.
pub fn a_coeff(j: u32, s: u32) -> Result<BigRational> {
    if j < 3 || s > j - 3 {
        return Err(Error::OutOfRange(format!("a_{{{j},{s}}} needs j >= 3 and 0 <= s <= j-3")));
    }
    let binom = binomial(BigInt::from(j - 1), BigInt::from(s + 2));
    Ok(BigRational::new(BigInt::from(j + 2 * s + 3) * binom, BigInt::from(2 * (j - 1))))
}

/// Gauss curvature `R = γ² − 2h₃h̄₃`.
pub fn curvature() -> Poly {
    &Poly::gamma(2) - &(&Poly::h3() * &Poly::hbar3()).scale(&GaussianRational::from_int(2))
}

/// `∂_ξ^s R = δ_{0s}γ² − 2h_{3+s}h̄₃`.
pub fn curvature_derivative(s: u32) -> Poly {
    let tail = (&Poly::h(3 + s) * &Poly::hbar3()).scale(&GaussianRational::from_int(-2));
    if s == 0 {
        &Poly::gamma(2) + &tail
    } else {
        tail
    }
}

impl Prolongation {
    pub fn new(max_tower: u32) -> Result<Self> {
        if max_tower < 4 {
            return Err(Error::Config(format!("tower bound must be at least 4, got {max_tower}")));
        }
        Ok(Self { max_tower, table: RwLock::new(vec![Poly::zero()]) })
    }

    pub fn max_tower(&self) -> u32 {
        self.max_tower
    }

    fn check_index(&self, j: u32) -> Result<()> {
        if j > self.max_tower {
            Err(Error::TowerBound { index: j, max: self.max_tower })
        } else {
            Ok(())
        }
    }

    pub fn tj(&self, j: u32, method: TjMethod) -> Result<Poly> {
        if j < 3 {
            return Err(Error::OutOfRange(format!("T_{j} is defined for j >= 3")));
        }
        if j > self.max_tower + 1 {
            return Err(Error::TowerBound { index: j, max: self.max_tower });
        }
        match method {
            TjMethod::Recursive => self.tj_recursive(j),
            TjMethod::Closed => Ok(tj_closed(j)),
        }
    }

    fn tj_recursive(&self, j: u32) -> Result<Poly> {
        let idx = (j - 3) as usize;
        if let Some(t) = self.table.read().expect("T_j table poisoned").get(idx) {
            return Ok(t.clone());
        }
        let mut table = self.table.write().expect("T_j table poisoned");
        while table.len() <= idx {
            let prev_index = table.len() as u32 + 2;
            let prev = table.last().expect("table starts with T_3");
            let lift = (&curvature() * &Poly::h(prev_index)).scale(&GaussianRational::ratio(prev_index as i64, 2));
            let next = &self.d_xi(prev)? + &lift;
            table.push(next);
        }
        Ok(table[idx].clone())
    }

    /// `T̂_j = h₃^{-(j−1)/3} T_j` in balanced form.
    pub fn tj_hat(&self, j: u32) -> Result<BalancedPoly> {
        let t = self.tj(j, TjMethod::Recursive)?;
        let scaled = t.mul_term(&GaussianRational::from_int(1), &Monomial::new(0, -(j as i32 - 1), 0, &[]));
        to_balanced(&scaled)
    }

    /// Total derivative along ξ.
    pub fn d_xi(&self, p: &Poly) -> Result<Poly> {
        let mut out = PolyBuilder::new();
        for (m, c) in p.terms() {
            if m.q() != 0 {
                self.check_index(4)?;
                let k = c.scale(&BigRational::new(m.q().into(), 3.into()));
                out.add_term(m.with_gamma_q(0, -3).with_h_bump(4, 1), k);
            }
            for &(j, e) in m.h() {
                self.check_index(j + 1)?;
                let k = c.scale(&BigRational::from_integer(e.into()));
                out.add_term(m.with_h_bump(j, -1).with_h_bump(j + 1, 1), k);
            }
        }
        Ok(out.build())
    }

    /// Total derivative along ξ̄; rejects input containing `h̄₃`.
    pub fn d_xibar(&self, p: &Poly) -> Result<Poly> {
        if !p.is_hbar3_free() {
            return Err(Error::ConjugateInput);
        }
        let mut out = PolyBuilder::new();
        for (m, c) in p.terms() {
            for &(j, e) in m.h() {
                let t = self.tj(j, TjMethod::Recursive)?;
                let k = c.scale(&BigRational::from_integer(e.into()));
                out.add_monomial_times(&k, &m.with_h_bump(j, -1), &t);
            }
        }
        Ok(out.build())
    }
}

/// Closed-form `T_J`, independent of the memo table.
fn tj_closed(big_j: u32) -> Poly {
    if big_j == 3 {
        return Poly::zero();
    }
    let j = big_j - 1;
    let mut out = PolyBuilder::new();
    for s in 0..=(j - 3) {
        let a = a_coeff(j, s).expect("indices in range");
        if a.is_zero() {
            continue;
        }
        let term = &Poly::h(j - s) * &curvature_derivative(s);
        out.add_scaled(&term, &GaussianRational::from_rational(a));
    }
    out.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BalancedMonomial;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn a_coefficients() {
        assert_eq!(a_coeff(3, 0).unwrap(), q(3, 2));
        assert_eq!(a_coeff(4, 1).unwrap(), q(3, 2));
        assert_eq!(a_coeff(4, 0).unwrap(), q(7, 2));
        for j in 0..20 {
            assert_eq!(a_coeff(j + 3, j).unwrap(), q(3, 2));
        }
        assert!(a_coeff(2, 0).is_err());
        assert!(a_coeff(5, 3).is_err());
    }

    #[test]
    fn first_tj_values() {
        let ring = Prolongation::new(10).unwrap();
        let t4 = (&Poly::h3() * &curvature()).scale(&gr(3, 2));
        let t5 = &(&Poly::gamma(2) * &Poly::h(4)).scale(&gr(7, 2))
            - &(&(&Poly::h3() * &Poly::hbar3()) * &Poly::h(4)).scale(&gr(10, 1));
        for method in [TjMethod::Recursive, TjMethod::Closed] {
            assert!(ring.tj(3, method).unwrap().is_zero());
            assert_eq!(ring.tj(4, method).unwrap(), t4);
            assert_eq!(ring.tj(5, method).unwrap(), t5);
        }
    }

    #[test]
    fn tower_bound_is_enforced() {
        let ring = Prolongation::new(6).unwrap();
        assert!(ring.tj(7, TjMethod::Recursive).is_ok());
        assert!(matches!(ring.tj(8, TjMethod::Closed), Err(Error::TowerBound { .. })));
        assert!(matches!(ring.d_xi(&Poly::h(6)), Err(Error::TowerBound { index: 7, max: 6 })));
    }

    #[test]
    fn d_xi_examples() {
        let ring = Prolongation::new(8).unwrap();
        // ∂_ξ(h₃^{-4/3}h₄) = h₃^{-4/3}h₅ − (4/3)h₃^{-7/3}h₄²
        let got = ring.d_xi(&Poly::z(4)).unwrap();
        let want = &Poly::term(gr(1, 1), Monomial::new(0, -4, 0, &[(5, 1)]))
            - &Poly::term(gr(4, 3), Monomial::new(0, -7, 0, &[(4, 2)]));
        assert_eq!(got, want);
        assert!(ring.d_xi(&Poly::gamma(2)).unwrap().is_zero());
        // ∂_ξ(−(3i/2)γq^{-1}) = (i/2)γ z₄
        let s3 = Poly::term(GaussianRational::imag_ratio(-3, 2), Monomial::new(1, -1, 0, &[]));
        let want = Poly::term(GaussianRational::imag_ratio(1, 2), Monomial::new(1, -4, 0, &[(4, 1)]));
        assert_eq!(ring.d_xi(&s3).unwrap(), want);
    }

    #[test]
    fn d_xibar_examples() {
        let ring = Prolongation::new(8).unwrap();
        for k in -5..5 {
            assert!(ring.d_xibar(&Poly::q(k)).unwrap().is_zero());
        }
        // q·∂_ξ̄ z₄ = (3/2)R
        let got = ring.d_xibar(&Poly::z(4)).unwrap().mul_term(&gr(1, 1), &Monomial::new(0, 1, 0, &[]));
        assert_eq!(got, curvature().scale(&gr(3, 2)));
        assert!(matches!(ring.d_xibar(&Poly::hbar3()), Err(Error::ConjugateInput)));
    }

    #[test]
    fn tj_hat_small() {
        let ring = Prolongation::new(8).unwrap();
        assert!(ring.tj_hat(3).unwrap().is_zero());
        let want4 = BalancedPoly::new(
            0,
            [(BalancedMonomial::new(2, 0, &[]), gr(3, 2)), (BalancedMonomial::new(0, 1, &[]), gr(-3, 1))],
        );
        assert_eq!(ring.tj_hat(4).unwrap(), want4);
        let hat5 = ring.tj_hat(5).unwrap();
        let want5 = BalancedPoly::new(
            0,
            [(BalancedMonomial::new(2, 0, &[(4, 1)]), gr(7, 2)), (BalancedMonomial::new(0, 1, &[(4, 1)]), gr(-10, 1))],
        );
        assert_eq!(hat5, want5);
        assert_eq!(hat5.grading().weight, Some(1));
    }
}

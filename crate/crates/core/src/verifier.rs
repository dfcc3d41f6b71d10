//! Executable checks on computed Killing fields, plus the even-order
//! obstruction determinant `χ_k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::derivations::{a_coeff, Prolongation};
use crate::error::{Error, Result};
use crate::killing::KillingState;
use crate::loop_matrix::{lambda_coeff, Ansatz, CharPoly, Component};
use crate::ring::{to_balanced, GaussianRational, Monomial, Poly};

use Component::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Jacobi,
    Charpoly,
    Conservation,
    Homogeneity,
    Crosscheck,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Jacobi,
        CheckKind::Charpoly,
        CheckKind::Conservation,
        CheckKind::Homogeneity,
        CheckKind::Crosscheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Jacobi => "jacobi",
            CheckKind::Charpoly => "charpoly",
            CheckKind::Conservation => "conservation",
            CheckKind::Homogeneity => "homogeneity",
            CheckKind::Crosscheck => "crosscheck",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// What a report covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// λ-degrees `from..=to`.
    Lambda {
        from: u32,
        to: u32,
    },
    /// One coefficient, named by superscript.
    Coefficient {
        component: Component,
        index: u32,
    },
    Pair {
        component: Component,
        index: u32,
        other: Component,
        other_index: u32,
    },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Lambda { from, to } => write!(f, "lambda^{from}..lambda^{to}"),
            Scope::Coefficient { component, index } => write!(f, "{component}^{index}"),
            Scope::Pair { component, index, other, other_index } => {
                write!(f, "{component}^{index},{other}^{other_index}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub name: String,
    pub status: CheckStatus,
    /// Nonzero residue; present exactly when the check failed.
    pub witness: Option<Poly>,
    pub scope: Scope,
}

impl CheckReport {
    fn from_residue(kind: CheckKind, name: impl Into<String>, scope: Scope, residue: Poly) -> Self {
        let (status, witness) =
            if residue.is_zero() { (CheckStatus::Pass, None) } else { (CheckStatus::Fail, Some(residue)) };
        Self { kind, name: name.into(), status, witness, scope }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiKind {
    /// `ℰ(A) = ∂_ξ∂_ξ̄A + (3/2)γ²A`.
    Jacobi,
    /// `ℰ'(P) = ∂_ξ∂_ξ̄P + (1/2)(γ² + 4h₃h̄₃)P`.
    Pseudo,
}

pub fn jacobi_apply(ring: &Prolongation, a: &Poly, kind: JacobiKind) -> Result<Poly> {
    let second = ring.d_xi(&ring.d_xibar(a)?)?;
    let potential = match kind {
        JacobiKind::Jacobi => Poly::gamma(2).scale(&GaussianRational::ratio(3, 2)),
        JacobiKind::Pseudo => {
            let r2 = (&Poly::h3() * &Poly::hbar3()).scale(&GaussianRational::from_int(2));
            &Poly::gamma(2).scale(&GaussianRational::ratio(1, 2)) + &r2
        }
    };
    Ok(&second + &(&potential * a))
}

/// Balanced prefactor `k` in `h₃^{k/3}` carried by each component.
pub fn prefactor_thirds(c: Component) -> i32 {
    match c {
        P | A => 0,
        B | G => 1,
        F | S => -1,
        C => -2,
        T => 2,
    }
}

/// λ³ constant of the determinant.
pub fn det_constant(ansatz: Ansatz) -> Poly {
    match ansatz {
        Ansatz::P4 => Poly::gamma(2).scale(&GaussianRational::ratio(27, 2)),
        Ansatz::A5 => Poly::gamma(4).scale(&GaussianRational::imag_ratio(-729, 4)),
    }
}

type Rhs = &'static [(Coef, Component)];

#[derive(Clone, Copy)]
enum Coef {
    /// `c·γ`
    Gamma(i64, i64),
    /// `c·h₃`
    H3(i64, i64),
    /// `c·h̄₃`
    Hbar3(i64, i64),
}

impl Coef {
    fn poly(self) -> Poly {
        let (c, m) = match self {
            Coef::Gamma(n, d) => ((n, d), Monomial::new(1, 0, 0, &[])),
            Coef::H3(n, d) => ((n, d), Monomial::new(0, 3, 0, &[])),
            Coef::Hbar3(n, d) => ((n, d), Monomial::new(0, 0, 1, &[])),
        };
        Poly::term(GaussianRational::imag_ratio(c.0, c.1), m)
    }
}

/// Right-hand sides of `∂_ξ X_d` (in terms of degree `d+1`) and `∂_ξ̄ X_d`
/// (degree `d−1`); every coefficient is imaginary, so only `Im` is listed.
fn structure(c: Component) -> (Rhs, Rhs) {
    use Coef::*;
    match c {
        P => (&[(Gamma(1, 1), B), (H3(2, 1), C)], &[(Gamma(1, 1), S), (Hbar3(2, 1), T)]),
        B => (&[(H3(1, 1), F)], &[(Gamma(1, 2), P)]),
        C => (&[(Gamma(1, 1), F)], &[(Hbar3(1, 1), P)]),
        F => (&[(Gamma(3, 2), A)], &[(Gamma(1, 1), C), (Hbar3(1, 1), B)]),
        A => (&[(Gamma(1, 1), G)], &[(Gamma(1, 1), F)]),
        G => (&[(Gamma(-1, 1), T), (H3(-1, 1), S)], &[(Gamma(3, 2), A)]),
        S => (&[(Gamma(1, 2), P)], &[(Hbar3(-1, 1), G)]),
        T => (&[(H3(1, 1), P)], &[(Gamma(-1, 1), G)]),
    }
}

#[derive(Clone, Debug)]
pub struct Verifier<'a> {
    ring: &'a Prolongation,
}

impl<'a> Verifier<'a> {
    pub fn new(ring: &'a Prolongation) -> Self {
        Self { ring }
    }

    /// Runs the selected checks. Arithmetic errors (e.g. a corrupted
    /// coefficient that contains `h̄₃`) are reported as failures.
    pub fn check_killing(&self, state: &KillingState, kinds: &[CheckKind]) -> Vec<CheckReport> {
        let mut out = Vec::new();
        for &k in kinds {
            match k {
                CheckKind::Jacobi => self.jacobi_checks(state, &mut out),
                CheckKind::Charpoly => charpoly_checks(state, &mut out),
                CheckKind::Conservation => self.conservation_checks(state, &mut out),
                CheckKind::Homogeneity => homogeneity_checks(state, &mut out),
                CheckKind::Crosscheck => self.structure_checks(state, &mut out),
            }
        }
        out
    }

    fn jacobi_checks(&self, state: &KillingState, out: &mut Vec<CheckReport>) {
        let ansatz = state.ansatz();
        for (comp, kind, label) in [(A, JacobiKind::Jacobi, "E"), (P, JacobiKind::Pseudo, "E'")] {
            for (d, p) in state.components().series(comp).iter() {
                let index = ansatz.superscript(comp, d);
                let residue = jacobi_apply(self.ring, p, kind).unwrap_or_else(|_| p.clone());
                out.push(CheckReport::from_residue(
                    CheckKind::Jacobi,
                    format!("{label}({comp}^{index}) = 0"),
                    Scope::Coefficient { component: comp, index },
                    residue,
                ));
            }
        }
    }

    fn conservation_checks(&self, state: &KillingState, out: &mut Vec<CheckReport>) {
        let kc = state.components();
        let ansatz = state.ansatz();
        let half_i_gamma = Coef::Gamma(1, 2).poly();
        for (d, b) in kc.series(B).iter() {
            let (Some(s), Some(p)) = (kc.known(S, d as i64 - 2), kc.known(P, d as i64 - 1)) else {
                continue;
            };
            let target = &half_i_gamma * &p;
            let scope = Scope::Pair { component: B, index: ansatz.superscript(B, d), other: S, other_index: d };
            let (xibar_b, xi_s) = match (self.ring.d_xibar(b), self.ring.d_xi(&s)) {
                (Ok(x), Ok(y)) => (x, y),
                _ => {
                    out.push(CheckReport::from_residue(CheckKind::Conservation, "closure", scope, b.clone()));
                    continue;
                }
            };
            let free_residue = if xibar_b.is_hbar3_free() { Poly::zero() } else { xibar_b.clone() };
            let bi = ansatz.superscript(B, d);
            out.push(CheckReport::from_residue(
                CheckKind::Conservation,
                format!("d_xibar(b^{bi}) is hbar3-free"),
                scope.clone(),
                free_residue,
            ));
            out.push(CheckReport::from_residue(
                CheckKind::Conservation,
                format!("d_xibar(b^{bi}) = (i/2)g*p"),
                scope.clone(),
                &xibar_b - &target,
            ));
            out.push(CheckReport::from_residue(
                CheckKind::Conservation,
                format!("d_xi(s^{}) = (i/2)g*p", bi - 2),
                scope,
                &xi_s - &target,
            ));
        }
    }

    fn structure_checks(&self, state: &KillingState, out: &mut Vec<CheckReport>) {
        let kc = state.components();
        let ansatz = state.ansatz();
        for comp in Component::ALL {
            let (xi_rhs, xibar_rhs) = structure(comp);
            for (d, x) in kc.series(comp).iter() {
                let index = ansatz.superscript(comp, d);
                let scope = Scope::Coefficient { component: comp, index };
                for (rhs, shift, bar) in [(xi_rhs, 1i64, false), (xibar_rhs, -1, true)] {
                    let Some(want) = eval_rhs(state, rhs, d as i64 + shift) else {
                        continue;
                    };
                    let lhs = if bar { self.ring.d_xibar(x) } else { self.ring.d_xi(x) };
                    let residue = match lhs {
                        Ok(l) => &l - &want,
                        Err(_) => x.clone(),
                    };
                    let op = if bar { "d_xibar" } else { "d_xi" };
                    out.push(CheckReport::from_residue(
                        CheckKind::Crosscheck,
                        format!("{op}({comp}^{index}) structure equation"),
                        scope.clone(),
                        residue,
                    ));
                }
            }
        }
    }
}

fn eval_rhs(state: &KillingState, rhs: Rhs, d: i64) -> Option<Poly> {
    let mut acc = Poly::zero();
    for &(c, comp) in rhs {
        let y = state.components().known(comp, d)?;
        acc = &acc + &(&c.poly() * &y);
    }
    Some(acc)
}

fn charpoly_checks(state: &KillingState, out: &mut Vec<CheckReport>) {
    let kc = state.components();
    for cp in [CharPoly::Sigma2, CharPoly::Det3] {
        let bound = cp.determined_below(kc);
        if bound == 0 {
            continue;
        }
        let series = cp.through(kc, bound - 1);
        let (label, expected) = match cp {
            CharPoly::Sigma2 => ("sigma2", Poly::zero()),
            CharPoly::Det3 => ("det3", det_constant(state.ansatz())),
        };
        for d in 0..bound {
            let want = if d == 3 { expected.clone() } else { Poly::zero() };
            let got = lambda_coeff(&series, d);
            let name = if want.is_zero() {
                format!("{label} [lambda^{d}] = 0")
            } else {
                format!("{label} [lambda^{d}] = {expected}")
            };
            out.push(CheckReport::from_residue(
                CheckKind::Charpoly,
                name,
                Scope::Lambda { from: d, to: d },
                &got - &want,
            ));
        }
    }
}

fn homogeneity_checks(state: &KillingState, out: &mut Vec<CheckReport>) {
    let ansatz = state.ansatz();
    for (comp, d, p) in state.components().coefficients() {
        if p.is_zero() {
            continue;
        }
        let index = ansatz.superscript(comp, d);
        let scope = Scope::Coefficient { component: comp, index };
        let ok = match to_balanced(p) {
            Ok(b) if p.is_hbar3_free() => {
                let g = b.grading();
                let weight = index as i64 - 3;
                let order_ok = if index >= 4 { g.order == index } else { g.order == 0 };
                let lattice_ok = match comp {
                    A => matches!(weight.rem_euclid(6), 2 | 4),
                    P => matches!(weight.rem_euclid(6), 1 | 5),
                    _ => true,
                };
                b.prefactor_thirds() == prefactor_thirds(comp) && g.weight == Some(weight) && order_ok && lattice_ok
            }
            _ => false,
        };
        let residue = if ok { Poly::zero() } else { p.clone() };
        out.push(CheckReport::from_residue(
            CheckKind::Homogeneity,
            format!("{comp}^{index}: prefactor, weight, order"),
            scope,
            residue,
        ));
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn chi_t(k: u32) -> Result<Vec<BigRational>> {
    let two_k = 2 * k;
    (0..=k - 2)
        .map(|j| {
            let mut t = a_coeff(two_k, two_k - j - 3)? + a_coeff(two_k, j)?;
            if j <= 1 {
                t -= rat(k as i64);
            }
            Ok(t)
        })
        .collect()
}

/// Coefficient matrix of the three-term system in `x₀ … x_{k−2}`.
pub fn chi_matrix(k: u32) -> Result<Vec<Vec<BigRational>>> {
    if k < 4 {
        return Err(Error::OutOfRange(format!("chi_k needs k >= 4, got {k}")));
    }
    let t = chi_t(k)?;
    let n = (k - 1) as usize;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    let last = n - 1;
    for j in 0..n {
        m[j][0] += &t[j];
        match j {
            0 => m[0][1] += rat(1),
            1 => {
                m[1][1] += rat(1);
                m[1][2] += rat(1);
            }
            _ if j == last => {
                m[j][j - 1] += rat(1);
                m[j][j] += rat(2);
            }
            _ => {
                m[j][j - 1] += rat(1);
                m[j][j] += rat(1);
                m[j][j + 1] += rat(1);
            }
        }
    }
    Ok(m)
}

/// Exact determinant by Gaussian elimination over ℚ.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &f * src;
            }
        }
    }
    det
}

/// `χ_k` as the determinant of the even-order obstruction system (with `γ² = 1`).
pub fn chi(k: u32) -> Result<BigRational> {
    Ok(determinant(chi_matrix(k)?))
}

/// `Σ_j ε_k^j t_j` with `ε = −2` when `j ≡ k (mod 3)`, else `1`.
pub fn chi_epsilon_sum(k: u32) -> Result<BigRational> {
    if k < 4 {
        return Err(Error::OutOfRange(format!("chi_k needs k >= 4, got {k}")));
    }
    let t = chi_t(k)?;
    Ok(t.iter().enumerate().map(|(j, tj)| if j as u32 % 3 == k % 3 { tj * rat(-2) } else { tj.clone() }).sum())
}

/// Whether the two χ computations agree up to sign.
pub fn chi_methods_agree(k: u32) -> Result<bool> {
    Ok(chi(k)?.abs() == chi_epsilon_sum(k)?.abs())
}

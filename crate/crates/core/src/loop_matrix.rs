//! λ-graded Killing components, the 3×3 Killing matrix and the closed
//! formulas for its characteristic-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{GaussianRational, Poly, PolyBuilder};

/// The eight scalar components of a Killing field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    P,
    B,
    C,
    F,
    A,
    G,
    S,
    T,
}

impl Component {
    pub const ALL: [Component; 8] = [
        Component::P,
        Component::B,
        Component::C,
        Component::F,
        Component::A,
        Component::G,
        Component::S,
        Component::T,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["p", "b", "c", "f", "a", "g", "s", "t"][self.index()]
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Component::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown component `{s}`")))
    }
}

/// Initial-data ansatz; fixes the λ-degree residues of every component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ansatz {
    /// Generated by the pseudo-Jacobi field `p⁴ = z₄`.
    P4,
    /// Generated by the Jacobi field `a⁵ = z₅ − (5/3)z₄²`.
    A5,
}

impl Ansatz {
    pub fn name(self) -> &'static str {
        match self {
            Ansatz::P4 => "p4",
            Ansatz::A5 => "a5",
        }
    }

    /// λ-degree of the component's series modulo 6.
    pub fn residue(self, c: Component) -> u32 {
        let p4 = [2, 3, 3, 4, 5, 0, 1, 1][c.index()];
        match self {
            Ansatz::P4 => p4,
            Ansatz::A5 => (p4 + 4) % 6,
        }
    }

    /// Upper index of the coefficient at λ-degree `d`. Both towers label
    /// coefficients by order, which sits two above the λ-degree.
    pub fn superscript(self, _c: Component, d: u32) -> u32 {
        d + 2
    }

    pub fn lambda_degree(self, _c: Component, superscript: u32) -> Option<u32> {
        superscript.checked_sub(2)
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ansatz {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p4" => Ok(Ansatz::P4),
            "a5" => Ok(Ansatz::A5),
            _ => Err(Error::Parse(format!("unknown ansatz `{s}` (expected p4 or a5)"))),
        }
    }
}

/// Sparse λ-series `Σ_d coeffs[d]·λ^d`.
///
/// An entry may hold an explicit zero, meaning "computed and vanishes"; an
/// absent degree means "not computed". Arithmetic treats both as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaSeries {
    coeffs: BTreeMap<u32, Poly>,
}

impl LambdaSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Poly)>>(iter: I) -> Self {
        Self { coeffs: iter.into_iter().collect() }
    }

    pub fn insert(&mut self, d: u32, p: Poly) -> Option<Poly> {
        self.coeffs.insert(d, p)
    }

    pub fn get(&self, d: u32) -> Option<&Poly> {
        self.coeffs.get(&d)
    }

    pub fn get_mut(&mut self, d: u32) -> Option<&mut Poly> {
        self.coeffs.get_mut(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.coeffs.iter().map(|(&d, p)| (d, p))
    }

    fn nonzero(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.iter().filter(|(_, p)| !p.is_zero())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// True when no stored coefficient is nonzero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Poly::is_zero)
    }

    /// Drops explicit zeros.
    pub fn trimmed(&self) -> Self {
        Self { coeffs: self.nonzero().map(|(d, p)| (d, p.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { coeffs: self.nonzero().map(|(d, p)| (d, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect() }
    }

    /// `Σ_k c_k·x_k` for series `x_k`.
    pub fn linear_combination(parts: &[(GaussianRational, &LambdaSeries)]) -> Self {
        let mut acc: BTreeMap<u32, PolyBuilder> = BTreeMap::new();
        for (c, s) in parts {
            for (d, p) in s.nonzero() {
                acc.entry(d).or_default().add_scaled(p, c);
            }
        }
        collect(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = GaussianRational::from_int(1);
        Self::linear_combination(&[(one.clone(), self), (one, other)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combination(&[(GaussianRational::from_int(1), self), (GaussianRational::from_int(-1), other)])
    }

    /// Product keeping degrees `≤ max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut acc: BTreeMap<u32, PolyBuilder> = BTreeMap::new();
        for (i, a) in self.nonzero() {
            for (j, b) in other.nonzero() {
                if i + j > max_degree {
                    break;
                }
                acc.entry(i + j).or_default().add_product(a, b);
            }
        }
        collect(acc)
    }

    /// Full product.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Coefficient of `λ^d` in `self·other`, without forming the rest.
    pub fn mul_coeff(&self, other: &Self, d: u32) -> Poly {
        let mut acc = PolyBuilder::new();
        for (i, a) in self.nonzero() {
            if i > d {
                break;
            }
            if let Some(b) = other.get(d - i) {
                acc.add_product(a, b);
            }
        }
        acc.build()
    }
}

fn collect(acc: BTreeMap<u32, PolyBuilder>) -> LambdaSeries {
    LambdaSeries { coeffs: acc.into_iter().map(|(d, b)| (d, b.build())).filter(|(_, p)| !p.is_zero()).collect() }
}

/// The Poly at λ-degree `d`, zero if absent.
pub fn lambda_coeff(series: &LambdaSeries, d: u32) -> Poly {
    series.get(d).cloned().unwrap_or_default()
}

/// The eight component series of a (truncated) formal Killing field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingComponents {
    ansatz: Ansatz,
    series: [LambdaSeries; 8],
}

impl KillingComponents {
    pub fn new(ansatz: Ansatz) -> Self {
        Self { ansatz, series: Default::default() }
    }

    pub fn ansatz(&self) -> Ansatz {
        self.ansatz
    }

    pub fn series(&self, c: Component) -> &LambdaSeries {
        &self.series[c.index()]
    }

    pub fn series_mut(&mut self, c: Component) -> &mut LambdaSeries {
        &mut self.series[c.index()]
    }

    /// Installs a coefficient; the degree must lie on the component's residue class.
    pub fn set(&mut self, c: Component, d: u32, p: Poly) -> Result<()> {
        if d % 6 != self.ansatz.residue(c) {
            return Err(Error::OutOfRange(format!(
                "{c} has λ-degrees ≡ {} mod 6 under {}, got {d}",
                self.ansatz.residue(c),
                self.ansatz
            )));
        }
        self.series[c.index()].insert(d, p);
        Ok(())
    }

    pub fn get(&self, c: Component, d: u32) -> Option<&Poly> {
        self.series[c.index()].get(d)
    }

    /// Value of a coefficient if it is known: off-residue and negative
    /// degrees are identically zero, unset on-residue degrees are unknown.
    pub fn known(&self, c: Component, d: i64) -> Option<Poly> {
        if d < 0 || d % 6 != self.ansatz.residue(c) as i64 {
            return Some(Poly::zero());
        }
        self.get(c, d as u32).cloned()
    }

    /// First on-residue degree not yet computed.
    pub fn frontier(&self, c: Component) -> u32 {
        match self.series(c).max_degree() {
            Some(d) => d + 6,
            None => self.ansatz.residue(c),
        }
    }

    /// All stored coefficients in (λ-degree, component) order.
    pub fn coefficients(&self) -> Vec<(Component, u32, &Poly)> {
        let mut out: Vec<_> =
            Component::ALL.iter().flat_map(|&c| self.series(c).iter().map(move |(d, p)| (c, d, p))).collect();
        out.sort_by_key(|&(c, d, _)| (d, c));
        out
    }
}

/// Which coefficient of `det(μI₃ + X) = μ³ + σ₂μ + det X` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharPoly {
    Sigma2,
    Det3,
}

type Term = (GaussianRational, &'static [Component]);

impl CharPoly {
    /// Closed formula as a sum of signed component products.
    ///
    /// `σ₂ = 3a² + p² − 4ct − 4bs − 4fg`;
    /// `det = i(4gsp − 4fga − 4b²c − 4f²t + 4g²c + 4s²t + 2a³ − 2ap² + 8act − 4bsa + 4bfp)`.
    pub fn terms(self) -> Vec<Term> {
        use Component::*;
        let real = |n| GaussianRational::from_int(n);
        let imag = |n| GaussianRational::imag_ratio(n, 1);
        match self {
            CharPoly::Sigma2 => vec![
                (real(3), &[A, A]),
                (real(1), &[P, P]),
                (real(-4), &[C, T]),
                (real(-4), &[B, S]),
                (real(-4), &[F, G]),
            ],
            CharPoly::Det3 => vec![
                (imag(4), &[G, S, P]),
                (imag(-4), &[F, G, A]),
                (imag(-4), &[B, B, C]),
                (imag(-4), &[F, F, T]),
                (imag(4), &[G, G, C]),
                (imag(4), &[S, S, T]),
                (imag(2), &[A, A, A]),
                (imag(-2), &[A, P, P]),
                (imag(8), &[A, C, T]),
                (imag(-4), &[B, S, A]),
                (imag(4), &[B, F, P]),
            ],
        }
    }

    /// Series through `λ^max_degree`.
    pub fn through(self, kc: &KillingComponents, max_degree: u32) -> LambdaSeries {
        let products: Vec<(GaussianRational, LambdaSeries)> =
            self.terms().into_iter().map(|(c, fs)| (c, product_through(kc, fs, max_degree))).collect();
        let parts: Vec<_> = products.iter().map(|(c, s)| (c.clone(), s)).collect();
        LambdaSeries::linear_combination(&parts)
    }

    /// Coefficient of `λ^d`.
    pub fn coeff(self, kc: &KillingComponents, d: u32) -> Poly {
        let mut acc = PolyBuilder::new();
        for (c, fs) in self.terms() {
            acc.add_scaled(&product_coeff(kc, fs, d), &c);
        }
        acc.build()
    }

    /// Coefficient of `λ^d` in the formal partial derivative with respect to `wrt`.
    pub fn partial_coeff(self, kc: &KillingComponents, wrt: Component, d: u32) -> Poly {
        let mut acc = PolyBuilder::new();
        for (c, fs) in self.terms() {
            for pos in 0..fs.len() {
                if fs[pos] != wrt {
                    continue;
                }
                let rest: Vec<Component> = fs.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &x)| x).collect();
                acc.add_scaled(&product_coeff(kc, &rest, d), &c);
            }
        }
        acc.build()
    }

    /// Degrees below the returned bound are fixed by computed data: no
    /// uncomputed coefficient can reach them through any product term.
    pub fn determined_below(self, kc: &KillingComponents) -> u32 {
        let lo = |c: Component| {
            kc.series(c).iter().find(|(_, p)| !p.is_zero()).map(|(d, _)| d).unwrap_or_else(|| kc.frontier(c))
        };
        self.terms()
            .iter()
            .flat_map(|(_, fs)| {
                (0..fs.len()).map(move |pos| {
                    fs.iter().enumerate().map(|(k, &x)| if k == pos { kc.frontier(x) } else { lo(x) }).sum::<u32>()
                })
            })
            .min()
            .unwrap_or(u32::MAX)
    }
}

fn product_through(kc: &KillingComponents, factors: &[Component], max_degree: u32) -> LambdaSeries {
    let mut acc = LambdaSeries::from_coeffs([(0, Poly::one())]);
    for &f in factors {
        acc = acc.mul_truncated(kc.series(f), max_degree);
    }
    acc
}

fn product_coeff(kc: &KillingComponents, factors: &[Component], d: u32) -> Poly {
    match factors.split_last() {
        None => {
            if d == 0 {
                Poly::one()
            } else {
                Poly::zero()
            }
        }
        Some((&last, init)) => product_through(kc, init, d).mul_coeff(kc.series(last), d),
    }
}

/// Determinant of the assembled matrix via the closed formula (all degrees).
pub fn det3(kc: &KillingComponents) -> LambdaSeries {
    CharPoly::Det3.through(kc, u32::MAX)
}

/// σ₂ of the assembled matrix via the closed formula (all degrees).
pub fn sigma2(kc: &KillingComponents) -> LambdaSeries {
    CharPoly::Sigma2.through(kc, u32::MAX)
}

pub type Matrix3 = [[LambdaSeries; 3]; 3];

/// The 3×3 Killing matrix in the `sl(3,ℂ)` decomposition of the components.
pub fn assemble(kc: &KillingComponents) -> Matrix3 {
    use Component::*;
    let s = |c: Component| kc.series(c);
    let i = |n: i64| GaussianRational::imag_ratio(n, 1);
    let r = |n: i64| GaussianRational::from_int(n);
    let lc = |parts: &[(GaussianRational, Component)]| {
        let v: Vec<_> = parts.iter().map(|(c, x)| (c.clone(), s(*x))).collect();
        LambdaSeries::linear_combination(&v)
    };
    [
        [
            lc(&[(i(-2), A)]),
            lc(&[(r(1), B), (r(1), F), (r(1), G), (r(-1), S)]),
            lc(&[(i(1), B), (i(-1), F), (i(1), G), (i(1), S)]),
        ],
        [
            lc(&[(r(-1), B), (r(1), F), (r(1), G), (r(1), S)]),
            lc(&[(i(1), C), (i(1), A), (i(-1), T)]),
            lc(&[(r(-1), P), (r(1), C), (r(1), T)]),
        ],
        [
            lc(&[(i(-1), B), (i(-1), F), (i(1), G), (i(-1), S)]),
            lc(&[(r(1), P), (r(1), C), (r(1), T)]),
            lc(&[(i(-1), C), (i(1), A), (i(1), T)]),
        ],
    ]
}

/// Matrix oracles independent of the closed formulas.
pub mod cofactor {
    use super::*;

    pub fn trace(m: &Matrix3) -> LambdaSeries {
        m[0][0].add(&m[1][1]).add(&m[2][2])
    }

    fn minor2(m: &Matrix3, r: [usize; 2], c: [usize; 2], max: u32) -> LambdaSeries {
        m[r[0]][c[0]].mul_truncated(&m[r[1]][c[1]], max).sub(&m[r[0]][c[1]].mul_truncated(&m[r[1]][c[0]], max))
    }

    /// First-row cofactor expansion, truncated at `max`.
    pub fn det(m: &Matrix3, max: u32) -> LambdaSeries {
        let one = GaussianRational::from_int(1);
        let t0 = m[0][0].mul_truncated(&minor2(m, [1, 2], [1, 2], max), max);
        let t1 = m[0][1].mul_truncated(&minor2(m, [1, 2], [0, 2], max), max);
        let t2 = m[0][2].mul_truncated(&minor2(m, [1, 2], [0, 1], max), max);
        LambdaSeries::linear_combination(&[(one.clone(), &t0), (-one.clone(), &t1), (one, &t2)])
    }

    /// Sum of principal 2×2 minors, truncated at `max`.
    pub fn principal_minors(m: &Matrix3, max: u32) -> LambdaSeries {
        minor2(m, [0, 1], [0, 1], max).add(&minor2(m, [0, 2], [0, 2], max)).add(&minor2(m, [1, 2], [1, 2], max))
    }

    /// `m + μ·I` for a scalar μ.
    pub fn shift(m: &Matrix3, mu: &GaussianRational) -> Matrix3 {
        let mut out = m.clone();
        let mu_series = LambdaSeries::from_coeffs([(0, Poly::constant(mu.clone()))]);
        for (k, row) in out.iter_mut().enumerate() {
            row[k] = row[k].add(&mu_series);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Monomial;

    fn seed_p4() -> KillingComponents {
        let mut kc = KillingComponents::new(Ansatz::P4);
        kc.set(Component::S, 1, Poly::term(GaussianRational::imag_ratio(-3, 2), Monomial::new(1, -1, 0, &[]))).unwrap();
        kc.set(Component::T, 1, Poly::term(GaussianRational::imag_ratio(3, 2), Monomial::new(0, 2, 0, &[]))).unwrap();
        kc.set(Component::G, 0, Poly::zero()).unwrap();
        kc
    }

    #[test]
    fn residues() {
        assert_eq!(Ansatz::P4.residue(Component::G), 0);
        assert_eq!(Ansatz::A5.residue(Component::G), 4);
        assert_eq!(Ansatz::A5.residue(Component::S), 5);
        assert_eq!(Ansatz::A5.residue(Component::P), 0);
        let mut kc = KillingComponents::new(Ansatz::P4);
        assert!(kc.set(Component::P, 3, Poly::one()).is_err());
    }

    #[test]
    fn zero_components() {
        let kc = KillingComponents::new(Ansatz::P4);
        assert!(assemble(&kc).iter().flatten().all(LambdaSeries::is_zero));
        assert!(det3(&kc).is_zero());
        assert!(sigma2(&kc).is_zero());
    }

    #[test]
    fn only_a_is_diagonal() {
        let mut kc = KillingComponents::new(Ansatz::P4);
        kc.set(Component::A, 5, Poly::z(5)).unwrap();
        let m = assemble(&kc);
        let a = kc.series(Component::A).clone();
        assert_eq!(m[0][0], a.scale(&GaussianRational::imag_ratio(-2, 1)));
        assert_eq!(m[1][1], a.scale(&GaussianRational::i()));
        assert_eq!(m[2][2], a.scale(&GaussianRational::i()));
        for (r, row) in m.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if r != c {
                    assert!(e.is_zero());
                }
            }
        }
        let s2 = sigma2(&kc);
        assert_eq!(s2, LambdaSeries::from_coeffs([(10, (&Poly::z(5) * &Poly::z(5)).scale(&3.into()))]));
    }

    #[test]
    fn seed_determinant() {
        let kc = seed_p4();
        let d = det3(&kc);
        assert_eq!(lambda_coeff(&d, 3), Poly::gamma(2).scale(&GaussianRational::ratio(27, 2)));
        assert!(lambda_coeff(&d, 4).is_zero());
        assert_eq!(CharPoly::Det3.coeff(&kc, 3), lambda_coeff(&d, 3));
    }

    #[test]
    fn partials_match_hand_derivatives() {
        let kc = seed_p4();
        let s1 = kc.get(Component::S, 1).unwrap().clone();
        let t1 = kc.get(Component::T, 1).unwrap().clone();
        // ∂det/∂s at λ² = 8i·s¹t¹ ; ∂det/∂t at λ² = 4i·(s¹)²
        let want_s = (&s1 * &t1).scale(&GaussianRational::imag_ratio(8, 1));
        let want_t = (&s1 * &s1).scale(&GaussianRational::imag_ratio(4, 1));
        assert_eq!(CharPoly::Det3.partial_coeff(&kc, Component::S, 2), want_s);
        assert_eq!(CharPoly::Det3.partial_coeff(&kc, Component::T, 2), want_t);
        assert_eq!(CharPoly::Sigma2.partial_coeff(&kc, Component::B, 1), s1.scale(&(-4).into()));
    }

    #[test]
    fn cofactor_agrees_on_seed() {
        let kc = seed_p4();
        let m = assemble(&kc);
        assert!(cofactor::trace(&m).is_zero());
        assert_eq!(cofactor::det(&m, 20), det3(&kc));
        assert_eq!(cofactor::principal_minors(&m, 20), sigma2(&kc));
    }

    #[test]
    fn determined_bound_on_seed() {
        let kc = seed_p4();
        // g⁰ vanishes, so every product with an unknown factor sits at λ⁹ or above.
        assert_eq!(CharPoly::Det3.determined_below(&kc), 9);
    }
}

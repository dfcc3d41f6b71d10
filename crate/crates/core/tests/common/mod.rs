//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use fkf_core::ring::{parse_rational, BalancedMonomial, BalancedPoly, GaussianRational};
use fkf_core::{Ansatz, Component, Engine, KillingState};

#[derive(Clone, Debug)]
pub struct Golden {
    pub ansatz: Ansatz,
    pub component: Component,
    pub index: u32,
    pub value: BalancedPoly,
}

impl Golden {
    pub fn label(&self) -> String {
        format!("{}:{}{}", self.ansatz, self.component, self.index)
    }
}

/// Parses `c*z5^2*z4`, `z4` or `7/6` into a coefficient and z-exponents.
fn parse_term(t: &str) -> (GaussianRational, Vec<(u32, u32)>) {
    let mut c = GaussianRational::from_int(1);
    let mut z = Vec::new();
    for f in t.split('*') {
        if let Some(rest) = f.strip_prefix('z') {
            let (j, e) = rest.split_once('^').unwrap_or((rest, "1"));
            z.push((j.parse().unwrap(), e.parse().unwrap()));
        } else {
            c = GaussianRational::from_rational(parse_rational(f).unwrap());
        }
    }
    (c, z)
}

fn parse_body(body: &str, gamma: i32) -> Vec<(BalancedMonomial, GaussianRational)> {
    let mut out = Vec::new();
    let mut sign = 1;
    for tok in body.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t => {
                let (c, z) = parse_term(t);
                out.push((BalancedMonomial::new(gamma, 0, &z), &c * &GaussianRational::from_int(sign)));
            }
        }
    }
    out
}

pub fn parse_goldens(text: &str) -> Vec<Golden> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let (head, body) = line.split_once(':').expect("missing `:`");
            let f: Vec<&str> = head.split_whitespace().collect();
            let ansatz: Ansatz = f[0].parse().unwrap();
            let component: Component = f[1][..1].parse().unwrap();
            let index: u32 = f[1][1..].parse().unwrap();
            let lead: GaussianRational = f[2].parse().unwrap();
            let gamma: i32 = f[3].parse().unwrap();
            let k: i32 = f[4].parse().unwrap();
            let terms = parse_body(body, gamma).into_iter().map(|(m, c)| (m, &c * &lead));
            Golden { ansatz, component, index, value: BalancedPoly::new(k, terms) }
        })
        .collect()
}

pub fn goldens() -> Vec<Golden> {
    parse_goldens(include_str!("../data/goldens.txt"))
}

pub fn engine(cycles: u32) -> Engine {
    Engine::new(Engine::required_tower(cycles)).unwrap()
}

/// Three-cycle runs are shared across tests in one binary.
pub fn deep_state(ansatz: Ansatz) -> &'static (Engine, KillingState) {
    static P4: OnceLock<(Engine, KillingState)> = OnceLock::new();
    static A5: OnceLock<(Engine, KillingState)> = OnceLock::new();
    let cell = match ansatz {
        Ansatz::P4 => &P4,
        Ansatz::A5 => &A5,
    };
    cell.get_or_init(|| {
        let e = engine(3);
        let st = e.run(ansatz, 3).unwrap();
        (e, st)
    })
}

pub mod strategies {
    use fkf_core::loop_matrix::{Ansatz, Component, KillingComponents};
    use fkf_core::{GaussianRational, Monomial, Poly};
    use proptest::prelude::*;

    pub fn coeff() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
            .prop_map(|(a, b, c, d)| &GaussianRational::ratio(a, b) + &GaussianRational::imag_ratio(c, d))
    }

    pub fn monomial(with_hbar3: bool) -> impl Strategy<Value = Monomial> {
        let hb = if with_hbar3 { 0u32..=2 } else { 0u32..=0 };
        (-2i32..=2, -6i32..=6, hb, proptest::collection::vec((4u32..=7, 0u32..=2), 0..3))
            .prop_map(|(g, q, hb, h)| Monomial::new(g, q, hb, &h))
    }

    /// A small polynomial with up to four terms.
    pub fn poly(with_hbar3: bool) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((monomial(with_hbar3), coeff()), 0..4).prop_map(Poly::from_terms)
    }

    /// Balanced-homogeneous polynomial: every term has spectral weight `w`
    /// and prefactor `k`, built from `z₄, z₅, z₆` and `γ`.
    pub fn homogeneous(w: u32, k: i32) -> impl Strategy<Value = Poly> {
        let exps: Vec<(u32, u32, u32)> = (0..=w)
            .flat_map(|a| (0..=w / 2).flat_map(move |b| (0..=w / 3).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| a + 2 * b + 3 * c == w)
            .collect();
        proptest::collection::vec((proptest::sample::select(exps), -2i32..=2, coeff()), 1..4).prop_map(move |ts| {
            Poly::from_terms(ts.into_iter().map(|((a, b, c), g, co)| {
                let q = k - 4 * a as i32 - 5 * b as i32 - 6 * c as i32;
                (Monomial::new(g, q, 0, &[(4, a), (5, b), (6, c)]), co)
            }))
        })
    }

    /// Random component series, one or two on-residue degrees each.
    pub fn components() -> impl Strategy<Value = KillingComponents> {
        let series = proptest::collection::vec((0u32..2, poly(false)), 0..3);
        (any::<bool>(), proptest::collection::vec(series, 8)).prop_map(|(p4, all)| {
            let ansatz = if p4 { Ansatz::P4 } else { Ansatz::A5 };
            let mut kc = KillingComponents::new(ansatz);
            for (c, entries) in Component::ALL.into_iter().zip(all) {
                for (k, p) in entries {
                    kc.set(c, 6 * k + ansatz.residue(c), p).unwrap();
                }
            }
            kc
        })
    }
}

//! LaTeX rendering in display style: `prefactor \left( body \right)`.

use fkf_core::ring::{rational_to_string, to_balanced};
use fkf_core::{BalancedMonomial, BalancedPoly, GaussianRational, KillingState};
use num_traits::{One, Signed, Zero};

use crate::CliError;

type Rational = num_rational::BigRational;

fn frac(num: &str, den: &str) -> String {
    if den.is_empty() {
        num.to_string()
    } else {
        format!("\\frac{{{num}}}{{{den}}}")
    }
}

fn gamma_power(e: i32) -> String {
    match e {
        0 => String::new(),
        1 => "\\gamma".into(),
        e => format!("\\gamma^{{{e}}}"),
    }
}

/// `±\frac{n·[i]·γ^a}{d·γ^b}` with the sign split off.
fn scalar(r: &Rational, imaginary: bool, gamma: i32) -> (bool, String) {
    let neg = r.is_negative();
    let n = r.numer().abs().to_string();
    let d = r.denom().to_string();
    let i = if imaginary { "\\mathrm{i}" } else { "" };
    let mut num = if n == "1" && (imaginary || gamma > 0) { String::new() } else { n };
    num.push_str(i);
    if gamma > 0 {
        num.push_str(&gamma_power(gamma));
    }
    if num.is_empty() {
        num.push('1');
    }
    let mut den = if d == "1" { String::new() } else { d };
    if gamma < 0 {
        den.push_str(&gamma_power(-gamma));
    }
    (neg, frac(&num, &den))
}

fn coefficient(c: &GaussianRational, gamma: i32) -> (bool, String) {
    if c.im().is_zero() {
        scalar(c.re(), false, gamma)
    } else if c.re().is_zero() {
        scalar(c.im(), true, gamma)
    } else {
        let im_sign = if c.im().is_negative() { "-" } else { "+" };
        let body = format!(
            "\\left({} {im_sign} {}\\mathrm{{i}}\\right)",
            rational_to_string(c.re()),
            rational_to_string(&c.im().abs())
        );
        (false, format!("{body}{}", gamma_power(gamma)))
    }
}

fn monomial(m: &BalancedMonomial, with_gamma: bool) -> String {
    let mut parts = Vec::new();
    if with_gamma && m.gamma() != 0 {
        parts.push(gamma_power(m.gamma()));
    }
    if m.r2() > 0 {
        parts.push(if m.r2() == 1 { "r^2".into() } else { format!("r^{{{}}}", 2 * m.r2()) });
    }
    for &(j, e) in m.z().iter().rev() {
        parts.push(if e == 1 { format!("z_{{{j}}}") } else { format!("z_{{{j}}}^{{{e}}}") });
    }
    parts.join(" ")
}

/// Renders `h₃^{k/3}·body` with the leading coefficient factored out.
pub fn balanced(b: &BalancedPoly) -> String {
    let terms = b.display_terms();
    let Some(&(lead_m, lead_c)) = terms.first() else {
        return "0".into();
    };
    let common_gamma = terms.iter().all(|(m, _)| m.gamma() == lead_m.gamma());
    let g = if common_gamma { lead_m.gamma() } else { 0 };
    let inv = lead_c.checked_inv().expect("nonzero lead");
    let mut body = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let c = &inv * *c;
        let mono = monomial(m, !common_gamma);
        let (neg, mag) = match unit_sign(&c) {
            Some(neg) if !mono.is_empty() => (neg, String::new()),
            _ => coefficient(&c, 0),
        };
        let piece = [mag, mono].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ");
        let piece = if piece.is_empty() { "1".to_string() } else { piece };
        match (k, neg) {
            (0, false) => body.push_str(&piece),
            (0, true) => body.push_str(&format!("-{piece}")),
            (_, false) => body.push_str(&format!(" + {piece}")),
            (_, true) => body.push_str(&format!(" - {piece}")),
        }
    }
    let (neg, mut pre) = coefficient(lead_c, g);
    if pre == "1" {
        pre.clear();
    }
    if b.prefactor_thirds() != 0 {
        let k = b.prefactor_thirds();
        let h = format!("h_3^{{{}\\frac{{{}}}{{3}}}}", if k < 0 { "-" } else { "" }, k.abs());
        pre = if pre.is_empty() { h } else { format!("{pre} {h}") };
    }
    let sign = if neg { "-" } else { "" };
    match (pre.is_empty(), terms.len() == 1 && body == "1") {
        (true, _) => format!("{sign}{body}"),
        (false, true) => format!("{sign}{pre}"),
        (false, false) if terms.len() == 1 => format!("{sign}{pre} {body}"),
        (false, false) => format!("{sign}{pre} \\left( {body} \\right)"),
    }
}

/// `Some(false)` for `1`, `Some(true)` for `−1`.
fn unit_sign(c: &GaussianRational) -> Option<bool> {
    if !c.im().is_zero() {
        None
    } else if c.re().is_one() {
        Some(false)
    } else if (-c.re()).is_one() {
        Some(true)
    } else {
        None
    }
}

/// An `align*` block with one row per coefficient.
pub fn document(state: &KillingState) -> Result<String, CliError> {
    let mut out = String::from("\\begin{align*}\n");
    let rows = state.components().coefficients();
    let ansatz = state.ansatz();
    for (k, (comp, d, p)) in rows.iter().enumerate() {
        let b = to_balanced(p)?;
        let sep = if k + 1 == rows.len() { "" } else { " \\\\" };
        out.push_str(&format!("{comp}^{{{}}} &= {}{sep}\n", ansatz.superscript(*comp, *d), balanced(&b)));
    }
    out.push_str("\\end{align*}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fkf_core::{Ansatz, Component, Engine};

    fn render(ansatz: Ansatz, cycles: u32, c: Component, index: u32) -> String {
        let e = Engine::new(18).unwrap();
        let st = e.run(ansatz, cycles).unwrap();
        balanced(&to_balanced(st.coefficient(c, index).unwrap()).unwrap())
    }

    #[test]
    fn a5_has_no_prefactor() {
        assert_eq!(render(Ansatz::A5, 0, Component::A, 5), "z_{5} - \\frac{5}{3} z_{4}^{2}");
    }

    #[test]
    fn seeds_and_products() {
        assert_eq!(render(Ansatz::P4, 0, Component::S, 3), "-\\frac{3\\mathrm{i}\\gamma}{2} h_3^{-\\frac{1}{3}}");
        assert_eq!(
            render(Ansatz::P4, 1, Component::B, 5),
            "-\\frac{\\mathrm{i}}{3\\gamma} h_3^{\\frac{1}{3}} \\left( z_{5} - \\frac{5}{3} z_{4}^{2} \\right)"
        );
        assert!(render(Ansatz::P4, 1, Component::P, 10)
            .starts_with("\\frac{4}{27\\gamma^{4}} \\left( z_{10} - \\frac{43}{3} z_{9} z_{4}"));
    }
}

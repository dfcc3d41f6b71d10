//! JSON interchange format. Coefficients travel in balanced form with
//! rationals as strings.

use std::collections::BTreeMap;

use fkf_core::loop_matrix::KillingComponents;
use fkf_core::ring::{from_balanced, parse_rational, rational_to_string, to_balanced};
use fkf_core::verifier::prefactor_thirds;
use fkf_core::{Ansatz, BalancedMonomial, BalancedPoly, Component, GaussianRational, KillingState};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub ansatz: String,
    pub cycles: u32,
    pub coefficients: Vec<CoefficientRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub name: String,
    pub index: u32,
    pub lambda_degree: u32,
    pub prefactor_h3_thirds: i32,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub re: String,
    pub im: String,
    pub gamma: i32,
    /// `z`-index (as a string) or `"r2"` to exponent.
    pub monomial: BTreeMap<String, u32>,
}

fn term_record(m: &BalancedMonomial, c: &GaussianRational) -> TermRecord {
    let mut monomial: BTreeMap<String, u32> = m.z().iter().map(|&(j, e)| (j.to_string(), e)).collect();
    if m.r2() > 0 {
        monomial.insert("r2".into(), m.r2());
    }
    TermRecord { re: rational_to_string(c.re()), im: rational_to_string(c.im()), gamma: m.gamma(), monomial }
}

fn parse_term(t: &TermRecord) -> Result<(BalancedMonomial, GaussianRational), CliError> {
    let c = GaussianRational::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
    let mut r2 = 0;
    let mut z = Vec::new();
    for (k, &e) in &t.monomial {
        if k == "r2" {
            r2 = e;
        } else {
            let j: u32 = k.parse().map_err(|_| CliError::Input(format!("bad monomial key `{k}`")))?;
            if j < 4 {
                return Err(CliError::Input(format!("balanced variables start at z4, got z{j}")));
            }
            z.push((j, e));
        }
    }
    Ok((BalancedMonomial::new(t.gamma, r2, &z), c))
}

impl Document {
    pub fn from_state(state: &KillingState) -> Result<Self, CliError> {
        let ansatz = state.ansatz();
        let mut coefficients = Vec::new();
        for (comp, d, p) in state.components().coefficients() {
            let b = to_balanced(p)?;
            let k = if b.is_zero() { prefactor_thirds(comp) } else { b.prefactor_thirds() };
            coefficients.push(CoefficientRecord {
                name: comp.name().to_string(),
                index: ansatz.superscript(comp, d),
                lambda_degree: d,
                prefactor_h3_thirds: k,
                terms: b.display_terms().into_iter().map(|(m, c)| term_record(m, c)).collect(),
            });
        }
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            ansatz: ansatz.name().into(),
            cycles: state.cycles_done(),
            coefficients,
        })
    }

    pub fn to_state(&self) -> Result<KillingState, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema version {}", self.schema_version)));
        }
        let ansatz: Ansatz = self.ansatz.parse()?;
        let mut kc = KillingComponents::new(ansatz);
        for rec in &self.coefficients {
            let comp: Component = rec.name.parse()?;
            if ansatz.superscript(comp, rec.lambda_degree) != rec.index {
                return Err(CliError::Input(format!(
                    "{}{} does not sit at lambda^{}",
                    rec.name, rec.index, rec.lambda_degree
                )));
            }
            let terms = rec.terms.iter().map(parse_term).collect::<Result<Vec<_>, _>>()?;
            let body = BalancedPoly::new(rec.prefactor_h3_thirds, terms);
            kc.set(comp, rec.lambda_degree, from_balanced(&body))?;
        }
        Ok(KillingState::from_parts(kc, self.cycles))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fkf_core::Engine;

    #[test]
    fn round_trip_after_one_cycle() {
        let e = Engine::new(18).unwrap();
        for ansatz in [Ansatz::P4, Ansatz::A5] {
            let st = e.run(ansatz, 1).unwrap();
            let doc = Document::from_state(&st).unwrap();
            let back = Document::from_json(&doc.to_json()).unwrap().to_state().unwrap();
            assert_eq!(back, st);
        }
    }

    #[test]
    fn zero_coefficients_keep_table_prefactor() {
        let e = Engine::new(12).unwrap();
        let doc = Document::from_state(&e.seed(Ansatz::P4).unwrap()).unwrap();
        let g = doc.coefficients.iter().find(|c| c.name == "g").unwrap();
        assert_eq!((g.index, g.prefactor_h3_thirds, g.terms.len()), (2, 1, 0));
    }

    #[test]
    fn rejects_misplaced_degree() {
        let e = Engine::new(12).unwrap();
        let mut doc = Document::from_state(&e.seed(Ansatz::P4).unwrap()).unwrap();
        doc.coefficients[0].lambda_degree += 1;
        assert!(doc.to_state().is_err());
    }
}

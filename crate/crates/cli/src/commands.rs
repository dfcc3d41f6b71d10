use std::fs;
use std::io::{self, Write};

use fkf_core::ring::{rational_to_string, to_balanced};
use fkf_core::verifier::{chi, chi_epsilon_sum};
use fkf_core::{CheckKind, CheckReport, Engine, KillingState, Poly, Prolongation, TjMethod, Verifier};
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::args::{parse_checks, Cli, Command, GenerateArgs, TableKind, VerifyArgs};
use crate::document::Document;
use crate::{cache, latex, CliError, Format, RunConfig};

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Verify(a) => verify(&a),
        Command::Tables(k) => tables(&k),
    }
}

fn all_pass(engine: &Engine, st: &KillingState) -> bool {
    Verifier::new(engine.ring()).check_killing(st, &CheckKind::ALL).iter().all(CheckReport::passed)
}

/// Computes the state, or reuses a cached copy that still verifies.
pub fn obtain(cfg: &RunConfig) -> Result<(Engine, KillingState), CliError> {
    let engine = Engine::new(cfg.max_tower)?;
    if let Some(dir) = &cfg.cache_dir {
        if let Some(text) = cache::read(dir, cfg.ansatz, cfg.cycles) {
            let cached = Document::from_json(&text).and_then(|d| d.to_state());
            match cached {
                Ok(st) if st.ansatz() == cfg.ansatz && st.cycles_done() == cfg.cycles && all_pass(&engine, &st) => {
                    return Ok((engine, st));
                }
                _ => eprintln!("warning: discarding cache entry that failed re-verification"),
            }
        }
    }
    let st = engine.run(cfg.ansatz, cfg.cycles)?;
    if let Some(dir) = &cfg.cache_dir {
        cache::write_atomic(&cache::path(dir, cfg.ansatz, cfg.cycles), &Document::from_state(&st)?.to_json())?;
    }
    Ok((engine, st))
}

pub fn render(st: &KillingState, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(Document::from_state(st)?.to_json()),
        Format::Latex => latex::document(st),
        Format::Text => {
            let mut out = String::new();
            for (comp, d, p) in st.components().coefficients() {
                let b = to_balanced(p)?;
                out.push_str(&format!("{comp}^{} = {b}\n", st.ansatz().superscript(comp, d)));
            }
            Ok(out)
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(p) => cache::write_atomic(p, text),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn generate(a: &GenerateArgs) -> Result<(), CliError> {
    let cfg = a.run.config(a.format, Vec::new(), a.out.clone())?;
    let (_, st) = obtain(&cfg)?;
    emit(&render(&st, cfg.format)?, cfg.out_path.as_deref())
}

pub fn report_json(r: &CheckReport) -> String {
    json!({
        "check": r.kind.name(),
        "name": r.name,
        "status": if r.passed() { "pass" } else { "fail" },
        "scope": r.scope.to_string(),
        "witness": r.witness.as_ref().map(ToString::to_string),
    })
    .to_string()
}

fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let checks = parse_checks(&a.checks)?;
    let (engine, st) = match &a.input {
        Some(path) => {
            let st = Document::from_json(&fs::read_to_string(path)?)?.to_state()?;
            let tower = Engine::required_tower(st.cycles_done()).max(st.tower_high_water() + 2);
            (Engine::new(a.run.max_tower.unwrap_or(0).max(tower))?, st)
        }
        None => obtain(&a.run.config(Format::Json, checks.clone(), None)?)?,
    };
    let reports = Verifier::new(engine.ring()).check_killing(&st, &checks);
    let mut stdout = io::stdout().lock();
    for r in &reports {
        writeln!(stdout, "{}", report_json(r))?;
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    eprintln!("{} after {} cycle(s): {} checks, {} failed", st.ansatz(), st.cycles_done(), reports.len(), failed.len());
    for r in &failed {
        eprintln!(
            "  FAIL {} [{}]: {}",
            r.name,
            r.scope,
            r.witness.as_ref().map(ToString::to_string).unwrap_or_default()
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.len()))
    }
}

/// Unscaled polynomial with `q^k` shown as a power of `h3`.
pub fn unscaled(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let mut parts = Vec::new();
        if m.gamma() != 0 {
            parts.push(if m.gamma() == 1 { "g".to_string() } else { format!("g^{}", m.gamma()) });
        }
        match m.q() {
            0 => {}
            3 => parts.push("h3".into()),
            q if q % 3 == 0 => parts.push(format!("h3^{}", q / 3)),
            q => parts.push(format!("h3^({q}/3)")),
        }
        match m.hbar3() {
            0 => {}
            1 => parts.push("hb3".into()),
            e => parts.push(format!("hb3^{e}")),
        }
        for &(j, e) in m.h() {
            parts.push(if e == 1 { format!("h{j}") } else { format!("h{j}^{e}") });
        }
        let neg = c.im().is_zero() && c.re().is_negative() || c.re().is_zero() && c.im().is_negative();
        let mag = if neg { -c } else { c.clone() };
        let mag_s = mag.to_string();
        let mono = parts.join("*");
        let piece = match (mag_s.as_str(), mono.is_empty()) {
            (_, true) => mag_s,
            ("1", false) => mono,
            (_, false) => format!("{mag_s}*{mono}"),
        };
        out.push_str(match (k, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        out.push_str(&piece);
    }
    out
}

fn tables(kind: &TableKind) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    match *kind {
        TableKind::Tj { max } => {
            if max < 3 {
                return Err(CliError::Usage(format!("--max must be at least 3, got {max}")));
            }
            let ring = Prolongation::new(max.max(4))?;
            for j in 3..=max {
                let rec = ring.tj(j, TjMethod::Recursive)?;
                let closed = ring.tj(j, TjMethod::Closed)?;
                writeln!(stdout, "T_{j} = {}", unscaled(&rec))?;
                writeln!(stdout, "  recursive == closed: {}", rec == closed)?;
                if j >= 4 {
                    let hat = ring.tj_hat(j)?;
                    let w = hat.grading().weight.map(|w| w.to_string()).unwrap_or_else(|| "mixed".into());
                    writeln!(stdout, "  hat T_{j} = {hat}  (weight {w})")?;
                }
            }
        }
        TableKind::Chi { from, to } => {
            if from < 4 || to < from {
                return Err(CliError::Usage(format!("need 4 <= from <= to, got {from}..{to}")));
            }
            writeln!(stdout, "k\tchi_k\t|chi_k|\tepsilon_sum\tagree")?;
            for k in from..=to {
                let det = chi(k)?;
                let eps = chi_epsilon_sum(k)?;
                writeln!(
                    stdout,
                    "{k}\t{}\t{}\t{}\t{}",
                    rational_to_string(&det),
                    rational_to_string(&det.abs()),
                    rational_to_string(&eps),
                    det.abs() == eps.abs()
                )?;
            }
        }
    }
    Ok(())
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fkf_core::{Ansatz, CheckKind, Engine};

use crate::cache::CACHE_ENV;
use crate::{CliError, Format, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "fkf", version, about = "Canonical formal Killing fields of the minimal Lagrangian system")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a formal Killing field and serialize its coefficients.
    Generate(GenerateArgs),
    /// Run verification checks on a computed or saved field.
    Verify(VerifyArgs),
    /// Print T_j or chi_k tables.
    #[command(subcommand)]
    Tables(TableKind),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AnsatzArg {
    P4,
    A5,
}

impl From<AnsatzArg> for Ansatz {
    fn from(a: AnsatzArg) -> Self {
        match a {
            AnsatzArg::P4 => Ansatz::P4,
            AnsatzArg::A5 => Ansatz::A5,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "p4")]
    pub ansatz: AnsatzArg,
    /// Number of period-6 cycles after the seed.
    #[arg(long, default_value_t = 1)]
    pub cycles: u32,
    /// Highest prolongation index h_N (default 6*cycles + 12).
    #[arg(long)]
    pub max_tower: Option<u32>,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// `all` or a comma-separated subset of jacobi, charpoly, conservation, homogeneity, crosscheck.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub checks: Vec<String>,
    /// Verify a saved JSON document instead of computing one.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TableKind {
    /// T_j for 3 <= j <= max, by both methods.
    Tj {
        #[arg(long)]
        max: u32,
    },
    /// chi_k for from <= k <= to.
    Chi {
        #[arg(long, default_value_t = 4)]
        from: u32,
        #[arg(long, default_value_t = 30)]
        to: u32,
    },
}

pub fn parse_checks(list: &[String]) -> Result<Vec<CheckKind>, CliError> {
    if list.iter().any(|s| s == "all") {
        return Ok(CheckKind::ALL.to_vec());
    }
    let mut out: Vec<CheckKind> = list
        .iter()
        .map(|s| s.parse().map_err(|e: fkf_core::Error| CliError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

impl RunArgs {
    pub fn config(
        &self,
        format: Format,
        checks: Vec<CheckKind>,
        out_path: Option<PathBuf>,
    ) -> Result<RunConfig, CliError> {
        let cfg = RunConfig {
            ansatz: self.ansatz.into(),
            cycles: self.cycles,
            max_tower: self.max_tower.unwrap_or_else(|| Engine::required_tower(self.cycles)),
            format,
            checks,
            out_path,
            cache_dir: self.cache_dir.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

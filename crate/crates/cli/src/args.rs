//! Command-line arguments and the validated run configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use num_rational::BigRational;
use zerodist_core::family;
use zerodist_core::util::parse_rational;
use zerodist_core::FamilySpec;

use crate::custom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Coefficients of P_0..P_n.
    Gen,
    /// Scaled zeros of P_n.
    Zeros,
    /// Limit law sampled on a grid.
    Limit,
    /// Empirical zero distribution against the limit law.
    Compare,
    /// Series coefficients c_1..c_n of the Stieltjes transform.
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "zerodist", version, about = "Zero distributions of polynomial families and their limit laws")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Built-in family: jacobi, laguerre, hermite, bell, inverse_erf.
    #[arg(long)]
    pub family: Option<String>,
    /// Degree, or number of series coefficients for `series`.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Scaling exponent as p/q; suggested automatically when absent.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Decimal digits for root refinement.
    #[arg(long, default_value_t = 20)]
    pub precision: u32,
    /// Number of sample points for curves.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: PathBuf,
    /// Custom family definition (JSON).
    #[arg(long)]
    pub custom: Option<PathBuf>,
    /// Family parameter, e.g. `--param alpha=1/2`. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Half-width of the sampling window for laws with unbounded support.
    #[arg(long)]
    pub window: Option<f64>,
}

/// Where the family definition comes from.
#[derive(Clone, Debug)]
pub enum FamilySource {
    Builtin(FamilySpec),
    Custom(FamilySpec),
}

impl FamilySource {
    pub fn spec(&self) -> &FamilySpec {
        match self {
            FamilySource::Builtin(f) | FamilySource::Custom(f) => f,
        }
    }

    pub fn is_builtin(&self) -> bool {
        matches!(self, FamilySource::Builtin(_))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub family: FamilySource,
    pub n: usize,
    pub sigma: Option<BigRational>,
    pub precision: u32,
    pub grid: usize,
    pub out: PathBuf,
    pub format: Format,
    pub window: Option<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> anyhow::Result<Self> {
        if cli.n < 1 {
            bail!("--n must be at least 1");
        }
        if cli.precision < 16 {
            bail!("--precision must be at least 16");
        }
        if cli.grid < 2 {
            bail!("--grid must be at least 2");
        }
        if let Some(w) = cli.window {
            if !(w.is_finite() && w > 0.0) {
                bail!("--window must be positive");
            }
        }
        let family = match (&cli.family, &cli.custom) {
            (Some(_), Some(_)) => bail!("give either --family or --custom, not both"),
            (None, None) => bail!("one of --family or --custom is required"),
            (Some(name), None) => {
                let mut params = family::default_params(name);
                for kv in &cli.params {
                    let (k, v) = kv
                        .split_once('=')
                        .with_context(|| format!("--param {kv}: expected KEY=VALUE"))?;
                    let v = parse_rational(v.trim()).with_context(|| format!("--param {kv}"))?;
                    params.insert(k.trim().to_string(), v);
                }
                FamilySource::Builtin(family::builtin(name, &params)?)
            }
            (None, Some(path)) => {
                if !cli.params.is_empty() {
                    bail!("--param applies to built-in families; put custom parameters in the JSON file");
                }
                FamilySource::Custom(custom::load(path)?)
            }
        };
        let sigma = cli
            .sigma
            .as_deref()
            .map(|s| parse_rational(s).with_context(|| format!("--sigma {s}")))
            .transpose()?;
        Ok(RunConfig {
            command: cli.command,
            family,
            n: cli.n,
            sigma,
            precision: cli.precision,
            grid: cli.grid,
            out: cli.out,
            format: cli.format,
            window: cli.window,
        })
    }

    pub fn params(&self) -> &BTreeMap<String, BigRational> {
        &self.family.spec().params
    }
}

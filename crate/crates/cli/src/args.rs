use std::path::PathBuf;

use clap::{Args, ValueEnum};
use masa::{catalog_masa, parse_masa_json, MasaError, MasaParams, MasaSpec};
use numeric_core::{parse_rational, rat_to_f64, BigRational, ExecMode, Scalar};
use reduction::{ReductionError, DEFAULT_SEED};

pub const DEFAULT_LAMBDA2: &str = "1/4";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand; each command reads the ones it needs.
#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Catalog model (su2ab, lambda, cartan_od, nilpotent, degenerate_plus,
    /// degenerate_minus) or spectral model (s1, poschl_teller, chi,
    /// degenerate, morse).
    #[arg(long)]
    pub model: Option<String>,
    /// MASA description file (JSON).
    #[arg(long)]
    pub masa: Option<PathBuf>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// λ² as "p/q", or a scan range "start:stop:step".
    #[arg(long)]
    pub lambda2: Option<String>,
    #[arg(long)]
    pub k1: Option<String>,
    #[arg(long)]
    pub k2: Option<String>,
    #[arg(long)]
    pub k3: Option<String>,
    #[arg(long)]
    pub gminus: Option<String>,
    #[arg(long)]
    pub gplus: Option<String>,
    #[arg(long)]
    pub l1: Option<String>,
    #[arg(long)]
    pub l2: Option<String>,
    #[arg(long)]
    pub l3: Option<String>,
    /// Φ quantum number for the χ-equation.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long)]
    pub terms: Option<usize>,
    /// Grid size (Fourier modes or finite-difference intervals).
    #[arg(long = "N")]
    pub grid: Option<usize>,
    /// Number of lowest eigenvalues a reality claim is made on.
    #[arg(long = "K")]
    pub lowest_k: Option<usize>,
    #[arg(long = "tol-real")]
    pub tol_real: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the Jacobian residual suite.
    #[arg(long)]
    pub appendix: bool,
    /// Include the Racah structure report.
    #[arg(long)]
    pub racah: bool,
    /// Disable data-parallel evaluation.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Domain and input errors are configuration errors; everything else is a
/// failed check.
impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match &e {
            ReductionError::ParamOutOfRange(_) | ReductionError::Masa(_) => CliError::Config(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<MasaError> for CliError {
    fn from(e: MasaError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<spectral::SpectralError> for CliError {
    fn from(e: spectral::SpectralError) -> Self {
        use spectral::SpectralError as E;
        match e {
            E::ResidualTooLarge { .. } | E::NoDefiniteParity(_) | E::Numeric(_) => CliError::Failed(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn exact(flag: &str, v: &str) -> Result<BigRational, CliError> {
    parse_rational(v).map_err(|e| config(format!("--{flag}: {e}")))
}

/// Decimal text or "p/q".
pub fn float(flag: &str, v: &str) -> Result<f64, CliError> {
    if let Ok(x) = v.parse::<f64>() {
        if x.is_finite() {
            return Ok(x);
        }
    }
    exact(flag, v).map(|r| rat_to_f64(&r))
}

pub fn require<'a>(flag: &str, v: &'a Option<String>) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| config(format!("--{flag} is required")))
}

impl RunArgs {
    pub fn mode(&self) -> ExecMode {
        if self.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::default()
        }
    }

    pub fn masa_params(&self) -> Result<MasaParams, CliError> {
        let scalar = |flag: &str, v: &Option<String>| -> Result<Option<Scalar>, CliError> {
            v.as_deref().map(|s| exact(flag, s).map(Scalar::from_rational)).transpose()
        };
        Ok(MasaParams {
            a: scalar("a", &self.a)?,
            b: scalar("b", &self.b)?,
            lambda2: self.lambda2_text().map(|s| exact("lambda2", &s)).transpose()?,
        })
    }

    /// `--lambda2`, or 1/4 for the λ-model when it is omitted.
    pub fn lambda2_text(&self) -> Option<String> {
        match (&self.lambda2, self.model.as_deref()) {
            (Some(v), _) => Some(v.clone()),
            (None, Some("lambda")) => Some(DEFAULT_LAMBDA2.into()),
            _ => None,
        }
    }

    /// The exact couplings `k₁..k_n`, or `defaults` where none is given.
    pub fn exact_k(&self, n: usize) -> Result<Vec<BigRational>, CliError> {
        let flags = [("k1", &self.k1), ("k2", &self.k2), ("k3", &self.k3)];
        let defaults = if n == 2 { ["3/2", "-1/3", "0"] } else { ["1/2", "1/3", "-2/5"] };
        flags
            .iter()
            .zip(defaults)
            .take(n)
            .map(|((flag, v), d)| exact(flag, v.as_deref().unwrap_or(d)))
            .collect()
    }

    /// The MASA from `--masa` or a catalog `--model`, with its catalog name.
    pub fn load_masa(&self) -> Result<(MasaSpec, MasaParams), CliError> {
        let params = self.masa_params()?;
        match (&self.masa, &self.model) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
                Ok((parse_masa_json(&text)?, params))
            }
            (None, Some(model)) => Ok((catalog_masa(model, &params)?, params)),
            (Some(_), Some(_)) => Err(config("give either --masa or --model, not both")),
            (None, None) => Err(config("one of --masa or --model is required")),
        }
    }

    /// Parameters echoed into every report, in flag order.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        push("model", self.model.clone());
        push("masa", self.masa.as_ref().map(|p| p.display().to_string()));
        push("lambda2", self.lambda2_text());
        for (k, v) in [
            ("a", &self.a),
            ("b", &self.b),
            ("k1", &self.k1),
            ("k2", &self.k2),
            ("k3", &self.k3),
            ("gminus", &self.gminus),
            ("gplus", &self.gplus),
            ("l1", &self.l1),
            ("l2", &self.l2),
            ("l3", &self.l3),
            ("alpha", &self.alpha),
            ("z", &self.z),
        ] {
            push(k, v.clone());
        }
        push("m", self.m.map(|x| x.to_string()));
        push("q", self.q.map(|x| x.to_string()));
        push("terms", self.terms.map(|x| x.to_string()));
        out
    }
}

//! Run configuration: a flat TOML file merged with repeatable `--set
//! KEY=VALUE` overrides, resolved against defaults that reproduce the
//! reference regime (`x0 = p0 = 5`, `hbar = delta = 1`, equal complex
//! branch weights).

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use subplanck::states::{NormalizedState, StateParams};
use subplanck::wigner_analytic::{Plane, SectionSpec};

use crate::CliError;

/// `1/sqrt(2)`, the magnitude of each default branch weight.
const W: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Grid format of the `section` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// CSV table plus a JSON summary sidecar.
    Csv,
    /// Single JSON document embedding the sample arrays.
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Config(format!(
                "unknown output format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// The raw key set accepted from the config file and `--set`. Every key is
/// optional; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    x0: Option<f64>,
    p0: Option<f64>,
    delta: Option<f64>,
    hbar: Option<f64>,
    #[serde(alias = "A_re")]
    a_re: Option<f64>,
    #[serde(alias = "A_im")]
    a_im: Option<f64>,
    #[serde(alias = "B_re")]
    b_re: Option<f64>,
    #[serde(alias = "B_im")]
    b_im: Option<f64>,
    plane: Option<String>,
    fixed1: Option<f64>,
    fixed2: Option<f64>,
    min1: Option<f64>,
    max1: Option<f64>,
    min2: Option<f64>,
    max2: Option<f64>,
    n1: Option<usize>,
    n2: Option<usize>,
    half_width: Option<f64>,
    nodes: Option<usize>,
    out_dir: Option<String>,
    format: Option<String>,
}

/// Command-line overrides that take precedence over the file and `--set`.
#[derive(Debug, Default)]
pub struct Overrides {
    /// `--plane` (section, tile).
    pub plane: Option<String>,
    /// `--format` (section).
    pub format: Option<String>,
    /// `--out` (all commands).
    pub out: Option<PathBuf>,
}

/// Fully resolved and validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// The normalized state all commands evaluate.
    pub state: NormalizedState,
    /// Validated section sampling (plane, frozen values, ranges, counts).
    pub spec: SectionSpec,
    /// Truncation half-width for the oracle's correlation integral in the
    /// `validate` suite; `None` selects the parameter-derived default.
    pub half_width: Option<f64>,
    /// Quadrature nodes per axis for integral-based commands. Deliberately
    /// not range-checked here: resolution requirements depend on what each
    /// command evaluates, and the `validate` command must be able to run its
    /// suite against an under-resolved setting and report the failure.
    pub nodes: usize,
    /// Output directory for all written files.
    pub out_dir: PathBuf,
    /// Grid output format.
    pub format: OutputFormat,
}

/// Reads the optional config file into a TOML table.
fn load_table(path: Option<&Path>) -> Result<toml::Table, CliError> {
    let Some(path) = path else {
        return Ok(toml::Table::new());
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read config file {}: {e}", path.display()))
    })?;
    text.parse::<toml::Table>()
        .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))
}

/// Applies one `KEY=VALUE` override. The value is parsed as a TOML scalar
/// when possible (numbers, booleans) and falls back to a bare string, so
/// `--set plane=x1p2` works without quoting.
fn apply_set(table: &mut toml::Table, kv: &str) -> Result<(), CliError> {
    let Some((key, raw)) = kv.split_once('=') else {
        return Err(CliError::Config(format!("--set expects KEY=VALUE, got '{kv}'")));
    };
    let key = key.trim();
    if key.is_empty() {
        return Err(CliError::Config(format!("--set expects a non-empty key in '{kv}'")));
    }
    let raw = raw.trim();
    let value = match format!("v = {raw}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("parsed table contains the key just written"),
        Err(_) => toml::Value::String(raw.to_string()),
    };
    table.insert(key.to_string(), value);
    Ok(())
}

/// Loads, merges, and validates the configuration.
///
/// Precedence: defaults < config file < `--set` overrides < dedicated
/// flags. Every reported problem is a [`CliError::Config`].
pub fn resolve(
    config_path: Option<&Path>,
    sets: &[String],
    overrides: Overrides,
) -> Result<RunConfig, CliError> {
    let mut table = load_table(config_path)?;
    for kv in sets {
        apply_set(&mut table, kv)?;
    }
    let file: FileConfig = toml::Value::Table(table)
        .try_into()
        .map_err(|e| CliError::Config(format!("invalid config: {e}")))?;

    let params = StateParams::new(
        file.x0.unwrap_or(5.0),
        file.p0.unwrap_or(5.0),
        file.delta.unwrap_or(1.0),
        file.hbar.unwrap_or(1.0),
        Complex64::new(file.a_re.unwrap_or(W), file.a_im.unwrap_or(W)),
        Complex64::new(file.b_re.unwrap_or(W), file.b_im.unwrap_or(-W)),
    )
    .map_err(|e| CliError::Config(e.to_string()))?;
    let state = NormalizedState::new(params).map_err(|e| CliError::Config(e.to_string()))?;

    let plane_name = overrides
        .plane
        .or(file.plane)
        .unwrap_or_else(|| "x1p1".to_string());
    let plane: Plane = plane_name.parse().map_err(|e: subplanck::Error| {
        CliError::Config(e.to_string())
    })?;

    let range1 = (file.min1.unwrap_or(-7.5), file.max1.unwrap_or(7.5));
    let range2 = (file.min2.unwrap_or(-7.5), file.max2.unwrap_or(7.5));
    let spec = SectionSpec::new(
        plane,
        [file.fixed1.unwrap_or(0.0), file.fixed2.unwrap_or(0.0)],
        range1,
        range2,
        file.n1.unwrap_or(513),
        file.n2.unwrap_or(513),
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    if let Some(h) = file.half_width {
        if !h.is_finite() || h <= 0.0 {
            return Err(CliError::Config(format!(
                "half_width must be positive and finite, got {h}"
            )));
        }
    }

    let format: OutputFormat = overrides
        .format
        .or(file.format)
        .unwrap_or_else(|| "csv".to_string())
        .parse()?;

    let out_dir = overrides
        .out
        .or_else(|| file.out_dir.map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    Ok(RunConfig {
        state,
        spec,
        half_width: file.half_width,
        nodes: file.nodes.unwrap_or(768),
        out_dir,
        format,
    })
}

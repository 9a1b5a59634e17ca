//! Batch front door shared by the `su3` binary: verification runs and table emission.

use std::io;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::cg::{wcg_coefficients_with, CgConfig};
use crate::error::{Error, Result};
use crate::euler::{closed_rep, EulerAngles, FundamentalRep};
use crate::haar::{exact_volume, group_volume, QuadratureSpec};
use crate::irreps::{generate_irrep_with, GenerationConfig, IrrepLabel};
use crate::verify::{self, SuiteSelection, VerifyConfig};

/// Options common to every command.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub gauss_order: Option<usize>,
    pub mc_samples: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn verify_config(&self) -> VerifyConfig {
        let d = VerifyConfig::default();
        VerifyConfig {
            tol: self.tol,
            gauss_order: self.gauss_order.unwrap_or(d.gauss_order),
            mc_samples: self.mc_samples.unwrap_or(d.mc_samples),
            seed: self.seed,
        }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.verify_config().separable()
    }

    fn generation(&self) -> GenerationConfig {
        GenerationConfig { spec: self.quadrature(), ..GenerationConfig::default() }
    }
}

/// JSON formatter writing every float with 17 significant digits.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // Negative zero prints as zero.
        let value = if value == 0.0 { 0.0 } else { value };
        write!(writer, "{value:.16e}")
    }
}

/// Compact JSON with 17 significant digits per float, newline-terminated.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

/// Runs the selected suites; returns whether every check passed and the JSON report.
pub fn run_verify(selection: SuiteSelection, cfg: &RunConfig) -> Result<(bool, String)> {
    let report = verify::run(selection, &cfg.verify_config())?;
    Ok((report.passed, to_json(&report)?))
}

/// Either a fundamental representation or a general irrep label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepLabel {
    Fundamental(FundamentalRep),
    Irrep(IrrepLabel),
}

impl FromStr for RepLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3" => Ok(RepLabel::Fundamental(FundamentalRep::Three)),
            "3*" => Ok(RepLabel::Fundamental(FundamentalRep::ThreeStar)),
            _ => parse_label(s).map(RepLabel::Irrep),
        }
    }
}

/// `p,q`
pub fn parse_label(s: &str) -> Result<IrrepLabel> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [p, q] => {
            let p = p.parse().map_err(|_| Error::Config(format!("bad irrep label `{s}`")))?;
            let q = q.parse().map_err(|_| Error::Config(format!("bad irrep label `{s}`")))?;
            Ok(IrrepLabel::new(p, q))
        }
        _ => Err(Error::Config(format!("irrep label must be `p,q`, got `{s}`"))),
    }
}

/// Eight comma-separated radians in the order α, β, γ, θ, a, b, c, φ.
pub fn parse_angles(s: &str) -> Result<EulerAngles> {
    let values = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad angle `{x}`"))))
        .collect::<Result<Vec<f64>>>()?;
    let arr: [f64; 8] = values
        .try_into()
        .map_err(|v: Vec<f64>| Error::Config(format!("expected 8 angles, got {}", v.len())))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(Error::Config("angles must be finite".into()));
    }
    Ok(EulerAngles::from_array(arr))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Config(format!("unknown table format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmitRequest {
    DMatrix { rep: RepLabel, angles: EulerAngles },
    Irrep { label: IrrepLabel },
    Cg { factors: (IrrepLabel, IrrepLabel), target: IrrepLabel, multiplicity: usize, format: TableFormat },
    Volume,
}

#[derive(Serialize)]
struct DMatrixOut {
    rep: String,
    angles: [f64; 8],
    /// rows of [re, im]
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct TermOut {
    symbols: Vec<String>,
    coeff: [f64; 2],
}

#[derive(Serialize)]
struct StateOut {
    t: f64,
    t3: f64,
    y: f64,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct VolumeOut {
    v0: f64,
    closed_form: f64,
    gauss_order: usize,
}

/// Produces the requested table as text.
pub fn emit(req: &EmitRequest, cfg: &RunConfig) -> Result<String> {
    match req {
        EmitRequest::DMatrix { rep, angles } => {
            let (name, matrix) = match rep {
                RepLabel::Fundamental(r) => {
                    let m = closed_rep(angles, *r);
                    let rows = (0..3).map(|i| (0..3).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect()).collect();
                    (r.name().to_string(), rows)
                }
                RepLabel::Irrep(label) => {
                    let irrep = generate_irrep_with(*label, &cfg.generation())?;
                    let full = irrep.full_matrix()?;
                    let rows = full
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|s| {
                                    let z = s.eval(angles);
                                    [z.re, z.im]
                                })
                                .collect()
                        })
                        .collect();
                    (label.to_string(), rows)
                }
            };
            to_json(&DMatrixOut { rep: name, angles: angles.to_array(), matrix })
        }
        EmitRequest::Irrep { label } => {
            let irrep = generate_irrep_with(*label, &cfg.generation())?;
            let states: Vec<StateOut> = irrep
                .states
                .iter()
                .map(|s| StateOut {
                    t: s.weight.t(),
                    t3: s.weight.t3(),
                    y: s.weight.y(),
                    terms: s
                        .state
                        .terms()
                        .map(|(m, c)| TermOut {
                            symbols: m.iter().map(|&i| crate::poly::FundamentalSymbol::from_index(i).to_string()).collect(),
                            coeff: [c.re, c.im],
                        })
                        .collect(),
                })
                .collect();
            to_json(&states)
        }
        EmitRequest::Cg { factors, target, multiplicity, format } => {
            let cg_cfg = CgConfig { generation: cfg.generation(), ..CgConfig::default() };
            let table = wcg_coefficients_with(factors.0, factors.1, *target, *multiplicity, &cg_cfg)?;
            match format {
                TableFormat::Csv => Ok(table.to_csv()),
                TableFormat::Json => to_json(&table),
            }
        }
        EmitRequest::Volume => {
            let spec = cfg.quadrature();
            to_json(&VolumeOut { v0: group_volume(&spec)?, closed_form: exact_volume(), gauss_order: spec.gauss_order })
        }
    }
}

/// Writes `body` to the configured path, or stdout when none is set.
pub fn write_output(body: &str, cfg: &RunConfig) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

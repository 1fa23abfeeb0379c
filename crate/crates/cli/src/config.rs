use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use dwf_core::finite_field::{dual_basis, parse_poly};
use dwf_core::{CoordinateBasis, FieldSpec, PhaseSpace, QuantumNet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Number of qubits (taken from the input file when omitted)
    #[arg(short = 'n', long = "qubits", global = true)]
    pub n: Option<u32>,

    /// Reduction polynomial, e.g. 0b111 or 0x11b
    #[arg(long, global = true)]
    pub poly: Option<String>,

    /// Quantum net: one offset per striation, e.g. 0,1,0,3,2
    #[arg(long, global = true)]
    pub net: Option<String>,

    /// Horizontal basis as comma-separated field elements (bit patterns)
    #[arg(long, global = true)]
    pub hbasis: Option<String>,

    /// Vertical basis: "dual", "same" or a comma-separated element list
    #[arg(long, global = true, default_value = "dual")]
    pub vbasis: String,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Shots per measured basis (tomo)
    #[arg(long, global = true, default_value_t = 100_000)]
    pub shots: u64,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Output file, written atomically (stdout when omitted)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_elements(spec: &FieldSpec, list: &str) -> anyhow::Result<CoordinateBasis> {
    let bits = list
        .split(',')
        .map(|t| parse_poly(t.trim()).with_context(|| format!("bad field element {t:?}")))
        .collect::<anyhow::Result<Vec<u32>>>()?;
    Ok(CoordinateBasis::from_bits(spec, &bits)?)
}

impl RunConfig {
    /// `n` from the flag, checked against `from_input` when both are present.
    pub fn qubits(&self, from_input: Option<u32>) -> anyhow::Result<u32> {
        match (self.n, from_input) {
            (Some(a), Some(b)) if a != b => bail!("--qubits {a} does not match the input's n = {b}"),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => bail!("--qubits is required"),
        }
    }

    pub fn field(&self, n: u32) -> anyhow::Result<FieldSpec> {
        Ok(match &self.poly {
            Some(p) => FieldSpec::new(n, parse_poly(p)?)?,
            None => FieldSpec::with_default_poly(n)?,
        })
    }

    pub fn space(&self, n: u32) -> anyhow::Result<PhaseSpace> {
        let field = self.field(n)?;
        let horizontal = match &self.hbasis {
            Some(list) => parse_elements(&field, list)?,
            None => field.polynomial_basis(),
        };
        let vertical = match self.vbasis.as_str() {
            "dual" => dual_basis(&field, &horizontal),
            "same" => horizontal.clone(),
            list => parse_elements(&field, list)?,
        };
        Ok(PhaseSpace::with_bases(field, horizontal, vertical))
    }

    pub fn net(&self, space: &PhaseSpace) -> anyhow::Result<QuantumNet> {
        match &self.net {
            None => Ok(QuantumNet::zero(space.dim())),
            Some(s) => {
                let net: QuantumNet = s.parse()?;
                if net.dim() != space.dim() {
                    bail!("--net has {} offsets; {} qubits need {}", net.offsets().len(), space.qubits(), space.dim() + 1);
                }
                Ok(net)
            }
        }
    }
}

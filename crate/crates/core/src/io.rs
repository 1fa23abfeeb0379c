//! JSON and CSV file formats.
//!
//! * state: `{"n", "re": [[..]], "im": [[..]]}` (density matrix) or
//!   `{"n", "re": [..], "im": [..]}` (pure state, promoted to `|psi><psi|`)
//! * DWF: `{"n", "order": "q-major-p-fast", "values": [..]}`, or CSV rows `q,p,value`
//! * matrix dump: `{"scale": 1/N, "core": [[..]]}` with an integer core
//! * MUBs: `[{"striation", "re", "im"}]`, one unitary per basis, vectors as columns

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::mub::MubCollection;
use crate::phase_space::PhaseSpace;
use crate::wigner::{DensityMatrix, DwfVector};

pub const DWF_ORDER: &str = "q-major-p-fast";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Density { n: u32, re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
    Pure { n: u32, re: Vec<f64>, im: Vec<f64> },
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix<f64>) -> Self {
        let m = rho.matrix();
        StateFile::Density { n: rho.qubits(), re: m.re_rows(), im: m.im_rows() }
    }

    pub fn from_pure(psi: &[Complex<f64>]) -> Self {
        StateFile::Pure {
            n: psi.len().trailing_zeros(),
            re: psi.iter().map(|z| z.re).collect(),
            im: psi.iter().map(|z| z.im).collect(),
        }
    }

    pub fn qubits(&self) -> u32 {
        match self {
            StateFile::Density { n, .. } | StateFile::Pure { n, .. } => *n,
        }
    }

    /// Validates shapes and builds the density matrix (Hermitian, unit trace).
    pub fn into_density(self) -> Result<DensityMatrix<f64>> {
        let n = self.qubits();
        if n == 0 || n > 8 {
            return Err(Error::UnsupportedQubits(n));
        }
        let dim = 1usize << n;
        let rho = match self {
            StateFile::Density { re, im, .. } => {
                if re.len() != dim || im.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: re.len().max(im.len()) });
                }
                let m = CMatrix::from_parts(&re, &im)
                    .ok_or_else(|| Error::Format("re/im must be square matrices of equal shape".into()))?;
                DensityMatrix::new(m)?
            }
            StateFile::Pure { re, im, .. } => {
                if re.len() != dim || im.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: re.len().max(im.len()) });
                }
                let psi: Vec<Complex<f64>> = re.iter().zip(&im).map(|(a, b)| Complex::new(*a, *b)).collect();
                DensityMatrix::from_pure(&psi)?
            }
        };
        rho.warn_if_not_psd();
        Ok(rho)
    }
}

pub fn read_state(text: &str) -> Result<DensityMatrix<f64>> {
    serde_json::from_str::<StateFile>(text)?.into_density()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DwfFile {
    pub n: u32,
    pub order: String,
    pub values: Vec<f64>,
}

impl DwfFile {
    pub fn new(w: &DwfVector<f64>) -> Self {
        DwfFile { n: w.qubits(), order: DWF_ORDER.to_string(), values: w.values().to_vec() }
    }

    pub fn into_dwf(self) -> Result<DwfVector<f64>> {
        if self.order != DWF_ORDER {
            return Err(Error::Format(format!("unsupported DWF order {:?}", self.order)));
        }
        if self.n == 0 || self.n > 8 {
            return Err(Error::UnsupportedQubits(self.n));
        }
        DwfVector::new(self.n, self.values)
    }
}

pub fn read_dwf(text: &str) -> Result<DwfVector<f64>> {
    serde_json::from_str::<DwfFile>(text)?.into_dwf()
}

/// Either input kind accepted by commands that work on a DWF.
#[derive(Debug, Clone, PartialEq)]
pub enum DwfOrState {
    Dwf(DwfVector<f64>),
    State(DensityMatrix<f64>),
}

pub fn read_dwf_or_state(text: &str) -> Result<DwfOrState> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("values").is_some() {
        Ok(DwfOrState::Dwf(serde_json::from_value::<DwfFile>(value)?.into_dwf()?))
    } else {
        Ok(DwfOrState::State(serde_json::from_value::<StateFile>(value)?.into_density()?))
    }
}

/// One `q,p,value` row per point; `q` and `p` are the field elements' bit patterns.
pub fn dwf_csv(w: &DwfVector<f64>, space: &PhaseSpace) -> String {
    let mut out = String::from("q,p,value\n");
    for (i, a) in space.points().enumerate() {
        out.push_str(&format!("{},{},{:e}\n", a.q.bits(), a.p.bits(), w[i]));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub scale: f64,
    pub core: Vec<Vec<i64>>,
}

impl MatrixDump {
    pub fn to_csv(&self) -> String {
        let mut out = format!("# scale {}\n", self.scale);
        for row in &self.core {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub striation: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl BasisFile {
    pub fn matrix(&self) -> Result<CMatrix<f64>> {
        CMatrix::from_parts(&self.re, &self.im).ok_or_else(|| Error::Format(format!("basis {} is not square", self.striation)))
    }

    /// `|v><v|` for every column `v`.
    pub fn projectors(&self) -> Result<Vec<CMatrix<f64>>> {
        let m = self.matrix()?;
        Ok((0..m.dim()).map(|j| CMatrix::outer(&m.column(j))).collect())
    }
}

pub fn mubs_to_files(m: &MubCollection<f64>) -> Vec<BasisFile> {
    m.bases()
        .iter()
        .map(|b| {
            let u = b.matrix();
            BasisFile { striation: b.striation(), re: u.re_rows(), im: u.im_rows() }
        })
        .collect()
}

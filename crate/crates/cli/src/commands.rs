use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use dwf_core::entanglement::{concurrence, concurrence_from_dwf, ConcurrenceResult};
use dwf_core::io::{self, DwfFile, DwfOrState, MatrixDump};
use dwf_core::mub::build_mubs;
use dwf_core::spinflip::{build_h, build_s, build_sigma_y_t};
use dwf_core::tomography::simulate_tomography;
use dwf_core::verify::{self, VerifyOptions};
use dwf_core::wigner::{dwf, phase_point_operators, DwfVector};
use dwf_core::{PhasePointSetF64, PhaseSpace};
use serde::Serialize;

use crate::config::{Format, RunConfig};

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

pub fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn emit(cfg: &RunConfig, content: String) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => write_atomic(path, &content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Phase space, net and phase-point operators for `n` qubits.
fn setup(cfg: &RunConfig, n: u32) -> anyhow::Result<(PhaseSpace, PhasePointSetF64)> {
    let space = cfg.space(n)?;
    let net = cfg.net(&space)?;
    let mubs = build_mubs(&space)?;
    let ops = phase_point_operators(&net, &mubs)?;
    Ok((space, ops))
}

fn format_dwf(cfg: &RunConfig, w: &DwfVector<f64>, space: &PhaseSpace) -> anyhow::Result<String> {
    match cfg.format {
        Format::Json => json(&DwfFile::new(w)),
        Format::Csv => Ok(io::dwf_csv(w, space)),
    }
}

fn format_dump(cfg: &RunConfig, dump: &MatrixDump) -> anyhow::Result<String> {
    match cfg.format {
        Format::Json => json(dump),
        Format::Csv => Ok(dump.to_csv()),
    }
}

pub fn cmd_mubs(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = cfg.qubits(None)?;
    let mubs = build_mubs::<f64>(&cfg.space(n)?)?;
    let files = io::mubs_to_files(&mubs);
    let text = match cfg.format {
        Format::Json => json(&files)?,
        Format::Csv => {
            let mut out = String::from("striation,vector,component,re,im\n");
            for b in &files {
                for (i, (re_row, im_row)) in b.re.iter().zip(&b.im).enumerate() {
                    for (j, (re, im)) in re_row.iter().zip(im_row).enumerate() {
                        out.push_str(&format!("{},{j},{i},{re:e},{im:e}\n", b.striation));
                    }
                }
            }
            out
        }
    };
    emit(cfg, text)?;
    Ok(Outcome::Success)
}

pub fn cmd_dwf(cfg: &RunConfig, state: &Path) -> anyhow::Result<Outcome> {
    let rho = io::read_state(&read(state)?)?;
    let (space, ops) = setup(cfg, cfg.qubits(Some(rho.qubits()))?)?;
    emit(cfg, format_dwf(cfg, &dwf(&rho, &ops)?, &space)?)?;
    Ok(Outcome::Success)
}

#[derive(Debug, Clone, Args)]
pub struct SpinflipArgs {
    /// DWF or state file
    pub input: PathBuf,
    /// Write the conjugation matrix S to this file
    #[arg(long)]
    pub dump_s: Option<PathBuf>,
    /// Write the translation permutation T to this file
    #[arg(long)]
    pub dump_t: Option<PathBuf>,
    /// Write H = T S to this file
    #[arg(long)]
    pub dump_h: Option<PathBuf>,
}

fn input_dwf(cfg: &RunConfig, path: &Path) -> anyhow::Result<(PhaseSpace, PhasePointSetF64, DwfVector<f64>)> {
    let input = io::read_dwf_or_state(&read(path)?)?;
    let n = match &input {
        DwfOrState::Dwf(w) => w.qubits(),
        DwfOrState::State(rho) => rho.qubits(),
    };
    let (space, ops) = setup(cfg, cfg.qubits(Some(n))?)?;
    let w = match input {
        DwfOrState::Dwf(w) => w,
        DwfOrState::State(rho) => dwf(&rho, &ops)?,
    };
    Ok((space, ops, w))
}

pub fn cmd_spinflip(cfg: &RunConfig, args: &SpinflipArgs) -> anyhow::Result<Outcome> {
    let (space, ops, w) = input_dwf(cfg, &args.input)?;
    let s = build_s(&ops)?;
    let t = build_sigma_y_t(&space);
    let h = build_h(&t, &s)?;
    let scale = 1.0 / space.dim() as f64;
    if let Some(p) = &args.dump_s {
        write_atomic(p, &format_dump(cfg, &MatrixDump { scale, core: s.core() })?)?;
    }
    if let Some(p) = &args.dump_t {
        write_atomic(p, &format_dump(cfg, &MatrixDump { scale: 1.0, core: t.core() })?)?;
    }
    if let Some(p) = &args.dump_h {
        write_atomic(p, &format_dump(cfg, &MatrixDump { scale, core: h.core() })?)?;
    }
    emit(cfg, format_dwf(cfg, &h.apply(&w)?, &space)?)?;
    Ok(Outcome::Success)
}

pub fn cmd_concurrence(cfg: &RunConfig, input: &Path) -> anyhow::Result<Outcome> {
    let result: ConcurrenceResult = match io::read_dwf_or_state(&read(input)?)? {
        DwfOrState::State(rho) => {
            cfg.qubits(Some(rho.qubits()))?;
            concurrence(&rho)?
        }
        DwfOrState::Dwf(w) => {
            let (space, ops) = setup(cfg, cfg.qubits(Some(w.qubits()))?)?;
            let h = build_h(&build_sigma_y_t(&space), &build_s(&ops)?)?;
            concurrence_from_dwf(&w, &h, &ops)?
        }
    };
    let text = match cfg.format {
        Format::Json => json(&result)?,
        Format::Csv => {
            let lambdas: Vec<String> = result.lambdas.iter().map(|l| format!("{l:e}")).collect();
            format!("concurrence,{:e}\nlambdas,{}\n", result.concurrence, lambdas.join(","))
        }
    };
    emit(cfg, text)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct TomoCount {
    striation: usize,
    index: usize,
    count: u64,
}

#[derive(Serialize)]
struct TomoReport {
    n: u32,
    shots: u64,
    seed: u64,
    max_error: f64,
    estimate: DwfFile,
    exact: DwfFile,
    counts: Vec<TomoCount>,
}

pub fn cmd_tomo(cfg: &RunConfig, state: &Path) -> anyhow::Result<Outcome> {
    let rho = io::read_state(&read(state)?)?;
    let (space, ops) = setup(cfg, cfg.qubits(Some(rho.qubits()))?)?;
    let exact = dwf(&rho, &ops)?;
    let est = simulate_tomography(&rho, &ops, cfg.shots, cfg.seed)?;
    let text = match cfg.format {
        Format::Json => json(&TomoReport {
            n: space.qubits(),
            shots: est.shots,
            seed: cfg.seed,
            max_error: est.max_error(&exact),
            estimate: DwfFile::new(&est.estimate),
            exact: DwfFile::new(&exact),
            counts: est
                .counts
                .iter()
                .map(|(l, c)| TomoCount { striation: l.striation, index: l.index, count: *c })
                .collect(),
        })?,
        Format::Csv => {
            let mut out = String::from("q,p,estimate,exact\n");
            for (i, a) in space.points().enumerate() {
                out.push_str(&format!("{},{},{:e},{:e}\n", a.q.bits(), a.p.bits(), est.estimate[i], exact[i]));
            }
            out
        }
    };
    emit(cfg, text)?;
    Ok(Outcome::Success)
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Random states per state-based check
    #[arg(long, default_value_t = 20)]
    pub states: usize,
    /// Random nets sampled when enumerating all of them is too costly
    #[arg(long, default_value_t = 50)]
    pub nets: usize,
    /// Add this to an off-diagonal entry of one MUB projector before checking
    #[arg(long, hide = true)]
    pub perturb: Option<f64>,
}

pub fn cmd_verify(cfg: &RunConfig, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let n = cfg.qubits(None)?;
    let space = cfg.space(n)?;
    let net = cfg.net(&space)?;
    let opts = VerifyOptions { net_samples: args.nets, states: args.states, seed: cfg.seed, tol: cfg.tol, perturb: args.perturb };
    let report = verify::run(&space, &net, &opts)?;
    let text = match cfg.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &report.checks {
                out.push_str(&format!("{:?},{},{:?}\n", c.name, c.passed, c.detail));
            }
            out
        }
    };
    emit(cfg, text)?;
    for c in &report.checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    for (k, v) in &report.observations {
        eprintln!("info {k}: {v}");
    }
    Ok(if report.passed() { Outcome::Success } else { Outcome::VerificationFailed })
}

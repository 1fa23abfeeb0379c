//! The invariant suite behind `dwf verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::mub::{build_mubs, check_conjugation_structure, MubCollection};
use crate::phase_space::{LineId, PhaseSpace, QuantumNet};
use crate::sampling::random_density;
use crate::spinflip::{build_h, build_s, build_sigma_y_t, net_independence_check};
use crate::wigner::{density_from_dwf, dwf, line_probabilities, line_sum, phase_point_operators, DensityMatrix};

/// Nets are enumerated exhaustively up to this many, sampled beyond.
pub const EXHAUSTIVE_NET_LIMIT: u64 = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Random nets drawn when the full set is too large.
    pub net_samples: usize,
    /// Random states per state-based check.
    pub states: usize,
    pub seed: u64,
    pub tol: f64,
    /// Amount added to an off-diagonal entry of one projector of the last striation.
    pub perturb: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { net_samples: 50, states: 20, seed: 0, tol: 1e-10, perturb: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub qubits: u32,
    pub checks: Vec<Check>,
    /// Observations that are reported without a pass/fail verdict.
    pub observations: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn max_dev(&mut self, name: &str, result: Result<f64>, tol: f64) {
        let check = match result {
            Ok(dev) => Check { name: name.into(), passed: dev < tol, detail: format!("max deviation {dev:.3e} (tol {tol:e})") },
            Err(e) => Check { name: name.into(), passed: false, detail: e.to_string() },
        };
        self.checks.push(check);
    }

    fn flag(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

/// Nets used for the independence check: all of them when there are at most
/// [`EXHAUSTIVE_NET_LIMIT`], otherwise `samples` random ones after the zero net.
pub fn nets_for_check(dim: usize, samples: usize, rng: &mut impl Rng) -> Vec<QuantumNet> {
    match QuantumNet::count(dim) {
        Some(total) if total <= EXHAUSTIVE_NET_LIMIT => (0..total).map(|c| QuantumNet::from_code(c, dim)).collect(),
        _ => {
            let mut nets = vec![QuantumNet::zero(dim)];
            for _ in 0..samples.max(1) {
                let offsets = (0..=dim).map(|_| rng.random_range(0..dim)).collect();
                nets.push(QuantumNet::new(offsets, dim).expect("offsets in range"));
            }
            nets
        }
    }
}

pub fn run(space: &PhaseSpace, net: &QuantumNet, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = space.qubits();
    let big_n = space.dim();
    let tol = opts.tol;
    let mut report = VerifyReport { qubits: n, checks: Vec::new(), observations: Vec::new() };

    let mut mubs: MubCollection<f64> = build_mubs(space)?;
    if let Some(eps) = opts.perturb {
        mubs = mubs.perturbed(LineId::new(big_n, 0), eps);
    }
    report.max_dev("mub overlap law", mubs.check_mub_law(f64::INFINITY), tol);
    report.max_dev("conjugation structure", check_conjugation_structure(&mubs, f64::INFINITY).map(|r| r.max_deviation), tol);

    let nets = nets_for_check(big_n, opts.net_samples, &mut rng);
    report.max_dev(
        &format!("net independence of S and H ({} nets)", nets.len()),
        net_independence_check(&mubs, &nets).map(|r| r.max_deviation_s.max(r.max_deviation_h)),
        tol,
    );

    let ops = match phase_point_operators(net, &mubs) {
        Ok(ops) => ops,
        Err(e) => {
            report.flag("phase-point operators", false, e.to_string());
            return Ok(report);
        }
    };
    let s = match build_s(&ops) {
        Ok(s) => s,
        Err(e) => {
            report.flag("S entries are +-1/N", false, e.to_string());
            return Ok(report);
        }
    };
    let t = build_sigma_y_t(space);
    let h = build_h(&t, &s)?;

    let rs = s.report();
    report.max_dev("S entries are +-1/N", Ok(rs.entry_deviation), tol);
    report.max_dev("S rows orthogonal", Ok(rs.orthogonality_error), tol);
    report.max_dev("S self-inverse", Ok(rs.involution_error), tol);
    let expected_det = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    report.flag(
        "det S = (-1)^n",
        (rs.determinant - expected_det).abs() < 1e-6,
        format!("det S = {:.6}, expected {expected_det}", rs.determinant),
    );
    let rh = h.report();
    report.max_dev("H entries are +-1/N", Ok(rh.entry_deviation), tol);
    report.max_dev("H rows orthogonal", Ok(rh.orthogonality_error), tol);
    let ts = &t.matrix::<f64>() * s.matrix();
    report.max_dev("H = T S", Ok(ts.max_abs_diff(h.matrix())), tol);
    report.observations.push(("H involution error".into(), format!("{:.3e}", rh.involution_error)));
    report.observations.push(("sigma_y shift".into(), t.beta().to_string()));

    let states: Vec<DensityMatrix<f64>> = (0..opts.states).map(|_| random_density(n, &mut rng)).collect();
    let max_over = |f: &dyn Fn(&DensityMatrix<f64>) -> Result<f64>| -> Result<f64> {
        states.iter().try_fold(0.0f64, |acc, rho| Ok(acc.max(f(rho)?)))
    };

    report.max_dev(
        "round trip rho -> W -> rho",
        max_over(&|rho| Ok(density_from_dwf(&dwf(rho, &ops)?, &ops)?.max_abs_diff(rho))),
        tol,
    );
    report.max_dev(
        "spin flip H W matches flipped state",
        max_over(&|rho| {
            let back = density_from_dwf(&h.apply(&dwf(rho, &ops)?)?, &ops)?;
            Ok(back.max_abs_diff(&crate::entanglement::spin_flip_density(rho)))
        }),
        tol,
    );
    report.max_dev(
        "line sums equal line probabilities",
        max_over(&|rho| {
            let w = dwf(rho, &ops)?;
            let probs = line_probabilities(rho, &ops)?;
            Ok(space.lines().map(|l| (line_sum(&w, space, l) - probs[&l]).abs()).fold(0.0, f64::max))
        }),
        tol,
    );
    let shifts: Vec<_> = if big_n <= 4 {
        space.points().collect()
    } else {
        (0..20).map(|_| space.point(rng.random_range(0..space.num_points()))).collect()
    };
    let rho = &states.first().cloned().unwrap_or_else(|| DensityMatrix::maximally_mixed(big_n));
    let w = dwf(rho, &ops)?;
    let covariance = shifts.iter().try_fold(0.0f64, |acc, &beta| -> Result<f64> {
        let u = space.translation_unitary::<f64>(beta);
        let shifted = dwf(&DensityMatrix::new_unchecked(rho.matrix().conjugate_by(&u)), &ops)?;
        let dev = space
            .points()
            .map(|a| (shifted[space.point_index(a)] - w[space.point_index(space.add(a, beta))]).abs())
            .fold(0.0, f64::max);
        Ok(acc.max(dev))
    });
    report.max_dev(&format!("translation covariance ({} shifts)", shifts.len()), covariance, tol);
    Ok(report)
}

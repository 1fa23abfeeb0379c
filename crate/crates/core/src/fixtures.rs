//! Reference MUBs for one and two qubits, compared against built bases by span.

use crate::error::{Error, Result};
use crate::io::BasisFile;
use crate::mub::{same_rays, MubCollection};

const MUBS_N1: &str = include_str!("../fixtures/mubs_n1.json");
const MUBS_N2: &str = include_str!("../fixtures/mubs_n2.json");

/// Bundled reference bases; only `n = 1, 2` are available.
pub fn reference_mubs(n: u32) -> Option<Vec<BasisFile>> {
    let text = match n {
        1 => MUBS_N1,
        2 => MUBS_N2,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("bundled fixture parses"))
}

/// For each reference basis, the striation of `mubs` spanning the same rays.
pub fn match_by_span(mubs: &MubCollection<f64>, reference: &[BasisFile], tol: f64) -> Result<Vec<usize>> {
    reference
        .iter()
        .map(|r| {
            let rays = r.projectors()?;
            mubs.bases()
                .iter()
                .position(|b| same_rays(b.projectors(), &rays, tol))
                .ok_or_else(|| Error::MubViolation { detail: format!("no built basis spans reference basis {}", r.striation) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;
    use crate::mub::build_mubs;
    use crate::phase_space::PhaseSpace;

    #[test]
    fn bundled_fixtures_are_unitary() {
        for n in 1..=2 {
            let bases = reference_mubs(n).unwrap();
            assert_eq!(bases.len(), (1 << n) + 1);
            for b in &bases {
                let u = b.matrix().unwrap();
                let id = crate::linalg::CMatrix::identity(u.dim());
                assert!((&u.adjoint() * &u).max_abs_diff(&id) < 1e-15);
            }
        }
        assert!(reference_mubs(3).is_none());
    }

    #[test]
    fn equal_bases_match_striation_for_striation() {
        for n in 1..=2 {
            let f = FieldSpec::with_default_poly(n).unwrap();
            let h = f.polynomial_basis();
            let mubs = build_mubs(&PhaseSpace::with_equal_bases(f, h)).unwrap();
            let reference = reference_mubs(n).unwrap();
            let expected: Vec<usize> = reference.iter().map(|b| b.striation).collect();
            assert_eq!(match_by_span(&mubs, &reference, 1e-12).unwrap(), expected);
        }
    }

    #[test]
    fn dual_bases_match_as_a_set() {
        let mubs = build_mubs(&PhaseSpace::with_default_poly(2).unwrap()).unwrap();
        let mut found = match_by_span(&mubs, &reference_mubs(2).unwrap(), 1e-12).unwrap();
        found.sort();
        assert_eq!(found, vec![0, 1, 2, 3, 4]);
    }
}

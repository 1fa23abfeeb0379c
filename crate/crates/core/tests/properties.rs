use dwf_core::finite_field::dual_basis;
use dwf_core::mub::build_mubs;
use dwf_core::sampling::random_density;
use dwf_core::spinflip::{build_h, build_s, build_sigma_y_t, conjugate_dwf};
use dwf_core::wigner::{density_from_dwf, dwf, line_probabilities, line_sum, phase_point_operators};
use dwf_core::{Exact, FieldSpec, PhaseSpace, QuantumNet, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_and_elements() -> impl Strategy<Value = (FieldSpec, u32, u32, u32)> {
    (1u32..=8).prop_flat_map(|n| {
        let max = 1u32 << n;
        (Just(FieldSpec::with_default_poly(n).unwrap()), 0..max, 0..max, 0..max)
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        let (a, b, c) = (f.el(a as usize), f.el(b as usize), f.el(c as usize));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.trace(f.add(a, b)), f.trace(a) ^ f.trace(b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.el(1));
        }
        let s = f.sqrt(a);
        prop_assert_eq!(f.mul(s, s), a);
    }

    #[test]
    fn dual_basis_is_trace_orthonormal(n in 1u32..=8) {
        let f = FieldSpec::with_default_poly(n).unwrap();
        let h = f.polynomial_basis();
        let v = dual_basis(&f, &h);
        for (i, e) in h.elements().iter().enumerate() {
            for (j, d) in v.elements().iter().enumerate() {
                prop_assert_eq!(f.trace(f.mul(*e, *d)), u8::from(i == j));
            }
        }
    }

    #[test]
    fn dwf_round_trip_and_marginals(n in 1u32..=2, seed in any::<u64>(), code in 0u64..1024) {
        let space = PhaseSpace::with_default_poly(n).unwrap();
        let net = QuantumNet::from_code(code % QuantumNet::count(space.dim()).unwrap(), space.dim());
        let ops = phase_point_operators(&net, &build_mubs(&space).unwrap()).unwrap();
        let rho = random_density(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let w = dwf(&rho, &ops).unwrap();
        prop_assert!((w.sum() - 1.0).abs() < 1e-12);
        prop_assert!(density_from_dwf(&w, &ops).unwrap().max_abs_diff(&rho) < 1e-10);
        let probs = line_probabilities(&rho, &ops).unwrap();
        for line in space.lines() {
            prop_assert!((line_sum(&w, &space, line) - probs[&line]).abs() < 1e-10);
        }
    }

    #[test]
    fn spin_flip_is_an_involution_on_dwfs(n in 1u32..=2, seed in any::<u64>()) {
        let space = PhaseSpace::with_default_poly(n).unwrap();
        let ops = phase_point_operators(&QuantumNet::zero(space.dim()), &build_mubs(&space).unwrap()).unwrap();
        let s = build_s(&ops).unwrap();
        let h = build_h(&build_sigma_y_t(&space), &s).unwrap();
        let rho = random_density(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let w = dwf(&rho, &ops).unwrap();
        prop_assert!(h.apply(&h.apply(&w).unwrap()).unwrap().max_abs_diff(&w) < 1e-12);
        let ws = conjugate_dwf(&w, &s).unwrap();
        prop_assert!(density_from_dwf(&ws, &ops).unwrap().max_abs_diff(&rho.conj()) < 1e-10);
    }
}

#[test]
fn exact_rational_s_is_a_signed_hadamard_involution() {
    for n in 1..=2 {
        let space = PhaseSpace::with_default_poly(n).unwrap();
        let mubs = build_mubs::<Exact>(&space).unwrap();
        let ops = phase_point_operators(&QuantumNet::zero(space.dim()), &mubs).unwrap();
        let s = build_s(&ops).unwrap();
        let inv_n = Exact::ratio(1, space.dim() as i64);
        for i in 0..s.dim() {
            for v in s.matrix().row(i) {
                assert!(*v == inv_n || *v == -inv_n.clone());
            }
        }
        let rep = s.report();
        assert_eq!(rep.involution_error, 0.0);
        assert_eq!(rep.orthogonality_error, 0.0);
        assert_eq!(s.matrix().determinant(), Exact::from_i64(if n == 1 { -1 } else { 1 }));
    }
}

#[test]
fn exact_and_float_pipelines_agree() {
    let space = PhaseSpace::with_default_poly(2).unwrap();
    let net: QuantumNet = "1,0,3,2,1".parse().unwrap();
    let exact = build_s(&phase_point_operators(&net, &build_mubs::<Exact>(&space).unwrap()).unwrap()).unwrap();
    let float = build_s(&phase_point_operators(&net, &build_mubs::<f64>(&space).unwrap()).unwrap()).unwrap();
    assert_eq!(exact.core(), float.core());
}

#[test]
fn single_precision_pipeline_works() {
    let space = PhaseSpace::with_default_poly(1).unwrap();
    let ops = phase_point_operators(&QuantumNet::zero(2), &build_mubs::<f32>(&space).unwrap()).unwrap();
    let s = build_s(&ops).unwrap();
    assert_eq!(s.core(), vec![vec![1, 1, 1, -1], vec![1, 1, -1, 1], vec![1, -1, 1, 1], vec![-1, 1, 1, 1]]);
}

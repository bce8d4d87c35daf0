//! Property checks of the algebraic invariants: structural laws of the
//! linear-algebra layer, the defining relations at random phi, YBE
//! residuals on the constraint surface, and the concurrence law.

use std::f64::consts::PI;

use proptest::prelude::*;

use bmw_verify::linalg::{C64, CMatrix, QubitPermutation, StateVector};
use bmw_verify::spectral::{eigensystem, nmr_form, SpectralParams};
use bmw_verify::{bmw, topo, ybe};

fn c64() -> impl Strategy<Value = C64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(c64(), rows * cols).prop_map(move |data| {
        let rows_vec: Vec<Vec<C64>> = data.chunks(cols).map(|r| r.to_vec()).collect();
        CMatrix::from_rows(rows_vec).unwrap()
    })
}

fn state(qubits: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec(c64(), 1 << qubits)
        .prop_filter("nonzero", |amps| {
            amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6
        })
        .prop_map(move |amps| StateVector::from_amplitudes(qubits, amps).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = QubitPermutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|targets| QubitPermutation::new(targets).unwrap())
}

proptest! {
    #[test]
    fn kron_is_associative(a in matrix(2, 2), b in matrix(2, 3), c in matrix(3, 2)) {
        let left = a.kron(&b).kron(&c);
        let right = a.kron(&b.kron(&c));
        prop_assert!(left.frobenius_distance(&right).unwrap() < 1e-10);
    }

    #[test]
    fn dagger_is_an_anti_automorphism(a in matrix(3, 3), b in matrix(3, 3)) {
        prop_assert_eq!(a.dagger().dagger(), a.clone());
        let lhs = a.matmul(&b).unwrap().dagger();
        let rhs = b.dagger().matmul(&a.dagger()).unwrap();
        prop_assert!(lhs.frobenius_distance(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn frobenius_distance_is_a_metric(a in matrix(3, 3), b in matrix(3, 3), c in matrix(3, 3)) {
        let dab = a.frobenius_distance(&b).unwrap();
        let dba = b.frobenius_distance(&a).unwrap();
        prop_assert!((dab - dba).abs() < 1e-12);
        prop_assert!(a.frobenius_distance(&a).unwrap() == 0.0);
        let dac = a.frobenius_distance(&c).unwrap();
        let dcb = c.frobenius_distance(&b).unwrap();
        prop_assert!(dab <= dac + dcb + 1e-12);
    }

    #[test]
    fn permutations_preserve_geometry(
        s in state(4),
        t in state(4),
        p in permutation(4),
    ) {
        let ps = s.permute_qubits(&p).unwrap();
        let pt = t.permute_qubits(&p).unwrap();
        prop_assert!((ps.norm() - s.norm()).abs() < 1e-12);
        let before = s.inner(&t).unwrap();
        let after = ps.inner(&pt).unwrap();
        prop_assert!((before - after).norm() < 1e-10);
    }

    #[test]
    fn embedded_disjoint_pairs_commute(phi in 0.0..(2.0 * PI)) {
        let gens = bmw::generators(phi).unwrap();
        let e1 = gens.e.embed_two_site(1, 4).unwrap();
        let b3 = gens.b.embed_two_site(3, 4).unwrap();
        let comm = bmw::commutator(&e1, &b3);
        prop_assert!(comm.frobenius_norm() < 1e-12);
    }

    #[test]
    fn bmw_relations_hold_at_random_phi(phi in 0.0..(2.0 * PI)) {
        for r in bmw::verify_bmw_relations(3, phi, 1e-12).unwrap() {
            prop_assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn generator_routes_always_agree(phi in -10.0f64..10.0) {
        // generators() errors if the entry tables and operator
        // expressions drift apart
        prop_assert!(bmw::generators(phi).is_ok());
    }

    #[test]
    fn r_matrix_is_unitary(theta in -PI..PI, phi in 0.0..(2.0 * PI)) {
        let r = ybe::r_matrix(ybe::AngleParams { theta, phi });
        let gram = r.dagger().matmul(&r).unwrap();
        prop_assert!(gram.frobenius_distance(&CMatrix::identity(4)).unwrap() < 1e-12);
        // inverse-angle identity
        let inv = ybe::r_matrix(ybe::AngleParams { theta: -theta, phi });
        prop_assert!(r.matmul(&inv).unwrap().frobenius_distance(&CMatrix::identity(4)).unwrap() < 1e-12);
    }

    #[test]
    fn fixed_generator_composition_is_additive(
        t1 in -PI..PI,
        t3 in -PI..PI,
        phi in 0.0..(2.0 * PI),
    ) {
        // one-parameter group: R(t1) R(t3) = R(t1 + t3) at fixed phi
        let prod = ybe::r_matrix(ybe::AngleParams { theta: t1, phi })
            .matmul(&ybe::r_matrix(ybe::AngleParams { theta: t3, phi }))
            .unwrap();
        let sum = ybe::r_matrix(ybe::AngleParams { theta: t1 + t3, phi });
        prop_assert!(prod.frobenius_distance(&sum).unwrap() < 1e-12);
    }

    #[test]
    fn ybe_holds_on_the_constraint_surface(
        t1 in (-PI + 0.1)..(PI - 0.1),
        t3 in (-PI + 0.1)..(PI - 0.1),
        phi in 0.0..(2.0 * PI),
    ) {
        match ybe::check_ybe(t1, t3, phi, 1e-12) {
            Ok(r) => prop_assert!(r.passed, "{r}"),
            Err(bmw_verify::Error::VelocityPole) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn concurrence_is_sin_squared_and_bounded(
        theta in 0.0..PI,
        phi in 0.0..(2.0 * PI),
    ) {
        let basis = ybe::entangled_basis(ybe::AngleParams { theta, phi });
        for s in &basis.states {
            let c = ybe::concurrence(s).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
            prop_assert!((c - theta.sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn velocity_add_matches_raw_formula(
        t1 in (-PI + 0.1)..(PI - 0.1),
        t3 in (-PI + 0.1)..(PI - 0.1),
    ) {
        if let Ok(t2) = ybe::velocity_add(t1, t3) {
            let lhs = (t2 / 2.0).tan();
            let rhs = ((t1 / 2.0).tan() + (t3 / 2.0).tan())
                / (1.0 + (t1 / 2.0).tan() * (t3 / 2.0).tan());
            prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
            prop_assert!((-PI..=PI).contains(&t2));
        }
    }

    #[test]
    fn eigensystem_diagonalizes_h(vt in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        let sp = SpectralParams::new(vt, phi).unwrap();
        // construction itself verifies ||Hv - Ev|| < 1e-12 per state
        let es = eigensystem(&sp).unwrap();
        let h = nmr_form(&sp);
        let mut completeness = CMatrix::zeros(4, 4);
        for s in &es.states {
            completeness = completeness.add(&s.outer(s)).unwrap();
        }
        prop_assert!(completeness.frobenius_distance(&CMatrix::identity(4)).unwrap() < 1e-12);
        prop_assert!(h.frobenius_distance(&h.dagger()).unwrap() < 1e-12);
    }

    #[test]
    fn topo_basis_is_orthonormal(phi in 0.0..(2.0 * PI)) {
        let basis = topo::topo_basis(phi);
        prop_assert!(basis.gram_residual < 1e-10, "{}", basis.gram_residual);
    }

    #[test]
    fn reduced_ybe_holds(
        t1 in (-PI + 0.1)..(PI - 0.1),
        t3 in (-PI + 0.1)..(PI - 0.1),
        phi in 0.0..(2.0 * PI),
    ) {
        match topo::check_reduced_ybe(t1, t3, phi, 1e-12) {
            Ok(r) => prop_assert!(r.passed, "{r}"),
            Err(bmw_verify::Error::VelocityPole) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn taylor_exponential_tracks_closed_form(theta in -PI..PI, phi in 0.0..(2.0 * PI)) {
        let p = ybe::AngleParams { theta, phi };
        let series = ybe::r_from_exponential(p, 30).unwrap();
        prop_assert!(ybe::r_matrix(p).frobenius_distance(&series).unwrap() < 1e-10);
    }
}

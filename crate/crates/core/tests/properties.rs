use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;
use symrig_core::generic::{max_residual, seeded_rng};
use symrig_core::{
    class_is_empty, config_space_basis, orbit_sample, orbit_structure, rigidity_verdict,
    sample_config, schoenflies_group, sym_generic_verdict, verify_type, ConfigSpaceBasis,
    Framework, Graph, GroupParams, Permutation, SymGenericOptions, SymmetryGroup, TypeAssignment,
};

fn k33_c2v() -> (Graph, SymmetryGroup, TypeAssignment) {
    let g = Graph::complete_bipartite(3, 3);
    let group = schoenflies_group("C2v", &GroupParams::default(), 2).unwrap();
    assert_eq!(
        group
            .elements()
            .iter()
            .map(|e| e.label())
            .collect::<Vec<_>>(),
        ["Id", "C2", "s_0", "s_1"]
    );
    let phi = TypeAssignment::new(
        [
            "id",
            "(v1 v6)(v2 v5)(v3 v4)",
            "(v1 v5)(v2 v6)(v3 v4)",
            "(v1 v2)(v5 v6)",
        ]
        .iter()
        .map(|s| g.parse_permutation(s).unwrap())
        .collect(),
    );
    (g, group, phi)
}

fn k33_phi_a() -> (Graph, SymmetryGroup, TypeAssignment) {
    let g = Graph::complete_bipartite(3, 3);
    let params = GroupParams {
        theta: Some(PI / 2.0),
        ..Default::default()
    };
    let group = schoenflies_group("Cs", &params, 2).unwrap();
    let phi = TypeAssignment::new(vec![
        Permutation::identity(6),
        g.parse_permutation("(v1 v2)(v5 v6)").unwrap(),
    ]);
    (g, group, phi)
}

fn random_orthogonal(k: usize, seed: u64) -> DMatrix<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(k, k, |_, _| rng.random_range(-1.0..1.0));
    a.qr().q()
}

#[test]
fn c2v_space_lies_inside_its_mirror_subgroup_space() {
    let (g, c2v, phi) = k33_c2v();
    let (cs, members) = c2v.generated_subgroup(&[3]).unwrap();
    let phi_cs = phi.restrict(&members);
    let big = config_space_basis(&g, &c2v, &phi).unwrap();
    let small = config_space_basis(&g, &cs, &phi_cs).unwrap();
    assert!(big.k() < small.k());
    assert!(max_residual(&cs, &phi_cs, big.matrix()) <= 1e-9);
    let opts = SymGenericOptions {
        seed: 11,
        ..Default::default()
    };
    let r_big = sym_generic_verdict(&g, &c2v, &phi, &opts).unwrap();
    let r_small = sym_generic_verdict(&g, &cs, &phi_cs, &opts).unwrap();
    assert!(r_big.max_rank <= r_small.max_rank);
}

#[test]
fn trivial_group_recovers_ordinary_generic_rigidity() {
    let c1 = SymmetryGroup::trivial(2);
    for (g, rank) in [
        (Graph::complete(4), 5),
        (Graph::complete_bipartite(3, 3), 9),
        (Graph::cycle(5), 5),
    ] {
        let n = g.vertex_count();
        let phi = TypeAssignment::trivial(1, n);
        let basis = config_space_basis(&g, &c1, &phi).unwrap();
        assert_eq!(basis.k(), 2 * n);
        let rep = sym_generic_verdict(&g, &c1, &phi, &SymGenericOptions::default()).unwrap();
        assert_eq!(rep.max_rank, Some(rank));
    }
}

#[test]
fn max_rank_does_not_depend_on_the_basis() {
    let (g, cs, phi) = k33_phi_a();
    let basis = config_space_basis(&g, &cs, &phi).unwrap();
    let q = random_orthogonal(basis.k(), 3);
    let turned = ConfigSpaceBasis::from_matrix(6, 2, basis.matrix() * q);
    assert!(max_residual(&cs, &phi, turned.matrix()) <= 1e-9);
    let mut rng_a = seeded_rng(1);
    let mut rng_b = seeded_rng(2);
    let max_rank = |b: &ConfigSpaceBasis, rng: &mut rand_chacha::ChaCha8Rng| {
        (0..20)
            .map(|_| {
                let p = sample_config(&g, b, rng, 100, 1e-9).unwrap();
                let f = Framework::new(g.clone(), p, 1e-9).unwrap();
                rigidity_verdict(&f, 1e-8).rank
            })
            .max()
            .unwrap()
    };
    assert_eq!(max_rank(&basis, &mut rng_a), max_rank(&turned, &mut rng_b));
}

#[test]
fn empty_class_still_has_a_basis() {
    let g = Graph::complete(2);
    let c2 = schoenflies_group("C2", &GroupParams::default(), 2).unwrap();
    let phi = TypeAssignment::trivial(2, 2);
    let basis = config_space_basis(&g, &c2, &phi).unwrap();
    assert!(class_is_empty(&g, &basis, 1e-9).empty);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn samples_satisfy_their_type(seed in any::<u64>()) {
        let (g, cs, phi) = k33_phi_a();
        let basis = config_space_basis(&g, &cs, &phi).unwrap();
        prop_assert!(max_residual(&cs, &phi, basis.matrix()) <= 1e-9);
        let p = sample_config(&g, &basis, &mut seeded_rng(seed), 100, 1e-9).unwrap();
        prop_assert!(verify_type(&g, &p, &cs, &phi, 1e-8).unwrap());
        prop_assert!(basis.contains(&p, 1e-8));
    }

    #[test]
    fn orbit_samples_lie_in_the_configuration_space(seed in any::<u64>()) {
        let (g, c2v, phi) = k33_c2v();
        let basis = config_space_basis(&g, &c2v, &phi).unwrap();
        let orbits = orbit_structure(&g, &c2v, &phi).unwrap();
        let p = orbit_sample(&g, &c2v, &phi, &orbits, &mut seeded_rng(seed), 100, 1e-9).unwrap();
        prop_assert!(basis.contains(&p, 1e-8));
        prop_assert!(verify_type(&g, &p, &c2v, &phi, 1e-8).unwrap());
    }

    #[test]
    fn cyclic_orders_and_residuals(m in 2usize..9, seed in any::<u64>()) {
        let params = GroupParams { theta: Some(seed as f64 % 3.0), ..Default::default() };
        let cm = schoenflies_group(&format!("C{m}"), &params, 2).unwrap();
        let cmv = schoenflies_group(&format!("C{m}v"), &params, 2).unwrap();
        prop_assert_eq!(cm.order(), m);
        prop_assert_eq!(cmv.order(), 2 * m);
        prop_assert!(cmv.validate().is_ok());
        // One free orbit of K_m under rotation.
        let g = Graph::complete(m);
        let gen = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect()).unwrap();
        let phi = TypeAssignment::new((0..m).map(|k| gen.pow(k)).collect());
        let basis = config_space_basis(&g, &cm, &phi).unwrap();
        prop_assert_eq!(basis.k(), 2);
        prop_assert!(max_residual(&cm, &phi, basis.matrix()) <= 1e-9);
    }
}

use octaplex::binalg::{BinaryMatrix, BitVector};
use octaplex::codes::{build_bounded_family, build_family, CodeFamily};
use octaplex::lattice::{build_octaplex, ScaledCoord};
use octaplex::logicals::{
    build_logicals, certify_distances, disjoint_x_reps, disjoint_z_reps, exhaustive_z_search, logical_class, partner,
    verify_lemma_a, LogicalBasis, LogicalClass, PauliKind, PauliSupport,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn periodic() -> &'static (CodeFamily, LogicalBasis) {
    static CELL: OnceLock<(CodeFamily, LogicalBasis)> = OnceLock::new();
    CELL.get_or_init(|| {
        let fam = build_family(&build_octaplex(2).unwrap()).unwrap();
        let basis = build_logicals(&fam).unwrap();
        (fam, basis)
    })
}

fn z_op(block: usize, support: BitVector) -> PauliSupport {
    PauliSupport { kind: PauliKind::Z, block, support }
}

#[test]
fn partner_is_an_involution_per_block() {
    for b in 0..4 {
        for j in 0..4 {
            assert_eq!(partner(b, partner(b, j)), j);
        }
    }
    assert_eq!((0..4).map(|j| partner(0, j)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    assert_eq!((0..4).map(|j| partner(3, j)).collect::<Vec<_>>(), vec![3, 2, 1, 0]);
}

#[test]
fn axis_strings_have_weight_l() {
    for l in [2, 3] {
        let fam = build_family(&build_octaplex(l).unwrap()).unwrap();
        let basis = build_logicals(&fam).unwrap();
        for b in 0..4 {
            for z in &basis.zbar[b] {
                assert_eq!(z.weight(), l);
            }
        }
        assert!(verify_lemma_a(&fam, &basis).holds, "L={l}");
    }
}

#[test]
fn w_pair_of_block0_meets_at_one_qubit() {
    let (fam, basis) = periodic();
    let common = basis.xbar[0][3].and(&basis.zbar[0][3]);
    assert_eq!(common.support(), vec![fam.qubit_of(ScaledCoord::new(0, 0, 0, 2)).unwrap()]);
}

#[test]
fn lemma_holds_with_identity_pairing() {
    let (fam, basis) = periodic();
    let rep = verify_lemma_a(fam, basis);
    assert!(rep.holds, "{:?}", rep.witness);
    for b in 0..4 {
        assert_eq!(basis.pairing(b), BinaryMatrix::identity(4));
    }
}

#[test]
fn zbar_commutes_with_every_x_stabilizer() {
    let (fam, basis) = periodic();
    for b in 0..4 {
        for z in &basis.zbar[b] {
            assert!(fam.blocks[b].hx.rows().iter().all(|x| !x.overlap_parity(z)));
        }
        for x in &basis.xbar[b] {
            assert!(fam.blocks[b].hz.rows().iter().all(|z| !z.overlap_parity(x)));
        }
    }
}

#[test]
fn perturbed_xbar_breaks_the_lemma() {
    let (fam, basis) = periodic();
    for q in [0, 17, 200, 383] {
        let mut broken = basis.clone();
        broken.xbar[1][2].toggle(q);
        let rep = verify_lemma_a(fam, &broken);
        assert!(!rep.holds);
        assert!(rep.witness.is_some());
    }
}

#[test]
fn stabilizers_are_trivial_and_single_qubits_are_not_logical() {
    let (fam, basis) = periodic();
    for b in 0..4 {
        for r in fam.blocks[b].hz.rows().iter().step_by(37) {
            assert!(logical_class(fam, basis, &z_op(b, r.clone())).is_trivial());
        }
        for q in [0, 100, 383] {
            let single = BitVector::from_support(fam.n(), [q]).unwrap();
            assert!(matches!(logical_class(fam, basis, &z_op(b, single)), LogicalClass::NotLogical { .. }));
        }
    }
}

#[test]
fn zbar_class_is_its_own_direction() {
    let (fam, basis) = periodic();
    for b in 0..4 {
        for j in 0..4 {
            let class = logical_class(fam, basis, &z_op(b, basis.zbar[b][j].clone()));
            let want: Vec<bool> = (0..4).map(|i| i == j).collect();
            assert_eq!(class.bits(), Some(want.as_slice()));
        }
    }
}

#[test]
fn disjoint_representatives_at_l2() {
    let (fam, _) = periodic();
    for b in 0..4 {
        for j in 0..4 {
            let xs = disjoint_x_reps(fam, b, j);
            assert_eq!(xs.len(), 2);
            let zs = disjoint_z_reps(fam, b, j);
            let mut seen = BitVector::zeros(fam.n());
            for z in &zs {
                assert!(!seen.intersects(z), "block {b} direction {j}");
                seen.xor_assign(z);
            }
            assert_eq!(zs.len(), 80);
            assert_eq!(zs.iter().filter(|z| z.weight() == 2).count(), 16);
        }
    }
}

#[test]
fn exhaustive_search_finds_weight_two() {
    let (fam, _) = periodic();
    let s = exhaustive_z_search(&fam.blocks[0], 2);
    assert_eq!(s.witness.as_ref().map(Vec::len), Some(2));
    assert_eq!(s.candidates, 384 + 384 * 383 / 2);
}

#[test]
fn distance_certificate_l2() {
    let (fam, basis) = periodic();
    for b in 0..4 {
        let c = certify_distances(fam, basis, b, true).unwrap();
        assert_eq!(c.dz(), Some(2));
        assert_eq!(c.dx_lower, 80);
        assert_eq!(c.dx_upper, 80);
    }
}

#[test]
fn exhaustive_search_refused_above_l2() {
    let fam = build_family(&build_octaplex(3).unwrap()).unwrap();
    let basis = build_logicals(&fam).unwrap();
    assert!(certify_distances(&fam, &basis, 0, true).is_err());
    let c = certify_distances(&fam, &basis, 0, false).unwrap();
    assert_eq!((c.dz_lower, c.dz_upper), (3, 3));
}

#[test]
fn bounded_basis_pairs() {
    let bf = build_bounded_family(2).unwrap();
    let basis = bf.basis();
    assert!(verify_lemma_a(&bf.family, &basis).holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_ignores_stabilizer_multiplication(block in 0usize..4, j in 0usize..4, mask in prop::collection::vec(any::<bool>(), 1024)) {
        let (fam, basis) = periodic();
        let mut z = basis.zbar[block][j].clone();
        for (r, &on) in fam.blocks[block].hz.rows().iter().zip(&mask) {
            if on {
                z.xor_assign(r);
            }
        }
        let a = logical_class(fam, basis, &z_op(block, basis.zbar[block][j].clone()));
        let b = logical_class(fam, basis, &z_op(block, z));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn x_class_ignores_stabilizer_multiplication(block in 0usize..4, j in 0usize..4, mask in prop::collection::vec(any::<bool>(), 32)) {
        let (fam, basis) = periodic();
        let mut x = basis.xbar[block][j].clone();
        for (r, &on) in fam.blocks[block].hx.rows().iter().zip(&mask) {
            if on {
                x.xor_assign(r);
            }
        }
        let p = PauliSupport { kind: PauliKind::X, block, support: x };
        let want: Vec<bool> = (0..4).map(|i| i == j).collect();
        let class = logical_class(fam, basis, &p);
        prop_assert_eq!(class.bits(), Some(want.as_slice()));
    }
}

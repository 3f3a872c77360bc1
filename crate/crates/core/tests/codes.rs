use std::collections::BTreeSet;

use octaplex::binalg::{BinaryMatrix, RowBasis};
use octaplex::codes::{
    block0_z_by_intersection, boundary_weight, build_2d_pair, build_3d_triple, build_bounded_family, build_family,
    CodeFamily,
};
use octaplex::lattice::{build_octaplex, Color};

fn row_sets(m: &BinaryMatrix) -> BTreeSet<Vec<usize>> {
    m.rows().iter().map(|r| r.support()).collect()
}

fn periodic(l: usize) -> CodeFamily {
    build_family(&build_octaplex(l).unwrap()).unwrap()
}

#[test]
fn periodic_parameters() {
    for l in [2, 3] {
        let fam = periodic(l);
        assert_eq!(fam.blocks.len(), 4);
        for b in &fam.blocks {
            let p = b.params();
            assert_eq!(p.n, 24 * l.pow(4), "block {}", b.label);
            assert_eq!(p.k, 4, "block {} at L={l}", b.label);
            assert!(b.hx.row_weights().iter().all(|&w| w == 24));
            assert!(b.hz.row_weights().iter().all(|&w| w == 3));
            assert!(b.css_violation().is_none());
        }
    }
}

#[test]
fn block0_ranks_at_l2() {
    let p = periodic(2).blocks[0].params();
    assert_eq!((p.rank_hx, p.rank_hz), (31, 349));
}

#[test]
fn block0_faces_are_colored_triple_intersections() {
    let cx = build_octaplex(2).unwrap();
    let fam = build_family(&cx).unwrap();
    let by_intersection: BTreeSet<Vec<usize>> = block0_z_by_intersection(&cx).into_iter().collect();
    assert_eq!(by_intersection, row_sets(&fam.blocks[0].hz));
}

#[test]
fn colored_blocks_are_translates_of_block0() {
    let fam = periodic(2);
    let m = 8;
    for (slot, color) in Color::ALL.into_iter().enumerate() {
        let shift = color.shift();
        let image: Vec<usize> =
            fam.coords.iter().map(|&c| fam.qubit_of(c.offset(shift, m)).expect("translate is a 3-cell")).collect();
        let translate = |m: &BinaryMatrix| -> BTreeSet<Vec<usize>> {
            m.rows()
                .iter()
                .map(|r| {
                    let mut s: Vec<usize> = r.ones_iter().map(|q| image[q]).collect();
                    s.sort();
                    s
                })
                .collect()
        };
        let blk = &fam.blocks[slot + 1];
        assert_eq!(translate(&fam.blocks[0].hx), row_sets(&blk.hx), "{color:?} X");
        assert_eq!(translate(&fam.blocks[0].hz), row_sets(&blk.hz), "{color:?} Z");
    }
}

#[test]
fn bounded_family_encodes_one_qubit() {
    for l in [2, 3] {
        let bf = build_bounded_family(l).unwrap();
        for (b, blk) in bf.family.blocks.iter().enumerate() {
            assert!(blk.css_violation().is_none());
            assert_eq!(blk.params().k, 1, "block {b} at L={l}");
            assert_eq!(bf.xbar[b].overlap(&bf.zbar[b]) % 2, 1);
            assert!(blk.hz.rows().iter().all(|z| !z.overlap_parity(&bf.xbar[b])));
            assert!(blk.hx.rows().iter().all(|x| !x.overlap_parity(&bf.zbar[b])));
        }
    }
}

#[test]
fn bounded_x_weights_follow_boundary_count() {
    assert_eq!((0..4).map(boundary_weight).collect::<Vec<_>>(), vec![24, 15, 10, 7]);
    let bf = build_bounded_family(2).unwrap();
    for rows in &bf.x_boundary {
        for &(w, nb) in rows {
            assert_eq!(w, boundary_weight(nb));
        }
    }
}

#[test]
fn bounded_l2_size() {
    let bf = build_bounded_family(2).unwrap();
    assert_eq!(bf.family.n(), 209);
    let p = bf.family.blocks[0].params();
    assert_eq!((p.rank_hx, p.rank_hz, p.k), (16, 192, 1));
}

#[test]
fn toric_pair_has_two_qubits_each() {
    for l in [2, 3, 4] {
        let fam = build_2d_pair(l).unwrap();
        assert_eq!(fam.n(), 2 * l * l);
        for b in &fam.blocks {
            assert!(b.css_violation().is_none());
            assert_eq!(b.params().k, 2);
        }
        // the two blocks are each other's duals
        let a = RowBasis::from_rows(fam.n(), fam.blocks[0].hx.rows());
        assert!(fam.blocks[1].hz.rows().iter().all(|r| a.contains(r)));
    }
}

#[test]
fn cubic_triple_has_three_qubits_each() {
    for l in [2, 4] {
        let fam = build_3d_triple(l).unwrap();
        assert_eq!(fam.n(), 3 * l * l * l);
        for b in &fam.blocks {
            assert!(b.css_violation().is_none());
            assert_eq!(b.params().k, 3, "block {} at L={l}", b.label);
        }
    }
    assert!(build_3d_triple(3).is_err());
}

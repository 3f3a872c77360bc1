use octaplex::binalg::BinaryMatrix;
use octaplex::codes::build_family;
use octaplex::export::{parse_alist, render, tanner_graph, to_alist, to_mtx, Format};
use octaplex::lattice::build_octaplex;
use octaplex::metachecks::build_ladder;
use proptest::prelude::*;

#[test]
fn alist_layout() {
    let m = BinaryMatrix::from_supports(3, &[vec![0, 2], vec![1]]).unwrap();
    assert_eq!(to_alist(&m), "3 2\n1 2\n1 1 1\n2 1\n1\n2\n1\n1 3\n2 0\n");
}

#[test]
fn mtx_layout() {
    let m = BinaryMatrix::from_supports(3, &[vec![0, 2], vec![1]]).unwrap();
    assert_eq!(to_mtx(&m), "%%MatrixMarket matrix coordinate integer general\n2 3 3\n1 1 1\n1 3 1\n2 2 1\n");
}

#[test]
fn code_matrices_round_trip() {
    let fam = build_family(&build_octaplex(2).unwrap()).unwrap();
    for b in &fam.blocks {
        assert_eq!(parse_alist(&render(&b.hx, Format::Alist)).unwrap(), b.hx);
        assert_eq!(parse_alist(&render(&b.hz, Format::Alist)).unwrap(), b.hz);
    }
    let mtx = render(&fam.blocks[0].hz, Format::Mtx);
    assert_eq!(mtx.lines().nth(1), Some("1024 384 3072"));
}

#[test]
fn tanner_graph_levels() {
    let cx = build_octaplex(2).unwrap();
    let fam = build_family(&cx).unwrap();
    let g = tanner_graph(&build_ladder(&cx, &fam.blocks[0]).unwrap());
    assert_eq!(g.qubits, 384);
    assert_eq!(g.z_checks.len(), 1024);
    assert_eq!(g.edge_metachecks.len(), 768);
    assert_eq!(g.vertex_metachecks.len(), 96);
    assert_eq!((g.face_planes.len(), g.edge_hyperplanes.len()), (6, 4));
}

#[test]
fn format_names() {
    assert_eq!("mtx".parse::<Format>().unwrap(), Format::Mtx);
    assert_eq!(Format::Alist.extension(), "alist");
    assert!("csv".parse::<Format>().is_err());
    assert!(parse_alist("3\n").is_err());
}

proptest! {
    #[test]
    fn alist_round_trip(rows in prop::collection::vec(prop::collection::btree_set(0usize..20, 0..6), 0..12)) {
        let supports: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        let m = BinaryMatrix::from_supports(20, &supports).unwrap();
        prop_assert_eq!(parse_alist(&to_alist(&m)).unwrap(), m);
    }
}

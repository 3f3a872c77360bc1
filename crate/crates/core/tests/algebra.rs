use octaplex::binalg::{BinaryMatrix, BitVector, RowBasis};
use octaplex::phasepoly::{composite_sandwich, composite_var, sandwich_identity, PhasePolynomial};
use octaplex::transversal::octaplex_quartets;
use proptest::prelude::*;

fn bits(n: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(any::<bool>(), n).prop_map(|v| BitVector::from_bools(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    prop::collection::vec(bits(cols), rows).prop_map(move |r| BinaryMatrix::from_rows(cols, r).unwrap())
}

fn poly(vars: usize) -> impl Strategy<Value = PhasePolynomial> {
    prop::collection::vec(prop::collection::btree_set(0..vars, 0..=vars), 0..6).prop_map(|ms| {
        ms.iter().fold(PhasePolynomial::zero(), |acc, m| {
            acc.add(&PhasePolynomial::monomial(&m.iter().copied().collect::<Vec<_>>()))
        })
    })
}

/// Evaluates a phase polynomial at a bit assignment.
fn eval(p: &PhasePolynomial, x: u32) -> bool {
    p.monomials().fold(false, |acc, m| acc ^ m.iter().all(|&v| x >> v & 1 == 1))
}

#[test]
fn cccz_sandwich_leaves_ccz() {
    assert_eq!(sandwich_identity(4, 0).unwrap(), PhasePolynomial::monomial(&[1, 2, 3]));
}

#[test]
fn sandwich_rejects_bad_shapes() {
    assert!(sandwich_identity(1, 0).is_err());
    assert!(sandwich_identity(5, 0).is_err());
    assert!(sandwich_identity(3, 3).is_err());
}

#[test]
fn quartet_round_leaves_one_ccz() {
    let got = composite_sandwich(&octaplex_quartets(), 0, 3);
    let want = PhasePolynomial::monomial(&[composite_var(1, 2), composite_var(2, 1), composite_var(3, 0)]);
    assert_eq!(got, want);
}

#[test]
fn full_rank_inverse() {
    let m = BinaryMatrix::from_supports(3, &[vec![0, 1], vec![1, 2], vec![2]]).unwrap();
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv).unwrap(), BinaryMatrix::identity(3));
    let singular = BinaryMatrix::from_supports(2, &[vec![0, 1], vec![0, 1]]).unwrap();
    assert!(singular.inverse().is_none());
}

proptest! {
    #[test]
    fn sandwich_drops_the_flipped_control(arity in 2usize..=4, flip in 0usize..4) {
        prop_assume!(flip < arity);
        let rest: Vec<usize> = (0..arity).filter(|&v| v != flip).collect();
        prop_assert_eq!(sandwich_identity(arity, flip).unwrap(), PhasePolynomial::monomial(&rest));
    }

    #[test]
    fn flip_matches_pointwise_shift(p in poly(5), i in 0usize..5, x in 0u32..32) {
        prop_assert_eq!(eval(&p.flip(i), x), eval(&p, x ^ (1 << i)));
    }

    #[test]
    fn flip_is_an_involution(p in poly(6), i in 0usize..6) {
        prop_assert_eq!(p.flip(i).flip(i), p.clone());
        prop_assert!(p.sandwich(i).sandwich(i).is_empty());
    }

    #[test]
    fn sandwich_lowers_degree(p in poly(6), i in 0usize..6) {
        let s = p.sandwich(i);
        prop_assert!(s.is_empty() || s.degree() < p.degree());
        prop_assert!(s.monomials().all(|m| !m.contains(&i)));
    }

    #[test]
    fn addition_is_pointwise_xor(p in poly(5), q in poly(5), x in 0u32..32) {
        prop_assert_eq!(eval(&p.add(&q), x), eval(&p, x) ^ eval(&q, x));
    }

    #[test]
    fn xor_is_a_group(a in bits(150), b in bits(150)) {
        prop_assert!(a.xor(&a).is_zero());
        prop_assert_eq!(a.xor(&b).xor(&b), a.clone());
        prop_assert_eq!(a.xor(&b).weight(), a.weight() + b.weight() - 2 * a.overlap(&b));
    }

    #[test]
    fn rank_nullity(m in matrix(7, 90)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.ncols());
        for v in &kernel {
            prop_assert!(m.rows().iter().all(|r| !r.overlap_parity(v)));
        }
    }

    #[test]
    fn rank_of_transpose(m in matrix(9, 12)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn row_combinations_are_in_the_row_space(m in matrix(6, 70), coeffs in bits(6)) {
        let v = m.combine_rows(&coeffs).unwrap();
        prop_assert!(m.in_row_space(&v).unwrap());
        let basis = RowBasis::from_rows(70, m.rows());
        prop_assert!(basis.contains(&v));
        prop_assert!(basis.reduce(&v).is_zero());
        prop_assert_eq!(basis.rank(), m.rank());
    }

    #[test]
    fn product_with_transpose(a in matrix(5, 40), b in matrix(4, 40)) {
        let direct = a.mul_transpose(&b).unwrap();
        let via = a.mul(&b.transpose()).unwrap();
        prop_assert_eq!(direct, via);
    }
}

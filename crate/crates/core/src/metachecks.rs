//! Metacheck ladder: qubits, 2-cell Z checks, 1-cell and 0-cell metachecks, global checks.

use serde::{Deserialize, Serialize};

use crate::binalg::{BinaryMatrix, BitVector};
use crate::codes::Codeblock;
use crate::lattice::CellComplex;
use crate::Result;

#[derive(Clone, Debug)]
pub struct MetacheckLadder {
    pub l: usize,
    pub hx: BinaryMatrix,
    /// Faces x qubits.
    pub hz: BinaryMatrix,
    /// Edges x faces.
    pub m1: BinaryMatrix,
    /// Vertices x edges.
    pub m0: BinaryMatrix,
    /// One face-plane combination per pair of axes.
    pub globals2: Vec<BitVector>,
    /// One edge hyperplane per axis.
    pub globals1: Vec<BitVector>,
    pub global0: BitVector,
    pub global_x: BitVector,
}

/// Builds the ladder from the periodic complex and codeblock 0.
pub fn build_ladder(cx: &CellComplex, block0: &Codeblock) -> Result<MetacheckLadder> {
    let edges: Vec<Vec<usize>> = (0..cx.count(1)).map(|e| cx.coboundary(1, e).to_vec()).collect();
    let verts: Vec<Vec<usize>> = (0..cx.count(0)).map(|v| cx.coboundary(0, v).to_vec()).collect();
    let m1 = BinaryMatrix::from_supports(cx.count(2), &edges)?;
    let m0 = BinaryMatrix::from_supports(cx.count(1), &verts)?;

    let faces = cx.cells(2);
    let mut globals2 = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&a| a != i && a != j).collect();
            let support = (0..faces.len()).filter(|&f| {
                let c = faces[f].0;
                let odd = |v: u32| v % 2 == 1;
                rest.iter().all(|&a| c[a] == 1)
                    && ((c[i] % 4 == 0 && odd(c[j])) || (c[j] % 4 == 0 && odd(c[i])))
            });
            globals2.push(BitVector::from_support(faces.len(), support)?);
        }
    }
    let edge_cells = cx.cells(1);
    let globals1 = (0..4)
        .map(|a| BitVector::from_support(edge_cells.len(), (0..edge_cells.len()).filter(|&e| edge_cells[e].0[a] == 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MetacheckLadder {
        l: cx.l(),
        hx: block0.hx.clone(),
        hz: block0.hz.clone(),
        m1,
        m0,
        globals2,
        globals1,
        global0: BitVector::ones(cx.count(0)),
        global_x: BitVector::ones(block0.hx.nrows()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderRanks {
    pub m0: usize,
    pub m1: usize,
    pub hz: usize,
    pub hx: usize,
}

impl LadderRanks {
    /// `6L^4-1, 42L^4-3, 22L^4-3, 2L^4-1`.
    pub fn expected(l: usize) -> Self {
        let l4 = l.pow(4);
        LadderRanks { m0: 6 * l4 - 1, m1: 42 * l4 - 3, hz: 22 * l4 - 3, hx: 2 * l4 - 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub ranks: LadderRanks,
    pub expected: LadderRanks,
    pub k: usize,
    pub total_generators: usize,
    pub m1_hz_zero: bool,
    pub m0_m1_zero: bool,
    pub hx_rows_sum_zero: bool,
    pub m1_row_weights: Vec<usize>,
    pub m0_row_weights: Vec<usize>,
    pub pass: bool,
}

fn distinct(mut w: Vec<usize>) -> Vec<usize> {
    w.sort_unstable();
    w.dedup();
    w
}

pub fn verify_counting(ladder: &MetacheckLadder) -> Result<CountingReport> {
    let ranks = LadderRanks {
        m0: ladder.m0.rank(),
        m1: ladder.m1.rank(),
        hz: ladder.hz.rank(),
        hx: ladder.hx.rank(),
    };
    let expected = LadderRanks::expected(ladder.l);
    let n = ladder.hz.ncols();
    let k = n - ranks.hx - ranks.hz;
    let m1_hz_zero = ladder.m1.mul(&ladder.hz)?.is_zero();
    let m0_m1_zero = ladder.m0.mul(&ladder.m1)?.is_zero();
    let hx_rows_sum_zero = ladder.hx.combine_rows(&ladder.global_x)?.is_zero();
    let m1_row_weights = distinct(ladder.m1.row_weights());
    let m0_row_weights = distinct(ladder.m0.row_weights());
    let pass = ranks == expected
        && k == 4
        && m1_hz_zero
        && m0_m1_zero
        && hx_rows_sum_zero
        && m1_row_weights == [4]
        && m0_row_weights == [16];
    Ok(CountingReport {
        ranks,
        expected,
        k,
        total_generators: ranks.hx + ranks.hz,
        m1_hz_zero,
        m0_m1_zero,
        hx_rows_sum_zero,
        m1_row_weights,
        m0_row_weights,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalsReport {
    pub planes_zero_sum: Vec<bool>,
    pub planes_rank_gain: usize,
    pub face_dependency_dim: usize,
    pub hyperplanes_zero_sum: Vec<bool>,
    pub hyperplanes_rank_gain: usize,
    pub edge_dependency_dim: usize,
    pub vertex_ones_zero_sum: bool,
    pub vertex_dependency_dim: usize,
    pub pass: bool,
}

fn rank_gain(base: &BinaryMatrix, extra: &[BitVector]) -> Result<usize> {
    let mut m = base.clone();
    for v in extra {
        m.push_row(v.clone())?;
    }
    Ok(m.rank() - base.rank())
}

/// Zero-sum and independence of the face planes, edge hyperplanes and the
/// all-ones vertex vector.
pub fn verify_global_constraints(ladder: &MetacheckLadder) -> Result<GlobalsReport> {
    let planes_zero_sum =
        ladder.globals2.iter().map(|g| ladder.hz.combine_rows(g).map(|v| v.is_zero())).collect::<Result<Vec<_>>>()?;
    let hyperplanes_zero_sum =
        ladder.globals1.iter().map(|g| ladder.m1.combine_rows(g).map(|v| v.is_zero())).collect::<Result<Vec<_>>>()?;
    let vertex_ones_zero_sum = ladder.m0.combine_rows(&ladder.global0)?.is_zero();
    let planes_rank_gain = rank_gain(&ladder.m1, &ladder.globals2)?;
    let hyperplanes_rank_gain = rank_gain(&ladder.m0, &ladder.globals1)?;
    let face_dependency_dim = ladder.hz.nrows() - ladder.hz.rank();
    let edge_dependency_dim = ladder.m1.nrows() - ladder.m1.rank();
    let vertex_dependency_dim = ladder.m0.nrows() - ladder.m0.rank();
    let (r1, r0) = (ladder.m1.rank(), ladder.m0.rank());
    let pass = planes_zero_sum.iter().all(|&b| b)
        && hyperplanes_zero_sum.iter().all(|&b| b)
        && vertex_ones_zero_sum
        && planes_rank_gain == ladder.globals2.len()
        && hyperplanes_rank_gain == ladder.globals1.len()
        && r1 + planes_rank_gain == face_dependency_dim
        && r0 + hyperplanes_rank_gain == edge_dependency_dim
        && vertex_dependency_dim == 1;
    Ok(GlobalsReport {
        planes_zero_sum,
        planes_rank_gain,
        face_dependency_dim,
        hyperplanes_zero_sum,
        hyperplanes_rank_gain,
        edge_dependency_dim,
        vertex_ones_zero_sum,
        vertex_dependency_dim,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairDemo {
    pub flipped: Vec<usize>,
    /// Edges whose metacheck is violated.
    pub syndrome: Vec<usize>,
    pub violated_count: usize,
    pub m1_row_weight: usize,
    /// For a single flip: the faces whose edge set equals the syndrome.
    pub candidates: Vec<usize>,
    pub corrected: Vec<usize>,
}

/// Metacheck syndrome of simulated measurement errors on the given Z checks; a
/// single flip is located as the unique face with matching edge set.
pub fn single_shot_repair_demo(ladder: &MetacheckLadder, flipped: &[usize]) -> Result<RepairDemo> {
    let nf = ladder.m1.ncols();
    let e = BitVector::from_support(nf, flipped.iter().copied())?;
    let syndrome: Vec<usize> =
        ladder.m1.rows().iter().enumerate().filter(|(_, r)| r.overlap_parity(&e)).map(|(i, _)| i).collect();
    let mut candidates = Vec::new();
    if flipped.len() == 1 {
        let cols = ladder.m1.transpose();
        candidates = (0..nf).filter(|&f| cols.row(f).support() == syndrome).collect();
    }
    let corrected = if candidates.len() == 1 { candidates.clone() } else { Vec::new() };
    Ok(RepairDemo {
        flipped: e.support(),
        violated_count: syndrome.len(),
        syndrome,
        m1_row_weight: ladder.m1.row_weights().into_iter().max().unwrap_or(0),
        candidates,
        corrected,
    })
}

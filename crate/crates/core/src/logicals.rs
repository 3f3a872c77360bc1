//! Logical Pauli representatives, logical classes and distance certificates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binalg::{BinaryMatrix, BitVector, RowBasis};
use crate::codes::{CodeFamily, Codeblock, FamilyKind, ROUGH_AXIS};
use crate::lattice::{classify, CellType, Color, ScaledCoord};
use crate::{Error, Result};

pub const DIRECTIONS: [&str; 4] = ["x", "y", "z", "w"];

/// Direction paired with `j` in block `b`: identity for codeblock 0, then
/// x<->y z<->w (Red), x<->z y<->w (Green), x<->w y<->z (Blue).
pub fn partner(block: usize, j: usize) -> usize {
    j ^ block
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliSupport {
    pub kind: PauliKind,
    pub block: usize,
    pub support: BitVector,
}

/// Logical representatives per block; index `[block][i]`.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    pub xbar: Vec<Vec<BitVector>>,
    pub zbar: Vec<Vec<BitVector>>,
    pub labels: Vec<Vec<String>>,
}

impl LogicalBasis {
    pub fn k(&self, block: usize) -> usize {
        self.xbar[block].len()
    }

    /// Overlap parities `xbar[i] . zbar[j]`.
    pub fn pairing(&self, block: usize) -> BinaryMatrix {
        let x = BinaryMatrix::from_rows(self.xbar[block][0].len(), self.xbar[block].clone()).expect("equal lengths");
        let z = BinaryMatrix::from_rows(self.zbar[block][0].len(), self.zbar[block].clone()).expect("equal lengths");
        x.mul_transpose(&z).expect("equal lengths")
    }
}

/// Membership of a 3-cell in the three-sheet X-bar of direction `j`, block `block`,
/// restricted to the slab `4*slab <= c_j < 4*slab + 4`.
pub fn xbar_member(c: ScaledCoord, block: usize, j: usize, slab: u32) -> bool {
    if c.0[j] / 4 != slab {
        return false;
    }
    let h = partner(block, j);
    let r = c.0[j] % 4;
    match classify(c) {
        Ok(CellType::C3ii) => {
            let half = (0..4).find(|&i| c.0[i] % 4 == 2).expect("one half coordinate");
            half == h && r == if block == 0 { 2 } else { 0 }
        }
        Ok(CellType::C3i) => {
            let zero = (0..4).find(|&i| c.0[i] % 4 == 0).expect("one zero coordinate");
            zero == h && r == if block == 0 { 0 } else { 2 }
        }
        Ok(CellType::C3iii) => r == 1,
        _ => false,
    }
}

/// Base point of the Z-bar string of direction `j` at step `t`.
fn zbar_point(block: usize, j: usize, t: u32, base: u32) -> ScaledCoord {
    let mut p = [base; 4];
    if block == 0 {
        p[j] = 4 * t + 2;
    } else {
        p[j] = 4 * t;
        p[partner(block, j)] = base + 2;
    }
    ScaledCoord(p)
}

fn support_of<F: Fn(ScaledCoord) -> bool>(coords: &[ScaledCoord], f: F) -> BitVector {
    BitVector::from_support(coords.len(), (0..coords.len()).filter(|&q| f(coords[q]))).expect("in range")
}

fn points_to_support(family: &CodeFamily, pts: impl IntoIterator<Item = ScaledCoord>) -> BitVector {
    let idx: Vec<usize> = pts.into_iter().map(|p| family.qubit_of(p).expect("point is a qubit")).collect();
    BitVector::from_support(family.n(), idx).expect("in range")
}

/// Axis strings and three-sheet hyperplanes for all four blocks of a periodic family.
pub fn build_logicals(family: &CodeFamily) -> Result<LogicalBasis> {
    if family.kind != FamilyKind::Periodic {
        return Err(Error::Usage("axis-string representatives need the periodic family".into()));
    }
    let l = family.l as u32;
    let mut xbar = Vec::new();
    let mut zbar = Vec::new();
    for b in 0..4 {
        xbar.push((0..4).map(|j| support_of(&family.coords, |c| xbar_member(c, b, j, 0))).collect());
        zbar.push((0..4).map(|j| points_to_support(family, (0..l).map(|t| zbar_point(b, j, t, 0)))).collect());
    }
    let labels = vec![DIRECTIONS.iter().map(|s| s.to_string()).collect(); 4];
    Ok(LogicalBasis { xbar, zbar, labels })
}

/// X-bar of a bounded block: its rough-axis sheets in the slab `4 <= c_j < 8`.
pub fn bounded_xbar(coords: &[ScaledCoord], block: usize, _l: usize) -> BitVector {
    let j = ROUGH_AXIS[block];
    support_of(coords, |c| xbar_member(c, block, j, 1))
}

/// Z-bar of a bounded block: the rough-axis string through the interior corner.
pub fn bounded_zbar(coords: &[ScaledCoord], block: usize, l: usize) -> BitVector {
    let j = ROUGH_AXIS[block];
    let pts: Vec<usize> = (0..=l as u32)
        .map(|t| zbar_point(block, j, t, 4))
        .filter_map(|p| coords.binary_search(&p).ok())
        .collect();
    BitVector::from_support(coords.len(), pts).expect("in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicalClass {
    NotLogical { violated_row: usize },
    Class { bits: Vec<bool>, stabilizer: bool },
}

impl LogicalClass {
    pub fn bits(&self) -> Option<&[bool]> {
        match self {
            LogicalClass::Class { bits, .. } => Some(bits),
            LogicalClass::NotLogical { .. } => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, LogicalClass::Class { bits, .. } if bits.iter().all(|b| !b))
    }
}

/// Anticommutation pattern of `p` with the conjugate-type representatives of its block.
pub fn logical_class(family: &CodeFamily, basis: &LogicalBasis, p: &PauliSupport) -> LogicalClass {
    let block = &family.blocks[p.block];
    let (checks, same, conj) = match p.kind {
        PauliKind::Z => (&block.hx, &block.hz, &basis.xbar[p.block]),
        PauliKind::X => (&block.hz, &block.hx, &basis.zbar[p.block]),
    };
    if let Some(r) = checks.rows().iter().position(|s| s.overlap_parity(&p.support)) {
        return LogicalClass::NotLogical { violated_row: r };
    }
    let bits: Vec<bool> = conj.iter().map(|c| c.overlap_parity(&p.support)).collect();
    let stabilizer = bits.iter().all(|b| !b) && same.in_row_space(&p.support).unwrap_or(false);
    LogicalClass::Class { bits, stabilizer }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub holds: bool,
    pub pairing_identity: Vec<bool>,
    pub witness: Option<String>,
}

/// Every representative commutes with the opposing stabilizers and the pairing
/// of each block is the identity.
pub fn verify_lemma_a(family: &CodeFamily, basis: &LogicalBasis) -> LemmaReport {
    let mut witness = None;
    let mut pairing_identity = Vec::new();
    for (b, block) in family.blocks.iter().enumerate() {
        for (kind, reps, checks) in [("X", &basis.xbar[b], &block.hz), ("Z", &basis.zbar[b], &block.hx)] {
            for (i, rep) in reps.iter().enumerate() {
                if witness.is_some() {
                    break;
                }
                if let Some(r) = checks.rows().iter().position(|s| s.overlap_parity(rep)) {
                    witness = Some(format!(
                        "block {} logical {kind}_{} has odd overlap with stabilizer row {r}",
                        block.label, basis.labels[b][i]
                    ));
                }
            }
        }
        let p = basis.pairing(b);
        let id = p == BinaryMatrix::identity(basis.k(b));
        if !id && witness.is_none() {
            witness = Some(format!("block {} pairing matrix is not the identity", block.label));
        }
        pairing_identity.push(id);
    }
    LemmaReport { holds: witness.is_none(), pairing_identity, witness }
}

fn block_shift(block: usize) -> [i64; 4] {
    if block == 0 {
        [0; 4]
    } else {
        Color::ALL[block - 1].shift()
    }
}

/// Pairwise-disjoint Z-bar representatives of direction `j`: the L^3 strings along
/// `j` through each C3ii column, the L^3 through each C3i column and the (2L)^3
/// odd-coordinate C3iii strings, translated onto block `block`.
pub fn disjoint_z_reps(family: &CodeFamily, block: usize, j: usize) -> Vec<BitVector> {
    let l = family.l as u32;
    let m = 4 * l;
    let others: Vec<usize> = (0..4).filter(|&i| i != j).collect();
    let shift = block_shift(block);
    let mut reps = Vec::new();
    let mut push = |fixed: [u32; 3], along: Vec<u32>| {
        let pts = along.into_iter().map(|v| {
            let mut p = [0u32; 4];
            p[j] = v;
            for (k, &o) in others.iter().enumerate() {
                p[o] = fixed[k];
            }
            ScaledCoord(p).offset(shift, m)
        });
        reps.push(points_to_support(family, pts));
    };
    for (base, start) in [(0, 2), (2, 0)] {
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    push([4 * a + base, 4 * b + base, 4 * c + base], (0..l).map(|t| 4 * t + start).collect());
                }
            }
        }
    }
    for a in 0..2 * l {
        for b in 0..2 * l {
            for c in 0..2 * l {
                push([2 * a + 1, 2 * b + 1, 2 * c + 1], (0..2 * l).map(|t| 2 * t + 1).collect());
            }
        }
    }
    reps
}

/// The L slab translates of X-bar of direction `j`.
pub fn disjoint_x_reps(family: &CodeFamily, block: usize, j: usize) -> Vec<BitVector> {
    (0..family.l as u32).map(|t| support_of(&family.coords, |c| xbar_member(c, block, j, t))).collect()
}

/// Class shared by all of `reps` if they are pairwise disjoint logicals of one
/// nontrivial class.
fn common_class(
    family: &CodeFamily,
    basis: &LogicalBasis,
    block: usize,
    kind: PauliKind,
    reps: &[BitVector],
) -> Option<Vec<bool>> {
    let mut union = BitVector::zeros(family.n());
    let mut shared: Option<Vec<bool>> = None;
    for r in reps {
        if union.intersects(r) {
            return None;
        }
        union.xor_assign(r);
        let class = logical_class(family, basis, &PauliSupport { kind, block, support: r.clone() });
        let bits = class.bits()?.to_vec();
        if bits.iter().all(|b| !b) || shared.as_ref().is_some_and(|s| *s != bits) {
            return None;
        }
        shared = Some(bits);
    }
    shared
}

fn independent(classes: &[Vec<bool>]) -> bool {
    let k = classes.len();
    let rows: Vec<BitVector> = classes.iter().map(|c| BitVector::from_bools(c)).collect();
    RowBasis::from_rows(k, &rows).rank() == k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveSearch {
    pub max_weight: usize,
    pub candidates: u64,
    /// Lightest nontrivial Z logical found, lexicographically first among equals.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCertificate {
    pub block: String,
    pub dz_lower: usize,
    pub dz_upper: usize,
    pub dx_lower: usize,
    pub dx_upper: usize,
    /// Disjoint Z-bar representatives per direction, split by weight.
    pub z_rep_weights: Vec<(usize, usize)>,
    pub exhaustive: Option<ExhaustiveSearch>,
}

impl DistanceCertificate {
    pub fn dz(&self) -> Option<usize> {
        let exhaustive_hit = self.exhaustive.as_ref().and_then(|e| e.witness.as_ref().map(Vec::len));
        if self.dz_lower == self.dz_upper || exhaustive_hit == Some(self.dz_upper) {
            Some(self.dz_upper)
        } else {
            None
        }
    }

    pub fn dx(&self) -> Option<usize> {
        (self.dx_lower == self.dx_upper).then_some(self.dx_upper)
    }
}

/// Representative-bound certificate for one block; with `exhaustive`, also scans
/// every Z-type operator of weight at most 2 (L=2 only).
pub fn certify_distances(
    family: &CodeFamily,
    basis: &LogicalBasis,
    block: usize,
    exhaustive: bool,
) -> Result<DistanceCertificate> {
    if family.kind != FamilyKind::Periodic {
        return Err(Error::Usage("distance certificates need the periodic family".into()));
    }
    if exhaustive && family.l > 2 {
        return Err(Error::SearchTooLarge(family.l));
    }
    let mut x_counts = Vec::new();
    let mut z_counts = Vec::new();
    let mut x_classes = Vec::new();
    let mut z_classes = Vec::new();
    let mut z_rep_weights = Vec::new();
    for j in 0..4 {
        let xs = disjoint_x_reps(family, block, j);
        let zs = disjoint_z_reps(family, block, j);
        if let Some(c) = common_class(family, basis, block, PauliKind::X, &xs) {
            x_classes.push(c);
            x_counts.push(xs.len());
        }
        if let Some(c) = common_class(family, basis, block, PauliKind::Z, &zs) {
            z_classes.push(c);
            z_counts.push(zs.len());
        }
        let short = zs.iter().filter(|z| z.weight() == family.l).count();
        z_rep_weights.push((short, zs.len() - short));
    }
    // every nontrivial logical anticommutes with one of four independent classes
    let bound = |counts: Vec<usize>, classes: &[Vec<bool>]| {
        if classes.len() == 4 && independent(classes) {
            counts.into_iter().min().unwrap_or(0)
        } else {
            0
        }
    };
    let dz_lower = bound(x_counts, &x_classes);
    let dx_lower = bound(z_counts, &z_classes);
    let dz_upper = basis.zbar[block].iter().map(BitVector::weight).min().unwrap_or(0);
    let dx_upper = basis.xbar[block].iter().map(BitVector::weight).min().unwrap_or(0);
    let exhaustive = exhaustive.then(|| exhaustive_z_search(&family.blocks[block], 2));
    Ok(DistanceCertificate {
        block: family.blocks[block].label.clone(),
        dz_lower,
        dz_upper,
        dx_lower,
        dx_upper,
        z_rep_weights,
        exhaustive,
    })
}

/// Scans all Z-type operators of weight 1 and 2 for a nontrivial logical.
pub fn exhaustive_z_search(block: &Codeblock, max_weight: usize) -> ExhaustiveSearch {
    let n = block.n();
    let sig = block.hx.transpose();
    let stab = RowBasis::from_rows(n, block.hz.rows());
    let singles = (0..n).find(|&q| sig.row(q).is_zero() && !stab.contains(&unit(n, &[q])));
    let mut candidates = n as u64;
    let witness = if let Some(q) = singles {
        Some(vec![q])
    } else if max_weight >= 2 {
        candidates += (n * (n - 1) / 2) as u64;
        (0..n)
            .into_par_iter()
            .filter_map(|a| {
                (a + 1..n).find(|&b| sig.row(a) == sig.row(b) && !stab.contains(&unit(n, &[a, b]))).map(|b| vec![a, b])
            })
            .min()
    } else {
        None
    };
    ExhaustiveSearch { max_weight, candidates, witness }
}

fn unit(n: usize, s: &[usize]) -> BitVector {
    BitVector::from_support(n, s.iter().copied()).expect("in range")
}

/// Completes given X representatives (or, if `None`, a kernel basis) into a dual
/// pair with identity pairing.
pub fn css_logical_pairs(block: &Codeblock, xreps: Option<Vec<BitVector>>) -> Result<(Vec<BitVector>, Vec<BitVector>)> {
    let n = block.n();
    let k = block.params().k;
    let pick = |kernel_of: &BinaryMatrix, modulo: &BinaryMatrix| -> Vec<BitVector> {
        let mut basis = RowBasis::from_rows(n, modulo.rows());
        let mut out = Vec::new();
        for v in kernel_of.kernel_basis() {
            if out.len() == k {
                break;
            }
            if basis.insert(v.clone()) {
                out.push(v);
            }
        }
        out
    };
    let xs = match xreps {
        Some(x) => x,
        None => pick(&block.hz, &block.hx),
    };
    let zs = pick(&block.hx, &block.hz);
    if xs.len() != k || zs.len() != k {
        return Err(Error::LengthMismatch { expected: k, found: xs.len().min(zs.len()) });
    }
    let xm = BinaryMatrix::from_rows(n, xs.clone())?;
    let zm = BinaryMatrix::from_rows(n, zs)?;
    let p = xm.mul_transpose(&zm)?;
    let inv = p.inverse().ok_or(Error::Usage("logical pairing is singular".into()))?;
    // Z' = (P^-1)^T Z gives X Z'^T = I
    let a = inv.transpose();
    let zs = (0..k).map(|i| zm.combine_rows(a.row(i))).collect::<Result<Vec<_>>>()?;
    Ok((xs, zs))
}

/// Logical basis of the 2D pair: straight primal loops for block A, dual loops for B.
pub fn warmup_2d_basis(family: &CodeFamily) -> Result<LogicalBasis> {
    let l = family.l;
    let n = family.n();
    let e = |x: usize, y: usize, d: usize| (x * l + y) * 2 + d;
    let line = |f: &dyn Fn(usize) -> usize| BitVector::from_support(n, (0..l).map(f)).expect("in range");
    let a = vec![line(&|x| e(x, 0, 0)), line(&|y| e(0, y, 1))];
    let b = vec![line(&|y| e(0, y, 0)), line(&|x| e(x, 0, 1))];
    let mut xbar = Vec::new();
    let mut zbar = Vec::new();
    for (block, reps) in family.blocks.iter().zip([a, b]) {
        let (x, z) = css_logical_pairs(block, Some(reps))?;
        xbar.push(x);
        zbar.push(z);
    }
    let labels = vec![vec!["0".to_string(), "1".to_string()]; 2];
    Ok(LogicalBasis { xbar, zbar, labels })
}

/// Kernel-derived logical basis for each block.
pub fn generic_basis(family: &CodeFamily) -> Result<LogicalBasis> {
    let mut xbar = Vec::new();
    let mut zbar = Vec::new();
    let mut labels = Vec::new();
    for block in &family.blocks {
        let (x, z) = css_logical_pairs(block, None)?;
        labels.push((0..x.len()).map(|i| i.to_string()).collect());
        xbar.push(x);
        zbar.push(z);
    }
    Ok(LogicalBasis { xbar, zbar, labels })
}

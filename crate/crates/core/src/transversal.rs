//! Multilinear overlap conditions for transversal CZ, CCZ and CCCZ.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binalg::BitVector;
use crate::codes::CodeFamily;
use crate::logicals::{logical_class, partner, LogicalBasis, LogicalClass, PauliKind, PauliSupport};
use crate::{Error, Result};

/// One operand of an overlap tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperandRef {
    pub block: String,
    pub logical: bool,
    pub index: usize,
    pub site: String,
}

/// Parity condition for tuples containing a fixed number of logical operands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub name: String,
    pub logicals: usize,
    pub tuples: u64,
    pub nonempty: u64,
    pub odd: u64,
    pub pass: bool,
    pub witness: Option<Vec<OperandRef>>,
}

/// Parities of logical-representative intersections, stored as its nonzero index tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingTensor {
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub entries: Vec<Vec<usize>>,
}

impl CouplingTensor {
    pub fn get(&self, idx: &[usize]) -> bool {
        self.entries.binary_search_by(|e| e.as_slice().cmp(idx)).is_ok()
    }

    /// Entries spelled with direction labels, e.g. `"wzyx"`.
    pub fn named_entries(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| e.iter().enumerate().map(|(a, &i)| self.labels[a][i].as_str()).collect())
            .collect()
    }

    /// Number of inputs on which the multilinear form equals one.
    pub fn value_count(&self) -> u64 {
        value_count(&self.dims, &self.entries)
    }

    pub fn with_entries(&self, mut entries: Vec<Vec<usize>>) -> CouplingTensor {
        entries.sort();
        entries.dedup();
        CouplingTensor { dims: self.dims.clone(), labels: self.labels.clone(), entries }
    }
}

/// Number of inputs `(v_1, ..., v_r)`, `v_a` in `F_2^{dims[a]}`, on which
/// `sum over entries of prod_a v_a[e_a]` is one. Invariant under invertible
/// changes of basis in every slot.
pub fn value_count(dims: &[usize], entries: &[Vec<usize>]) -> u64 {
    let r = dims.len();
    let head: usize = dims[..r - 1].iter().sum();
    let last = dims[r - 1];
    let mut count = 0u64;
    for bits in 0u64..1 << head {
        let mut coeff = 0u64;
        for e in entries {
            let mut off = 0;
            let mut on = true;
            for a in 0..r - 1 {
                if bits >> (off + e[a]) & 1 == 0 {
                    on = false;
                    break;
                }
                off += dims[a];
            }
            if on {
                coeff ^= 1 << e[r - 1];
            }
        }
        if coeff != 0 {
            count += 1 << (last - 1);
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorComparison {
    pub target: Vec<String>,
    pub measured_value_count: u64,
    pub target_value_count: u64,
    pub exact_match: bool,
    /// `Some(false)` when the invariant rules out every change of logical basis.
    pub basis_realizable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub arity: usize,
    pub blocks: Vec<String>,
    pub tuples_scanned: u64,
    pub conditions: Vec<ConditionResult>,
    pub tensor: CouplingTensor,
    pub comparison: TensorComparison,
    /// Histogram of stabilizer-only intersection weights, including zero.
    pub stabilizer_weights: BTreeMap<usize, u64>,
}

impl OverlapReport {
    /// All mixed and stabilizer-only conditions hold.
    pub fn parity_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn pass(&self) -> bool {
        self.parity_pass() && self.comparison.exact_match
    }
}

const CONDITION_NAMES: [&str; 4] = ["stabilizers_only", "one_logical", "two_logicals", "three_logicals"];

struct Slot {
    ops: Vec<BitVector>,
    stabilizers: usize,
}

#[derive(Default)]
struct Partial {
    nonempty: Vec<u64>,
    odd: Vec<u64>,
    witness: Vec<Option<Vec<usize>>>,
    tensor: Vec<Vec<usize>>,
    weights: BTreeMap<usize, u64>,
}

impl Partial {
    fn new(arity: usize) -> Self {
        Partial {
            nonempty: vec![0; arity + 1],
            odd: vec![0; arity + 1],
            witness: vec![None; arity + 1],
            ..Default::default()
        }
    }

    fn merge(&mut self, other: Partial) {
        for r in 0..self.odd.len() {
            self.nonempty[r] += other.nonempty[r];
            self.odd[r] += other.odd[r];
            self.witness[r] = match (self.witness[r].take(), other.witness[r].clone()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        self.tensor.extend(other.tensor);
        for (w, c) in other.weights {
            *self.weights.entry(w).or_default() += c;
        }
    }
}

fn descend(slots: &[Slot], depth: usize, acc: &BitVector, idx: &mut Vec<usize>, logicals: usize, out: &mut Partial) {
    let slot = &slots[depth];
    for (i, op) in slot.ops.iter().enumerate() {
        let next = acc.and(op);
        if next.is_zero() {
            continue;
        }
        let logical = usize::from(i >= slot.stabilizers);
        idx.push(i);
        if depth + 1 == slots.len() {
            let r = logicals + logical;
            out.nonempty[r] += 1;
            let w = next.weight();
            if r == 0 {
                *out.weights.entry(w).or_default() += 1;
            }
            if w % 2 == 1 {
                out.odd[r] += 1;
                if r == slots.len() {
                    out.tensor.push(idx.iter().zip(slots).map(|(&i, s)| i - s.stabilizers).collect());
                } else if out.witness[r].as_ref().is_none_or(|w| idx.as_slice() < w.as_slice()) {
                    out.witness[r] = Some(idx.clone());
                }
            }
        } else {
            descend(slots, depth + 1, &next, idx, logicals + logical, out);
        }
        idx.pop();
    }
}

/// Tuples per number of logical operands: coefficients of `prod (s_a + l_a x)`.
fn tuple_counts(slots: &[Slot]) -> Vec<u64> {
    let mut poly = vec![1u64];
    for s in slots {
        let (st, lo) = (s.stabilizers as u64, (s.ops.len() - s.stabilizers) as u64);
        let mut next = vec![0u64; poly.len() + 1];
        for (r, &c) in poly.iter().enumerate() {
            next[r] += c * st;
            next[r + 1] += c * lo;
        }
        poly = next;
    }
    poly
}

/// Enumerates every tuple of X stabilizer rows and X-bar representatives, one
/// operand from each listed block, and records the parity of their common support.
/// Branches are cut as soon as a partial intersection is empty.
pub fn check_overlaps(
    family: &CodeFamily,
    basis: &LogicalBasis,
    blocks: &[usize],
    target: &[Vec<usize>],
) -> OverlapReport {
    let arity = blocks.len();
    let slots: Vec<Slot> = blocks
        .iter()
        .map(|&b| {
            let mut ops = family.blocks[b].hx.rows().to_vec();
            let stabilizers = ops.len();
            ops.extend(basis.xbar[b].iter().cloned());
            Slot { ops, stabilizers }
        })
        .collect();
    let counts = tuple_counts(&slots);
    let full = BitVector::ones(family.n());
    let partials: Vec<Partial> = (0..slots[0].ops.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Partial::new(arity);
            let mut idx = vec![i];
            let logical = usize::from(i >= slots[0].stabilizers);
            let first = full.and(&slots[0].ops[i]);
            if arity == 1 {
                return out;
            }
            descend(&slots, 1, &first, &mut idx, logical, &mut out);
            out
        })
        .collect();
    let mut total = Partial::new(arity);
    for p in partials {
        total.merge(p);
    }
    let describe = |idx: &[usize]| -> Vec<OperandRef> {
        idx.iter()
            .zip(blocks)
            .zip(&slots)
            .map(|((&i, &b), s)| {
                let block = &family.blocks[b];
                if i < s.stabilizers {
                    OperandRef { block: block.label.clone(), logical: false, index: i, site: block.x_sites[i].clone() }
                } else {
                    let j = i - s.stabilizers;
                    OperandRef { block: block.label.clone(), logical: true, index: j, site: basis.labels[b][j].clone() }
                }
            })
            .collect()
    };
    let conditions = (0..arity)
        .map(|r| ConditionResult {
            name: CONDITION_NAMES[r].to_string(),
            logicals: r,
            tuples: counts[r],
            nonempty: total.nonempty[r],
            odd: total.odd[r],
            pass: total.odd[r] == 0,
            witness: total.witness[r].as_deref().map(describe),
        })
        .collect();
    let mut weights = total.weights;
    let nonzero: u64 = weights.values().sum();
    if counts[0] > nonzero {
        weights.insert(0, counts[0] - nonzero);
    }
    let dims: Vec<usize> = blocks.iter().map(|&b| basis.k(b)).collect();
    let labels: Vec<Vec<String>> = blocks.iter().map(|&b| basis.labels[b].clone()).collect();
    let base = CouplingTensor { dims, labels, entries: Vec::new() };
    let tensor = base.with_entries(total.tensor);
    let target = base.with_entries(target.to_vec());
    let comparison = compare(&tensor, &target);
    OverlapReport {
        arity,
        blocks: blocks.iter().map(|&b| family.blocks[b].label.clone()).collect(),
        tuples_scanned: counts.iter().sum(),
        conditions,
        tensor,
        comparison,
        stabilizer_weights: weights,
    }
}

fn compare(measured: &CouplingTensor, target: &CouplingTensor) -> TensorComparison {
    let exact_match = measured.entries == target.entries;
    let (mv, tv) = (measured.value_count(), target.value_count());
    let basis_realizable = if exact_match {
        Some(true)
    } else if mv != tv {
        Some(false)
    } else {
        None
    };
    TensorComparison {
        target: target.named_entries(),
        measured_value_count: mv,
        target_value_count: tv,
        exact_match,
        basis_realizable,
    }
}

/// Diagonal target `[i = j = ...]` over `k` logical qubits.
pub fn diagonal_target(arity: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| vec![i; arity]).collect()
}

/// The four coupled quartets of the periodic octaplex family: direction `j` of
/// codeblock 0 with its partner direction in each colored block.
pub fn octaplex_quartets() -> Vec<Vec<usize>> {
    (0..4).map(|j| (0..4).map(|b| partner(b, j)).collect()).collect()
}

pub fn check_cz(family: &CodeFamily, basis: &LogicalBasis) -> OverlapReport {
    check_overlaps(family, basis, &[0, 1], &diagonal_target(2, basis.k(0)))
}

pub fn check_ccz(family: &CodeFamily, basis: &LogicalBasis) -> OverlapReport {
    check_overlaps(family, basis, &[0, 1, 2], &diagonal_target(3, basis.k(0)))
}

/// Four-block check against the quartet pattern (periodic) or the single
/// all-zero entry (one logical qubit per block).
pub fn check_cccz(family: &CodeFamily, basis: &LogicalBasis) -> OverlapReport {
    let target = if basis.k(0) == 4 { octaplex_quartets() } else { diagonal_target(4, basis.k(0)) };
    check_overlaps(family, basis, &[0, 1, 2, 3], &target)
}

/// Common support of three X-bar representatives from distinct blocks, read as a
/// Z-type operator on the remaining block.
pub fn induced_logical_z(
    family: &CodeFamily,
    basis: &LogicalBasis,
    reps: [(usize, usize); 3],
) -> Result<(usize, LogicalClass)> {
    let nb = family.blocks.len();
    let mut used = vec![false; nb];
    for &(b, i) in &reps {
        if b >= nb {
            return Err(Error::IndexOutOfRange { index: b, len: nb });
        }
        if i >= basis.k(b) {
            return Err(Error::IndexOutOfRange { index: i, len: basis.k(b) });
        }
        if used[b] {
            return Err(Error::Usage(format!("block {b} appears twice")));
        }
        used[b] = true;
    }
    let rest = used.iter().position(|u| !u).ok_or(Error::Usage("no block left over".into()))?;
    let mut support = BitVector::ones(family.n());
    for &(b, i) in &reps {
        support.and_assign(&basis.xbar[b][i]);
    }
    let class = logical_class(family, basis, &PauliSupport { kind: PauliKind::Z, block: rest, support });
    Ok((rest, class))
}

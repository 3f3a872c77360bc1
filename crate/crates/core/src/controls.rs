//! Negative controls: deliberately broken inputs that must produce a witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binalg::{BitVector, RowBasis};
use crate::codes::{build_family_with_colors, CodeFamily};
use crate::lattice::{CellComplex, Color};
use crate::logicals::{build_logicals, verify_lemma_a, LogicalBasis, PauliKind};
use crate::transversal::check_cccz;
use crate::Result;

pub const SEED_VAR: &str = "OCTAPLEX_SEED";

/// Seed from `OCTAPLEX_SEED`, or zero when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlOutcome {
    pub name: String,
    pub perturbation: String,
    pub witnesses: Vec<String>,
}

impl ControlOutcome {
    pub fn detected(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Toggles one qubit of one logical representative, skipping qubits whose
/// single-qubit Pauli is itself a stabilizer.
pub fn perturb_logical<R: Rng>(family: &CodeFamily, basis: &LogicalBasis, rng: &mut R) -> ControlOutcome {
    let mut broken = basis.clone();
    let block = rng.gen_range(0..family.blocks.len());
    let kind = if rng.gen_bool(0.5) { PauliKind::X } else { PauliKind::Z };
    let reps = match kind {
        PauliKind::X => &mut broken.xbar[block],
        PauliKind::Z => &mut broken.zbar[block],
    };
    let i = rng.gen_range(0..reps.len());
    let checks = match kind {
        PauliKind::X => &family.blocks[block].hx,
        PauliKind::Z => &family.blocks[block].hz,
    };
    let stabilizers = RowBasis::from_rows(family.n(), checks.rows());
    let mut q = rng.gen_range(0..family.n());
    while stabilizers.contains(&BitVector::from_support(family.n(), [q]).expect("in range")) {
        q = (q + 1) % family.n();
    }
    reps[i].toggle(q);
    let perturbation = format!(
        "toggled qubit {} in {:?}-logical {} of block {}",
        family.qubits[q], kind, basis.labels[block][i], family.blocks[block].label
    );
    let mut witnesses = Vec::new();
    if let Some(w) = verify_lemma_a(family, &broken).witness {
        witnesses.push(w);
    }
    if kind == PauliKind::X && family.blocks.len() == 4 {
        let report = check_cccz(family, &broken);
        for c in report.conditions.iter().filter(|c| !c.pass) {
            witnesses.push(format!("{} has {} odd tuples, first {:?}", c.name, c.odd, c.witness));
        }
    }
    ControlOutcome { name: "logical_perturbation".into(), perturbation, witnesses }
}

/// Gives one vertex a different color and rebuilds the family.
pub fn recolor_vertex<R: Rng>(cx: &CellComplex, rng: &mut R) -> Result<ControlOutcome> {
    let mut colors: Vec<Color> = (0..cx.count(0)).map(|v| cx.vertex_color(v)).collect();
    let v = rng.gen_range(0..colors.len());
    let old = colors[v];
    let others: Vec<Color> = Color::ALL.into_iter().filter(|&c| c != old).collect();
    let new = others[rng.gen_range(0..others.len())];
    colors[v] = new;
    let family = build_family_with_colors(cx, &colors)?;
    let perturbation = format!("vertex {:?} recolored {old:?} -> {new:?}", cx.cells(0)[v]);
    let mut witnesses = Vec::new();
    for b in &family.blocks {
        if let Some((x, z)) = b.css_violation() {
            witnesses.push(format!("block {} X row {} anticommutes with Z row {z}", b.label, b.x_sites[x]));
        } else if b.params().k != 4 {
            witnesses.push(format!("block {} has k = {}", b.label, b.params().k));
        }
    }
    let basis = build_logicals(&family)?;
    if let Some(w) = verify_lemma_a(&family, &basis).witness {
        witnesses.push(w);
    }
    let report = check_cccz(&family, &basis);
    for c in report.conditions.iter().filter(|c| !c.pass) {
        witnesses.push(format!("{} has {} odd tuples, first {:?}", c.name, c.odd, c.witness));
    }
    Ok(ControlOutcome { name: "vertex_recoloring".into(), perturbation, witnesses })
}

/// Replaces one boundary entry of a 3-cell with a foreign 2-cell.
pub fn corrupt_complex<R: Rng>(cx: &CellComplex, rng: &mut R) -> ControlOutcome {
    let mut broken = cx.clone();
    let i = rng.gen_range(0..cx.count(3));
    let mut f = rng.gen_range(0..cx.count(2));
    while cx.boundary(3, i).contains(&f) {
        f = (f + 1) % cx.count(2);
    }
    broken.corrupt_boundary(3, i, f);
    let perturbation = format!("boundary of {:?} given foreign face {:?}", cx.cells(3)[i], cx.cells(2)[f]);
    let witnesses = broken
        .boundary_squared_violation()
        .map(|(d, cell, face)| format!("boundary of boundary of {d}-cell {cell:?} contains {face:?} an odd number of times"))
        .into_iter()
        .collect();
    ControlOutcome { name: "corrupted_complex".into(), perturbation, witnesses }
}

/// Flips the color of one cube of the 3D triple.
pub fn recolor_cube<R: Rng>(l: usize, rng: &mut R) -> Result<ControlOutcome> {
    let target = [rng.gen_range(0..l), rng.gen_range(0..l), rng.gen_range(0..l)];
    let family = crate::codes::build_3d_triple_with_coloring(l, |p| ((p[0] + p[1] + p[2]) % 2 == 0) != (p == target))?;
    let perturbation = format!("cube c({},{},{}) recolored", target[0], target[1], target[2]);
    let mut witnesses = Vec::new();
    for b in &family.blocks {
        if let Some((x, z)) = b.css_violation() {
            witnesses.push(format!("block {} X row {} anticommutes with Z row {z}", b.label, b.x_sites[x]));
        }
    }
    if witnesses.is_empty() {
        match crate::logicals::generic_basis(&family) {
            Ok(basis) => {
                let report = crate::transversal::check_ccz(&family, &basis);
                for c in report.conditions.iter().filter(|c| !c.pass) {
                    witnesses.push(format!("{} has {} odd tuples, first {:?}", c.name, c.odd, c.witness));
                }
            }
            Err(e) => witnesses.push(format!("no logical basis: {e}")),
        }
    }
    Ok(ControlOutcome { name: "cube_recoloring".into(), perturbation, witnesses })
}

/// Pairs the first 2D block with itself instead of with its dual.
pub fn self_paired_2d(family: &CodeFamily, basis: &LogicalBasis) -> ControlOutcome {
    let mut same = family.clone();
    same.blocks[1] = same.blocks[0].clone();
    let mut b = basis.clone();
    b.xbar[1] = b.xbar[0].clone();
    b.zbar[1] = b.zbar[0].clone();
    let report = crate::transversal::check_cz(&same, &b);
    let witnesses = report
        .conditions
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} has {} odd tuples, first {:?}", c.name, c.odd, c.witness))
        .collect();
    ControlOutcome { name: "self_paired_2d".into(), perturbation: "block A paired with itself".into(), witnesses }
}

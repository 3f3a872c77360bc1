//! Deterministic verification report assembled from the library checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::binalg::BitVector;
use crate::codes::{self, boundary_weight, CodeFamily, FamilyKind};
use crate::controls::{self, ControlOutcome};
use crate::lattice::{build_octaplex, CellComplex};
use crate::logicals::{self, LogicalBasis, DIRECTIONS};
use crate::metachecks;
use crate::phasepoly::{composite_sandwich, composite_var, sandwich_identity, PhasePolynomial};
use crate::transversal::{self, OverlapReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionName {
    Lattice,
    Codes,
    Transversal,
    Distance,
    Metachecks,
    Phase,
    Controls,
}

impl SectionName {
    pub const ALL: [SectionName; 7] = [
        SectionName::Lattice,
        SectionName::Codes,
        SectionName::Transversal,
        SectionName::Distance,
        SectionName::Metachecks,
        SectionName::Phase,
        SectionName::Controls,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SectionName::Lattice => "lattice",
            SectionName::Codes => "codes",
            SectionName::Transversal => "transversal",
            SectionName::Distance => "distance",
            SectionName::Metachecks => "metachecks",
            SectionName::Phase => "phase",
            SectionName::Controls => "controls",
        }
    }
}

impl FromStr for SectionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SectionName::ALL
            .into_iter()
            .find(|n| n.as_str() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown section {s:?}")))
    }
}

pub fn parse_sections(csv: &str) -> Result<BTreeSet<SectionName>> {
    csv.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Invariants must hold for any correct build; claims compare against stated values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Invariant,
    Claim,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub status: Status,
    pub checks: Vec<Check>,
    pub witnesses: Vec<String>,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl Section {
    fn skipped(reason: &str) -> Self {
        Section { status: Status::Skipped, checks: Vec::new(), witnesses: Vec::new(), data: json!({ "reason": reason }), seconds: None }
    }
}

#[derive(Default)]
struct Builder {
    checks: Vec<Check>,
    witnesses: Vec<String>,
    data: serde_json::Map<String, Value>,
}

impl Builder {
    fn invariant(&mut self, name: &str, pass: bool) {
        self.checks.push(Check { name: name.into(), kind: CheckKind::Invariant, pass });
    }

    fn claim(&mut self, name: &str, pass: bool) {
        self.checks.push(Check { name: name.into(), kind: CheckKind::Claim, pass });
    }

    fn put<T: Serialize>(&mut self, key: &str, value: T) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    fn witness(&mut self, w: String) {
        self.witnesses.push(w);
    }

    fn finish(self) -> Section {
        let status = if self.checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
        Section { status, checks: self.checks, witnesses: self.witnesses, data: Value::Object(self.data), seconds: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub family: FamilyKind,
    #[serde(rename = "L")]
    pub l: usize,
    pub sections: BTreeMap<String, Section>,
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl VerificationReport {
    fn active(&self) -> impl Iterator<Item = &Section> {
        self.sections.values().filter(|s| s.status != Status::Skipped)
    }

    pub fn pass(&self) -> bool {
        self.active().all(|s| s.status == Status::Pass)
    }

    /// Only invariant checks, ignoring claim comparisons.
    pub fn invariants_pass(&self) -> bool {
        self.active().flat_map(|s| &s.checks).filter(|c| c.kind == CheckKind::Invariant).all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "octaplex {} family={} L={}", self.tool_version, family_name(self.family), self.l);
        for (name, s) in &self.sections {
            let status = match s.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let secs = self.timings.iter().find(|(n, _)| n == name).map(|(_, t)| format!(" ({t:.3}s)")).unwrap_or_default();
            let _ = writeln!(out, "  {name:<12} {status}{secs}");
            for c in s.checks.iter().filter(|c| !c.pass) {
                let kind = match c.kind {
                    CheckKind::Invariant => "invariant",
                    CheckKind::Claim => "claim",
                };
                let _ = writeln!(out, "    failed {kind}: {}", c.name);
            }
            for w in &s.witnesses {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        out
    }
}

pub fn family_name(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Periodic => "octaplex",
        FamilyKind::Bounded => "octaplex-bounded",
        FamilyKind::TwoD => "2d",
        FamilyKind::ThreeD => "3d",
    }
}

pub fn parse_family(s: &str) -> Result<FamilyKind> {
    match s {
        "octaplex" | "periodic" => Ok(FamilyKind::Periodic),
        "octaplex-bounded" | "bounded" => Ok(FamilyKind::Bounded),
        "2d" => Ok(FamilyKind::TwoD),
        "3d" => Ok(FamilyKind::ThreeD),
        other => Err(Error::Usage(format!("unknown family {other:?}"))),
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub sections: Option<BTreeSet<SectionName>>,
    pub timings: bool,
    /// Exhaustive weight-2 distance search (L=2 only).
    pub exhaustive: bool,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { sections: None, timings: false, exhaustive: true, seed: 0 }
    }
}

/// Checks that `L` is admissible for `kind`.
pub fn validate(kind: FamilyKind, l: usize) -> Result<()> {
    if l < 2 {
        return Err(Error::LatticeTooSmall(l));
    }
    if kind == FamilyKind::ThreeD && l % 2 == 1 {
        return Err(Error::OddLattice(l));
    }
    Ok(())
}

struct Runner {
    selected: Option<BTreeSet<SectionName>>,
    timings_in_json: bool,
    sections: BTreeMap<String, Section>,
    timings: Vec<(String, f64)>,
}

impl Runner {
    fn wanted(&self, name: SectionName) -> bool {
        self.selected.as_ref().is_none_or(|s| s.contains(&name))
    }

    fn run<F: FnOnce() -> Result<Section>>(&mut self, name: SectionName, f: F) -> Result<()> {
        if !self.wanted(name) {
            self.sections.insert(name.as_str().into(), Section::skipped("not selected"));
            return Ok(());
        }
        let start = Instant::now();
        let mut section = f()?;
        let secs = start.elapsed().as_secs_f64();
        if self.timings_in_json {
            section.seconds = Some(secs);
        }
        self.timings.push((name.as_str().into(), secs));
        self.sections.insert(name.as_str().into(), section);
        Ok(())
    }

    fn skip(&mut self, name: SectionName, reason: &str) {
        self.sections.insert(name.as_str().into(), Section::skipped(reason));
    }
}

pub fn build_report(kind: FamilyKind, l: usize, opts: &ReportOptions) -> Result<VerificationReport> {
    validate(kind, l)?;
    let mut r = Runner {
        selected: opts.sections.clone(),
        timings_in_json: opts.timings,
        sections: BTreeMap::new(),
        timings: Vec::new(),
    };
    match kind {
        FamilyKind::Periodic => periodic(&mut r, l, opts)?,
        FamilyKind::Bounded => bounded(&mut r, l, opts)?,
        FamilyKind::TwoD => two_d(&mut r, l, opts)?,
        FamilyKind::ThreeD => three_d(&mut r, l, opts)?,
    }
    Ok(VerificationReport {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        family: kind,
        l,
        sections: r.sections,
        timings: r.timings,
    })
}

fn distinct_weights(ws: Vec<usize>) -> Vec<usize> {
    ws.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

fn lattice_section(cx: &CellComplex) -> Section {
    let mut b = Builder::default();
    let l4 = cx.l().pow(4);
    let expected = [6, 48, 64, 24, 2].map(|c| c * l4);
    b.put("counts", cx.counts());
    b.put("expected_counts", expected);
    b.put("euler_characteristic", cx.euler_characteristic());
    let dd = cx.boundary_squared_violation();
    if let Some((d, c, f)) = dd {
        b.witness(format!("boundary of boundary of {d}-cell {c:?} contains {f:?}"));
    }
    let nearest = cx.cross_check_nearest();
    if let Err(m) = nearest {
        b.witness(format!("boundary of {}-cell {:?} differs from its nearest cells", m.dim, m.cell));
    }
    b.invariant("boundary_squared_zero", dd.is_none());
    b.invariant("boundary_matches_nearest_cells", nearest.is_ok());
    b.invariant("euler_characteristic_zero", cx.euler_characteristic() == 0);
    b.claim("cell_counts", cx.counts() == expected);
    b.finish()
}

fn block_table(family: &CodeFamily) -> Vec<Value> {
    family
        .blocks
        .iter()
        .map(|blk| {
            let p = blk.params();
            json!({
                "label": blk.label,
                "n": p.n,
                "k": p.k,
                "rank_hx": p.rank_hx,
                "rank_hz": p.rank_hz,
                "x_rows": blk.hx.nrows(),
                "z_rows": blk.hz.nrows(),
                "x_weights": distinct_weights(blk.hx.row_weights()),
                "z_weights": distinct_weights(blk.hz.row_weights()),
            })
        })
        .collect()
}

fn css_checks(b: &mut Builder, family: &CodeFamily) {
    let mut ok = true;
    for blk in &family.blocks {
        if let Some((x, z)) = blk.css_violation() {
            ok = false;
            b.witness(format!("block {} X row {} anticommutes with Z row {z}", blk.label, blk.x_sites[x]));
        }
    }
    b.invariant("css_commutation", ok);
}

fn lemma_checks(b: &mut Builder, family: &CodeFamily, basis: &LogicalBasis) {
    let lemma = logicals::verify_lemma_a(family, basis);
    if let Some(w) = &lemma.witness {
        b.witness(w.clone());
    }
    b.invariant("logicals_commute_and_pair", lemma.holds);
    b.put("logical_pairing_identity", &lemma.pairing_identity);
}

fn support_labels(family: &CodeFamily, v: &BitVector) -> Vec<String> {
    v.ones_iter().map(|q| family.qubits[q].clone()).collect()
}

fn overlap_checks(b: &mut Builder, rep: &OverlapReport) {
    for c in &rep.conditions {
        if let Some(w) = &c.witness {
            let ops: Vec<String> = w.iter().map(|o| format!("{}:{}", o.block, o.site)).collect();
            b.witness(format!("{}: odd overlap of [{}]", c.name, ops.join(", ")));
        }
        b.invariant(&c.name, c.pass);
    }
    b.put("overlaps", rep);
    b.put("tensor_entries", rep.tensor.named_entries());
}

fn periodic(r: &mut Runner, l: usize, opts: &ReportOptions) -> Result<()> {
    let start = Instant::now();
    let cx = build_octaplex(l)?;
    let family = codes::build_family(&cx)?;
    let basis = logicals::build_logicals(&family)?;
    let build_secs = start.elapsed().as_secs_f64();
    r.timings.push(("build".into(), build_secs));
    let l3 = l.pow(3);

    r.run(SectionName::Lattice, || Ok(lattice_section(&cx)))?;

    r.run(SectionName::Codes, || {
        let mut b = Builder::default();
        b.put("blocks", block_table(&family));
        css_checks(&mut b, &family);
        let mut faces: Vec<Vec<usize>> = family.blocks[0].hz.rows().iter().map(BitVector::support).collect();
        faces.sort();
        b.invariant("block0_faces_equal_color_intersections", codes::block0_z_by_intersection(&cx) == faces);
        lemma_checks(&mut b, &family, &basis);
        let params: Vec<_> = family.blocks.iter().map(|blk| blk.params()).collect();
        b.claim("n_equals_24L4", params.iter().all(|p| p.n == 24 * l.pow(4)));
        b.claim("k_equals_4", params.iter().all(|p| p.k == 4));
        b.claim("x_weights_24", family.blocks.iter().all(|blk| distinct_weights(blk.hx.row_weights()) == [24]));
        b.claim("z_weights_3", family.blocks.iter().all(|blk| distinct_weights(blk.hz.row_weights()) == [3]));
        let zw = &basis.zbar[0][3];
        let xw = &basis.xbar[0][3];
        b.put("zbar_w0_support", support_labels(&family, zw));
        b.put("xbar_w0_meets_zbar_w0", support_labels(&family, &xw.and(zw)));
        b.put(
            "logical_weights",
            json!({
                "zbar": basis.zbar.iter().map(|v| v.iter().map(BitVector::weight).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "xbar": basis.xbar.iter().map(|v| v.iter().map(BitVector::weight).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        );
        Ok(b.finish())
    })?;

    let mut measured_tensor: Option<Vec<Vec<usize>>> = None;
    r.run(SectionName::Transversal, || {
        let mut b = Builder::default();
        let rep = transversal::check_cccz(&family, &basis);
        overlap_checks(&mut b, &rep);
        b.claim("at_least_1e6_tuples", rep.tuples_scanned >= 1_000_000);
        b.claim("tensor_equals_quartets", rep.comparison.exact_match);
        if !rep.comparison.exact_match {
            let extra: Vec<String> =
                rep.tensor.named_entries().into_iter().filter(|e| !rep.comparison.target.contains(e)).collect();
            b.witness(format!("tensor entries outside the quartet list: {}", extra.join(" ")));
        }
        let mut induced = Vec::new();
        for reps in [[(1, 2), (2, 1), (3, 0)], [(1, 2), (2, 0), (3, 1)]] {
            let (rest, class) = transversal::induced_logical_z(&family, &basis, reps)?;
            let name: String = reps.iter().map(|&(_, d)| DIRECTIONS[d]).collect();
            induced.push(json!({
                "x_logicals": name,
                "block": family.blocks[rest].label,
                "class": class.bits().map(|bs| bs.iter().map(|&x| u8::from(x)).collect::<Vec<_>>()),
            }));
        }
        b.put("induced_z", induced);
        measured_tensor = Some(rep.tensor.entries.clone());
        Ok(b.finish())
    })?;

    r.run(SectionName::Distance, || {
        let mut b = Builder::default();
        let exhaustive = opts.exhaustive && l == 2;
        let mut certs = Vec::new();
        for blk in 0..4 {
            certs.push(logicals::certify_distances(&family, &basis, blk, exhaustive)?);
        }
        b.invariant("dz_certified", certs.iter().all(|c| c.dz() == Some(l)));
        b.invariant("dx_certified", certs.iter().all(|c| c.dx().is_some()));
        b.claim("dx_equals_8L3", certs.iter().all(|c| c.dx() == Some(8 * l3)));
        b.claim("disjoint_zbar_count_8L3", certs.iter().all(|c| c.dx_lower == 8 * l3));
        if exhaustive {
            let hit = certs.iter().all(|c| c.exhaustive.as_ref().and_then(|e| e.witness.as_ref()).map(Vec::len) == Some(l));
            b.invariant("exhaustive_search_hits_L", hit);
            if let Some(w) = certs[0].exhaustive.as_ref().and_then(|e| e.witness.clone()) {
                b.put("lightest_z_logical", w.iter().map(|&q| family.qubits[q].clone()).collect::<Vec<_>>());
            }
        }
        for c in certs.iter().filter(|c| c.dx() != Some(8 * l3)) {
            b.witness(format!("block {}: d_X certified as {:?}, stated 8L^3 = {}", c.block, c.dx(), 8 * l3));
        }
        b.put("certificates", &certs);
        Ok(b.finish())
    })?;

    r.run(SectionName::Metachecks, || {
        let mut b = Builder::default();
        let ladder = metachecks::build_ladder(&cx, &family.blocks[0])?;
        let counting = metachecks::verify_counting(&ladder)?;
        let globals = metachecks::verify_global_constraints(&ladder)?;
        b.invariant("m1_hz_zero", counting.m1_hz_zero);
        b.invariant("m0_m1_zero", counting.m0_m1_zero);
        b.invariant("hx_rows_sum_zero", counting.hx_rows_sum_zero);
        b.claim("ranks_match_formulas", counting.ranks == counting.expected && counting.k == 4);
        b.claim("row_weights_4_and_16", counting.m1_row_weights == [4] && counting.m0_row_weights == [16]);
        b.claim("total_generators_24L4_minus_4", counting.total_generators == 24 * l.pow(4) - 4);
        b.invariant("globals_zero_sum_and_independent", globals.pass);
        let single = metachecks::single_shot_repair_demo(&ladder, &[0])?;
        let pair_faces: Vec<usize> = ladder.m1.row(0).support().into_iter().take(2).collect();
        let pair = metachecks::single_shot_repair_demo(&ladder, &pair_faces)?;
        b.invariant("single_flip_located", single.corrected == [0]);
        b.put("counting", &counting);
        b.put("globals", &globals);
        b.put("single_flip", &single);
        b.put("adjacent_flips", &pair);
        Ok(b.finish())
    })?;

    r.run(SectionName::Phase, || {
        let mut b = Builder::default();
        let fig1 = sandwich_identity(4, 0)?;
        b.claim("cccz_sandwich_is_ccz", fig1 == PhasePolynomial::monomial(&[1, 2, 3]));
        let mut all = true;
        for arity in 2..=4 {
            for flip in 0..arity {
                let rest: Vec<usize> = (0..arity).filter(|&v| v != flip).collect();
                all &= sandwich_identity(arity, flip)? == PhasePolynomial::monomial(&rest);
            }
        }
        b.invariant("sandwich_all_arities", all);
        let names: Vec<String> = (0..4)
            .flat_map(|blk| DIRECTIONS.iter().map(move |d| format!("{}{}", codes::OCTAPLEX_LABELS[blk], d)))
            .collect();
        let quartets = transversal::octaplex_quartets();
        let fig2 = composite_sandwich(&quartets, 0, 3);
        let want = PhasePolynomial::monomial(&[composite_var(1, 2), composite_var(2, 1), composite_var(3, 0)]);
        b.claim("quartet_round_sandwich_leaves_one_ccz", fig2 == want);
        b.put("cccz_sandwich", fig1.to_string());
        b.put("quartet_round_sandwich", fig2.display_with(&names).to_string());
        let measured = match measured_tensor.take() {
            Some(t) => t,
            None => transversal::check_cccz(&family, &basis).tensor.entries,
        };
        let fig2m = composite_sandwich(&measured, 0, 3);
        b.put("measured_round_sandwich", fig2m.display_with(&names).to_string());
        b.put("measured_round_ccz_count", fig2m.len());
        Ok(b.finish())
    })?;

    r.run(SectionName::Controls, || {
        let mut rng = controls::rng(opts.seed);
        let outcomes = vec![
            controls::perturb_logical(&family, &basis, &mut rng),
            controls::recolor_vertex(&cx, &mut rng)?,
            controls::corrupt_complex(&cx, &mut rng),
        ];
        Ok(controls_section(outcomes))
    })?;
    Ok(())
}

fn controls_section(outcomes: Vec<ControlOutcome>) -> Section {
    let mut b = Builder::default();
    for o in &outcomes {
        b.invariant(&format!("{}_detected", o.name), o.detected());
    }
    b.put("outcomes", &outcomes);
    b.finish()
}

fn bounded(r: &mut Runner, l: usize, opts: &ReportOptions) -> Result<()> {
    let start = Instant::now();
    let bf = codes::build_bounded_family(l)?;
    let basis = bf.basis();
    r.timings.push(("build".into(), start.elapsed().as_secs_f64()));
    let family = &bf.family;

    r.run(SectionName::Lattice, || {
        let mut b = Builder::default();
        let cx = build_octaplex(l + 1)?;
        let dd = cx.boundary_squared_violation();
        b.invariant("boundary_squared_zero", dd.is_none());
        b.put("region", format!("all scaled coordinates in [2, {}]", 4 * l));
        b.put("qubits", family.n());
        b.put("ambient_counts", cx.counts());
        Ok(b.finish())
    })?;

    r.run(SectionName::Codes, || {
        let mut b = Builder::default();
        b.put("blocks", block_table(family));
        css_checks(&mut b, family);
        lemma_checks(&mut b, family, &basis);
        b.claim("k_equals_1", family.blocks.iter().all(|blk| blk.params().k == 1));
        let formula_ok = bf.x_boundary.iter().flatten().all(|&(w, nb)| w == boundary_weight(nb));
        b.claim("x_weights_match_boundary_formula", formula_ok);
        let mut x_table = BTreeMap::new();
        for &(w, nb) in bf.x_boundary.iter().flatten() {
            x_table.insert(nb, w);
        }
        b.put("x_weight_by_boundary_count", x_table);
        let mut z_hist: BTreeMap<usize, usize> = BTreeMap::new();
        for blk in &family.blocks {
            for w in blk.hz.row_weights() {
                *z_hist.entry(w).or_default() += 1;
            }
        }
        let cut_ok = z_hist.keys().all(|&w| w == 2 || w == 3);
        b.claim("boundary_z_weights_2", cut_ok);
        if !cut_ok {
            let light: Vec<String> = z_hist.iter().filter(|(&w, _)| w < 2).map(|(w, c)| format!("{c} rows of weight {w}")).collect();
            b.witness(format!("Z rows lighter than 2 across the four blocks: {}", light.join(", ")));
        }
        b.put("z_weight_histogram", z_hist);
        b.put("completion_rows", &bf.completion_rows);
        b.put("uncovered_qubits", &bf.uncovered);
        b.put("xbar_weights", bf.xbar.iter().map(BitVector::weight).collect::<Vec<_>>());
        b.put("zbar_supports", bf.zbar.iter().map(|z| support_labels(family, z)).collect::<Vec<_>>());
        Ok(b.finish())
    })?;

    r.run(SectionName::Transversal, || {
        let mut b = Builder::default();
        let rep = transversal::check_cccz(family, &basis);
        overlap_checks(&mut b, &rep);
        b.claim("single_cccz", rep.comparison.exact_match);
        Ok(b.finish())
    })?;

    r.skip(SectionName::Distance, "periodic family only");
    r.skip(SectionName::Metachecks, "periodic family only");
    r.skip(SectionName::Phase, "periodic family only");
    r.run(SectionName::Controls, || {
        let mut rng = controls::rng(opts.seed);
        Ok(controls_section(vec![controls::perturb_logical(family, &basis, &mut rng)]))
    })?;
    Ok(())
}

fn two_d(r: &mut Runner, l: usize, opts: &ReportOptions) -> Result<()> {
    let family = codes::build_2d_pair(l)?;
    let basis = logicals::warmup_2d_basis(&family)?;
    r.skip(SectionName::Lattice, "octaplex families only");
    r.run(SectionName::Codes, || {
        let mut b = Builder::default();
        b.put("blocks", block_table(&family));
        css_checks(&mut b, &family);
        lemma_checks(&mut b, &family, &basis);
        b.claim("k_equals_2", family.blocks.iter().all(|blk| blk.params().k == 2));
        Ok(b.finish())
    })?;
    r.run(SectionName::Transversal, || {
        let mut b = Builder::default();
        let rep = transversal::check_cz(&family, &basis);
        overlap_checks(&mut b, &rep);
        let k = basis.k(0);
        let pairing: Vec<Vec<u8>> =
            (0..k).map(|i| (0..basis.k(1)).map(|j| u8::from(rep.tensor.get(&[i, j]))).collect()).collect();
        b.put("pairing_matrix", pairing);
        Ok(b.finish())
    })?;
    r.skip(SectionName::Distance, "periodic family only");
    r.skip(SectionName::Metachecks, "periodic family only");
    r.skip(SectionName::Phase, "periodic family only");
    r.run(SectionName::Controls, || {
        let mut rng = controls::rng(opts.seed);
        Ok(controls_section(vec![
            controls::perturb_logical(&family, &basis, &mut rng),
            controls::self_paired_2d(&family, &basis),
        ]))
    })?;
    Ok(())
}

fn three_d(r: &mut Runner, l: usize, opts: &ReportOptions) -> Result<()> {
    let family = codes::build_3d_triple(l)?;
    let basis = logicals::generic_basis(&family)?;
    r.skip(SectionName::Lattice, "octaplex families only");
    r.run(SectionName::Codes, || {
        let mut b = Builder::default();
        b.put("blocks", block_table(&family));
        css_checks(&mut b, &family);
        lemma_checks(&mut b, &family, &basis);
        b.claim("k_equals_3", family.blocks.iter().all(|blk| blk.params().k == 3));
        Ok(b.finish())
    })?;
    r.run(SectionName::Transversal, || {
        let mut b = Builder::default();
        let rep = transversal::check_ccz(&family, &basis);
        overlap_checks(&mut b, &rep);
        b.claim("stabilizer_triples_weight_0_or_2", rep.stabilizer_weights.keys().all(|&w| w == 0 || w == 2));
        b.claim("tensor_is_diagonal", rep.comparison.exact_match);
        if rep.comparison.basis_realizable == Some(false) {
            b.witness(format!(
                "tensor value count {} differs from the diagonal's {}; no logical basis makes it diagonal",
                rep.comparison.measured_value_count, rep.comparison.target_value_count
            ));
        }
        Ok(b.finish())
    })?;
    r.skip(SectionName::Distance, "periodic family only");
    r.skip(SectionName::Metachecks, "periodic family only");
    r.skip(SectionName::Phase, "periodic family only");
    r.run(SectionName::Controls, || {
        let mut rng = controls::rng(opts.seed);
        Ok(controls_section(vec![
            controls::perturb_logical(&family, &basis, &mut rng),
            controls::recolor_cube(l, &mut rng)?,
        ]))
    })?;
    Ok(())
}

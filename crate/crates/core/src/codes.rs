//! CSS codeblocks over a shared qubit index.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::binalg::{BinaryMatrix, BitVector, RowBasis};
use crate::lattice::{build_octaplex, hypercell_offsets, CellComplex, CellType, Color, ScaledCoord};
use crate::logicals;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "octaplex")]
    Periodic,
    #[serde(rename = "octaplex-bounded")]
    Bounded,
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "3d")]
    ThreeD,
}

/// One CSS codeblock: X and Z check matrices over the family's qubits.
#[derive(Clone, Debug)]
pub struct Codeblock {
    pub label: String,
    pub hx: BinaryMatrix,
    pub hz: BinaryMatrix,
    /// Site label of each X generator.
    pub x_sites: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub rank_hx: usize,
    pub rank_hz: usize,
    pub k: usize,
}

impl Codeblock {
    pub fn n(&self) -> usize {
        self.hx.ncols()
    }

    /// `k` is only meaningful when the checks commute; it saturates at zero otherwise.
    pub fn params(&self) -> CodeParams {
        let rank_hx = self.hx.rank();
        let rank_hz = self.hz.rank();
        CodeParams { n: self.n(), rank_hx, rank_hz, k: self.n().saturating_sub(rank_hx + rank_hz) }
    }

    /// First (X row, Z row) pair with odd overlap.
    pub fn css_violation(&self) -> Option<(usize, usize)> {
        for (i, x) in self.hx.rows().iter().enumerate() {
            for (j, z) in self.hz.rows().iter().enumerate() {
                if x.overlap_parity(z) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Codeblocks sharing one qubit index.
#[derive(Clone, Debug)]
pub struct CodeFamily {
    pub kind: FamilyKind,
    pub l: usize,
    pub qubits: Vec<String>,
    /// Octaplex families only: the 3-cell behind each qubit.
    pub coords: Vec<ScaledCoord>,
    pub blocks: Vec<Codeblock>,
}

impl CodeFamily {
    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit_of(&self, c: ScaledCoord) -> Option<usize> {
        self.coords.binary_search(&c).ok()
    }
}

pub const OCTAPLEX_LABELS: [&str; 4] = ["0", "red", "green", "blue"];

fn support_vec(n: usize, s: &[usize]) -> BitVector {
    BitVector::from_support(n, s.iter().copied()).expect("support within qubit range")
}

/// Nonempty intersections of one row from each of `blocks`, enumerated through
/// shared qubits and deduplicated by sorted support.
pub fn common_intersections(n: usize, blocks: &[&[Vec<usize>]]) -> Vec<Vec<usize>> {
    let mut by_qubit: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; blocks.len()];
    for (b, rows) in blocks.iter().enumerate() {
        for (r, s) in rows.iter().enumerate() {
            for &q in s {
                by_qubit[b][q].push(r);
            }
        }
    }
    let mut out = BTreeSet::new();
    for q in 0..n {
        let mut partial: Vec<Vec<usize>> = vec![(0..n).collect()];
        for (b, rows) in blocks.iter().enumerate() {
            let mut next = Vec::new();
            for acc in &partial {
                for &r in &by_qubit[b][q] {
                    next.push(intersect_sorted(acc, &rows[r]));
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().filter(|s| !s.is_empty()));
    }
    out.into_iter().collect()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn coord_label(c: ScaledCoord) -> String {
    format!("{c:?}")
}

/// X supports of codeblock 0: each 4-cell's 24 boundary 3-cells.
fn hypercell_supports(cx: &CellComplex) -> Vec<Vec<usize>> {
    (0..cx.count(4)).map(|h| cx.boundary(4, h).to_vec()).collect()
}

/// X supports for a vertex coloring: each vertex of `color` with its 24 incident 3-cells.
fn vertex_supports(cx: &CellComplex, colors: &[Color], color: Color) -> (Vec<Vec<usize>>, Vec<String>) {
    let mut rows = Vec::new();
    let mut sites = Vec::new();
    for v in 0..cx.count(0) {
        if colors[v] == color {
            rows.push(cx.incident_cells(0, v, 3).expect("valid vertex"));
            sites.push(coord_label(cx.cells(0)[v]));
        }
    }
    (rows, sites)
}

pub fn build_codeblock0(cx: &CellComplex) -> Result<Codeblock> {
    let n = cx.count(3);
    let hx = BinaryMatrix::from_supports(n, &hypercell_supports(cx))?;
    let faces: Vec<Vec<usize>> = (0..cx.count(2)).map(|f| cx.coboundary(2, f).to_vec()).collect();
    let hz = BinaryMatrix::from_supports(n, &faces)?;
    let x_sites = cx.cells(4).iter().map(|&c| coord_label(c)).collect();
    Ok(Codeblock { label: "0".into(), hx, hz, x_sites })
}

pub fn build_colored_codeblock(cx: &CellComplex, color: Color) -> Result<Codeblock> {
    let colors: Vec<Color> = (0..cx.count(0)).map(|v| cx.vertex_color(v)).collect();
    Ok(build_family_with_colors(cx, &colors)?.blocks.swap_remove(color_slot(color)))
}

fn color_slot(color: Color) -> usize {
    match color {
        Color::Red => 1,
        Color::Green => 2,
        Color::Blue => 3,
    }
}

fn family_coords(cx: &CellComplex) -> (Vec<ScaledCoord>, Vec<String>) {
    let coords = cx.cells(3).to_vec();
    let labels = coords.iter().map(|&c| coord_label(c)).collect();
    (coords, labels)
}

/// Periodic family [codeblock 0, Red, Green, Blue].
pub fn build_family(cx: &CellComplex) -> Result<CodeFamily> {
    let colors: Vec<Color> = (0..cx.count(0)).map(|v| cx.vertex_color(v)).collect();
    build_family_with_colors(cx, &colors)
}

/// Periodic family for an arbitrary vertex coloring. Colored blocks take their Z
/// rows from triple intersections of the other three blocks' X supports.
pub fn build_family_with_colors(cx: &CellComplex, colors: &[Color]) -> Result<CodeFamily> {
    if colors.len() != cx.count(0) {
        return Err(Error::LengthMismatch { expected: cx.count(0), found: colors.len() });
    }
    let n = cx.count(3);
    let mut x_rows = vec![hypercell_supports(cx)];
    let mut x_sites = vec![cx.cells(4).iter().map(|&c| coord_label(c)).collect::<Vec<_>>()];
    for color in Color::ALL {
        let (rows, sites) = vertex_supports(cx, colors, color);
        x_rows.push(rows);
        x_sites.push(sites);
    }
    let block0 = build_codeblock0(cx)?;
    let mut blocks = vec![block0];
    for c in 1..4 {
        let others: Vec<&[Vec<usize>]> =
            (0..4).filter(|&o| o != c).map(|o| x_rows[o].as_slice()).collect();
        let z_rows = common_intersections(n, &others);
        blocks.push(Codeblock {
            label: OCTAPLEX_LABELS[c].into(),
            hx: BinaryMatrix::from_supports(n, &x_rows[c])?,
            hz: BinaryMatrix::from_supports(n, &z_rows)?,
            x_sites: x_sites[c].clone(),
        });
    }
    let (coords, qubits) = family_coords(cx);
    Ok(CodeFamily { kind: FamilyKind::Periodic, l: cx.l(), qubits, coords, blocks })
}

/// Z rows of codeblock 0 recomputed as triple intersections of the three colored
/// blocks' X supports; should reproduce the 2-cell rows.
pub fn block0_z_by_intersection(cx: &CellComplex) -> Vec<Vec<usize>> {
    let colors: Vec<Color> = (0..cx.count(0)).map(|v| cx.vertex_color(v)).collect();
    let rows: Vec<Vec<Vec<usize>>> =
        Color::ALL.iter().map(|&c| vertex_supports(cx, &colors, c).0).collect();
    let refs: Vec<&[Vec<usize>]> = rows.iter().map(Vec::as_slice).collect();
    common_intersections(cx.count(3), &refs)
}

/// Rough axis of each octaplex block in the bounded family (the direction of its
/// logical Z string): codeblock 0 along w, Red along z, Green along y, Blue along x.
pub const ROUGH_AXIS: [usize; 4] = [3, 2, 1, 0];

/// The bounded family together with its logical representatives.
#[derive(Clone, Debug)]
pub struct BoundedFamily {
    pub family: CodeFamily,
    pub xbar: Vec<BitVector>,
    pub zbar: Vec<BitVector>,
    /// Per block: Z rows added beyond restricted faces to span the commutant.
    pub completion_rows: Vec<usize>,
    /// Per block: X row weight and number of boundary coordinates.
    pub x_boundary: Vec<Vec<(usize, usize)>>,
    /// Per block: qubits in no retained X generator.
    pub uncovered: Vec<usize>,
}

/// Single-logical-qubit family on the region with every scaled coordinate in
/// `[2, 4L]`. X generators are kept when their rough-axis coordinate lies in
/// `[4, 4L-2]` and the others in `[2, 4L]`; supports are cut to the region. Z rows
/// are the periodic Z rows cut to the region that commute with the kept X rows and
/// the logical X, completed to the full commutant when the cut rows fall short.
pub fn build_bounded_family(l: usize) -> Result<BoundedFamily> {
    if l < 2 {
        return Err(Error::LatticeTooSmall(l));
    }
    // one extra period keeps the region away from the wraparound
    let cx = build_octaplex(l + 1)?;
    let periodic = build_family(&cx)?;
    let hi = 4 * l as u32;
    let in_region = |c: ScaledCoord| c.0.iter().all(|&v| (2..=hi).contains(&v));
    let region: Vec<usize> = (0..cx.count(3)).filter(|&q| in_region(cx.cells(3)[q])).collect();
    let n = region.len();
    let mut local = vec![usize::MAX; cx.count(3)];
    for (i, &q) in region.iter().enumerate() {
        local[q] = i;
    }
    let restrict = |s: &[usize]| -> Vec<usize> {
        let mut r: Vec<usize> = s.iter().filter(|&&q| local[q] != usize::MAX).map(|&q| local[q]).collect();
        r.sort_unstable();
        r
    };
    let coords: Vec<ScaledCoord> = region.iter().map(|&q| cx.cells(3)[q]).collect();
    let qubits: Vec<String> = coords.iter().map(|&c| coord_label(c)).collect();

    let offsets = hypercell_offsets();
    let mut blocks = Vec::new();
    let mut xbars = Vec::new();
    let mut zbars = Vec::new();
    let mut completion_rows = Vec::new();
    let mut x_boundary = Vec::new();
    let mut uncovered = Vec::new();
    for b in 0..4 {
        let rough = ROUGH_AXIS[b];
        let centers: Vec<ScaledCoord> = if b == 0 {
            cx.cells(4).to_vec()
        } else {
            let color = Color::ALL[b - 1];
            cx.cells(0).iter().copied().filter(|&v| crate::lattice::vertex_color(v).ok() == Some(color)).collect()
        };
        let mut hx_rows = Vec::new();
        let mut sites = Vec::new();
        let mut bdry = Vec::new();
        for c in centers {
            let keep = (0..4).all(|i| {
                if i == rough {
                    (4..=hi - 2).contains(&c.0[i])
                } else {
                    (2..=hi).contains(&c.0[i])
                }
            });
            if !keep {
                continue;
            }
            let full: Vec<usize> = offsets
                .iter()
                .map(|&o| cx.index_of(3, c.offset(o, cx.modulus())).expect("3-cell offset"))
                .collect();
            let s = restrict(&full);
            let nb = (0..4).filter(|&i| i != rough && (c.0[i] == 2 || c.0[i] == hi)).count();
            bdry.push((s.len(), nb));
            hx_rows.push(s);
            sites.push(coord_label(c));
        }
        let hx = BinaryMatrix::from_supports(n, &hx_rows)?;
        let mut covered = vec![false; n];
        for s in &hx_rows {
            for &q in s {
                covered[q] = true;
            }
        }
        uncovered.push(covered.iter().filter(|&&c| !c).count());

        let xbar = logicals::bounded_xbar(&coords, b, l);
        let zbar = logicals::bounded_zbar(&coords, b, l);
        let mut commutant = hx.clone();
        commutant.push_row(xbar.clone())?;

        let mut seen = BTreeSet::new();
        let mut z_rows = Vec::new();
        for row in periodic.blocks[b].hz.rows() {
            let s = restrict(&row.support());
            if s.is_empty() || !seen.insert(s.clone()) {
                continue;
            }
            let v = support_vec(n, &s);
            if commutant.rows().iter().all(|x| !x.overlap_parity(&v)) {
                z_rows.push(v);
            }
        }
        let mut basis = RowBasis::from_rows(n, &z_rows);
        let target = n - commutant.rank();
        let mut added = 0;
        if basis.rank() < target {
            // pairs of qubits with identical X signature first, then the kernel
            let cols = commutant.transpose();
            let mut groups: HashMap<&BitVector, Vec<usize>> = HashMap::new();
            for q in 0..n {
                groups.entry(cols.row(q)).or_default().push(q);
            }
            let mut pairs: Vec<(usize, usize)> = groups
                .values()
                .flat_map(|g| (0..g.len()).flat_map(move |i| (i + 1..g.len()).map(move |j| (g[i], g[j]))))
                .collect();
            pairs.sort_unstable();
            for (a, c) in pairs {
                if basis.rank() == target {
                    break;
                }
                let v = support_vec(n, &[a, c]);
                if basis.insert(v.clone()) {
                    z_rows.push(v);
                    added += 1;
                }
            }
            if basis.rank() < target {
                for v in commutant.kernel_basis() {
                    if basis.rank() == target {
                        break;
                    }
                    if basis.insert(v.clone()) {
                        z_rows.push(v);
                        added += 1;
                    }
                }
            }
        }
        blocks.push(Codeblock {
            label: OCTAPLEX_LABELS[b].into(),
            hx,
            hz: BinaryMatrix::from_rows(n, z_rows)?,
            x_sites: sites,
        });
        xbars.push(xbar);
        zbars.push(zbar);
        completion_rows.push(added);
        x_boundary.push(bdry);
    }
    Ok(BoundedFamily {
        family: CodeFamily { kind: FamilyKind::Bounded, l, qubits, coords, blocks },
        xbar: xbars,
        zbar: zbars,
        completion_rows,
        x_boundary,
        uncovered,
    })
}

/// Expected weight of a boundary X generator with `b` boundary coordinates.
pub fn boundary_weight(b: usize) -> usize {
    8 - b + 16 / (1 << b)
}

/// Edge index on the L×L torus: direction 0 runs along x, 1 along y.
fn edge2(l: usize, x: usize, y: usize, dir: usize) -> usize {
    ((x % l) * l + (y % l)) * 2 + dir
}

/// {4,4} torus: block A has X on plaquettes, block B has X on vertices.
pub fn build_2d_pair(l: usize) -> Result<CodeFamily> {
    if l < 2 {
        return Err(Error::LatticeTooSmall(l));
    }
    let n = 2 * l * l;
    let mut plaquettes = Vec::new();
    let mut stars = Vec::new();
    let mut psites = Vec::new();
    let mut vsites = Vec::new();
    for x in 0..l {
        for y in 0..l {
            let mut p = vec![edge2(l, x, y, 0), edge2(l, x, y + 1, 0), edge2(l, x, y, 1), edge2(l, x + 1, y, 1)];
            p.sort_unstable();
            plaquettes.push(p);
            psites.push(format!("p({x},{y})"));
            let mut v = vec![
                edge2(l, x, y, 0),
                edge2(l, x + l - 1, y, 0),
                edge2(l, x, y, 1),
                edge2(l, x, y + l - 1, 1),
            ];
            v.sort_unstable();
            stars.push(v);
            vsites.push(format!("v({x},{y})"));
        }
    }
    let qubits = (0..l)
        .flat_map(|x| (0..l).flat_map(move |y| (0..2).map(move |d| format!("e({x},{y},{})", ["x", "y"][d]))))
        .collect();
    let a = Codeblock {
        label: "A".into(),
        hx: BinaryMatrix::from_supports(n, &plaquettes)?,
        hz: BinaryMatrix::from_supports(n, &stars)?,
        x_sites: psites.clone(),
    };
    let b = Codeblock {
        label: "B".into(),
        hx: BinaryMatrix::from_supports(n, &stars)?,
        hz: BinaryMatrix::from_supports(n, &plaquettes)?,
        x_sites: vsites,
    };
    Ok(CodeFamily { kind: FamilyKind::TwoD, l, qubits, coords: Vec::new(), blocks: vec![a, b] })
}

/// Edge index on the L×L×L torus.
fn edge3(l: usize, p: [i64; 3], dir: usize) -> usize {
    let m = |v: i64| v.rem_euclid(l as i64) as usize;
    ((m(p[0]) * l + m(p[1])) * l + m(p[2])) * 3 + dir
}

/// Edge of the infinite cubic lattice: base point and direction.
type Edge3 = ([i64; 3], usize);

fn star_edges(p: [i64; 3]) -> Vec<Edge3> {
    let mut out = Vec::new();
    for d in 0..3 {
        let mut back = p;
        back[d] -= 1;
        out.push((p, d));
        out.push((back, d));
    }
    out
}

fn cube_edges(p: [i64; 3]) -> Vec<Edge3> {
    let mut out = Vec::new();
    for d in 0..3 {
        let (a, b) = ((d + 1) % 3, (d + 2) % 3);
        for (da, db) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let mut q = p;
            q[a] += da;
            q[b] += db;
            out.push((q, d));
        }
    }
    out
}

/// Intersections of one generator from each of `blocks`, taken on the infinite
/// lattice before folding onto the torus, so that generators meeting on two
/// sides of a small torus do not merge their overlaps.
fn local_intersections(l: usize, blocks: &[&[Vec<Edge3>]]) -> Vec<Vec<usize>> {
    let n = 3 * l * l * l;
    let li = l as i64;
    let mut by_qubit: Vec<Vec<Vec<(usize, [i64; 3])>>> = vec![vec![Vec::new(); n]; blocks.len()];
    for (b, gens) in blocks.iter().enumerate() {
        for (g, edges) in gens.iter().enumerate() {
            for &(p, d) in edges {
                let q = edge3(l, p, d);
                let shift = p.map(|v| v.rem_euclid(li) - v);
                by_qubit[b][q].push((g, shift));
            }
        }
    }
    let mut out = BTreeSet::new();
    for q in 0..n {
        let mut partial: Vec<Vec<Edge3>> = Vec::new();
        for (b, gens) in blocks.iter().enumerate() {
            let mut next = Vec::new();
            for &(g, shift) in &by_qubit[b][q] {
                let moved: BTreeSet<Edge3> =
                    gens[g].iter().map(|&(p, d)| ([p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]], d)).collect();
                if b == 0 {
                    next.push(moved.into_iter().collect());
                } else {
                    for acc in &partial {
                        next.push(acc.iter().copied().filter(|e| moved.contains(e)).collect::<Vec<_>>());
                    }
                }
            }
            partial = next;
        }
        for s in partial {
            let mut idx: Vec<usize> = s.into_iter().map(|(p, d)| edge3(l, p, d)).collect();
            idx.sort_unstable();
            idx.dedup();
            if !idx.is_empty() {
                out.insert(idx);
            }
        }
    }
    out.into_iter().collect()
}

/// {4,3,4} torus with qubits on edges: X on vertex stars, red cubes and blue cubes.
pub fn build_3d_triple(l: usize) -> Result<CodeFamily> {
    build_3d_triple_with_coloring(l, |p| (p[0] + p[1] + p[2]) % 2 == 0)
}

/// 3D triple for an arbitrary red/blue cube coloring.
pub fn build_3d_triple_with_coloring<F: Fn([usize; 3]) -> bool>(l: usize, is_red: F) -> Result<CodeFamily> {
    if l < 2 {
        return Err(Error::LatticeTooSmall(l));
    }
    if l % 2 == 1 {
        return Err(Error::OddLattice(l));
    }
    let n = 3 * l * l * l;
    let mut gens: [Vec<Vec<Edge3>>; 3] = Default::default();
    let mut sites: [Vec<String>; 3] = Default::default();
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                let p = [x as i64, y as i64, z as i64];
                gens[0].push(star_edges(p));
                sites[0].push(format!("v({x},{y},{z})"));
                let c = if is_red([x, y, z]) { 1 } else { 2 };
                gens[c].push(cube_edges(p));
                sites[c].push(format!("c({x},{y},{z})"));
            }
        }
    }
    let labels = ["0", "red", "blue"];
    let mut blocks = Vec::new();
    for c in 0..3 {
        let others: Vec<&[Vec<Edge3>]> = (0..3).filter(|&o| o != c).map(|o| gens[o].as_slice()).collect();
        let z_rows = local_intersections(l, &others);
        let x_rows: Vec<Vec<usize>> = gens[c]
            .iter()
            .map(|g| {
                let mut s: Vec<usize> = g.iter().map(|&(p, d)| edge3(l, p, d)).collect();
                s.sort_unstable();
                s
            })
            .collect();
        blocks.push(Codeblock {
            label: labels[c].into(),
            hx: BinaryMatrix::from_supports(n, &x_rows)?,
            hz: BinaryMatrix::from_supports(n, &z_rows)?,
            x_sites: sites[c].clone(),
        });
    }
    let qubits = (0..l)
        .flat_map(|x| {
            (0..l).flat_map(move |y| (0..l).flat_map(move |z| (0..3).map(move |d| format!("e({x},{y},{z},{})", ["x", "y", "z"][d]))))
        })
        .collect();
    Ok(CodeFamily { kind: FamilyKind::ThreeD, l, qubits, coords: Vec::new(), blocks })
}

/// Cell type of each qubit of an octaplex family.
pub fn qubit_types(family: &CodeFamily) -> Vec<CellType> {
    family.coords.iter().map(|&c| crate::lattice::classify(c).expect("qubits are 3-cells")).collect()
}

impl BoundedFamily {
    pub fn basis(&self) -> logicals::LogicalBasis {
        logicals::LogicalBasis {
            xbar: self.xbar.iter().map(|x| vec![x.clone()]).collect(),
            zbar: self.zbar.iter().map(|z| vec![z.clone()]).collect(),
            labels: ROUGH_AXIS.iter().map(|&j| vec![logicals::DIRECTIONS[j].to_string()]).collect(),
        }
    }
}

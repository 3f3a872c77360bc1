//! The octaplex tessellation {3,4,3,3} on a 4-torus.
//!
//! Coordinates are scaled by 4 so that integer, half-integer and quarter-integer
//! positions become residues 0, 2 and odd modulo 4. Every component lives in
//! `[0, 4L)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binalg::BinaryMatrix;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScaledCoord(pub [u32; 4]);

impl fmt::Debug for ScaledCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = self.0;
        write!(f, "({x},{y},{z},{w})")
    }
}

impl ScaledCoord {
    pub fn new(x: u32, y: u32, z: u32, w: u32) -> Self {
        Self([x, y, z, w])
    }

    /// Adds a signed offset modulo `modulus`.
    pub fn offset(self, delta: [i64; 4], modulus: u32) -> Self {
        let m = modulus as i64;
        let mut c = self.0;
        for i in 0..4 {
            c[i] = (c[i] as i64 + delta[i]).rem_euclid(m) as u32;
        }
        Self(c)
    }

    /// Residue-2 positions as a bit mask (bit i set when component i is ≡ 2 mod 4).
    fn half_mask(self) -> u8 {
        (0..4).filter(|&i| self.0[i] % 4 == 2).fold(0, |m, i| m | (1 << i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellType {
    V0,
    E1,
    F2i,
    F2ii,
    C3i,
    C3ii,
    C3iii,
    H4i,
    H4ii,
}

impl CellType {
    pub fn dim(self) -> usize {
        match self {
            CellType::V0 => 0,
            CellType::E1 => 1,
            CellType::F2i | CellType::F2ii => 2,
            CellType::C3i | CellType::C3ii | CellType::C3iii => 3,
            CellType::H4i | CellType::H4ii => 4,
        }
    }
}

/// Cell type from the residue pattern, or an error for coordinates that are no cell.
pub fn classify(c: ScaledCoord) -> Result<CellType> {
    let zeros = c.0.iter().filter(|&&v| v % 4 == 0).count();
    let halves = c.0.iter().filter(|&&v| v % 4 == 2).count();
    let odd = 4 - zeros - halves;
    let t = match (zeros, halves, odd) {
        (2, 2, 0) => CellType::V0,
        (1, 1, 2) => CellType::E1,
        (1, 0, 3) => CellType::F2i,
        (0, 1, 3) => CellType::F2ii,
        (1, 3, 0) => CellType::C3i,
        (3, 1, 0) => CellType::C3ii,
        (0, 0, 4) => CellType::C3iii,
        (4, 0, 0) => CellType::H4i,
        (0, 4, 0) => CellType::H4ii,
        _ => return Err(Error::NotACell(c)),
    };
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    /// Translation taking 4-cells onto vertices of this color.
    pub fn shift(self) -> [i64; 4] {
        match self {
            Color::Red => [2, 2, 0, 0],
            Color::Green => [2, 0, 2, 0],
            Color::Blue => [2, 0, 0, 2],
        }
    }
}

pub fn vertex_color(v: ScaledCoord) -> Result<Color> {
    if classify(v)? != CellType::V0 {
        return Err(Error::NotAVertex(v));
    }
    // bits: x=1, y=2, z=4, w=8
    Ok(match v.half_mask() {
        0b1100 | 0b0011 => Color::Red,
        0b1010 | 0b0101 => Color::Green,
        _ => Color::Blue,
    })
}

/// Boundary offsets of a cell, as signed deltas.
fn boundary_offsets(c: ScaledCoord, t: CellType) -> Vec<[i64; 4]> {
    let odd: Vec<usize> = (0..4).filter(|&i| c.0[i] % 2 == 1).collect();
    // step from an odd value to the adjacent value with the given residue
    let toward = |i: usize, residue: u32| -> i64 {
        if (c.0[i] + 1) % 4 == residue {
            1
        } else {
            -1
        }
    };
    let mut out = Vec::new();
    match t {
        CellType::V0 => {}
        CellType::E1 => {
            for (a, b) in [(odd[0], odd[1]), (odd[1], odd[0])] {
                let mut d = [0; 4];
                d[a] = toward(a, 0);
                d[b] = toward(b, 2);
                out.push(d);
            }
        }
        CellType::F2i | CellType::F2ii => {
            let residue = if t == CellType::F2i { 2 } else { 0 };
            for &i in &odd {
                let mut d = [0; 4];
                d[i] = toward(i, residue);
                out.push(d);
            }
        }
        CellType::C3i | CellType::C3ii => {
            let residue = if t == CellType::C3i { 2 } else { 0 };
            let idx: Vec<usize> = (0..4).filter(|&i| c.0[i] % 4 == residue).collect();
            for s in 0..8 {
                let mut d = [0; 4];
                for (k, &i) in idx.iter().enumerate() {
                    d[i] = if s >> k & 1 == 1 { 1 } else { -1 };
                }
                out.push(d);
            }
        }
        CellType::C3iii => {
            for i in 0..4 {
                for s in [-1, 1] {
                    let mut d = [0; 4];
                    d[i] = s;
                    out.push(d);
                }
            }
        }
        CellType::H4i | CellType::H4ii => out.extend(hypercell_offsets()),
    }
    out
}

/// The 24 offsets from a 4-cell to its 3-cells; also the offsets from a vertex to
/// the 3-cells containing it.
pub fn hypercell_offsets() -> Vec<[i64; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for s in [-2, 2] {
            let mut d = [0; 4];
            d[i] = s;
            out.push(d);
        }
    }
    for s in 0..16 {
        out.push(std::array::from_fn(|i| if s >> i & 1 == 1 { 1 } else { -1 }));
    }
    out
}

/// Indexed cells of dimensions 0 through 4 with boundary and co-boundary maps.
#[derive(Clone, Debug)]
pub struct CellComplex {
    l: usize,
    cells: [Vec<ScaledCoord>; 5],
    index: [HashMap<ScaledCoord, usize>; 5],
    boundary: [Vec<Vec<usize>>; 5],
    coboundary: [Vec<Vec<usize>>; 5],
}

/// Builds the periodic octaplex complex; cells are listed in lexicographic order.
pub fn build_octaplex(l: usize) -> Result<CellComplex> {
    if l < 2 {
        return Err(Error::LatticeTooSmall(l));
    }
    let m = 4 * l as u32;
    let mut cells: [Vec<ScaledCoord>; 5] = Default::default();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    let c = ScaledCoord([x, y, z, w]);
                    if let Ok(t) = classify(c) {
                        cells[t.dim()].push(c);
                    }
                }
            }
        }
    }
    let index: [HashMap<ScaledCoord, usize>; 5] =
        std::array::from_fn(|d| cells[d].iter().enumerate().map(|(i, &c)| (c, i)).collect());
    let mut boundary: [Vec<Vec<usize>>; 5] = Default::default();
    let mut coboundary: [Vec<Vec<usize>>; 5] = Default::default();
    for d in 0..5 {
        coboundary[d] = vec![Vec::new(); cells[d].len()];
    }
    for d in 1..5 {
        boundary[d] = cells[d]
            .iter()
            .map(|&c| {
                let t = classify(c).expect("listed cells classify");
                let mut b: Vec<usize> = boundary_offsets(c, t)
                    .into_iter()
                    .map(|o| index[d - 1][&c.offset(o, m)])
                    .collect();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        for (i, b) in boundary[d].iter().enumerate() {
            for &j in b {
                coboundary[d - 1][j].push(i);
            }
        }
    }
    Ok(CellComplex { l, cells, index, boundary, coboundary })
}

impl CellComplex {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn modulus(&self) -> u32 {
        4 * self.l as u32
    }

    pub fn cells(&self, d: usize) -> &[ScaledCoord] {
        &self.cells[d]
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells[d].len()
    }

    pub fn counts(&self) -> [usize; 5] {
        std::array::from_fn(|d| self.cells[d].len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..5).map(|d| if d % 2 == 0 { 1 } else { -1 } * self.cells[d].len() as i64).sum()
    }

    pub fn index_of(&self, d: usize, c: ScaledCoord) -> Option<usize> {
        self.index[d].get(&c).copied()
    }

    /// Index of the cell at `c` after reducing each component modulo 4L.
    pub fn locate(&self, c: ScaledCoord) -> Option<(usize, usize)> {
        let c = c.offset([0; 4], self.modulus());
        let t = classify(c).ok()?;
        Some((t.dim(), self.index[t.dim()][&c]))
    }

    pub fn boundary(&self, d: usize, i: usize) -> &[usize] {
        &self.boundary[d][i]
    }

    pub fn coboundary(&self, d: usize, i: usize) -> &[usize] {
        &self.coboundary[d][i]
    }

    pub fn cell_type(&self, d: usize, i: usize) -> CellType {
        classify(self.cells[d][i]).expect("listed cells classify")
    }

    pub fn vertex_color(&self, v: usize) -> Color {
        vertex_color(self.cells[0][v]).expect("0-cells are vertices")
    }

    /// Incidence matrix of the boundary map from `d`-cells to `(d-1)`-cells,
    /// rows indexed by `(d-1)`-cells.
    pub fn boundary_matrix(&self, d: usize) -> Result<BinaryMatrix> {
        if !(1..=4).contains(&d) {
            return Err(Error::BadDimension(d));
        }
        let mut rows = vec![Vec::new(); self.cells[d - 1].len()];
        for (i, b) in self.boundary[d].iter().enumerate() {
            for &j in b {
                rows[j].push(i);
            }
        }
        BinaryMatrix::from_supports(self.cells[d].len(), &rows)
    }

    /// Cells of dimension `target` reached from cell `i` of dimension `d` by
    /// iterating boundary (downwards) or co-boundary (upwards) maps.
    pub fn incident_cells(&self, d: usize, i: usize, target: usize) -> Result<Vec<usize>> {
        if d > 4 {
            return Err(Error::BadDimension(d));
        }
        if target > 4 {
            return Err(Error::BadDimension(target));
        }
        if i >= self.cells[d].len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.cells[d].len() });
        }
        let mut current: BTreeSet<usize> = BTreeSet::from([i]);
        let mut dim = d;
        while dim != target {
            let next: BTreeSet<usize> = if target < dim {
                current.iter().flat_map(|&c| self.boundary[dim][c].iter().copied()).collect()
            } else {
                current.iter().flat_map(|&c| self.coboundary[dim][c].iter().copied()).collect()
            };
            current = next;
            dim = if target < dim { dim - 1 } else { dim + 1 };
        }
        Ok(current.into_iter().collect())
    }

    /// Vertex centroid of a cell, scaled by 24 and unwrapped around its label.
    pub fn centroid24(&self, d: usize, i: usize) -> [i64; 4] {
        let c = self.cells[d][i];
        if d == 0 {
            return c.0.map(|v| 24 * v as i64);
        }
        let verts = self.incident_cells(d, i, 0).expect("valid cell");
        let m = self.modulus() as i64;
        let mut acc = [0i64; 4];
        for &v in &verts {
            let p = self.cells[0][v];
            for k in 0..4 {
                let mut delta = (p.0[k] as i64 - c.0[k] as i64).rem_euclid(m);
                if delta > m / 2 {
                    delta -= m;
                }
                acc[k] += delta;
            }
        }
        let n = verts.len() as i64;
        std::array::from_fn(|k| 24 * c.0[k] as i64 + 24 * acc[k] / n)
    }

    /// Checks every boundary map against the nearest lower-dimensional cells,
    /// with cells placed at their vertex centroids. Returns the first mismatch.
    pub fn cross_check_nearest(&self) -> std::result::Result<(), NearestMismatch> {
        let period = 24 * self.modulus() as i64;
        let dist = |a: &[i64; 4], b: &[i64; 4]| -> i64 {
            (0..4)
                .map(|k| {
                    let r = (a[k] - b[k]).rem_euclid(period);
                    let r = r.min(period - r);
                    r * r
                })
                .sum()
        };
        let mut pos: [Vec<[i64; 4]>; 5] = Default::default();
        for d in 0..5 {
            pos[d] = (0..self.cells[d].len()).map(|i| self.centroid24(d, i)).collect();
        }
        for d in 1..5 {
            for i in 0..self.cells[d].len() {
                let mut best = i64::MAX;
                let mut near = Vec::new();
                for (j, p) in pos[d - 1].iter().enumerate() {
                    let dd = dist(&pos[d][i], p);
                    if dd < best {
                        best = dd;
                        near.clear();
                    }
                    if dd == best {
                        near.push(j);
                    }
                }
                if near != self.boundary[d][i] {
                    return Err(NearestMismatch { dim: d, cell: self.cells[d][i] });
                }
            }
        }
        Ok(())
    }

    /// First `(d, cell, face)` where the `(d-2)`-cell `face` appears an odd number
    /// of times in the boundary of the boundary of `cell`.
    pub fn boundary_squared_violation(&self) -> Option<(usize, ScaledCoord, ScaledCoord)> {
        for d in 2..5 {
            for (i, b) in self.boundary[d].iter().enumerate() {
                let mut count: BTreeMap<usize, usize> = BTreeMap::new();
                for &f in b {
                    for &g in &self.boundary[d - 1][f] {
                        *count.entry(g).or_default() += 1;
                    }
                }
                if let Some((&g, _)) = count.iter().find(|(_, &c)| c % 2 == 1) {
                    return Some((d, self.cells[d][i], self.cells[d - 2][g]));
                }
            }
        }
        None
    }

    /// Replaces the first entry of a boundary list; used by negative controls.
    pub fn corrupt_boundary(&mut self, d: usize, i: usize, replacement: usize) {
        let b = &mut self.boundary[d][i];
        if !b.contains(&replacement) {
            let old = b[0];
            b[0] = replacement;
            b.sort_unstable();
            self.coboundary[d - 1][old].retain(|&x| x != i);
            self.coboundary[d - 1][replacement].push(i);
            self.coboundary[d - 1][replacement].sort_unstable();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NearestMismatch {
    pub dim: usize,
    pub cell: ScaledCoord,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(ScaledCoord::new(0, 0, 2, 2)).unwrap(), CellType::V0);
        assert_eq!(classify(ScaledCoord::new(1, 1, 1, 1)).unwrap(), CellType::C3iii);
        assert!(classify(ScaledCoord::new(0, 0, 0, 1)).is_err());
    }

    #[test]
    fn color_examples() {
        assert_eq!(vertex_color(ScaledCoord::new(0, 0, 2, 2)).unwrap(), Color::Red);
        assert_eq!(vertex_color(ScaledCoord::new(0, 2, 0, 2)).unwrap(), Color::Green);
        assert_eq!(vertex_color(ScaledCoord::new(0, 2, 2, 0)).unwrap(), Color::Blue);
        assert!(vertex_color(ScaledCoord::new(1, 1, 1, 1)).is_err());
    }

    #[test]
    fn rejects_l1() {
        assert!(matches!(build_octaplex(1), Err(Error::LatticeTooSmall(1))));
    }
}

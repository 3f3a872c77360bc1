//! Sparse matrix export (alist, MatrixMarket) and JSON views of the Tanner graph.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::binalg::BinaryMatrix;
use crate::metachecks::MetacheckLadder;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Alist,
    Mtx,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Alist => "alist",
            Format::Mtx => "mtx",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "alist" => Ok(Format::Alist),
            "mtx" => Ok(Format::Mtx),
            other => Err(Error::Usage(format!("unknown format {other:?}, expected alist or mtx"))),
        }
    }
}

/// alist: `n m`, max column/row degree, the degree lists, then 1-based row
/// indices per column and column indices per row, zero padded.
pub fn to_alist(m: &BinaryMatrix) -> String {
    let t = m.transpose();
    let col_deg = m.col_weights();
    let row_deg = m.row_weights();
    let max_c = col_deg.iter().copied().max().unwrap_or(0);
    let max_r = row_deg.iter().copied().max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let padded = |s: Vec<usize>, width: usize| {
        let mut v: Vec<usize> = s.into_iter().map(|i| i + 1).collect();
        v.resize(width, 0);
        join(&v)
    };
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.ncols(), m.nrows());
    let _ = writeln!(out, "{max_c} {max_r}");
    let _ = writeln!(out, "{}", join(&col_deg));
    let _ = writeln!(out, "{}", join(&row_deg));
    for c in t.rows() {
        let _ = writeln!(out, "{}", padded(c.support(), max_c));
    }
    for r in m.rows() {
        let _ = writeln!(out, "{}", padded(r.support(), max_r));
    }
    out
}

pub fn to_mtx(m: &BinaryMatrix) -> String {
    let nnz: usize = m.row_weights().iter().sum();
    let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
    let _ = writeln!(out, "{} {} {}", m.nrows(), m.ncols(), nnz);
    for (i, r) in m.rows().iter().enumerate() {
        for j in r.ones_iter() {
            let _ = writeln!(out, "{} {} 1", i + 1, j + 1);
        }
    }
    out
}

pub fn render(m: &BinaryMatrix, format: Format) -> String {
    match format {
        Format::Alist => to_alist(m),
        Format::Mtx => to_mtx(m),
    }
}

/// Parses an alist document back into a matrix.
pub fn parse_alist(s: &str) -> Result<BinaryMatrix, Error> {
    let bad = || Error::Usage("malformed alist".into());
    let mut lines = s.lines();
    let nums = |line: Option<&str>| -> Result<Vec<usize>, Error> {
        line.ok_or_else(bad)?.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect()
    };
    let head = nums(lines.next())?;
    let (n, m) = (*head.first().ok_or_else(bad)?, *head.get(1).ok_or_else(bad)?);
    nums(lines.next())?;
    nums(lines.next())?;
    nums(lines.next())?;
    for _ in 0..n {
        nums(lines.next())?;
    }
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let idx = nums(lines.next())?;
        rows.push(idx.into_iter().filter(|&i| i > 0).map(|i| i - 1).collect::<Vec<_>>());
    }
    BinaryMatrix::from_supports(n, &rows)
}

#[derive(Serialize)]
pub struct TannerGraph {
    pub qubits: usize,
    pub z_checks: Vec<Vec<usize>>,
    pub edge_metachecks: Vec<Vec<usize>>,
    pub vertex_metachecks: Vec<Vec<usize>>,
    pub face_planes: Vec<Vec<usize>>,
    pub edge_hyperplanes: Vec<Vec<usize>>,
}

/// Adjacency lists per level, each pointing one level down.
pub fn tanner_graph(ladder: &MetacheckLadder) -> TannerGraph {
    let lists = |m: &BinaryMatrix| m.rows().iter().map(|r| r.support()).collect();
    TannerGraph {
        qubits: ladder.hz.ncols(),
        z_checks: lists(&ladder.hz),
        edge_metachecks: lists(&ladder.m1),
        vertex_metachecks: lists(&ladder.m0),
        face_planes: ladder.globals2.iter().map(|g| g.support()).collect(),
        edge_hyperplanes: ladder.globals1.iter().map(|g| g.support()).collect(),
    }
}

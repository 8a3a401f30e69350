//! Bipartite graphs on the square lattice, their signed adjacency
//! (Kasteleyn-Percus) matrices, and sum-of-two-squares certificates for the
//! matching counts of rotation-symmetric graphs.
//!
//! Coordinates are doubled: vertex `(2k+1, 2l+1)` sits at the centre of a
//! unit square, so the half-turn `R2: (x, y) -> (-x, -y)` is integral. A
//! vertex is white when `k + l` is even.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::alt_centro::{is_alternating_centrosymmetric, is_alternating_skew_centrosymmetric, AlternatingExchange};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::matrix::Matrix;
use crate::structure::{det_via_half, extract_bc, CommutationKind};
use crate::two_squares::TwoSquares;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

/// A lattice point with both (doubled) coordinates odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVertex {
    x: i64,
    y: i64,
}

impl LatticeVertex {
    pub fn new(x: i64, y: i64) -> Result<Self> {
        if x.rem_euclid(2) != 1 || y.rem_euclid(2) != 1 {
            return Err(Error::InvalidVertex(x, y));
        }
        Ok(LatticeVertex { x, y })
    }

    pub fn x(self) -> i64 {
        self.x
    }

    pub fn y(self) -> i64 {
        self.y
    }

    pub fn color(self) -> Color {
        let k = (self.x - 1).div_euclid(2);
        let l = (self.y - 1).div_euclid(2);
        if (k + l).rem_euclid(2) == 0 {
            Color::White
        } else {
            Color::Black
        }
    }

    /// `R2`.
    pub fn rotate(self) -> Self {
        LatticeVertex { x: -self.x, y: -self.y }
    }

    fn offset(self, dx: i64, dy: i64) -> Self {
        LatticeVertex {
            x: self.x + dx,
            y: self.y + dy,
        }
    }
}

impl fmt::Display for LatticeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Two vertices at distance 2 along one axis, stored in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: LatticeVertex,
    b: LatticeVertex,
}

impl Edge {
    pub fn new(a: LatticeVertex, b: LatticeVertex) -> Result<Self> {
        let (dx, dy) = ((a.x - b.x).abs(), (a.y - b.y).abs());
        if !matches!((dx, dy), (2, 0) | (0, 2)) {
            return Err(Error::InvalidEdge(a.x, a.y, b.x, b.y));
        }
        Ok(if a < b { Edge { a, b } } else { Edge { a: b, b: a } })
    }

    pub fn between(x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Self> {
        let bad = || Error::InvalidEdge(x1, y1, x2, y2);
        let a = LatticeVertex::new(x1, y1).map_err(|_| bad())?;
        let b = LatticeVertex::new(x2, y2).map_err(|_| bad())?;
        Edge::new(a, b)
    }

    pub fn a(self) -> LatticeVertex {
        self.a
    }

    pub fn b(self) -> LatticeVertex {
        self.b
    }

    pub fn is_horizontal(self) -> bool {
        self.a.y == self.b.y
    }

    pub fn white(self) -> LatticeVertex {
        if self.a.color() == Color::White {
            self.a
        } else {
            self.b
        }
    }

    pub fn black(self) -> LatticeVertex {
        if self.a.color() == Color::White {
            self.b
        } else {
            self.a
        }
    }

    pub fn rotate(self) -> Self {
        Edge::new(self.a.rotate(), self.b.rotate()).expect("rotation preserves adjacency")
    }

    /// Doubled-coordinate midpoint; exactly one coordinate is even.
    fn midpoint(self) -> (i64, i64) {
        ((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)
    }
}

/// Which edges carry the sign -1. Each choice puts exactly one -1 on every
/// unit square, so both count matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignConvention {
    /// Vertical edges whose lower endpoint is black. Symmetric labelings
    /// then give alternating centrosymmetric matrices.
    #[default]
    VerticalLowerBlack,
    /// Horizontal edges whose left endpoint is black. Symmetric labelings
    /// then give alternating skew-centrosymmetric matrices.
    HorizontalLeftBlack,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::VerticalLowerBlack => "vertical-lower-black",
            SignConvention::HorizontalLeftBlack => "horizontal-left-black",
        })
    }
}

impl std::str::FromStr for SignConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vertical-lower-black" => Ok(SignConvention::VerticalLowerBlack),
            "horizontal-left-black" => Ok(SignConvention::HorizontalLeftBlack),
            other => Err(format!(
                "unknown sign convention `{other}` (expected vertical-lower-black or horizontal-left-black)"
            )),
        }
    }
}

pub fn edge_sign(e: Edge, convention: SignConvention) -> i8 {
    // `a` is the left (horizontal) or lower (vertical) endpoint
    let flagged = match convention {
        SignConvention::VerticalLowerBlack => !e.is_horizontal(),
        SignConvention::HorizontalLeftBlack => e.is_horizontal(),
    };
    if flagged && e.a.color() == Color::Black {
        -1
    } else {
        1
    }
}

/// A finite subgraph of the square lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGraph {
    vertices: Vec<LatticeVertex>,
    edges: Vec<Edge>,
    index: HashMap<LatticeVertex, usize>,
    adj: Vec<Vec<usize>>,
}

impl LatticeGraph {
    /// Vertices and edges are deduplicated; every edge endpoint must be a
    /// listed vertex.
    pub fn new(vertices: Vec<LatticeVertex>, edges: Vec<Edge>) -> Result<Self> {
        let vertices: Vec<LatticeVertex> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let edges: Vec<Edge> = edges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<LatticeVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for e in &edges {
            let (Some(&i), Some(&j)) = (index.get(&e.a), index.get(&e.b)) else {
                return Err(Error::InvalidEdge(e.a.x, e.a.y, e.b.x, e.b.y));
            };
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(LatticeGraph {
            vertices,
            edges,
            index,
            adj,
        })
    }

    /// The given vertices with every lattice adjacency among them.
    pub fn induced(vertices: &[LatticeVertex]) -> Result<Self> {
        let set: BTreeSet<LatticeVertex> = vertices.iter().copied().collect();
        let mut edges = Vec::new();
        for &v in &set {
            for w in [v.offset(2, 0), v.offset(0, 2)] {
                if set.contains(&w) {
                    edges.push(Edge::new(v, w)?);
                }
            }
        }
        LatticeGraph::new(set.into_iter().collect(), edges)
    }

    /// Sorted by `(x, y)`.
    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: LatticeVertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn neighbors(&self, v: LatticeVertex) -> impl Iterator<Item = LatticeVertex> + '_ {
        let list = self.index.get(&v).map(|&i| self.adj[i].as_slice()).unwrap_or(&[]);
        list.iter().map(|&j| self.vertices[j])
    }

    pub fn whites(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.vertices.iter().copied().filter(|v| v.color() == Color::White)
    }

    pub fn blacks(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.vertices.iter().copied().filter(|v| v.color() == Color::Black)
    }

    pub fn color_counts(&self) -> (usize, usize) {
        (self.whites().count(), self.blacks().count())
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Image under `R2`.
    pub fn rotate(&self) -> Self {
        LatticeGraph::new(
            self.vertices.iter().map(|v| v.rotate()).collect(),
            self.edges.iter().map(|e| e.rotate()).collect(),
        )
        .expect("rotation of a valid graph")
    }

    /// One point inside every bounded face that encloses an odd number of
    /// lattice points missing from the graph.
    ///
    /// The fixed signs count matchings exactly when this is empty: around a
    /// cycle enclosing `p` lattice points the sign product is `(-1)^(p+1)`
    /// times the one Kasteleyn needs, and the graph vertices inside a cycle
    /// that can occur in a matching are even in number.
    pub fn odd_faces(&self) -> Vec<(i64, i64)> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let xmin = self.vertices.iter().map(|v| v.x).min().expect("nonempty") - 2;
        let xmax = self.vertices.iter().map(|v| v.x).max().expect("nonempty") + 2;
        let ymin = self.vertices.iter().map(|v| v.y).min().expect("nonempty") - 2;
        let ymax = self.vertices.iter().map(|v| v.y).max().expect("nonempty") + 2;
        let w = (xmax - xmin + 1) as usize;
        let h = (ymax - ymin + 1) as usize;
        let at = |x: i64, y: i64| (y - ymin) as usize * w + (x - xmin) as usize;
        // the drawing itself: vertices and edge midpoints
        let mut blocked = vec![false; w * h];
        for v in &self.vertices {
            blocked[at(v.x, v.y)] = true;
        }
        for e in &self.edges {
            let (mx, my) = e.midpoint();
            blocked[at(mx, my)] = true;
        }
        let mut face = vec![usize::MAX; w * h];
        let mut odd = Vec::new();
        let mut face_id = 0;
        for y0 in ymin..=ymax {
            for x0 in xmin..=xmax {
                let start = at(x0, y0);
                if blocked[start] || face[start] != usize::MAX {
                    continue;
                }
                let mut outer = false;
                let mut missing = 0usize;
                let mut sample = None;
                face[start] = face_id;
                let mut queue = VecDeque::from([(x0, y0)]);
                while let Some((x, y)) = queue.pop_front() {
                    if x == xmin || x == xmax || y == ymin || y == ymax {
                        outer = true;
                    }
                    if x.rem_euclid(2) == 1 && y.rem_euclid(2) == 1 {
                        missing += 1;
                        sample.get_or_insert((x, y));
                    }
                    for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                        if nx < xmin || nx > xmax || ny < ymin || ny > ymax {
                            continue;
                        }
                        let i = at(nx, ny);
                        if !blocked[i] && face[i] == usize::MAX {
                            face[i] = face_id;
                            queue.push_back((nx, ny));
                        }
                    }
                }
                if !outer && missing % 2 == 1 {
                    odd.push(sample.expect("odd count is positive"));
                }
                face_id += 1;
            }
        }
        odd
    }
}

/// Connected, mapped to itself by `R2`, with every vertex the same colour as
/// its image. In a connected bipartite graph the last condition is the same
/// as every path from `v` to `R2(v)` having even length.
pub fn check_two_even_symmetric(g: &LatticeGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let vertex_ok = g
        .vertices()
        .iter()
        .all(|v| g.contains(v.rotate()) && v.rotate().color() == v.color());
    let edge_ok = g.edges().iter().all(|e| g.has_edge(e.rotate()));
    Ok(vertex_ok && edge_ok)
}

/// Order in which the upper half-plane is scanned for initial labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScanOrder {
    /// Rows by decreasing `y`, then increasing `x`.
    #[default]
    RowMajor,
    /// Columns by increasing `x`, then decreasing `y`.
    ColumnMajor,
}

impl std::str::FromStr for ScanOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "row-major" => Ok(ScanOrder::RowMajor),
            "column-major" => Ok(ScanOrder::ColumnMajor),
            other => Err(format!(
                "unknown scan order `{other}` (expected row-major or column-major)"
            )),
        }
    }
}

/// Row and column indices: white vertex `v` is row `label(v)`, black vertex
/// `w` is column `label(w)`, both 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabeling {
    labels: BTreeMap<LatticeVertex, usize>,
    whites: Vec<LatticeVertex>,
    blacks: Vec<LatticeVertex>,
}

impl VertexLabeling {
    /// `labels` must number each colour class `1..=count`.
    pub fn new(labels: BTreeMap<LatticeVertex, usize>) -> Result<Self> {
        let mut whites = Vec::new();
        let mut blacks = Vec::new();
        for (&v, &l) in &labels {
            let slot = if v.color() == Color::White {
                &mut whites
            } else {
                &mut blacks
            };
            if l == 0 {
                return Err(Error::Internal(format!("label 0 on {v}")));
            }
            if slot.len() < l {
                slot.resize(l, None);
            }
            if slot[l - 1].replace(v).is_some() {
                return Err(Error::Internal(format!("label {l} used twice")));
            }
        }
        let finish = |slot: Vec<Option<LatticeVertex>>| -> Result<Vec<LatticeVertex>> {
            slot.into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::Internal(format!("label {} unused", i + 1))))
                .collect()
        };
        Ok(VertexLabeling {
            labels,
            whites: finish(whites)?,
            blacks: finish(blacks)?,
        })
    }

    pub fn label(&self, v: LatticeVertex) -> Option<usize> {
        self.labels.get(&v).copied()
    }

    /// White vertices by label.
    pub fn whites(&self) -> &[LatticeVertex] {
        &self.whites
    }

    /// Black vertices by label.
    pub fn blacks(&self) -> &[LatticeVertex] {
        &self.blacks
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticeVertex, usize)> + '_ {
        self.labels.iter().map(|(v, l)| (*v, *l))
    }

    /// `label(R2 v) = count + 1 - label(v)` within each colour class.
    pub fn satisfies_counterpart_rule(&self) -> bool {
        self.labels.iter().all(|(&v, &l)| {
            let n = if v.color() == Color::White {
                self.whites.len()
            } else {
                self.blacks.len()
            };
            self.label(v.rotate()) == Some(n + 1 - l)
        })
    }

    /// All labels in a lattice row share one parity, and the parity flips
    /// from each row to the next.
    pub fn satisfies_row_parity(&self) -> bool {
        let Some((&first, &l0)) = self.labels.iter().next() else {
            return true;
        };
        self.labels.iter().all(|(&v, &l)| {
            let rows_apart = (v.y - first.y).abs() / 2;
            (l + l0 + rows_apart as usize) % 2 == 0
        })
    }
}

/// Whites and blacks each numbered in sorted vertex order. Valid for any
/// graph; used when no symmetry is available.
pub fn scan_labeling(g: &LatticeGraph) -> VertexLabeling {
    let mut labels = BTreeMap::new();
    for (i, v) in g.whites().enumerate() {
        labels.insert(v, i + 1);
    }
    for (i, v) in g.blacks().enumerate() {
        labels.insert(v, i + 1);
    }
    VertexLabeling::new(labels).expect("consecutive labels")
}

/// Labeling whose Kasteleyn-Percus matrix is alternating centrosymmetric
/// (under [`SignConvention::VerticalLowerBlack`]).
///
/// Within each colour, the upper-half vertices get `1..m` in scan order and
/// their images `2m+1-i`. Rows are then visited top-down; a vertex whose
/// label has the wrong parity for its row (odd in the top row, alternating
/// below) trades labels with its image. Images live in the lower half, so
/// finished rows are never disturbed, and the lower half ends up correct
/// because `2m+1-i` and `i` have opposite parity.
pub fn symmetric_labeling(g: &LatticeGraph, order: ScanOrder) -> Result<VertexLabeling> {
    if !check_two_even_symmetric(g)? {
        return Err(Error::NotSymmetric);
    }
    let mut upper: Vec<LatticeVertex> = g.vertices().iter().copied().filter(|v| v.y > 0).collect();
    match order {
        ScanOrder::RowMajor => upper.sort_by_key(|v| (-v.y, v.x)),
        ScanOrder::ColumnMajor => upper.sort_by_key(|v| (v.x, -v.y)),
    }
    let mut labels: BTreeMap<LatticeVertex, usize> = BTreeMap::new();
    for color in [Color::White, Color::Black] {
        let half: Vec<LatticeVertex> = upper.iter().copied().filter(|v| v.color() == color).collect();
        let m = half.len();
        for (i, v) in half.iter().enumerate() {
            labels.insert(*v, i + 1);
            labels.insert(v.rotate(), 2 * m - i);
        }
    }
    let Some(ytop) = upper.iter().map(|v| v.y).max() else {
        return VertexLabeling::new(labels);
    };
    let mut rows: Vec<i64> = upper.iter().map(|v| v.y).collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows.dedup();
    for y in rows {
        let want_odd = ((ytop - y) / 2) % 2 == 0;
        for v in upper.iter().copied().filter(|v| v.y == y) {
            let l = labels[&v];
            if (l % 2 == 1) != want_odd {
                let image = v.rotate();
                let li = labels[&image];
                labels.insert(v, li);
                labels.insert(image, l);
            }
        }
    }
    VertexLabeling::new(labels)
}

/// Signed biadjacency matrix: rows are white labels, columns black labels.
pub fn build_kasteleyn(
    g: &LatticeGraph,
    labeling: &VertexLabeling,
    convention: SignConvention,
) -> Result<Matrix<Rational>> {
    let (white, black) = g.color_counts();
    if white != black {
        return Err(Error::NoPerfectMatching { white, black });
    }
    if labeling.whites().len() != white
        || labeling.blacks().len() != black
        || g.vertices().iter().any(|v| labeling.label(*v).is_none())
    {
        return Err(Error::Internal("labeling does not cover the graph".into()));
    }
    let mut m = Matrix::zeros(white, black, &());
    for &e in g.edges() {
        let i = labeling.label(e.white()).expect("covered") - 1;
        let j = labeling.label(e.black()).expect("covered") - 1;
        m.set(i, j, Rational::from(edge_sign(e, convention) as i64));
    }
    Ok(m)
}

/// Products of edge signs around every unit square whose four sides are
/// edges of `g`, keyed by the square's lower-left vertex.
pub fn unit_face_products(g: &LatticeGraph, convention: SignConvention) -> Vec<(LatticeVertex, i8)> {
    let mut out = Vec::new();
    for &v in g.vertices() {
        let corners = [v, v.offset(2, 0), v.offset(2, 2), v.offset(0, 2)];
        let sides: Option<Vec<Edge>> = (0..4)
            .map(|i| {
                Edge::new(corners[i], corners[(i + 1) % 4])
                    .ok()
                    .filter(|e| g.has_edge(*e))
            })
            .collect();
        if let Some(sides) = sides {
            let product = sides.iter().map(|e| edge_sign(*e, convention)).product();
            out.push((v, product));
        }
    }
    out
}

/// Number of perfect matchings, `|det|` of the signed matrix.
pub fn count_matchings(g: &LatticeGraph) -> Result<BigUint> {
    count_matchings_with(g, SignConvention::default())
}

pub fn count_matchings_with(g: &LatticeGraph, convention: SignConvention) -> Result<BigUint> {
    let (white, black) = g.color_counts();
    if white != black {
        return Err(Error::NoPerfectMatching { white, black });
    }
    if let Some(&(x, y)) = g.odd_faces().first() {
        return Err(Error::OddFace(x, y));
    }
    let m = build_kasteleyn(g, &scan_labeling(g), convention)?;
    let det = m.det_fraction_free()?;
    let det = det.to_integer().expect("integer matrix");
    Ok(det.abs().to_biguint().expect("nonnegative"))
}

/// Output of [`matching_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCertificate {
    pub count: BigUint,
    /// `det(B + iC) = x + iy` for the blocks of the signed matrix.
    pub x: BigInt,
    pub y: BigInt,
    pub certificate: TwoSquares,
    pub labeling: VertexLabeling,
    pub matrix: Matrix<Rational>,
    pub convention: SignConvention,
}

/// Count plus integral `x^2 + y^2 = count` for a 2-even symmetric graph.
pub fn matching_certificate(g: &LatticeGraph) -> Result<MatchingCertificate> {
    matching_certificate_with(g, SignConvention::default(), ScanOrder::default())
}

pub fn matching_certificate_with(
    g: &LatticeGraph,
    convention: SignConvention,
    order: ScanOrder,
) -> Result<MatchingCertificate> {
    let labeling = symmetric_labeling(g, order)?;
    let (white, black) = g.color_counts();
    if white != black {
        return Err(Error::NoPerfectMatching { white, black });
    }
    if let Some(&(x, y)) = g.odd_faces().first() {
        return Err(Error::OddFace(x, y));
    }
    let matrix = build_kasteleyn(g, &labeling, convention)?;
    let n = matrix.rows();
    let (kind, holds) = match convention {
        SignConvention::VerticalLowerBlack => (
            CommutationKind::PseudoCentrosymmetric,
            is_alternating_centrosymmetric(&matrix)?,
        ),
        SignConvention::HorizontalLeftBlack => (
            CommutationKind::PseudoSkewCentrosymmetric,
            is_alternating_skew_centrosymmetric(&matrix)?,
        ),
    };
    if !holds {
        return Err(Error::Internal(format!(
            "symmetric labeling produced a matrix that is not alternating {kind}"
        )));
    }
    let (x, y) = if n == 0 {
        (BigInt::from(1), BigInt::from(0))
    } else {
        let form = AlternatingExchange::new(n)?.simple_form::<Rational>(&());
        let (b, c) = extract_bc(&matrix, &form, kind)?;
        let cert = det_via_half(&b, &c, kind)?;
        let int = |q: &Rational| q.to_integer().ok_or(Error::NotIntegral);
        (int(&cert.x)?, int(&cert.y)?)
    };
    let certificate = TwoSquares::new(
        x.abs().to_biguint().expect("nonnegative"),
        y.abs().to_biguint().expect("nonnegative"),
    );
    let count = certificate.n().clone();
    Ok(MatchingCertificate {
        count,
        x,
        y,
        certificate,
        labeling,
        matrix,
        convention,
    })
}

//! Regions made of unit squares, and the staircase families built from a
//! central band.
//!
//! A cell is named by its centre in doubled coordinates, so the cell
//! `[0,1] x [0,1]` is `(1, 1)` and the half-turn about the origin is
//! `(x, y) -> (-x, -y)`.
//!
//! # Generalized pillows
//!
//! The central band is `R` full rows of `W` cells (`R`, `W` even), centred
//! on the origin. Each row above the band loses `s` cells on the left (a
//! north-west step of length `s`) and one cell on the right (a north-east
//! step of length 1), where `s` runs through the upper step sequence from
//! the band outwards. Below the band the lower sequence acts on the right
//! (south-east) and single cells go on the left (south-west); by default the
//! lower sequence equals the upper one, which makes the region symmetric
//! under the half-turn.
//!
//! ```text
//! aztec_pillow(2): steps 3,3 on a 2x10 band, 36 cells
//!
//! row  5:       ##        3..5
//! row  3:    ######       -3..7
//! row  1: ##########      -9..9
//! row -1: ##########      -9..9
//! row -3:  ######         -7..3
//! row -5:   ##            -5..-3
//! ```
//!
//! Aztec diamonds use steps of 1 on a `2 x 2n` band; Aztec pillows use steps
//! of 3 on a `2 x (4n+2)` band.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{LatticeGraph, LatticeVertex};

/// A nonempty, edge-connected set of unit squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    cells: BTreeSet<(i64, i64)>,
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let cells: BTreeSet<(i64, i64)> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::InvalidRegion("no cells".into()));
        }
        if let Some(&(x, y)) = cells.iter().find(|(x, y)| x.rem_euclid(2) != 1 || y.rem_euclid(2) != 1) {
            return Err(Error::InvalidRegion(format!(
                "cell centre ({x}, {y}) must have odd coordinates"
            )));
        }
        let region = Region { cells };
        if !region.is_connected() {
            return Err(Error::InvalidRegion("cells are not edge-connected".into()));
        }
        Ok(region)
    }

    fn is_connected(&self) -> bool {
        let start = *self.cells.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((x, y)) = queue.pop_front() {
            for n in [(x + 2, y), (x - 2, y), (x, y + 2), (x, y - 2)] {
                if self.cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    pub fn cells(&self) -> &BTreeSet<(i64, i64)> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.cells.contains(&(x, y))
    }

    /// Maximal horizontal runs `(xmin, xmax)` per row, top row first.
    pub fn rows(&self) -> Vec<(i64, Vec<(i64, i64)>)> {
        let mut by_row: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for &(x, y) in &self.cells {
            by_row.entry(y).or_default().push(x);
        }
        by_row
            .into_iter()
            .rev()
            .map(|(y, xs)| {
                let mut runs: Vec<(i64, i64)> = Vec::new();
                for x in xs {
                    match runs.last_mut() {
                        Some((_, hi)) if *hi + 2 == x => *hi = x,
                        _ => runs.push((x, x)),
                    }
                }
                (y, runs)
            })
            .collect()
    }
}

/// One line per row: `row <y>: <xmin>..<xmax>[,<xmin>..<xmax>]*`, top row
/// first, all in doubled coordinates.
impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (y, runs) in self.rows() {
            let runs: Vec<String> = runs.iter().map(|(a, b)| format!("{a}..{b}")).collect();
            writeln!(f, "row {y}: {}", runs.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Region {
    type Err = Error;

    /// Blank lines and `#` comments are ignored. Rows may repeat and runs
    /// may overlap; the region is their union.
    fn from_str(text: &str) -> Result<Self> {
        let mut cells = BTreeSet::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let indent = body.len() - body.trim_start().len();
            let body = body.trim();
            let Some(rest) = body.strip_prefix("row") else {
                return Err(Error::parse(line_no, indent + 1, "expected `row <y>: <xmin>..<xmax>`"));
            };
            let Some((y_text, runs_text)) = rest.split_once(':') else {
                return Err(Error::parse(line_no, indent + 1, "missing `:` after the row number"));
            };
            let y_col = indent + 3 + (y_text.len() - y_text.trim_start().len()) + 1;
            let y: i64 = y_text
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, y_col, format!("bad row number `{}`", y_text.trim())))?;
            if y.rem_euclid(2) != 1 {
                return Err(Error::parse(line_no, y_col, format!("row {y} must be odd")));
            }
            let mut offset = indent + 3 + y_text.len() + 1;
            for run in runs_text.split(',') {
                let col = offset + (run.len() - run.trim_start().len()) + 1;
                offset += run.len() + 1;
                let run = run.trim();
                let bad = |what: &str| Error::parse(line_no, col, format!("{what} in run `{run}`"));
                let (lo, hi) = run.split_once("..").ok_or_else(|| bad("expected <xmin>..<xmax>"))?;
                let lo: i64 = lo.trim().parse().map_err(|_| bad("bad xmin"))?;
                let hi: i64 = hi.trim().parse().map_err(|_| bad("bad xmax"))?;
                if lo.rem_euclid(2) != 1 || hi.rem_euclid(2) != 1 {
                    return Err(bad("cell coordinates must be odd"));
                }
                if lo > hi {
                    return Err(bad("xmin exceeds xmax"));
                }
                cells.extend((lo..=hi).step_by(2).map(|x| (x, y)));
            }
        }
        Region::new(cells)
    }
}

/// Positive odd step lengths, listed from the band outwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSequence(Vec<u32>);

impl StepSequence {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if let Some(&even) = lengths.iter().find(|&&s| s % 2 == 0) {
            return Err(Error::EvenStep(even));
        }
        Ok(StepSequence(lengths))
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }
}

impl FromStr for StepSequence {
    type Err = Error;

    /// Comma-separated, e.g. `3,1,3`; the empty string is the empty sequence.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return StepSequence::new(Vec::new());
        }
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidRegion(format!("bad step length `{}`", t.trim())))
            })
            .collect::<Result<Vec<u32>>>()?;
        StepSequence::new(lengths)
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `rows` full rows of `width` cells centred on the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Band {
    pub rows: u32,
    pub width: u32,
}

impl Band {
    pub fn new(rows: u32, width: u32) -> Result<Self> {
        if rows == 0 || width == 0 || rows % 2 == 1 || width % 2 == 1 {
            return Err(Error::InvalidRegion(format!(
                "band {rows}x{width}: both dimensions must be positive and even to centre it on the origin"
            )));
        }
        Ok(Band { rows, width })
    }
}

impl FromStr for Band {
    type Err = Error;

    /// `<rows>x<width>`, e.g. `2x10`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRegion(format!("band `{s}` is not of the form <rows>x<width>"));
        let (r, w) = s.trim().split_once('x').ok_or_else(bad)?;
        Band::new(
            r.trim().parse().map_err(|_| bad())?,
            w.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.width)
    }
}

/// Stacks rows on the band as described in the module docs. `lower`
/// defaults to `upper`.
pub fn generalized_pillow(upper: &StepSequence, band: Band, lower: Option<&StepSequence>) -> Result<Region> {
    let lower = lower.unwrap_or(upper);
    let half_rows = band.rows as i64;
    let half_width = band.width as i64;
    let top = half_rows - 1;
    let (mut lo, mut hi) = (-(half_width - 1), half_width - 1);
    let mut rows: Vec<(i64, i64, i64)> = (0..half_rows).map(|i| (top - 2 * i, lo, hi)).collect();
    let mut y = top;
    for &s in upper.lengths() {
        lo += 2 * s as i64;
        hi -= 2;
        y += 2;
        if lo > hi {
            return Err(Error::InvalidRegion(format!(
                "upper steps {upper} exhaust a band of width {}",
                band.width
            )));
        }
        rows.push((y, lo, hi));
    }
    let (mut lo, mut hi) = (-(half_width - 1), half_width - 1);
    let mut y = -top;
    for &s in lower.lengths() {
        hi -= 2 * s as i64;
        lo += 2;
        y -= 2;
        if lo > hi {
            return Err(Error::InvalidRegion(format!(
                "lower steps {lower} exhaust a band of width {}",
                band.width
            )));
        }
        rows.push((y, lo, hi));
    }
    Region::new(
        rows.into_iter()
            .flat_map(|(y, lo, hi)| (lo..=hi).step_by(2).map(move |x| (x, y))),
    )
}

/// The `2n(n+1)` cells with `|x| + |y| <= n + 1` at their corners.
pub fn aztec_diamond(n: u32) -> Result<Region> {
    if n == 0 {
        return Err(Error::InvalidRegion("Aztec diamond order must be at least 1".into()));
    }
    let steps = StepSequence::new(vec![1; n as usize - 1])?;
    generalized_pillow(&steps, Band::new(2, 2 * n)?, None)
}

/// Order-`n` Aztec pillow: `n` steps of length 3 on a `2 x (4n+2)` band,
/// `4(n+1)^2` cells.
pub fn aztec_pillow(n: u32) -> Result<Region> {
    if n == 0 {
        return Err(Error::InvalidRegion("Aztec pillow order must be at least 1".into()));
    }
    let steps = StepSequence::new(vec![3; n as usize])?;
    generalized_pillow(&steps, Band::new(2, 4 * n + 2)?, None)
}

pub fn is_rotationally_symmetric(r: &Region) -> bool {
    r.cells.iter().all(|&(x, y)| r.cells.contains(&(-x, -y)))
}

/// One vertex per cell, one edge per pair of side-adjacent cells.
pub fn dual_graph(r: &Region) -> LatticeGraph {
    let verts: Vec<LatticeVertex> = r
        .cells
        .iter()
        .map(|&(x, y)| LatticeVertex::new(x, y).expect("cell centres are odd"))
        .collect();
    LatticeGraph::induced(&verts).expect("cells form valid vertices")
}

/// A generated symmetric generalized pillow with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PillowInstance {
    pub steps: StepSequence,
    pub band: Band,
    pub region: Region,
}

/// Every symmetric generalized pillow with at most `max_cells` cells.
pub fn symmetric_pillows(max_cells: usize) -> Vec<PillowInstance> {
    let mut out = Vec::new();
    let mut rows = 2u32;
    while (rows as usize) * 2 <= max_cells {
        let mut width = 2u32;
        while (rows * width) as usize <= max_cells {
            let band = Band::new(rows, width).expect("even");
            let base = (rows * width) as usize;
            extend_steps(&mut Vec::new(), band, width as usize, base, max_cells, &mut out);
            width += 2;
        }
        rows += 2;
    }
    out
}

fn extend_steps(
    steps: &mut Vec<u32>,
    band: Band,
    row_width: usize,
    cells: usize,
    max_cells: usize,
    out: &mut Vec<PillowInstance>,
) {
    let seq = StepSequence::new(steps.clone()).expect("odd steps");
    let region = generalized_pillow(&seq, band, None).expect("fits by construction");
    debug_assert_eq!(region.len(), cells);
    out.push(PillowInstance {
        steps: seq,
        band,
        region,
    });
    let mut s = 1u32;
    // next row keeps row_width - s - 1 cells, twice (above and below)
    while (s as usize) + 1 < row_width {
        let next_width = row_width - s as usize - 1;
        let total = cells + 2 * next_width;
        if total <= max_cells {
            steps.push(s);
            extend_steps(steps, band, next_width, total, max_cells, out);
            steps.pop();
        }
        s += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_two_even_symmetric, count_matchings, matching_certificate};
    use crate::oracle::enumerate_matchings;
    use num_bigint::BigUint;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn aztec_diamond_sizes() {
        for n in 1..=50u32 {
            let r = aztec_diamond(n).unwrap();
            assert_eq!(r.len() as u32, 2 * n * (n + 1));
            assert!(is_rotationally_symmetric(&r));
            // |x| + |y| <= n + 1 at the corners means |cx| + |cy| <= 2n at centres
            assert!(r.cells().iter().all(|&(x, y)| x.abs() + y.abs() <= 2 * n as i64));
        }
        assert!(aztec_diamond(0).is_err());
        let one = aztec_diamond(1).unwrap();
        assert_eq!(
            one.cells().iter().copied().collect::<Vec<_>>(),
            vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]
        );
    }

    #[test]
    fn aztec_diamond_text() {
        assert_eq!(
            aztec_diamond(2).unwrap().to_string(),
            "row 3: -1..1\nrow 1: -3..3\nrow -1: -3..3\nrow -3: -1..1\n"
        );
    }

    #[test]
    fn pillow_regressions() {
        let expected = [(1, 16, 20u64), (2, 36, 1024), (3, 64, 259_920)];
        for (n, cells, tilings) in expected {
            let r = aztec_pillow(n).unwrap();
            assert_eq!(r.len(), cells);
            assert_eq!(r.len() as u32, 4 * (n + 1) * (n + 1));
            assert!(is_rotationally_symmetric(&r));
            let same = generalized_pillow(
                &StepSequence::new(vec![3; n as usize]).unwrap(),
                Band::new(2, 4 * n + 2).unwrap(),
                None,
            )
            .unwrap();
            assert_eq!(same, r);
            assert_eq!(count_matchings(&dual_graph(&r)).unwrap(), big(tilings));
        }
        assert_eq!(
            aztec_pillow(1).unwrap().to_string(),
            "row 3: 1..3\nrow 1: -5..5\nrow -1: -5..5\nrow -3: -3..-1\n"
        );
        assert_eq!(
            aztec_pillow(2).unwrap().to_string(),
            "row 5: 3..5\nrow 3: -3..7\nrow 1: -9..9\nrow -1: -9..9\nrow -3: -7..3\nrow -5: -5..-3\n"
        );
    }

    #[test]
    fn step_validation() {
        assert_eq!(StepSequence::new(vec![3, 2]), Err(Error::EvenStep(2)));
        assert_eq!("3,1,3".parse::<StepSequence>().unwrap().lengths(), &[3, 1, 3]);
        assert!("3,x".parse::<StepSequence>().is_err());
        assert!(Band::new(3, 4).is_err());
        assert_eq!("2x10".parse::<Band>().unwrap(), Band { rows: 2, width: 10 });
        let too_many = StepSequence::new(vec![3, 3]).unwrap();
        assert!(generalized_pillow(&too_many, Band::new(2, 6).unwrap(), None).is_err());
    }

    #[test]
    fn asymmetric_pillows() {
        let up = StepSequence::new(vec![3]).unwrap();
        let down = StepSequence::new(vec![1]).unwrap();
        let r = generalized_pillow(&up, Band::new(2, 6).unwrap(), Some(&down)).unwrap();
        assert!(!is_rotationally_symmetric(&r));
        let single = Region::new([(3, 1)]).unwrap();
        assert!(!is_rotationally_symmetric(&single));
    }

    #[test]
    fn region_text_round_trip() {
        for r in [aztec_diamond(3).unwrap(), aztec_pillow(2).unwrap()] {
            let back: Region = r.to_string().parse().unwrap();
            assert_eq!(back, r);
        }
        let r: Region = "# comment\nrow 1: -3..-1, 3..3\nrow 3: 1..1\nrow 1: 1..1\n"
            .parse()
            .unwrap();
        assert_eq!(r.len(), 5);
        assert_eq!(r.to_string(), "row 3: 1..1\nrow 1: -3..3\n");
    }

    #[test]
    fn region_parse_errors_carry_positions() {
        let err = "row 1: -1..1\nrow 2: 1..1\n".parse::<Region>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err}");
        let err = "row 1: -1..1\nrow 3: 1..x\n".parse::<Region>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 8, .. }), "{err}");
        let err = "column 1".parse::<Region>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        assert!("row 1: 1..1\nrow 5: 1..1\n".parse::<Region>().is_err());
        assert!("".parse::<Region>().is_err());
    }

    #[test]
    fn dual_graph_examples() {
        let domino = Region::new([(-1, 1), (1, 1)]).unwrap();
        let g = dual_graph(&domino);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(count_matchings(&g).unwrap(), big(1));
        let g1 = dual_graph(&aztec_diamond(1).unwrap());
        assert_eq!(g1.edges().len(), 4);
        assert_eq!(enumerate_matchings(&g1).unwrap(), big(2));
        let g2 = dual_graph(&aztec_diamond(2).unwrap());
        assert_eq!(g2.vertices().len(), 12);
        assert!(check_two_even_symmetric(&g2).unwrap());
        assert_eq!(enumerate_matchings(&g2).unwrap(), big(8));
        for e in g2.edges() {
            let (a, b) = (e.a(), e.b());
            assert_eq!((a.x() - b.x()).abs() + (a.y() - b.y()).abs(), 2);
        }
        let cert = matching_certificate(&g2).unwrap();
        assert_eq!((cert.certificate.x(), cert.certificate.y()), (&big(2), &big(2)));
    }

    #[test]
    fn aztec_diamond_counts() {
        let expected = [2u64, 8, 64, 1024];
        for (n, want) in (1..=4).zip(expected) {
            let g = dual_graph(&aztec_diamond(n).unwrap());
            let count = count_matchings(&g).unwrap();
            assert_eq!(count, big(want));
            assert_eq!(count, BigUint::from(2u32).pow(n * (n + 1) / 2));
        }
    }

    #[test]
    fn enumerated_pillows() {
        let all = symmetric_pillows(16);
        assert!(all.iter().any(|p| p.region == aztec_diamond(1).unwrap()));
        assert!(all.iter().any(|p| p.region == aztec_diamond(2).unwrap()));
        assert!(all.iter().any(|p| p.region == aztec_pillow(1).unwrap()));
        for p in &all {
            assert!(p.region.len() <= 16);
            assert!(is_rotationally_symmetric(&p.region));
        }
        let mut regions: Vec<&Region> = all.iter().map(|p| &p.region).collect();
        regions.sort_by_key(|r| r.to_string());
        regions.dedup();
        // eight bare bands up to 16 cells, plus [1] on 2x4 and [3] on 2x6
        assert_eq!(regions.len(), 10);
    }
}

//! Text formats for matrices, graphs and `K` specifications.
//!
//! Matrix files start with `rows cols [field]`, where `field` is `Q` (the
//! default) or `Fp:<p>`, followed by one row per line. Entries are integers,
//! fractions `p/q`, or Gaussian values `a+bi`; a single Gaussian entry puts
//! the whole matrix over `F[i]`.
//!
//! Graph files list `v <x> <y>` vertices and `e <x1> <y1> <x2> <y2>` edges.
//! In both formats `#` starts a comment. Line and column numbers in errors
//! are 1-based.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Gaussian, PrimeModulus, Rational};
use crate::lattice::{Edge, LatticeGraph, LatticeVertex};
use crate::matrix::Matrix;

/// Base field named in a matrix header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeModulus),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// A parsed matrix over whichever field its file named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Prime(Matrix<Fp>),
    GaussianRational(Matrix<Gaussian<Rational>>),
    GaussianPrime(Matrix<Gaussian<Fp>>),
}

impl AnyMatrix {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => (m.rows(), m.cols()),
            AnyMatrix::Prime(m) => (m.rows(), m.cols()),
            AnyMatrix::GaussianRational(m) => (m.rows(), m.cols()),
            AnyMatrix::GaussianPrime(m) => (m.rows(), m.cols()),
        }
    }

    /// `Q`, `Fp:<p>`, `Q(i)` or `Fp:<p>(i)`.
    pub fn field_label(&self) -> String {
        match self {
            AnyMatrix::Rational(_) => "Q".into(),
            AnyMatrix::Prime(m) => format!("Fp:{}", m.ctx()),
            AnyMatrix::GaussianRational(_) => "Q(i)".into(),
            AnyMatrix::GaussianPrime(m) => format!("Fp:{}(i)", m.ctx()),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-comment tokens of each non-blank line, with 1-based positions.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..i],
                        line: ln + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn parse_header(tokens: &[Token<'_>]) -> Result<(usize, usize, FieldSpec)> {
    let dim = |t: &Token<'_>| {
        t.text
            .parse::<usize>()
            .map_err(|_| Error::parse(t.line, t.column, format!("expected a dimension, found `{}`", t.text)))
    };
    if tokens.len() < 2 || tokens.len() > 3 {
        let t = &tokens[0];
        return Err(Error::parse(t.line, t.column, "header must be `rows cols [Q|Fp:<p>]`"));
    }
    let rows = dim(&tokens[0])?;
    let cols = dim(&tokens[1])?;
    let field = match tokens.get(2) {
        None => FieldSpec::Rationals,
        Some(t) if t.text == "Q" => FieldSpec::Rationals,
        Some(t) => {
            let p = t
                .text
                .strip_prefix("Fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| {
                    Error::parse(
                        t.line,
                        t.column,
                        format!("unknown field `{}` (expected Q or Fp:<p>)", t.text),
                    )
                })?;
            let m = PrimeModulus::new(p).map_err(|e| Error::parse(t.line, t.column, e.to_string()))?;
            FieldSpec::Prime(m)
        }
    };
    Ok((rows, cols, field))
}

fn parse_entries<F: Field>(body: &[Vec<Token<'_>>], rows: usize, cols: usize, ctx: &F::Ctx) -> Result<Matrix<F>> {
    let mut data = Vec::with_capacity(rows * cols);
    for line in body {
        for t in line {
            let v = F::parse(t.text, ctx).map_err(|m| Error::parse(t.line, t.column, m))?;
            data.push(v);
        }
    }
    Matrix::new(rows, cols, data, ctx.clone())
}

/// Parses a matrix file; see the module docs.
pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    let lines = tokenize(text);
    let Some((header, body)) = lines.split_first() else {
        return Err(Error::parse(1, 1, "empty matrix file"));
    };
    let (rows, cols, field) = parse_header(header)?;
    if body.len() != rows {
        let (line, column) = body
            .get(rows)
            .map(|l| (l[0].line, l[0].column))
            .unwrap_or((header[0].line + body.len() + 1, 1));
        return Err(Error::parse(
            line,
            column,
            format!("expected {rows} rows, found {}", body.len()),
        ));
    }
    for line in body {
        if line.len() != cols {
            let t = line.get(cols).unwrap_or(&line[line.len() - 1]);
            return Err(Error::parse(
                t.line,
                t.column,
                format!("expected {cols} entries in this row, found {}", line.len()),
            ));
        }
    }
    let gaussian = body.iter().flatten().find(|t| t.text.ends_with('i'));
    match (field, gaussian) {
        (FieldSpec::Rationals, None) => Ok(AnyMatrix::Rational(parse_entries(body, rows, cols, &())?)),
        (FieldSpec::Prime(p), None) => Ok(AnyMatrix::Prime(parse_entries(body, rows, cols, &p)?)),
        (FieldSpec::Rationals, Some(_)) => Ok(AnyMatrix::GaussianRational(parse_entries(body, rows, cols, &())?)),
        (FieldSpec::Prime(p), Some(t)) => {
            if Fp::minus_one_is_square(&p) {
                return Err(Error::parse(
                    t.line,
                    t.column,
                    format!("Gaussian entries need p = 3 (mod 4); -1 is a square mod {p}"),
                ));
            }
            Ok(AnyMatrix::GaussianPrime(parse_entries(body, rows, cols, &p)?))
        }
    }
}

/// Inverse of [`parse_matrix`] for a matrix over a base field.
pub fn format_matrix<F: Field>(m: &Matrix<F>, field: &str) -> String {
    let mut out = format!("{} {} {field}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a graph file; see the module docs.
pub fn parse_graph(text: &str) -> Result<LatticeGraph> {
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    for line in tokenize(text) {
        let head = &line[0];
        let ints = |want: usize| -> Result<Vec<i64>> {
            if line.len() != want + 1 {
                return Err(Error::parse(
                    head.line,
                    head.column,
                    format!("`{}` takes {want} integers, found {}", head.text, line.len() - 1),
                ));
            }
            line[1..]
                .iter()
                .map(|t| {
                    t.text
                        .parse::<i64>()
                        .map_err(|_| Error::parse(t.line, t.column, format!("expected an integer, found `{}`", t.text)))
                })
                .collect()
        };
        match head.text {
            "v" => {
                let c = ints(2)?;
                let v = LatticeVertex::new(c[0], c[1])
                    .map_err(|e| Error::parse(head.line, line[1].column, e.to_string()))?;
                verts.push(v);
            }
            "e" => {
                let c = ints(4)?;
                let e = Edge::between(c[0], c[1], c[2], c[3])
                    .map_err(|e| Error::parse(head.line, line[1].column, e.to_string()))?;
                edges.push((e, head.line, line[1].column));
            }
            other => {
                return Err(Error::parse(
                    head.line,
                    head.column,
                    format!("expected `v` or `e`, found `{other}`"),
                ))
            }
        }
    }
    let known: std::collections::BTreeSet<LatticeVertex> = verts.iter().copied().collect();
    for (e, line, column) in &edges {
        if !known.contains(&e.a()) || !known.contains(&e.b()) {
            return Err(Error::parse(*line, *column, "edge endpoint is not a listed vertex"));
        }
    }
    LatticeGraph::new(verts, edges.into_iter().map(|(e, _, _)| e).collect())
}

pub fn format_graph(g: &LatticeGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("v {} {}\n", v.x(), v.y()));
    }
    for e in g.edges() {
        out.push_str(&format!("e {} {} {} {}\n", e.a().x(), e.a().y(), e.b().x(), e.b().y()));
    }
    out
}

/// Where `K` comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KSpec {
    /// `alt:<2k>`: the alternating exchange matrix.
    Alt(usize),
    /// `simple:<path>`: a file holding the block `K2`.
    Simple(PathBuf),
    /// `full:<path>`: a file holding `K` itself.
    Full(PathBuf),
}

impl std::str::FromStr for KSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::parse(1, 1, msg);
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("K argument `{s}` must be alt:<2k>, simple:<path> or full:<path>")))?;
        match kind {
            "alt" => arg
                .parse::<usize>()
                .map(KSpec::Alt)
                .map_err(|_| Error::parse(1, 5, format!("bad order `{arg}`"))),
            "simple" if !arg.is_empty() => Ok(KSpec::Simple(PathBuf::from(arg))),
            "full" if !arg.is_empty() => Ok(KSpec::Full(PathBuf::from(arg))),
            _ => Err(bad(format!(
                "K argument `{s}` must be alt:<2k>, simple:<path> or full:<path>"
            ))),
        }
    }
}

impl fmt::Display for KSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpec::Alt(n) => write!(f, "alt:{n}"),
            KSpec::Simple(p) => write!(f, "simple:{}", p.display()),
            KSpec::Full(p) => write!(f, "full:{}", p.display()),
        }
    }
}

//! Small named instances used in tests, examples and the CLI.

use crate::field::Rational;
use crate::lattice::{LatticeGraph, LatticeVertex};
use crate::matrix::Matrix;

/// A 6x6 alternating centrosymmetric Kasteleyn-Percus matrix with
/// determinant 10 = 3^2 + 1^2.
pub const EXAMPLE: [[i64; 6]; 6] = [
    [0, 0, 0, 1, 1, -1],
    [0, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, -1, 0],
    [1, -1, 0, 0, 0, 0],
    [1, 1, -1, 0, 0, 0],
];

pub fn example_matrix() -> Matrix<Rational> {
    Matrix::from_ints(&EXAMPLE, &())
}

/// Upper half of the 12-vertex graph whose Kasteleyn-Percus matrix is
/// [`EXAMPLE`]: two vertices in row 3 over the left end of a row of four.
pub const EXAMPLE_UPPER: [(i64, i64); 6] = [(-3, 3), (-1, 3), (-3, 1), (-1, 1), (1, 1), (3, 1)];

/// The rotation-symmetric closure of [`EXAMPLE_UPPER`] with every lattice
/// adjacency present (16 edges).
pub fn example_graph() -> LatticeGraph {
    let verts: Vec<LatticeVertex> = EXAMPLE_UPPER
        .iter()
        .flat_map(|&(x, y)| [(x, y), (-x, -y)])
        .map(|(x, y)| LatticeVertex::new(x, y).expect("odd coordinates"))
        .collect();
    LatticeGraph::induced(&verts).expect("valid fixture")
}

/// The unit square around the origin.
pub fn four_cycle() -> LatticeGraph {
    let verts: Vec<LatticeVertex> = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        .iter()
        .map(|&(x, y)| LatticeVertex::new(x, y).expect("odd coordinates"))
        .collect();
    LatticeGraph::induced(&verts).expect("valid fixture")
}

/// The general 6x6 alternating centrosymmetric pattern: `values` fill the
/// top three rows, the bottom three are forced.
pub fn mirrored_from_top(values: &[i64]) -> Matrix<Rational> {
    assert_eq!(values.len(), 18, "the pattern has 18 free entries");
    let a = |k: usize| values[k - 1];
    let rows: [[i64; 6]; 6] = [
        [a(1), a(2), a(3), a(4), a(5), a(6)],
        [a(7), a(8), a(9), a(10), a(11), a(12)],
        [a(13), a(14), a(15), a(16), a(17), a(18)],
        [-a(18), a(17), -a(16), a(15), -a(14), a(13)],
        [a(12), -a(11), a(10), -a(9), a(8), -a(7)],
        [-a(6), a(5), -a(4), a(3), -a(2), a(1)],
    ];
    Matrix::from_ints(&rows, &())
}

/// Matrix text for [`EXAMPLE`], as accepted by the CLI.
pub fn example_text() -> String {
    let mut out = String::from("6 6 Q\n");
    for row in EXAMPLE {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

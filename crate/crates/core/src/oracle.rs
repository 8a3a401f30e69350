//! Brute-force ground truth.
//!
//! Everything here is deliberately naive and independent of the fast paths:
//! cofactor expansion instead of elimination, explicit matching search
//! instead of determinants, a linear scan instead of factoring.

use num_bigint::BigUint;
use num_integer::Roots;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::LatticeGraph;
use crate::matrix::Matrix;

pub const COFACTOR_GUARD: usize = 8;
pub const MATCHING_GUARD: usize = 40;
pub const TWO_SQUARES_GUARD: u64 = 1_000_000;
pub const ORDERING_GUARD: usize = 6;

/// Laplace expansion along the first row.
pub fn det_cofactor<F: Field>(a: &Matrix<F>) -> Result<F> {
    let n = a.order()?;
    if n > COFACTOR_GUARD {
        return Err(Error::GuardExceeded {
            what: "order for cofactor expansion",
            value: n,
            limit: COFACTOR_GUARD,
        });
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(a, &rows, &cols))
}

fn expand<F: Field>(a: &Matrix<F>, rows: &[usize], cols: &[usize]) -> F {
    let ctx = a.ctx();
    if rows.is_empty() {
        return F::one(ctx);
    }
    let (r, rest) = (rows[0], &rows[1..]);
    let mut total = F::zero(ctx);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = a.get(r, c);
        if entry.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.clone() * expand(a, rest, &minor_cols);
        total = if pos % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// Number of perfect matchings, by exhaustive search: the lowest unmatched
/// vertex (in sorted vertex order) is matched to each free neighbour in turn.
pub fn enumerate_matchings(g: &LatticeGraph) -> Result<BigUint> {
    let n = g.vertices().len();
    if n > MATCHING_GUARD {
        return Err(Error::GuardExceeded {
            what: "vertex count for matching enumeration",
            value: n,
            limit: MATCHING_GUARD,
        });
    }
    let verts = g.vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        let i = verts.iter().position(|v| *v == e.a()).expect("edge endpoint");
        let j = verts.iter().position(|v| *v == e.b()).expect("edge endpoint");
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut matched = vec![false; n];
    Ok(BigUint::from(search(&adj, &mut matched)))
}

fn search(adj: &[Vec<usize>], matched: &mut [bool]) -> u64 {
    let Some(v) = matched.iter().position(|m| !m) else {
        return 1;
    };
    matched[v] = true;
    let mut count = 0;
    for &w in &adj[v] {
        if !matched[w] {
            matched[w] = true;
            count += search(adj, matched);
            matched[w] = false;
        }
    }
    matched[v] = false;
    count
}

/// Scans `x` from `floor(sqrt n)` downwards for `n - x^2` a perfect square.
pub fn two_squares_exhaustive(n: u64) -> Result<Option<(u64, u64)>> {
    if n > TWO_SQUARES_GUARD {
        return Err(Error::GuardExceeded {
            what: "n for exhaustive two-squares search",
            value: n as usize,
            limit: TWO_SQUARES_GUARD as usize,
        });
    }
    let mut x = n.sqrt();
    loop {
        let rest = n - x * x;
        let y = rest.sqrt();
        if y * y == rest {
            return Ok(Some((x, y)));
        }
        if x == 0 {
            return Ok(None);
        }
        x -= 1;
    }
}

/// Tries every pair of row and column permutations and reports whether some
/// pair makes `A` alternating centrosymmetric or alternating
/// skew-centrosymmetric.
pub fn alt_ordering_exists_exhaustive<F: Field>(a: &Matrix<F>) -> Result<bool> {
    let n = a.order()?;
    if n > ORDERING_GUARD {
        return Err(Error::GuardExceeded {
            what: "order for exhaustive permutation search",
            value: n,
            limit: ORDERING_GUARD,
        });
    }
    let perms = permutations(n);
    for sigma in &perms {
        for tau in &perms {
            for sign_exp in [0usize, 1] {
                let ok = (0..n).all(|i| {
                    (0..n).all(|j| {
                        let lhs = a.get(sigma[i], tau[j]).clone();
                        let rhs = a.get(sigma[n - 1 - i], tau[n - 1 - j]).clone();
                        if (i + j + sign_exp) % 2 == 0 {
                            lhs == rhs
                        } else {
                            lhs == -rhs
                        }
                    })
                });
                if ok {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

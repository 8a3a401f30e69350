//! Random instances for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{Field, Fp, PrimeModulus, Rational};
use crate::lattice::{LatticeGraph, LatticeVertex};
use crate::matrix::Matrix;
use crate::structure::{assemble_from_bc, AntiInvolution, CommutationKind, SimpleFormK};

/// Fields with a notion of a small random element.
pub trait Sample: Field {
    fn sample<R: Rng + ?Sized>(rng: &mut R, ctx: &Self::Ctx) -> Self;
}

impl Sample for Rational {
    /// Numerator in `-5..=5`, denominator in `1..=3`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, _: &()) -> Self {
        Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3)).expect("positive denominator")
    }
}

impl Sample for Fp {
    fn sample<R: Rng + ?Sized>(rng: &mut R, ctx: &PrimeModulus) -> Self {
        Fp::new(rng.gen_range(0..ctx.get()), *ctx)
    }
}

pub fn random_matrix<F: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, ctx: &F::Ctx) -> Matrix<F> {
    Matrix::from_fn(rows, cols, ctx, |_, _| F::sample(rng, ctx))
}

/// Rejection-samples until the determinant is nonzero.
pub fn random_invertible<F: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize, ctx: &F::Ctx) -> Matrix<F> {
    loop {
        let m: Matrix<F> = random_matrix(rng, n, n, ctx);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn random_simple_form<F: Sample, R: Rng + ?Sized>(rng: &mut R, k: usize, ctx: &F::Ctx) -> SimpleFormK<F> {
    SimpleFormK::new(random_invertible(rng, k, ctx)).expect("invertible")
}

fn kind_for(skew: bool) -> CommutationKind {
    if skew {
        CommutationKind::PseudoSkewCentrosymmetric
    } else {
        CommutationKind::PseudoCentrosymmetric
    }
}

/// A random matrix that commutes (or, with `skew`, anti-commutes) with the
/// assembled `K`.
pub fn random_pseudo_centro<F: Sample, R: Rng + ?Sized>(rng: &mut R, form: &SimpleFormK<F>, skew: bool) -> Matrix<F> {
    let ctx = form.k2().ctx().clone();
    let k = form.k();
    let b = random_matrix(rng, k, k, &ctx);
    let c = random_matrix(rng, k, k, &ctx);
    assemble_from_bc(&b, &c, form, kind_for(skew)).expect("conformable blocks")
}

/// `(A, K)` with `K = V K' V^-1` and `A = V M V^-1`, where `M` is
/// `[[P, Q], [-Q, P]]` (commuting with `K'`) or `[[P, Q], [Q, -P]]`
/// (anti-commuting).
pub fn random_general_pair<F: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    ctx: &F::Ctx,
    skew: bool,
) -> (Matrix<F>, AntiInvolution<F>) {
    let v = random_invertible(rng, 2 * k, ctx);
    let v_inv = v.inverse().expect("invertible");
    let p = random_matrix(rng, k, k, ctx);
    let q = random_matrix(rng, k, k, ctx);
    let m = if skew {
        Matrix::from_blocks(&p, &q, &q, &p.negate())
    } else {
        Matrix::from_blocks(&p, &q, &q.negate(), &p)
    }
    .expect("conformable blocks");
    let k_prime = SimpleFormK::<F>::canonical(k, ctx).assemble();
    let a = v.mul(&m).and_then(|t| t.mul(&v_inv)).expect("conformable");
    let kk = v
        .mul(k_prime.matrix())
        .and_then(|t| t.mul(&v_inv))
        .expect("conformable");
    (a, AntiInvolution::new(kk).expect("conjugate of an anti-involution"))
}

/// Free top half, mirrored bottom half.
pub fn random_alt_centro<F: Sample, R: Rng + ?Sized>(rng: &mut R, k: usize, ctx: &F::Ctx, skew: bool) -> Matrix<F> {
    let n = 2 * k;
    let mut a = Matrix::zeros(n, n, ctx);
    for i in 0..k {
        for j in 0..n {
            let v = F::sample(rng, ctx);
            let flip = ((i + j) % 2 == 1) ^ skew;
            a.set(n - 1 - i, n - 1 - j, if flip { -v.clone() } else { v.clone() });
            a.set(i, j, v);
        }
    }
    a
}

/// A random 2-even symmetric graph with at most `max_vertices` vertices
/// (at least 4), equal colour classes, and no bounded face enclosing an odd
/// number of missing lattice points.
///
/// Vertices grow outward from the unit square at the origin, always in
/// rotation pairs; afterwards rotation pairs of edges are dropped at random
/// as long as the graph stays connected.
pub fn random_symmetric_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> LatticeGraph {
    assert!(max_vertices >= 4, "the smallest instance has four vertices");
    let bound = 1 + 2 * (max_vertices as i64);
    loop {
        let target = 4 + 2 * rng.gen_range(0..=(max_vertices - 4) / 2);
        let mut verts: Vec<LatticeVertex> = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| LatticeVertex::new(x, y).expect("odd"))
            .collect();
        let mut stalls = 0;
        while verts.len() < target && stalls < 100 {
            let base = *verts.choose(rng).expect("nonempty");
            let (dx, dy) = *[(2, 0), (-2, 0), (0, 2), (0, -2)].choose(rng).expect("nonempty");
            let (x, y) = (base.x() + dx, base.y() + dy);
            if x.abs() > bound || y.abs() > bound {
                stalls += 1;
                continue;
            }
            let w = LatticeVertex::new(x, y).expect("odd");
            if verts.contains(&w) {
                stalls += 1;
                continue;
            }
            verts.push(w);
            verts.push(w.rotate());
        }
        let full = LatticeGraph::induced(&verts).expect("lattice vertices");
        let mut edges = full.edges().to_vec();
        let pairs: Vec<_> = full
            .edges()
            .iter()
            .filter(|e| e.a() < e.rotate().a())
            .copied()
            .collect();
        for e in pairs {
            if rng.gen_bool(0.2) {
                let trial: Vec<_> = edges.iter().copied().filter(|f| *f != e && *f != e.rotate()).collect();
                let g = LatticeGraph::new(verts.clone(), trial.clone()).expect("subset of edges");
                if g.is_connected() {
                    edges = trial;
                }
            }
        }
        let g = LatticeGraph::new(verts, edges).expect("subset of edges");
        let (white, black) = g.color_counts();
        if white == black && g.odd_faces().is_empty() {
            return g;
        }
    }
}

//! Pseudo-centrosymmetric matrices.
//!
//! A matrix `A` is pseudo-centrosymmetric with respect to an anti-involutory
//! `K` (`K^2 = -I`) when `KA = AK`, and pseudo-skew-centrosymmetric when
//! `KA = -AK`. For such `A` of order `2k` over a field in which -1 is not a
//! square, `det A = (+-1) * N(det(B + iC))` for two `k x k` blocks `B`, `C`,
//! where `N` is the norm `x^2 + y^2` of `F[i]`. This module finds `B` and
//! `C` (directly when `K` has the block form `[[0, K2], [-K2^-1, 0]]`, after
//! a change of basis otherwise) and returns the resulting certificate.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{Field, Gaussian, Rational};
use crate::matrix::Matrix;
use crate::two_squares::{decompose_two_squares, TwoSquares};

/// `K^2 = I`.
pub fn is_involutory<F: Field>(k: &Matrix<F>) -> Result<bool> {
    let n = k.order()?;
    Ok(k.mul(k)? == Matrix::identity(n, k.ctx()))
}

/// `K^2 = -I`.
pub fn is_anti_involutory<F: Field>(k: &Matrix<F>) -> Result<bool> {
    let n = k.order()?;
    Ok(k.mul(k)? == Matrix::identity(n, k.ctx()).negate())
}

/// An even-order matrix `K` with `K^2 = -I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiInvolution<F: Field> {
    k: Matrix<F>,
}

impl<F: Field> AntiInvolution<F> {
    pub fn new(k: Matrix<F>) -> Result<Self> {
        let n = k.order()?;
        if n % 2 == 1 {
            return Err(Error::OddOrder(n));
        }
        if !is_anti_involutory(&k)? {
            return Err(Error::NotAntiInvolutory);
        }
        Ok(AntiInvolution { k })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.k
    }

    pub fn order(&self) -> usize {
        self.k.rows()
    }

    /// `k`, where the order is `2k`.
    pub fn half(&self) -> usize {
        self.k.rows() / 2
    }
}

/// `K = [[0, K2], [-K2^-1, 0]]`, stored through its invertible block `K2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFormK<F: Field> {
    k2: Matrix<F>,
    k2_inv: Matrix<F>,
}

impl<F: Field> SimpleFormK<F> {
    pub fn new(k2: Matrix<F>) -> Result<Self> {
        let k2_inv = k2.inverse()?;
        Ok(SimpleFormK { k2, k2_inv })
    }

    /// `K' = [[0, -I], [I, 0]]`, the target of the change of basis.
    pub fn canonical(k: usize, ctx: &F::Ctx) -> Self {
        let minus_i = Matrix::identity(k, ctx).negate();
        SimpleFormK {
            k2: minus_i.clone(),
            k2_inv: minus_i,
        }
    }

    /// Recognizes the simple form inside a full anti-involution.
    pub fn from_anti_involution(k: &AntiInvolution<F>) -> Result<Self> {
        let (n, h) = (k.order(), k.half());
        let m = k.matrix();
        if !m.block(0..h, 0..h)?.is_zero() || !m.block(h..n, h..n)?.is_zero() {
            return Err(Error::NotSimpleForm);
        }
        let k2 = m.block(0..h, h..n)?;
        let form = SimpleFormK::new(k2).map_err(|_| Error::NotSimpleForm)?;
        if m.block(h..n, 0..h)? != form.k2_inv.negate() {
            return Err(Error::NotSimpleForm);
        }
        Ok(form)
    }

    pub fn k(&self) -> usize {
        self.k2.rows()
    }

    pub fn k2(&self) -> &Matrix<F> {
        &self.k2
    }

    pub fn k2_inv(&self) -> &Matrix<F> {
        &self.k2_inv
    }

    pub fn assemble(&self) -> AntiInvolution<F> {
        let ctx = self.k2.ctx();
        let z = Matrix::zeros(self.k(), self.k(), ctx);
        let k = Matrix::from_blocks(&z, &self.k2, &self.k2_inv.negate(), &z).expect("blocks share one size");
        AntiInvolution { k }
    }
}

/// How `A` interacts with `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommutationKind {
    /// `KA = AK`
    PseudoCentrosymmetric,
    /// `KA = -AK`
    PseudoSkewCentrosymmetric,
    /// Both at once, which for invertible `K` means `A = 0`.
    Both,
    Neither,
}

impl CommutationKind {
    fn is_skew(self) -> bool {
        self == CommutationKind::PseudoSkewCentrosymmetric
    }

    fn label(self) -> &'static str {
        match self {
            CommutationKind::PseudoCentrosymmetric => "pseudo-centrosymmetric",
            CommutationKind::PseudoSkewCentrosymmetric => "pseudo-skew-centrosymmetric",
            CommutationKind::Both => "both",
            CommutationKind::Neither => "neither",
        }
    }
}

impl fmt::Display for CommutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_commutation<F: Field>(a: &Matrix<F>, k: &AntiInvolution<F>) -> Result<CommutationKind> {
    let n = a.order()?;
    if n != k.order() {
        return Err(Error::DimensionMismatch {
            op: "commutation check",
            left: (n, n),
            right: (k.order(), k.order()),
        });
    }
    let ka = k.matrix().mul(a)?;
    let ak = a.mul(k.matrix())?;
    let commutes = ka == ak;
    let anti = ka == ak.negate();
    Ok(match (commutes, anti) {
        (true, true) => CommutationKind::Both,
        (true, false) => CommutationKind::PseudoCentrosymmetric,
        (false, true) => CommutationKind::PseudoSkewCentrosymmetric,
        (false, false) => CommutationKind::Neither,
    })
}

/// Witness that `det = sign * (x^2 + y^2)`, with `x + iy = det(B + iC)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosCertificate<F: Field> {
    pub x: F,
    pub y: F,
    /// `+1`, or `(-1)^k` for pseudo-skew inputs.
    pub sign: i8,
    pub det: F,
}

impl<F: Field> SosCertificate<F> {
    /// `det(B + iC)`.
    pub fn z(&self) -> Gaussian<F> {
        Gaussian::new(self.x.clone(), self.y.clone())
    }

    /// Recomputes `sign * (x^2 + y^2)` and compares with the stored value.
    pub fn is_consistent(&self) -> bool {
        let norm = self.x.square() + self.y.square();
        let value = if self.sign < 0 { -norm } else { norm };
        value == self.det
    }
}

fn resolve_kind(kind: CommutationKind) -> Result<CommutationKind> {
    match kind {
        CommutationKind::Neither => Err(Error::NeitherKind),
        // A = 0 satisfies both relations; the commuting formulas apply.
        CommutationKind::Both => Ok(CommutationKind::PseudoCentrosymmetric),
        k => Ok(k),
    }
}

/// Splits `A` as `[[B, C K2], [-+K2^-1 C, +-K2^-1 B K2]]` and returns
/// `(B, C)`. Signs follow `kind`: upper for pseudo-centrosymmetric, lower
/// for the skew case.
pub fn extract_bc<F: Field>(
    a: &Matrix<F>,
    k: &SimpleFormK<F>,
    kind: CommutationKind,
) -> Result<(Matrix<F>, Matrix<F>)> {
    let kind = resolve_kind(kind)?;
    let n = a.order()?;
    let h = k.k();
    if n != 2 * h {
        return Err(Error::DimensionMismatch {
            op: "block extraction",
            left: (n, n),
            right: (2 * h, 2 * h),
        });
    }
    let b = a.block(0..h, 0..h)?;
    let c = a.block(0..h, h..n)?.mul(k.k2_inv())?;
    let a3 = a.block(h..n, 0..h)?;
    let a4 = a.block(h..n, h..n)?;
    let expected_a3 = k.k2_inv().mul(&c)?;
    let expected_a4 = k.k2_inv().mul(&b)?.mul(k.k2())?;
    let skew = kind.is_skew();
    let (expected_a3, expected_a4) = if skew {
        (expected_a3, expected_a4.negate())
    } else {
        (expected_a3.negate(), expected_a4)
    };
    if a3 != expected_a3 {
        return Err(Error::BlockRelation {
            kind: kind.label(),
            relation: if skew { "A3 = K2^-1 C" } else { "A3 = -K2^-1 C" },
        });
    }
    if a4 != expected_a4 {
        return Err(Error::BlockRelation {
            kind: kind.label(),
            relation: if skew { "A4 = -K2^-1 B K2" } else { "A4 = K2^-1 B K2" },
        });
    }
    Ok((b, c))
}

/// Reassembles `A` from `(B, C)`; inverse of [`extract_bc`].
pub fn assemble_from_bc<F: Field>(
    b: &Matrix<F>,
    c: &Matrix<F>,
    k: &SimpleFormK<F>,
    kind: CommutationKind,
) -> Result<Matrix<F>> {
    let kind = resolve_kind(kind)?;
    let top_right = c.mul(k.k2())?;
    let bottom_left = k.k2_inv().mul(c)?;
    let bottom_right = k.k2_inv().mul(b)?.mul(k.k2())?;
    if kind.is_skew() {
        Matrix::from_blocks(b, &top_right, &bottom_left, &bottom_right.negate())
    } else {
        Matrix::from_blocks(b, &top_right, &bottom_left.negate(), &bottom_right)
    }
}

/// `det(B + iC)` computed in `F[i]`, and `det A = sign * N(det(B + iC))`.
pub fn det_via_half<F: Field>(b: &Matrix<F>, c: &Matrix<F>, kind: CommutationKind) -> Result<SosCertificate<F>> {
    let kind = resolve_kind(kind)?;
    let k = b.order()?;
    if c.rows() != k || c.cols() != k {
        return Err(Error::DimensionMismatch {
            op: "B + iC",
            left: (k, k),
            right: (c.rows(), c.cols()),
        });
    }
    let ctx = b.ctx();
    Gaussian::<F>::check_base(ctx)?;
    let z = Matrix::from_fn(k, k, ctx, |i, j| {
        Gaussian::new(b.get(i, j).clone(), c.get(i, j).clone())
    })
    .det_gauss()?;
    let sign: i8 = if kind.is_skew() && k % 2 == 1 { -1 } else { 1 };
    let norm = z.norm();
    let det = if sign < 0 { -norm } else { norm };
    Ok(SosCertificate {
        x: z.re,
        y: z.im,
        sign,
        det,
    })
}

/// Columns `v_1..v_k, K v_1..K v_k` forming a basis, so that
/// `K V = V K'` with `K' = [[0, -I], [I, 0]]`.
///
/// Candidates are the standard basis vectors in index order; a candidate is
/// taken when it lies outside the span collected so far, which is checked by
/// rank.
pub fn build_basis<F: Field>(k: &AntiInvolution<F>) -> Result<Matrix<F>> {
    let ctx = k.matrix().ctx();
    Gaussian::<F>::check_base(ctx)?;
    let (n, h) = (k.order(), k.half());
    let mut vs: Vec<Vec<F>> = Vec::with_capacity(h);
    let mut kvs: Vec<Vec<F>> = Vec::with_capacity(h);
    let rank_of = |vs: &[Vec<F>], kvs: &[Vec<F>], extra: &[Vec<F>]| {
        let cols: Vec<Vec<F>> = vs.iter().chain(kvs).chain(extra).cloned().collect();
        Matrix::from_columns(&cols, ctx).rank()
    };
    for j in 0..n {
        if vs.len() == h {
            break;
        }
        let e: Vec<F> = (0..n)
            .map(|i| if i == j { F::one(ctx) } else { F::zero(ctx) })
            .collect();
        let have = 2 * vs.len();
        if rank_of(&vs, &kvs, std::slice::from_ref(&e)) == have {
            continue;
        }
        let ke = k.matrix().column(j);
        if rank_of(&vs, &kvs, &[e.clone(), ke.clone()]) != have + 2 {
            return Err(Error::Internal(format!(
                "e_{} and K e_{} do not extend the basis",
                j + 1,
                j + 1
            )));
        }
        vs.push(e);
        kvs.push(ke);
    }
    if vs.len() != h {
        return Err(Error::Internal("basis construction ran out of candidates".into()));
    }
    let cols: Vec<Vec<F>> = vs.into_iter().chain(kvs).collect();
    let v = Matrix::from_columns(&cols, ctx);
    let target = SimpleFormK::<F>::canonical(h, ctx).assemble();
    if k.matrix().mul(&v)? != v.mul(target.matrix())? {
        return Err(Error::Internal("K V != V K'".into()));
    }
    Ok(v)
}

/// Certificate for any `A` commuting (or anti-commuting) with an arbitrary
/// anti-involution: change basis so that `K` becomes `K'`, then split.
pub fn sos_certificate_general<F: Field>(
    a: &Matrix<F>,
    k: &AntiInvolution<F>,
    kind: CommutationKind,
) -> Result<SosCertificate<F>> {
    let kind = resolve_kind(kind)?;
    let actual = classify_commutation(a, k)?;
    if actual != kind && actual != CommutationKind::Both {
        return Err(Error::BlockRelation {
            kind: kind.label(),
            relation: if kind.is_skew() { "KA = -AK" } else { "KA = AK" },
        });
    }
    let v = build_basis(k)?;
    let conjugated = a.conjugate_by(&v)?;
    let target = SimpleFormK::canonical(k.half(), a.ctx());
    let (b, c) = extract_bc(&conjugated, &target, kind)?;
    det_via_half(&b, &c, kind)
}

/// Splits directly when `K` is already in simple form, and falls back to
/// [`sos_certificate_general`] otherwise.
pub fn sos_certificate<F: Field>(
    a: &Matrix<F>,
    k: &AntiInvolution<F>,
    kind: CommutationKind,
) -> Result<SosCertificate<F>> {
    match SimpleFormK::from_anti_involution(k) {
        Ok(form) => {
            let kind = resolve_kind(kind)?;
            let (b, c) = extract_bc(a, &form, kind)?;
            det_via_half(&b, &c, kind)
        }
        Err(Error::NotSimpleForm) => sos_certificate_general(a, k, kind),
        Err(e) => Err(e),
    }
}

/// Integral `x^2 + y^2 = |det A|` for an integer matrix commuting (or
/// anti-commuting) with a rational anti-involution.
///
/// The rational certificate is used when both coordinates are already
/// integers; otherwise `|det A|` is decomposed directly, which is always
/// possible since an integer that is a sum of two rational squares is a sum
/// of two integral squares.
pub fn integral_certificate(
    a: &Matrix<Rational>,
    k: &AntiInvolution<Rational>,
    kind: CommutationKind,
) -> Result<TwoSquares> {
    if a.integer_entries().is_none() {
        return Err(Error::NotIntegral);
    }
    let cert = sos_certificate(a, k, kind)?;
    let as_nat = |q: &Rational| q.to_integer().map(|n| n.abs().to_biguint().expect("nonnegative"));
    if let (Some(x), Some(y)) = (as_nat(&cert.x), as_nat(&cert.y)) {
        return Ok(TwoSquares::new(x, y));
    }
    let det = cert.det.to_integer().ok_or(Error::NotIntegral)?;
    let n: BigUint = det.abs().to_biguint().expect("nonnegative");
    decompose_two_squares(&n)
}

/// A simultaneous row and column reordering, `P[i][j] = A[rows[i]][cols[j]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reordering {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Whether the reordered matrix is alternating skew-centrosymmetric
    /// rather than alternating centrosymmetric.
    pub skew: bool,
}

/// Searches for independent row and column permutations making `A`
/// alternating centrosymmetric, or failing that alternating
/// skew-centrosymmetric.
///
/// Backtracking fills the permutation slots from the outside in, pairing
/// position `p` with `n-1-p`, and checks every entry relation as soon as all
/// four of its indices are placed.
pub fn find_alt_centro_ordering<F: Field>(a: &Matrix<F>, max_order: usize) -> Result<Option<Reordering>> {
    let n = a.order()?;
    if n > max_order {
        return Err(Error::GuardExceeded {
            what: "matrix order (raise the guard to search further)",
            value: n,
            limit: max_order,
        });
    }
    for skew in [false, true] {
        let mut search = OrderingSearch {
            a,
            n,
            skew,
            rows: vec![usize::MAX; n],
            cols: vec![usize::MAX; n],
            row_used: vec![false; n],
            col_used: vec![false; n],
        };
        if search.run(0) {
            return Ok(Some(Reordering {
                rows: search.rows,
                cols: search.cols,
                skew,
            }));
        }
    }
    Ok(None)
}

/// `true` iff no reordering makes `A` alternating (skew-)centrosymmetric.
pub fn no_alt_centro_ordering<F: Field>(a: &Matrix<F>, max_order: usize) -> Result<bool> {
    Ok(find_alt_centro_ordering(a, max_order)?.is_none())
}

/// Default order guard for the reordering search.
pub const DEFAULT_ORDERING_GUARD: usize = 8;

struct OrderingSearch<'a, F: Field> {
    a: &'a Matrix<F>,
    n: usize,
    skew: bool,
    rows: Vec<usize>,
    cols: Vec<usize>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
}

impl<F: Field> OrderingSearch<'_, F> {
    /// Slot `s` enumerates, for each layer `p = 0, 1, ...`, the row slots
    /// `p` and `n-1-p` followed by the column slots `p` and `n-1-p`.
    fn slot(&self, s: usize) -> (bool, usize) {
        let layer = s / 4;
        let outer = self.n - 1 - layer;
        match s % 4 {
            0 => (true, layer),
            1 => (true, outer),
            2 => (false, layer),
            _ => (false, outer),
        }
    }

    fn slot_count(&self) -> usize {
        4 * self.n.div_ceil(2)
    }

    fn run(&mut self, s: usize) -> bool {
        if s == self.slot_count() {
            return true;
        }
        let (is_row, pos) = self.slot(s);
        // for odd n the middle layer names the same slot twice
        let filled = if is_row { self.rows[pos] } else { self.cols[pos] };
        if filled != usize::MAX {
            return self.run(s + 1);
        }
        for candidate in 0..self.n {
            let used = if is_row {
                self.row_used[candidate]
            } else {
                self.col_used[candidate]
            };
            if used {
                continue;
            }
            if is_row {
                self.rows[pos] = candidate;
                self.row_used[candidate] = true;
            } else {
                self.cols[pos] = candidate;
                self.col_used[candidate] = true;
            }
            if self.consistent(is_row, pos) && self.run(s + 1) {
                return true;
            }
            if is_row {
                self.rows[pos] = usize::MAX;
                self.row_used[candidate] = false;
            } else {
                self.cols[pos] = usize::MAX;
                self.col_used[candidate] = false;
            }
        }
        false
    }

    /// Checks every relation touching the slot just placed.
    fn consistent(&self, is_row: bool, pos: usize) -> bool {
        let n = self.n;
        for other in 0..n {
            let (i, j) = if is_row { (pos, other) } else { (other, pos) };
            let (mi, mj) = (n - 1 - i, n - 1 - j);
            let idx = [self.rows[i], self.cols[j], self.rows[mi], self.cols[mj]];
            if idx.contains(&usize::MAX) {
                continue;
            }
            let lhs = self.a.get(idx[0], idx[1]).clone();
            let rhs = self.a.get(idx[2], idx[3]).clone();
            let flip = ((i + j) % 2 == 1) ^ self.skew;
            let expected = if flip { -rhs } else { rhs };
            if lhs != expected {
                return false;
            }
        }
        true
    }
}

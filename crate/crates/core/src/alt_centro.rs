//! Alternating (skew-)centrosymmetric matrices and the complementary-subset
//! determinant formula.
//!
//! The alternating exchange matrix of order `n` has `(-1)^(i+1)` at
//! `(i, n+1-i)` (1-based) and zeros elsewhere. A matrix commutes with it
//! exactly when `a_ij = (-1)^(i+j) a_(n+1-i, n+1-j)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Gaussian};
use crate::matrix::Matrix;
use crate::structure::{AntiInvolution, SimpleFormK};

/// Default bound on `k` for the `2^k`-term formula.
pub const DEFAULT_GUARD_K: usize = 16;

/// Environment variable overriding [`DEFAULT_GUARD_K`].
pub const GUARD_ENV: &str = "CENTRO_GUARD_K";

/// The guard in effect: `CENTRO_GUARD_K` when set to a number, else 16.
pub fn guard_k() -> usize {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD_K)
}

/// Alternating exchange matrix of even order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingExchange {
    order: usize,
}

impl AlternatingExchange {
    /// Odd orders are rejected: there the matrix squares to `+I`.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order % 2 == 1 {
            return Err(Error::OddOrder(order));
        }
        Ok(AlternatingExchange { order })
    }

    pub fn order(self) -> usize {
        self.order
    }

    /// The same pattern at any order, odd included.
    pub fn matrix_any_order<F: Field>(n: usize, ctx: &F::Ctx) -> Matrix<F> {
        Matrix::from_fn(n, n, ctx, |i, j| {
            if i + j + 1 != n {
                F::zero(ctx)
            } else if i % 2 == 0 {
                F::one(ctx)
            } else {
                -F::one(ctx)
            }
        })
    }

    pub fn matrix<F: Field>(self, ctx: &F::Ctx) -> Matrix<F> {
        Self::matrix_any_order(self.order, ctx)
    }

    pub fn anti_involution<F: Field>(self, ctx: &F::Ctx) -> AntiInvolution<F> {
        AntiInvolution::new(self.matrix(ctx)).expect("alternating exchange squares to -I")
    }

    /// The block `K2`: `(-1)^(r+1)` at `(r, k+1-r)`.
    pub fn simple_form<F: Field>(self, ctx: &F::Ctx) -> SimpleFormK<F> {
        let k = self.order / 2;
        let k2 = Self::matrix_any_order(k, ctx);
        SimpleFormK::new(k2).expect("anti-diagonal sign matrix is invertible")
    }
}

fn alternating_with<F: Field>(a: &Matrix<F>, skew: bool) -> Result<bool> {
    let n = a.order()?;
    for i in 0..n {
        for j in 0..n {
            let mirror = a.get(n - 1 - i, n - 1 - j).clone();
            let flip = ((i + j) % 2 == 1) ^ skew;
            let expected = if flip { -mirror } else { mirror };
            if *a.get(i, j) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a_ij = (-1)^(i+j) a_(n+1-i, n+1-j)` for all `i, j`.
pub fn is_alternating_centrosymmetric<F: Field>(a: &Matrix<F>) -> Result<bool> {
    alternating_with(a, false)
}

/// `a_ij = (-1)^(i+j+1) a_(n+1-i, n+1-j)` for all `i, j`.
pub fn is_alternating_skew_centrosymmetric<F: Field>(a: &Matrix<F>) -> Result<bool> {
    alternating_with(a, true)
}

/// Which sum a complementary subset contributes to, by `l mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsetClass {
    S,
    T,
    SPrime,
    TPrime,
}

impl SubsetClass {
    pub fn of(l: usize) -> Self {
        match l % 4 {
            0 => SubsetClass::S,
            1 => SubsetClass::T,
            2 => SubsetClass::SPrime,
            _ => SubsetClass::TPrime,
        }
    }
}

impl fmt::Display for SubsetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetClass::S => "S",
            SubsetClass::T => "T",
            SubsetClass::SPrime => "S'",
            SubsetClass::TPrime => "T'",
        })
    }
}

/// `I ∪ {2k+1-i : i in [k] \ I}` for some `I ⊆ [k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementarySubset {
    /// 1-based, ascending.
    pub members: Vec<usize>,
    /// `|I|`.
    pub generator_size: usize,
    pub class: SubsetClass,
}

impl ComplementarySubset {
    /// Exactly one of `i`, `2k+1-i` belongs, for each `i`.
    pub fn is_complementary(&self, k: usize) -> bool {
        self.members.len() == k
            && (1..=2 * k).all(|i| self.members.contains(&i) != self.members.contains(&(2 * k + 1 - i)))
    }
}

/// All `2^k` complementary subsets. Subset number `m` takes `I` to be the
/// set bits of `m` (bit 0 standing for 1).
pub fn enumerate_complementary(k: usize) -> Vec<ComplementarySubset> {
    assert!(k < usize::BITS as usize, "k too large to enumerate");
    (0usize..1 << k)
        .map(|mask| {
            let mut members: Vec<usize> = (1..=k)
                .map(|i| if mask >> (i - 1) & 1 == 1 { i } else { 2 * k + 1 - i })
                .collect();
            members.sort_unstable();
            let l = mask.count_ones() as usize;
            ComplementarySubset {
                members,
                generator_size: l,
                class: SubsetClass::of(l),
            }
        })
        .collect()
}

/// Output of [`det_via_complementary`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementaryDet<F: Field> {
    /// `sum over S - sum over S'` of `det M(Ĩ)`.
    pub s_diff: F,
    /// `sum over T - sum over T'` of `det M(Ĩ)`.
    pub t_diff: F,
    /// `x + iy = det(B + iC)`.
    pub x: F,
    pub y: F,
    /// `det A`: `x^2 + y^2`, or `(-1)^k (x^2 + y^2)` in the skew case.
    pub det: F,
}

impl<F: Field> ComplementaryDet<F> {
    pub fn z(&self) -> Gaussian<F> {
        Gaussian::new(self.x.clone(), self.y.clone())
    }
}

/// Determinant of an alternating (skew-)centrosymmetric matrix of order
/// `2k` from the `2^k` minors `det M(Ĩ)` of its top `k` rows.
///
/// With `X = S - S'` and `Y = T - T'`, `det(B + iC)` is `(-1)^(k/2)(X + iY)`
/// for even `k` and `(-1)^((k-1)/2)(Y + iX)` for odd `k`.
pub fn det_via_complementary<F: Field>(a: &Matrix<F>, skew: bool) -> Result<ComplementaryDet<F>> {
    det_via_complementary_with_guard(a, skew, guard_k())
}

pub fn det_via_complementary_with_guard<F: Field>(
    a: &Matrix<F>,
    skew: bool,
    guard: usize,
) -> Result<ComplementaryDet<F>> {
    let n = a.order()?;
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let holds = if skew {
        is_alternating_skew_centrosymmetric(a)?
    } else {
        is_alternating_centrosymmetric(a)?
    };
    if !holds {
        return Err(Error::NotAlternating(if skew {
            "skew-centrosymmetric"
        } else {
            "centrosymmetric"
        }));
    }
    let k = n / 2;
    if k > guard {
        return Err(Error::GuardExceeded {
            what: "k for the complementary-subset formula",
            value: k,
            limit: guard,
        });
    }
    let ctx = a.ctx();
    let mut sums: [F; 4] = std::array::from_fn(|_| F::zero(ctx));
    for subset in enumerate_complementary(k) {
        let cols: Vec<usize> = subset.members.iter().map(|m| m - 1).collect();
        let minor = a.submatrix_by_columns(&cols, k)?.det()?;
        let slot = &mut sums[subset.class as usize];
        *slot = slot.clone() + minor;
    }
    let [s, t, s_prime, t_prime] = sums;
    let s_diff = s - s_prime;
    let t_diff = t - t_prime;
    let (x, y) = if k % 2 == 0 {
        (s_diff.clone(), t_diff.clone())
    } else {
        (t_diff.clone(), s_diff.clone())
    };
    let (x, y) = if (k / 2) % 2 == 1 { (-x, -y) } else { (x, y) };
    let norm = x.square() + y.square();
    let det = if skew && k % 2 == 1 { -norm } else { norm };
    Ok(ComplementaryDet {
        s_diff,
        t_diff,
        x,
        y,
        det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeModulus, Rational};
    use crate::fixtures::{example_matrix, mirrored_from_top};
    use crate::structure::{classify_commutation, det_via_half, extract_bc, CommutationKind};
    use proptest::prelude::*;

    type Mq = Matrix<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn exchange_matrices() {
        let k2 = AlternatingExchange::new(2).unwrap().matrix::<Rational>(&());
        assert_eq!(k2, Mq::from_ints(&[[0, 1], [-1, 0]], &()));
        let k6 = AlternatingExchange::new(6).unwrap().matrix::<Rational>(&());
        let diag: Vec<Rational> = (0..6).map(|i| k6.get(i, 5 - i).clone()).collect();
        assert_eq!(diag, [1, -1, 1, -1, 1, -1].map(q));
        assert!(matches!(AlternatingExchange::new(5), Err(Error::OddOrder(5))));
        assert!(AlternatingExchange::new(0).is_err());
    }

    #[test]
    fn alternating_exchange_determinants() {
        // det(K)^2 = det(-I) = 1
        for n in (2..=10).step_by(2) {
            let k = AlternatingExchange::new(n).unwrap().matrix::<Rational>(&());
            let d = k.det().unwrap();
            assert_eq!(d.square(), q(1));
            if n <= 8 {
                assert_eq!(d, crate::oracle::det_cofactor(&k).unwrap());
            }
        }
    }

    #[test]
    fn predicates_on_fixtures() {
        assert!(is_alternating_centrosymmetric(&example_matrix()).unwrap());
        assert!(is_alternating_centrosymmetric(&mirrored_from_top(&(1..=18).collect::<Vec<i64>>())).unwrap());
        for n in 1..7 {
            assert!(is_alternating_centrosymmetric(&Mq::identity(n, &())).unwrap());
        }
        assert!(!is_alternating_skew_centrosymmetric(&example_matrix()).unwrap());
        assert!(is_alternating_skew_centrosymmetric(&Mq::from_ints(&[[1, 0], [0, -1]], &())).unwrap());
    }

    #[test]
    fn complementary_enumeration_small() {
        let one = enumerate_complementary(1);
        assert_eq!(one[0].members, vec![2]);
        assert_eq!(one[0].class, SubsetClass::S);
        assert_eq!(one[1].members, vec![1]);
        assert_eq!(one[1].class, SubsetClass::T);

        let two = enumerate_complementary(2);
        let shown: Vec<(Vec<usize>, SubsetClass)> = two.iter().map(|s| (s.members.clone(), s.class)).collect();
        assert_eq!(
            shown,
            vec![
                (vec![3, 4], SubsetClass::S),
                (vec![1, 3], SubsetClass::T),
                (vec![2, 4], SubsetClass::T),
                (vec![1, 2], SubsetClass::SPrime),
            ]
        );
        for k in 1..9 {
            let all = enumerate_complementary(k);
            assert_eq!(all.len(), 1 << k);
            assert!(all.iter().all(|s| s.is_complementary(k)));
            let mut distinct: Vec<&Vec<usize>> = all.iter().map(|s| &s.members).collect();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), 1 << k);
        }
    }

    #[test]
    fn class_sizes_are_binomial_sums() {
        fn binom(n: usize, r: usize) -> usize {
            (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for k in 1..12 {
            let all = enumerate_complementary(k);
            for (class, residue) in [
                (SubsetClass::S, 0),
                (SubsetClass::T, 1),
                (SubsetClass::SPrime, 2),
                (SubsetClass::TPrime, 3),
            ] {
                let expected: usize = (residue..=k).step_by(4).map(|l| binom(k, l)).sum();
                assert_eq!(all.iter().filter(|s| s.class == class).count(), expected);
            }
        }
    }

    #[test]
    fn identity_of_order_two() {
        let r = det_via_complementary(&Mq::identity(2, &()), false).unwrap();
        assert_eq!((r.s_diff, r.t_diff), (q(0), q(1)));
        assert_eq!((r.x, r.y, r.det), (q(1), q(0), q(1)));
    }

    #[test]
    fn example_formula() {
        let a = example_matrix();
        let r = det_via_complementary(&a, false).unwrap();
        assert_eq!(r.det, q(10));
        assert_eq!((r.x.clone(), r.y.clone()), (q(-3), q(1)));
        let form = AlternatingExchange::new(6).unwrap().simple_form(&());
        let (b, c) = extract_bc(&a, &form, CommutationKind::PseudoCentrosymmetric).unwrap();
        let half = det_via_half(&b, &c, CommutationKind::PseudoCentrosymmetric).unwrap();
        assert_eq!(r.z(), half.z());
    }

    #[test]
    fn rejects_non_alternating_and_guard() {
        let mut a = Mq::identity(4, &());
        a.set(0, 1, q(1));
        assert_eq!(
            det_via_complementary(&a, false),
            Err(Error::NotAlternating("centrosymmetric"))
        );
        let big = Mq::identity(6, &());
        assert!(matches!(
            det_via_complementary_with_guard(&big, false, 2),
            Err(Error::GuardExceeded { .. })
        ));
    }

    /// Random alternating (skew-)centrosymmetric matrix: the top half is
    /// free, the bottom half mirrors it.
    fn mirrored<F: Field>(n: usize, top: &[F], skew: bool, ctx: &F::Ctx) -> Matrix<F> {
        let h = n / 2;
        let mut a = Matrix::zeros(n, n, ctx);
        for i in 0..h {
            for j in 0..n {
                let v = top[i * n + j].clone();
                let flip = ((i + j) % 2 == 1) ^ skew;
                a.set(n - 1 - i, n - 1 - j, if flip { -v.clone() } else { v.clone() });
                a.set(i, j, v);
            }
        }
        a
    }

    fn check_against_half<F: Field>(a: &Matrix<F>, skew: bool) -> std::result::Result<(), TestCaseError> {
        let n = a.rows();
        let r = det_via_complementary(a, skew).unwrap();
        prop_assert_eq!(r.det.clone(), a.det().unwrap());
        let kind = if skew {
            CommutationKind::PseudoSkewCentrosymmetric
        } else {
            CommutationKind::PseudoCentrosymmetric
        };
        let exch = AlternatingExchange::new(n).unwrap();
        let actual = classify_commutation(a, &exch.anti_involution(a.ctx())).unwrap();
        prop_assert!(actual == kind || actual == CommutationKind::Both);
        let (b, c) = extract_bc(a, &exch.simple_form(a.ctx()), kind).unwrap();
        let half = det_via_half(&b, &c, kind).unwrap();
        prop_assert_eq!(r.z(), half.z());
        Ok(())
    }

    proptest! {
        #[test]
        fn formula_matches_determinant_over_q(
            h in 1usize..=4,
            entries in proptest::collection::vec(-3i64..=3, 32),
            skew in any::<bool>(),
        ) {
            let n = 2 * h;
            let top: Vec<Rational> = entries[..h * n].iter().map(|&v| q(v)).collect();
            let a = mirrored(n, &top, skew, &());
            check_against_half(&a, skew)?;
        }

        #[test]
        fn formula_matches_determinant_over_f7(
            h in 1usize..=4,
            entries in proptest::collection::vec(0u64..7, 32),
            skew in any::<bool>(),
        ) {
            let p = PrimeModulus::new(7).unwrap();
            let n = 2 * h;
            let top: Vec<Fp> = entries[..h * n].iter().map(|&v| Fp::new(v, p)).collect();
            let a = mirrored(n, &top, skew, &p);
            check_against_half(&a, skew)?;
        }

        #[test]
        fn mirrored_pattern_is_alternating(values in proptest::collection::vec(-50i64..50, 18)) {
            prop_assert!(is_alternating_centrosymmetric(&mirrored_from_top(&values)).unwrap());
        }

        #[test]
        fn predicate_agrees_with_commutation(h in 1usize..=3, entries in proptest::collection::vec(-1i64..=1, 36)) {
            let n = 2 * h;
            let a = Mq::from_fn(n, n, &(), |i, j| q(entries[i * n + j]));
            let k = AlternatingExchange::new(n).unwrap().anti_involution(&());
            let kind = classify_commutation(&a, &k).unwrap();
            let centro = matches!(kind, CommutationKind::PseudoCentrosymmetric | CommutationKind::Both);
            let skew = matches!(kind, CommutationKind::PseudoSkewCentrosymmetric | CommutationKind::Both);
            prop_assert_eq!(is_alternating_centrosymmetric(&a).unwrap(), centro);
            prop_assert_eq!(is_alternating_skew_centrosymmetric(&a).unwrap(), skew);
        }
    }
}

//! Writing integers as `x^2 + y^2`.
//!
//! `n` is a sum of two squares iff every prime `q = 3 (mod 4)` divides it to
//! an even power. Representations are assembled in the Gaussian integers:
//! each prime `p = 1 (mod 4)` splits as `(a+bi)(a-bi)`, with `a`, `b` found
//! from a square root of -1 mod `p` by Euclidean descent, and products of
//! norms are norms of products.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::factorize;

/// `x^2 + y^2 = n` with `x >= y >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoSquares {
    x: BigUint,
    y: BigUint,
    n: BigUint,
}

impl TwoSquares {
    /// Orders the pair so that `x >= y`.
    pub fn new(x: BigUint, y: BigUint) -> Self {
        let (x, y) = if x >= y { (x, y) } else { (y, x) };
        let n = &x * &x + &y * &y;
        TwoSquares { x, y, n }
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }
}

impl fmt::Display for TwoSquares {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}^2 + {}^2", self.n, self.x, self.y)
    }
}

/// First prime `q = 3 (mod 4)` occurring to an odd power, with its exponent.
pub fn obstruction(n: &BigUint) -> Option<(BigUint, u32)> {
    factorize(n).into_iter().find(|(p, e)| is_3_mod_4(p) && e % 2 == 1)
}

fn is_3_mod_4(p: &BigUint) -> bool {
    (p % 4u32) == BigUint::from(3u32)
}

pub fn is_sum_of_two_squares(n: &BigUint) -> bool {
    obstruction(n).is_none()
}

type GaussInt = (BigInt, BigInt);

fn gmul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gpow(a: &GaussInt, mut e: u32) -> GaussInt {
    let mut acc: GaussInt = (BigInt::one(), BigInt::zero());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = gmul(&acc, &base);
        }
        base = gmul(&base, &base);
        e >>= 1;
    }
    acc
}

/// `(a, b)` with `a^2 + b^2 = p` for a prime `p = 1 (mod 4)`.
fn split_prime(p: &BigUint) -> (BigUint, BigUint) {
    let one = BigUint::one();
    let p_minus_1 = p - &one;
    let half = &p_minus_1 >> 1;
    let quarter = &p_minus_1 >> 2;
    let mut c = BigUint::from(2u32);
    // c^((p-1)/2) = -1 exactly for non-residues c
    while c.modpow(&half, p) != p_minus_1 {
        c += 1u32;
    }
    let t = c.modpow(&quarter, p);
    let (mut a, mut b) = (p.clone(), t);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let c = rest.sqrt();
    assert_eq!(&c * &c, rest, "descent failed for {p}");
    (b, c)
}

/// Upper bound on the number of Gaussian products examined.
const COMBINATION_LIMIT: usize = 1 << 20;

/// Every representation with `x >= y >= 0`, largest `x` first.
pub fn all_two_squares(n: &BigUint) -> Result<Vec<TwoSquares>> {
    if n.is_zero() {
        return Ok(vec![TwoSquares::new(BigUint::zero(), BigUint::zero())]);
    }
    let factors = factorize(n);
    if let Some((q, e)) = factors.iter().find(|(p, e)| is_3_mod_4(p) && e % 2 == 1) {
        return Err(Error::NotSumOfTwoSquares {
            n: BigInt::from(n.clone()),
            prime: BigInt::from(q.clone()),
            exponent: *e,
        });
    }
    // the part every representation shares
    let mut fixed: GaussInt = (BigInt::one(), BigInt::zero());
    let mut split: Vec<(GaussInt, u32)> = Vec::new();
    for (p, e) in &factors {
        if *p == BigUint::from(2u32) {
            fixed = gmul(&fixed, &gpow(&(BigInt::one(), BigInt::one()), *e));
        } else if is_3_mod_4(p) {
            let q = BigInt::from(p.pow(e / 2));
            fixed = gmul(&fixed, &(q, BigInt::zero()));
        } else {
            let (a, b) = split_prime(p);
            split.push(((BigInt::from(a), BigInt::from(b)), *e));
        }
    }
    let combos = split
        .iter()
        .fold(1usize, |acc, (_, e)| acc.saturating_mul(*e as usize + 1));
    if combos > COMBINATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "Gaussian factor combinations",
            value: combos,
            limit: COMBINATION_LIMIT,
        });
    }
    let mut partial: Vec<GaussInt> = vec![fixed];
    for (pi, e) in &split {
        let conj = (pi.0.clone(), -pi.1.clone());
        let mut next = Vec::with_capacity(partial.len() * (*e as usize + 1));
        for j in 0..=*e {
            let factor = gmul(&gpow(pi, j), &gpow(&conj, e - j));
            for z in &partial {
                next.push(gmul(z, &factor));
            }
        }
        partial = next;
    }
    let mut reps: Vec<TwoSquares> = partial
        .into_iter()
        .map(|(re, im)| {
            TwoSquares::new(
                re.abs().to_biguint().expect("nonnegative"),
                im.abs().to_biguint().expect("nonnegative"),
            )
        })
        .collect();
    reps.sort_by(|a, b| b.x.cmp(&a.x));
    reps.dedup();
    debug_assert!(reps.iter().all(|r| r.n == *n));
    Ok(reps)
}

/// The representation with the largest `x`.
pub fn decompose_two_squares(n: &BigUint) -> Result<TwoSquares> {
    Ok(all_two_squares(n)?.swap_remove(0))
}

/// Convenience wrapper for machine integers.
pub fn decompose_u64(n: u64) -> Result<TwoSquares> {
    decompose_two_squares(&BigUint::from(n))
}

impl TwoSquares {
    /// `(x, y)` as machine integers when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.x.to_u64()?, self.y.to_u64()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::two_squares_exhaustive;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pair(n: u64) -> (u64, u64) {
        decompose_u64(n).unwrap().to_u64_pair().unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(is_sum_of_two_squares(&big(0)));
        assert!(!is_sum_of_two_squares(&big(3)));
        assert!(is_sum_of_two_squares(&big(10)));
        assert!(is_sum_of_two_squares(&big(9)));
        assert_eq!(obstruction(&big(3 * 3 * 7 * 5)), Some((big(7), 1)));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(pair(2), (1, 1));
        assert_eq!(pair(10), (3, 1));
        assert_eq!(pair(1024), (32, 0));
        assert_eq!(pair(0), (0, 0));
        assert_eq!(pair(25), (5, 0));
        assert_eq!(pair(8), (2, 2));
        assert_eq!(pair(20), (4, 2));
    }

    #[test]
    fn infeasible_cases_name_the_prime() {
        let err = decompose_u64(21).unwrap_err();
        assert_eq!(
            err,
            Error::NotSumOfTwoSquares {
                n: 21.into(),
                prime: 3.into(),
                exponent: 1
            }
        );
        assert!(err.to_string().contains("prime 3"));
    }

    #[test]
    fn all_representations_of_25_and_65() {
        let reps: Vec<(u64, u64)> = all_two_squares(&big(25))
            .unwrap()
            .iter()
            .map(|r| r.to_u64_pair().unwrap())
            .collect();
        assert_eq!(reps, vec![(5, 0), (4, 3)]);
        let reps: Vec<(u64, u64)> = all_two_squares(&big(65))
            .unwrap()
            .iter()
            .map(|r| r.to_u64_pair().unwrap())
            .collect();
        assert_eq!(reps, vec![(8, 1), (7, 4)]);
    }

    #[test]
    fn prime_splitting() {
        for p in (5u64..20_000).filter(|&p| p % 4 == 1 && crate::factor::is_prime_u64(p)) {
            let (a, b) = split_prime(&big(p));
            assert_eq!(&a * &a + &b * &b, big(p));
        }
        let p = big(1_000_000_009); // = 1 mod 4
        let (a, b) = split_prime(&p);
        assert_eq!(&a * &a + &b * &b, p);
    }

    #[test]
    fn agrees_with_exhaustive_search_below_ten_thousand() {
        for n in 0..=10_000u64 {
            let fast = decompose_u64(n).ok().map(|t| t.to_u64_pair().unwrap());
            let slow = two_squares_exhaustive(n).unwrap();
            assert_eq!(fast, slow, "n = {n}");
            assert_eq!(is_sum_of_two_squares(&big(n)), slow.is_some());
        }
    }

    #[test]
    fn large_inputs() {
        // (2^61 - 1) = 3 mod 4 prime, squared
        let m = big((1 << 61) - 1);
        let t = decompose_two_squares(&(&m * &m)).unwrap();
        assert_eq!((t.x().clone(), t.y().clone()), (m.clone(), big(0)));
        let n = big(1_000_000_009) * big(998_244_353) * big(5);
        let t = decompose_two_squares(&n).unwrap();
        assert_eq!(t.x() * t.x() + t.y() * t.y(), n);
    }

    proptest! {
        #[test]
        fn products_stay_representable(a in 0u64..2000, b in 0u64..2000, c in 0u64..2000, d in 0u64..2000) {
            let m = a * a + b * b;
            let n = c * c + d * d;
            let t = decompose_u64(m * n).unwrap();
            prop_assert_eq!(t.n(), &big(m * n));
        }

        #[test]
        fn rational_representations_are_integral(
            p1 in -200i64..200, q1 in 1i64..30, p2 in -200i64..200, q2 in 1i64..30
        ) {
            // (p1/q1)^2 + (p2/q2)^2 scaled by (q1 q2)^2 is an integer sum of
            // two squares; so is any integer it equals after division by a
            // square denominator
            let num = (p1 * q2) * (p1 * q2) + (p2 * q1) * (p2 * q1);
            let den = (q1 * q2) * (q1 * q2);
            let num = num.unsigned_abs();
            let den = den.unsigned_abs();
            prop_assert!(is_sum_of_two_squares(&big(num)));
            if num % den == 0 {
                prop_assert!(is_sum_of_two_squares(&big(num / den)));
            }
        }

        #[test]
        fn canonical_pair_is_ordered(n in 0u64..1_000_000) {
            if let Ok(t) = decompose_u64(n) {
                prop_assert!(t.x() >= t.y());
                prop_assert_eq!(t.n(), &big(n));
            }
        }
    }
}

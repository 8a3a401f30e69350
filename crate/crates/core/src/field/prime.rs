use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Field;
use crate::error::{Error, Result};
use crate::factor::is_prime_u64;

/// An odd prime modulus. Checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Accepts odd primes below 2^63.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element of `F_p`, stored as its representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        Fp {
            value: value % modulus.0,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        Fp {
            value: (value as i128).rem_euclid(p) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    fn check(self, rhs: Fp) {
        assert_eq!(self.modulus, rhs.modulus, "mixing elements of different prime fields");
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let p = self.modulus.0;
        let s = self.value as u128 + rhs.value as u128;
        Fp::new((s % p as u128) as u64, self.modulus)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let p = self.modulus.0;
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            p - (rhs.value - self.value)
        };
        Fp::new(v, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp::new(Fp::mulmod(self.value, rhs.value, self.modulus.0), self.modulus)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp::new(self.modulus.0 - self.value, self.modulus)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl Field for Fp {
    type Ctx = PrimeModulus;

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp::new(0, *ctx)
    }

    fn one(ctx: &PrimeModulus) -> Self {
        Fp::new(1, *ctx)
    }

    fn from_integer(n: &BigInt, ctx: &PrimeModulus) -> Self {
        let r = n.mod_floor(&BigInt::from(ctx.0));
        Fp::new(r.to_u64().expect("residue below modulus"), *ctx)
    }

    fn context(&self) -> PrimeModulus {
        self.modulus
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2) = a^-1
        Ok(Field::pow(self, self.modulus.0 - 2))
    }

    fn minus_one_is_square(ctx: &PrimeModulus) -> bool {
        ctx.0 % 4 == 1
    }

    fn field_name(ctx: &PrimeModulus) -> String {
        format!("F_{}", ctx.0)
    }

    fn parse(s: &str, ctx: &PrimeModulus) -> std::result::Result<Self, String> {
        let q: super::Rational = s.parse()?;
        let num = Fp::from_integer(q.numer(), ctx);
        let den = Fp::from_integer(q.denom(), ctx);
        num.try_div(&den)
            .map_err(|_| format!("denominator of `{s}` vanishes mod {}", ctx.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7(v: i64) -> Fp {
        Fp::from_i64(v, PrimeModulus::new(7).unwrap())
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeModulus::new(7).is_ok());
        assert!(PrimeModulus::new(5).is_ok());
        assert_eq!(PrimeModulus::new(2), Err(Error::InvalidModulus(2)));
        assert_eq!(PrimeModulus::new(9), Err(Error::InvalidModulus(9)));
        assert_eq!(PrimeModulus::new(1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn inverse_mod_seven() {
        assert_eq!(f7(3).inv().unwrap(), f7(5));
        assert_eq!(f7(0).inv(), Err(Error::DivisionByZero));
        assert_eq!(f7(-1), f7(6));
        assert_eq!(f7(3) - f7(5), f7(5));
        assert_eq!(-f7(0), f7(0));
    }

    #[test]
    fn parse_residues() {
        let p = PrimeModulus::new(7).unwrap();
        assert_eq!(Fp::parse("-1", &p).unwrap(), f7(6));
        assert_eq!(Fp::parse("1/3", &p).unwrap(), f7(5));
        assert!(Fp::parse("1/7", &p).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms_mod_11(a in 0u64..11, b in 1u64..11) {
            let p = PrimeModulus::new(11).unwrap();
            let (x, y) = (Fp::new(a, p), Fp::new(b, p));
            prop_assert_eq!(x * y.inv().unwrap() * y, x);
            prop_assert_eq!((x + y) - y, x);
            prop_assert_eq!(x + (-x), Fp::zero(&p));
        }
    }
}

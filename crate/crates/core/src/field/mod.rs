//! Exact scalar fields.
//!
//! Three concrete fields are provided: the rationals, prime fields `F_p`,
//! and the quadratic extension `F[i]` of either. Elements are immutable
//! values; every operation returns a fresh element.
//!
//! Elements of a prime field carry their modulus, so a field is described at
//! run time by a context value (`Field::Ctx`). For the rationals the context
//! is `()`.

mod gaussian;
mod prime;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::Result;

pub use gaussian::Gaussian;
pub use prime::{Fp, PrimeModulus};
pub use rational::Rational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Run-time description of the field an element lives in.
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_integer(n: &BigInt, ctx: &Self::Ctx) -> Self;

    fn from_i64(n: i64, ctx: &Self::Ctx) -> Self {
        Self::from_integer(&BigInt::from(n), ctx)
    }

    fn context(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse; fails on zero.
    fn inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// The element as an integer, when it is one and the field embeds `Z`
    /// faithfully. Only the rationals return `Some`.
    fn to_integer(&self) -> Option<BigInt> {
        None
    }

    /// Whether `x^2 = -1` has a solution in the field.
    fn minus_one_is_square(ctx: &Self::Ctx) -> bool;

    /// Short human-readable name, e.g. `Q` or `F_7`.
    fn field_name(ctx: &Self::Ctx) -> String;

    /// Parses one scalar in the textual syntax of this field.
    fn parse(s: &str, ctx: &Self::Ctx) -> std::result::Result<Self, String>;

    /// Used for sign-aware printing only; fields without an order say `false`.
    fn is_negative(&self) -> bool {
        false
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }
}

/// Describes a base field without holding an element of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

impl FieldDescriptor {
    /// `false` for `Q`; for `F_p` (odd `p`), `true` iff `p = 1 (mod 4)`.
    pub fn minus_one_is_square(self) -> bool {
        match self {
            FieldDescriptor::Rationals => false,
            FieldDescriptor::Prime(p) => p % 4 == 1,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

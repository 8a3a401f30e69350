use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::Field;
use crate::error::{Error, Result};

/// `re + i*im` in `F[i]`, the extension of a base field by a square root of
/// -1. This is a field only when -1 is not already a square in `F`; use
/// [`Gaussian::check_base`] before relying on inverses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian<F> {
    pub re: F,
    pub im: F,
}

impl<F: Field> Gaussian<F> {
    pub fn new(re: F, im: F) -> Self {
        Gaussian { re, im }
    }

    /// Embeds a base-field element.
    pub fn real(re: F) -> Self {
        let im = F::zero(&re.context());
        Gaussian { re, im }
    }

    pub fn i(ctx: &F::Ctx) -> Self {
        Gaussian {
            re: F::zero(ctx),
            im: F::one(ctx),
        }
    }

    /// Fails when -1 is a square in the base field.
    pub fn check_base(ctx: &F::Ctx) -> Result<()> {
        if F::minus_one_is_square(ctx) {
            return Err(Error::MinusOneIsSquare {
                field: F::field_name(ctx),
            });
        }
        Ok(())
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2 = z * conj(z)`, an element of the base field.
    pub fn norm(&self) -> F {
        self.re.square() + self.im.square()
    }
}

impl<F: Field> Add for Gaussian<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<F: Field> Sub for Gaussian<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<F: Field> Mul for Gaussian<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Gaussian { re, im }
    }
}

impl<F: Field> Neg for Gaussian<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<F: Field> fmt::Display for Gaussian<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let one = F::one(&self.im.context());
        let (neg, mag) = if self.im.is_negative() {
            (true, -self.im.clone())
        } else {
            (false, self.im.clone())
        };
        let imag = if mag == one { "i".to_string() } else { format!("{mag}i") };
        match (self.re.is_zero(), neg) {
            (true, false) => write!(f, "{imag}"),
            (true, true) => write!(f, "-{imag}"),
            (false, false) => write!(f, "{}+{imag}", self.re),
            (false, true) => write!(f, "{}-{imag}", self.re),
        }
    }
}

impl<F: Field> fmt::Debug for Gaussian<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> Field for Gaussian<F> {
    type Ctx = F::Ctx;

    fn zero(ctx: &F::Ctx) -> Self {
        Gaussian {
            re: F::zero(ctx),
            im: F::zero(ctx),
        }
    }

    fn one(ctx: &F::Ctx) -> Self {
        Gaussian {
            re: F::one(ctx),
            im: F::zero(ctx),
        }
    }

    fn from_integer(n: &BigInt, ctx: &F::Ctx) -> Self {
        Gaussian::real(F::from_integer(n, ctx))
    }

    fn context(&self) -> F::Ctx {
        self.re.context()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            // a nonzero element of norm zero means -1 is a square in F
            return Err(Error::MinusOneIsSquare {
                field: F::field_name(&self.context()),
            });
        }
        let n_inv = n.inv()?;
        Ok(Gaussian {
            re: self.re.clone() * n_inv.clone(),
            im: -self.im.clone() * n_inv,
        })
    }

    fn minus_one_is_square(_: &F::Ctx) -> bool {
        true
    }

    fn field_name(ctx: &F::Ctx) -> String {
        format!("{}(i)", F::field_name(ctx))
    }

    /// Accepts `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi` with `a`, `b` in the base
    /// syntax.
    fn parse(s: &str, ctx: &F::Ctx) -> std::result::Result<Self, String> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Gaussian::real(F::parse(s, ctx)?));
        };
        // the imaginary part starts at the last sign that is not leading
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            F::zero(ctx)
        } else {
            F::parse(re_text, ctx)?
        };
        let im = match im_text {
            "" | "+" => F::one(ctx),
            "-" => -F::one(ctx),
            t => F::parse(t, ctx)?,
        };
        Ok(Gaussian { re, im })
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients;
/// `coeffs[k]` multiplies `m^k`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::new(vec![c.into()])
    }

    /// The variable `m`.
    pub fn var() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `m - a`.
    pub fn linear(a: i64) -> Self {
        IntPolynomial::from_i64s(&[-a, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPolynomial::constant(1), |acc, _| &acc * self)
    }

    /// Horner evaluation; exact for every integer argument.
    pub fn eval(&self, x: impl Into<BigInt>) -> BigInt {
        let x = x.into();
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Exact division by `m`; `None` when the constant term is nonzero.
    pub fn div_by_var(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(IntPolynomial::zero()),
            Some(c) if c.is_zero() => Some(IntPolynomial::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Whether nonzero coefficients alternate in sign from the leading one
    /// downward, skipping nothing: `sign(c_k) = (-1)^(deg-k) sign(c_deg)`
    /// wherever `c_k != 0`.
    pub fn signs_alternate(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        let lead_pos = self.coeffs[d].is_positive();
        self.coeffs.iter().enumerate().all(|(k, c)| {
            c.is_zero() || (c.is_positive() == (lead_pos == ((d - k) % 2 == 0)))
        })
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $f(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::constant(1)
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers of `m`, e.g. `m^4 - 4m^3 + 6m^2 - 3m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || k == 0 {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("m")?,
                _ => write!(f, "m^{k}")?,
            }
        }
        Ok(())
    }
}

//! Dense univariate polynomials over Q in the uniformizer `t`.
//!
//! [`TPoly`] is the building block for rational-function scalars: coefficients
//! are exact rationals, stored densely by ascending degree with no trailing
//! zeros, so the zero polynomial is the empty coefficient vector and equality
//! is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial in `t` with exact rational coefficients.
///
/// Invariant: the coefficient vector has no trailing zeros, so `degree` and
/// `ord` are read directly off the representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: Vec<BigRational>,
}

impl TPoly {
    /// Builds a polynomial from coefficients by ascending degree, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        TPoly::constant(BigRational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        TPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        TPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        TPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order at `t = 0`: the index of the lowest nonzero coefficient, or
    /// `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `t^i` (zero outside the stored range).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients by ascending degree (no trailing zeros).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Value at `t = 0`, i.e. the constant term.
    pub fn eval0(&self) -> BigRational {
        self.coeff(0)
    }

    /// Sign of the lowest-order nonzero coefficient; 0 for the zero
    /// polynomial. Used to pick display signs.
    pub fn leading_sign(&self) -> i8 {
        match self.ord() {
            None => 0,
            Some(i) => {
                if self.coeffs[i].is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        TPoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        TPoly::new(coeffs)
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and
    /// `deg r < deg d`. Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd || (rem.len() == dd + 1 && dd == 0) {
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                let idx = shift + j;
                let delta = c * &factor;
                rem[idx] -= delta;
            }
            quot[shift] = factor;
            // The leading entry is now exactly zero; drop it.
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        (TPoly::new(quot), TPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (1 for coprime inputs, 0 only if both
    /// inputs are 0).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs.last().unwrap().clone();
        a.scale(&lead.recip())
    }
}

/// Formats one rational coefficient together with its `t`-power, omitting
/// unit coefficients; `sign_slot` receives the separator the caller should
/// print before this term.
fn fmt_term(f: &mut fmt::Formatter<'_>, c: &BigRational, deg: usize, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.abs();
    let unit = mag.is_one();
    if deg == 0 {
        write!(f, "{}", fmt_rat_mag(&mag))?;
    } else {
        if !unit {
            write!(f, "{}*", fmt_rat_mag(&mag))?;
        }
        if deg == 1 {
            write!(f, "t")?;
        } else {
            write!(f, "t^{}", deg)?;
        }
    }
    Ok(())
}

fn fmt_rat_mag(mag: &BigRational) -> String {
    if mag.denom().is_one() {
        format!("{}", mag.numer())
    } else {
        format!("{}/{}", mag.numer(), mag.denom())
    }
}

impl fmt::Display for TPoly {
    /// Renders by ascending degree, e.g. `2 + t`, `4*t + t^2`, `1 - t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, deg, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Convenience conversion from integer coefficient lists in tests.
impl From<&[i64]> for TPoly {
    fn from(v: &[i64]) -> Self {
        TPoly::new(
            v.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }
}

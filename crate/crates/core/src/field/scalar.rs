//! Exact scalars: rational numbers and canonical rational functions in `t`.
//!
//! A [`Scalar`] is either a plain rational (which serves both as a p-adic
//! field element and as a constant of Q(t)) or a genuinely non-constant
//! rational function. Every constructor and arithmetic operation returns the
//! canonical form, so structural equality decides field equality:
//!
//! * fractions are gcd-reduced in Q\[t\];
//! * the denominator's lowest-order nonzero coefficient is scaled to 1 (in
//!   particular a denominator with nonzero constant term has constant term 1,
//!   and any leftover `t`-power sits alone in the denominator);
//! * constants collapse to the [`Scalar::Rat`] variant.

use super::tpoly::TPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A reduced, normalized fraction of polynomials in `t`.
///
/// Invariants: `num` and `den` are nonzero and coprime, the lowest-order
/// nonzero coefficient of `den` is 1, and `num`/`den` is not a constant
/// (constants live in [`Scalar::Rat`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    /// Order at `t = 0`: `ord(num) - ord(den)`.
    pub fn ord(&self) -> i64 {
        self.num.ord().unwrap() as i64 - self.den.ord().unwrap() as i64
    }
}

/// An exact field scalar in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    /// A rational number: a p-adic scalar, or a constant of Q(t).
    Rat(BigRational),
    /// A non-constant rational function of `t` (t-adic scalars only).
    Fun(RatFunc),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(q: BigRational) -> Self {
        Scalar::Rat(q)
    }

    /// The uniformizer `t` of Q(t).
    pub fn t() -> Self {
        Scalar::Fun(RatFunc {
            num: TPoly::t(),
            den: TPoly::one(),
        })
    }

    /// Builds the canonical scalar `num / den`; fails on a zero denominator.
    pub fn from_fraction(num: TPoly, den: TPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    /// Canonicalizes a fraction with a known-nonzero denominator.
    fn canonical(mut num: TPoly, mut den: TPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if !den.is_one() {
            let g = TPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            let low = den.coeff(den.ord().unwrap());
            if !low.is_one() {
                let inv = low.recip();
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        if den.is_one() && num.degree() == Some(0) {
            return Scalar::Rat(num.eval0());
        }
        Scalar::Fun(RatFunc { num, den })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    /// True when this scalar involves `t` (i.e. lies outside Q).
    pub fn is_function(&self) -> bool {
        matches!(self, Scalar::Fun(_))
    }

    /// The rational value, if this scalar is a constant.
    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Fun(_) => None,
        }
    }

    /// Numerator/denominator view as polynomials in `t` (constants get
    /// denominator 1).
    fn parts(&self) -> (TPoly, TPoly) {
        match self {
            Scalar::Rat(q) => (TPoly::constant(q.clone()), TPoly::one()),
            Scalar::Fun(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Fun(f) => Scalar::Fun(RatFunc {
                num: f.num.neg(),
                den: f.den.clone(),
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = other.parts();
                Scalar::canonical(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Scalar::zero();
                }
                let (n1, d1) = self.parts();
                let (n2, d2) = other.parts();
                Scalar::canonical(n1.mul(&n2), d1.mul(&d2))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = other.parts();
                Ok(Scalar::canonical(n1.mul(&d2), d1.mul(&n2)))
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Scalar::one().div(self)
    }

    /// Integer power; negative exponents invert first, so `0^e` fails for
    /// `e < 0` (and `0^0 = 1` by convention).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Sign used to order display terms: the sign of the rational, or of the
    /// lowest-order numerator coefficient for rational functions.
    pub fn display_sign(&self) -> i8 {
        match self {
            Scalar::Rat(q) => {
                if q.is_negative() {
                    -1
                } else if q.is_zero() {
                    0
                } else {
                    1
                }
            }
            Scalar::Fun(f) => f.num.leading_sign(),
        }
    }

    /// True when the canonical text of this scalar is a single product-free
    /// token sequence that can appear as a polynomial coefficient without
    /// parentheses (integers and simple fractions).
    pub fn is_simple_coefficient(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }
}

fn fmt_tpoly_side(p: &TPoly) -> String {
    let multi = p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
    if multi {
        format!("({})", p)
    } else {
        p.to_string()
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: `-5/3`, `2 + t`, `(2 + t)/(1 - t^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fun(rf) => {
                if rf.den.is_one() {
                    write!(f, "{}", rf.num)
                } else {
                    write!(f, "{}/{}", fmt_tpoly_side(&rf.num), fmt_tpoly_side(&rf.den))
                }
            }
        }
    }
}

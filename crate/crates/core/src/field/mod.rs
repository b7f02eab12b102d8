//! Non-archimedean valued fields with exact arithmetic.
//!
//! Two concrete fields are supported:
//!
//! * **p-adic**: the rationals Q with the p-adic valuation, residue field
//!   F_p;
//! * **t-adic**: the rational function field Q(t) with the order-of-vanishing
//!   valuation at `t = 0`, residue field Q.
//!
//! A [`FieldSpec`] fixes the kind, the prime (for p-adic), and the base
//! `c > 1` of the realized absolute value `|x| = c^(-v(x))`, which is always
//! an exact rational. Valuations are exact integers extended by
//! [`Valuation::Infinity`] for 0.

mod modp;
mod scalar;
mod tpoly;

pub use scalar::{RatFunc, Scalar};
pub use tpoly::TPoly;

pub(crate) use modp::{invmod, mulmod, powmod};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Which concrete valued field is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// Q with the p-adic valuation.
    PAdic,
    /// Q(t) with the t-adic valuation.
    TAdic,
}

/// An exact valuation value: an integer, or infinity for the zero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    /// The finite value; panics on infinity (callers check first).
    pub fn finite(self) -> i64 {
        match self {
            Valuation::Finite(v) => v,
            Valuation::Infinity => panic!("valuation is infinite"),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinity => write!(f, "INFINITY"),
        }
    }
}

/// A residue-field element: a rational for the t-adic kind, an integer in
/// `[0, p-1]` for the p-adic kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueScalar {
    Rat(BigRational),
    Fp { value: u64, p: u64 },
}

impl ResidueScalar {
    pub fn rat(q: BigRational) -> Self {
        ResidueScalar::Rat(q)
    }

    pub fn fp(value: u64, p: u64) -> Self {
        ResidueScalar::Fp { value: value % p, p }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueScalar::Rat(q) => q.is_zero(),
            ResidueScalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ResidueScalar::Rat(q) => q.is_one(),
            ResidueScalar::Fp { value, .. } => *value == 1,
        }
    }

    /// The multiplicative identity of the same residue field.
    pub fn one_like(&self) -> Self {
        match self {
            ResidueScalar::Rat(_) => ResidueScalar::Rat(BigRational::one()),
            ResidueScalar::Fp { p, .. } => ResidueScalar::Fp { value: 1, p: *p },
        }
    }

    fn same_field(&self, other: &Self) -> (u64, bool) {
        match (self, other) {
            (ResidueScalar::Rat(_), ResidueScalar::Rat(_)) => (0, false),
            (ResidueScalar::Fp { p: p1, .. }, ResidueScalar::Fp { p: p2, .. }) => {
                assert_eq!(p1, p2, "mixed residue characteristics");
                (*p1, true)
            }
            _ => panic!("mixed residue field kinds"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (p, fp) = self.same_field(other);
        if fp {
            let (a, b) = (self.fp_value(), other.fp_value());
            ResidueScalar::Fp {
                value: (a + b) % p,
                p,
            }
        } else {
            ResidueScalar::Rat(self.rat_value() + other.rat_value())
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (p, fp) = self.same_field(other);
        if fp {
            let (a, b) = (self.fp_value(), other.fp_value());
            ResidueScalar::Fp {
                value: (a + p - b) % p,
                p,
            }
        } else {
            ResidueScalar::Rat(self.rat_value() - other.rat_value())
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (p, fp) = self.same_field(other);
        if fp {
            ResidueScalar::Fp {
                value: mulmod(self.fp_value(), other.fp_value(), p),
                p,
            }
        } else {
            ResidueScalar::Rat(self.rat_value() * other.rat_value())
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            ResidueScalar::Rat(q) => ResidueScalar::Rat(q.recip()),
            ResidueScalar::Fp { value, p } => ResidueScalar::Fp {
                value: invmod(*value, *p),
                p: *p,
            },
        })
    }

    /// Integer power with negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(match base {
            ResidueScalar::Fp { value, p } => ResidueScalar::Fp {
                value: powmod(value, k, p),
                p,
            },
            ResidueScalar::Rat(q) => {
                // 0^0 = 1; 0^positive = 0 (e < 0 was rejected above).
                if q.is_zero() {
                    if k == 0 {
                        ResidueScalar::Rat(BigRational::one())
                    } else {
                        ResidueScalar::Rat(BigRational::zero())
                    }
                } else {
                    ResidueScalar::Rat(rat_int_pow(&q, k as i64))
                }
            }
        })
    }

    fn fp_value(&self) -> u64 {
        match self {
            ResidueScalar::Fp { value, .. } => *value,
            _ => unreachable!(),
        }
    }

    fn rat_value(&self) -> &BigRational {
        match self {
            ResidueScalar::Rat(q) => q,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for ResidueScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueScalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ResidueScalar::Fp { value, .. } => write!(f, "{}", value),
        }
    }
}

/// Raises a nonzero rational to an integer power, exactly.
pub(crate) fn rat_int_pow(q: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let k = e.unsigned_abs() as u32;
    let n = Pow::pow(q.numer(), k);
    let d = Pow::pow(q.denom(), k);
    if e > 0 {
        BigRational::new(n, d)
    } else {
        BigRational::new(d, n)
    }
}

/// A concrete valued field: the kind, the prime for the p-adic case, and the
/// base of the realized absolute value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    kind: FieldKind,
    p: Option<u64>,
    base: BigRational,
}

impl FieldSpec {
    /// The p-adic field with default base `c = p`.
    pub fn p_adic(p: u64) -> Result<Self> {
        let base = BigRational::from_integer(BigInt::from(p));
        FieldSpec::new(FieldKind::PAdic, Some(p), base)
    }

    /// The t-adic field with default base `c = 2`.
    pub fn t_adic() -> Self {
        FieldSpec {
            kind: FieldKind::TAdic,
            p: None,
            base: BigRational::from_integer(BigInt::from(2)),
        }
    }

    /// Full constructor; validates primality of `p` and `base > 1`.
    pub fn new(kind: FieldKind, p: Option<u64>, base: BigRational) -> Result<Self> {
        match kind {
            FieldKind::PAdic => {
                let p = p.ok_or_else(|| {
                    Error::InvalidFieldSpec("p-adic field needs a prime p".into())
                })?;
                if !modp::is_prime(p) {
                    return Err(Error::InvalidFieldSpec(format!("{} is not prime", p)));
                }
            }
            FieldKind::TAdic => {
                if p.is_some() {
                    return Err(Error::InvalidFieldSpec(
                        "t-adic field takes no prime".into(),
                    ));
                }
            }
        }
        if base <= BigRational::one() {
            return Err(Error::InvalidFieldSpec(format!(
                "base must exceed 1, got {}",
                base
            )));
        }
        Ok(FieldSpec { kind, p, base })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The prime, for the p-adic kind.
    pub fn p(&self) -> Option<u64> {
        self.p
    }

    /// The base `c > 1` of the realized absolute value.
    pub fn base(&self) -> &BigRational {
        &self.base
    }

    /// The exact valuation of a scalar; infinity for 0.
    pub fn valuation(&self, x: &Scalar) -> Result<Valuation> {
        if x.is_zero() {
            return Ok(Valuation::Infinity);
        }
        match (self.kind, x) {
            (FieldKind::PAdic, Scalar::Rat(q)) => {
                let p = BigInt::from(self.p.unwrap());
                let vn = int_val(q.numer(), &p);
                let vd = int_val(q.denom(), &p);
                Ok(Valuation::Finite(vn - vd))
            }
            (FieldKind::PAdic, Scalar::Fun(_)) => Err(Error::KindMismatch(
                "rational function under a p-adic field",
            )),
            (FieldKind::TAdic, Scalar::Rat(_)) => Ok(Valuation::Finite(0)),
            (FieldKind::TAdic, Scalar::Fun(rf)) => Ok(Valuation::Finite(rf.ord())),
        }
    }

    /// The realized absolute value `c^(-v(x))`, exactly; 0 for the zero
    /// scalar.
    pub fn abs(&self, x: &Scalar) -> Result<BigRational> {
        match self.valuation(x)? {
            Valuation::Infinity => Ok(BigRational::zero()),
            Valuation::Finite(v) => Ok(rat_int_pow(&self.base, -v)),
        }
    }

    /// Reduces a scalar of non-negative valuation to the residue field.
    ///
    /// Fails with [`Error::NegativeValuation`] when `v(x) < 0`.
    pub fn reduce(&self, x: &Scalar) -> Result<ResidueScalar> {
        match self.valuation(x)? {
            Valuation::Infinity => Ok(match self.kind {
                FieldKind::PAdic => ResidueScalar::fp(0, self.p.unwrap()),
                FieldKind::TAdic => ResidueScalar::Rat(BigRational::zero()),
            }),
            Valuation::Finite(v) if v < 0 => Err(Error::NegativeValuation(v)),
            Valuation::Finite(_) => match (self.kind, x) {
                (FieldKind::PAdic, Scalar::Rat(q)) => {
                    let p = self.p.unwrap();
                    let pb = BigInt::from(p);
                    let a = q.numer().mod_floor(&pb);
                    let b = q.denom().mod_floor(&pb);
                    let a: u64 = a.try_into().expect("residue fits u64");
                    let b: u64 = b.try_into().expect("residue fits u64");
                    // v(x) >= 0 and gcd(numer, denom) = 1 force p to not
                    // divide the denominator.
                    Ok(ResidueScalar::fp(mulmod(a, invmod(b, p), p), p))
                }
                (FieldKind::TAdic, Scalar::Rat(q)) => Ok(ResidueScalar::Rat(q.clone())),
                (FieldKind::TAdic, Scalar::Fun(rf)) => {
                    // v >= 0 plus gcd-reduction force den(0) != 0.
                    let d0 = rf.denominator().eval0();
                    Ok(ResidueScalar::Rat(rf.numerator().eval0() / d0))
                }
                (FieldKind::PAdic, Scalar::Fun(_)) => unreachable!("rejected above"),
            },
        }
    }

    /// True when `x` is a unit of the valuation ring, i.e. `v(x) = 0`.
    pub fn is_unit(&self, x: &Scalar) -> Result<bool> {
        Ok(self.valuation(x)? == Valuation::Finite(0))
    }
}

/// Multiplicity of `p` in a nonzero integer.
fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        n = q;
    }
}

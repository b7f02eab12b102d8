//! Points of Berkovich projective space and their multiplicative seminorms.
//!
//! Two kinds of points are represented exactly:
//!
//! * **Type-I** points: tuples of scalars, where the seminorm of a
//!   polynomial is the absolute value of its evaluation;
//! * **Polydisc** points: a center together with integer polyradius
//!   valuations `rho`, where the seminorm of `f` is the maximum of
//!   `|b_alpha| * prod c^(-rho_n * alpha_n)` over the coefficients
//!   `b_alpha` of `f` recentered about the center.
//!
//! The Gauss point is the polydisc point with center 0 and all `rho = 0`;
//! its seminorm of any polynomial equals the polynomial's height.
//!
//! [`lambda`] is the normalized statistic `seminorm(z, f) / sup_norm(z)^deg`
//! for height-1 homogeneous `f`; it always lies in `[0, 1]` and does not
//! depend on the chosen representative of the projective class.

use crate::error::{Error, Result};
use crate::field::{rat_int_pow, FieldSpec, Scalar};
use crate::poly::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A point of Berkovich affine/projective space over the working field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BerkPoint {
    /// A classical point given by its coordinate tuple.
    TypeI(Vec<Scalar>),
    /// The sup-seminorm over the polydisc with the given center and
    /// polyradius valuations (radius of coordinate `n` is `c^(-rho[n])`).
    Polydisc { center: Vec<Scalar>, rho: Vec<i64> },
}

impl BerkPoint {
    pub fn type_i(coords: Vec<Scalar>) -> Self {
        BerkPoint::TypeI(coords)
    }

    /// Builds a polydisc point; center and rho must have equal length.
    pub fn polydisc(center: Vec<Scalar>, rho: Vec<i64>) -> Result<Self> {
        if center.len() != rho.len() {
            return Err(Error::ArityMismatch {
                expected: center.len(),
                found: rho.len(),
            });
        }
        Ok(BerkPoint::Polydisc { center, rho })
    }

    /// The Gauss point in `n` coordinates: center 0, all rho 0.
    pub fn gauss(n: usize) -> Self {
        BerkPoint::Polydisc {
            center: vec![Scalar::zero(); n],
            rho: vec![0; n],
        }
    }

    /// True exactly for the canonical Gauss representation (center 0, rho 0).
    pub fn is_gauss(&self) -> bool {
        match self {
            BerkPoint::Polydisc { center, rho } => {
                center.iter().all(|c| c.is_zero()) && rho.iter().all(|&r| r == 0)
            }
            BerkPoint::TypeI(_) => false,
        }
    }

    pub fn num_coords(&self) -> usize {
        match self {
            BerkPoint::TypeI(c) => c.len(),
            BerkPoint::Polydisc { center, .. } => center.len(),
        }
    }
}

/// The multiplicative seminorm of `f` at the point, as an exact rational.
pub fn seminorm(spec: &FieldSpec, point: &BerkPoint, f: &Poly) -> Result<BigRational> {
    if f.num_vars() != point.num_coords() {
        return Err(Error::ArityMismatch {
            expected: point.num_coords(),
            found: f.num_vars(),
        });
    }
    match point {
        BerkPoint::TypeI(coords) => spec.abs(&f.evaluate(coords)?),
        BerkPoint::Polydisc { center, rho } => {
            let g = f.recenter(center)?;
            let mut best = BigRational::zero();
            for (e, c) in g.terms() {
                // weight = base^(-sum rho_n * alpha_n)
                let w: i64 = e
                    .0
                    .iter()
                    .zip(rho)
                    .map(|(&a, &r)| a as i64 * r)
                    .sum();
                let val = spec.abs(c)? * rat_int_pow(spec.base(), -w);
                if val > best {
                    best = val;
                }
            }
            Ok(best)
        }
    }
}

/// The sup-norm: the maximum seminorm of the coordinate functions.
pub fn sup_norm(spec: &FieldSpec, point: &BerkPoint) -> Result<BigRational> {
    match point {
        BerkPoint::TypeI(coords) => {
            let mut best = BigRational::zero();
            for a in coords {
                let v = spec.abs(a)?;
                if v > best {
                    best = v;
                }
            }
            Ok(best)
        }
        BerkPoint::Polydisc { center, rho } => {
            // Seminorm of X_n over the polydisc is max(|c_n|, base^(-rho_n)).
            let mut best = BigRational::zero();
            for (c, &r) in center.iter().zip(rho) {
                let radius = rat_int_pow(spec.base(), -r);
                let v = spec.abs(c)?.max(radius);
                if v > best {
                    best = v;
                }
            }
            Ok(best)
        }
    }
}

/// Rescales a coordinate tuple by a coordinate of maximal absolute value
/// (tie broken by lowest index), so the result has sup-norm exactly 1.
/// Returns the rescaled tuple and the index divided by.
pub fn normalize_projective(spec: &FieldSpec, coords: &[Scalar]) -> Result<(Vec<Scalar>, usize)> {
    let mut best: Option<(usize, BigRational)> = None;
    for (i, a) in coords.iter().enumerate() {
        let v = spec.abs(a)?;
        match &best {
            Some((_, b)) if v <= *b => {}
            _ => best = Some((i, v)),
        }
    }
    let (idx, max) = best.ok_or(Error::AllZero)?;
    if max.is_zero() {
        return Err(Error::AllZero);
    }
    let pivot = coords[idx].clone();
    let out = coords
        .iter()
        .map(|a| a.div(&pivot))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, idx))
}

/// The normalized test statistic `lambda_f(z)` in `[0, 1]`.
///
/// Requires `f` nonzero, homogeneous, and of height exactly 1; the value is
/// `seminorm(z, f) / sup_norm(z)^deg f` and is independent of the chosen
/// representative of the projective class of `z`.
pub fn lambda(spec: &FieldSpec, point: &BerkPoint, f: &Poly) -> Result<BigRational> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if f.height(spec)? != BigRational::one() {
        return Err(Error::NotNormalized);
    }
    let sup = sup_norm(spec, point)?;
    if sup.is_zero() {
        return Err(Error::AllZero);
    }
    let num = seminorm(spec, point, f)?;
    Ok(num / rat_int_pow_rat(&sup, deg as i64))
}

/// Rational power helper for positive rational bases.
fn rat_int_pow_rat(base: &BigRational, e: i64) -> BigRational {
    if base.is_zero() {
        return BigRational::zero();
    }
    rat_int_pow(base, e)
}

/// Decides projective equality of two type-I points (proportionality of the
/// coordinate tuples). Any polydisc operand is rejected with
/// [`Error::UnsupportedComparison`].
pub fn points_equal(spec: &FieldSpec, a: &BerkPoint, b: &BerkPoint) -> Result<bool> {
    let (xs, ys) = match (a, b) {
        (BerkPoint::TypeI(xs), BerkPoint::TypeI(ys)) => (xs, ys),
        _ => return Err(Error::UnsupportedComparison),
    };
    if xs.len() != ys.len() {
        return Err(Error::ArityMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let _ = spec; // equality is field-independent; spec kept for symmetry
    let k = match xs.iter().position(|x| !x.is_zero()) {
        Some(k) => k,
        None => return Err(Error::AllZero),
    };
    if ys[k].is_zero() {
        return Ok(false);
    }
    for i in 0..xs.len() {
        // cross-multiplied proportionality: x_i * y_k == x_k * y_i
        if xs[i].mul(&ys[k]) != xs[k].mul(&ys[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point considered up to scaling, carrying a normalization flag.
///
/// The flag is set exactly when the representative's sup-norm is 1, which
/// lets downstream statistics skip the denominator of [`lambda`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveClass {
    rep: BerkPoint,
    normalized: bool,
}

impl ProjectiveClass {
    /// Wraps a representative, computing the normalization flag.
    pub fn new(spec: &FieldSpec, rep: BerkPoint) -> Result<Self> {
        let normalized = sup_norm(spec, &rep)? == BigRational::one();
        Ok(ProjectiveClass { rep, normalized })
    }

    pub fn representative(&self) -> &BerkPoint {
        &self.rep
    }

    /// True when the stored representative has sup-norm exactly 1.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn lambda(&self, spec: &FieldSpec, f: &Poly) -> Result<BigRational> {
        lambda(spec, &self.rep, f)
    }
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::TypeI(coords) => {
                write!(f, "(")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, " : ")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, ")")
            }
            BerkPoint::Polydisc { center, rho } => {
                if self.is_gauss() {
                    return write!(f, "gauss");
                }
                write!(f, "disc(center=(")?;
                for (i, c) in center.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, "); rho=(")?;
                for (i, r) in rho.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", r)?;
                }
                write!(f, "))")
            }
        }
    }
}

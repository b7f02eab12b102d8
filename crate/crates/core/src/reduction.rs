//! The reduction map from Berkovich projective space to residue projective
//! space.
//!
//! A type-I point is first rescaled to sup-norm 1, then reduced coordinate
//! by coordinate; the Gauss class reduces to the generic point, reported as
//! [`ReducedTarget::Generic`]. Residue points are stored in the canonical
//! scaling with first nonzero coordinate 1, and hypersurface membership is
//! decided by exact evaluation.

use crate::berkovich::{normalize_projective, BerkPoint};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, ResidueScalar};
use crate::poly::ResiduePoly;
use std::fmt;

/// A point of residue projective space in canonical scaling (the first
/// nonzero coordinate is 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueProjPoint {
    coords: Vec<ResidueScalar>,
}

impl ResidueProjPoint {
    /// Canonicalizes a coordinate tuple; fails on the zero tuple.
    pub fn new(coords: Vec<ResidueScalar>) -> Result<Self> {
        let k = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::AllZero)?;
        let inv = coords[k].inv()?;
        let coords = coords.iter().map(|c| c.mul(&inv)).collect();
        Ok(ResidueProjPoint { coords })
    }

    pub fn coords(&self) -> &[ResidueScalar] {
        &self.coords
    }

    pub fn num_coords(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for ResidueProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// The image of a point under reduction: a residue point, or the generic
/// point of the special fiber (image of the Gauss class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedTarget {
    Point(ResidueProjPoint),
    Generic,
}

impl fmt::Display for ReducedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedTarget::Point(p) => write!(f, "{}", p),
            ReducedTarget::Generic => write!(f, "GENERIC"),
        }
    }
}

/// Reduces a type-I point (via sup-norm-1 normalization) or the Gauss class
/// (to [`ReducedTarget::Generic`]). Other polydisc points are not supported.
pub fn reduce_point(spec: &FieldSpec, z: &BerkPoint) -> Result<ReducedTarget> {
    match z {
        BerkPoint::TypeI(coords) => {
            let (unit_coords, _) = normalize_projective(spec, coords)?;
            let residues = unit_coords
                .iter()
                .map(|c| spec.reduce(c))
                .collect::<Result<Vec<_>>>()?;
            Ok(ReducedTarget::Point(ResidueProjPoint::new(residues)?))
        }
        _ if z.is_gauss() => Ok(ReducedTarget::Generic),
        BerkPoint::Polydisc { .. } => Err(Error::UnsupportedPoint(
            "only type-I points and the Gauss class reduce",
        )),
    }
}

/// A hypersurface of residue projective space, cut out by a nonzero
/// homogeneous residue polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    poly: ResiduePoly,
}

impl Hypersurface {
    pub fn new(poly: ResiduePoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Hypersurface { poly })
    }

    pub fn poly(&self) -> &ResiduePoly {
        &self.poly
    }

    /// Membership by evaluation (well-defined by homogeneity).
    pub fn contains(&self, p: &ResidueProjPoint) -> Result<bool> {
        if p.num_coords() != self.poly.num_vars() {
            return Err(Error::ArityMismatch {
                expected: self.poly.num_vars(),
                found: p.num_coords(),
            });
        }
        Ok(self.poly.evaluate(p.coords())?.is_zero())
    }
}

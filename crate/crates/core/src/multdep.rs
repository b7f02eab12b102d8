//! Multiplicative-dependence certificates for residue torus points.
//!
//! Given the residue data `a~ = (a~_1, ..., a~_N)` of a torus point, the
//! relation lattice is `{ l in Z^N : prod a~_i^(l_i) = 1 }`. Over Q it is
//! computed exactly: each coordinate is factored into signed prime powers
//! (trial division up to a configurable bound), the left kernel of the
//! exponent matrix is taken, and a parity constraint on the sign row cuts
//! that kernel down to the vectors whose product is `+1` (doubling one
//! generator when needed). Over `F_p` every point is multiplicatively
//! dependent; the reported lattice is the full-rank diagonal one generated
//! by `ord(a~_i) * e_i`.
//!
//! Every returned [`Relation`] is verified against the input data before it
//! is handed back, and bases are in canonical Hermite form, so results are
//! reproducible and independently checkable.

use crate::error::{Error, Result};
use crate::field::{powmod, ResidueScalar};
use crate::intmat;
use crate::reduction::Hypersurface;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The signed prime factorization of a nonzero rational: `sign * prod p^e`
/// with negative exponents for denominator primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSignature {
    negative: bool,
    factors: BTreeMap<u64, i64>,
}

impl FactorSignature {
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Prime/exponent pairs in ascending prime order.
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    /// Rebuilds the rational exactly (the round-trip invariant).
    pub fn reconstruct(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.factors {
            let pw = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        if self.negative {
            num = -num;
        }
        BigRational::new(num, den)
    }
}

/// Divides `n > 0` by primes up to `bound`, accumulating `sign_exp * e` into
/// the factor map; errors if a part greater than 1 remains unfactored.
fn factor_magnitude(
    n: &BigInt,
    bound: u64,
    out: &mut BTreeMap<u64, i64>,
    sign_exp: i64,
) -> Result<()> {
    let mut rem = n.clone();
    let one = BigInt::one();
    let mut d: u64 = 2;
    while rem > one {
        if d > bound {
            return Err(Error::FactorBoundExceeded {
                bound,
                remaining: rem,
            });
        }
        let db = BigInt::from(d);
        if &db * &db > rem {
            // rem is prime; record it if the bound allows.
            let p: u64 = (&rem).try_into().map_err(|_| Error::FactorBoundExceeded {
                bound,
                remaining: rem.clone(),
            })?;
            if p > bound {
                return Err(Error::FactorBoundExceeded {
                    bound,
                    remaining: rem,
                });
            }
            *out.entry(p).or_insert(0) += sign_exp;
            return Ok(());
        }
        let mut e = 0i64;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&rem, &db);
            if !r.is_zero() {
                break;
            }
            rem = q;
            e += 1;
        }
        if e > 0 {
            *out.entry(d).or_insert(0) += sign_exp * e;
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    Ok(())
}

/// Factors a nonzero rational by trial division with primes up to `bound`.
pub fn factor_rational(q: &BigRational, bound: u64) -> Result<FactorSignature> {
    if q.is_zero() {
        return Err(Error::NotAUnit { index: 0 });
    }
    let mut factors = BTreeMap::new();
    factor_magnitude(&q.numer().abs(), bound, &mut factors, 1)?;
    factor_magnitude(q.denom(), bound, &mut factors, -1)?;
    factors.retain(|_, e| *e != 0);
    Ok(FactorSignature {
        negative: q.is_negative(),
        factors,
    })
}

/// Factors a positive machine integer; exponent map keyed by prime.
fn factor_u64(n: u64, bound: u64) -> Result<BTreeMap<u64, i64>> {
    let mut out = BTreeMap::new();
    factor_magnitude(&BigInt::from(n), bound, &mut out, 1)?;
    Ok(out)
}

/// The multiplicative order of `a` in `F_p^x`; factoring `p - 1` uses the
/// same trial-division bound as the rational case.
pub fn multiplicative_order(a: u64, p: u64, bound: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::NotAUnit { index: 0 });
    }
    let group = p - 1;
    let factors = factor_u64(group, bound)?;
    let mut e = group;
    for &q in factors.keys() {
        while e % q == 0 && powmod(a, e / q, p) == 1 {
            e /= q;
        }
    }
    Ok(e)
}

/// A verified multiplicative relation: a nonzero integer vector `l` with
/// `prod a~_i^(l_i) = 1` for the residue data it was built against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    coeffs: Vec<i64>,
}

impl Relation {
    /// Verifies and wraps a relation vector for the given residue data.
    pub fn new(coeffs: Vec<i64>, coords: &[ResidueScalar]) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::ZeroRelation);
        }
        if !holds(coords, &coeffs)? {
            return Err(Error::RelationNotSatisfiedAtResidue);
        }
        Ok(Relation { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

/// Checks that all residue coordinates are nonzero units of one residue
/// field; returns the prime for the `F_p` case.
fn validate_coords(coords: &[ResidueScalar]) -> Result<Option<u64>> {
    let mut p_seen: Option<u64> = None;
    let mut rat_seen = false;
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            return Err(Error::NotAUnit { index: i });
        }
        match c {
            ResidueScalar::Rat(_) => rat_seen = true,
            ResidueScalar::Fp { p, .. } => match p_seen {
                None => p_seen = Some(*p),
                Some(q) if q == *p => {}
                Some(_) => return Err(Error::KindMismatch("mixed residue characteristics")),
            },
        }
    }
    if rat_seen && p_seen.is_some() {
        return Err(Error::KindMismatch("mixed residue field kinds"));
    }
    Ok(p_seen)
}

/// Evaluates whether `prod coords_i^(l_i) = 1` exactly.
fn holds(coords: &[ResidueScalar], l: &[i64]) -> Result<bool> {
    if coords.len() != l.len() {
        return Err(Error::ArityMismatch {
            expected: coords.len(),
            found: l.len(),
        });
    }
    let mut acc: Option<ResidueScalar> = None;
    for (c, &e) in coords.iter().zip(l) {
        let term = c.pow(e)?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.mul(&term),
        });
    }
    Ok(acc.map_or(true, |s| s.is_one()))
}

/// Membership of a candidate vector in the multiplicative relation group of
/// the residue data (direct exact check).
pub fn subgroup_member(coords: &[ResidueScalar], l: &[i64]) -> Result<bool> {
    validate_coords(coords)?;
    holds(coords, l)
}

/// A canonical basis of the relation lattice of the residue data.
///
/// Over Q this is complete for coordinates whose numerators and denominators
/// factor over primes `<= bound`; over `F_p` it is the diagonal lattice of
/// coordinate orders (every `F_p` point is dependent).
pub fn relation_basis(coords: &[ResidueScalar], bound: u64) -> Result<Vec<Relation>> {
    let p = validate_coords(coords)?;
    let raw: Vec<Vec<BigInt>> = match p {
        Some(p) => {
            // Diagonal basis ord(a~_i) * e_i.
            let n = coords.len();
            let mut rows = Vec::with_capacity(n);
            for (i, c) in coords.iter().enumerate() {
                let v = match c {
                    ResidueScalar::Fp { value, .. } => *value,
                    _ => unreachable!(),
                };
                let ord = multiplicative_order(v, p, bound)?;
                let mut row = vec![BigInt::zero(); n];
                row[i] = BigInt::from(ord);
                rows.push(row);
            }
            rows
        }
        None => {
            let sigs: Vec<FactorSignature> = coords
                .iter()
                .map(|c| match c {
                    ResidueScalar::Rat(q) => factor_rational(q, bound),
                    _ => unreachable!(),
                })
                .collect::<Result<_>>()?;
            let primes: Vec<u64> = {
                let mut set = std::collections::BTreeSet::new();
                for s in &sigs {
                    set.extend(s.factors.keys().copied());
                }
                set.into_iter().collect()
            };
            let rows: Vec<Vec<BigInt>> = sigs
                .iter()
                .map(|s| {
                    primes
                        .iter()
                        .map(|p| BigInt::from(s.factors.get(p).copied().unwrap_or(0)))
                        .collect()
                })
                .collect();
            let kernel = intmat::left_kernel_basis(&rows);
            // Parity of the sign row: a kernel vector is a relation only if
            // the product of coordinate signs it induces is +1.
            let parity = |v: &[BigInt]| -> bool {
                let mut odd = false;
                for (s, x) in sigs.iter().zip(v) {
                    if s.negative && x.is_odd_int() {
                        odd = !odd;
                    }
                }
                odd
            };
            let fixed: Vec<Vec<BigInt>> = match kernel.iter().position(|v| parity(v)) {
                None => kernel,
                Some(j0) => {
                    let pivot = kernel[j0].clone();
                    let mut out = Vec::with_capacity(kernel.len());
                    for (j, v) in kernel.iter().enumerate() {
                        if j == j0 {
                            out.push(v.iter().map(|x| x * 2).collect());
                        } else if parity(v) {
                            out.push(v.iter().zip(&pivot).map(|(x, y)| x - y).collect());
                        } else {
                            out.push(v.clone());
                        }
                    }
                    intmat::hnf_rows(&out)
                }
            };
            fixed
        }
    };
    let basis = raw
        .into_iter()
        .map(|v| {
            let coeffs: Vec<i64> = v
                .iter()
                .map(|x| x.try_into().expect("relation entry fits i64"))
                .collect();
            Relation::new(coeffs, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(basis)
}

/// Small helper: parity of a BigInt.
trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

/// True when the residue data satisfies no nontrivial multiplicative
/// relation (within the factorization bound).
pub fn is_nondegenerate(coords: &[ResidueScalar], bound: u64) -> Result<bool> {
    Ok(relation_basis(coords, bound)?.is_empty())
}

/// Whether `l` lies in the integer span of a relation basis.
pub fn in_relation_span(basis: &[Relation], l: &[i64]) -> bool {
    let rows: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|r| r.coeffs.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let v: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
    intmat::in_row_span(&rows, &v)
}

/// The orbit indices `1 <= j <= jmax` at which the residue power point
/// `(1 : a~_1^j : ... : a~_N^j)` lies on the hypersurface.
pub fn orbit_hits(
    coords: &[ResidueScalar],
    surface: &Hypersurface,
    jmax: u64,
) -> Result<Vec<u64>> {
    validate_coords(coords)?;
    if surface.poly().num_vars() != coords.len() + 1 {
        return Err(Error::ArityMismatch {
            expected: coords.len() + 1,
            found: surface.poly().num_vars(),
        });
    }
    if coords.is_empty() {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    let one = coords[0].one_like();
    let mut powers: Vec<ResidueScalar> = vec![one.clone(); coords.len()];
    let mut hits = Vec::new();
    for j in 1..=jmax {
        for (pw, c) in powers.iter_mut().zip(coords) {
            *pw = pw.mul(c);
        }
        let mut point = Vec::with_capacity(coords.len() + 1);
        point.push(one.clone());
        point.extend(powers.iter().cloned());
        if surface.poly().evaluate(&point)?.is_zero() {
            hits.push(j);
        }
    }
    Ok(hits)
}

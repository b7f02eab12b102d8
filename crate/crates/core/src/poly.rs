//! Sparse multivariate polynomials over valued-field scalars.
//!
//! A [`Poly`] in `n` variables `X0 .. X{n-1}` maps exponent vectors to
//! nonzero [`Scalar`] coefficients (zero coefficients are never stored, so
//! equality is structural). The operations the rest of the crate builds on:
//!
//! * `height` — the maximum realized absolute value of a coefficient;
//! * `normalize` — division by a canonical maximal coefficient, making the
//!   height exactly 1;
//! * `recenter` — the Taylor shift `f(Y + c)` used by polydisc seminorms;
//! * `reduce` — coefficient-wise reduction to the residue field, defined
//!   when the height is at most 1.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ResidueScalar, Scalar, Valuation};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// The exponent vector of one monomial; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A sparse polynomial over [`Scalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl Poly {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(ExponentVector(vec![0; nvars]), c);
        p
    }

    /// The variable `X{i}` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Poly::monomial(nvars, exps, Scalar::one())
    }

    /// A single monomial `c * X^exps`.
    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let mut p = Poly::zero(nvars);
        p.add_term(ExponentVector(exps), c);
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(ExponentVector(exps), c);
        }
        Ok(p)
    }

    /// Adds `c * X^e` into the term map, keeping the no-zero-coefficients
    /// invariant.
    fn add_term(&mut self, e: ExponentVector, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient of `X^exps` (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&ExponentVector(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Maximum total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// The common total degree if every term has it; `Some(0)` for the zero
    /// polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => Some(0),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    fn check_arity(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1
                    .0
                    .iter()
                    .zip(&e2.0)
                    .map(|(a, b)| a + b)
                    .collect();
                out.add_term(ExponentVector(exps), c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Scalar::one());
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq).expect("same arity");
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq).expect("same arity");
            }
        }
        acc
    }

    /// Re-embeds into a larger ambient variable set (new variables unused).
    pub fn pad_to(&self, nvars: usize) -> Result<Poly> {
        if nvars < self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: nvars,
            });
        }
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut exps = e.0.clone();
            exps.resize(nvars, 0);
            out.add_term(ExponentVector(exps), c.clone());
        }
        Ok(out)
    }

    /// The height: the maximum realized absolute value of a coefficient
    /// (0 for the zero polynomial).
    pub fn height(&self, spec: &FieldSpec) -> Result<BigRational> {
        let mut best = BigRational::zero();
        for c in self.terms.values() {
            let a = spec.abs(c)?;
            if a > best {
                best = a;
            }
        }
        Ok(best)
    }

    /// Divides by a canonical maximal coefficient `b`, returning `(f/b, b)`
    /// with `height(f/b) = 1`.
    ///
    /// Among coefficients of maximal absolute value, `b` is the one at the
    /// lexicographically smallest exponent vector.
    pub fn normalize(&self, spec: &FieldSpec) -> Result<(Poly, Scalar)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut best: Option<(&Scalar, BigRational)> = None;
        // Ascending key order: strict improvement keeps the lexicographically
        // smallest exponent vector among maximal coefficients.
        for (_, c) in self.terms.iter() {
            let a = spec.abs(c)?;
            match &best {
                Some((_, besta)) if a <= *besta => {}
                _ => best = Some((c, a)),
            }
        }
        let b = best.unwrap().0.clone();
        let inv = b.inv()?;
        Ok((self.scale(&inv), b))
    }

    /// Evaluates at a tuple of scalars.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        // Cache coordinate powers up to the largest exponent that appears.
        let mut max_exp = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (n, &a) in e.0.iter().enumerate() {
                max_exp[n] = max_exp[n].max(a);
            }
        }
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                row.push(Scalar::one());
                for _ in 0..m {
                    let next = row.last().unwrap().mul(x);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (n, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    term = term.mul(&powers[n][a as usize]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// The Taylor shift `g(Y) = f(Y + c)`, so that `g`'s coefficients are
    /// the coefficients of `f` expanded about the center `c`.
    pub fn recenter(&self, center: &[Scalar]) -> Result<Poly> {
        if center.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: center.len(),
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(self.nvars, c.clone());
            for (n, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let factor = if center[n].is_zero() {
                    let mut exps = vec![0; self.nvars];
                    exps[n] = a;
                    Poly::monomial(self.nvars, exps, Scalar::one())
                } else {
                    binomial_shift(self.nvars, n, a, &center[n])
                };
                term = term.mul(&factor).expect("same arity");
            }
            out = out.add(&term).expect("same arity");
        }
        Ok(out)
    }

    /// Coefficient-wise reduction to the residue field; requires height <= 1.
    pub fn reduce(&self, spec: &FieldSpec) -> Result<ResiduePoly> {
        for c in self.terms.values() {
            if let Valuation::Finite(v) = spec.valuation(c)? {
                if v < 0 {
                    return Err(Error::HeightExceedsOne);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = spec.reduce(c)?;
            if !r.is_zero() {
                terms.insert(e.clone(), r);
            }
        }
        Ok(ResiduePoly {
            nvars: self.nvars,
            terms,
        })
    }
}

/// Expands `(X{n} + c)^a` as a polynomial in the ambient variable set.
fn binomial_shift(nvars: usize, n: usize, a: u32, c: &Scalar) -> Poly {
    let mut out = Poly::zero(nvars);
    let mut cpow = Scalar::one();
    // k runs over the exponent of X{n}; the remaining a-k factors give c.
    for k in (0..=a).rev() {
        let b = binomial(BigInt::from(a), BigInt::from(k));
        let coeff = Scalar::from_rat(BigRational::from_integer(b)).mul(&cpow);
        let mut exps = vec![0; nvars];
        exps[n] = k;
        out.add_term(ExponentVector(exps), coeff);
        cpow = cpow.mul(c);
    }
    out
}

/// A polynomial over the residue field (all coefficients nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, ResidueScalar>,
}

impl ResiduePoly {
    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &ResidueScalar)> {
        self.terms.iter()
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => Some(0),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Evaluates at a tuple of residue scalars.
    pub fn evaluate(&self, coords: &[ResidueScalar]) -> Result<ResidueScalar> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: coords.len(),
            });
        }
        let mut acc: Option<ResidueScalar> = None;
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (n, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    term = term.mul(&coords[n].pow(a as i64)?);
                }
            }
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        Ok(acc.unwrap_or_else(|| zero_like(&coords[0])))
    }
}

fn zero_like(model: &ResidueScalar) -> ResidueScalar {
    match model {
        ResidueScalar::Rat(_) => ResidueScalar::Rat(BigRational::zero()),
        ResidueScalar::Fp { p, .. } => ResidueScalar::Fp { value: 0, p: *p },
    }
}

/// Shared display logic: positive-sign terms first, then by descending total
/// degree, then descending lexicographic exponent order. This prints e.g.
/// `X1^3 - X0*X1*X2` and `X0 - X1` the way a person would write them.
fn display_order<'a, C>(terms: &'a BTreeMap<ExponentVector, C>, sign: impl Fn(&C) -> i8) -> Vec<(&'a ExponentVector, &'a C)> {
    let mut v: Vec<_> = terms.iter().collect();
    v.sort_by(|(ea, ca), (eb, cb)| {
        let sa = sign(ca) < 0;
        let sb = sign(cb) < 0;
        sa.cmp(&sb)
            .then_with(|| eb.total_degree().cmp(&ea.total_degree()))
            .then_with(|| eb.0.cmp(&ea.0))
    });
    v
}

fn fmt_monomial(e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (n, &a) in e.0.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("X{}", n)),
            _ => parts.push(format!("X{}^{}", n, a)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ordered = display_order(&self.terms, |c: &Scalar| c.display_sign());
        for (i, (e, c)) in ordered.iter().enumerate() {
            let neg = c.display_sign() < 0;
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { c.neg() } else { (*c).clone() };
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                // Constant term: parenthesize non-constant scalars.
                if mag.is_simple_coefficient() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else if mag.is_simple_coefficient() {
                write!(f, "{}*{}", mag, mono)?;
            } else {
                write!(f, "({})*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ordered = display_order(&self.terms, |_c: &ResidueScalar| 1);
        for (i, (e, c)) in ordered.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TPoly;

    fn ft() -> FieldSpec {
        FieldSpec::t_adic()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn tfrac(n: &[i64], d: &[i64]) -> Scalar {
        Scalar::from_fraction(TPoly::from(n), TPoly::from(d)).unwrap()
    }

    /// X1^3 - X0*X1*X2 in three variables.
    fn witness_like() -> Poly {
        Poly::from_terms(
            3,
            vec![
                (vec![0, 3, 0], s(1)),
                (vec![1, 1, 1], s(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn height_takes_the_max_coefficient_abs() {
        // t*X0^2 + (1/(1-t))*X0*X1 + 3*X1^2: |t| = 1/2, |1/(1-t)| = 1, |3| = 1
        let f = Poly::from_terms(
            2,
            vec![
                (vec![2, 0], Scalar::t()),
                (vec![1, 1], tfrac(&[1], &[1, -1])),
                (vec![0, 2], s(3)),
            ],
        )
        .unwrap();
        assert_eq!(f.height(&ft()).unwrap(), BigRational::from_integer(1.into()));

        // A coefficient 1/t pushes the height to 2.
        let g = Poly::from_terms(2, vec![(vec![1, 0], tfrac(&[1], &[0, 1]))]).unwrap();
        assert_eq!(g.height(&ft()).unwrap(), BigRational::from_integer(2.into()));

        assert_eq!(Poly::zero(2).height(&ft()).unwrap(), BigRational::zero());
    }

    #[test]
    fn normalize_divides_by_max_coefficient() {
        // t*X0 + t^2*X1: unique max |t| = 1/2 at X0.
        let f = Poly::from_terms(
            2,
            vec![
                (vec![1, 0], Scalar::t()),
                (vec![0, 1], Scalar::t().mul(&Scalar::t())),
            ],
        )
        .unwrap();
        let (g, b) = f.normalize(&ft()).unwrap();
        assert_eq!(b, Scalar::t());
        let expected = Poly::from_terms(
            2,
            vec![(vec![1, 0], s(1)), (vec![0, 1], Scalar::t())],
        )
        .unwrap();
        assert_eq!(g, expected);
        assert_eq!(g.height(&ft()).unwrap(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn normalize_tie_picks_lex_smallest_exponent() {
        // X0 - X1: both coefficients have absolute value 1; the tie goes to
        // the lexicographically smaller exponent vector (0,1), i.e. the X1
        // coefficient -1, so the result is (-1)^-1 * f = -X0 + X1.
        let f = Poly::from_terms(2, vec![(vec![1, 0], s(1)), (vec![0, 1], s(-1))]).unwrap();
        let (g, b) = f.normalize(&ft()).unwrap();
        assert_eq!(b, s(-1));
        let expected =
            Poly::from_terms(2, vec![(vec![1, 0], s(-1)), (vec![0, 1], s(1))]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn normalize_zero_polynomial_fails() {
        assert_eq!(
            Poly::zero(2).normalize(&ft()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluate_witness_poly() {
        // f(1, 2+t, 4) = (2+t)^3 - (2+t)*4 = t*(2+t)*(4+t) = 8t + 6t^2 + t^3
        let f = witness_like();
        let val = f
            .evaluate(&[s(1), tfrac(&[2, 1], &[1]), s(4)])
            .unwrap();
        assert_eq!(val, tfrac(&[0, 8, 6, 1], &[1]));
    }

    #[test]
    fn evaluate_is_multiplicative_spot_check() {
        let f = witness_like();
        let g = Poly::from_terms(3, vec![(vec![1, 0, 0], s(2)), (vec![0, 0, 1], s(1))]).unwrap();
        let point = [tfrac(&[1, 1], &[1]), tfrac(&[0, 1], &[1]), s(3)];
        let lhs = f.mul(&g).unwrap().evaluate(&point).unwrap();
        let rhs = f.evaluate(&point).unwrap().mul(&g.evaluate(&point).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneity() {
        assert!(witness_like().is_homogeneous());
        assert_eq!(witness_like().homogeneous_degree(), Some(3));
        let mixed =
            Poly::from_terms(2, vec![(vec![1, 0], s(1)), (vec![0, 2], s(1))]).unwrap();
        assert!(!mixed.is_homogeneous());
        assert_eq!(Poly::zero(2).homogeneous_degree(), Some(0));
    }

    #[test]
    fn recenter_shift_by_ones() {
        // X0*X1 about (1,1): (Y0+1)(Y1+1) = Y0*Y1 + Y0 + Y1 + 1
        let f = Poly::from_terms(2, vec![(vec![1, 1], s(1))]).unwrap();
        let g = f.recenter(&[s(1), s(1)]).unwrap();
        let expected = Poly::from_terms(
            2,
            vec![
                (vec![1, 1], s(1)),
                (vec![1, 0], s(1)),
                (vec![0, 1], s(1)),
                (vec![0, 0], s(1)),
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn recenter_round_trip() {
        let f = witness_like();
        let c = [s(1), tfrac(&[0, 1], &[1]), s(-2)];
        let minus_c: Vec<Scalar> = c.iter().map(|x| x.neg()).collect();
        let back = f.recenter(&c).unwrap().recenter(&minus_c).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn reduce_poly_mod_3() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let f = witness_like();
        let r = f.reduce(&f3).unwrap();
        // -1 = 2 mod 3
        let coeffs: Vec<(Vec<u32>, u64)> = r
            .terms()
            .map(|(e, c)| {
                let v = match c {
                    ResidueScalar::Fp { value, .. } => *value,
                    _ => panic!("expected F_p"),
                };
                (e.0.clone(), v)
            })
            .collect();
        assert_eq!(coeffs, vec![(vec![0, 3, 0], 1), (vec![1, 1, 1], 2)]);
        assert!(r.is_homogeneous());
    }

    #[test]
    fn reduce_poly_requires_height_at_most_one() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let f = Poly::from_terms(
            1,
            vec![(vec![1], Scalar::Rat(BigRational::new(1.into(), 3.into())))],
        )
        .unwrap();
        assert_eq!(f.reduce(&f3), Err(Error::HeightExceedsOne));
    }

    #[test]
    fn reduce_drops_coefficients_of_positive_valuation() {
        let ft = ft();
        // t*X0 + X1 reduces to X1~
        let f = Poly::from_terms(2, vec![(vec![1, 0], Scalar::t()), (vec![0, 1], s(1))])
            .unwrap();
        let r = f.reduce(&ft).unwrap();
        assert_eq!(r.terms().count(), 1);
        assert_eq!(r.to_string(), "X1");
    }

    #[test]
    fn residue_poly_evaluation() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let r = witness_like().reduce(&f3).unwrap();
        // at (1, 2, 4): 2^3 - 1*2*4 = 0 mod 3... 8 - 8 = 0
        let coords = [
            ResidueScalar::fp(1, 3),
            ResidueScalar::fp(2, 3),
            ResidueScalar::fp(1, 3), // 4 mod 3
        ];
        assert!(r.evaluate(&coords).unwrap().is_zero());
        let coords2 = [
            ResidueScalar::fp(1, 3),
            ResidueScalar::fp(1, 3),
            ResidueScalar::fp(2, 3),
        ];
        assert_eq!(r.evaluate(&coords2).unwrap(), ResidueScalar::fp(2, 3));
    }

    #[test]
    fn arity_mismatches_are_rejected() {
        let f = witness_like();
        let g = Poly::var(2, 0);
        assert!(matches!(f.add(&g), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            f.evaluate(&[s(1), s(2)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            f.recenter(&[s(0)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn display_matches_handwritten_forms() {
        assert_eq!(witness_like().to_string(), "X1^3 - X0*X1*X2");
        let f = Poly::from_terms(2, vec![(vec![1, 0], s(1)), (vec![0, 1], s(-1))]).unwrap();
        assert_eq!(f.to_string(), "X0 - X1");
        let g = Poly::from_terms(
            2,
            vec![
                (vec![2, 0], tfrac(&[2, 1], &[1, -1])),
                (vec![0, 2], s(3)),
            ],
        )
        .unwrap();
        assert_eq!(g.to_string(), "((2 + t)/(1 - t))*X0^2 + 3*X1^2");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn pad_to_extends_ambient_space() {
        let f = Poly::from_terms(2, vec![(vec![1, 0], s(1)), (vec![0, 1], s(-1))]).unwrap();
        let g = f.pad_to(3).unwrap();
        assert_eq!(g.num_vars(), 3);
        assert_eq!(g.to_string(), "X0 - X1");
        assert!(f.pad_to(1).is_err());
    }
}

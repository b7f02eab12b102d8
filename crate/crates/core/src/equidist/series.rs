//! Truncated power series in `t`, the working representation of the adaptive
//! statistics engine.
//!
//! A [`TruncSeries`] holds the first `prec` coefficients of a Laurent-free
//! power series expansion. Arithmetic is exact modulo `t^prec`, so the order
//! of vanishing of a value is decided correctly whenever it is below the
//! precision; an all-zero window means "unresolved", and the engine reacts by
//! raising the precision or falling back to an exact evaluation.

use crate::field::{Scalar, TPoly};
use num_rational::BigRational;
use num_traits::Zero;

/// The first `prec` coefficients of a power series in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    #[cfg(test)]
    pub(crate) fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn one(prec: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); prec];
        coeffs[0] = BigRational::from_integer(1.into());
        TruncSeries { coeffs }
    }

    /// Expands a scalar whose denominator does not vanish at `t = 0`
    /// (equivalently, a scalar of valuation `>= 0`).
    pub(crate) fn from_scalar(s: &Scalar, prec: usize) -> Self {
        match s {
            Scalar::Rat(q) => {
                let mut coeffs = vec![BigRational::zero(); prec];
                coeffs[0] = q.clone();
                TruncSeries { coeffs }
            }
            Scalar::Fun(rf) => {
                let num = expand(rf.numerator(), prec);
                let den_inv = invert_unit(rf.denominator(), prec);
                mul_coeffs(&num, &den_inv, prec)
            }
        }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        mul_coeffs(&self.coeffs, &other.coeffs, self.coeffs.len())
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncSeries { coeffs }
    }

    pub(crate) fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return TruncSeries {
                coeffs: vec![BigRational::zero(); self.coeffs.len()],
            };
        }
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The order of vanishing if it is below the precision; `None` means the
    /// value is 0 modulo `t^prec` and cannot be resolved at this precision.
    pub(crate) fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// The first `prec` coefficients of a polynomial.
fn expand(p: &TPoly, prec: usize) -> Vec<BigRational> {
    (0..prec).map(|i| p.coeff(i)).collect()
}

/// Truncated product of two coefficient windows.
fn mul_coeffs(a: &[BigRational], b: &[BigRational], prec: usize) -> TruncSeries {
    let mut coeffs = vec![BigRational::zero(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if bj.is_zero() {
                continue;
            }
            coeffs[i + j] += ai * bj;
        }
    }
    TruncSeries { coeffs }
}

/// Inverse series of a polynomial with nonzero constant term, modulo
/// `t^prec`: the standard recursion `b_n = -(sum a_k b_(n-k)) / a_0`.
fn invert_unit(p: &TPoly, prec: usize) -> Vec<BigRational> {
    let a0 = p.coeff(0);
    assert!(!a0.is_zero(), "series inversion needs a unit constant term");
    let mut b = vec![BigRational::zero(); prec];
    b[0] = a0.recip();
    for n in 1..prec {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            let ak = p.coeff(k);
            if ak.is_zero() {
                continue;
            }
            acc += ak * &b[n - k];
        }
        b[n] = -acc / &a0;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn tp(v: &[i64]) -> TPoly {
        TPoly::from(v)
    }

    fn series_of(num: &[i64], den: &[i64], prec: usize) -> TruncSeries {
        let s = Scalar::from_fraction(tp(num), tp(den)).unwrap();
        TruncSeries::from_scalar(&s, prec)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polynomial_scalars_expand_directly() {
        let s = series_of(&[2, 1], &[1], 4);
        assert_eq!(s.coeffs, vec![rat(2, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn geometric_series_inversion() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = series_of(&[1], &[1, -1], 5);
        assert!(s.coeffs.iter().all(|c| c.is_one()));
        // 1/(1 + t) alternates
        let s = series_of(&[1], &[1, 1], 4);
        assert_eq!(s.coeffs, vec![rat(1, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)]);
    }

    #[test]
    fn rational_function_expansion() {
        // (2 + t)/(1 - t) = 2 + 3t + 3t^2 + 3t^3 + ...
        let s = series_of(&[2, 1], &[1, -1], 4);
        assert_eq!(s.coeffs, vec![rat(2, 1), rat(3, 1), rat(3, 1), rat(3, 1)]);
    }

    #[test]
    fn truncated_products_match_polynomial_products() {
        let a = series_of(&[2, 1], &[1], 6);
        let sq = a.mul(&a);
        assert_eq!(
            sq.coeffs[..3],
            [rat(4, 1), rat(4, 1), rat(1, 1)]
        );
        assert!(sq.coeffs[3..].iter().all(|c| c.is_zero()));
        // inverse times original is 1
        let inv = series_of(&[1], &[2, 1], 6);
        let prod = a.mul(&inv);
        assert_eq!(prod, TruncSeries::one(6));
    }

    #[test]
    fn first_nonzero_reads_the_valuation() {
        // t^2 * (1 + t)
        let s = series_of(&[0, 0, 1, 1], &[1], 6);
        assert_eq!(s.first_nonzero(), Some(2));
        assert_eq!(TruncSeries::one(4).first_nonzero(), Some(0));
        let zero = TruncSeries::one(4).scale(&BigRational::zero());
        assert_eq!(zero.first_nonzero(), None);
    }

    #[test]
    fn add_and_scale() {
        let a = series_of(&[1, 2], &[1], 4);
        let b = series_of(&[3, -2], &[1], 4);
        let sum = a.add(&b);
        assert_eq!(sum.coeffs[0], rat(4, 1));
        assert!(sum.coeffs[1..].iter().all(|c| c.is_zero()));
        let half = a.scale(&rat(1, 2));
        assert_eq!(half.coeffs[0], rat(1, 2));
        assert_eq!(half.coeffs[1], rat(1, 1));
        assert_eq!(half.precision(), 4);
    }
}

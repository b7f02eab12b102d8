//! Decimal rendering of exact rationals.
//!
//! Every value the tool prints or writes to an artifact appears twice: once
//! exactly as `num/den` and once as a fixed-point decimal. The decimal is
//! produced by integer arithmetic only (scale by a power of ten, divide,
//! round half to even), so it is bit-reproducible across platforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Renders `q` with exactly `digits` places after the decimal point, rounding
/// half to even. `digits = 0` renders a plain integer.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let negative = q.is_negative();
    let numer = q.numer().abs();
    let denom = q.denom().clone();
    let scale = BigInt::from(10u32).pow(u32::try_from(digits).expect("digit count fits u32"));
    let (mut quot, rem) = (numer * &scale).div_rem(&denom);
    let twice = &rem * BigInt::from(2);
    if twice > denom || (twice == denom && quot.is_odd()) {
        quot += 1;
    }
    let (int_part, frac_part) = quot.div_rem(&scale);
    let mut out = String::new();
    if negative && !quot.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        let frac = frac_part.to_string();
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

//! q-integers `{i}_q = q^i - 1`, falling products
//! `{i}_{q,n} = {i}_q {i-1}_q ... {i-n+1}_q`, q-factorials
//! `{n}_q! = {n}_{q,n}`, and their closed-form cyclotomic exponent profiles.

use crate::cyclotomic::ExponentVector;
use crate::poly::LaurentPoly;
use crate::RangeError;

/// `{i}_q = q^i - 1` for any integer `i` (zero for `i = 0`).
pub fn q_int(i: i64) -> LaurentPoly {
    &LaurentPoly::q_power(i) - &LaurentPoly::one()
}

/// `{i}_{q,n}`: the product of `n` consecutive descending q-integers
/// starting at `{i}_q`; the empty product is 1.
pub fn q_falling(i: i64, n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in 0..n as i64 {
        acc = &acc * &q_int(i - j);
    }
    acc
}

/// `{n}_q! = {n}_{q,n}`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    q_falling(n as i64, n)
}

/// Cyclotomic exponent profile of `{l}_{q,i}`:
/// `m -> floor(l/m) - floor((l-i)/m)` for `1 <= m <= l`.
///
/// Only the regime `0 <= i <= l` (where the closed form holds) is accepted;
/// out-of-range requests are an error, not an extrapolation.
pub fn falling_exponents(l: u32, i: u32) -> Result<ExponentVector, RangeError> {
    if i > l {
        return Err(RangeError(format!(
            "falling_exponents requires 0 <= i <= l, got l = {l}, i = {i}"
        )));
    }
    let mut out = ExponentVector::new();
    for m in 1..=l {
        let e = l / m - (l - i) / m;
        out.set(m, e);
    }
    Ok(out)
}

//! Dense coefficient-vector kernels for the hot arithmetic paths.
//!
//! A dense polynomial is a `Vec<BigInt>` with `v[i]` the coefficient of
//! `q^i`; the vector is trimmed (nonzero last entry) and, for division
//! inputs, has a nonzero constant term after the Laurent shift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    // Iterate the shorter operand outermost so the inner loop streams.
    let (outer, inner) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for (i, ci) in outer.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in inner.iter().enumerate() {
            if !cj.is_zero() {
                out[i + j] += ci * cj;
            }
        }
    }
    out
}

/// Exact quotient `num / den` over `Z[q]`, or `None` when it does not exist.
///
/// Long division from the top degree; a quotient step whose leading
/// coefficient is not divisible by `lc(den)`, or a nonzero remainder,
/// refutes divisibility over the integers.
pub(crate) fn div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(!den.is_empty() && !den.last().unwrap().is_zero());
    if num.len() < den.len() {
        return None;
    }
    let lc = den.last().unwrap();
    let monic = lc.is_one();
    let qlen = num.len() - den.len() + 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = std::mem::take(&mut rem[k + den.len() - 1]);
        if top.is_zero() {
            continue;
        }
        let c = if monic {
            top
        } else {
            let (c, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            c
        };
        for (j, dj) in den.iter().enumerate().take(den.len() - 1) {
            if !dj.is_zero() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    if rem[..den.len() - 1].iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

/// Exact quotient by the binomial `q^m - 1`, or `None`. Costs O(len).
pub(crate) fn div_binomial(p: &[BigInt], m: usize) -> Option<Vec<BigInt>> {
    debug_assert!(m >= 1);
    if p.len() <= m {
        return None;
    }
    // p = quot * (q^m - 1) + rem, so p[j] = quot[j-m] - quot[j] + rem[j]
    // with out-of-range entries read as zero.
    let qlen = p.len() - m;
    let mut quot = vec![BigInt::zero(); qlen];
    for j in (m..p.len()).rev() {
        quot[j - m] = if j < qlen {
            &p[j] + &quot[j]
        } else {
            p[j].clone()
        };
    }
    for j in 0..m {
        let rem_is_zero = if j < qlen {
            (&p[j] + &quot[j]).is_zero()
        } else {
            p[j].is_zero()
        };
        if !rem_is_zero {
            return None;
        }
    }
    Some(quot)
}

/// Quotient and remainder of `num / den` for a *monic* divisor; both exact
/// over the integers, with `deg rem < deg den`.
pub(crate) fn divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(den.last().is_some_and(One::is_one));
    if num.len() < den.len() {
        return (Vec::new(), num.to_vec());
    }
    let qlen = num.len() - den.len() + 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = std::mem::take(&mut rem[k + den.len() - 1]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(den.len() - 1) {
            if !dj.is_zero() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(den.len() - 1);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_positive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let mut c = content(&p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for x in &mut p {
            *x = &*x / &c;
        }
    }
    p
}

/// GCD over `Z[q]` by a primitive pseudo-remainder sequence, normalized to
/// primitive form with positive leading coefficient.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_positive(a.to_vec());
    let mut b = primitive_positive(b.to_vec());
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        a = b;
        b = primitive_positive(r);
    }
}

/// Remainder of `lc(den)^e * num mod den` for some `e >= 0`; the scale is
/// irrelevant to a primitive PRS.
fn pseudo_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let lc = den.last().unwrap();
    let mut rem = num.to_vec();
    trim(&mut rem);
    while rem.len() >= den.len() {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - den.len();
        if !lc.is_one() {
            for x in &mut rem {
                *x = &*x * lc;
            }
        }
        for (j, dj) in den.iter().enumerate() {
            rem[shift + j] -= &top * dj;
        }
        trim(&mut rem);
    }
    rem
}

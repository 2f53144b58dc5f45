//! Cyclotomic polynomials `Φ_m`, the Möbius function, factorization of
//! products of cyclotomics, multiplicity extraction, and constructive
//! coprimality witnesses `u·Φ_a + v·Φ_b = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

use crate::poly::{dense, LaurentPoly};
use crate::ZeroInput;

/// The Möbius function: `(-1)^k` on products of `k` distinct primes, `0` on
/// inputs with a squared prime factor.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut parity = 0u32;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            parity += 1;
        }
        p += 1;
    }
    if n > 1 {
        parity += 1;
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            result -= result / p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors of `n`, ascending.
pub(crate) fn divisors(n: u32) -> Vec<u32> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn is_prime_power_or_one(n: u32) -> bool {
    if n == 1 {
        return true;
    }
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true // n itself prime
}

/// Whether `(Φ_a, Φ_b)` is the unit ideal: true exactly when `a/b` in lowest
/// terms is not a prime power `p^i` (with `i` possibly zero or negative).
pub fn is_coprime_cyclotomic(a: u32, b: u32) -> bool {
    assert!(a >= 1 && b >= 1);
    let g = a.gcd(&b);
    let (a, b) = (a / g, b / g);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo != 1 {
        return true;
    }
    !is_prime_power_or_one(hi)
}

#[derive(Default)]
struct CycCache {
    dense: HashMap<u32, Arc<Vec<BigInt>>>,
    at_two: HashMap<u32, BigInt>,
    cofactor: HashMap<u32, Arc<Vec<BigInt>>>,
    witnesses: HashMap<(u32, u32), CoprimalityWitness>,
}

fn cache() -> &'static Mutex<CycCache> {
    static CACHE: OnceLock<Mutex<CycCache>> = OnceLock::new();
    CACHE.get_or_init(Mutex::default)
}

fn binomial_dense(m: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m as usize + 1];
    v[0] = BigInt::from(-1);
    v[m as usize] = BigInt::one();
    v
}

fn cyclotomic_dense(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1);
    if let Some(d) = cache().lock().unwrap().dense.get(&m) {
        return d.clone();
    }
    // Φ_m = (q^m - 1) / ∏_{d|m, d<m} Φ_d; every intermediate quotient is
    // still a product of cyclotomics, so each step divides exactly.
    let mut num = binomial_dense(m);
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_dense(d);
        num = dense::div_exact(&num, &phi_d).expect("cyclotomic divisor product");
    }
    let arc = Arc::new(num);
    cache().lock().unwrap().dense.insert(m, arc.clone());
    arc
}

/// The `m`-th cyclotomic polynomial (memoized).
pub fn cyclotomic(m: u32) -> LaurentPoly {
    LaurentPoly::from_dense(0, cyclotomic_dense(m).as_ref().clone())
}

fn phi_at_two(m: u32) -> BigInt {
    if let Some(v) = cache().lock().unwrap().at_two.get(&m) {
        return v.clone();
    }
    let v = dense::eval(&cyclotomic_dense(m), &BigInt::from(2));
    cache().lock().unwrap().at_two.insert(m, v.clone());
    v
}

fn cofactor_dense(m: u32) -> Arc<Vec<BigInt>> {
    if let Some(c) = cache().lock().unwrap().cofactor.get(&m) {
        return c.clone();
    }
    let c = dense::div_exact(&binomial_dense(m), &cyclotomic_dense(m)).unwrap();
    let arc = Arc::new(c);
    cache().lock().unwrap().cofactor.insert(m, arc.clone());
    arc
}

/// One exact division by `Φ_m` on a dense polynomial, or `None`.
///
/// When `Φ_m` is dense (large totient) it is cheaper to multiply by the
/// cofactor `(q^m - 1)/Φ_m` and divide by the binomial `q^m - 1`, which
/// costs O(len) instead of O(len·φ(m)).
fn divide_once_cyclotomic(p: &[BigInt], m: u32) -> Option<Vec<BigInt>> {
    let phi_deg = totient(m as u64) as usize;
    if p.len() <= phi_deg {
        return None;
    }
    if m == 1 {
        return dense::div_binomial(p, 1);
    }
    let cof_deg = m as usize - phi_deg;
    let direct_cost = (p.len() - phi_deg) as u64 * (phi_deg as u64 + 1);
    let cofactor_cost = p.len() as u64 * (cof_deg as u64 + 2);
    if cofactor_cost < direct_cost {
        let prod = dense::mul(p, &cofactor_dense(m));
        dense::div_binomial(&prod, m as usize)
    } else {
        dense::div_exact(p, &cyclotomic_dense(m))
    }
}

/// The multiplicity of `Φ_m` in a nonzero polynomial, by repeated exact
/// division.
pub fn cyc_multiplicity(a: &LaurentPoly, m: u32) -> Result<u32, ZeroInput> {
    assert!(m >= 1);
    let nf = a.normalize_unit()?;
    let (_, mut p) = nf.primitive.to_dense().unwrap();
    let mut count = 0;
    while let Some(q) = divide_once_cyclotomic(&p, m) {
        p = q;
        count += 1;
    }
    Ok(count)
}

/// A finite map `m -> exponent of Φ_m`; absent keys mean exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExponentVector {
    exps: BTreeMap<u32, u32>,
}

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, m: u32) -> u32 {
        self.exps.get(&m).copied().unwrap_or(0)
    }

    pub fn set(&mut self, m: u32, e: u32) {
        if e == 0 {
            self.exps.remove(&m);
        } else {
            self.exps.insert(m, e);
        }
    }

    pub fn bump(&mut self, m: u32, by: u32) {
        if by > 0 {
            *self.exps.entry(m).or_insert(0) += by;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps.iter().map(|(&m, &e)| (m, e))
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.iter().collect()
    }

    /// Largest index with a nonzero exponent.
    pub fn max_index(&self) -> Option<u32> {
        self.exps.keys().next_back().copied()
    }

    /// Degree of the expansion, `Σ e_m · φ(m)`.
    pub fn total_degree(&self) -> u64 {
        self.iter().map(|(m, e)| totient(m as u64) * e as u64).sum()
    }

    /// Expands `∏_m Φ_m^{e_m}`.
    pub fn expand(&self) -> LaurentPoly {
        let mut acc: Vec<BigInt> = vec![BigInt::one()];
        for (m, e) in self.iter() {
            let phi = cyclotomic_dense(m);
            for _ in 0..e {
                acc = dense::mul(&acc, &phi);
            }
        }
        LaurentPoly::from_dense(0, acc)
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (m, e) in self.iter() {
            let o = other.get(m);
            out.set(m, e.min(o));
        }
        out
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            out.set(m, e.max(out.get(m)));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            out.bump(m, e);
        }
        out
    }

    /// Componentwise difference, `None` if any exponent would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            let cur = out.get(m);
            if cur < e {
                return None;
            }
            out.set(m, cur - e);
        }
        Some(out)
    }
}

impl FromIterator<(u32, u32)> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (m, e) in iter {
            out.bump(m, e);
        }
        out
    }
}

/// Factorization of a nonzero Laurent polynomial into a unit `sign · q^k`,
/// cyclotomic parts, and whatever residual remains:
/// `input = sign · q^q_power · ∏ Φ_m^{e_m} · residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycFactorization {
    pub sign: i8,
    pub q_power: i64,
    pub exponents: ExponentVector,
    pub residual: LaurentPoly,
}

impl CycFactorization {
    pub fn reconstruct(&self) -> LaurentPoly {
        let unit = LaurentPoly::monomial(self.sign, self.q_power);
        &(&unit * &self.exponents.expand()) * &self.residual
    }

    /// True when the input was a unit times a product of cyclotomics.
    pub fn is_cyclotomic_product(&self) -> bool {
        self.residual.is_one()
    }
}

impl fmt::Display for CycFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.q_power != 0 {
            parts.push(format!("q^{}", self.q_power));
        }
        for (m, e) in self.exponents.iter() {
            if e == 1 {
                parts.push(format!("Phi({m})"));
            } else {
                parts.push(format!("Phi({m})^{e}"));
            }
        }
        if !self.residual.is_one() {
            let needs_parens =
                self.residual.num_terms() > 1 && (self.sign < 0 || !parts.is_empty());
            if needs_parens {
                parts.push(format!("({})", self.residual));
            } else {
                parts.push(self.residual.to_string());
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.sign < 0 {
            f.write_str("-")?;
        }
        f.write_str(&parts.join(" * "))
    }
}

/// Peels off the unit, then strips `Φ_m` for ascending `m`, recording
/// multiplicities; whatever survives is the residual.
///
/// A divisor `Φ_m` of a degree-`d` polynomial satisfies `φ(m) <= d` and
/// hence `m <= 2d²`, which bounds the scan; the quotient shrinks as factors
/// come off, so products of cyclotomics terminate as soon as the residual
/// reaches degree zero. Candidate `m` are prefiltered by evaluation: a
/// divisor must divide the value at `q = 1`, `q = -1`, or `q = 2`.
pub fn factor_cyclotomic(a: &LaurentPoly) -> Result<CycFactorization, ZeroInput> {
    let nf = a.normalize_unit()?;
    let (_, mut p) = nf.primitive.to_dense().unwrap();
    let mut exponents = ExponentVector::new();
    let two = BigInt::from(2);
    let mut val2 = dense::eval(&p, &two);
    let mut m: u32 = 1;
    loop {
        let deg = (p.len() - 1) as u64;
        if deg == 0 || (m as u64) > 2 * deg * deg {
            break;
        }
        if totient(m as u64) <= deg && value_filter(&p, &val2, m) {
            if let Some(q) = divide_once_cyclotomic(&p, m) {
                p = q;
                val2 /= phi_at_two(m);
                exponents.bump(m, 1);
                continue; // same m again: multiplicities
            }
        }
        m += 1;
    }
    let residual = &LaurentPoly::constant(nf.content.clone()) * &LaurentPoly::from_dense(0, p);
    Ok(CycFactorization {
        sign: nf.sign,
        q_power: nf.q_power,
        exponents,
        residual,
    })
}

fn value_filter(p: &[BigInt], val2: &BigInt, m: u32) -> bool {
    match m {
        // Φ_1 | p  iff  p(1) = 0;  Φ_2 | p  iff  p(-1) = 0.
        1 => p.iter().sum::<BigInt>().is_zero(),
        2 => p
            .iter()
            .enumerate()
            .fold(
                BigInt::zero(),
                |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c },
            )
            .is_zero(),
        _ => (val2 % phi_at_two(m)).is_zero(),
    }
}

/// Integer-coefficient Bezout identity `u·a + v·b = 1`, checked exactly at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimalityWitness {
    pub u: LaurentPoly,
    pub v: LaurentPoly,
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

impl CoprimalityWitness {
    fn checked(u: LaurentPoly, v: LaurentPoly, a: LaurentPoly, b: LaurentPoly) -> Self {
        let w = Self { u, v, a, b };
        assert!(w.holds(), "coprimality witness identity failed");
        w
    }

    pub fn holds(&self) -> bool {
        (&(&self.u * &self.a) + &(&self.v * &self.b)).is_one()
    }
}

/// The pair of cyclotomic indices does not generate the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Phi({a}) and Phi({b}) do not generate the unit ideal")]
pub struct NotCoprime {
    pub a: u32,
    pub b: u32,
}

/// Bezout witness `u·Φ_a + v·Φ_b = 1` via the Sylvester linear system over
/// the rationals.
///
/// Under the coprimality precondition the resultant is `±1`, so the unique
/// minimal-degree solution is integral; a surviving denominator is reported
/// as [`NotCoprime`] rather than trusted.
pub fn bezout_cyclotomic(a: u32, b: u32) -> Result<CoprimalityWitness, NotCoprime> {
    assert!(a >= 1 && b >= 1);
    if !is_coprime_cyclotomic(a, b) {
        return Err(NotCoprime { a, b });
    }
    if let Some(w) = cache().lock().unwrap().witnesses.get(&(a, b)) {
        return Ok(w.clone());
    }
    let pa = cyclotomic(a);
    let pb = cyclotomic(b);
    let (u, v) = sylvester_bezout(&pa, &pb).ok_or(NotCoprime { a, b })?;
    let w = CoprimalityWitness::checked(u, v, pa, pb);
    cache().lock().unwrap().witnesses.insert((a, b), w.clone());
    Ok(w)
}

fn sylvester_bezout(a: &LaurentPoly, b: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
    let (_, da) = a.to_dense().unwrap();
    let (_, db) = b.to_dense().unwrap();
    let (deg_a, deg_b) = (da.len() - 1, db.len() - 1);
    let n = deg_a + deg_b;
    // Unknowns: the deg_b coefficients of u, then the deg_a coefficients of
    // v; row r matches the coefficient of q^r in u·a + v·b against δ_{r,0}.
    let mut mat = vec![vec![BigRational::zero(); n + 1]; n];
    for (r, row) in mat.iter_mut().enumerate() {
        for j in 0..deg_b {
            if r >= j && r - j <= deg_a {
                row[j] = BigRational::from(da[r - j].clone());
            }
        }
        for j in 0..deg_a {
            if r >= j && r - j <= deg_b {
                row[deg_b + j] = BigRational::from(db[r - j].clone());
            }
        }
    }
    mat[0][n] = BigRational::one();
    let solution = solve_gauss_jordan(mat, n)?;
    let mut coeffs = Vec::with_capacity(n);
    for x in solution {
        if !x.is_integer() {
            return None;
        }
        coeffs.push(x.to_integer());
    }
    let u = LaurentPoly::from_dense(0, coeffs[..deg_b].to_vec());
    let v = LaurentPoly::from_dense(0, coeffs[deg_b..].to_vec());
    Some((u, v))
}

fn solve_gauss_jordan(mut mat: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let pivot_row = mat[col].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (c, p) in pivot_row.iter().enumerate().skip(col) {
                let delta = &factor * p;
                row[c] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &mat[i][n] / &mat[i][i]).collect())
}

/// Keeps witnesses small: replaces `u` by `u mod y` (monic `y`), folding the
/// quotient into `v`.
fn reduce_witness(
    u: LaurentPoly,
    v: LaurentPoly,
    x: &LaurentPoly,
    y: &LaurentPoly,
) -> (LaurentPoly, LaurentPoly) {
    if x.is_one() {
        return (LaurentPoly::one(), LaurentPoly::zero());
    }
    if y.is_one() {
        return (LaurentPoly::zero(), LaurentPoly::one());
    }
    let (quo, rem) = u.divrem_monic(y);
    if quo.is_zero() {
        (u, v)
    } else {
        (rem, &v + &(&quo * x))
    }
}

/// Lifts a witness for `(a, b)` to one for `(a^e, b^f)` by expanding
/// `(u·a + v·b)^(e+f-1)` and grouping the terms holding at least `e` copies
/// of `a` (the rest hold at least `f` copies of `b`).
fn power_lift(w: &CoprimalityWitness, e: u32, f: u32) -> CoprimalityWitness {
    assert!(e >= 1 && f >= 1);
    if e == 1 && f == 1 {
        return w.clone();
    }
    let n = e + f - 1;
    let pow_table = |p: &LaurentPoly| -> Vec<LaurentPoly> {
        let mut t = Vec::with_capacity(n as usize + 1);
        t.push(LaurentPoly::one());
        for i in 1..=n {
            t.push(&t[(i - 1) as usize] * p);
        }
        t
    };
    let (us, vs, aas, bs) = (
        pow_table(&w.u),
        pow_table(&w.v),
        pow_table(&w.a),
        pow_table(&w.b),
    );
    let mut big_u = LaurentPoly::zero();
    let mut big_v = LaurentPoly::zero();
    let mut binom = BigInt::one();
    for t in 0..=n {
        let coeff = LaurentPoly::constant(binom.clone());
        let core = &(&coeff * &us[t as usize]) * &vs[(n - t) as usize];
        if t >= e {
            big_u = &big_u + &(&(&core * &aas[(t - e) as usize]) * &bs[(n - t) as usize]);
        } else {
            big_v = &big_v + &(&(&core * &aas[t as usize]) * &bs[(n - t - f) as usize]);
        }
        binom = binom * (n - t) / (t + 1);
    }
    let ae = aas[e as usize].clone();
    let bf = bs[f as usize].clone();
    let (big_u, big_v) = reduce_witness(big_u, big_v, &ae, &bf);
    CoprimalityWitness::checked(big_u, big_v, ae, bf)
}

/// From witnesses for `(a, b1)` and `(a, b2)`, a witness for `(a, b1·b2)`:
/// multiply the two identities and regroup.
fn combine_shared_a(w1: &CoprimalityWitness, w2: &CoprimalityWitness) -> CoprimalityWitness {
    debug_assert_eq!(w1.a, w2.a);
    let a = w1.a.clone();
    let b = &w1.b * &w2.b;
    let u = &(&(&(&w1.u * &w2.u) * &a) + &(&(&w1.u * &w2.v) * &w2.b)) + &(&(&w1.v * &w2.u) * &w1.b);
    let v = &w1.v * &w2.v;
    let (u, v) = reduce_witness(u, v, &a, &b);
    CoprimalityWitness::checked(u, v, a, b)
}

/// From witnesses for `(a1, b)` and `(a2, b)`, a witness for `(a1·a2, b)`.
fn combine_shared_b(w1: &CoprimalityWitness, w2: &CoprimalityWitness) -> CoprimalityWitness {
    debug_assert_eq!(w1.b, w2.b);
    let a = &w1.a * &w2.a;
    let b = w1.b.clone();
    let u = &w1.u * &w2.u;
    let v = &(&(&(&w1.u * &w2.v) * &w1.a) + &(&(&w1.v * &w2.u) * &w2.a)) + &(&(&w1.v * &w2.v) * &b);
    let (u, v) = reduce_witness(u, v, &a, &b);
    CoprimalityWitness::checked(u, v, a, b)
}

fn expand_side(side: &[(u32, u32)]) -> LaurentPoly {
    side.iter().fold(LaurentPoly::one(), |acc, &(m, e)| {
        &acc * &cyclotomic(m).pow(e)
    })
}

/// Bezout witness for two products of cyclotomic powers given as
/// `(m, exponent)` lists; every cross pair must satisfy
/// [`is_coprime_cyclotomic`].
pub fn bezout_products(
    a_side: &[(u32, u32)],
    b_side: &[(u32, u32)],
) -> Result<CoprimalityWitness, NotCoprime> {
    let a_side: Vec<(u32, u32)> = a_side.iter().copied().filter(|&(_, e)| e > 0).collect();
    let b_side: Vec<(u32, u32)> = b_side.iter().copied().filter(|&(_, e)| e > 0).collect();
    if a_side.is_empty() {
        return Ok(CoprimalityWitness::checked(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::one(),
            expand_side(&b_side),
        ));
    }
    if b_side.is_empty() {
        return Ok(CoprimalityWitness::checked(
            LaurentPoly::zero(),
            LaurentPoly::one(),
            expand_side(&a_side),
            LaurentPoly::one(),
        ));
    }
    for &(m, _) in &a_side {
        for &(n, _) in &b_side {
            if !is_coprime_cyclotomic(m, n) {
                return Err(NotCoprime { a: m, b: n });
            }
        }
    }
    let mut per_atom = Vec::with_capacity(a_side.len());
    for &(m, e) in &a_side {
        let mut acc: Option<CoprimalityWitness> = None;
        for &(n, f) in &b_side {
            let lifted = power_lift(&bezout_cyclotomic(m, n)?, e, f);
            acc = Some(match acc {
                None => lifted,
                Some(prev) => combine_shared_a(&prev, &lifted),
            });
        }
        per_atom.push(acc.unwrap());
    }
    let mut acc = per_atom[0].clone();
    for w in &per_atom[1..] {
        acc = combine_shared_b(&acc, w);
    }
    Ok(acc)
}

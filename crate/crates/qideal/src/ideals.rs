//! The ideals spanned by the generator family `f_{l,k} = {l-k}_q! {k}_q!`
//! and their intermediate layers `h_{l,k,i} = {l-i}_{q,k-i} {i}_q!`.
//!
//! The principal generator of the level-`l` ideal is the product
//! `∏_m Φ_m^{t(l,m)}` with `t(l,m) = floor((l+1)/m) - 1` for `m <= l`. The
//! module exposes the closed-form exponents, two independent GCD oracles
//! (componentwise minimum of factorizations, and a rational-GCD chain), and
//! a constructive certificate that the closed-form generator really lies in
//! the ideal — an explicit combination `Σ_k c_k f_{l,k}`, built by induction
//! over the layers and checkable with ring arithmetic alone.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{
    bezout_products, cyc_multiplicity, divisors, factor_cyclotomic, CoprimalityWitness,
    ExponentVector,
};
use crate::poly::{dense, LaurentPoly};
use crate::qcalc::{q_factorial, q_falling, q_int};
use crate::RangeError;

/// A validated index pair `0 <= k <= l` into the generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealLevel {
    pub l: u32,
    pub k: u32,
}

impl IdealLevel {
    pub fn new(l: u32, k: u32) -> Result<Self, RangeError> {
        if k > l {
            return Err(RangeError(format!(
                "ideal level requires k <= l, got l = {l}, k = {k}"
            )));
        }
        Ok(Self { l, k })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Range(#[from] RangeError),
    /// An internal cross-check failed; this signals an implementation bug,
    /// never an expected condition.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// `f_{l,k} = {l-k}_q! {k}_q!`.
pub fn f_gen(l: u32, k: u32) -> Result<LaurentPoly, RangeError> {
    let level = IdealLevel::new(l, k)?;
    Ok(&q_factorial(level.l - level.k) * &q_factorial(level.k))
}

/// `h_{l,k,i} = {l-i}_{q,k-i} {i}_q!`, the layer-`k` generators after the
/// common factor `{l-k}_q!` is stripped: `h_{l,k,i} · {l-k}_q! = f_{l,i}`.
pub fn h_gen(l: u32, k: u32, i: u32) -> Result<LaurentPoly, RangeError> {
    IdealLevel::new(l, k)?;
    if i > k {
        return Err(RangeError(format!(
            "layer generator requires i <= k, got k = {k}, i = {i}"
        )));
    }
    Ok(&q_falling((l - i) as i64, k - i) * &q_factorial(i))
}

/// Exponent of `Φ_m` in the level-`l` principal generator:
/// `floor((l+1)/m) - 1` for `1 <= m <= l`, zero for `m > l`.
pub fn t_exponent(l: u32, m: u32) -> u32 {
    assert!(m >= 1);
    if m <= l {
        (l + 1) / m - 1
    } else {
        0
    }
}

/// The whole profile `m -> t(l, m)`.
pub fn t_exponents(l: u32) -> ExponentVector {
    (1..=l).map(|m| (m, t_exponent(l, m))).collect()
}

/// Closed-form GCD exponents of layer `(l, k)`:
/// `m -> floor((l+1)/m) - 1 - floor((l-k)/m)` on `1 <= m <= k`, zero beyond.
///
/// At `k = l` this is the `t` profile; at `k = 0` it is empty (the layer
/// contains `h_{l,0,0} = 1`).
pub fn g_exponents(l: u32, k: u32) -> Result<ExponentVector, RangeError> {
    IdealLevel::new(l, k)?;
    let mut out = ExponentVector::new();
    for m in 1..=k {
        let e = (l + 1) / m - 1 - (l - k) / m;
        out.set(m, e);
    }
    Ok(out)
}

/// Brute-force GCD exponents of layer `(l, k)`: the componentwise minimum of
/// the factorizations of the expanded `h_{l,k,i}`. Independent of the closed
/// formula.
pub fn gcd_oracle_factored(l: u32, k: u32) -> Result<ExponentVector, RangeError> {
    IdealLevel::new(l, k)?;
    let mut min: Option<ExponentVector> = None;
    for i in 0..=k {
        let f = factor_cyclotomic(&h_gen(l, k, i)?).expect("layer generators are nonzero");
        debug_assert!(f.is_cyclotomic_product());
        min = Some(match min {
            None => f.exponents,
            Some(acc) => acc.pointwise_min(&f.exponents),
        });
    }
    Ok(min.unwrap_or_default())
}

/// Second independent oracle: the iterated polynomial GCD of the expanded
/// `f_{l,0}, ..., f_{l,l}` by a primitive pseudo-remainder chain, normalized
/// to primitive form with positive leading coefficient.
pub fn gcd_oracle_euclid(l: u32) -> LaurentPoly {
    let mut acc: Option<Vec<_>> = None;
    for k in 0..=l {
        let (_, f) = f_gen(l, k).unwrap().to_dense().unwrap();
        acc = Some(match acc {
            None => f,
            Some(g) => dense::gcd_primitive(&g, &f),
        });
    }
    LaurentPoly::from_dense(0, acc.unwrap())
}

/// The ratio of consecutive layer GCDs, `g_{l,k} / g_{l,k-1}`: the product
/// of `Φ_m` over divisors `m` of `l-k+1` with `m <= k`.
pub fn step_generator(l: u32, k: u32) -> Result<LaurentPoly, RangeError> {
    step_profile(l, k).map(|profile| profile.expand())
}

fn step_profile(l: u32, k: u32) -> Result<ExponentVector, RangeError> {
    IdealLevel::new(l, k)?;
    if k == 0 {
        return Err(RangeError("step generator requires k >= 1".into()));
    }
    Ok(divisors(l - k + 1)
        .into_iter()
        .filter(|&m| m <= k)
        .map(|m| (m, 1))
        .collect())
}

/// The induction step behind the principality certificate.
///
/// With `A = {l-k+1}_q`, `B = {k}_q · {k-1}_q!/g_{l,k-1}`, and `G` the step
/// generator: checks `GCD(A, B) = G` on exponent profiles and the
/// multiplicity pattern of `{k-1}_q!/g_{l,k-1}` on divisors of `l-k+1`, then
/// returns a witness `u·(A/G) + v·(B/G) = 1` assembled from pairwise
/// cyclotomic witnesses.
pub fn step_witness(l: u32, k: u32) -> Result<CoprimalityWitness, IdealError> {
    let g_step = step_profile(l, k)?;
    let a = q_int((l - k + 1) as i64);
    let g_prev = g_exponents(l, k - 1)?.expand();
    let fact_quot = q_factorial(k - 1).divide_exact(&g_prev).map_err(|_| {
        IdealError::Inconsistency(format!("g({l},{}) does not divide {}_q!", k - 1, k - 1))
    })?;
    let b = &q_int(k as i64) * &fact_quot;

    for m in divisors(l - k + 1) {
        if m > k {
            break;
        }
        let expect_int = u32::from(k.is_multiple_of(m));
        let got_int = cyc_multiplicity(&q_int(k as i64), m).unwrap();
        if got_int != expect_int {
            return Err(IdealError::Inconsistency(format!(
                "multiplicity of Phi({m}) in {{{k}}}_q is {got_int}, expected {expect_int}"
            )));
        }
        let expect_quot = 1 - expect_int;
        let got_quot = cyc_multiplicity(&fact_quot, m).unwrap();
        if got_quot != expect_quot {
            return Err(IdealError::Inconsistency(format!(
                "multiplicity of Phi({m}) in {{{}}}_q!/g({l},{}) is {got_quot}, expected {expect_quot}",
                k - 1,
                k - 1
            )));
        }
    }

    let fa = factor_cyclotomic(&a).unwrap();
    let fb = factor_cyclotomic(&b).unwrap();
    let min = fa.exponents.pointwise_min(&fb.exponents);
    if min != g_step {
        return Err(IdealError::Inconsistency(format!(
            "GCD profile mismatch at l = {l}, k = {k}"
        )));
    }
    let a_side = fa
        .exponents
        .checked_sub(&g_step)
        .expect("step generator divides the q-integer side");
    let b_side = fb
        .exponents
        .checked_sub(&g_step)
        .expect("step generator divides the factorial side");
    let witness = bezout_products(&a_side.pairs(), &b_side.pairs()).map_err(|e| {
        IdealError::Inconsistency(format!(
            "unexpected non-coprime pair at l = {l}, k = {k}: {e}"
        ))
    })?;

    // The witness sides must be the literal quotients of the expansions.
    let g = g_step.expand();
    let a_over_g = a.divide_exact(&g).map_err(|_| {
        IdealError::Inconsistency(format!(
            "step generator does not divide A at l = {l}, k = {k}"
        ))
    })?;
    let b_over_g = b.divide_exact(&g).map_err(|_| {
        IdealError::Inconsistency(format!(
            "step generator does not divide B at l = {l}, k = {k}"
        ))
    })?;
    if witness.a != a_over_g || witness.b != b_over_g {
        return Err(IdealError::Inconsistency(format!(
            "witness sides disagree with direct quotients at l = {l}, k = {k}"
        )));
    }
    Ok(witness)
}

/// Explicit coefficients `c_0, ..., c_l` with `Σ_k c_k f_{l,k}` equal to the
/// claimed generator — the nontrivial inclusion of the principality proof,
/// in checkable form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub l: u32,
    pub coefficients: Vec<LaurentPoly>,
    pub claimed_generator: LaurentPoly,
}

/// Builds the certificate for level `l` by induction on the layers: at step
/// `k` the witness `(u_k, v_k)` satisfies
/// `u_k {l-k+1}_q g_{l,k-1} + v_k {k}_q! = g_{l,k}`, so multiplying the
/// accumulated coefficients by `u_k` and appending `v_k` preserves
/// `Σ_i c_i h_{l,k,i} = g_{l,k}`.
pub fn principality_certificate(l: u32) -> Result<BezoutCertificate, IdealError> {
    let mut coefficients = vec![LaurentPoly::one()];
    for k in 1..=l {
        let w = step_witness(l, k)?;
        for c in coefficients.iter_mut() {
            *c = &*c * &w.u;
        }
        coefficients.push(w.v);
    }
    let cert = BezoutCertificate {
        l,
        coefficients,
        claimed_generator: t_exponents(l).expand(),
    };
    if !verify_certificate(&cert) {
        return Err(IdealError::Inconsistency(format!(
            "certificate construction failed its own check at l = {l}"
        )));
    }
    Ok(cert)
}

/// Recomputes every `f_{l,k}` from scratch, evaluates `Σ_k c_k f_{l,k}` with
/// ring arithmetic only, and compares both it and the claimed generator
/// against the expansion of the `t` profile. Exact equality or nothing.
pub fn verify_certificate(cert: &BezoutCertificate) -> bool {
    if cert.coefficients.len() != cert.l as usize + 1 {
        return false;
    }
    let expected = t_exponents(cert.l).expand();
    if cert.claimed_generator != expected {
        return false;
    }
    let mut sum = LaurentPoly::zero();
    for (k, c) in cert.coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        sum = &sum + &(c * &f_gen(cert.l, k as u32).unwrap());
    }
    sum == expected
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    l: u32,
    generator: String,
    coefficients: Vec<String>,
}

impl Serialize for BezoutCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateDoc {
            l: self.l,
            generator: self.claimed_generator.to_string(),
            coefficients: self.coefficients.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BezoutCertificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = CertificateDoc::deserialize(deserializer)?;
        let claimed_generator = LaurentPoly::parse(&doc.generator).map_err(D::Error::custom)?;
        let coefficients = doc
            .coefficients
            .iter()
            .map(|s| LaurentPoly::parse(s))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        Ok(Self {
            l: doc.l,
            coefficients,
            claimed_generator,
        })
    }
}

impl BezoutCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

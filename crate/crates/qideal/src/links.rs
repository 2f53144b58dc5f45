//! Principal generators of the value classes attached to colored links:
//! algebraically-split (`Z_a`), ribbon/boundary (`Z_rb`), Brunnian (`Z_Br`),
//! and the intersection `Z_a ∩ Z_Br` — all products of cyclotomics — plus
//! membership queries and the stored Milnor-link values.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::cyclotomic::{cyc_multiplicity, ExponentVector};
use crate::ideals::t_exponent;
use crate::poly::LaurentPoly;
use crate::RangeError;

/// The link classes with known value-class generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkClass {
    AlgSplit,
    RibbonBoundary,
    Brunnian,
    BrunnianIntersect,
}

impl LinkClass {
    /// Brunnian statements need at least three components; the two-component
    /// case is rejected rather than extrapolated.
    pub fn min_components(self) -> usize {
        match self {
            LinkClass::AlgSplit | LinkClass::RibbonBoundary => 1,
            LinkClass::Brunnian | LinkClass::BrunnianIntersect => 3,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            LinkClass::AlgSplit => "alg",
            LinkClass::RibbonBoundary => "rb",
            LinkClass::Brunnian => "br",
            LinkClass::BrunnianIntersect => "br-cap-a",
        }
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for LinkClass {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alg" => Ok(LinkClass::AlgSplit),
            "rb" => Ok(LinkClass::RibbonBoundary),
            "br" => Ok(LinkClass::Brunnian),
            "br-cap-a" => Ok(LinkClass::BrunnianIntersect),
            other => Err(SpecError::Invalid(format!(
                "unknown link class {other:?}; expected alg, rb, br, or br-cap-a"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid link specification: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A link class together with the color tuple `(l_1, ..., l_n)`.
///
/// The generators depend only on the multiset of colors; index choices for
/// the maximum and minimum are observationally irrelevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSpec {
    class: LinkClass,
    colors: Vec<u32>,
}

impl ColorSpec {
    pub fn new(class: LinkClass, colors: Vec<u32>) -> Result<Self, SpecError> {
        if colors.len() < class.min_components() {
            return Err(SpecError::Invalid(format!(
                "link class {class} requires at least {} colors, got {}",
                class.min_components(),
                colors.len()
            )));
        }
        Ok(Self { class, colors })
    }

    pub fn class(&self) -> LinkClass {
        self.class
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn l_max(&self) -> u32 {
        self.colors.iter().copied().max().unwrap()
    }

    pub fn l_min(&self) -> u32 {
        self.colors.iter().copied().min().unwrap()
    }

    /// Exponent profile of this spec's class generator.
    pub fn generator_exponents(&self) -> Result<ExponentVector, SpecError> {
        match self.class {
            LinkClass::AlgSplit => Ok(base_exponents(self.l_max())),
            LinkClass::RibbonBoundary => Ok(rb_exponents(&self.colors)),
            LinkClass::Brunnian => br_exponents(&self.colors),
            LinkClass::BrunnianIntersect => Ok(intersect_exponents(&self.colors)),
        }
    }

    /// The class generator, expanded.
    pub fn generator(&self) -> Result<LaurentPoly, SpecError> {
        Ok(self.generator_exponents()?.expand())
    }
}

/// Exponent profile of the common base factor `{2L+1}_{q,L+1} / {1}_q`:
/// `m -> floor((2L+1)/m) - floor(L/m) - floor(1/m)`.
///
/// The exponent is derived from the closed form for falling products; the
/// variant with `floor((L-1)/m)` seen in print contradicts the worked
/// expansions this module reproduces, so it is not used (the direct-quotient
/// equivalence is pinned by tests).
pub fn base_exponents(l_max: u32) -> ExponentVector {
    let l = l_max;
    let mut out = ExponentVector::new();
    for m in 1..=(2 * l + 1) {
        let e = (2 * l + 1) / m - l / m - 1 / m;
        out.set(m, e);
    }
    out
}

fn sum_t(colors: &[u32], m: u32) -> i64 {
    colors.iter().map(|&c| t_exponent(c, m) as i64).sum()
}

/// `Z_rb` profile: the base plus `t(l_i, m)` over all colors but one maximum.
fn rb_exponents(colors: &[u32]) -> ExponentVector {
    let l = colors.iter().copied().max().unwrap();
    let mut out = ExponentVector::new();
    for m in 1..=(2 * l + 1) {
        let base = ((2 * l + 1) / m - l / m - 1 / m) as i64;
        let extra = sum_t(colors, m) - t_exponent(l, m) as i64;
        out.set(m, (base + extra) as u32);
    }
    out
}

/// `Z_Br` profile: the base minus `floor(l_min/m)` plus `t(l_i, m)` over all
/// colors but one maximum and one minimum. Never negative; a negative value
/// would be an internal inconsistency.
fn br_exponents(colors: &[u32]) -> Result<ExponentVector, SpecError> {
    let l = colors.iter().copied().max().unwrap();
    let lo = colors.iter().copied().min().unwrap();
    let mut out = ExponentVector::new();
    for m in 1..=(2 * l + 1) {
        let base = ((2 * l + 1) / m - l / m - 1 / m) as i64;
        let extra = sum_t(colors, m) - t_exponent(l, m) as i64 - t_exponent(lo, m) as i64;
        let e = base - (lo / m) as i64 + extra;
        if e < 0 {
            return Err(SpecError::Internal(format!(
                "negative exponent {e} for Phi({m}) in the Brunnian generator"
            )));
        }
        out.set(m, e as u32);
    }
    Ok(out)
}

/// `Z_a ∩ Z_Br` profile: the base plus
/// `max(0, Σ t(l_i, m) - floor(l_min/m))` over the reduced color multiset.
fn intersect_exponents(colors: &[u32]) -> ExponentVector {
    let l = colors.iter().copied().max().unwrap();
    let lo = colors.iter().copied().min().unwrap();
    let mut out = ExponentVector::new();
    for m in 1..=(2 * l + 1) {
        let base = ((2 * l + 1) / m - l / m - 1 / m) as i64;
        let extra = sum_t(colors, m) - t_exponent(l, m) as i64 - t_exponent(lo, m) as i64;
        let e = base + (extra - (lo / m) as i64).max(0);
        out.set(m, e as u32);
    }
    out
}

fn require_components(spec: &ColorSpec, n: usize, what: &str) -> Result<(), SpecError> {
    if spec.colors.len() < n {
        return Err(SpecError::Invalid(format!(
            "{what} requires at least {n} colors, got {}",
            spec.colors.len()
        )));
    }
    Ok(())
}

/// Generator of `Z_a` for the spec's colors.
pub fn z_a_generator(spec: &ColorSpec) -> Result<LaurentPoly, SpecError> {
    require_components(spec, 1, "the algebraically-split class")?;
    Ok(base_exponents(spec.l_max()).expand())
}

/// Generator of `Z_rb`; for a single component this degenerates to `Z_a`
/// (the product over the remaining colors is empty).
pub fn z_rb_generator(spec: &ColorSpec) -> Result<LaurentPoly, SpecError> {
    require_components(spec, 1, "the ribbon/boundary class")?;
    Ok(rb_exponents(&spec.colors).expand())
}

/// Generator of `Z_Br` (needs at least three components).
pub fn z_br_generator(spec: &ColorSpec) -> Result<LaurentPoly, SpecError> {
    require_components(spec, 3, "the Brunnian class")?;
    Ok(br_exponents(&spec.colors)?.expand())
}

/// Generator of `Z_a ∩ Z_Br` (needs at least three components).
pub fn z_intersection_generator(spec: &ColorSpec) -> Result<LaurentPoly, SpecError> {
    require_components(spec, 3, "the Brunnian intersection class")?;
    Ok(intersect_exponents(&spec.colors).expand())
}

/// Whether `p` lies in the ideal generated by the spec's class generator;
/// on success the exact cofactor (unit included) comes back with it.
pub fn membership(p: &LaurentPoly, spec: &ColorSpec) -> Result<Option<LaurentPoly>, SpecError> {
    if p.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    let generator = spec.generator()?;
    Ok(p.divide_exact(&generator).ok())
}

/// A cyclotomic factor of the class generator that `p` lacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deficit {
    pub m: u32,
    pub required: u32,
    pub present: u32,
}

impl Deficit {
    pub fn amount(&self) -> u32 {
        self.required - self.present
    }
}

/// The failing cyclotomic factors behind a negative membership answer
/// (empty exactly when `p` is a member).
pub fn membership_deficits(p: &LaurentPoly, spec: &ColorSpec) -> Result<Vec<Deficit>, SpecError> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (m, required) in spec.generator_exponents()?.iter() {
        let present = cyc_multiplicity(p, m).unwrap();
        if present < required {
            out.push(Deficit {
                m,
                required,
                present,
            });
        }
    }
    Ok(out)
}

/// A stored invariant value for a named link family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesFixture {
    pub name: String,
    pub n: u32,
    pub value: LaurentPoly,
}

/// The stored value for Milnor's `n`-component Brunnian link (`n >= 3`):
/// `(-1)^n q^(-2n+4) Φ_1^(n-2) Φ_2^(n-2) Φ_3 Φ_4^(n-3)`.
pub fn milnor_fixture(n: u32) -> Result<JonesFixture, RangeError> {
    if n < 3 {
        return Err(RangeError(format!(
            "the Milnor link family starts at 3 components, got {n}"
        )));
    }
    let profile: ExponentVector = [(1, n - 2), (2, n - 2), (3, 1), (4, n - 3)]
        .into_iter()
        .collect();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let unit = LaurentPoly::monomial(sign, -2 * n as i64 + 4);
    Ok(JonesFixture {
        name: format!("milnor-{n}"),
        n,
        value: &unit * &profile.expand(),
    })
}

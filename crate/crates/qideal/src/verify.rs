//! The invariant sweeps behind the `check` CLI command: each suite runs a
//! family of exact identities and reports per-case failures. Sweeps over
//! independent levels fan out with rayon; results are merged in order, so
//! output is deterministic regardless of parallelism.

use num_bigint::{BigInt, Sign};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclotomic::{
    cyc_multiplicity, cyclotomic, divisors, factor_cyclotomic, totient, ExponentVector,
};
use crate::ideals::{
    f_gen, g_exponents, gcd_oracle_euclid, gcd_oracle_factored, principality_certificate,
    step_generator, step_witness, t_exponent, t_exponents, verify_certificate, BezoutCertificate,
};
use crate::links::{
    base_exponents, membership, membership_deficits, milnor_fixture, z_a_generator, z_br_generator,
    z_intersection_generator, z_rb_generator, ColorSpec, LinkClass,
};
use crate::poly::LaurentPoly;
use crate::qcalc::{falling_exponents, q_factorial, q_falling, q_int};

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub unit: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str, cases: usize, failures: Vec<String>) -> Self {
        Self {
            name,
            unit: "cases",
            cases,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_line(&self) -> String {
        if self.passed() {
            format!("{}: OK ({} {})", self.name, self.cases, self.unit)
        } else {
            format!(
                "{}: FAIL ({} of {} {})",
                self.name,
                self.failures.len(),
                self.cases,
                self.unit
            )
        }
    }
}

/// Knobs for the sweep bounds; the spec-level defaults live in the CLI.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub l_max: u32,
    pub certificates: bool,
    pub seed: u64,
    pub random_specs: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            l_max: 16,
            certificates: false,
            seed: 0x0051_D347,
            random_specs: 200,
        }
    }
}

/// Runs every suite at the configured bounds.
pub fn run_all(cfg: &CheckConfig) -> Vec<SuiteReport> {
    let phi_bound = match cfg.l_max {
        0 => 1,
        l if l < 16 => 2 * l + 1,
        _ => 200,
    };
    let mut reports = vec![
        poly_ring_axioms(cfg.seed, 64),
        cyclotomic_products(phi_bound),
        factor_roundtrip(cfg.seed, 48),
        falling_exponent_suite(cfg.l_max),
        t_table(cfg.l_max.min(16)),
        generator_exponents(cfg.l_max),
        gcd_exponents(cfg.l_max.min(30)),
        gcd_euclid(cfg.l_max.min(12)),
        telescoping(cfg.l_max.min(30)),
        quotient_multiplicities(cfg.l_max.min(30)),
        step_witnesses(cfg.l_max.min(20)),
        ideal_inclusion(cfg.l_max),
        base_oracle(cfg.l_max.min(30)),
        link_fixtures(),
        link_inclusions(cfg.seed, cfg.random_specs),
    ];
    if cfg.certificates {
        reports.push(certificates(cfg.l_max.min(24)));
    }
    reports
}

fn random_coeff(rng: &mut ChaCha8Rng) -> BigInt {
    let len = rng.random_range(0..=32);
    let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
    let n = BigInt::from_bytes_le(Sign::Plus, &bytes);
    if rng.random() {
        -n
    } else {
        n
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let terms = rng.random_range(0..=6);
    LaurentPoly::from_terms((0..terms).map(|_| (rng.random_range(-20..=20), random_coeff(rng))))
}

/// Ring axioms, parse/print round trips, exact-division inversion, and
/// multiplicativity of the unit normal form, on seeded random inputs with
/// coefficients up to 2^256.
pub fn poly_ring_axioms(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let (a, b, c) = (
            random_poly(&mut rng),
            random_poly(&mut rng),
            random_poly(&mut rng),
        );
        let mut check = |label: &str, ok: bool| {
            if !ok {
                failures.push(format!("case {case}: {label} (a={a}, b={b}, c={c})"));
            }
        };
        check("addition commutes", &a + &b == &b + &a);
        check("multiplication commutes", &a * &b == &b * &a);
        check("addition associates", &(&a + &b) + &c == &a + &(&b + &c));
        check(
            "multiplication associates",
            &(&a * &b) * &c == &a * &(&b * &c),
        );
        check(
            "multiplication distributes",
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
        );
        check(
            "parse round trip",
            LaurentPoly::parse(&a.to_string()).as_ref() == Ok(&a),
        );
        if !b.is_zero() {
            check(
                "exact division inverts multiplication",
                (&a * &b).divide_exact(&b).as_ref() == Ok(&a),
            );
        }
        if !a.is_zero() && !b.is_zero() {
            let (na, nb) = (a.normalize_unit().unwrap(), b.normalize_unit().unwrap());
            let nab = (&a * &b).normalize_unit().unwrap();
            check(
                "unit normal form is multiplicative",
                nab.sign == na.sign * nb.sign
                    && nab.q_power == na.q_power + nb.q_power
                    && nab.content == na.content * nb.content
                    && nab.primitive == &na.primitive * &nb.primitive,
            );
        }
    }
    SuiteReport::new("poly-ring-axioms", cases, failures)
}

/// `∏_{d|m} Φ_d = q^m - 1` and `deg Φ_m = φ(m)`.
pub fn cyclotomic_products(m_max: u32) -> SuiteReport {
    let failures: Vec<String> = (1..=m_max)
        .into_par_iter()
        .flat_map_iter(|m| {
            let mut errs = Vec::new();
            let product = divisors(m)
                .into_iter()
                .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic(d));
            let binomial = &LaurentPoly::q_power(m as i64) - &LaurentPoly::one();
            if product != binomial {
                errs.push(format!("divisor product at m = {m}"));
            }
            if cyclotomic(m).degree() != Some(totient(m as u64) as i64) {
                errs.push(format!("degree of Phi({m})"));
            }
            errs
        })
        .collect();
    SuiteReport::new("cyclotomic-products", 2 * m_max as usize, failures)
}

/// Factorization recovers random cyclotomic products (indices up to 60,
/// exponents up to 4) together with their unit, leaving residual 1.
pub fn factor_roundtrip(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xFAC7);
    let mut failures = Vec::new();
    for case in 0..cases {
        let atoms = rng.random_range(1..=4);
        let profile: ExponentVector = (0..atoms)
            .map(|_| (rng.random_range(1..=60u32), rng.random_range(1..=4u32)))
            .collect();
        let q_power = rng.random_range(-6..=6);
        let sign: i8 = if rng.random() { -1 } else { 1 };
        let input = &LaurentPoly::monomial(sign, q_power) * &profile.expand();
        match factor_cyclotomic(&input) {
            Ok(f)
                if f.exponents == profile
                    && f.sign == sign
                    && f.q_power == q_power
                    && f.is_cyclotomic_product() => {}
            other => failures.push(format!("case {case}: profile {profile:?} gave {other:?}")),
        }
    }
    SuiteReport::new("factor-roundtrip", cases, failures)
}

/// The closed-form exponent profile of falling products against expansion:
/// factorials fully, inner indices by vector additivity plus sampled direct
/// expansions, and the divisor law for `{k}_q`.
pub fn falling_exponent_suite(l_max: u32) -> SuiteReport {
    let full_bound = l_max.min(25);
    let results: Vec<(usize, Vec<String>)> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            let mut cases = 0;
            // Factorial case, expanded directly.
            cases += 1;
            let profile = falling_exponents(l, l).unwrap();
            if profile.expand() != q_factorial(l) {
                errs.push(format!("factorial profile at l = {l}"));
            }
            if q_factorial(l) != q_falling(l as i64, l) {
                errs.push(format!("factorial/falling mismatch at l = {l}"));
            }
            // Vector additivity closes the gap for inner indices.
            for i in 0..=l {
                cases += 1;
                let sum = falling_exponents(l, i)
                    .unwrap()
                    .add(&falling_exponents(l - i, l - i).unwrap());
                if sum != profile {
                    errs.push(format!("profile additivity at l = {l}, i = {i}"));
                }
            }
            // Direct expansions: everywhere at small l, sampled above.
            let direct: Vec<u32> = if l <= full_bound {
                (0..=l).collect()
            } else {
                vec![0, 1, l / 2, l]
            };
            for i in direct {
                cases += 1;
                if falling_exponents(l, i).unwrap().expand() != q_falling(l as i64, i) {
                    errs.push(format!("direct expansion at l = {l}, i = {i}"));
                }
            }
            (cases, errs)
        })
        .collect();
    let mut cases: usize = results.iter().map(|(c, _)| c).sum();
    let mut failures: Vec<String> = results.into_iter().flat_map(|(_, e)| e).collect();
    for k in 1..=l_max.min(60) {
        for m in 1..=l_max.min(60) {
            cases += 1;
            let expected = u32::from(k % m == 0);
            if cyc_multiplicity(&q_int(k as i64), m).unwrap() != expected {
                failures.push(format!("q-integer multiplicity at k = {k}, m = {m}"));
            }
        }
    }
    SuiteReport::new("falling-exponents", cases, failures)
}

/// The published exponent grid for `1 <= m <= 4`, `0 <= l <= 16`, frozen.
pub fn t_table(l_bound: u32) -> SuiteReport {
    const ROW2: [u32; 17] = [0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7];
    const ROW3: [u32; 17] = [0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4];
    const ROW4: [u32; 17] = [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3];
    let l_bound = l_bound.min(16);
    let mut failures = Vec::new();
    let mut cells = 0;
    for l in 0..=l_bound {
        for m in 1..=4u32 {
            cells += 1;
            let expected = match m {
                1 => l,
                2 => ROW2[l as usize],
                3 => ROW3[l as usize],
                _ => ROW4[l as usize],
            };
            if t_exponent(l, m) != expected {
                failures.push(format!("t({l}, {m}) != {expected}"));
            }
        }
    }
    let mut report = SuiteReport::new("t-table", cells, failures);
    report.unit = "cells";
    report
}

/// Oracle A: componentwise-minimum-of-factorizations at the top layer equals
/// the closed-form `t` profile.
pub fn generator_exponents(l_max: u32) -> SuiteReport {
    let failures: Vec<String> = (0..=l_max)
        .into_par_iter()
        .filter_map(|l| {
            (gcd_oracle_factored(l, l).unwrap() != t_exponents(l))
                .then(|| format!("factored oracle disagrees with t profile at l = {l}"))
        })
        .collect();
    SuiteReport::new("generator-exponents", l_max as usize + 1, failures)
}

/// The closed-form layer exponents against the brute-force oracle on every
/// `0 <= k <= l`.
pub fn gcd_exponents(l_max: u32) -> SuiteReport {
    let results: Vec<(usize, Vec<String>)> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            for k in 0..=l {
                if gcd_oracle_factored(l, k).unwrap() != g_exponents(l, k).unwrap() {
                    errs.push(format!("layer exponents at l = {l}, k = {k}"));
                }
            }
            (l as usize + 1, errs)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, e)| e).collect();
    SuiteReport::new("gcd-exponents", cases, failures)
}

/// Oracle B: the rational-GCD chain equals the expanded generator.
pub fn gcd_euclid(l_bound: u32) -> SuiteReport {
    let failures: Vec<String> = (0..=l_bound)
        .into_par_iter()
        .filter_map(|l| {
            (gcd_oracle_euclid(l) != t_exponents(l).expand())
                .then(|| format!("euclid oracle disagrees at l = {l}"))
        })
        .collect();
    SuiteReport::new("gcd-euclid", l_bound as usize + 1, failures)
}

/// Consecutive layer profiles differ by exactly the step generator.
pub fn telescoping(l_max: u32) -> SuiteReport {
    let results: Vec<(usize, Vec<String>)> = (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            for k in 1..=l {
                let diff = g_exponents(l, k)
                    .unwrap()
                    .checked_sub(&g_exponents(l, k - 1).unwrap());
                match diff {
                    Some(d) if d.expand() == step_generator(l, k).unwrap() => {}
                    _ => errs.push(format!("telescoping at l = {l}, k = {k}")),
                }
            }
            (l as usize, errs)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, e)| e).collect();
    SuiteReport::new("telescoping", cases, failures)
}

/// The multiplicity pattern of `{k-1}_q!/g_{l,k-1}` on divisors of `l-k+1`:
/// zero when `m | k`, one otherwise.
pub fn quotient_multiplicities(l_max: u32) -> SuiteReport {
    let results: Vec<(usize, Vec<String>)> = (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            let mut cases = 0;
            for k in 1..=l {
                let quotient = q_factorial(k - 1)
                    .divide_exact(&g_exponents(l, k - 1).unwrap().expand())
                    .unwrap();
                for m in divisors(l - k + 1) {
                    if m > k {
                        break;
                    }
                    cases += 1;
                    let expected = u32::from(k % m != 0);
                    if cyc_multiplicity(&quotient, m).unwrap() != expected {
                        errs.push(format!("quotient multiplicity at l={l}, k={k}, m={m}"));
                    }
                }
            }
            (cases, errs)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, e)| e).collect();
    SuiteReport::new("quotient-multiplicities", cases, failures)
}

/// Every induction step produces a verified witness.
pub fn step_witnesses(l_max: u32) -> SuiteReport {
    let results: Vec<(usize, Vec<String>)> = (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            for k in 1..=l {
                match step_witness(l, k) {
                    Ok(w) if w.holds() => {}
                    other => errs.push(format!("step witness at l = {l}, k = {k}: {other:?}")),
                }
            }
            (l as usize, errs)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, e)| e).collect();
    SuiteReport::new("step-witnesses", cases, failures)
}

/// Certificates verify and survive a document round trip.
pub fn certificates(l_max: u32) -> SuiteReport {
    let failures: Vec<String> = (0..=l_max)
        .into_par_iter()
        .filter_map(|l| match principality_certificate(l) {
            Ok(cert) => {
                if !verify_certificate(&cert) {
                    return Some(format!("certificate fails verification at l = {l}"));
                }
                match BezoutCertificate::from_json(&cert.to_json()) {
                    Ok(parsed) if parsed == cert => None,
                    _ => Some(format!("certificate document round trip at l = {l}")),
                }
            }
            Err(e) => Some(format!("certificate construction at l = {l}: {e}")),
        })
        .collect();
    SuiteReport::new("certificates", l_max as usize + 1, failures)
}

/// The inclusion direction that needs no certificate: the generator divides
/// every `f_{l,k}` exactly.
pub fn ideal_inclusion(l_max: u32) -> SuiteReport {
    let results: Vec<(usize, Vec<String>)> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut errs = Vec::new();
            let g = t_exponents(l).expand();
            for k in 0..=l {
                if f_gen(l, k).unwrap().divide_exact(&g).is_err() {
                    errs.push(format!("generator does not divide f({l},{k})"));
                }
            }
            (l as usize + 1, errs)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, e)| e).collect();
    SuiteReport::new("ideal-inclusion", cases, failures)
}

/// The closed-form base profile equals the direct quotient
/// `{2l+1}_{q,l+1} / {1}_q`.
pub fn base_oracle(l_max: u32) -> SuiteReport {
    let failures: Vec<String> = (0..=l_max)
        .into_par_iter()
        .filter_map(|l| {
            let direct = q_falling(2 * l as i64 + 1, l + 1)
                .divide_exact(&q_int(1))
                .unwrap();
            (base_exponents(l).expand() != direct).then(|| format!("base profile at l = {l}"))
        })
        .collect();
    SuiteReport::new("base-oracle", l_max as usize + 1, failures)
}

fn example_profile(color: u32, n: u32, class: LinkClass) -> ExponentVector {
    // The worked uniform-color products for colors 1, 2, 3.
    let mut v = match color {
        1 => ExponentVector::from_iter([(1, 1), (2, 1), (3, 1)]),
        2 => ExponentVector::from_iter([(1, 2), (2, 1), (3, 1), (4, 1), (5, 1)]),
        3 => ExponentVector::from_iter([(1, 3), (2, 2), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1)]),
        _ => unreachable!(),
    };
    match class {
        LinkClass::AlgSplit => {}
        LinkClass::RibbonBoundary => {
            v.set(1, color * n);
            if color == 3 {
                v.set(2, n + 1);
            }
        }
        LinkClass::BrunnianIntersect => {
            v.set(1, color * (n - 2));
            if color == 3 {
                v.set(2, n - 1);
            }
        }
        LinkClass::Brunnian => unreachable!(),
    }
    v
}

/// Frozen worked values: the `(2,2,2,2)` expansions, the uniform-color
/// example products, the Milnor memberships, and the two-sided non-inclusion
/// witness.
pub fn link_fixtures() -> SuiteReport {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut check = |label: String, ok: bool| {
        cases += 1;
        if !ok {
            failures.push(label);
        }
    };

    let p = |s: &str| LaurentPoly::parse(s).unwrap();
    let four_twos = ColorSpec::new(LinkClass::AlgSplit, vec![2, 2, 2, 2]).unwrap();
    let za = z_a_generator(&four_twos).unwrap();
    check(
        "expanded Z_a at (2,2,2,2)".into(),
        za == p("(q-1)*(q-1)*(q+1)*(q^2+q+1)*(q^2+1)*(q^4+q^3+q^2+q+1)"),
    );
    let zbr = z_br_generator(&four_twos).unwrap();
    check(
        "expanded Z_Br at (2,2,2,2)".into(),
        zbr == p("(q-1)*(q-1)*(q-1)*(q-1)*(q^2+q+1)*(q^2+1)*(q^4+q^3+q^2+q+1)"),
    );
    check(
        "non-inclusion both ways at (2,2,2,2)".into(),
        za.divide_exact(&zbr).is_err() && zbr.divide_exact(&za).is_err(),
    );

    for n in 3..=5u32 {
        for color in 1..=3u32 {
            let colors = vec![color; n as usize];
            let alg = ColorSpec::new(LinkClass::AlgSplit, colors.clone()).unwrap();
            check(
                format!("example Z_a at color {color}, n = {n}"),
                z_a_generator(&alg).unwrap()
                    == example_profile(color, n, LinkClass::AlgSplit).expand(),
            );
            check(
                format!("example Z_rb at color {color}, n = {n}"),
                z_rb_generator(&alg).unwrap()
                    == example_profile(color, n, LinkClass::RibbonBoundary).expand(),
            );
            check(
                format!("example intersection at color {color}, n = {n}"),
                z_intersection_generator(&alg).unwrap()
                    == example_profile(color, n, LinkClass::BrunnianIntersect).expand(),
            );
        }
    }

    for n in 3..=8u32 {
        let fixture = milnor_fixture(n).unwrap();
        let ones = vec![1; n as usize];
        let cap = ColorSpec::new(LinkClass::BrunnianIntersect, ones.clone()).unwrap();
        check(
            format!("milnor-{n} in the intersection class"),
            matches!(membership(&fixture.value, &cap), Ok(Some(_))),
        );
        let rb = ColorSpec::new(LinkClass::RibbonBoundary, ones).unwrap();
        let deficits = membership_deficits(&fixture.value, &rb).unwrap();
        check(
            format!("milnor-{n} rejected by the ribbon/boundary class"),
            matches!(membership(&fixture.value, &rb), Ok(None))
                && deficits.len() == 1
                && deficits[0].m == 1
                && deficits[0].amount() == 2,
        );
    }

    SuiteReport::new("link-fixtures", cases, failures)
}

/// Random specs: `Z_a | Z_rb`, `Z_Br | Z_rb`, the intersection profile is
/// the componentwise maximum, and generators are permutation-invariant.
pub fn link_inclusions(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11CC);
    let mut failures = Vec::new();
    let mut cases = 0;
    for case in 0..count {
        let n = rng.random_range(1..=6usize);
        let colors: Vec<u32> = (0..n).map(|_| rng.random_range(0..=6)).collect();
        let spec = ColorSpec::new(LinkClass::AlgSplit, colors.clone()).unwrap();
        let za = z_a_generator(&spec).unwrap();
        let zrb = z_rb_generator(&spec).unwrap();
        cases += 1;
        if zrb.divide_exact(&za).is_err() {
            failures.push(format!(
                "case {case}: Z_a does not divide Z_rb for {colors:?}"
            ));
        }
        if n >= 3 {
            let zbr = z_br_generator(&spec).unwrap();
            cases += 1;
            if zrb.divide_exact(&zbr).is_err() {
                failures.push(format!(
                    "case {case}: Z_Br does not divide Z_rb for {colors:?}"
                ));
            }
            cases += 1;
            let alg = ColorSpec::new(LinkClass::AlgSplit, colors.clone()).unwrap();
            let brn = ColorSpec::new(LinkClass::Brunnian, colors.clone()).unwrap();
            let cap = ColorSpec::new(LinkClass::BrunnianIntersect, colors.clone()).unwrap();
            let expected = alg
                .generator_exponents()
                .unwrap()
                .pointwise_max(&brn.generator_exponents().unwrap());
            if cap.generator_exponents().unwrap() != expected {
                failures.push(format!(
                    "case {case}: intersection profile is not the maximum for {colors:?}"
                ));
            }
        }
        cases += 1;
        let mut shuffled = colors.clone();
        shuffled.shuffle(&mut rng);
        let spec2 = ColorSpec::new(LinkClass::AlgSplit, shuffled.clone()).unwrap();
        if z_rb_generator(&spec2).unwrap() != zrb {
            failures.push(format!(
                "case {case}: permutation changed the generator for {colors:?} -> {shuffled:?}"
            ));
        }
    }
    SuiteReport::new("link-inclusions", cases, failures)
}

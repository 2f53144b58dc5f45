//! End-to-end acceptance sweep. Arithmetic is exact, so every comparison is
//! zero-tolerance equality; each numbered test covers one criterion at its
//! full stated bound and prints a summary line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qideal::cyclotomic::{factor_cyclotomic, ExponentVector};
use qideal::ideals::{
    f_gen, g_exponents, gcd_oracle_euclid, gcd_oracle_factored, principality_certificate,
    step_generator, step_witness, t_exponent, t_exponents, verify_certificate,
};
use qideal::links::{
    base_exponents, membership, membership_deficits, milnor_fixture, z_a_generator, z_br_generator,
    z_intersection_generator, z_rb_generator, ColorSpec, LinkClass,
};
use qideal::poly::LaurentPoly;
use qideal::qcalc::{q_factorial, q_falling, q_int};

fn p(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s).unwrap()
}

/// Criterion 1: the exponent table for 1 <= m <= 4, 0 <= l <= 16,
/// cell-for-cell (68 values).
#[test]
fn c01_exponent_table_68_cells() {
    const GRID: [[u32; 17]; 4] = [
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
        [0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7],
        [0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3],
    ];
    let mut cells = 0;
    for (row, values) in GRID.iter().enumerate() {
        let m = row as u32 + 1;
        for (l, &expected) in values.iter().enumerate() {
            assert_eq!(t_exponent(l as u32, m), expected, "t({l}, {m})");
            cells += 1;
        }
    }
    assert_eq!(cells, 68);
    println!("criterion 1 PASS: t-exponent table exact on all 68 cells");
}

/// Criterion 2: oracle A — the componentwise-minimum-of-factorizations
/// oracle at the top layer equals the t profile for 0 <= l <= 40.
#[test]
fn c02_factored_oracle_matches_t_profile_to_40() {
    for l in 0..=40 {
        assert_eq!(
            gcd_oracle_factored(l, l).unwrap(),
            t_exponents(l),
            "l = {l}"
        );
    }
    println!("criterion 2 PASS: factored GCD oracle equals the t profile for l <= 40");
}

/// Criterion 3: oracle B — the rational-GCD chain equals the expanded
/// generator in primitive positive normal form for 0 <= l <= 12.
#[test]
fn c03_euclid_oracle_matches_generator_to_12() {
    for l in 0..=12 {
        assert_eq!(gcd_oracle_euclid(l), t_exponents(l).expand(), "l = {l}");
    }
    println!("criterion 3 PASS: rational GCD oracle equals the generator for l <= 12");
}

/// Criterion 4: certificates verify for 0 <= l <= 24, and the generator
/// divides every f_{l,k} for 0 <= l <= 40 (both inclusion directions).
#[test]
fn c04_certificates_and_divisibility() {
    for l in 0..=24 {
        let cert = principality_certificate(l).unwrap();
        assert!(verify_certificate(&cert), "certificate at l = {l}");
    }
    for l in 0..=40 {
        let g = t_exponents(l).expand();
        for k in 0..=l {
            assert!(
                f_gen(l, k).unwrap().divide_exact(&g).is_ok(),
                "generator must divide f({l},{k})"
            );
        }
    }
    println!(
        "criterion 4 PASS: certificates verify for l <= 24; generator divides every f for l <= 40"
    );
}

/// Criterion 5: the brute-force layer GCD exponents equal the closed form
/// on every m, for 0 <= k <= l <= 30.
#[test]
fn c05_layer_gcd_exponents_to_30() {
    for l in 0..=30 {
        for k in 0..=l {
            let oracle = gcd_oracle_factored(l, k).unwrap();
            let closed = g_exponents(l, k).unwrap();
            // Map equality covers all m: keys beyond k are absent in both.
            assert_eq!(oracle, closed, "l = {l}, k = {k}");
            if let Some(top) = oracle.max_index() {
                assert!(top <= k, "support must stop at k (l = {l}, k = {k})");
            }
        }
    }
    println!("criterion 5 PASS: layer GCD exponents match the closed form for l <= 30");
}

/// Criterion 6: for 1 <= k <= l <= 20, GCD(A, B) equals the step generator
/// exactly, and the constructed witness satisfies u·(A/G) + v·(B/G) = 1.
#[test]
fn c06_step_gcd_and_witness_to_20() {
    for l in 1..=20u32 {
        for k in 1..=l {
            let a = q_int((l - k + 1) as i64);
            let g_prev = g_exponents(l, k - 1).unwrap().expand();
            let b = &q_int(k as i64) * &q_factorial(k - 1).divide_exact(&g_prev).unwrap();
            let g = step_generator(l, k).unwrap();

            let min = factor_cyclotomic(&a)
                .unwrap()
                .exponents
                .pointwise_min(&factor_cyclotomic(&b).unwrap().exponents);
            assert_eq!(min.expand(), g, "GCD(A, B) at l = {l}, k = {k}");

            let w = step_witness(l, k).unwrap();
            assert_eq!(w.a, a.divide_exact(&g).unwrap(), "A/G at l = {l}, k = {k}");
            assert_eq!(w.b, b.divide_exact(&g).unwrap(), "B/G at l = {l}, k = {k}");
            assert!(w.holds(), "witness identity at l = {l}, k = {k}");
        }
    }
    println!("criterion 6 PASS: step GCDs and witnesses exact for l <= 20");
}

/// Criterion 7: the worked `(2,2,2,2)` expansions, and the base exponent
/// profile against the direct quotient for 0 <= l <= 30 (this pins the
/// corrected base exponent).
#[test]
fn c07_worked_expansions_and_base_quotient() {
    let spec = ColorSpec::new(LinkClass::AlgSplit, vec![2, 2, 2, 2]).unwrap();
    assert_eq!(
        z_a_generator(&spec).unwrap(),
        p("(q-1)*(q-1)*(q+1)*(q^2+q+1)*(q^2+1)*(q^4+q^3+q^2+q+1)")
    );
    assert_eq!(
        z_br_generator(&spec).unwrap(),
        p("(q-1)*(q-1)*(q-1)*(q-1)*(q^2+q+1)*(q^2+1)*(q^4+q^3+q^2+q+1)")
    );
    for l in 0..=30u32 {
        let direct = q_falling(2 * l as i64 + 1, l + 1)
            .divide_exact(&q_int(1))
            .unwrap();
        assert_eq!(
            base_exponents(l).expand(),
            direct,
            "base profile at l = {l}"
        );
    }
    println!("criterion 7 PASS: worked expansions and base quotient equivalence for l <= 30");
}

/// Criterion 8: the uniform-color example products for n in {3,4,5} and
/// colors 1, 2, 3 — nine fixtures per n.
#[test]
fn c08_uniform_color_examples() {
    fn profile(pairs: &[(u32, u32)]) -> LaurentPoly {
        pairs.iter().copied().collect::<ExponentVector>().expand()
    }
    let mut fixtures = 0;
    for n in 3..=5u32 {
        let expected: [(u32, [LaurentPoly; 3]); 3] = [
            (
                1,
                [
                    profile(&[(1, 1), (2, 1), (3, 1)]),
                    profile(&[(1, n), (2, 1), (3, 1)]),
                    profile(&[(1, n - 2), (2, 1), (3, 1)]),
                ],
            ),
            (
                2,
                [
                    profile(&[(1, 2), (2, 1), (3, 1), (4, 1), (5, 1)]),
                    profile(&[(1, 2 * n), (2, 1), (3, 1), (4, 1), (5, 1)]),
                    profile(&[(1, 2 * (n - 2)), (2, 1), (3, 1), (4, 1), (5, 1)]),
                ],
            ),
            (
                3,
                [
                    profile(&[(1, 3), (2, 2), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1)]),
                    profile(&[
                        (1, 3 * n),
                        (2, n + 1),
                        (3, 1),
                        (4, 1),
                        (5, 1),
                        (6, 1),
                        (7, 1),
                    ]),
                    profile(&[
                        (1, 3 * (n - 2)),
                        (2, n - 1),
                        (3, 1),
                        (4, 1),
                        (5, 1),
                        (6, 1),
                        (7, 1),
                    ]),
                ],
            ),
        ];
        for (color, [alg, rb, cap]) in expected {
            let spec = ColorSpec::new(LinkClass::AlgSplit, vec![color; n as usize]).unwrap();
            assert_eq!(
                z_a_generator(&spec).unwrap(),
                alg,
                "Z_a color {color}, n {n}"
            );
            assert_eq!(
                z_rb_generator(&spec).unwrap(),
                rb,
                "Z_rb color {color}, n {n}"
            );
            assert_eq!(
                z_intersection_generator(&spec).unwrap(),
                cap,
                "intersection color {color}, n {n}"
            );
            fixtures += 3;
        }
    }
    assert_eq!(fixtures, 27);
    println!("criterion 8 PASS: all 27 uniform-color example products exact");
}

/// Criterion 9: for n in 3..=8 the stored Milnor value lies in the
/// intersection class at colors (1,...,1) and fails the ribbon/boundary
/// class with a Φ_1 deficit of exactly 2.
#[test]
fn c09_milnor_memberships() {
    for n in 3..=8u32 {
        let fixture = milnor_fixture(n).unwrap();
        let ones = vec![1u32; n as usize];

        let cap = ColorSpec::new(LinkClass::BrunnianIntersect, ones.clone()).unwrap();
        let cofactor = membership(&fixture.value, &cap)
            .unwrap()
            .unwrap_or_else(|| panic!("milnor-{n} must lie in the intersection class"));
        assert_eq!(&cofactor * &cap.generator().unwrap(), fixture.value);

        let rb = ColorSpec::new(LinkClass::RibbonBoundary, ones).unwrap();
        assert_eq!(membership(&fixture.value, &rb).unwrap(), None);
        let deficits = membership_deficits(&fixture.value, &rb).unwrap();
        assert_eq!(deficits.len(), 1, "only Phi(1) may fail at n = {n}");
        assert_eq!(deficits[0].m, 1);
        assert_eq!(deficits[0].required, n);
        assert_eq!(deficits[0].present, n - 2);
        assert_eq!(deficits[0].amount(), 2);
    }
    println!("criterion 9 PASS: Milnor values split the classes for n in 3..=8");
}

/// Criterion 10: inclusion structure on 200 random valid specs
/// (n <= 6, colors <= 6), and two-sided non-inclusion at `(2,2,2,2)`.
#[test]
fn c10_inclusion_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    for case in 0..200 {
        let n = rng.random_range(1..=6usize);
        let colors: Vec<u32> = (0..n).map(|_| rng.random_range(0..=6)).collect();
        let spec = ColorSpec::new(LinkClass::AlgSplit, colors.clone()).unwrap();
        let zrb = z_rb_generator(&spec).unwrap();
        assert!(
            zrb.divide_exact(&z_a_generator(&spec).unwrap()).is_ok(),
            "case {case}: Z_a must divide Z_rb for {colors:?}"
        );
        if n >= 3 {
            assert!(
                zrb.divide_exact(&z_br_generator(&spec).unwrap()).is_ok(),
                "case {case}: Z_Br must divide Z_rb for {colors:?}"
            );
        }
    }
    let spec = ColorSpec::new(LinkClass::AlgSplit, vec![2, 2, 2, 2]).unwrap();
    let za = z_a_generator(&spec).unwrap();
    let zbr = z_br_generator(&spec).unwrap();
    assert!(za.divide_exact(&zbr).is_err(), "Z_Br must not divide Z_a");
    assert!(zbr.divide_exact(&za).is_err(), "Z_a must not divide Z_Br");
    println!("criterion 10 PASS: inclusion structure on 200 specs; non-inclusion at (2,2,2,2)");
}

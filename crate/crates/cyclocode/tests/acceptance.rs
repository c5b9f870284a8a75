//! Acceptance gate: one test per criterion, each printing a single
//! pass line with its measured evidence. Every expected value here was
//! independently derived or frozen into the example catalog;
//! a failing criterion must fail loudly rather than degrade.

use std::time::Instant;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cyclocode::arith;
use cyclocode::bounds::{icc_exact_weights, icc_sweep, sqrt_ceil};
use cyclocode::code::{code_from_sequence, irreducible_cyclic_code, CyclicCode};
use cyclocode::cyclotomy::{gaussian_period_report, order2_closed_form, order4_numbers, ClassCtx};
use cyclocode::extring::theta_identity_holds;
use cyclocode::field::Field;
use cyclocode::seq::{analyze, berlekamp_massey, generate, p_rank, SeqKind, SequenceSpec};
use cyclocode::verify::{theorem_sweep, ExampleRow, Verdict, EXAMPLES};
use cyclocode::weights::{min_weight, Strategy, Tier, WeightValue};

fn example(id: &str) -> &'static ExampleRow {
    EXAMPLES
        .iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("catalog row {id} exists"))
}

fn code_for(row: &ExampleRow) -> CyclicCode {
    let field = Field::galois(row.p, row.m).expect("catalog field exists");
    let spec = SequenceSpec::new(row.kind, row.n, &field, row.rho).expect("catalog row is valid");
    code_from_sequence(&spec).expect("construction succeeds")
}

fn exact_distance(row: &ExampleRow) -> usize {
    let report = min_weight(&code_for(row), Tier::Fast, row.seed).expect("weight report");
    match report.d {
        WeightValue::Exact(d) => d,
        other => panic!("row {} must yield an exact distance, got {other:?}", row.id),
    }
}

#[test]
fn criterion_01_printed_generator_strings_are_byte_exact() {
    let mut checked = 0;
    for row in EXAMPLES {
        let Some(expected) = row.generator else {
            continue;
        };
        let started = Instant::now();
        let code = code_for(row);
        let rendered = code.generator().to_string();
        assert_eq!(rendered, expected, "generator string for {}", row.id);
        let elapsed = started.elapsed();
        assert!(
            elapsed.as_secs_f64() < 1.0,
            "row {} took {:?}, budget is one second",
            row.id,
            elapsed
        );
        checked += 1;
    }
    assert_eq!(checked, 17, "all printed generators are covered");
    println!("criterion 01: pass ({checked} generator strings byte-exact, each under 1 s)");
}

#[test]
fn criterion_02_small_codes_have_the_cataloged_exact_distances() {
    let started = Instant::now();
    let table = [
        ("gf3-n13-s1", 7),
        ("gf3-n13-s2-r0", 4),
        ("gf3-n13-s2-r1", 9),
        ("gf4-n17-s2-r0", 5),
        ("gf7-n29-s1", 15),
        ("gf7-n29-s2-r0", 15),
        ("gf4-n41-s2-r0", 41),
    ];
    for (id, d) in table {
        assert_eq!(exact_distance(example(id)), d, "distance of {id}");
    }
    // The same parameters arise as trace codes: C(27, 2) gives [13, 3, 9]
    // and its augmentation gives [13, 4, 7].
    let f3 = Field::prime(3).expect("GF(3)");
    let plain = irreducible_cyclic_code(&f3, 3, 2, false).expect("trace code");
    assert_eq!(
        (plain.n(), plain.dimension()),
        (13, 3),
        "C(27, 2) parameters"
    );
    let report = min_weight(&plain, Tier::Fast, 7).expect("weight report");
    assert_eq!(
        report.d,
        WeightValue::Exact(9),
        "trace [13, 3] code distance"
    );
    let augmented = irreducible_cyclic_code(&f3, 3, 2, true).expect("augmented trace code");
    assert_eq!(
        (augmented.n(), augmented.dimension()),
        (13, 4),
        "augmented parameters"
    );
    let report = min_weight(&augmented, Tier::Fast, 7).expect("weight report");
    assert_eq!(
        report.d,
        WeightValue::Exact(7),
        "augmented trace [13, 4] code distance"
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "budget is 30 s, took {elapsed:?}");
    println!(
        "criterion 02: pass (9 small codes exact, {:.2} s of a 30 s budget)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_direct_binary_enumeration_reaches_dimension_29() {
    let started = Instant::now();
    let mut words = 0u64;
    for (id, d) in [
        ("gf2-n73-s2-r1", 24),
        ("gf2-n89-s2-r1", 28),
        ("gf2-n113-s2-r0", 28),
    ] {
        let row = example(id);
        let report = min_weight(&code_for(row), Tier::Fast, row.seed).expect("weight report");
        assert_eq!(
            report.strategy,
            Strategy::Direct,
            "{id} enumerates directly"
        );
        assert_eq!(report.d, WeightValue::Exact(d), "distance of {id}");
        words += report.words_enumerated;
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "budget is 10 min, took {elapsed:?}"
    );
    println!(
        "criterion 03: pass (2^18 + 2^22 + 2^29 words in {:.2} s, {:.1}M words/s)",
        elapsed.as_secs_f64(),
        words as f64 / elapsed.as_secs_f64() / 1e6
    );
}

#[test]
fn criterion_04_dual_distributions_give_exact_high_rate_distances() {
    for (id, d) in [
        ("gf2-n73-s2-r0", 6),
        ("gf2-n89-s2-r0", 7),
        ("gf2-n113-s2-r1", 8),
    ] {
        let row = example(id);
        let code = code_for(row);
        let report = min_weight(&code, Tier::Fast, row.seed).expect("weight report");
        assert_eq!(
            report.strategy,
            Strategy::DualDistribution,
            "{id} goes through the dual side"
        );
        assert_eq!(report.d, WeightValue::Exact(d), "distance of {id}");
        let dist = report
            .distribution
            .expect("transform yields the full distribution");
        let total: BigUint = dist.iter().sum();
        let size = BigUint::from(2u32).pow(code.dimension() as u32);
        assert_eq!(total, size, "{id}: exact counts must sum to 2^k");
    }
    println!("criterion 04: pass (three dual-side distances exact, counts sum to 2^k)");
}

#[test]
fn criterion_05_low_rate_binary_rows_bracket_and_attain_the_cataloged_distance() {
    for (id, d) in [("gf2-n73-s1", 12), ("gf2-n89-s1", 15)] {
        let row = example(id);
        let report = min_weight(&code_for(row), Tier::Fast, row.seed).expect("weight report");
        match report.d {
            WeightValue::Interval(lo, hi) => {
                assert_eq!(
                    hi, d,
                    "{id}: the seeded search must attain the cataloged value"
                );
                assert!(
                    lo as u64 >= sqrt_ceil(row.n),
                    "{id}: reported floor {lo} falls below the square-root bound"
                );
                let name = report
                    .lower_provenance
                    .expect("interval floors carry a bound name");
                println!("criterion 05: {id} is [{lo}, {hi}] via {name}");
            }
            WeightValue::Exact(x) => {
                assert_eq!(x, d, "{id} resolved exactly but to the wrong value");
            }
        }
    }
    println!("criterion 05: pass (fast tier brackets both rows with the cataloged upper value)");
}

#[test]
#[ignore = "extended tier enumerates the 2^36 dual side; takes minutes"]
fn criterion_05_extended_tier_resolves_the_dimension_37_row_exactly() {
    let row = example("gf2-n73-s1");
    let report = min_weight(&code_for(row), Tier::Extended, row.seed).expect("weight report");
    assert_eq!(
        report.strategy,
        Strategy::DualDistribution,
        "2^36 fits the extended budget"
    );
    assert_eq!(
        report.d,
        WeightValue::Exact(12),
        "[73, 37] resolves to d = 12"
    );
    println!("criterion 05 extended: pass ([73, 37] exact via the dual side)");
}

#[test]
fn criterion_06_interval_rows_attain_the_cataloged_upper_bounds_deterministically() {
    for (id, d) in [
        ("gf4-n41-s2-r1", 10),
        ("gf9-n61-s2-r1", 12),
        ("gf3-n109-s2-r1", 42),
    ] {
        let row = example(id);
        let code = code_for(row);
        let first = min_weight(&code, Tier::Fast, row.seed).expect("weight report");
        match first.d {
            WeightValue::Interval(lo, hi) => {
                assert_eq!(hi, d, "{id}: search with seed {} must reach {d}", row.seed);
                assert!(lo <= hi, "{id}: interval is ordered");
            }
            other => panic!("{id} is out of exact reach, got {other:?}"),
        }
        let second = min_weight(&code, Tier::Fast, row.seed).expect("weight report");
        assert_eq!(first.d, second.d, "{id}: fixed seed, fixed interval");
    }
    println!("criterion 06: pass (three interval rows attain 10/12/42 with fixed seeds)");
}

#[test]
fn criterion_07_closed_form_cyclotomic_numbers_match_brute_force() {
    let started = Instant::now();
    let mut quartic = 0;
    for n in (5..1000u64).filter(|&n| n % 4 == 1 && arith::is_prime(n)) {
        let resolved = order4_numbers(n).expect("closed form resolves");
        let ctx = ClassCtx::new(n, 4).expect("classes exist");
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    resolved.table[i][j],
                    ctx.cyclotomic_number(i, j),
                    "order-4 number ({i}, {j}) at n = {n}"
                );
            }
        }
        quartic += 1;
    }
    let mut quadratic = 0;
    for n in (3..2000u64).filter(|&n| arith::is_prime(n) && n > 2) {
        let table = order2_closed_form(n).expect("closed form exists");
        let ctx = ClassCtx::new(n, 2).expect("classes exist");
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    table[i][j],
                    ctx.cyclotomic_number(i, j),
                    "order-2 number ({i}, {j}) at n = {n}"
                );
            }
        }
        quadratic += 1;
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "budget is one minute, took {elapsed:?}"
    );
    println!(
        "criterion 07: pass ({quartic} quartic and {quadratic} quadratic tables, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_08_splitting_root_identity_holds_across_fifty_pairs() {
    let mut pairs = 0;
    for p in [2u64, 3, 5, 7] {
        let field = Field::prime(p).expect("prime field");
        for n in (13..600u64)
            .filter(|&n| n != p && n % 4 == 1 && arith::is_prime(n) && ((n - 1) / 4) % p == 0)
        {
            assert!(
                theta_identity_holds(&field, n).expect("identity is decidable"),
                "splitting-root identity fails at q = {p}, n = {n}"
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 50, "need at least 50 pairs, found {pairs}");
    println!("criterion 08: pass (identity exact on {pairs} (q, n) pairs)");
}

#[test]
fn criterion_09_gaussian_periods_stay_within_the_absolute_bound() {
    let mut combos = 0;
    for r in (3..2000u64).filter(|&r| arith::is_prime(r)) {
        for order in 2..=8u64 {
            if (r - 1) % order != 0 {
                continue;
            }
            let report = gaussian_period_report(r, order).expect("periods computable");
            assert!(
                report.within_bound(),
                "periods of GF({r}) at order {order}: deviation {} exceeds {}",
                report.max_deviation,
                report.bound
            );
            combos += 1;
        }
    }
    println!("criterion 09: pass ({combos} (r, N) combinations inside the bound)");
}

#[test]
fn criterion_10_berlekamp_massey_agrees_with_the_gcd_construction() {
    let fields = [
        Field::prime(2).expect("GF(2)"),
        Field::prime(3).expect("GF(3)"),
        Field::prime(5).expect("GF(5)"),
        Field::prime(7).expect("GF(7)"),
        Field::galois(2, 2).expect("GF(4)"),
        Field::galois(3, 2).expect("GF(9)"),
    ];
    let periods = [13u64, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    for trial in 0..200 {
        let field = &fields[rng.gen_range(0..fields.len())];
        let n = periods[rng.gen_range(0..periods.len())];
        let (kind, rho) = match rng.gen_range(0..3) {
            0 => (SeqKind::S1, None),
            1 => (SeqKind::S2, Some(0)),
            _ => (SeqKind::S2, Some(1)),
        };
        let spec = SequenceSpec::new(kind, n, field, rho).expect("pool entries are valid");
        let direct = analyze(&spec).expect("gcd analysis");
        let mut prefix = direct.period.clone();
        prefix.extend_from_slice(&direct.period);
        let (feedback, span) = berlekamp_massey(field, &prefix).expect("synthesis succeeds");
        assert_eq!(
            span,
            direct.linear_span,
            "trial {trial}: span disagreement at q = {}, n = {n}, {}",
            field.cardinality(),
            kind.name()
        );
        assert_eq!(
            feedback.make_monic().expect("nonzero feedback"),
            direct.minimal_poly,
            "trial {trial}: coefficient disagreement in the shared convention"
        );
    }
    println!("criterion 10: pass (200 randomized specs agree in degree and coefficients)");
}

#[test]
fn criterion_11_case_sweep_reports_no_mismatch_below_five_hundred() {
    let expected_rows = [(2u64, 60usize), (3, 63), (5, 27), (7, 21)];
    for (p, count) in expected_rows {
        let rows = theorem_sweep(p, 499).expect("sweep runs");
        assert_eq!(rows.len(), count, "eligible combination count for p = {p}");
        for row in &rows {
            assert!(
                matches!(row.verdict, Verdict::ExactMatch | Verdict::SwapMatch),
                "p = {p}, n = {}, {} rho {:?}: verdict {} ({})",
                row.n,
                row.kind.name(),
                row.rho,
                row.verdict.name(),
                row.note
            );
        }
    }
    println!("criterion 11: pass (171 combinations across p in {{2, 3, 5, 7}}, zero mismatches)");
}

#[test]
fn criterion_12_trace_code_bounds_hold_and_the_rounding_divergence_is_logged() {
    let outcome = icc_sweep(1 << 14).expect("sweep runs");
    assert!(
        outcome.failures.is_empty(),
        "analytic bounds must contain every exact weight: {:?}",
        outcome.failures
    );
    let hit = outcome
        .divergences
        .iter()
        .any(|s| s.contains("C(27, 2) over GF(3)") && s.contains("[10, 8]"));
    assert!(
        hit,
        "the literal rounding at C(27, 2) is logged: {:?}",
        outcome.divergences
    );
    let f3 = Field::prime(3).expect("GF(3)");
    let exact = icc_exact_weights(&f3, 3, 2).expect("profile computes");
    assert_eq!(exact.d, 9, "true minimum distance of C(27, 2)");
    assert_eq!(
        exact.affine_d, 7,
        "true minimum distance of the augmented code"
    );
    println!(
        "criterion 12: pass ({} codes checked, {} divergences logged, C(27, 2) d = 9 and 7)",
        outcome.rows,
        outcome.divergences.len()
    );
}

#[test]
fn criterion_13_support_rank_equals_length_minus_dimension_on_every_row() {
    for row in EXAMPLES {
        let field = Field::galois(row.p, row.m).expect("catalog field exists");
        let spec = SequenceSpec::new(row.kind, row.n, &field, row.rho).expect("valid spec");
        let code = code_from_sequence(&spec).expect("construction succeeds");
        let period = generate(&spec).expect("one period");
        let support: Vec<u64> = (0..row.n).filter(|&i| period[i as usize] != 0).collect();
        let rank = p_rank(&support, row.n, row.p).expect("rank computes");
        assert_eq!(
            rank,
            row.n as usize - code.dimension(),
            "p-rank of the support of {}",
            row.id
        );
    }
    println!("criterion 13: pass (18 rows with p-rank = n - k)");
}

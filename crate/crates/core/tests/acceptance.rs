//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All checks are exact.

mod common;

use std::collections::HashSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use warpkit_core::labeling::propagate_labels;
use warpkit_core::moves::{replay, MoveEngine};
use warpkit_core::warping::{check_relations, updown_solver, Relation, UpDownKind};
use warpkit_core::*;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    for case in 0..1000 {
        let w = random_braid(&mut rng, 5, 30, Alphabet::All);
        let map = updown_map(&w);
        for _ in 0..16 {
            let x: Vec<i64> = (0..w.degree()).map(|_| rng.gen_range(-1000..=1000)).collect();
            let via_map = map.evaluate(&x).unwrap();
            let via_walk = propagate_labels(&w, &x).unwrap().bottom;
            let via_oracle = oracle_bottom(&w, &x);
            ensure!(
                via_map == via_walk && via_map == via_oracle,
                "case {case} `{w}` at {x:?}: map {via_map:?}, propagation {via_walk:?}, oracle {via_oracle:?}"
            );
        }
    }
    Ok("1000 braids x 16 inputs, map = propagation = reference".into())
}

fn allowed(rule: RuleName, alphabet: Alphabet) -> bool {
    use RuleName::*;
    match alphabet {
        Alphabet::All => !matches!(rule, R2 | Forbidden1 | Forbidden2),
        Alphabet::ClassicalVirtual => matches!(rule, R3 | FarCommute | V2 | V3 | V4),
        Alphabet::Classical => matches!(rule, R3 | FarCommute),
    }
}

fn in_alphabet(w: &BraidWord, alphabet: Alphabet) -> bool {
    w.gens().iter().all(|g| match alphabet {
        Alphabet::All => true,
        Alphabet::ClassicalVirtual => !g.is_bar(),
        Alphabet::Classical => g.is_classical(),
    })
}

fn non_r2_invariance() -> Outcome {
    let mut summary = Vec::new();
    for (label, alphabet, seed) in [
        ("all generators", Alphabet::All, 0xB1),
        ("classical+virtual", Alphabet::ClassicalVirtual, 0xB2),
        ("classical", Alphabet::Classical, 0xB3),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut moves = 0usize;
        for case in 0..1000 {
            let w = random_braid(&mut rng, 5, 30, alphabet);
            let engine = MoveEngine::new(w.degree());
            let before = updown_map(&w);
            for site in engine.enumerate(&w, false).unwrap() {
                if !allowed(site.rule, alphabet) {
                    continue;
                }
                let after = engine.apply(&w, &site).unwrap();
                if !in_alphabet(&after, alphabet) {
                    continue;
                }
                moves += 1;
                ensure!(updown_map(&after) == before, "{label} case {case}: `{w}` --[{site}]--> `{after}` changes f");
            }
        }
        summary.push(format!("{label}: 1000 braids, {moves} moves"));
    }
    Ok(summary.join("; "))
}

fn z2_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let mut r2_steps = 0;
    for case in 0..300u64 {
        let w = random_braid(&mut rng, 5, 30, Alphabet::All);
        let walk = random_walk(&w, 50, true, false, 1000 + case);
        r2_steps += walk.trace.iter().filter(|s| s.rule == RuleName::R2).count();
        ensure!(replay(&w, &walk.trace).unwrap() == walk.word, "case {case}: trace does not replay");
        ensure!(z2_map(&walk.word) == z2_map(&w), "case {case}: `{w}` -> `{}` changes g", walk.word);
        ensure!(z2_polynomial(&walk.word) == z2_polynomial(&w), "case {case}: polynomial changed");
    }
    ensure!(r2_steps > 0, "walks never used R2");
    Ok(format!("300 braids x 50 moves, {r2_steps} R2 steps"))
}

fn r2_sensitivity() -> Outcome {
    let trivial = braid_fixture("r2_trivial.braid");
    let crossed = braid_fixture("r2_crossed.braid");
    let (a, b) = (updown_map(&trivial), updown_map(&crossed));
    ensure!(a.evaluate(&[0, 0]).unwrap() == vec![0, 0], "trivial f(0,0) = {:?}", a.evaluate(&[0, 0]));
    ensure!(b.evaluate(&[0, 0]).unwrap() == vec![-2, 2], "crossed f(0,0) = {:?}", b.evaluate(&[0, 0]));
    ensure!(b.offset == vec![-2, 2] && b.perm.is_identity(), "crossed map {b:?}");
    let verdict = r2_indicator(&trivial, &crossed);
    ensure!(verdict == R2Verdict::RequiresR2, "verdict {verdict}");
    let certificate = bounded_search(&crossed, &trivial, SearchLimits::default()).unwrap();
    ensure!(certificate.found && certificate.path.iter().any(|s| s.rule == RuleName::R2), "no R2 path found");
    Ok("f(0,0) = (0,0) vs (-2,2), RequiresR2, R2 path certified".into())
}

fn worked_example_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    let w = braid_fixture("updown_example.braid");
    let f = updown_map(&w);
    check(f.evaluate(&[1, 2, 3]).unwrap() == vec![3, 2, 0], format!("f(1,2,3) = {:?}", f.evaluate(&[1, 2, 3])));
    check(f.evaluate(&[1, 1, 1]).unwrap() == vec![2, 2, 2], format!("f(1,1,1) = {:?}", f.evaluate(&[1, 1, 1])));
    check(f.formula() == ["1+x2", "1+x1", "3-x3"], format!("f = {:?}", f.formula()));

    let beta = braid_fixture("virtual_r2_beta.braid");
    let beta_prime = braid_fixture("virtual_r2_beta_prime.braid");
    let (fb, fp) = (updown_map(&beta).evaluate(&[0, 0, 0]).unwrap(), updown_map(&beta_prime).evaluate(&[0, 0, 0]).unwrap());
    check(fb == vec![0, 2, -2] && fp == vec![-2, 2, 0], format!("virtual pair: {fb:?} vs {fp:?}"));
    check(r2_indicator(&beta, &beta_prime) == R2Verdict::RequiresR2, "virtual pair verdict".into());

    let expected = [
        ("bar_placement_a.braid", [0, 1, 1], "x(x+1)^2"),
        ("bar_placement_b.braid", [0, 0, 1], "x^3"),
        ("bar_placement_c.braid", [1, 1, 0], "x(x+1)^2"),
        ("bar_placement_d.braid", [1, 0, 1], "x(x+1)^2"),
    ];
    for (name, g, poly) in expected {
        let w = braid_fixture(name);
        let out = z2_map(&w).evaluate(&[0, 0, 0]).unwrap();
        check(out == g, format!("{name}: g(0,0,0) = {out:?}, expected {g:?}"));
        let got = z2_polynomial(&w).to_string();
        check(got == poly, format!("{name}: polynomial {got}, expected {poly}"));
    }

    let before = braid_fixture("forbidden_before.braid");
    let after = braid_fixture("forbidden_after.braid");
    let (gb, ga) = (z2_map(&before).evaluate(&[0, 0, 0]).unwrap(), z2_map(&after).evaluate(&[0, 0, 0]).unwrap());
    check(gb == vec![1, 0, 1] && ga == vec![1, 1, 0], format!("forbidden pair: {gb:?} vs {ga:?}"));
    let linked = enumerate_moves(&before, true)
        .iter()
        .any(|s| s.rule.is_forbidden() && apply_move(&before, s).unwrap() == after);
    check(linked, "forbidden pair is not one forbidden move apart".into());

    if failures.is_empty() {
        Ok("up-down example, R2 pairs, four bar placements, forbidden pair".into())
    } else {
        Err(failures.join("; "))
    }
}

fn sign_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE1);
    for case in 0..1000 {
        let w = random_braid(&mut rng, 5, 30, Alphabet::All);
        let bars = oracle_bars_per_strand(&w);
        let sign = updown_map(&w).sign;
        for (i, b) in bars.iter().enumerate() {
            let expected = if b % 2 == 0 { 1 } else { -1 };
            ensure!(sign[i] == expected, "case {case} `{w}` strand {i}: sign {} with {b} bars", sign[i]);
        }
    }
    Ok("1000 braids".into())
}

fn warping_properties() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1);
    let mut with_bars = 0;
    for case in 0..10_000 {
        let code = random_code(&mut rng, 8, 6, case % 3 == 0);
        let c = code.crossing_count();
        let degrees = oracle_degrees(&code);
        let report = warping_degree(&code);
        ensure!(report.degrees == degrees, "case {case} `{code}`: degrees {:?} vs reference {degrees:?}", report.degrees);

        let skeleton = code.skeleton();
        let m = skeleton.len();
        for j in (0..m).filter(|&j| skeleton[j] == Token::Bar) {
            ensure!(degrees[j] + degrees[(j + 1) % m] == c, "case {case} `{code}`: bar sum at {j}");
        }
        let mirrored = oracle_degrees(&code.mirror());
        ensure!(
            degrees.iter().zip(&mirrored).all(|(a, b)| a + b == c),
            "case {case} `{code}`: mirror identity"
        );
        let min = *degrees.iter().min().unwrap();
        if code.bar_count() > 0 {
            with_bars += 1;
            ensure!(2 * min <= c, "case {case} `{code}`: 2d = {} > #C = {c}", 2 * min);
        }
        let family = updown_solver(&code).unwrap();
        ensure!(
            (family.kind == UpDownKind::Unique) == (code.bar_count() % 2 == 1),
            "case {case} `{code}`: {:?} with {} bars",
            family.kind,
            code.bar_count()
        );
        ensure!(oracle_is_updown(&code, &family.base), "case {case} `{code}`: solver output breaks the rules");
        ensure!(oracle_is_updown(&code, &warping_labeling(&code)), "case {case} `{code}`: warping labeling breaks the rules");
        let relations = check_relations(&code).unwrap();
        ensure!(relations.all_applicable_hold(), "case {case} `{code}`: {relations:?}");
    }
    let elapsed = started.elapsed();
    ensure!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("10000 codes ({with_bars} with bars) in {:.1}s", elapsed.as_secs_f64()))
}

fn reversed_degrees(code: &TwistedGaussCode) -> Vec<usize> {
    let mut tokens = code.tokens().to_vec();
    tokens.reverse();
    let reversed = oracle_degrees(&TwistedGaussCode::new(tokens).unwrap());
    let m = reversed.len();
    (0..m).map(|k| reversed[(m - k) % m]).collect()
}

fn classical_restriction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x81);
    let mut alternating = 0;
    for case in 0..5000 {
        let code = random_classical_code(&mut rng, 8);
        let c = code.crossing_count();
        if c == 0 {
            continue;
        }
        let d = oracle_degrees(&code);
        let r = reversed_degrees(&code);
        ensure!(d.iter().zip(&r).all(|(a, b)| a + b == c), "case {case} `{code}`: {d:?} + {r:?} != {c}");
        let sum = d.iter().min().unwrap() + r.iter().min().unwrap() + 1;
        ensure!(sum <= c, "case {case} `{code}`: bound fails");
        let alt = warping::is_alternating(&code);
        alternating += alt as usize;
        ensure!((sum == c) == alt, "case {case} `{code}`: equality {} vs alternating {alt}", sum == c);
        let report = check_relations(&code).unwrap();
        ensure!(
            report.get(Relation::ReversalPerBase).holds && report.get(Relation::AlternatingEquality).holds,
            "case {case} `{code}`: library relations disagree"
        );
    }
    let nested = code_fixture("nested_kinks.gauss");
    let report = warping_degree(&nested);
    ensure!(report.min == 2 && report.crossings == 3, "nested kinks: d = {}, #C = {}", report.min, report.crossings);
    ensure!(!check_relations(&nested).unwrap().get(Relation::HalfCrossingBound).applicable, "bound claimed without bars");
    Ok(format!("5000 bar-free codes ({alternating} alternating); nested kinks d = 2, #C = 3"))
}

fn twisted_family() -> Outcome {
    for n in 1..=10u32 {
        let code = twisted_double(n);
        let labels = warping_labeling(&code);
        ensure!(labels.iter().all(|&l| l == n as i64), "n = {n}: labels {labels:?}");
        ensure!(oracle_degrees(&code).iter().all(|&d| d == n as usize), "n = {n}: reference degrees differ");
        let report = warping_degree(&code);
        ensure!(report.min == n as usize && report.crossings == 2 * n as usize, "n = {n}: {report:?}");
        ensure!(2 * report.min == report.crossings && report.bars == 2, "n = {n}: not extremal");
    }
    Ok("n = 1..10, every edge n, d = n, #C = 2n".into())
}

fn move_engine_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let mut applied = 0;
    let mut rules_seen = HashSet::new();
    for case in 0..300 {
        let w = random_braid(&mut rng, 5, 20, Alphabet::All);
        let engine = MoveEngine::new(w.degree());
        for site in engine.enumerate(&w, true).unwrap() {
            let after = engine.apply(&w, &site).unwrap();
            applied += 1;
            rules_seen.insert(site.rule);
            ensure!(after.degree() == w.degree(), "case {case}: {site} changes degree");
            ensure!(after.permutation() == w.permutation(), "case {case}: `{w}` {site} changes permutation");
            let delta = after.crossing_count() as i64 - w.crossing_count() as i64;
            let expected_ok = if site.rule == RuleName::R2 { delta.abs() == 2 } else { delta == 0 };
            ensure!(expected_ok, "case {case}: `{w}` {site} changes crossing count by {delta}");
            let back = engine.apply(&after, &engine.inverse(&site)).unwrap();
            ensure!(back == w, "case {case}: `{w}` {site} does not round-trip");
        }
    }
    ensure!(rules_seen.len() == RuleName::ALL.len(), "only {} rules exercised", rules_seen.len());
    let src: BraidWord = "n=2; s1 S1".parse().unwrap();
    let found = bounded_search(&src, &BraidWord::trivial(2).unwrap(), SearchLimits::default()).unwrap();
    ensure!(found.found && found.path.len() == 1, "s1 S1 -> empty: {found:?}");
    Ok(format!("{applied} moves over 300 braids, all 13 rules; s1 S1 -> empty in 1 move"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("affine map matches propagation", oracle_equivalence),
        ("up-down map invariant under non-R2 moves", non_r2_invariance),
        ("Z2 map and polynomial invariant under walks with R2", z2_invariance),
        ("R2 sensitivity", r2_sensitivity),
        ("worked-example fixtures", worked_example_fixtures),
        ("sign law", sign_law),
        ("warping-degree properties", warping_properties),
        ("bar-free codes", classical_restriction),
        ("two-bar extremal family", twisted_family),
        ("move engine sanity", move_engine_sanity),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

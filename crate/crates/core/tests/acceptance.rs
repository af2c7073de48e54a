//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Tiers:
//! - default: everything that fits in a CI run.
//! - `--extended` (or `MULTIPERM_ACCEPTANCE=extended`): adds the oracle
//!   comparison for (2,14) and (2,15), tens of minutes on one core.
//! - `--out-of-ci` (or `MULTIPERM_ACCEPTANCE=out-of-ci`): adds the
//!   hours-scale golden counts p(2,15), p(2,16), p(3,17), p(3,18), p(3,19).
//!
//! A criterion listed in `KNOWN_FAILURES` is still run and still reported
//! as `[FAIL]`, but only makes the process exit non-zero when
//! `MULTIPERM_ACCEPTANCE_STRICT=1` is set.

mod support;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use multiperm::analysis::{analyze_batch, BatchReport};
use multiperm::existence::{asymptotic_estimate, estimate_ratio, necessary_condition, ExistenceStatus};
use multiperm::io::{parse_solution_file, write_solution_file};
use multiperm::{
    brute_force_oracle, count, enumerate, is_canonical, verify, CountReport, EnumerateOptions, Problem, SearchOptions,
    Sequence,
};
use support::{all_canonical, load_fixture, FIXTURES};

const BUDGET: Duration = Duration::from_secs(10);

/// Criteria that cannot pass as stated, with the reason.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "8",
    "the printed 116944.75 is not 12!/2^12 = 116943.75",
)];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Tier {
    Default,
    Extended,
    OutOfCi,
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn(Tier) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn problem(m: usize, n: usize) -> Problem {
    Problem::new(m, n).unwrap()
}

fn timed_count(m: usize, n: usize, options: &SearchOptions) -> (CountReport, Duration) {
    let start = Instant::now();
    let report = count(&problem(m, n), options).unwrap();
    (report, start.elapsed())
}

fn criterion_1(tier: Tier) -> Outcome {
    let single = SearchOptions::default();
    let budgeted = [(2, 3, 1), (2, 4, 1), (2, 7, 26), (2, 8, 150), (3, 9, 3), (3, 10, 5), (3, 8, 0)];
    let mut slowest = Duration::ZERO;
    for (m, n, expected) in budgeted {
        let (r, t) = timed_count(m, n, &single);
        ensure(r.canonical_count == expected, || {
            format!("count({m},{n}) = {}, expected {expected}", r.canonical_count)
        })?;
        ensure(t < BUDGET, || format!("count({m},{n}) took {t:?}"))?;
        slowest = slowest.max(t);
    }
    // Cheap enough here to run on every invocation.
    let mut detail = format!("7 budgeted counts, slowest {slowest:.2?}");
    for (m, n, expected) in [(2, 11, 17792), (2, 12, 108_144)] {
        let (r, t) = timed_count(m, n, &single);
        ensure(r.canonical_count == expected, || {
            format!("count({m},{n}) = {}, expected {expected}", r.canonical_count)
        })?;
        detail += &format!("; p({m},{n}) = {expected} in {t:.2?}");
    }
    if tier >= Tier::OutOfCi {
        let jobs = std::thread::available_parallelism().map_or(1, |j| j.get());
        let parallel = SearchOptions { jobs, ..Default::default() };
        for (m, n, expected) in [
            (2, 15, 39_809_640),
            (2, 16, 326_721_800),
            (3, 17, 13_440),
            (3, 18, 54_947),
            (3, 19, 249_280),
        ] {
            let (r, t) = timed_count(m, n, &parallel);
            ensure(r.canonical_count == expected, || {
                format!("count({m},{n}) = {}, expected {expected}", r.canonical_count)
            })?;
            detail += &format!("; p({m},{n}) = {expected} in {t:.2?}");
        }
    } else {
        detail += "; hours-scale rows skipped (--out-of-ci)";
    }
    Ok(detail)
}

fn criterion_2(_: Tier) -> Outcome {
    let single = SearchOptions::default();
    for n in [1, 2, 5, 6, 9, 10] {
        let (r, _) = timed_count(2, n, &single);
        ensure(r.raw_count == 0, || format!("count(2,{n}) = {}", r.canonical_count))?;
    }
    for n in 2..=7 {
        let (r, _) = timed_count(3, n, &single);
        ensure(r.raw_count == 0, || format!("count(3,{n}) = {}", r.canonical_count))?;
    }
    // n = 11, 12 always; larger n while the projected time fits the budget.
    let mut covered = Vec::new();
    let mut times: Vec<Duration> = Vec::new();
    for n in 11..=16 {
        if n > 12 {
            let [.., a, b] = times[..] else { unreachable!() };
            let growth = b.as_secs_f64() / a.as_secs_f64().max(1e-6);
            if b.as_secs_f64() * growth > BUDGET.as_secs_f64() {
                break;
            }
        }
        let (r, t) = timed_count(3, n, &single);
        ensure(r.raw_count == 0, || format!("count(3,{n}) = {}", r.canonical_count))?;
        ensure(n > 12 || t < BUDGET, || format!("count(3,{n}) took {t:?}"))?;
        covered.push(format!("{n} ({t:.2?})"));
        times.push(t);
    }
    Ok(format!("m=2 zeros ok; m=3 zeros for n in 2..=7 and {}", covered.join(", ")))
}

fn criterion_3(tier: Tier) -> Outcome {
    let deferred = [(2, 14), (2, 15)];
    let mut checked = 0;
    let mut skipped = Vec::new();
    for m in 2..=30 {
        for n in 1..=30 / m {
            if tier < Tier::Extended && deferred.contains(&(m, n)) {
                skipped.push(format!("({m},{n})"));
                continue;
            }
            let p = problem(m, n);
            let fast = count(&p, &SearchOptions::default()).unwrap();
            let slow = brute_force_oracle(&p).unwrap();
            ensure(fast.same_counts(&slow), || format!("{p}: solver {fast:?}, oracle {slow:?}"))?;
            checked += 1;
        }
    }
    let mut detail = format!("{checked} pairs agree on raw, canonical and palindrome counts");
    if !skipped.is_empty() {
        detail += &format!("; {} deferred to --extended", skipped.join(", "));
    }
    Ok(detail)
}

fn criterion_4(_: Tier) -> Outcome {
    let mut records = 0;
    for &(name, m, n, complete) in FIXTURES {
        let p = problem(m, n);
        let file = load_fixture(name, m, n);
        for r in &file.records {
            ensure(verify(&p, &r.sequence).is_empty(), || format!("{name} line {} fails verify", r.line))?;
            ensure(is_canonical(&r.sequence, &p).unwrap(), || {
                format!("{name} line {} is not canonical", r.line)
            })?;
        }
        records += file.records.len();
        if complete {
            let fixture: BTreeSet<Sequence> = file.sequences().cloned().collect();
            let found: BTreeSet<Sequence> = all_canonical(m, n).into_iter().collect();
            ensure(fixture == found, || {
                format!("{name}: {} listed, {} enumerated, sets differ", fixture.len(), found.len())
            })?;
        }
    }
    Ok(format!("complete lists 26/150/3/5 reproduced; {records} records verified canonical"))
}

fn criterion_5(_: Tier) -> Outcome {
    let mut runs = 0;
    let cases = (1..=12).map(|n| (2, n)).chain((1..=13).map(|n| (3, n))).chain([(4, 7), (4, 8), (5, 5), (6, 4)]);
    for (m, n) in cases {
        let p = problem(m, n);
        let r = count(&p, &SearchOptions::default()).unwrap();
        let issues = r.consistency_issues(&p);
        ensure(issues.is_empty(), || format!("{p}: {}", issues.join("; ")))?;
        ensure(r.raw_count + r.palindrome_count == 2 * r.canonical_count, || format!("{p}: {r:?}"))?;
        if m <= 3 && n > 3 {
            ensure(r.palindrome_count == 0, || format!("{p}: palindromes {}", r.palindrome_count))?;
        }
        runs += 1;
    }
    Ok(format!("{runs} runs satisfy raw = 2 * canonical - palindromes"))
}

fn criterion_6(_: Tier) -> Outcome {
    let mut seen = Vec::new();
    for jobs in [1, 2, 8] {
        for depth in [1, 2] {
            let options = SearchOptions { jobs, split_depth: Some(depth), ..Default::default() };
            let (r, _) = timed_count(2, 11, &options);
            ensure(r.canonical_count == 17792, || {
                format!("jobs {jobs} depth {depth}: {}", r.canonical_count)
            })?;
            seen.push(r.nodes_visited);
        }
    }
    ensure(seen.windows(2).all(|w| w[0] == w[1]), || format!("node counts differ: {seen:?}"))?;
    Ok("canonical_count(2,11) = 17792 for all 6 schedules".into())
}

fn batch(m: usize, n: usize, seqs: Vec<Sequence>) -> BatchReport {
    analyze_batch(&problem(m, n), seqs.into_iter().enumerate().map(|(i, s)| (i + 1, s))).unwrap()
}

fn criterion_7(_: Tier) -> Outcome {
    let mut tallies = Vec::new();
    for (n, weight) in [(7, 42), (8, 52)] {
        let seqs = all_canonical(2, n);
        let b = batch(2, n, seqs);
        ensure(b.weight_failures == 0, || format!("(2,{n}): {} weight failures", b.weight_failures))?;
        ensure(b.phi_failures == 0, || format!("(2,{n}): {} phi failures", b.phi_failures))?;
        ensure(b.residue_failures == 0, || format!("(2,{n}): {} residue failures", b.residue_failures))?;
        ensure(b.reports.iter().all(|r| r.mu.as_ref().unwrap().weight == weight), || {
            format!("(2,{n}): weight differs from {weight}")
        })?;
        tallies.push(format!(
            "(2,{n}) {} solutions: peak ok {}, unimodal ok {}, both {}",
            b.analyzed, b.peak_ok, b.unimodal_ok, b.conjecture_ok
        ));
    }
    for &(name, m, n, _) in FIXTURES.iter().filter(|f| f.1 == 3) {
        let b = batch(m, n, load_fixture(name, m, n).sequences().cloned().collect());
        ensure(b.residue_failures == 0 && b.phi_failures == 0, || format!("{name}: {b:?}"))?;
    }
    Ok(format!("identities hold; conjecture tallies: {}", tallies.join("; ")))
}

fn criterion_8(_: Tier) -> Outcome {
    let ratio = estimate_ratio(108_144, 116_944.75).unwrap();
    let in_range = ratio > 0.92 && ratio < 0.93;
    let estimate = asymptotic_estimate(2, 12).unwrap();
    ensure(estimate == 116_944.75 && in_range, || {
        format!("asymptotic_estimate(2,12) = {estimate}, expected 116944.75; ratio {ratio:.5} in (0.92, 0.93): {in_range}")
    })?;
    Ok(format!("estimate {estimate}, ratio {ratio:.5}"))
}

/// Existence from the residue-class counting argument, computed directly:
/// for prime `m` the values with `k + 1 = 0 (mod m)` sit wholly in one
/// residue class, so their number must be a multiple of `m`. For `m = 4`
/// the counts of `k = 1` and `k = 3 (mod 4)` must be even, the latter at
/// least 4.
fn counting_argument(m: usize, n: usize) -> bool {
    let class = |r: usize| (1..=n).filter(|k| k % m == r).count();
    match m {
        2 | 3 => class(m - 1) % m == 0,
        4 => class(1) % 2 == 0 && class(3) % 2 == 0 && class(3) >= 4,
        _ => unreachable!(),
    }
}

fn criterion_9(_: Tier) -> Outcome {
    for m in [2, 3, 4] {
        for n in 1..=30 {
            let v = necessary_condition(m as u64, n as u64).unwrap();
            let expected = if counting_argument(m, n) { ExistenceStatus::Possible } else { ExistenceStatus::RuledOut };
            ensure(v.status == expected, || format!("({m},{n}): {v}, expected {expected:?}"))?;
        }
    }
    let nonzero = [
        (2, 3), (2, 4), (2, 7), (2, 8), (2, 11), (2, 12), (2, 15), (2, 16),
        (3, 9), (3, 10), (3, 17), (3, 18), (3, 19),
    ];
    for (m, n) in nonzero {
        let v = necessary_condition(m, n).unwrap();
        ensure(v.status == ExistenceStatus::Possible, || format!("({m},{n}) has solutions but {v}"))?;
    }
    Ok("90 table entries match; all 13 nonzero counts map to possible".into())
}

fn sorted_bytes(jobs: usize) -> Vec<u8> {
    let options = EnumerateOptions {
        search: SearchOptions { jobs, ..Default::default() },
        sort: true,
        ..Default::default()
    };
    let mut out = Vec::new();
    let mut seqs = Vec::new();
    enumerate(&problem(2, 7), &options, |s| {
        seqs.push(s.clone());
        Ok(())
    })
    .unwrap();
    write_solution_file(&seqs, &mut out).unwrap();
    out
}

fn criterion_10(_: Tier) -> Outcome {
    for &(name, m, n, _) in FIXTURES {
        let p = problem(m, n);
        let file = load_fixture(name, m, n);
        let mut bytes = Vec::new();
        write_solution_file(file.sequences(), &mut bytes).unwrap();
        let back = parse_solution_file(&bytes, &p, true).unwrap();
        ensure(back.sequences().eq(file.sequences()), || format!("{name}: round trip differs"))?;
    }
    let first = sorted_bytes(1);
    let second = sorted_bytes(1);
    let parallel = sorted_bytes(4);
    ensure(first == second, || "two sorted enumerations of (2,7) differ".into())?;
    ensure(first == parallel, || "sorted enumeration depends on the worker count".into())?;
    Ok(format!("{} fixtures round-trip; sorted (2,7) output stable ({} bytes)", FIXTURES.len(), first.len()))
}

fn tier_from_env_and_args() -> Tier {
    let mut tier = match std::env::var("MULTIPERM_ACCEPTANCE").as_deref() {
        Ok("extended") => Tier::Extended,
        Ok("out-of-ci") => Tier::OutOfCi,
        _ => Tier::Default,
    };
    for arg in std::env::args().skip(1) {
        match arg.as_str() {
            "--extended" | "--ignored" | "--include-ignored" => tier = tier.max(Tier::Extended),
            "--out-of-ci" => tier = Tier::OutOfCi,
            _ => {}
        }
    }
    tier
}

fn main() -> ExitCode {
    let tier = tier_from_env_and_args();
    let strict = std::env::var("MULTIPERM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 10] = [
        ("1", "golden counts", criterion_1),
        ("2", "necessary-condition zeros", criterion_2),
        ("3", "oracle equivalence", criterion_3),
        ("4", "fixture set-equality", criterion_4),
        ("5", "reversal pairing", criterion_5),
        ("6", "schedule independence", criterion_6),
        ("7", "analysis identities", criterion_7),
        ("8", "estimator check", criterion_8),
        ("9", "existence predicate table", criterion_9),
        ("10", "round trip and determinism", criterion_10),
    ];

    // Keep panic messages out of the report lines.
    panic::set_hook(Box::new(|_| {}));
    println!("acceptance tier: {tier:?}");
    let mut fatal = 0;
    let mut failed = 0;
    let mut known_failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(tier))).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {id}: {title} ({took:.2?}) - {detail}"),
            Err(detail) => {
                failed += 1;
                let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
                match known {
                    Some((_, why)) => println!("[FAIL] criterion {id}: {title} ({took:.2?}) - {detail} [known: {why}]"),
                    None => println!("[FAIL] criterion {id}: {title} ({took:.2?}) - {detail}"),
                }
                if known.is_some() {
                    known_failed += 1;
                }
                if known.is_none() || strict {
                    fatal += 1;
                }
            }
        }
    }
    println!("{} passed, {failed} failed ({known_failed} known)", 10 - failed);
    if fatal > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

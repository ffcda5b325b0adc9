//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p zcp-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use zcp::construct::{gcp_pair, gdj_gbf, mate_pair, theorem1_pair, Permutation, Theorem1Params};
use zcp::corr::{aacs_profile, accf};
use zcp::verify::{
    exhaustive_search, magnitude_floor_check, ratio_table, verify_gcp, verify_mates, verify_zcp, SearchOptions,
};
use zcp::{Gbf, PhaseSequence, SequencePair};

const SEED: u64 = 0x05ee_d2c9;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn pair_from_signs(a: &str, b: &str) -> SequencePair {
    SequencePair::new(
        PhaseSequence::parse_line(a, 2, 1).unwrap(),
        PhaseSequence::parse_line(b, 2, 1).unwrap(),
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    let f: Gbf = "m=3 q=2\n1 * x0 x1\n1 * x1 x2".parse().unwrap();
    let start = Instant::now();
    let psi = f.to_sequence();
    let psi_1 = psi.truncate(1).unwrap();
    let elapsed = start.elapsed();
    let (s, s1) = (psi.to_string(), psi_1.to_string());
    let pass = s == "+++-++-+" && s1 == "++-++-" && elapsed < Duration::from_millis(1);
    Outcome::new(pass, format!("Psi = {s}, Psi_1 = {s1}, {:.3} ms (< 1 ms)", ms(elapsed)))
}

/// Builds the pair, scans the profile, returns (length, first nonzero shift,
/// out-of-zone nonzero magnitudes, elapsed).
fn example_profile(m: usize, pi: &str) -> (usize, usize, Vec<i64>, Duration) {
    let start = Instant::now();
    let params = Theorem1Params::new(m, 2, pi.parse().unwrap()).unwrap();
    let pair = theorem1_pair(&params).unwrap();
    let profile = aacs_profile(&pair);
    let elapsed = start.elapsed();
    let ints: Vec<i64> = profile.values().iter().map(|v| v.as_integer().unwrap()).collect();
    let n = pair.len();
    let first = (1..n).find(|&t| ints[t] != 0).unwrap_or(n);
    let outside = ints[first..].iter().filter(|&&v| v != 0).map(|v| v.abs()).collect();
    (n, first, outside, elapsed)
}

fn criterion_2() -> Outcome {
    let (n, first, outside, elapsed) = example_profile(6, "2,0,1,3");
    let pass = n == 34
        && first == 25
        && !outside.is_empty()
        && outside.iter().all(|&v| v == 4)
        && elapsed < Duration::from_millis(10);
    Outcome::new(
        pass,
        format!(
            "N = {n}, zero for tau 1..{}, {} nonzero out-of-zone values all of magnitude 4: {}, {:.3} ms (< 10 ms)",
            first - 1,
            outside.len(),
            outside.iter().all(|&v| v == 4),
            ms(elapsed)
        ),
    )
}

fn criterion_3() -> Outcome {
    let (n, first, _, elapsed) = example_profile(5, "1,2,0");
    let pass = n == 18 && first >= 10 && elapsed < Duration::from_millis(10);
    Outcome::new(
        pass,
        format!(
            "N = {n}, zero for tau 1..{}, {:.3} ms (< 10 ms)",
            first - 1,
            ms(elapsed)
        ),
    )
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn sweep_permutations(m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let k = m - 2;
    let factorial: usize = (1..=k).product();
    if factorial <= 720 {
        all_permutations(k)
    } else {
        (0..200)
            .map(|_| {
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                p
            })
            .collect()
    }
}

struct SweepCase {
    params: Theorem1Params,
}

fn sweep_cases() -> Vec<SweepCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();
    for m in 4..=10 {
        for pi in sweep_permutations(m, &mut rng) {
            for _ in 0..10 {
                for q in [2u32, 4] {
                    let e: Vec<u32> = (0..m - 2).map(|_| rng.gen_range(0..q)).collect();
                    let f: Vec<u32> = (0..m - 2).map(|_| rng.gen_range(0..q)).collect();
                    let params = Theorem1Params::new(m, q, Permutation::new(pi.clone()).unwrap())
                        .unwrap()
                        .with_offsets(e, f)
                        .unwrap();
                    cases.push(SweepCase { params });
                }
            }
        }
    }
    cases
}

struct SweepResult {
    pairs: usize,
    failures: Vec<String>,
    floor_checked: usize,
    floor_failures: Vec<String>,
}

fn run_sweep() -> (SweepResult, Duration) {
    let cases = sweep_cases();
    let start = Instant::now();
    let per_case: Vec<(Option<String>, Option<Option<String>>)> = cases
        .par_iter()
        .map(|case| {
            let p = &case.params;
            let m = p.m();
            let label = format!("m={} q={} pi={} e={:?} f={:?}", m, p.q(), p.pi(), p.e(), p.f_off());
            let pair = theorem1_pair(p).unwrap();
            // claimed width recomputed here rather than taken from the library
            let claimed = (1usize << (m - 2)) + (1usize << p.pi().apply(m - 3)) + 1;
            let report = verify_zcp(&pair, Some(claimed));
            let mut problems = Vec::new();
            if pair.len() != (1 << (m - 1)) + 2 {
                problems.push(format!("length {}", pair.len()));
            }
            if report.actual_zcz < claimed {
                problems.push(format!("zcz {} < {claimed}", report.actual_zcz));
            }
            if p.q() == 2 && !report.out_of_zone_magnitudes.keys().all(|&k| k == 0 || k == 4) {
                problems.push(format!("magnitudes {:?}", report.out_of_zone_magnitudes));
            }
            let failure = (!problems.is_empty()).then(|| format!("{label}: {}", problems.join(", ")));
            let floor = (p.q() == 2).then(|| (!magnitude_floor_check(&pair).unwrap()).then(|| label.clone()));
            (failure, floor)
        })
        .collect();
    let elapsed = start.elapsed();
    let failures: Vec<String> = per_case.iter().filter_map(|(f, _)| f.clone()).collect();
    let floor_checked = per_case.iter().filter(|(_, fl)| fl.is_some()).count();
    let floor_failures = per_case.iter().filter_map(|(_, fl)| fl.clone().flatten()).collect();
    (
        SweepResult {
            pairs: cases.len(),
            failures,
            floor_checked,
            floor_failures,
        },
        elapsed,
    )
}

fn criterion_4(sweep: &SweepResult, elapsed: Duration) -> Outcome {
    let pass = sweep.failures.is_empty() && elapsed < Duration::from_secs(120);
    let mut out = Outcome::new(
        pass,
        format!(
            "{} pairs over m = 4..10, q in {{2, 4}}, {} failures, {:.1} s (< 120 s)",
            sweep.pairs,
            sweep.failures.len(),
            elapsed.as_secs_f64()
        ),
    );
    out.notes.extend(sweep.failures.iter().take(5).cloned());
    out
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut cases = Vec::new();
    for m in 2..=10 {
        for q in [2u32, 4] {
            for _ in 0..20 {
                let mut pi: Vec<usize> = (0..m).collect();
                pi.shuffle(&mut rng);
                let g: Vec<u32> = (0..m).map(|_| rng.gen_range(0..q)).collect();
                let g_const = rng.gen_range(0..q);
                cases.push((m, q, pi, g, g_const));
            }
        }
    }
    let start = Instant::now();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(m, q, pi, g, g_const)| {
            let pi = Permutation::new(pi.clone()).unwrap();
            let f = gdj_gbf(*m, *q, &pi, g, *g_const).unwrap();
            let gcp = gcp_pair(&f, &pi).unwrap();
            let mate = mate_pair(&f, &pi).unwrap();
            let ok = verify_gcp(&gcp) && verify_mates(&gcp, &mate).unwrap();
            (!ok).then(|| format!("m={m} q={q} pi={pi} g={g:?} g'={g_const}"))
        })
        .collect();
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    let mut out = Outcome::new(
        pass,
        format!(
            "{} (pi, g, g') draws over m = 2..10, q in {{2, 4}}, {} failures, {:.2} s (< 30 s)",
            cases.len(),
            failures.len(),
            elapsed.as_secs_f64()
        ),
    );
    out.notes.extend(failures.into_iter().take(5));
    out
}

struct Enumerated {
    n: usize,
    best: usize,
    examined: u64,
    violations: u64,
    counterexample: Option<SequencePair>,
}

fn enumerate(lengths: &[usize]) -> (Vec<Enumerated>, Duration) {
    let opts = SearchOptions {
        cap: 10,
        witness_cap: 4,
    };
    let start = Instant::now();
    let rows = lengths
        .iter()
        .map(|&n| {
            let r = exhaustive_search(n, &opts).unwrap();
            for w in &r.witness_pairs {
                assert_eq!(
                    verify_zcp(w, None).actual_zcz,
                    r.best_zcz,
                    "witness at N={n} does not verify"
                );
            }
            Enumerated {
                n,
                best: r.best_zcz,
                examined: r.pairs_examined,
                violations: r.floor_violations,
                counterexample: r.floor_counterexample,
            }
        })
        .collect();
    (rows, start.elapsed())
}

fn criterion_6(rows: &[Enumerated], elapsed: Duration) -> Outcome {
    let best = |n| rows.iter().find(|r| r.n == n).map(|r| r.best).unwrap();
    let pass = best(6) <= 4 && best(2) == 2 && best(10) == 10 && elapsed < Duration::from_secs(60);
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("N={}: best {} over {} pairs", r.n, r.best, r.examined))
        .collect();
    Outcome::new(
        pass,
        format!("{}; {:.2} s (< 60 s)", summary.join(", "), elapsed.as_secs_f64()),
    )
}

fn criterion_7(sweep: &SweepResult, rows: &[Enumerated]) -> Outcome {
    let enumerated: u64 = rows.iter().map(|r| r.examined).sum();
    let violations: u64 = rows.iter().map(|r| r.violations).sum();
    let pass = sweep.floor_failures.is_empty() && violations == 0;
    let mut out = Outcome::new(
        pass,
        format!(
            "construction pairs: {}/{} hold; enumerated pairs: {}/{} hold",
            sweep.floor_checked - sweep.floor_failures.len(),
            sweep.floor_checked,
            enumerated - violations,
            enumerated
        ),
    );
    for r in rows.iter().filter(|r| r.violations > 0) {
        let ce = r.counterexample.as_ref().unwrap();
        let profile = aacs_profile(ce);
        let values: Vec<String> = profile
            .values()
            .iter()
            .map(|v| v.as_integer().unwrap().to_string())
            .collect();
        out.notes.push(format!(
            "N={}: {} violations; first counterexample a={} b={} with AACS ({})",
            r.n,
            r.violations,
            ce.a(),
            ce.b(),
            values.join(", ")
        ));
    }
    out.notes.extend(sweep.floor_failures.iter().take(5).cloned());
    out
}

fn criterion_8() -> Outcome {
    let mut problems = Vec::new();
    let rows = ratio_table(4, 20).unwrap();
    for (row, m) in rows.iter().zip(4usize..) {
        let p = |k: usize| 1i128 << k;
        let lhs = Ratio::new(p(m - 2) + p(m - 3) + 1, p(m - 1) + 2);
        let rhs = Ratio::new(3, 4) - Ratio::new(1, p(m) + 4);
        if lhs != rhs {
            problems.push(format!("m={m}: {lhs} != {rhs}"));
        }
        if row.m != m || row.ratio != lhs || !row.closed_form_holds {
            problems.push(format!("library row m={} disagrees", row.m));
        }
    }

    let output = Command::new(env!("CARGO_BIN_EXE_zcp"))
        .args(["table", "--m-min", "4", "--m-max", "20", "--format", "csv"])
        .output()
        .expect("running zcp table");
    if !output.status.success() {
        problems.push(format!("zcp table exited with {}", output.status));
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    let cli_rows: Vec<Vec<&str>> = stdout
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').collect())
        .collect();
    if cli_rows.len() != 17 {
        problems.push(format!("CLI printed {} ratio rows", cli_rows.len()));
    }
    for (cols, m) in cli_rows.iter().zip(4usize..) {
        let p = |k: usize| 1i128 << k;
        let ratio = Ratio::new(p(m - 2) + p(m - 3) + 1, p(m - 1) + 2);
        let deviation = Ratio::new(1, p(m) + 4);
        let expected = [m.to_string(), ratio.to_string(), deviation.to_string(), "true".into()];
        let got = [cols[0], cols[3], cols[4], cols[5]];
        if got.iter().zip(&expected).any(|(g, e)| g != e) {
            problems.push(format!("CLI row {got:?} != {expected:?}"));
        }
    }
    let mut out = Outcome::new(
        problems.is_empty(),
        "(2^(m-2)+2^(m-3)+1)/(2^(m-1)+2) = 3/4 - 1/(2^m+4) exactly for m = 4..20; CLI table agrees",
    );
    out.notes = problems;
    out
}

fn direct_cross(a: &[i64], b: &[i64], tau: isize) -> i64 {
    let n = a.len() as isize;
    if tau >= 0 {
        (0..n - tau).map(|k| a[k as usize] * b[(k + tau) as usize]).sum()
    } else {
        (-tau..n).map(|k| a[k as usize] * b[(k + tau) as usize]).sum()
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut mismatches = Vec::new();
    for trial in 0..1000 {
        let n = rng.gen_range(1..=64);
        let sa: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let sb: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let a = PhaseSequence::from_signs(&sa).unwrap();
        let b = PhaseSequence::from_signs(&sb).unwrap();
        let pm = |s: &[bool]| s.iter().map(|&neg| if neg { -1 } else { 1 }).collect::<Vec<i64>>();
        let (ia, ib) = (pm(&sa), pm(&sb));
        let pair = SequencePair::new(a.clone(), b.clone()).unwrap();
        let profile = aacs_profile(&pair);
        for tau in 0..n {
            let want = direct_cross(&ia, &ia, tau as isize) + direct_cross(&ib, &ib, tau as isize);
            if profile.values()[tau].as_integer() != Some(want) {
                mismatches.push(format!("trial {trial}: AACS at tau={tau}"));
            }
        }
        for tau in -(n as isize - 1)..n as isize {
            if accf(&a, &b, tau).unwrap().as_integer() != Some(direct_cross(&ia, &ib, tau)) {
                mismatches.push(format!("trial {trial}: ACCF at tau={tau}"));
            }
        }
    }
    let mut out = Outcome::new(
        mismatches.is_empty(),
        format!(
            "1000 random binary pairs of length 1..=64, {} mismatches",
            mismatches.len()
        ),
    );
    out.notes.extend(mismatches.into_iter().take(5));
    out
}

fn main() -> ExitCode {
    // warm the allocator and code paths so the timed examples measure steady state
    let _ = pair_from_signs("++", "+-");
    let _ = criterion_1();
    let _ = example_profile(6, "2,0,1,3");

    let (sweep, sweep_time) = run_sweep();
    let (rows, enum_time) = enumerate(&[2, 4, 6, 8, 10]);

    let results = [
        ("Psi of x0x1 + x1x2", criterion_1()),
        ("m = 6 pair, pi = 2,0,1,3", criterion_2()),
        ("m = 5 pair, pi = 1,2,0", criterion_3()),
        ("truncated-pair sweep", criterion_4(&sweep, sweep_time)),
        ("Golay pairs and mates", criterion_5()),
        ("exhaustive search bounds", criterion_6(&rows, enum_time)),
        ("out-of-zone magnitude floor", criterion_7(&sweep, &rows)),
        ("ZCZ ratio identity", criterion_8()),
        ("correlation oracle equivalence", criterion_9()),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, outcome.detail);
        for note in &outcome.notes {
            println!("         {note}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

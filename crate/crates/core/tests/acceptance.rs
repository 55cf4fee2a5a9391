//! Acceptance checks 1 to 10. Each prints one PASS or FAIL line; the
//! process exits non-zero if any check fails.
//!
//! Every comparison here is exact integer equality, so there is no numeric
//! tolerance to tune. The only pinned parameters are the ranges below.

use std::collections::{HashSet, VecDeque};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use pancake::cycles::{enumerate_cycles, verify_classification};
use pancake::formula::{crosscheck_values, eval_formula, lookup, sweep_con63, sweep_cor62, Variant};
use pancake::graph::{copy_of, neighbors};
use pancake::perm::{factorial, signed_order};
use pancake::search::{self, LayerSearch};
use pancake::tables::{self, CountTable};
use pancake::{layer_profile, GraphKind, Kind, LayerProfile, Perm, SearchConfig, SignedPerm};

/// Largest plain stack compared with the first published table.
const PLAIN_MAX_N: usize = 10;
/// Largest burnt stack compared with the second published table.
const BURNT_MAX_N: usize = 8;
/// Exhaustive property ranges.
const FLIP_MAX_SIGNED: usize = 5;
const FLIP_MAX_UNSIGNED: usize = 6;
const COPY_MAX_N: usize = 4;
const ORACLE_MAX_PLAIN: usize = 7;
const ORACLE_MAX_BURNT: usize = 5;
const WORKER_CHECK_N: usize = 8;
const RESUME_CHECK_N: usize = 9;
const RESUME_AFTER_LAYER: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn config() -> SearchConfig {
    SearchConfig::with_workers(std::thread::available_parallelism().map_or(4, |n| n.get()))
}

fn profiles(kind: Kind) -> &'static [LayerProfile] {
    static PLAIN: OnceLock<Vec<LayerProfile>> = OnceLock::new();
    static BURNT: OnceLock<Vec<LayerProfile>> = OnceLock::new();
    let (cell, max) = match kind {
        Kind::Plain => (&PLAIN, PLAIN_MAX_N),
        Kind::Burnt => (&BURNT, BURNT_MAX_N),
    };
    cell.get_or_init(|| {
        (1..=max).map(|n| layer_profile(GraphKind::new(kind, n).unwrap(), &config()).unwrap()).collect()
    })
}

fn profile(kind: Kind, n: usize) -> &'static LayerProfile {
    &profiles(kind)[n - 1]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn compare_with_table(kind: Kind, max_n: usize) -> Outcome {
    let mut cells = 0;
    for n in 1..=max_n {
        let p = profile(kind, n);
        let row = tables::rows(kind)[n - 1];
        for (k, &want) in row.iter().enumerate() {
            ensure(p.count(k) == want, || format!("n={n} k={k}: searched {} vs table {want}", p.count(k)))?;
            cells += 1;
        }
        ensure(p.total_visited == p.graph.order().unwrap(), || format!("n={n}: not every vertex reached"))?;
    }
    Ok(format!("{cells} cells equal for n=1..{max_n}"))
}

fn criterion_1() -> Outcome {
    compare_with_table(Kind::Plain, PLAIN_MAX_N)
}

fn criterion_2() -> Outcome {
    compare_with_table(Kind::Burnt, BURNT_MAX_N)
}

fn formula_vs_search(name: &str, kind: Kind, k: usize, range: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut compared = 0;
    for n in range.clone() {
        let got = eval_formula(name, n).map_err(|e| e.to_string())?;
        let want = BigInt::from(profile(kind, n).count(k));
        let value = got.value.value().ok_or_else(|| format!("{name}({n}) lies outside its range"))?;
        ensure(*value == want, || format!("{name}({n}) = {value}, search gives {want}"))?;
        compared += 1;
    }
    Ok(format!("{name} equals the search for n={}..{} ({compared} values)", range.start(), range.end()))
}

fn criterion_3() -> Outcome {
    formula_vs_search("R4_plain", Kind::Plain, 4, 4..=PLAIN_MAX_N)
}

fn criterion_4() -> Outcome {
    formula_vs_search("R4_burnt", Kind::Burnt, 4, 1..=BURNT_MAX_N)
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();
    let mut compared = 0;
    for (name, k, from) in [("R5_plain", 5, 5), ("R6_plain", 6, 6), ("R7_plain", 7, 6), ("R8_plain", 8, 7)] {
        let spec = lookup(name).map_err(|e| e.to_string())?;
        let observed: Vec<(usize, u64)> =
            (from..=PLAIN_MAX_N).map(|n| (n, tables::published(Kind::Plain, k, n).expect("filled cell"))).collect();
        let report = crosscheck_values(spec, observed).map_err(|e| e.to_string())?;
        compared += report.compared();
        for row in report.rows.iter().filter(|r| r.verdict == pancake::formula::Verdict::Mismatch) {
            let formula = row.formula.as_ref().map_or("none".to_string(), BigInt::to_string);
            problems.push(format!("{name}({}) = {formula}, table {}", row.n, row.observed));
        }
        ensure(report.compared() == PLAIN_MAX_N + 1 - from, || format!("{name}: some values out of range"))?;
    }
    if problems.is_empty() {
        Ok(format!("{compared} values equal"))
    } else {
        Err(problems.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let mut cases = Vec::new();
    for n in [4, 5] {
        for length in 6..=9 {
            cases.push((Kind::Plain, n, length));
        }
    }
    for n in [2, 3, 4] {
        cases.push((Kind::Burnt, n, 8));
    }
    for n in [3, 4] {
        cases.push((Kind::Burnt, n, 9));
    }
    let mut total = 0;
    for &(kind, n, length) in &cases {
        let g = GraphKind::new(kind, n).unwrap();
        let report = verify_classification(g, length).map_err(|e| e.to_string())?;
        ensure(report.unmatched_cycles() == 0, || {
            format!("{g} length {length}: {} unmatched cycles", report.unmatched_cycles())
        })?;
        total += report.total;
    }
    Ok(format!("{} cases, {total} cycles, none unmatched", cases.len()))
}

fn criterion_7() -> Outcome {
    for (kind, ns, girth) in [(Kind::Plain, 3..=5, 6), (Kind::Burnt, 2..=4, 8)] {
        for n in ns {
            let g = GraphKind::new(kind, n).unwrap();
            for length in 3..girth {
                let found = enumerate_cycles(g, length).map_err(|e| e.to_string())?.len();
                ensure(found == 0, || format!("{g} has {found} cycles of length {length}"))?;
            }
        }
    }
    let p3 = enumerate_cycles(GraphKind::plain(3).unwrap(), 6).map_err(|e| e.to_string())?.len();
    ensure(p3 == 1, || format!("P_3 has {p3} 6-cycles through the identity"))?;
    let bp2 = enumerate_cycles(GraphKind::burnt(2).unwrap(), 8).map_err(|e| e.to_string())?.len();
    ensure(bp2 == 1, || format!("BP_2 has {bp2} 8-cycles through the identity"))?;
    Ok("no short cycles; one 6-cycle in P_3 and one 8-cycle in BP_2".into())
}

fn criterion_8() -> Outcome {
    let mut compared = 0;
    for k in 5..=9 {
        let spec = lookup(&format!("R{k}_burnt_conj")).map_err(|e| e.to_string())?;
        let observed: Vec<(usize, u64)> = (1..=tables::max_n(Kind::Burnt))
            .filter_map(|n| tables::published(Kind::Burnt, k, n).map(|v| (n, v)))
            .collect();
        let cells = observed.len();
        let report = crosscheck_values(spec, observed).map_err(|e| e.to_string())?;
        ensure(report.mismatches == 0 && report.summary == "consistent with data", || {
            format!("{}: {} ({} mismatches)", spec.name, report.summary, report.mismatches)
        })?;
        ensure(report.compared() == cells, || {
            format!("{}: only {} of {cells} cells compared", spec.name, report.compared())
        })?;
        compared += cells;
    }
    let table = CountTable::published(Kind::Burnt);
    let report = sweep_con63(&table, Variant::Corrected, None, None).map_err(|e| e.to_string())?;
    let expected = table.cells().filter(|&(k, n, _)| k >= 1 && n >= 1).count();
    ensure(report.holds == expected, || {
        format!("identity holds at {} of {expected} cells ({} fail)", report.holds, report.fails)
    })?;
    let printed = sweep_con63(&table, Variant::AsPrinted, None, None).map_err(|e| e.to_string())?;
    Ok(format!(
        "{compared} conjectured values consistent; identity holds at all {expected} cells \
         (with the printed binomial it fails at {})",
        printed.fails
    ))
}

fn criterion_9() -> Outcome {
    let report = sweep_cor62(&CountTable::published(Kind::Plain), None, None).map_err(|e| e.to_string())?;
    ensure(report.fails == 0, || {
        let first = report.cells.iter().find(|c| c.check.fails()).unwrap();
        format!("{} failures, first at k={} n={}", report.fails, first.k, first.n)
    })?;
    ensure(report.holds > 0, || "no cell had the values it needs".into())?;
    Ok(format!("holds at {} cells, {} lacked positive inputs", report.holds, report.insufficient))
}

fn naive_layers(g: GraphKind) -> Vec<u64> {
    let start = g.identity();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut counts = Vec::new();
    while let Some((v, d)) = queue.pop_front() {
        if counts.len() <= d {
            counts.push(0);
        }
        counts[d] += 1;
        for w in neighbors(g, &v).unwrap() {
            if seen.insert(w.clone()) {
                queue.push_back((w, d + 1));
            }
        }
    }
    counts
}

fn flips_and_ranks() -> Result<(), String> {
    for n in 1..=FLIP_MAX_UNSIGNED {
        for r in 0..factorial(n).unwrap() {
            let p = Perm::unrank(n, r).map_err(|e| e.to_string())?;
            ensure(p.rank().unwrap() == r, || format!("unsigned rank {r} at n={n}"))?;
            for i in 2..=n {
                ensure(p.apply_flip(i).unwrap().apply_flip(i).unwrap() == p, || format!("flip {i} of {p}"))?;
            }
        }
    }
    for n in 1..=FLIP_MAX_SIGNED {
        for r in 0..signed_order(n).unwrap() {
            let s = SignedPerm::unrank(n, r).map_err(|e| e.to_string())?;
            ensure(s.rank().unwrap() == r, || format!("signed rank {r} at n={n}"))?;
            for i in 1..=n {
                ensure(s.apply_flip(i).unwrap().apply_flip(i).unwrap() == s, || format!("flip {i} of {s}"))?;
            }
        }
    }
    Ok(())
}

fn copy_structure() -> Result<(), String> {
    for n in 2..=COPY_MAX_N {
        let g = GraphKind::burnt(n).unwrap();
        for r in 0..g.order().unwrap() {
            let u = g.unrank(r).unwrap();
            let home = copy_of(&u).unwrap();
            let out_u = copy_of(&g.apply_flip(&u, n).unwrap()).unwrap();
            ensure(out_u.last.abs() != home.last.abs(), || format!("outer flip of {u} stays near its copy"))?;
            let mut near = HashSet::new();
            for i in 1..n {
                let a = g.apply_flip(&u, i).unwrap();
                for j in 1..n {
                    near.insert(g.apply_flip(&a, j).unwrap());
                }
                near.insert(a);
            }
            near.remove(&u);
            for v in near {
                ensure(copy_of(&v).unwrap() == home, || format!("{v} left the copy of {u}"))?;
                let out_v = copy_of(&g.apply_flip(&v, n).unwrap()).unwrap();
                ensure(out_v != out_u, || format!("{u} and {v} exit to the same copy"))?;
            }
        }
    }
    Ok(())
}

fn oracle_and_workers() -> Result<(), String> {
    for (kind, max) in [(Kind::Plain, ORACLE_MAX_PLAIN), (Kind::Burnt, ORACLE_MAX_BURNT)] {
        for n in 1..=max {
            let g = GraphKind::new(kind, n).unwrap();
            let fast = layer_profile(g, &SearchConfig::with_workers(3)).map_err(|e| e.to_string())?;
            ensure(fast.counts == naive_layers(g), || format!("{g}: bitset and naive searches differ"))?;
        }
    }
    let g = GraphKind::plain(WORKER_CHECK_N).unwrap();
    let mut one = LayerSearch::new(g, &SearchConfig::with_workers(1)).map_err(|e| e.to_string())?;
    let mut four = LayerSearch::new(g, &SearchConfig::with_workers(4)).map_err(|e| e.to_string())?;
    loop {
        let (a, b) = (one.step(), four.step());
        ensure(a == b, || format!("{g}: layer sizes differ between 1 and 4 workers"))?;
        ensure(one.checkpoint().to_bytes() == four.checkpoint().to_bytes(), || {
            format!("{g}: search state differs between 1 and 4 workers")
        })?;
        if a.is_none() {
            break;
        }
    }
    Ok(())
}

fn resume_equivalence() -> Result<(), String> {
    let g = GraphKind::plain(RESUME_CHECK_N).unwrap();
    let cfg = SearchConfig::with_workers(4);
    let full = layer_profile(g, &cfg).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("resume.pkls");
    let mut partial = LayerSearch::new(g, &cfg).map_err(|e| e.to_string())?;
    for _ in 0..RESUME_AFTER_LAYER {
        partial.step();
    }
    partial.save_checkpoint(&path).map_err(|e| e.to_string())?;
    drop(partial);
    let resumed = search::resume(&path, &cfg).map_err(|e| e.to_string())?;
    ensure(resumed == full, || format!("{g}: resumed search differs from an uninterrupted one"))
}

fn criterion_10() -> Outcome {
    flips_and_ranks()?;
    copy_structure()?;
    oracle_and_workers()?;
    resume_equivalence()?;
    Ok("flips, ranks, copies, search oracle, worker counts and resume all agree".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "plain layer table", criterion_1),
        (2, "burnt layer table", criterion_2),
        (3, "R4 plain formula", criterion_3),
        (4, "R4 burnt formula", criterion_4),
        (5, "R5 to R8 plain formulas", criterion_5),
        (6, "cycle classification", criterion_6),
        (7, "girth", criterion_7),
        (8, "burnt conjectures", criterion_8),
        (9, "plain recurrence", criterion_9),
        (10, "property suites", criterion_10),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
